//! `x / tanh(x)` by dividing the power series of `cosh(x)` by that of
//! `sinh(x) / x`, without Bernoulli numbers.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use torelli_core::Rational;

fn inverse_factorial(n: usize) -> Rational {
    let f = (1..=n).fold(BigInt::one(), |acc, k| acc * k);
    Rational::new(BigInt::one(), f)
}

/// `[c_0, ..., c_order]` with `x / tanh(x) = sum c_j x^{2j}`.
pub fn x_over_tanh(order: usize) -> Vec<Rational> {
    // cosh(x) = sum x^{2j} / (2j)!, sinh(x)/x = sum x^{2j} / (2j+1)!
    let num: Vec<Rational> = (0..=order).map(|j| inverse_factorial(2 * j)).collect();
    let den: Vec<Rational> = (0..=order).map(|j| inverse_factorial(2 * j + 1)).collect();
    let mut q: Vec<Rational> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut acc = num[n].clone();
        for k in 1..=n {
            acc -= &den[k] * &q[n - k];
        }
        q.push(acc / &den[0]);
    }
    q
}

/// Same coefficients rescaled for `(x/2) / tanh(x/2)`.
pub fn half_x_over_tanh(order: usize) -> Vec<Rational> {
    let mut scale = Rational::one();
    let quarter = Rational::new(BigInt::one(), BigInt::from(4));
    x_over_tanh(order)
        .into_iter()
        .map(|c| {
            let out = c * &scale;
            scale *= &quarter;
            out
        })
        .collect()
}

pub fn is_unit_constant(c: &[Rational]) -> bool {
    c.first().is_some_and(|c0| c0.is_one()) && !c.iter().all(Zero::is_zero)
}
