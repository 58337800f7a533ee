//! Multiplicative sequences by brute force: expand `prod_k f(y_k)` in `N`
//! variables and rewrite the degree-`i` part in elementary symmetric
//! polynomials by repeatedly cancelling the lexicographically leading term.

use std::collections::BTreeMap;

use num_traits::Zero;
use torelli_core::{Monomial, Rational, WeightedPolynomial};

/// Exponent vector over `y_1..y_N` to coefficient.
type Poly = BTreeMap<Vec<u32>, Rational>;

fn mul(a: &Poly, b: &Poly, max_degree: u32) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            if e.iter().sum::<u32>() > max_degree {
                continue;
            }
            *out.entry(e).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn one(vars: usize) -> Poly {
    Poly::from([(vec![0; vars], Rational::from_integer(1.into()))])
}

fn elementary(j: usize, vars: usize) -> Poly {
    let mut out = Poly::new();
    for mask in 0u32..(1 << vars) {
        if mask.count_ones() as usize == j {
            let e = (0..vars).map(|k| (mask >> k) & 1).collect();
            out.insert(e, Rational::from_integer(1.into()));
        }
    }
    out
}

/// The weight-`4i` part of the multiplicative sequence of
/// `f(y) = sum a_j y^j`, as a polynomial in `p_1..p_i` (weights `4j`).
pub fn multiplicative_sequence(a: &[Rational], i: usize) -> WeightedPolynomial {
    let vars = i.max(1);
    let cap = i as u32;
    let mut product = one(vars);
    for k in 0..vars {
        let mut factor = Poly::new();
        for (j, c) in a.iter().enumerate().take(i + 1) {
            let mut e = vec![0; vars];
            e[k] = j as u32;
            factor.insert(e, c.clone());
        }
        product = mul(&product, &factor, cap);
    }
    let mut rest: Poly = product
        .into_iter()
        .filter(|(e, _)| e.iter().sum::<u32>() == cap)
        .collect();

    let elem: Vec<Poly> = (0..=vars).map(|j| elementary(j, vars)).collect();
    let mut result: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    while let Some((lead, c)) = rest.last_key_value().map(|(e, c)| (e.clone(), c.clone())) {
        // lead is a partition lambda_1 >= ... >= lambda_N.
        let mu: Vec<u32> = (0..vars)
            .map(|j| lead[j] - lead.get(j + 1).copied().unwrap_or(0))
            .collect();
        let mut term = one(vars);
        for (j, &m) in mu.iter().enumerate() {
            for _ in 0..m {
                term = mul(&term, &elem[j + 1], cap);
            }
        }
        for (e, t) in term {
            let entry = rest.entry(e).or_insert_with(Rational::zero);
            *entry -= &c * t;
        }
        rest.retain(|_, x| !x.is_zero());
        *result.entry(mu).or_insert_with(Rational::zero) += c;
    }

    let weights = (1..=vars as u32)
        .map(|j| (format!("p_{j}"), 4 * j))
        .collect();
    let terms = result.into_iter().map(|(mu, c)| {
        let m = Monomial::from_exponents(
            mu.iter()
                .enumerate()
                .map(|(j, &e)| (format!("p_{}", j + 1), e)),
        );
        (m, c)
    });
    WeightedPolynomial::from_terms(weights, terms).expect("declared weights")
}
