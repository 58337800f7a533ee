//! Hirzebruch classes via multiplicative sequences, the change of basis
//! between Pontryagin classes and L-classes, and the generator bookkeeping of
//! the family signature index.
//!
//! A multiplicative sequence is built from an even power series
//! `f(x) = sum a_j x^{2j}` with `a_0 = 1`. With formal roots `y_k = x_k^2` we
//! have `log prod_k f(y_k) = sum_j c_j s_j`, where `log f = sum c_j y^j` and
//! `s_j` is the `j`-th power sum of the `y_k`. Newton's identities rewrite
//! `s_j` in the elementary symmetric functions of the `y_k`, which are the
//! Pontryagin classes `p_j`; exponentiating and reading off the part of
//! weight `4i` gives `K_i(p_1, ..., p_i)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graded_algebra::{
    free_graded_commutative_series, rat, GradedGenerator, HilbertSeries, Rational,
    WeightedPolynomial,
};
use crate::mt_cohomology::generator_index_set;

pub fn pontryagin_symbol(j: u32) -> String {
    format!("p_{j}")
}

pub fn l_symbol(j: u32) -> String {
    format!("L_{j}")
}

/// Bernoulli numbers `B_0, ..., B_n` with the convention `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        let mut acc = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += Rational::from(binomial(BigInt::from(m + 1), BigInt::from(k))) * bk;
        }
        b.push(-acc / Rational::from(BigInt::from(m + 1)));
    }
    b
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Coefficients `a_0..=a_order` of `x / tanh(x) = sum a_j x^{2j}`, from
/// `a_j = 2^{2j} B_{2j} / (2j)!`.
pub fn x_over_tanh_coefficients(order: usize) -> Vec<Rational> {
    let b = bernoulli_numbers(2 * order);
    (0..=order)
        .map(|j| {
            let num = BigInt::from(1) << (2 * j);
            Rational::from(num) * &b[2 * j] / Rational::from(factorial(2 * j))
        })
        .collect()
}

/// An even power series `f(x) = sum a_j x^{2j}` with unit constant term,
/// truncated after `a_order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicPowerSeries {
    coefficients: Vec<Rational>,
}

impl CharacteristicPowerSeries {
    pub fn new(coefficients: Vec<Rational>) -> Result<Self> {
        match coefficients.first() {
            Some(a0) if a0.is_one() => Ok(CharacteristicPowerSeries { coefficients }),
            _ => Err(Error::Precondition(
                "a multiplicative sequence needs constant term 1".into(),
            )),
        }
    }

    /// `x / tanh(x)`, the series of the L-class.
    pub fn hirzebruch_l(order: usize) -> Self {
        CharacteristicPowerSeries {
            coefficients: x_over_tanh_coefficients(order),
        }
    }

    /// `(x/2) / tanh(x/2)`, obtained by scaling `a_j` by `(1/2)^{2j}`.
    pub fn hirzebruch_l_hat(order: usize) -> Self {
        let coefficients = x_over_tanh_coefficients(order)
            .into_iter()
            .enumerate()
            .map(|(j, a)| a / Rational::from(BigInt::from(1) << (2 * j)))
            .collect();
        CharacteristicPowerSeries { coefficients }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Coefficients `c_1..=c_order` of `log f` in the variable `y = x^2`
    /// (index 0 holds `c_0 = 0`).
    fn log_coefficients(&self) -> Vec<Rational> {
        let a = &self.coefficients;
        let mut c = vec![Rational::zero(); a.len()];
        // j c_j = j a_j - sum_{k=1}^{j-1} k c_k a_{j-k}
        for j in 1..a.len() {
            let mut acc = Rational::from(BigInt::from(j)) * &a[j];
            for k in 1..j {
                acc -= Rational::from(BigInt::from(k)) * &c[k] * &a[j - k];
            }
            c[j] = acc / Rational::from(BigInt::from(j));
        }
        c
    }

    /// The degree-`4i` polynomial `K_i(p_1, ..., p_i)` of the multiplicative
    /// sequence of this series.
    pub fn multiplicative_sequence(&self, i: u32) -> Result<WeightedPolynomial> {
        let i_us = i as usize;
        if i_us > self.order() {
            return Err(Error::TruncationRange {
                requested: i_us,
                available: self.order(),
            });
        }
        if i == 0 {
            return Ok(WeightedPolynomial::one());
        }
        let top = 4 * i;
        let p: Vec<WeightedPolynomial> = (0..=i)
            .map(|j| {
                if j == 0 {
                    Ok(WeightedPolynomial::one())
                } else {
                    WeightedPolynomial::variable(&pontryagin_symbol(j), 4 * j)
                }
            })
            .collect::<Result<_>>()?;

        // Newton: s_j = (-1)^{j-1} j p_j + sum_{k=1}^{j-1} (-1)^{k-1} p_k s_{j-k}
        let mut s: Vec<WeightedPolynomial> = vec![WeightedPolynomial::zero()];
        for j in 1..=i as usize {
            let sign = |e: usize| {
                if e.is_multiple_of(2) {
                    rat(1, 1)
                } else {
                    rat(-1, 1)
                }
            };
            let mut sj = p[j].scale(&(sign(j - 1) * rat(j as i64, 1)));
            for k in 1..j {
                sj = sj.checked_add(&p[k].checked_mul(&s[j - k])?.scale(&sign(k - 1)))?;
            }
            s.push(sj);
        }

        let c = self.log_coefficients();
        let mut log_total = WeightedPolynomial::zero();
        for j in 1..=i_us {
            log_total = log_total.checked_add(&s[j].scale(&c[j]))?;
        }

        // exp(log_total), truncated at weight 4i; log_total has no constant term.
        let mut result = WeightedPolynomial::one();
        let mut term = WeightedPolynomial::one();
        for m in 1..=i_us {
            term = term
                .mul_truncated(&log_total, top)?
                .scale(&rat(1, m as i64));
            result = result.checked_add(&term)?;
        }
        Ok(result.component(top))
    }
}

/// `L_i(p_1, ..., p_i)`, the Hirzebruch L-polynomial of weight `4i`.
pub fn l_polynomial(i: u32) -> WeightedPolynomial {
    CharacteristicPowerSeries::hirzebruch_l(i as usize)
        .multiplicative_sequence(i)
        .expect("series order matches the requested index")
}

/// The index-theoretic variant built from `(x/2)/tanh(x/2)`.
pub fn l_hat_polynomial(i: u32) -> WeightedPolynomial {
    CharacteristicPowerSeries::hirzebruch_l_hat(i as usize)
        .multiplicative_sequence(i)
        .expect("series order matches the requested index")
}

/// Expresses `p_i` as a polynomial in `L_1, ..., L_i`.
///
/// `L_j = c_j p_j + R_j(p_1, ..., p_{j-1})` with `c_j != 0`, so `p_j` is
/// recovered by back-substitution.
pub fn p_in_terms_of_l(i: u32) -> WeightedPolynomial {
    if i == 0 {
        return WeightedPolynomial::one();
    }
    let mut inverse: BTreeMap<String, WeightedPolynomial> = BTreeMap::new();
    let mut last = WeightedPolynomial::zero();
    for j in 1..=i {
        let lj = l_polynomial(j);
        let pj = pontryagin_symbol(j);
        let lead = lj.coefficient(&crate::graded_algebra::Monomial::var(&pj, 1));
        assert!(!lead.is_zero(), "coefficient of p_{j} in L_{j} vanishes");
        let rest = lj
            .checked_sub(
                &WeightedPolynomial::variable(&pj, 4 * j)
                    .unwrap()
                    .scale(&lead),
            )
            .expect("consistent weights");
        let rest_in_l = rest.substitute(&inverse).expect("weights preserved");
        let lvar = WeightedPolynomial::variable(&l_symbol(j), 4 * j).unwrap();
        let pj_in_l = lvar
            .checked_sub(&rest_in_l)
            .expect("consistent weights")
            .scale(&(Rational::one() / lead));
        inverse.insert(pj, pj_in_l.clone());
        last = pj_in_l;
    }
    last
}

/// Substitutes `L_j -> L_j(p)` into a polynomial in the L-classes.
pub fn l_to_p(poly: &WeightedPolynomial) -> Result<WeightedPolynomial> {
    let map: BTreeMap<String, WeightedPolynomial> = poly
        .weights()
        .iter()
        .filter_map(|(s, w)| {
            let j: u32 = s.strip_prefix("L_")?.parse().ok()?;
            (*w == 4 * j).then(|| (s.clone(), l_polynomial(j)))
        })
        .collect();
    poly.substitute(&map)
}

/// Hilbert series of `H^*(BSO(2n)<n>; Q)`: the polynomial ring on `L_j`,
/// `j` in the index set, times the rank-one module `{1, e}` with `|e| = 2n`.
pub fn bso_cover_series(n: u32, max_degree: usize) -> Result<HilbertSeries> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let gens = generator_index_set(n)
        .map(|j| GradedGenerator::with_degree(l_symbol(j), 4 * j))
        .collect::<Result<Vec<_>>>()?;
    let poly = free_graded_commutative_series(&gens, max_degree)?;
    let euler = 2 * n as usize;
    let mut coefficients = poly.coefficients().to_vec();
    for d in (euler..=max_degree).rev() {
        coefficients[d] = coefficients[d]
            .checked_add(coefficients[d - euler])
            .ok_or(Error::Overflow { degree: d })?;
    }
    HilbertSeries::from_coefficients(coefficients)
}

/// Structured labels for classes named in generator correspondences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassLabel {
    /// Pontryagin character `ph_i`.
    Ph(u32),
    /// Generator of `H^*(SO/U; Q)` pulled back from `ch_{2i-1}`.
    Qh(u32),
    /// MMM class of `L_j`.
    KappaL(u32),
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Ph(i) => write!(f, "ph_{i}"),
            ClassLabel::Qh(i) => write!(f, "qh_{i}"),
            ClassLabel::KappaL(j) => write!(f, "kappa_{{L_{j}}}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityCase {
    /// `n = 2m`
    Even { m: u32 },
    /// `n = 2m + 1`
    Odd { m: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexMapEntry {
    pub source: ClassLabel,
    pub source_degree: u32,
    pub target: ClassLabel,
    pub target_degree: u32,
    pub scalar: Rational,
}

/// Images of the K-theory generators under the family signature index, for
/// all generators whose target `kappa_{L_{i+m}}` has `i + m <= n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexGeneratorMap {
    pub parity_case: ParityCase,
    pub entries: Vec<IndexMapEntry>,
}

pub fn index_generator_map(n: u32) -> Result<IndexGeneratorMap> {
    if n < 2 {
        return Err(Error::Precondition(format!(
            "index map needs n >= 2, got {n}"
        )));
    }
    let m = n / 2;
    let mut entries = Vec::new();
    let parity_case = if n.is_multiple_of(2) {
        ParityCase::Even { m }
    } else {
        ParityCase::Odd { m }
    };
    for i in 1..=(n - m) {
        let j = i + m;
        let target_degree = 4 * j - 2 * n;
        let entry = match parity_case {
            // ph_i -> (-1/4)^i kappa_{L_{i+m}}
            ParityCase::Even { .. } => IndexMapEntry {
                source: ClassLabel::Ph(i),
                source_degree: 4 * i,
                target: ClassLabel::KappaL(j),
                target_degree,
                scalar: pow_rational(&rat(-1, 4), i),
            },
            // ch_{2i-1} -> (1/2)^{2i-1} kappa_{L_{i+m}}
            ParityCase::Odd { .. } => IndexMapEntry {
                source: ClassLabel::Qh(i),
                source_degree: 4 * i - 2,
                target: ClassLabel::KappaL(j),
                target_degree,
                scalar: pow_rational(&rat(1, 2), 2 * i - 1),
            },
        };
        debug_assert_eq!(entry.source_degree, entry.target_degree);
        entries.push(entry);
    }
    Ok(IndexGeneratorMap {
        parity_case,
        entries,
    })
}

fn pow_rational(base: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * base)
}

/// Series of the rational cohomology of the K-theory target: one polynomial
/// generator in each degree `4i` for `n` even, and in each positive degree
/// congruent to 2 mod 4 for `n` odd.
pub fn ko_target_series(n: u32, max_degree: usize) -> Result<HilbertSeries> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let gens = (1..)
        .map(|i: u32| {
            if n.is_multiple_of(2) {
                4 * i
            } else {
                4 * i - 2
            }
        })
        .take_while(|&d| d as usize <= max_degree)
        .enumerate()
        .map(|(k, d)| {
            let label = if n.is_multiple_of(2) {
                ClassLabel::Ph(k as u32 + 1)
            } else {
                ClassLabel::Qh(k as u32 + 1)
            };
            GradedGenerator::with_degree(label.to_string(), d)
        })
        .collect::<Result<Vec<_>>>()?;
    free_graded_commutative_series(&gens, max_degree)
}
