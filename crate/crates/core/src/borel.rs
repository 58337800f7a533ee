//! Root data of types `C_g` and `D_g` and exact computation of Borel's
//! vanishing constants `c(G, mu)` and `c(G, r)` for tensor powers of the
//! defining representation.
//!
//! Weights are coordinate vectors in the basis `alpha_1, ..., alpha_g` of
//! coordinate functions on the Cartan subalgebra.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graded_algebra::Rational;
use crate::invariants::linalg::rref;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(Vec<Rational>);

impl WeightVector {
    pub fn zero(g: usize) -> Self {
        WeightVector(vec![Rational::zero(); g])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        WeightVector(
            coords
                .iter()
                .map(|c| Rational::from(BigInt::from(*c)))
                .collect(),
        )
    }

    /// `coefficient * alpha_i` (0-based `i`).
    pub fn basis(g: usize, i: usize, coefficient: i64) -> Self {
        let mut v = Self::zero(g);
        v.0[i] = Rational::from(BigInt::from(coefficient));
        v
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        WeightVector(self.0.iter().map(|x| x * c).collect())
    }
}

impl Add for &WeightVector {
    type Output = WeightVector;
    fn add(self, rhs: Self) -> WeightVector {
        assert_eq!(self.rank(), rhs.rank(), "weight rank mismatch");
        WeightVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &WeightVector {
    type Output = WeightVector;
    fn sub(self, rhs: Self) -> WeightVector {
        assert_eq!(self.rank(), rhs.rank(), "weight rank mismatch");
        WeightVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &WeightVector {
    type Output = WeightVector;
    fn neg(self) -> WeightVector {
        WeightVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootFamily {
    C,
    D,
}

impl fmt::Display for RootFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootFamily::C => write!(f, "C"),
            RootFamily::D => write!(f, "D"),
        }
    }
}

/// How "`v` is a sum of positive roots" is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ConeReading {
    /// Nonnegative rational combination of simple roots.
    #[default]
    Rational,
    /// Nonnegative integer combination of simple roots.
    Integral,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    pub family: RootFamily,
    pub rank: usize,
    pub positive_roots: Vec<WeightVector>,
    pub simple_roots: Vec<WeightVector>,
    pub rho: WeightVector,
}

/// Root data of type `C_g` or `D_g`, `g >= 2`.
///
/// `C_g`: positive roots `alpha_i +- alpha_j (i < j)` and `2 alpha_i`;
/// simple roots `alpha_i - alpha_{i+1}` and `2 alpha_g`.
/// `D_g`: positive roots `alpha_i +- alpha_j (i < j)`; simple roots
/// `alpha_i - alpha_{i+1}` and `alpha_{g-1} + alpha_g`.
pub fn root_system(family: RootFamily, g: usize) -> Result<RootSystem> {
    if g < 2 {
        return Err(Error::Precondition(format!(
            "root systems of type {family} need rank >= 2, got {g}"
        )));
    }
    let e = |i: usize, c: i64| WeightVector::basis(g, i, c);
    let mut positive_roots = Vec::new();
    for i in 0..g {
        for j in i + 1..g {
            positive_roots.push(&e(i, 1) + &e(j, 1));
            positive_roots.push(&e(i, 1) - &e(j, 1));
        }
    }
    if family == RootFamily::C {
        for i in 0..g {
            positive_roots.push(e(i, 2));
        }
    }

    let mut simple_roots: Vec<WeightVector> = (0..g - 1).map(|i| &e(i, 1) - &e(i + 1, 1)).collect();
    simple_roots.push(match family {
        RootFamily::C => e(g - 1, 2),
        RootFamily::D => &e(g - 2, 1) + &e(g - 1, 1),
    });

    let rho = WeightVector(
        (0..g)
            .map(|i| {
                let c = match family {
                    RootFamily::C => g - i,
                    RootFamily::D => g - i - 1,
                };
                Rational::from(BigInt::from(c))
            })
            .collect(),
    );

    let rs = RootSystem {
        family,
        rank: g,
        positive_roots,
        simple_roots,
        rho,
    };

    let expected = match family {
        RootFamily::C => g * g,
        RootFamily::D => g * (g - 1),
    };
    assert_eq!(rs.positive_roots.len(), expected);
    let total = rs
        .positive_roots
        .iter()
        .fold(WeightVector::zero(g), |acc, r| &acc + r);
    assert_eq!(
        total,
        rs.rho.scale(&Rational::from(BigInt::from(2))),
        "2 rho != sum of positive roots"
    );
    for r in &rs.positive_roots {
        assert!(
            is_positive_combination(r, &rs),
            "positive root {r} outside the cone"
        );
    }
    Ok(rs)
}

impl RootSystem {
    /// Coordinates of `v` in the basis of simple roots, solved exactly.
    pub fn simple_root_coordinates(&self, v: &WeightVector) -> Vec<Rational> {
        let g = self.rank;
        // Augmented system: columns are simple roots, rhs is v.
        let mut m: Vec<Vec<Rational>> = (0..g)
            .map(|row| {
                let mut r: Vec<Rational> =
                    self.simple_roots.iter().map(|s| s.0[row].clone()).collect();
                r.push(v.0[row].clone());
                r
            })
            .collect();
        let pivots = rref(&mut m);
        assert_eq!(
            pivots,
            (0..g).collect::<Vec<_>>(),
            "simple roots form a basis"
        );
        m.into_iter().map(|row| row[g].clone()).collect()
    }
}

/// `v != 0` and `v` lies in the cone spanned by the simple roots.
pub fn is_positive_combination(v: &WeightVector, rs: &RootSystem) -> bool {
    is_positive_combination_with(v, rs, ConeReading::Rational)
}

pub fn is_positive_combination_with(
    v: &WeightVector,
    rs: &RootSystem,
    reading: ConeReading,
) -> bool {
    if v.is_zero() {
        return false;
    }
    rs.simple_root_coordinates(v)
        .iter()
        .all(|t| !t.is_negative() && (reading == ConeReading::Rational || t.is_integer()))
}

/// Sums over all `q`-element subsets of the positive roots (the weights of
/// `Lambda^q n`), with multiplicity.
pub fn weights_of_exterior_power(
    rs: &RootSystem,
    q: usize,
) -> Result<impl Iterator<Item = WeightVector> + '_> {
    if q > rs.positive_roots.len() {
        return Err(Error::Precondition(format!(
            "q = {q} exceeds the {} positive roots",
            rs.positive_roots.len()
        )));
    }
    let g = rs.rank;
    Ok(rs.positive_roots.iter().combinations(q).map(move |subset| {
        subset
            .into_iter()
            .fold(WeightVector::zero(g), |acc, r| &acc + r)
    }))
}

/// The distinct weights of `V^{tensor k}`: sums of `k` elements of `{+-alpha_i}`.
pub fn weights_of_tensor_power(rs: &RootSystem, k: usize) -> BTreeSet<WeightVector> {
    let g = rs.rank;
    let steps: Vec<WeightVector> = (0..g)
        .flat_map(|i| [WeightVector::basis(g, i, 1), WeightVector::basis(g, i, -1)])
        .collect();
    let mut current = BTreeSet::from([WeightVector::zero(g)]);
    for _ in 0..k {
        current = current
            .iter()
            .flat_map(|w| steps.iter().map(move |s| w + s))
            .collect();
    }
    current
}

/// Result of a capped search for a Borel constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BorelConstant {
    /// The condition fails already at `q = 0`: `rho - mu` is not positive.
    FailsAtZero,
    /// Holds for all `q' <= q` and fails at `q + 1`.
    Exact(usize),
    /// Still holds at the search cap.
    AtLeast(usize),
}

impl BorelConstant {
    /// A lower bound on the constant, `None` for `FailsAtZero`.
    pub fn lower_bound(self) -> Option<usize> {
        match self {
            BorelConstant::FailsAtZero => None,
            BorelConstant::Exact(q) | BorelConstant::AtLeast(q) => Some(q),
        }
    }

    fn rank_key(self) -> (i64, bool) {
        match self {
            BorelConstant::FailsAtZero => (-1, false),
            BorelConstant::Exact(q) => (q as i64, false),
            BorelConstant::AtLeast(q) => (q as i64, true),
        }
    }

    /// Whether the constant is known to be `>= bound`.
    pub fn meets(self, bound: i64) -> bool {
        match self.lower_bound() {
            Some(q) => q as i64 >= bound,
            None => bound < 0,
        }
    }
}

fn condition_holds(
    rs: &RootSystem,
    shifted: &WeightVector,
    q: usize,
    reading: ConeReading,
) -> bool {
    weights_of_exterior_power(rs, q)
        .expect("q bounded by caller")
        .all(|eta| is_positive_combination_with(&(shifted - &eta), rs, reading))
}

/// `c(G, mu)`: the largest `q <= qmax` such that `rho - mu - eta` is a
/// positive combination for every weight `eta` of `Lambda^{q'} n`, for all
/// `q' <= q`.
pub fn borel_constant_mu(rs: &RootSystem, mu: &WeightVector, qmax: usize) -> BorelConstant {
    borel_constant_mu_with(rs, mu, qmax, ConeReading::Rational)
}

pub fn borel_constant_mu_with(
    rs: &RootSystem,
    mu: &WeightVector,
    qmax: usize,
    reading: ConeReading,
) -> BorelConstant {
    let shifted = &rs.rho - mu;
    let cap = qmax.min(rs.positive_roots.len());
    for q in 0..=cap {
        if !condition_holds(rs, &shifted, q, reading) {
            return if q == 0 {
                BorelConstant::FailsAtZero
            } else {
                BorelConstant::Exact(q - 1)
            };
        }
    }
    if cap < qmax {
        // Every q beyond the number of positive roots has no weights at all.
        BorelConstant::AtLeast(qmax)
    } else {
        BorelConstant::AtLeast(cap)
    }
}

/// `c(G, V^{tensor k})`: the minimum of `c(G, mu)` over weights of `V^{tensor k}`.
pub fn borel_constant_rep(rs: &RootSystem, k: usize, qmax: usize) -> BorelConstant {
    borel_constant_rep_with(rs, k, qmax, ConeReading::Rational)
}

pub fn borel_constant_rep_with(
    rs: &RootSystem,
    k: usize,
    qmax: usize,
    reading: ConeReading,
) -> BorelConstant {
    let mut best: Option<BorelConstant> = None;
    for mu in weights_of_tensor_power(rs, k) {
        let c = borel_constant_mu_with(rs, &mu, qmax, reading);
        if best.is_none_or(|b| c.rank_key() < b.rank_key()) {
            best = Some(c);
            if c == BorelConstant::FailsAtZero {
                break;
            }
        }
    }
    best.expect("tensor powers have at least one weight")
}

/// The printed lower bound: `g - 1 - k` for type C, `g - 2 - k` for type D.
pub fn stated_lower_bound(family: RootFamily, g: usize, k: usize) -> i64 {
    let shift = match family {
        RootFamily::C => 1,
        RootFamily::D => 2,
    };
    g as i64 - shift - k as i64
}

/// Value of `(g-k-q-1) a_1 + sum_{i=2}^{g} (g-i+1) a_i - sum_{i=2}^{q} a_i`
/// with `a_1 = R`, `a_j = R^{-j}` and `R = 2^{10 g}`.
pub fn lform_value(g: usize, k: usize, q: usize) -> Result<Rational> {
    if g < 2 || q >= g {
        return Err(Error::Precondition(format!(
            "linear-form estimate needs g >= 2 and q < g (g = {g}, q = {q})"
        )));
    }
    let r = Rational::from(BigInt::one() << (10 * g));
    let a = |j: usize| -> Rational {
        if j == 1 {
            r.clone()
        } else {
            let mut x = Rational::one();
            for _ in 0..j {
                x /= &r;
            }
            x
        }
    };
    let int = |x: i64| Rational::from(BigInt::from(x));
    let mut total = int(g as i64 - k as i64 - q as i64 - 1) * a(1);
    for i in 2..=g {
        total += int((g - i + 1) as i64) * a(i);
    }
    for i in 2..=q {
        total -= a(i);
    }
    Ok(total)
}

/// Whether the linear-form estimate is strictly positive.
pub fn lform_inequality_check(g: usize, k: usize, q: usize) -> Result<bool> {
    Ok(lform_value(g, k, q)?.is_positive())
}
