use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// A monomial as a sparse exponent map; only positive exponents are stored.
///
/// Ordering is lexicographic on the variable symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(BTreeMap<String, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(symbol: &str, exponent: u32) -> Self {
        let mut m = BTreeMap::new();
        if exponent > 0 {
            m.insert(symbol.to_owned(), exponent);
        }
        Monomial(m)
    }

    /// Zero exponents are dropped; repeated symbols accumulate.
    pub fn from_exponents<S: Into<String>>(exponents: impl IntoIterator<Item = (S, u32)>) -> Self {
        let mut m = BTreeMap::new();
        for (s, e) in exponents {
            if e > 0 {
                *m.entry(s.into()).or_insert(0) += e;
            }
        }
        Monomial(m)
    }

    pub fn exponents(&self) -> &BTreeMap<String, u32> {
        &self.0
    }

    pub fn exponent(&self, symbol: &str) -> u32 {
        self.0.get(symbol).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (s, e) in &other.0 {
            *out.entry(s.clone()).or_insert(0) += e;
        }
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (s, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Multivariate polynomial with exact rational coefficients, where each
/// variable carries a positive weight and monomials have weighted degree
/// `sum exponent * weight`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedPolynomial {
    weights: BTreeMap<String, u32>,
    terms: BTreeMap<Monomial, Rational>,
}

impl WeightedPolynomial {
    pub fn zero() -> Self {
        WeightedPolynomial {
            weights: BTreeMap::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The polynomial consisting of a single variable.
    pub fn variable(symbol: &str, weight: u32) -> Result<Self> {
        if weight == 0 {
            return Err(Error::Precondition(format!(
                "variable `{symbol}` must have positive weight"
            )));
        }
        let mut p = Self::zero();
        p.weights.insert(symbol.to_owned(), weight);
        p.terms.insert(Monomial::var(symbol, 1), Rational::one());
        Ok(p)
    }

    /// Builds a polynomial from explicit terms. Zero coefficients are dropped;
    /// every variable appearing in a monomial must be declared in `weights`.
    pub fn from_terms(
        weights: BTreeMap<String, u32>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let mut p = WeightedPolynomial {
            weights,
            terms: BTreeMap::new(),
        };
        for (m, c) in terms {
            for s in m.0.keys() {
                if !p.weights.contains_key(s) {
                    return Err(Error::Precondition(format!("undeclared variable `{s}`")));
                }
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn weights(&self) -> &BTreeMap<String, u32> {
        &self.weights
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.0.iter().map(|(s, e)| e * self.weights[s]).sum()
    }

    /// The common weighted degree of all terms, or `None` if the polynomial
    /// is zero or not homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|m| self.monomial_degree(m));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// The weighted-degree-`d` component.
    pub fn component(&self, d: u32) -> Self {
        self.filter_terms(|deg| deg == d)
    }

    /// Drops every term of weighted degree above `max`.
    pub fn truncate(&self, max: u32) -> Self {
        self.filter_terms(|deg| deg <= max)
    }

    fn filter_terms(&self, keep: impl Fn(u32) -> bool) -> Self {
        WeightedPolynomial {
            weights: self.weights.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(self.monomial_degree(m)))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn merged_weights(&self, other: &Self) -> Result<BTreeMap<String, u32>> {
        let mut weights = self.weights.clone();
        for (s, w) in &other.weights {
            match weights.get(s) {
                Some(&existing) if existing != *w => {
                    return Err(Error::ConflictingWeights {
                        symbol: s.clone(),
                        first: existing,
                        second: *w,
                    })
                }
                Some(_) => {}
                None => {
                    weights.insert(s.clone(), *w);
                }
            }
        }
        Ok(weights)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = WeightedPolynomial {
            weights: self.merged_weights(other)?,
            terms: self.terms.clone(),
        };
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&-Rational::one()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let mut out = WeightedPolynomial {
            weights: self.merged_weights(other)?,
            terms: BTreeMap::new(),
        };
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Product truncated at weighted degree `max`, without materialising
    /// higher terms.
    pub fn mul_truncated(&self, other: &Self, max: u32) -> Result<Self> {
        let mut out = WeightedPolynomial {
            weights: self.merged_weights(other)?,
            terms: BTreeMap::new(),
        };
        for (m1, c1) in &self.terms {
            let d1 = self.monomial_degree(m1);
            if d1 > max {
                continue;
            }
            for (m2, c2) in &other.terms {
                if d1 + other.monomial_degree(m2) <= max {
                    out.add_term(m1.mul(m2), c1 * c2);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return WeightedPolynomial {
                weights: self.weights.clone(),
                terms: BTreeMap::new(),
            };
        }
        WeightedPolynomial {
            weights: self.weights.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = WeightedPolynomial::one();
        acc.weights = self.weights.clone();
        for _ in 0..e {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Replaces each variable in `map` by its image. Every image must be zero
    /// or homogeneous of weighted degree equal to the replaced variable's weight.
    pub fn substitute(&self, map: &BTreeMap<String, WeightedPolynomial>) -> Result<Self> {
        for (s, image) in map {
            let Some(&w) = self.weights.get(s) else {
                continue;
            };
            if image.is_zero() {
                continue;
            }
            match image.homogeneous_degree() {
                Some(d) if d == w => {}
                other => {
                    return Err(Error::WeightMismatch {
                        symbol: s.clone(),
                        expected: w,
                        found: other.map_or_else(|| "mixed".to_owned(), |d| d.to_string()),
                    })
                }
            }
        }

        let mut weights: BTreeMap<String, u32> = self
            .weights
            .iter()
            .filter(|(s, _)| !map.contains_key(*s))
            .map(|(s, w)| (s.clone(), *w))
            .collect();
        for (s, image) in map {
            if self.weights.contains_key(s) {
                let probe = WeightedPolynomial {
                    weights,
                    terms: BTreeMap::new(),
                };
                weights = probe.merged_weights(image)?;
            }
        }

        let mut out = WeightedPolynomial {
            weights,
            terms: BTreeMap::new(),
        };
        // Cache powers of each image; exponents are small in practice.
        let mut powers: BTreeMap<(String, u32), WeightedPolynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut term = WeightedPolynomial::constant(c.clone());
            for (s, e) in &m.0 {
                let factor = match map.get(s) {
                    Some(image) => {
                        let key = (s.clone(), *e);
                        if !powers.contains_key(&key) {
                            powers.insert(key.clone(), image.pow(*e)?);
                        }
                        powers[&key].clone()
                    }
                    None => {
                        let mut v = WeightedPolynomial::variable(s, self.weights[s])?;
                        v = v.pow(*e)?;
                        v
                    }
                };
                term = term.checked_mul(&factor)?;
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for WeightedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

// Operator forms panic on conflicting variable weights, which only arises
// from mixing unrelated variable namespaces.
impl Add for &WeightedPolynomial {
    type Output = WeightedPolynomial;
    fn add(self, rhs: Self) -> WeightedPolynomial {
        self.checked_add(rhs).expect("conflicting variable weights")
    }
}

impl Sub for &WeightedPolynomial {
    type Output = WeightedPolynomial;
    fn sub(self, rhs: Self) -> WeightedPolynomial {
        self.checked_sub(rhs).expect("conflicting variable weights")
    }
}

impl Mul for &WeightedPolynomial {
    type Output = WeightedPolynomial;
    fn mul(self, rhs: Self) -> WeightedPolynomial {
        self.checked_mul(rhs).expect("conflicting variable weights")
    }
}

impl Neg for &WeightedPolynomial {
    type Output = WeightedPolynomial;
    fn neg(self) -> WeightedPolynomial {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_algebra::rat;
    use proptest::prelude::*;

    fn p1() -> WeightedPolynomial {
        WeightedPolynomial::variable("p_1", 4).unwrap()
    }

    fn l1() -> WeightedPolynomial {
        WeightedPolynomial::variable("L_1", 4).unwrap()
    }

    #[test]
    fn adding_zero_is_identity() {
        assert_eq!(&p1() + &WeightedPolynomial::zero(), p1());
    }

    #[test]
    fn rename_and_scale_substitution() {
        let map = BTreeMap::from([("p_1".to_owned(), l1().scale(&rat(3, 1)))]);
        let out = p1().substitute(&map).unwrap();
        assert_eq!(out, l1().scale(&rat(3, 1)));
    }

    #[test]
    fn square_has_weight_eight() {
        let sq = &p1() * &p1();
        assert_eq!(sq.homogeneous_degree(), Some(8));
        assert_eq!(sq.coefficient(&Monomial::var("p_1", 2)), rat(1, 1));
    }

    #[test]
    fn substitution_rejects_weight_mismatch() {
        let p2 = WeightedPolynomial::variable("p_2", 8).unwrap();
        let map = BTreeMap::from([("p_1".to_owned(), p2)]);
        assert!(matches!(
            p1().substitute(&map),
            Err(Error::WeightMismatch { .. })
        ));
    }

    #[test]
    fn conflicting_weights_are_rejected() {
        let bad = WeightedPolynomial::variable("p_1", 8).unwrap();
        assert!(matches!(
            p1().checked_add(&bad),
            Err(Error::ConflictingWeights { .. })
        ));
    }

    #[test]
    fn cancellation_removes_terms() {
        let d = &p1() - &p1();
        assert!(d.is_zero());
    }

    fn arb_poly() -> impl Strategy<Value = WeightedPolynomial> {
        // Polynomials in x (weight 1) and y (weight 2) with small coefficients.
        prop::collection::vec((0u32..3, 0u32..3, -4i64..5, 1i64..4), 0..5).prop_map(|terms| {
            let weights = BTreeMap::from([("x".to_owned(), 1), ("y".to_owned(), 2)]);
            let terms = terms.into_iter().map(|(a, b, n, d)| {
                let mut m = Monomial::var("x", a);
                m = m.mul(&Monomial::var("y", b));
                (m, rat(n, d))
            });
            WeightedPolynomial::from_terms(weights, terms).unwrap()
        })
    }

    proptest! {
        #[test]
        fn multiplication_is_associative(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn substitution_is_a_ring_homomorphism(a in arb_poly(), b in arb_poly(), k in -3i64..4) {
            // x -> k*x, y -> x^2 + y keeps weights.
            let x = WeightedPolynomial::variable("x", 1).unwrap();
            let y = WeightedPolynomial::variable("y", 2).unwrap();
            let map = BTreeMap::from([
                ("x".to_owned(), x.scale(&rat(k, 1))),
                ("y".to_owned(), &(&x * &x) + &y),
            ]);
            let lhs = (&a * &b).substitute(&map).unwrap();
            let rhs = &a.substitute(&map).unwrap() * &b.substitute(&map).unwrap();
            prop_assert_eq!(lhs.terms(), rhs.terms());
            let lhs = (&a + &b).substitute(&map).unwrap();
            let rhs = &a.substitute(&map).unwrap() + &b.substitute(&map).unwrap();
            prop_assert_eq!(lhs.terms(), rhs.terms());
        }
    }
}
