//! Generators and Hilbert series for the rational cohomology of the infinite
//! loop space of `MT theta^n`, its quotient by the kappa classes of single
//! L-classes (the Torelli-invariant ring), the `kappa_{L_a L_b}` presentation,
//! and the stable range `C_g^{2n}`.

use std::fmt;
use std::ops::RangeInclusive;

use crate::error::Result;
use crate::graded_algebra::{free_graded_commutative_series, GradedGenerator, HilbertSeries};

/// The index set `I = {ceil((n+1)/4), ..., n}` of L-classes surviving in the
/// cohomology of the `n`-connective cover of `BSO(2n)`.
pub fn generator_index_set(n: u32) -> RangeInclusive<u32> {
    (n + 4) / 4..=n
}

/// Exponents of a monomial `prod_{j in I} L_j^{i_j}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    lower: u32,
    exponents: Vec<u32>,
}

impl MultiIndex {
    pub fn new(n: u32, exponents: Vec<u32>) -> Option<Self> {
        let range = generator_index_set(n);
        (exponents.len() == range.clone().count()).then(|| MultiIndex {
            lower: *range.start(),
            exponents,
        })
    }

    /// Exponent of `L_j`; zero outside the index set.
    pub fn exponent(&self, j: u32) -> u32 {
        j.checked_sub(self.lower)
            .and_then(|k| self.exponents.get(k as usize).copied())
            .unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// `|i| = sum_j i_j`.
    pub fn norm(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// `w(i) = 4 sum_j j i_j`.
    pub fn weight(&self) -> u32 {
        4 * self
            .exponents
            .iter()
            .enumerate()
            .map(|(k, e)| (self.lower + k as u32) * e)
            .sum::<u32>()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.exponents.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// All multi-indices over `I` with `w(i) <= max_weight`, in lexicographic
/// order of exponent vectors.
pub fn multi_indices_up_to_weight(n: u32, max_weight: u32) -> Vec<MultiIndex> {
    let range = generator_index_set(n);
    let js: Vec<u32> = range.clone().collect();
    let mut out = Vec::new();
    let mut current = vec![0u32; js.len()];
    fn recurse(
        js: &[u32],
        pos: usize,
        budget: u32,
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if pos == js.len() {
            out.push(current.clone());
            return;
        }
        let j = js[pos];
        for e in 0..=budget / j {
            current[pos] = e;
            recurse(js, pos + 1, budget - e * j, current, out);
        }
        current[pos] = 0;
    }
    let mut raw = Vec::new();
    recurse(&js, 0, max_weight / 4, &mut current, &mut raw);
    for exponents in raw {
        out.push(MultiIndex {
            lower: *range.start(),
            exponents,
        });
    }
    out
}

/// A kappa class `lambda_i = kappa_{L^i}` or `mu_i = kappa_{e L^i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KappaGenerator {
    pub multi_index: MultiIndex,
    pub with_euler: bool,
    pub degree: u32,
}

impl KappaGenerator {
    pub fn label(&self) -> String {
        let kind = if self.with_euler { "mu" } else { "lambda" };
        format!("{kind}_{}", self.multi_index)
    }

    fn as_graded(&self) -> Result<GradedGenerator> {
        GradedGenerator::with_degree(self.label(), self.degree)
    }
}

/// The free polynomial generators of `H^*(Omega^infty_0 MT theta^n; Q)` of
/// degree at most `max_degree`: `lambda_i` with `w(i) > 2n` and `mu_j` with
/// `w(j) > 0`. Sorted by degree, then lambda before mu, then multi-index.
pub fn mt_generators(n: u32, max_degree: u32) -> Vec<KappaGenerator> {
    let mut gens = Vec::new();
    for mi in multi_indices_up_to_weight(n, max_degree + 2 * n) {
        let w = mi.weight();
        if w > 2 * n {
            gens.push(KappaGenerator {
                multi_index: mi.clone(),
                with_euler: false,
                degree: w - 2 * n,
            });
        }
        if w > 0 && w <= max_degree {
            gens.push(KappaGenerator {
                multi_index: mi,
                with_euler: true,
                degree: w,
            });
        }
    }
    gens.sort_by(|a, b| {
        (a.degree, a.with_euler, &a.multi_index).cmp(&(b.degree, b.with_euler, &b.multi_index))
    });
    gens
}

/// Generators of the quotient by the ideal of the `kappa_{L_i}`: drops the
/// lambda classes with `|i| = 1`.
pub fn torelli_generators(n: u32, max_degree: u32) -> Vec<KappaGenerator> {
    mt_generators(n, max_degree)
        .into_iter()
        .filter(|g| g.with_euler || g.multi_index.norm() >= 2)
        .collect()
}

fn series_of(gens: &[KappaGenerator], max_degree: u32) -> Result<HilbertSeries> {
    let graded = gens
        .iter()
        .map(KappaGenerator::as_graded)
        .collect::<Result<Vec<_>>>()?;
    free_graded_commutative_series(&graded, max_degree as usize)
}

pub fn mt_series(n: u32, max_degree: u32) -> Result<HilbertSeries> {
    series_of(&mt_generators(n, max_degree), max_degree)
}

/// Hilbert series of the Torelli-invariant ring
/// `Q[lambda_i, mu_j | w(i) > 2n, w(j) > 0, |i| >= 2]`.
pub fn torelli_invariant_series(n: u32, max_degree: u32) -> Result<HilbertSeries> {
    series_of(&torelli_generators(n, max_degree), max_degree)
}

/// A generator `kappa_{L_a L_b}` with `ceil((n+1)/4) <= a <= b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairGenerator {
    pub a: u32,
    pub b: u32,
    pub degree: u32,
}

impl PairGenerator {
    pub fn label(&self) -> String {
        format!("kappa_{{L_{}L_{}}}", self.a, self.b)
    }
}

/// All `kappa_{L_a L_b}` of degree `4(a+b) - 2n <= max_degree`. `b` is not
/// bounded by `n`.
pub fn pair_generators(n: u32, max_degree: u32) -> Vec<PairGenerator> {
    let lower = *generator_index_set(n).start();
    let mut out = Vec::new();
    let degree = |a: u32, b: u32| 4 * (a + b) - 2 * n;
    let mut a = lower;
    while degree(a, a) <= max_degree {
        let mut b = a;
        while degree(a, b) <= max_degree {
            out.push(PairGenerator {
                a,
                b,
                degree: degree(a, b),
            });
            b += 1;
        }
        a += 1;
    }
    out.sort_by_key(|p| (p.degree, p.a, p.b));
    out
}

pub fn theorem_b_series(n: u32, max_degree: u32) -> Result<HilbertSeries> {
    let graded = pair_generators(n, max_degree)
        .iter()
        .map(|p| GradedGenerator::with_degree(p.label(), p.degree))
        .collect::<Result<Vec<_>>>()?;
    free_graded_commutative_series(&graded, max_degree as usize)
}

/// The stable range constant `C_g^{2n}`, or `None` when no `C >= 0` works.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StableRangeResult(pub Option<u32>);

impl StableRangeResult {
    pub fn value(self) -> Option<u32> {
        self.0
    }
}

/// Largest `C >= 0` with `2C <= g - 3` and `2n >= max(2C + 7, 3C + 4)`.
pub fn stable_range(g: u32, n: u32) -> StableRangeResult {
    let dim = 2 * i64::from(n);
    let g = i64::from(g);
    let from_genus = (g - 3).div_euclid(2);
    let from_disjunction = (dim - 7).div_euclid(2);
    let from_pseudoisotopy = (dim - 4).div_euclid(3);
    let c = from_genus.min(from_disjunction).min(from_pseudoisotopy);
    StableRangeResult((c >= 0).then_some(c as u32))
}

/// Degrees `4i - 2n` of the positive-degree classes `kappa_{L_i}`, `i` in the
/// index set, paired with `i`.
pub fn symb_image_generator_degrees(n: u32) -> Vec<(u32, u32)> {
    generator_index_set(n)
        .filter(|&i| 4 * i > 2 * n)
        .map(|i| (i, 4 * i - 2 * n))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_sets() {
        assert_eq!(generator_index_set(3), 1..=3);
        assert_eq!(generator_index_set(4), 2..=4);
        assert_eq!(generator_index_set(1), 1..=1);
    }

    #[test]
    fn multi_index_weight_and_norm() {
        let mi = MultiIndex::new(3, vec![2, 0, 1]).unwrap();
        assert_eq!(mi.weight(), 4 * (2 + 3));
        assert_eq!(mi.norm(), 3);
        assert_eq!(mi.exponent(3), 1);
        assert_eq!(mi.exponent(7), 0);
        assert!(MultiIndex::new(3, vec![1]).is_none());
    }

    #[test]
    fn generators_for_n3() {
        let low = mt_generators(3, 2);
        let labels: Vec<_> = low.iter().map(KappaGenerator::label).collect();
        assert_eq!(labels, ["lambda_(0,1,0)", "lambda_(2,0,0)"]);
        assert!(low.iter().all(|g| g.degree == 2));

        let up_to_4 = mt_generators(3, 4);
        let mus: Vec<_> = up_to_4.iter().filter(|g| g.with_euler).collect();
        assert_eq!(mus.len(), 1);
        assert_eq!(mus[0].label(), "mu_(1,0,0)");
        assert_eq!(mus[0].degree, 4);

        for n in 1..6 {
            assert!(mt_generators(n, 0).is_empty());
        }
    }

    #[test]
    fn generator_invariants() {
        for n in 1..=8 {
            for g in mt_generators(n, 30) {
                let w = g.multi_index.weight();
                assert!(g.degree >= 1 && g.degree % 2 == 0);
                if g.with_euler {
                    assert_eq!(g.degree, w);
                } else {
                    assert!(w > 2 * n);
                    assert_eq!(g.degree, w - 2 * n);
                }
            }
        }
    }

    #[test]
    fn no_duplicate_generators() {
        let gens = mt_generators(5, 40);
        let mut seen = std::collections::HashSet::new();
        for g in &gens {
            assert!(seen.insert((g.multi_index.clone(), g.with_euler)));
        }
    }

    #[test]
    fn series_examples() {
        assert_eq!(mt_series(3, 4).unwrap().coefficients(), &[1, 0, 2, 0, 4]);
        assert_eq!(
            torelli_invariant_series(3, 4).unwrap().coefficients(),
            &[1, 0, 1, 0, 2]
        );
        assert_eq!(
            theorem_b_series(3, 4).unwrap().coefficients(),
            &[1, 0, 1, 0, 1]
        );
        for n in 1..10 {
            assert_eq!(mt_series(n, 1).unwrap().coefficients(), &[1, 0]);
        }
    }

    #[test]
    fn torelli_series_for_large_n_starts_in_degree_eight() {
        let s = torelli_invariant_series(40, 8).unwrap();
        assert_eq!(&s.coefficients()[..8], &[1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(s.get(8), Some(1));
        let b = theorem_b_series(40, 8).unwrap();
        assert_eq!(b.get(8), Some(1));
        assert_eq!(
            pair_generators(40, 8)[0],
            PairGenerator {
                a: 11,
                b: 11,
                degree: 8
            }
        );
    }

    #[test]
    fn stable_range_examples() {
        assert_eq!(stable_range(25, 23).value(), Some(11));
        assert_eq!(stable_range(7, 5).value(), Some(1));
        assert_eq!(stable_range(3, 3).value(), None);
        assert_eq!(stable_range(2, 40).value(), None);
    }

    #[test]
    fn stable_range_is_maximal() {
        for g in 0..40u32 {
            for n in 1..40u32 {
                let ok = |c: u32| 2 * c + 3 <= g && 2 * n >= (2 * c + 7).max(3 * c + 4);
                match stable_range(g, n).value() {
                    Some(c) => assert!(ok(c) && !ok(c + 1)),
                    None => assert!(!ok(0)),
                }
            }
        }
    }

    #[test]
    fn symb_image_degrees() {
        let d4: Vec<u32> = symb_image_generator_degrees(4)
            .iter()
            .map(|p| p.1)
            .collect();
        assert_eq!(d4, [4, 8]);
        let d3: Vec<u32> = symb_image_generator_degrees(3)
            .iter()
            .map(|p| p.1)
            .collect();
        assert_eq!(d3, [2, 6]);
    }
}
