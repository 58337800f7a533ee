//! Invariant counting for `S[V (x) P_*]`: closed-form stable counts, the
//! Berglund-Madsen graded copies of `V`, and the comparison against the
//! `kappa_{L_a L_b}` ring.

pub mod linalg;
pub mod oracle;

pub use oracle::{
    brute_force_invariant_dim, brute_force_invariant_run, FixedSubspace, GradedPiece, OracleConfig,
    OracleOutcome,
};

use crate::arithmetic_groups::{gamma_type, ArithmeticGroup};
use crate::error::{Error, Result};
use crate::graded_algebra::{free_graded_commutative_series, GradedGenerator, HilbertSeries};
use crate::mt_cohomology::theorem_b_series;

/// Rank of `pi_k(G/O) (x) Q`: 1 in positive degrees divisible by 4.
pub fn go_homotopy_rank(k: u32) -> u32 {
    u32::from(k > 0 && k.is_multiple_of(4))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MappingSpaceHomotopy {
    pub mult_v: u32,
    pub mult_trivial: u32,
    pub total_dim: u64,
}

/// `pi_k (x) Q` of the mapping space, `(V (x) S_{k+n}) + S_{k+2n}`.
pub fn mapping_space_homotopy(n: u32, g: u32, k: u32) -> Result<MappingSpaceHomotopy> {
    if k == 0 {
        return Err(Error::Precondition(
            "homotopy degree k must be at least 1".into(),
        ));
    }
    let mult_v = go_homotopy_rank(k + n);
    let mult_trivial = go_homotopy_rank(k + 2 * n);
    Ok(MappingSpaceHomotopy {
        mult_v,
        mult_trivial,
        total_dim: 2 * u64::from(g) * u64::from(mult_v) + u64::from(mult_trivial),
    })
}

/// Degrees `4m - n` in `(0, max_degree]`, ascending.
pub fn bm_p_degrees(n: u32, max_degree: u32) -> Vec<u32> {
    (1..)
        .map(|m: u32| 4 * m)
        .skip_while(|&x| x <= n)
        .map(|x| x - n)
        .take_while(|&d| d <= max_degree)
        .collect()
}

/// Graded copies `V[d_1], ..., V[d_r]` of `V = Q^{2g}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedVCopies {
    g: usize,
    copy_degrees: Vec<u32>,
}

impl GradedVCopies {
    pub fn new(g: usize, copy_degrees: Vec<u32>) -> Result<Self> {
        if g == 0 {
            return Err(Error::Precondition("g must be positive".into()));
        }
        if copy_degrees.contains(&0) {
            return Err(Error::ZeroDegreeGenerator {
                label: "V[0]".into(),
            });
        }
        Ok(GradedVCopies { g, copy_degrees })
    }

    /// `V (x) P_*` truncated at `max_degree`.
    pub fn berglund_madsen(n: u32, g: usize, max_degree: u32) -> Result<Self> {
        let copies = Self::new(g, bm_p_degrees(n, max_degree))?;
        debug_assert!(copies
            .copy_degrees
            .iter()
            .all(|&d| (d + n).is_multiple_of(4)));
        Ok(copies)
    }

    /// `k` even copies whose degree-`d` piece is exactly `V^{(x) k}`.
    ///
    /// Copy `c` sits in degree `2(B + 2^c)` with `B = k 2^k`; the only way
    /// to reach `d = 2(kB + 2^k - 1)` uses each copy once.
    pub fn tensor_power(g: usize, k: u32) -> Result<(Self, u32)> {
        if k == 0 || k > 8 {
            return Err(Error::Precondition(format!(
                "tensor power k = {k} outside 1..=8"
            )));
        }
        let base = k << k;
        let degrees: Vec<u32> = (0..k).map(|c| 2 * (base + (1 << c))).collect();
        let d = degrees.iter().sum();
        Ok((Self::new(g, degrees)?, d))
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn copy_degrees(&self) -> &[u32] {
        &self.copy_degrees
    }
}

/// Series of `S[V (x) P_*]`: `2g` generators in each degree of `bm_p_degrees`.
pub fn bm_cohomology_series(n: u32, g: u32, max_degree: u32) -> Result<HilbertSeries> {
    if n == 0 || g == 0 {
        return Err(Error::Precondition("need n >= 1 and g >= 1".into()));
    }
    let mut gens = Vec::new();
    for d in bm_p_degrees(n, max_degree) {
        for c in 0..2 * g {
            gens.push(GradedGenerator::with_degree(format!("v{c}[{d}]"), d)?);
        }
    }
    free_graded_commutative_series(&gens, max_degree as usize)
}

/// The pairs `x <= y` from `bm_p_degrees` with `x + y <= max_degree`.
pub fn omega_generators(n: u32, max_degree: u32) -> Vec<(u32, u32)> {
    let degrees = bm_p_degrees(n, max_degree);
    let mut out = Vec::new();
    for (i, &x) in degrees.iter().enumerate() {
        for &y in &degrees[i..] {
            if x + y <= max_degree {
                out.push((x, y));
            }
        }
    }
    out
}

/// Polynomial ring on `omega_{x,y}`, `x <= y` in `bm_p_degrees`, degree `x + y`.
pub fn stable_invariant_series(n: u32, max_degree: u32) -> Result<HilbertSeries> {
    let gens = omega_generators(n, max_degree)
        .into_iter()
        .map(|(x, y)| GradedGenerator::with_degree(format!("omega_{{{x},{y}}}"), x + y))
        .collect::<Result<Vec<_>>>()?;
    free_graded_commutative_series(&gens, max_degree as usize)
}

/// `#{(a, b) : 1 <= a <= b, a + b = i}`.
pub fn two_part_partitions(i: u32) -> u32 {
    i / 2
}

/// Perfect matchings of `k` points: `(k-1)!!` for `k` even, 0 for `k` odd.
pub fn matchings_count(k: u32) -> u64 {
    if k % 2 == 1 {
        return 0;
    }
    (1..k).step_by(2).map(u64::from).product()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantRow {
    pub degree: u32,
    pub stable_count: u64,
    pub ring_side_count: u64,
    pub oracle_count: Option<u64>,
    /// `stable_count == ring_side_count`.
    pub ring_agrees: bool,
    /// `oracle_count == stable_count`, when the oracle ran.
    pub oracle_agrees: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub n: u32,
    pub g: u32,
    pub max_degree: u32,
    /// The Berglund-Madsen description is stated for degrees below `n - 1`.
    pub bm_valid_below: u32,
    pub rows: Vec<InvariantRow>,
}

impl InvariantReport {
    pub fn ring_agrees_everywhere(&self) -> bool {
        self.rows.iter().all(|r| r.ring_agrees)
    }

    pub fn oracle_agrees_everywhere(&self) -> bool {
        self.rows.iter().all(|r| r.oracle_agrees != Some(false))
    }
}

/// Per-degree comparison of the stable `omega` count, the `kappa_{L_aL_b}`
/// ring, and (optionally) the brute-force oracle for `Gamma(W_g)`.
pub fn invariant_crosscheck(
    n: u32,
    g: u32,
    max_degree: u32,
    with_oracle: bool,
    seed: u64,
) -> Result<InvariantReport> {
    if n < 8 {
        return Err(Error::Precondition(format!(
            "comparison needs n >= 8, got {n}"
        )));
    }
    if g == 0 {
        return Err(Error::Precondition("g must be positive".into()));
    }
    let stable = stable_invariant_series(n, max_degree)?;
    let ring = theorem_b_series(n, max_degree)?;
    let oracle_setup = if with_oracle {
        let group = ArithmeticGroup::new(gamma_type(n), g as usize)?;
        let copies = GradedVCopies::berglund_madsen(n, g as usize, max_degree)?;
        Some((group, copies))
    } else {
        None
    };
    let config = OracleConfig::default();
    let mut rows = Vec::new();
    for d in 0..=max_degree {
        let stable_count = stable.coefficients()[d as usize];
        let ring_side_count = ring.coefficients()[d as usize];
        let oracle_count = match &oracle_setup {
            Some((group, copies)) => {
                Some(brute_force_invariant_dim(group, copies, d, seed, &config)? as u64)
            }
            None => None,
        };
        rows.push(InvariantRow {
            degree: d,
            stable_count,
            ring_side_count,
            oracle_count,
            ring_agrees: stable_count == ring_side_count,
            oracle_agrees: oracle_count.map(|o| o == stable_count),
        });
    }
    Ok(InvariantReport {
        n,
        g,
        max_degree,
        bm_valid_below: n.saturating_sub(1),
        rows,
    })
}
