//! Brute-force invariant dimensions of `S[V[d_1] + ... + V[d_r]]` in a fixed
//! degree, by intersecting fixed subspaces of sampled group elements.
//!
//! The degree-`d` piece splits into blocks, one per multiplicity vector
//! `(m_1, ..., m_r)` with `sum m_c d_c = d`; each block is
//! `Sym^{m_c} V` (even `d_c`) or `Lambda^{m_c} V` (odd `d_c`) tensored over
//! the copies, and the group acts diagonally. Basis tensors are weight vectors
//! for the diagonal torus `x_i -> t_i x_i, y_i -> t_i^{-1} y_i`, which lies in
//! both `Sp_{2g}` and `O_{g,g}`; the search starts from the zero-weight span,
//! which is the torus-fixed subspace, before any sampling.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::linalg::{canonical_basis, null_space};
use super::GradedVCopies;
use crate::arithmetic_groups::{is_in_group, sample_group_element, ArithmeticGroup, IntegerMatrix};
use crate::error::{Error, Result};
use crate::graded_algebra::{Parity, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Generators multiplied together per sample.
    pub word_length: usize,
    /// Stop once the dimension is unchanged for this many consecutive samples.
    pub stable_runs: usize,
    pub max_samples: usize,
    /// Largest admissible dimension of the degree-`d` piece.
    pub basis_cap: usize,
    /// Intersect with the fixed spaces of the generating set before sampling.
    /// Without this, three consecutive samples from one component of a
    /// disconnected group (e.g. `det = 1` in `O_{g,g}`) end the search early.
    pub generators_first: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            word_length: 10,
            stable_runs: 3,
            max_samples: 64,
            basis_cap: 4096,
            generators_first: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleOutcome {
    pub dimension: usize,
    /// Dimension of the degree-`d` piece.
    pub piece_dimension: usize,
    /// Dimension of the zero-weight subspace, before any sample.
    pub zero_weight_dimension: usize,
    /// Dimension after the generating set, when applied.
    pub after_generators: usize,
    /// Fixed-subspace dimension after each sample.
    pub history: Vec<usize>,
    pub stabilized: bool,
}

type FactorKey = (Parity, usize);

#[derive(Debug, Clone)]
struct Block {
    multiplicities: Vec<usize>,
    factors: Vec<FactorKey>,
    sizes: Vec<usize>,
    len: usize,
}

/// The degree-`d` piece with its block decomposition and factor bases.
#[derive(Debug, Clone)]
pub struct GradedPiece {
    g: usize,
    blocks: Vec<Block>,
    bases: BTreeMap<FactorKey, Vec<Vec<usize>>>,
}

fn factor_size(parity: Parity, power: usize, dim: usize) -> u128 {
    match parity {
        Parity::Even => binomial((dim + power).saturating_sub(1) as u128, power as u128),
        Parity::Odd if power > dim => 0,
        Parity::Odd => binomial(dim as u128, power as u128),
    }
}

fn factor_basis(parity: Parity, power: usize, dim: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    match parity {
        Parity::Even => (0..dim).combinations_with_replacement(power).collect(),
        Parity::Odd => (0..dim).combinations(power).collect(),
    }
}

fn multiplicity_vectors(
    degrees: &[u32],
    parities: &[Parity],
    dim: usize,
    d: u32,
) -> Vec<Vec<usize>> {
    fn go(
        c: usize,
        remaining: u32,
        degrees: &[u32],
        parities: &[Parity],
        dim: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if c == degrees.len() {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        let mut cap = (remaining / degrees[c]) as usize;
        if parities[c] == Parity::Odd {
            cap = cap.min(dim);
        }
        for m in 0..=cap {
            current.push(m);
            go(
                c + 1,
                remaining - m as u32 * degrees[c],
                degrees,
                parities,
                dim,
                current,
                out,
            );
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(0, d, degrees, parities, dim, &mut Vec::new(), &mut out);
    out
}

impl GradedPiece {
    pub fn new(copies: &GradedVCopies, degree: u32, cap: usize) -> Result<Self> {
        let g = copies.g();
        let dim = 2 * g;
        let degrees = copies.copy_degrees();
        let parities: Vec<Parity> = degrees.iter().map(|&d| Parity::of(d)).collect();
        let mut total: u128 = 0;
        let mut blocks = Vec::new();
        for mult in multiplicity_vectors(degrees, &parities, dim, degree) {
            let mut len: u128 = 1;
            for (c, &m) in mult.iter().enumerate() {
                len = len.saturating_mul(factor_size(parities[c], m, dim));
            }
            total = total.saturating_add(len);
            if total > cap as u128 {
                return Err(Error::BasisCapExceeded {
                    size: usize::try_from(total).unwrap_or(usize::MAX),
                    cap,
                });
            }
            if len == 0 {
                continue;
            }
            let factors: Vec<FactorKey> =
                mult.iter().zip(&parities).map(|(&m, &p)| (p, m)).collect();
            let sizes = factors
                .iter()
                .map(|&(p, m)| factor_size(p, m, dim) as usize)
                .collect();
            blocks.push(Block {
                multiplicities: mult,
                factors,
                sizes,
                len: len as usize,
            });
        }
        let mut bases = BTreeMap::new();
        for b in &blocks {
            for &(p, m) in &b.factors {
                bases
                    .entry((p, m))
                    .or_insert_with(|| factor_basis(p, m, dim));
            }
        }
        Ok(GradedPiece { g, blocks, bases })
    }

    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(|b| b.len).sum()
    }

    pub fn block_multiplicities(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| b.multiplicities.clone())
            .collect()
    }

    fn weight_of_basis_vector(&self, i: usize) -> (usize, i64) {
        if i < self.g {
            (i, 1)
        } else {
            (i - self.g, -1)
        }
    }

    /// The span of zero-weight basis tensors: the fixed subspace of the
    /// diagonal torus.
    pub fn zero_weight_subspace(&self) -> FixedSubspace {
        let mut per_block = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            let factor_weights: Vec<Vec<Vec<i64>>> = b
                .factors
                .iter()
                .map(|key| {
                    self.bases[key]
                        .iter()
                        .map(|mono| {
                            let mut w = vec![0i64; self.g];
                            for &i in mono {
                                let (axis, s) = self.weight_of_basis_vector(i);
                                w[axis] += s;
                            }
                            w
                        })
                        .collect()
                })
                .collect();
            let mut vectors = Vec::new();
            for flat in 0..b.len {
                let mut w = vec![0i64; self.g];
                let mut rest = flat;
                for c in (0..b.sizes.len()).rev() {
                    let idx = rest % b.sizes[c];
                    rest /= b.sizes[c];
                    for (acc, x) in w.iter_mut().zip(&factor_weights[c][idx]) {
                        *acc += x;
                    }
                }
                if w.iter().all(|&x| x == 0) {
                    let mut v = vec![Rational::zero(); b.len];
                    v[flat] = Rational::one();
                    vectors.push(v);
                }
            }
            per_block.push(vectors);
        }
        FixedSubspace { per_block }
    }

    fn factor_matrices(&self, a: &IntegerMatrix) -> BTreeMap<FactorKey, Vec<Vec<Rational>>> {
        self.bases
            .iter()
            .map(|(&key, basis)| (key, induced_matrix(a, key.0, basis)))
            .collect()
    }
}

/// Matrix of `Sym^m A` or `Lambda^m A` on the monomial basis `basis`.
fn induced_matrix(a: &IntegerMatrix, parity: Parity, basis: &[Vec<usize>]) -> Vec<Vec<Rational>> {
    let index: BTreeMap<&[usize], usize> = basis
        .iter()
        .enumerate()
        .map(|(i, m)| (m.as_slice(), i))
        .collect();
    let dim = a.size();
    let size = basis.len();
    let mut out = vec![vec![Rational::zero(); size]; size];
    for (col, mono) in basis.iter().enumerate() {
        let mut poly: BTreeMap<Vec<usize>, BigInt> = BTreeMap::from([(Vec::new(), BigInt::one())]);
        for &u in mono {
            let mut next: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
            for (term, coeff) in &poly {
                for i in 0..dim {
                    let entry = a.get(i, u);
                    if entry.is_zero() {
                        continue;
                    }
                    let pos = term.partition_point(|&t| t <= i);
                    let sign = match parity {
                        Parity::Even => 1,
                        Parity::Odd => {
                            if term.contains(&i) {
                                continue;
                            }
                            if (term.len() - pos) % 2 == 0 {
                                1
                            } else {
                                -1
                            }
                        }
                    };
                    let mut key = term.clone();
                    key.insert(pos, i);
                    *next.entry(key).or_insert_with(BigInt::zero) += coeff * entry * sign;
                }
            }
            next.retain(|_, c| !c.is_zero());
            poly = next;
        }
        for (term, coeff) in poly {
            out[index[term.as_slice()]][col] = Rational::from(coeff);
        }
    }
    out
}

/// Applies `R_0 (x) R_1 (x) ... ` to a row-major tensor `v` of shape `sizes`.
fn apply_tensor(factors: &[&Vec<Vec<Rational>>], sizes: &[usize], v: &[Rational]) -> Vec<Rational> {
    let mut cur = v.to_vec();
    for (c, r) in factors.iter().enumerate() {
        let n = sizes[c];
        if n == 1 {
            // Degree-0 factors act by 1.
            continue;
        }
        let stride: usize = sizes[c + 1..].iter().product();
        let outer = cur.len() / (n * stride);
        let mut next = vec![Rational::zero(); cur.len()];
        for o in 0..outer {
            for t in 0..stride {
                let base = o * n * stride + t;
                for j in 0..n {
                    let x = &cur[base + j * stride];
                    if x.is_zero() {
                        continue;
                    }
                    for i in 0..n {
                        let rij = &r[i][j];
                        if !rij.is_zero() {
                            next[base + i * stride] += rij * x;
                        }
                    }
                }
            }
        }
        cur = next;
    }
    cur
}

/// A subspace of the degree-`d` piece, stored blockwise in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedSubspace {
    per_block: Vec<Vec<Vec<Rational>>>,
}

impl FixedSubspace {
    pub fn dimension(&self) -> usize {
        self.per_block.iter().map(Vec::len).sum()
    }

    /// Canonical basis vectors, block by block.
    pub fn basis(&self) -> &[Vec<Vec<Rational>>] {
        &self.per_block
    }

    /// Intersects with `ker(A - 1)`.
    pub fn restrict(&mut self, piece: &GradedPiece, a: &IntegerMatrix) {
        let mats = piece.factor_matrices(a);
        for (b, basis) in piece.blocks.iter().zip(self.per_block.iter_mut()) {
            if basis.is_empty() {
                continue;
            }
            let factors: Vec<&Vec<Vec<Rational>>> = b.factors.iter().map(|k| &mats[k]).collect();
            let moved: Vec<Vec<Rational>> = basis
                .iter()
                .map(|k| {
                    let mut w = apply_tensor(&factors, &b.sizes, k);
                    for (x, y) in w.iter_mut().zip(k) {
                        *x -= y;
                    }
                    w
                })
                .collect();
            let r = basis.len();
            let rows: Vec<Vec<Rational>> = (0..b.len)
                .map(|i| moved.iter().map(|w| w[i].clone()).collect::<Vec<_>>())
                .filter(|row: &Vec<Rational>| row.iter().any(|x| !x.is_zero()))
                .collect();
            let kernel = null_space(rows, r);
            let combined: Vec<Vec<Rational>> = kernel
                .iter()
                .map(|y| {
                    let mut v = vec![Rational::zero(); b.len];
                    for (coef, k) in y.iter().zip(basis.iter()) {
                        if coef.is_zero() {
                            continue;
                        }
                        for (acc, x) in v.iter_mut().zip(k) {
                            if !x.is_zero() {
                                *acc += coef * x;
                            }
                        }
                    }
                    v
                })
                .collect();
            *basis = canonical_basis(combined);
        }
    }
}

/// Seeds of the successive samples drawn for a run seeded with `seed`.
pub fn sample_seeds(seed: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.random()).collect()
}

pub fn brute_force_invariant_run(
    group: &ArithmeticGroup,
    copies: &GradedVCopies,
    degree: u32,
    seed: u64,
    config: &OracleConfig,
) -> Result<OracleOutcome> {
    if group.g != copies.g() {
        return Err(Error::DimensionMismatch {
            expected: 2 * group.g,
            found: 2 * copies.g(),
        });
    }
    if config.stable_runs == 0 || config.max_samples == 0 {
        return Err(Error::Precondition(
            "oracle needs stable_runs >= 1 and max_samples >= 1".into(),
        ));
    }
    let piece = GradedPiece::new(copies, degree, config.basis_cap)?;
    let mut fixed = piece.zero_weight_subspace();
    let zero_weight_dimension = fixed.dimension();
    if config.generators_first {
        for a in group.generators() {
            fixed.restrict(&piece, &a);
        }
    }
    let after_generators = fixed.dimension();
    let form = group.form();
    let mut history = Vec::new();
    let mut previous = after_generators;
    let mut streak = 0;
    for s in sample_seeds(seed, config.max_samples) {
        let a = sample_group_element(group, s, config.word_length)?;
        assert!(is_in_group(&a, &form)?, "sampled element left the group");
        fixed.restrict(&piece, &a);
        let dim = fixed.dimension();
        history.push(dim);
        streak = if dim == previous { streak + 1 } else { 0 };
        previous = dim;
        if streak >= config.stable_runs {
            break;
        }
    }
    Ok(OracleOutcome {
        dimension: previous,
        piece_dimension: piece.dimension(),
        zero_weight_dimension,
        after_generators,
        history,
        stabilized: streak >= config.stable_runs,
    })
}

/// Dimension of the invariants of `group` in degree `degree` of `S[copies]`.
pub fn brute_force_invariant_dim(
    group: &ArithmeticGroup,
    copies: &GradedVCopies,
    degree: u32,
    seed: u64,
    config: &OracleConfig,
) -> Result<usize> {
    let outcome = brute_force_invariant_run(group, copies, degree, seed, config)?;
    if !outcome.stabilized {
        return Err(Error::Precondition(format!(
            "oracle did not stabilise within {} samples",
            config.max_samples
        )));
    }
    Ok(outcome.dimension)
}
