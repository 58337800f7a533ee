//! The forms `J_{+,g}` and `J_{-,g}`, the quadratic refinement and its
//! modulus, membership in `O_{g,g}(Z)`, `Sp_{2g}(Z)` and the theta group
//! `Gamma_g(1,2)`, and seeded sampling of group elements.
//!
//! Coordinates are ordered `(a_1..a_g, b_1..b_g)` for `v = sum a_i x_i + b_i y_i`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Square matrix with arbitrary-precision integer entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    size: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(size: usize) -> Self {
        IntegerMatrix {
            size,
            entries: vec![BigInt::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m.entries[i * size + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let size = rows.len();
        let mut m = Self::zeros(size);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(Error::DimensionMismatch {
                    expected: size,
                    found: row.len(),
                });
            }
            for (j, v) in row.iter().enumerate() {
                m.entries[i * size + j] = BigInt::from(*v);
            }
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.size + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.size).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.size);
        for i in 0..self.size {
            for j in 0..self.size {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.size != other.size {
            return Err(Error::DimensionMismatch {
                expected: self.size,
                found: other.size,
            });
        }
        let n = self.size;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.size {
            return Err(Error::DimensionMismatch {
                expected: self.size,
                found: v.len(),
            });
        }
        Ok((0..self.size)
            .map(|i| (0..self.size).map(|j| self.get(i, j) * &v[j]).sum())
            .collect())
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries.chunks(self.size) {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormSign {
    /// `J_{+,g}`, symmetric.
    Plus,
    /// `J_{-,g}`, skew-symmetric.
    Minus,
}

impl FormSign {
    pub fn as_char(self) -> char {
        match self {
            FormSign::Plus => '+',
            FormSign::Minus => '-',
        }
    }

    /// The sign `(-1)^n` of the intersection form on middle homology.
    pub fn for_n(n: u32) -> Self {
        if n.is_multiple_of(2) {
            FormSign::Plus
        } else {
            FormSign::Minus
        }
    }
}

/// The block form `J_{+-,g} = ((0, I), (+-I, 0))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupForm {
    pub g: usize,
    pub sign: FormSign,
}

impl GroupForm {
    pub fn new(g: usize, sign: FormSign) -> Result<Self> {
        if g == 0 {
            return Err(Error::Precondition("g must be positive".into()));
        }
        Ok(GroupForm { g, sign })
    }

    pub fn dim(&self) -> usize {
        2 * self.g
    }

    pub fn matrix(&self) -> IntegerMatrix {
        let g = self.g;
        let mut j = IntegerMatrix::zeros(2 * g);
        let lower = match self.sign {
            FormSign::Plus => BigInt::one(),
            FormSign::Minus => -BigInt::one(),
        };
        for i in 0..g {
            j.set(i, g + i, BigInt::one());
            j.set(g + i, i, lower.clone());
        }
        j
    }

    /// `I(v, w) = v^T J w`.
    pub fn pairing(&self, v: &[BigInt], w: &[BigInt]) -> BigInt {
        let g = self.g;
        let mut acc = BigInt::zero();
        for i in 0..g {
            acc += &v[i] * &w[g + i];
            match self.sign {
                FormSign::Plus => acc += &v[g + i] * &w[i],
                FormSign::Minus => acc -= &v[g + i] * &w[i],
            }
        }
        acc
    }
}

/// `A^T J A = J`.
pub fn is_in_group(a: &IntegerMatrix, form: &GroupForm) -> Result<bool> {
    if a.size() != form.dim() {
        return Err(Error::DimensionMismatch {
            expected: form.dim(),
            found: a.size(),
        });
    }
    let j = form.matrix();
    Ok(a.transpose().mul(&j)?.mul(a)? == j)
}

/// Which arithmetic group acts on middle homology of `W_g^{2n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GammaType {
    /// `O_{g,g}(Z)`, `n` even.
    Orthogonal,
    /// `Sp_{2g}(Z)`, `n` in {1, 3, 7}.
    Symplectic,
    /// `Gamma_g(1,2)`, all other odd `n`.
    Theta,
}

impl GammaType {
    pub fn sign(self) -> FormSign {
        match self {
            GammaType::Orthogonal => FormSign::Plus,
            GammaType::Symplectic | GammaType::Theta => FormSign::Minus,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GammaType::Orthogonal => "O_{g,g}(Z)",
            GammaType::Symplectic => "Sp_{2g}(Z)",
            GammaType::Theta => "Gamma_g(1,2)",
        }
    }
}

pub fn gamma_type(n: u32) -> GammaType {
    match QuadraticModulus::for_n(n) {
        QuadraticModulus::IntegersFull => GammaType::Orthogonal,
        QuadraticModulus::TrivialGroup => GammaType::Symplectic,
        QuadraticModulus::Mod2 => GammaType::Theta,
    }
}

/// The subgroup `Lambda_n` of `Z` that the quadratic refinement is taken modulo.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadraticModulus {
    /// `n` even: `Lambda_n = 0`, values in `Z`.
    IntegersFull,
    /// `n` in {1, 3, 7}: `Lambda_n = Z`, values in the trivial group.
    TrivialGroup,
    /// otherwise: `Lambda_n = 2Z`, values in `Z/2`.
    Mod2,
}

impl QuadraticModulus {
    pub fn for_n(n: u32) -> Self {
        if n.is_multiple_of(2) {
            QuadraticModulus::IntegersFull
        } else if matches!(n, 1 | 3 | 7) {
            QuadraticModulus::TrivialGroup
        } else {
            QuadraticModulus::Mod2
        }
    }

    pub fn reduce(self, v: BigInt) -> BigInt {
        match self {
            QuadraticModulus::IntegersFull => v,
            QuadraticModulus::TrivialGroup => BigInt::zero(),
            QuadraticModulus::Mod2 => v.mod_floor(&BigInt::from(2)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            QuadraticModulus::IntegersFull => "0",
            QuadraticModulus::TrivialGroup => "Z",
            QuadraticModulus::Mod2 => "2Z",
        }
    }
}

/// A value of `q` in `Z / Lambda_n`, stored as its canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticValue {
    pub modulus: QuadraticModulus,
    pub value: BigInt,
}

fn refinement_in(v: &[BigInt], modulus: QuadraticModulus) -> Result<QuadraticValue> {
    if !v.len().is_multiple_of(2) || v.is_empty() {
        return Err(Error::Precondition(format!(
            "vector length {} is not of the form 2g with g >= 1",
            v.len()
        )));
    }
    let g = v.len() / 2;
    let raw: BigInt = (0..g).map(|i| &v[i] * &v[g + i]).sum();
    Ok(QuadraticValue {
        modulus,
        value: modulus.reduce(raw),
    })
}

/// `q(sum a_i x_i + b_i y_i) = sum a_i b_i mod Lambda_n`.
pub fn quadratic_refinement(v: &[BigInt], n: u32) -> Result<QuadraticValue> {
    refinement_in(v, QuadraticModulus::for_n(n))
}

fn preserves_refinement(a: &IntegerMatrix, modulus: QuadraticModulus) -> Result<bool> {
    for k in 0..a.size() {
        let mut e = vec![BigInt::zero(); a.size()];
        e[k] = BigInt::one();
        if refinement_in(&a.column(k), modulus)? != refinement_in(&e, modulus)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `A` preserves `q`. `A` must preserve the intersection form of
/// parity `(-1)^n`; checking `q` on the basis suffices because `q` is
/// determined by its basis values and the form.
pub fn preserves_quadratic(a: &IntegerMatrix, n: u32, g: usize) -> Result<bool> {
    let form = GroupForm::new(g, FormSign::for_n(n))?;
    if !is_in_group(a, &form)? {
        return Err(Error::NotInGroup {
            sign: form.sign.as_char(),
            g,
        });
    }
    preserves_refinement(a, QuadraticModulus::for_n(n))
}

/// An arithmetic group of the kind `Gamma(W_g)` for a given genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ArithmeticGroup {
    pub kind: GammaType,
    pub g: usize,
}

impl ArithmeticGroup {
    pub fn new(kind: GammaType, g: usize) -> Result<Self> {
        if g == 0 {
            return Err(Error::Precondition("g must be positive".into()));
        }
        Ok(ArithmeticGroup { kind, g })
    }

    pub fn form(&self) -> GroupForm {
        GroupForm {
            g: self.g,
            sign: self.kind.sign(),
        }
    }

    /// Fixed finite generating set used for sampling.
    ///
    /// Symplectic: transvections `v -> v +- I(v,u) u` for
    /// `u in {x_i, y_i, x_i + y_i, x_i + x_j}` and `J_{-,g}`.
    /// Theta: the symplectic set together with squared transvections,
    /// filtered by preservation of `q` mod 2.
    /// Orthogonal: hyperbolic swaps `x_i <-> y_i`, sign flips of `(x_i, y_i)`,
    /// and unipotents `x_i -> x_i +- x_j, y_j -> y_j -+ y_i`.
    pub fn generators(&self) -> Vec<IntegerMatrix> {
        let form = self.form();
        let gens = match self.kind {
            GammaType::Symplectic => symplectic_generators(&form),
            GammaType::Theta => {
                let mut base = symplectic_generators(&form);
                let squares: Vec<_> = base
                    .iter()
                    .map(|t| t.mul(t).expect("square matrices"))
                    .collect();
                base.extend(squares);
                base.into_iter()
                    .filter(|m| {
                        preserves_refinement(m, QuadraticModulus::Mod2).expect("even dimension")
                    })
                    .collect()
            }
            GammaType::Orthogonal => orthogonal_generators(self.g),
        };
        for m in &gens {
            assert!(
                is_in_group(m, &form).expect("matching dimension"),
                "shipped generator leaves the group"
            );
        }
        gens
    }
}

fn basis_vector(dim: usize, k: usize) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); dim];
    e[k] = BigInt::one();
    e
}

fn transvection(form: &GroupForm, u: &[BigInt], sign: i64) -> IntegerMatrix {
    let dim = form.dim();
    let mut m = IntegerMatrix::zeros(dim);
    for k in 0..dim {
        let e = basis_vector(dim, k);
        let c = form.pairing(&e, u) * sign;
        for i in 0..dim {
            m.set(i, k, &e[i] + &c * &u[i]);
        }
    }
    m
}

fn symplectic_generators(form: &GroupForm) -> Vec<IntegerMatrix> {
    let g = form.g;
    let dim = form.dim();
    let mut directions = Vec::new();
    for i in 0..g {
        directions.push(basis_vector(dim, i));
        directions.push(basis_vector(dim, g + i));
        let mut xy = basis_vector(dim, i);
        xy[g + i] = BigInt::one();
        directions.push(xy);
    }
    for i in 0..g {
        for j in i + 1..g {
            let mut xx = basis_vector(dim, i);
            xx[j] = BigInt::one();
            directions.push(xx);
        }
    }
    let mut gens = Vec::new();
    for u in &directions {
        gens.push(transvection(form, u, 1));
        gens.push(transvection(form, u, -1));
    }
    gens.push(form.matrix());
    gens
}

fn orthogonal_generators(g: usize) -> Vec<IntegerMatrix> {
    let dim = 2 * g;
    let mut gens = Vec::new();
    for i in 0..g {
        let mut swap = IntegerMatrix::identity(dim);
        swap.set(i, i, BigInt::zero());
        swap.set(g + i, g + i, BigInt::zero());
        swap.set(i, g + i, BigInt::one());
        swap.set(g + i, i, BigInt::one());
        gens.push(swap);

        let mut flip = IntegerMatrix::identity(dim);
        flip.set(i, i, -BigInt::one());
        flip.set(g + i, g + i, -BigInt::one());
        gens.push(flip);
    }
    for i in 0..g {
        for j in 0..g {
            if i == j {
                continue;
            }
            for s in [1i64, -1] {
                // column of x_i gains s*x_j; column of y_j gains -s*y_i
                let mut e = IntegerMatrix::identity(dim);
                e.set(j, i, BigInt::from(s));
                e.set(g + i, g + j, BigInt::from(-s));
                gens.push(e);
            }
        }
    }
    gens
}

/// Product of `word_length` generators drawn by a ChaCha stream seeded with `seed`.
pub fn sample_group_element(
    group: &ArithmeticGroup,
    seed: u64,
    word_length: usize,
) -> Result<IntegerMatrix> {
    if word_length == 0 {
        return Err(Error::Precondition("word_length must be at least 1".into()));
    }
    let gens = group.generators();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = IntegerMatrix::identity(group.form().dim());
    for _ in 0..word_length {
        let pick = rng.random_range(0..gens.len());
        acc = acc.mul(&gens[pick])?;
    }
    debug_assert!(is_in_group(&acc, &group.form())?);
    Ok(acc)
}

/// The transvection `x_1 -> x_1 + y_1` fixing every other basis vector.
pub fn shipped_transvection(g: usize) -> IntegerMatrix {
    let mut m = IntegerMatrix::identity(2 * g);
    m.set(g, 0, BigInt::one());
    m
}
