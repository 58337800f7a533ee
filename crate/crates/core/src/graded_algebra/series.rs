use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(degree: u32) -> Parity {
        if degree.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// A labelled generator of a free graded-commutative algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedGenerator {
    label: String,
    degree: u32,
    parity: Parity,
}

impl GradedGenerator {
    /// Checked constructor. Degree must be positive and the parity must
    /// agree with the degree.
    pub fn new(label: impl Into<String>, degree: u32, parity: Parity) -> Result<Self> {
        let label = label.into();
        if degree == 0 {
            return Err(Error::ZeroDegreeGenerator { label });
        }
        if Parity::of(degree) != parity {
            return Err(Error::ParityMismatch {
                label,
                degree,
                parity: parity.as_str(),
            });
        }
        Ok(GradedGenerator {
            label,
            degree,
            parity,
        })
    }

    /// Generator whose parity is read off its degree.
    pub fn with_degree(label: impl Into<String>, degree: u32) -> Result<Self> {
        Self::new(label, degree, Parity::of(degree))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }
}

/// Dimensions of the graded pieces of a graded vector space in degrees
/// `0..=max_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HilbertSeries {
    coefficients: Vec<u64>,
}

impl HilbertSeries {
    /// The series `1`, i.e. the ground field concentrated in degree 0.
    pub fn one(max_degree: usize) -> Self {
        let mut coefficients = vec![0; max_degree + 1];
        coefficients[0] = 1;
        HilbertSeries { coefficients }
    }

    pub fn from_coefficients(coefficients: Vec<u64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::Precondition(
                "a Hilbert series needs at least the degree-0 coefficient".into(),
            ));
        }
        Ok(HilbertSeries { coefficients })
    }

    pub fn max_degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    /// Coefficient in degree `d`, or `None` beyond the truncation.
    pub fn get(&self, d: usize) -> Option<u64> {
        self.coefficients.get(d).copied()
    }

    /// Multiplies in place by `1/(1 - q^degree)`.
    fn mul_polynomial_factor(&mut self, degree: usize) -> Result<()> {
        for k in degree..self.coefficients.len() {
            self.coefficients[k] = self.coefficients[k]
                .checked_add(self.coefficients[k - degree])
                .ok_or(Error::Overflow { degree: k })?;
        }
        Ok(())
    }

    /// Multiplies in place by `1 + q^degree`.
    fn mul_exterior_factor(&mut self, degree: usize) -> Result<()> {
        for k in (degree..self.coefficients.len()).rev() {
            self.coefficients[k] = self.coefficients[k]
                .checked_add(self.coefficients[k - degree])
                .ok_or(Error::Overflow { degree: k })?;
        }
        Ok(())
    }

    /// Truncated Cauchy product; the result is truncated at the smaller of
    /// the two truncation degrees.
    pub fn truncated_product(&self, other: &HilbertSeries) -> Result<HilbertSeries> {
        let top = self.max_degree().min(other.max_degree());
        let mut out = vec![0u64; top + 1];
        for (d, slot) in out.iter_mut().enumerate() {
            let mut acc: u64 = 0;
            for i in 0..=d {
                let term = self.coefficients[i]
                    .checked_mul(other.coefficients[d - i])
                    .ok_or(Error::Overflow { degree: d })?;
                acc = acc.checked_add(term).ok_or(Error::Overflow { degree: d })?;
            }
            *slot = acc;
        }
        Ok(HilbertSeries { coefficients: out })
    }

    /// Lowest degree where the two series disagree, within the common truncation.
    pub fn first_difference(&self, other: &HilbertSeries) -> Option<usize> {
        self.coefficients
            .iter()
            .zip(&other.coefficients)
            .position(|(a, b)| a != b)
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coefficients.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Hilbert series of the free graded-commutative algebra on `gens`: a
/// polynomial algebra on the even generators tensored with an exterior
/// algebra on the odd ones, truncated at `max_degree`.
pub fn free_graded_commutative_series(
    gens: &[GradedGenerator],
    max_degree: usize,
) -> Result<HilbertSeries> {
    let mut series = HilbertSeries::one(max_degree);
    for gen in gens {
        if gen.degree == 0 {
            return Err(Error::ZeroDegreeGenerator {
                label: gen.label.clone(),
            });
        }
        let d = gen.degree as usize;
        if d > max_degree {
            continue;
        }
        match gen.parity {
            Parity::Even => series.mul_polynomial_factor(d)?,
            Parity::Odd => series.mul_exterior_factor(d)?,
        }
    }
    Ok(series)
}

/// True iff `a` and `b` agree in every degree `<= up_to`.
pub fn series_pointwise_equal(a: &HilbertSeries, b: &HilbertSeries, up_to: usize) -> Result<bool> {
    let available = a.max_degree().min(b.max_degree());
    if up_to > available {
        return Err(Error::TruncationRange {
            requested: up_to,
            available,
        });
    }
    Ok(a.coefficients[..=up_to] == b.coefficients[..=up_to])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn even(label: &str, d: u32) -> GradedGenerator {
        GradedGenerator::new(label, d, Parity::Even).unwrap()
    }

    #[test]
    fn empty_algebra_is_ground_field() {
        let s = free_graded_commutative_series(&[], 4).unwrap();
        assert_eq!(s.coefficients(), &[1, 0, 0, 0, 0]);
    }

    #[test]
    fn polynomial_on_one_even_generator() {
        let s = free_graded_commutative_series(&[even("x", 2)], 6).unwrap();
        assert_eq!(s.coefficients(), &[1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn exterior_on_one_odd_generator() {
        let y = GradedGenerator::new("y", 3, Parity::Odd).unwrap();
        let s = free_graded_commutative_series(&[y], 6).unwrap();
        assert_eq!(s.coefficients(), &[1, 0, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn rejects_degree_zero() {
        assert!(matches!(
            GradedGenerator::new("z", 0, Parity::Even),
            Err(Error::ZeroDegreeGenerator { .. })
        ));
    }

    #[test]
    fn rejects_parity_mismatch() {
        assert!(matches!(
            GradedGenerator::new("z", 3, Parity::Even),
            Err(Error::ParityMismatch { .. })
        ));
    }

    #[test]
    fn pointwise_equality() {
        let a = HilbertSeries::from_coefficients(vec![1, 0, 1]).unwrap();
        let b = HilbertSeries::from_coefficients(vec![1, 0, 2]).unwrap();
        assert!(series_pointwise_equal(&a, &a, 2).unwrap());
        assert!(!series_pointwise_equal(&a, &b, 2).unwrap());
        assert!(series_pointwise_equal(&a, &b, 1).unwrap());
        assert!(matches!(
            series_pointwise_equal(&a, &b, 3),
            Err(Error::TruncationRange { .. })
        ));
    }

    #[test]
    fn first_difference_reports_lowest_degree() {
        let a = HilbertSeries::from_coefficients(vec![1, 0, 1, 0, 2]).unwrap();
        let b = HilbertSeries::from_coefficients(vec![1, 0, 1, 0, 1]).unwrap();
        assert_eq!(a.first_difference(&b), Some(4));
        assert_eq!(a.first_difference(&a), None);
    }
}
