//! Exact scalars and the cohomology ring of projective space.
//!
//! Every number in the crate is a [`Rational`]; cohomology classes of `P^n` are
//! coefficient vectors over the hyperplane powers `h^0, ..., h^n`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub const MIN_AMBIENT: u8 = 2;
pub const MAX_AMBIENT: u8 = 3;

pub(crate) fn check_ambient(n: u8) -> Result<()> {
    if (MIN_AMBIENT..=MAX_AMBIENT).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedAmbient(n))
    }
}

pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn int_rat(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        // exact at every step: acc * (n - i) is divisible by (i + 1)
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Multinomial weight for splitting `counts` into `left` and `counts - left`.
pub(crate) fn split_weight(counts: &[u32], left: &[u32]) -> BigInt {
    counts
        .iter()
        .zip(left)
        .map(|(&c, &l)| binomial(c as u64, l as i64))
        .product()
}

/// An element of `H^*(P^n; Q)` written in the basis `h^0, ..., h^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohClass {
    ambient: u8,
    coeffs: Vec<Rational>,
}

impl CohClass {
    pub fn zero(ambient: u8) -> Result<Self> {
        check_ambient(ambient)?;
        Ok(Self {
            ambient,
            coeffs: vec![Rational::zero(); ambient as usize + 1],
        })
    }

    /// The pure class `h^exponent`; exponents above `n` give the zero class.
    pub fn basis(ambient: u8, exponent: u8) -> Result<Self> {
        let mut class = Self::zero(ambient)?;
        if exponent <= ambient {
            class.coeffs[exponent as usize] = Rational::one();
        }
        Ok(class)
    }

    pub fn from_coeffs(ambient: u8, coeffs: Vec<Rational>) -> Result<Self> {
        check_ambient(ambient)?;
        if coeffs.len() != ambient as usize + 1 {
            return Err(Error::Unsupported(format!(
                "P^{ambient} classes need {} coefficients, got {}",
                ambient as usize + 1,
                coeffs.len()
            )));
        }
        Ok(Self { ambient, coeffs })
    }

    pub fn ambient(&self) -> u8 {
        self.ambient
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, exponent: u8) -> Rational {
        self.coeffs
            .get(exponent as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `Some(k)` when the class is exactly `h^k`.
    pub fn pure_exponent(&self) -> Option<u8> {
        let mut nonzero = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
        match (nonzero.next(), nonzero.next()) {
            (Some((k, c)), None) if c.is_one() => Some(k as u8),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &CohClass) -> Result<CohClass> {
        self.same_ambient(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CohClass {
            ambient: self.ambient,
            coeffs,
        })
    }

    pub fn scale(&self, factor: &Rational) -> CohClass {
        CohClass {
            ambient: self.ambient,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn cup(&self, other: &CohClass) -> Result<CohClass> {
        self.same_ambient(other)?;
        let n = self.ambient as usize;
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        Ok(CohClass {
            ambient: self.ambient,
            coeffs,
        })
    }

    /// Degree of the top-dimensional part, i.e. the integral over `P^n`.
    pub fn integral(&self) -> Rational {
        self.coeffs[self.ambient as usize].clone()
    }

    fn same_ambient(&self, other: &CohClass) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }
}

/// A class in the `k`-fold product `(P^n)^k`, stored as a sparse sum of
/// basis tensors `h^{e_1} x ... x h^{e_k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorClass {
    ambient: u8,
    arity: usize,
    terms: BTreeMap<Vec<u8>, Rational>,
}

impl TensorClass {
    pub fn unit(ambient: u8, arity: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; arity], Rational::one());
        Self {
            ambient,
            arity,
            terms,
        }
    }

    /// Pullback of the diagonal class of `P^n x P^n` along the projection to
    /// slots `(a, b)`.
    pub fn pairwise_diagonal(ambient: u8, arity: usize, a: usize, b: usize) -> Self {
        let mut terms = BTreeMap::new();
        for i in 0..=ambient {
            let mut exps = vec![0; arity];
            exps[a] = i;
            exps[b] = ambient - i;
            terms.insert(exps, Rational::one());
        }
        Self {
            ambient,
            arity,
            terms,
        }
    }

    pub fn cup(&self, other: &TensorClass) -> Result<TensorClass> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        if self.arity != other.arity {
            return Err(Error::UnsupportedArity(other.arity));
        }
        let mut terms: BTreeMap<Vec<u8>, Rational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            'pairs: for (eb, cb) in &other.terms {
                let mut exps = Vec::with_capacity(self.arity);
                for (x, y) in ea.iter().zip(eb) {
                    let e = x + y;
                    if e > self.ambient {
                        continue 'pairs;
                    }
                    exps.push(e);
                }
                *terms.entry(exps).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(TensorClass {
            ambient: self.ambient,
            arity: self.arity,
            terms,
        })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }
}

/// Kunneth expansion of the small diagonal `{(x, ..., x)}` in `(P^n)^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalDecomposition {
    pub ambient: u8,
    pub arity: usize,
    pub terms: Vec<(Vec<u8>, Rational)>,
}

/// Small diagonal of `(P^n)^k`, computed as `D_12 . D_23 ... D_{k-1,k}`.
pub fn diagonal(ambient: u8, arity: usize) -> Result<DiagonalDecomposition> {
    check_ambient(ambient)?;
    if !(2..=3).contains(&arity) {
        return Err(Error::UnsupportedArity(arity));
    }
    let mut acc = TensorClass::unit(ambient, arity);
    for slot in 0..arity - 1 {
        acc = acc.cup(&TensorClass::pairwise_diagonal(
            ambient,
            arity,
            slot,
            slot + 1,
        ))?;
    }
    let terms = acc.terms().map(|(e, c)| (e.to_vec(), c.clone())).collect();
    Ok(DiagonalDecomposition {
        ambient,
        arity,
        terms,
    })
}
