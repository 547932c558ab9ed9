//! Ruan-Tian invariants from the two composition laws.
//!
//! The genus-reducing law replaces a handle by a diagonal pair of insertions;
//! after two steps a genus-two query becomes a four-point genus-zero invariant
//! with fixed cross-ratio, which the splitting law turns into products of
//! three-point invariants.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{binomial, check_ambient, int_rat, Rational};
use crate::constraints::ConstraintProfile;
use crate::error::{Error, Result};
use crate::gw0::{GwTable, Insertions};

/// `RT_{g,d}(primaries; constraints)`: primaries sit at fixed points of a
/// fixed curve, constraints are met anywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RtQuery {
    pub ambient: u8,
    pub genus: u8,
    pub degree: u32,
    pub primaries: Vec<u8>,
    pub constraints: Insertions,
}

impl RtQuery {
    pub fn genus_two(profile: &ConstraintProfile) -> Self {
        Self {
            ambient: profile.ambient,
            genus: 2,
            degree: profile.degree,
            primaries: Vec::new(),
            constraints: profile.classes(),
        }
    }

    /// A query is balanced when either
    /// `sum codim(primaries) + sum (codim - 1)(constraints) = (n+1) d + n (1 - g)`
    /// (fixed curve, fixed points), or, in genus zero, the primaries left after
    /// deleting fundamental classes form a balanced genus-zero invariant.
    pub fn is_balanced(&self) -> bool {
        let n = self.ambient as i64;
        let fixed: i64 = self.primaries.iter().map(|&c| c as i64).sum();
        let moving = self.constraints.codim_sum() as i64 - self.constraints.len() as i64;
        if fixed + moving == (n + 1) * self.degree as i64 + n * (1 - self.genus as i64) {
            return true;
        }
        if self.genus != 0 {
            return false;
        }
        let kept = self.kept_primaries();
        let moving_all = moving + kept.iter().map(|&c| c as i64 - 1).sum::<i64>();
        let arity_ok = self.degree > 0 || kept.len() as u32 + self.constraints.len() == 3;
        arity_ok && moving_all == (n + 1) * self.degree as i64 + n - 3
    }

    /// A fundamental class at a fixed point imposes nothing and is dropped
    /// (in positive degree; degree-zero invariants keep all three slots).
    fn kept_primaries(&self) -> Vec<u8> {
        if self.degree == 0 {
            return self.primaries.clone();
        }
        self.primaries.iter().copied().filter(|&e| e != 0).collect()
    }

    fn validate(&self) -> Result<()> {
        check_ambient(self.ambient)?;
        if let Some(&e) = self
            .primaries
            .iter()
            .chain(self.constraints.exponents().iter())
            .find(|&&e| e > self.ambient)
        {
            return Err(Error::ExponentOutOfRange {
                ambient: self.ambient,
                exponent: e,
            });
        }
        if !self.is_balanced() {
            return Err(Error::Unbalanced(format!(
                "RT_{{{},{}}} query with primaries {:?} and constraints {:?}",
                self.genus,
                self.degree,
                self.primaries,
                self.constraints.exponents()
            )));
        }
        Ok(())
    }
}

/// Three-point genus-zero invariant.
pub fn rt0_3pt(
    table: &GwTable,
    ambient: u8,
    degree: u32,
    primaries: [u8; 3],
    constraints: &Insertions,
) -> Result<Rational> {
    let query = RtQuery {
        ambient,
        genus: 0,
        degree,
        primaries: primaries.to_vec(),
        constraints: *constraints,
    };
    query.validate()?;
    reduce(table, &query)
}

fn three_point(table: &GwTable, n: u8, d: u32, primaries: &[u8], mu: &Insertions) -> Rational {
    let ins = primaries
        .iter()
        .fold(*mu, |acc, &e| acc.with(e, 1).expect("validated exponent"));
    table.invariant(n, d, ins)
}

/// Four-point invariant with fixed cross-ratio, split as
/// `(alpha, beta | gamma, delta)`. Fundamental classes at fixed points are
/// dropped first, as in [`rt_genus_reduce`].
pub fn rt0_4pt(
    table: &GwTable,
    ambient: u8,
    degree: u32,
    primaries: [u8; 4],
    constraints: &Insertions,
) -> Result<Rational> {
    let query = RtQuery {
        ambient,
        genus: 0,
        degree,
        primaries: primaries.to_vec(),
        constraints: *constraints,
    };
    query.validate()?;
    reduce(table, &query)
}

/// The splitting law itself, with no fundamental-class deletion: three-point
/// factors are ordinary genus-zero invariants, so a fundamental class on a
/// positive-degree side kills that term.
pub fn splitting_law(table: &GwTable, n: u8, d: u32, p: [u8; 4], mu: &Insertions) -> Rational {
    let mut total = Rational::zero();
    for d1 in 0..=d {
        let d2 = d - d1;
        for (s1, s2, w) in mu.splits() {
            let mut acc = Rational::zero();
            for e in 0..=n {
                let left = three_point(table, n, d1, &[p[0], p[1], e], &s1);
                if left.is_zero() {
                    continue;
                }
                acc += left * three_point(table, n, d2, &[n - e, p[2], p[3]], &s2);
            }
            total += int_rat(w) * acc;
        }
    }
    total
}

/// Reduces a genus one or two query to genus zero and evaluates it.
pub fn rt_genus_reduce(table: &GwTable, query: &RtQuery) -> Result<Rational> {
    query.validate()?;
    if query.genus > 2 {
        return Err(Error::Unsupported(format!("genus {}", query.genus)));
    }
    reduce(table, query)
}

fn reduce(table: &GwTable, q: &RtQuery) -> Result<Rational> {
    let n = q.ambient;
    if q.genus == 0 {
        let kept = q.kept_primaries();
        return match kept.len() {
            0..=3 => Ok(three_point(table, n, q.degree, &kept, &q.constraints)),
            4 => {
                let p = [kept[0], kept[1], kept[2], kept[3]];
                Ok(splitting_law(table, n, q.degree, p, &q.constraints))
            }
            k => Err(Error::Unsupported(format!(
                "genus-zero invariant with {k} fixed insertions"
            ))),
        };
    }
    let mut total = Rational::zero();
    for e in 0..=n {
        let mut primaries = q.primaries.clone();
        primaries.extend([e, n - e]);
        let lower = RtQuery {
            genus: q.genus - 1,
            primaries,
            ..q.clone()
        };
        total += reduce(table, &lower)?;
    }
    Ok(total)
}

/// `RT_{2,d}(mu)` for a genus-two constraint profile.
pub fn rt2(table: &GwTable, profile: &ConstraintProfile) -> Result<Rational> {
    rt_genus_reduce(table, &RtQuery::genus_two(profile))
}

/// Closed form of `RT_{2,d}` on `P^2` through `3d - 2` points:
/// `6 d^2 n_d + sum d1^3 d2^3 C(3d-2, 3d1-1) n_{d1} n_{d2}`.
pub fn rt2_p2_closed(table: &GwTable, degree: i64) -> Result<BigInt> {
    let d = degree;
    let nd = table.n_plane(d)?;
    let mut total = BigInt::from(6 * d * d) * nd;
    for d1 in 1..d {
        let d2 = d - d1;
        total += BigInt::from(d1.pow(3) * d2.pow(3))
            * binomial((3 * d - 2) as u64, 3 * d1 - 1)
            * table.plane_number(d1 as u32)
            * table.plane_number(d2 as u32);
    }
    Ok(total)
}
