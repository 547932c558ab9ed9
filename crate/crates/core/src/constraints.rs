//! Point and line constraints `mu` for genus-two counts.

use serde::{Deserialize, Serialize};

use crate::algebra::check_ambient;
use crate::error::{Error, Result};
use crate::gw0::Insertions;

/// Degree-`d` genus-two curves in `P^n` through `points` points and `lines`
/// lines (lines only make sense in `P^3`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConstraintProfile {
    pub ambient: u8,
    pub degree: u32,
    pub points: u32,
    pub lines: u32,
}

impl ConstraintProfile {
    /// Validates the genus-two balance: `p = 3d - 2` on `P^2`, `2p + q = 4d - 3`
    /// on `P^3`.
    pub fn new(ambient: u8, degree: i64, points: u32, lines: u32) -> Result<Self> {
        check_ambient(ambient)?;
        if degree < 1 {
            return Err(Error::InvalidDegree(degree));
        }
        match ambient {
            2 => {
                if lines != 0 {
                    return Err(Error::Unbalanced(
                        "line constraints are only available in P^3".into(),
                    ));
                }
                if points as i64 != 3 * degree - 2 {
                    return Err(Error::Unbalanced(format!(
                        "p must equal 3d-2 = {} for P^2 (got p={points})",
                        3 * degree - 2
                    )));
                }
            }
            _ => {
                if 2 * points as i64 + lines as i64 != 4 * degree - 3 {
                    return Err(Error::Unbalanced(format!(
                        "2p+q must equal 4d-3 = {} (got p={points}, q={lines})",
                        4 * degree - 3
                    )));
                }
            }
        }
        Ok(Self {
            ambient,
            degree: degree as u32,
            points,
            lines,
        })
    }

    /// The plane profile through `3d - 2` points.
    pub fn plane(degree: i64) -> Result<Self> {
        Self::new(2, degree, (3 * degree - 2).max(0) as u32, 0)
    }

    /// Every admissible `(p, q)` for `P^3` in degree `d`, most points first.
    pub fn all_p3(degree: i64) -> Result<Vec<Self>> {
        if degree < 1 {
            return Err(Error::InvalidDegree(degree));
        }
        let budget = 4 * degree as u32 - 3;
        (0..=budget / 2)
            .rev()
            .map(|p| Self::new(3, degree, p, budget - 2 * p))
            .collect()
    }

    /// Constraint classes: points are `h^n`, lines are `h^2`.
    pub fn classes(&self) -> Insertions {
        Insertions::new()
            .with(self.ambient, self.points)
            .and_then(|i| {
                if self.ambient == 2 {
                    Some(i)
                } else {
                    i.with(2, self.lines)
                }
            })
            .expect("ambient exponents fit")
    }
}
