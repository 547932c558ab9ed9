//! Reducible configurations with a distinguished node.
//!
//! `tau_2` counts two-component curves with a chosen node, `tau_3` three
//! components through one common point, and `tau_2^{(2)}` two components whose
//! node lies on a fixed generic line.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{binomial, check_ambient, diagonal, int_rat, Rational};
use crate::constraints::ConstraintProfile;
use crate::error::{Error, Result};
use crate::gw0::{GwTable, Insertions};

/// `tau_2` on `P^2`: `1/2 sum C(3d-2, 3d1-1) d1 d2 n_{d1} n_{d2}`.
pub fn tau2_p2(table: &GwTable, degree: i64) -> Result<BigInt> {
    if degree < 1 {
        return Err(Error::InvalidDegree(degree));
    }
    let d = degree;
    let mut total = BigInt::zero();
    for d1 in 1..d {
        let d2 = d - d1;
        total += binomial((3 * d - 2) as u64, 3 * d1 - 1)
            * BigInt::from(d1 * d2)
            * table.plane_number(d1 as u32)
            * table.plane_number(d2 as u32);
    }
    Ok(total / 2)
}

/// Configurations of `arity` positive-degree components through `mu` sharing
/// one node, with `h^decoration` imposed on the node. Computed as the ordered
/// sum divided by `arity!`.
pub fn tau_common_node(
    table: &GwTable,
    profile: &ConstraintProfile,
    arity: usize,
    decoration: u8,
) -> Result<Rational> {
    check_ambient(profile.ambient)?;
    if decoration != 0 && decoration != 2 {
        return Err(Error::InvalidDecoration(decoration));
    }
    let n = profile.ambient;
    let diag = diagonal(n, arity)?;
    let node_terms: Vec<(Vec<u8>, Rational)> = diag
        .terms
        .iter()
        .filter(|(e, _)| e[0] + decoration <= n)
        .map(|(e, c)| {
            let mut e = e.clone();
            e[0] += decoration;
            (e, c.clone())
        })
        .collect();

    let mut total = Rational::zero();
    for degrees in compositions(profile.degree, arity) {
        for (parts, weight) in distributions(&profile.classes(), arity) {
            let mut acc = Rational::zero();
            for (exps, coeff) in &node_terms {
                let mut prod = coeff.clone();
                for ((&d, part), &e) in degrees.iter().zip(&parts).zip(exps) {
                    if prod.is_zero() {
                        break;
                    }
                    prod *= table.invariant(n, d, part.with(e, 1).expect("exponent fits"));
                }
                acc += prod;
            }
            total += int_rat(weight) * acc;
        }
    }
    let k_factorial: BigInt = (1..=arity as u64).map(BigInt::from).product();
    Ok(total / int_rat(k_factorial))
}

/// `tau_3(mu)` on `P^3`.
pub fn tau3(table: &GwTable, profile: &ConstraintProfile) -> Result<Rational> {
    tau_common_node(table, profile, 3, 0)
}

/// `tau_2^{(2)}(mu)`: the node is on a generic line.
pub fn tau2_on_line(table: &GwTable, profile: &ConstraintProfile) -> Result<Rational> {
    tau_common_node(table, profile, 2, 2)
}

/// Pairing against the stratum of two-component maps of degrees `(d0, d1)`
/// through `mu`, with extra insertions on each side:
/// `sum_mu-splits sum_i <side0, e_i>_{d0} <side1, e^i>_{d1}`.
pub fn boundary_pairing(
    table: &GwTable,
    ambient: u8,
    degrees: (u32, u32),
    mu: &Insertions,
    extra: (&Insertions, &Insertions),
) -> Result<Rational> {
    check_ambient(ambient)?;
    let (d0, d1) = degrees;
    if d0 == 0 || d1 == 0 {
        return Ok(Rational::zero());
    }
    let n = ambient;
    let mut total = Rational::zero();
    for (s0, s1, w) in mu.splits() {
        let s0 = s0.union(extra.0);
        let s1 = s1.union(extra.1);
        let mut acc = Rational::zero();
        for e in 0..=n {
            let left = table.invariant(n, d0, s0.with(e, 1).expect("fits"));
            if left.is_zero() {
                continue;
            }
            acc += left * table.invariant(n, d1, s1.with(n - e, 1).expect("fits"));
        }
        total += int_rat(w) * acc;
    }
    Ok(total)
}

/// Ordered ways to write `total` as `parts` positive integers.
pub(crate) fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return if total > 0 { vec![vec![total]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every assignment of labeled insertions to `parts` ordered groups, with the
/// number of labelings per count pattern.
pub(crate) fn distributions(ins: &Insertions, parts: usize) -> Vec<(Vec<Insertions>, BigInt)> {
    if parts == 1 {
        return vec![(vec![*ins], BigInt::one())];
    }
    let mut out = Vec::new();
    for (first, rest, w) in ins.splits() {
        for (mut tail, w2) in distributions(&rest, parts - 1) {
            tail.insert(0, first);
            out.push((tail, &w * w2));
        }
    }
    out
}
