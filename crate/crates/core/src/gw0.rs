//! Genus-zero Gromov-Witten invariants of `P^2` and `P^3`.
//!
//! Primary invariants `<h^{c_1}, ..., h^{c_m}>_d` are normalized first
//! (fundamental classes kill positive-degree invariants, divisors contribute a
//! factor `d`), then looked up in a write-once memo table. Plane invariants
//! reduce to the Kontsevich numbers; `P^3` invariants are reconstructed from
//! `<pt, pt>_1 = 1` with the associativity (WDVV) relations.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{binomial, check_ambient, int_rat, split_weight, Rational};
use crate::error::{Error, Result};

/// Largest basis exponent an [`Insertions`] multiset can hold.
pub const MAX_EXPONENT: u8 = 3;
const SLOTS: usize = MAX_EXPONENT as usize + 1;

/// Multiset of basis exponents, stored as a count per exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Insertions([u32; SLOTS]);

impl Insertions {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds the multiset from a list of exponents; `None` if an exponent does
    /// not fit.
    pub fn from_exponents(exponents: &[u8]) -> Option<Self> {
        let mut ins = Self::new();
        for &e in exponents {
            ins = ins.with(e, 1)?;
        }
        Some(ins)
    }

    pub fn with(mut self, exponent: u8, times: u32) -> Option<Self> {
        if exponent > MAX_EXPONENT {
            return if times == 0 { Some(self) } else { None };
        }
        self.0[exponent as usize] += times;
        Some(self)
    }

    pub fn count(&self, exponent: u8) -> u32 {
        self.0.get(exponent as usize).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u32; SLOTS] {
        &self.0
    }

    pub fn len(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn codim_sum(&self) -> u32 {
        self.0.iter().enumerate().map(|(e, &c)| e as u32 * c).sum()
    }

    /// Removes one copy of `exponent`.
    pub fn without(mut self, exponent: u8) -> Option<Self> {
        let slot = self.0.get_mut(exponent as usize)?;
        *slot = slot.checked_sub(1)?;
        Some(self)
    }

    pub fn union(mut self, other: &Insertions) -> Self {
        for (a, b) in self.0.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        self
    }

    /// Sorted list of exponents.
    pub fn exponents(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.len() as usize);
        for (e, &c) in self.0.iter().enumerate() {
            out.extend(std::iter::repeat_n(e as u8, c as usize));
        }
        out
    }

    /// Every way of distributing labeled insertions into two groups, with the
    /// number of labelings realizing each count pattern.
    pub fn splits(&self) -> Vec<(Insertions, Insertions, BigInt)> {
        let mut out = vec![(Insertions::new(), *self, BigInt::one())];
        for slot in 0..SLOTS {
            let total = self.0[slot];
            if total == 0 {
                continue;
            }
            let mut next = Vec::with_capacity(out.len() * (total as usize + 1));
            for (left, right, weight) in &out {
                for k in 0..=total {
                    let mut l = *left;
                    let mut r = *right;
                    l.0[slot] = k;
                    r.0[slot] = total - k;
                    next.push((l, r, weight * binomial(total as u64, k as i64)));
                }
            }
            out = next;
        }
        debug_assert!(out
            .iter()
            .all(|(l, _, w)| *w == split_weight(&self.0, &l.0)));
        out
    }
}

/// Memo key: a normalized invariant (no `h^0`, no `h^1` insertions).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GwKey {
    pub ambient: u8,
    pub degree: u32,
    pub insertions: Insertions,
}

impl GwKey {
    /// Dimension constraint `sum (c_i - 1) = (n+1) d + n - 3`.
    pub fn is_balanced(&self) -> bool {
        let n = self.ambient as i64;
        let lhs = self.insertions.codim_sum() as i64 - self.insertions.len() as i64;
        lhs == (n + 1) * self.degree as i64 + n - 3
    }
}

/// One associativity relation used to reconstruct `<h^c, g1, g2, S>_d`:
/// the four special slots are `(g1, g2 | h, h^{c-1})` versus
/// `(g1, h | g2, h^{c-1})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WdvvRelation {
    pub pivot: u8,
    pub first: u8,
    pub second: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub entries: usize,
}

/// Write-once memo table for genus-zero invariants.
///
/// Safe to share across threads; racing writers of one key always store the
/// same value.
#[derive(Debug, Default)]
pub struct GwTable {
    entries: RwLock<HashMap<GwKey, Rational>>,
    plane: RwLock<Vec<BigInt>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl GwTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            entries: self.entries.read().unwrap().len(),
        }
    }

    pub fn reset_stats(&self) {
        self.hits.store(0, Ordering::Relaxed);
        self.misses.store(0, Ordering::Relaxed);
    }

    pub fn snapshot(&self) -> Vec<(GwKey, Rational)> {
        let mut all: Vec<_> = self
            .entries
            .read()
            .unwrap()
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        all.sort_by_key(|a| a.0);
        all
    }

    /// Inserts precomputed entries. A key already present must carry the same
    /// value.
    pub fn absorb(&self, entries: Vec<(GwKey, Rational)>) -> Result<()> {
        let mut map = self.entries.write().unwrap();
        for (key, value) in &entries {
            if let Some(old) = map.get(key) {
                if old != value {
                    return Err(Error::Cache(format!(
                        "conflicting value for {key:?}: {old} vs {value}"
                    )));
                }
            }
        }
        map.extend(entries);
        Ok(())
    }

    /// Number of rational degree-`d` plane curves through `3d - 1` points.
    pub fn n_plane(&self, d: i64) -> Result<BigInt> {
        if d < 1 {
            return Err(Error::InvalidDegree(d));
        }
        Ok(self.plane_number(d as u32))
    }

    pub(crate) fn plane_number(&self, d: u32) -> BigInt {
        debug_assert!(d >= 1);
        if let Some(v) = self.plane.read().unwrap().get(d as usize) {
            return v.clone();
        }
        let mut table = self.plane.write().unwrap();
        if table.is_empty() {
            table.push(BigInt::zero());
            table.push(BigInt::one());
        }
        while table.len() <= d as usize {
            let d = table.len() as i64;
            let mut acc = BigInt::zero();
            for d1 in 1..d {
                let d2 = d - d1;
                let nn = &table[d1 as usize] * &table[d2 as usize];
                let top = (3 * d - 4) as u64;
                let term = BigInt::from(d1 * d1 * d2 * d2) * binomial(top, 3 * d1 - 2)
                    - BigInt::from(d1 * d1 * d1 * d2) * binomial(top, 3 * d1 - 1);
                acc += nn * term;
            }
            table.push(acc);
        }
        table[d as usize].clone()
    }

    /// Genus-zero invariant with the given insertion exponents.
    pub fn gw0(&self, ambient: u8, degree: i64, insertions: &[u8]) -> Result<Rational> {
        check_ambient(ambient)?;
        if degree < 0 {
            return Err(Error::InvalidDegree(degree));
        }
        if degree == 0 && insertions.len() != 3 {
            return Err(Error::DegreeZeroArity(insertions.len()));
        }
        if let Some(&e) = insertions.iter().find(|&&e| e > ambient) {
            return Err(Error::ExponentOutOfRange {
                ambient,
                exponent: e,
            });
        }
        let ins = Insertions::from_exponents(insertions).expect("exponents checked above");
        Ok(self.invariant(ambient, degree as u32, ins))
    }

    /// Number of degree-`d` rational curves in `P^3` through `p` points and
    /// `q` lines.
    pub fn n_p3(&self, degree: i64, points: u32, lines: u32) -> Result<BigInt> {
        if degree < 1 {
            return Err(Error::InvalidDegree(degree));
        }
        if 2 * points as i64 + lines as i64 != 4 * degree {
            return Err(Error::Unbalanced(format!(
                "2p+q must equal 4d for rational curves in P^3 (p={points}, q={lines}, d={degree})"
            )));
        }
        let ins = Insertions::new()
            .with(3, points)
            .and_then(|i| i.with(2, lines))
            .expect("exponents fit");
        let v = self.invariant(3, degree as u32, ins);
        debug_assert!(v.is_integer());
        Ok(v.to_integer())
    }

    /// Unchecked evaluation; invalid or unbalanced requests are zero.
    pub fn invariant(&self, ambient: u8, degree: u32, ins: Insertions) -> Rational {
        if (ambient + 1..=MAX_EXPONENT).any(|e| ins.count(e) > 0) {
            return Rational::zero();
        }
        if degree == 0 {
            if ins.len() != 3 {
                return Rational::zero();
            }
            return if ins.codim_sum() == ambient as u32 {
                Rational::one()
            } else {
                Rational::zero()
            };
        }
        if ins.count(0) > 0 {
            return Rational::zero();
        }
        let divisors = ins.count(1);
        let mut reduced = ins;
        reduced.0[1] = 0;
        let key = GwKey {
            ambient,
            degree,
            insertions: reduced,
        };
        if !key.is_balanced() {
            return Rational::zero();
        }
        let value = self.lookup(key);
        if divisors == 0 || value.is_zero() {
            value
        } else {
            value * int_rat(BigInt::from(degree).pow(divisors))
        }
    }

    fn lookup(&self, key: GwKey) -> Rational {
        if let Some(v) = self.entries.read().unwrap().get(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return v.clone();
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let value = self.compute(key);
        let mut map = self.entries.write().unwrap();
        let stored = map.entry(key).or_insert_with(|| value.clone());
        debug_assert_eq!(*stored, value, "write-once violation for {key:?}");
        value
    }

    fn compute(&self, key: GwKey) -> Rational {
        let GwKey {
            ambient: n,
            degree: d,
            insertions: ins,
        } = key;
        if n == 2 {
            // balanced plane keys are exactly 3d - 1 point insertions
            debug_assert_eq!(ins.count(2), 3 * d - 1);
            return int_rat(self.plane_number(d));
        }
        if d == 1 && ins.len() == 2 && ins.count(n) == 2 {
            return Rational::one();
        }
        let relation = default_relation(n, &ins)
            .unwrap_or_else(|| panic!("no reconstruction relation for balanced key {key:?}"));
        self.wdvv_evaluate(key, relation)
            .expect("default relation is valid")
    }

    /// Evaluates a balanced normalized key through one specific relation,
    /// recursing through the memo table for every other term.
    pub fn wdvv_evaluate(&self, key: GwKey, relation: WdvvRelation) -> Result<Rational> {
        let n = key.ambient;
        let WdvvRelation {
            pivot: c,
            first: g1,
            second: g2,
        } = relation;
        if !relation_is_valid(n, &key.insertions, relation) {
            return Err(Error::Unsupported(format!(
                "relation {relation:?} does not reduce {key:?}"
            )));
        }
        let rest = key
            .insertions
            .without(c)
            .and_then(|i| i.without(g1))
            .and_then(|i| i.without(g2))
            .expect("validated");
        let d = key.degree;
        let one = |e: u8| Insertions::new().with(e, 1).unwrap();

        let mut lhs = Rational::zero();
        let mut rhs = Rational::zero();
        for d1 in 0..=d {
            let d2 = d - d1;
            for (s1, s2, w) in rest.splits() {
                let w = int_rat(w);
                for e in 0..=n {
                    let dual = n - e;
                    // (g1, g2 | h, h^{c-1}); the term with a degree-0 bubble
                    // carrying (h, h^{c-1}) is the target itself
                    if !(d2 == 0 && s2.is_empty() && e == c) {
                        let left = self.invariant(
                            n,
                            d1,
                            s1.union(&one(g1)).union(&one(g2)).union(&one(e)),
                        );
                        if !left.is_zero() {
                            let right = self.invariant(
                                n,
                                d2,
                                s2.union(&one(dual)).union(&one(1)).union(&one(c - 1)),
                            );
                            lhs += &w * left * right;
                        }
                    }
                    // (g1, h | g2, h^{c-1})
                    let left =
                        self.invariant(n, d1, s1.union(&one(g1)).union(&one(1)).union(&one(e)));
                    if !left.is_zero() {
                        let right = self.invariant(
                            n,
                            d2,
                            s2.union(&one(dual)).union(&one(g2)).union(&one(c - 1)),
                        );
                        rhs += &w * left * right;
                    }
                }
            }
        }
        Ok(rhs - lhs)
    }
}

/// A relation is usable when the only same-size term it produces is either
/// killed (`h * g1 = 0`) or shrinks by the divisor axiom (`c = 2`).
fn relation_is_valid(n: u8, ins: &Insertions, rel: WdvvRelation) -> bool {
    let Some(rest) = ins.without(rel.pivot) else {
        return false;
    };
    let Some(rest) = rest.without(rel.first) else {
        return false;
    };
    if rest.without(rel.second).is_none() {
        return false;
    }
    rel.pivot >= 2 && rel.first >= 2 && rel.second >= 2 && (rel.pivot == 2 || rel.first == n)
}

/// All usable relations for a normalized key, deduplicated by exponent.
pub fn candidate_relations(n: u8, ins: &Insertions) -> Vec<WdvvRelation> {
    let mut out = Vec::new();
    for pivot in 2..=n {
        for first in 2..=n {
            for second in 2..=n {
                let rel = WdvvRelation {
                    pivot,
                    first,
                    second,
                };
                if relation_is_valid(n, ins, rel) {
                    out.push(rel);
                }
            }
        }
    }
    out
}

/// Pivot on the highest codimension when that relation reduces, otherwise on
/// a codimension-two insertion.
fn default_relation(n: u8, ins: &Insertions) -> Option<WdvvRelation> {
    let top = (2..=n).rev().find(|&e| ins.count(e) > 0)?;
    let pick = |pivot: u8| -> Option<WdvvRelation> {
        let rest = ins.without(pivot)?;
        let first = (2..=n).rev().find(|&e| rest.count(e) > 0)?;
        let rest = rest.without(first)?;
        let second = (2..=n).rev().find(|&e| rest.count(e) > 0)?;
        let rel = WdvvRelation {
            pivot,
            first,
            second,
        };
        relation_is_valid(n, ins, rel).then_some(rel)
    };
    pick(top).or_else(|| pick(2))
}
