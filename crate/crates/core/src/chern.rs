//! Intersection numbers of `a` and `c_1(L*)` against the spaces `V1(mu)` of
//! one-component and `V2(mu)` of two-component rational curves through `mu`,
//! plus the cusp and tacnode counts built from them.
//!
//! `a` is the hyperplane class pulled back by evaluation at the marked point
//! and `c_1(L*)` is the cotangent class pulled back from `M_{0,1}(P^n, d)`.
//! A `c_1` factor is traded for `d^{-2} (H - 2d a + sum_{d0+d1=d} d1^2 D_{d0,d1})`,
//! where `H` asks the curve to meet a codimension-two plane and `D_{d0,d1}` is
//! the boundary with the marked point on the degree-`d0` component. On that
//! boundary `c_1` restricts to its own copy plus the node term, so each rewrite
//! lowers the `c_1` exponent by one or two.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use num_traits::Zero;

use crate::algebra::{check_ambient, int_rat, rat, Rational};
use crate::constraints::ConstraintProfile;
use crate::error::{Error, Result};
use crate::gw0::{GwTable, Insertions};
use crate::nodecounts::{tau2_p2, tau3};

/// `int c_1(L*)^j ev^* h^marked prod ev_k^* h^{others_k}` over
/// `M_{0,1+m}(P^n, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PsiKey {
    pub j: u32,
    pub ambient: u8,
    pub degree: u32,
    pub marked: u8,
    pub others: Insertions,
}

impl PsiKey {
    fn dimension_matches(&self) -> bool {
        let n = self.ambient as i64;
        let lhs = self.j as i64 + self.marked as i64 + self.others.codim_sum() as i64;
        lhs == (n + 1) * self.degree as i64 + n - 2 + self.others.len() as i64
    }
}

enum Normalized {
    Zero,
    Scalar(Rational),
    Pending(Rational, PsiKey),
}

/// Pending rewrite requests, merged by key. Keys are processed highest `j`
/// first, and every rewrite only produces keys with smaller `j`, so each key
/// is expanded once.
#[derive(Debug, Default)]
pub struct ReductionState {
    pending: BTreeMap<PsiKey, Rational>,
    pub rewrites: u64,
}

impl ReductionState {
    fn push(&mut self, key: PsiKey, weight: Rational) {
        let slot = self.pending.entry(key).or_insert_with(Rational::zero);
        *slot += weight;
    }
}

/// Shared evaluator; caches finished top-level integrals.
#[derive(Debug)]
pub struct ChernEngine<'a> {
    table: &'a GwTable,
    memo: RwLock<HashMap<PsiKey, Rational>>,
    rewrites: AtomicU64,
}

/// Symmetric degree-two monomials on `V2(mu)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum V2Monomial {
    /// `a^2`
    ASquared,
    /// `a (c_1(L_1*) + c_1(L_2*))`
    ASumC,
    /// `c_1(L_1*)^2 + c_1(L_2*)^2`
    SumCSquared,
    /// `c_1(L_1*) c_1(L_2*)`
    C1C2,
}

/// An intersection-number request.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialQuery {
    /// `<a^a c_1^c, V1(mu)>`
    V1 {
        profile: ConstraintProfile,
        a: u32,
        c: u32,
    },
    /// `<a^a c_1(L_1*)^c1 c_1(L_2*)^c2, V2(mu)>`; the node carries `a`.
    V2 {
        profile: ConstraintProfile,
        a: u32,
        c1: u32,
        c2: u32,
    },
}

impl<'a> ChernEngine<'a> {
    pub fn new(table: &'a GwTable) -> Self {
        Self {
            table,
            memo: RwLock::new(HashMap::new()),
            rewrites: AtomicU64::new(0),
        }
    }

    pub fn table(&self) -> &'a GwTable {
        self.table
    }

    /// Total number of rewrite steps performed so far.
    pub fn rewrites(&self) -> u64 {
        self.rewrites.load(Ordering::Relaxed)
    }

    pub fn evaluate(&self, query: &MonomialQuery) -> Result<Rational> {
        match *query {
            MonomialQuery::V1 { profile, a, c } => self.pair_v1(&profile, a, c),
            MonomialQuery::V2 { profile, a, c1, c2 } => self.pair_v2(&profile, a, c1, c2),
        }
    }

    /// `<a^i c_1(L*)^j, V1(mu)>`.
    pub fn pair_v1(&self, profile: &ConstraintProfile, i: u32, j: u32) -> Result<Rational> {
        check_ambient(profile.ambient)?;
        let expected = if profile.ambient == 2 { 2 } else { 4 };
        if i + j != expected {
            return Err(Error::MonomialDegree {
                expected,
                found: i + j,
            });
        }
        if i > profile.ambient as u32 {
            return Ok(Rational::zero());
        }
        Ok(self.psi_bar(
            profile.ambient,
            profile.degree,
            i as u8,
            j,
            profile.classes(),
        ))
    }

    /// `<a^i c_1(L_1*)^j1 c_1(L_2*)^j2, V2(mu)>` on `P^3`, summed over ordered
    /// degree splits and halved.
    pub fn pair_v2(
        &self,
        profile: &ConstraintProfile,
        i: u32,
        j1: u32,
        j2: u32,
    ) -> Result<Rational> {
        if profile.ambient != 3 {
            return Err(Error::Unsupported(
                "V2 pairings are only defined on P^3".into(),
            ));
        }
        if i + j1 + j2 != 2 {
            return Err(Error::MonomialDegree {
                expected: 2,
                found: i + j1 + j2,
            });
        }
        let n = 3u8;
        let d = profile.degree;
        let mut total = Rational::zero();
        for d1 in 1..d {
            let d2 = d - d1;
            for (s1, s2, w) in profile.classes().splits() {
                let mut acc = Rational::zero();
                for e in 0..=n {
                    let marked = i + e as u32;
                    if marked > n as u32 {
                        continue;
                    }
                    let left = self.psi_bar(n, d1, marked as u8, j1, s1);
                    if left.is_zero() {
                        continue;
                    }
                    acc += left * self.psi_bar(n, d2, n - e, j2, s2);
                }
                total += int_rat(w) * acc;
            }
        }
        Ok(total / rat(2))
    }

    pub fn pair_v2_symmetric(
        &self,
        profile: &ConstraintProfile,
        m: V2Monomial,
    ) -> Result<Rational> {
        Ok(match m {
            V2Monomial::ASquared => self.pair_v2(profile, 2, 0, 0)?,
            V2Monomial::ASumC => {
                self.pair_v2(profile, 1, 1, 0)? + self.pair_v2(profile, 1, 0, 1)?
            }
            V2Monomial::SumCSquared => {
                self.pair_v2(profile, 0, 2, 0)? + self.pair_v2(profile, 0, 0, 2)?
            }
            V2Monomial::C1C2 => self.pair_v2(profile, 0, 1, 1)?,
        })
    }

    /// Cuspidal curves through `3d - 2` points in `P^2`:
    /// `<3a^2 + 3ac + c^2, V1> - tau_2`.
    pub fn s1_count(&self, profile: &ConstraintProfile) -> Result<Rational> {
        if profile.ambient != 2 {
            return Err(Error::Unsupported(
                "the cusp count is only assembled directly on P^2".into(),
            ));
        }
        let v = self.pair_v1(profile, 2, 0)? * rat(3)
            + self.pair_v1(profile, 1, 1)? * rat(3)
            + self.pair_v1(profile, 0, 2)?;
        Ok(v - int_rat(tau2_p2(self.table, profile.degree as i64)?))
    }

    /// `(<a, S1>, <c_1(L*), S1>)` for cuspidal curves in `P^3`.
    pub fn s1_pairings_p3(&self, profile: &ConstraintProfile) -> Result<(Rational, Rational)> {
        if profile.ambient != 3 {
            return Err(Error::Unsupported("cusp pairings need P^3".into()));
        }
        let v1 = |i, j| self.pair_v1(profile, i, j);
        let with_a = v1(3, 1)? * rat(6) + v1(2, 2)? * rat(4) + v1(1, 3)?
            - self.pair_v2_symmetric(profile, V2Monomial::ASquared)? * rat(4)
            - self.pair_v2_symmetric(profile, V2Monomial::ASumC)?;
        let with_c = v1(3, 1)? * rat(4) + v1(2, 2)? * rat(6) + v1(1, 3)? * rat(4) + v1(0, 4)?
            - tau3(self.table, profile)?;
        Ok((with_a, with_c))
    }

    /// Two-component configurations meeting at a tacnode in `P^3`.
    pub fn s2_count(&self, profile: &ConstraintProfile) -> Result<Rational> {
        if profile.ambient != 3 {
            return Err(Error::Unsupported("the tacnode count needs P^3".into()));
        }
        let v2 = |m| self.pair_v2_symmetric(profile, m);
        Ok(v2(V2Monomial::ASquared)? * rat(6)
            + v2(V2Monomial::ASumC)? * rat(4)
            + v2(V2Monomial::SumCSquared)?
            + v2(V2Monomial::C1C2)?
            - tau3(self.table, profile)? * rat(3))
    }

    /// `int c_1(L*)^j ev^* h^marked prod ev_k^* h^{others_k}` over the space of
    /// degree-`d` maps with `1 + |others|` marked points.
    pub fn psi_bar(
        &self,
        ambient: u8,
        degree: u32,
        marked: u8,
        j: u32,
        others: Insertions,
    ) -> Rational {
        let (factor, key) = match self.normalize(ambient, degree, marked, j, others) {
            Normalized::Zero => return Rational::zero(),
            Normalized::Scalar(v) => return v,
            Normalized::Pending(f, k) => (f, k),
        };
        if let Some(v) = self.memo.read().unwrap().get(&key) {
            return factor * v;
        }
        let value = self.reduce(key);
        self.memo
            .write()
            .unwrap()
            .entry(key)
            .or_insert_with(|| value.clone());
        factor * value
    }

    fn normalize(&self, n: u8, d: u32, marked: u8, j: u32, others: Insertions) -> Normalized {
        if marked > n || (n + 1..=crate::gw0::MAX_EXPONENT).any(|e| others.count(e) > 0) {
            return Normalized::Zero;
        }
        if j == 0 {
            let ins = others.with(marked, 1).expect("exponent fits");
            let v = self.table.invariant(n, d, ins);
            return if v.is_zero() {
                Normalized::Zero
            } else {
                Normalized::Scalar(v)
            };
        }
        if d == 0 || others.count(0) > 0 {
            return Normalized::Zero;
        }
        let divisors = others.count(1);
        let mut rest = others;
        for _ in 0..divisors {
            rest = rest.without(1).expect("counted");
        }
        let key = PsiKey {
            j,
            ambient: n,
            degree: d,
            marked,
            others: rest,
        };
        if !key.dimension_matches() {
            return Normalized::Zero;
        }
        Normalized::Pending(rat(d as i64).pow(divisors as i32), key)
    }

    fn reduce(&self, root: PsiKey) -> Rational {
        let mut state = ReductionState::default();
        state.push(root, rat(1));
        let mut result = Rational::zero();
        while let Some((key, weight)) = state.pending.pop_last() {
            if weight.is_zero() {
                continue;
            }
            if let Some(v) = self.memo.read().unwrap().get(&key) {
                result += weight * v;
                continue;
            }
            state.rewrites += 1;
            let n = key.ambient;
            let d = key.degree;
            let scale = weight / rat((d * d) as i64);
            let mut emit =
                |marked: u8, deg: u32, j: u32, others: Insertions, w: Rational| match self
                    .normalize(n, deg, marked, j, others)
                {
                    Normalized::Zero => {}
                    Normalized::Scalar(v) => result += w * v,
                    Normalized::Pending(f, child) => {
                        debug_assert!(child.j < key.j, "rewrite must lower the c_1 exponent");
                        state.push(child, w * f);
                    }
                };
            emit(
                key.marked,
                d,
                key.j - 1,
                key.others.with(2, 1).expect("fits"),
                scale.clone(),
            );
            emit(
                key.marked + 1,
                d,
                key.j - 1,
                key.others,
                -&scale * rat(2 * d as i64),
            );
            for d0 in 1..d {
                let d1 = d - d0;
                for (g0, g1, w) in key.others.splits() {
                    for e in 0..=n {
                        let far = self
                            .table
                            .invariant(n, d1, g1.with(n - e, 1).expect("fits"));
                        if far.is_zero() {
                            continue;
                        }
                        let c = &scale * int_rat(w.clone()) * rat((d1 * d1) as i64) * far;
                        emit(
                            key.marked,
                            d0,
                            key.j - 1,
                            g0.with(e, 1).expect("fits"),
                            c.clone(),
                        );
                        if key.j >= 2 {
                            emit(key.marked + e, d0, key.j - 2, g0, c);
                        }
                    }
                }
            }
        }
        self.rewrites.fetch_add(state.rewrites, Ordering::Relaxed);
        result
    }
}
