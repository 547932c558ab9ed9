//! Independent reference computations shared by the integration tests. None
//! of these go through the crate's reduction code beyond plain genus-zero
//! lookups.
#![allow(dead_code)]

use std::collections::HashMap;

use g2enum::algebra::{binomial, int_rat, rat};
use g2enum::gw0::{GwTable, Insertions};
use g2enum::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn ins(exps: &[u8]) -> Insertions {
    Insertions::from_exponents(exps).unwrap()
}

/// `sum C(3d-2, 3d1-1) n_{d1} n_{d2} w(d1, d2)` over `d1 + d2 = d`.
pub fn plane_sum(t: &GwTable, d: i64, w: impl Fn(i64, i64) -> i64) -> BigInt {
    (1..d)
        .map(|d1| {
            let d2 = d - d1;
            binomial((3 * d - 2) as u64, 3 * d1 - 1)
                * t.n_plane(d1).unwrap()
                * t.n_plane(d2).unwrap()
                * BigInt::from(w(d1, d2))
        })
        .sum()
}

/// `<a c_1, V1>` and `<c_1^2, V1>` on `P^2` in closed form.
pub fn plane_v1_closed(t: &GwTable, d: i64) -> (Rational, Rational) {
    let nd = int_rat(t.n_plane(d).unwrap());
    let s2 = int_rat(plane_sum(t, d, |a, b| a * a * b * b));
    let s1 = int_rat(plane_sum(t, d, |a, b| a * b));
    ((-nd + s2 / rat(2)) / rat(d), -s1 / rat(2))
}

pub fn rt2_plane_closed(t: &GwTable, d: i64) -> BigInt {
    BigInt::from(6 * d * d) * t.n_plane(d).unwrap() + plane_sum(t, d, |a, b| a.pow(3) * b.pow(3))
}

/// One side of the associativity relation for `(a, b | c, e)` with extra
/// insertions `rest`, summed over degree splits, labeled distributions and
/// the diagonal.
pub fn wdvv_side(t: &GwTable, n: u8, d: u32, slots: [u8; 4], rest: &[u8]) -> Rational {
    let m = rest.len();
    let mut total = Rational::zero();
    for d1 in 0..=d {
        for mask in 0..(1u32 << m) {
            let mut left = vec![slots[0], slots[1]];
            let mut right = vec![slots[2], slots[3]];
            for (i, &c) in rest.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    left.push(c);
                } else {
                    right.push(c);
                }
            }
            for e in 0..=n {
                let mut l = left.clone();
                l.push(e);
                let mut r = right.clone();
                r.push(n - e);
                total += t.invariant(n, d1, ins(&l)) * t.invariant(n, d - d1, ins(&r));
            }
        }
    }
    total
}

/// Genuine descendant integrals `int psi_x^k ev_x^* h^gx prod ev^* h^G` on
/// `M_{0,1+|G|}(P^n, d)`, by topological recursion.
pub struct Descendants<'a> {
    pub table: &'a GwTable,
    memo: HashMap<(u8, u32, u32, u8, Insertions), Rational>,
}

impl<'a> Descendants<'a> {
    pub fn new(table: &'a GwTable) -> Self {
        Self {
            table,
            memo: HashMap::new(),
        }
    }

    pub fn value(&mut self, n: u8, d: u32, k: i64, gx: u8, g: Insertions) -> Rational {
        if k < 0 || gx > n || (n + 1..=3).any(|e| g.count(e) > 0) {
            return Rational::zero();
        }
        let k = k as u32;
        let lhs = (k + gx as u32 + g.codim_sum()) as i64;
        if lhs != (n as i64 + 1) * d as i64 + n as i64 - 2 + g.len() as i64 {
            return Rational::zero();
        }
        if k == 0 {
            return self.table.invariant(n, d, g.with(gx, 1).unwrap());
        }
        let key = (n, d, k, gx, g);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let v = self.compute(n, d, k, gx, g);
        self.memo.insert(key, v.clone());
        v
    }

    fn compute(&mut self, n: u8, d: u32, k: u32, gx: u8, g: Insertions) -> Rational {
        if d == 0 {
            let m = 1 + g.len();
            let ok = k + 3 == m && gx as u32 + g.codim_sum() == n as u32;
            return if ok {
                Rational::one()
            } else {
                Rational::zero()
            };
        }
        if g.len() < 2 {
            // divisor equation for descendants, solved for the term without h
            let with_h = self.value(n, d, k as i64, gx, g.with(1, 1).unwrap());
            let shifted = self.value(n, d, k as i64 - 1, gx + 1, g);
            return (with_h - shifted) / rat(d as i64);
        }
        let exps = g.exponents();
        let (g2, g3) = (exps[0], exps[1]);
        let rest = ins(&exps[2..]);
        let mut total = Rational::zero();
        for d1 in 0..=d {
            for (s1, s2, w) in rest.splits() {
                if d1 == 0 && s1.is_empty() {
                    continue;
                }
                for e in 0..=n {
                    let left = self.value(n, d1, k as i64 - 1, gx, s1.with(e, 1).unwrap());
                    if left.is_zero() {
                        continue;
                    }
                    let right = self.table.invariant(
                        n,
                        d - d1,
                        s2.with(n - e, 1)
                            .unwrap()
                            .with(g2, 1)
                            .unwrap()
                            .with(g3, 1)
                            .unwrap(),
                    );
                    total += int_rat(w.clone()) * left * right;
                }
            }
        }
        total
    }

    /// The cotangent class pulled back from one marked point, expanded as
    /// `psi_x` minus the boundary where `x` sits on a contracted component.
    pub fn pulled_back(&mut self, n: u8, d: u32, gx: u8, j: u32, g: Insertions) -> Rational {
        let mut total = Rational::zero();
        for (s, r, w) in g.splits() {
            let size = s.len();
            if size > j {
                continue;
            }
            let sign = if size % 2 == 0 { rat(1) } else { rat(-1) };
            let shifted = gx as u32 + s.codim_sum();
            if shifted > n as u32 {
                continue;
            }
            let v = self.value(n, d, (j - size) as i64, shifted as u8, r);
            total += sign * int_rat(w) * v;
        }
        total
    }
}

/// Common-node count by enumerating unordered configurations: every labeled
/// constraint is assigned to a component, and only assignments whose
/// component keys `(degree, constraint set)` are sorted are kept, with
/// `1/mult!` for tied keys.
pub fn tau_unordered(
    t: &GwTable,
    n: u8,
    d: u32,
    constraints: &[u8],
    k: usize,
    decoration: u8,
) -> Rational {
    let m = constraints.len();
    let diag = g2enum::algebra::diagonal(n, k).unwrap();
    let mut total = Rational::zero();
    let mut degrees = vec![1u32; k];
    loop {
        if degrees.iter().sum::<u32>() == d {
            let mut assign = vec![0usize; m];
            loop {
                let mut masks = vec![0u64; k];
                for (i, &slot) in assign.iter().enumerate() {
                    masks[slot] |= 1 << i;
                }
                let keys: Vec<(u32, u64)> =
                    degrees.iter().copied().zip(masks.iter().copied()).collect();
                if keys.windows(2).all(|w| w[0] <= w[1]) {
                    let mut weight = rat(1);
                    let mut run = 1;
                    for i in 1..=k {
                        if i < k && keys[i] == keys[i - 1] {
                            run += 1;
                        } else {
                            for f in 2..=run {
                                weight /= rat(f);
                            }
                            run = 1;
                        }
                    }
                    let parts: Vec<Vec<u8>> = (0..k)
                        .map(|s| {
                            (0..m)
                                .filter(|&i| assign[i] == s)
                                .map(|i| constraints[i])
                                .collect()
                        })
                        .collect();
                    for (exps, c) in &diag.terms {
                        let mut prod = c.clone();
                        for s in 0..k {
                            let mut e = exps[s];
                            if s == k - 1 {
                                e += decoration;
                            }
                            if e > n {
                                prod = Rational::zero();
                                break;
                            }
                            let mut p = parts[s].clone();
                            p.push(e);
                            prod *= t.invariant(n, degrees[s], ins(&p));
                            if prod.is_zero() {
                                break;
                            }
                        }
                        total += &weight * prod;
                    }
                }
                // next assignment
                let mut i = 0;
                while i < m {
                    assign[i] += 1;
                    if assign[i] < k {
                        break;
                    }
                    assign[i] = 0;
                    i += 1;
                }
                if i == m {
                    break;
                }
            }
        }
        let mut i = 0;
        while i < k {
            degrees[i] += 1;
            if degrees[i] <= d {
                break;
            }
            degrees[i] = 1;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    total
}
