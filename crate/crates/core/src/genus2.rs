//! Assembly of `n_{2,d}(mu) = (RT_{2,d}(mu) - CR(mu)) / 2`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::{binomial, int_rat, rat, Rational};
use crate::chern::{ChernEngine, V2Monomial};
use crate::constraints::ConstraintProfile;
use crate::error::{Error, Result};
use crate::gw0::GwTable;
use crate::nodecounts::{tau2_on_line, tau2_p2, tau3};
use crate::rt::{rt2, rt2_p2_closed};

/// Result of one genus-two computation with every intermediate number.
///
/// Serializes as
/// `{"ambient", "degree", "constraints": {"points", "lines"}, "rt", "cr", "n2", "intermediates"}`
/// with every number written as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Genus2Report {
    pub ambient: u8,
    pub degree: u32,
    pub points: u32,
    pub lines: u32,
    pub rt: BigInt,
    pub cr: BigInt,
    pub n2: BigInt,
    pub intermediates: BTreeMap<String, Rational>,
    /// Non-fatal cross-check disagreements.
    pub warnings: Vec<String>,
}

impl Serialize for Genus2Report {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let constraints: BTreeMap<&str, u32> =
            [("points", self.points), ("lines", self.lines)].into();
        let intermediates: BTreeMap<&str, String> = self
            .intermediates
            .iter()
            .map(|(k, v)| (k.as_str(), v.to_string()))
            .collect();
        let mut m = s.serialize_map(Some(7))?;
        m.serialize_entry("ambient", &format!("p{}", self.ambient))?;
        m.serialize_entry("degree", &self.degree)?;
        m.serialize_entry("constraints", &constraints)?;
        m.serialize_entry("rt", &self.rt.to_string())?;
        m.serialize_entry("cr", &self.cr.to_string())?;
        m.serialize_entry("n2", &self.n2.to_string())?;
        m.serialize_entry("intermediates", &intermediates)?;
        m.end()
    }
}

impl Genus2Report {
    pub fn profile(&self) -> ConstraintProfile {
        ConstraintProfile {
            ambient: self.ambient,
            degree: self.degree,
            points: self.points,
            lines: self.lines,
        }
    }
}

fn integer(v: &Rational, what: &str) -> Result<BigInt> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(Error::Consistency(format!(
            "{what} = {v} is not an integer"
        )))
    }
}

/// Checks that `rt - cr` is even and the count a nonnegative integer.
fn finish(
    profile: &ConstraintProfile,
    rt: &Rational,
    cr: &Rational,
    intermediates: BTreeMap<String, Rational>,
    warnings: Vec<String>,
) -> Result<Genus2Report> {
    let rt = integer(rt, "RT")?;
    let cr = integer(cr, "CR")?;
    let diff = &rt - &cr;
    if diff.is_odd() {
        return Err(Error::Consistency(format!("RT - CR = {diff} is odd")));
    }
    let n2: BigInt = diff / 2;
    if n2.is_negative() {
        return Err(Error::Consistency(format!("n2 = {n2} is negative")));
    }
    Ok(Genus2Report {
        ambient: profile.ambient,
        degree: profile.degree,
        points: profile.points,
        lines: profile.lines,
        rt,
        cr,
        n2,
        intermediates,
        warnings,
    })
}

/// Sums of `C(3d-2, 3d1-1) n_{d1} n_{d2}` against a weight in `(d1, d2)`.
fn plane_split_sum(table: &GwTable, d: i64, weight: impl Fn(i64, i64) -> Rational) -> Rational {
    let mut total = Rational::zero();
    for d1 in 1..d {
        let d2 = d - d1;
        let c = binomial((3 * d - 2) as u64, 3 * d1 - 1)
            * table.plane_number(d1 as u32)
            * table.plane_number(d2 as u32);
        total += int_rat(c) * weight(d1, d2);
    }
    total
}

/// Genus-two plane curves through `3d - 2` points, in closed form.
pub fn n2_p2_closed(table: &GwTable, degree: i64) -> Result<BigInt> {
    let d = degree;
    let nd = int_rat(table.n_plane(d)?);
    let sum = plane_split_sum(table, d, |d1, d2| {
        let inner = rat(d1 * d1 * d2 * d2 + 28) - rat(16 * (9 * d1 * d2 - 1)) / rat(3 * d - 2);
        inner * rat(d1 * d2)
    });
    let total = rat(3 * (d * d - 1)) * nd + sum / rat(2);
    integer(&total, "closed-form n2")
}

/// Total correction on `P^2`, by the closed form and by pairing
/// `78a^2 + 72ac + 22c^2` against `V1` minus `18 tau_2`; the two must agree.
pub fn cr_p2(table: &GwTable, degree: i64) -> Result<BigInt> {
    let engine = ChernEngine::new(table);
    let (closed, paired) = cr_p2_routes(&engine, degree)?;
    if closed != paired {
        return Err(Error::Consistency(format!(
            "P^2 correction routes disagree in degree {degree}: {closed} vs {paired}"
        )));
    }
    integer(&closed, "CR")
}

fn cr_p2_closed(table: &GwTable, d: i64) -> Result<Rational> {
    let nd = int_rat(table.n_plane(d)?);
    let s2 = plane_split_sum(table, d, |d1, d2| rat(d1 * d1 * d2 * d2));
    let s1 = plane_split_sum(table, d, |d1, d2| rat(d1 * d2));
    Ok(rat(78) * &nd + rat(72) / rat(d) * (-nd + s2 / rat(2)) - rat(20) * s1)
}

fn cr_p2_routes(engine: &ChernEngine, d: i64) -> Result<(Rational, Rational)> {
    let closed = cr_p2_closed(engine.table(), d)?;
    let p = ConstraintProfile::plane(d)?;
    let paired = rat(78) * engine.pair_v1(&p, 2, 0)?
        + rat(72) * engine.pair_v1(&p, 1, 1)?
        + rat(22) * engine.pair_v1(&p, 0, 2)?
        - rat(18) * int_rat(tau2_p2(engine.table(), d)?);
    Ok((closed, paired))
}

/// Full `P^2` pipeline: RT by the composition laws, CR by both routes and by
/// its component counts.
pub fn n2_p2_pipeline(table: &GwTable, degree: i64) -> Result<Genus2Report> {
    let profile = ConstraintProfile::plane(degree)?;
    let d = degree;
    let engine = ChernEngine::new(table);
    let rt = rt2(table, &profile)?;
    let rt_closed = int_rat(rt2_p2_closed(table, d)?);
    if rt != rt_closed {
        return Err(Error::Consistency(format!(
            "RT by composition ({rt}) differs from closed form ({rt_closed})"
        )));
    }
    let (cr_closed, cr) = cr_p2_routes(&engine, d)?;
    if cr != cr_closed {
        return Err(Error::Consistency(format!(
            "P^2 correction routes disagree in degree {d}: {cr_closed} vs {cr}"
        )));
    }

    let a2 = engine.pair_v1(&profile, 2, 0)?;
    let ac = engine.pair_v1(&profile, 1, 1)?;
    let cc = engine.pair_v1(&profile, 0, 2)?;
    let tau2 = int_rat(tau2_p2(table, d)?);
    let s1 = engine.s1_count(&profile)?;
    let n1_1 = rat(2) * (rat(6) * &a2 + rat(3) * &ac);
    let n1_2 = rat(2) * &s1;
    let n1_3 = s1.clone();
    let n2_1 = rat(4) * &tau2;
    let cr_components = &n1_1 + rat(2) * &n1_2 + rat(18) * &n1_3 + &n2_1;

    let mut warnings = Vec::new();
    if cr_components != cr {
        warnings.push(format!(
            "component assembly gives CR = {cr_components}, expected {cr}"
        ));
    }
    let _ = integer(&s1, "|S1|")?;

    let closed = n2_p2_closed(table, d)?;
    let mut m = BTreeMap::new();
    m.insert("v1_a2".to_string(), a2);
    m.insert("v1_a1c1".to_string(), ac);
    m.insert("v1_c2".to_string(), cc);
    m.insert("tau2".to_string(), tau2);
    m.insert("s1".to_string(), s1);
    m.insert("n1_1".to_string(), n1_1);
    m.insert("n1_2".to_string(), n1_2);
    m.insert("n1_3".to_string(), n1_3);
    m.insert("n2_1".to_string(), n2_1);
    m.insert("cr_components".to_string(), cr_components);
    m.insert("n2_closed".to_string(), int_rat(closed.clone()));

    let report = finish(&profile, &rt, &cr, m, warnings)?;
    if report.n2 != closed {
        return Err(Error::Consistency(format!(
            "pipeline n2 = {} differs from closed form {closed}",
            report.n2
        )));
    }
    Ok(report)
}

/// Genus-two curves in `P^3` through `p` points and `q` lines.
pub fn n2_p3(table: &GwTable, profile: &ConstraintProfile) -> Result<Genus2Report> {
    if profile.ambient != 3 {
        return Err(Error::Unsupported(format!(
            "n2_p3 needs a P^3 profile, got P^{}",
            profile.ambient
        )));
    }
    let p = ConstraintProfile::new(3, profile.degree as i64, profile.points, profile.lines)?;
    let engine = ChernEngine::new(table);
    let rt = rt2(table, &p)?;

    let v1 = |i, j| engine.pair_v1(&p, i, j);
    let v2 = |m| engine.pair_v2_symmetric(&p, m);
    let a3c = v1(3, 1)?;
    let a2c2 = v1(2, 2)?;
    let ac3 = v1(1, 3)?;
    let c4 = v1(0, 4)?;
    let a_sum_c = v2(V2Monomial::ASumC)?;
    let sum_c_sq = v2(V2Monomial::SumCSquared)?;
    let c1c2 = v2(V2Monomial::C1C2)?;
    let t22 = tau2_on_line(table, &p)?;
    if t22 != v2(V2Monomial::ASquared)? {
        return Err(Error::Consistency(
            "<a^2, V2> differs from the node-on-a-line count".into(),
        ));
    }
    let t3 = tau3(table, &p)?;

    let half = rat(480) * &a3c + rat(476) * &a2c2 + rat(240) * &ac3 + rat(49) * &c4
        - (rat(144) * &a_sum_c + rat(27) * &sum_c_sq + rat(25) * &c1c2)
        - rat(324) * &t22
        + rat(36) * &t3;
    let cr = rat(2) * half;

    let (s1_a, s1_c) = engine.s1_pairings_p3(&p)?;
    let s2 = engine.s2_count(&p)?;
    let n1_1 = rat(4) * (rat(10) * &a3c + rat(3) * &a2c2) - rat(12) * &t22;
    let n1_2 = rat(4) * (rat(2) * &s1_a + &s1_c) - rat(2) * &s2;
    let n1_3 = rat(4) * &s1_a + rat(5) * &s1_c - rat(3) * &s2;
    let n2_1 = rat(4) * (rat(10) * &t22 + rat(4) * &a_sum_c + &c1c2);
    let n2_2 = rat(2) * &s2;
    let n3_1 = rat(8) * &t3;
    let cr_components = &n1_1 + rat(2) * &n1_2 + rat(18) * &n1_3 + &n2_1 + rat(2) * &n2_2 + &n3_1;

    let mut warnings = Vec::new();
    if cr_components != cr {
        warnings.push(format!(
            "component assembly gives CR = {cr_components}, expected {cr}"
        ));
    }

    let mut m = BTreeMap::new();
    for (k, v) in [
        ("v1_a3c1", a3c),
        ("v1_a2c2", a2c2),
        ("v1_a1c3", ac3),
        ("v1_c4", c4),
        ("v2_a2", t22.clone()),
        ("v2_a_sum_c", a_sum_c),
        ("v2_sum_c_sq", sum_c_sq),
        ("v2_c1c2", c1c2),
        ("tau2_line", t22),
        ("tau3", t3),
        ("s1_a", s1_a),
        ("s1_c", s1_c),
        ("s2", s2),
        ("n1_1", n1_1),
        ("n1_2", n1_2),
        ("n1_3", n1_3),
        ("n2_1", n2_1),
        ("n2_2", n2_2),
        ("n3_1", n3_1),
        ("cr_components", cr_components),
    ] {
        m.insert(k.to_string(), v);
    }
    finish(&p, &rt, &cr, m, warnings)
}

/// Dispatches on the ambient space.
pub fn compute(table: &GwTable, profile: &ConstraintProfile) -> Result<Genus2Report> {
    match profile.ambient {
        2 => n2_p2_pipeline(table, profile.degree as i64),
        _ => n2_p3(table, profile),
    }
}
