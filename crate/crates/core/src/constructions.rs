//! Level inverse systems with prescribed h-vectors: truncated Hilbert
//! functions of points realized by powers of linear forms, augmented by a
//! generic form (or a sum of powers of linear forms), and the monomial and
//! explicit examples built on them. Every builder verifies its output and
//! reports target and computed h-vectors side by side.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::Arithmetic;
use crate::error::{Error, Result};
use crate::hvector::{count_maxima, first_difference, join, lemma1_predict, lift_hvector, monomial_count, HVector};
use crate::inverse::InverseSystem;
use crate::points::{curve_hilbert_function, points_from_staircase, points_on_rational_curve, powers_module, MAX_RETRIES};
use crate::poly::{monomials_of_degree, nonzero_coefficient, power_of_linear, random_form, Form, Monomial, MonomialOrder};
use crate::seed;
use crate::wlp::{wlp_probe, WlpCertificate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub construction: String,
    pub params: BTreeMap<String, Value>,
    pub seed: u64,
    pub retries: u32,
    pub target_h: HVector,
    pub computed_h: HVector,
    pub verdict: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_target_h: Option<HVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_computed_h: Option<HVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unlifted_h: Option<HVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wlp_probe: Option<WlpCertificate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub module: InverseSystem,
}

impl ConstructionReport {
    pub fn passed(&self) -> bool {
        self.verdict == Outcome::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Result of adding one generic form.
#[derive(Clone, Debug)]
pub struct Augmented {
    pub module: InverseSystem,
    pub before: HVector,
    pub after: HVector,
    pub retries: u32,
}

fn require_level(m: &InverseSystem) -> Result<u32> {
    if !m.is_equigenerated() {
        return Err(Error::NotLevel(m.degrees()));
    }
    Ok(m.socle_degree())
}

/// Adds `random_form(r, e, ...)` and checks the h-vector against
/// [`lemma1_predict`]; a mismatch means the sample was not generic, and up
/// to [`MAX_RETRIES`] further samples are tried.
pub fn add_generic_form(m: &InverseSystem, seed_value: u64, arith: Arithmetic) -> Result<Augmented> {
    let before = m.h_vector_with(arith)?;
    add_generic_form_to(m, before, seed_value, arith)
}

fn add_generic_form_to(m: &InverseSystem, before: HVector, seed_value: u64, arith: Arithmetic) -> Result<Augmented> {
    let e = require_level(m)?;
    let r = m.ambient();
    let predicted = lemma1_predict(&before, r as u64);
    let mut last = None;
    for attempt in 0..=MAX_RETRIES {
        let f = random_form(r, e, seed::derive(seed_value, &format!("generic-form/{attempt}")));
        let module = m.with_generator(f)?;
        let after = module.h_vector_with(arith)?;
        if after == predicted {
            return Ok(Augmented { module, before, after, retries: attempt });
        }
        last = Some(after);
    }
    Err(Error::VerificationFailed {
        attempts: MAX_RETRIES + 1,
        detail: format!(
            "adding a generic form to h = {before}: expected {predicted}, observed {}",
            last.map_or_else(String::new, |h| h.to_string())
        ),
    })
}

fn random_linear_coeffs(r: usize, rng: &mut impl rand::Rng) -> Vec<BigRational> {
    (0..r).map(|_| BigRational::from_integer(BigInt::from(nonzero_coefficient(rng, 1_000)))).collect()
}

/// Appends `F = L_1^e + ... + L_k^e` for random linear forms and reports the
/// new h-vector without checking it against any prediction.
pub fn add_power_sum(m: &InverseSystem, k: usize, seed_value: u64, arith: Arithmetic) -> Result<(InverseSystem, HVector)> {
    let e = require_level(m)?;
    if k == 0 {
        return Err(Error::Invalid("a power sum needs at least one linear form".into()));
    }
    let r = m.ambient();
    let mut rng = seed::rng(seed_value, "power-sum");
    let mut f = Form::zero(r, e);
    for _ in 0..k {
        f = f.add(&power_of_linear(&random_linear_coeffs(r, &mut rng), e)?)?;
    }
    let module = m.with_generator(f)?;
    let h = module.h_vector_with(arith)?;
    Ok((module, h))
}

/// `<M, y_4^e, ..., y_{r_new}^e>` in `r_new` variables.
pub fn lift_codim(m: &InverseSystem, r_new: usize) -> Result<InverseSystem> {
    let e = require_level(m)?;
    if m.ambient() != 3 {
        return Err(Error::AmbientMismatch { expected: 3, found: m.ambient() });
    }
    if r_new < 3 {
        return Err(Error::Invalid(format!("target codimension {r_new} below 3")));
    }
    let lifted = m.embed(r_new)?;
    let extra = (3..r_new).map(|j| {
        let mut exps = vec![0; r_new];
        exps[j] = e;
        Form::monomial(Monomial::new(exps), BigRational::from_integer(BigInt::from(1)))
    });
    lifted.with_generators(extra)
}

/// Raises the codimension of a report's module and re-verifies the h-vector
/// against [`lift_hvector`].
pub fn lift_report(report: ConstructionReport, r_new: usize, arith: Arithmetic) -> Result<ConstructionReport> {
    let module = lift_codim(&report.module, r_new)?;
    let computed = module.h_vector_with(arith)?;
    let target = lift_hvector(&report.computed_h, r_new as u64)?;
    let ok = report.passed() && computed == target;
    let mut out = report;
    out.params.insert("lift".into(), json!(r_new));
    out.unlifted_h = Some(out.computed_h.clone());
    out.target_h = lift_hvector(&out.target_h, r_new as u64)?;
    out.computed_h = computed;
    out.verdict = Outcome::from_bool(ok && out.target_h == out.computed_h);
    out.module = module;
    Ok(out)
}

pub fn example2_base_target() -> HVector {
    HVector::new(vec![1, 3, 6, 9, 12, 15, 18, 21, 24, 27]).expect("valid")
}

pub fn example2_target() -> HVector {
    HVector::new(vec![1, 3, 6, 10, 15, 21, 28, 27, 27, 28]).expect("valid")
}

/// 27 points on a rational cubic, their ninth powers, and a generic form of
/// degree 9.
pub fn build_example2(seed_value: u64, arith: Arithmetic) -> Result<ConstructionReport> {
    let pts = points_on_rational_curve(27, 3, seed_value, arith)?;
    let base = powers_module(&pts.value, 9)?;
    let base_h = base.h_vector_with(arith)?;
    let aug = add_generic_form_to(&base, base_h.clone(), seed_value, arith)?;
    let target = example2_target();
    let ok = base_h == example2_base_target() && aug.after == target && !aug.after.is_unimodal();
    Ok(ConstructionReport {
        construction: "example2".into(),
        params: BTreeMap::new(),
        seed: seed_value,
        retries: pts.retries + aug.retries,
        target_h: target,
        computed_h: aug.after,
        verdict: Outcome::from_bool(ok),
        base_target_h: Some(example2_base_target()),
        base_computed_h: Some(base_h),
        unlifted_h: None,
        wlp_probe: None,
        notes: Vec::new(),
        module: aug.module,
    })
}

/// Base h-vector `h_i = HF_curve(i)` of `t = p*e - p(p-3)/2` points on a
/// degree-`p` rational curve, ending with an arithmetic progression of step
/// `p`.
pub fn arithmetic_tail_base(p: u32, e: u32) -> Result<HVector> {
    if p < 3 {
        return Err(Error::Invalid(format!("step {p} below 3")));
    }
    if e < p {
        return Err(Error::Infeasible(format!("socle degree {e} below step {p}")));
    }
    HVector::new((0..=e as u64).map(|i| curve_hilbert_function(p as u64, i)).collect())
}

pub fn build_arithmetic_tail(p: u32, e: u32, seed_value: u64, arith: Arithmetic) -> Result<ConstructionReport> {
    let base_target = arithmetic_tail_base(p, e)?;
    let predicted = lemma1_predict(&base_target, 3);
    let witness = |h: &HVector| {
        let v = h.entries();
        let k = (e - p) as usize;
        v[k] == v[k + 1] + 1 && !h.is_unimodal()
    };
    if !witness(&predicted) {
        return Err(Error::Infeasible(format!(
            "socle degree {e} too small for step {p}: predicted {predicted} has no drop at degree {}",
            e - p
        )));
    }
    let t = *base_target.entries().last().expect("nonempty") as usize;
    let pts = points_on_rational_curve(t, p, seed_value, arith)?;
    let base = powers_module(&pts.value, e)?;
    let base_h = base.h_vector_with(arith)?;
    let aug = add_generic_form_to(&base, base_h.clone(), seed_value, arith)?;
    let ok = base_h == base_target && aug.after == predicted && witness(&aug.after);
    Ok(ConstructionReport {
        construction: "tail".into(),
        params: params(&[("p", json!(p)), ("e", json!(e))]),
        seed: seed_value,
        retries: pts.retries + aug.retries,
        target_h: predicted,
        computed_h: aug.after,
        verdict: Outcome::from_bool(ok),
        base_target_h: Some(base_target),
        base_computed_h: Some(base_h),
        unlifted_h: None,
        wlp_probe: None,
        notes: Vec::new(),
        module: aug.module,
    })
}

fn binom2(n: i64) -> i64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// Smallest socle degree for which the `N`-maxima base h-vector exists.
pub fn n_maxima_min_degree(n: u32) -> u32 {
    let n = n as i64;
    let m = 1.max(3 * n - 4).max(9 * (n - 1) + binom2(3 * n - 3) - 1);
    (m + 3 * n - 2) as u32
}

/// Base h-vector whose augmentation by a generic form has exactly `n`
/// strict maxima: `h_i = C(i+2, 2)` up to `m = e - 3n + 2`, then
/// `h_{e-j} = t - C(j+2, 2) + [3 | j]` for `0 <= j <= 3(n-1)` with
/// `t = C(m+2, 2) + 9(n-1) + C(3n-3, 2)`.
pub fn n_maxima_base(n: u32, e: u32) -> Result<HVector> {
    if n == 0 {
        return Err(Error::Invalid("number of maxima must be positive".into()));
    }
    let min = n_maxima_min_degree(n);
    if e < min {
        return Err(Error::Infeasible(format!("{n} maxima need socle degree at least {min}, got {e}")));
    }
    let ni = n as i64;
    let m = e as i64 - 3 * ni + 2;
    let t = binom2(m + 2) + 9 * (ni - 1) + binom2(3 * ni - 3);
    let h: Vec<u64> = (0..=e as i64)
        .map(|i| {
            if i <= m {
                binom2(i + 2) as u64
            } else {
                let j = e as i64 - i;
                (t - binom2(j + 2) + i64::from(j % 3 == 0)) as u64
            }
        })
        .collect();
    HVector::new(h)
}

pub fn build_n_maxima(n: u32, seed_value: u64, e: Option<u32>, arith: Arithmetic) -> Result<ConstructionReport> {
    let e = e.unwrap_or_else(|| n_maxima_min_degree(n));
    let base_target = n_maxima_base(n, e)?;
    let predicted = lemma1_predict(&base_target, 3);
    if count_maxima(predicted.entries()) != n as usize {
        return Err(Error::Infeasible(format!(
            "predicted h-vector {predicted} has {} strict maxima, not {n}",
            count_maxima(predicted.entries())
        )));
    }
    let mut delta: Vec<u64> = first_difference(base_target.entries()).into_iter().map(|d| d.max(0) as u64).collect();
    while delta.last() == Some(&0) {
        delta.pop();
    }
    let pts = points_from_staircase(&delta, seed_value, arith)?;
    let base = powers_module(&pts.value, e)?;
    let base_h = base.h_vector_with(arith)?;
    let aug = add_generic_form_to(&base, base_h.clone(), seed_value, arith)?;
    let ok = base_h == base_target && aug.after == predicted && aug.after.count_maxima() == n as usize;
    Ok(ConstructionReport {
        construction: "nmaxima".into(),
        params: params(&[("n", json!(n)), ("e", json!(e))]),
        seed: seed_value,
        retries: pts.retries + aug.retries,
        target_h: predicted,
        computed_h: aug.after,
        verdict: Outcome::from_bool(ok),
        base_target_h: Some(base_target),
        base_computed_h: Some(base_h),
        unlifted_h: None,
        wlp_probe: None,
        notes: Vec::new(),
        module: aug.module,
    })
}

fn monomial_form(exps: Vec<u32>) -> Form {
    Form::monomial(Monomial::new(exps), BigRational::from_integer(BigInt::from(1)))
}

/// `<y_1^{e-1} y_2, y_2^e, y_2^{e-1} y_3, ..., y_3^e>`.
pub fn build_example7(e: u32) -> Result<InverseSystem> {
    if e < 3 {
        return Err(Error::Invalid(format!("socle degree {e} below 3")));
    }
    let mut gens = vec![monomial_form(vec![e - 1, 1, 0])];
    gens.extend((0..=e).map(|k| monomial_form(vec![0, e - k, k])));
    InverseSystem::new(3, gens)
}

/// `(1, 3, 5, 6, ..., e+1, e+2, e+2)`.
pub fn example7_target(e: u32) -> HVector {
    let mut h = vec![1, 3, 5];
    h.extend((3..e as u64).map(|i| i + 3));
    h.push(e as u64 + 2);
    HVector::new(h).expect("valid")
}

pub fn report_example7(e: u32, arith: Arithmetic) -> Result<ConstructionReport> {
    let module = build_example7(e)?;
    let computed = module.h_vector_with(arith)?;
    let target = example7_target(e);
    Ok(ConstructionReport {
        construction: "example7".into(),
        params: params(&[("e", json!(e))]),
        seed: 0,
        retries: 0,
        verdict: Outcome::from_bool(computed == target),
        target_h: target,
        computed_h: computed,
        base_target_h: None,
        base_computed_h: None,
        unlifted_h: None,
        wlp_probe: None,
        notes: Vec::new(),
        module,
    })
}

pub const PROP8_BINARY_FORM: &str =
    "437*y1^7 - 232*y1^6*y2 - 423*y1^5*y2^2 - 567*y1^4*y2^3 - 769*y1^3*y2^4 + 831*y1^2*y2^5 - 916*y1*y2^6 - 202*y2^7";

/// Two forms in `y_1, y_3` and a binary form in `y_1, y_2`, all of degree 7.
pub fn build_prop8() -> InverseSystem {
    let gens = ["y1^2*y3^5 - y1*y3^6", "y1^3*y3^4 - y1^5*y3^2", PROP8_BINARY_FORM]
        .iter()
        .map(|s| Form::parse(s, 3, 'y').expect("fixed forms parse"))
        .collect();
    InverseSystem::new(3, gens).expect("fixed module is valid")
}

pub fn prop8_target() -> HVector {
    HVector::new(vec![1, 3, 5, 7, 9, 9, 6, 3]).expect("valid")
}

pub fn report_prop8(arith: Arithmetic) -> Result<ConstructionReport> {
    let module = build_prop8();
    let computed = module.h_vector_with(arith)?;
    let target = prop8_target();
    Ok(ConstructionReport {
        construction: "prop8".into(),
        params: BTreeMap::new(),
        seed: 0,
        retries: 0,
        verdict: Outcome::from_bool(computed == target),
        target_h: target,
        computed_h: computed,
        base_target_h: None,
        base_computed_h: None,
        unlifted_h: None,
        wlp_probe: None,
        notes: Vec::new(),
        module,
    })
}

/// Which end of the lex-ordered list of degree-`e` monomials to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// The largest monomials.
    LexFirst,
    /// The smallest monomials.
    LexLast,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::LexFirst => "lex-first",
            Direction::LexLast => "lex-last",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex-first" => Ok(Direction::LexFirst),
            "lex-last" => Ok(Direction::LexLast),
            _ => Err(Error::Parse(format!("unknown direction `{s}`; expected lex-first or lex-last"))),
        }
    }
}

/// The `t` monomials of degree `e` at one end of the lex order.
pub fn lex_extreme_module(t: usize, e: u32, direction: Direction) -> Result<InverseSystem> {
    let all = monomials_of_degree(3, e, MonomialOrder::Lex);
    if t == 0 || t > all.len() {
        return Err(Error::Invalid(format!("{t} monomials requested, degree {e} has {}", all.len())));
    }
    let chosen: Vec<Monomial> = match direction {
        Direction::LexFirst => all[..t].to_vec(),
        Direction::LexLast => all[all.len() - t..].to_vec(),
    };
    InverseSystem::new(3, chosen.into_iter().map(|m| monomial_form(m.exps().to_vec())).collect())
}

/// `(1, 3, 4, 5, ..., t-1, t)` with socle degree `t - 2`.
pub fn remark9_base_target(t: u32) -> Result<HVector> {
    if t < 5 {
        return Err(Error::Infeasible(format!("type {t} too small; need t >= 5")));
    }
    let e = t - 2;
    HVector::new((0..=e as u64).map(|i| if i == 0 { 1 } else { i + 2 }).collect())
}

/// `(1, 3, 6, 7, ..., t, t+1, t+1)`: `min(C(i+2, 2), i+4)` below the socle
/// degree and `t + 1` at it.
pub fn remark9_target(t: u32) -> Result<HVector> {
    let e = remark9_base_target(t)?.socle_degree() as u64;
    HVector::new((0..=e).map(|i| if i == e { t as u64 + 1 } else { monomial_count(3, i).min(i + 4) }).collect())
}

/// Lex-extreme monomial module plus `L_1^e + L_2^e`. With `direction`
/// unset both ends are tried and the one with the stated base h-vector is
/// used. The WLP probe result is recorded but never part of the verdict.
pub fn build_remark9(t: u32, e: u32, seed_value: u64, direction: Option<Direction>, arith: Arithmetic) -> Result<ConstructionReport> {
    let base_target = remark9_base_target(t)?;
    if base_target.socle_degree() != e as usize {
        return Err(Error::Infeasible(format!(
            "base h-vector (1,3,4,...,{t}) has socle degree {}, not {e}",
            base_target.socle_degree()
        )));
    }
    let candidates: Vec<Direction> = match direction {
        Some(d) => vec![d],
        None => vec![Direction::LexLast, Direction::LexFirst],
    };
    let mut observed = Vec::new();
    let mut chosen = None;
    for d in candidates {
        let m = lex_extreme_module(t as usize, e, d)?;
        let h = m.h_vector_with(arith)?;
        if h == base_target {
            chosen = Some((d, m, h));
            break;
        }
        observed.push(format!("{d}: {h}"));
    }
    let Some((dir, base, base_h)) = chosen else {
        return Err(Error::VerificationFailed {
            attempts: observed.len() as u32,
            detail: format!("no lex extreme has base h-vector {base_target}; observed {}", observed.join("; ")),
        });
    };
    let target = remark9_target(t)?;
    let mut last = None;
    for attempt in 0..=MAX_RETRIES {
        let mut rng = seed::rng(seed_value, &format!("remark9/{attempt}"));
        let f = power_of_linear(&random_linear_coeffs(3, &mut rng), e)?.add(&power_of_linear(&random_linear_coeffs(3, &mut rng), e)?)?;
        let module = base.with_generator(f)?;
        let h = module.h_vector_with(arith)?;
        if h == target {
            let probe = wlp_probe(&module, seed_value, arith)?;
            return Ok(ConstructionReport {
                construction: "remark9".into(),
                params: params(&[("t", json!(t)), ("e", json!(e)), ("direction", json!(dir.to_string()))]),
                seed: seed_value,
                retries: attempt,
                target_h: target,
                computed_h: h,
                verdict: Outcome::Pass,
                base_target_h: Some(base_target),
                base_computed_h: Some(base_h),
                unlifted_h: None,
                wlp_probe: Some(probe),
                notes: vec!["wlp: reported, unasserted".into()],
                module,
            });
        }
        last = Some(h);
    }
    Err(Error::VerificationFailed {
        attempts: MAX_RETRIES + 1,
        detail: format!("expected {target}, observed {}", last.map_or_else(String::new, |h| h.to_string())),
    })
}

/// Comma-separated rendering of a report's h-vectors, for text output.
pub fn describe(report: &ConstructionReport) -> Vec<(String, String)> {
    let mut out = vec![
        ("construction".to_string(), report.construction.clone()),
        ("seed".to_string(), report.seed.to_string()),
        ("retries".to_string(), report.retries.to_string()),
    ];
    for (k, v) in &report.params {
        out.push((format!("param.{k}"), v.to_string().trim_matches('"').to_string()));
    }
    if let Some(h) = &report.base_target_h {
        out.push(("base_target_h".into(), h.to_string()));
    }
    if let Some(h) = &report.base_computed_h {
        out.push(("base_computed_h".into(), h.to_string()));
    }
    if let Some(h) = &report.unlifted_h {
        out.push(("unlifted_h".into(), h.to_string()));
    }
    out.push(("target_h".into(), report.target_h.to_string()));
    out.push(("computed_h".into(), report.computed_h.to_string()));
    out.push(("unimodal".into(), report.computed_h.is_unimodal().to_string()));
    out.push(("maxima".into(), report.computed_h.count_maxima().to_string()));
    if let Some(p) = &report.wlp_probe {
        out.push(("wlp_probe".into(), format!("{} (reported, unasserted)", p.verdict.as_str())));
        if !p.failing.is_empty() {
            out.push(("wlp_probe_failing".into(), join(&p.failing)));
        }
    }
    out.push(("verdict".into(), if report.passed() { "pass" } else { "fail" }.into()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inverse::level_type;

    fn hv(s: &str) -> HVector {
        s.parse().unwrap()
    }

    #[test]
    fn n_maxima_parameters() {
        assert_eq!(n_maxima_min_degree(1), 2);
        assert_eq!(n_maxima_min_degree(2), 15);
        assert_eq!(n_maxima_min_degree(3), 39);
        assert_eq!(n_maxima_base(1, 2).unwrap(), hv("1,3,3"));
        let two = n_maxima_base(2, 15).unwrap();
        assert_eq!(*two.entries().last().unwrap(), 90);
        assert_eq!(count_maxima(lemma1_predict(&two, 3).entries()), 2);
        assert!(n_maxima_base(2, 14).is_err());
    }

    #[test]
    fn n_maxima_matches_the_hundred_degree_instance() {
        let base = n_maxima_base(4, 100).unwrap();
        let a = 92 * 91 / 2;
        let tail: Vec<u64> = [0, 9, 18, 27, 36, 42, 48, 54, 57, 60, 63].iter().map(|d| a + d).collect();
        assert_eq!(&base.entries()[90..], &tail[..]);
        let t = a + 63;
        let big = lemma1_predict(&base, 3);
        let expected: Vec<u64> = vec![a, t + 1, t, t, t + 1, t, t, t + 1, t, t, t + 1];
        assert_eq!(&big.entries()[90..], &expected[..]);
        assert_eq!(big.count_maxima(), 4);
    }

    #[test]
    fn example7_family() {
        assert_eq!(example7_target(3), hv("1,3,5,5"));
        assert_eq!(example7_target(5), hv("1,3,5,6,7,7"));
        for e in 3..=6 {
            let m = build_example7(e).unwrap();
            assert_eq!(m.h_vector().unwrap(), example7_target(e));
        }
        assert!(build_example7(2).is_err());
    }

    #[test]
    fn prop8_module() {
        let m = build_prop8();
        assert_eq!(m.h_vector().unwrap(), prop8_target());
        assert_eq!(level_type(&m).unwrap(), 3);
    }

    #[test]
    fn generic_form_on_a_pure_power() {
        let e = 6;
        let m = InverseSystem::new(3, vec![Form::parse("y1^6", 3, 'y').unwrap()]).unwrap();
        let aug = add_generic_form(&m, 4, Arithmetic::default()).unwrap();
        let expected: Vec<u64> = (0..=e).map(|i| (1 + monomial_count(3, e - i)).min(monomial_count(3, i))).collect();
        assert_eq!(aug.after.entries(), &expected[..]);
    }

    #[test]
    fn arithmetic_tail_validation() {
        assert!(arithmetic_tail_base(2, 9).is_err());
        assert!(build_arithmetic_tail(5, 6, 1, Arithmetic::default()).is_err());
        let base = arithmetic_tail_base(4, 12).unwrap();
        let big = lemma1_predict(&base, 3);
        assert_eq!(big.entries()[8], big.entries()[9] + 1);
    }

    #[test]
    fn remark9_targets() {
        assert_eq!(remark9_base_target(7).unwrap(), hv("1,3,4,5,6,7"));
        assert_eq!(remark9_target(7).unwrap(), hv("1,3,6,7,8,8"));
        assert!(build_remark9(7, 6, 1, None, Arithmetic::default()).is_err());
    }

    #[test]
    fn remark9_small_instance() {
        let r = build_remark9(8, 6, 2, None, Arithmetic::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.params["direction"], json!("lex-last"));
        let err = build_remark9(8, 6, 2, Some(Direction::LexFirst), Arithmetic::default()).unwrap_err();
        assert!(err.to_string().contains("lex-first"), "{err}");
    }

    #[test]
    fn lifting_a_small_example() {
        let m = build_example7(3).unwrap();
        let lifted = lift_codim(&m, 4).unwrap();
        assert_eq!(lifted.h_vector().unwrap(), hv("1,4,6,6"));
        assert_eq!(lift_codim(&m, 3).unwrap(), m);
    }

    #[test]
    fn report_is_deterministic() {
        let a = report_example7(4, Arithmetic::default()).unwrap().to_json();
        let b = report_example7(4, Arithmetic::default()).unwrap().to_json();
        assert_eq!(a, b);
    }
}
