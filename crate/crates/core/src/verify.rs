//! Exhaustive and seeded consistency suites, shared by the CLI and the tests.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::{s3_image, second_half, trace_class, Perm3, Psl2Mat, TraceClass};
use crate::classify::{
    clusters_of, enumerate_labels, enumerate_p0, level_slope_of, radii_of, type_of, LevelSlope,
};
use crate::error::{Error, Result};
use crate::lissajous::{
    build_h, build_w_frieze, epsilon_seq, is_collision_free, is_primitive, normalize,
    NormalizedType, TypeMN,
};
use crate::shapetrace::{collision_scan, epsilon_oracle, syzygy_oracle, Tolerances, DEFAULT_RATIO};
use crate::surd::{cf_expand, far_endpoint, matches_cluster_period};
use crate::syzygy::{is_reduced, omega, syzygy_sequence, walk_closure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Epsilon,
    Collision,
    Bijection,
    Cf,
    Cluster,
    Syzygy,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Epsilon,
        Suite::Collision,
        Suite::Bijection,
        Suite::Cf,
        Suite::Cluster,
        Suite::Syzygy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Epsilon => "epsilon",
            Suite::Collision => "collision",
            Suite::Bijection => "bijection",
            Suite::Cf => "cf",
            Suite::Cluster => "cluster",
            Suite::Syzygy => "syzygy",
        }
    }

    /// Sweep bound on |m| used when none is given.
    pub fn default_max_m(self) -> i64 {
        match self {
            Suite::Epsilon => 30,
            Suite::Collision => 10,
            Suite::Bijection | Suite::Cluster => 200,
            Suite::Cf => 60,
            Suite::Syzygy => 12,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub max_m: Option<i64>,
    pub max_sum: i64,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_m: None,
            max_sum: 100,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub label: String,
    pub failure: Option<String>,
}

impl CaseResult {
    fn check(label: impl Into<String>, failures: Vec<String>) -> Self {
        CaseResult {
            label: label.into(),
            failure: (!failures.is_empty()).then(|| failures.join("; ")),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for CaseResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "pass {}", self.label),
            Some(why) => write!(f, "FAIL {}: {why}", self.label),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub cases: Vec<CaseResult>,
}

impl SuiteOutcome {
    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.passed()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn summary(&self) -> String {
        match self.failures() {
            0 => format!("all {} cases pass", self.cases.len()),
            k => format!("{k} of {} cases fail", self.cases.len()),
        }
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> SuiteOutcome {
    let max_m = opts.max_m.unwrap_or_else(|| suite.default_max_m());
    let cases = match suite {
        Suite::Epsilon => epsilon_cases(max_m, opts.seed),
        Suite::Collision => collision_cases(max_m),
        Suite::Bijection => bijection_cases(max_m, opts.max_sum, opts.seed),
        Suite::Cf => cf_cases(max_m),
        Suite::Cluster => cluster_cases(max_m, opts.seed),
        Suite::Syzygy => syzygy_cases(max_m),
    };
    SuiteOutcome { suite, cases }
}

fn err_string(e: Error) -> Vec<String> {
    vec![e.to_string()]
}

/// Collision-free normalized types that are not primitive, |m|,|n| ≤ `bound`.
pub fn non_primitive_types(bound: i64) -> Vec<NormalizedType> {
    let mut seen = Vec::new();
    for m in -bound..=bound {
        for n in -bound..=bound {
            let t = TypeMN::new(m, n);
            if m == 0 || n == 0 || !is_collision_free(t) || is_primitive(t) {
                continue;
            }
            if let Ok(nt) = normalize(t) {
                if !is_primitive(nt.type_mn()) && !seen.contains(&nt) {
                    seen.push(nt);
                }
            }
        }
    }
    seen
}

fn random_labels(seed: u64, count: usize, max_level: u32, max_sum: i64) -> Vec<LevelSlope> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let level = rng.gen_range(1..=max_level);
        let sum = rng.gen_range(1..=max_sum);
        if sum.gcd(&6) != 1 {
            continue;
        }
        let q = rng.gen_range(0..sum);
        if let Ok(ls) = LevelSlope::from_parts(level, sum - q, q) {
            out.push(ls);
        }
    }
    out
}

fn epsilon_case(nt: &NormalizedType) -> CaseResult {
    let failures = match (epsilon_seq(nt), epsilon_oracle(nt)) {
        (Ok(exact), Ok(numeric)) if exact.bits == numeric => vec![],
        (Ok(exact), Ok(numeric)) => vec![format!(
            "exact {} vs numeric {}",
            exact.bit_string(),
            numeric
                .iter()
                .map(|b| char::from(b'0' + b))
                .collect::<String>()
        )],
        (Err(e), _) | (_, Err(e)) => err_string(e),
    };
    CaseResult::check(nt.type_mn().to_string(), failures)
}

fn epsilon_cases(max_m: i64, seed: u64) -> Vec<CaseResult> {
    let mut cases: Vec<CaseResult> = enumerate_p0(max_m)
        .into_iter()
        .filter_map(|t| normalize(t).ok())
        .map(|nt| epsilon_case(&nt))
        .collect();
    let extra = non_primitive_types(max_m.min(15));
    cases.extend(extra.iter().map(epsilon_case));
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..20 {
        let m_abs = rng.gen_range(1..=max_m.max(1));
        let n_abs = rng.gen_range(1..=3 * max_m.max(1));
        let t = TypeMN::new(m_abs * if rng.gen() { 1 } else { -1 }, n_abs);
        if is_collision_free(t) {
            cases.push(epsilon_case(&normalize(t).expect("collision-free")));
        }
    }
    cases
}

const SCAN_STEPS: usize = 20_000;

fn collision_cases(max_m: i64) -> Vec<CaseResult> {
    let tol = Tolerances::default();
    let mut cases = Vec::new();
    for m in -max_m..=max_m {
        for n in -max_m..=max_m {
            if m == 0 || n == 0 || m.gcd(&n) != 1 || (m * n) % 3 == 0 {
                continue;
            }
            let t = TypeMN::new(m, n);
            let predicted_free = is_collision_free(t);
            let d = collision_scan(t, SCAN_STEPS);
            let ok = if predicted_free {
                d > tol.clearance
            } else {
                d < tol.collision
            };
            let failures = if ok {
                vec![]
            } else {
                vec![format!(
                    "parity predicts {} but minimum distance is {d:e}",
                    if predicted_free {
                        "no collision"
                    } else {
                        "collision"
                    }
                )]
            };
            cases.push(CaseResult::check(t.to_string(), failures));
        }
    }
    cases
}

fn label_round_trip(ls: LevelSlope) -> CaseResult {
    let failures = match type_of(ls).and_then(level_slope_of) {
        Ok(back) if back == ls => vec![],
        Ok(back) => vec![format!("came back as {back}")],
        Err(e) => err_string(e),
    };
    CaseResult::check(ls.to_string(), failures)
}

fn bijection_cases(max_m: i64, max_sum: i64, seed: u64) -> Vec<CaseResult> {
    let mut cases: Vec<CaseResult> = enumerate_labels(10, max_sum)
        .into_iter()
        .map(label_round_trip)
        .collect();
    for t in enumerate_p0(max_m) {
        let failures = match level_slope_of(t).and_then(type_of) {
            Ok(back) if back == t => vec![],
            Ok(back) => vec![format!("came back as {back}")],
            Err(e) => err_string(e),
        };
        cases.push(CaseResult::check(t.to_string(), failures));
    }
    cases.extend(
        random_labels(seed, 100, 40, 400)
            .into_iter()
            .map(label_round_trip),
    );
    cases
}

fn cf_case(t: TypeMN) -> Result<Vec<String>> {
    let nt = normalize(t)?;
    let w = build_w_frieze(&nt)?;
    let cf = cf_expand(&far_endpoint(&w.matrix())?);
    let radii = radii_of(level_slope_of(t)?)?;
    let mut failures = Vec::new();
    if cf.period.iter().any(|a| a.is_even()) {
        failures.push(format!("even period entry in {cf}"));
    }
    if !matches_cluster_period(&cf, &radii) {
        failures.push(format!("period of {cf} does not match radii {radii:?}"));
    }
    Ok(failures)
}

fn cf_cases(max_m: i64) -> Vec<CaseResult> {
    enumerate_p0(max_m)
        .into_iter()
        .map(|t| CaseResult::check(t.to_string(), cf_case(t).unwrap_or_else(err_string)))
        .collect()
}

/// Structural invariants of one primitive type, returned as failure messages.
pub fn cluster_invariants(t: TypeMN) -> Result<Vec<String>> {
    let nt = normalize(t)?;
    let ls = level_slope_of(t)?;
    let h = build_h(&nt)?;
    let w = build_w_frieze(&nt)?;
    let mut failures = Vec::new();
    let clusters = clusters_of(ls)?;
    if clusters.letters != h {
        failures.push(format!("clusters {} differ from H {h}", clusters.letters));
    }
    if h.concat(&second_half(&h)?) != w {
        failures.push("W is not H followed by its second half".into());
    }
    let mw = w.matrix();
    let a = Psl2Mat::a_gen();
    if &(&a * &mw.inverse()) * &a != mw {
        failures.push("M(W) is not A·M(W)⁻¹·A".into());
    }
    if s3_image(&w) != Perm3::CYCLE_132 {
        failures.push(format!("s3 image of W is {}", s3_image(&w)));
    }
    if s3_image(&h) != Perm3::CYCLE_123 {
        failures.push(format!("s3 image of H is {}", s3_image(&h)));
    }
    if trace_class(&mw) != TraceClass::Hyperbolic {
        failures.push("M(W) is not hyperbolic".into());
    }
    let len = h.len() as i64;
    if len % 2 == 0 || len != ls.h_length() {
        failures.push(format!("|H| = {len}, expected {}", ls.h_length()));
    }
    if !epsilon_seq(&nt)?.is_doubly_palindromic() {
        failures.push("ε′ is not doubly palindromic".into());
    }
    Ok(failures)
}

fn cluster_cases(max_m: i64, seed: u64) -> Vec<CaseResult> {
    let mut cases: Vec<CaseResult> = enumerate_p0(max_m)
        .into_iter()
        .map(|t| {
            CaseResult::check(
                t.to_string(),
                cluster_invariants(t).unwrap_or_else(err_string),
            )
        })
        .collect();
    for ls in random_labels(seed, 50, 30, 200) {
        let failures = type_of(ls)
            .and_then(cluster_invariants)
            .unwrap_or_else(err_string);
        cases.push(CaseResult::check(ls.to_string(), failures));
    }
    cases
}

/// The numeric syzygy oracle, halving the amplitude ratio after a border hit.
pub fn stable_syzygy_oracle(nt: &NormalizedType) -> Result<crate::syzygy::SyzygySeq> {
    let mut ratio = DEFAULT_RATIO;
    for _ in 0..20 {
        match syzygy_oracle(nt, ratio) {
            Err(Error::BorderHit(_)) => ratio /= 2.0,
            other => return other,
        }
    }
    Err(Error::Unstable(20))
}

fn syzygy_case(t: TypeMN) -> Result<Vec<String>> {
    let nt = normalize(t)?;
    let ls = level_slope_of(t)?;
    let symbolic = syzygy_sequence(t, 1)?;
    let numeric = stable_syzygy_oracle(&nt)?;
    let mut failures = Vec::new();
    if !numeric.is_rotation_of(&symbolic) {
        failures.push(format!("traced {numeric} vs symbolic {symbolic}"));
    }
    if !is_reduced(&symbolic) {
        failures.push(format!("{symbolic} is not reduced"));
    }
    if symbolic.len() as i64 != 6 * ls.h_length() {
        failures.push(format!("period length {}", symbolic.len()));
    }
    if walk_closure(&omega(ls)?, 6) != 0 {
        failures.push("walk does not close".into());
    }
    Ok(failures)
}

fn syzygy_cases(max_m: i64) -> Vec<CaseResult> {
    enumerate_p0(max_m)
        .into_iter()
        .map(|t| CaseResult::check(t.to_string(), syzygy_case(t).unwrap_or_else(err_string)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_sweeps_pass() {
        for suite in Suite::ALL {
            let opts = VerifyOptions {
                max_m: Some(5),
                max_sum: 30,
                seed: 7,
            };
            let out = run_suite(suite, &opts);
            assert!(
                out.all_passed(),
                "{suite}: {:?}",
                out.cases.iter().find(|c| !c.passed())
            );
            assert!(!out.cases.is_empty());
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        assert_eq!(random_labels(3, 10, 5, 50), random_labels(3, 10, 5, 50));
        assert_ne!(random_labels(3, 10, 5, 50), random_labels(4, 10, 5, 50));
    }

    #[test]
    fn non_primitive_sample_is_nonempty() {
        let extra = non_primitive_types(6);
        assert!(extra.iter().any(|nt| nt.type_mn() == TypeMN::new(1, 4)));
        assert!(extra.iter().all(|nt| !is_primitive(nt.type_mn())));
    }

    #[test]
    fn summary_wording() {
        let out = SuiteOutcome {
            suite: Suite::Cf,
            cases: vec![CaseResult::check("x", vec![])],
        };
        assert_eq!(out.summary(), "all 1 cases pass");
    }
}
