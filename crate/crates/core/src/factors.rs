//! Products of quadratic factors representing the projected singular
//! vectors, their expansion, and the end-to-end comparison with the oracle.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::affine::{Affine, Param};
use crate::cartan::{CartanData, Generator, OrbitCase, RootVector};
use crate::error::{Error, Result};
use crate::ffm::{ffm_exponents, xi_value};
use crate::free::QuotientCache;
use crate::gamma::{GammaTable, WeightParam};
use crate::pbw::{project, Heisenberg, PbwElement, Sl2Like, TargetAlgebra, TermRecord};
use crate::rational::{fmt_q, q, qf, serde_q, Q};
use crate::verma::{is_singular, singular_vectors, VermaContext};

/// Which target algebra a comparison runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Target {
    #[serde(rename = "H")]
    Heisenberg,
    #[serde(rename = "L")]
    Sl2Like,
}

impl Target {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "H" | "h" => Ok(Target::Heisenberg),
            "L" | "l" => Ok(Target::Sl2Like),
            other => Err(Error::Parse(format!("unknown target {other:?} (expected H or L)"))),
        }
    }

    pub fn available(self, cartan: CartanData) -> Result<()> {
        match self {
            Target::Heisenberg => Heisenberg::available(cartan),
            Target::Sl2Like => Sl2Like::available(cartan),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Heisenberg => write!(f, "H"),
            Target::Sl2Like => write!(f, "L"),
        }
    }
}

/// One block `𝓗_w` (or `𝓗̃_w`): consecutive factors with subscripts in `(m, ξ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorBlock {
    pub index: usize,
    pub tilde: bool,
    pub subscripts: Vec<Affine>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSpec {
    pub case: OrbitCase,
    pub n: usize,
    pub m: u32,
    pub root: RootVector,
    pub blocks: Vec<FactorBlock>,
    pub trailing: (Generator, u32),
}

impl FactorSpec {
    pub fn subscripts(&self) -> impl Iterator<Item = &Affine> {
        self.blocks.iter().flat_map(|b| b.subscripts.iter())
    }

    pub fn factor_count(&self) -> usize {
        self.blocks.iter().map(|b| b.subscripts.len()).sum()
    }

    /// `(f1, f2)` degree of the expanded product.
    pub fn degree(&self) -> (u32, u32) {
        let k = self.factor_count() as u32;
        match self.trailing.0 {
            Generator::One => (k + self.trailing.1, k),
            Generator::Two => (k, k + self.trailing.1),
        }
    }

    pub fn render(&self) -> String {
        let mut parts: Vec<String> = self.subscripts().map(|s| format!("X_{{{}}}", s.render(Param::Xi))).collect();
        parts.push(format!("f{}^{}", self.trailing.0, self.trailing.1));
        parts.join(" ")
    }
}

/// `sign·(g(start) − g(start+1) + ⋯ ± g(end))`, empty when `start > end`.
fn alternating(g: impl Fn(usize) -> Q, start: i64, end: i64, sign: i64) -> Q {
    if start > end {
        return Q::zero();
    }
    (start..=end).enumerate().fold(Q::zero(), |acc, (i, k)| {
        let s = if i % 2 == 0 { sign } else { -sign };
        acc + g(k as usize) * q(s)
    })
}

fn count_at(raw: Q, m: u32, case: OrbitCase, block: usize) -> Result<u32> {
    let c = raw * q(m as i64);
    if c.is_negative() {
        return Err(Error::NegativeFactorCount { case: case.number(), block, count: c.to_integer().to_i64().unwrap_or(i64::MIN) });
    }
    Ok(c.to_integer().to_u32().expect("factor count fits u32"))
}

/// The factor string of one case, symbolic in `ξ`.
pub fn build_product(case: OrbitCase, n: usize, m: u32, cartan: CartanData) -> Result<FactorSpec> {
    if n == 0 {
        return Err(Error::InvalidIndex(n));
    }
    if m == 0 {
        return Err(Error::InvalidMultiplicity(m));
    }
    let root = case.root(n, cartan)?;
    let gt = GammaTable::new(cartan, 2 * n + 4);
    let g1 = |k: usize| gt.g1q(k);
    let g2 = |k: usize| gt.g2q(k);
    let ni = n as i64;
    let (width, tilde, r, s) = match case {
        OrbitCase::One => (2 * n - 2, false, 2 * ni - 1, 2 * ni - 3),
        OrbitCase::Two => (2 * n - 1, false, 2 * ni, 2 * ni - 2),
        OrbitCase::Three => (2 * n - 2, true, 2 * ni - 2, 2 * ni - 2),
        OrbitCase::Four => (2 * n - 1, true, 2 * ni - 1, 2 * ni - 1),
    };
    let mut blocks = Vec::with_capacity(width);
    for w in 1..=width {
        let j = (w / 2) as i64;
        let ju = w / 2;
        // (count, ξ coefficient, m coefficient, k ascending?)
        let (count, xc, mc, up) = match (tilde, w) {
            (false, 1) => (g2(2) - g1(0), alternating(g2, 2, r, -1), alternating(g1, 1, s, -1), true),
            (false, w) if w % 2 == 0 => (g1(2 * ju) - g2(2 * ju), alternating(g2, 2 * j + 1, r, 1), alternating(g1, 2 * j - 1, s, -1), false),
            (false, _) => (g2(2 * ju + 2) - g1(2 * ju), alternating(g2, 2 * j + 2, r, -1), alternating(g1, 2 * j, s, 1), true),
            (true, 1) => (g2(2) - g2(1), alternating(g1, 1, r, 1), alternating(g2, 2, s, 1), false),
            (true, w) if w % 2 == 0 => (g2(2 * ju + 1) - g2(2 * ju), alternating(g1, 2 * j, r, -1), alternating(g2, 2 * j, s, 1), true),
            (true, _) => (g2(2 * ju + 2) - g2(2 * ju + 1), alternating(g1, 2 * j + 1, r, 1), alternating(g2, 2 * j + 1, s, -1), false),
        };
        let count = count_at(count, m, case, w)?;
        let subscripts = (1..=count as i64)
            .map(|k| {
                let shift = if up { q(k) } else { q(1 - k) };
                Affine::new(shift, mc.clone(), xc.clone())
            })
            .collect();
        blocks.push(FactorBlock { index: w, tilde, subscripts });
    }
    let (gen, raw) = match case {
        OrbitCase::One => (Generator::One, g1(2 * n - 1) - g1(2 * n - 2)),
        OrbitCase::Two => (Generator::Two, g1(2 * n) - g1(2 * n - 1)),
        OrbitCase::Three => (Generator::Two, g2(2 * n) - g2(2 * n - 1)),
        OrbitCase::Four => (Generator::One, g2(2 * n + 1) - g2(2 * n)),
    };
    let exponent = raw * q(m as i64);
    if exponent.is_negative() {
        return Err(Error::NegativeTrailing { case: case.number(), exponent: exponent.to_integer().to_i64().unwrap_or(i64::MIN) });
    }
    let trailing = (gen, exponent.to_integer().to_u32().expect("trailing exponent fits u32"));
    Ok(FactorSpec { case, n, m, root, blocks, trailing })
}

/// Normal form of the product at a concrete `ξ`, with `H_u` in the
/// Heisenberg target and `J_u` in the sl2-like one.
pub fn expand<A: TargetAlgebra>(spec: &FactorSpec, xi: &Q) -> PbwElement<A> {
    expand_ordered::<A>(spec, xi, false)
}

/// Same as [`expand`], multiplying the quadratic factors in reverse order.
pub fn expand_reversed<A: TargetAlgebra>(spec: &FactorSpec, xi: &Q) -> PbwElement<A> {
    expand_ordered::<A>(spec, xi, true)
}

fn expand_ordered<A: TargetAlgebra>(spec: &FactorSpec, xi: &Q, reversed: bool) -> PbwElement<A> {
    let m = q(spec.m as i64);
    let mut subs: Vec<Q> = spec.subscripts().map(|a| a.eval(&m, xi)).collect();
    if reversed {
        subs.reverse();
    }
    let prod = subs.iter().fold(PbwElement::<A>::one(), |acc, u| acc.mul(&A::quadratic(u)));
    prod.mul(&PbwElement::generator_power(spec.trailing.0, spec.trailing.1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Proportionality {
    pub proportional: bool,
    /// `r` with `a = r·b` when proportional.
    #[serde(with = "crate::rational::serde_q_opt")]
    pub ratio: Option<Q>,
}

/// Decides whether `a = r·b` for a nonzero rational `r`.
pub fn compare_up_to_scalar<A: TargetAlgebra>(a: &PbwElement<A>, b: &PbwElement<A>) -> Result<Proportionality> {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return Err(Error::BothZero),
        (true, false) | (false, true) => return Ok(Proportionality { proportional: false, ratio: None }),
        _ => {}
    }
    let (lead, bc) = b.terms().last_key_value().expect("nonzero");
    let r = a.coefficient(lead) / bc;
    if !r.is_zero() && *a == b.scale(&r) {
        Ok(Proportionality { proportional: true, ratio: Some(r) })
    } else {
        Ok(Proportionality { proportional: false, ratio: None })
    }
}

/// The fixed generic `t` samples.
pub fn default_t_samples() -> Vec<Q> {
    vec![qf(1, 3), qf(2, 5), qf(7, 11), qf(-3, 2), qf(13, 7)]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordTerm {
    pub word: String,
    pub coef: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TargetComparison {
    pub target: Target,
    pub projection: Vec<TermRecord>,
    pub product: Vec<TermRecord>,
    pub proportional: bool,
    pub ratio: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleStatus {
    Pass,
    Fail,
    NonGeneric,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleRecord {
    #[serde(with = "serde_q")]
    pub t: Q,
    #[serde(with = "crate::rational::serde_q_opt")]
    pub xi: Option<Q>,
    /// `λ(m, t) + ρ`.
    pub lambda_shifted: WeightParam,
    pub kernel_dim: usize,
    pub annihilated: bool,
    pub status: SampleStatus,
    pub oracle_vector: Vec<WordTerm>,
    pub comparisons: Vec<TargetComparison>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndToEndReport {
    pub p: i64,
    pub q: i64,
    pub case: u8,
    pub n: usize,
    pub m: u32,
    pub root: RootVector,
    pub grade: (u32, u32),
    pub product: String,
    pub samples: Vec<SampleRecord>,
    pub generic_samples: usize,
    pub passed: bool,
}

fn compare_in<A: TargetAlgebra>(target: Target, v: &crate::free::FreeElement, spec: &FactorSpec, xi: &Q, cartan: CartanData) -> Result<TargetComparison> {
    let projection = project::<A>(v, cartan)?;
    let product = expand::<A>(spec, xi);
    let cmp = compare_up_to_scalar(&projection, &product)?;
    Ok(TargetComparison {
        target,
        projection: projection.records(),
        product: product.records(),
        proportional: cmp.proportional,
        ratio: cmp.ratio.as_ref().map(fmt_q),
    })
}

/// Solves the oracle at `λ(m, t)` for every sample, projects the singular
/// vector and compares it with the expanded product at `ξ(m, t)`.
pub fn end_to_end(case: OrbitCase, n: usize, m: u32, cartan: CartanData, t_samples: &[Q], targets: &[Target], cache: &QuotientCache) -> Result<EndToEndReport> {
    for t in targets {
        t.available(cartan)?;
    }
    let spec = build_product(case, n, m, cartan)?;
    let root = spec.root;
    let grade = (root.k1 as u32 * m, root.k2 as u32 * m);
    cache.check_cap(grade)?;
    if spec.degree() != grade {
        return Err(Error::GradeMismatch(grade.0, grade.1, spec.degree().0, spec.degree().1));
    }
    let mut samples = Vec::with_capacity(t_samples.len());
    for t in t_samples {
        let inst = ffm_exponents(case, n, m, t, cartan)?;
        let xi = xi_value(case, n, m, t, cartan)?;
        let ctx = VermaContext::new(cartan, &inst.weight);
        let sv = singular_vectors(grade, &ctx, cache)?;
        let mut rec = SampleRecord {
            t: t.clone(),
            xi: xi.clone(),
            lambda_shifted: inst.weight.clone(),
            kernel_dim: sv.kernel_dim,
            annihilated: false,
            status: SampleStatus::NonGeneric,
            oracle_vector: Vec::new(),
            comparisons: Vec::new(),
        };
        if sv.kernel_dim != 1 {
            samples.push(rec);
            continue;
        }
        let v = &sv.vectors[0];
        rec.annihilated = is_singular(v, &ctx, cache)?;
        rec.oracle_vector = v.terms().iter().map(|(w, c)| WordTerm { word: w.to_string(), coef: fmt_q(c) }).collect();
        let xi_val = xi.unwrap_or_else(Q::zero);
        for target in targets {
            rec.comparisons.push(match target {
                Target::Heisenberg => compare_in::<Heisenberg>(*target, v, &spec, &xi_val, cartan)?,
                Target::Sl2Like => compare_in::<Sl2Like>(*target, v, &spec, &xi_val, cartan)?,
            });
        }
        rec.status = if rec.annihilated && rec.comparisons.iter().all(|c| c.proportional) { SampleStatus::Pass } else { SampleStatus::Fail };
        samples.push(rec);
    }
    let generic_samples = samples.iter().filter(|s| s.status != SampleStatus::NonGeneric).count();
    let passed = generic_samples > 0 && samples.iter().all(|s| s.status != SampleStatus::Fail);
    Ok(EndToEndReport { p: cartan.p(), q: cartan.q(), case: case.number(), n, m, root, grade, product: spec.render(), samples, generic_samples, passed })
}

/// One `(p, q, case, n, m)` point of a verification grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Job {
    pub p: i64,
    pub q: i64,
    pub case: u8,
    pub n: usize,
    pub m: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum JobOutcome {
    Ran { job: Job, report: EndToEndReport },
    Skipped { job: Job, reason: String, detail: String },
}

impl JobOutcome {
    pub fn job(&self) -> Job {
        match self {
            JobOutcome::Ran { job, .. } | JobOutcome::Skipped { job, .. } => *job,
        }
    }

    pub fn failed(&self) -> bool {
        matches!(self, JobOutcome::Ran { report, .. } if !report.passed)
    }
}

/// Reason code for a job that cannot run.
pub fn skip_reason(e: &Error) -> &'static str {
    match e {
        Error::GradeCapExceeded { .. } => "grade_cap_exceeded",
        Error::NegativeFactorCount { .. } | Error::NegativeTrailing { .. } => "negative_factor_count",
        Error::TargetUnavailable { .. } => "target_unavailable",
        Error::NotOnOrbit(_) | Error::Overflow(_) => "root_out_of_range",
        _ => "error",
    }
}

/// Runs every job in parallel; the result is in job order. `L` is dropped
/// from the targets for Cartan data where it is unavailable.
pub fn run_jobs(jobs: &[Job], t_samples: &[Q], targets: &[Target], cap: u32) -> Vec<JobOutcome> {
    let mut caches: HashMap<(i64, i64), Arc<QuotientCache>> = HashMap::new();
    for j in jobs {
        if let Ok(c) = CartanData::new(j.p, j.q) {
            caches.entry((j.p, j.q)).or_insert_with(|| Arc::new(QuotientCache::new(c, cap)));
        }
    }
    jobs.par_iter()
        .map(|&job| {
            let run = || -> Result<EndToEndReport> {
                let cartan = CartanData::new(job.p, job.q)?;
                let case = OrbitCase::from_u8(job.case)?;
                let tg: Vec<Target> = targets.iter().copied().filter(|t| t.available(cartan).is_ok()).collect();
                end_to_end(case, job.n, job.m, cartan, t_samples, &tg, &caches[&(job.p, job.q)])
            };
            match run() {
                Ok(report) => JobOutcome::Ran { job, report },
                Err(e) => JobOutcome::Skipped { job, reason: skip_reason(&e).to_string(), detail: e.to_string() },
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free::DEFAULT_GRADE_CAP;
    use crate::pbw::HeisenbergElement;

    fn cd(p: i64, q: i64) -> CartanData {
        CartanData::new(p, q).unwrap()
    }

    #[test]
    fn case2_n1_single_factor() {
        let spec = build_product(OrbitCase::Two, 1, 1, cd(2, 2)).unwrap();
        let subs: Vec<&Affine> = spec.subscripts().collect();
        assert_eq!(subs, vec![&Affine::new(q(1), q(0), q(-1))]);
        assert_eq!(spec.trailing, (Generator::Two, 1));
        let spec3 = build_product(OrbitCase::Two, 1, 1, cd(2, 3)).unwrap();
        assert_eq!(spec3.trailing, (Generator::Two, 2));
    }

    #[test]
    fn degree_and_m_scaling() {
        for (p, qq) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
            for case in OrbitCase::ALL {
                for n in 1..=3 {
                    let s1 = build_product(case, n, 1, cd(p, qq)).unwrap();
                    let s2 = build_product(case, n, 2, cd(p, qq)).unwrap();
                    let r = s1.root;
                    assert_eq!(s1.degree(), (r.k1 as u32, r.k2 as u32));
                    assert_eq!(s2.factor_count(), 2 * s1.factor_count());
                    for (a, b) in s1.blocks.iter().zip(&s2.blocks) {
                        assert_eq!(b.subscripts.len(), 2 * a.subscripts.len());
                    }
                }
            }
        }
    }

    #[test]
    fn compare_examples() {
        let v = HeisenbergElement::quadratic(&q(3)).mul(&HeisenbergElement::f1());
        let r = compare_up_to_scalar(&v.scale(&q(2)), &v).unwrap();
        assert_eq!(r, Proportionality { proportional: true, ratio: Some(q(2)) });
        let w = v.add(&HeisenbergElement::h());
        assert!(!compare_up_to_scalar(&v, &w).unwrap().proportional);
        let z = HeisenbergElement::zero();
        assert_eq!(compare_up_to_scalar(&z, &z), Err(Error::BothZero));
    }

    #[test]
    fn end_to_end_examples() {
        let both = [Target::Heisenberg, Target::Sl2Like];
        let c = cd(2, 2);
        let cache = QuotientCache::new(c, DEFAULT_GRADE_CAP);
        for (case, m) in [(OrbitCase::Four, 1), (OrbitCase::One, 3)] {
            let r = end_to_end(case, 1, m, c, &default_t_samples(), &both, &cache).unwrap();
            assert!(r.passed, "{r:#?}");
        }
        let c = cd(2, 3);
        let cache = QuotientCache::new(c, DEFAULT_GRADE_CAP);
        let r = end_to_end(OrbitCase::Two, 1, 1, c, &default_t_samples(), &both, &cache).unwrap();
        assert!(r.passed, "{r:#?}");
    }

    #[test]
    fn negative_counts_rejected() {
        let err = build_product(OrbitCase::One, 2, 1, cd(1, 4)).unwrap_err();
        assert!(matches!(err, Error::NegativeFactorCount { .. } | Error::NegativeTrailing { .. }), "{err:?}");
    }
}
