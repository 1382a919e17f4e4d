use serde::Serialize;

use verma_core::cartan::{orbit as orbit_points, CartanData, Generator, OrbitCase, RootVector};
use verma_core::factors::{run_jobs, Job, JobOutcome, SampleStatus};
use verma_core::ffm::{change_of_variable, ffm_exponents, ffm_word};
use verma_core::free::QuotientCache;
use verma_core::gamma::{kac_kazhdan, GammaTable, WeightParam};
use verma_core::pbw::{identity_suite, IdentityCheck, IdentityReport};
use verma_core::rational::{fmt_q, Q};
use verma_core::verma::{singular_vectors, VermaContext};

use crate::config::{self, RunConfig, VerifyArgs};
use crate::output::{emit, Table};
use crate::{Common, OutputArgs};

type CmdResult = Result<bool, String>;

fn core_err(e: verma_core::Error) -> String {
    e.to_string()
}

#[derive(Serialize)]
struct OrbitRow {
    seed: u8,
    index: usize,
    case: u8,
    n: usize,
    root: RootVector,
    word: String,
    curve_value: i64,
}

pub fn orbit(common: &Common, depth: usize, seed: &str) -> CmdResult {
    let c = config::cartan(common)?;
    let seeds: Vec<u8> = match seed {
        "1" => vec![1],
        "2" => vec![2],
        "both" => vec![1, 2],
        other => return Err(format!("--seed must be 1, 2 or both (got {other:?})")),
    };
    let mut rows = Vec::new();
    for s in seeds {
        let start = if s == 1 { Generator::One } else { Generator::Two }.simple_root();
        for (index, pt) in orbit_points(start, depth, c).map_err(core_err)?.into_iter().enumerate() {
            rows.push(OrbitRow { seed: s, index, case: pt.case.number(), n: pt.n, root: pt.root, word: pt.word().to_string(), curve_value: c.curve_value(pt.root) });
        }
    }
    #[derive(Serialize)]
    struct Body<'a> {
        p: i64,
        q: i64,
        depth: usize,
        rows: &'a [OrbitRow],
    }
    let table = || Table {
        header: vec!["seed", "index", "case", "n", "k1", "k2", "word", "curve_value"],
        rows: rows
            .iter()
            .map(|r| vec![r.seed.to_string(), r.index.to_string(), r.case.to_string(), r.n.to_string(), r.root.k1.to_string(), r.root.k2.to_string(), r.word.clone(), r.curve_value.to_string()])
            .collect(),
    };
    emit("orbit", &Body { p: c.p(), q: c.q(), depth, rows: &rows }, table, common.out.format, common.out.output.as_deref())?;
    Ok(true)
}

pub fn gamma(common: &Common, kmax: usize) -> CmdResult {
    let c = config::cartan(common)?;
    let g = GammaTable::new(c, kmax);
    #[derive(Serialize)]
    struct Row {
        k: usize,
        gamma1: String,
        gamma2: String,
    }
    let rows: Vec<Row> = g.rows().map(|(k, a, b)| Row { k, gamma1: a.to_string(), gamma2: b.to_string() }).collect();
    #[derive(Serialize)]
    struct Body<'a> {
        p: i64,
        q: i64,
        rows: &'a [Row],
    }
    let table = || Table { header: vec!["k", "gamma1", "gamma2"], rows: rows.iter().map(|r| vec![r.k.to_string(), r.gamma1.clone(), r.gamma2.clone()]).collect() };
    emit("gamma", &Body { p: c.p(), q: c.q(), rows: &rows }, table, common.out.format, common.out.output.as_deref())?;
    Ok(true)
}

#[derive(Serialize)]
struct Factor {
    generator: String,
    exponent: String,
}

fn word_text(word: &[(Generator, Q)]) -> String {
    word.iter().map(|(g, e)| format!("f{g}^{{{}}}", fmt_q(e))).collect::<Vec<_>>().join(" ")
}

pub fn exponents(common: &Common, case: u8, n: usize, m: u32, t: &str) -> CmdResult {
    let c = config::cartan(common)?;
    let case = OrbitCase::from_u8(case).map_err(core_err)?;
    let t = config::rational(t)?;
    let inst = ffm_exponents(case, n, m, &t, c).map_err(core_err)?;
    let formula = ffm_word(case, n, c).map_err(core_err)?;
    let in_xi = change_of_variable(&formula.word).ok().map(|w| w.render());
    #[derive(Serialize)]
    struct Body {
        p: i64,
        q: i64,
        case: u8,
        n: usize,
        m: u32,
        t: String,
        root: RootVector,
        lambda_shifted: WeightParam,
        lambda_unshifted: WeightParam,
        word: Vec<Factor>,
        word_text: String,
        formula_in_t: String,
        formula_in_xi: Option<String>,
    }
    let body = Body {
        p: c.p(),
        q: c.q(),
        case: case.number(),
        n,
        m,
        t: fmt_q(&t),
        root: inst.root,
        lambda_shifted: inst.weight.clone(),
        lambda_unshifted: inst.weight.to_unshifted(),
        word: inst.word.iter().map(|(g, e)| Factor { generator: format!("f{g}"), exponent: fmt_q(e) }).collect(),
        word_text: word_text(&inst.word),
        formula_in_t: formula.word.render(),
        formula_in_xi: in_xi,
    };
    let table = || Table {
        header: vec!["position", "generator", "exponent"],
        rows: body.word.iter().enumerate().map(|(i, f)| vec![i.to_string(), f.generator.clone(), f.exponent.clone()]).collect(),
    };
    emit("exponents", &body, table, common.out.format, common.out.output.as_deref())?;
    Ok(true)
}

pub fn kk(common: &Common, root: &str, m: u32, x: &str, y: &str, unshifted: bool) -> CmdResult {
    let c = config::cartan(common)?;
    let (a, b) = config::pair(root)?;
    if m == 0 {
        return Err("m must be >= 1".into());
    }
    let (x, y) = (config::rational(x)?, config::rational(y)?);
    let w = if unshifted { WeightParam::unshifted(x, y) } else { WeightParam::shifted(x, y) };
    let root = RootVector::new(a, b);
    let holds = kac_kazhdan(&w, root, m, c);
    #[derive(Serialize)]
    struct Body {
        p: i64,
        q: i64,
        root: RootVector,
        m: u32,
        lambda_shifted: WeightParam,
        holds: bool,
    }
    let body = Body { p: c.p(), q: c.q(), root, m, lambda_shifted: w.to_shifted(), holds };
    let table = || Table {
        header: vec!["k1", "k2", "m", "x_shifted", "y_shifted", "holds"],
        rows: vec![vec![a.to_string(), b.to_string(), m.to_string(), fmt_q(&body.lambda_shifted.x), fmt_q(&body.lambda_shifted.y), holds.to_string()]],
    };
    emit("kk", &body, table, common.out.format, common.out.output.as_deref())?;
    Ok(true)
}

pub struct SingularArgs {
    pub grade: Option<String>,
    pub x: Option<String>,
    pub y: Option<String>,
    pub case: Option<u8>,
    pub n: usize,
    pub m: u32,
    pub t: Option<String>,
    pub grade_cap: Option<u32>,
}

fn weight_and_grade(c: CartanData, a: &SingularArgs) -> Result<(WeightParam, (u32, u32)), String> {
    let explicit = match &a.grade {
        Some(g) => {
            let (k1, k2) = config::pair(g)?;
            let k1 = u32::try_from(k1).map_err(|_| "grade must be non-negative".to_string())?;
            let k2 = u32::try_from(k2).map_err(|_| "grade must be non-negative".to_string())?;
            Some((k1, k2))
        }
        None => None,
    };
    match (a.case, &a.x, &a.y) {
        (Some(case), None, None) => {
            let case = OrbitCase::from_u8(case).map_err(core_err)?;
            let t = config::rational(a.t.as_deref().ok_or("--case needs --t")?)?;
            let inst = ffm_exponents(case, a.n, a.m, &t, c).map_err(core_err)?;
            let grade = (inst.root.k1 as u32 * a.m, inst.root.k2 as u32 * a.m);
            Ok((inst.weight.to_unshifted(), explicit.unwrap_or(grade)))
        }
        (None, Some(x), Some(y)) => {
            let grade = explicit.ok_or("--grade is required with --x/--y")?;
            Ok((WeightParam::unshifted(config::rational(x)?, config::rational(y)?), grade))
        }
        _ => Err("give either --case (with --t) or both --x and --y".into()),
    }
}

pub fn singular(common: &Common, a: SingularArgs) -> CmdResult {
    let c = config::cartan(common)?;
    let cap = config::grade_cap(a.grade_cap)?;
    let (lambda, grade) = weight_and_grade(c, &a)?;
    let cache = QuotientCache::new(c, cap);
    let ctx = VermaContext::new(c, &lambda);
    let r = singular_vectors(grade, &ctx, &cache).map_err(core_err)?;
    #[derive(Serialize)]
    struct Term {
        word: String,
        coef: String,
    }
    #[derive(Serialize)]
    struct Body {
        p: i64,
        q: i64,
        grade: (u32, u32),
        lambda_unshifted: WeightParam,
        quotient_dim: usize,
        kernel_dim: usize,
        vectors: Vec<Vec<Term>>,
    }
    let body = Body {
        p: c.p(),
        q: c.q(),
        grade,
        lambda_unshifted: lambda,
        quotient_dim: cache.get(grade).map_err(core_err)?.dim(),
        kernel_dim: r.kernel_dim,
        vectors: r.vectors.iter().map(|v| v.terms().iter().rev().map(|(w, c)| Term { word: w.to_string(), coef: fmt_q(c) }).collect()).collect(),
    };
    let table = || Table {
        header: vec!["vector", "word", "coef"],
        rows: body
            .vectors
            .iter()
            .enumerate()
            .flat_map(|(i, v)| v.iter().map(move |t| vec![i.to_string(), t.word.clone(), t.coef.clone()]))
            .collect(),
    };
    emit("singular", &body, table, common.out.format, common.out.output.as_deref())?;
    Ok(true)
}

#[derive(Serialize)]
struct IdentitySummary {
    instances: usize,
    skipped: usize,
    failures: Vec<IdentityCheck>,
}

impl From<&IdentityReport> for IdentitySummary {
    fn from(r: &IdentityReport) -> Self {
        IdentitySummary { instances: r.checks.len(), skipped: r.skipped, failures: r.failures().cloned().collect() }
    }
}

pub fn identities(out: &OutputArgs, max_exp: u32, max_n: u32, samples: usize, seed: u64) -> CmdResult {
    if samples < 2 {
        return Err("--samples must be at least 2".into());
    }
    let us = config::random_subscripts(seed, samples);
    let report = identity_suite(max_exp, max_n, &us);
    let passed = report.all_hold();
    #[derive(Serialize)]
    struct Body {
        max_exp: u32,
        max_n: u32,
        seed: u64,
        subscripts: Vec<String>,
        #[serde(flatten)]
        summary: IdentitySummary,
        passed: bool,
    }
    let body = Body { max_exp, max_n, seed, subscripts: us.iter().map(fmt_q).collect(), summary: (&report).into(), passed };
    let table = || Table {
        header: vec!["name", "params", "holds"],
        rows: report.checks.iter().map(|c| vec![c.name.clone(), c.params.clone(), c.holds.to_string()]).collect(),
    };
    emit("identities", &body, table, out.format, out.output.as_deref())?;
    if let Some(f) = report.failures().next() {
        eprintln!("identity failed: {} at {}", f.name, f.params);
    }
    Ok(passed)
}

#[derive(Serialize)]
struct Summary {
    jobs: usize,
    ran: usize,
    passed: usize,
    failed: usize,
    skipped: usize,
    non_generic_samples: usize,
}

pub fn verify(args: &VerifyArgs) -> CmdResult {
    let cfg = RunConfig::from_args(args)?;
    let mut jobs = Vec::new();
    for &case in &cfg.cases {
        for &n in &cfg.n {
            for &m in &cfg.m {
                jobs.push(Job { p: cfg.p, q: cfg.q, case, n, m });
            }
        }
    }
    jobs.sort();
    let identities = cfg.identities.then(|| identity_suite(6, 5, &config::random_subscripts(cfg.seed, 20)));
    let outcomes = run_jobs(&jobs, &cfg.t_values, &cfg.targets, cfg.grade_cap);
    let summary = Summary {
        jobs: outcomes.len(),
        ran: outcomes.iter().filter(|o| matches!(o, JobOutcome::Ran { .. })).count(),
        passed: outcomes.iter().filter(|o| matches!(o, JobOutcome::Ran { report, .. } if report.passed)).count(),
        failed: outcomes.iter().filter(|o| o.failed()).count(),
        skipped: outcomes.iter().filter(|o| matches!(o, JobOutcome::Skipped { .. })).count(),
        non_generic_samples: outcomes
            .iter()
            .map(|o| match o {
                JobOutcome::Ran { report, .. } => report.samples.iter().filter(|s| s.status == SampleStatus::NonGeneric).count(),
                JobOutcome::Skipped { .. } => 0,
            })
            .sum(),
    };
    let identities_ok = identities.as_ref().is_none_or(|r| r.all_hold());
    let passed = identities_ok && summary.failed == 0;
    #[derive(Serialize)]
    struct Body<'a> {
        config: &'a RunConfig,
        identities: Option<IdentitySummary>,
        summary: Summary,
        cases: &'a [JobOutcome],
        passed: bool,
    }
    let body = Body { config: &cfg, identities: identities.as_ref().map(Into::into), summary, cases: &outcomes, passed };
    let table = || verify_table(&outcomes);
    emit("verify", &body, table, args.common.out.format, args.common.out.output.as_deref())?;
    if let Some(r) = &identities {
        if let Some(f) = r.failures().next() {
            eprintln!("identity failed: {} at {}", f.name, f.params);
        }
    }
    if let Some(JobOutcome::Ran { job, report }) = outcomes.iter().find(|o| o.failed()) {
        let s = report.samples.iter().find(|s| s.status == SampleStatus::Fail);
        eprintln!(
            "end-to-end failed: p={} q={} case {} n={} m={}{}",
            job.p,
            job.q,
            job.case,
            job.n,
            job.m,
            s.map(|s| format!(" at t={}", fmt_q(&s.t))).unwrap_or_default()
        );
    }
    Ok(passed)
}

fn verify_table(outcomes: &[JobOutcome]) -> Table {
    let mut rows = Vec::new();
    for o in outcomes {
        let j = o.job();
        let head = vec![j.p.to_string(), j.q.to_string(), j.case.to_string(), j.n.to_string(), j.m.to_string()];
        match o {
            JobOutcome::Skipped { reason, .. } => {
                let mut r = head.clone();
                r.extend(["skipped".to_string(), reason.clone()]);
                r.resize(13, String::new());
                rows.push(r);
            }
            JobOutcome::Ran { report, .. } => {
                for s in &report.samples {
                    let ratio = |name: &str| {
                        s.comparisons.iter().find(|c| c.target.to_string() == name).and_then(|c| c.ratio.clone()).unwrap_or_default()
                    };
                    let status = match s.status {
                        SampleStatus::Pass => "pass",
                        SampleStatus::Fail => "fail",
                        SampleStatus::NonGeneric => "non_generic",
                    };
                    let mut r = head.clone();
                    r.extend([
                        "ran".into(),
                        String::new(),
                        fmt_q(&s.t),
                        s.xi.as_ref().map(fmt_q).unwrap_or_default(),
                        s.kernel_dim.to_string(),
                        status.into(),
                        ratio("H"),
                        ratio("L"),
                    ]);
                    rows.push(r);
                }
            }
        }
    }
    Table { header: vec!["p", "q", "case", "n", "m", "outcome", "reason", "t", "xi", "kernel_dim", "status", "ratio_H", "ratio_L"], rows }
}
