use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use verma_core::cartan::CartanData;
use verma_core::factors::{default_t_samples, Target};
use verma_core::free::DEFAULT_GRADE_CAP;
use verma_core::rational::{parse_q, Q};

use crate::Common;

pub const GRADE_CAP_ENV: &str = "VERMA_GRADE_CAP";

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// Comma-separated subset of 1,2,3,4.
    #[arg(long, default_value = "1,2,3,4")]
    pub cases: String,
    /// Indices n, e.g. `1,2` or `1-3`.
    #[arg(long, default_value = "1")]
    pub n: String,
    /// Multiplicities m, e.g. `1,2`.
    #[arg(long, default_value = "1")]
    pub m: String,
    /// Comma-separated t samples; defaults to the fixed generic set.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    /// H, L or H,L. Defaults to H plus L when p, q >= 2.
    #[arg(long)]
    pub targets: Option<String>,
    #[arg(long)]
    pub grade_cap: Option<u32>,
    /// Seed for the extra random t sample and the identity subscripts.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Do not add the seeded random t sample.
    #[arg(long)]
    pub no_random_t: bool,
    #[arg(long)]
    pub skip_identities: bool,
}

/// Validated `verify` configuration, echoed in the report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub p: i64,
    pub q: i64,
    pub cases: Vec<u8>,
    pub n: Vec<usize>,
    pub m: Vec<u32>,
    pub t_samples: Vec<String>,
    pub random_t: Option<String>,
    pub grade_cap: u32,
    pub targets: Vec<Target>,
    pub seed: u64,
    pub identities: bool,
    #[serde(skip)]
    pub t_values: Vec<Q>,
}

pub fn hard_cap() -> Result<u32, String> {
    match std::env::var(GRADE_CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{GRADE_CAP_ENV}={v:?} is not a non-negative integer")),
        Err(_) => Ok(DEFAULT_GRADE_CAP),
    }
}

pub fn grade_cap(requested: Option<u32>) -> Result<u32, String> {
    let hard = hard_cap()?;
    match requested {
        Some(c) if c > hard => Err(format!("grade cap {c} exceeds the hard limit {hard} (set {GRADE_CAP_ENV} to raise it)")),
        Some(c) => Ok(c),
        None => Ok(hard),
    }
}

pub fn cartan(common: &Common) -> Result<CartanData, String> {
    CartanData::new(common.p, common.q).map_err(|e| e.to_string())
}

pub fn rational(s: &str) -> Result<Q, String> {
    parse_q(s).map_err(|e| e.to_string())
}

pub fn pair(s: &str) -> Result<(i64, i64), String> {
    let bad = || format!("expected `a,b`, got {s:?}");
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

/// `1,3,5` or `1-4` (or a mix).
pub fn int_list<T: TryFrom<u64>>(s: &str, what: &str) -> Result<Vec<T>, String> {
    let bad = || format!("bad {what} list {s:?}");
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (lo, hi) = match part.split_once('-') {
            Some((a, b)) => (a.trim().parse::<u64>().map_err(|_| bad())?, b.trim().parse::<u64>().map_err(|_| bad())?),
            None => {
                let v = part.parse::<u64>().map_err(|_| bad())?;
                (v, v)
            }
        };
        for v in lo..=hi {
            out.push(T::try_from(v).map_err(|_| bad())?);
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

/// A large rational drawn from `seed`.
pub fn random_t(seed: u64) -> Q {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let num: i64 = rng.gen_range(1_000_000..1_000_000_000) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let den: i64 = rng.gen_range(1_000_000..1_000_000_000);
    Q::new(num.into(), den.into())
}

pub fn random_subscripts(seed: u64, count: usize) -> Vec<Q> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    (0..count).map(|_| Q::new(rng.gen_range(-60i64..=60).into(), rng.gen_range(1i64..=15).into())).collect()
}

impl RunConfig {
    pub fn from_args(a: &VerifyArgs) -> Result<Self, String> {
        let c = cartan(&a.common)?;
        let cases: Vec<u8> = int_list(&a.cases, "case")?;
        if let Some(bad) = cases.iter().find(|c| !(1..=4).contains(*c)) {
            return Err(format!("unknown case {bad} (expected 1..=4)"));
        }
        let n: Vec<usize> = int_list(&a.n, "n")?;
        if n.contains(&0) {
            return Err("n must be >= 1".into());
        }
        let m: Vec<u32> = int_list(&a.m, "m")?;
        if m.contains(&0) {
            return Err("m must be >= 1".into());
        }
        let mut t_values = match &a.t {
            Some(s) => s.split(',').map(rational).collect::<Result<Vec<_>, _>>()?,
            None => default_t_samples(),
        };
        let t_samples = t_values.iter().map(verma_core::rational::fmt_q).collect();
        let random_t = (!a.no_random_t).then(|| random_t(a.seed));
        if let Some(r) = &random_t {
            t_values.push(r.clone());
        }
        let targets = match &a.targets {
            Some(s) => {
                let ts = s.split(',').map(|t| Target::parse(t).map_err(|e| e.to_string())).collect::<Result<Vec<_>, _>>()?;
                for t in &ts {
                    t.available(c).map_err(|e| e.to_string())?;
                }
                ts
            }
            None => [Target::Heisenberg, Target::Sl2Like].into_iter().filter(|t| t.available(c).is_ok()).collect(),
        };
        Ok(RunConfig {
            p: a.common.p,
            q: a.common.q,
            cases,
            n,
            m,
            t_samples,
            random_t: random_t.as_ref().map(verma_core::rational::fmt_q),
            grade_cap: grade_cap(a.grade_cap)?,
            targets,
            seed: a.seed,
            identities: !a.skip_identities,
            t_values,
        })
    }
}
