//! The Heisenberg and sl2-like target algebras in the PBW basis
//! `f2^a f1^b h^c`, the projections from words, and the quadratic factors.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::cartan::{CartanData, Generator};
use crate::error::{Error, Result};
use crate::free::FreeElement;
use crate::rational::{binomial, factorial, fmt_q, q, qf, qi, Q};

/// Exponents `(a, b, c)` of `f2^a f1^b h^c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Monomial {
    pub f2: u32,
    pub f1: u32,
    pub h: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { f2: 0, f1: 0, h: 0 };

    pub const fn new(f2: u32, f1: u32, h: u32) -> Self {
        Monomial { f2, f1, h }
    }
}

/// Generators of the targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    F2,
    F1,
    H,
}

/// Defining relations of a target, as rewriting rules on the order `f2 < f1 < h`.
pub trait TargetAlgebra: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    const NAME: &'static str;

    /// Rejects Cartan data for which words do not descend to the target.
    fn available(cartan: CartanData) -> Result<()>;

    /// `g · f2^a f1^b h^c` in normal form.
    fn left_generator(g: Letter, m: Monomial) -> Vec<(Monomial, Q)>;

    /// Replacement for an out-of-order adjacent pair `(left, right)`.
    fn swap(left: Letter, right: Letter) -> Vec<(Vec<Letter>, Q)>;

    /// `x · y` for monomials.
    fn multiply_monomials(x: Monomial, y: Monomial) -> Vec<(Monomial, Q)> {
        let mut acc: BTreeMap<Monomial, Q> = BTreeMap::from([(y, Q::one())]);
        let letters = std::iter::repeat_n(Letter::F2, x.f2 as usize)
            .chain(std::iter::repeat_n(Letter::F1, x.f1 as usize))
            .chain(std::iter::repeat_n(Letter::H, x.h as usize));
        for g in letters.collect::<Vec<_>>().into_iter().rev() {
            let mut next = BTreeMap::new();
            for (m, c) in acc {
                for (m2, c2) in Self::left_generator(g, m) {
                    accumulate(&mut next, m2, c2 * &c);
                }
            }
            acc = next;
        }
        acc.into_iter().collect()
    }

    /// The quadratic factor with subscript `u`.
    fn quadratic(u: &Q) -> PbwElement<Self>;
}

fn accumulate(map: &mut BTreeMap<Monomial, Q>, m: Monomial, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = map.entry(m).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        map.remove(&m);
    }
}

/// `U(𝓗)` with `[f1, f2] = h` central.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Heisenberg;

/// `U(sl2)` presented by `[f1, f2] = h`, `[h, f1] = f1`, `[h, f2] = −f2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Sl2Like;

impl TargetAlgebra for Heisenberg {
    const NAME: &'static str = "H";

    fn available(_: CartanData) -> Result<()> {
        Ok(())
    }

    fn left_generator(g: Letter, m: Monomial) -> Vec<(Monomial, Q)> {
        let Monomial { f2: a, f1: b, h: c } = m;
        match g {
            Letter::F2 => vec![(Monomial::new(a + 1, b, c), Q::one())],
            Letter::H => vec![(Monomial::new(a, b, c + 1), Q::one())],
            Letter::F1 if a == 0 => vec![(Monomial::new(a, b + 1, c), Q::one())],
            Letter::F1 => vec![(Monomial::new(a, b + 1, c), Q::one()), (Monomial::new(a - 1, b, c + 1), q(a as i64))],
        }
    }

    fn swap(left: Letter, right: Letter) -> Vec<(Vec<Letter>, Q)> {
        match (left, right) {
            (Letter::F1, Letter::F2) => vec![(vec![Letter::F2, Letter::F1], Q::one()), (vec![Letter::H], Q::one())],
            (l, r) => vec![(vec![r, l], Q::one())],
        }
    }

    /// `f1^m f2^n = Σ_k k!·C(m,k)·C(n,k) f2^{n−k} f1^{m−k} h^k`.
    fn multiply_monomials(x: Monomial, y: Monomial) -> Vec<(Monomial, Q)> {
        let (m, n) = (x.f1 as u64, y.f2 as u64);
        (0..=m.min(n))
            .map(|k| {
                let coef = factorial(k) * binomial(m, k) * binomial(n, k);
                let k32 = k as u32;
                (Monomial::new(x.f2 + y.f2 - k32, x.f1 + y.f1 - k32, x.h + y.h + k32), qi(&coef))
            })
            .collect()
    }

    fn quadratic(u: &Q) -> PbwElement<Self> {
        PbwElement::monomial(Monomial::new(1, 1, 0), Q::one()).add(&PbwElement::monomial(Monomial::new(0, 0, 1), u.clone()))
    }
}

impl TargetAlgebra for Sl2Like {
    const NAME: &'static str = "L";

    fn available(cartan: CartanData) -> Result<()> {
        if cartan.p() < 2 || cartan.q() < 2 {
            return Err(Error::TargetUnavailable { p: cartan.p(), q: cartan.q() });
        }
        Ok(())
    }

    fn left_generator(g: Letter, m: Monomial) -> Vec<(Monomial, Q)> {
        let Monomial { f2: a, f1: b, h: c } = m;
        let (aq, bq) = (q(a as i64), q(b as i64));
        match g {
            Letter::F2 => vec![(Monomial::new(a + 1, b, c), Q::one())],
            // h f2^a f1^b = f2^a f1^b (h − a + b)
            Letter::H => vec![(Monomial::new(a, b, c + 1), Q::one()), (m, &bq - &aq)],
            Letter::F1 if a == 0 => vec![(Monomial::new(a, b + 1, c), Q::one())],
            // f1 f2^a = f2^a f1 + a·f2^{a−1}(h − (a−1)/2)
            Letter::F1 => vec![
                (Monomial::new(a, b + 1, c), Q::one()),
                (Monomial::new(a - 1, b, c + 1), aq.clone()),
                (Monomial::new(a - 1, b, c), &aq * (&bq - qf(a as i64 - 1, 2))),
            ],
        }
    }

    fn swap(left: Letter, right: Letter) -> Vec<(Vec<Letter>, Q)> {
        match (left, right) {
            (Letter::F1, Letter::F2) => vec![(vec![Letter::F2, Letter::F1], Q::one()), (vec![Letter::H], Q::one())],
            (Letter::H, Letter::F2) => vec![(vec![Letter::F2, Letter::H], Q::one()), (vec![Letter::F2], -Q::one())],
            (Letter::H, Letter::F1) => vec![(vec![Letter::F1, Letter::H], Q::one()), (vec![Letter::F1], Q::one())],
            (l, r) => vec![(vec![r, l], Q::one())],
        }
    }

    fn quadratic(u: &Q) -> PbwElement<Self> {
        let shift = u * (u - Q::one()) / q(2);
        PbwElement::monomial(Monomial::new(1, 1, 0), Q::one())
            .add(&PbwElement::monomial(Monomial::new(0, 0, 1), u.clone()))
            .add(&PbwElement::scalar(-shift))
    }
}

/// Element of a target algebra in PBW normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct PbwElement<A: TargetAlgebra> {
    terms: BTreeMap<Monomial, Q>,
    _algebra: PhantomData<A>,
}

pub type HeisenbergElement = PbwElement<Heisenberg>;
pub type Sl2LikeElement = PbwElement<Sl2Like>;

impl<A: TargetAlgebra> fmt::Debug for PbwElement<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", A::NAME, self)
    }
}

impl<A: TargetAlgebra> fmt::Display for PbwElement<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mut s = format!("({})", fmt_q(c));
                for (name, e) in [("f2", m.f2), ("f1", m.f1), ("h", m.h)] {
                    match e {
                        0 => {}
                        1 => s.push_str(&format!("·{name}")),
                        _ => s.push_str(&format!("·{name}^{e}")),
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<A: TargetAlgebra> Default for PbwElement<A> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<A: TargetAlgebra> PbwElement<A> {
    pub fn zero() -> Self {
        PbwElement { terms: BTreeMap::new(), _algebra: PhantomData }
    }

    pub fn one() -> Self {
        Self::scalar(Q::one())
    }

    pub fn scalar(c: Q) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        let mut e = Self::zero();
        accumulate(&mut e.terms, m, c);
        e
    }

    pub fn letter(l: Letter) -> Self {
        let m = match l {
            Letter::F2 => Monomial::new(1, 0, 0),
            Letter::F1 => Monomial::new(0, 1, 0),
            Letter::H => Monomial::new(0, 0, 1),
        };
        Self::monomial(m, Q::one())
    }

    pub fn f1() -> Self {
        Self::letter(Letter::F1)
    }

    pub fn f2() -> Self {
        Self::letter(Letter::F2)
    }

    pub fn h() -> Self {
        Self::letter(Letter::H)
    }

    pub fn generator(g: Generator) -> Self {
        match g {
            Generator::One => Self::f1(),
            Generator::Two => Self::f2(),
        }
    }

    /// `f1^e` or `f2^e` (already normal).
    pub fn generator_power(g: Generator, e: u32) -> Self {
        match g {
            Generator::One => Self::monomial(Monomial::new(0, e, 0), Q::one()),
            Generator::Two => Self::monomial(Monomial::new(e, 0, 0), Q::one()),
        }
    }

    pub fn quadratic(u: &Q) -> Self {
        A::quadratic(u)
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            accumulate(&mut out.terms, *m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, k: &Q) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        PbwElement { terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(), _algebra: PhantomData }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                let ab = a * b;
                for (m, c) in A::multiply_monomials(*x, *y) {
                    accumulate(&mut out.terms, m, c * &ab);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Product computed by left-multiplying one generator at a time, a
    /// second path to [`PbwElement::mul`].
    pub fn mul_by_letters(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (x, a) in &self.terms {
            let letters: Vec<Letter> = std::iter::repeat_n(Letter::F2, x.f2 as usize)
                .chain(std::iter::repeat_n(Letter::F1, x.f1 as usize))
                .chain(std::iter::repeat_n(Letter::H, x.h as usize))
                .collect();
            let mut acc = other.scale(a);
            for &g in letters.iter().rev() {
                let mut next = Self::zero();
                for (m, c) in &acc.terms {
                    for (m2, c2) in A::left_generator(g, *m) {
                        accumulate(&mut next.terms, m2, c2 * c);
                    }
                }
                acc = next;
            }
            out = out.add(&acc);
        }
        out
    }

    /// `(f1-degree, f2-degree)` of every term, if homogeneous in those.
    pub fn f_degree(&self) -> Option<(u32, u32)> {
        let mut degs = self.terms.keys().map(|m| (m.f1 + m.h, m.f2 + m.h));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Terms as `(f2, f1, h, coefficient)` records for reports.
    pub fn records(&self) -> Vec<TermRecord> {
        self.terms.iter().map(|(m, c)| TermRecord { f2: m.f2, f1: m.f1, h: m.h, coef: fmt_q(c) }).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermRecord {
    pub f2: u32,
    pub f1: u32,
    pub h: u32,
    pub coef: String,
}

/// Rewriting order for [`rewrite_word`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Normal form of a word in the target generators by naive rewriting of
/// out-of-order adjacent pairs.
pub fn rewrite_word<A: TargetAlgebra>(word: &[Letter], strategy: Strategy) -> PbwElement<A> {
    let mut pending: BTreeMap<Vec<Letter>, Q> = BTreeMap::from([(word.to_vec(), Q::one())]);
    let mut out = PbwElement::<A>::zero();
    while let Some((w, c)) = pending.pop_first() {
        let mut bad = (0..w.len().saturating_sub(1)).filter(|&i| w[i] > w[i + 1]);
        let pos = match strategy {
            Strategy::Leftmost => bad.next(),
            Strategy::Rightmost => bad.next_back(),
        };
        match pos {
            None => {
                let count = |l| w.iter().filter(|&&x| x == l).count() as u32;
                accumulate(&mut out.terms, Monomial::new(count(Letter::F2), count(Letter::F1), count(Letter::H)), c);
            }
            Some(i) => {
                for (mid, k) in A::swap(w[i], w[i + 1]) {
                    let mut nw = w[..i].to_vec();
                    nw.extend(mid);
                    nw.extend_from_slice(&w[i + 2..]);
                    let e = pending.entry(nw.clone()).or_insert_with(Q::zero);
                    *e += &c * k;
                    if e.is_zero() {
                        pending.remove(&nw);
                    }
                }
            }
        }
    }
    out
}

/// Image of a word element under `f_i ↦ f_i`.
pub fn project<A: TargetAlgebra>(v: &FreeElement, cartan: CartanData) -> Result<PbwElement<A>> {
    A::available(cartan)?;
    let mut out = PbwElement::<A>::zero();
    let mut memo: BTreeMap<Vec<Generator>, PbwElement<A>> = BTreeMap::new();
    for (w, c) in v.terms() {
        let img = project_word::<A>(&w.0, &mut memo);
        out = out.add(&img.scale(c));
    }
    Ok(out)
}

fn project_word<A: TargetAlgebra>(w: &[Generator], memo: &mut BTreeMap<Vec<Generator>, PbwElement<A>>) -> PbwElement<A> {
    if w.is_empty() {
        return PbwElement::one();
    }
    if let Some(e) = memo.get(w) {
        return e.clone();
    }
    let tail = project_word::<A>(&w[1..], memo);
    let letter = match w[0] {
        Generator::One => Letter::F1,
        Generator::Two => Letter::F2,
    };
    let mut out = PbwElement::<A>::zero();
    for (m, c) in &tail.terms {
        for (m2, c2) in A::left_generator(letter, *m) {
            accumulate(&mut out.terms, m2, c2 * c);
        }
    }
    memo.insert(w.to_vec(), out.clone());
    out
}

/// One checked instance of a factor identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub params: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
    /// Instances outside the integer shadow (`α > n` or `β > n`).
    pub skipped: usize,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn extend(&mut self, other: IdentityReport) {
        self.checks.extend(other.checks);
        self.skipped += other.skipped;
    }

    fn push(&mut self, name: &str, params: String, holds: bool) {
        self.checks.push(IdentityCheck { name: name.to_string(), params, holds });
    }
}

fn product_of<A: TargetAlgebra>(subscripts: impl IntoIterator<Item = Q>) -> PbwElement<A> {
    subscripts.into_iter().fold(PbwElement::one(), |acc, u| acc.mul(&A::quadratic(&u)))
}

/// Shift and product identities for `H_u` (items 1–4) and `J_u`, checked at
/// integer exponents.
pub fn factor_shift_identities(alpha: u32, beta: u32, u: &Q, n: u32) -> IdentityReport {
    type H = HeisenbergElement;
    type L = Sl2LikeElement;
    let mut r = IdentityReport::default();
    let params = format!("alpha={alpha},beta={beta},u={},n={n}", fmt_q(u));
    let (a, b) = (q(alpha as i64), q(beta as i64));

    let f2a = H::generator_power(Generator::Two, alpha);
    let f1b = H::generator_power(Generator::One, beta);
    r.push("H1: f2^a H_u = H_{u-a} f2^a", params.clone(), f2a.mul(&H::quadratic(u)) == H::quadratic(&(u - &a)).mul(&f2a));
    r.push("H2: f1^b H_u = H_{u+b} f1^b", params.clone(), f1b.mul(&H::quadratic(u)) == H::quadratic(&(u + &b)).mul(&f1b));

    let l2b = L::generator_power(Generator::Two, beta);
    let l1b = L::generator_power(Generator::One, beta);
    r.push("J1: f1^b J_u = J_{u+b} f1^b", params.clone(), l1b.mul(&L::quadratic(u)) == L::quadratic(&(u + &b)).mul(&l1b));
    r.push("J2: f2^b J_u = J_{u-b} f2^b", params.clone(), l2b.mul(&L::quadratic(u)) == L::quadratic(&(u - &b)).mul(&l2b));

    let nn = n as i64;
    if alpha <= n {
        let lhs = H::generator_power(Generator::One, alpha).mul(&H::generator_power(Generator::Two, n)).mul(&H::generator_power(Generator::One, n - alpha));
        r.push("H3: f1^a f2^n f1^{n-a} = H_a H_{a-1} ... H_{a-n+1}", params.clone(), lhs == product_of::<Heisenberg>((0..nn).map(|k| &a - q(k))));
        let lhs = H::generator_power(Generator::Two, alpha).mul(&H::generator_power(Generator::One, n)).mul(&H::generator_power(Generator::Two, n - alpha));
        r.push("H4: f2^a f1^n f2^{n-a} = H_{1-a} H_{2-a} ... H_{n-a}", params.clone(), lhs == product_of::<Heisenberg>((1..=nn).map(|k| q(k) - &a)));
    } else {
        r.skipped += 2;
    }
    if beta <= n {
        let lhs = L::generator_power(Generator::One, beta).mul(&L::generator_power(Generator::Two, n)).mul(&L::generator_power(Generator::One, n - beta));
        r.push("J3: f1^b f2^n f1^{n-b} = J_b J_{b-1} ... J_{b-n+1}", params.clone(), lhs == product_of::<Sl2Like>((0..nn).map(|k| &b - q(k))));
        let lhs = L::generator_power(Generator::Two, beta).mul(&L::generator_power(Generator::One, n)).mul(&L::generator_power(Generator::Two, n - beta));
        r.push("J4: f2^b f1^n f2^{n-b} = J_{1-b} J_{2-b} ... J_{n-b}", params.clone(), lhs == product_of::<Sl2Like>((1..=nn).map(|k| q(k) - &b)));
    } else {
        r.skipped += 2;
    }
    let lhs = L::generator_power(Generator::One, n).mul(&L::generator_power(Generator::Two, n));
    r.push("J5: f1^n f2^n = J_1 ... J_n", params, lhs == product_of::<Sl2Like>((1..=nn).map(q)));
    r
}

/// `X_u X_v = X_v X_u` in both targets.
pub fn factors_commute(u: &Q, v: &Q) -> IdentityReport {
    let mut r = IdentityReport::default();
    let params = format!("u={},v={}", fmt_q(u), fmt_q(v));
    let (hu, hv) = (HeisenbergElement::quadratic(u), HeisenbergElement::quadratic(v));
    r.push("H_u H_v = H_v H_u", params.clone(), hu.mul(&hv) == hv.mul(&hu));
    let (ju, jv) = (Sl2LikeElement::quadratic(u), Sl2LikeElement::quadratic(v));
    r.push("J_u J_v = J_v J_u", params, ju.mul(&jv) == jv.mul(&ju));
    r
}

/// Full suite over `0 ≤ α, β ≤ max_exp`, `1 ≤ n ≤ max_n` and the given
/// subscripts, plus commutativity over consecutive pairs of `us`.
pub fn identity_suite(max_exp: u32, max_n: u32, us: &[Q]) -> IdentityReport {
    use rayon::prelude::*;
    let mut jobs = Vec::new();
    for (i, u) in us.iter().enumerate() {
        for n in 1..=max_n {
            for e in 0..=max_exp {
                jobs.push((i, u.clone(), n, e));
            }
        }
    }
    let parts: Vec<IdentityReport> = jobs.par_iter().map(|(_, u, n, e)| factor_shift_identities(*e, *e, u, *n)).collect();
    let mut report = IdentityReport::default();
    for p in parts {
        report.extend(p);
    }
    for pair in us.windows(2) {
        report.extend(factors_commute(&pair[0], &pair[1]));
    }
    report
}
