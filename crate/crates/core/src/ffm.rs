//! Singular-vector words: the shifted-reflection trajectory of a weight, the
//! closed-form exponent words for the four root families, and the change of
//! variable that puts the exponent left of the centre letter in place of `t`.
//!
//! Exponent words are stored left to right. The trajectory produces the
//! exponents right to left: its first step is the rightmost letter.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::affine::{Affine, Param};
use crate::cartan::{CartanData, Generator, OrbitCase, ReflectionWord, RootVector, SequenceTable};
use crate::error::{Error, Result};
use crate::gamma::{GammaTable, WeightParam};
use crate::rational::{q, qi, serde_q, Q};

/// One application of `s_i^ρ(λ) = s_i(λ + ρ) − ρ`.
#[derive(Clone, Debug, Serialize)]
pub struct TrajectoryStep {
    pub generator: Generator,
    /// `λ^j` in unshifted coordinates.
    pub weight: WeightParam,
    /// `λ^j − λ^{j−1} = gamma·α_i`.
    #[serde(with = "serde_q")]
    pub gamma: Q,
}

impl TrajectoryStep {
    /// FFM exponent of this step: `θ_j = −γ_j`.
    pub fn exponent(&self) -> Q {
        -&self.gamma
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LambdaTrajectory {
    pub start: WeightParam,
    pub steps: Vec<TrajectoryStep>,
}

impl LambdaTrajectory {
    /// `(generator, θ)` left to right, i.e. the word `f_{i_N}^{θ_N} ⋯ f_{i_1}^{θ_1}`.
    pub fn word(&self) -> Vec<(Generator, Q)> {
        self.steps.iter().rev().map(|s| (s.generator, s.exponent())).collect()
    }
}

pub fn lambda_trajectory(lambda: &WeightParam, word: &ReflectionWord, cartan: CartanData) -> LambdaTrajectory {
    let start = lambda.to_unshifted();
    let mut cur = start.clone();
    let mut steps = Vec::with_capacity(word.len());
    for g in word.letters().into_iter().rev() {
        let coord = match g {
            Generator::One => &cur.x,
            Generator::Two => &cur.y,
        };
        let theta = coord + q(1);
        let (a1, a2) = cartan.simple_root_weight(g);
        let next = WeightParam::unshifted(&cur.x - &theta * q(a1), &cur.y - &theta * q(a2));
        steps.push(TrajectoryStep { generator: g, weight: next.clone(), gamma: -theta });
        cur = next;
    }
    LambdaTrajectory { start, steps }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    pub generator: Generator,
    pub exponent: Affine,
}

/// A word `f_{i_N}^{e_N} ⋯ f_{i_1}^{e_1}` with exponents affine in `(m, t)` or `(m, ξ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentWord {
    pub case: OrbitCase,
    pub n: usize,
    pub root: RootVector,
    /// Left to right.
    pub letters: Vec<Letter>,
    /// Index of the centre letter in `letters`.
    pub center: usize,
    pub param: Param,
}

impl ExponentWord {
    pub fn evaluate(&self, m: &Q, v: &Q) -> Vec<(Generator, Q)> {
        self.letters.iter().map(|l| (l.generator, l.exponent.eval(m, v))).collect()
    }

    /// Total exponent of `f1` and of `f2`.
    pub fn column_sums(&self) -> (Affine, Affine) {
        let mut sums = (Affine::zero(), Affine::zero());
        for l in &self.letters {
            let slot = match l.generator {
                Generator::One => &mut sums.0,
                Generator::Two => &mut sums.1,
            };
            *slot = &*slot + &l.exponent;
        }
        sums
    }

    pub fn left_of_center(&self) -> Option<&Letter> {
        self.center.checked_sub(1).map(|i| &self.letters[i])
    }

    pub fn render(&self) -> String {
        self.letters
            .iter()
            .map(|l| format!("f{}^{{{}}}", l.generator, l.exponent.render(self.param)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Shifted weight `(x, y)` as affine forms in `(m, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicWeight {
    pub x: Affine,
    pub y: Affine,
}

impl SymbolicWeight {
    pub fn eval(&self, m: &Q, t: &Q) -> WeightParam {
        WeightParam::shifted(self.x.eval(m, t), self.y.eval(m, t))
    }
}

/// Exponent word in `(m, t)` together with the Verma weight it is singular in.
#[derive(Clone, Debug)]
pub struct FfmFormula {
    pub word: ExponentWord,
    pub weight: SymbolicWeight,
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidIndex(n))
    } else {
        Ok(())
    }
}

fn sign(j: usize, c: usize) -> Q {
    use std::cmp::Ordering::*;
    match j.cmp(&c) {
        Greater => q(1),
        Less => q(-1),
        Equal => q(0),
    }
}

/// The singular-vector word of family `case`, index `n`, in `(m, t)`.
///
/// Letter `j` (counted from the right, centre `c`) carries
/// `κ_j·m/δ + sgn(j−c)·τ_{|j−c|}·t`:
///
/// | case | first letter | κ_j          | δ            | τ_d          |
/// |------|--------------|--------------|--------------|--------------|
/// | 1    | f1           | `Γ_1^j`      | `a_{2n-1}`   | `Γ_2^{d+1}`  |
/// | 2    | f2           | `Γ_2^{j+1}`  | `σ⁻¹a_{2n}`  | `Γ_2^{d+1}`  |
/// | 3    | f2           | `Γ_2^{j+1}`  | `a_{2n-1}`   | `Γ_1^d`      |
/// | 4    | f1           | `Γ_1^j`      | `σa_{2n}`    | `Γ_1^d`      |
pub fn ffm_word(case: OrbitCase, n: usize, cartan: CartanData) -> Result<FfmFormula> {
    check_n(n)?;
    let gt = GammaTable::new(cartan, 4 * n + 2);
    let seq = SequenceTable::new(cartan, n + 1);
    let root = case.root(n, cartan)?;
    let word = case.word(n);
    let len = word.len();
    let c = len.div_ceil(2);
    let (denominator, first) = match case {
        OrbitCase::One => (qi(seq.c(n - 1)), Generator::One),
        OrbitCase::Two => (qi(seq.e(n)), Generator::Two),
        OrbitCase::Three => (qi(seq.c(n - 1)), Generator::Two),
        OrbitCase::Four => (qi(seq.d(n)), Generator::One),
    };
    let mut letters = Vec::with_capacity(len);
    for pos in 0..len {
        let j = len - pos;
        let generator = if j % 2 == 1 { first } else { first.other() };
        let d = j.abs_diff(c);
        let (kappa, tau) = match case {
            OrbitCase::One => (gt.g1q(j), gt.g2q(d + 1)),
            OrbitCase::Two => (gt.g2q(j + 1), gt.g2q(d + 1)),
            OrbitCase::Three => (gt.g2q(j + 1), gt.g1q(d)),
            OrbitCase::Four => (gt.g1q(j), gt.g1q(d)),
        };
        let exponent = if j == c {
            Affine::m()
        } else {
            Affine::new(Q::zero(), kappa / &denominator, sign(j, c) * tau)
        };
        letters.push(Letter { generator, exponent });
    }
    let k = |g: &Q| Affine::new(Q::zero(), Q::zero(), g.clone());
    let over = |g: &Q| Affine::new(Q::zero(), Q::one() / g, Q::zero());
    let weight = match case {
        OrbitCase::One => {
            let (g1, g2) = (gt.g1q(2 * n - 1), gt.g2q(2 * n - 1));
            SymbolicWeight { x: &over(&g1) - &k(&g2), y: k(&g1) }
        }
        OrbitCase::Two => {
            let (g2, g1) = (gt.g2q(2 * n + 1), gt.g1q(2 * n - 1));
            SymbolicWeight { x: k(&g2), y: &over(&g2) - &k(&g1) }
        }
        OrbitCase::Three => {
            let (g2, g1) = (gt.g2q(2 * n), gt.g1q(2 * n - 2));
            SymbolicWeight { x: k(&g2), y: &over(&g2) - &k(&g1) }
        }
        OrbitCase::Four => {
            let (g1, g2) = (gt.g1q(2 * n), gt.g2q(2 * n));
            SymbolicWeight { x: &over(&g1) - &k(&g2), y: k(&g1) }
        }
    };
    Ok(FfmFormula {
        word: ExponentWord { case, n, root, letters, center: len - c, param: Param::T },
        weight,
    })
}

/// Concrete singular-vector data at integer `m` and rational `t`.
#[derive(Clone, Debug)]
pub struct FfmInstance {
    pub root: RootVector,
    /// `(generator, exponent)` left to right.
    pub word: Vec<(Generator, Q)>,
    /// Shifted weight `λ(m,t) + ρ`.
    pub weight: WeightParam,
}

pub fn ffm_exponents(case: OrbitCase, n: usize, m: u32, t: &Q, cartan: CartanData) -> Result<FfmInstance> {
    if m == 0 {
        return Err(Error::InvalidMultiplicity(m));
    }
    let f = ffm_word(case, n, cartan)?;
    let mq = q(m as i64);
    Ok(FfmInstance { root: f.word.root, word: f.word.evaluate(&mq, t), weight: f.weight.eval(&mq, t) })
}

/// `ξ` as an affine form in `(m, t)`: the exponent just left of the centre.
pub fn xi_in_t(word: &ExponentWord) -> Result<Affine> {
    debug_assert_eq!(word.param, Param::T);
    word.left_of_center()
        .map(|l| l.exponent.clone())
        .ok_or(Error::NoLeftOfCenter { case: word.case.number(), n: word.n })
}

/// Rewrites a `(m, t)` word in `(m, ξ)`, where `ξ` is the exponent of the
/// letter immediately left of the centre.
pub fn change_of_variable(word: &ExponentWord) -> Result<ExponentWord> {
    let xi = xi_in_t(word)?;
    // xi = c + a·m + b·t  =>  t = (ξ − c − a·m)/b
    let b = xi.var.clone();
    assert!(!b.is_zero(), "left-of-centre exponent does not depend on t");
    let inv = Q::one() / &b;
    let t_in_xi = Affine::new(-&xi.constant * &inv, -&xi.m * &inv, inv);
    let letters = word
        .letters
        .iter()
        .map(|l| Letter { generator: l.generator, exponent: l.exponent.substitute(&t_in_xi) })
        .collect();
    Ok(ExponentWord { letters, param: Param::Xi, ..word.clone() })
}

/// The `(m, ξ)` words written directly in terms of `Γ`: families 1 and 3 as
/// flat products, families 2 and 4 as flanks around the family 1 resp. 3
/// word of the same index.
pub fn prop3_word(case: OrbitCase, n: usize, cartan: CartanData) -> Result<ExponentWord> {
    check_n(n)?;
    let gt = GammaTable::new(cartan, 2 * n + 2);
    let root = case.root(n, cartan)?;
    let aff = |xi: Q, m: Q| Affine::new(Q::zero(), m, xi);
    match case {
        OrbitCase::One | OrbitCase::Three => {
            let center_gen = if case == OrbitCase::One { Generator::One } else { Generator::Two };
            let half = 2 * n - 2;
            let mut letters = Vec::with_capacity(2 * half + 1);
            let rule = |g: Generator, d: usize, left: bool| match (g, left) {
                (Generator::Two, true) => aff(gt.g1q(d), -gt.g1q(d - 1)),
                (Generator::Two, false) => aff(-gt.g1q(d), gt.g1q(d + 1)),
                (Generator::One, true) => aff(gt.g2q(d + 1), -gt.g2q(d)),
                (Generator::One, false) => aff(-gt.g2q(d + 1), gt.g2q(d + 2)),
            };
            let at = |d: usize| if d.is_multiple_of(2) { center_gen } else { center_gen.other() };
            for d in (1..=half).rev() {
                letters.push(Letter { generator: at(d), exponent: rule(at(d), d, true) });
            }
            letters.push(Letter { generator: center_gen, exponent: Affine::m() });
            for d in 1..=half {
                letters.push(Letter { generator: at(d), exponent: rule(at(d), d, false) });
            }
            Ok(ExponentWord { case, n, root, letters, center: half, param: Param::Xi })
        }
        OrbitCase::Two => {
            let inner = prop3_word(OrbitCase::One, n, cartan)?;
            let left = aff(gt.g1q(2 * n - 1), -gt.g1q(2 * n - 2));
            let right = aff(-gt.g1q(2 * n - 1), gt.g1q(2 * n));
            Ok(wrap(inner, Generator::Two, left, right, OrbitCase::Two, root))
        }
        OrbitCase::Four => {
            let inner = prop3_word(OrbitCase::Three, n, cartan)?;
            let left = aff(gt.g2q(2 * n), -gt.g2q(2 * n - 1));
            let right = aff(-gt.g2q(2 * n), gt.g2q(2 * n + 1));
            Ok(wrap(inner, Generator::One, left, right, OrbitCase::Four, root))
        }
    }
}

fn wrap(inner: ExponentWord, g: Generator, left: Affine, right: Affine, case: OrbitCase, root: RootVector) -> ExponentWord {
    let mut letters = vec![Letter { generator: g, exponent: left }];
    letters.extend(inner.letters);
    letters.push(Letter { generator: g, exponent: right });
    ExponentWord { case, n: inner.n, root, letters, center: inner.center + 1, param: Param::Xi }
}

/// `ξ(m, t)` for a concrete instance, `None` when the word has no letter left
/// of the centre.
pub fn xi_value(case: OrbitCase, n: usize, m: u32, t: &Q, cartan: CartanData) -> Result<Option<Q>> {
    let f = ffm_word(case, n, cartan)?;
    match xi_in_t(&f.word) {
        Ok(a) => Ok(Some(a.eval(&q(m as i64), t))),
        Err(Error::NoLeftOfCenter { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `true` when every exponent is a non-negative integer.
pub fn is_integral(word: &[(Generator, Q)]) -> bool {
    word.iter().all(|(_, e)| e.is_integer() && !e.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::kac_kazhdan;
    use crate::rational::qf;

    fn cd(p: i64, q: i64) -> CartanData {
        CartanData::new(p, q).unwrap()
    }

    #[test]
    fn trajectory_first_steps() {
        // shifted (x, y): θ1 = x, θ2 = qx + y, θ3 = (pq−1)x + py
        let c = cd(2, 3);
        let (x, y) = (qf(2, 7), qf(-5, 3));
        let w = WeightParam::shifted(x.clone(), y.clone());
        let tr = lambda_trajectory(&w, &ReflectionWord::new(Generator::One, 2), c);
        let th: Vec<Q> = tr.steps.iter().map(|s| s.exponent()).collect();
        assert_eq!(th[0], x);
        assert_eq!(th[1], q(3) * &x + &y);
        assert_eq!(th[2], q(5) * &x + q(2) * &y);
    }

    #[test]
    fn case1_n1_is_single_letter() {
        let f = ffm_word(OrbitCase::One, 1, cd(2, 2)).unwrap();
        assert_eq!(f.word.letters.len(), 1);
        assert_eq!(f.word.letters[0].exponent, Affine::m());
        assert_eq!(f.word.render(), "f1^{m}");
        // λ = (m, t) shifted
        assert_eq!(f.weight.eval(&q(3), &qf(1, 2)), WeightParam::shifted(q(3), qf(1, 2)));
    }

    #[test]
    fn case2_n1_pq4() {
        let inst = ffm_exponents(OrbitCase::Two, 1, 1, &qf(1, 3), cd(2, 2)).unwrap();
        let e: Vec<Q> = inst.word.iter().map(|(_, e)| e.clone()).collect();
        assert_eq!(e, vec![qf(11, 6), q(1), qf(1, 6)]);
        assert_eq!(inst.word[0].0, Generator::Two);
        let f = ffm_word(OrbitCase::Two, 1, cd(2, 2)).unwrap();
        let e = f.word.evaluate(&q(1), &Q::zero());
        assert_eq!(e[0].1, qf(3, 2));
        assert_eq!(e[2].1, qf(1, 2));
    }

    #[test]
    fn weights_satisfy_kk() {
        let c = cd(2, 3);
        for case in OrbitCase::ALL {
            for n in 1..=3 {
                let f = ffm_word(case, n, c).unwrap();
                for (m, t) in [(1, qf(1, 3)), (2, qf(-3, 2))] {
                    let w = f.weight.eval(&q(m), &t);
                    assert!(kac_kazhdan(&w, f.word.root, m as u32, c), "case {case} n {n}");
                }
            }
        }
    }

    #[test]
    fn change_of_variable_case2_n1() {
        let c = cd(2, 3);
        let f = ffm_word(OrbitCase::Two, 1, c).unwrap();
        let w = change_of_variable(&f.word).unwrap();
        assert_eq!(w.render(), "f2^{ξ} f1^{m} f2^{3m - ξ}");
    }

    #[test]
    fn change_of_variable_needs_left_letter() {
        let f = ffm_word(OrbitCase::Three, 1, cd(2, 2)).unwrap();
        assert!(matches!(change_of_variable(&f.word), Err(Error::NoLeftOfCenter { case: 3, n: 1 })));
    }

    #[test]
    fn worked_example_case4_n2() {
        // (σ⁻¹a4, a3) = (p(pq−2), pq−1)
        for (p, qq) in [(2, 2), (2, 3), (3, 5)] {
            let c = cd(p, qq);
            let f = ffm_word(OrbitCase::Four, 2, c).unwrap();
            assert_eq!(f.word.root, RootVector::new(p * (p * qq - 2), p * qq - 1));
            let w = change_of_variable(&f.word).unwrap();
            let pq = p * qq;
            let a = |xi: i64, m: i64| Affine::new(Q::zero(), q(m), q(xi));
            let expected = [
                a(pq - 1, -p),
                a(qq, -1),
                a(1, 0),
                Affine::m(),
                a(-1, p),
                a(-qq, qq * p - 1),
                a(-(pq - 1), (pq - 1) * p - p),
            ];
            let got: Vec<Affine> = w.letters.iter().map(|l| l.exponent.clone()).collect();
            assert_eq!(got, expected);
        }
    }
}
