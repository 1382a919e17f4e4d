//! The integer tables `Γ^k = (Γ^k_1, Γ^k_2)`, weights in shifted and
//! unshifted coordinates, and the Kac–Kazhdan reducibility predicate.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::cartan::{CartanData, RootVector};
use crate::rational::{binomial, q, qf, qi, serde_q, Q};

/// `(Γ^k_1, Γ^k_2)` from the alternating binomial sums in `pq`.
pub fn gamma(k: usize, cartan: CartanData) -> (BigInt, BigInt) {
    let pq = BigInt::from(cartan.pq());
    let sum = |terms: usize, top: &dyn Fn(usize) -> (u64, u64), power: &dyn Fn(usize) -> u32| {
        (0..terms).fold(BigInt::zero(), |acc, i| {
            let (n, r) = top(i);
            let term = binomial(n, r) * pq.pow(power(i));
            if i % 2 == 0 {
                acc + term
            } else {
                acc - term
            }
        })
    };
    if k == 0 {
        return (BigInt::zero(), BigInt::zero());
    }
    let m = k / 2;
    if k.is_multiple_of(2) {
        let odd_sum = sum(
            m,
            &|i| ((2 * m - i - 1) as u64, (2 * m - 2 * i - 1) as u64),
            &|i| (m - i - 1) as u32,
        );
        let even_sum = sum(
            m,
            &|i| ((2 * (m - 1) - i) as u64, (2 * (m - 1) - 2 * i) as u64),
            &|i| (m - i - 1) as u32,
        );
        (BigInt::from(cartan.q()) * odd_sum, even_sum)
    } else {
        let first = sum(m + 1, &|i| ((2 * m - i) as u64, (2 * m - 2 * i) as u64), &|i| (m - i) as u32);
        let second = sum(
            m,
            &|i| ((2 * m - i - 1) as u64, (2 * m - 2 * i - 1) as u64),
            &|i| (m - i - 1) as u32,
        );
        (first, BigInt::from(cartan.p()) * second)
    }
}

/// `Γ^0 ..= Γ^kmax`, evaluated from the binomial sums.
#[derive(Clone, Debug)]
pub struct GammaTable {
    cartan: CartanData,
    entries: Vec<(BigInt, BigInt)>,
}

impl GammaTable {
    pub fn new(cartan: CartanData, kmax: usize) -> Self {
        GammaTable { cartan, entries: (0..=kmax).map(|k| gamma(k, cartan)).collect() }
    }

    pub fn cartan(&self) -> CartanData {
        self.cartan
    }

    pub fn kmax(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn get(&self, k: usize) -> &(BigInt, BigInt) {
        &self.entries[k]
    }

    pub fn g1(&self, k: usize) -> &BigInt {
        &self.entries[k].0
    }

    pub fn g2(&self, k: usize) -> &BigInt {
        &self.entries[k].1
    }

    pub fn g1q(&self, k: usize) -> Q {
        qi(self.g1(k))
    }

    pub fn g2q(&self, k: usize) -> Q {
        qi(self.g2(k))
    }

    /// `Γ^k = Γ^k_1·x + Γ^k_2·y` at shifted coordinates `(x, y)`.
    pub fn linear(&self, k: usize, x: &Q, y: &Q) -> Q {
        self.g1q(k) * x + self.g2q(k) * y
    }

    /// Rows `(k, Γ^k_1, Γ^k_2)`.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &BigInt, &BigInt)> {
        self.entries.iter().enumerate().map(|(k, (a, b))| (k, a, b))
    }
}

/// A weight `λ = x·λ1 + y·λ2`.
///
/// Unshifted coordinates are `λ(h1), λ(h2)`; shifted ones are `λ(h1)+1,
/// λ(h2)+1`, i.e. the coordinates of `λ + ρ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightParam {
    #[serde(with = "serde_q")]
    pub x: Q,
    #[serde(with = "serde_q")]
    pub y: Q,
    pub shifted: bool,
}

impl WeightParam {
    pub fn unshifted(x: Q, y: Q) -> Self {
        WeightParam { x, y, shifted: false }
    }

    pub fn shifted(x: Q, y: Q) -> Self {
        WeightParam { x, y, shifted: true }
    }

    pub fn to_shifted(&self) -> Self {
        if self.shifted {
            self.clone()
        } else {
            WeightParam::shifted(&self.x + q(1), &self.y + q(1))
        }
    }

    pub fn to_unshifted(&self) -> Self {
        if self.shifted {
            WeightParam::unshifted(&self.x - q(1), &self.y - q(1))
        } else {
            self.clone()
        }
    }
}

/// Kac–Kazhdan condition `(λ+ρ)(h_α) = (m/2)⟨α,α⟩` for `α = (a, b)`, in the
/// form `x·a/p + y·b/q = m·(a²/p − ab + b²/q)` with shifted `(x, y)`.
pub fn kac_kazhdan(lambda: &WeightParam, root: RootVector, m: u32, cartan: CartanData) -> bool {
    let w = lambda.to_shifted();
    let (a, b) = (q(root.k1), q(root.k2));
    let (p, qq) = (cartan.p(), cartan.q());
    let lhs = &w.x * &a * qf(1, p) + &w.y * &b * qf(1, qq);
    let rhs = q(m as i64) * (&a * &a * qf(1, p) - &a * &b + &b * &b * qf(1, qq));
    lhs == rhs
}
