//! Rank-2 Cartan data, the root sequence `a_n`, Weyl reflections, real-root
//! orbits of the simple roots and their reflection words.
//!
//! The matrix convention is `a11 = a22 = 2`, `a12 = -p`, `a21 = -q`, so
//! `s1(α2) = α2 + p·α1` and `s2(α1) = α1 + q·α2`.
//!
//! The sequence `a_n` lives in `Z[s]` with `s² = pq`. Odd terms are integers;
//! even terms are integer multiples of `s` and are never stored as floats.
//! Instead the integer sequences `c_n = a_{2n+1}`, `d_n = σ·a_{2n}` and
//! `e_n = σ⁻¹·a_{2n}` (with `σ² = q/p`) are kept.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{q, qf, Q};

/// Index of a simple root / Chevalley generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Generator {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
}

impl Generator {
    pub fn index(self) -> u8 {
        match self {
            Generator::One => 1,
            Generator::Two => 2,
        }
    }

    pub fn other(self) -> Self {
        match self {
            Generator::One => Generator::Two,
            Generator::Two => Generator::One,
        }
    }

    pub fn simple_root(self) -> RootVector {
        match self {
            Generator::One => RootVector::new(1, 0),
            Generator::Two => RootVector::new(0, 1),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CartanData {
    p: i64,
    q: i64,
}

impl CartanData {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 1 || q < 1 || p * q < 4 {
            return Err(Error::InvalidCartan { p, q });
        }
        Ok(CartanData { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn pq(&self) -> i64 {
        self.p * self.q
    }

    /// `[[2, -p], [-q, 2]]`.
    pub fn matrix(&self) -> [[i64; 2]; 2] {
        [[2, -self.p], [-self.q, 2]]
    }

    /// `1 - a_ij`: the power of `ad f_i` killing `f_j` (first entry `i = 1`).
    pub fn serre_exponents(&self) -> (u32, u32) {
        ((self.p + 1) as u32, (self.q + 1) as u32)
    }

    /// Symmetric invariant form normalised so that `⟨α1,α1⟩ = 2/p`,
    /// `⟨α2,α2⟩ = 2/q`, `⟨α1,α2⟩ = -1`.
    pub fn inner(&self, a: RootVector, b: RootVector) -> Q {
        let (a1, a2, b1, b2) = (q(a.k1), q(a.k2), q(b.k1), q(b.k2));
        qf(2, self.p) * &a1 * &b1 - (&a1 * &b2 + &a2 * &b1) + qf(2, self.q) * a2 * b2
    }

    /// `q·k1² − pq·k1·k2 + p·k2²`; equals `q` on the orbit of `α1` and `p` on the orbit of `α2`.
    pub fn curve_value(&self, r: RootVector) -> i64 {
        self.q * r.k1 * r.k1 - self.pq() * r.k1 * r.k2 + self.p * r.k2 * r.k2
    }

    /// Values `(α_i(h1), α_i(h2))` of a simple root as a weight.
    pub fn simple_root_weight(&self, i: Generator) -> (i64, i64) {
        match i {
            Generator::One => (2, -self.q),
            Generator::Two => (-self.p, 2),
        }
    }
}

/// An element `k1·α1 + k2·α2` of the root lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RootVector {
    pub k1: i64,
    pub k2: i64,
}

impl RootVector {
    pub const fn new(k1: i64, k2: i64) -> Self {
        RootVector { k1, k2 }
    }

    pub fn scale(self, m: i64) -> Self {
        RootVector::new(self.k1 * m, self.k2 * m)
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k1, self.k2)
    }
}

/// Value of `a_n` in parity-split form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqValue {
    /// `a_n` for odd `n`.
    Odd(BigInt),
    /// `σ·a_n` and `σ⁻¹·a_n` for even `n`.
    Even { sigma: BigInt, sigma_inv: BigInt },
}

/// Parity-split table of the root sequence.
#[derive(Clone, Debug)]
pub struct SequenceTable {
    cartan: CartanData,
    c: Vec<BigInt>,
    d: Vec<BigInt>,
    e: Vec<BigInt>,
}

impl SequenceTable {
    /// Table holding `c_0..=c_len`, `d_0..=d_len`, `e_0..=e_len`.
    pub fn new(cartan: CartanData, len: usize) -> Self {
        let step = BigInt::from(cartan.pq() - 2);
        let run = |x0: BigInt, x1: BigInt| {
            let mut v = vec![x0, x1];
            while v.len() <= len {
                let n = v.len();
                let next = &step * &v[n - 1] - &v[n - 2];
                v.push(next);
            }
            v.truncate(len + 1);
            v
        };
        SequenceTable {
            cartan,
            c: run(BigInt::from(1), BigInt::from(cartan.pq() - 1)),
            d: run(BigInt::zero(), BigInt::from(cartan.q())),
            e: run(BigInt::zero(), BigInt::from(cartan.p())),
        }
    }

    pub fn cartan(&self) -> CartanData {
        self.cartan
    }

    pub fn len(&self) -> usize {
        self.c.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `c_n = a_{2n+1}`.
    pub fn c(&self, n: usize) -> &BigInt {
        &self.c[n]
    }

    /// `d_n = σ·a_{2n}`.
    pub fn d(&self, n: usize) -> &BigInt {
        &self.d[n]
    }

    /// `e_n = σ⁻¹·a_{2n}`.
    pub fn e(&self, n: usize) -> &BigInt {
        &self.e[n]
    }

    pub fn value(&self, n: usize) -> SeqValue {
        if n % 2 == 1 {
            SeqValue::Odd(self.c[n / 2].clone())
        } else {
            SeqValue::Even {
                sigma: self.d[n / 2].clone(),
                sigma_inv: self.e[n / 2].clone(),
            }
        }
    }

    /// `a_n` as a float, reconstructed from the integer tables
    /// (`a_{2k} = d_k·√(p/q)`).
    pub fn surd_value(&self, n: usize) -> f64 {
        match self.value(n) {
            SeqValue::Odd(c) => c.to_f64().unwrap_or(f64::INFINITY),
            SeqValue::Even { sigma, .. } => {
                let ratio = (self.cartan.p() as f64 / self.cartan.q() as f64).sqrt();
                sigma.to_f64().unwrap_or(f64::INFINITY) * ratio
            }
        }
    }
}

/// Exact value of `a_n`.
pub fn seq_a(n: usize, cartan: CartanData) -> SeqValue {
    SequenceTable::new(cartan, n / 2 + 1).value(n)
}

/// Binet-type closed form for `a_n`; only defined for `pq > 4`.
pub fn seq_a_closed_form(n: usize, cartan: CartanData) -> Result<f64> {
    let pq = cartan.pq();
    if pq == 4 {
        return Err(Error::DegenerateClosedForm { pq });
    }
    let s = (pq as f64).sqrt();
    let r = ((pq - 4) as f64).sqrt();
    let n = n as i32;
    Ok((((s + r) / 2.0).powi(n) - ((s - r) / 2.0).powi(n)) / r)
}

/// Simple reflection `s_i` acting on the root lattice.
pub fn reflect(point: RootVector, i: Generator, cartan: CartanData) -> RootVector {
    match i {
        Generator::One => RootVector::new(-point.k1 + cartan.p() * point.k2, point.k2),
        Generator::Two => RootVector::new(point.k1, cartan.q() * point.k1 - point.k2),
    }
}

/// The four families of positive real roots. The numbering is shared with the
/// singular-vector formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum OrbitCase {
    /// `(a_{2n-1}, σa_{2n-2})`, word `S1(2n-1)`.
    #[serde(rename = "1")]
    One,
    /// `(a_{2n-1}, σa_{2n})`, word `S2(2n)`.
    #[serde(rename = "2")]
    Two,
    /// `(σ⁻¹a_{2n-2}, a_{2n-1})`, word `S2(2n-1)`.
    #[serde(rename = "3")]
    Three,
    /// `(σ⁻¹a_{2n}, a_{2n-1})`, word `S1(2n)`.
    #[serde(rename = "4")]
    Four,
}

impl OrbitCase {
    pub const ALL: [OrbitCase; 4] = [OrbitCase::One, OrbitCase::Two, OrbitCase::Three, OrbitCase::Four];

    pub fn from_u8(case: u8) -> Result<Self> {
        match case {
            1 => Ok(OrbitCase::One),
            2 => Ok(OrbitCase::Two),
            3 => Ok(OrbitCase::Three),
            4 => Ok(OrbitCase::Four),
            other => Err(Error::UnknownCase(other)),
        }
    }

    pub fn number(self) -> u8 {
        match self {
            OrbitCase::One => 1,
            OrbitCase::Two => 2,
            OrbitCase::Three => 3,
            OrbitCase::Four => 4,
        }
    }

    /// Simple root whose orbit contains this family.
    pub fn seed(self) -> Generator {
        match self {
            OrbitCase::One | OrbitCase::Two => Generator::One,
            OrbitCase::Three | OrbitCase::Four => Generator::Two,
        }
    }

    /// Reflection word `s_α` for the family member with index `n`.
    pub fn word(self, n: usize) -> ReflectionWord {
        match self {
            OrbitCase::One => ReflectionWord::new(Generator::One, 2 * n - 1),
            OrbitCase::Two => ReflectionWord::new(Generator::Two, 2 * n),
            OrbitCase::Three => ReflectionWord::new(Generator::Two, 2 * n - 1),
            OrbitCase::Four => ReflectionWord::new(Generator::One, 2 * n),
        }
    }

    /// Root coordinates for index `n >= 1`, read off the sequence table.
    pub fn root_big(self, n: usize, table: &SequenceTable) -> (BigInt, BigInt) {
        match self {
            OrbitCase::One => (table.c(n - 1).clone(), table.d(n - 1).clone()),
            OrbitCase::Two => (table.c(n - 1).clone(), table.d(n).clone()),
            OrbitCase::Three => (table.e(n - 1).clone(), table.c(n - 1).clone()),
            OrbitCase::Four => (table.e(n).clone(), table.c(n - 1).clone()),
        }
    }

    pub fn root(self, n: usize, cartan: CartanData) -> Result<RootVector> {
        if n == 0 {
            return Err(Error::InvalidIndex(n));
        }
        let table = SequenceTable::new(cartan, n + 1);
        let (a, b) = self.root_big(n, &table);
        match (a.to_i64(), b.to_i64()) {
            (Some(a), Some(b)) => Ok(RootVector::new(a, b)),
            _ => Err(Error::Overflow(n)),
        }
    }
}

impl fmt::Display for OrbitCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// A positive real root labelled by its family and index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPoint {
    pub root: RootVector,
    pub case: OrbitCase,
    pub n: usize,
}

impl OrbitPoint {
    pub fn word(&self) -> ReflectionWord {
        self.case.word(self.n)
    }
}

/// The first `depth` positive roots of the orbit of `start` (a simple root),
/// in the order `(a1,σa0), (a1,σa2), (a3,σa2), ...` resp.
/// `(σ⁻¹a0,a1), (σ⁻¹a2,a1), (σ⁻¹a2,a3), ...`.
pub fn orbit(start: RootVector, depth: usize, cartan: CartanData) -> Result<Vec<OrbitPoint>> {
    let (even, odd) = if start == Generator::One.simple_root() {
        (OrbitCase::One, OrbitCase::Two)
    } else if start == Generator::Two.simple_root() {
        (OrbitCase::Three, OrbitCase::Four)
    } else {
        return Err(Error::NotOnOrbit(start));
    };
    let table = SequenceTable::new(cartan, depth / 2 + 2);
    (0..depth)
        .map(|i| {
            let (case, n) = if i % 2 == 0 { (even, i / 2 + 1) } else { (odd, i / 2 + 1) };
            let (a, b) = case.root_big(n, &table);
            match (a.to_i64(), b.to_i64()) {
                (Some(a), Some(b)) => Ok(OrbitPoint { root: RootVector::new(a, b), case, n }),
                _ => Err(Error::Overflow(n)),
            }
        })
        .collect()
}

/// Finds the family and index of a positive real root.
pub fn locate(point: RootVector, cartan: CartanData) -> Result<OrbitPoint> {
    let bound = point.k1.abs().max(point.k2.abs());
    let mut table = SequenceTable::new(cartan, 8);
    let mut n = 1;
    loop {
        if n + 1 > table.len() {
            table = SequenceTable::new(cartan, 2 * table.len());
        }
        if table.c(n - 1) > &BigInt::from(bound) {
            return Err(Error::NotOnOrbit(point));
        }
        for case in OrbitCase::ALL {
            let (a, b) = case.root_big(n, &table);
            if a == BigInt::from(point.k1) && b == BigInt::from(point.k2) {
                return Ok(OrbitPoint { root: point, case, n });
            }
        }
        n += 1;
    }
}

/// Reflection word `s_α` of a positive real root.
pub fn reflection_word(point: RootVector, cartan: CartanData) -> Result<ReflectionWord> {
    Ok(locate(point, cartan)?.word())
}

/// Alternating word `S_i(count)`: starts and ends with `s_i` and contains
/// `count` copies of it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReflectionWord {
    first: Generator,
    count: usize,
}

impl ReflectionWord {
    pub fn new(first: Generator, count: usize) -> Self {
        assert!(count >= 1, "S_i(0) is not a reflection word");
        ReflectionWord { first, count }
    }

    /// `(i, count)` for `S_i(count)`.
    pub fn descriptor(&self) -> (Generator, usize) {
        (self.first, self.count)
    }

    pub fn len(&self) -> usize {
        2 * self.count - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Letters left to right.
    pub fn letters(&self) -> Vec<Generator> {
        let mut g = self.first;
        (0..self.len())
            .map(|_| {
                let cur = g;
                g = g.other();
                cur
            })
            .collect()
    }

    /// Position (0-based) of the middle letter.
    pub fn center(&self) -> usize {
        self.count - 1
    }

    /// Applies the word to a lattice vector (rightmost letter first).
    pub fn apply(&self, v: RootVector, cartan: CartanData) -> RootVector {
        self.letters().iter().rev().fold(v, |acc, &g| reflect(acc, g, cartan))
    }

    /// The root `α` with `s_α` equal to this word: the left half applied to
    /// the simple root of the middle letter.
    pub fn root(&self, cartan: CartanData) -> RootVector {
        let letters = self.letters();
        let c = self.center();
        letters[..c]
            .iter()
            .rev()
            .fold(letters[c].simple_root(), |acc, &g| reflect(acc, g, cartan))
    }
}

impl fmt::Display for ReflectionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in self.letters() {
            write!(f, "s{g}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cd(p: i64, q: i64) -> CartanData {
        CartanData::new(p, q).unwrap()
    }

    #[test]
    fn rejects_finite_type() {
        assert!(CartanData::new(1, 3).is_err());
        assert!(CartanData::new(0, 5).is_err());
        assert!(CartanData::new(1, 4).is_ok());
    }

    #[test]
    fn seq_small_values() {
        let c = cd(2, 3);
        assert_eq!(seq_a(0, c), SeqValue::Even { sigma: 0.into(), sigma_inv: 0.into() });
        assert_eq!(seq_a(1, c), SeqValue::Odd(1.into()));
        assert_eq!(seq_a(3, c), SeqValue::Odd(5.into()));
        assert_eq!(seq_a(4, c), SeqValue::Even { sigma: 12.into(), sigma_inv: 8.into() });
        // pq = 4 gives a_n = n
        assert_eq!(seq_a(7, cd(2, 2)), SeqValue::Odd(7.into()));
    }

    #[test]
    fn closed_form_values() {
        let c = cd(2, 3);
        assert!((seq_a_closed_form(1, c).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(seq_a_closed_form(0, c).unwrap(), 0.0);
        let a4 = seq_a_closed_form(4, c).unwrap();
        assert!((a4 - 4.0 * 6f64.sqrt()).abs() < 1e-9);
        assert!(matches!(seq_a_closed_form(3, cd(2, 2)), Err(Error::DegenerateClosedForm { .. })));
    }

    #[test]
    fn reflections() {
        let c = cd(2, 3);
        let a1 = RootVector::new(1, 0);
        assert_eq!(reflect(a1, Generator::Two, c), RootVector::new(1, 3));
        assert_eq!(reflect(a1, Generator::One, c), RootVector::new(-1, 0));
        let w = ReflectionWord::new(Generator::Two, 2);
        assert_eq!(w.apply(a1, c), RootVector::new(5, 12));
        // s2 s1 s2 (1,0) = (pq-1, q(pq-2))
        assert_eq!(w.apply(a1, c), RootVector::new(c.pq() - 1, c.q() * (c.pq() - 2)));
    }

    #[test]
    fn orbit_heads() {
        let c = cd(2, 3);
        let o = orbit(RootVector::new(1, 0), 4, c).unwrap();
        let roots: Vec<_> = o.iter().map(|p| (p.root.k1, p.root.k2)).collect();
        assert_eq!(roots, vec![(1, 0), (1, 3), (5, 3), (5, 12)]);
        let o = orbit(RootVector::new(0, 1), 3, c).unwrap();
        let roots: Vec<_> = o.iter().map(|p| (p.root.k1, p.root.k2)).collect();
        assert_eq!(roots, vec![(0, 1), (2, 1), (2, 5)]);
        assert!(orbit(RootVector::new(1, 1), 2, c).is_err());
    }

    #[test]
    fn words_of_roots() {
        let c = cd(2, 3);
        let w = reflection_word(RootVector::new(1, 3), c).unwrap();
        assert_eq!(w.descriptor(), (Generator::Two, 2));
        assert_eq!(w.to_string(), "s2s1s2");
        let w = reflection_word(RootVector::new(1, 0), c).unwrap();
        assert_eq!(w.to_string(), "s1");
        assert!(matches!(reflection_word(RootVector::new(2, 2), c), Err(Error::NotOnOrbit(_))));
    }

    #[test]
    fn word_shape() {
        let w = ReflectionWord::new(Generator::One, 3);
        assert_eq!(w.to_string(), "s1s2s1s2s1");
        assert_eq!(w.len(), 5);
        assert_eq!(w.center(), 2);
    }
}
