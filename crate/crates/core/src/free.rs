//! Words in `f1, f2`, exact linear combinations of them, the Serre elements
//! and graded pieces `U(N₋)_β = Words_β / I_β` of the quotient by the
//! two-sided Serre ideal.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use crate::cartan::{CartanData, Generator};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseRow};
use crate::rational::{fmt_q, Q};

/// Default bound on `k1 + k2` for graded pieces.
pub const DEFAULT_GRADE_CAP: u32 = 14;

/// Monomial `f_{i_1} f_{i_2} ⋯` (leftmost first). Ordered lexicographically
/// with `f1 < f2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn grade(&self) -> (u32, u32) {
        let ones = self.0.iter().filter(|g| **g == Generator::One).count() as u32;
        (ones, self.0.len() as u32 - ones)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for g in &self.0 {
            write!(f, "f{g}")?;
        }
        Ok(())
    }
}

/// All words with `k1` copies of `f1` and `k2` of `f2`, in increasing order.
pub fn words_of_grade(k1: u32, k2: u32) -> Vec<Word> {
    fn go(k1: u32, k2: u32, prefix: &mut Vec<Generator>, out: &mut Vec<Word>) {
        if k1 == 0 && k2 == 0 {
            out.push(Word(prefix.clone()));
            return;
        }
        if k1 > 0 {
            prefix.push(Generator::One);
            go(k1 - 1, k2, prefix, out);
            prefix.pop();
        }
        if k2 > 0 {
            prefix.push(Generator::Two);
            go(k1, k2 - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(k1, k2, &mut Vec::new(), &mut out);
    out
}

/// Homogeneous element of the free algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeElement {
    grade: (u32, u32),
    terms: BTreeMap<Word, Q>,
}

impl FreeElement {
    pub fn zero(grade: (u32, u32)) -> Self {
        FreeElement { grade, terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        FreeElement::word(Word::empty())
    }

    pub fn word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        let grade = w.grade();
        terms.insert(w, Q::one());
        FreeElement { grade, terms }
    }

    pub fn generator(g: Generator) -> Self {
        FreeElement::word(Word(vec![g]))
    }

    pub fn grade(&self) -> (u32, u32) {
        self.grade
    }

    pub fn terms(&self) -> &BTreeMap<Word, Q> {
        &self.terms
    }

    pub fn coefficient(&self, w: &Word) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: Q) {
        assert_eq!(w.grade(), self.grade, "inhomogeneous term");
        let e = self.terms.entry(w).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            let key = self.terms.iter().find(|(_, v)| v.is_zero()).map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &FreeElement) -> FreeElement {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, k: &Q) -> FreeElement {
        if k.is_zero() {
            return FreeElement::zero(self.grade);
        }
        FreeElement { grade: self.grade, terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect() }
    }

    pub fn mul(&self, other: &FreeElement) -> FreeElement {
        let grade = (self.grade.0 + other.grade.0, self.grade.1 + other.grade.1);
        let mut out = FreeElement::zero(grade);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b), x * y);
            }
        }
        out
    }

    pub fn commutator(&self, other: &FreeElement) -> FreeElement {
        self.mul(other).sub(&other.mul(self))
    }

    /// Leading (lexicographically largest) word.
    pub fn leading(&self) -> Option<(&Word, &Q)> {
        self.terms.last_key_value()
    }

    /// Rescales so that the leading coefficient is one.
    pub fn normalized(&self) -> FreeElement {
        match self.leading() {
            Some((_, c)) => self.scale(&(Q::one() / c)),
            None => self.clone(),
        }
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|(w, c)| format!("({})·{}", fmt_q(c), w)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `(ad f_i)^{1-a_ij} f_j`, expanded into words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreElement {
    pub which: Generator,
    pub expansion: FreeElement,
}

pub fn serre_element(which: Generator, cartan: CartanData) -> SerreElement {
    let (e1, e2) = cartan.serre_exponents();
    let power = match which {
        Generator::One => e1,
        Generator::Two => e2,
    };
    let ad = FreeElement::generator(which);
    let mut acc = FreeElement::generator(which.other());
    for _ in 0..power {
        acc = ad.commutator(&acc);
    }
    SerreElement { which, expansion: acc }
}

/// A graded piece of `U(N₋)`: words of one grade modulo the Serre ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedQuotient {
    grade: (u32, u32),
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    relations: Echelon,
    basis: Vec<usize>,
}

impl GradedQuotient {
    fn from_relations(grade: (u32, u32), words: Vec<Word>, rels: impl IntoIterator<Item = FreeElement>) -> Self {
        let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut relations = Echelon::new(words.len());
        for r in rels {
            let row: SparseRow = r.terms.iter().map(|(w, c)| (index[w], c.clone())).collect();
            relations.insert(row);
        }
        relations.finalize();
        let basis = relations.free_columns();
        GradedQuotient { grade, words, index, relations, basis }
    }

    pub fn grade(&self) -> (u32, u32) {
        self.grade
    }

    /// All words of the grade, increasing.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word_index(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn relation_rank(&self) -> usize {
        self.relations.rank()
    }

    /// Words not appearing as leading words of relations.
    pub fn basis_words(&self) -> impl Iterator<Item = &Word> {
        self.basis.iter().map(|&i| &self.words[i])
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Relation basis rows as elements (fully reduced, leading coefficient 1).
    pub fn relation_basis(&self) -> Vec<FreeElement> {
        self.relations.rows().map(|(_, row)| self.element_from_row(row)).collect()
    }

    fn check_grade(&self, v: &FreeElement) -> Result<()> {
        if v.grade != self.grade {
            return Err(Error::GradeMismatch(self.grade.0, self.grade.1, v.grade.0, v.grade.1));
        }
        Ok(())
    }

    pub fn row_of(&self, v: &FreeElement) -> Result<SparseRow> {
        self.check_grade(v)?;
        Ok(v.terms.iter().map(|(w, c)| (self.index[w], c.clone())).collect())
    }

    pub fn element_from_row(&self, row: &SparseRow) -> FreeElement {
        let mut e = FreeElement::zero(self.grade);
        for (&i, c) in row {
            e.terms.insert(self.words[i].clone(), c.clone());
        }
        e
    }

    /// Normal form modulo the Serre ideal: supported on basis words only.
    pub fn reduce(&self, v: &FreeElement) -> Result<FreeElement> {
        let row = self.row_of(v)?;
        Ok(self.element_from_row(&self.relations.reduce(&row)))
    }

    /// Whether `v` lies in the relation space, decided by a rank test.
    pub fn in_relation_span(&self, v: &FreeElement) -> Result<bool> {
        let row = self.row_of(v)?;
        let mut e = self.relations.clone();
        Ok(!e.insert(row))
    }
}

/// Spanning set `{x·S·y}` of `I_β` over all word pairs and both Serre elements.
pub fn relation_span_all_pairs(grade: (u32, u32), cartan: CartanData) -> Vec<FreeElement> {
    let mut out = Vec::new();
    for which in [Generator::One, Generator::Two] {
        let s = serre_element(which, cartan);
        let (g1, g2) = s.expansion.grade();
        if g1 > grade.0 || g2 > grade.1 {
            continue;
        }
        let (r1, r2) = (grade.0 - g1, grade.1 - g2);
        for a in 0..=r1 {
            for b in 0..=r2 {
                let lefts = words_of_grade(a, b);
                let rights = words_of_grade(r1 - a, r2 - b);
                for x in &lefts {
                    let xs = FreeElement::word(x.clone()).mul(&s.expansion);
                    for y in &rights {
                        out.push(xs.mul(&FreeElement::word(y.clone())));
                    }
                }
            }
        }
    }
    out
}

/// Builds `U(N₋)_β` with the default grade cap.
pub fn ideal_slice(grade: (u32, u32), cartan: CartanData) -> Result<Arc<GradedQuotient>> {
    QuotientCache::new(cartan, DEFAULT_GRADE_CAP).get(grade)
}

/// Per-Cartan cache of graded quotients. `I_β` is spanned by `S·y` for the
/// Serre elements `S` together with `f_i·I_{β−α_i}`, so each grade is built
/// from the two grades below it.
#[derive(Debug)]
pub struct QuotientCache {
    cartan: CartanData,
    cap: u32,
    serre: [SerreElement; 2],
    slices: RwLock<HashMap<(u32, u32), Arc<GradedQuotient>>>,
}

impl QuotientCache {
    pub fn new(cartan: CartanData, cap: u32) -> Self {
        QuotientCache {
            cartan,
            cap,
            serre: [serre_element(Generator::One, cartan), serre_element(Generator::Two, cartan)],
            slices: RwLock::new(HashMap::new()),
        }
    }

    pub fn cartan(&self) -> CartanData {
        self.cartan
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn check_cap(&self, grade: (u32, u32)) -> Result<()> {
        if grade.0 + grade.1 > self.cap {
            return Err(Error::GradeCapExceeded { k1: grade.0, k2: grade.1, cap: self.cap });
        }
        Ok(())
    }

    pub fn get(&self, grade: (u32, u32)) -> Result<Arc<GradedQuotient>> {
        self.check_cap(grade)?;
        if let Some(q) = self.slices.read().expect("cache lock").get(&grade) {
            return Ok(q.clone());
        }
        let built = Arc::new(self.build(grade)?);
        let mut map = self.slices.write().expect("cache lock");
        Ok(map.entry(grade).or_insert(built).clone())
    }

    fn build(&self, grade: (u32, u32)) -> Result<GradedQuotient> {
        let words = words_of_grade(grade.0, grade.1);
        let mut rels = Vec::new();
        for s in &self.serre {
            let (g1, g2) = s.expansion.grade();
            if g1 <= grade.0 && g2 <= grade.1 {
                for y in words_of_grade(grade.0 - g1, grade.1 - g2) {
                    rels.push(s.expansion.mul(&FreeElement::word(y)));
                }
            }
        }
        for g in [Generator::One, Generator::Two] {
            let below = match g {
                Generator::One if grade.0 > 0 => (grade.0 - 1, grade.1),
                Generator::Two if grade.1 > 0 => (grade.0, grade.1 - 1),
                _ => continue,
            };
            let lower = self.get(below)?;
            let prefix = FreeElement::generator(g);
            for r in lower.relation_basis() {
                rels.push(prefix.mul(&r));
            }
        }
        Ok(GradedQuotient::from_relations(grade, words, rels))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn cd(p: i64, q: i64) -> CartanData {
        CartanData::new(p, q).unwrap()
    }

    fn w(s: &str) -> Word {
        Word(s.chars().map(|c| if c == '1' { Generator::One } else { Generator::Two }).collect())
    }

    #[test]
    fn word_order_and_grade() {
        let ws = words_of_grade(2, 1);
        let shown: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, vec!["f1f1f2", "f1f2f1", "f2f1f1"]);
        assert_eq!(w("1221").grade(), (2, 2));
    }

    #[test]
    fn serre_p1() {
        let s = serre_element(Generator::One, cd(1, 4));
        let mut expected = FreeElement::zero((2, 1));
        expected.add_term(w("112"), q(1));
        expected.add_term(w("121"), q(-2));
        expected.add_term(w("211"), q(1));
        assert_eq!(s.expansion, expected);
        assert_eq!(serre_element(Generator::Two, cd(1, 4)).expansion.grade(), (1, 5));
    }

    #[test]
    fn small_slices() {
        let c = cd(2, 3);
        let q21 = ideal_slice((2, 1), c).unwrap();
        assert_eq!((q21.relation_rank(), q21.dim()), (0, 3));
        let q11 = ideal_slice((1, 1), c).unwrap();
        assert_eq!(q11.dim(), 2);
        let q31 = ideal_slice((3, 1), c).unwrap();
        assert_eq!((q31.relation_rank(), q31.dim()), (1, 3));
    }

    #[test]
    fn reduce_kills_serre() {
        let c = cd(2, 2);
        let s = serre_element(Generator::One, c);
        let slice = ideal_slice(s.expansion.grade(), c).unwrap();
        assert!(slice.reduce(&s.expansion).unwrap().is_zero());
        assert!(slice.in_relation_span(&s.expansion).unwrap());
    }

    #[test]
    fn grade_errors() {
        let c = cd(2, 2);
        let cache = QuotientCache::new(c, 4);
        assert!(matches!(cache.get((3, 2)), Err(Error::GradeCapExceeded { .. })));
        let slice = cache.get((1, 1)).unwrap();
        let v = FreeElement::word(w("11"));
        assert!(matches!(slice.reduce(&v), Err(Error::GradeMismatch(..))));
    }
}
