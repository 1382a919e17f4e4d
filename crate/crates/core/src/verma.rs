//! Verma module oracle: graded pieces are `U(N₋)_β·u`, the `e_i` act by
//! straightening, and singular vectors are computed as exact kernels.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cartan::{orbit, CartanData, Generator, OrbitCase, RootVector};
use crate::error::Result;
use crate::free::{FreeElement, QuotientCache, Word};
use crate::gamma::{kac_kazhdan, WeightParam};
use crate::linalg::{Echelon, SparseRow};
use crate::rational::{q, serde_q, Q};

/// Highest weight data in unshifted coordinates `x = λ(h1)`, `y = λ(h2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VermaContext {
    pub cartan: CartanData,
    pub lambda: WeightParam,
}

impl VermaContext {
    pub fn new(cartan: CartanData, lambda: &WeightParam) -> Self {
        VermaContext { cartan, lambda: lambda.to_unshifted() }
    }

    /// `(h1, h2)` eigenvalues on a vector of grade `(k1, k2)`.
    pub fn weight_at(&self, grade: (u32, u32)) -> (Q, Q) {
        let (k1, k2) = (q(grade.0 as i64), q(grade.1 as i64));
        let (p, qq) = (q(self.cartan.p()), q(self.cartan.q()));
        (&self.lambda.x - q(2) * &k1 + &p * &k2, &self.lambda.y + &qq * &k1 - q(2) * &k2)
    }

    pub fn h_value(&self, i: Generator, grade: (u32, u32)) -> Q {
        let (a, b) = self.weight_at(grade);
        match i {
            Generator::One => a,
            Generator::Two => b,
        }
    }
}

fn lower(grade: (u32, u32), i: Generator) -> Option<(u32, u32)> {
    match i {
        Generator::One if grade.0 > 0 => Some((grade.0 - 1, grade.1)),
        Generator::Two if grade.1 > 0 => Some((grade.0, grade.1 - 1)),
        _ => None,
    }
}

/// `e_i · v` for `v` acting on the highest weight vector. Returns zero (at
/// the unchanged grade) when `v` has no `f_i`.
pub fn e_action(i: Generator, v: &FreeElement, ctx: &VermaContext) -> FreeElement {
    let Some(target) = lower(v.grade(), i) else {
        return FreeElement::zero(v.grade());
    };
    let mut out = FreeElement::zero(target);
    for (w, c) in v.terms() {
        let mut suffix = (0u32, 0u32);
        for r in (0..w.len()).rev() {
            let g = w.0[r];
            if g == i {
                let mut rest = w.0.clone();
                rest.remove(r);
                out.add_term(Word(rest), c * ctx.h_value(i, suffix));
            }
            match g {
                Generator::One => suffix.0 += 1,
                Generator::Two => suffix.1 += 1,
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularVectorResult {
    pub grade: (u32, u32),
    pub kernel_dim: usize,
    /// Quotient normal forms with leading coefficient one.
    pub vectors: Vec<FreeElement>,
}

/// Singular vectors of `M(λ)` at one grade.
pub fn singular_vectors(grade: (u32, u32), ctx: &VermaContext, cache: &QuotientCache) -> Result<SingularVectorResult> {
    let slice = cache.get(grade)?;
    if grade == (0, 0) {
        return Ok(SingularVectorResult { grade, kernel_dim: 1, vectors: vec![FreeElement::one()] });
    }
    let basis: Vec<Word> = slice.basis_words().cloned().collect();
    let mut columns: Vec<SparseRow> = vec![SparseRow::new(); basis.len()];
    let mut offset = 0;
    for i in [Generator::One, Generator::Two] {
        let Some(g) = lower(grade, i) else { continue };
        let below = cache.get(g)?;
        for (j, w) in basis.iter().enumerate() {
            let img = below.reduce(&e_action(i, &FreeElement::word(w.clone()), ctx))?;
            for (u, c) in img.terms() {
                let r = below.word_index(u).expect("word of lower grade");
                columns[j].insert(offset + r, c.clone());
            }
        }
        offset += below.words().len();
    }
    let mut rows: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for (j, col) in columns.into_iter().enumerate() {
        for (r, c) in col {
            rows.entry(r).or_default().insert(j, c);
        }
    }
    let mut ech = Echelon::new(basis.len());
    for row in rows.into_values() {
        ech.insert(row);
    }
    ech.finalize();
    let vectors: Vec<FreeElement> = ech
        .kernel()
        .into_iter()
        .map(|k| {
            let mut e = FreeElement::zero(grade);
            for (j, c) in k {
                e.add_term(basis[j].clone(), c);
            }
            e.normalized()
        })
        .collect();
    Ok(SingularVectorResult { grade, kernel_dim: vectors.len(), vectors })
}

/// Another real root hyperplane `(root, m)` through the same weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hyperplane {
    pub root: RootVector,
    pub m: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniquenessReport {
    pub root: RootVector,
    pub m: u32,
    #[serde(with = "serde_q")]
    pub t: Q,
    pub grade: (u32, u32),
    pub kernel_dim: usize,
    /// Real-root pairs `(α′, m′) ≠ (α, m)` with `m′α′ ≤ m·α` also satisfying
    /// the Kac–Kazhdan condition.
    pub other_hyperplanes: Vec<Hyperplane>,
    pub generic: bool,
}

/// Positive real roots `β` with `β ≤ bound` componentwise.
pub fn real_roots_below(bound: (u32, u32), cartan: CartanData) -> Vec<RootVector> {
    // every reflection step raises one coordinate by at least one
    let depth = (bound.0 + bound.1) as usize + 1;
    let mut out: Vec<RootVector> = [RootVector::new(1, 0), RootVector::new(0, 1)]
        .into_iter()
        .flat_map(|seed| orbit(seed, depth, cartan).unwrap_or_default())
        .map(|pt| pt.root)
        .filter(|r| r.k1 <= bound.0 as i64 && r.k2 <= bound.1 as i64)
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Uniqueness check at `λ(m, t)` for one orbit case: kernel dimension at
/// `m·root` and any other real-root hyperplanes through the weight.
pub fn verify_kk_uniqueness(case: OrbitCase, n: usize, m: u32, t: &Q, cartan: CartanData, cache: &QuotientCache) -> Result<UniquenessReport> {
    let inst = crate::ffm::ffm_exponents(case, n, m, t, cartan)?;
    let root = inst.root;
    let grade = (root.k1 as u32 * m, root.k2 as u32 * m);
    let ctx = VermaContext::new(cartan, &inst.weight);
    let sv = singular_vectors(grade, &ctx, cache)?;
    let mut others = Vec::new();
    for beta in real_roots_below(grade, cartan) {
        for mm in 1..=(grade.0 + grade.1) {
            if beta.k1 * mm as i64 > grade.0 as i64 || beta.k2 * mm as i64 > grade.1 as i64 {
                break;
            }
            if (beta, mm) != (root, m) && kac_kazhdan(&inst.weight, beta, mm, cartan) {
                others.push(Hyperplane { root: beta, m: mm });
            }
        }
    }
    let generic = others.is_empty() && sv.kernel_dim == 1;
    Ok(UniquenessReport { root, m, t: t.clone(), grade, kernel_dim: sv.kernel_dim, other_hyperplanes: others, generic })
}

/// `e1(e2 v) − e2(e1 v)` reduced in the quotient at grade `β − α1 − α2`.
pub fn commutation_defect(v: &FreeElement, ctx: &VermaContext, cache: &QuotientCache) -> Result<FreeElement> {
    let g = v.grade();
    let target = (g.0.saturating_sub(1), g.1.saturating_sub(1));
    if g.0 == 0 || g.1 == 0 {
        return Ok(FreeElement::zero(target));
    }
    let a = e_action(Generator::One, &e_action(Generator::Two, v, ctx), ctx);
    let b = e_action(Generator::Two, &e_action(Generator::One, v, ctx), ctx);
    cache.get(target)?.reduce(&a.sub(&b))
}

/// Whether every term of the reduced `e_i v` vanishes for both `i`.
pub fn is_singular(v: &FreeElement, ctx: &VermaContext, cache: &QuotientCache) -> Result<bool> {
    for i in [Generator::One, Generator::Two] {
        if let Some(g) = lower(v.grade(), i) {
            if !cache.get(g)?.reduce(&e_action(i, v, ctx))?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
