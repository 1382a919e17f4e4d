use proptest::prelude::*;

use verma_core::cartan::{CartanData, Generator};
use verma_core::free::{relation_span_all_pairs, serre_element, words_of_grade, FreeElement, QuotientCache, Word, DEFAULT_GRADE_CAP};
use verma_core::linalg::Echelon;
use verma_core::rational::{binomial, q, qf, qi};

fn cd(p: i64, q: i64) -> CartanData {
    CartanData::new(p, q).unwrap()
}

fn element_strategy(grade: (u32, u32)) -> impl Strategy<Value = FreeElement> {
    let words = words_of_grade(grade.0, grade.1);
    proptest::collection::vec((0..words.len(), -9i64..10), 1..6).prop_map(move |terms| {
        let mut e = FreeElement::zero(grade);
        for (i, c) in terms {
            e.add_term(words[i].clone(), q(c));
        }
        e
    })
}

#[test]
fn serre_matches_binomial_expansion() {
    for (p, qq) in [(1, 4), (2, 2), (2, 3), (3, 3)] {
        let c = cd(p, qq);
        for (g, k) in [(Generator::One, p + 1), (Generator::Two, qq + 1)] {
            let mut expected = FreeElement::zero(serre_element(g, c).expansion.grade());
            for j in 0..=k {
                let mut letters = vec![g; (k - j) as usize];
                letters.push(g.other());
                letters.extend(vec![g; j as usize]);
                let sign = if j % 2 == 0 { q(1) } else { q(-1) };
                expected.add_term(Word(letters), sign * qi(&binomial(k as u64, j as u64)));
            }
            assert_eq!(serre_element(g, c).expansion, expected);
        }
    }
}

#[test]
fn recursive_span_equals_all_pairs() {
    for (p, qq) in [(1, 4), (2, 2), (2, 3), (3, 2)] {
        let c = cd(p, qq);
        let cache = QuotientCache::new(c, DEFAULT_GRADE_CAP);
        for k1 in 0..=5 {
            for k2 in 0..=5 {
                if k1 + k2 > 8 {
                    continue;
                }
                let slice = cache.get((k1, k2)).unwrap();
                let mut brute = Echelon::new(slice.words().len());
                for r in relation_span_all_pairs((k1, k2), c) {
                    brute.insert(slice.row_of(&r).unwrap());
                    assert!(slice.in_relation_span(&r).unwrap());
                }
                assert_eq!(brute.rank(), slice.relation_rank(), "(p,q)=({p},{qq}) grade ({k1},{k2})");
            }
        }
    }
}

#[test]
fn quotient_dimensions() {
    // f1^{p+1} f2-type grades lose exactly one word
    for (p, qq) in [(2, 2), (2, 3), (3, 3)] {
        let c = cd(p, qq);
        let cache = QuotientCache::new(c, DEFAULT_GRADE_CAP);
        assert_eq!(cache.get((p as u32 + 1, 1)).unwrap().dim(), p as usize + 1);
        assert_eq!(cache.get((1, qq as u32 + 1)).unwrap().dim(), qq as usize + 1);
        assert_eq!(cache.get((2, 1)).unwrap().dim(), 3);
    }
}

#[test]
fn rebuilt_cache_is_identical() {
    let c = cd(2, 3);
    let a = QuotientCache::new(c, DEFAULT_GRADE_CAP).get((4, 4)).unwrap();
    let b = QuotientCache::new(c, DEFAULT_GRADE_CAP).get((4, 4)).unwrap();
    assert_eq!(*a, *b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduce_is_idempotent_and_linear(a in element_strategy((3, 2)), b in element_strategy((3, 2)), k in -5i64..6) {
        let c = cd(2, 2);
        let cache = QuotientCache::new(c, DEFAULT_GRADE_CAP);
        let s = cache.get((3, 2)).unwrap();
        let ra = s.reduce(&a).unwrap();
        prop_assert_eq!(s.reduce(&ra).unwrap(), ra.clone());
        let lhs = s.reduce(&a.add(&b.scale(&qf(k, 3)))).unwrap();
        prop_assert_eq!(lhs, ra.add(&s.reduce(&b).unwrap().scale(&qf(k, 3))));
        // reduced forms live on basis words
        let basis: Vec<&Word> = s.basis_words().collect();
        prop_assert!(ra.terms().keys().all(|w| basis.contains(&w)));
    }

    #[test]
    fn ideal_is_two_sided(x in element_strategy((1, 1)), y in element_strategy((1, 0))) {
        let c = cd(2, 2);
        let cache = QuotientCache::new(c, DEFAULT_GRADE_CAP);
        let s = serre_element(Generator::Two, c).expansion;
        let v = x.mul(&s).mul(&y);
        prop_assert!(cache.get(v.grade()).unwrap().reduce(&v).unwrap().is_zero());
    }
}
