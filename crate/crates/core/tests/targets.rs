use proptest::prelude::*;

use verma_core::cartan::{CartanData, Generator};
use verma_core::free::{FreeElement, Word};
use verma_core::pbw::{project, rewrite_word, Heisenberg, HeisenbergElement, Letter, Monomial, PbwElement, Sl2Like, Sl2LikeElement, Strategy as Rewrite, TargetAlgebra};
use verma_core::rational::{q, qf};

fn word(len: std::ops::Range<usize>) -> impl Strategy<Value = Word> {
    proptest::collection::vec(prop_oneof![Just(Generator::One), Just(Generator::Two)], len).prop_map(Word)
}

fn letters() -> impl Strategy<Value = Vec<Letter>> {
    proptest::collection::vec(prop_oneof![Just(Letter::F1), Just(Letter::F2), Just(Letter::H)], 6)
}

fn element<A: TargetAlgebra>() -> impl Strategy<Value = PbwElement<A>> {
    proptest::collection::vec((0u32..3, 0u32..3, 0u32..3, -6i64..7), 1..4).prop_map(|terms| {
        terms.into_iter().fold(PbwElement::zero(), |acc, (a, b, c, k)| acc.add(&PbwElement::monomial(Monomial::new(a, b, c), q(k))))
    })
}

fn check_homomorphism<A: TargetAlgebra>(x: &Word, y: &Word, c: CartanData) -> Result<(), TestCaseError> {
    let (vx, vy) = (FreeElement::word(x.clone()), FreeElement::word(y.clone()));
    let lhs = project::<A>(&vx.mul(&vy), c).unwrap();
    let rhs = project::<A>(&vx, c).unwrap().mul(&project::<A>(&vy, c).unwrap());
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn projection_is_multiplicative(x in word(0..5), y in word(0..5)) {
        let c = CartanData::new(2, 3).unwrap();
        check_homomorphism::<Heisenberg>(&x, &y, c)?;
        check_homomorphism::<Sl2Like>(&x, &y, c)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rewriting_is_confluent(w in letters()) {
        let l = rewrite_word::<Sl2Like>(&w, Rewrite::Leftmost);
        prop_assert_eq!(&l, &rewrite_word::<Sl2Like>(&w, Rewrite::Rightmost));
        let direct = w.iter().fold(Sl2LikeElement::one(), |acc, &g| acc.mul(&Sl2LikeElement::letter(g)));
        prop_assert_eq!(l, direct);
        let h = rewrite_word::<Heisenberg>(&w, Rewrite::Leftmost);
        prop_assert_eq!(&h, &rewrite_word::<Heisenberg>(&w, Rewrite::Rightmost));
        let direct = w.iter().fold(HeisenbergElement::one(), |acc, &g| acc.mul(&HeisenbergElement::letter(g)));
        prop_assert_eq!(h, direct);
    }

    #[test]
    fn h_is_central_in_heisenberg(x in element::<Heisenberg>()) {
        let h = HeisenbergElement::h();
        prop_assert_eq!(h.mul(&x), x.mul(&h));
    }

    #[test]
    fn products_are_associative(x in element::<Sl2Like>(), y in element::<Sl2Like>(), z in element::<Sl2Like>()) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    }

    #[test]
    fn heisenberg_closed_form_agrees(x in element::<Heisenberg>(), y in element::<Heisenberg>()) {
        prop_assert_eq!(x.mul(&y), x.mul_by_letters(&y));
    }

    #[test]
    fn quadratic_factors_commute(un in -30i64..30, vn in -30i64..30, d in 1i64..7) {
        let (u, v) = (qf(un, d), qf(vn, d + 1));
        let (a, b) = (HeisenbergElement::quadratic(&u), HeisenbergElement::quadratic(&v));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        let (a, b) = (Sl2LikeElement::quadratic(&u), Sl2LikeElement::quadratic(&v));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }
}

#[test]
fn commutator_projects_to_h() {
    let c = CartanData::new(2, 2).unwrap();
    let f1 = FreeElement::generator(Generator::One);
    let f2 = FreeElement::generator(Generator::Two);
    let v = f1.commutator(&f2);
    assert_eq!(project::<Heisenberg>(&v, c).unwrap(), HeisenbergElement::h());
    assert_eq!(project::<Sl2Like>(&v, c).unwrap(), Sl2LikeElement::h());
}

#[test]
fn item4_example() {
    type H = HeisenbergElement;
    let lhs = H::generator_power(Generator::Two, 2).mul(&H::generator_power(Generator::One, 3)).mul(&H::f2());
    let rhs = [-1, 0, 1].iter().fold(H::one(), |acc, &u| acc.mul(&H::quadratic(&q(u))));
    assert_eq!(lhs, rhs);
}
