use std::sync::Arc;

use fglab::{omega, Alphabet, Letter, Word};
use proptest::prelude::*;

fn abc() -> Arc<Alphabet> {
    Alphabet::new(["x", "y", "z"]).unwrap()
}

fn letters(max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(
        (0usize..3, any::<bool>()).prop_map(|(g, inv)| if inv { Letter::neg(g) } else { Letter::pos(g) }),
        0..=max_len,
    )
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    letters(max_len).prop_map(|ls| Word::from_letters(&abc(), ls).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn reduction_is_idempotent(w in word(64)) {
        let again = Word::from_letters(w.alphabet(), w.letters().iter().copied()).unwrap();
        prop_assert_eq!(&again, &w);
        for pair in w.letters().windows(2) {
            prop_assert_ne!(pair[0], pair[1].inv());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn group_laws(u in word(24), v in word(24), w in word(24)) {
        let e = Word::identity(&abc());
        prop_assert_eq!(u.multiply(&v).unwrap().multiply(&w).unwrap(), u.multiply(&v.multiply(&w).unwrap()).unwrap());
        prop_assert_eq!(u.multiply(&e).unwrap(), u.clone());
        prop_assert_eq!(e.multiply(&u).unwrap(), u.clone());
        prop_assert!(u.multiply(&u.inverse()).unwrap().is_identity());
        prop_assert!(u.inverse().multiply(&u).unwrap().is_identity());
        prop_assert!(u.multiply(&v).unwrap().len() <= u.len() + v.len());
    }

    #[test]
    fn abelianization_is_a_homomorphism(u in word(32), v in word(32)) {
        let lhs = u.multiply(&v).unwrap().exponent_sums();
        prop_assert_eq!(lhs, u.exponent_sums().add(&v.exponent_sums()));
        prop_assert!(u.commutator(&v).unwrap().exponent_sums().is_zero());
    }

    #[test]
    fn canonical_text_round_trips(w in word(40)) {
        let text = w.to_string();
        prop_assert_eq!(Word::parse(&text, &abc()).unwrap(), w);
    }

    #[test]
    fn exponent_sugar_expands(g in 0usize..3, k in -6i64..=6) {
        prop_assume!(k != 0);
        let a = abc();
        let text = format!("{}^{k}", a.name(g));
        let w = Word::parse(&text, &a).unwrap();
        prop_assert_eq!(w.len(), k.unsigned_abs() as usize);
        prop_assert_eq!(w.to_string(), if k == 1 { a.name(g).to_string() } else { text });
    }
}

#[test]
fn omega_recursion_is_exact() {
    let xy = Alphabet::xy();
    let x = Word::parse("x", &xy).unwrap();
    let mut prev = omega(0);
    assert_eq!(prev.to_string(), "x y x^-1 y^-1");
    for n in 1..=20 {
        let next = omega(n);
        assert_eq!(next, prev.commutator(&x).unwrap());
        assert_eq!(next.len(), (1usize << (n + 2)) + 2);
        assert!(next.exponent_sums().is_zero());
        prev = next;
    }
}
