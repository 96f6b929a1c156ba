use bpbraid::words::artin_action;
use bpbraid::{braids_equal, BraidWord, FreeWord, Permutation};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

mod common;
use common::random_braid;

fn bw(n: usize, s: &str) -> BraidWord {
    BraidWord::parse(n, s).unwrap()
}

#[test]
fn artin_relations_up_to_seven_strands() {
    for n in 2..=7usize {
        for i in 1..n as i32 {
            for j in i + 1..n as i32 {
                let (a, b) = (BraidWord::sigma(n, i).unwrap(), BraidWord::sigma(n, j).unwrap());
                let lhs = if j == i + 1 { a.mul(&b).mul(&a) } else { a.mul(&b) };
                let rhs = if j == i + 1 { b.mul(&a).mul(&b) } else { b.mul(&a) };
                assert!(braids_equal(&lhs, &rhs).unwrap(), "n={n} i={i} j={j}");
                if j == i + 1 {
                    // adjacent generators do not commute
                    assert!(!braids_equal(&a.mul(&b), &b.mul(&a)).unwrap());
                }
            }
        }
    }
}

#[test]
fn artin_action_is_a_homomorphism_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for k in 0..200 {
        let n = 2 + k % 6;
        let a = random_braid(&mut rng, n, 12);
        let b = random_braid(&mut rng, n, 12);
        let lhs = artin_action(&a.mul(&b)).unwrap();
        let rhs = artin_action(&a).unwrap().compose(&artin_action(&b).unwrap(), usize::MAX).unwrap();
        assert_eq!(lhs, rhs, "{a} · {b}");
    }
}

#[test]
fn garside_element_squared_is_central() {
    let d = bw(4, "s1 s2 s3 s1 s2 s1");
    let d2 = d.pow(2);
    for i in 1..=3 {
        let s = BraidWord::sigma(4, i).unwrap();
        assert!(braids_equal(&d2.mul(&s), &s.mul(&d2)).unwrap());
    }
    assert!(!braids_equal(&d.mul(&BraidWord::sigma(4, 1).unwrap()), &BraidWord::sigma(4, 1).unwrap().mul(&d)).unwrap());
}

#[test]
fn parse_round_trip_and_errors() {
    let w = bw(5, "s1 S3 s4 s4");
    assert_eq!(w.to_string(), "s1 S3 s4 s4");
    assert!(BraidWord::parse(3, "s3").is_err());
    assert!(BraidWord::parse(3, "x1").is_err());
    let f = FreeWord::parse(3, "t1^2 t3^-1").unwrap();
    assert_eq!(f.to_string(), "t1^2 t3^-1");
    assert!(FreeWord::parse(2, "t3^1").is_err());
}

#[test]
fn permutation_of_a_braid() {
    let w = bw(4, "s1 s2 s3");
    assert_eq!(w.permutation().cycle_type(), vec![4]);
    assert_eq!(bw(4, "s1 s1").permutation(), Permutation::identity(4));
}

fn letters(n: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((1..n as i32, any::<bool>()), 0..16)
        .prop_map(move |v| BraidWord::new(n, v.into_iter().map(|(i, s)| if s { i } else { -i }).collect()).unwrap())
}

proptest! {
    #[test]
    fn inverse_cancels(w in letters(5)) {
        prop_assert!(braids_equal(&w.mul(&w.inverse()), &BraidWord::identity(5)).unwrap());
        prop_assert!(artin_action(&w.inverse().mul(&w)).unwrap().is_identity());
    }

    #[test]
    fn equality_is_invariant_under_conjugation(a in letters(4), b in letters(4), c in letters(4)) {
        let eq = braids_equal(&a, &b).unwrap();
        prop_assert_eq!(eq, braids_equal(&a.conj_by(&c), &b.conj_by(&c)).unwrap());
    }

    #[test]
    fn free_reduction_preserves_the_braid(w in letters(4)) {
        prop_assert!(braids_equal(&w, &w.free_reduced()).unwrap());
        prop_assert_eq!(w.exponent_sum(), w.free_reduced().exponent_sum());
    }

    #[test]
    fn conjugacy_key_is_rotation_invariant(v in prop::collection::vec(prop_oneof![Just(1i64), Just(-1), Just(2), Just(-2), Just(3), Just(-3)], 1..12), k in 0usize..12) {
        let w = FreeWord::from_letters(3, &v).unwrap();
        let ls = w.letters();
        if !ls.is_empty() {
            let k = k % ls.len();
            let rot: Vec<i64> = ls[k..].iter().chain(&ls[..k]).copied().collect();
            let r = FreeWord::from_letters(3, &rot).unwrap();
            prop_assert_eq!(w.conjugacy_key(), r.conjugacy_key());
        }
    }
}
