mod common;

use common::{brute_shuffle, brute_shuffle_tensor, q, t, w};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sigpoly::{sampling, TensorElem, Word};

fn letters(dim: u8, max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(1..=dim, 0..=max_len)
}

fn word_tensor(dim: usize, letters: &[u8]) -> TensorElem {
    TensorElem::word(dim, Word::from_letters(letters.iter().copied())).unwrap()
}

#[test]
fn repeated_letter_shuffles() {
    let two = t("2", 2);
    let cube = two.shuffle(&two).unwrap().shuffle(&two).unwrap();
    assert_eq!(cube, t("6*222", 2));
    assert_eq!(t("1", 2).shuffle(&t("2", 2)).unwrap(), t("12 + 21", 2));
}

#[test]
fn central_binomial_counts() {
    for k in 1..=5usize {
        let a = vec![1u8; k];
        let b = vec![2u8; k];
        let expected: u64 = (1..=k as u64).fold(1, |acc, i| acc * (k as u64 + i) / i);
        let total: i64 = brute_shuffle(&a, &b).values().sum();
        assert_eq!(total as u64, expected);
        let product = word_tensor(2, &a).shuffle(&word_tensor(2, &b)).unwrap();
        assert_eq!(product.num_terms() as u64, expected);
        assert!(product.iter().all(|(_, c)| *c == q(1, 1)));
    }
}

#[test]
fn unit_and_empty_word() {
    let a = t("3*12 - 1/2*2", 2);
    let e = TensorElem::unit(2);
    assert_eq!(e.shuffle(&a).unwrap(), a);
    assert_eq!(a.concat(&e).unwrap(), a);
    assert!(a.half_shuffle(&e).is_err());
    assert!(TensorElem::zero(2).shuffle(&a).unwrap().is_zero());
}

#[test]
fn mismatched_dimensions_are_rejected() {
    assert!(t("1", 2).shuffle(&t("1", 3)).is_err());
    assert!(t("1", 2).concat(&t("1", 3)).is_err());
    assert!(Word::parse("13", 2).is_err());
}

#[test]
fn half_shuffle_on_letters() {
    // 1 ≻ 2 = (1 ⧢ e)·2 = 12
    assert_eq!(t("1", 2).half_shuffle(&t("2", 2)).unwrap(), t("12", 2));
    // 12 ≻ 2 = (12 ⧢ e)·2; 1 ≻ 22 = (1 ⧢ 2)·2
    assert_eq!(t("12", 2).half_shuffle(&t("2", 2)).unwrap(), t("122", 2));
    assert_eq!(
        t("1", 2).half_shuffle(&t("22", 2)).unwrap(),
        t("122 + 212", 2)
    );
}

proptest! {
    #[test]
    fn shuffle_matches_placement_enumeration(a in letters(3, 4), b in letters(3, 4)) {
        let fast = word_tensor(3, &a).shuffle(&word_tensor(3, &b)).unwrap();
        let slow = brute_shuffle_tensor(&word_tensor(3, &a), &word_tensor(3, &b));
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn shuffle_is_commutative_and_associative(a in letters(2, 3), b in letters(2, 3), c in letters(2, 3)) {
        let (a, b, c) = (word_tensor(2, &a), word_tensor(2, &b), word_tensor(2, &c));
        prop_assert_eq!(a.shuffle(&b).unwrap(), b.shuffle(&a).unwrap());
        prop_assert_eq!(
            a.shuffle(&b).unwrap().shuffle(&c).unwrap(),
            a.shuffle(&b.shuffle(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn concat_is_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = sampling::tensor(&mut rng, 3, 3, 4);
        let b = sampling::tensor(&mut rng, 3, 3, 4);
        let c = sampling::tensor(&mut rng, 3, 3, 4);
        prop_assert_eq!(
            a.concat(&b).unwrap().concat(&c).unwrap(),
            a.concat(&b.concat(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn half_shuffle_recursion_and_laws(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = sampling::tensor(&mut rng, 2, 3, 3);
        let y = sampling::tensor(&mut rng, 2, 3, 3);
        let z = sampling::tensor(&mut rng, 2, 2, 3);

        // x ≻ y summed over the last letter of y
        let mut expected = TensorElem::zero(2);
        for (v, c) in y.iter() {
            let (head, last) = v.split_last().unwrap();
            let shuffled = x.shuffle(&TensorElem::word(2, head).unwrap()).unwrap();
            expected += &shuffled.t_plus(last).unwrap().scale(c);
        }
        prop_assert_eq!(x.half_shuffle(&y).unwrap(), expected);

        let sym_xy = &x.half_shuffle(&y).unwrap() + &y.half_shuffle(&x).unwrap();
        prop_assert_eq!(&sym_xy, &x.shuffle(&y).unwrap());

        // (x ≻ y + y ≻ x) ≻ z = x ≻ (y ≻ z)
        let lhs = sym_xy.half_shuffle(&z).unwrap();
        prop_assert_eq!(lhs, x.half_shuffle(&y.half_shuffle(&z).unwrap()).unwrap());
    }

    #[test]
    fn t_plus_and_t_minus(seed in any::<u64>(), letter in 1u8..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = sampling::tensor(&mut rng, 3, 3, 4);
        let y = sampling::tensor(&mut rng, 3, 3, 4);
        prop_assert_eq!(x.t_plus(letter).unwrap().t_minus(letter).unwrap(), x.clone());
        // x ≻ T+_i(y) = T+_i(x ⧢ y)
        let lhs = x.half_shuffle(&y.t_plus(letter).unwrap()).unwrap();
        prop_assert_eq!(lhs, x.shuffle(&y).unwrap().t_plus(letter).unwrap());
    }

    #[test]
    fn parse_and_print(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = sampling::tensor(&mut rng, 3, 4, 5);
        prop_assert_eq!(TensorElem::parse_text(&x.to_string(), 3).unwrap(), x);
    }
}

#[test]
fn pairing_is_the_coefficient_sum() {
    let a = t("2*1 + 1/3*12 - 21", 2);
    let b = t("5*12 + 7*21 + 22", 2);
    assert_eq!(a.pair(&b).unwrap(), q(5, 3) - q(7, 1));
    assert_eq!(a.pairing(&w("12", 2)).unwrap(), q(1, 3));
}
