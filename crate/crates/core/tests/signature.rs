mod common;

use common::{q, shuffle_identity, t, uni, w};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sigpoly::{
    check_dual_concat, check_tree_like, chen_concat, exp_concat, lies_in_variety, path_signature,
    sampling, segment_signature, transform, transform_path, Error, PathSegment, PiecewisePolyPath,
    Poly, PolynomialMap, Rational, TensorElem, UniPoly,
};

fn segment(components: &[&[i64]]) -> PathSegment {
    PathSegment::from_unipolys(components.iter().map(|c| uni(c)).collect()).unwrap()
}

fn origin(d: usize) -> Vec<Rational> {
    vec![q(0, 1); d]
}

#[test]
fn axis_segments() {
    let path =
        PiecewisePolyPath::polyline(&[origin(2), vec![q(1, 1), q(0, 1)], vec![q(1, 1), q(1, 1)]])
            .unwrap();
    let sig = path_signature(&path, 3);
    assert_eq!(sig.coeff(&w("12", 2)), q(1, 1));
    assert_eq!(sig.coeff(&w("21", 2)), q(0, 1));
    assert_eq!(sig.coeff(&w("11", 2)), q(1, 2));
    assert_eq!(sig.coeff(&w("112", 2)), q(1, 2));
    assert_eq!(sig.coeff(&w("122", 2)), q(1, 2));
}

#[test]
fn straight_line_is_the_exponential() {
    let inc = [q(2, 1), q(-1, 3)];
    let line = PiecewisePolyPath::single(PathSegment::linear(&inc).unwrap());
    let log = &t("2*1", 2) + &t("-1/3*2", 2);
    assert_eq!(path_signature(&line, 4), exp_concat(&log, 4).unwrap());
    let exp = exp_concat(&t("1 + 2", 2), 2).unwrap();
    assert_eq!(
        exp.data(),
        &t("e + 1 + 2 + 1/2*11 + 1/2*12 + 1/2*21 + 1/2*22", 2)
    );
}

#[test]
fn moment_curve_values() {
    let sig = segment_signature(&segment(&[&[0, 1], &[0, 0, 1]]), 3);
    assert_eq!(sig.coeff(&w("12", 2)), q(2, 3));
    assert_eq!(sig.coeff(&w("21", 2)), q(1, 3));
    assert_eq!(sig.coeff(&w("222", 2)), q(1, 6));
    assert_eq!(sig.coeff(&w("112", 2)), q(1, 4));
}

#[test]
fn level_zero_and_constant_paths() {
    let constant = PiecewisePolyPath::single(segment(&[&[5], &[-2]]));
    assert!(path_signature(&constant, 5).is_trivial());
    let sig = path_signature(
        &sampling::path(&mut ChaCha8Rng::seed_from_u64(1), 3, 2, 3),
        0,
    );
    assert_eq!(sig.data(), &TensorElem::unit(3));
}

#[test]
fn reparametrisation_invariance() {
    let seg = segment(&[&[1, 2, -1], &[0, 0, 0, 3], &[0, -1]]);
    let squared = seg.reparametrised(&uni(&[0, 0, 1]));
    let mixed = seg.reparametrised(&UniPoly::new(vec![q(0, 1), q(1, 2), q(0, 1), q(1, 2)]));
    let base = segment_signature(&seg, 4);
    assert_eq!(segment_signature(&squared, 4), base);
    assert_eq!(segment_signature(&mixed, 4), base);
}

#[test]
fn reversal_inverts_the_signature() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let path = sampling::path(&mut rng, 2, 2, 3);
    let forward = path_signature(&path, 4);
    let back = path_signature(&path.reversed(), 4);
    assert!(chen_concat(&forward, &back).unwrap().is_trivial());
    let loop_ = path.concat(&path.reversed()).unwrap();
    assert!(check_tree_like(&path_signature(&loop_, 4)));
}

#[test]
fn variety_membership() {
    let parabola = PolynomialMap::new(
        2,
        vec![&Poly::var(2, 2).unwrap() - &Poly::var(2, 1).unwrap().pow(2)],
    )
    .unwrap();
    let on = PiecewisePolyPath::single(segment(&[&[0, 1], &[0, 0, 1]]));
    let off = PiecewisePolyPath::single(segment(&[&[0, 1], &[0, 0, 0, 1]]));
    assert!(lies_in_variety(&parabola, &on).unwrap());
    assert!(!lies_in_variety(&parabola, &off).unwrap());
    // The second piece is translated to start where the first ends, off the curve.
    let broken = PiecewisePolyPath::new(vec![
        segment(&[&[0, 1], &[0, 0, 1]]),
        segment(&[&[0, 1], &[0, 0, 1]]),
    ])
    .unwrap();
    assert!(!lies_in_variety(&parabola, &broken).unwrap());
}

#[test]
fn dual_concat_special_cases() {
    let zero = PiecewisePolyPath::single(segment(&[&[0], &[0]]));
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let y = sampling::path_from_origin(&mut rng, 2, 1, 2);
    let p = sampling::polynomial_map(&mut rng, 2, 2, 2, false);
    assert!(check_dual_concat(&p, &zero, &y, 2).unwrap());
    let lin = PolynomialMap::linear(&[vec![q(1, 1), q(-2, 1)], vec![q(1, 3), q(0, 1)]]).unwrap();
    let x = sampling::path_from_origin(&mut rng, 2, 2, 2);
    assert!(check_dual_concat(&lin, &x, &y, 3).unwrap());
    let moved = PiecewisePolyPath::single(segment(&[&[1, 1], &[0, 1]]));
    assert!(matches!(
        check_dual_concat(&lin, &moved, &y, 2),
        Err(Error::PathNotAtOrigin)
    ));
}

#[test]
fn transform_checks_truncation() {
    let sig = path_signature(
        &PiecewisePolyPath::single(segment(&[&[0, 1], &[0, 0, 1]])),
        3,
    );
    let p = PolynomialMap::new(2, vec![Poly::var(2, 1).unwrap().pow(2)]).unwrap();
    let err = transform(&p, &sig, 2, &origin(2)).unwrap_err();
    assert!(matches!(
        err,
        Error::TruncationShortfall { have: 3, need: 4 }
    ));
    assert_eq!(
        transform(&p, &sig, 1, &origin(2))
            .unwrap()
            .coeff(&w("1", 1)),
        q(1, 1)
    );
}

#[test]
fn half_shuffle_is_an_iterated_integral() {
    // F_{x ≻ v·i}(t) = ∫_0^t F_x F_v dX^i on the running signature.
    let seg = segment(&[&[0, 2, -1], &[1, 0, 0, 1]]);
    let running = seg.running_signature(5);
    let f = |word: &sigpoly::Word| running.get(word).cloned().unwrap_or_else(UniPoly::zero);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let x = sampling::word(&mut rng, 2, 1, 2);
        let v = sampling::word(&mut rng, 2, 1, 3);
        let (head, last) = v.split_last().unwrap();
        let dx = seg.components()[last as usize - 1].derivative();
        let expected = (&(&f(&x) * &f(&head)) * &dx).integral();
        let product = TensorElem::word(2, x.clone())
            .unwrap()
            .half_shuffle(&TensorElem::word(2, v.clone()).unwrap())
            .unwrap();
        let mut got = UniPoly::zero();
        for (u, c) in product.iter() {
            got += &f(u).scale(c);
        }
        assert_eq!(got, expected, "{x} ≻ {v}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn shuffle_identity_holds(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = rng.gen_range(1..=3);
        let path = sampling::path(&mut rng, dim, 2, 3);
        let sig = path_signature(&path, 4);
        prop_assert_eq!(shuffle_identity(&sig, 4), Ok(()));
    }

    #[test]
    fn chen_at_a_split_point(seed in any::<u64>(), num in 1i64..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let seg = sampling::segment(&mut rng, 2, 3);
        let s = q(num, 8);
        let left = segment_signature(&seg.restricted(&q(0, 1), &s), 4);
        let right = segment_signature(&seg.restricted(&s, &q(1, 1)), 4);
        prop_assert_eq!(chen_concat(&left, &right).unwrap(), segment_signature(&seg, 4));
    }

    #[test]
    fn level_one_is_the_increment(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let path = sampling::path(&mut rng, 3, 3, 3);
        let sig = path_signature(&path, 2);
        for (i, inc) in path.increment().iter().enumerate() {
            prop_assert_eq!(&sig.coeff(&sigpoly::Word::letter(i as u8 + 1)), inc);
        }
        // ⟨12⟩ + ⟨21⟩ is the product of the first two increments.
        let inc = path.increment();
        let sym = sig.coeff(&w("12", 3)) + sig.coeff(&w("21", 3));
        prop_assert_eq!(sym, &inc[0] * &inc[1]);
    }

    #[test]
    fn transform_agrees_with_image_path(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = sampling::transform_instance(&mut rng, &sampling::InstanceBounds { max_level: 2, ..Default::default() });
        let direct = path_signature(&inst.path.mapped(&inst.map).unwrap(), inst.level);
        prop_assert_eq!(transform_path(&inst.map, &inst.path, inst.level).unwrap(), direct);
    }
}
