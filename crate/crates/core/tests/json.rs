use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sigpoly::{
    path_signature, sampling, JsonDocument, LetterMap, PiecewisePolyPath, PolynomialMap,
    TensorElem, TruncatedSignature,
};

fn round_trip<T: JsonDocument + PartialEq + std::fmt::Debug>(
    value: &T,
) -> Result<(), TestCaseError> {
    let text = value.to_json();
    let back = T::from_json(&text).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&back, value);
    prop_assert_eq!(back.to_json(), text);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        round_trip::<TensorElem>(&sampling::tensor(&mut rng, 3, 3, 5))?;
        round_trip::<PolynomialMap>(&sampling::polynomial_map(&mut rng, 2, 3, 3, true))?;
        let path = sampling::path(&mut rng, 2, 3, 3);
        round_trip::<PiecewisePolyPath>(&path)?;
        round_trip::<TruncatedSignature>(&path_signature(&path, 3))?;
        let images = (0..2).map(|_| sampling::tensor(&mut rng, 2, 2, 3)).collect();
        round_trip::<LetterMap>(&LetterMap::new(2, images).unwrap())?;
    }
}

#[test]
fn malformed_documents_are_rejected() {
    assert!(
        TensorElem::from_json(r#"{"dim": 2, "terms": [{"word": "13", "coeff": "1"}]}"#).is_err()
    );
    assert!(
        TensorElem::from_json(r#"{"dim": 2, "terms": [{"word": "1", "coeff": "1/0"}]}"#).is_err()
    );
    assert!(
        PolynomialMap::from_json(r#"{"domain_dim": 2, "codomain_dim": 2, "components": []}"#)
            .is_err()
    );
    assert!(PiecewisePolyPath::from_json(r#"{"dimension": 1, "segments": []}"#).is_err());
    let mismatched = r#"{"dimension": 2, "segments": [{"components": [
        {"nvars": 1, "terms": [{"exps": [1], "coeff": "1"}]}]}]}"#;
    assert!(PiecewisePolyPath::from_json(mismatched).is_err());
}
