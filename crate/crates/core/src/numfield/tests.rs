use super::*;
use alloc::string::ToString;
use alloc::vec;

#[test]
fn description_round_trip() {
    for m in [2, 3, 5, 10, 13] {
        let k = make_quadratic_field(m).unwrap();
        let again = NumberField::from_description(&k.to_description()).unwrap();
        assert_eq!(again.degree(), k.degree());
        assert_eq!(again.mult_table(), k.mult_table());
        assert_eq!(again.automorphisms(), k.automorphisms());
        assert_eq!(again.units(), k.units());
        assert_eq!(again.class_number(), k.class_number());
        assert_eq!(again.disc(), k.disc());
        assert_eq!(again.label(), k.label());
    }
}

#[test]
fn description_rejects_short_unit_basis() {
    let mut d = make_quadratic_field(5).unwrap().to_description();
    d.units.clear();
    let err = NumberField::from_description(&d).unwrap_err();
    assert_eq!(err, FieldError::UnitCount { expected: 1, got: 0 });
    assert!(err.to_string().starts_with("unit basis must have d-1"));
}

#[test]
fn description_rejects_bad_unit_norm() {
    let mut d = make_quadratic_field(5).unwrap().to_description();
    d.units = vec![vec![int(2), int(0)]];
    assert!(matches!(NumberField::from_description(&d), Err(FieldError::BadUnitNorm { index: 0, .. })));
}

#[test]
fn description_rejects_non_group_automorphisms() {
    let mut d = make_quadratic_field(5).unwrap().to_description();
    // identity twice: not a group of order 2
    d.automorphisms[1] = d.automorphisms[0].clone();
    assert!(matches!(NumberField::from_description(&d), Err(FieldError::NotGalois(_))));
    let mut d = make_quadratic_field(5).unwrap().to_description();
    d.automorphisms.pop();
    assert!(matches!(NumberField::from_description(&d), Err(FieldError::NotGalois(_))));
}

#[test]
fn description_rejects_complex_polynomial() {
    let mut d = make_quadratic_field(5).unwrap().to_description();
    d.poly = vec![int(1), int(1), int(1)];
    assert!(NumberField::from_description(&d).is_err());
}

#[test]
fn reduced_cycle_reaches_principal_form() {
    let k = make_quadratic_field(13).unwrap();
    for q in [3u64, 17, 23, 29] {
        for (_, p) in k.factor_rational_prime(q).unwrap() {
            let g = quadratic::principal_generator(&k, 13, &p).unwrap().unwrap();
            assert_eq!(IntegralIdeal::from_generators(&k, &[g]).unwrap(), p);
        }
    }
}

#[test]
fn prime_keys_are_ordered_by_norm() {
    let k = make_quadratic_field(5).unwrap();
    let mut keys: Vec<PrimeKey> = [2u64, 3, 5, 11]
        .iter()
        .flat_map(|&q| k.factor_rational_prime(q).unwrap().into_iter().map(|(key, _)| key))
        .collect();
    keys.sort();
    let shown: Vec<String> = keys.iter().map(|k| k.to_string()).collect();
    assert_eq!(shown, ["2.4.1", "5.5.1", "3.9.1", "11.11.1", "11.11.2"]);
    for s in shown.iter() {
        assert_eq!(&s.parse::<PrimeKey>().unwrap().to_string(), s);
    }
    assert!("2.4".parse::<PrimeKey>().is_err());
    assert!("02.4.1".parse::<PrimeKey>().is_err());
}

#[test]
fn verify_prime_rejects_wrong_data() {
    let k = make_quadratic_field(5).unwrap();
    let (_, p) = k.factor_rational_prime(11).unwrap().remove(0);
    let raw = IntegralIdeal::from_hnf(&k, p.hnf().clone()).unwrap();
    assert!(raw.clone().verify_prime(&k, 11, 1, 1).is_ok());
    assert!(raw.clone().verify_prime(&k, 11, 2, 1).is_err());
    assert!(raw.verify_prime(&k, 11, 1, 2).is_err());
    let eleven = IntegralIdeal::from_generators(&k, &[k.from_int(&int(11))]).unwrap();
    assert!(eleven.verify_prime(&k, 11, 1, 2).is_err());
}
