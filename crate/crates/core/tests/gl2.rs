use serre_core::gl2::*;

const PRIMES: [u32; 5] = [3, 5, 7, 11, 13];

fn gl2_order(p: usize) -> usize {
    (p * p - 1) * (p * p - p)
}

#[test]
fn cartan_orders() {
    for p in PRIMES {
        let pu = p as usize;
        let cs = split_cartan(p).unwrap();
        let cns = nonsplit_cartan(p).unwrap();
        assert_eq!(cs.order(), (pu - 1) * (pu - 1), "p = {p}");
        assert_eq!(cns.order(), pu * pu - 1, "p = {p}");
        let ns = cartan_normalizer(&cs);
        let nns = cartan_normalizer(&cns);
        assert_eq!(ns.order(), 2 * cs.order(), "p = {p}");
        assert_eq!(nns.order(), 2 * cns.order(), "p = {p}");
        assert!(cs.is_subgroup_of(&ns) && cns.is_subgroup_of(&nns));
        for g in [&cs, &cns, &ns, &nns] {
            assert_eq!(gl2_order(pu) % g.order(), 0);
        }
        if p <= 7 {
            assert!(ns.validate() && nns.validate());
        }
    }
    assert_eq!(nonsplit_cartan(7).unwrap().order(), 48);
    assert_eq!(cartan_normalizer(&nonsplit_cartan(7).unwrap()).order(), 96);
    assert_eq!(split_cartan(5).unwrap().order(), 16);
    assert_eq!(cartan_normalizer(&split_cartan(5).unwrap()).order(), 32);
    assert_eq!(nonsplit_cartan(3).unwrap().order(), 8);
}

#[test]
fn cartans_from_closure_agree_with_definition() {
    // C_ns(p) is exactly {[[x, n y], [y, x]]} minus zero
    for p in [5u32, 7] {
        let cns = nonsplit_cartan(p).unwrap();
        for x in 0..p {
            for y in 0..p {
                if x != 0 || y != 0 {
                    assert!(cns.contains(&embed_fp2(p, x, y)));
                }
            }
        }
    }
}

#[test]
fn prime_checks() {
    assert_eq!(split_cartan(2).unwrap_err(), Gl2Error::EvenPrime(2));
    assert!(Gl2Error::EvenPrime(2).to_string().contains("p >= 3 required for Cartan constructions"));
    assert_eq!(nonsplit_cartan(9).unwrap_err(), Gl2Error::NotPrime(9));
    assert!(matches!(gl2(37), Err(Gl2Error::TooLarge { .. })));
    assert!(matches!(
        MatrixGroup::generate(5, &[Mat2::new(5, 1, 2, 2, 4)]),
        Err(Gl2Error::Singular(_))
    ));
}

#[test]
fn absolute_irreducibility() {
    let p = 7;
    let diag = MatrixGroup::generate(p, &[Mat2::diag(3, 1)]).unwrap();
    let w = is_absolutely_irreducible(&diag).unwrap_err();
    assert!(w.is_rational());
    // witness is (1, 0)
    assert_eq!((w.x.x, w.x.y, w.y.x, w.y.y), (1, 0, 0, 0));
    assert!(is_absolutely_irreducible(&gl2(5).unwrap()).is_ok());
    let cns = nonsplit_cartan(7).unwrap();
    let w = is_absolutely_irreducible(&cns).unwrap_err();
    assert!(!w.is_rational());
    // Cartan groups are never absolutely irreducible
    for p in PRIMES {
        assert!(is_absolutely_irreducible(&split_cartan(p).unwrap()).is_err());
        assert!(is_absolutely_irreducible(&nonsplit_cartan(p).unwrap()).is_err());
    }
}

#[test]
fn classification_examples() {
    let nns = cartan_normalizer(&nonsplit_cartan(7).unwrap());
    assert_eq!(classify(&nns).tag, ImageTag::NormalizerNonsplitNotCartan);
    assert_eq!(classify(&sl2(5).unwrap()).tag, ImageTag::ContainsSl2);
    let weyl = Mat2::new(7, 0, 1, 1, 0);
    let g = MatrixGroup::generate(7, &[Mat2::diag(3, 1), weyl]).unwrap();
    assert_eq!(classify(&g).tag, ImageTag::NormalizerSplitNotCartan);
    // exhaustive containment check: inside N_s(7), not inside C_s(7)
    let ns = cartan_normalizer(&split_cartan(7).unwrap());
    assert!(g.is_subgroup_of(&ns));
    assert!(!g.is_subgroup_of(&split_cartan(7).unwrap()));
    assert_eq!(classify(&split_cartan(7).unwrap()).tag, ImageTag::ContainedInSplitCartan);
    assert_eq!(classify(&nonsplit_cartan(7).unwrap()).tag, ImageTag::ContainedInNonsplitCartan);
    let borel = MatrixGroup::generate(7, &[Mat2::diag(3, 1), Mat2::new(7, 1, 1, 0, 1)]).unwrap();
    assert_eq!(classify(&borel).tag, ImageTag::Reducible);
    // conjugated normalizers are found too
    let h = Mat2::new(7, 1, 2, 3, 5);
    assert_eq!(classify(&ns.conjugate(&h)).tag, ImageTag::NormalizerSplitNotCartan);
    assert_eq!(classify(&nns.conjugate(&h)).tag, ImageTag::NormalizerNonsplitNotCartan);
}

#[test]
fn exceptional_projective_images() {
    // PGL2(F5) = S5 and PSL2(F5) = A5
    let s = sl2(5).unwrap();
    assert_eq!(s.projective_order(), 60);
    // S4 as 2O in SL2(F7) via the binary octahedral group: search for a
    // subgroup of projective order 24 among pairs of elements of small order.
    let p = 7;
    let elems = sl2(p).unwrap().elements().to_vec();
    let mut found = None;
    'outer: for a in elems.iter().filter(|m| m.projective_order(p) == 4) {
        for b in elems.iter().filter(|m| m.projective_order(p) == 3) {
            let g = MatrixGroup::generate(p, &[*a, *b]).unwrap();
            if g.projective_order() == 24 {
                found = Some(g);
                break 'outer;
            }
        }
    }
    let g = found.expect("S4 inside PGL2(F7)");
    assert_eq!(classify(&g).tag, ImageTag::ProjectiveS4);
}

#[test]
fn projective_orders() {
    let nns = cartan_normalizer(&nonsplit_cartan(7).unwrap());
    assert!(nns.has_element_of_projective_order(8));
    let triv = MatrixGroup::generate(7, &[Mat2::identity()]).unwrap();
    for n in 2..10 {
        assert!(!triv.has_element_of_projective_order(n));
    }
    assert!(split_cartan(7).unwrap().has_element_of_projective_order(6));
    assert_eq!(Mat2::diag(3, 1).projective_order(7), 6);
}

#[test]
fn plus_parts() {
    let g = gl2(7).unwrap();
    let plus = g.plus_part();
    assert_eq!(g.order(), 2016);
    assert_eq!(plus.order(), 1008);
    let s = sl2(5).unwrap();
    assert_eq!(s.plus_part().order(), s.order());
    let c = MatrixGroup::generate(7, &[Mat2::diag(3, 1)]).unwrap();
    let expected = MatrixGroup::generate(7, &[Mat2::diag(2, 1)]).unwrap();
    assert_eq!(c.plus_part().elements(), expected.elements());
    for p in [5u32, 7] {
        for g in [split_cartan(p).unwrap(), cartan_normalizer(&nonsplit_cartan(p).unwrap())] {
            let plus = g.plus_part();
            assert!(g.order() == plus.order() || g.order() == 2 * plus.order());
            assert_eq!(plus.plus_part().elements(), plus.elements());
        }
    }
}

#[test]
fn plus_part_claims() {
    for p in [5u32, 7, 11, 13] {
        let r = verify_ordinary_plus_part_claim(p, 0).unwrap();
        assert!(r.exhaustive && r.holds(), "ordinary, p = {p}: {:?}", r.counterexamples.first());
        let r = verify_supersingular_plus_part_claim(p, 0).unwrap();
        assert!(r.exhaustive && r.holds(), "supersingular, p = {p}");
    }
    // p = 3: g^2 = 1, so diag(g^2, 1) is trivial and the claim is vacuous
    assert!(!verify_ordinary_plus_part_claim(3, 0).unwrap().holds());
}

#[test]
fn inertia_shapes() {
    let ord = inertia_shape_subgroup(7, InertiaKind::Ordinary).unwrap();
    assert_eq!(ord.order(), 6);
    let mut dets: Vec<u32> = ord.elements().iter().map(|m| m.det(7)).collect();
    dets.sort();
    assert_eq!(dets, [1, 2, 3, 4, 5, 6]);
    for p in [5u32, 7, 11, 13] {
        let ss = inertia_shape_subgroup(p, InertiaKind::Supersingular).unwrap();
        let pu = p as usize;
        assert_eq!(ss.order(), pu * pu - 1);
        assert_eq!(ss.projective_order(), pu + 1);
        assert!(ss.is_subgroup_of(&nonsplit_cartan(p).unwrap()));
        // outside every split Cartan: no rational eigenline
        assert!(common_eigenlines(&ss).iter().all(|l| !l.is_rational()));
    }
    // its norm-one part has order p + 1
    let ss = inertia_shape_subgroup(7, InertiaKind::Supersingular).unwrap();
    assert_eq!(ss.sl2_part_order(), 8);
}

#[test]
fn dichotomy_small_run() {
    for p in [7u32, 11, 13] {
        let r = run_dichotomy_trials(p, 7, 0..2000).unwrap();
        assert!(r.holds(), "p = {p}: {:?}", r.counterexamples.first());
        assert!(r.hypotheses_met > 0);
        assert_eq!(
            r.trials,
            r.has_order_p + r.not_irreducible + r.no_long_projective_element + r.hypotheses_met
        );
    }
}

#[test]
fn dichotomy_fails_at_five() {
    let r = run_dichotomy_trials(5, 2024, 0..2000).unwrap();
    assert!(!r.holds());
    assert!(r.counterexamples.iter().all(|c| c.tag == ImageTag::ProjectiveS4 && c.projective_order == 24));
}

#[test]
fn dichotomy_partition_invariance() {
    let whole = run_dichotomy_trials(7, 99, 0..600).unwrap();
    let parts = run_dichotomy_trials(7, 99, 0..200)
        .unwrap()
        .merge(run_dichotomy_trials(7, 99, 200..450).unwrap())
        .merge(run_dichotomy_trials(7, 99, 450..600).unwrap());
    assert_eq!(whole, parts);
    let r5a = run_dichotomy_trials(5, 3, 0..300).unwrap();
    let r5b = run_dichotomy_trials(5, 3, 150..300).unwrap().merge(run_dichotomy_trials(5, 3, 0..150).unwrap());
    assert_eq!(r5a, r5b);
}

#[test]
fn matrix_basics() {
    let p = 11;
    let m = Mat2::new(p, 3, -1, 4, 7);
    assert_eq!(m, Mat2 { a: 3, b: 10, c: 4, d: 7 });
    let mi = m.inverse(p).unwrap();
    assert_eq!(m.mul(&mi, p), Mat2::identity());
    assert_eq!(Mat2::decode(m.encode(p), p), m);
    assert_eq!(m.pow(m.order(p), p), Mat2::identity());
    assert!(Mat2::new(p, 1, 5, 0, 1).is_nontrivial_unipotent(p));
    assert!(!Mat2::identity().is_nontrivial_unipotent(p));
}
