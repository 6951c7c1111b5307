use std::collections::BTreeMap;
use std::sync::Arc;

use lambdacoh::cochain::TupleSampler;
use lambdacoh::cohomology::{derivation_cochain, is_derivation, solve_coboundary_1, DerivationSpec};
use lambdacoh::deformation::{
    apply_automorphism, box_pairs, check_equivalent_extensions, deformation_at, infinitesimal, integrate, normalize,
    obstruction, try_extend, verify_deformation, Deformation, DeformationError, DeformationFile, FormalAutomorphism,
    MatrixSeries, DEFAULT_EXPONENT_BOUND,
};
use lambdacoh::lambdaring::{AdamsFamily, Endomorphism, FactoredInt, Preset, PrimeUniverse};
use lambdacoh::sampling::{random_automorphism, random_deformation, random_endbar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn family(preset: Preset, ps: &[u64]) -> Arc<AdamsFamily> {
    Arc::new(preset.family(PrimeUniverse::new(ps.to_vec()).unwrap()).unwrap())
}

fn scalar(x: i64) -> Endomorphism {
    Endomorphism::from_rows(&[[x]])
}

/// On the integers, `ψ^p_t = 1 + t p` through the given order.
fn integer_series(fam: &Arc<AdamsFamily>, order: usize) -> Deformation {
    let higher = fam
        .universe()
        .primes()
        .iter()
        .map(|&p| {
            let mut terms = vec![Endomorphism::zero(1); order];
            terms[0] = scalar(p as i64);
            (p, terms)
        })
        .collect();
    Deformation::new(fam.clone(), order, higher).unwrap()
}

fn at(fam: &AdamsFamily, n: u64) -> FactoredInt {
    FactoredInt::factor(n, fam.universe()).unwrap()
}

fn spec(fam: &AdamsFamily, values: BTreeMap<u64, Endomorphism>) -> DerivationSpec {
    DerivationSpec::new(fam.universe().clone(), fam.rank(), values).unwrap()
}

fn inner(fam: &AdamsFamily, g: &Endomorphism) -> DerivationSpec {
    spec(fam, fam.generators().iter().map(|(&p, a)| (p, a.commutator(g))).collect())
}

fn difference(a: &DerivationSpec, b: &DerivationSpec, fam: &AdamsFamily) -> DerivationSpec {
    spec(fam, a.values().iter().map(|(&p, v)| (p, v - b.value(p))).collect())
}

#[test]
fn series_at_composites() {
    let fam = family(Preset::Z, &[2, 3]);
    let d = integer_series(&fam, 3);
    let s = deformation_at(&d, &at(&fam, 12)).unwrap();
    assert_eq!(s, MatrixSeries::new([1, 7, 16, 12].map(scalar).to_vec()));
    assert_eq!(deformation_at(&d, &at(&fam, 1)).unwrap(), MatrixSeries::identity(1, 3));

    let rc = family(Preset::RC3, &[2, 3]);
    let t = Deformation::trivial(rc.clone(), 2).unwrap();
    for n in [1, 6, 18, 24] {
        let psi = rc.adams_at_int(n).unwrap();
        assert_eq!(deformation_at(&t, &at(&rc, n)).unwrap(), MatrixSeries::constant(psi, 2));
    }
}

#[test]
fn verification_reports() {
    let z = family(Preset::Z, &[2, 3, 5]);
    let report = verify_deformation(&integer_series(&z, 3), &box_pairs(z.universe(), 2)).unwrap();
    assert!(report.is_clean());
    assert_eq!(report.pairs_checked, 100);

    for preset in Preset::ALL {
        let fam = family(preset, &[2, 3]);
        let t = Deformation::trivial(fam.clone(), 2).unwrap();
        assert!(verify_deformation(&t, &box_pairs(fam.universe(), 2)).unwrap().is_clean());
    }

    // A_3 is the identity on RC2, so order-1 commutation reduces to [A_2, ψ^3_1] = 0
    let rc = family(Preset::RC2, &[2, 3]);
    let swap = Endomorphism::from_rows(&[[0, 1], [1, 0]]);
    assert!(!rc.generator(2).unwrap().commutator(&swap).is_zero());
    let higher = [(2, vec![Endomorphism::identity(2).scale(&2.into())]), (3, vec![swap.scale(&3.into())])].into();
    let bad = Deformation::new(rc.clone(), 1, higher).unwrap();
    let report = verify_deformation(&bad, &box_pairs(rc.universe(), 1)).unwrap();
    assert_eq!(report.commutation, vec![(2, 3)]);
    assert!(report.divisibility.is_empty());
}

#[test]
fn construction_rejects_indivisible_terms() {
    let fam = family(Preset::Z, &[2, 3]);
    let err = Deformation::new(fam, 1, [(3, vec![scalar(2)])].into()).unwrap_err();
    assert_eq!(err, DeformationError::NotDivisible { prime: 3, degree: 1 });
}

#[test]
fn infinitesimals() {
    let z = family(Preset::Z, &[2, 3, 5]);
    let f = infinitesimal(&integer_series(&z, 2)).unwrap();
    for p in [2, 3, 5] {
        assert_eq!(f.value(p), &scalar(p as i64));
    }
    assert!(infinitesimal(&Deformation::trivial(z, 1).unwrap()).unwrap().is_zero());

    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for preset in Preset::ALL {
        let fam = family(preset, &[2, 3]);
        let d = random_deformation(&mut rng, fam.clone(), 2, 2, 2).unwrap();
        let f = infinitesimal(&d).unwrap();
        assert!(is_derivation(&fam, &f).unwrap());
        let df = derivation_cochain(fam.clone(), f).unwrap().differential().unwrap();
        for args in TupleSampler::new(5, 30, 2).tuples(fam.universe(), 2) {
            assert!(df.evaluate(&args).unwrap().is_zero());
        }
    }
}

#[test]
fn automorphisms_act_as_expected() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let rc = family(Preset::RC3, &[2, 3]);
    let d = random_deformation(&mut rng, rc.clone(), 2, 2, 2).unwrap();
    assert_eq!(apply_automorphism(&d, &FormalAutomorphism::identity(rc.clone(), 2)).unwrap(), d);

    let z = family(Preset::Z, &[2, 3]);
    let dz = integer_series(&z, 2);
    let a = FormalAutomorphism::new(z.clone(), vec![scalar(4), scalar(-3)]).unwrap();
    assert_eq!(apply_automorphism(&dz, &a).unwrap(), dz);

    let other_order = FormalAutomorphism::identity(rc.clone(), 3);
    assert_eq!(apply_automorphism(&d, &other_order).unwrap_err(), DeformationError::ContextMismatch);

    let not_endbar = Endomorphism::from_rows(&[[0, 0], [0, 1]]);
    assert!(matches!(
        FormalAutomorphism::new(family(Preset::RC2, &[2]), vec![not_endbar]),
        Err(DeformationError::NotEndbar { degree: 1 })
    ));
}

#[test]
fn infinitesimal_class_is_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for preset in Preset::ALL {
        let fam = family(preset, &[2, 3]);
        for _ in 0..4 {
            let d = random_deformation(&mut rng, fam.clone(), 2, 2, 2).unwrap();
            let a = random_automorphism(&mut rng, fam.clone(), 2, 2).unwrap();
            let e = apply_automorphism(&d, &a).unwrap();
            assert!(verify_deformation(&e, &box_pairs(fam.universe(), 2)).unwrap().is_clean());
            let diff = difference(&infinitesimal(&e).unwrap(), &infinitesimal(&d).unwrap(), &fam);
            // Φ^{-1} A Φ = A + t [A, φ_1]
            assert_eq!(diff, inner(&fam, &a.coeffs()[0]));
            assert!(solve_coboundary_1(&fam, &diff).unwrap().is_some());
        }
    }
}

#[test]
fn obstruction_values() {
    let rc = family(Preset::RC2, &[2, 3]);
    let obs = obstruction(&Deformation::trivial(rc.clone(), 2).unwrap());
    for args in TupleSampler::new(1, 20, 2).tuples(rc.universe(), 2) {
        assert!(obs.evaluate(&args).unwrap().is_zero());
    }

    // f(n) = sum of e_p * p
    let z = family(Preset::Z, &[2, 3, 5]);
    let obs = obstruction(&integer_series(&z, 1));
    let f = |n: u64| -> i64 { at(&z, n).exponents().iter().map(|(&p, &e)| (p * u64::from(e)) as i64).sum() };
    for (m, n) in [(2, 3), (4, 5), (12, 30), (1, 5)] {
        assert_eq!(obs.evaluate_ints(&[m, n]).unwrap(), scalar(-f(m) * f(n)), "({m}, {n})");
    }
}

#[test]
fn obstruction_is_a_cocycle() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for preset in Preset::ALL {
        let fam = family(preset, &[2, 3]);
        let d = random_deformation(&mut rng, fam.clone(), 2, 2, 2).unwrap();
        let dobs = obstruction(&d).differential().unwrap();
        for args in TupleSampler::new(6, 100, 2).tuples(fam.universe(), 3) {
            assert!(dobs.evaluate(&args).unwrap().is_zero(), "{}", preset.name());
        }
    }
}

#[test]
fn extension_of_trivial_is_trivial() {
    for preset in Preset::ALL {
        let fam = family(preset, &[2, 3]);
        let t = Deformation::trivial(fam.clone(), 1).unwrap();
        let next = try_extend(&t, 2).unwrap().expect("obstruction vanishes");
        assert_eq!(next.order(), 2);
        // the solver may pick any derivation at the top; zero is always allowed
        assert!(is_derivation(&fam, &next.level(2).unwrap()).unwrap());
        assert_eq!(next.truncate(1).unwrap(), t);
    }
}

#[test]
fn integer_series_extends_through_order_four() {
    let z = family(Preset::Z, &[2, 3]);
    let mut d = integer_series(&z, 1);
    while d.order() < 4 {
        let next = try_extend(&d, DEFAULT_EXPONENT_BOUND).unwrap().expect("integer series extends");
        assert_eq!(next.truncate(d.order()).unwrap(), d);
        assert!(verify_deformation(&next, &box_pairs(z.universe(), 3)).unwrap().is_clean());
        d = next;
    }
    assert!(verify_deformation(&integer_series(&z, 3), &box_pairs(z.universe(), 3)).unwrap().is_clean());
}

#[test]
fn extensions_of_random_deformations_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    for preset in Preset::ALL {
        let fam = family(preset, &[2, 3]);
        let d = random_deformation(&mut rng, fam.clone(), 1, 2, 2).unwrap();
        if let Some(next) = try_extend(&d, 2).unwrap() {
            assert!(verify_deformation(&next, &box_pairs(fam.universe(), 2)).unwrap().is_clean());
            assert_eq!(next.truncate(1).unwrap(), d);
        }
    }
}

#[test]
fn integration_trace() {
    let z = family(Preset::Z, &[2, 3]);
    let (out, trace) = integrate(&integer_series(&z, 1), 3, 2).unwrap();
    assert_eq!(out.order(), 3);
    assert_eq!(trace.len(), 2);
    assert!(trace.iter().all(|s| s.extended));
    // Obs(2, 2) = -f(2)^2 at order 1
    assert!(!trace[0].obstruction_vanishes);

    let rc = family(Preset::RC2, &[2]);
    let (_, trace) = integrate(&Deformation::trivial(rc, 1).unwrap(), 2, 2).unwrap();
    assert!(trace[0].obstruction_vanishes && trace[0].extended);
}

#[test]
fn equivalence_of_extensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    for preset in [Preset::RC2, Preset::RC3] {
        let fam = family(preset, &[2, 3]);
        let base = random_deformation(&mut rng, fam.clone(), 1, 2, 2).unwrap();
        let d1 = try_extend(&base, 2).unwrap().expect("extension exists");
        let witness = check_equivalent_extensions(&d1, &d1).unwrap().unwrap();
        assert!(witness.coeffs().iter().all(Endomorphism::is_zero));

        let g = random_endbar(&mut rng, &fam, 3);
        let top = difference(&d1.level(2).unwrap(), &inner(&fam, &g), &fam);
        let d2 = base.extend_with(&top).unwrap();
        let auto = check_equivalent_extensions(&d1, &d2).unwrap().expect("inner difference");
        assert_eq!(apply_automorphism(&d2, &auto).unwrap(), d1);
        assert!(auto.coeffs()[0].is_zero());
        assert_eq!(inner(&fam, &auto.coeffs()[1]), inner(&fam, &g));
    }

    let z = family(Preset::Z, &[2, 3]);
    let t = Deformation::trivial(z.clone(), 1).unwrap();
    let d1 = t.extend_with(&DerivationSpec::zero(z.universe().clone(), 1)).unwrap();
    let d2 = t.extend_with(&spec(&z, [(2, scalar(2)), (3, scalar(-6))].into())).unwrap();
    assert!(verify_deformation(&d2, &box_pairs(z.universe(), 2)).unwrap().is_clean());
    assert_eq!(check_equivalent_extensions(&d1, &d2).unwrap(), None);

    let e = integer_series(&z, 2);
    assert_eq!(
        check_equivalent_extensions(&d1, &e).unwrap_err(),
        DeformationError::PrefixMismatch { prime: 2, degree: 1 }
    );
}

#[test]
fn normalization() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for preset in Preset::ALL {
        let fam = family(preset, &[2, 3]);
        let t = Deformation::trivial(fam.clone(), 2).unwrap();
        assert_eq!(normalize(&t, 1).unwrap(), t);

        let a = random_automorphism(&mut rng, fam.clone(), 2, 2).unwrap();
        let conj = apply_automorphism(&t, &a).unwrap();
        let once = normalize(&conj, 1).unwrap();
        assert!(once.level(1).unwrap().is_zero());
        let twice = normalize(&once, 2).unwrap();
        assert!(twice.level(1).unwrap().is_zero() && twice.level(2).unwrap().is_zero());
        assert_eq!(twice, t, "{}", preset.name());
    }

    let z = family(Preset::Z, &[2, 3]);
    assert_eq!(
        normalize(&integer_series(&z, 2), 1).unwrap_err(),
        DeformationError::NotCoboundary { level: 1 }
    );
    let rc = family(Preset::RC2, &[2, 3]);
    let d = random_deformation(&mut rng, rc, 2, 2, 2).unwrap();
    if !d.level(1).unwrap().is_zero() {
        assert!(matches!(normalize(&d, 2), Err(DeformationError::NotNormalized { level: 2, degree: 1 })));
    }
}

#[test]
fn file_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(48);
    let fam = family(Preset::RC3, &[2, 3, 5]);
    let d = random_deformation(&mut rng, fam.clone(), 2, 2, 2).unwrap();
    let text = DeformationFile::from_deformation(&d).to_json();
    let back = DeformationFile::from_json(&text).unwrap().to_deformation(fam.clone()).unwrap();
    assert_eq!(back, d);

    let z = family(Preset::Z, &[2, 3]);
    let parsed = DeformationFile::from_json(r#"{"order": 1, "terms": {"2": [[2]], "3": [[3]]}}"#).unwrap();
    assert_eq!(parsed.to_deformation(z.clone()).unwrap(), integer_series(&z, 1));
    assert!(DeformationFile::from_json(r#"{"order": 1, "terms": {}, "extra": 0}"#).is_err());
}

#[test]
fn random_deformations_are_not_all_trivial() {
    let mut rng = ChaCha8Rng::seed_from_u64(49);
    let fam = family(Preset::RC3, &[2, 3]);
    let nontrivial = (0..6)
        .filter(|_| {
            let d = random_deformation(&mut rng, fam.clone(), 2, 2, 2).unwrap();
            let f = infinitesimal(&d).unwrap();
            solve_coboundary_1(&fam, &f).unwrap().is_none()
        })
        .count();
    assert!(nontrivial > 0);
}
