use std::sync::Arc;

use lambdacoh::cochain::TupleSampler;
use lambdacoh::cohomology::{
    compare_universes, compute_H0, compute_H1, derivation_cochain, extend_derivation, extend_derivation_along,
    is_derivation, solve_coboundary_1, DerivationSpec,
};
use lambdacoh::exactalg::{solve_linear, AbelianGroup, IntMatrix};
use lambdacoh::lambdaring::{
    endbar_contains, frobenius_map, AdamsFamily, Endomorphism, FactoredInt, Preset, PrimeUniverse,
};
use lambdacoh::sampling::{random_derivation, random_endbar};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn universe(ps: &[u64]) -> PrimeUniverse {
    PrimeUniverse::new(ps.to_vec()).unwrap()
}

fn family(preset: Preset, ps: &[u64]) -> AdamsFamily {
    preset.family(universe(ps)).unwrap()
}

/// Rank over Q by fraction-free elimination on i64 rows.
fn rational_rank(mut rows: Vec<Vec<i128>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let (a, b) = (rows[rank][c], rows[r][c]);
                for k in 0..cols {
                    rows[r][k] = rows[r][k] * a - rows[rank][k] * b;
                }
                let g = rows[r].iter().fold(0i128, |g, &x| g.gcd(&x));
                if g > 1 {
                    rows[r].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n))
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|a| m & (1 << a) != 0).collect())
        .collect()
}

/// `Z^n / span(gens)` from determinantal divisors: `d_k = D_k / D_{k-1}` with `D_k` the gcd of k-minors.
fn quotient_by_minors(n: usize, gens: &[Vec<i128>]) -> AbelianGroup {
    let r = rational_rank(gens.to_vec());
    let mut divisors = vec![1i128];
    for k in 1..=r {
        let mut g = 0i128;
        for rows in choose(gens.len(), k) {
            for cols in choose(n, k) {
                let sub: Vec<Vec<i128>> = rows.iter().map(|&i| cols.iter().map(|&j| gens[i][j]).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        divisors.push(g);
    }
    let factors: Vec<BigInt> = (1..=r).map(|k| BigInt::from(divisors[k] / divisors[k - 1])).collect();
    AbelianGroup::new(n - r, &factors).unwrap()
}

fn as_i128(e: &Endomorphism) -> Vec<i128> {
    e.to_vector().iter().map(|x| i128::try_from(x).unwrap()).collect()
}

/// All 2x2 matrices with entries in `lo..=hi`.
fn small_matrices(lo: i64, hi: i64) -> Vec<Endomorphism> {
    let mut out = Vec::new();
    for a in lo..=hi {
        for b in lo..=hi {
            for c in lo..=hi {
                for d in lo..=hi {
                    out.push(Endomorphism::from_rows(&[[a, b], [c, d]]));
                }
            }
        }
    }
    out
}

#[test]
fn h0_of_integers_is_generated_by_identity() {
    for ps in [&[2u64][..], &[2, 3], &[2, 3, 5]] {
        let h0 = compute_H0(&family(Preset::Z, ps));
        assert_eq!(h0.group.to_string(), "Z^1");
        assert_eq!(h0.basis[0].to_vector()[0].magnitude(), &1u32.into());
    }
}

#[test]
fn h0_basis_is_frobenius_compatible_and_central() {
    for preset in Preset::ALL {
        let fam = family(preset, &[2, 3, 5]);
        let h0 = compute_H0(&fam);
        let d = fam.rank();
        let mut basis = IntMatrix::zeros(d * d, h0.basis.len());
        for (c, b) in h0.basis.iter().enumerate() {
            assert!(endbar_contains(b, fam.ring(), fam.universe()));
            for n in [2u64, 3, 5, 12, 30, 45] {
                let psi = fam.adams_at_int(n).unwrap();
                assert_eq!(psi.compose(b), b.compose(&psi), "{} basis {c} at {n}", preset.name());
            }
            for (r, x) in b.to_vector().into_iter().enumerate() {
                basis.set(r, c, x);
            }
        }
        // identity, and hence every k * identity, lies in the lattice
        let id = Endomorphism::identity(d).to_vector();
        assert!(solve_linear(&basis, &id).is_some(), "{}", preset.name());
    }
}

#[test]
fn h0_of_rc2_matches_brute_force() {
    let fam = family(Preset::RC2, &[2, 3]);
    let members: Vec<Vec<i128>> = small_matrices(-2, 2)
        .into_iter()
        .filter(|g| {
            fam.generators().values().all(|a| a.compose(g) == g.compose(a))
                && endbar_contains(g, fam.ring(), fam.universe())
        })
        .map(|g| as_i128(&g))
        .collect();
    let h0 = compute_H0(&fam);
    assert_eq!(h0.group, AbelianGroup::free(rational_rank(members.clone())));
    assert_eq!(h0.group.free_rank, 2);
    // every brute-force member is an integer combination of the computed basis
    let mut basis = IntMatrix::zeros(4, h0.basis.len());
    for (c, b) in h0.basis.iter().enumerate() {
        for (r, x) in b.to_vector().into_iter().enumerate() {
            basis.set(r, c, x);
        }
    }
    for m in &members {
        let v: Vec<BigInt> = m.iter().map(|&x| BigInt::from(x)).collect();
        assert!(solve_linear(&basis, &v).is_some());
    }
}

#[test]
fn h1_of_integers_has_one_generator_per_prime() {
    for (ps, rank) in [(&[2u64][..], 1), (&[2, 3], 2), (&[2, 3, 5], 3)] {
        let h1 = compute_H1(&family(Preset::Z, ps)).unwrap();
        assert_eq!(h1.group, AbelianGroup::free(rank));
        assert_eq!(h1.group.to_string(), format!("Z^{rank}"));
    }
}

#[test]
fn h1_of_rc2_at_two_matches_minor_oracle() {
    // with one prime every X is a cocycle; coboundaries are [A_2, g] / 2 for g commuting with F_2 mod 2
    let fam = family(Preset::RC2, &[2]);
    let a2 = fam.generator(2).unwrap().clone();
    let f2 = frobenius_map(fam.ring(), 2);
    let two = BigInt::from(2);
    let mut images: Vec<Vec<i128>> = Vec::new();
    for g in small_matrices(0, 2) {
        if !f2.commutator(&g).reduce_mod(&two).is_zero() {
            continue;
        }
        let img = a2.commutator(&g).exact_div(&two).expect("inner derivations are divisible");
        let v = as_i128(&img);
        if v.iter().any(|&x| x != 0) && !images.contains(&v) {
            images.push(v);
        }
    }
    let expected = quotient_by_minors(4, &images);
    let h1 = compute_H1(&fam).unwrap();
    assert_eq!(h1.group, expected);
    assert_eq!(h1.group.to_string(), "Z^2");
}

#[test]
fn h1_representatives_are_derivations() {
    for preset in Preset::ALL {
        let fam = family(preset, &[2, 3]);
        let h1 = compute_H1(&fam).unwrap();
        assert_eq!(h1.free_representatives.len(), h1.group.free_rank);
        for rep in h1.free_representatives.iter().chain(&h1.torsion_representatives) {
            assert!(is_derivation(&fam, rep).unwrap());
            assert!(solve_coboundary_1(&fam, rep).unwrap().is_none(), "{}", preset.name());
        }
    }
}

#[test]
fn universe_comparison_reports_each_universe() {
    let fam = family(Preset::Z, &[2, 3, 5]);
    let rows = compare_universes(&fam, &[universe(&[2]), universe(&[2, 3]), universe(&[2, 3, 5])]).unwrap();
    let h1: Vec<String> = rows.iter().map(|r| r.h1.to_string()).collect();
    assert_eq!(h1, ["Z^1", "Z^2", "Z^3"]);
    assert!(rows.iter().all(|r| r.h0 == AbelianGroup::free(1)));
}

#[test]
fn integer_extension_values() {
    let fam = family(Preset::Z, &[2, 3]);
    let spec = DerivationSpec::new(
        universe(&[2, 3]),
        1,
        [(2, Endomorphism::from_rows(&[[2]])), (3, Endomorphism::from_rows(&[[3]]))].into(),
    )
    .unwrap();
    let at = |n| extend_derivation(&fam, &spec, &FactoredInt::factor(n, fam.universe()).unwrap()).unwrap();
    assert_eq!(at(12), Endomorphism::from_rows(&[[7]]));
    assert_eq!(at(4), Endomorphism::from_rows(&[[4]]));
    assert_eq!(at(1), Endomorphism::zero(1));
}

#[test]
fn inner_derivations_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for preset in Preset::ALL {
        let fam = family(preset, &[2, 3, 5]);
        for _ in 0..5 {
            let g = random_endbar(&mut rng, &fam, 3);
            let values = fam.generators().iter().map(|(&p, a)| (p, a.commutator(&g))).collect();
            let target = DerivationSpec::new(fam.universe().clone(), fam.rank(), values).unwrap();
            assert!(is_derivation(&fam, &target).unwrap());
            let w = solve_coboundary_1(&fam, &target).unwrap().expect("inner derivation has a witness");
            assert!(endbar_contains(&w, fam.ring(), fam.universe()));
            for (&p, a) in fam.generators() {
                assert_eq!(&a.commutator(&w), target.value(p));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn peeling_order_does_not_matter(seed in any::<u64>(), exps in prop::collection::vec(0u32..3, 3)) {
        let preset = [Preset::Z, Preset::RC2, Preset::RC3][(seed % 3) as usize];
        let fam = family(preset, &[2, 3, 5]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = random_derivation(&mut rng, &fam, 3).unwrap();
        let n = FactoredInt::from_exponents([(2, exps[0]), (3, exps[1]), (5, exps[2])]);
        prop_assume!(n.total_exponent() <= 6);
        let canonical = extend_derivation(&fam, &spec, &n).unwrap();
        let mut order = n.prime_sequence();
        for _ in 0..4 {
            order.shuffle(&mut rng);
            prop_assert_eq!(&extend_derivation_along(&fam, &spec, &order).unwrap(), &canonical);
        }
    }

    #[test]
    fn derivations_are_cocycles(seed in any::<u64>()) {
        let fam = Arc::new(family(Preset::RC3, &[2, 3]));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = random_derivation(&mut rng, &fam, 2).unwrap();
        let df = derivation_cochain(fam.clone(), spec).unwrap().differential().unwrap();
        for args in TupleSampler::new(seed, 10, 2).tuples(fam.universe(), 2) {
            prop_assert!(df.evaluate(&args).unwrap().is_zero());
        }
    }
}
