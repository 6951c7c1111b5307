//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use lambdacoh::cochain::{check_identity, degree_zero, Cochain, Identity, TupleSampler};
use lambdacoh::cohomology::{solve_coboundary_1, DerivationSpec};
use lambdacoh::deformation::{
    apply_automorphism, box_pairs, check_equivalent_extensions, infinitesimal, normalize, obstruction, try_extend,
    verify_deformation, Deformation, DEFAULT_EXPONENT_BOUND,
};
use lambdacoh::lambdaring::{lambda_from_adams, AdamsFamily, Endomorphism, Preset, PrimeUniverse};
use lambdacoh::sampling::{random_automorphism, random_deformation, random_endbar, random_table_cochain};
use lambdacoh::symfun::{compute_P, compute_P_ij, DEFAULT_PIJ_LIMIT};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn family(preset: Preset, ps: &[u64]) -> Arc<AdamsFamily> {
    Arc::new(preset.family(PrimeUniverse::new(ps.to_vec()).unwrap()).unwrap())
}

fn cli(args: &[&str]) -> Result<(i32, Value), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_lambdacoh"))
        .args(args)
        .args(["--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().unwrap_or(-1);
    let json = serde_json::from_slice(&out.stdout)
        .map_err(|e| format!("{args:?}: exit {code}, bad JSON ({e}): {}", String::from_utf8_lossy(&out.stderr)))?;
    Ok((code, json))
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {:.2} s, limit {:.0} s", t.as_secs_f64(), limit.as_secs_f64()))
}

/// `C(n, i)` from Pascal's triangle, extended to negative `n` by `C(n, i) = (-1)^i C(i - n - 1, i)`.
fn pascal(n: i64, i: usize) -> BigInt {
    if n < 0 {
        let v = pascal(i as i64 - n - 1, i);
        return if i % 2 == 0 { v } else { -v };
    }
    let mut row = vec![BigInt::from(1)];
    for _ in 0..n {
        let mut next = vec![BigInt::from(1); row.len() + 1];
        for k in 1..row.len() {
            next[k] = &row[k - 1] + &row[k];
        }
        row = next;
    }
    row.get(i).cloned().unwrap_or_default()
}

fn pascal_big(n: &BigInt, i: usize) -> BigInt {
    pascal(i64::try_from(n).expect("small"), i)
}

fn lambdas(m: i64, k: usize) -> Vec<BigInt> {
    (1..=k).map(|i| pascal(m, i)).collect()
}

fn h0_of_integers() -> Outcome {
    let start = Instant::now();
    let (code, r) = cli(&["cohomology", "h0", "--preset", "Z"])?;
    within(Duration::from_secs(1), start)?;
    ensure(code == 0, format!("exit {code}"))?;
    let g = &r["results"]["group"];
    ensure(g["free_rank"] == 1, format!("free_rank {}", g["free_rank"]))?;
    ensure(g["torsion"].as_array().is_some_and(Vec::is_empty), "torsion not empty")?;
    let basis = r["results"]["basis"].as_array().ok_or("no basis")?;
    ensure(basis.len() == 1 && basis[0] == serde_json::json!([[1]]), format!("basis {basis:?}"))?;
    Ok(format!("{} with basis {{identity}}", g["text"].as_str().unwrap_or("?")))
}

fn h1_of_integers() -> Outcome {
    let mut seen = Vec::new();
    for (primes, rank) in [("2", 1), ("2,3", 2), ("2,3,5", 3)] {
        let start = Instant::now();
        let (code, r) = cli(&["cohomology", "h1", "--preset", "Z", "--primes", primes])?;
        within(Duration::from_secs(1), start)?;
        ensure(code == 0, format!("exit {code}"))?;
        let g = &r["results"]["group"];
        ensure(g["free_rank"] == rank, format!("{{{primes}}}: free_rank {}", g["free_rank"]))?;
        ensure(g["torsion"].as_array().is_some_and(Vec::is_empty), "torsion not empty")?;
        let reps = r["results"]["free_representatives"].as_array().ok_or("no representatives")?;
        ensure(reps.len() == rank, "representative count")?;
        for rep in reps {
            for (p, m) in rep.as_object().ok_or("bad representative")? {
                let p: i64 = p.parse().map_err(|_| "bad prime key")?;
                let v = m[0][0].as_i64().ok_or("bad entry")?;
                ensure(v % p == 0, format!("value {v} at {p} not divisible"))?;
            }
        }
        seen.push(g["text"].as_str().unwrap_or("?").to_string());
    }
    Ok(format!("{{2}}, {{2,3}}, {{2,3,5}} -> {}", seen.join(", ")))
}

fn table(rng: &mut ChaCha8Rng, fam: &Arc<AdamsFamily>, n: usize) -> Cochain {
    if n == 0 {
        degree_zero(fam.clone(), random_endbar(rng, fam, 3)).unwrap()
    } else {
        random_table_cochain(rng, fam.clone(), n, 2, 16, 3, false).unwrap()
    }
}

fn complex_axioms() -> Outcome {
    let start = Instant::now();
    let mut evaluations = 0;
    for (k, preset) in Preset::ALL.into_iter().enumerate() {
        let fam = family(preset, &[2, 3, 5]);
        for n in 0..=2 {
            let mut rng = ChaCha8Rng::seed_from_u64(100 + 10 * k as u64 + n as u64);
            let inputs: Vec<Cochain> = (0..100).map(|_| table(&mut rng, &fam, n)).collect();
            let report = check_identity(Identity::DSquaredZero, &inputs, &TupleSampler::new(7 + n as u64, 100, 1))
                .map_err(|e| e.to_string())?;
            ensure(report.is_clean(), format!("{preset} n = {n}: {:?}", report.mismatches.first()))?;
            evaluations += report.evaluations;
        }
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!("d d f = 0 at {evaluations} evaluations"))
}

fn cosimplicial_and_leibniz() -> Outcome {
    let start = Instant::now();
    let sampler = TupleSampler::new(11, 100, 1);
    let mut counts = (0, 0);
    for (k, preset) in Preset::ALL.into_iter().enumerate() {
        let fam = family(preset, &[2, 3, 5]);
        let mut rng = ChaCha8Rng::seed_from_u64(200 + k as u64);
        let inputs: Vec<Cochain> = (1..=3).map(|n| table(&mut rng, &fam, n)).collect();
        let r = check_identity(Identity::Cosimplicial, &inputs, &sampler).map_err(|e| e.to_string())?;
        ensure(r.is_clean(), format!("{preset} cosimplicial: {:?}", r.mismatches.first()))?;
        counts.0 += r.evaluations;
        for (a, b) in [(0, 1), (1, 0), (1, 1), (1, 2), (2, 1)] {
            let inputs = vec![table(&mut rng, &fam, a), table(&mut rng, &fam, b)];
            let r = check_identity(Identity::Leibniz, &inputs, &sampler).map_err(|e| e.to_string())?;
            ensure(r.is_clean(), format!("{preset} Leibniz ({a}, {b}): {:?}", r.mismatches.first()))?;
            counts.1 += r.evaluations;
        }
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!("{} cosimplicial and {} Leibniz evaluations agree", counts.0, counts.1))
}

fn binomial_reproduction() -> Outcome {
    let fam = family(Preset::Z, &[2, 3, 5]);
    for m in -6i64..=6 {
        let ls = lambda_from_adams(&fam, &[BigInt::from(m)], 6).map_err(|e| e.to_string())?;
        for (i, l) in ls.iter().enumerate() {
            ensure(l[0] == pascal(m, i + 1), format!("lambda^{}({m}) = {}", i + 1, l[0]))?;
        }
    }
    Ok("lambda^i(m) = C(m, i) for |m| <= 6, i <= 6".into())
}

fn universal_specializations() -> Outcome {
    let mut checked = 0;
    for i in 1..=4 {
        let p = compute_P(i).map_err(|e| e.to_string())?;
        for m in -5i64..=5 {
            for n in -5i64..=5 {
                let v = p.eval_integers(&[&lambdas(m, i), &lambdas(n, i)]);
                ensure(v == pascal(m * n, i), format!("P_{i}({m}; {n}) = {v}"))?;
                checked += 1;
            }
        }
    }
    for i in 1..=6 {
        for j in 1..=6 / i {
            let p = compute_P_ij(i, j, DEFAULT_PIJ_LIMIT).map_err(|e| e.to_string())?;
            for m in -5i64..=5 {
                let v = p.eval_integers(&[&lambdas(m, i * j)]);
                let want = pascal_big(&pascal(m, j), i);
                ensure(v == want, format!("P_{{{i},{j}}}({m}) = {v}, want {want}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} specializations match binomials"))
}

fn obstruction_cocycle() -> Outcome {
    let mut count = 0;
    for (k, preset) in Preset::ALL.into_iter().enumerate() {
        let fam = family(preset, &[2, 3, 5]);
        let mut rng = ChaCha8Rng::seed_from_u64(300 + k as u64);
        for order in 1..=3 {
            for s in 0..20 {
                let d = random_deformation(&mut rng, fam.clone(), order, 2, 2).map_err(|e| e.to_string())?;
                let report = verify_deformation(&d, &box_pairs(fam.universe(), 2)).map_err(|e| e.to_string())?;
                ensure(report.is_clean(), format!("{preset} order {order}: unverified deformation"))?;
                let dobs = obstruction(&d).differential().map_err(|e| e.to_string())?;
                for args in TupleSampler::new(s, 100, 1).tuples(fam.universe(), 3) {
                    let v = dobs.evaluate(&args).map_err(|e| e.to_string())?;
                    ensure(v.is_zero(), format!("{preset} order {order}: d(Obs) != 0 at {args:?}"))?;
                }
                count += 1;
            }
        }
    }
    Ok(format!("d(Obs) = 0 at 100 triples for {count} deformations"))
}

fn integer_series(fam: &Arc<AdamsFamily>, order: usize) -> Deformation {
    let higher = fam
        .universe()
        .primes()
        .iter()
        .map(|&p| {
            let mut terms = vec![Endomorphism::zero(1); order];
            terms[0] = Endomorphism::from_rows(&[[p as i64]]);
            (p, terms)
        })
        .collect();
    Deformation::new(fam.clone(), order, higher).unwrap()
}

fn inner(fam: &AdamsFamily, g: &Endomorphism) -> DerivationSpec {
    let values = fam.generators().iter().map(|(&p, a)| (p, a.commutator(g))).collect();
    DerivationSpec::new(fam.universe().clone(), fam.rank(), values).unwrap()
}

fn sub(a: &DerivationSpec, b: &DerivationSpec) -> DerivationSpec {
    let values = a.values().iter().map(|(&p, v)| (p, v - b.value(p))).collect();
    DerivationSpec::new(a.universe().clone(), a.dim(), values).unwrap()
}

fn deformation_round_trips() -> Outcome {
    let e = |x: lambdacoh::deformation::DeformationError| x.to_string();
    // (a)
    let z = family(Preset::Z, &[2, 3, 5]);
    let report = verify_deformation(&integer_series(&z, 3), &box_pairs(z.universe(), 3)).map_err(e)?;
    ensure(report.is_clean(), "1 + tp does not verify at order 3")?;
    let mut d = integer_series(&z, 1);
    while d.order() < 4 {
        d = try_extend(&d, DEFAULT_EXPONENT_BOUND).map_err(e)?.ok_or(format!("no extension past order {}", d.order()))?;
    }
    for n in 1..=3 {
        try_extend(&integer_series(&z, n), DEFAULT_EXPONENT_BOUND).map_err(e)?.ok_or(format!("1 + tp stuck at {n}"))?;
    }
    // (b)
    let mut rng = ChaCha8Rng::seed_from_u64(400);
    let mut normalized = 0;
    for preset in Preset::ALL {
        let fam = family(preset, &[2, 3, 5]);
        for _ in 0..5 {
            let t = Deformation::trivial(fam.clone(), 2).map_err(e)?;
            let a = random_automorphism(&mut rng, fam.clone(), 2, 3).map_err(e)?;
            let conj = apply_automorphism(&t, &a).map_err(e)?;
            let once = normalize(&conj, 1).map_err(e)?;
            ensure(once.level(1).map_err(e)?.is_zero(), "first-order term survives")?;
            let twice = normalize(&once, 2).map_err(e)?;
            ensure(twice == t, format!("{preset}: normalize did not recover the trivial deformation"))?;
            normalized += 1;
        }
    }
    // (c)
    let mut witnessed = 0;
    for preset in Preset::ALL {
        let fam = family(preset, &[2, 3, 5]);
        for _ in 0..5 {
            let base = random_deformation(&mut rng, fam.clone(), 1, 2, 2).map_err(e)?;
            let d1 = try_extend(&base, 2).map_err(e)?.ok_or("random base does not extend")?;
            let g = random_endbar(&mut rng, &fam, 3);
            let d2 = base.extend_with(&sub(&d1.level(2).map_err(e)?, &inner(&fam, &g))).map_err(e)?;
            let a = check_equivalent_extensions(&d1, &d2).map_err(e)?.ok_or(format!("{preset}: no witness for an Endbar pair"))?;
            ensure(apply_automorphism(&d2, &a).map_err(e)? == d1, "witness does not conjugate")?;
            witnessed += 1;
        }
    }
    let t = Deformation::trivial(z.clone(), 1).map_err(e)?;
    let zero = t.extend_with(&DerivationSpec::zero(z.universe().clone(), 1)).map_err(e)?;
    let mut refused = 0;
    for (a, b, c) in [(2, 0, 0), (0, 3, 0), (2, -6, 10), (-4, 3, 5)] {
        let f = DerivationSpec::new(
            z.universe().clone(),
            1,
            [(2, a), (3, b), (5, c)].into_iter().map(|(p, v)| (p, Endomorphism::from_rows(&[[v]]))).collect(),
        )
        .map_err(|x| x.to_string())?;
        let other = t.extend_with(&f).map_err(e)?;
        ensure(check_equivalent_extensions(&zero, &other).map_err(e)?.is_none(), "witness on Z")?;
        refused += 1;
    }
    Ok(format!(
        "1 + tp extends to order 4; {normalized} conjugates normalized; {witnessed} Endbar pairs witnessed; {refused} Z pairs without witness"
    ))
}

fn infinitesimal_invariance() -> Outcome {
    let e = |x: lambdacoh::deformation::DeformationError| x.to_string();
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    let mut count = 0;
    for preset in Preset::ALL {
        let fam = family(preset, &[2, 3, 5]);
        for _ in 0..20 {
            let d = random_deformation(&mut rng, fam.clone(), 2, 2, 2).map_err(e)?;
            let a = random_automorphism(&mut rng, fam.clone(), 2, 3).map_err(e)?;
            let conj = apply_automorphism(&d, &a).map_err(e)?;
            let diff = sub(&infinitesimal(&conj).map_err(e)?, &infinitesimal(&d).map_err(e)?);
            let g = solve_coboundary_1(&fam, &diff).map_err(|x| x.to_string())?.ok_or(format!("{preset}: not a coboundary"))?;
            ensure(inner(&fam, &g) == diff, "witness does not reproduce the difference")?;
            count += 1;
        }
    }
    Ok(format!("{count} infinitesimal differences certified as coboundaries"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("H0 of Z is Z", h0_of_integers),
        ("H1 of Z truncated to P", h1_of_integers),
        ("d d = 0", complex_axioms),
        ("cosimplicial identities and Leibniz", cosimplicial_and_leibniz),
        ("Newton reproduces binomials", binomial_reproduction),
        ("universal polynomial specializations", universal_specializations),
        ("obstruction is a 2-cocycle", obstruction_cocycle),
        ("deformation round trips", deformation_round_trips),
        ("infinitesimal class invariance", infinitesimal_invariance),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({secs:.2} s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({secs:.2} s)", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
