use lambdacoh::cochain::{check_identity, degree_zero, Cochain, Identity, IdentityReport, TupleSampler};
use lambdacoh::cohomology::{compare_universes, compute_H0, compute_H1, is_derivation, solve_coboundary_1};
use lambdacoh::deformation::{
    box_pairs, check_equivalent_extensions, infinitesimal, integrate, normalize, obstruction, verify_deformation,
    Deformation, DeformationError, DeformationFile,
};
use lambdacoh::lambdaring::{
    lambda_from_adams as newton_lambda, verify_adams, verify_ring, Element, LambdaData, LambdaRingError, PrimeUniverse,
};
use lambdacoh::sampling::{random_endbar, random_table_cochain};
use lambdacoh::symfun::{compute_P, compute_P_ij, verify_lambda_axioms, DEFAULT_PIJ_LIMIT};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::context::{CliError, Context};
use crate::report::{element_text, group_json, matrix_json, matrix_text, spec_json, spec_text, Outcome, Status};
use crate::IdentityArg;

const TABLE_ENTRIES: usize = 16;
const TABLE_RANGE: i64 = 3;
/// Mismatches listed in full; the count is always exact.
const LISTED: usize = 20;

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

pub fn ring_verify(ctx: &Context) -> Outcome {
    let v = strings(&verify_ring(ctx.family.ring()));
    let lines = vec![format!("rank {}, {} violations", ctx.family.rank(), v.len())];
    Outcome::clean_if(v.is_empty(), json!({ "rank": ctx.family.rank(), "violations": v }), lines)
}

pub fn adams_verify(ctx: &Context) -> Outcome {
    let mut v = strings(&verify_ring(ctx.family.ring()));
    v.extend(strings(&verify_adams(&ctx.family)));
    let mut lines = vec![format!("{} violations", v.len())];
    lines.extend(v.iter().cloned());
    Outcome::clean_if(v.is_empty(), json!({ "violations": v }), lines)
}

pub fn lambda_from_adams(ctx: &Context, element: Option<&[i64]>, degree: usize) -> Result<Outcome, CliError> {
    let ring = ctx.family.ring();
    let d = ring.rank();
    let samples: Vec<Element> = match element {
        Some(e) if e.len() != d => return Err(CliError(format!("--element needs {d} coordinates, got {}", e.len()))),
        Some(e) => vec![e.iter().map(|&x| BigInt::from(x)).collect()],
        None => {
            let mut s: Vec<Element> = (0..d).map(|i| ring.basis(i)).collect();
            s.push(ring.from_integer(&BigInt::from(2)));
            s.push(ring.from_integer(&BigInt::from(-1)));
            s
        }
    };
    let mut values = Vec::new();
    let mut lines = Vec::new();
    for r in &samples {
        match newton_lambda(&ctx.family, r, degree) {
            Ok(ls) => {
                let shown: Vec<String> = ls.iter().map(|l| element_text(l)).collect();
                lines.push(format!("lambda^1..{degree}{} = {}", element_text(r), shown.join(", ")));
                values.push(json!({ "element": strings(r), "lambda": ls.iter().map(|l| strings(l)).collect::<Vec<_>>() }));
            }
            Err(e @ LambdaRingError::NonIntegralDivision { .. }) => {
                lines.push(format!("{}: {e}", element_text(r)));
                return Ok(Outcome::new(Status::Violation, json!({ "element": strings(r), "error": e.to_string() }), lines));
            }
            Err(e) => return Err(e.into()),
        }
    }
    let data = LambdaData::from_adams(&ctx.family, &samples, degree)?;
    let violations = strings(&verify_lambda_axioms(&data, &samples, degree));
    lines.push(format!("{} axiom violations up to degree {degree}", violations.len()));
    lines.extend(violations.iter().cloned());
    Ok(Outcome::clean_if(
        violations.is_empty(),
        json!({ "values": values, "axiom_violations": violations }),
        lines,
    ))
}

pub fn poly(i: usize, j: Option<usize>) -> Result<Outcome, CliError> {
    let p = match j {
        None => compute_P(i)?,
        Some(j) => compute_P_ij(i, j, DEFAULT_PIJ_LIMIT)?,
    };
    let kind = p.kind().to_string();
    let expr = p.expression().to_string();
    let lines = vec![format!("{kind} = {expr}")];
    Ok(Outcome::new(
        Status::Clean,
        json!({ "kind": kind, "arity": p.arity(), "expression": expr }),
        lines,
    ))
}

fn tables(ctx: &Context, rng: &mut ChaCha8Rng, dims: &[usize]) -> Result<Vec<Cochain>, CliError> {
    dims.iter()
        .map(|&n| {
            let c = if n == 0 {
                degree_zero(ctx.family.clone(), random_endbar(rng, &ctx.family, TABLE_RANGE))?
            } else {
                random_table_cochain(rng, ctx.family.clone(), n, ctx.bound, TABLE_ENTRIES, TABLE_RANGE, false)?
            };
            Ok(c)
        })
        .collect()
}

pub fn complex_check(ctx: &Context, identity: IdentityArg) -> Result<Outcome, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.opts.seed);
    let sampler = TupleSampler::new(ctx.opts.seed, ctx.opts.samples, ctx.bound);
    let reports: Vec<IdentityReport> = match identity {
        IdentityArg::DSquared => vec![check_identity(Identity::DSquaredZero, &tables(ctx, &mut rng, &[0, 1, 2])?, &sampler)?],
        IdentityArg::Cosimplicial => vec![check_identity(Identity::Cosimplicial, &tables(ctx, &mut rng, &[1, 2, 3])?, &sampler)?],
        IdentityArg::Leibniz => [(0, 1), (1, 0), (1, 1), (1, 2), (2, 1)]
            .iter()
            .map(|&(a, b)| Ok(check_identity(Identity::Leibniz, &tables(ctx, &mut rng, &[a, b])?, &sampler)?))
            .collect::<Result<_, CliError>>()?,
    };
    let cases: usize = reports.iter().map(|r| r.cases).sum();
    let evaluations: usize = reports.iter().map(|r| r.evaluations).sum();
    let mismatches: Vec<_> = reports.iter().flat_map(|r| r.mismatches.iter().cloned()).collect();
    let name = reports[0].identity.to_string();
    let mut lines = vec![format!("{name}: {cases} cases, {evaluations} evaluations, {} mismatches", mismatches.len())];
    for m in mismatches.iter().take(LISTED) {
        lines.push(format!("{} at ({})", m.case, m.args.join(", ")));
    }
    Ok(Outcome::clean_if(
        mismatches.is_empty(),
        json!({
            "identity": name,
            "cases": cases,
            "evaluations": evaluations,
            "mismatch_count": mismatches.len(),
            "mismatches": mismatches.iter().take(LISTED).collect::<Vec<_>>(),
        }),
        lines,
    ))
}

pub fn h0(ctx: &Context) -> Outcome {
    let r = compute_H0(&ctx.family);
    let mut lines = vec![format!("H0 = {}", r.group)];
    lines.extend(r.basis.iter().map(|b| format!("basis: {}", matrix_text(b))));
    let basis: Vec<Value> = r.basis.iter().map(matrix_json).collect();
    Outcome::new(Status::Clean, json!({ "group": group_json(&r.group), "basis": basis }), lines)
}

pub fn h1(ctx: &Context) -> Result<Outcome, CliError> {
    let r = compute_H1(&ctx.family)?;
    let mut lines = vec![
        format!("H1 = {}", r.group),
        format!("cocycle rank {}, coboundary rank {}", r.cocycle_rank, r.coboundary_rank),
    ];
    for s in r.torsion_representatives.iter().chain(&r.free_representatives) {
        lines.push(format!("generator: {}", spec_text(s)));
    }
    Ok(Outcome::new(
        Status::Clean,
        json!({
            "group": group_json(&r.group),
            "cocycle_rank": r.cocycle_rank,
            "coboundary_rank": r.coboundary_rank,
            "torsion_representatives": r.torsion_representatives.iter().map(spec_json).collect::<Vec<_>>(),
            "free_representatives": r.free_representatives.iter().map(spec_json).collect::<Vec<_>>(),
        }),
        lines,
    ))
}

pub fn compare(ctx: &Context) -> Result<Outcome, CliError> {
    let primes = ctx.family.universe().primes();
    let universes = (1..=primes.len())
        .map(|k| PrimeUniverse::new(primes[..k].to_vec()))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = compare_universes(&ctx.family, &universes)?;
    let lines = rows
        .iter()
        .map(|r| format!("{{{}}}: H0 = {}, H1 = {}", strings(r.universe.primes()).join(", "), r.h0, r.h1))
        .collect();
    let results: Vec<Value> = rows
        .iter()
        .map(|r| json!({ "primes": r.universe.primes(), "h0": group_json(&r.h0), "h1": group_json(&r.h1) }))
        .collect();
    Ok(Outcome::new(Status::Clean, json!({ "rows": results }), lines))
}

fn deformation_json(d: &Deformation) -> Value {
    serde_json::to_value(DeformationFile::from_deformation(d)).expect("deformation files serialize")
}

pub fn deform_verify(ctx: &Context) -> Result<Outcome, CliError> {
    let d = ctx.deformation()?;
    let r = verify_deformation(&d, &box_pairs(ctx.family.universe(), ctx.bound))?;
    let lines = vec![format!(
        "order {}: {} pairs checked, {} divisibility, {} commutation, {} multiplicativity violations",
        d.order(),
        r.pairs_checked,
        r.divisibility.len(),
        r.commutation.len(),
        r.multiplicativity.len()
    )];
    Ok(Outcome::clean_if(r.is_clean(), json!({ "order": d.order(), "report": r }), lines))
}

pub fn deform_infinitesimal(ctx: &Context) -> Result<Outcome, CliError> {
    let d = ctx.deformation()?;
    let f = infinitesimal(&d)?;
    let derivation = is_derivation(&ctx.family, &f)?;
    let witness = if derivation { solve_coboundary_1(&ctx.family, &f)? } else { None };
    let mut lines = vec![format!("infinitesimal: {}", spec_text(&f))];
    lines.push(match (&witness, derivation) {
        (_, false) => "not a derivation".to_string(),
        (Some(g), _) => format!("inner: f = [psi, g] with g = {}", matrix_text(g)),
        (None, _) => "no inner witness: class is nonzero relative to these primes".to_string(),
    });
    Ok(Outcome::clean_if(
        derivation,
        json!({
            "values": spec_json(&f),
            "is_derivation": derivation,
            "inner_witness": witness.as_ref().map(matrix_json),
        }),
        lines,
    ))
}

pub fn deform_obstruction(ctx: &Context) -> Result<Outcome, CliError> {
    let d = ctx.deformation()?;
    let obs = obstruction(&d);
    let mut nonzero = Vec::new();
    let pairs = box_pairs(ctx.family.universe(), ctx.bound);
    for (m, n) in &pairs {
        let v = obs.evaluate(&[m.clone(), n.clone()])?;
        if !v.is_zero() {
            nonzero.push((m.to_string(), n.to_string(), v));
        }
    }
    let dobs = obs.differential()?;
    let sampler = TupleSampler::new(ctx.opts.seed, ctx.opts.samples, ctx.bound);
    let mut failures = Vec::new();
    for args in sampler.tuples(ctx.family.universe(), 3) {
        if !dobs.evaluate(&args)?.is_zero() {
            failures.push(strings(&args));
        }
    }
    let mut lines = vec![
        format!("Obs nonzero at {} of {} box pairs", nonzero.len(), pairs.len()),
        format!("d(Obs) vanishes at {} of {} sampled triples", ctx.opts.samples - failures.len(), ctx.opts.samples),
    ];
    for (m, n, v) in nonzero.iter().take(LISTED) {
        lines.push(format!("Obs({m}, {n}) = {}", matrix_text(v)));
    }
    let listed: Vec<Value> = nonzero
        .iter()
        .take(LISTED)
        .map(|(m, n, v)| json!({ "m": m, "n": n, "value": matrix_json(v) }))
        .collect();
    Ok(Outcome::clean_if(
        failures.is_empty(),
        json!({
            "order": d.order(),
            "vanishes_on_box": nonzero.is_empty(),
            "nonzero_count": nonzero.len(),
            "nonzero": listed,
            "cocycle_failures": failures,
        }),
        lines,
    ))
}

pub fn deform_extend(ctx: &Context) -> Result<Outcome, CliError> {
    let d = ctx.deformation()?;
    let target = ctx.opts.order.unwrap_or(d.order() + 1);
    if target <= d.order() {
        return Err(CliError(format!("--order {target} does not exceed the input order {}", d.order())));
    }
    let (out, trace) = integrate(&d, target, ctx.bound)?;
    let mut lines: Vec<String> = trace
        .iter()
        .map(|s| {
            format!(
                "order {} -> {}: obstruction {} on the box, {}",
                s.order,
                s.order + 1,
                if s.obstruction_vanishes { "vanishes" } else { "nonzero" },
                if s.extended { "extended" } else { "no extension within the box" }
            )
        })
        .collect();
    let reached = out.order() == target;
    lines.push(format!("reached order {} of {target}", out.order()));
    let status = if reached { Status::Clean } else { Status::Failure };
    Ok(Outcome::new(
        status,
        json!({ "target": target, "reached": out.order(), "trace": trace, "deformation": deformation_json(&out) }),
        lines,
    ))
}

pub fn deform_normalize(ctx: &Context) -> Result<Outcome, CliError> {
    let d = ctx.deformation()?;
    let level = ctx.opts.level.unwrap_or(1);
    match normalize(&d, level) {
        Ok(out) => Ok(Outcome::new(
            Status::Clean,
            json!({ "level": level, "deformation": deformation_json(&out) }),
            vec![format!("terms 1..{level} removed")],
        )),
        Err(e @ DeformationError::NotCoboundary { .. }) => Ok(Outcome::new(
            Status::Failure,
            json!({ "level": level, "error": e.to_string() }),
            vec![e.to_string()],
        )),
        Err(e) => Err(e.into()),
    }
}

pub fn deform_equiv(ctx: &Context) -> Result<Outcome, CliError> {
    let d1 = ctx.deformation()?;
    let d2 = ctx.other_deformation()?;
    match check_equivalent_extensions(&d1, &d2)? {
        Some(a) => {
            let top = a.order();
            let phi = &a.coeffs()[top - 1];
            Ok(Outcome::new(
                Status::Clean,
                json!({ "witness": true, "level": top, "phi": matrix_json(phi) }),
                vec![format!("equivalent via 1 + t^{top} phi, phi = {}", matrix_text(phi))],
            ))
        }
        None => Ok(Outcome::new(
            Status::Failure,
            json!({ "witness": false, "level": d1.order() }),
            vec!["no inner witness; this does not show the extensions are inequivalent".to_string()],
        )),
    }
}
