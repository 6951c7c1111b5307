use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::cohomology::{is_derivation, left_mul_operator, right_mul_operator, solve_coboundary_1, DerivationSpec};
use crate::exactalg::{hermite_rows, solve_linear, IntMatrix};
use crate::lambdaring::{Endomorphism, FactoredInt, PrimeUniverse};

use super::{
    apply_automorphism, deformation_at, obstruction, verify_deformation, Deformation, DeformationError,
    FormalAutomorphism, MatrixSeries,
};

/// Default total-exponent bound on the arguments constrained by [`try_extend`].
pub const DEFAULT_EXPONENT_BOUND: u32 = 3;

/// All ordered pairs of universe elements with total exponent at most `bound`.
pub fn box_pairs(universe: &PrimeUniverse, bound: u32) -> Vec<(FactoredInt, FactoredInt)> {
    let elems = universe.elements_up_to_total_exponent(bound);
    elems
        .iter()
        .flat_map(|m| elems.iter().map(move |n| (m.clone(), n.clone())))
        .collect()
}

/// `ψ^m_{N+1}` as an affine function `lin X + cst` of the stacked unknowns `X_p`.
#[derive(Clone)]
struct Affine {
    lin: IntMatrix,
    cst: Vec<BigInt>,
}

struct Builder<'a> {
    def: &'a Deformation,
    d: usize,
    unknowns: usize,
    series: BTreeMap<FactoredInt, MatrixSeries>,
    affine: BTreeMap<FactoredInt, Affine>,
}

impl Builder<'_> {
    fn series(&mut self, m: &FactoredInt) -> Result<MatrixSeries, DeformationError> {
        if let Some(s) = self.series.get(m) {
            return Ok(s.clone());
        }
        let s = deformation_at(self.def, m)?;
        self.series.insert(m.clone(), s.clone());
        Ok(s)
    }

    fn obs(&mut self, m: &FactoredInt, n: &FactoredInt) -> Result<Vec<BigInt>, DeformationError> {
        let (sm, sn) = (self.series(m)?, self.series(n)?);
        let top = self.def.order();
        let mut acc = Endomorphism::zero(self.d);
        for i in 1..=top {
            acc = &acc - &sm.coeff(i).compose(sn.coeff(top + 1 - i));
        }
        Ok(acc.to_vector())
    }

    /// Canonical peeling: `ψ^{pm}_{N+1} = A_p ψ^m_{N+1} + ψ^p_{N+1} A(m) - Obs(p, m)`, `p` smallest.
    fn affine(&mut self, m: &FactoredInt) -> Result<Affine, DeformationError> {
        if let Some(a) = self.affine.get(m) {
            return Ok(a.clone());
        }
        let dd = self.d * self.d;
        let value = match m.smallest_prime() {
            None => Affine {
                lin: IntMatrix::zeros(dd, self.unknowns),
                cst: vec![BigInt::from(0); dd],
            },
            Some(p) if m.total_exponent() == 1 => {
                let idx = self.def.family().universe().primes().iter().position(|&q| q == p).expect("prime of universe");
                let mut lin = IntMatrix::zeros(dd, self.unknowns);
                for i in 0..dd {
                    lin.set(i, idx * dd + i, BigInt::from(p));
                }
                Affine {
                    lin,
                    cst: vec![BigInt::from(0); dd],
                }
            }
            Some(p) => {
                let prime = FactoredInt::prime(p);
                let rest = m.div_prime(p).expect("p divides m");
                let a_rest = self.affine(&rest)?;
                let a_p = self.affine(&prime)?;
                let left = left_mul_operator(self.def.family().generator(p)?);
                let right = right_mul_operator(self.series(&rest)?.coeff(0));
                let obs = self.obs(&prime, &rest)?;
                let lin = &(&left * &a_rest.lin) + &(&right * &a_p.lin);
                let cst: Vec<BigInt> = left
                    .mul_vec(&a_rest.cst)
                    .iter()
                    .zip(right.mul_vec(&a_p.cst))
                    .zip(&obs)
                    .map(|((x, y), o)| x + y - o)
                    .collect();
                Affine { lin, cst }
            }
        };
        self.affine.insert(m.clone(), value.clone());
        Ok(value)
    }
}

/// Solutions of the extension equations on the exponent box.
#[derive(Clone, Debug)]
pub struct ExtensionSpace {
    /// The extension with the solver's particular solution, re-verified.
    pub particular: Deformation,
    /// Homogeneous solutions, as values `ψ^p_{N+1}` that can be added freely.
    pub directions: Vec<DerivationSpec>,
    pub exponent_bound: u32,
    pub constraints: usize,
}

fn spec_from_unknowns(def: &Deformation, x: &[BigInt]) -> Result<DerivationSpec, DeformationError> {
    let d = def.family().rank();
    let dd = d * d;
    let values = def
        .family()
        .universe()
        .primes()
        .iter()
        .enumerate()
        .map(|(a, &p)| {
            let v: Vec<BigInt> = x[a * dd..(a + 1) * dd].iter().map(|t| t * BigInt::from(p)).collect();
            Ok((p, Endomorphism::from_vector(d, &v)?))
        })
        .collect::<Result<BTreeMap<_, _>, DeformationError>>()?;
    Ok(DerivationSpec::new(def.family().universe().clone(), d, values)?)
}

/// Solves `d^1 ψ_{N+1} = Obs` on all pairs from the exponent box.
///
/// `None` means no extension exists that satisfies the constraints of this box; it is not a
/// proof that the deformation cannot be extended over the whole monoid.
pub fn extension_space(def: &Deformation, bound: u32) -> Result<Option<ExtensionSpace>, DeformationError> {
    let family = def.family().clone();
    let d = family.rank();
    let dd = d * d;
    let unknowns = family.universe().len() * dd;
    let mut b = Builder {
        def,
        d,
        unknowns,
        series: BTreeMap::new(),
        affine: BTreeMap::new(),
    };
    let pairs = box_pairs(family.universe(), bound);
    let mut system = IntMatrix::zeros(0, unknowns + 1);
    let mut pending: Vec<IntMatrix> = Vec::new();
    let mut constraints = 0;
    for (m, n) in &pairs {
        if m.is_one() || n.is_one() {
            continue;
        }
        let (am, an, amn) = (b.affine(m)?, b.affine(n)?, b.affine(&m.mul(n))?);
        let left = left_mul_operator(b.series(m)?.coeff(0));
        let right = right_mul_operator(b.series(n)?.coeff(0));
        let lin = &(&(&left * &an.lin) + &(&right * &am.lin)) - &amn.lin;
        let obs = b.obs(m, n)?;
        let cst: Vec<BigInt> = left
            .mul_vec(&an.cst)
            .iter()
            .zip(right.mul_vec(&am.cst))
            .zip(&amn.cst)
            .zip(&obs)
            .map(|(((x, y), z), o)| x + y - z - o)
            .collect();
        pending.push(lin.hstack(&IntMatrix::column_vector(cst)));
        constraints += dd;
        if pending.len() >= 32 {
            let block = pending.drain(..).fold(system, |acc, r| acc.vstack(&r));
            system = hermite_rows(&block);
        }
    }
    let block = pending.drain(..).fold(system, |acc, r| acc.vstack(&r));
    let system = hermite_rows(&block);
    let lin = system.select_columns(0..unknowns);
    let rhs: Vec<BigInt> = system.column(unknowns).iter().map(|x| -x).collect();
    let Some(sol) = solve_linear(&lin, &rhs) else {
        return Ok(None);
    };
    let top = spec_from_unknowns(def, &sol.particular)?;
    let particular = def.extend_with(&top)?;
    let report = verify_deformation(&particular, &box_pairs(family.universe(), bound.min(2)))?;
    if !report.is_clean() {
        return Err(DeformationError::Internal(format!(
            "solved extension fails verification: {report:?}"
        )));
    }
    let directions = (0..sol.kernel.cols())
        .map(|c| spec_from_unknowns(def, &sol.kernel.column(c)))
        .collect::<Result<_, _>>()?;
    Ok(Some(ExtensionSpace {
        particular,
        directions,
        exponent_bound: bound,
        constraints,
    }))
}

/// An order `N+1` extension satisfying the constraints on the exponent box, if one exists.
pub fn try_extend(def: &Deformation, bound: u32) -> Result<Option<Deformation>, DeformationError> {
    Ok(extension_space(def, bound)?.map(|s| s.particular))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    /// Order of the deformation being extended.
    pub order: usize,
    /// Whether the obstruction cochain vanished on every box pair.
    pub obstruction_vanishes: bool,
    pub extended: bool,
}

/// Extends step by step towards `target` and records the obstruction at each order.
pub fn integrate(def: &Deformation, target: usize, bound: u32) -> Result<(Deformation, Vec<TraceStep>), DeformationError> {
    let mut current = def.clone();
    let mut trace = Vec::new();
    while current.order() < target {
        let obs = obstruction(&current);
        let mut vanishes = true;
        for (m, n) in box_pairs(current.family().universe(), bound) {
            if !obs.evaluate(&[m, n])?.is_zero() {
                vanishes = false;
                break;
            }
        }
        let next = try_extend(&current, bound)?;
        trace.push(TraceStep {
            order: current.order(),
            obstruction_vanishes: vanishes,
            extended: next.is_some(),
        });
        match next {
            Some(n) => current = n,
            None => break,
        }
    }
    Ok((current, trace))
}

/// For two extensions of a common deformation, a witness `Φ = 1 + t^{N+1} φ` with
/// `Φ^{-1} d2 Φ = d1`, if the difference of the top terms is an inner derivation.
///
/// `None` means no inner witness was found, not that the extensions are inequivalent.
pub fn check_equivalent_extensions(
    d1: &Deformation,
    d2: &Deformation,
) -> Result<Option<FormalAutomorphism>, DeformationError> {
    if !d1.same_context(d2) {
        return Err(DeformationError::ContextMismatch);
    }
    let top = d1.order();
    for (&p, s1) in d1.series() {
        let s2 = &d2.series()[&p];
        for i in 0..top {
            if s1.coeff(i) != s2.coeff(i) {
                return Err(DeformationError::PrefixMismatch { prime: p, degree: i });
            }
        }
    }
    let family = d1.family().clone();
    let values = d1
        .series()
        .iter()
        .map(|(&p, s1)| (p, s1.coeff(top) - d2.series()[&p].coeff(top)))
        .collect();
    let diff = DerivationSpec::new(family.universe().clone(), family.rank(), values)?;
    if !is_derivation(&family, &diff)? {
        return Err(DeformationError::Internal(
            "difference of two extensions is not a derivation".into(),
        ));
    }
    let Some(phi) = solve_coboundary_1(&family, &diff)? else {
        return Ok(None);
    };
    let auto = FormalAutomorphism::single(family, top, top, phi)?;
    if apply_automorphism(d2, &auto)? != *d1 {
        return Err(DeformationError::Internal("witness does not conjugate d2 to d1".into()));
    }
    Ok(Some(auto))
}

/// Removes the degree-`level` term by conjugating with `Φ = 1 - t^level φ`, where
/// `[ψ^p, φ] = ψ^p_level`. All lower terms must already vanish.
pub fn normalize(def: &Deformation, level: usize) -> Result<Deformation, DeformationError> {
    if level == 0 || level > def.order() {
        return Err(DeformationError::BadOrder {
            order: level,
            max: def.order(),
        });
    }
    for i in 1..level {
        if !def.level(i)?.is_zero() {
            return Err(DeformationError::NotNormalized { level, degree: i });
        }
    }
    let family: Arc<_> = def.family().clone();
    let target = def.level(level)?;
    let phi = solve_coboundary_1(&family, &target)?.ok_or(DeformationError::NotCoboundary { level })?;
    let auto = FormalAutomorphism::single(family, def.order(), level, -&phi)?;
    let out = apply_automorphism(def, &auto)?;
    if !out.level(level)?.is_zero() {
        return Err(DeformationError::Internal("normalized term did not vanish".into()));
    }
    Ok(out)
}
