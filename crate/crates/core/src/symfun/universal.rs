#![allow(non_snake_case)]

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::poly::MultiPoly;
use super::SymFunError;

/// Default bound on `i * j` for [`compute_P_ij`].
pub const DEFAULT_PIJ_LIMIT: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UniversalKind {
    /// `λ^i(rs) = P_i(λ(r); λ(s))`
    Product { i: usize },
    /// `λ^i(λ^j(r)) = P_{i,j}(λ(r))`
    Composition { i: usize, j: usize },
}

impl fmt::Display for UniversalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UniversalKind::Product { i } => write!(f, "P_{i}"),
            UniversalKind::Composition { i, j } => write!(f, "P_{{{i},{j}}}"),
        }
    }
}

/// A universal polynomial in formal lambda-value symbols.
///
/// For `P_i` the variables are `s1..si, t1..ti` (lambda-values of `r` and `s`);
/// for `P_{i,j}` they are `s1..s_{ij}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalPolynomial {
    kind: UniversalKind,
    expression: MultiPoly,
}

impl UniversalPolynomial {
    pub fn kind(&self) -> UniversalKind {
        self.kind
    }

    pub fn expression(&self) -> &MultiPoly {
        &self.expression
    }

    /// Number of lambda-values each argument needs.
    pub fn arity(&self) -> usize {
        match self.kind {
            UniversalKind::Product { i } => i,
            UniversalKind::Composition { i, j } => i * j,
        }
    }
}

impl fmt::Display for UniversalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.kind, self.expression)
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|a| format!("{prefix}{a}")).collect()
}

/// Coefficient of `t^degree` in `∏ (1 + m t)` over the given monomials.
fn truncated_product(vars: &[String], monomials: &[Vec<u32>], degree: usize) -> MultiPoly {
    let mut coeffs: Vec<MultiPoly> = (0..=degree).map(|_| MultiPoly::zero(vars.to_vec())).collect();
    coeffs[0] = MultiPoly::one(vars.to_vec());
    for m in monomials {
        for k in (1..=degree).rev() {
            if coeffs[k - 1].is_zero() {
                continue;
            }
            let shifted = coeffs[k - 1].shift(m);
            coeffs[k].add_scaled(&shifted, &BigInt::one());
        }
    }
    coeffs.swap_remove(degree)
}

/// `e_k` of the block of variables `offset..offset+size`.
pub fn elementary(vars: &[String], offset: usize, size: usize, k: usize) -> MultiPoly {
    let monomials: Vec<Vec<u32>> = (0..size)
        .map(|a| {
            let mut e = vec![0; vars.len()];
            e[offset + a] = 1;
            e
        })
        .collect();
    truncated_product(vars, &monomials, k)
}

/// A partition of the variables into blocks on which a polynomial is symmetric.
#[derive(Clone, Debug)]
pub struct Alphabets {
    /// `(offset, size, symbol prefix)` per block.
    blocks: Vec<(usize, usize, String)>,
    nvars: usize,
}

impl Alphabets {
    pub fn new(sizes: &[(usize, &str)]) -> Self {
        let mut blocks = Vec::new();
        let mut offset = 0;
        for &(size, prefix) in sizes {
            blocks.push((offset, size, prefix.to_string()));
            offset += size;
        }
        Alphabets { blocks, nvars: offset }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Names of the elementary symbols, block by block.
    pub fn symbol_names(&self) -> Vec<String> {
        self.blocks
            .iter()
            .flat_map(|(_, size, prefix)| names(prefix, *size))
            .collect()
    }

    /// Alphabet variable names (`x1..`, `y1..`, ...).
    pub fn variable_names(&self) -> Vec<String> {
        const LETTERS: [&str; 4] = ["x", "y", "z", "w"];
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(b, (_, size, _))| names(LETTERS[b % LETTERS.len()], *size))
            .collect()
    }
}

/// Rewrites a polynomial symmetric in each alphabet block as a polynomial in the
/// elementary symmetric functions of the blocks, by repeated subtraction of the
/// lex-leading term.
pub fn reduce_to_elementary(poly: &MultiPoly, alphabets: &Alphabets) -> Result<MultiPoly, SymFunError> {
    let nvars = alphabets.nvars();
    if poly.vars().len() != nvars {
        return Err(SymFunError::NotSymmetric(format!(
            "expected {nvars} variables, found {}",
            poly.vars().len()
        )));
    }
    let vars = poly.vars().to_vec();
    let mut rest = poly.clone();
    let mut out = MultiPoly::zero(alphabets.symbol_names());
    let mut cache: HashMap<(usize, usize, u32), MultiPoly> = HashMap::new();

    while let Some((lead, c)) = rest.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
        let mut symbol_exps = Vec::with_capacity(nvars);
        let mut product = MultiPoly::one(vars.clone());
        for (b, (offset, size, _)) in alphabets.blocks.iter().enumerate() {
            let alpha = &lead[*offset..*offset + *size];
            for a in 0..*size {
                let next = if a + 1 < *size { alpha[a + 1] } else { 0 };
                if alpha[a] < next {
                    return Err(SymFunError::NotSymmetric(format!(
                        "leading exponent {lead:?} is not a partition in block {b}"
                    )));
                }
                let k = alpha[a] - next;
                symbol_exps.push(k);
                if k > 0 {
                    let factor = cache
                        .entry((b, a + 1, k))
                        .or_insert_with(|| elementary(&vars, *offset, *size, a + 1).pow(k));
                    product = product.mul(factor);
                }
            }
        }
        rest.add_scaled(&product, &-c.clone());
        out.add_term(symbol_exps, c);
    }
    Ok(out)
}

/// Substitutes the elementary symmetric functions back into a reduced polynomial.
pub fn expand_elementary(reduced: &MultiPoly, alphabets: &Alphabets) -> MultiPoly {
    let vars = alphabets.variable_names();
    let mut elems = Vec::new();
    for (offset, size, _) in &alphabets.blocks {
        for k in 1..=*size {
            elems.push(elementary(&vars, *offset, *size, k));
        }
    }
    let mut out = MultiPoly::zero(vars.clone());
    for (e, c) in reduced.terms() {
        let mut t = MultiPoly::constant(vars.clone(), c.clone());
        for (idx, &k) in e.iter().enumerate() {
            if k > 0 {
                t = t.mul(&elems[idx].pow(k));
            }
        }
        out.add_scaled(&t, &BigInt::one());
    }
    out
}

/// The coefficient of `t^i` in `∏_{a,b ≤ n} (1 + x_a y_b t)`.
pub fn product_rule_expansion(i: usize, n: usize) -> (MultiPoly, Alphabets) {
    let alphabets = Alphabets::new(&[(n, "s"), (n, "t")]);
    let vars = alphabets.variable_names();
    let mut monomials = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut e = vec![0; 2 * n];
            e[a] = 1;
            e[n + b] = 1;
            monomials.push(e);
        }
    }
    (truncated_product(&vars, &monomials, i), alphabets)
}

/// The coefficient of `t^i` in `∏_{|S| = j, S ⊆ [n]} (1 + x_S t)`.
pub fn composition_rule_expansion(i: usize, j: usize, n: usize) -> (MultiPoly, Alphabets) {
    let alphabets = Alphabets::new(&[(n, "s")]);
    let vars = alphabets.variable_names();
    let monomials: Vec<Vec<u32>> = subsets(n, j)
        .into_iter()
        .map(|s| {
            let mut e = vec![0; n];
            for a in s {
                e[a] = 1;
            }
            e
        })
        .collect();
    (truncated_product(&vars, &monomials, i), alphabets)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in start..n {
            if n - a < k - cur.len() {
                break;
            }
            cur.push(a);
            go(a + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Drops the symbols of index above `keep` in each block; errors if any of them occur.
fn truncate_symbols(
    p: &MultiPoly,
    sizes: &[usize],
    keep: usize,
    prefixes: &[&str],
) -> Result<MultiPoly, SymFunError> {
    let mut vars = Vec::new();
    for prefix in prefixes {
        vars.extend(names(prefix, keep));
    }
    let mut out = MultiPoly::zero(vars);
    for (e, c) in p.terms() {
        let mut kept = Vec::with_capacity(keep * sizes.len());
        let mut offset = 0;
        for &size in sizes {
            if e[offset + keep..offset + size].iter().any(|&k| k > 0) {
                return Err(SymFunError::Unstable(format!(
                    "term {e:?} uses a symbol beyond index {keep}"
                )));
            }
            kept.extend_from_slice(&e[offset..offset + keep]);
            offset += size;
        }
        out.add_term(kept, c.clone());
    }
    Ok(out)
}

/// `P_i` computed with alphabets of size `n ≥ i`, expressed in `s1..si, t1..ti`.
pub fn compute_P_with_alphabet(i: usize, n: usize) -> Result<UniversalPolynomial, SymFunError> {
    if i == 0 {
        return Err(SymFunError::ZeroIndex);
    }
    if n < i {
        return Err(SymFunError::Unstable(format!("alphabet size {n} is below {i}")));
    }
    let (expansion, alphabets) = product_rule_expansion(i, n);
    let reduced = reduce_to_elementary(&expansion, &alphabets)?;
    let expression = truncate_symbols(&reduced, &[n, n], i, &["s", "t"])?;
    Ok(UniversalPolynomial {
        kind: UniversalKind::Product { i },
        expression,
    })
}

/// `P_{i,j}` computed with an alphabet of size `n ≥ ij`, expressed in `s1..s_{ij}`.
pub fn compute_P_ij_with_alphabet(i: usize, j: usize, n: usize) -> Result<UniversalPolynomial, SymFunError> {
    if i == 0 || j == 0 {
        return Err(SymFunError::ZeroIndex);
    }
    if n < i * j {
        return Err(SymFunError::Unstable(format!("alphabet size {n} is below {}", i * j)));
    }
    let (expansion, alphabets) = composition_rule_expansion(i, j, n);
    let reduced = reduce_to_elementary(&expansion, &alphabets)?;
    let expression = truncate_symbols(&reduced, &[n], i * j, &["s"])?;
    Ok(UniversalPolynomial {
        kind: UniversalKind::Composition { i, j },
        expression,
    })
}

pub fn compute_P(i: usize) -> Result<UniversalPolynomial, SymFunError> {
    compute_P_with_alphabet(i, i)
}

pub fn compute_P_ij(i: usize, j: usize, limit: usize) -> Result<UniversalPolynomial, SymFunError> {
    if i * j > limit {
        return Err(SymFunError::LimitExceeded { i, j, limit });
    }
    compute_P_ij_with_alphabet(i, j, i * j)
}

impl UniversalPolynomial {
    /// Evaluates `P_i(a; b)` or `P_{i,j}(a)` over the integers.
    ///
    /// `args` holds `λ^1..λ^arity` of each argument.
    pub fn eval_integers(&self, args: &[&[BigInt]]) -> BigInt {
        let values = self.flatten(args);
        self.expression.eval(&values)
    }

    fn flatten<T: Clone>(&self, args: &[&[T]]) -> Vec<T> {
        let n = self.arity();
        let expected = match self.kind {
            UniversalKind::Product { .. } => 2,
            UniversalKind::Composition { .. } => 1,
        };
        assert_eq!(args.len(), expected, "argument count for {}", self.kind);
        args.iter()
            .flat_map(|a| {
                assert!(a.len() >= n, "need {n} lambda-values per argument");
                a[..n].iter().cloned()
            })
            .collect()
    }

    pub fn eval_in_ring(
        &self,
        ring: &crate::lambdaring::RingSpec,
        args: &[&[crate::lambdaring::Element]],
    ) -> crate::lambdaring::Element {
        let values = self.flatten(args);
        self.expression.eval_in_ring(ring, &values)
    }
}
