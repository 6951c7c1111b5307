use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::lambdaring::{Element, RingSpec};

/// Sparse multivariate polynomial with integer coefficients over named variables.
///
/// Terms are keyed by dense exponent vectors; zero coefficients are never stored.
/// The key order is lexicographic, so the last key is the lex-leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiPoly {
    pub fn zero(vars: Vec<String>) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vec<String>, c: BigInt) -> Self {
        let mut p = Self::zero(vars);
        let exps = vec![0; p.vars.len()];
        p.add_term(exps, c);
        p
    }

    pub fn one(vars: Vec<String>) -> Self {
        Self::constant(vars, BigInt::one())
    }

    pub fn monomial(vars: Vec<String>, exps: Vec<u32>, c: BigInt) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        p.add_term(exps, c);
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(&Vec<u32>, &BigInt)> {
        self.terms.last_key_value()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &MultiPoly, k: &BigInt) {
        debug_assert_eq!(self.vars, other.vars);
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c * k);
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = MultiPoly::zero(self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Multiplies by the monomial with exponent vector `exps`.
    pub fn shift(&self, exps: &[u32]) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.vars.clone());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, values: &[BigInt]) -> BigInt {
        assert_eq!(values.len(), self.vars.len(), "one value per variable");
        let mut total = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in values.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(v.clone(), k as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Evaluates with ring elements substituted for the variables.
    pub fn eval_in_ring(&self, ring: &RingSpec, values: &[Element]) -> Element {
        assert_eq!(values.len(), self.vars.len(), "one value per variable");
        let mut powers: BTreeMap<(usize, u32), Element> = BTreeMap::new();
        let mut total = ring.zero();
        for (e, c) in &self.terms {
            let mut t = ring.from_integer(c);
            for (idx, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pw = powers
                    .entry((idx, k))
                    .or_insert_with(|| ring.pow(&values[idx], u64::from(k)));
                t = ring.mul(&t, pw);
            }
            total = ring.add(&total, &t);
        }
        total
    }

    /// Total degree of the highest-degree term.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Whether any term has a positive exponent on variable `idx`.
    pub fn involves(&self, idx: usize) -> bool {
        self.terms.keys().any(|e| e[idx] > 0)
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical form: terms in descending lex order, `c*v1^a*v2^b` with `+`/`-` separators.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], k)
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
