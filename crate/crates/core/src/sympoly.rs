//! Sieve weight polynomials.
//!
//! A weight `F` is a finite combination of products of power sums
//! `P_j(t) = sum_i t_i^j`, stored with exact rational coefficients either in
//! the raw basis (`P_1^a P_2^b ...`) or in the shifted basis
//! (`(1 - P_1)^a P_2^b ...`). Weights that involve only `P_1` reduce to a
//! univariate `f` with `F(t) = f(t_1 + ... + t_k)`, which is what the
//! one-dimensional integral reductions consume.

use crate::error::{Error, Result};
use crate::params::SupportKind;
use crate::rat::{binomial, format_rat, parse_rat, rat_int, to_f64, Rat};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Terms are `c * (1 - P_1)^{e_1} * P_2^{e_2} * ...`
    Shifted,
    /// Terms are `c * P_1^{e_1} * P_2^{e_2} * ...`
    Raw,
}

/// One term: coefficient times a product of power-sum factors, keyed by the
/// power-sum index `j >= 1` mapping to its exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rat,
    pub exponents: BTreeMap<u32, u32>,
}

impl Term {
    pub fn new(coeff: Rat, exponents: BTreeMap<u32, u32>) -> Self {
        let exponents = exponents.into_iter().filter(|&(_, e)| e > 0).collect();
        Term { coeff, exponents }
    }

    fn degree(&self) -> u32 {
        self.exponents.iter().map(|(&j, &e)| j * e).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricPolynomial {
    pub k: usize,
    pub basis: Basis,
    terms: Vec<Term>,
}

impl SymmetricPolynomial {
    pub fn new(k: usize, basis: Basis, terms: Vec<Term>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidPolynomial("k must be positive".into()));
        }
        for t in &terms {
            if let Some((&j, _)) = t.exponents.iter().next() {
                if j == 0 {
                    return Err(Error::InvalidPolynomial(
                        "power-sum index must be >= 1".into(),
                    ));
                }
            }
        }
        Ok(SymmetricPolynomial {
            k,
            basis,
            terms: normalize(terms),
        })
    }

    /// Builder for the common `a_0 + a_1 (1-P_1) + a_2 (1-P_1)^2 + ...` family.
    pub fn from_shifted_p1_coeffs(k: usize, coeffs: &[i64]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| Term::new(rat_int(c), [(1u32, i as u32)].into_iter().collect()))
            .collect();
        SymmetricPolynomial::new(k, Basis::Shifted, terms).expect("valid by construction")
    }

    /// Builder in the raw basis from `(coeff, [(j, e), ...])` pairs.
    pub fn from_raw_terms(k: usize, terms: &[(i64, &[(u32, u32)])]) -> Self {
        let terms = terms
            .iter()
            .map(|&(c, es)| Term::new(rat_int(c), es.iter().copied().collect()))
            .collect();
        SymmetricPolynomial::new(k, Basis::Raw, terms).expect("valid by construction")
    }

    pub fn constant(k: usize, c: Rat) -> Self {
        SymmetricPolynomial::new(k, Basis::Raw, vec![Term::new(c, BTreeMap::new())]).unwrap()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(Term::degree).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest power-sum index that appears.
    pub fn max_power_index(&self) -> u32 {
        self.terms
            .iter()
            .flat_map(|t| t.exponents.keys().copied())
            .max()
            .unwrap_or(1)
    }

    pub fn evaluate(&self, t: &[f64]) -> Result<f64> {
        if t.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                got: t.len(),
            });
        }
        let maxj = self.max_power_index();
        let mut psums = vec![0.0f64; maxj as usize + 1];
        for j in 1..=maxj {
            psums[j as usize] = t.iter().map(|&x| x.powi(j as i32)).sum();
        }
        let mut acc = 0.0;
        for term in &self.terms {
            let mut v = to_f64(&term.coeff);
            for (&j, &e) in &term.exponents {
                let base = if j == 1 && self.basis == Basis::Shifted {
                    1.0 - psums[1]
                } else {
                    psums[j as usize]
                };
                v *= base.powi(e as i32);
            }
            acc += v;
        }
        Ok(acc)
    }

    pub fn evaluate_exact(&self, t: &[Rat]) -> Result<Rat> {
        if t.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                got: t.len(),
            });
        }
        let maxj = self.max_power_index();
        let mut psums = vec![Rat::zero(); maxj as usize + 1];
        for j in 1..=maxj {
            let mut s = Rat::zero();
            for x in t {
                let mut p = Rat::one();
                for _ in 0..j {
                    p *= x.clone();
                }
                s += p;
            }
            psums[j as usize] = s;
        }
        let mut acc = Rat::zero();
        for term in &self.terms {
            let mut v = term.coeff.clone();
            for (&j, &e) in &term.exponents {
                let base = if j == 1 && self.basis == Basis::Shifted {
                    Rat::one() - psums[1].clone()
                } else {
                    psums[j as usize].clone()
                };
                for _ in 0..e {
                    v *= base.clone();
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Exact basis change; `to_raw` and `to_shifted` are mutually inverse.
    pub fn to_raw(&self) -> Self {
        match self.basis {
            Basis::Raw => self.clone(),
            Basis::Shifted => SymmetricPolynomial {
                k: self.k,
                basis: Basis::Raw,
                terms: flip_p1_basis(&self.terms),
            },
        }
    }

    pub fn to_shifted(&self) -> Self {
        match self.basis {
            Basis::Shifted => self.clone(),
            Basis::Raw => SymmetricPolynomial {
                k: self.k,
                basis: Basis::Shifted,
                terms: flip_p1_basis(&self.terms),
            },
        }
    }

    /// Whether every term involves only `P_1` (so a diagonal reduction exists).
    pub fn is_diagonal(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.exponents.keys().all(|&j| j == 1))
    }

    /// Reduces `F` to the univariate `f` with `f(sum t_i) = F(t)`.
    pub fn diagonal_reduce(&self) -> Result<DiagonalPolynomial> {
        for t in &self.terms {
            if let Some(&j) = t.exponents.keys().find(|&&j| j != 1) {
                return Err(Error::ReductionUnavailable(format!("P_{j}")));
            }
        }
        let deg = self.degree() as usize;
        let mut coeffs = vec![Rat::zero(); deg + 1];
        for term in &self.terms {
            let a = term.exponents.get(&1).copied().unwrap_or(0) as u64;
            match self.basis {
                Basis::Raw => {
                    coeffs[a as usize] += term.coeff.clone();
                }
                Basis::Shifted => {
                    // (1 - x)^a
                    for i in 0..=a {
                        let mut c = Rat::from_integer(binomial(a, i));
                        if i % 2 == 1 {
                            c = -c;
                        }
                        coeffs[i as usize] += c * term.coeff.clone();
                    }
                }
            }
        }
        Ok(DiagonalPolynomial::new(self.k, coeffs))
    }

    /// Evaluates `F(t + y e_j)`, returning 0 when the shifted point leaves the
    /// declared support.
    pub fn shift_evaluate(
        &self,
        t: &[f64],
        j: usize,
        y: f64,
        support: Option<SupportKind>,
    ) -> Result<f64> {
        if t.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                got: t.len(),
            });
        }
        if j == 0 || j > self.k {
            return Err(Error::InvalidParams(format!(
                "shift coordinate {j} out of 1..={}",
                self.k
            )));
        }
        let mut shifted = t.to_vec();
        shifted[j - 1] += y;
        if let Some(kind) = support {
            if !in_support(&shifted, kind) {
                return Ok(0.0);
            }
        }
        self.evaluate(&shifted)
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term::new(t.coeff.clone() * c.clone(), t.exponents.clone()))
            .collect();
        SymmetricPolynomial {
            k: self.k,
            basis: self.basis,
            terms: normalize(terms),
        }
    }

    /// Exact linear combination `a*self + b*other` (bases are aligned first).
    pub fn linear_combination(&self, a: &Rat, other: &Self, b: &Rat) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                got: other.k,
            });
        }
        let lhs = self.to_raw();
        let rhs = other.to_raw();
        let mut terms = Vec::new();
        terms.extend(
            lhs.terms
                .iter()
                .map(|t| Term::new(t.coeff.clone() * a.clone(), t.exponents.clone())),
        );
        terms.extend(
            rhs.terms
                .iter()
                .map(|t| Term::new(t.coeff.clone() * b.clone(), t.exponents.clone())),
        );
        SymmetricPolynomial::new(self.k, Basis::Raw, terms)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let spec: PolySpec = self.into();
        serde_json::to_value(spec).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let spec: PolySpec = serde_json::from_value(v.clone())?;
        spec.try_into()
    }
}

/// Membership in the weight support (closed, box-restricted).
pub fn in_support(t: &[f64], kind: SupportKind) -> bool {
    if t.iter().any(|&x| !(0.0..=1.0).contains(&x)) {
        return false;
    }
    let total: f64 = t.iter().sum();
    match kind {
        SupportKind::Simplex => total <= 1.0,
        SupportKind::Extended => t.iter().all(|&x| total - x <= 1.0),
    }
}

fn normalize(terms: Vec<Term>) -> Vec<Term> {
    let mut map: BTreeMap<BTreeMap<u32, u32>, Rat> = BTreeMap::new();
    for t in terms {
        *map.entry(t.exponents).or_insert_with(Rat::zero) += t.coeff;
    }
    map.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| Term {
            coeff: c,
            exponents: e,
        })
        .collect()
}

/// Substitutes `P_1 -> 1 - Q` in every term (the same expansion converts in
/// both directions since the map is an involution).
fn flip_p1_basis(terms: &[Term]) -> Vec<Term> {
    let mut out = Vec::new();
    for term in terms {
        let a = term.exponents.get(&1).copied().unwrap_or(0) as u64;
        let rest: BTreeMap<u32, u32> = term
            .exponents
            .iter()
            .filter(|&(&j, _)| j != 1)
            .map(|(&j, &e)| (j, e))
            .collect();
        for i in 0..=a {
            let mut c = Rat::from_integer(binomial(a, i));
            if i % 2 == 1 {
                c = -c;
            }
            let mut exps = rest.clone();
            if i > 0 {
                exps.insert(1, i as u32);
            }
            out.push(Term::new(c * term.coeff.clone(), exps));
        }
    }
    normalize(out)
}

/// Univariate reduction of a `P_1`-only weight, with an exact antiderivative.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalPolynomial {
    pub k: usize,
    coeffs: Vec<Rat>,
    coeffs_f64: Vec<f64>,
    antider_f64: Vec<f64>,
}

impl DiagonalPolynomial {
    pub fn new(k: usize, coeffs: Vec<Rat>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Rat::zero());
        }
        let coeffs_f64: Vec<f64> = coeffs.iter().map(to_f64).collect();
        let antider_f64 = FPoly::new(coeffs_f64.clone()).antiderivative().c;
        DiagonalPolynomial {
            k,
            coeffs,
            coeffs_f64,
            antider_f64,
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        horner(&self.coeffs_f64, x)
    }

    /// Antiderivative normalized to vanish at 0; `antider'(x) = f(x)` exactly
    /// at the rational level.
    pub fn antider_exact(&self) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] = c / Rat::from_integer((i as i64 + 1).into());
        }
        out
    }

    pub fn antider_eval(&self, x: f64) -> f64 {
        horner(&self.antider_f64, x)
    }

    pub fn int(&self, a: f64, b: f64) -> f64 {
        self.antider_eval(b) - self.antider_eval(a)
    }

    /// The clipped primitive: integral of `f` from `min(a, 1+u)` to
    /// `min(b, 1+u)` (both limits capped).
    pub fn int_clipped(&self, a: f64, b: f64, u: f64) -> f64 {
        let cap = 1.0 + u;
        self.int(a.min(cap), b.min(cap))
    }

    pub fn as_fpoly(&self) -> FPoly {
        FPoly::new(self.coeffs_f64.clone())
    }

    /// Antiderivative of `f(x)^2`.
    pub fn square_antider(&self) -> FPoly {
        let f = self.as_fpoly();
        f.mul(&f).antiderivative()
    }

    /// Antiderivative in `x` of `(f(x) - f(x+y))^2` for fixed `y`.
    pub fn shift_diff_square_antider(&self, y: f64) -> FPoly {
        let f = self.as_fpoly();
        let d = f.sub(&f.taylor_shift(y));
        d.mul(&d).antiderivative()
    }
}

/// Dense univariate polynomial over f64 (ascending coefficients).
#[derive(Debug, Clone, PartialEq)]
pub struct FPoly {
    pub c: Vec<f64>,
}

impl FPoly {
    pub fn new(c: Vec<f64>) -> Self {
        FPoly { c }
    }

    pub fn eval(&self, x: f64) -> f64 {
        horner(&self.c, x)
    }

    pub fn mul(&self, other: &FPoly) -> FPoly {
        let mut out = vec![0.0; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        FPoly::new(out)
    }

    pub fn sub(&self, other: &FPoly) -> FPoly {
        let n = self.c.len().max(other.c.len());
        let mut out = vec![0.0; n];
        for (i, &a) in self.c.iter().enumerate() {
            out[i] += a;
        }
        for (i, &b) in other.c.iter().enumerate() {
            out[i] -= b;
        }
        FPoly::new(out)
    }

    pub fn antiderivative(&self) -> FPoly {
        let mut out = vec![0.0; self.c.len() + 1];
        for (i, &a) in self.c.iter().enumerate() {
            out[i + 1] = a / (i as f64 + 1.0);
        }
        FPoly::new(out)
    }

    /// Coefficients of `p(x + y)` as a polynomial in `x`.
    pub fn taylor_shift(&self, y: f64) -> FPoly {
        let n = self.c.len();
        let mut out = vec![0.0; n];
        for (j, &cj) in self.c.iter().enumerate() {
            let mut binom = 1.0;
            let mut ypow = 1.0;
            for i in (0..=j).rev() {
                // binom = C(j, i), accumulated from i = j downwards
                out[i] += cj * binom * ypow;
                if i > 0 {
                    binom *= i as f64;
                    binom /= (j - i + 1) as f64;
                    ypow *= y;
                }
            }
        }
        FPoly::new(out)
    }
}

fn horner(c: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for &ci in c.iter().rev() {
        acc = acc * x + ci;
    }
    acc
}

/// On-disk polynomial format:
/// `{"k": 5, "basis": "shifted", "terms": [{"c": "11", "e": {}}, ...]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct PolySpec {
    pub k: usize,
    pub basis: Basis,
    pub terms: Vec<TermSpec>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TermSpec {
    pub c: String,
    #[serde(default)]
    pub e: BTreeMap<String, u32>,
}

impl From<&SymmetricPolynomial> for PolySpec {
    fn from(p: &SymmetricPolynomial) -> Self {
        PolySpec {
            k: p.k,
            basis: p.basis,
            terms: p
                .terms
                .iter()
                .map(|t| TermSpec {
                    c: format_rat(&t.coeff),
                    e: t
                        .exponents
                        .iter()
                        .map(|(&j, &e)| (j.to_string(), e))
                        .collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolySpec> for SymmetricPolynomial {
    type Error = Error;

    fn try_from(spec: PolySpec) -> Result<Self> {
        let mut terms = Vec::new();
        for t in spec.terms {
            let coeff = parse_rat(&t.c)?;
            let mut exps = BTreeMap::new();
            for (j, e) in t.e {
                let j: u32 = j
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad power-sum index {j:?}")))?;
                if j == 0 {
                    return Err(Error::Parse("power-sum index must be >= 1".into()));
                }
                exps.insert(j, e);
            }
            terms.push(Term::new(coeff, exps));
        }
        SymmetricPolynomial::new(spec.k, spec.basis, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn headline() -> SymmetricPolynomial {
        SymmetricPolynomial::from_shifted_p1_coeffs(5, &[11, 85, 170])
    }

    #[test]
    fn evaluate_headline_at_origin() {
        let f = headline();
        // P_1 = 0 so the value is 11 + 85 + 170
        assert_eq!(f.evaluate(&[0.0; 5]).unwrap(), 266.0);
    }

    #[test]
    fn evaluate_headline_on_diagonal_face() {
        let f = headline();
        // sum t_i = 1 kills the shifted factors
        let t = [0.2, 0.2, 0.2, 0.2, 0.2];
        assert!((f.evaluate(&t).unwrap() - 11.0).abs() < 1e-12);
    }

    #[test]
    fn evaluate_table_entry_k3() {
        // 1846 - 3225 P1 + 2203 P1^2 - 727 P1^3 + 228 P2 - 223 P1 P2
        // at t = (0.2, 0.3, 0.1): P1 = 0.6, P2 = 0.14; expanded by hand.
        let f = SymmetricPolynomial::from_raw_terms(
            3,
            &[
                (1846, &[]),
                (-3225, &[(1, 1)]),
                (2203, &[(1, 2)]),
                (-727, &[(1, 3)]),
                (228, &[(2, 1)]),
                (-223, &[(1, 1), (2, 1)]),
            ],
        );
        let expected = 1846.0 - 3225.0 * 0.6 + 2203.0 * 0.36 - 727.0 * 0.216 + 228.0 * 0.14
            - 223.0 * 0.6 * 0.14;
        assert!((f.evaluate(&[0.2, 0.3, 0.1]).unwrap() - expected).abs() < 1e-10);
        let exact = f
            .evaluate_exact(&[rat(1, 5), rat(3, 10), rat(1, 10)])
            .unwrap();
        assert!((to_f64(&exact) - expected).abs() < 1e-10);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        assert!(matches!(
            headline().evaluate(&[0.0; 4]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn basis_round_trip_identical_terms() {
        let f = headline();
        let back = f.to_raw().to_shifted();
        assert_eq!(f.terms(), back.terms());
        // and evaluations agree
        let t = [0.11, 0.07, 0.2, 0.05, 0.31];
        assert!((f.evaluate(&t).unwrap() - f.to_raw().evaluate(&t).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn diagonal_reduce_headline() {
        let f = headline().diagonal_reduce().unwrap();
        // f(x) = 11 + 85(1-x) + 170(1-x)^2 = 266 - 425 x + 170 x^2
        assert_eq!(
            f.coeffs(),
            &[rat_int(266), rat_int(-425), rat_int(170)][..]
        );
        assert!((f.eval(0.3) - (11.0 + 85.0 * 0.7 + 170.0 * 0.49)).abs() < 1e-12);
    }

    #[test]
    fn diagonal_reduce_constant() {
        let f = SymmetricPolynomial::constant(4, rat_int(7));
        assert_eq!(f.diagonal_reduce().unwrap().coeffs(), &[rat_int(7)][..]);
    }

    #[test]
    fn diagonal_reduce_rejects_p2() {
        let f = SymmetricPolynomial::from_raw_terms(3, &[(228, &[(2, 1)])]);
        assert!(matches!(
            f.diagonal_reduce(),
            Err(Error::ReductionUnavailable(_))
        ));
    }

    #[test]
    fn diagonal_agrees_with_direct_evaluation() {
        let f = headline();
        let d = f.diagonal_reduce().unwrap();
        let t = [0.05, 0.1, 0.15, 0.2, 0.25];
        let sum: f64 = t.iter().sum();
        assert!((f.evaluate(&t).unwrap() - d.eval(sum)).abs() < 1e-12);
    }

    #[test]
    fn int_clipped_clips_both_limits() {
        // f == 1: the clipped integral is the clipped interval length
        let one = DiagonalPolynomial::new(3, vec![rat_int(1)]);
        assert!((one.int_clipped(0.2, 0.9, -0.5) - 0.3).abs() < 1e-15);
        // a = b gives 0
        assert_eq!(one.int_clipped(0.4, 0.4, 1.0), 0.0);
        // fully above the cap gives 0
        assert_eq!(one.int_clipped(1.8, 2.0, 0.25), 0.0);
    }

    #[test]
    fn shift_evaluate_support_indicator() {
        let f = headline();
        let t = [0.3; 5];
        // shifting t_1 by 1 leaves the extended support
        assert_eq!(
            f.shift_evaluate(&t, 1, 1.0, Some(SupportKind::Extended))
                .unwrap(),
            0.0
        );
        // y = 0 is the identity when the point is inside
        let inside = [0.1; 5];
        assert_eq!(
            f.shift_evaluate(&inside, 2, 0.0, Some(SupportKind::Extended))
                .unwrap(),
            f.evaluate(&inside).unwrap()
        );
        // simplex example: F = 1 - P1 at t = (0.2, 0.2, 0.2) shifted by 0.3
        let g = SymmetricPolynomial::new(
            3,
            Basis::Shifted,
            vec![Term::new(rat_int(1), [(1, 1)].into_iter().collect())],
        )
        .unwrap();
        let v = g
            .shift_evaluate(&[0.2, 0.2, 0.2], 1, 0.3, Some(SupportKind::Simplex))
            .unwrap();
        assert!((v - 0.1).abs() < 1e-12);
    }

    #[test]
    fn taylor_shift_matches_pointwise() {
        let p = FPoly::new(vec![1.0, -2.0, 3.0, 0.5]);
        let q = p.taylor_shift(0.7);
        for &x in &[0.0, 0.3, 1.1, -0.4] {
            assert!((q.eval(x) - p.eval(x + 0.7)).abs() < 1e-10);
        }
    }

    #[test]
    fn json_round_trip() {
        let f = SymmetricPolynomial::from_raw_terms(5, &[(17195, &[]), (-5148, &[(1, 1), (2, 1)])]);
        let v = f.to_json();
        let back = SymmetricPolynomial::from_json(&v).unwrap();
        assert_eq!(f, back);
    }
}
