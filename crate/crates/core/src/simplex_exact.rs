//! Exact rational integration of weight polynomials over scaled simplices.
//!
//! Powers the `theta0 = 1` evaluation where every correction term vanishes
//! and `Upsilon = k J_0 / J + k`: both `J` and `J_0` come out as exact
//! rationals (plus an exact `J * ln(1/theta)` tail for `J_0`), so the
//! conjectured table values can be rendered to full printed precision.

use crate::error::{Error, Result};
use crate::rat::{factorial, to_f64, Rat};
use crate::sympoly::{Basis, SymmetricPolynomial};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::Mutex;

/// Cache of exact monomial integrals over the unit simplex
/// `Delta_k(1) = {t in R_{>=0}^k : sum t_i <= 1}`:
/// `integral of prod t_i^{a_i} = (prod a_i!) / (k + sum a_i)!`,
/// with the scaling law `Delta_k(u)` multiplying by `u^{k + sum a_i}`.
pub struct MonomialIntegralTable {
    pub k: usize,
    cache: Mutex<HashMap<Vec<u32>, Rat>>,
}

impl MonomialIntegralTable {
    pub fn new(k: usize) -> Self {
        MonomialIntegralTable {
            k,
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// Exact `integral over Delta_k(u) of prod t_i^{a_i}`.
    pub fn simplex_monomial(&self, a: &[u32], u: &Rat) -> Rat {
        assert_eq!(a.len(), self.k, "exponent vector length");
        let base = self.unit_value(a);
        let total: u32 = a.iter().sum();
        let mut upow = Rat::one();
        for _ in 0..(self.k as u32 + total) {
            upow *= u.clone();
        }
        base * upow
    }

    fn unit_value(&self, a: &[u32]) -> Rat {
        let mut key: Vec<u32> = a.to_vec();
        key.sort_unstable();
        let mut cache = self.cache.lock().unwrap();
        cache
            .entry(key.clone())
            .or_insert_with(|| {
                let total: u64 = key.iter().map(|&x| x as u64).sum();
                let mut num = BigInt::one();
                for &ai in &key {
                    num *= factorial(ai as u64);
                }
                Rat::new(num, factorial(self.k as u64 + total))
            })
            .clone()
    }
}

/// `rational + log_coeff * ln(1/theta)`, kept exact until rendering.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactValue {
    pub rational: Rat,
    pub log_coeff: Rat,
}

impl ExactValue {
    pub fn to_f64(&self, theta: &Rat) -> f64 {
        let ln = -to_f64(theta).ln();
        to_f64(&self.rational) + to_f64(&self.log_coeff) * ln
    }
}

/// Exact `J = integral over Delta_k(1) of F^2`.
pub fn conjecture_j(f: &SymmetricPolynomial) -> Result<Rat> {
    let split = SplitPoly::from_sympoly(f)?;
    let sq = split.mul(&split);
    let mut ctx = IntegralContext::new(f.k);
    Ok(sq.integrate_unit(&mut ctx))
}

/// Exact `J_0` at `theta0 = 1` over the simplex:
/// the inner `y <= 1` part integrates piecewise polynomials exactly and the
/// `y in (1, 1/theta]` tail contributes `J (ln(1/theta) - (1 - theta))`.
pub fn conjecture_j0(f: &SymmetricPolynomial, theta: &Rat) -> Result<ExactValue> {
    if *theta <= Rat::zero() || *theta > Rat::one() {
        return Err(Error::InvalidParams(
            "conjecture-mode theta must lie in (0, 1]".into(),
        ));
    }
    let k = f.k;
    let mut ctx = IntegralContext::new(k);
    let split = SplitPoly::from_sympoly(f)?;
    let shifted = split.shift_t1();
    let diff = split.sub(&shifted);
    let diff_sq = diff.mul(&diff);
    let f_sq = split.mul(&split);

    // inner integral for y in [0, 1]:
    //   I1(y) = integral over Delta_k(1-y) of (F(t) - F(t + y e_1))^2
    //   I2(y) = J - integral over Delta_k(1-y) of F^2
    let j = f_sq.integrate_unit(&mut ctx);
    let i1 = diff_sq.integrate_scaled(&mut ctx);
    let i2_sub = f_sq.integrate_scaled(&mut ctx);
    let mut s = i1;
    s.add_assign(&YPoly::constant(j.clone()));
    s.sub_assign(&i2_sub);

    // S(0) = 0 identically, so S/y is a polynomial
    if !s.coeff(0).is_zero() {
        return Err(Error::InvalidPolynomial(
            "shift difference does not vanish at y = 0".into(),
        ));
    }
    // S(1) = J: the shifted part is fully outside, the shell is everything
    debug_assert_eq!(s.eval_one(), j);
    let q = s.shift_down();

    // integral_0^1 (1 - theta y) * q(y) dy
    let mut part = Rat::zero();
    for (n, c) in q.coeffs.iter().enumerate() {
        part += c / Rat::from_integer(BigInt::from(n as u64 + 1));
        part -= theta * c / Rat::from_integer(BigInt::from(n as u64 + 2));
    }
    // tail y in (1, 1/theta]: integrand ((1 - theta y)/y) J
    let tail_rational = -j.clone() * (Rat::one() - theta.clone());
    Ok(ExactValue {
        rational: part + tail_rational,
        log_coeff: j,
    })
}

/// Conjecture-mode combination `k J_0 / J + k / theta0` with `theta0 = 1`.
pub fn conjecture_upsilon(f: &SymmetricPolynomial, theta: &Rat) -> Result<f64> {
    let j = conjecture_j(f)?;
    if j.is_zero() {
        return Err(Error::InvalidPolynomial("J = 0 for this weight".into()));
    }
    let j0 = conjecture_j0(f, theta)?;
    let k = f.k as f64;
    let ratio = to_f64(&(j0.rational.clone() / j.clone()));
    let logpart = to_f64(&(j0.log_coeff / j)) * (-to_f64(theta).ln());
    Ok(k * (ratio + logpart) + k)
}

/// Polynomial in `t_1`, the shift variable `y`, and power sums
/// `P'_j = t_2^j + ... + t_k^j` of the remaining coordinates. This is the
/// smallest closure of symmetric weights under the shift `t_1 -> t_1 + y`,
/// and it integrates over scaled simplices in closed form.
#[derive(Debug, Clone)]
struct SplitPoly {
    k: usize,
    /// (t1 exponent, y exponent, sorted power-sum factors (j, e)) -> coeff
    terms: HashMap<(u32, u32, Vec<(u32, u32)>), Rat>,
}

impl SplitPoly {
    fn new(k: usize) -> Self {
        SplitPoly {
            k,
            terms: HashMap::new(),
        }
    }

    fn insert(&mut self, key: (u32, u32, Vec<(u32, u32)>), c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            // keep the map sparse
        }
    }

    fn from_sympoly(f: &SymmetricPolynomial) -> Result<Self> {
        let raw = f.to_raw();
        debug_assert_eq!(raw.basis, Basis::Raw);
        let mut out = SplitPoly::new(f.k);
        for term in raw.terms() {
            // expand prod_j (t1^j + P'_j)^{e_j}
            let mut acc: Vec<((u32, Vec<(u32, u32)>), Rat)> =
                vec![((0, Vec::new()), term.coeff.clone())];
            for (&j, &e) in &term.exponents {
                let mut next = Vec::new();
                for ((t1, ps), c) in &acc {
                    for i in 0..=e {
                        let c2 = c * Rat::from_integer(crate::rat::binomial(e as u64, i as u64));
                        if c2.is_zero() {
                            continue;
                        }
                        let mut ps2 = ps.clone();
                        if e - i > 0 {
                            ps2.push((j, e - i));
                        }
                        ps2.sort_unstable();
                        next.push(((t1 + j * i, ps2), c2));
                    }
                }
                acc = next;
            }
            for ((t1, ps), c) in acc {
                out.insert((t1, 0, ps), c);
            }
        }
        Ok(out)
    }

    /// Substitutes `t_1 -> t_1 + y`.
    fn shift_t1(&self) -> Self {
        let mut out = SplitPoly::new(self.k);
        for ((a, b, ps), c) in &self.terms {
            for i in 0..=*a {
                let bin = Rat::from_integer(crate::rat::binomial(*a as u64, i as u64));
                out.insert((i, b + (a - i), ps.clone()), c * bin);
            }
        }
        out
    }

    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (key, c) in &other.terms {
            out.insert(key.clone(), -c.clone());
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = SplitPoly::new(self.k);
        for ((a1, b1, ps1), c1) in &self.terms {
            if c1.is_zero() {
                continue;
            }
            for ((a2, b2, ps2), c2) in &other.terms {
                if c2.is_zero() {
                    continue;
                }
                let mut ps = ps1.clone();
                for &(j, e) in ps2 {
                    if let Some(slot) = ps.iter_mut().find(|(jj, _)| *jj == j) {
                        slot.1 += e;
                    } else {
                        ps.push((j, e));
                    }
                }
                ps.sort_unstable();
                out.insert((a1 + a2, b1 + b2, ps), c1 * c2);
            }
        }
        out
    }

    /// Exact integral over `Delta_k(1)` (terms must carry no `y`).
    fn integrate_unit(&self, ctx: &mut IntegralContext) -> Rat {
        let mut acc = Rat::zero();
        for ((a, b, ps), c) in &self.terms {
            assert_eq!(*b, 0, "unit integration of a y-dependent term");
            acc += c * ctx.t1_powersum_integral(*a, ps);
        }
        acc
    }

    /// Exact integral over `Delta_k(1 - y)` as a polynomial in `y`
    /// (scaling each monomial by `(1-y)^{k + degree}`).
    fn integrate_scaled(&self, ctx: &mut IntegralContext) -> YPoly {
        let mut out = YPoly::zero();
        for ((a, b, ps), c) in &self.terms {
            let base = c * ctx.t1_powersum_integral(*a, ps);
            if base.is_zero() {
                continue;
            }
            let deg: u32 = a + ps.iter().map(|&(j, e)| j * e).sum::<u32>();
            let m = self.k as u32 + deg;
            // base * y^b * (1-y)^m
            for i in 0..=m {
                let mut coef = base.clone()
                    * Rat::from_integer(crate::rat::binomial(m as u64, i as u64));
                if i % 2 == 1 {
                    coef = -coef;
                }
                out.add_coeff((b + i) as usize, coef);
            }
        }
        out
    }
}

/// Memoized exact integrals of `t_1^a * prod P'_{j}^{e}` over `Delta_k(1)`.
struct IntegralContext {
    k: usize,
    memo: HashMap<(u32, Vec<(u32, u32)>), Rat>,
}

impl IntegralContext {
    fn new(k: usize) -> Self {
        IntegralContext {
            k,
            memo: HashMap::new(),
        }
    }

    fn t1_powersum_integral(&mut self, a: u32, ps: &[(u32, u32)]) -> Rat {
        if let Some(v) = self.memo.get(&(a, ps.to_vec())) {
            return v.clone();
        }
        // factor list with multiplicity
        let mut factors = Vec::new();
        for &(j, e) in ps {
            for _ in 0..e {
                factors.push(j);
            }
        }
        let m = factors.len();
        let total_j: u64 = factors.iter().map(|&j| j as u64).sum();
        let denom = factorial(self.k as u64 + a as u64 + total_j);
        let a_fact = factorial(a as u64);
        let kk = self.k as i64;

        // sum over set partitions of the factor multiset: each partition block
        // binds one of the k-1 non-distinguished coordinates
        let mut acc = Rat::zero();
        let mut assignment = vec![0usize; m];
        // iterative enumeration of restricted growth strings
        fn recurse(
            idx: usize,
            maxb: usize,
            assignment: &mut Vec<usize>,
            factors: &[u32],
            kk: i64,
            a_fact: &BigInt,
            denom: &BigInt,
            acc: &mut Rat,
        ) {
            let m = factors.len();
            if idx == m {
                let nblocks = maxb;
                if nblocks as i64 > kk - 1 {
                    return;
                }
                let mut contrib = a_fact.clone();
                // falling factorial (k-1)(k-2)...(k-nblocks)
                for b in 0..nblocks {
                    contrib *= BigInt::from(kk - 1 - b as i64);
                }
                let mut sums = vec![0u64; nblocks];
                for (i, &b) in assignment.iter().enumerate() {
                    sums[b] += factors[i] as u64;
                }
                for s in sums {
                    contrib *= factorial(s);
                }
                *acc += Rat::new(contrib, denom.clone());
                return;
            }
            for b in 0..=maxb.min(idx) {
                assignment[idx] = b;
                let nb = if b == maxb { maxb + 1 } else { maxb };
                recurse(idx + 1, nb, assignment, factors, kk, a_fact, denom, acc);
            }
        }
        if m == 0 {
            acc = Rat::new(a_fact.clone(), denom.clone());
        } else {
            recurse(0, 0, &mut assignment, &factors, kk, &a_fact, &denom, &mut acc);
        }
        self.memo.insert((a, ps.to_vec()), acc.clone());
        acc
    }
}

/// Dense univariate polynomial in `y` with exact coefficients.
#[derive(Debug, Clone, PartialEq)]
struct YPoly {
    coeffs: Vec<Rat>,
}

impl YPoly {
    fn zero() -> Self {
        YPoly { coeffs: Vec::new() }
    }

    fn constant(c: Rat) -> Self {
        YPoly { coeffs: vec![c] }
    }

    fn coeff(&self, n: usize) -> Rat {
        self.coeffs.get(n).cloned().unwrap_or_else(Rat::zero)
    }

    fn add_coeff(&mut self, n: usize, c: Rat) {
        if self.coeffs.len() <= n {
            self.coeffs.resize(n + 1, Rat::zero());
        }
        self.coeffs[n] += c;
    }

    fn add_assign(&mut self, other: &YPoly) {
        for (n, c) in other.coeffs.iter().enumerate() {
            self.add_coeff(n, c.clone());
        }
    }

    fn sub_assign(&mut self, other: &YPoly) {
        for (n, c) in other.coeffs.iter().enumerate() {
            self.add_coeff(n, -c.clone());
        }
    }

    fn eval_one(&self) -> Rat {
        let mut acc = Rat::zero();
        for c in &self.coeffs {
            acc += c.clone();
        }
        acc
    }

    /// Divides by `y` (requires zero constant term).
    fn shift_down(mut self) -> Self {
        if !self.coeffs.is_empty() {
            debug_assert!(self.coeffs[0].is_zero());
            self.coeffs.remove(0);
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate_mc, QuadConfig};
    use crate::rat::{rat, rat_int};
    use crate::regions::make_support;
    use crate::params::SupportKind;

    #[test]
    fn monomial_basics() {
        let t2 = MonomialIntegralTable::new(2);
        assert_eq!(t2.simplex_monomial(&[1, 0], &rat_int(1)), rat(1, 6));
        let t3 = MonomialIntegralTable::new(3);
        assert_eq!(t3.simplex_monomial(&[0, 0, 0], &rat_int(1)), rat(1, 6));
    }

    #[test]
    fn monomial_scaling_vs_mc() {
        // k = 5, a = (2,1,0,0,0), u = 1/2
        let t5 = MonomialIntegralTable::new(5);
        let exact = t5.simplex_monomial(&[2, 1, 0, 0, 0], &rat(1, 2));
        let expected = rat(2, 1) / Rat::from_integer(factorial(8)) * rat(1, 256);
        assert_eq!(exact, expected);
        // Monte-Carlo cross-check on the half simplex
        let mut region = make_support(5, SupportKind::Simplex);
        region.constraints[0] = crate::regions::Constraint::new(
            vec![rat_int(1); 5],
            rat(1, 2),
            crate::regions::Sense::Le,
        );
        let cfg = QuadConfig {
            mc_samples: 400_000,
            seed: 3,
            ..Default::default()
        };
        let mc = integrate_mc(&region, &|t: &[f64]| t[0] * t[0] * t[1], &cfg).unwrap();
        let ex = to_f64(&exact);
        assert!(
            (mc.value - ex).abs() < 3.0 * mc.stderr.max(1e-9),
            "mc {} vs exact {}",
            mc.value,
            ex
        );
    }

    #[test]
    fn conjecture_j_constant() {
        let f = SymmetricPolynomial::constant(3, rat_int(1));
        assert_eq!(conjecture_j(&f).unwrap(), rat(1, 6));
    }

    #[test]
    fn conjecture_j_one_minus_p1() {
        // integral over Delta_3 of (1 - sum t)^2 = 1/60
        let f = SymmetricPolynomial::from_shifted_p1_coeffs(3, &[0, 1]);
        assert_eq!(conjecture_j(&f).unwrap(), rat(1, 60));
    }

    #[test]
    fn conjecture_j_with_p2_against_mc() {
        let f = SymmetricPolynomial::from_raw_terms(3, &[(1, &[(2, 1)])]);
        let exact = conjecture_j(&f).unwrap();
        let region = make_support(3, SupportKind::Simplex);
        let cfg = QuadConfig {
            mc_samples: 300_000,
            seed: 17,
            ..Default::default()
        };
        let g = |t: &[f64]| {
            let p2: f64 = t.iter().map(|x| x * x).sum();
            p2 * p2
        };
        let mc = integrate_mc(&region, &g, &cfg).unwrap();
        assert!((mc.value - to_f64(&exact)).abs() < 3.0 * mc.stderr.max(1e-6));
    }

    #[test]
    fn conjecture_j0_constant_weight_closed_form() {
        // F == c: I1 = 0 and the shell term gives
        // J0 = c^2 [ int_0^1 (1-θy)(1-(1-y)^k)/y dy + J/c^2 * tail ] ... the
        // point of the test: exact path matches a high-accuracy numeric
        // evaluation of the same closed form.
        let c = 3.0f64;
        let k = 4usize;
        let f = SymmetricPolynomial::constant(k, rat_int(3));
        let theta = rat(1, 3);
        let exact = conjecture_j0(&f, &theta).unwrap();
        let got = exact.to_f64(&theta);
        // numeric reference by direct quadrature in y
        let vol = 1.0 / factorial(k as u64).to_string().parse::<f64>().unwrap();
        let j = c * c * vol;
        let n = 400_000;
        let mut acc = 0.0;
        for i in 0..n {
            let y = (i as f64 + 0.5) / n as f64;
            let shell = j * (1.0 - (1.0 - y).powi(k as i32));
            acc += (1.0 - y / 3.0) / y * shell / n as f64;
        }
        let tail = j * ((3.0f64).ln() - (1.0 - 1.0 / 3.0));
        assert!(
            (got - (acc + tail)).abs() < 1e-6,
            "exact {} vs numeric {}",
            got,
            acc + tail
        );
    }

    #[test]
    fn log_coefficient_is_j() {
        let f = SymmetricPolynomial::from_shifted_p1_coeffs(5, &[11, 85, 170]);
        let j = conjecture_j(&f).unwrap();
        let j0 = conjecture_j0(&f, &rat(1, 4)).unwrap();
        assert_eq!(j0.log_coeff, j);
    }

    #[test]
    fn theta_derivative_consistency() {
        // d/dtheta of the numeric rendering matches a finite difference
        let f = SymmetricPolynomial::from_shifted_p1_coeffs(3, &[529, -877, 567]);
        let th = rat(1, 3);
        let h = rat(1, 100000);
        let lo = conjecture_j0(&f, &(th.clone() - h.clone())).unwrap();
        let hi = conjecture_j0(&f, &(th.clone() + h.clone())).unwrap();
        let fd = (hi.to_f64(&(th.clone() + h.clone())) - lo.to_f64(&(th.clone() - h.clone())))
            / (2.0 * to_f64(&h));
        // analytic: d(part1)/dθ = -∫ y q = (B term); tail: J(θ-1+ln(1/θ))' = J(1 - 1/θ)
        // cross-check against a secant of the exact path at a coarser step
        let h2 = rat(1, 1000);
        let lo2 = conjecture_j0(&f, &(th.clone() - h2.clone())).unwrap();
        let hi2 = conjecture_j0(&f, &(th.clone() + h2.clone())).unwrap();
        let fd2 = (hi2.to_f64(&(th.clone() + h2.clone())) - lo2.to_f64(&(th - h2.clone())))
            / (2.0 * to_f64(&h2));
        assert!((fd - fd2).abs() / fd.abs() < 1e-4, "fd {fd} vs {fd2}");
    }
}
