//! The sieve functionals `J`, `J_0`, `J_{1,1}`, `J_{r,s}` and their
//! combination `Upsilon = k (J_0 - theta sum J_{r,s}) / J + k / theta0`.
//!
//! For diagonal weights (`F(t) = f(t_1 + ... + t_k)`) every functional
//! reduces to at most `r - 1` outer adaptive levels around an exact inner
//! `(t, s)` block; conjecture mode (`theta0 = 1`) on the simplex instead
//! uses the exact rational path.

pub mod fixtures;
pub mod tsblock;

use crate::error::{Error, Result};
use crate::params::{Mode, SieveParams, SupportKind};
use crate::quad::{integrate_iterated, IteratedDomain, Limit, QuadConfig};
use crate::rat::to_f64;
use crate::regions::CorrectionDomain;
use crate::simplex_exact::{conjecture_j, conjecture_j0};
use crate::sympoly::{DiagonalPolynomial, SymmetricPolynomial};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use tsblock::{ts_integral, TsInner};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodTag {
    Quadrature,
    Exact,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ValueWithError {
    pub value: f64,
    pub error: f64,
    pub method: MethodTag,
    pub converged: bool,
}

impl ValueWithError {
    fn exact(value: f64) -> Self {
        ValueWithError {
            value,
            error: 0.0,
            method: MethodTag::Exact,
            converged: true,
        }
    }

    fn quad(value: f64, error: f64, converged: bool) -> Self {
        ValueWithError {
            value,
            error,
            method: MethodTag::Quadrature,
            converged,
        }
    }
}

/// Every intermediate of one `Upsilon` evaluation.
#[derive(Debug, Clone, Serialize)]
pub struct FunctionalReport {
    pub k: usize,
    pub theta: String,
    pub theta0: String,
    pub support: SupportKind,
    pub mode: Mode,
    pub j: ValueWithError,
    pub j0: ValueWithError,
    /// Raw difference / shell pieces of `J_0` (before the `1/(k-3)!`
    /// combination), when the quadrature path produced them.
    pub j0_pieces_raw: Option<(f64, f64)>,
    /// Correction terms keyed "r,s".
    pub jrs: BTreeMap<String, ValueWithError>,
    pub upsilon: f64,
    pub upsilon_error: f64,
    pub converged: bool,
    pub warnings: Vec<String>,
}

impl FunctionalReport {
    /// Recomputes the combination from the stored fields.
    pub fn recombine(&self) -> f64 {
        let theta = crate::rat::parse_rat(&self.theta).map(|r| to_f64(&r)).unwrap_or(f64::NAN);
        let theta0 = crate::rat::parse_rat(&self.theta0).map(|r| to_f64(&r)).unwrap_or(f64::NAN);
        let sum: f64 = self.jrs.values().map(|v| v.value).sum();
        self.k as f64 * (self.j0.value - theta * sum) / self.j.value + self.k as f64 / theta0
    }
}

fn factorial_f64(n: usize) -> f64 {
    (1..=n as u64).map(|i| i as f64).product()
}

fn km3_factorial(k: usize) -> f64 {
    factorial_f64(k.saturating_sub(3))
}

fn require_diagonal(f: &SymmetricPolynomial, what: &str) -> Result<DiagonalPolynomial> {
    f.diagonal_reduce().map_err(|_| {
        Error::PathUnavailable(format!(
            "{what} requires a diagonal weight (only P_1 factors); \
             use conjecture mode on the simplex for general polynomials"
        ))
    })
}

/// `J = integral of F^2 over the support`.
pub fn compute_j(f: &SymmetricPolynomial, params: &SieveParams, cfg: &QuadConfig) -> Result<ValueWithError> {
    let k = params.k;
    if f.k != k {
        return Err(Error::DimensionMismatch { expected: k, got: f.k });
    }
    if f.is_diagonal() {
        let d = f.diagonal_reduce()?;
        let a2 = d.square_antider();
        let out = ts_integral(k, params.support, &TsInner::FullRange { antider: &a2 }, false);
        let value = out.total / km3_factorial(k);
        return Ok(ValueWithError::quad(value, 1e-13 * value.abs().max(1.0), true));
    }
    match params.support {
        SupportKind::Simplex => {
            let j = conjecture_j(f)?;
            Ok(ValueWithError::exact(to_f64(&j)))
        }
        SupportKind::Extended => {
            if k > 5 {
                return Err(Error::PathUnavailable(
                    "extended-support J for non-diagonal weights needs k <= 5".into(),
                ));
            }
            // full-dimensional iterated integral over R'_k: the last
            // coordinate runs to min(1, 1 - sum' + min')
            let mut limits: Vec<Limit> = Vec::new();
            for _ in 0..k - 1 {
                limits.push(Limit::constant(0.0, 1.0));
            }
            limits.push(Limit::new(
                |_| 0.0,
                |p: &[f64]| {
                    let sum: f64 = p.iter().sum();
                    let min = p.iter().copied().fold(f64::INFINITY, f64::min);
                    if sum > 1.0 + min {
                        return 0.0;
                    }
                    (1.0 - sum + min).min(1.0)
                },
            ));
            let dom = IteratedDomain::new(limits);
            let fc = f.clone();
            let res = integrate_iterated(
                &dom,
                &move |t: &[f64]| {
                    let v = fc.evaluate(t).unwrap_or(f64::NAN);
                    v * v
                },
                cfg,
            )?;
            Ok(ValueWithError::quad(res.value, res.error, res.converged))
        }
    }
}

pub struct J0Parts {
    pub total: ValueWithError,
    /// (difference piece, shell piece), raw (no `1/(k-3)!`).
    pub pieces_raw: Option<(f64, f64)>,
}

/// `J_0`: the small-prime term, integrating the squared shift difference and
/// the shell against the weight `(theta0 - theta y) / (theta0 y)`.
pub fn compute_j0(f: &SymmetricPolynomial, params: &SieveParams, cfg: &QuadConfig) -> Result<J0Parts> {
    let k = params.k;
    if f.k != k {
        return Err(Error::DimensionMismatch { expected: k, got: f.k });
    }
    if params.mode == Mode::Conjecture && params.support == SupportKind::Simplex {
        let j0 = conjecture_j0(f, &params.theta)?;
        return Ok(J0Parts {
            total: ValueWithError::exact(j0.to_f64(&params.theta)),
            pieces_raw: None,
        });
    }
    let d = require_diagonal(f, "J_0")?;
    let th = params.theta_f64();
    let th0 = params.theta0_f64();
    let ymax = th0 / th;
    let support = params.support;
    let a2 = d.square_antider();
    let w0 = move |y: f64| (th0 - th * y) / (th0 * y);

    let breaks: Vec<f64> = vec![1.0 / (k as f64 - 1.0), 1.0];

    let diff = crate::quad::integrate_1d(
        0.0,
        ymax.min(1.0),
        &breaks,
        &|y| {
            let g = d.shift_diff_square_antider(y);
            let out = ts_integral(k, support, &TsInner::BelowKink { antider: &g, y }, false);
            w0(y) * out.total
        },
        cfg.abs_tol,
        cfg.rel_tol * 0.25,
        cfg.max_depth,
    )?;
    let shell = crate::quad::integrate_1d(
        0.0,
        ymax,
        &breaks,
        &|y| {
            let out = ts_integral(k, support, &TsInner::AboveKink { antider: &a2, y }, false);
            w0(y) * out.total
        },
        cfg.abs_tol,
        cfg.rel_tol * 0.25,
        cfg.max_depth,
    )?;
    let fac = km3_factorial(k);
    Ok(J0Parts {
        total: ValueWithError::quad(
            (diff.value + shell.value) / fac,
            (diff.error + shell.error) / fac,
            diff.converged && shell.converged,
        ),
        pieces_raw: Some((diff.value, shell.value)),
    })
}

/// `J_{1,1}` via its one-level reduction (prefactor `(1-theta0)/theta0`).
pub fn compute_j11(f: &SymmetricPolynomial, params: &SieveParams, cfg: &QuadConfig) -> Result<ValueWithError> {
    let _ = cfg;
    let k = params.k;
    let th0 = params.theta0_f64();
    if th0 >= 1.0 {
        return Ok(ValueWithError::exact(0.0));
    }
    let d = require_diagonal(f, "J_{1,1}")?;
    let a = d.as_fpoly().antiderivative();
    let terms = [(1.0, 0.0, None)];
    let out = ts_integral(
        k,
        params.support,
        &TsInner::AltSumSquared { antider: &a, terms: &terms },
        false,
    );
    let value = (1.0 - th0) / th0 * out.total / km3_factorial(k);
    Ok(ValueWithError::quad(value, 1e-12 * value.abs().max(1.0), true))
}

/// Weight of the shift domain in descending coordinates:
/// `(1 - s*theta0 - theta * sum(below)) / (theta0 * prod v * (1 - theta * sum v))`.
fn shift_weight(v_desc: &[f64], s: u32, th: f64, th0: f64) -> f64 {
    let r_minus_1 = v_desc.len();
    let below_count = r_minus_1 + 1 - s as usize;
    // below group = the `below_count` smallest = tail of the descending list
    let below_sum: f64 = v_desc[r_minus_1 - below_count.min(r_minus_1)..].iter().sum();
    let total: f64 = v_desc.iter().sum();
    let num = 1.0 - s as f64 * th0 - th * below_sum;
    let den = th0 * v_desc.iter().product::<f64>() * (1.0 - th * total);
    num / den
}

/// Alternating-sum terms for the inner block: interval length is the
/// smallest shift, offsets run over subsets of the others.
fn alt_terms(v_desc: &[f64]) -> Vec<(f64, f64, Option<f64>)> {
    let n = v_desc.len();
    let y1 = v_desc[n - 1];
    let rest = &v_desc[..n - 1];
    let mut terms = Vec::with_capacity(1 << rest.len());
    for mask in 0u32..(1 << rest.len()) {
        let mut off = 0.0;
        for (i, &v) in rest.iter().enumerate() {
            if mask >> i & 1 == 1 {
                off += v;
            }
        }
        let sign = if mask.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        terms.push((sign, off, Some(off + y1)));
    }
    terms
}

fn subset_sums(vals: &[f64]) -> Vec<f64> {
    let mut sums = vec![0.0];
    for &v in vals {
        let mut more: Vec<f64> = sums.iter().map(|s| s + v).collect();
        sums.append(&mut more);
    }
    sums
}

/// Generic `J_{r,s}` over the rescaled shift domain; `params.mode == Flat`
/// applies the restricted cap. `(1,1)` delegates to [`compute_j11`].
pub fn compute_jrs(
    f: &SymmetricPolynomial,
    params: &SieveParams,
    r: u32,
    s: u32,
    cfg: &QuadConfig,
) -> Result<ValueWithError> {
    if s == 0 || s > r {
        return Err(Error::InvalidCorrection { r, s });
    }
    if !crate::params::SUPPORTED_CORRECTIONS.contains(&(r, s)) {
        return Err(Error::UnsupportedCorrection {
            r,
            s,
            hint: format!("supported pairs: {:?}", crate::params::SUPPORTED_CORRECTIONS),
        });
    }
    if (r, s) == (1, 1) {
        return compute_j11(f, params, cfg);
    }
    if params.theta0_f64() >= 1.0 {
        return Ok(ValueWithError::exact(0.0));
    }
    let d = require_diagonal(f, "J_{r,s}")?;
    let cd = CorrectionDomain::new(r, s, params)?;
    if cd.cap <= 0.0 {
        return Ok(ValueWithError::exact(0.0));
    }
    let k = params.k;
    let th = params.theta_f64();
    let th0 = params.theta0_f64();
    let support = params.support;
    let antider = d.as_fpoly().antiderivative();
    let dim = cd.dim();

    let mut limits: Vec<Limit> = Vec::new();
    for lvl in 0..dim {
        let cd_lo = cd.clone();
        let cd_hi = cd.clone();
        let m = cd.m;
        limits.push(
            Limit::new(
                move |outer: &[f64]| cd_lo.level_bounds(lvl, outer).0,
                move |outer: &[f64]| cd_hi.level_bounds(lvl, outer).1,
            )
            .with_breaks(move |outer: &[f64]| {
                let mut b: Vec<f64> = subset_sums(outer).iter().map(|s| 1.0 - s).collect();
                b.push(m);
                if outer.len() == 2 {
                    // branch line y = z + w for the four-shift case
                    b.push(outer[0] - outer[1]);
                }
                b
            }),
        );
    }
    let dom = IteratedDomain::new(limits);
    let res = integrate_iterated(
        &dom,
        &move |v_desc: &[f64]| {
            let terms = alt_terms(v_desc);
            let out = ts_integral(
                k,
                support,
                &TsInner::AltSumSquared { antider: &antider, terms: &terms },
                false,
            );
            shift_weight(v_desc, s, th, th0) * out.total
        },
        cfg,
    )?;
    let fac = km3_factorial(k);
    Ok(ValueWithError::quad(
        res.value / fac,
        res.error / fac,
        res.converged,
    ))
}

/// The restricted variant: same integrand over the flat-capped domain.
pub fn compute_jrs_flat(
    f: &SymmetricPolynomial,
    params: &SieveParams,
    r: u32,
    s: u32,
    cfg: &QuadConfig,
) -> Result<ValueWithError> {
    let mut p = params.clone();
    p.mode = Mode::Flat;
    compute_jrs(f, &p, r, s, cfg)
}

/// Raw per-piece values of `J_{r,s}` (no `1/(k-3)!`), split by the case
/// decomposition of the clipped inner integrals. Labels follow the k = 5
/// fixture names where those exist.
pub fn compute_jrs_pieces(
    f: &SymmetricPolynomial,
    params: &SieveParams,
    r: u32,
    s: u32,
    panels: usize,
) -> Result<Vec<(String, f64)>> {
    if (r, s) == (1, 1) || s == 0 || s > r {
        return Err(Error::UnsupportedCorrection {
            r,
            s,
            hint: "piece decomposition applies to shift pairs with r >= 2".into(),
        });
    }
    let d = require_diagonal(f, "J_{r,s} pieces")?;
    let cd = CorrectionDomain::new(r, s, params)?;
    let k = params.k;
    let th = params.theta_f64();
    let th0 = params.theta0_f64();
    let support = params.support;
    let antider = d.as_fpoly().antiderivative();
    let dim = cd.dim();
    let rule = crate::quad::gl_nodes(16);

    // piece bucket count and the (branch, clip-count) -> bucket map
    let npieces: usize = match (r, s) {
        (2, _) => 2,
        (3, _) => 4,
        (4, 1) => 11,
        _ => (1 << (r - 1)) as usize,
    };
    let map_piece = |v_desc: &[f64], clip_count: usize| -> usize {
        match (r, s) {
            (2, _) => 1 - clip_count.min(1),
            (3, _) => 3 - clip_count.min(3),
            (4, 1) => {
                let wide = v_desc[0] > v_desc[1] + v_desc[2];
                match (wide, clip_count) {
                    (_, 7) => 0,
                    (_, 6) => 1,
                    (true, 5) => 2,
                    (true, 4) => 3,
                    (true, 3) => 4,
                    (false, 5) => 5,
                    (false, 4) => 6,
                    (false, 3) => 7,
                    (_, 2) => 8,
                    (_, 1) => 9,
                    _ => 10,
                }
            }
            _ => clip_count.min(npieces - 1),
        }
    };

    let mut acc = vec![0.0f64; npieces];
    let mut stack: Vec<f64> = Vec::with_capacity(dim);
    // fixed composite Gauss grid per level, cut at the kink candidates
    fn recurse(
        lvl: usize,
        dim: usize,
        cd: &CorrectionDomain,
        stack: &mut Vec<f64>,
        rule: &(Vec<f64>, Vec<f64>),
        panels: usize,
        weight_scale: f64,
        ctx: &mut dyn FnMut(&[f64], f64),
    ) {
        let (lo, hi) = cd.level_bounds(lvl, stack);
        if hi <= lo {
            return;
        }
        let mut cuts = vec![lo, hi];
        for ssum in subset_sums(stack) {
            let c = 1.0 - ssum;
            if c > lo + 1e-12 && c < hi - 1e-12 {
                cuts.push(c);
            }
        }
        if stack.len() == 2 {
            let c = stack[0] - stack[1];
            if c > lo + 1e-12 && c < hi - 1e-12 {
                cuts.push(c);
            }
        }
        if cd.m > lo + 1e-12 && cd.m < hi - 1e-12 {
            cuts.push(cd.m);
        }
        cuts.sort_by(f64::total_cmp);
        let mut panel_cuts = Vec::new();
        for w in cuts.windows(2) {
            for p in 0..=panels {
                panel_cuts.push(w[0] + (w[1] - w[0]) * p as f64 / panels as f64);
            }
        }
        panel_cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
        for w in panel_cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b <= a {
                continue;
            }
            let mid = 0.5 * (a + b);
            let half = 0.5 * (b - a);
            for (x, wgt) in rule.0.iter().zip(&rule.1) {
                let v = mid + half * x;
                stack.push(v);
                let scale = weight_scale * wgt * half;
                if lvl + 1 == dim {
                    ctx(stack, scale);
                } else {
                    recurse(lvl + 1, dim, cd, stack, rule, panels, scale, ctx);
                }
                stack.pop();
            }
        }
    }
    let mut body = |v_desc: &[f64], scale: f64| {
        let terms = alt_terms(v_desc);
        let out = ts_integral(
            k,
            support,
            &TsInner::AltSumSquared { antider: &antider, terms: &terms },
            true,
        );
        let w = shift_weight(v_desc, s, th, th0) * scale;
        for (count, &val) in out.by_clip_count.iter().enumerate() {
            if val != 0.0 {
                acc[map_piece(v_desc, count)] += w * val;
            }
        }
    };
    recurse(0, dim, &cd, &mut stack, &rule, panels.max(1), 1.0, &mut body);

    let labels: Vec<String> = match (r, s) {
        (2, 1) => vec!["R2;1".into(), "R2;2".into()],
        (3, 1) => (1..=4).map(|i| format!("R3;{i}")).collect(),
        (4, 1) => (1..=11).map(|i| format!("R4;{i}")).collect(),
        (3, 2) => vec![
            "R3';1".into(),
            "R3';2".into(),
            "R3';3(empty)".into(),
            "R3';4(empty)".into(),
        ],
        _ => (0..npieces).map(|i| format!("piece{i}")).collect(),
    };
    Ok(labels.into_iter().zip(acc).collect())
}

/// Full report: every requested functional plus the combined bound.
pub fn upsilon(f: &SymmetricPolynomial, params: &SieveParams, cfg: &QuadConfig) -> Result<FunctionalReport> {
    let k = params.k;
    let theta = params.theta_f64();
    let theta0 = params.theta0_f64();
    let j = compute_j(f, params, cfg)?;
    if j.value <= 0.0 {
        return Err(Error::InvalidPolynomial("J must be positive".into()));
    }
    let j0 = compute_j0(f, params, cfg)?;

    let pairs: Vec<(u32, u32)> = params.corrections.iter().copied().collect();
    let jrs_vals: Vec<Result<ValueWithError>> = pairs
        .par_iter()
        .map(|&(r, s)| compute_jrs(f, params, r, s, cfg))
        .collect();
    let mut jrs = BTreeMap::new();
    let mut sum_jrs = 0.0;
    let mut err_jrs = 0.0;
    let mut converged = j.converged && j0.total.converged;
    for (&(r, s), v) in pairs.iter().zip(jrs_vals) {
        let v = v?;
        sum_jrs += v.value;
        err_jrs += v.error;
        converged &= v.converged;
        jrs.insert(format!("{r},{s}"), v);
    }

    let upsilon = k as f64 * (j0.total.value - theta * sum_jrs) / j.value + k as f64 / theta0;
    let dnum = j0.total.error + theta * err_jrs;
    let upsilon_error = k as f64 * (dnum / j.value)
        + (upsilon - k as f64 / theta0).abs() * j.error / j.value;

    Ok(FunctionalReport {
        k,
        theta: crate::rat::format_rat(&params.theta),
        theta0: crate::rat::format_rat(&params.theta0),
        support: params.support,
        mode: params.mode,
        j,
        j0: j0.total,
        j0_pieces_raw: j0.pieces_raw,
        jrs,
        upsilon,
        upsilon_error,
        converged,
        warnings: params.warnings(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::rat::{rat, rat_int};
    use std::collections::BTreeSet;

    fn headline_params(corrections: &[(u32, u32)]) -> SieveParams {
        SieveParams::new(
            5,
            rat(1, 4),
            rat(3, 8),
            SupportKind::Extended,
            corrections.iter().copied().collect(),
            Mode::Standard,
        )
        .unwrap()
    }

    #[test]
    fn j_headline() {
        let f = presets::headline5();
        let v = compute_j(&f, &headline_params(&[]), &QuadConfig::default()).unwrap();
        assert!((v.value - 14.3115286045).abs() < 1e-7, "{}", v.value);
    }

    #[test]
    fn j_constant_simplex_is_inverse_factorial() {
        for k in [3usize, 4, 6] {
            let f = SymmetricPolynomial::constant(k, rat_int(1));
            let p = SieveParams::new(
                k,
                rat(1, 3),
                rat(1, 3),
                SupportKind::Simplex,
                BTreeSet::new(),
                Mode::Standard,
            )
            .unwrap();
            let v = compute_j(&f, &p, &QuadConfig::default()).unwrap();
            let kfact: f64 = (1..=k as u64).map(|i| i as f64).product();
            assert!((v.value - 1.0 / kfact).abs() < 1e-12);
        }
    }

    #[test]
    fn j11_headline() {
        let f = presets::headline5();
        let v = compute_j11(&f, &headline_params(&[]), &QuadConfig::default()).unwrap();
        assert!((v.value - 9.4661240888).abs() < 1e-7, "{}", v.value);
    }

    #[test]
    fn j11_hand_example_k3() {
        // k = 3 simplex, f == 1, theta0 = 1/2: value is 1/12
        let f = SymmetricPolynomial::constant(3, rat_int(1));
        let p = SieveParams::new(
            3,
            rat(1, 4),
            rat(1, 2),
            SupportKind::Simplex,
            BTreeSet::new(),
            Mode::Standard,
        )
        .unwrap();
        let v = compute_j11(&f, &p, &QuadConfig::default()).unwrap();
        assert!((v.value - 1.0 / 12.0).abs() < 1e-12, "{}", v.value);
    }

    #[test]
    fn j11_vanishes_at_theta0_one() {
        let f = presets::headline5();
        let p = SieveParams::new(
            5,
            rat(1, 4),
            rat_int(1),
            SupportKind::Extended,
            BTreeSet::new(),
            Mode::Standard,
        )
        .unwrap();
        assert_eq!(compute_j11(&f, &p, &QuadConfig::default()).unwrap().value, 0.0);
    }

    #[test]
    fn j0_headline_pieces() {
        let f = presets::headline5();
        let parts = compute_j0(&f, &headline_params(&[]), &QuadConfig::default()).unwrap();
        let (diff, shell) = parts.pieces_raw.unwrap();
        assert!((diff - 11.3104037062).abs() < 1e-6, "diff = {diff}");
        assert!((shell - 20.2508453206).abs() < 1e-6, "shell = {shell}");
        assert!((parts.total.value - 15.7806245134).abs() < 1e-6);
    }

    #[test]
    fn j21_headline() {
        let f = presets::headline5();
        let v = compute_jrs(&f, &headline_params(&[]), 2, 1, &QuadConfig::default()).unwrap();
        assert!((v.value - 15.8900183178).abs() < 1e-6, "{}", v.value);
    }

    #[test]
    fn j22_headline() {
        let f = presets::headline5();
        let v = compute_jrs(&f, &headline_params(&[]), 2, 2, &QuadConfig::default()).unwrap();
        assert!((v.value - 1.9342154969).abs() < 1e-6, "{}", v.value);
    }

    #[test]
    fn jrs_vanishes_at_theta0_one() {
        let f = presets::headline5();
        let p = SieveParams::new(
            5,
            rat(1, 4),
            rat_int(1),
            SupportKind::Extended,
            BTreeSet::new(),
            Mode::Standard,
        )
        .unwrap();
        for &(r, s) in &[(2u32, 1u32), (3, 1), (2, 2)] {
            assert_eq!(
                compute_jrs(&f, &p, r, s, &QuadConfig::default()).unwrap().value,
                0.0
            );
        }
    }

    #[test]
    fn flat_no_larger_than_standard() {
        let f = presets::table_c_f1(5);
        let p = SieveParams::new(
            5,
            rat(355, 1000),
            rat(29, 100),
            SupportKind::Simplex,
            BTreeSet::new(),
            Mode::Standard,
        )
        .unwrap();
        let cfg = QuadConfig::with_tols(1e-6, 1e-5);
        for &(r, s) in &[(2u32, 1u32), (2, 2), (3, 1)] {
            let std = compute_jrs(&f, &p, r, s, &cfg).unwrap().value;
            let flat = compute_jrs_flat(&f, &p, r, s, &cfg).unwrap().value;
            assert!(
                flat <= std + 1e-6,
                "({r},{s}): flat {flat} > standard {std}"
            );
        }
    }
}
