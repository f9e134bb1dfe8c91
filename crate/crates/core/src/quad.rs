//! Two independent integration engines used as mutual oracles:
//! adaptive iterated Gauss-Legendre over explicit limits, and seeded
//! Monte-Carlo over region indicators.

use crate::error::{Error, Result};
use crate::regions::Region;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PanelRule {
    Gl7,
    Gl15,
}

#[derive(Debug, Clone)]
pub struct QuadConfig {
    /// Absolute tolerance granted to the innermost integrals.
    pub abs_tol: f64,
    /// Relative tolerance of the overall result.
    pub rel_tol: f64,
    pub max_depth: u32,
    pub panel_rule: PanelRule,
    pub seed: u64,
    pub mc_samples: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-8,
            rel_tol: 1e-6,
            max_depth: 40,
            panel_rule: PanelRule::Gl15,
            seed: 0,
            mc_samples: 1_000_000,
        }
    }
}

impl QuadConfig {
    pub fn with_tols(abs_tol: f64, rel_tol: f64) -> Self {
        QuadConfig {
            abs_tol,
            rel_tol,
            ..Default::default()
        }
    }
}

/// One nesting level: bounds (and optional interior breakpoints) as functions
/// of the already-bound outer variables. `lo >= hi` pointwise is fine; that
/// slab contributes zero.
pub struct Limit {
    pub lo: Box<dyn Fn(&[f64]) -> f64 + Sync + Send>,
    pub hi: Box<dyn Fn(&[f64]) -> f64 + Sync + Send>,
    pub breaks: Option<Box<dyn Fn(&[f64]) -> Vec<f64> + Sync + Send>>,
}

impl Limit {
    pub fn constant(lo: f64, hi: f64) -> Self {
        Limit {
            lo: Box::new(move |_| lo),
            hi: Box::new(move |_| hi),
            breaks: None,
        }
    }

    pub fn new(
        lo: impl Fn(&[f64]) -> f64 + Sync + Send + 'static,
        hi: impl Fn(&[f64]) -> f64 + Sync + Send + 'static,
    ) -> Self {
        Limit {
            lo: Box::new(lo),
            hi: Box::new(hi),
            breaks: None,
        }
    }

    pub fn with_breaks(
        mut self,
        breaks: impl Fn(&[f64]) -> Vec<f64> + Sync + Send + 'static,
    ) -> Self {
        self.breaks = Some(Box::new(breaks));
        self
    }
}

pub struct IteratedDomain {
    pub limits: Vec<Limit>,
}

impl IteratedDomain {
    pub fn new(limits: Vec<Limit>) -> Self {
        IteratedDomain { limits }
    }

    pub fn dim(&self) -> usize {
        self.limits.len()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub converged: bool,
    pub evaluations: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct McResult {
    pub value: f64,
    pub stderr: f64,
    pub accepted: usize,
}

/// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
pub fn gl_nodes(n: usize) -> Arc<(Vec<f64>, Vec<f64>)> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<(Vec<f64>, Vec<f64>)>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(compute_gl(n)))
        .clone()
}

/// Newton iteration on the Legendre polynomial; standard and plenty accurate
/// for the orders used here (n <= 64).
fn compute_gl(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev-like initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_and_deriv(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_and_deriv(n, x);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn legendre_and_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    if n == 1 {
        return (x, 1.0);
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn rule_orders(rule: PanelRule) -> (usize, usize) {
    match rule {
        PanelRule::Gl7 => (3, 7),
        PanelRule::Gl15 => (7, 15),
    }
}

struct Segment {
    a: f64,
    b: f64,
    depth: u32,
    value: f64,
    inner_err: f64,
    err: f64,
    seq: u64,
}

/// Adaptive 1-d integration with embedded low/high Gauss pair per panel.
/// `f` returns (value, inherited_error) so nested levels can propagate a
/// conservative inner-error estimate.
fn adaptive_segments(
    a: f64,
    b: f64,
    interior: &[f64],
    f: &mut dyn FnMut(f64) -> Result<(f64, f64)>,
    abs_tol: f64,
    rel_tol: f64,
    max_depth: u32,
    rule: PanelRule,
) -> Result<(f64, f64, bool, u64)> {
    if !(b > a) {
        return Ok((0.0, 0.0, true, 0));
    }
    let (nlo, nhi) = rule_orders(rule);
    let lo_rule = gl_nodes(nlo);
    let hi_rule = gl_nodes(nhi);
    let mut nev: u64 = 0;
    let mut eval_panel = |pa: f64, pb: f64, f: &mut dyn FnMut(f64) -> Result<(f64, f64)>| -> Result<(f64, f64, f64)> {
        let mid = 0.5 * (pa + pb);
        let half = 0.5 * (pb - pa);
        let mut ihi = 0.0;
        let mut inner = 0.0;
        for (x, w) in hi_rule.0.iter().zip(&hi_rule.1) {
            let (v, ie) = f(mid + half * x)?;
            ihi += w * v;
            inner += w * ie;
            nev += 1;
        }
        let mut ilo = 0.0;
        for (x, w) in lo_rule.0.iter().zip(&lo_rule.1) {
            let (v, _) = f(mid + half * x)?;
            ilo += w * v;
            nev += 1;
        }
        Ok((ihi * half, (ihi - ilo).abs() * half, inner * half))
    };

    let mut cuts: Vec<f64> = vec![a];
    for &c in interior {
        if c > a + 1e-13 && c < b - 1e-13 {
            cuts.push(c);
        }
    }
    cuts.push(b);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|x, y| (*x - *y).abs() < 1e-13);

    let mut seq: u64 = 0;
    let mut segs: Vec<Segment> = Vec::new();
    for w in cuts.windows(2) {
        let (v, e, ie) = eval_panel(w[0], w[1], f)?;
        segs.push(Segment {
            a: w[0],
            b: w[1],
            depth: 0,
            value: v,
            inner_err: ie,
            err: e,
            seq,
        });
        seq += 1;
    }

    let mut converged = true;
    loop {
        let total: f64 = segs.iter().map(|s| s.value).sum();
        let toterr: f64 = segs.iter().map(|s| s.err).sum();
        let target = abs_tol.max(rel_tol * total.abs());
        if toterr <= target {
            break;
        }
        // refine the worst segment; deterministic tie-break on insertion order
        let worst = segs
            .iter()
            .enumerate()
            .max_by(|(_, x), (_, y)| {
                x.err
                    .total_cmp(&y.err)
                    .then(y.seq.cmp(&x.seq))
            })
            .map(|(i, _)| i)
            .unwrap();
        let s = &segs[worst];
        if s.depth >= max_depth || (s.b - s.a) < 1e-14 {
            converged = false;
            break;
        }
        let (sa, sb, d) = (s.a, s.b, s.depth);
        let mid = 0.5 * (sa + sb);
        let (v1, e1, ie1) = eval_panel(sa, mid, f)?;
        let (v2, e2, ie2) = eval_panel(mid, sb, f)?;
        segs[worst] = Segment {
            a: sa,
            b: mid,
            depth: d + 1,
            value: v1,
            inner_err: ie1,
            err: e1,
            seq,
        };
        seq += 1;
        segs.push(Segment {
            a: mid,
            b: sb,
            depth: d + 1,
            value: v2,
            inner_err: ie2,
            err: e2,
            seq,
        });
        seq += 1;
    }
    let total: f64 = segs.iter().map(|s| s.value).sum();
    let toterr: f64 = segs.iter().map(|s| s.err + s.inner_err).sum();
    Ok((total, toterr, converged, nev))
}

/// Nested adaptive quadrature over an [`IteratedDomain`]. The tolerance is
/// split geometrically across levels with the innermost getting the tightest
/// share; the returned error is the outer estimate plus propagated inner
/// estimates.
pub fn integrate_iterated(
    domain: &IteratedDomain,
    integrand: &(dyn Fn(&[f64]) -> f64 + Sync),
    cfg: &QuadConfig,
) -> Result<QuadResult> {
    let d = domain.dim();
    assert!(d >= 1, "empty domain");
    let mut evals: u64 = 0;
    let mut converged = true;

    fn level(
        domain: &IteratedDomain,
        integrand: &(dyn Fn(&[f64]) -> f64 + Sync),
        cfg: &QuadConfig,
        li: usize,
        point: &mut Vec<f64>,
        evals: &mut u64,
        converged: &mut bool,
    ) -> Result<(f64, f64)> {
        let d = domain.limits.len();
        let lim = &domain.limits[li];
        let a = (lim.lo)(point);
        let b = (lim.hi)(point);
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "non-finite limits at level {li}: ({a}, {b})"
            )));
        }
        if b <= a {
            return Ok((0.0, 0.0));
        }
        let interior = lim.breaks.as_ref().map(|f| f(point)).unwrap_or_default();
        // innermost gets cfg.abs_tol, each level outward relaxes by 4x,
        // scaled to this slab
        let tol = cfg.abs_tol * 4f64.powi((d - 1 - li) as i32);
        let mut nested = |x: f64| -> Result<(f64, f64)> {
            point.push(x);
            let out = if li + 1 == d {
                let v = integrand(point);
                *evals += 1;
                if v.is_nan() {
                    let p = point.clone();
                    point.pop();
                    return Err(Error::NanIntegrand { point: p });
                }
                Ok((v, 0.0))
            } else {
                level(domain, integrand, cfg, li + 1, point, evals, converged)
            };
            point.pop();
            out
        };
        let rel = if li == 0 { cfg.rel_tol } else { cfg.rel_tol * 0.5 };
        let (v, e, conv, _n) = adaptive_segments(
            a,
            b,
            &interior,
            &mut nested,
            tol,
            rel,
            cfg.max_depth,
            cfg.panel_rule,
        )?;
        if !conv {
            *converged = false;
        }
        Ok((v, e))
    }

    let mut point = Vec::with_capacity(d);
    let (value, error) = level(
        domain,
        integrand,
        cfg,
        0,
        &mut point,
        &mut evals,
        &mut converged,
    )?;
    Ok(QuadResult {
        value,
        error,
        converged,
        evaluations: evals,
    })
}

/// Plain adaptive 1-d integral (exposed for the outer loops of the
/// functionals, which drive their own nesting).
pub fn integrate_1d(
    a: f64,
    b: f64,
    breaks: &[f64],
    f: &(dyn Fn(f64) -> f64 + Sync),
    abs_tol: f64,
    rel_tol: f64,
    max_depth: u32,
) -> Result<QuadResult> {
    let mut g = |x: f64| -> Result<(f64, f64)> {
        let v = f(x);
        if v.is_nan() {
            return Err(Error::NanIntegrand { point: vec![x] });
        }
        Ok((v, 0.0))
    };
    let (value, error, converged, evaluations) =
        adaptive_segments(a, b, breaks, &mut g, abs_tol, rel_tol, max_depth, PanelRule::Gl15)?;
    Ok(QuadResult {
        value,
        error,
        converged,
        evaluations,
    })
}

/// Monte-Carlo estimate of `integral of f over region` by uniform box
/// sampling against the region indicator. Deterministic per seed.
pub fn integrate_mc(
    region: &Region,
    integrand: &(dyn Fn(&[f64]) -> f64 + Sync),
    cfg: &QuadConfig,
) -> Result<McResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.mc_samples.max(1);
    let vol = region.box_volume();
    let mut sum = 0.0;
    let mut sumsq = 0.0;
    let mut accepted = 0usize;
    for _ in 0..n {
        let x = region.sample_point(&mut rng);
        let mut v = 0.0;
        if region.contains(&x)? {
            accepted += 1;
            v = integrand(&x);
            if v.is_nan() {
                return Err(Error::NanIntegrand { point: x });
            }
        }
        sum += v;
        sumsq += v * v;
    }
    let mean = sum / n as f64;
    let var = (sumsq / n as f64 - mean * mean).max(0.0);
    Ok(McResult {
        value: mean * vol,
        stderr: vol * (var / n as f64).sqrt(),
        accepted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::SupportKind;
    use crate::regions::make_support;

    #[test]
    fn gl_nodes_integrate_polynomials_exactly() {
        // GL-n is exact through degree 2n-1
        let r = gl_nodes(8);
        let val: f64 = r
            .0
            .iter()
            .zip(&r.1)
            .map(|(&x, &w)| w * x.powi(14))
            .sum();
        assert!((val - 2.0 / 15.0).abs() < 1e-13);
        let sum_w: f64 = r.1.iter().sum();
        assert!((sum_w - 2.0).abs() < 1e-13);
    }

    #[test]
    fn iterated_triangle_area() {
        // int_0^1 int_0^t ds dt = 1/2
        let dom = IteratedDomain::new(vec![
            Limit::constant(0.0, 1.0),
            Limit::new(|_| 0.0, |p| p[0]),
        ]);
        let r = integrate_iterated(&dom, &|_| 1.0, &QuadConfig::default()).unwrap();
        assert!((r.value - 0.5).abs() < 1e-12);
        assert!(r.converged);
    }

    #[test]
    fn empty_slab_is_zero() {
        let dom = IteratedDomain::new(vec![
            Limit::constant(0.0, 1.0),
            Limit::new(|p| p[0], |p| p[0] - 1.0),
        ]);
        let r = integrate_iterated(&dom, &|_| 1.0, &QuadConfig::default()).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.error, 0.0);
    }

    #[test]
    fn nan_is_hard_error() {
        let dom = IteratedDomain::new(vec![Limit::constant(0.0, 1.0)]);
        let r = integrate_iterated(&dom, &|p| if p[0] > 0.5 { f64::NAN } else { 1.0 }, &QuadConfig::default());
        assert!(matches!(r, Err(Error::NanIntegrand { .. })));
    }

    #[test]
    fn kinked_integrand_converges_with_breakpoint() {
        let dom = IteratedDomain::new(vec![
            Limit::constant(0.0, 1.0).with_breaks(|_| vec![1.0 / 3.0]),
        ]);
        let r = integrate_iterated(&dom, &|p| (p[0] - 1.0 / 3.0).abs(), &QuadConfig::default())
            .unwrap();
        let exact = (1.0f64 / 3.0).powi(2) / 2.0 + (2.0f64 / 3.0).powi(2) / 2.0;
        assert!((r.value - exact).abs() < 1e-12);
    }

    #[test]
    fn mc_simplex_volume() {
        let region = make_support(3, SupportKind::Simplex);
        let cfg = QuadConfig {
            mc_samples: 200_000,
            seed: 5,
            ..Default::default()
        };
        let r = integrate_mc(&region, &|_| 1.0, &cfg).unwrap();
        assert!((r.value - 1.0 / 6.0).abs() < 3.0 * r.stderr.max(1e-3));
    }

    #[test]
    fn mc_linearity_same_seed() {
        let region = make_support(3, SupportKind::Simplex);
        let cfg = QuadConfig {
            mc_samples: 50_000,
            seed: 11,
            ..Default::default()
        };
        let g = |x: &[f64]| x[0] + 0.5 * x[1];
        let a = integrate_mc(&region, &g, &cfg).unwrap();
        let b = integrate_mc(&region, &|x: &[f64]| 3.0 * g(x), &cfg).unwrap();
        assert!((b.value - 3.0 * a.value).abs() < 1e-12);
    }

    #[test]
    fn refinement_monotonicity() {
        // halving tolerances must not move a converged value by more than the
        // previous error estimate
        let dom = IteratedDomain::new(vec![
            Limit::constant(0.0, 1.5),
            Limit::new(|_| 0.0, |p| (1.0 - p[0]).max(0.0) + 0.2),
        ]);
        let f = |p: &[f64]| (p[0] * 2.1 + p[1]).sin() * (1.0 + p[1] * p[1]);
        let c1 = QuadConfig::with_tols(1e-7, 1e-5);
        let c2 = QuadConfig::with_tols(5e-8, 5e-6);
        let r1 = integrate_iterated(&dom, &f, &c1).unwrap();
        let r2 = integrate_iterated(&dom, &f, &c2).unwrap();
        assert!((r1.value - r2.value).abs() <= r1.error.max(1e-12));
    }
}
