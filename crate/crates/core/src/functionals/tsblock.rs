//! Exact evaluation of the inner double integral
//! `int_0^1 int_0^t  V(t, s) (t - s)^{k-3} ds dt`
//! shared by every functional.
//!
//! `V` is built from clipped integrals of a polynomial against the support
//! bound `U(s) = 1 + s/(k-1)` (extended) or `U = 1` (simplex). Inside cells
//! delimited by the lines `t + gamma = U(s)` the integrand is a bivariate
//! polynomial, so fixed-order Gauss rules per cell evaluate the block to
//! machine precision; no adaptive refinement is needed at this level.

use crate::params::SupportKind;
use crate::quad::gl_nodes;
use crate::sympoly::FPoly;

/// Inner x-integral flavor.
pub enum TsInner<'a> {
    /// `( sum_m sign_m * [A(min(t+b_m, U)) - A(min(t+a_m, U))] )^2`
    /// where `A` is the antiderivative of `f` and `b = None` denotes the
    /// clip bound `U` itself (used by `J_{1,1}`).
    AltSumSquared {
        antider: &'a FPoly,
        terms: &'a [(f64, f64, Option<f64>)],
    },
    /// `G(max(t, U - y)) - G(t)` — the difference part of `J_0`, with `G`
    /// the antiderivative of `(f(x) - f(x+y))^2`.
    BelowKink { antider: &'a FPoly, y: f64 },
    /// `G2(U) - G2(max(t, U - y))` — the shell part of `J_0`, with `G2`
    /// the antiderivative of `f^2`.
    AboveKink { antider: &'a FPoly, y: f64 },
    /// `G2(U) - G2(t)` — the `J` integrand.
    FullRange { antider: &'a FPoly },
}

impl<'a> TsInner<'a> {
    fn kink_gammas(&self) -> Vec<f64> {
        match self {
            TsInner::AltSumSquared { terms, .. } => {
                let mut g = Vec::new();
                for &(_, a, b) in terms.iter() {
                    g.push(a);
                    if let Some(b) = b {
                        g.push(b);
                    }
                }
                g.sort_by(f64::total_cmp);
                g.dedup_by(|x, y| (*x - *y).abs() < 1e-14);
                g
            }
            TsInner::BelowKink { y, .. } | TsInner::AboveKink { y, .. } => vec![*y],
            TsInner::FullRange { .. } => Vec::new(),
        }
    }

    fn max_degree(&self) -> usize {
        match self {
            TsInner::AltSumSquared { antider, .. } => 2 * (antider.c.len().max(1) - 1),
            TsInner::BelowKink { antider, .. }
            | TsInner::AboveKink { antider, .. }
            | TsInner::FullRange { antider } => antider.c.len().max(1) - 1,
        }
    }

    fn eval(&self, t: f64, ucap: f64) -> f64 {
        match self {
            TsInner::AltSumSquared { antider, terms } => {
                let mut acc = 0.0;
                for &(sign, a, b) in terms.iter() {
                    let lo = (t + a).min(ucap);
                    let hi = match b {
                        Some(b) => (t + b).min(ucap),
                        None => ucap,
                    };
                    acc += sign * (antider.eval(hi) - antider.eval(lo));
                }
                acc * acc
            }
            TsInner::BelowKink { antider, y } => {
                let hi = t.max(ucap - y);
                antider.eval(hi) - antider.eval(t)
            }
            TsInner::AboveKink { antider, y } => {
                let lo = t.max(ucap - y);
                antider.eval(ucap) - antider.eval(lo)
            }
            TsInner::FullRange { antider } => antider.eval(ucap) - antider.eval(t),
        }
    }
}

pub struct TsOutput {
    pub total: f64,
    /// Contribution per number of clipped endpoints (index = count of
    /// gamma with `t + gamma > U` inside the cell). Empty unless requested.
    pub by_clip_count: Vec<f64>,
}

fn push_clamped(v: &mut Vec<f64>, x: f64, lo: f64, hi: f64) {
    if x > lo + 1e-13 && x < hi - 1e-13 {
        v.push(x);
    }
}

/// Evaluates the block. `tag` requests the per-clip-count split (only
/// meaningful for `AltSumSquared`).
pub fn ts_integral(k: usize, support: SupportKind, inner: &TsInner, tag: bool) -> TsOutput {
    debug_assert!(k >= 3);
    let gammas = inner.kink_gammas();
    let deg_inner = inner.max_degree();
    match support {
        SupportKind::Simplex => ts_simplex(k, inner, &gammas, deg_inner, tag),
        SupportKind::Extended => ts_extended(k, inner, &gammas, deg_inner, tag),
    }
}

/// Simplex: `U = 1`, the inner value is s-free and
/// `int_0^t (t-s)^{k-3} ds = t^{k-2}/(k-2)`.
fn ts_simplex(
    k: usize,
    inner: &TsInner,
    gammas: &[f64],
    deg_inner: usize,
    tag: bool,
) -> TsOutput {
    let mut cuts = vec![0.0, 1.0];
    for &g in gammas {
        push_clamped(&mut cuts, 1.0 - g, 0.0, 1.0);
    }
    cuts.sort_by(f64::total_cmp);
    let deg_t = deg_inner + k - 2;
    let n = (deg_t / 2 + 2).min(32);
    let rule = gl_nodes(n);
    let mut total = 0.0;
    let mut tags = if tag {
        vec![0.0; gammas.len() + 1]
    } else {
        Vec::new()
    };
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let clip_count = gammas.iter().filter(|&&g| mid + g > 1.0).count();
        let mut cell = 0.0;
        for (x, wgt) in rule.0.iter().zip(&rule.1) {
            let t = mid + half * x;
            let tpow = t.powi(k as i32 - 2) / (k as f64 - 2.0);
            cell += wgt * inner.eval(t, 1.0) * tpow;
        }
        cell *= half;
        total += cell;
        if tag {
            tags[clip_count] += cell;
        }
    }
    TsOutput {
        total,
        by_clip_count: tags,
    }
}

/// Extended: `U(s) = 1 + s/(k-1)`; the clip lines are
/// `s = (k-1)(t + gamma - 1)`, giving per-t cell cuts in s and global cuts
/// in t where those lines cross `s = 0` and `s = t`.
fn ts_extended(
    k: usize,
    inner: &TsInner,
    gammas: &[f64],
    deg_inner: usize,
    tag: bool,
) -> TsOutput {
    let km1 = (k - 1) as f64;
    let mut tcuts = vec![0.0, 1.0];
    for &g in gammas {
        push_clamped(&mut tcuts, 1.0 - g, 0.0, 1.0);
        if k > 3 {
            push_clamped(&mut tcuts, km1 * (1.0 - g) / (km1 - 1.0), 0.0, 1.0);
        }
    }
    tcuts.sort_by(f64::total_cmp);

    let deg_s = deg_inner + k - 3;
    let ns = (deg_s / 2 + 2).min(32);
    let deg_t = deg_inner + k - 2;
    let nt = (deg_t / 2 + 2).min(32);
    let srule = gl_nodes(ns);
    let trule = gl_nodes(nt);

    let mut total = 0.0;
    let mut tags = if tag {
        vec![0.0; gammas.len() + 1]
    } else {
        Vec::new()
    };
    let mut scuts: Vec<f64> = Vec::with_capacity(gammas.len() + 2);
    for w in tcuts.windows(2) {
        let (ta, tb) = (w[0], w[1]);
        if tb <= ta {
            continue;
        }
        let tmid = 0.5 * (ta + tb);
        let thalf = 0.5 * (tb - ta);
        for (xt, wt) in trule.0.iter().zip(&trule.1) {
            let t = tmid + thalf * xt;
            scuts.clear();
            scuts.push(0.0);
            scuts.push(t);
            for &g in gammas {
                push_clamped(&mut scuts, km1 * (t + g - 1.0), 0.0, t);
            }
            scuts.sort_by(f64::total_cmp);
            let mut tval = 0.0;
            for sw in scuts.windows(2) {
                let (sa, sb) = (sw[0], sw[1]);
                if sb <= sa {
                    continue;
                }
                let smid = 0.5 * (sa + sb);
                let shalf = 0.5 * (sb - sa);
                let mut cell = 0.0;
                for (xs, ws) in srule.0.iter().zip(&srule.1) {
                    let s = smid + shalf * xs;
                    let ucap = 1.0 + s / km1;
                    cell += ws * inner.eval(t, ucap) * (t - s).powi(k as i32 - 3);
                }
                cell *= shalf * wt * thalf;
                tval += cell;
                if tag {
                    let ucap_mid = 1.0 + smid / km1;
                    let clip_count = gammas.iter().filter(|&&g| t + g > ucap_mid).count();
                    tags[clip_count] += cell;
                }
            }
            total += tval;
        }
    }
    TsOutput {
        total,
        by_clip_count: tags,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sympoly::FPoly;

    fn headline_antider2() -> FPoly {
        // antiderivative of f^2 for f = 266 - 425x + 170x^2
        let f = FPoly::new(vec![266.0, -425.0, 170.0]);
        f.mul(&f).antiderivative()
    }

    #[test]
    fn full_range_matches_published_j() {
        // (1/2) * block = 14.3115286045 for the headline weight
        let a2 = headline_antider2();
        let out = ts_integral(
            5,
            SupportKind::Extended,
            &TsInner::FullRange { antider: &a2 },
            false,
        );
        assert!(
            (0.5 * out.total - 14.3115286045).abs() < 1e-8,
            "J = {}",
            0.5 * out.total
        );
    }

    #[test]
    fn alt_sum_matches_published_j11() {
        let f = FPoly::new(vec![266.0, -425.0, 170.0]);
        let a = f.antiderivative();
        let terms = [(1.0, 0.0, None)];
        let out = ts_integral(
            5,
            SupportKind::Extended,
            &TsInner::AltSumSquared {
                antider: &a,
                terms: &terms,
            },
            false,
        );
        // (1 - theta0)/(theta0 (k-3)!) = 5/6 at theta0 = 3/8
        let j11 = (5.0 / 8.0) / (3.0 / 8.0) / 2.0 * out.total;
        assert!((j11 - 9.4661240888).abs() < 1e-8, "J11 = {j11}");
    }

    #[test]
    fn simplex_block_volume() {
        // f == 1: block = int t^{k-2}(1-t)/(k-2) -> total/(k-3)! = 1/k!
        let one = FPoly::new(vec![1.0]);
        let a2 = one.mul(&one).antiderivative();
        for k in [3usize, 5, 8] {
            let out = ts_integral(
                k,
                SupportKind::Simplex,
                &TsInner::FullRange { antider: &a2 },
                false,
            );
            let mut fact = 1.0;
            for i in 2..k as u64 - 2 {
                fact *= i as f64;
            }
            let kfact: f64 = (1..=k as u64).map(|i| i as f64).product();
            let _ = fact;
            let km3: f64 = (1..=(k as u64 - 3)).map(|i| i as f64).product();
            assert!(
                (out.total / km3 - 1.0 / kfact).abs() < 1e-14,
                "k={k}: {}",
                out.total / km3
            );
        }
    }

    #[test]
    fn tagged_split_sums_to_total() {
        let f = FPoly::new(vec![266.0, -425.0, 170.0]);
        let a = f.antiderivative();
        // r = 3 alternating sum with shifts z = 0.4 (length) offset y = 0.9
        let terms = [(1.0, 0.0, Some(0.4)), (-1.0, 0.9, Some(1.3))];
        let out = ts_integral(
            5,
            SupportKind::Extended,
            &TsInner::AltSumSquared {
                antider: &a,
                terms: &terms,
            },
            true,
        );
        let sum: f64 = out.by_clip_count.iter().sum();
        assert!((sum - out.total).abs() < 1e-12 * out.total.abs().max(1.0));
        assert_eq!(out.by_clip_count.len(), 5); // gammas 0.4, 0.9, 1.3 -> 4 bins... plus empty
    }
}
