//! Integration domains as linear-inequality regions with bounding boxes.
//!
//! Every domain the functionals integrate over is declared here: the weight
//! supports `R_k` and `R'_k`, the rescaled shift domains of the correction
//! terms `J_{r,s}`, and the case-split decompositions used to resolve the
//! clipped inner integrals for k = 5.

use crate::error::{Error, Result};
use crate::params::{Mode, SieveParams, SupportKind};
use crate::rat::{rat, rat_int, to_f64, Rat};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Lt,
    Le,
}

/// `coeffs . x  sense  rhs`, coefficients exact with an f64 cache for the
/// hot membership path.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
    pub sense: Sense,
    coeffs_f64: Vec<f64>,
    rhs_f64: f64,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rat>, rhs: Rat, sense: Sense) -> Self {
        let coeffs_f64 = coeffs.iter().map(to_f64).collect();
        let rhs_f64 = to_f64(&rhs);
        Constraint {
            coeffs,
            rhs,
            sense,
            coeffs_f64,
            rhs_f64,
        }
    }

    fn slack(&self, x: &[f64]) -> f64 {
        let lhs: f64 = self
            .coeffs_f64
            .iter()
            .zip(x)
            .map(|(c, v)| c * v)
            .sum::<f64>();
        self.rhs_f64 - lhs
    }
}

#[derive(Debug, Clone)]
pub struct Region {
    pub label: String,
    pub dim: usize,
    /// Per-coordinate closed interval bounds (finite).
    pub bounds: Vec<(f64, f64)>,
    pub constraints: Vec<Constraint>,
}

pub struct SampleResult {
    pub points: Vec<Vec<f64>>,
    pub acceptance: f64,
    pub proposals: u64,
}

impl Region {
    pub fn new(label: impl Into<String>, bounds: Vec<(f64, f64)>, constraints: Vec<Constraint>) -> Self {
        Region {
            label: label.into(),
            dim: bounds.len(),
            bounds,
            constraints,
        }
    }

    /// Membership test; ties on any constraint count as inside.
    pub fn contains(&self, x: &[f64]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        for (v, &(lo, hi)) in x.iter().zip(&self.bounds) {
            if *v < lo || *v > hi {
                return Ok(false);
            }
        }
        Ok(self.constraints.iter().all(|c| c.slack(x) >= 0.0))
    }

    /// Smallest absolute slack over all constraints; near zero means the point
    /// sits on (or numerically on) a boundary hyperplane.
    pub fn min_boundary_distance(&self, x: &[f64]) -> f64 {
        self.constraints
            .iter()
            .map(|c| c.slack(x).abs())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn box_volume(&self) -> f64 {
        self.bounds.iter().map(|&(lo, hi)| hi - lo).product()
    }

    pub fn sample_point(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        self.bounds
            .iter()
            .map(|&(lo, hi)| if hi > lo { rng.gen_range(lo..hi) } else { lo })
            .collect()
    }

    /// Uniform points via rejection from the bounding box; deterministic for
    /// a fixed seed. Signals a possibly-empty region when fewer than one in
    /// 10^6 proposals lands inside after 10^7 proposals.
    pub fn sample(&self, seed: u64, n: usize) -> Result<SampleResult> {
        if self.box_volume() <= 0.0 {
            return Err(Error::RegionPossiblyEmpty { proposals: 0 });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points = Vec::with_capacity(n);
        let mut proposals: u64 = 0;
        while points.len() < n {
            let x = self.sample_point(&mut rng);
            proposals += 1;
            if self.contains(&x)? {
                points.push(x);
            }
            if proposals >= 10_000_000 && (points.len() as f64) < 1e-6 * proposals as f64 {
                return Err(Error::RegionPossiblyEmpty { proposals });
            }
        }
        Ok(SampleResult {
            acceptance: points.len() as f64 / proposals as f64,
            points,
            proposals,
        })
    }

    /// Constraint dump for audit.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "label": self.label,
            "dim": self.dim,
            "box": self.bounds,
            "constraints": self.constraints.iter().map(|c| json!({
                "coeffs": c.coeffs.iter().map(crate::rat::format_rat).collect::<Vec<_>>(),
                "sense": match c.sense { Sense::Lt => "<", Sense::Le => "<=" },
                "rhs": crate::rat::format_rat(&c.rhs),
            })).collect::<Vec<_>>(),
        })
    }
}

/// The weight support: `R_k` (simplex) or `R'_k` (extended).
pub fn make_support(k: usize, kind: SupportKind) -> Region {
    let bounds = vec![(0.0, 1.0); k];
    let mut constraints = Vec::new();
    match kind {
        SupportKind::Simplex => {
            constraints.push(Constraint::new(
                vec![rat_int(1); k],
                rat_int(1),
                Sense::Le,
            ));
        }
        SupportKind::Extended => {
            for j in 0..k {
                let mut coeffs = vec![rat_int(1); k];
                coeffs[j] = rat_int(0);
                constraints.push(Constraint::new(coeffs, rat_int(1), Sense::Le));
            }
        }
    }
    let label = match kind {
        SupportKind::Simplex => format!("R_{k}"),
        SupportKind::Extended => format!("R'_{k}"),
    };
    Region::new(label, bounds, constraints)
}

/// Geometry of the rescaled shift domain for `J_{r,s}`, in descending
/// coordinates `v_1 > v_2 > ... > v_{r-1}` (so `v_1` is the paper's largest
/// shift). The first `s - 1` coordinates exceed `m = theta0/theta`, the rest
/// stay at or below it, and the total obeys
/// `sum v_i < cap` together with `sum v_i < 1/theta - v_1`
/// (the latter encodes the hidden last variable exceeding the largest shift).
#[derive(Debug, Clone)]
pub struct CorrectionDomain {
    pub r: u32,
    pub s: u32,
    pub m: f64,
    /// min of the cap constraints that do not involve the variables
    pub cap: f64,
    pub inv_theta: f64,
}

impl CorrectionDomain {
    pub fn new(r: u32, s: u32, params: &SieveParams) -> Result<Self> {
        if s == 0 || s > r {
            return Err(Error::InvalidCorrection { r, s });
        }
        if r < 2 {
            return Err(Error::InvalidCorrection { r, s });
        }
        let theta = params.theta_f64();
        let theta0 = params.theta0_f64();
        let mut cap = (1.0 - theta0) / theta;
        if params.mode == Mode::Flat {
            cap = cap.min((1.0 - theta) / theta);
        }
        Ok(CorrectionDomain {
            r,
            s,
            m: theta0 / theta,
            cap,
            inv_theta: 1.0 / theta,
        })
    }

    pub fn dim(&self) -> usize {
        (self.r - 1) as usize
    }

    /// Number of leading (descending) coordinates required to exceed `m`.
    pub fn above_count(&self) -> usize {
        (self.s - 1) as usize
    }

    /// Iterated bounds for the descending coordinate at `level`, given the
    /// already-fixed outer coordinates. An empty interval (hi <= lo) simply
    /// contributes zero.
    pub fn level_bounds(&self, level: usize, outer: &[f64]) -> (f64, f64) {
        let partial: f64 = outer.iter().sum();
        let above = self.above_count();
        // coordinates still to be placed strictly above m after this one
        let remaining_above = above.saturating_sub(level + 1) as f64;
        let v1 = if level == 0 { None } else { Some(outer[0]) };
        let mut hi = if level == 0 {
            f64::INFINITY
        } else {
            outer[level - 1]
        };
        if level >= above {
            hi = hi.min(self.m);
        }
        // sum cap: partial + v + (others > remaining_above * m) < cap
        hi = hi.min(self.cap - partial - remaining_above * self.m);
        // hidden-variable cap: sum + v1 < 1/theta
        match v1 {
            Some(v1) => {
                hi = hi.min(self.inv_theta - v1 - partial - remaining_above * self.m);
            }
            None => {
                hi = hi.min((self.inv_theta - remaining_above * self.m) / 2.0);
            }
        }
        let lo = if level < above { self.m } else { 0.0 };
        (lo, hi)
    }

    /// Membership for an ascending-sorted coordinate vector
    /// `y_1 <= ... <= y_{r-1}` (ties resolved as members).
    pub fn contains_ascending(&self, ys: &[f64]) -> bool {
        if ys.len() != self.dim() {
            return false;
        }
        let n = ys.len();
        for w in ys.windows(2) {
            if w[0] > w[1] {
                return false;
            }
        }
        if ys.iter().any(|&v| v <= 0.0) {
            return false;
        }
        let below = n - self.above_count();
        for (i, &v) in ys.iter().enumerate() {
            if i < below {
                if v > self.m {
                    return false;
                }
            } else if v <= self.m {
                return false;
            }
        }
        let total: f64 = ys.iter().sum();
        total < self.cap && total + ys[n - 1] < self.inv_theta
    }
}

/// The rescaled shift domain as a [`Region`] in descending coordinates
/// `(v_1, ..., v_{r-1})`; for the headline parameters and `s = 1` this is the
/// familiar `{0 < z < y < 3/2, y + z < 5/2}` family.
pub fn make_correction_domain(r: u32, s: u32, params: &SieveParams) -> Result<Region> {
    let cd = CorrectionDomain::new(r, s, params)?;
    let d = cd.dim();
    let theta = &params.theta;
    let theta0 = &params.theta0;
    let m = theta0 / theta;
    let inv_theta = rat_int(1) / theta.clone();
    let cap_std = (rat_int(1) - theta0.clone()) / theta.clone();

    let mut constraints = Vec::new();
    // descending chain v_i > v_{i+1}
    for i in 0..d.saturating_sub(1) {
        let mut coeffs = vec![Rat::zero(); d];
        coeffs[i] = rat_int(-1);
        coeffs[i + 1] = rat_int(1);
        constraints.push(Constraint::new(coeffs, Rat::zero(), Sense::Lt));
    }
    // group split around m
    let above = cd.above_count();
    for i in 0..d {
        let mut coeffs = vec![Rat::zero(); d];
        if i < above {
            coeffs[i] = rat_int(-1);
            constraints.push(Constraint::new(coeffs, -m.clone(), Sense::Lt));
        } else {
            coeffs[i] = rat_int(1);
            constraints.push(Constraint::new(coeffs, m.clone(), Sense::Le));
        }
    }
    // sum caps
    constraints.push(Constraint::new(
        vec![rat_int(1); d],
        cap_std,
        Sense::Lt,
    ));
    if params.mode == Mode::Flat {
        let cap_flat = (rat_int(1) - theta.clone()) / theta.clone();
        constraints.push(Constraint::new(vec![rat_int(1); d], cap_flat, Sense::Lt));
    }
    // hidden-variable constraint: sum + v_1 < 1/theta
    let mut coeffs = vec![rat_int(1); d];
    coeffs[0] = rat_int(2);
    constraints.push(Constraint::new(coeffs, inv_theta, Sense::Lt));

    let hi_all = cd.cap.max(0.0).min(cd.inv_theta / 2.0);
    let bounds: Vec<(f64, f64)> = (0..d)
        .map(|i| {
            if i < above {
                (cd.m, hi_all.max(cd.m))
            } else {
                (0.0, hi_all.min(cd.m).max(0.0))
            }
        })
        .collect();
    let mode_tag = match params.mode {
        Mode::Flat => "flat ",
        _ => "",
    };
    Ok(Region::new(
        format!("{mode_tag}shift domain r={r} s={s}"),
        bounds,
        constraints,
    ))
}

/// A parent region together with the pieces that are claimed to partition it
/// (up to measure zero).
pub struct Decomposition {
    pub parent: Region,
    pub pieces: Vec<Region>,
}

/// Case-split decompositions for k = 5 at the headline parameters
/// `(theta, theta0) = (1/4, 3/8)`. Coordinates are the paper's
/// `(y[,z[,w]], t, s)` with the clip line `t + gamma = 1 + s/(k-1)`.
pub mod decompositions {
    use super::*;

    const K: usize = 5;

    fn base_bounds(shift_dims: usize) -> Vec<(f64, f64)> {
        let mut b = vec![(0.0, 1.5); shift_dims];
        b.push((0.0, 1.0)); // t
        b.push((0.0, 1.0)); // s
        b
    }

    // s < t as a constraint: s - t < 0
    fn s_lt_t(dim: usize) -> Constraint {
        let mut c = vec![Rat::zero(); dim];
        c[dim - 1] = rat_int(1);
        c[dim - 2] = rat_int(-1);
        Constraint::new(c, Rat::zero(), Sense::Lt)
    }

    /// `sign = +1`: t + sum(shifts chosen) - s/(k-1) > 1  (clip active side);
    /// `sign = -1`: the complementary strict inequality.
    fn clip_side(dim: usize, shift_idx: &[usize], sign: i64) -> Constraint {
        let mut c = vec![Rat::zero(); dim];
        for &i in shift_idx {
            c[i] = rat_int(-sign);
        }
        c[dim - 2] = rat_int(-sign); // t
        c[dim - 1] = rat(sign, (K - 1) as i64); // s
        Constraint::new(c, rat_int(-sign), Sense::Lt)
    }

    fn ordering(dim: usize, hi: usize, lo: usize) -> Constraint {
        // v_lo < v_hi  i.e.  v_lo - v_hi < 0
        let mut c = vec![Rat::zero(); dim];
        c[lo] = rat_int(1);
        c[hi] = rat_int(-1);
        Constraint::new(c, Rat::zero(), Sense::Lt)
    }

    fn sum_cap(dim: usize, idx: &[usize], cap: Rat) -> Constraint {
        let mut c = vec![Rat::zero(); dim];
        for &i in idx {
            c[i] = rat_int(1);
        }
        Constraint::new(c, cap, Sense::Lt)
    }

    /// `R_2`: 3 coordinates (y, t, s); two pieces split by `t + y <> 1 + s/4`.
    pub fn r2() -> Decomposition {
        let dim = 3;
        let mut bounds = base_bounds(1);
        bounds[0] = (0.0, 1.5);
        let parent = Region::new(
            "R2",
            bounds.clone(),
            vec![s_lt_t(dim)],
        );
        let mk = |idx: usize, sign: i64| {
            Region::new(
                format!("R2;{idx}"),
                bounds.clone(),
                vec![s_lt_t(dim), clip_side(dim, &[0], sign)],
            )
        };
        Decomposition {
            parent,
            pieces: vec![mk(1, 1), mk(2, -1)],
        }
    }

    /// `R_3`: coordinates (y, z, t, s) with 0 < z < y < 3/2, y + z < 5/2;
    /// four pieces by the position of the clip among t, t+z, t+y, t+y+z.
    pub fn r3() -> Decomposition {
        let dim = 4;
        let bounds = base_bounds(2);
        let base = vec![
            s_lt_t(dim),
            ordering(dim, 0, 1), // z < y
            sum_cap(dim, &[0, 1], rat(5, 2)),
        ];
        let parent = Region::new("R3", bounds.clone(), base.clone());
        // gamma subsets in increasing offset order: z, y, y+z
        let gammas: [&[usize]; 3] = [&[1], &[0], &[0, 1]];
        let mut pieces = Vec::new();
        for i in 0..4 {
            let mut cs = base.clone();
            // clip below gamma_i (not active for the first i), active for rest
            if i > 0 {
                cs.push(clip_side(dim, gammas[i - 1], -1));
            }
            if i < 3 {
                cs.push(clip_side(dim, gammas[i], 1));
            }
            pieces.push(Region::new(format!("R3;{}", i + 1), bounds.clone(), cs));
        }
        Decomposition { parent, pieces }
    }

    /// `R'_3`: coordinates (y, z, t, s) with 0 < z < 3/2 < y, y + z < 5/2,
    /// 2y + z < 4; two pieces by `t + z <> 1 + s/4`.
    pub fn r3_prime() -> Decomposition {
        let dim = 4;
        let mut bounds = base_bounds(2);
        bounds[0] = (1.5, 2.0);
        let mut base = vec![s_lt_t(dim)];
        // z < 3/2 < y
        {
            let mut c = vec![Rat::zero(); dim];
            c[1] = rat_int(1);
            base.push(Constraint::new(c, rat(3, 2), Sense::Le));
            let mut c = vec![Rat::zero(); dim];
            c[0] = rat_int(-1);
            base.push(Constraint::new(c, rat(-3, 2), Sense::Lt));
        }
        base.push(sum_cap(dim, &[0, 1], rat(5, 2)));
        {
            // 2y + z < 4
            let mut c = vec![Rat::zero(); dim];
            c[0] = rat_int(2);
            c[1] = rat_int(1);
            base.push(Constraint::new(c, rat_int(4), Sense::Lt));
        }
        let parent = Region::new("R3'", bounds.clone(), base.clone());
        let mut p1 = base.clone();
        p1.push(clip_side(dim, &[1], 1));
        let mut p2 = base.clone();
        p2.push(clip_side(dim, &[1], -1));
        Decomposition {
            parent,
            pieces: vec![
                Region::new("R3';1", bounds.clone(), p1),
                Region::new("R3';2", bounds, p2),
            ],
        }
    }

    /// `R_4`: coordinates (y, z, w, t, s) with 0 < w < z < y < 3/2 and
    /// y + z + w < 5/2; eleven pieces by the clip position among the eight
    /// interval endpoints, with the extra `y <> z + w` branch split.
    pub fn r4() -> Decomposition {
        let dim = 5;
        let bounds = base_bounds(3);
        let base = vec![
            s_lt_t(dim),
            ordering(dim, 1, 2), // w < z
            ordering(dim, 0, 1), // z < y
            sum_cap(dim, &[0, 1, 2], rat(5, 2)),
        ];
        let parent = Region::new("R4", bounds.clone(), base.clone());
        // y > z + w:  -y + z + w < 0 ; y < z + w: y - z - w < 0
        let branch = |sign: i64| {
            let mut c = vec![Rat::zero(); dim];
            c[0] = rat_int(-sign);
            c[1] = rat_int(sign);
            c[2] = rat_int(sign);
            Constraint::new(c, Rat::zero(), Sense::Lt)
        };
        // endpoint subsets in increasing offset order per branch
        let big: [&[usize]; 7] = [&[2], &[1], &[1, 2], &[0], &[0, 2], &[0, 1], &[0, 1, 2]];
        let small: [&[usize]; 7] = [&[2], &[1], &[0], &[1, 2], &[0, 2], &[0, 1], &[0, 1, 2]];
        // piece index -> (branch, lower endpoint index, upper endpoint index)
        // branch: None = both, Some(+1) = y > z+w, Some(-1) = y < z+w
        let layout: [(Option<i64>, usize, usize); 11] = [
            (None, 0, 1),      // R4;1  (t, t+w)
            (None, 1, 2),      // R4;2  (t+w, t+z)
            (Some(1), 2, 3),   // R4;3  (t+z, t+z+w), y > z+w
            (Some(1), 3, 4),   // R4;4  (t+z+w, t+y)
            (Some(1), 4, 5),   // R4;5  (t+y, t+y+w)
            (Some(-1), 2, 3),  // R4;6  (t+z, t+y), y < z+w
            (Some(-1), 3, 4),  // R4;7  (t+y, t+z+w)
            (Some(-1), 4, 5),  // R4;8  (t+z+w, t+y+w)
            (None, 5, 6),      // R4;9  (t+y+w, t+y+z)
            (None, 6, 7),      // R4;10 (t+y+z, t+y+z+w)
            (None, 7, 8),      // R4;11 (above everything)
        ];
        let mut pieces = Vec::new();
        for (idx, &(br, lo, hi)) in layout.iter().enumerate() {
            let mut cs = base.clone();
            if let Some(sign) = br {
                cs.push(branch(sign));
            }
            let table: &[&[usize]; 7] = match br {
                Some(-1) => &small,
                _ => &big,
            };
            if lo > 0 {
                cs.push(clip_side(dim, table[lo - 1], -1));
            }
            if hi <= 7 {
                cs.push(clip_side(dim, table[hi - 1], 1));
            }
            pieces.push(Region::new(format!("R4;{}", idx + 1), bounds.clone(), cs));
        }
        Decomposition { parent, pieces }
    }

    pub fn by_name(name: &str) -> Option<Decomposition> {
        match name {
            "R2" => Some(r2()),
            "R3" => Some(r3()),
            "R4" => Some(r4()),
            "R3prime" | "R3'" => Some(r3_prime()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Mode;
    use std::collections::BTreeSet;

    fn headline_params() -> SieveParams {
        SieveParams::new(
            5,
            rat(1, 4),
            rat(3, 8),
            SupportKind::Extended,
            BTreeSet::new(),
            Mode::Standard,
        )
        .unwrap()
    }

    #[test]
    fn support_membership() {
        let r3e = make_support(3, SupportKind::Extended);
        // complement sums are 0.9, 0.9, 1.2 so the point is outside
        assert!(!r3e.contains(&[0.6, 0.6, 0.3]).unwrap());
        assert!(r3e.contains(&[0.6, 0.3, 0.3]).unwrap());
        let r3s = make_support(3, SupportKind::Simplex);
        assert!(r3s.contains(&[0.2, 0.3, 0.4]).unwrap());
        assert!(!r3s.contains(&[0.5, 0.5, 0.1]).unwrap());
        assert!(r3s.contains(&[0.0, 0.0, 0.0]).unwrap());
        assert!(r3e.contains(&[0.0, 0.0, 0.0]).unwrap());
    }

    #[test]
    fn correction_domain_22_is_interval() {
        let p = headline_params();
        let cd = CorrectionDomain::new(2, 2, &p).unwrap();
        let (lo, hi) = cd.level_bounds(0, &[]);
        assert!((lo - 1.5).abs() < 1e-12);
        assert!((hi - 2.0).abs() < 1e-12);
    }

    #[test]
    fn correction_domain_31_matches_explicit() {
        let p = headline_params();
        let region = make_correction_domain(3, 1, &p).unwrap();
        // {0 < z < y < 3/2, y + z < 5/2} in (y, z) coordinates
        assert!(region.contains(&[1.4, 1.0]).unwrap());
        assert!(!region.contains(&[1.4, 1.2]).unwrap()); // sum > 5/2
        assert!(!region.contains(&[1.0, 1.2]).unwrap()); // ordering violated
        assert!(!region.contains(&[1.6, 0.1]).unwrap()); // y > 3/2
    }

    #[test]
    fn correction_domain_empty_at_theta0_one() {
        let p = SieveParams::new(
            5,
            rat(1, 4),
            rat_int(1),
            SupportKind::Simplex,
            BTreeSet::new(),
            Mode::Standard,
        )
        .unwrap();
        let region = make_correction_domain(2, 1, &p).unwrap();
        assert!(matches!(
            region.sample(7, 10),
            Err(Error::RegionPossiblyEmpty { .. })
        ));
    }

    #[test]
    fn membership_r2_cases() {
        let d = decompositions::r2();
        // (y, t, s) = (1.2, 0.9, 0.1): t + y = 2.1 > 1 + s/4 = 1.025
        let x = [1.2, 0.9, 0.1];
        assert!(d.pieces[0].contains(&x).unwrap());
        assert!(!d.pieces[1].contains(&x).unwrap());
        // out-of-box point
        assert!(!d.pieces[0].contains(&[2.0, 0.9, 0.1]).unwrap());
    }

    #[test]
    fn sampling_deterministic() {
        let region = make_support(3, SupportKind::Simplex);
        let a = region.sample(42, 50).unwrap();
        let b = region.sample(42, 50).unwrap();
        assert_eq!(a.points, b.points);
        let c = region.sample(43, 50).unwrap();
        assert_ne!(a.points, c.points);
    }

    #[test]
    fn simplex_volume_via_acceptance() {
        let region = make_support(3, SupportKind::Simplex);
        let s = region.sample(1, 40_000).unwrap();
        let vol = s.acceptance * region.box_volume();
        // 1/6 within Monte-Carlo tolerance
        assert!((vol - 1.0 / 6.0).abs() < 0.01, "vol = {vol}");
    }

    #[test]
    fn flat_domain_is_subset() {
        let std = headline_params();
        let mut flat = std.clone();
        flat.mode = Mode::Flat;
        for &(r, s) in &[(2u32, 1u32), (3, 1), (2, 2), (3, 2)] {
            let rs = make_correction_domain(r, s, &std).unwrap();
            let rf = make_correction_domain(r, s, &flat).unwrap();
            if let Ok(sample) = rf.sample(9, 2_000) {
                for pt in &sample.points {
                    assert!(rs.contains(pt).unwrap(), "flat point outside standard: {pt:?}");
                }
            }
        }
    }
}
