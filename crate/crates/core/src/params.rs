//! Sieve parameters shared by the region constructors and the functionals.

use crate::error::{Error, Result};
use crate::rat::{format_rat, rat_int, to_f64, Rat};
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SupportKind {
    Simplex,
    Extended,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Corrections integrate over the plain weight support.
    Standard,
    /// The restricted variant: shift domains carry the extra cap
    /// `sum x_i < 1 - theta`, with `theta0 = 1 - 2 theta` as the usual pairing.
    Flat,
    /// `theta0 = 1`: every shift domain is empty and
    /// `Upsilon = k J_0 / J + k`.
    Conjecture,
}

/// Parameters of one sieve evaluation: dimension `k`, the level exponents
/// `theta` (R = N^theta) and `theta0` (R_0 = N^theta0), the support of the
/// weight polynomial, the set of correction pairs `(r, s)` to include, and
/// the evaluation mode.
#[derive(Debug, Clone)]
pub struct SieveParams {
    pub k: usize,
    pub theta: Rat,
    pub theta0: Rat,
    pub support: SupportKind,
    pub corrections: BTreeSet<(u32, u32)>,
    pub mode: Mode,
}

pub const SUPPORTED_CORRECTIONS: [(u32, u32); 7] =
    [(1, 1), (2, 1), (3, 1), (4, 1), (2, 2), (3, 2), (3, 3)];

impl SieveParams {
    pub fn new(
        k: usize,
        theta: Rat,
        theta0: Rat,
        support: SupportKind,
        corrections: BTreeSet<(u32, u32)>,
        mode: Mode,
    ) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidParams(format!("k = {k} must be >= 3")));
        }
        if theta <= rat_int(0) || theta > Rat::new(1.into(), 2.into()) {
            return Err(Error::InvalidParams(format!(
                "theta = {} must lie in (0, 1/2]",
                format_rat(&theta)
            )));
        }
        if theta0 <= rat_int(0) || theta0 > rat_int(1) {
            return Err(Error::InvalidParams(format!(
                "theta0 = {} must lie in (0, 1]",
                format_rat(&theta0)
            )));
        }
        if mode == Mode::Conjecture && !theta0.is_one() {
            return Err(Error::InvalidParams(
                "conjecture mode requires theta0 = 1".into(),
            ));
        }
        for &(r, s) in &corrections {
            if s == 0 || s > r {
                return Err(Error::InvalidCorrection { r, s });
            }
            if !SUPPORTED_CORRECTIONS.contains(&(r, s)) {
                return Err(Error::UnsupportedCorrection {
                    r,
                    s,
                    hint: format!("supported pairs: {SUPPORTED_CORRECTIONS:?}"),
                });
            }
        }
        Ok(Self {
            k,
            theta,
            theta0,
            support,
            corrections,
            mode,
        })
    }

    pub fn theta_f64(&self) -> f64 {
        to_f64(&self.theta)
    }

    pub fn theta0_f64(&self) -> f64 {
        to_f64(&self.theta0)
    }

    /// Advisory constraint checks. The published computations themselves sit
    /// on some of these boundaries, so violations warn instead of failing.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        let th = self.theta_f64();
        let th0 = self.theta0_f64();
        if self.mode == Mode::Standard && self.theta > self.theta0 {
            out.push(format!(
                "standard mode expects theta <= theta0 (got {} > {})",
                format_rat(&self.theta),
                format_rat(&self.theta0)
            ));
        }
        match self.support {
            SupportKind::Simplex => {
                if th0 + 2.0 * th >= 1.0 && self.mode != Mode::Conjecture {
                    out.push(format!(
                        "theta0 + 2 theta = {:.4} is not < 1 (boundary or beyond)",
                        th0 + 2.0 * th
                    ));
                }
            }
            SupportKind::Extended => {
                let kk = self.k as f64;
                if th0 + 2.0 * kk / (kk - 1.0) * th >= 1.0 && self.mode != Mode::Conjecture {
                    out.push(format!(
                        "theta0 + 2k/(k-1) theta = {:.4} is not < 1",
                        th0 + 2.0 * kk / (kk - 1.0) * th
                    ));
                }
            }
        }
        out
    }

    /// Stable digest of the parameter set, used for cache keys and manifests.
    pub fn digest(&self) -> String {
        format!(
            "k={};theta={};theta0={};support={:?};mode={:?};corr={:?}",
            self.k,
            format_rat(&self.theta),
            format_rat(&self.theta0),
            self.support,
            self.mode,
            self.corrections
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn base() -> SieveParams {
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
    fn validates_ranges() {
        assert!(SieveParams::new(
            2,
            rat(1, 4),
            rat(3, 8),
            SupportKind::Simplex,
            BTreeSet::new(),
            Mode::Standard
        )
        .is_err());
        assert!(SieveParams::new(
            5,
            rat(1, 4),
            rat(3, 8),
            SupportKind::Simplex,
            [(3, 4)].into_iter().collect(),
            Mode::Standard
        )
        .is_err());
        assert!(SieveParams::new(
            5,
            rat(1, 4),
            rat(3, 8),
            SupportKind::Simplex,
            BTreeSet::new(),
            Mode::Conjecture
        )
        .is_err());
    }

    #[test]
    fn headline_params_warn_on_boundary() {
        // theta0 + 2k/(k-1) theta = 1 exactly for (1/4, 3/8) at k = 5; the
        // published run takes theta = 1/4 - eps, so the boundary warns
        assert_eq!(base().warnings().len(), 1);
        let interior = SieveParams::new(
            5,
            rat(1, 5),
            rat(3, 8),
            SupportKind::Extended,
            BTreeSet::new(),
            Mode::Standard,
        )
        .unwrap();
        assert!(interior.warnings().is_empty());
    }

    #[test]
    fn flat_boundary_warns() {
        let p = SieveParams::new(
            5,
            rat(355, 1000),
            rat(29, 100),
            SupportKind::Simplex,
            BTreeSet::new(),
            Mode::Flat,
        )
        .unwrap();
        assert!(!p.warnings().is_empty());
    }
}
