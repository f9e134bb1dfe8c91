//! Explicit-limit regression programs for the k = 5 evaluation at
//! `(theta, theta0) = (1/4, 3/8)` over the extended support.
//!
//! Each group lists iterated integrals with affine limits, the published
//! total they reproduce, and the scale relating the raw program sum to that
//! published number. The same affine tables generate [`Region`]s so the
//! Monte-Carlo engine can integrate the identical pieces independently.
//!
//! Two groups carry a `known_deviation` flag: the shift-pair (3,2) piece
//! values published alongside the decomposition are not reproducible from
//! the printed domains (the faithful integrals come out near 0.350 and
//! 1.919 instead of 0.347 and 1.564); the second piece's printed s-limits
//! also collide with the first piece's. The faithful values keep every
//! cross-engine and whole-table check consistent, so the programs below use
//! the corrected limits and the goldens keep the published numbers flagged.

use crate::quad::{IteratedDomain, Limit};
use crate::rat::{rat, rat_int, to_f64, Rat};
use crate::regions::{Constraint, Region, Sense};
use crate::sympoly::DiagonalPolynomial;
use num_traits::Zero;
use std::sync::Arc;

const THETA: f64 = 0.25;
const THETA0: f64 = 0.375;

/// `c0 + sum coeffs[i] * x_i` over the previously bound variables.
#[derive(Debug, Clone)]
pub struct AffExpr {
    pub c0: Rat,
    pub coeffs: Vec<Rat>,
}

impl AffExpr {
    fn eval(&self, x: &[f64]) -> f64 {
        let mut acc = to_f64(&self.c0);
        for (c, v) in self.coeffs.iter().zip(x) {
            acc += to_f64(c) * v;
        }
        acc
    }
}

fn lin(c0: (i64, i64), terms: &[(usize, (i64, i64))]) -> AffExpr {
    let maxi = terms.iter().map(|&(i, _)| i + 1).max().unwrap_or(0);
    let mut coeffs = vec![Rat::zero(); maxi];
    for &(i, (n, d)) in terms {
        coeffs[i] = rat(n, d);
    }
    AffExpr {
        c0: rat(c0.0, c0.1),
        coeffs,
    }
}

fn cst(n: i64, d: i64) -> AffExpr {
    AffExpr {
        c0: rat(n, d),
        coeffs: Vec::new(),
    }
}

#[derive(Debug, Clone)]
pub struct Program {
    pub label: String,
    pub lims: Vec<(AffExpr, AffExpr)>,
}

impl Program {
    pub fn domain(&self) -> IteratedDomain {
        let limits = self
            .lims
            .iter()
            .map(|(lo, hi)| {
                let lo = lo.clone();
                let hi = hi.clone();
                Limit::new(move |p: &[f64]| lo.eval(p), move |p: &[f64]| hi.eval(p))
            })
            .collect();
        IteratedDomain::new(limits)
    }

    /// The same iterated limits as a linear-inequality region.
    pub fn region(&self, bounds: &[(f64, f64)]) -> Region {
        let dim = self.lims.len();
        let mut constraints = Vec::new();
        for (i, (lo, hi)) in self.lims.iter().enumerate() {
            // lo(prior) <= x_i:  lo.c0 + sum a_j x_j - x_i <= 0
            let mut coeffs = vec![Rat::zero(); dim];
            for (j, a) in lo.coeffs.iter().enumerate() {
                coeffs[j] = a.clone();
            }
            coeffs[i] = rat_int(-1) + coeffs[i].clone();
            constraints.push(Constraint::new(coeffs, -lo.c0.clone(), Sense::Le));
            // x_i <= hi(prior)
            let mut coeffs = vec![Rat::zero(); dim];
            for (j, a) in hi.coeffs.iter().enumerate() {
                coeffs[j] = -a.clone();
            }
            coeffs[i] = rat_int(1) + coeffs[i].clone();
            constraints.push(Constraint::new(coeffs, hi.c0.clone(), Sense::Le));
        }
        Region::new(self.label.clone(), bounds.to_vec(), constraints)
    }
}

type Integrand = Arc<dyn Fn(&[f64]) -> f64 + Sync + Send>;

pub struct FixtureGroup {
    pub name: &'static str,
    pub programs: Vec<Program>,
    pub integrand: Integrand,
    /// published = scale * (sum over programs)
    pub scale: f64,
    pub published: f64,
    pub tolerance: f64,
    pub known_deviation: bool,
    pub bounds: Vec<(f64, f64)>,
}

fn w0(y: f64) -> f64 {
    (THETA0 - THETA * y) / (THETA0 * y)
}

fn w21(y: f64) -> f64 {
    (1.0 - THETA0 - THETA * y) / (THETA0 * y * (1.0 - THETA * y))
}

fn w22(y: f64) -> f64 {
    (1.0 - 2.0 * THETA0) / (THETA0 * y * (1.0 - THETA * y))
}

fn w32(y: f64, z: f64) -> f64 {
    (1.0 - 2.0 * THETA0 - THETA * z) / (THETA0 * y * z * (1.0 - THETA * (y + z)))
}

/// All explicit-limit groups for the headline weight `f`.
pub fn headline_groups(f: &DiagonalPolynomial) -> Vec<FixtureGroup> {
    let f = Arc::new(f.clone());
    let mut out = Vec::new();

    // J: (t, s, x) with integrand f(x)^2 (t-s)^2
    {
        let f = f.clone();
        out.push(FixtureGroup {
            name: "J",
            programs: vec![Program {
                label: "J".into(),
                lims: vec![
                    (cst(0, 1), cst(1, 1)),
                    (cst(0, 1), lin((0, 1), &[(0, (1, 1))])),
                    (
                        lin((0, 1), &[(0, (1, 1))]),
                        lin((1, 1), &[(1, (1, 4))]),
                    ),
                ],
            }],
            integrand: Arc::new(move |p: &[f64]| {
                let (t, s, x) = (p[0], p[1], p[2]);
                let v = f.eval(x);
                v * v * (t - s) * (t - s)
            }),
            scale: 0.5,
            published: 14.3115286045,
            tolerance: 1e-6,
            known_deviation: false,
            bounds: vec![(0.0, 1.0), (0.0, 1.0), (0.0, 1.25)],
        });
    }

    // J11: (t, s), scale (1-theta0)/(theta0 (k-3)!) = 5/6
    {
        let f = f.clone();
        out.push(FixtureGroup {
            name: "J11",
            programs: vec![Program {
                label: "J11".into(),
                lims: vec![(cst(0, 1), cst(1, 1)), (cst(0, 1), lin((0, 1), &[(0, (1, 1))]))],
            }],
            integrand: Arc::new(move |p: &[f64]| {
                let (t, s) = (p[0], p[1]);
                let v = f.int(t, 1.0 + s / 4.0);
                v * v * (t - s) * (t - s)
            }),
            scale: 5.0 / 6.0,
            published: 9.4661240888,
            tolerance: 1e-6,
            known_deviation: false,
            bounds: vec![(0.0, 1.0), (0.0, 1.0)],
        });
    }

    let y_t_s = |progs: Vec<(&str, [(AffExpr, AffExpr); 3])>| -> Vec<Program> {
        progs
            .into_iter()
            .map(|(label, lims)| Program {
                label: label.into(),
                lims: lims.to_vec(),
            })
            .collect()
    };

    // J21 clip-active side
    {
        let f = f.clone();
        out.push(FixtureGroup {
            name: "J21/R2;1",
            programs: y_t_s(vec![
                (
                    "R2;1 a",
                    [
                        (cst(1, 1), cst(3, 2)),
                        (cst(0, 1), cst(1, 1)),
                        (cst(0, 1), lin((0, 1), &[(1, (1, 1))])),
                    ],
                ),
                (
                    "R2;1 b",
                    [
                        (cst(1, 4), cst(1, 1)),
                        (lin((4, 3), &[(0, (-4, 3))]), cst(1, 1)),
                        (cst(0, 1), lin((0, 1), &[(1, (1, 1))])),
                    ],
                ),
                (
                    "R2;1 c",
                    [
                        (cst(0, 1), cst(1, 4)),
                        (lin((1, 1), &[(0, (-1, 1))]), cst(1, 1)),
                        (cst(0, 1), lin((-4, 1), &[(0, (4, 1)), (1, (4, 1))])),
                    ],
                ),
                (
                    "R2;1 d",
                    [
                        (cst(1, 4), cst(1, 1)),
                        (lin((1, 1), &[(0, (-1, 1))]), lin((4, 3), &[(0, (-4, 3))])),
                        (cst(0, 1), lin((-4, 1), &[(0, (4, 1)), (1, (4, 1))])),
                    ],
                ),
            ]),
            integrand: Arc::new(move |p: &[f64]| {
                let (y, t, s) = (p[0], p[1], p[2]);
                let v = f.int(t, 1.0 + s / 4.0);
                w21(y) * v * v * (t - s) * (t - s)
            }),
            scale: 1.0,
            published: 15.2749404974,
            tolerance: 1e-6,
            known_deviation: false,
            bounds: vec![(0.0, 1.5), (0.0, 1.0), (0.0, 1.0)],
        });
    }

    // J21 unclipped side
    {
        let f = f.clone();
        out.push(FixtureGroup {
            name: "J21/R2;2",
            programs: y_t_s(vec![
                (
                    "R2;2 a",
                    [
                        (cst(0, 1), cst(1, 1)),
                        (cst(0, 1), lin((1, 1), &[(0, (-1, 1))])),
                        (cst(0, 1), lin((0, 1), &[(1, (1, 1))])),
                    ],
                ),
                (
                    "R2;2 b",
                    [
                        (cst(0, 1), cst(1, 4)),
                        (lin((1, 1), &[(0, (-1, 1))]), cst(1, 1)),
                        (
                            lin((-4, 1), &[(0, (4, 1)), (1, (4, 1))]),
                            lin((0, 1), &[(1, (1, 1))]),
                        ),
                    ],
                ),
                (
                    "R2;2 c",
                    [
                        (cst(1, 4), cst(1, 1)),
                        (lin((1, 1), &[(0, (-1, 1))]), lin((4, 3), &[(0, (-4, 3))])),
                        (
                            lin((-4, 1), &[(0, (4, 1)), (1, (4, 1))]),
                            lin((0, 1), &[(1, (1, 1))]),
                        ),
                    ],
                ),
            ]),
            integrand: Arc::new(move |p: &[f64]| {
                let (y, t, s) = (p[0], p[1], p[2]);
                let v = f.int(t, t + y);
                w21(y) * v * v * (t - s) * (t - s)
            }),
            scale: 1.0,
            published: 16.5050961382,
            tolerance: 1e-6,
            known_deviation: false,
            bounds: vec![(0.0, 1.5), (0.0, 1.0), (0.0, 1.0)],
        });
    }

    // J22
    {
        let f = f.clone();
        out.push(FixtureGroup {
            name: "J22",
            programs: y_t_s(vec![(
                "J22",
                [
                    (cst(3, 2), cst(2, 1)),
                    (cst(0, 1), cst(1, 1)),
                    (cst(0, 1), lin((0, 1), &[(1, (1, 1))])),
                ],
            )]),
            integrand: Arc::new(move |p: &[f64]| {
                let (y, t, s) = (p[0], p[1], p[2]);
                let v = f.int(t, 1.0 + s / 4.0);
                w22(y) * v * v * (t - s) * (t - s)
            }),
            scale: 0.5,
            published: 1.9342154969,
            tolerance: 1e-6,
            known_deviation: false,
            bounds: vec![(1.5, 2.0), (0.0, 1.0), (0.0, 1.0)],
        });
    }

    // J0 difference part: (y, t, s, x), integrand w0 (f(x)-f(x+y))^2 (t-s)^2
    {
        let f = f.clone();
        out.push(FixtureGroup {
            name: "J0;1",
            programs: j0_diff_programs(),
            integrand: Arc::new(move |p: &[f64]| {
                let (y, t, s, x) = (p[0], p[1], p[2], p[3]);
                let d = f.eval(x) - f.eval(x + y);
                w0(y) * d * d * (t - s) * (t - s)
            }),
            scale: 1.0,
            published: 11.3104037062,
            tolerance: 1e-6,
            known_deviation: false,
            bounds: vec![(0.0, 1.0), (0.0, 1.0), (0.0, 1.0), (0.0, 1.25)],
        });
    }

    // J0 shell part: (y, t, s, x), integrand w0 f(x)^2 (t-s)^2
    {
        let f = f.clone();
        out.push(FixtureGroup {
            name: "J0;2",
            programs: j0_shell_programs(),
            integrand: Arc::new(move |p: &[f64]| {
                let (y, _t, s, x) = (p[0], p[1], p[2], p[3]);
                let v = f.eval(x);
                let _ = s;
                w0(y) * v * v * (p[1] - p[2]) * (p[1] - p[2])
            }),
            scale: 1.0,
            published: 20.2508453206,
            tolerance: 1e-6,
            known_deviation: false,
            bounds: vec![(0.0, 1.5), (0.0, 1.0), (0.0, 1.0), (0.0, 1.25)],
        });
    }

    // J32 pieces: (y, z, t, s)
    {
        let f = f.clone();
        out.push(FixtureGroup {
            name: "J32/R3';1",
            programs: j32_clip_programs(),
            integrand: Arc::new(move |p: &[f64]| {
                let (y, z, t, s) = (p[0], p[1], p[2], p[3]);
                let v = f.int(t, 1.0 + s / 4.0);
                w32(y, z) * v * v * (t - s) * (t - s)
            }),
            scale: 1.0,
            published: 0.347,
            tolerance: 5e-3,
            known_deviation: true,
            bounds: vec![(1.5, 2.0), (0.0, 1.0), (0.0, 1.0), (0.0, 1.0)],
        });
    }
    {
        let f = f.clone();
        out.push(FixtureGroup {
            name: "J32/R3';2",
            programs: j32_short_programs(),
            integrand: Arc::new(move |p: &[f64]| {
                let (y, z, t, s) = (p[0], p[1], p[2], p[3]);
                let v = f.int(t, t + z);
                w32(y, z) * v * v * (t - s) * (t - s)
            }),
            scale: 1.0,
            published: 1.564,
            tolerance: 5e-3,
            known_deviation: true,
            bounds: vec![(1.5, 2.0), (0.0, 1.0), (0.0, 1.0), (0.0, 1.0)],
        });
    }

    out
}

fn j0_diff_programs() -> Vec<Program> {
    // x from t to 1 - y + s/4 throughout
    let x_lims = || (lin((0, 1), &[(1, (1, 1))]), lin((1, 1), &[(0, (-1, 1)), (2, (1, 4))]));
    vec![
        Program {
            label: "J0;1 a".into(),
            lims: vec![
                (cst(0, 1), cst(1, 4)),
                (cst(0, 1), lin((1, 1), &[(0, (-1, 1))])),
                (cst(0, 1), lin((0, 1), &[(1, (1, 1))])),
                x_lims(),
            ],
        },
        Program {
            label: "J0;1 b".into(),
            lims: vec![
                (cst(1, 4), cst(1, 1)),
                (cst(0, 1), lin((1, 1), &[(0, (-1, 1))])),
                (cst(0, 1), lin((0, 1), &[(1, (1, 1))])),
                x_lims(),
            ],
        },
        Program {
            label: "J0;1 c".into(),
            lims: vec![
                (cst(0, 1), cst(1, 4)),
                (lin((1, 1), &[(0, (-1, 1))]), cst(1, 1)),
                (
                    lin((-4, 1), &[(0, (4, 1)), (1, (4, 1))]),
                    lin((0, 1), &[(1, (1, 1))]),
                ),
                x_lims(),
            ],
        },
        Program {
            label: "J0;1 d".into(),
            lims: vec![
                (cst(1, 4), cst(1, 1)),
                (lin((1, 1), &[(0, (-1, 1))]), lin((4, 3), &[(0, (-4, 3))])),
                (
                    lin((-4, 1), &[(0, (4, 1)), (1, (4, 1))]),
                    lin((0, 1), &[(1, (1, 1))]),
                ),
                x_lims(),
            ],
        },
    ]
}

fn j0_shell_programs() -> Vec<Program> {
    // x between max(t, 1-y+s/4) and 1+s/4, resolved per piece
    let x_hi_shift = || (lin((1, 1), &[(0, (-1, 1)), (2, (1, 4))]), lin((1, 1), &[(2, (1, 4))]));
    let x_from_t = || (lin((0, 1), &[(1, (1, 1))]), lin((1, 1), &[(2, (1, 4))]));
    vec![
        Program {
            label: "J0;2 a".into(),
            lims: vec![
                (cst(0, 1), cst(1, 4)),
                (cst(0, 1), lin((1, 1), &[(0, (-1, 1))])),
                (cst(0, 1), lin((0, 1), &[(1, (1, 1))])),
                x_hi_shift(),
            ],
        },
        Program {
            label: "J0;2 b".into(),
            lims: vec![
                (cst(1, 4), cst(1, 1)),
                (cst(0, 1), lin((1, 1), &[(0, (-1, 1))])),
                (cst(0, 1), lin((0, 1), &[(1, (1, 1))])),
                x_hi_shift(),
            ],
        },
        Program {
            label: "J0;2 c".into(),
            lims: vec![
                (cst(0, 1), cst(1, 4)),
                (lin((1, 1), &[(0, (-1, 1))]), cst(1, 1)),
                (
                    lin((-4, 1), &[(0, (4, 1)), (1, (4, 1))]),
                    lin((0, 1), &[(1, (1, 1))]),
                ),
                x_hi_shift(),
            ],
        },
        Program {
            label: "J0;2 d".into(),
            lims: vec![
                (cst(1, 4), cst(1, 1)),
                (lin((1, 1), &[(0, (-1, 1))]), lin((4, 3), &[(0, (-4, 3))])),
                (
                    lin((-4, 1), &[(0, (4, 1)), (1, (4, 1))]),
                    lin((0, 1), &[(1, (1, 1))]),
                ),
                x_hi_shift(),
            ],
        },
        Program {
            label: "J0;2 e".into(),
            lims: vec![
                (cst(1, 4), cst(1, 1)),
                (lin((4, 3), &[(0, (-4, 3))]), cst(1, 1)),
                (cst(0, 1), lin((0, 1), &[(1, (1, 1))])),
                x_from_t(),
            ],
        },
        Program {
            label: "J0;2 f".into(),
            lims: vec![
                (cst(0, 1), cst(1, 4)),
                (lin((1, 1), &[(0, (-1, 1))]), cst(1, 1)),
                (cst(0, 1), lin((-4, 1), &[(0, (4, 1)), (1, (4, 1))])),
                x_from_t(),
            ],
        },
        Program {
            label: "J0;2 g".into(),
            lims: vec![
                (cst(1, 4), cst(1, 1)),
                (lin((1, 1), &[(0, (-1, 1))]), lin((4, 3), &[(0, (-4, 3))])),
                (cst(0, 1), lin((-4, 1), &[(0, (4, 1)), (1, (4, 1))])),
                x_from_t(),
            ],
        },
        Program {
            label: "J0;2 h".into(),
            lims: vec![
                (cst(1, 1), cst(3, 2)),
                (cst(0, 1), cst(1, 1)),
                (cst(0, 1), lin((0, 1), &[(1, (1, 1))])),
                x_from_t(),
            ],
        },
    ]
}

fn j32_clip_programs() -> Vec<Program> {
    vec![
        Program {
            label: "R3';1 a".into(),
            lims: vec![
                (cst(3, 2), cst(15, 8)),
                (cst(1, 4), lin((4, 1), &[(0, (-2, 1))])),
                (lin((4, 3), &[(1, (-4, 3))]), cst(1, 1)),
                (cst(0, 1), lin((0, 1), &[(2, (1, 1))])),
            ],
        },
        Program {
            label: "R3';1 b".into(),
            lims: vec![
                (cst(3, 2), cst(15, 8)),
                (cst(0, 1), cst(1, 4)),
                (lin((1, 1), &[(1, (-1, 1))]), cst(1, 1)),
                (cst(0, 1), lin((-4, 1), &[(1, (4, 1)), (2, (4, 1))])),
            ],
        },
        Program {
            label: "R3';1 c".into(),
            lims: vec![
                (cst(15, 8), cst(2, 1)),
                (cst(0, 1), lin((4, 1), &[(0, (-2, 1))])),
                (lin((1, 1), &[(1, (-1, 1))]), cst(1, 1)),
                (cst(0, 1), lin((-4, 1), &[(1, (4, 1)), (2, (4, 1))])),
            ],
        },
        Program {
            label: "R3';1 d".into(),
            lims: vec![
                (cst(3, 2), cst(15, 8)),
                (cst(1, 4), lin((4, 1), &[(0, (-2, 1))])),
                (lin((1, 1), &[(1, (-1, 1))]), lin((4, 3), &[(1, (-4, 3))])),
                (cst(0, 1), lin((-4, 1), &[(1, (4, 1)), (2, (4, 1))])),
            ],
        },
    ]
}

fn j32_short_programs() -> Vec<Program> {
    vec![
        Program {
            label: "R3';2 a".into(),
            lims: vec![
                (cst(3, 2), cst(15, 8)),
                (cst(0, 1), lin((4, 1), &[(0, (-2, 1))])),
                (cst(0, 1), lin((1, 1), &[(1, (-1, 1))])),
                (cst(0, 1), lin((0, 1), &[(2, (1, 1))])),
            ],
        },
        Program {
            label: "R3';2 b".into(),
            lims: vec![
                (cst(15, 8), cst(2, 1)),
                (cst(0, 1), lin((4, 1), &[(0, (-2, 1))])),
                (cst(0, 1), lin((1, 1), &[(1, (-1, 1))])),
                (cst(0, 1), lin((0, 1), &[(2, (1, 1))])),
            ],
        },
        Program {
            label: "R3';2 c".into(),
            lims: vec![
                (cst(3, 2), cst(15, 8)),
                (cst(0, 1), cst(1, 4)),
                (lin((1, 1), &[(1, (-1, 1))]), cst(1, 1)),
                (
                    lin((-4, 1), &[(1, (4, 1)), (2, (4, 1))]),
                    lin((0, 1), &[(2, (1, 1))]),
                ),
            ],
        },
        Program {
            label: "R3';2 d".into(),
            lims: vec![
                (cst(15, 8), cst(2, 1)),
                (cst(0, 1), lin((4, 1), &[(0, (-2, 1))])),
                (lin((1, 1), &[(1, (-1, 1))]), cst(1, 1)),
                (
                    lin((-4, 1), &[(1, (4, 1)), (2, (4, 1))]),
                    lin((0, 1), &[(2, (1, 1))]),
                ),
            ],
        },
        Program {
            label: "R3';2 e".into(),
            lims: vec![
                (cst(3, 2), cst(15, 8)),
                (cst(1, 4), lin((4, 1), &[(0, (-2, 1))])),
                (lin((1, 1), &[(1, (-1, 1))]), lin((4, 3), &[(1, (-4, 3))])),
                (
                    lin((-4, 1), &[(1, (4, 1)), (2, (4, 1))]),
                    lin((0, 1), &[(2, (1, 1))]),
                ),
            ],
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn program_regions_match_limits() {
        let f = presets::headline5().diagonal_reduce().unwrap();
        let groups = headline_groups(&f);
        let g = groups.iter().find(|g| g.name == "J21/R2;1").unwrap();
        // a point inside program "R2;1 a": y = 1.2, t = 0.5, s = 0.2
        let region = g.programs[0].region(&g.bounds);
        assert!(region.contains(&[1.2, 0.5, 0.2]).unwrap());
        assert!(!region.contains(&[0.9, 0.5, 0.2]).unwrap()); // y below 1
        assert!(!region.contains(&[1.2, 0.5, 0.7]).unwrap()); // s above t
    }
}
