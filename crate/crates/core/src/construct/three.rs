//! The three-generator algebras, including the exchange variants.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::scalar::Scalar;

/// Position inside an ordered triple `alpha < beta < gamma`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Alpha,
    Beta,
    Gamma,
}

impl Slot {
    pub const ALL: [Slot; 3] = [Slot::Alpha, Slot::Beta, Slot::Gamma];

    /// 1-based generator index.
    pub fn index(self) -> usize {
        match self {
            Slot::Alpha => 1,
            Slot::Beta => 2,
            Slot::Gamma => 3,
        }
    }

    pub fn from_index(i: usize) -> Option<Slot> {
        match i {
            1 => Some(Slot::Alpha),
            2 => Some(Slot::Beta),
            3 => Some(Slot::Gamma),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Slot::Alpha => "alpha",
            Slot::Beta => "beta",
            Slot::Gamma => "gamma",
        }
    }

    /// The two other slots, ascending.
    fn others(self) -> (usize, usize) {
        match self {
            Slot::Alpha => (2, 3),
            Slot::Beta => (1, 3),
            Slot::Gamma => (1, 2),
        }
    }
}

/// Refined type of a three-generator algebra. `B1` carries the slot of the
/// single `x = 0` generator; `C1` and `C2` carry the slot of the single
/// `x != 0` generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ThreeType {
    AI,
    AII,
    B1(Slot),
    B2,
    B3,
    B4,
    C1(Slot),
    C2(Slot),
    D,
}

impl ThreeType {
    /// Every type and variant: 15 in total.
    pub fn all() -> Vec<ThreeType> {
        let mut out = vec![ThreeType::AI, ThreeType::AII];
        out.extend(Slot::ALL.map(ThreeType::B1));
        out.extend([ThreeType::B2, ThreeType::B3, ThreeType::B4]);
        out.extend(Slot::ALL.map(ThreeType::C1));
        out.extend(Slot::ALL.map(ThreeType::C2));
        out.push(ThreeType::D);
        out
    }

    pub fn label(self) -> String {
        match self {
            ThreeType::AI => "A_I".into(),
            ThreeType::AII => "A_II".into(),
            ThreeType::B1(s) => format!("B(1)/R-{}", s.name()),
            ThreeType::B2 => "B(2)".into(),
            ThreeType::B3 => "B(3)".into(),
            ThreeType::B4 => "B(4)".into(),
            ThreeType::C1(s) => format!("C(1)/I-{}", s.name()),
            ThreeType::C2(s) => format!("C(2)/I-{}", s.name()),
            ThreeType::D => "D".into(),
        }
    }

    /// Slots whose `x` is nonzero.
    pub fn i_slots(self) -> Vec<usize> {
        match self {
            ThreeType::AI | ThreeType::AII => vec![1, 2, 3],
            ThreeType::B1(r) => {
                let (a, b) = r.others();
                vec![a, b]
            }
            ThreeType::B2 => vec![1, 3],
            ThreeType::B3 => vec![1, 2],
            ThreeType::B4 => vec![2, 3],
            ThreeType::C1(i) | ThreeType::C2(i) => vec![i.index()],
            ThreeType::D => vec![],
        }
    }
}

impl fmt::Display for ThreeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for ThreeType {
    type Err = Error;
    fn from_str(s: &str) -> Result<ThreeType> {
        ThreeType::all()
            .into_iter()
            .find(|t| t.label() == s)
            .ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("unknown three-generator type `{s}`"),
            })
    }
}

/// Parameters of each type, named after the coefficients they stand for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThreeParams {
    AI {
        g: Scalar,
    },
    /// `g_i` for alpha, beta, gamma.
    AII {
        g: [Scalar; 3],
    },
    /// `g_r` belongs to the `x = 0` slot `r`.
    B1 {
        r: Slot,
        g: Scalar,
        g_r: Scalar,
        lambda: Scalar,
    },
    B2 {
        g_ab: Scalar,
        g_ag: Scalar,
        g_ga: Scalar,
        g_bg: Scalar,
    },
    B3 {
        g: Scalar,
        g_c: Scalar,
        lambda: Scalar,
    },
    B4 {
        g: Scalar,
        g_a: Scalar,
        lambda: Scalar,
    },
    /// `g_r` for the two `x = 0` slots in ascending order, then the
    /// coefficients of the relation between them.
    C1 {
        i: Slot,
        g_r: [Scalar; 2],
        lambda: Scalar,
        g_rr: (Scalar, Scalar),
    },
    /// `(g(i,r), g(r,i))` for the two `x = 0` slots in ascending order.
    C2 {
        i: Slot,
        g_ir: [(Scalar, Scalar); 2],
    },
    /// `q21`, `q31`, `q32`.
    D {
        q: [Scalar; 3],
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeTemplate {
    pub params: ThreeParams,
    /// `x` for alpha, beta, gamma; must vanish exactly off the I slots.
    pub x: [Scalar; 3],
}

impl ThreeTemplate {
    pub fn ty(&self) -> ThreeType {
        match &self.params {
            ThreeParams::AI { .. } => ThreeType::AI,
            ThreeParams::AII { .. } => ThreeType::AII,
            ThreeParams::B1 { r, .. } => ThreeType::B1(*r),
            ThreeParams::B2 { .. } => ThreeType::B2,
            ThreeParams::B3 { .. } => ThreeType::B3,
            ThreeParams::B4 { .. } => ThreeType::B4,
            ThreeParams::C1 { i, .. } => ThreeType::C1(*i),
            ThreeParams::C2 { i, .. } => ThreeType::C2(*i),
            ThreeParams::D { .. } => ThreeType::D,
        }
    }

    fn check_x(&self) -> Result<()> {
        let i_slots = self.ty().i_slots();
        for (k, v) in self.x.iter().enumerate() {
            let want = i_slots.contains(&(k + 1));
            if want == v.is_zero() {
                let state = if want { "nonzero" } else { "zero" };
                return Err(Error::Constraint(format!("{}: x_{} must be {state}", self.ty(), k + 1)));
            }
        }
        Ok(())
    }

    /// The stated parameter conditions of the type.
    pub fn check_constraints(&self) -> Result<()> {
        let ty = self.ty();
        let nz = |v: &Scalar, what: &str| {
            if v.is_zero() {
                Err(Error::Constraint(format!("{ty}: {what} != 0")))
            } else {
                Ok(())
            }
        };
        let ne = |a: &Scalar, b: &Scalar, what: &str| {
            if a == b {
                Err(Error::Constraint(format!("{ty}: {what}")))
            } else {
                Ok(())
            }
        };
        match &self.params {
            ThreeParams::AI { g } => nz(g, "g"),
            ThreeParams::AII { g } => {
                ne(&g[0], &g[1], "g_alpha != g_beta")?;
                ne(&g[0], &g[2], "g_alpha != g_gamma")?;
                ne(&g[1], &g[2], "g_beta != g_gamma")
            }
            ThreeParams::B1 { r, g, g_r, lambda } => {
                nz(g, "g")?;
                nz(g_r, "g_r")?;
                if *r != Slot::Beta {
                    ne(g_r, lambda, "g_r != Lambda")?;
                }
                Ok(())
            }
            ThreeParams::B2 { g_ab, g_ag, g_bg, .. } => {
                nz(g_ab, "g_alpha_beta")?;
                nz(g_ag, "g_alpha_gamma")?;
                nz(g_bg, "g_beta_gamma")
            }
            ThreeParams::B3 { g, g_c: g_x, lambda } | ThreeParams::B4 { g, g_a: g_x, lambda } => {
                nz(g, "g")?;
                let name = if matches!(ty, ThreeType::B3) {
                    "g_gamma"
                } else {
                    "g_alpha"
                };
                nz(g_x, name)?;
                ne(g_x, lambda, &format!("{name} != Lambda"))
            }
            ThreeParams::C1 { i, g_r, lambda, g_rr } => {
                let (ra, rb) = i.others();
                for (r, v) in [ra, rb].into_iter().zip(g_r) {
                    if r > i.index() {
                        nz(v, &format!("g_{}", Slot::from_index(r).unwrap().name()))?;
                    } else {
                        ne(
                            v,
                            lambda,
                            &format!("g_{} != Lambda", Slot::from_index(r).unwrap().name()),
                        )?;
                    }
                }
                nz(&g_rr.0, "g_rr")
            }
            ThreeParams::C2 { i, g_ir } => {
                let (ra, rb) = i.others();
                for (r, (gir, gri)) in [ra, rb].into_iter().zip(g_ir) {
                    let upper = if r > i.index() { gir } else { gri };
                    let (lo, hi) = (r.min(i.index()), r.max(i.index()));
                    nz(upper, &format!("g_{lo}{hi}"))?;
                }
                Ok(())
            }
            ThreeParams::D { .. } => Ok(()),
        }
    }
}

/// Builds the template after checking `x` and every parameter condition.
pub fn build_three(t: &ThreeTemplate) -> Result<Presentation> {
    t.check_x()?;
    t.check_constraints()?;
    Ok(build_three_unchecked(t))
}

/// Places the template coefficients without checking any condition.
pub fn build_three_unchecked(t: &ThreeTemplate) -> Presentation {
    let mut p = Presentation::new(3);
    for (k, v) in t.x.iter().enumerate() {
        p.set_x(k + 1, v.clone());
    }
    let z = Scalar::zero;
    match &t.params {
        ThreeParams::AI { g } => {
            for (a, b) in [(1, 2), (1, 3), (2, 3)] {
                p.set_pair(a, b, g.clone(), g.clone());
            }
        }
        ThreeParams::AII { g } => {
            for (a, b) in [(1, 2), (1, 3), (2, 3)] {
                p.set_pair(a, b, &g[a - 1] - &g[b - 1], z());
            }
        }
        ThreeParams::B1 { r, g, g_r, lambda } => {
            let (i, j) = r.others();
            let r = r.index();
            p.set_pair(i, j, g.clone(), g - lambda);
            p.set_pair(i, r, g_r.clone(), g_r - lambda);
            p.set_pair(r, j, g_r.clone(), g_r - lambda);
        }
        ThreeParams::B2 { g_ab, g_ag, g_ga, g_bg } => {
            p.set_pair(1, 2, g_ab.clone(), z());
            p.set_pair(1, 3, g_ag.clone(), g_ga.clone());
            p.set_pair(2, 3, g_bg.clone(), z());
        }
        ThreeParams::B3 { g, g_c, lambda } => {
            p.set_pair(1, 2, g.clone(), g - lambda);
            p.set_pair(1, 3, g_c.clone(), z());
            p.set_pair(2, 3, g_c - lambda, z());
        }
        ThreeParams::B4 { g, g_a, lambda } => {
            p.set_pair(1, 2, g_a - lambda, z());
            p.set_pair(1, 3, g_a.clone(), z());
            p.set_pair(2, 3, g.clone(), g - lambda);
        }
        ThreeParams::C1 { i, g_r, lambda, g_rr } => {
            let (ra, rb) = i.others();
            for (r, v) in [ra, rb].into_iter().zip(g_r) {
                p.set_pair(i.index(), r, v.clone(), v - lambda);
            }
            p.set_pair(ra, rb, g_rr.0.clone(), g_rr.1.clone());
        }
        ThreeParams::C2 { i, g_ir } => {
            let (ra, rb) = i.others();
            for (r, (gir, gri)) in [ra, rb].into_iter().zip(g_ir) {
                p.set_pair(i.index(), r, gir.clone(), gri.clone());
            }
            p.set_pair(ra, rb, Scalar::one(), z());
        }
        ThreeParams::D { q } => {
            p.set_pair(1, 2, Scalar::one(), q[0].clone());
            p.set_pair(1, 3, Scalar::one(), q[1].clone());
            p.set_pair(2, 3, Scalar::one(), q[2].clone());
        }
    }
    p
}

/// A small rational `k/d` with `|k| <= 3`, `d in {1, 2}`.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R, nonzero: bool) -> Scalar {
    loop {
        let v = Scalar::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2));
        if !(nonzero && v.is_zero()) {
            return v;
        }
    }
}

/// Draws parameters for `ty` until every condition holds.
pub fn random_three<R: Rng + ?Sized>(rng: &mut R, ty: ThreeType) -> ThreeTemplate {
    loop {
        let mut q = |nz: bool| small_rational(rng, nz);
        let params = match ty {
            ThreeType::AI => ThreeParams::AI { g: q(true) },
            ThreeType::AII => ThreeParams::AII {
                g: [q(false), q(false), q(false)],
            },
            ThreeType::B1(r) => ThreeParams::B1 {
                r,
                g: q(true),
                g_r: q(true),
                lambda: q(false),
            },
            ThreeType::B2 => ThreeParams::B2 {
                g_ab: q(true),
                g_ag: q(true),
                g_ga: q(false),
                g_bg: q(true),
            },
            ThreeType::B3 => ThreeParams::B3 {
                g: q(true),
                g_c: q(true),
                lambda: q(false),
            },
            ThreeType::B4 => ThreeParams::B4 {
                g: q(true),
                g_a: q(true),
                lambda: q(false),
            },
            ThreeType::C1(i) => ThreeParams::C1 {
                i,
                g_r: [q(false), q(false)],
                lambda: q(false),
                g_rr: (q(true), q(true)),
            },
            ThreeType::C2(i) => ThreeParams::C2 {
                i,
                g_ir: [(q(false), q(false)), (q(false), q(false))],
            },
            ThreeType::D => ThreeParams::D {
                q: [q(false), q(false), q(false)],
            },
        };
        let i_slots = ty.i_slots();
        let x = [1, 2, 3].map(|k| {
            if i_slots.contains(&k) {
                small_rational(rng, true)
            } else {
                Scalar::zero()
            }
        });
        let t = ThreeTemplate { params, x };
        if t.check_constraints().is_ok() {
            return t;
        }
    }
}
