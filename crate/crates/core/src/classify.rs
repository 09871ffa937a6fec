//! Index-set decomposition, structural checks on PBW presentations and
//! assignment to one of the five families.

use std::collections::BTreeMap;
use std::fmt;

use crate::construct::{
    build_family, coupled_components, gap_of, Family, FamilyParams, FamilySpec, SetLayout, Slot, ThreeType,
};
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::rewrite::is_pbw;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentTag {
    /// Untagged component, used when `|I| <= 1`.
    R,
    S,
    TCircle,
    TBullet,
}

impl fmt::Display for ComponentTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentTag::R => "R",
            ComponentTag::S => "S",
            ComponentTag::TCircle => "T-circle",
            ComponentTag::TBullet => "T-bullet",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub n: usize,
    /// Indices with `x != 0`, ascending.
    pub i: Vec<usize>,
    /// Indices with `x = 0`, ascending.
    pub r: Vec<usize>,
    /// Connected components of `r`, each ascending, sorted by content.
    pub components: Vec<Vec<usize>>,
    /// One tag per component.
    pub tags: Vec<ComponentTag>,
}

impl Decomposition {
    fn tagged(&self, tag: ComponentTag) -> Vec<Vec<usize>> {
        self.components
            .iter()
            .zip(&self.tags)
            .filter(|(_, t)| **t == tag)
            .map(|(c, _)| c.clone())
            .collect()
    }

    pub fn s_components(&self) -> Vec<Vec<usize>> {
        self.tagged(ComponentTag::S)
    }

    pub fn circle_components(&self) -> Vec<Vec<usize>> {
        self.tagged(ComponentTag::TCircle)
    }

    pub fn bullet_components(&self) -> Vec<Vec<usize>> {
        self.tagged(ComponentTag::TBullet)
    }

    /// Union of the S components, ascending.
    pub fn s_set(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.s_components().into_iter().flatten().collect();
        s.sort_unstable();
        s
    }

    pub fn n_i(&self) -> usize {
        self.i.len()
    }

    pub fn n_r(&self) -> usize {
        self.r.len()
    }

    pub fn m_r(&self) -> usize {
        self.components.len()
    }

    pub fn m_s(&self) -> usize {
        self.tags.iter().filter(|t| **t == ComponentTag::S).count()
    }

    pub fn m_t(&self) -> usize {
        self.m_circle() + self.m_bullet()
    }

    pub fn m_circle(&self) -> usize {
        self.tags.iter().filter(|t| **t == ComponentTag::TCircle).count()
    }

    pub fn m_bullet(&self) -> usize {
        self.tags.iter().filter(|t| **t == ComponentTag::TBullet).count()
    }
}

pub fn decompose(p: &Presentation) -> Decomposition {
    let n = p.n();
    let (i, r): (Vec<usize>, Vec<usize>) = (1..=n).partition(|&a| !p.x(a).is_zero());
    let components = coupled_components(p, &r);
    let tags = components
        .iter()
        .map(|c| {
            if i.len() < 2 {
                ComponentTag::R
            } else if c.iter().any(|&t| i.iter().any(|&k| p.coupled(k, t))) {
                ComponentTag::S
            } else if gap_of(&i, c).is_some() {
                ComponentTag::TBullet
            } else {
                ComponentTag::TCircle
            }
        })
        .collect();
    Decomposition {
        n,
        i,
        r,
        components,
        tags,
    }
}

/// A failed structural condition on a decomposed presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LemmaViolation {
    /// The relation between two I indices breaks the common pattern of all
    /// I pairs (`|I| >= 3`).
    NonUniformI(usize, usize),
    /// Symmetric I pattern, but `g(i,s) = g(s,i) = g_s` fails.
    Vot { s: usize, i: usize },
    /// Antisymmetric I pattern with a nonempty S.
    SNotEmpty(usize),
    /// `|I| = 2`: the S relations are not `(g_s, g_s - Lambda)` on both
    /// sides.
    SForm { s: usize, i: usize },
    /// The normal-ordered coefficient of `i` against a T component varies
    /// inside the component.
    TNotConstant { component: usize, i: usize },
    /// The normal-ordered coefficients of `i` and `j` against `t` do not
    /// differ by `g(i,j) - g(j,i)`.
    TShift { t: usize, i: usize, j: usize },
    /// `|I| = 1`: `g(i,r) - g(r,i)` is not constant on the component.
    RLambda { component: usize, r: usize },
}

impl fmt::Display for LemmaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LemmaViolation::NonUniformI(a, b) => write!(f, "I pair ({a},{b}) breaks the common I pattern"),
            LemmaViolation::Vot { s, i } => write!(f, "g({i},{s}) = g({s},{i}) = g_s fails"),
            LemmaViolation::SNotEmpty(s) => write!(f, "antisymmetric I pattern but {s} is in S"),
            LemmaViolation::SForm { s, i } => write!(f, "S relation ({i},{s}) is not (g_s, g_s - Lambda)"),
            LemmaViolation::TNotConstant { component, i } => {
                write!(f, "coefficient of {i} varies on T component {component}")
            }
            LemmaViolation::TShift { t, i, j } => {
                write!(
                    f,
                    "coefficients of {i} and {j} against {t} do not differ by Lambda({i},{j})"
                )
            }
            LemmaViolation::RLambda { component, r } => {
                write!(f, "g(i,{r}) - g({r},i) differs on component {component}")
            }
        }
    }
}

/// `c` with `c :D_i D_t: = -x_i D_t` for a pair whose lower coefficient
/// vanishes.
fn normal_coef(p: &Presentation, i: usize, t: usize) -> Scalar {
    if i < t {
        p.g(i, t).clone()
    } else {
        -p.g(t, i)
    }
}

/// Whether the I pairs follow the symmetric pattern; decided by the first
/// pair.
fn symmetric_i(p: &Presentation, i_set: &[usize]) -> bool {
    !p.g(i_set[1], i_set[0]).is_zero()
}

/// `g_i` of the antisymmetric pattern with `g_i = 0` on the smallest index.
fn aii_gauge(p: &Presentation, i_set: &[usize]) -> BTreeMap<usize, Scalar> {
    let i0 = i_set[0];
    i_set
        .iter()
        .map(|&i| (i, if i == i0 { Scalar::zero() } else { -p.g(i0, i) }))
        .collect()
}

pub fn verify_lemma(p: &Presentation, d: &Decomposition) -> Vec<LemmaViolation> {
    let mut out = Vec::new();
    let i_set = &d.i;
    let ni = i_set.len();
    if ni >= 3 {
        let symmetric = symmetric_i(p, i_set);
        let g = p.g(i_set[0], i_set[1]).clone();
        let gauge = aii_gauge(p, i_set);
        for (k, &a) in i_set.iter().enumerate() {
            for &b in &i_set[k + 1..] {
                let ok = if symmetric {
                    *p.g(a, b) == g && *p.g(b, a) == g
                } else {
                    *p.g(a, b) == &gauge[&a] - &gauge[&b] && p.g(b, a).is_zero()
                };
                if !ok {
                    out.push(LemmaViolation::NonUniformI(a, b));
                }
            }
        }
        for s in d.s_set() {
            if symmetric {
                let gs = p.g(s, i_set[0]);
                for &i in i_set {
                    if p.g(i, s) != gs || p.g(s, i) != gs {
                        out.push(LemmaViolation::Vot { s, i });
                    }
                }
            } else {
                out.push(LemmaViolation::SNotEmpty(s));
            }
        }
    }
    if ni == 2 {
        let (i, j) = (i_set[0], i_set[1]);
        let lambda = p.lambda(i, j);
        for s in d.s_set() {
            let gs = p.g(i, s);
            if p.lambda(i, s) != lambda {
                out.push(LemmaViolation::SForm { s, i });
            }
            if p.g(s, j) != gs || p.lambda(s, j) != lambda {
                out.push(LemmaViolation::SForm { s, i: j });
            }
        }
    }
    if ni >= 2 {
        for (ci, (comp, tag)) in d.components.iter().zip(&d.tags).enumerate() {
            if !matches!(tag, ComponentTag::TCircle | ComponentTag::TBullet) {
                continue;
            }
            for &i in i_set {
                let c0 = normal_coef(p, i, comp[0]);
                if comp.iter().any(|&t| normal_coef(p, i, t) != c0) {
                    out.push(LemmaViolation::TNotConstant { component: ci, i });
                }
            }
            for (k, &i) in i_set.iter().enumerate() {
                for &j in &i_set[k + 1..] {
                    let straddles = *tag == ComponentTag::TBullet && i < comp[0] && comp[0] < j;
                    if straddles {
                        continue;
                    }
                    let t = comp[0];
                    if normal_coef(p, i, t) - normal_coef(p, j, t) != p.lambda(i, j) {
                        out.push(LemmaViolation::TShift { t, i, j });
                    }
                }
            }
        }
    }
    if ni == 1 {
        let i = i_set[0];
        for (ci, comp) in d.components.iter().enumerate() {
            let l0 = p.lambda(i, comp[0]);
            for &r in &comp[1..] {
                if p.lambda(i, r) != l0 {
                    out.push(LemmaViolation::RLambda { component: ci, r });
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyAssignment {
    pub family: Family,
    /// Refined type when `N = 3`.
    pub three_type: Option<ThreeType>,
    pub decomposition: Decomposition,
    /// Canonical parameters; the family builder reproduces the presentation
    /// from them.
    pub spec: FamilySpec,
}

/// Reads the family constants off a decomposed presentation. Assumes the
/// structural checks pass.
pub fn extract_spec(p: &Presentation, d: &Decomposition) -> FamilySpec {
    let i_set = &d.i;
    let ni = i_set.len();
    let family = match ni {
        0 => Family::D,
        1 => Family::C,
        2 => Family::B,
        _ if symmetric_i(p, i_set) => Family::AI,
        _ => Family::AII,
    };
    let sets = SetLayout {
        i: i_set.clone(),
        s: d.s_set(),
        circle: d.circle_components(),
        bullet: d.bullet_components(),
        r: if ni <= 1 { d.components.clone() } else { Vec::new() },
    };
    let x = i_set.iter().map(|&i| (i, p.x(i).clone())).collect();
    let around = |t: usize| {
        let lo = *i_set.iter().rev().find(|&&i| i < t).unwrap();
        let hi = *i_set.iter().find(|&&i| i > t).unwrap();
        (lo, hi)
    };
    let i0 = i_set.first().copied().unwrap_or(0);
    let params = match family {
        Family::AI => FamilyParams::AI {
            g: p.g(i_set[0], i_set[1]).clone(),
            g_s: sets.s.iter().map(|&s| (s, p.g(s, i0).clone())).collect(),
            circle: sets.circle.iter().map(|c| normal_coef(p, i0, c[0])).collect(),
            bullet: sets
                .bullet
                .iter()
                .map(|c| {
                    let (lo, hi) = around(c[0]);
                    (p.g(lo, c[0]).clone(), p.g(c[0], hi).clone())
                })
                .collect(),
        },
        Family::AII => {
            let g_i = aii_gauge(p, i_set);
            let circle = sets
                .circle
                .iter()
                .map(|c| normal_coef(p, i0, c[0]) - &g_i[&i0])
                .collect();
            let bullet = sets
                .bullet
                .iter()
                .map(|c| {
                    let (lo, hi) = around(c[0]);
                    (p.g(lo, c[0]) - &g_i[&lo], p.g(c[0], hi) + &g_i[&hi])
                })
                .collect();
            FamilyParams::AII { g_i, circle, bullet }
        }
        Family::B => {
            let j = i_set[1];
            FamilyParams::B {
                g: p.g(i0, j).clone(),
                lambda: p.lambda(i0, j),
                g_s: sets.s.iter().map(|&s| (s, p.g(i0, s).clone())).collect(),
                circle: sets.circle.iter().map(|c| normal_coef(p, i0, c[0])).collect(),
                bullet: sets
                    .bullet
                    .iter()
                    .map(|c| (p.g(i0, c[0]).clone(), p.g(c[0], j).clone()))
                    .collect(),
            }
        }
        Family::C => FamilyParams::C {
            lambda_a: sets.r.iter().map(|c| p.lambda(i0, c[0])).collect(),
            g_r: sets.r.iter().flatten().map(|&r| (r, p.g(i0, r).clone())).collect(),
        },
        Family::D => FamilyParams::D,
    };
    let mut redges = BTreeMap::new();
    for group in sets.groups() {
        for (k, &a) in group.iter().enumerate() {
            for &b in &group[k + 1..] {
                redges.insert((a, b), (p.g(a, b).clone(), p.g(b, a).clone()));
            }
        }
    }
    FamilySpec {
        n: p.n(),
        sets,
        x,
        params,
        redges,
    }
    .canonical()
}

/// Refined three-generator type of a decomposition with `N = 3`.
pub fn three_type(family: Family, d: &Decomposition) -> Option<ThreeType> {
    if d.n != 3 {
        return None;
    }
    Some(match family {
        Family::AI => ThreeType::AI,
        Family::AII => ThreeType::AII,
        Family::B => {
            let r = d.r[0];
            match (d.tags[0], r) {
                (ComponentTag::S, _) => ThreeType::B1(Slot::from_index(r)?),
                (_, 1) => ThreeType::B4,
                (_, 2) => ThreeType::B2,
                _ => ThreeType::B3,
            }
        }
        Family::C => {
            let i = Slot::from_index(d.i[0])?;
            if d.m_r() == 1 {
                ThreeType::C1(i)
            } else {
                ThreeType::C2(i)
            }
        }
        Family::D => ThreeType::D,
    })
}

/// Assigns a PBW presentation to its family and extracts the parameters.
pub fn classify_family(p: &Presentation) -> Result<FamilyAssignment> {
    if !is_pbw(p).passed {
        return Err(Error::NotPbw);
    }
    classify_pbw(p)
}

/// [`classify_family`] without the diamond check, for callers that have
/// already run it.
pub fn classify_pbw(p: &Presentation) -> Result<FamilyAssignment> {
    let d = decompose(p);
    let violations = verify_lemma(p, &d);
    if let Some(v) = violations.first() {
        return Err(Error::InternalInconsistency(format!("PBW presentation violates: {v}")));
    }
    let spec = extract_spec(p, &d);
    let rebuilt = build_family(&spec)
        .map_err(|e| Error::InternalInconsistency(format!("extracted parameters do not build: {e}")))?;
    if !rebuilt.same_relations(p) {
        return Err(Error::InternalInconsistency(
            "extracted parameters do not reproduce the relations".into(),
        ));
    }
    let family = spec.family();
    Ok(FamilyAssignment {
        family,
        three_type: three_type(family, &d),
        decomposition: d,
        spec,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PhysicalReport {
    pub physical: bool,
    /// Pairs `a < b` with `g(a,b)` not positive.
    pub nonpositive_upper: Vec<(usize, usize)>,
    /// Pairs `a < b` with `g(b,a)` negative.
    pub negative_lower: Vec<(usize, usize)>,
    /// T-circle components reaching between `min I` and `max I`.
    pub inner_circle: Vec<Vec<usize>>,
}

/// Non-negative structure constants with every T-circle component entirely
/// below or entirely above I.
pub fn check_physical(p: &Presentation, d: &Decomposition) -> PhysicalReport {
    let mut rep = PhysicalReport::default();
    for (a, b) in p.pairs() {
        if !p.g(a, b).is_positive() {
            rep.nonpositive_upper.push((a, b));
        }
        if !p.g(b, a).is_non_negative() {
            rep.negative_lower.push((a, b));
        }
    }
    if let (Some(&lo), Some(&hi)) = (d.i.first(), d.i.last()) {
        for c in d.circle_components() {
            let outside = c.iter().all(|&t| t < lo) || c.iter().all(|&t| t > hi);
            if !outside {
                rep.inner_circle.push(c);
            }
        }
    }
    rep.physical = rep.nonpositive_upper.is_empty() && rep.negative_lower.is_empty() && rep.inner_circle.is_empty();
    rep
}
