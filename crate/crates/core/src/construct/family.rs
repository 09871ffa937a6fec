//! The five N-generator families and their builder.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    AI,
    AII,
    B,
    C,
    D,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::AI, Family::AII, Family::B, Family::C, Family::D];

    pub fn name(self) -> &'static str {
        match self {
            Family::AI => "A_I",
            Family::AII => "A_II",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("unknown family `{s}`"),
            })
    }
}

/// Which indices go where. Every list is ascending; components are
/// non-empty.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SetLayout {
    pub i: Vec<usize>,
    /// Flat S set (A_I and B only); its components follow from `redges`.
    pub s: Vec<usize>,
    /// T° components.
    pub circle: Vec<Vec<usize>>,
    /// T• components.
    pub bullet: Vec<Vec<usize>>,
    /// R components (C and D only).
    pub r: Vec<Vec<usize>>,
}

impl SetLayout {
    /// Index groups whose internal pairs carry free coefficients.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if !self.s.is_empty() {
            out.push(self.s.clone());
        }
        out.extend(self.circle.iter().cloned());
        out.extend(self.bullet.iter().cloned());
        out.extend(self.r.iter().cloned());
        out
    }

    fn group_of(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for (gi, g) in self.groups().iter().enumerate() {
            for &v in g {
                out.insert(v, gi);
            }
        }
        out
    }
}

/// Family constants. Per-component vectors follow the order of the
/// matching component list in [`SetLayout`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyParams {
    AI {
        g: Scalar,
        g_s: BTreeMap<usize, Scalar>,
        circle: Vec<Scalar>,
        /// `(g+, g-)` per T• component.
        bullet: Vec<(Scalar, Scalar)>,
    },
    AII {
        g_i: BTreeMap<usize, Scalar>,
        circle: Vec<Scalar>,
        bullet: Vec<(Scalar, Scalar)>,
    },
    B {
        g: Scalar,
        lambda: Scalar,
        g_s: BTreeMap<usize, Scalar>,
        circle: Vec<Scalar>,
        bullet: Vec<(Scalar, Scalar)>,
    },
    C {
        lambda_a: Vec<Scalar>,
        g_r: BTreeMap<usize, Scalar>,
    },
    D,
}

impl FamilyParams {
    pub fn family(&self) -> Family {
        match self {
            FamilyParams::AI { .. } => Family::AI,
            FamilyParams::AII { .. } => Family::AII,
            FamilyParams::B { .. } => Family::B,
            FamilyParams::C { .. } => Family::C,
            FamilyParams::D => Family::D,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub n: usize,
    pub sets: SetLayout,
    /// `x` on the I indices; every other `x` is zero.
    pub x: BTreeMap<usize, Scalar>,
    pub params: FamilyParams,
    /// Overrides `(g(a,b), g(b,a))`, `a < b`, for pairs inside one group.
    /// Unlisted pairs default to `(1, 1)` for neighbours in the sorted group
    /// and `(1, 0)` otherwise, so every component is connected by default.
    pub redges: BTreeMap<(usize, usize), (Scalar, Scalar)>,
}

fn fail(msg: impl Into<String>) -> Error {
    Error::Constraint(msg.into())
}

/// Sets the relation `v :D_i D_t: = -x_i D_t`.
fn set_normal(p: &mut Presentation, i: usize, t: usize, v: Scalar) {
    if i < t {
        p.set_pair(i, t, v, Scalar::zero());
    } else {
        p.set_pair(t, i, -v, Scalar::zero());
    }
}

/// Connected components of `members` under `g(a,b) g(b,a) != 0`.
pub(crate) fn coupled_components(p: &Presentation, members: &[usize]) -> Vec<Vec<usize>> {
    let mut parent: BTreeMap<usize, usize> = members.iter().map(|&m| (m, m)).collect();
    fn find(parent: &mut BTreeMap<usize, usize>, mut a: usize) -> usize {
        while parent[&a] != a {
            let up = parent[&parent[&a]];
            parent.insert(a, up);
            a = up;
        }
        a
    }
    for (k, &a) in members.iter().enumerate() {
        for &b in &members[k + 1..] {
            if p.coupled(a, b) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent.insert(ra.max(rb), ra.min(rb));
                }
            }
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &m in members {
        let root = find(&mut parent, m);
        comps.entry(root).or_default().push(m);
    }
    let mut out: Vec<Vec<usize>> = comps.into_values().collect();
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

/// `Some(k)` if every element of `comp` lies strictly between `I[k]` and
/// `I[k+1]`.
pub(crate) fn gap_of(i_set: &[usize], comp: &[usize]) -> Option<usize> {
    (0..i_set.len().saturating_sub(1)).find(|&k| comp.iter().all(|&t| i_set[k] < t && t < i_set[k + 1]))
}

impl FamilySpec {
    pub fn family(&self) -> Family {
        self.params.family()
    }

    fn check_structure(&self) -> Result<()> {
        let n = self.n;
        let sets = &self.sets;
        let mut seen = BTreeSet::new();
        let all = sets
            .i
            .iter()
            .chain(&sets.s)
            .chain(sets.circle.iter().flatten())
            .chain(sets.bullet.iter().flatten())
            .chain(sets.r.iter().flatten());
        for &v in all {
            if v == 0 || v > n {
                return Err(Error::IndexOutOfRange { index: v, n });
            }
            if !seen.insert(v) {
                return Err(fail(format!("index {v} appears in more than one set")));
            }
        }
        if seen.len() != n {
            return Err(fail("sets do not cover every generator"));
        }
        let lists = std::iter::once(&sets.i)
            .chain(std::iter::once(&sets.s))
            .chain(sets.circle.iter())
            .chain(sets.bullet.iter())
            .chain(sets.r.iter());
        for l in lists {
            if l.windows(2).any(|w| w[0] >= w[1]) {
                return Err(fail(format!("set {l:?} is not ascending")));
            }
        }
        if sets
            .circle
            .iter()
            .chain(&sets.bullet)
            .chain(&sets.r)
            .any(|c| c.is_empty())
        {
            return Err(fail("empty component"));
        }
        let fam = self.family();
        let ni = sets.i.len();
        let ni_ok = match fam {
            Family::AI | Family::AII => ni >= 3,
            Family::B => ni == 2,
            Family::C => ni == 1,
            Family::D => ni == 0,
        };
        if !ni_ok {
            return Err(fail(format!("family {fam} cannot have |I| = {ni}")));
        }
        match fam {
            Family::AII if !sets.s.is_empty() => return Err(fail("A_II admits no S set")),
            Family::AI | Family::AII | Family::B if !sets.r.is_empty() => {
                return Err(fail(format!("family {fam} splits R into S and T, not R components")))
            }
            Family::C | Family::D if !(sets.s.is_empty() && sets.circle.is_empty() && sets.bullet.is_empty()) => {
                return Err(fail(format!("family {fam} uses R components only")))
            }
            _ => {}
        }
        let x_keys: Vec<usize> = self.x.keys().copied().collect();
        if x_keys != sets.i {
            return Err(fail("x must be given exactly on the I indices"));
        }
        if let Some((&a, _)) = self.x.iter().find(|(_, v)| v.is_zero()) {
            return Err(fail(format!("x_{a} must be nonzero for an I index")));
        }
        for c in &sets.bullet {
            if gap_of(&sets.i, c).is_none() {
                return Err(fail(format!("T\u{2022} component {c:?} is not inside one gap of I")));
            }
        }
        for c in &sets.circle {
            if gap_of(&sets.i, c).is_some() {
                return Err(fail(format!("T\u{b0} component {c:?} lies inside one gap of I")));
            }
        }
        let n_circle = sets.circle.len();
        let n_bullet = sets.bullet.len();
        let shape_ok = match &self.params {
            FamilyParams::AI {
                g_s, circle, bullet, ..
            }
            | FamilyParams::B {
                g_s, circle, bullet, ..
            } => {
                g_s.keys().copied().collect::<Vec<_>>() == sets.s
                    && circle.len() == n_circle
                    && bullet.len() == n_bullet
            }
            FamilyParams::AII { g_i, circle, bullet } => {
                g_i.keys().copied().collect::<Vec<_>>() == sets.i
                    && circle.len() == n_circle
                    && bullet.len() == n_bullet
            }
            FamilyParams::C { lambda_a, g_r } => {
                lambda_a.len() == sets.r.len()
                    && g_r.keys().copied().collect::<Vec<_>>()
                        == sets
                            .r
                            .iter()
                            .flatten()
                            .copied()
                            .collect::<BTreeSet<_>>()
                            .into_iter()
                            .collect::<Vec<_>>()
            }
            FamilyParams::D => true,
        };
        if !shape_ok {
            return Err(fail("parameter bundle does not match the set layout"));
        }
        let group = sets.group_of();
        for (&(a, b), (gab, _)) in &self.redges {
            if a >= b {
                return Err(fail(format!("redge ({a},{b}) must be written with a < b")));
            }
            match (group.get(&a), group.get(&b)) {
                (Some(x), Some(y)) if x == y => {}
                _ => return Err(fail(format!("redge ({a},{b}) joins different components"))),
            }
            if gab.is_zero() {
                return Err(fail(format!("redge ({a},{b}) has g({a},{b}) = 0")));
            }
        }
        Ok(())
    }

    /// Parameter conditions under which every coefficient `g(a,b)`, `a < b`,
    /// is nonzero.
    pub fn check_constraints(&self) -> Result<()> {
        let sets = &self.sets;
        let nz = |v: &Scalar, what: String| if v.is_zero() { Err(fail(what)) } else { Ok(()) };
        match &self.params {
            FamilyParams::AI { g, g_s, circle, bullet } => {
                nz(g, "A_I: g != 0".into())?;
                for (s, v) in g_s {
                    nz(v, format!("A_I: g_s != 0 (s = {s})"))?;
                }
                for (k, v) in circle.iter().enumerate() {
                    nz(v, format!("A_I: g\u{b0}_{} != 0", k + 1))?;
                }
                for (k, (gp, gm)) in bullet.iter().enumerate() {
                    nz(gp, format!("A_I: g+_{} != 0", k + 1))?;
                    nz(gm, format!("A_I: g-_{} != 0", k + 1))?;
                }
            }
            FamilyParams::AII { g_i, circle, bullet } => {
                let vals: Vec<(&usize, &Scalar)> = g_i.iter().collect();
                for (k, (i, gi)) in vals.iter().enumerate() {
                    for (j, gj) in &vals[k + 1..] {
                        if gi == gj {
                            return Err(fail(format!("A_II: g_i != g_j (i = {i}, j = {j})")));
                        }
                    }
                }
                for (k, v) in circle.iter().enumerate() {
                    for (i, gi) in g_i {
                        nz(&(gi + v), format!("A_II: g_i != -g\u{b0}_{} (i = {i})", k + 1))?;
                    }
                }
                for (k, (c, (gp, gm))) in sets.bullet.iter().zip(bullet).enumerate() {
                    for (i, gi) in g_i {
                        if *i < c[0] {
                            nz(&(gi + gp), format!("A_II: g_i != -g+_{} (i = {i})", k + 1))?;
                        } else {
                            nz(&(gm - gi), format!("A_II: g_i != g-_{} (i = {i})", k + 1))?;
                        }
                    }
                }
            }
            FamilyParams::B {
                g,
                lambda,
                g_s,
                circle,
                bullet,
            } => {
                let (bi, bj) = (sets.i[0], sets.i[1]);
                nz(g, "B: g != 0".into())?;
                for (s, v) in g_s {
                    nz(v, format!("B: g_s != 0 (s = {s})"))?;
                    if (*s < bi || *s > bj) && v == lambda {
                        return Err(fail(format!("B: g_s != Lambda for s outside (i, j) (s = {s})")));
                    }
                }
                for (k, v) in circle.iter().enumerate() {
                    nz(v, format!("B: g\u{b0}_{} != 0", k + 1))?;
                    if v == lambda {
                        return Err(fail(format!("B: g\u{b0}_{} != Lambda", k + 1)));
                    }
                }
                for (k, (gp, gm)) in bullet.iter().enumerate() {
                    nz(gp, format!("B: g+_{} != 0", k + 1))?;
                    nz(gm, format!("B: g-_{} != 0", k + 1))?;
                }
            }
            FamilyParams::C { lambda_a, g_r } => {
                let bi = sets.i[0];
                for (comp, la) in sets.r.iter().zip(lambda_a) {
                    for r in comp {
                        let gr = &g_r[r];
                        if *r > bi {
                            nz(gr, format!("C: g_r != 0 for r > i (r = {r})"))?;
                        } else if gr == la {
                            return Err(fail(format!("C: g_r != Lambda_a for r < i (r = {r})")));
                        }
                    }
                }
            }
            FamilyParams::D => {}
        }
        Ok(())
    }

    /// Effective `(g(a,b), g(b,a))` of every pair inside a group.
    pub fn group_pairs(&self) -> BTreeMap<(usize, usize), (Scalar, Scalar)> {
        let mut out = BTreeMap::new();
        for group in self.sets.groups() {
            for (k, &a) in group.iter().enumerate() {
                for (l, &b) in group.iter().enumerate().skip(k + 1) {
                    let v = self.redges.get(&(a, b)).cloned().unwrap_or_else(|| {
                        let lower = if l == k + 1 { Scalar::one() } else { Scalar::zero() };
                        (Scalar::one(), lower)
                    });
                    out.insert((a, b), v);
                }
            }
        }
        out
    }

    /// Canonical form: components sorted, every group pair listed
    /// explicitly in `redges`, and for A_II the additive freedom in `g_i`
    /// fixed by `g_i = 0` on the smallest I index.
    pub fn canonical(&self) -> FamilySpec {
        let mut out = self.clone();
        out.redges = self.group_pairs();
        fn sorted<T: Clone>(comps: &[Vec<usize>], vals: &[T]) -> (Vec<Vec<usize>>, Vec<T>) {
            let mut z: Vec<(Vec<usize>, T)> = comps.iter().cloned().zip(vals.iter().cloned()).collect();
            z.sort_by(|a, b| a.0.cmp(&b.0));
            z.into_iter().unzip()
        }
        match &mut out.params {
            FamilyParams::AI { circle, bullet, .. } | FamilyParams::B { circle, bullet, .. } => {
                let (cc, cv) = sorted(&self.sets.circle, circle);
                let (bc, bv) = sorted(&self.sets.bullet, bullet);
                out.sets.circle = cc;
                out.sets.bullet = bc;
                *circle = cv;
                *bullet = bv;
            }
            FamilyParams::AII { g_i, circle, bullet } => {
                let shift = g_i.values().next().cloned().unwrap_or_default();
                for v in g_i.values_mut() {
                    *v = &*v - &shift;
                }
                let circle_shifted: Vec<Scalar> = circle.iter().map(|v| v + &shift).collect();
                let bullet_shifted: Vec<(Scalar, Scalar)> =
                    bullet.iter().map(|(p, m)| (p + &shift, m - &shift)).collect();
                let (cc, cv) = sorted(&self.sets.circle, &circle_shifted);
                let (bc, bv) = sorted(&self.sets.bullet, &bullet_shifted);
                out.sets.circle = cc;
                out.sets.bullet = bc;
                *circle = cv;
                *bullet = bv;
            }
            FamilyParams::C { lambda_a, .. } => {
                let (rc, rv) = sorted(&self.sets.r, lambda_a);
                out.sets.r = rc;
                *lambda_a = rv;
            }
            FamilyParams::D => {
                out.sets.r.sort();
            }
        }
        out
    }
}

/// Builds the family presentation after checking every constraint.
pub fn build_family(spec: &FamilySpec) -> Result<Presentation> {
    spec.check_structure()?;
    spec.check_constraints()?;
    build_family_unchecked(spec)
}

/// Like [`build_family`] but skips the parameter inequalities, so that a
/// deliberately violated constraint can be observed downstream. Structural
/// checks still apply.
pub fn build_family_unchecked(spec: &FamilySpec) -> Result<Presentation> {
    spec.check_structure()?;
    let sets = &spec.sets;
    let mut p = Presentation::new(spec.n);
    for (&a, v) in &spec.x {
        p.set_x(a, v.clone());
    }
    for ((a, b), (gab, gba)) in spec.group_pairs() {
        p.set_pair(a, b, gab, gba);
    }
    for comp in sets.circle.iter().chain(&sets.bullet).chain(&sets.r) {
        if coupled_components(&p, comp).len() > 1 {
            return Err(Error::Disconnected(comp.clone()));
        }
    }
    let i_set = &sets.i;
    match &spec.params {
        FamilyParams::AI { g, g_s, circle, bullet } => {
            for (k, &a) in i_set.iter().enumerate() {
                for &b in &i_set[k + 1..] {
                    p.set_pair(a, b, g.clone(), g.clone());
                }
            }
            for &i in i_set {
                for (&s, v) in g_s {
                    p.set_pair(s, i, v.clone(), v.clone());
                }
                for (comp, v) in sets.circle.iter().zip(circle) {
                    for &t in comp {
                        set_normal(&mut p, i, t, v.clone());
                    }
                }
                for (comp, (gp, gm)) in sets.bullet.iter().zip(bullet) {
                    for &t in comp {
                        if i < t {
                            p.set_pair(i, t, gp.clone(), Scalar::zero());
                        } else {
                            p.set_pair(t, i, gm.clone(), Scalar::zero());
                        }
                    }
                }
            }
        }
        FamilyParams::AII { g_i, circle, bullet } => {
            for (k, &a) in i_set.iter().enumerate() {
                for &b in &i_set[k + 1..] {
                    p.set_pair(a, b, &g_i[&a] - &g_i[&b], Scalar::zero());
                }
            }
            for &i in i_set {
                let gi = &g_i[&i];
                for (comp, v) in sets.circle.iter().zip(circle) {
                    for &t in comp {
                        set_normal(&mut p, i, t, gi + v);
                    }
                }
                for (comp, (gp, gm)) in sets.bullet.iter().zip(bullet) {
                    for &t in comp {
                        if i < t {
                            p.set_pair(i, t, gi + gp, Scalar::zero());
                        } else {
                            p.set_pair(t, i, gm - gi, Scalar::zero());
                        }
                    }
                }
            }
        }
        FamilyParams::B {
            g,
            lambda,
            g_s,
            circle,
            bullet,
        } => {
            let (bi, bj) = (i_set[0], i_set[1]);
            p.set_pair(bi, bj, g.clone(), g - lambda);
            for (&s, v) in g_s {
                p.set_pair(bi, s, v.clone(), v - lambda);
                p.set_pair(s, bj, v.clone(), v - lambda);
            }
            for (comp, v) in sets.circle.iter().zip(circle) {
                for &t in comp {
                    set_normal(&mut p, bi, t, v.clone());
                    set_normal(&mut p, bj, t, v - lambda);
                }
            }
            for (comp, (gp, gm)) in sets.bullet.iter().zip(bullet) {
                for &t in comp {
                    p.set_pair(bi, t, gp.clone(), Scalar::zero());
                    p.set_pair(t, bj, gm.clone(), Scalar::zero());
                }
            }
        }
        FamilyParams::C { lambda_a, g_r } => {
            let bi = i_set[0];
            for (comp, la) in sets.r.iter().zip(lambda_a) {
                for r in comp {
                    let gr = &g_r[r];
                    p.set_pair(bi, *r, gr.clone(), gr - la);
                }
            }
        }
        FamilyParams::D => {}
    }
    if matches!(spec.params, FamilyParams::AI { .. } | FamilyParams::B { .. }) && !sets.s.is_empty() {
        for comp in coupled_components(&p, &sets.s) {
            let touches = comp.iter().any(|&s| i_set.iter().any(|&i| p.coupled(i, s)));
            if !touches {
                return Err(fail(format!("S component {comp:?} does not couple to any I index")));
            }
        }
    }
    Ok(p)
}
