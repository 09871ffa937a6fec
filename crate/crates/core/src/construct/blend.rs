//! Elementary building blocks and the blending of blocks that share their
//! I generators.

use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::family::Family;
use crate::classify::{classify_family, ComponentTag};
use crate::error::{Error, Result};
use crate::presentation::Presentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockKind {
    AIS,
    AICircle,
    AIBullet,
    AIICircle,
    AIIBullet,
    BS,
    BCircle,
    BBullet,
    CR,
    DR,
}

impl BlockKind {
    pub const ALL: [BlockKind; 10] = [
        BlockKind::AIS,
        BlockKind::AICircle,
        BlockKind::AIBullet,
        BlockKind::AIICircle,
        BlockKind::AIIBullet,
        BlockKind::BS,
        BlockKind::BCircle,
        BlockKind::BBullet,
        BlockKind::CR,
        BlockKind::DR,
    ];

    pub fn label(self) -> &'static str {
        match self {
            BlockKind::AIS => "A_I(I,S)",
            BlockKind::AICircle => "A_I(I,T-circle)",
            BlockKind::AIBullet => "A_I(I,T-bullet)",
            BlockKind::AIICircle => "A_II(I,T-circle)",
            BlockKind::AIIBullet => "A_II(I,T-bullet)",
            BlockKind::BS => "B(I,S)",
            BlockKind::BCircle => "B(I,T-circle)",
            BlockKind::BBullet => "B(I,T-bullet)",
            BlockKind::CR => "C(I,R)",
            BlockKind::DR => "D(R)",
        }
    }

    pub fn family(self) -> Family {
        match self {
            BlockKind::AIS | BlockKind::AICircle | BlockKind::AIBullet => Family::AI,
            BlockKind::AIICircle | BlockKind::AIIBullet => Family::AII,
            BlockKind::BS | BlockKind::BCircle | BlockKind::BBullet => Family::B,
            BlockKind::CR => Family::C,
            BlockKind::DR => Family::D,
        }
    }

    /// Tag carried by the block's single component.
    pub fn tag(self) -> ComponentTag {
        match self {
            BlockKind::AIS | BlockKind::BS => ComponentTag::S,
            BlockKind::AICircle | BlockKind::AIICircle | BlockKind::BCircle => ComponentTag::TCircle,
            BlockKind::AIBullet | BlockKind::AIIBullet | BlockKind::BBullet => ComponentTag::TBullet,
            BlockKind::CR | BlockKind::DR => ComponentTag::R,
        }
    }

    pub fn of(family: Family, tag: ComponentTag) -> Option<BlockKind> {
        BlockKind::ALL
            .into_iter()
            .find(|k| k.family() == family && k.tag() == tag)
    }

    /// Kind used for a block without U generators, which only carries the
    /// relations among the I generators.
    pub fn bare(family: Family) -> BlockKind {
        match family {
            Family::AI => BlockKind::AIS,
            Family::AII => BlockKind::AIICircle,
            Family::B => BlockKind::BS,
            Family::C => BlockKind::CR,
            Family::D => BlockKind::DR,
        }
    }
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for BlockKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<BlockKind> {
        BlockKind::ALL
            .into_iter()
            .find(|k| k.label() == s)
            .ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("unknown block kind `{s}`"),
            })
    }
}

/// Catalog entry describing one elementary kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockInfo {
    pub kind: BlockKind,
    pub i_size: &'static str,
    pub params: &'static [&'static str],
    pub order: &'static str,
}

/// The elementary blocks: one family, one connected U set each.
pub fn elementary_blocks() -> Vec<BlockInfo> {
    use BlockKind::*;
    let info = |kind, i_size, params, order| BlockInfo {
        kind,
        i_size,
        params,
        order,
    };
    vec![
        info(AIS, "|I| >= 3", &["g", "g_s"][..], "S anywhere"),
        info(
            AICircle,
            "|I| >= 3",
            &["g", "g_circle"][..],
            "T not inside a single gap of I",
        ),
        info(
            AIBullet,
            "|I| >= 3",
            &["g", "g_plus", "g_minus"][..],
            "T strictly inside one gap of I",
        ),
        info(
            AIICircle,
            "|I| >= 3",
            &["g_i", "g_circle"][..],
            "T not inside a single gap of I",
        ),
        info(
            AIIBullet,
            "|I| >= 3",
            &["g_i", "g_plus", "g_minus"][..],
            "T strictly inside one gap of I",
        ),
        info(
            BS,
            "|I| = 2",
            &["g", "Lambda", "g_s"][..],
            "S on either side of I or between",
        ),
        info(
            BCircle,
            "|I| = 2",
            &["g", "Lambda", "g_circle"][..],
            "T not between the two I generators",
        ),
        info(
            BBullet,
            "|I| = 2",
            &["g", "Lambda", "g_plus", "g_minus"][..],
            "T strictly between the two I generators",
        ),
        info(CR, "|I| = 1", &["Lambda_a", "g_r"][..], "R anywhere"),
        info(DR, "|I| = 0", &["q"][..], "R anywhere"),
    ]
}

/// A block presentation together with the positions of its I and U
/// generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildingBlock {
    pub kind: BlockKind,
    pub presentation: Presentation,
    pub i: Vec<usize>,
    pub u: Vec<usize>,
}

impl BuildingBlock {
    /// Checks that `presentation` is a PBW algebra of the kind's family with
    /// at most one component carrying the kind's tag.
    pub fn new(kind: BlockKind, presentation: Presentation) -> Result<BuildingBlock> {
        let a = classify_family(&presentation)?;
        let d = &a.decomposition;
        if a.family != kind.family() {
            return Err(Error::IncompatibleBlocks(format!(
                "{kind} block classifies as family {}",
                a.family
            )));
        }
        if d.m_r() > 1 {
            return Err(Error::IncompatibleBlocks(format!(
                "{kind} block has {} components",
                d.m_r()
            )));
        }
        if let Some(tag) = d.tags.first() {
            if *tag != kind.tag() {
                return Err(Error::IncompatibleBlocks(format!("{kind} block has a {tag} component")));
            }
        }
        Ok(BuildingBlock {
            kind,
            i: d.i.clone(),
            u: d.r.clone(),
            presentation,
        })
    }

    /// Block-local index of a label that refers to this block or to I.
    fn position(&self, label: Label) -> usize {
        match label {
            Label::I(k) => self.i[k - 1],
            Label::U(_, k) => self.u[k - 1],
        }
    }

    /// Labels of this block (number `l`) in block order.
    fn chain(&self, l: usize) -> Vec<Label> {
        let mut out: Vec<(usize, Label)> = (1..=self.i.len())
            .map(|k| (self.i[k - 1], Label::I(k)))
            .chain((1..=self.u.len()).map(|k| (self.u[k - 1], Label::U(l, k))))
            .collect();
        out.sort_unstable();
        out.into_iter().map(|(_, lab)| lab).collect()
    }
}

/// An element of an interleaving: the `k`-th I generator, or the `k`-th U
/// generator of block `l` (both 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    I(usize),
    U(usize, usize),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::I(k) => write!(f, "I{k}"),
            Label::U(l, k) => write!(f, "U{l}.{k}"),
        }
    }
}

impl FromStr for Label {
    type Err = Error;
    fn from_str(s: &str) -> Result<Label> {
        let bad = || Error::Parse {
            line: 0,
            message: format!("bad interleaving label `{s}`"),
        };
        let num = |t: &str| t.parse::<usize>().ok().filter(|&v| v >= 1).ok_or_else(bad);
        if let Some(rest) = s.strip_prefix('I') {
            Ok(Label::I(num(rest)?))
        } else if let Some(rest) = s.strip_prefix('U') {
            let (l, k) = rest.split_once('.').ok_or_else(bad)?;
            Ok(Label::U(num(l)?, num(k)?))
        } else {
            Err(bad())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlendPlan {
    pub blocks: Vec<BuildingBlock>,
    /// Global order of all labels; position `p` becomes generator `p + 1`.
    pub interleaving: Vec<Label>,
}

/// Rejects block lists whose I parts differ.
pub fn check_blocks(blocks: &[BuildingBlock]) -> Result<()> {
    let first = blocks
        .first()
        .ok_or_else(|| Error::IncompatibleBlocks("no blocks".into()))?;
    let base = (!first.i.is_empty()).then(|| first.presentation.restrict(&first.i));
    for (l, b) in blocks.iter().enumerate().skip(1) {
        if b.i.len() != first.i.len() {
            return Err(Error::IncompatibleBlocks(format!(
                "block {} has a different number of I generators",
                l + 1
            )));
        }
        if let Some(base) = &base {
            if b.presentation.restrict(&b.i) != *base {
                return Err(Error::IncompatibleBlocks(format!(
                    "block {} has different relations or x values on I",
                    l + 1
                )));
            }
        }
    }
    Ok(())
}

fn check_interleaving(blocks: &[BuildingBlock], order: &[Label]) -> Result<()> {
    let bad = |m: String| Err(Error::IncompatibleInterleaving(m));
    let ni = blocks[0].i.len();
    let total = ni + blocks.iter().map(|b| b.u.len()).sum::<usize>();
    if order.len() != total {
        return bad(format!("expected {total} labels, got {}", order.len()));
    }
    let mut seen = std::collections::HashSet::new();
    for &lab in order {
        let ok = match lab {
            Label::I(k) => k <= ni,
            Label::U(l, k) => l <= blocks.len() && k <= blocks[l - 1].u.len(),
        };
        if !ok {
            return bad(format!("label {lab} does not exist"));
        }
        if !seen.insert(lab) {
            return bad(format!("label {lab} appears twice"));
        }
    }
    for (l0, b) in blocks.iter().enumerate() {
        let l = l0 + 1;
        let positions: Vec<usize> = order
            .iter()
            .filter(|lab| matches!(lab, Label::I(_)) || matches!(lab, Label::U(m, _) if *m == l))
            .map(|&lab| b.position(lab))
            .collect();
        if positions.windows(2).any(|w| w[0] > w[1]) {
            return bad(format!("order of block {l} is not preserved"));
        }
    }
    Ok(())
}

/// Glues the blocks along the interleaving: relations inside `I` and each
/// block are copied, generators of different blocks get `:D_a D_b: = 0`.
pub fn blend(plan: &BlendPlan) -> Result<Presentation> {
    check_blocks(&plan.blocks)?;
    check_interleaving(&plan.blocks, &plan.interleaving)?;
    let global: HashMap<Label, usize> = plan
        .interleaving
        .iter()
        .enumerate()
        .map(|(k, &lab)| (lab, k + 1))
        .collect();
    let mut out = Presentation::new(plan.interleaving.len());
    for (l0, b) in plan.blocks.iter().enumerate() {
        let labels = b.chain(l0 + 1);
        for &la in &labels {
            let (ga, pa) = (global[&la], b.position(la));
            out.set_x(ga, b.presentation.x(pa).clone());
            for &lb in &labels {
                if la != lb {
                    out.set_g(ga, global[&lb], b.presentation.g(pa, b.position(lb)).clone());
                }
            }
        }
    }
    Ok(out)
}

/// Visits every interleaving compatible with all blocks, in lexicographic
/// order of choices (I before U, lower block first), until `f` breaks.
pub fn for_each_interleaving<F>(blocks: &[BuildingBlock], mut f: F) -> Result<()>
where
    F: FnMut(&[Label]) -> ControlFlow<()>,
{
    check_blocks(blocks)?;
    let ctx = Chains::new(blocks);
    let mut state = vec![0usize; blocks.len() + 1];
    let mut order = Vec::with_capacity(ctx.total);
    let _ = ctx.walk(&mut state, &mut order, &mut f);
    Ok(())
}

/// All compatible interleavings.
pub fn enumerate_interleavings(blocks: &[BuildingBlock]) -> Result<Vec<Vec<Label>>> {
    let mut out = Vec::new();
    for_each_interleaving(blocks, |o| {
        out.push(o.to_vec());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Number of compatible interleavings, i.e. linear extensions of the union
/// of the block orders.
pub fn count_interleavings(blocks: &[BuildingBlock]) -> Result<BigUint> {
    check_blocks(blocks)?;
    let ctx = Chains::new(blocks);
    let mut memo = HashMap::new();
    Ok(ctx.count(&mut vec![0usize; blocks.len() + 1], &mut memo))
}

/// Precomputed block orders. `state[0]` counts placed I generators,
/// `state[l]` the placed U generators of block `l`.
struct Chains {
    ni: usize,
    nu: Vec<usize>,
    /// `u_before_i[l][k]`: U generators of block `l` preceding I generator
    /// `k + 1` in that block.
    u_before_i: Vec<Vec<usize>>,
    /// `i_before_u[l][k]`: I generators preceding U generator `k + 1`.
    i_before_u: Vec<Vec<usize>>,
    total: usize,
}

impl Chains {
    fn new(blocks: &[BuildingBlock]) -> Chains {
        let ni = blocks[0].i.len();
        let nu: Vec<usize> = blocks.iter().map(|b| b.u.len()).collect();
        let u_before_i = blocks
            .iter()
            .map(|b| b.i.iter().map(|&i| b.u.iter().filter(|&&u| u < i).count()).collect())
            .collect();
        let i_before_u = blocks
            .iter()
            .map(|b| b.u.iter().map(|&u| b.i.iter().filter(|&&i| i < u).count()).collect())
            .collect();
        Chains {
            ni,
            total: ni + nu.iter().sum::<usize>(),
            nu,
            u_before_i,
            i_before_u,
        }
    }

    fn candidates(&self, state: &[usize]) -> Vec<Label> {
        let mut out = Vec::new();
        let placed_i = state[0];
        if placed_i < self.ni && (0..self.nu.len()).all(|l| self.u_before_i[l][placed_i] <= state[l + 1]) {
            out.push(Label::I(placed_i + 1));
        }
        for l in 0..self.nu.len() {
            let k = state[l + 1];
            if k < self.nu[l] && self.i_before_u[l][k] <= placed_i {
                out.push(Label::U(l + 1, k + 1));
            }
        }
        out
    }

    fn advance(state: &mut [usize], lab: Label, delta: isize) {
        let slot = match lab {
            Label::I(_) => 0,
            Label::U(l, _) => l,
        };
        state[slot] = (state[slot] as isize + delta) as usize;
    }

    fn walk<F>(&self, state: &mut Vec<usize>, order: &mut Vec<Label>, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[Label]) -> ControlFlow<()>,
    {
        if order.len() == self.total {
            return f(order);
        }
        for lab in self.candidates(state) {
            Self::advance(state, lab, 1);
            order.push(lab);
            let flow = self.walk(state, order, f);
            order.pop();
            Self::advance(state, lab, -1);
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn count(&self, state: &mut Vec<usize>, memo: &mut HashMap<Vec<usize>, BigUint>) -> BigUint {
        if state[0] == self.ni && (0..self.nu.len()).all(|l| state[l + 1] == self.nu[l]) {
            return BigUint::one();
        }
        if let Some(v) = memo.get(state) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        for lab in self.candidates(state) {
            Self::advance(state, lab, 1);
            total += self.count(state, memo);
            Self::advance(state, lab, -1);
        }
        memo.insert(state.clone(), total.clone());
        total
    }
}

/// Splits a PBW presentation into one elementary block per component and
/// searches the compatible interleavings for one whose blend has the same
/// relations.
pub fn find_blend_plan(p: &Presentation) -> Result<BlendPlan> {
    let a = classify_family(p)?;
    let d = &a.decomposition;
    let mut blocks = Vec::new();
    for (comp, tag) in d.components.iter().zip(&d.tags) {
        let kind = BlockKind::of(a.family, *tag).ok_or_else(|| {
            Error::InternalInconsistency(format!("no block kind for {} with a {tag} component", a.family))
        })?;
        let mut idx: Vec<usize> = d.i.iter().chain(comp).copied().collect();
        idx.sort_unstable();
        blocks.push(BuildingBlock::new(kind, p.restrict(&idx))?);
    }
    if blocks.is_empty() {
        blocks.push(BuildingBlock::new(BlockKind::bare(a.family), p.clone())?);
    }
    let mut found = None;
    for_each_interleaving(&blocks, |order| {
        let plan = BlendPlan {
            blocks: blocks.clone(),
            interleaving: order.to_vec(),
        };
        match blend(&plan) {
            Ok(q) if q.same_relations(p) => {
                found = Some(order.to_vec());
                ControlFlow::Break(())
            }
            _ => ControlFlow::Continue(()),
        }
    })?;
    let interleaving =
        found.ok_or_else(|| Error::InternalInconsistency("no interleaving reproduces the presentation".into()))?;
    Ok(BlendPlan { blocks, interleaving })
}
