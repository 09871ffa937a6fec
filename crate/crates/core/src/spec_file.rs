//! Text formats for family specifications and blend plans.
//!
//! A specification file looks like
//!
//! ```text
//! family B
//! generators 4
//! sets
//! I 1 4
//! T-bullet 2 3
//! params
//! x 1 = 1
//! x 4 = 1
//! g = 1
//! Lambda = 2
//! g_plus 1 = 1
//! g_minus 1 = 3
//! redges
//! g 2 3 = 1
//! g 3 2 = 1
//! ```
//!
//! Component parameters (`g_circle K`, `g_plus K`, `g_minus K`,
//! `Lambda_a K`) refer to the `K`-th line of the matching set kind. A
//! `redges` pair given only by its `g(a,b)`, `a < b`, has `g(b,a) = 0`.
//!
//! A blend plan lists blocks, each a presentation between `block KIND` and
//! `end`, followed by an optional `interleaving` line such as
//! `interleaving I1 U1.1 I2 U2.1`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::construct::{BlendPlan, BuildingBlock, Family, FamilyParams, FamilySpec, Label, SetLayout};
use crate::error::{Error, Result};
use crate::presentation::{content_lines, parse_generators, parse_index, parse_scalar_at, Presentation};
use crate::scalar::Scalar;

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Head,
    Sets,
    Params,
    Redges,
}

#[derive(Default)]
struct RawParams {
    scalars: BTreeMap<&'static str, Scalar>,
    indexed: BTreeMap<(&'static str, usize), Scalar>,
}

const SCALAR_KEYS: [&str; 2] = ["g", "Lambda"];
const INDEXED_KEYS: [&str; 8] = ["x", "g_s", "g_circle", "g_plus", "g_minus", "g_i", "Lambda_a", "g_r"];

pub fn parse_family_spec(text: &str) -> Result<FamilySpec> {
    let mut lines = content_lines(text);
    let (no, first) = lines
        .next()
        .ok_or_else(|| perr(0, "empty input, expected `family NAME`"))?;
    let family: Family = match first.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["family", name] => name.parse().map_err(|_| perr(no, format!("unknown family `{name}`")))?,
        _ => return Err(perr(no, "expected `family NAME`")),
    };
    let (no, second) = lines.next().ok_or_else(|| perr(no, "expected `generators N`"))?;
    let n = parse_generators(second, no)?;

    let mut section = Section::Head;
    let mut sets = SetLayout::default();
    let mut seen_i = false;
    let mut raw = RawParams::default();
    let mut redge_vals: BTreeMap<(usize, usize), (Option<Scalar>, Option<Scalar>)> = BTreeMap::new();
    for (no, line) in lines {
        match line {
            "sets" => {
                section = Section::Sets;
                continue;
            }
            "params" => {
                section = Section::Params;
                continue;
            }
            "redges" => {
                section = Section::Redges;
                continue;
            }
            _ => {}
        }
        match section {
            Section::Head => return Err(perr(no, "expected a section header `sets`, `params` or `redges`")),
            Section::Sets => {
                let mut toks = line.split_whitespace();
                let key = toks.next().unwrap_or_default();
                let idx = toks.map(|t| parse_index(t, no, n)).collect::<Result<Vec<_>>>()?;
                match key {
                    "I" if !seen_i => {
                        seen_i = true;
                        sets.i = idx;
                    }
                    "S" if sets.s.is_empty() => sets.s = idx,
                    "T-circle" => sets.circle.push(idx),
                    "T-bullet" => sets.bullet.push(idx),
                    "R" => sets.r.push(idx),
                    "I" | "S" => return Err(perr(no, format!("duplicate `{key}` line"))),
                    _ => return Err(perr(no, format!("unknown set `{key}`"))),
                }
            }
            Section::Params => {
                let (lhs, rhs) = line
                    .split_once('=')
                    .ok_or_else(|| perr(no, "expected `KEY [INDEX] = SCALAR`"))?;
                let value = parse_scalar_at(rhs, no)?;
                let toks: Vec<&str> = lhs.split_whitespace().collect();
                let dup = || perr(no, format!("duplicate parameter `{}`", lhs.trim()));
                match toks.as_slice() {
                    [key] => {
                        let k = SCALAR_KEYS
                            .into_iter()
                            .find(|k| k == key)
                            .ok_or_else(|| perr(no, format!("unknown parameter `{key}`")))?;
                        if raw.scalars.insert(k, value).is_some() {
                            return Err(dup());
                        }
                    }
                    [key, idx] => {
                        let k = INDEXED_KEYS
                            .into_iter()
                            .find(|k| k == key)
                            .ok_or_else(|| perr(no, format!("unknown parameter `{key}`")))?;
                        let idx: usize = idx
                            .parse()
                            .ok()
                            .filter(|&v| v >= 1)
                            .ok_or_else(|| perr(no, format!("bad index `{idx}`")))?;
                        if raw.indexed.insert((k, idx), value).is_some() {
                            return Err(dup());
                        }
                    }
                    _ => return Err(perr(no, format!("unrecognised parameter `{}`", lhs.trim()))),
                }
            }
            Section::Redges => {
                let (lhs, rhs) = line
                    .split_once('=')
                    .ok_or_else(|| perr(no, "expected `g A B = SCALAR`"))?;
                let value = parse_scalar_at(rhs, no)?;
                let toks: Vec<&str> = lhs.split_whitespace().collect();
                let (a, b) = match toks.as_slice() {
                    ["g", a, b] => (parse_index(a, no, n)?, parse_index(b, no, n)?),
                    _ => return Err(perr(no, "expected `g A B = SCALAR`")),
                };
                if a == b {
                    return Err(perr(no, "redge needs distinct indices"));
                }
                let entry = redge_vals.entry((a.min(b), a.max(b))).or_default();
                let slot = if a < b { &mut entry.0 } else { &mut entry.1 };
                if slot.replace(value).is_some() {
                    return Err(perr(no, format!("duplicate redge `g {a} {b}`")));
                }
            }
        }
    }
    let mut redges = BTreeMap::new();
    for ((a, b), (up, low)) in redge_vals {
        let up = up.ok_or_else(|| perr(0, format!("redge ({a},{b}) lacks `g {a} {b}`")))?;
        redges.insert((a, b), (up, low.unwrap_or_default()));
    }
    let params = assemble_params(family, &sets, &mut raw)?;
    let x = sets
        .i
        .iter()
        .map(|&i| {
            raw.indexed
                .remove(&("x", i))
                .map(|v| (i, v))
                .ok_or_else(|| perr(0, format!("missing `x {i}`")))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    if let Some(((k, i), _)) = raw.indexed.iter().next() {
        return Err(perr(0, format!("parameter `{k} {i}` does not apply")));
    }
    if let Some((k, _)) = raw.scalars.iter().next() {
        return Err(perr(0, format!("parameter `{k}` does not apply to family {family}")));
    }
    Ok(FamilySpec {
        n,
        sets,
        x,
        params,
        redges,
    })
}

fn assemble_params(family: Family, sets: &SetLayout, raw: &mut RawParams) -> Result<FamilyParams> {
    let mut scalar = |k: &'static str| {
        raw.scalars
            .remove(k)
            .ok_or_else(|| perr(0, format!("missing parameter `{k}`")))
    };
    let g = matches!(family, Family::AI | Family::B)
        .then(|| scalar("g"))
        .transpose()?;
    let lambda = (family == Family::B).then(|| scalar("Lambda")).transpose()?;
    let mut take = |k: &'static str, i: usize| {
        raw.indexed
            .remove(&(k, i))
            .ok_or_else(|| perr(0, format!("missing parameter `{k} {i}`")))
    };
    let mut per = |k: &'static str, keys: Vec<usize>| -> Result<BTreeMap<usize, Scalar>> {
        keys.into_iter().map(|i| take(k, i).map(|v| (i, v))).collect()
    };
    let comp_keys = |m: usize| (1..=m).collect::<Vec<_>>();
    let params = match family {
        Family::AI | Family::AII | Family::B => {
            let circle = per("g_circle", comp_keys(sets.circle.len()))?.into_values().collect();
            let plus = per("g_plus", comp_keys(sets.bullet.len()))?;
            let minus = per("g_minus", comp_keys(sets.bullet.len()))?;
            let bullet = plus.into_values().zip(minus.into_values()).collect();
            match family {
                Family::AI => FamilyParams::AI {
                    g: g.unwrap(),
                    g_s: per("g_s", sets.s.clone())?,
                    circle,
                    bullet,
                },
                Family::AII => FamilyParams::AII {
                    g_i: per("g_i", sets.i.clone())?,
                    circle,
                    bullet,
                },
                _ => FamilyParams::B {
                    g: g.unwrap(),
                    lambda: lambda.unwrap(),
                    g_s: per("g_s", sets.s.clone())?,
                    circle,
                    bullet,
                },
            }
        }
        Family::C => FamilyParams::C {
            lambda_a: per("Lambda_a", comp_keys(sets.r.len()))?.into_values().collect(),
            g_r: per("g_r", sets.r.iter().flatten().copied().collect())?,
        },
        Family::D => FamilyParams::D,
    };
    Ok(params)
}

fn join(v: &[usize]) -> String {
    v.iter().map(|i| format!(" {i}")).collect()
}

/// Canonical text of a specification; [`parse_family_spec`] reads it back.
pub fn family_spec_to_text(spec: &FamilySpec) -> String {
    let mut out = String::new();
    let sets = &spec.sets;
    let _ = writeln!(out, "family {}", spec.family());
    let _ = writeln!(out, "generators {}", spec.n);
    out.push_str("sets\n");
    let _ = writeln!(out, "I{}", join(&sets.i));
    if !sets.s.is_empty() {
        let _ = writeln!(out, "S{}", join(&sets.s));
    }
    for c in &sets.circle {
        let _ = writeln!(out, "T-circle{}", join(c));
    }
    for c in &sets.bullet {
        let _ = writeln!(out, "T-bullet{}", join(c));
    }
    for c in &sets.r {
        let _ = writeln!(out, "R{}", join(c));
    }
    out.push_str("params\n");
    for (i, v) in &spec.x {
        let _ = writeln!(out, "x {i} = {v}");
    }
    let comps = |name: &str, vals: &[Scalar]| -> Vec<String> {
        vals.iter()
            .enumerate()
            .map(|(k, v)| format!("{name} {} = {v}", k + 1))
            .collect()
    };
    let mut lines: Vec<String> = Vec::new();
    match &spec.params {
        FamilyParams::AI { g, g_s, circle, bullet }
        | FamilyParams::B {
            g, g_s, circle, bullet, ..
        } => {
            lines.push(format!("g = {g}"));
            if let FamilyParams::B { lambda, .. } = &spec.params {
                lines.push(format!("Lambda = {lambda}"));
            }
            lines.extend(g_s.iter().map(|(s, v)| format!("g_s {s} = {v}")));
            lines.extend(comps("g_circle", circle));
            push_bullet(&mut lines, bullet);
        }
        FamilyParams::AII { g_i, circle, bullet } => {
            lines.extend(g_i.iter().map(|(i, v)| format!("g_i {i} = {v}")));
            lines.extend(comps("g_circle", circle));
            push_bullet(&mut lines, bullet);
        }
        FamilyParams::C { lambda_a, g_r } => {
            lines.extend(comps("Lambda_a", lambda_a));
            lines.extend(g_r.iter().map(|(r, v)| format!("g_r {r} = {v}")));
        }
        FamilyParams::D => {}
    }
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
    let redges = spec.group_pairs();
    if !redges.is_empty() {
        out.push_str("redges\n");
        for ((a, b), (up, low)) in redges {
            let _ = writeln!(out, "g {a} {b} = {up}");
            let _ = writeln!(out, "g {b} {a} = {low}");
        }
    }
    out
}

fn push_bullet(lines: &mut Vec<String>, bullet: &[(Scalar, Scalar)]) {
    for (k, (p, m)) in bullet.iter().enumerate() {
        lines.push(format!("g_plus {} = {p}", k + 1));
        lines.push(format!("g_minus {} = {m}", k + 1));
    }
}

/// Blocks of a plan file plus its interleaving line, if present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanFile {
    pub blocks: Vec<BuildingBlock>,
    pub interleaving: Option<Vec<Label>>,
}

impl PlanFile {
    pub fn into_plan(self) -> Result<BlendPlan> {
        let interleaving = self
            .interleaving
            .ok_or_else(|| perr(0, "plan has no `interleaving` line"))?;
        Ok(BlendPlan {
            blocks: self.blocks,
            interleaving,
        })
    }
}

pub fn parse_blend_plan(text: &str) -> Result<PlanFile> {
    let mut blocks = Vec::new();
    let mut interleaving = None;
    let mut current: Option<(usize, String, Vec<String>)> = None;
    for (no, line) in content_lines(text) {
        if let Some((start, kind, body)) = current.as_mut() {
            if line == "end" {
                let kind = kind.parse().map_err(|e: Error| perr(*start, e.to_string()))?;
                let p = Presentation::parse(&body.join("\n")).map_err(|e| match e {
                    Error::Parse { line, message } => perr(*start + line, message),
                    other => other,
                })?;
                blocks.push(BuildingBlock::new(kind, p)?);
                current = None;
            } else {
                body.push(line.to_string());
            }
            continue;
        }
        if let Some(kind) = line.strip_prefix("block ") {
            current = Some((no, kind.trim().to_string(), Vec::new()));
        } else if let Some(rest) = line.strip_prefix("interleaving") {
            if interleaving.is_some() {
                return Err(perr(no, "duplicate `interleaving` line"));
            }
            let labels = rest
                .split_whitespace()
                .map(|t| t.parse::<Label>().map_err(|e| perr(no, e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            interleaving = Some(labels);
        } else {
            return Err(perr(no, "expected `block KIND` or `interleaving ...`"));
        }
    }
    if let Some((start, _, _)) = current {
        return Err(perr(start, "block is not closed by `end`"));
    }
    if blocks.is_empty() {
        return Err(perr(0, "plan has no blocks"));
    }
    Ok(PlanFile { blocks, interleaving })
}

pub fn blend_plan_to_text(plan: &BlendPlan) -> String {
    let mut out = String::new();
    for b in &plan.blocks {
        let _ = writeln!(out, "block {}", b.kind);
        out.push_str(&b.presentation.to_text());
        out.push_str("end\n");
    }
    let labels: Vec<String> = plan.interleaving.iter().map(Label::to_string).collect();
    let _ = writeln!(out, "interleaving {}", labels.join(" "));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build_family;

    const B_SPEC: &str = "\
family B
generators 4
sets
I 1 4
T-bullet 2 3
params
x 1 = 1
x 4 = 1
g = 1
Lambda = 2
g_plus 1 = 1
g_minus 1 = 3
redges
g 2 3 = 1
g 3 2 = 1
";

    #[test]
    fn spec_parses_and_round_trips() {
        let spec = parse_family_spec(B_SPEC).unwrap();
        assert_eq!(spec.family(), Family::B);
        assert_eq!(spec.sets.bullet, vec![vec![2, 3]]);
        assert!(build_family(&spec).is_ok());
        let text = family_spec_to_text(&spec);
        assert_eq!(text, B_SPEC);
        assert_eq!(parse_family_spec(&text).unwrap(), spec);
    }

    #[test]
    fn spec_errors_name_the_problem() {
        let missing = B_SPEC.replace("Lambda = 2\n", "");
        assert_eq!(parse_family_spec(&missing), Err(perr(0, "missing parameter `Lambda`")));
        let extra = B_SPEC.replace("g = 1\n", "g = 1\ng_i 1 = 0\n");
        assert!(parse_family_spec(&extra).is_err());
        let unknown = B_SPEC.replace("family B", "family Q");
        assert!(matches!(parse_family_spec(&unknown), Err(Error::Parse { line: 1, .. })));
        let orphan = B_SPEC.replace("g 2 3 = 1\n", "");
        assert!(parse_family_spec(&orphan).is_err());
    }

    #[test]
    fn plan_round_trips() {
        let text = "\
block B(I,T-bullet)
generators 3
x 1 = 1
x 3 = 1
g 1 2 = 1
g 1 3 = 1
g 2 3 = 1
end
interleaving I1 U1.1 I2
";
        let pf = parse_blend_plan(text).unwrap();
        assert_eq!(pf.blocks.len(), 1);
        let plan = pf.into_plan().unwrap();
        let emitted = blend_plan_to_text(&plan);
        assert_eq!(parse_blend_plan(&emitted).unwrap().into_plan().unwrap(), plan);
        assert!(parse_blend_plan("block D(R)\ngenerators 1\n").is_err());
    }
}
