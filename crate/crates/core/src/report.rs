//! Deterministic renderings of classification results.

use std::fmt::Write as _;

use crate::classify::{FamilyAssignment, PhysicalReport};
use crate::construct::FamilyParams;
use crate::scalar::Scalar;

/// Report layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    /// Readable text.
    #[default]
    Text,
    /// One `key: value` record per line.
    Structured,
}

fn list(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn pairs(v: &[(usize, usize)]) -> String {
    v.iter()
        .map(|(a, b)| format!("({a},{b})"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Named parameter values of an assignment, `x` first.
pub fn param_entries(a: &FamilyAssignment) -> Vec<(String, Scalar)> {
    let spec = &a.spec;
    let mut out: Vec<(String, Scalar)> = spec.x.iter().map(|(i, v)| (format!("x.{i}"), v.clone())).collect();
    let indexed = |name: &str, vals: &[Scalar]| -> Vec<(String, Scalar)> {
        vals.iter()
            .enumerate()
            .map(|(k, v)| (format!("{name}.{}", k + 1), v.clone()))
            .collect()
    };
    let bullet = |vals: &[(Scalar, Scalar)]| -> Vec<(String, Scalar)> {
        vals.iter()
            .enumerate()
            .flat_map(|(k, (p, m))| {
                [
                    (format!("g_plus.{}", k + 1), p.clone()),
                    (format!("g_minus.{}", k + 1), m.clone()),
                ]
            })
            .collect()
    };
    match &spec.params {
        FamilyParams::AI {
            g,
            g_s,
            circle,
            bullet: b,
        }
        | FamilyParams::B {
            g,
            g_s,
            circle,
            bullet: b,
            ..
        } => {
            out.push(("g".into(), g.clone()));
            if let FamilyParams::B { lambda, .. } = &spec.params {
                out.push(("Lambda".into(), lambda.clone()));
            }
            out.extend(g_s.iter().map(|(s, v)| (format!("g_s.{s}"), v.clone())));
            out.extend(indexed("g_circle", circle));
            out.extend(bullet(b));
        }
        FamilyParams::AII { g_i, circle, bullet: b } => {
            out.extend(g_i.iter().map(|(i, v)| (format!("g_i.{i}"), v.clone())));
            out.extend(indexed("g_circle", circle));
            out.extend(bullet(b));
        }
        FamilyParams::C { lambda_a, g_r } => {
            out.extend(indexed("Lambda_a", lambda_a));
            out.extend(g_r.iter().map(|(r, v)| (format!("g_r.{r}"), v.clone())));
        }
        FamilyParams::D => {}
    }
    for ((a_, b), (up, low)) in &spec.redges {
        out.push((format!("g.{a_}.{b}"), up.clone()));
        out.push((format!("g.{b}.{a_}"), low.clone()));
    }
    out
}

/// Renders an assignment and its physicality verdict.
pub fn classification_report(a: &FamilyAssignment, phys: &PhysicalReport, format: Format) -> String {
    let d = &a.decomposition;
    let mut out = String::new();
    match format {
        Format::Text => {
            let _ = writeln!(out, "family: {}", a.family);
            if let Some(t) = a.three_type {
                let _ = writeln!(out, "three-generator type: {t}");
            }
            let _ = writeln!(out, "I = {{{}}}", list(&d.i));
            for (c, tag) in d.components.iter().zip(&d.tags) {
                let _ = writeln!(out, "{tag} = {{{}}}", list(c));
            }
            out.push_str("parameters:\n");
            for (k, v) in param_entries(a) {
                let _ = writeln!(out, "  {k} = {v}");
            }
            let _ = writeln!(out, "physical: {}", if phys.physical { "yes" } else { "no" });
            if !phys.nonpositive_upper.is_empty() {
                let _ = writeln!(out, "  nonpositive g(a,b), a < b: {}", pairs(&phys.nonpositive_upper));
            }
            if !phys.negative_lower.is_empty() {
                let _ = writeln!(out, "  negative g(b,a), a < b: {}", pairs(&phys.negative_lower));
            }
            for c in &phys.inner_circle {
                let _ = writeln!(out, "  T-circle component inside the I range: {{{}}}", list(c));
            }
        }
        Format::Structured => {
            let mut kv = |key: &str, value: String| {
                if value.is_empty() {
                    let _ = writeln!(out, "{key}:");
                } else {
                    let _ = writeln!(out, "{key}: {value}");
                }
            };
            kv("family", a.family.to_string());
            if let Some(t) = a.three_type {
                kv("three-type", t.to_string());
            }
            kv("n", d.n.to_string());
            kv("set.I", list(&d.i));
            for (k, (c, tag)) in d.components.iter().zip(&d.tags).enumerate() {
                kv(&format!("component.{}", k + 1), format!("{tag} {}", list(c)));
            }
            for (k, v) in param_entries(a) {
                kv(&format!("param.{k}"), v.to_string());
            }
            kv("physical", phys.physical.to_string());
            kv("physical.nonpositive-upper", pairs(&phys.nonpositive_upper));
            kv("physical.negative-lower", pairs(&phys.negative_lower));
            let inner: Vec<String> = phys.inner_circle.iter().map(|c| format!("{{{}}}", list(c))).collect();
            kv("physical.inner-circle", inner.join(" "));
        }
    }
    out
}
