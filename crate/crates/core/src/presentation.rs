//! Coefficient data of a quadratic presentation
//! `g(a,b) D_a D_b - g(b,a) D_b D_a = x_b D_a - x_a D_b` for `a < b`.
//!
//! The same equation read with `a` and `b` swapped is identical, so
//! `g(a,b)` is always "the coefficient in front of `D_a D_b`" regardless of
//! which index is smaller. Builders lean on that when they place relations.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Presentation {
    n: usize,
    x: Vec<Scalar>,
    g: Vec<Scalar>,
}

/// A broken presentation invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Violation {
    /// `g(a,b)` vanishes for `a < b`.
    NonzeroUpperG(usize, usize),
    /// `g(a,b)` has an imaginary part.
    RealG(usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonzeroUpperG(a, b) => write!(f, "g({a},{b}) must be nonzero"),
            Violation::RealG(a, b) => write!(f, "g({a},{b}) must be real"),
        }
    }
}

impl Presentation {
    /// `n` generators, all `x` zero and every pair in the normal-ordered zero
    /// relation `D_a D_b = 0` (`g(a,b) = 1`, `g(b,a) = 0` for `a < b`).
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a presentation needs at least one generator");
        let mut g = vec![Scalar::zero(); n * n];
        for a in 0..n {
            for b in a + 1..n {
                g[a * n + b] = Scalar::one();
            }
        }
        Presentation {
            n,
            x: vec![Scalar::zero(); n],
            g,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn slot(&self, a: usize, b: usize) -> usize {
        assert!(
            (1..=self.n).contains(&a) && (1..=self.n).contains(&b) && a != b,
            "bad index pair ({a},{b}) for n={}",
            self.n
        );
        (a - 1) * self.n + (b - 1)
    }

    pub fn x(&self, a: usize) -> &Scalar {
        assert!((1..=self.n).contains(&a), "index {a} out of range");
        &self.x[a - 1]
    }

    pub fn g(&self, a: usize, b: usize) -> &Scalar {
        &self.g[self.slot(a, b)]
    }

    pub fn set_x(&mut self, a: usize, v: Scalar) {
        assert!((1..=self.n).contains(&a), "index {a} out of range");
        self.x[a - 1] = v;
    }

    pub fn set_g(&mut self, a: usize, b: usize, v: Scalar) {
        let s = self.slot(a, b);
        self.g[s] = v;
    }

    /// Sets the relation `gab D_a D_b - gba D_b D_a = x_b D_a - x_a D_b`.
    pub fn set_pair(&mut self, a: usize, b: usize, gab: Scalar, gba: Scalar) {
        self.set_g(a, b, gab);
        self.set_g(b, a, gba);
    }

    /// `g(a,b) - g(b,a)`.
    pub fn lambda(&self, a: usize, b: usize) -> Scalar {
        self.g(a, b) - self.g(b, a)
    }

    /// Whether `g(a,b) g(b,a) != 0`.
    pub fn coupled(&self, a: usize, b: usize) -> bool {
        !self.g(a, b).is_zero() && !self.g(b, a).is_zero()
    }

    pub fn xs(&self) -> &[Scalar] {
        &self.x
    }

    /// All pairs `(a, b)` with `a < b`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.n).flat_map(move |a| (a + 1..=self.n).map(move |b| (a, b)))
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (a, b) in self.pairs() {
            if self.g(a, b).is_zero() {
                out.push(Violation::NonzeroUpperG(a, b));
            }
        }
        for a in 1..=self.n {
            for b in 1..=self.n {
                if a != b && !self.g(a, b).is_real() {
                    out.push(Violation::RealG(a, b));
                }
            }
        }
        out
    }

    /// The sub-presentation on `indices` (ascending), renumbered `1..=k`.
    pub fn restrict(&self, indices: &[usize]) -> Presentation {
        let mut out = Presentation::new(indices.len());
        for (na, &a) in indices.iter().enumerate() {
            out.set_x(na + 1, self.x(a).clone());
            for (nb, &b) in indices.iter().enumerate() {
                if a != b {
                    out.set_g(na + 1, nb + 1, self.g(a, b).clone());
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Equality of the relation sets: relations with a zero right-hand side
    /// only matter up to a nonzero multiple, all others must agree exactly.
    pub fn same_relations(&self, other: &Presentation) -> bool {
        if self.n != other.n || self.x != other.x {
            return false;
        }
        self.pairs().all(|(a, b)| {
            if self.x(a).is_zero() && self.x(b).is_zero() {
                self.g(b, a) * other.g(a, b) == other.g(b, a) * self.g(a, b)
            } else {
                self.g(a, b) == other.g(a, b) && self.g(b, a) == other.g(b, a)
            }
        })
    }

    /// Parses the line-oriented text format (`generators N`, `x A = S`,
    /// `g A B = S`; `#` starts a comment).
    pub fn parse(text: &str) -> Result<Presentation> {
        let mut lines = content_lines(text);
        let (first_no, first) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "empty input, expected `generators N`".into(),
        })?;
        let n = parse_generators(first, first_no)?;
        let mut x: Vec<Option<Scalar>> = vec![None; n];
        let mut g: Vec<Option<Scalar>> = vec![None; n * n];
        for (no, line) in lines {
            let entry = parse_entry(line, no, n)?;
            let (slot, what) = match entry {
                Entry::X(a, _) => (&mut x[a - 1], format!("x {a}")),
                Entry::G(a, b, _) => (&mut g[(a - 1) * n + (b - 1)], format!("g {a} {b}")),
            };
            if slot.is_some() {
                return Err(Error::Parse {
                    line: no,
                    message: format!("duplicate entry `{what}`"),
                });
            }
            *slot = Some(match entry {
                Entry::X(_, v) | Entry::G(_, _, v) => v,
            });
        }
        let mut p = Presentation::new(n);
        for a in 1..=n {
            if let Some(v) = x[a - 1].take() {
                p.set_x(a, v);
            }
        }
        for a in 1..=n {
            for b in 1..=n {
                if a == b {
                    continue;
                }
                match g[(a - 1) * n + (b - 1)].take() {
                    Some(v) => p.set_g(a, b, v),
                    None if a < b => {
                        return Err(Error::Parse {
                            line: 0,
                            message: format!("missing required entry `g {a} {b}`"),
                        })
                    }
                    None => p.set_g(a, b, Scalar::zero()),
                }
            }
        }
        Ok(p)
    }

    /// Canonical text form: every `x` line, then every `g` line, indices
    /// ascending.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators {}", self.n)?;
        for a in 1..=self.n {
            writeln!(f, "x {a} = {}", self.x(a))?;
        }
        for a in 1..=self.n {
            for b in 1..=self.n {
                if a != b {
                    writeln!(f, "g {a} {b} = {}", self.g(a, b))?;
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub(crate) fn parse_generators(line: &str, no: usize) -> Result<usize> {
    let mut it = line.split_whitespace();
    match (it.next(), it.next(), it.next()) {
        (Some("generators"), Some(n), None) => match n.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(Error::Parse {
                line: no,
                message: format!("bad generator count `{n}`"),
            }),
        },
        _ => Err(Error::Parse {
            line: no,
            message: "expected `generators N`".into(),
        }),
    }
}

pub(crate) enum Entry {
    X(usize, Scalar),
    G(usize, usize, Scalar),
}

pub(crate) fn parse_index(tok: &str, no: usize, n: usize) -> Result<usize> {
    let v: usize = tok.parse().map_err(|_| Error::Parse {
        line: no,
        message: format!("bad index `{tok}`"),
    })?;
    if v == 0 || v > n {
        return Err(Error::Parse {
            line: no,
            message: Error::IndexOutOfRange { index: v, n }.to_string(),
        });
    }
    Ok(v)
}

pub(crate) fn parse_scalar_at(text: &str, no: usize) -> Result<Scalar> {
    text.parse().map_err(|e: Error| Error::Parse {
        line: no,
        message: e.to_string(),
    })
}

pub(crate) fn parse_entry(line: &str, no: usize, n: usize) -> Result<Entry> {
    let (lhs, rhs) = line.split_once('=').ok_or(Error::Parse {
        line: no,
        message: "expected `x A = S` or `g A B = S`".into(),
    })?;
    let value = parse_scalar_at(rhs, no)?;
    let toks: Vec<&str> = lhs.split_whitespace().collect();
    match toks.as_slice() {
        ["x", a] => Ok(Entry::X(parse_index(a, no, n)?, value)),
        ["g", a, b] => {
            let (a, b) = (parse_index(a, no, n)?, parse_index(b, no, n)?);
            if a == b {
                return Err(Error::Parse {
                    line: no,
                    message: format!("`g {a} {b}` needs distinct indices"),
                });
            }
            Ok(Entry::G(a, b, value))
        }
        _ => Err(Error::Parse {
            line: no,
            message: format!("unrecognised entry `{}`", lhs.trim()),
        }),
    }
}
