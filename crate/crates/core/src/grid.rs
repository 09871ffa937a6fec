//! Exhaustive and sampled sweeps over presentations with coefficients from
//! a finite grid.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::classify::classify_pbw;
use crate::presentation::Presentation;
use crate::rewrite::is_pbw;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridConfig {
    pub n: usize,
    /// Values for `g(a,b)`, `a < b`; zero entries are skipped.
    pub upper: Vec<Scalar>,
    /// Values for `g(b,a)`, `a < b`.
    pub lower: Vec<Scalar>,
    pub x: Vec<Scalar>,
    /// Draw this many random grid points instead of the full product.
    pub sample: Option<usize>,
    pub seed: u64,
}

impl GridConfig {
    /// `g(a,b)` in `{-1, 1, 2}`, `g(b,a)` in `{-1, 0, 1, 2}`, `x` in `{0, 1}`.
    pub fn standard(n: usize) -> GridConfig {
        GridConfig {
            n,
            upper: [-1, 1, 2].map(Scalar::from_int).to_vec(),
            lower: [-1, 0, 1, 2].map(Scalar::from_int).to_vec(),
            x: [0, 1].map(Scalar::from_int).to_vec(),
            sample: None,
            seed: 0,
        }
    }

    fn upper_values(&self) -> Vec<Scalar> {
        self.upper.iter().filter(|v| !v.is_zero()).cloned().collect()
    }

    /// Number of points in the full product.
    pub fn size(&self) -> u128 {
        let pairs = (self.n * (self.n - 1) / 2) as u32;
        let u = self.upper_values().len() as u128;
        let l = self.lower.len() as u128;
        let x = self.x.len() as u128;
        (u * l).pow(pairs) * x.pow(self.n as u32)
    }

    /// The presentation at mixed-radix position `k`: `x` digits first
    /// (generator 1 least significant), then upper and lower per pair.
    pub fn point(&self, mut k: u128) -> Presentation {
        let upper = self.upper_values();
        let mut p = Presentation::new(self.n);
        let mut digit = |len: usize| {
            let d = (k % len as u128) as usize;
            k /= len as u128;
            d
        };
        for a in 1..=self.n {
            p.set_x(a, self.x[digit(self.x.len())].clone());
        }
        for a in 1..=self.n {
            for b in a + 1..=self.n {
                let up = upper[digit(upper.len())].clone();
                let low = self.lower[digit(self.lower.len())].clone();
                p.set_pair(a, b, up, low);
            }
        }
        p
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GridSummary {
    pub total: u128,
    pub pbw: u128,
    pub per_family: BTreeMap<String, u128>,
    pub per_three_type: BTreeMap<String, u128>,
    pub inconsistencies: u128,
    /// Canonical text of up to five presentations that failed to classify.
    pub examples: Vec<String>,
}

impl GridSummary {
    fn merge(mut self, other: GridSummary) -> GridSummary {
        self.total += other.total;
        self.pbw += other.pbw;
        for (k, v) in other.per_family {
            *self.per_family.entry(k).or_default() += v;
        }
        for (k, v) in other.per_three_type {
            *self.per_three_type.entry(k).or_default() += v;
        }
        self.inconsistencies += other.inconsistencies;
        self.examples.extend(other.examples);
        self.examples.sort();
        self.examples.truncate(5);
        self
    }

    fn single(p: &Presentation) -> GridSummary {
        let mut s = GridSummary {
            total: 1,
            ..GridSummary::default()
        };
        if !is_pbw(p).passed {
            return s;
        }
        s.pbw = 1;
        match classify_pbw(p) {
            Ok(a) => {
                s.per_family.insert(a.family.to_string(), 1);
                if let Some(t) = a.three_type {
                    s.per_three_type.insert(t.to_string(), 1);
                }
            }
            Err(_) => {
                s.inconsistencies = 1;
                s.examples.push(p.to_text());
            }
        }
        s
    }
}

impl fmt::Display for GridSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "presentations: {}", self.total)?;
        writeln!(f, "pbw: {}", self.pbw)?;
        for (k, v) in &self.per_family {
            writeln!(f, "family {k}: {v}")?;
        }
        for (k, v) in &self.per_three_type {
            writeln!(f, "type {k}: {v}")?;
        }
        writeln!(f, "internal-inconsistencies: {}", self.inconsistencies)?;
        for e in &self.examples {
            writeln!(f, "inconsistent:\n{e}")?;
        }
        Ok(())
    }
}

/// Runs the diamond check on every grid point (or a random sample) and
/// classifies every PBW point.
pub fn grid_search(cfg: &GridConfig) -> GridSummary {
    let size = cfg.size();
    let points: Vec<u128> = match cfg.sample {
        Some(m) => {
            let mut rng = rand::rngs::StdRng::seed_from_u64(cfg.seed);
            (0..m).map(|_| rng.gen_range(0..size)).collect()
        }
        None => (0..size).collect(),
    };
    points
        .par_iter()
        .map(|&k| GridSummary::single(&cfg.point(k)))
        .reduce(GridSummary::default, GridSummary::merge)
}
