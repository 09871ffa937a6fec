//! Words, PBW monomials and the polynomials built from them.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A product of generators, left to right. The empty word is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Weakly decreasing words are exactly the PBW-ordered ones.
    pub fn is_ordered(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Whitespace-separated 1-based indices, e.g. `1 2 3`.
    pub fn parse(text: &str, n: usize) -> Result<Word> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| Error::Parse {
                line: 0,
                message: format!("bad letter `{tok}`"),
            })?;
            if v == 0 || v > n {
                return Err(Error::IndexOutOfRange { index: v, n });
            }
            letters.push(v);
        }
        Ok(Word(letters))
    }

    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&l| l == 0 || l > n) {
            Some(&index) => Err(Error::IndexOutOfRange { index, n }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(|l| format!("D{l}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// `D_{a1}^{k1} ... D_{am}^{km}` with `a1 > ... > am` and every `k >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PbwMonomial {
    runs: Vec<(usize, u32)>,
}

impl PbwMonomial {
    pub fn unit() -> Self {
        Self::default()
    }

    /// Run-length encodes a weakly decreasing word; `None` otherwise.
    pub fn from_word(word: &Word) -> Option<Self> {
        if !word.is_ordered() {
            return None;
        }
        let mut runs: Vec<(usize, u32)> = Vec::new();
        for &l in word.letters() {
            match runs.last_mut() {
                Some((idx, k)) if *idx == l => *k += 1,
                _ => runs.push((l, 1)),
            }
        }
        Some(PbwMonomial { runs })
    }

    /// Validates strictly decreasing indices and positive exponents.
    pub fn from_runs(runs: Vec<(usize, u32)>) -> Option<Self> {
        let ok = runs.iter().all(|&(_, k)| k >= 1) && runs.windows(2).all(|w| w[0].0 > w[1].0);
        ok.then_some(PbwMonomial { runs })
    }

    pub fn runs(&self) -> &[(usize, u32)] {
        &self.runs
    }

    pub fn degree(&self) -> u32 {
        self.runs.iter().map(|&(_, k)| k).sum()
    }

    pub fn to_word(&self) -> Word {
        Word(
            self.runs
                .iter()
                .flat_map(|&(idx, k)| std::iter::repeat_n(idx, k as usize))
                .collect(),
        )
    }
}

impl Ord for PbwMonomial {
    /// Graded: degree first, then lexicographic on the run sequence.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.runs.cmp(&other.runs))
    }
}

impl PartialOrd for PbwMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .runs
            .iter()
            .map(|&(idx, k)| {
                if k == 1 {
                    format!("D{idx}")
                } else {
                    format!("D{idx}^{k}")
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Finite linear combination of PBW monomials without stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PbwPolynomial {
    terms: BTreeMap<PbwMonomial, Scalar>,
}

impl PbwPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: PbwMonomial, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(m, &c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: &Scalar) {
        add_into(&mut self.terms, m, c);
    }

    /// Terms from the highest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn add(&self, other: &PbwPolynomial) -> PbwPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &PbwPolynomial) -> PbwPolynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PbwPolynomial {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> PbwPolynomial {
        let mut out = PbwPolynomial::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &(v * c));
        }
        out
    }

    pub fn to_word_polynomial(&self) -> WordPolynomial {
        let mut out = WordPolynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(m.to_word(), c);
        }
        out
    }
}

impl fmt::Display for PbwPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms().map(|(m, c)| format!("{c} * {m}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Linear combination of arbitrary words, the working space of reduction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct WordPolynomial {
    terms: BTreeMap<Word, Scalar>,
}

impl WordPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: Word) -> Self {
        let mut p = Self::zero();
        p.add_term(w, &Scalar::one());
        p
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        add_into(&mut self.terms, w, c);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn remove(&mut self, w: &Word) -> Option<Scalar> {
        self.terms.remove(w)
    }

    /// `Some` iff every word is weakly decreasing.
    pub fn to_pbw(&self) -> Option<PbwPolynomial> {
        let mut out = PbwPolynomial::zero();
        for (w, c) in &self.terms {
            out.add_term(PbwMonomial::from_word(w)?, c);
        }
        Some(out)
    }
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, Scalar>, k: K, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}
