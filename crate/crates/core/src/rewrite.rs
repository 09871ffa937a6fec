//! Reduction to PBW normal form and the Diamond-Lemma overlap check.
//!
//! Each pair `a < b` gives the rule
//! `D_a D_b -> q_ba D_b D_a + (x_b/g_ab) D_a - (x_a/g_ab) D_b` with
//! `q_ba = g_ba/g_ab`. Squares `D_a D_a` are never rewritten. The only
//! overlaps between these rules are the words `D_a D_b D_c`, `a < b < c`.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{PbwMonomial, PbwPolynomial, Word, WordPolynomial};
use crate::presentation::Presentation;
use crate::scalar::Scalar;

/// Default exploration cap for [`normalize_all_paths`].
pub const DEFAULT_MAX_STATES: usize = 100_000;

/// Application of the `(a, b)` rule at `position`, `position + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ReductionStep {
    pub position: usize,
    pub rule: (usize, usize),
}

impl ReductionStep {
    /// The step at `position` of `word`, if the letters there ascend.
    pub fn at(word: &Word, position: usize) -> Option<ReductionStep> {
        let l = word.letters();
        (position + 1 < l.len() && l[position] < l[position + 1]).then(|| ReductionStep {
            position,
            rule: (l[position], l[position + 1]),
        })
    }

    /// Every reducible position of `word`, left to right.
    pub fn all(word: &Word) -> impl Iterator<Item = ReductionStep> + '_ {
        (0..word.len().saturating_sub(1)).filter_map(move |i| ReductionStep::at(word, i))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleFailure {
    pub triple: (usize, usize, usize),
    pub difference: PbwPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiamondReport {
    pub passed: bool,
    pub failures: Vec<TripleFailure>,
    /// Pairs `a < b` with `g(a,b) = 0`. Such a presentation has no rule for
    /// `D_a D_b` and never has the ordered monomials as a basis.
    pub degenerate: Vec<(usize, usize)>,
    pub triples_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TripleOutcome {
    Passed,
    Failed(PbwPolynomial),
}

impl TripleOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, TripleOutcome::Passed)
    }
}

/// Right-hand side of the `(a, b)` rule as a PBW polynomial.
pub fn rewrite_pair(p: &Presentation, a: usize, b: usize) -> Result<PbwPolynomial> {
    if a >= b {
        return Err(Error::NotAscending(a, b));
    }
    for idx in [a, b] {
        if idx == 0 || idx > p.n() {
            return Err(Error::IndexOutOfRange { index: idx, n: p.n() });
        }
    }
    let gab = p.g(a, b);
    let inv = gab.inverse().ok_or(Error::DegenerateRelation(a, b))?;
    let mut out = PbwPolynomial::zero();
    out.add_term(
        PbwMonomial::from_runs(vec![(b, 1), (a, 1)]).unwrap(),
        &(p.g(b, a) * &inv),
    );
    out.add_term(PbwMonomial::from_runs(vec![(a, 1)]).unwrap(), &(p.x(b) * &inv));
    out.add_term(PbwMonomial::from_runs(vec![(b, 1)]).unwrap(), &-(p.x(a) * &inv));
    Ok(out)
}

/// Right-hand side of a rewrite rule as `(word, coefficient)` terms.
type Rhs = Vec<(Vec<usize>, Scalar)>;

/// Rules for all pairs, indexed by `(a, b)`; `None` where `g(a,b) = 0`.
struct RuleTable {
    rules: HashMap<(usize, usize), Option<Rhs>>,
}

impl RuleTable {
    fn new(p: &Presentation) -> Self {
        let mut rules = HashMap::new();
        for (a, b) in p.pairs() {
            let terms = rewrite_pair(p, a, b)
                .ok()
                .map(|rhs| rhs.terms().map(|(m, c)| (m.to_word().0, c.clone())).collect());
            rules.insert((a, b), terms);
        }
        RuleTable { rules }
    }

    fn apply(&self, word: &Word, step: ReductionStep) -> Result<WordPolynomial> {
        let l = word.letters();
        let i = step.position;
        let (a, b) = step.rule;
        let rule = self.rules[&step.rule].as_ref().ok_or(Error::DegenerateRelation(a, b))?;
        let mut out = WordPolynomial::zero();
        for (mid, c) in rule {
            let mut w = Vec::with_capacity(l.len());
            w.extend_from_slice(&l[..i]);
            w.extend_from_slice(mid);
            w.extend_from_slice(&l[i + 2..]);
            out.add_term(Word(w), c);
        }
        Ok(out)
    }
}

/// One reduction step applied to a single word.
pub fn apply_step(p: &Presentation, word: &Word, step: ReductionStep) -> Result<WordPolynomial> {
    if ReductionStep::at(word, step.position) != Some(step) {
        return Err(Error::NotAscending(step.rule.0, step.rule.1));
    }
    let (a, b) = step.rule;
    let rhs = rewrite_pair(p, a, b)?;
    let l = word.letters();
    let mut out = WordPolynomial::zero();
    for (m, c) in rhs.terms() {
        let mut w = l[..step.position].to_vec();
        w.extend(m.to_word().0);
        w.extend_from_slice(&l[step.position + 2..]);
        out.add_term(Word(w), c);
    }
    Ok(out)
}

/// `(length, number of positions i < j with w_i < w_j)`. Every rewrite
/// strictly lowers it lexicographically.
pub fn reduction_measure(word: &Word) -> (usize, usize) {
    let l = word.letters();
    let mut ascending = 0;
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            if l[i] < l[j] {
                ascending += 1;
            }
        }
    }
    (l.len(), ascending)
}

fn normalize_with(rules: &RuleTable, start: &WordPolynomial) -> Result<PbwPolynomial> {
    // Keyed by (length, word) so the last entry is the highest-priority term.
    let mut work: BTreeMap<(usize, Word), Scalar> = BTreeMap::new();
    let push = |work: &mut BTreeMap<(usize, Word), Scalar>, w: Word, c: &Scalar| {
        let key = (w.len(), w);
        let entry = work.entry(key).or_insert_with(Scalar::zero);
        *entry += c;
    };
    for (w, c) in start.terms() {
        push(&mut work, w.clone(), c);
    }
    let mut done = PbwPolynomial::zero();
    while let Some(((_, w), c)) = work.pop_last() {
        if c.is_zero() {
            continue;
        }
        match ReductionStep::all(&w).next() {
            None => done.add_term(PbwMonomial::from_word(&w).expect("irreducible words are ordered"), &c),
            Some(step) => {
                for (nw, nc) in rules.apply(&w, step)?.terms() {
                    push(&mut work, nw.clone(), &(nc * &c));
                }
            }
        }
    }
    Ok(done)
}

/// PBW normal form of a word: always the leftmost ascending pair of the
/// highest remaining term is rewritten first.
pub fn normalize(p: &Presentation, w: &Word) -> Result<PbwPolynomial> {
    normalize_poly(p, &WordPolynomial::word(w.clone()))
}

pub fn normalize_poly(p: &Presentation, poly: &WordPolynomial) -> Result<PbwPolynomial> {
    for (w, _) in poly.terms() {
        w.check_range(p.n())?;
    }
    normalize_with(&RuleTable::new(p), poly)
}

/// Exhaustive reduction oracle.
///
/// Every reducible position of a word is tried, and every word produced by a
/// step is again reduced along every path, independently of its siblings.
/// Results are memoised per word, so one oracle can serve many queries on
/// the same presentation.
pub struct PathOracle {
    rules: RuleTable,
    n: usize,
    memo: HashMap<Word, Vec<PbwPolynomial>>,
    max_states: usize,
    states: usize,
}

impl PathOracle {
    pub fn new(p: &Presentation, max_states: usize) -> Result<Self> {
        Ok(PathOracle {
            rules: RuleTable::new(p),
            n: p.n(),
            memo: HashMap::new(),
            max_states,
            states: 0,
        })
    }

    pub fn states(&self) -> usize {
        self.states
    }

    /// Distinct terminal normal forms of `w`, sorted by their text form.
    pub fn results(&mut self, w: &Word) -> Result<Vec<PbwPolynomial>> {
        w.check_range(self.n)?;
        self.explore(w)
    }

    fn explore(&mut self, w: &Word) -> Result<Vec<PbwPolynomial>> {
        if let Some(r) = self.memo.get(w) {
            return Ok(r.clone());
        }
        let mut found: HashSet<PbwPolynomial> = HashSet::new();
        let steps: Vec<ReductionStep> = ReductionStep::all(w).collect();
        if steps.is_empty() {
            found.insert(PbwPolynomial::monomial(
                PbwMonomial::from_word(w).expect("irreducible words are ordered"),
                Scalar::one(),
            ));
        }
        for step in steps {
            let next = self.rules.apply(w, step)?;
            let mut partial: HashSet<PbwPolynomial> = HashSet::from([PbwPolynomial::zero()]);
            for (nw, c) in next.terms() {
                let options = self.explore(nw)?;
                let mut grown = HashSet::with_capacity(partial.len() * options.len());
                for base in &partial {
                    for opt in &options {
                        grown.insert(base.add(&opt.scale(c)));
                    }
                }
                self.states += grown.len();
                if self.states > self.max_states {
                    return Err(Error::StateCapExceeded(self.max_states));
                }
                partial = grown;
            }
            found.extend(partial);
        }
        let mut out: Vec<PbwPolynomial> = found.into_iter().collect();
        out.sort_by_cached_key(|p| p.to_string());
        self.states += 1;
        if self.states > self.max_states {
            return Err(Error::StateCapExceeded(self.max_states));
        }
        self.memo.insert(w.clone(), out.clone());
        Ok(out)
    }
}

/// Set of all terminal normal forms of `w`; a singleton iff `w` is
/// reduction-unique.
pub fn normalize_all_paths(p: &Presentation, w: &Word, max_states: usize) -> Result<Vec<PbwPolynomial>> {
    PathOracle::new(p, max_states)?.results(w)
}

/// Resolves the overlap `D_a D_b D_c` by rewriting positions (1,2) first on
/// one side and (2,3) first on the other, then normalising both.
pub fn check_triple(p: &Presentation, a: usize, b: usize, c: usize) -> Result<TripleOutcome> {
    if !(a < b && b < c) {
        return Err(Error::NotIncreasingTriple(a, b, c));
    }
    if c > p.n() {
        return Err(Error::IndexOutOfRange { index: c, n: p.n() });
    }
    let word = Word(vec![a, b, c]);
    let left = apply_step(
        p,
        &word,
        ReductionStep {
            position: 0,
            rule: (a, b),
        },
    )?;
    let right = apply_step(
        p,
        &word,
        ReductionStep {
            position: 1,
            rule: (b, c),
        },
    )?;
    let diff = normalize_poly(p, &left)?.sub(&normalize_poly(p, &right)?);
    Ok(if diff.is_zero() {
        TripleOutcome::Passed
    } else {
        TripleOutcome::Failed(diff)
    })
}

/// Diamond-Lemma decision: every triple `a < b < c` must resolve.
pub fn is_pbw(p: &Presentation) -> DiamondReport {
    let degenerate: Vec<(usize, usize)> = p.pairs().filter(|&(a, b)| p.g(a, b).is_zero()).collect();
    let n = p.n();
    let triples: Vec<(usize, usize, usize)> = (1..=n)
        .flat_map(|a| (a + 1..=n).flat_map(move |b| (b + 1..=n).map(move |c| (a, b, c))))
        .collect();
    let checkable = |&(a, b, c): &(usize, usize, usize)| {
        !degenerate
            .iter()
            .any(|&(u, v)| [a, b, c].contains(&u) && [a, b, c].contains(&v))
    };
    let outcomes: Vec<Option<TripleFailure>> = triples
        .par_iter()
        .filter(|t| checkable(t))
        .map(|&(a, b, c)| match check_triple(p, a, b, c) {
            Ok(TripleOutcome::Passed) => None,
            Ok(TripleOutcome::Failed(difference)) => Some(TripleFailure {
                triple: (a, b, c),
                difference,
            }),
            Err(e) => unreachable!("triple ({a},{b},{c}) should be checkable: {e}"),
        })
        .collect();
    let triples_checked = outcomes.len();
    let failures: Vec<TripleFailure> = outcomes.into_iter().flatten().collect();
    DiamondReport {
        passed: failures.is_empty() && degenerate.is_empty(),
        failures,
        degenerate,
        triples_checked,
    }
}
