//! Coset enumeration (Todd-Coxeter) for certifying finite quotients.
//!
//! [`coset_enumerate`] builds the permutation action of a finitely
//! presented group on the cosets of a finitely generated subgroup.  The
//! strategy is relator-driven: for each live coset every relator cycle is
//! traced and filled, defining new cosets at gaps and recording a
//! coincidence whenever a cycle closes onto two distinct cosets.
//! Coincidences are processed through a union-find structure (smallest
//! index survives, path compression on reads), merging rows and queueing
//! any secondary coincidences.
//!
//! Passes repeat until a full sweep makes no definition and finds no
//! coincidence; at that point every row is total and every relator closes
//! at every live coset, so the live rows form a genuine coset table and
//! the live count is the subgroup index.  Enumeration is deterministic:
//! all iteration is in index order and no hashing is involved.
//!
//! Completion can only be bounded, never guaranteed (the index may be
//! infinite); hitting the coset limit yields an `Overflow` outcome, which
//! callers must treat as inconclusive rather than as a failure.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use thiserror::Error;

use crate::presentation::{Presentation, Word};

/// Errors from enumeration setup.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("subgroup word uses a generator not in the presentation: {0}")]
    AlienSubgroupWord(String),
}

/// Resource limits for an enumeration run.
#[derive(Debug, Clone)]
pub struct EnumerationLimits {
    /// Hard cap on the number of cosets ever defined.
    pub max_cosets: usize,
    /// How many definitions between checks of the cancel flag.
    pub check_every: usize,
    /// Optional cooperative cancellation flag.
    pub cancel: Option<Arc<AtomicBool>>,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_cosets: 100_000,
            check_every: 1024,
            cancel: None,
        }
    }
}

impl EnumerationLimits {
    /// Limits with a specific coset cap.
    pub fn with_max_cosets(max_cosets: usize) -> Self {
        EnumerationLimits {
            max_cosets,
            ..Default::default()
        }
    }
}

/// How an enumeration run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationOutcome {
    /// The coset table closed; `index` is the subgroup index.
    Completed { index: usize },
    /// The coset cap was reached before the table closed.
    Overflow { limit: usize },
    /// The cancel flag was raised.
    Aborted,
}

/// Statistics and outcome of an enumeration run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationReport {
    pub outcome: EnumerationOutcome,
    /// Total cosets ever defined (including later-merged ones).
    pub cosets_defined: usize,
    /// Number of coincidence merges processed.
    pub collapses: usize,
}

const UNDEF: u32 = u32::MAX;

struct Enumerator {
    cols: usize,
    relators: Vec<Vec<usize>>,
    subgroup: Vec<Vec<usize>>,
    table: Vec<Vec<u32>>,
    parent: Vec<u32>,
    pending: std::collections::VecDeque<(u32, u32)>,
    defined: usize,
    collapses: usize,
    limits: EnumerationLimits,
    since_check: usize,
}

enum Stop {
    Overflow,
    Aborted,
}

impl Enumerator {
    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn live(&mut self, x: u32) -> bool {
        self.find(x) == x
    }

    fn new_coset(&mut self) -> Result<u32, Stop> {
        if self.table.len() >= self.limits.max_cosets {
            return Err(Stop::Overflow);
        }
        self.since_check += 1;
        if self.since_check >= self.limits.check_every {
            self.since_check = 0;
            if let Some(flag) = &self.limits.cancel {
                if flag.load(Ordering::Relaxed) {
                    return Err(Stop::Aborted);
                }
            }
        }
        let id = self.table.len() as u32;
        self.table.push(vec![UNDEF; self.cols]);
        self.parent.push(id);
        self.defined += 1;
        Ok(id)
    }

    /// Defines `x . c` as a fresh coset (both directions recorded).
    fn define(&mut self, x: u32, c: usize) -> Result<u32, Stop> {
        let y = self.new_coset()?;
        self.table[x as usize][c] = y;
        self.table[y as usize][inverse_column(c)] = x;
        Ok(y)
    }

    /// Asserts `x . c = y`, queueing a coincidence on conflict.
    fn force(&mut self, x: u32, c: usize, y: u32) {
        let x = self.find(x);
        let y = self.find(y);
        let cur = self.table[x as usize][c];
        if cur != UNDEF {
            let cur = self.find(cur);
            if cur != y {
                self.pending.push_back((cur, y));
                self.process_coincidences();
            }
            return;
        }
        let mirror = self.table[y as usize][inverse_column(c)];
        if mirror != UNDEF {
            let mirror = self.find(mirror);
            if mirror != x {
                // mirror . c = y and x . c = y force mirror = x; the
                // surviving row inherits the entry during the merge.
                self.pending.push_back((mirror, x));
                self.process_coincidences();
            }
            return;
        }
        self.table[x as usize][c] = y;
        self.table[y as usize][inverse_column(c)] = x;
    }

    fn process_coincidences(&mut self) {
        while let Some((a, b)) = self.pending.pop_front() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            // Smallest index survives.
            let (s, d) = if a < b { (a, b) } else { (b, a) };
            self.parent[d as usize] = s;
            self.collapses += 1;
            for c in 0..self.cols {
                let t = self.table[d as usize][c];
                if t == UNDEF {
                    continue;
                }
                let t = self.find(t);
                let existing = self.table[s as usize][c];
                if existing == UNDEF {
                    self.table[s as usize][c] = t;
                    // Mirror entries pointing at the dead row resolve
                    // lazily through find(); ensure the reverse slot of t
                    // records the surviving row when empty.
                    let back = self.table[t as usize][inverse_column(c)];
                    if back == UNDEF {
                        self.table[t as usize][inverse_column(c)] = s;
                    } else {
                        let back = self.find(back);
                        if back != s {
                            self.pending.push_back((back, s));
                        }
                    }
                } else {
                    let existing = self.find(existing);
                    if existing != t {
                        self.pending.push_back((existing, t));
                    }
                }
            }
        }
    }

    /// Walks `word` from `start` while entries are defined.
    /// Returns the reached coset and how many letters were consumed.
    fn walk(&mut self, start: u32, word: &[usize]) -> (u32, usize) {
        let mut cur = self.find(start);
        for (i, &c) in word.iter().enumerate() {
            let next = self.table[cur as usize][c];
            if next == UNDEF {
                return (cur, i);
            }
            cur = self.find(next);
        }
        (cur, word.len())
    }

    /// Ensures the cycle `start . word = start`, defining cosets at
    /// interior gaps and forcing the final edge.  Returns whether any
    /// definition or coincidence happened.
    fn close_cycle(&mut self, start: u32, word: &[usize]) -> Result<bool, Stop> {
        let mut progressed = false;
        loop {
            let start = self.find(start);
            let (f, i) = self.walk(start, word);
            if i == word.len() {
                if f != start {
                    self.pending.push_back((f, start));
                    self.process_coincidences();
                    progressed = true;
                }
                return Ok(progressed);
            }
            if i == word.len() - 1 {
                // The final entry was undefined, so forcing it always
                // either defines it or records a coincidence.
                self.force(f, word[i], start);
                return Ok(true);
            }
            self.define(f, word[i])?;
            progressed = true;
        }
    }

    fn live_count(&mut self) -> usize {
        (0..self.table.len() as u32)
            .filter(|&x| self.live(x))
            .count()
    }

    fn run(&mut self) -> Result<(), Stop> {
        if self.table.is_empty() {
            self.new_coset()?;
        }
        let relators = std::mem::take(&mut self.relators);
        let subgroup = std::mem::take(&mut self.subgroup);
        let result = self.run_sweeps(&relators, &subgroup);
        self.relators = relators;
        self.subgroup = subgroup;
        result
    }

    fn run_sweeps(&mut self, relators: &[Vec<usize>], subgroup: &[Vec<usize>]) -> Result<(), Stop> {
        loop {
            let mut progressed = false;
            // Keep the subgroup words closed at the base coset.
            for w in subgroup {
                let base = self.find(0);
                progressed |= self.close_cycle(base, w)?;
            }
            let mut alpha = 0u32;
            while (alpha as usize) < self.table.len() {
                if !self.live(alpha) {
                    alpha += 1;
                    continue;
                }
                for w in relators {
                    progressed |= self.close_cycle(alpha, w)?;
                    if !self.live(alpha) {
                        break;
                    }
                }
                if self.live(alpha) {
                    for c in 0..self.cols {
                        if self.table[alpha as usize][c] == UNDEF {
                            self.define(alpha, c)?;
                            progressed = true;
                        }
                    }
                }
                alpha += 1;
            }
            if !progressed {
                return Ok(());
            }
        }
    }
}

fn inverse_column(c: usize) -> usize {
    c ^ 1
}

fn compile_word(word: &Word, generators: &[String]) -> Option<Vec<usize>> {
    let mut cols = vec![];
    for l in word.letters() {
        let g = generators.iter().position(|h| *h == l.gen)?;
        cols.push(if l.exp == 1 { 2 * g } else { 2 * g + 1 });
    }
    Some(cols)
}

/// Enumerates the cosets of the subgroup generated by `subgroup` inside
/// the presented group, within the given limits.
pub fn coset_enumerate(
    p: &Presentation,
    subgroup: &[Word],
    limits: &EnumerationLimits,
) -> Result<EnumerationReport, VerifyError> {
    let gens = p.generators();
    let relators: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| compile_word(r, gens).expect("relators are over the presentation alphabet"))
        .collect();
    let mut sub = vec![];
    for w in subgroup {
        let compiled =
            compile_word(w, gens).ok_or_else(|| VerifyError::AlienSubgroupWord(w.to_string()))?;
        if !compiled.is_empty() {
            sub.push(compiled);
        }
    }
    let mut e = Enumerator {
        cols: 2 * gens.len(),
        relators,
        subgroup: sub,
        table: vec![],
        parent: vec![],
        pending: Default::default(),
        defined: 0,
        collapses: 0,
        limits: limits.clone(),
        since_check: 0,
    };
    let outcome = match e.run() {
        Ok(()) => EnumerationOutcome::Completed {
            index: e.live_count(),
        },
        Err(Stop::Overflow) => EnumerationOutcome::Overflow {
            limit: e.limits.max_cosets,
        },
        Err(Stop::Aborted) => EnumerationOutcome::Aborted,
    };
    Ok(EnumerationReport {
        outcome,
        cosets_defined: e.defined,
        collapses: e.collapses,
    })
}

/// Result of checking a presentation against an expected group order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderCheck {
    /// Enumeration completed with exactly the expected order.
    Pass { order: u64 },
    /// Enumeration completed with a different order.
    Fail { expected: u64, found: u64 },
    /// Enumeration hit its limits; nothing is certified either way.
    Inconclusive { cosets_defined: usize },
}

/// Enumerates over the trivial subgroup and compares the group order.
pub fn verify_group_order(
    p: &Presentation,
    expected: u64,
    limits: &EnumerationLimits,
) -> Result<OrderCheck, VerifyError> {
    let report = coset_enumerate(p, &[], limits)?;
    Ok(match report.outcome {
        EnumerationOutcome::Completed { index } => {
            if index as u64 == expected {
                OrderCheck::Pass { order: expected }
            } else {
                OrderCheck::Fail {
                    expected,
                    found: index as u64,
                }
            }
        }
        _ => OrderCheck::Inconclusive {
            cosets_defined: report.cosets_defined,
        },
    })
}

/// Evidence that two presentations present the same finite group.
///
/// This is the bounded certificate used by the move-soundness tests: both
/// presentations are enumerated to completion and their orders compared.
/// Equal finite orders certify soundness for the move sequences generated
/// there (which by construction present quotients of one another, and a
/// finite group has no proper isomorphic quotient of the same order).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceEvidence {
    Pass { order: u64 },
    Fail { left: u64, right: u64 },
    Inconclusive,
}

/// Compares the orders of two finitely presented groups.
pub fn equivalence_evidence(
    a: &Presentation,
    b: &Presentation,
    limits: &EnumerationLimits,
) -> Result<EquivalenceEvidence, VerifyError> {
    let ra = coset_enumerate(a, &[], limits)?;
    let rb = coset_enumerate(b, &[], limits)?;
    Ok(match (ra.outcome, rb.outcome) {
        (
            EnumerationOutcome::Completed { index: ia },
            EnumerationOutcome::Completed { index: ib },
        ) => {
            if ia == ib {
                EquivalenceEvidence::Pass { order: ia as u64 }
            } else {
                EquivalenceEvidence::Fail {
                    left: ia as u64,
                    right: ib as u64,
                }
            }
        }
        _ => EquivalenceEvidence::Inconclusive,
    })
}
