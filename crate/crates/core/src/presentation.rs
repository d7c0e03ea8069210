//! Finite group presentations and Tietze transformations.
//!
//! A [`Presentation`] is an ordered generator list plus a list of relators
//! (words in the generators, stored freely reduced).  Every mutation goes
//! through one of five Tietze moves, each of which is recorded in an audit
//! trail and can be undone exactly:
//!
//! - add/remove a generator (with its defining relator),
//! - add/remove a relator,
//! - substitute a word for every occurrence of a generator.
//!
//! Adding a redundant relator, removing one, or substituting are only
//! group-preserving when the affected relation is a consequence of the
//! others; the engine records the move and leaves that obligation to the
//! caller (it is certified separately by coset enumeration on small cases).
//!
//! Two composite operations drive the assembly pipeline:
//!
//! - [`merge_presentations`] forms the quotient of a free product by
//!   identifying generators of the second factor with words of the first;
//! - [`reduce_to_generating_set`] rewrites a presentation onto a new
//!   generating set.  If the new set has `d` elements of which `m` are
//!   literally equal to old generators, the relator count changes by
//!   exactly `d - m`: every new generator contributes its defining
//!   relation except the literal matches.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Errors from presentation construction and Tietze moves.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("generator name {0:?} is empty or repeated")]
    BadGeneratorName(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("generator {0} already exists")]
    NameClash(String),
    #[error("letter exponent must be +1 or -1")]
    BadExponent,
    #[error("no relator expresses {0} in the other generators")]
    NoDefiningRelator(String),
    #[error("relator index {0} out of range")]
    RelatorIndexOutOfRange(usize),
    #[error("relator {index} mentions {gen} {count} times, need exactly one")]
    NotASingleOccurrence {
        gen: String,
        index: usize,
        count: usize,
    },
    #[error("invalid generating-set data: {0}")]
    GeneratingSetInvalid(String),
    #[error("invalid identification: {0}")]
    InvalidIdentification(String),
    #[error("cannot undo: {0}")]
    UndoMismatch(String),
    #[error("word is not over the presentation alphabet: {0}")]
    AlienWord(String),
}

/// One signed generator occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: String,
    pub exp: i8,
}

impl Letter {
    pub fn new(gen: impl Into<String>, exp: i8) -> Result<Letter, PresentationError> {
        if exp != 1 && exp != -1 {
            return Err(PresentationError::BadExponent);
        }
        Ok(Letter {
            gen: gen.into(),
            exp,
        })
    }

    fn inverse(&self) -> Letter {
        Letter {
            gen: self.gen.clone(),
            exp: -self.exp,
        }
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (&self.gen, self.exp).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (gen, exp) = <(String, i8)>::deserialize(d)?;
        Letter::new(gen, exp).map_err(D::Error::custom)
    }
}

/// A freely reducible word: a sequence of signed letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    /// The empty word.
    pub fn empty() -> Word {
        Word(vec![])
    }

    /// Builds a word from (generator, exponent) pairs, expanding exponents
    /// into single letters and freely reducing.
    pub fn from_pairs(pairs: &[(&str, i64)]) -> Word {
        let mut letters = vec![];
        for &(g, e) in pairs {
            let sign = if e >= 0 { 1 } else { -1 };
            for _ in 0..e.unsigned_abs() {
                letters.push(Letter {
                    gen: g.to_string(),
                    exp: sign,
                });
            }
        }
        Word(letters).freely_reduced()
    }

    /// Parses a whitespace-separated word such as `"r^3 s^-1 h"`.
    pub fn parse(text: &str) -> Result<Word, PresentationError> {
        let mut pairs = vec![];
        let mut names = vec![];
        for token in text.split_whitespace() {
            let (name, exp) = match token.split_once('^') {
                None => (token, 1i64),
                Some((name, e)) => (
                    name,
                    e.parse::<i64>().map_err(|_| {
                        PresentationError::AlienWord(format!("bad exponent in {token:?}"))
                    })?,
                ),
            };
            if name.is_empty() {
                return Err(PresentationError::AlienWord(format!("bad token {token:?}")));
            }
            names.push(name.to_string());
            pairs.push((names.len() - 1, exp));
        }
        let pairs: Vec<(&str, i64)> = pairs.iter().map(|&(i, e)| (names[i].as_str(), e)).collect();
        Ok(Word::from_pairs(&pairs))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn freely_reduced(&self) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.0.len());
        for l in &self.0 {
            if stack.last().map(|t| t.gen == l.gen && t.exp == -l.exp) == Some(true) {
                stack.pop();
            } else {
                stack.push(l.clone());
            }
        }
        Word(stack)
    }

    /// The inverse word (reversed letters with flipped signs).
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(Letter::inverse).collect())
    }

    /// Concatenation followed by free reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend(other.0.iter().cloned());
        Word(letters).freely_reduced()
    }

    /// Replaces every occurrence of `gen` by `replacement` (inverted for
    /// inverse occurrences) and freely reduces.
    pub fn substitute(&self, gen: &str, replacement: &Word) -> Word {
        let mut letters = vec![];
        for l in &self.0 {
            if l.gen == gen {
                let image = if l.exp == 1 {
                    replacement.clone()
                } else {
                    replacement.inverse()
                };
                letters.extend(image.0);
            } else {
                letters.push(l.clone());
            }
        }
        Word(letters).freely_reduced()
    }

    /// Whether `gen` occurs (with either sign).
    pub fn mentions(&self, gen: &str) -> bool {
        self.0.iter().any(|l| l.gen == gen)
    }

    fn occurrences(&self, gen: &str) -> usize {
        self.0.iter().filter(|l| l.gen == gen).count()
    }
}

impl std::fmt::Display for Word {
    /// Compact form grouping runs of equal letters: `r^3 s^-2 h`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = vec![];
        let mut i = 0;
        while i < self.0.len() {
            let l = &self.0[i];
            let mut run = 0i64;
            while i < self.0.len() && self.0[i].gen == l.gen && self.0[i].exp == l.exp {
                run += 1;
                i += 1;
            }
            let e = run * l.exp as i64;
            if e == 1 {
                parts.push(l.gen.clone());
            } else {
                parts.push(format!("{}^{}", l.gen, e));
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// A recorded Tietze move.  Each variant stores enough of the prior state
/// to be undone exactly and to be replayed deterministically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum TietzeMove {
    /// Appended generator `name` with defining relator `name * definition^-1`.
    AddGenerator { name: String, definition: Word },
    /// Removed generator `name` (at position `generator_index`), solved
    /// out of the relator `relator` at `relator_index`; `rewritten` holds
    /// the prior words of every other relator that mentioned it.
    RemoveGenerator {
        name: String,
        definition: Word,
        generator_index: usize,
        relator_index: usize,
        relator: Word,
        rewritten: Vec<(usize, Word)>,
    },
    /// Appended a relator.
    AddRelator { word: Word },
    /// Removed the relator at `index`.
    RemoveRelator { index: usize, word: Word },
    /// Rewrote every relator, replacing `gen` by `replacement`;
    /// `rewritten` holds the prior words of the changed relators.
    SubstituteAll {
        gen: String,
        replacement: Word,
        rewritten: Vec<(usize, Word)>,
    },
}

/// A finite presentation with an audit trail of the moves applied to it
/// since construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
    trace: Vec<TietzeMove>,
}

#[derive(Deserialize)]
struct RawPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Serialize for Presentation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Presentation", 2)?;
        st.serialize_field("generators", &self.generators)?;
        st.serialize_field("relators", &self.relators)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawPresentation::deserialize(d)?;
        Presentation::new(raw.generators, raw.relators).map_err(D::Error::custom)
    }
}

impl Presentation {
    /// Builds a presentation, validating generator names and relator
    /// alphabets; relators are stored freely reduced.
    pub fn new(
        generators: Vec<String>,
        relators: Vec<Word>,
    ) -> Result<Presentation, PresentationError> {
        for (i, g) in generators.iter().enumerate() {
            if g.is_empty() || generators[..i].contains(g) {
                return Err(PresentationError::BadGeneratorName(g.clone()));
            }
        }
        let mut reduced = vec![];
        for r in relators {
            for l in r.letters() {
                if !generators.contains(&l.gen) {
                    return Err(PresentationError::UnknownGenerator(l.gen.clone()));
                }
            }
            reduced.push(r.freely_reduced());
        }
        Ok(Presentation {
            generators,
            relators: reduced,
            trace: vec![],
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn trace(&self) -> &[TietzeMove] {
        &self.trace
    }

    /// (generator count, relator count).
    pub fn counts(&self) -> (usize, usize) {
        (self.generators.len(), self.relators.len())
    }

    pub fn has_generator(&self, name: &str) -> bool {
        self.generators.iter().any(|g| g == name)
    }

    /// Same generators and relators, ignoring the trails.
    pub fn same_presentation(&self, other: &Presentation) -> bool {
        self.generators == other.generators && self.relators == other.relators
    }

    /// A copy with every generator renamed to `prefix + name` (relators
    /// rewritten accordingly, trail cleared).
    pub fn with_prefix(&self, prefix: &str) -> Presentation {
        let rename = |g: &str| format!("{prefix}{g}");
        Presentation {
            generators: self.generators.iter().map(|g| rename(g)).collect(),
            relators: self
                .relators
                .iter()
                .map(|r| {
                    Word(
                        r.letters()
                            .iter()
                            .map(|l| Letter {
                                gen: rename(&l.gen),
                                exp: l.exp,
                            })
                            .collect(),
                    )
                })
                .collect(),
            trace: vec![],
        }
    }

    fn check_word(&self, w: &Word) -> Result<(), PresentationError> {
        for l in w.letters() {
            if !self.has_generator(&l.gen) {
                return Err(PresentationError::UnknownGenerator(l.gen.clone()));
            }
        }
        Ok(())
    }

    /// Tietze move: adjoin `name` with defining relator `name * definition^-1`.
    pub fn add_generator(&mut self, name: &str, definition: Word) -> Result<(), PresentationError> {
        if name.is_empty() {
            return Err(PresentationError::BadGeneratorName(name.into()));
        }
        if self.has_generator(name) {
            return Err(PresentationError::NameClash(name.into()));
        }
        self.check_word(&definition)?;
        let definition = definition.freely_reduced();
        self.generators.push(name.to_string());
        let relator = Word::from_pairs(&[(name, 1)]).concat(&definition.inverse());
        self.relators.push(relator);
        self.trace.push(TietzeMove::AddGenerator {
            name: name.to_string(),
            definition,
        });
        Ok(())
    }

    /// Tietze move: remove `name` using the first relator in which it
    /// occurs exactly once.
    pub fn remove_generator(&mut self, name: &str) -> Result<(), PresentationError> {
        let index = self
            .relators
            .iter()
            .position(|r| r.occurrences(name) == 1)
            .ok_or_else(|| PresentationError::NoDefiningRelator(name.into()))?;
        self.remove_generator_using(name, index)
    }

    /// Tietze move: remove `name` using the relator at `index`, which must
    /// mention it exactly once.  The relator is solved for `name`, the
    /// solution is substituted into every other relator, and both the
    /// relator and the generator are deleted.
    pub fn remove_generator_using(
        &mut self,
        name: &str,
        index: usize,
    ) -> Result<(), PresentationError> {
        if !self.has_generator(name) {
            return Err(PresentationError::UnknownGenerator(name.into()));
        }
        let relator = self
            .relators
            .get(index)
            .ok_or(PresentationError::RelatorIndexOutOfRange(index))?
            .clone();
        let count = relator.occurrences(name);
        if count != 1 {
            return Err(PresentationError::NotASingleOccurrence {
                gen: name.into(),
                index,
                count,
            });
        }
        // Solve u g^e v = 1 for g.
        let pos = relator
            .letters()
            .iter()
            .position(|l| l.gen == name)
            .expect("occurrence found above");
        let u = Word(relator.letters()[..pos].to_vec());
        let v = Word(relator.letters()[pos + 1..].to_vec());
        let definition = if relator.letters()[pos].exp == 1 {
            u.inverse().concat(&v.inverse())
        } else {
            v.concat(&u)
        };
        let mut rewritten = vec![];
        for (i, r) in self.relators.iter_mut().enumerate() {
            if i != index && r.mentions(name) {
                rewritten.push((i, r.clone()));
                *r = r.substitute(name, &definition);
            }
        }
        self.relators.remove(index);
        let generator_index = self
            .generators
            .iter()
            .position(|g| g == name)
            .expect("checked above");
        self.generators.remove(generator_index);
        self.trace.push(TietzeMove::RemoveGenerator {
            name: name.to_string(),
            definition,
            generator_index,
            relator_index: index,
            relator,
            rewritten,
        });
        Ok(())
    }

    /// Tietze move: append a relator.  Group-preserving only when the word
    /// is a consequence of the existing relators.
    pub fn add_relator(&mut self, word: Word) -> Result<(), PresentationError> {
        self.check_word(&word)?;
        let word = word.freely_reduced();
        self.relators.push(word.clone());
        self.trace.push(TietzeMove::AddRelator { word });
        Ok(())
    }

    /// Tietze move: delete the relator at `index`.  Group-preserving only
    /// when it is a consequence of the remaining relators.
    pub fn remove_relator(&mut self, index: usize) -> Result<Word, PresentationError> {
        if index >= self.relators.len() {
            return Err(PresentationError::RelatorIndexOutOfRange(index));
        }
        let word = self.relators.remove(index);
        self.trace.push(TietzeMove::RemoveRelator {
            index,
            word: word.clone(),
        });
        Ok(word)
    }

    /// Tietze move: rewrite every relator, replacing `gen` by
    /// `replacement`.  Group-preserving only when `gen = replacement`
    /// holds in the presented group.
    pub fn substitute_all(
        &mut self,
        gen: &str,
        replacement: Word,
    ) -> Result<(), PresentationError> {
        if !self.has_generator(gen) {
            return Err(PresentationError::UnknownGenerator(gen.into()));
        }
        self.check_word(&replacement)?;
        let replacement = replacement.freely_reduced();
        let mut rewritten = vec![];
        for (i, r) in self.relators.iter_mut().enumerate() {
            if r.mentions(gen) {
                rewritten.push((i, r.clone()));
                *r = r.substitute(gen, &replacement);
            }
        }
        self.trace.push(TietzeMove::SubstituteAll {
            gen: gen.to_string(),
            replacement,
            rewritten,
        });
        Ok(())
    }

    /// Renames a generator via an add/remove pair, preserving sizes.
    pub fn rename_generator(&mut self, old: &str, new: &str) -> Result<(), PresentationError> {
        if !self.has_generator(old) {
            return Err(PresentationError::UnknownGenerator(old.into()));
        }
        self.add_generator(new, Word::from_pairs(&[(old, 1)]))?;
        let def_index = self.relators.len() - 1;
        self.remove_generator_using(old, def_index)
    }

    /// Replays a recorded move on this presentation.
    pub fn apply_move(&mut self, mv: &TietzeMove) -> Result<(), PresentationError> {
        match mv {
            TietzeMove::AddGenerator { name, definition } => {
                self.add_generator(name, definition.clone())
            }
            TietzeMove::RemoveGenerator {
                name,
                relator_index,
                ..
            } => self.remove_generator_using(name, *relator_index),
            TietzeMove::AddRelator { word } => self.add_relator(word.clone()),
            TietzeMove::RemoveRelator { index, .. } => self.remove_relator(*index).map(|_| ()),
            TietzeMove::SubstituteAll {
                gen, replacement, ..
            } => self.substitute_all(gen, replacement.clone()),
        }
    }

    /// Undoes the most recent move and pops it from the trail.
    pub fn undo_last(&mut self) -> Result<TietzeMove, PresentationError> {
        let mv = self
            .trace
            .pop()
            .ok_or_else(|| PresentationError::UndoMismatch("empty trail".into()))?;
        let mismatch = |what: &str| PresentationError::UndoMismatch(what.to_string());
        match &mv {
            TietzeMove::AddGenerator { name, .. } => {
                // The generator and its defining relator were appended last.
                if self.generators.last().map(String::as_str) != Some(name.as_str()) {
                    return Err(mismatch("generator list changed since AddGenerator"));
                }
                self.generators.pop();
                self.relators.pop();
            }
            TietzeMove::RemoveGenerator {
                name,
                generator_index,
                relator_index,
                relator,
                rewritten,
                ..
            } => {
                if *generator_index > self.generators.len() || *relator_index > self.relators.len()
                {
                    return Err(mismatch("presentation shrank since RemoveGenerator"));
                }
                self.generators.insert(*generator_index, name.clone());
                self.relators.insert(*relator_index, relator.clone());
                for (i, old) in rewritten {
                    *self
                        .relators
                        .get_mut(*i)
                        .ok_or_else(|| mismatch("relator list changed since RemoveGenerator"))? =
                        old.clone();
                }
            }
            TietzeMove::AddRelator { word } => {
                if self.relators.last() != Some(word) {
                    return Err(mismatch("relator list changed since AddRelator"));
                }
                self.relators.pop();
            }
            TietzeMove::RemoveRelator { index, word } => {
                if *index > self.relators.len() {
                    return Err(mismatch("relator list shrank since RemoveRelator"));
                }
                self.relators.insert(*index, word.clone());
            }
            TietzeMove::SubstituteAll { rewritten, .. } => {
                for (i, old) in rewritten {
                    *self
                        .relators
                        .get_mut(*i)
                        .ok_or_else(|| mismatch("relator list changed since SubstituteAll"))? =
                        old.clone();
                }
            }
        }
        Ok(mv)
    }
}

/// How a generator of the second factor is identified during a merge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Identification {
    /// Literally the same element as a generator of the first factor; the
    /// generator is renamed away and contributes no relator.
    SameAs(String),
    /// Equal to a word of the first factor; the generator is kept and one
    /// identification relator is added.
    ExpressedBy(Word),
}

/// Glues two presentations: disjoint union of generators and relators,
/// modulo the given identifications of second-factor generators with
/// first-factor elements.  Relators that become literally identical (after
/// free reduction) to an earlier relator are dropped.
pub fn merge_presentations(
    p1: &Presentation,
    p2: &Presentation,
    idents: &[(String, Identification)],
) -> Result<Presentation, PresentationError> {
    for (i, (g, ident)) in idents.iter().enumerate() {
        if !p2.has_generator(g) {
            return Err(PresentationError::UnknownGenerator(g.clone()));
        }
        if idents[..i].iter().any(|(h, _)| h == g) {
            return Err(PresentationError::InvalidIdentification(format!(
                "{g} identified twice"
            )));
        }
        let target_ok = match ident {
            Identification::SameAs(t) => p1.has_generator(t),
            Identification::ExpressedBy(w) => w.letters().iter().all(|l| p1.has_generator(&l.gen)),
        };
        if !target_ok {
            return Err(PresentationError::InvalidIdentification(format!(
                "identification of {g} must target the first factor's generators"
            )));
        }
    }
    let same_as = |g: &str| -> Option<&str> {
        idents.iter().find_map(|(h, ident)| match ident {
            Identification::SameAs(t) if h == g => Some(t.as_str()),
            _ => None,
        })
    };

    let mut generators = p1.generators().to_vec();
    for g in p2.generators() {
        if same_as(g).is_some() {
            continue;
        }
        if generators.contains(g) {
            return Err(PresentationError::NameClash(g.clone()));
        }
        generators.push(g.clone());
    }

    let mut relators: Vec<Word> = vec![];
    let mut push_dedup = |w: Word| {
        let w = w.freely_reduced();
        if !relators.contains(&w) {
            relators.push(w);
        }
    };
    for r in p1.relators() {
        push_dedup(r.clone());
    }
    for r in p2.relators() {
        let renamed = Word(
            r.letters()
                .iter()
                .map(|l| Letter {
                    gen: same_as(&l.gen).unwrap_or(&l.gen).to_string(),
                    exp: l.exp,
                })
                .collect(),
        );
        push_dedup(renamed);
    }
    for (g, ident) in idents {
        if let Identification::ExpressedBy(w) = ident {
            push_dedup(Word::from_pairs(&[(g, 1)]).concat(&w.inverse()));
        }
    }
    Presentation::new(generators, relators)
}

/// A new generator for [`reduce_to_generating_set`]: a fresh name plus its
/// expression as a word in the old generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewGenerator {
    pub name: String,
    pub expression: Word,
}

/// Data for rewriting a presentation onto a new generating set.
///
/// `matches` lists pairs `(new, old)` where the new generator's expression
/// is literally that old generator; matched pairs save one relator each.
/// `old_expressions` must give, for every unmatched old generator, a word
/// in the new names that equals it in the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSet {
    pub new_generators: Vec<NewGenerator>,
    pub matches: Vec<(String, String)>,
    pub old_expressions: Vec<(String, Word)>,
}

/// Rewrites `p` onto the new generating set.
///
/// The result has exactly `|new_generators|` generators and exactly
/// `|relators| + |new_generators| - |matches|` relators: the old relators
/// rewritten through `old_expressions`, plus one defining relator per
/// unmatched new generator.  The full Tietze move sequence is recorded in
/// the result's trail.
pub fn reduce_to_generating_set(
    p: &Presentation,
    gs: &GeneratingSet,
) -> Result<Presentation, PresentationError> {
    let invalid = |msg: String| PresentationError::GeneratingSetInvalid(msg);
    // Validate names.
    for (i, ng) in gs.new_generators.iter().enumerate() {
        if ng.name.is_empty() || gs.new_generators[..i].iter().any(|o| o.name == ng.name) {
            return Err(invalid(format!("bad new generator name {:?}", ng.name)));
        }
        if p.has_generator(&ng.name) {
            return Err(invalid(format!(
                "new name {} clashes with an old generator",
                ng.name
            )));
        }
        for l in ng.expression.letters() {
            if !p.has_generator(&l.gen) {
                return Err(invalid(format!(
                    "expression for {} uses unknown generator {}",
                    ng.name, l.gen
                )));
            }
        }
    }
    let new_names: Vec<&str> = gs.new_generators.iter().map(|g| g.name.as_str()).collect();
    // Validate matches: (new, old) with a literal single-letter expression.
    for (i, (new, old)) in gs.matches.iter().enumerate() {
        let ng = gs
            .new_generators
            .iter()
            .find(|g| &g.name == new)
            .ok_or_else(|| invalid(format!("match references unknown new generator {new}")))?;
        if !p.has_generator(old) {
            return Err(invalid(format!(
                "match references unknown old generator {old}"
            )));
        }
        let literal = Word::from_pairs(&[(old.as_str(), 1)]);
        if ng.expression != literal {
            return Err(invalid(format!(
                "match ({new}, {old}) requires expression literally equal to {old}"
            )));
        }
        if gs.matches[..i].iter().any(|(n, o)| n == new || o == old) {
            return Err(invalid(format!("match ({new}, {old}) repeats a generator")));
        }
    }
    // Validate old expressions: exactly the unmatched old generators, with
    // words over the new names.
    let matched_old: Vec<&str> = gs.matches.iter().map(|(_, o)| o.as_str()).collect();
    for (old, w) in &gs.old_expressions {
        if !p.has_generator(old) {
            return Err(invalid(format!(
                "expression for unknown old generator {old}"
            )));
        }
        if matched_old.contains(&old.as_str()) {
            return Err(invalid(format!(
                "matched generator {old} must not get an explicit expression"
            )));
        }
        if gs.old_expressions.iter().filter(|(o, _)| o == old).count() > 1 {
            return Err(invalid(format!("duplicate expression for {old}")));
        }
        for l in w.letters() {
            if !new_names.contains(&l.gen.as_str()) {
                return Err(invalid(format!(
                    "expression for {old} must use only new names, found {}",
                    l.gen
                )));
            }
        }
    }
    let chi = |old: &str| -> Option<Word> {
        if let Some((new, _)) = gs.matches.iter().find(|(_, o)| o == old) {
            return Some(Word::from_pairs(&[(new.as_str(), 1)]));
        }
        gs.old_expressions
            .iter()
            .find(|(o, _)| o == old)
            .map(|(_, w)| w.clone())
    };
    let old_names = p.generators().to_vec();
    for old in &old_names {
        if chi(old).is_none() {
            return Err(invalid(format!("no expression for old generator {old}")));
        }
    }

    // Execute the move sequence: adjoin new generators, add the inverse
    // expressions as relators, then eliminate the old generators.
    let mut q = p.clone();
    for ng in &gs.new_generators {
        q.add_generator(&ng.name, ng.expression.clone())?;
    }
    for old in &old_names {
        if matched_old.contains(&old.as_str()) {
            continue;
        }
        let w = chi(old).expect("validated above");
        q.add_relator(Word::from_pairs(&[(old.as_str(), 1)]).concat(&w.inverse()))?;
    }
    for old in &old_names {
        if let Some((new, _)) = gs.matches.iter().find(|(_, o)| o == old) {
            // The defining relator of the matched new generator reads
            // new * old^-1; eliminate the old name through it.
            let index = q
                .relators()
                .iter()
                .position(|r| r.occurrences(old) == 1 && r.occurrences(new) == 1 && r.len() == 2)
                .ok_or_else(|| invalid(format!("lost defining relator for match {new}")))?;
            q.remove_generator_using(old, index)?;
        } else {
            // The freshly added relator old * chi(old)^-1 is the last one
            // mentioning old exactly once with only new names besides.
            let index = q
                .relators()
                .iter()
                .rposition(|r| {
                    r.occurrences(old) == 1
                        && r.letters()
                            .iter()
                            .all(|l| l.gen == *old || new_names.contains(&l.gen.as_str()))
                })
                .ok_or_else(|| invalid(format!("lost expression relator for {old}")))?;
            q.remove_generator_using(old, index)?;
        }
    }

    debug_assert_eq!(q.generators().len(), gs.new_generators.len());
    debug_assert_eq!(
        q.relators().len(),
        p.relators().len() + gs.new_generators.len() - gs.matches.len()
    );
    Ok(q)
}
