//! Words over the doubled alphabet `{σ0,σ1,σ2,σ̂0,σ̂1,σ̂2}`.
//!
//! Hatted letters mark where a factor sits; plain letters carry conjugator
//! and δ content. Three projections are used throughout:
//!
//! * `bar` unhats every letter (length preserved),
//! * `prime` drops the hatted letters,
//! * `hat` hats every letter.
//!
//! e.g. for `s0 h1 s2 h1`: `prime = s0 s2`, `bar = s0 s1 s2 s1`.

use std::fmt;
use std::ops::Deref;

use serde::Serialize;

use crate::braid::{is_delta_pair, Atom, BraidElement, PlainWord};
use crate::error::{Error, Result};
use crate::text::write_tokens;

/// Ordered by atom index, plain before hatted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HattedLetter {
    pub atom: Atom,
    pub hatted: bool,
}

impl HattedLetter {
    pub fn plain(atom: Atom) -> Self {
        HattedLetter { atom, hatted: false }
    }

    pub fn hatted(atom: Atom) -> Self {
        HattedLetter { atom, hatted: true }
    }

    pub fn tau(self, k: i64) -> Self {
        HattedLetter { atom: self.atom.tau(k), hatted: self.hatted }
    }
}

impl fmt::Display for HattedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.hatted { 'h' } else { 's' };
        write!(f, "{c}{}", self.atom.index())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HattedWord(Vec<HattedLetter>);

impl HattedWord {
    pub fn new(letters: Vec<HattedLetter>) -> Self {
        HattedWord(letters)
    }

    pub fn letters(&self) -> &[HattedLetter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<HattedLetter> {
        self.0
    }

    pub fn bar(&self) -> PlainWord {
        self.0.iter().map(|l| l.atom).collect()
    }

    pub fn prime(&self) -> PlainWord {
        self.0.iter().filter(|l| !l.hatted).map(|l| l.atom).collect()
    }

    pub fn hat(&self) -> HattedWord {
        self.0.iter().map(|l| HattedLetter::hatted(l.atom)).collect()
    }

    pub fn tau(&self, k: i64) -> HattedWord {
        self.0.iter().map(|l| l.tau(k)).collect()
    }

    pub fn hatted_count(&self) -> usize {
        self.0.iter().filter(|l| l.hatted).count()
    }

    /// `Some(q)` when the primed word equals `δ^q` in the braid group.
    pub fn prime_delta_exponent(&self) -> Option<u64> {
        let e = self.prime().value().delta_exponent()?;
        Some(e as u64)
    }

    /// Removes the first letter `a` and appends `τ^s(a)`.
    pub fn cyclic_shift(&self, s: i64) -> Result<HattedWord> {
        let (first, rest) = self.0.split_first().ok_or(Error::EmptyWord)?;
        let mut letters = rest.to_vec();
        letters.push(first.tau(s));
        Ok(HattedWord(letters))
    }
}

impl Deref for HattedWord {
    type Target = [HattedLetter];

    fn deref(&self) -> &[HattedLetter] {
        &self.0
    }
}

impl FromIterator<HattedLetter> for HattedWord {
    fn from_iter<I: IntoIterator<Item = HattedLetter>>(iter: I) -> Self {
        HattedWord(iter.into_iter().collect())
    }
}

impl fmt::Display for HattedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tokens(f, self.iter())
    }
}

impl Serialize for HattedWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A letter of the domain of [`f`]: a positive (possibly hatted) letter, or
/// the inverse of a plain one. Hatted inverses are not representable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SignedHattedLetter {
    Letter(HattedLetter),
    Inverse(Atom),
}

impl fmt::Display for SignedHattedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignedHattedLetter::Letter(l) => write!(f, "{l}"),
            SignedHattedLetter::Inverse(a) => write!(f, "{a}-"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct HattedSignedWord(Vec<SignedHattedLetter>);

impl HattedSignedWord {
    pub fn new(letters: Vec<SignedHattedLetter>) -> Self {
        HattedSignedWord(letters)
    }

    pub fn letters(&self) -> &[SignedHattedLetter] {
        &self.0
    }

    pub fn push(&mut self, l: SignedHattedLetter) {
        self.0.push(l);
    }

    /// The braid of the underlying signed word, hats ignored.
    pub fn bar_value(&self) -> BraidElement {
        use crate::braid::{SignedAtom, SignedWord};
        let w: SignedWord = self
            .0
            .iter()
            .map(|l| match *l {
                SignedHattedLetter::Letter(h) => SignedAtom::pos(h.atom),
                SignedHattedLetter::Inverse(a) => SignedAtom::neg(a),
            })
            .collect();
        w.evaluate()
    }
}

impl Deref for HattedSignedWord {
    type Target = [SignedHattedLetter];

    fn deref(&self) -> &[SignedHattedLetter] {
        &self.0
    }
}

impl FromIterator<SignedHattedLetter> for HattedSignedWord {
    fn from_iter<I: IntoIterator<Item = SignedHattedLetter>>(iter: I) -> Self {
        HattedSignedWord(iter.into_iter().collect())
    }
}

impl fmt::Display for HattedSignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tokens(f, self.iter())
    }
}

/// Eliminates inverse letters: `f(ε) = ε`, `f(x·A) = x·f(A)` for positive
/// `x`, and `f(x⁻¹·A) = τ(τ(x)·f(A))`.
///
/// The braid `w⁻¹·bar(f(w))` is `δ^m` with `m` the number of inverse letters.
pub fn f(w: &HattedSignedWord) -> HattedWord {
    // Built right to left. Stored letters are pre-shifted by -shift so the
    // pending τ^shift can be applied once at the end.
    let mut rev: Vec<HattedLetter> = Vec::with_capacity(w.len());
    let mut shift: i64 = 0;
    for l in w.iter().rev() {
        match *l {
            SignedHattedLetter::Letter(h) => rev.push(h.tau(-shift)),
            SignedHattedLetter::Inverse(x) => {
                shift += 1;
                rev.push(HattedLetter::plain(x.tau(2)).tau(-shift));
            }
        }
    }
    rev.iter().rev().map(|l| l.tau(shift)).collect()
}

/// A matched pair of plain positions with nesting exponent `r`.
/// Positions are 0-based; `Display` prints them 1-based as `(i,j,r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MatchingPair {
    pub i: usize,
    pub j: usize,
    pub r: u64,
}

impl fmt::Display for MatchingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i + 1, self.j + 1, self.r)
    }
}

fn require_positive_delta_power(w: &HattedWord) -> Result<u64> {
    match w.prime_delta_exponent() {
        Some(q) if q > 0 => Ok(q),
        _ => Err(Error::NotDeltaPower(w.prime().value())),
    }
}

/// Whether the plain letters at positions `i < j` match in `w`: with `B`
/// the primed segment strictly between them, `B = δ^r` and
/// `a_i·B·a_j = δ^(r+1)`. Returns `r`.
pub fn matches(w: &HattedWord, i: usize, j: usize) -> Result<Option<u64>> {
    require_positive_delta_power(w)?;
    Ok(matches_unchecked(w, i, j))
}

pub(crate) fn matches_unchecked(w: &HattedWord, i: usize, j: usize) -> Option<u64> {
    if i >= j || j >= w.len() || w[i].hatted || w[j].hatted {
        return None;
    }
    let interior: Vec<Atom> = w[i + 1..j].iter().filter(|l| !l.hatted).map(|l| l.atom).collect();
    let r = BraidElement::from_positive(&interior).delta_exponent()?;
    if r < 0 {
        return None;
    }
    let mut segment = Vec::with_capacity(interior.len() + 2);
    segment.push(w[i].atom);
    segment.extend_from_slice(&interior);
    segment.push(w[j].atom);
    let full = BraidElement::from_positive(&segment);
    (full.delta_exponent() == Some(r + 1)).then_some(r as u64)
}

/// A balanced perfect matching of the plain positions of `w`, every pair of
/// which satisfies [`matches`].
///
/// Innermost pairs are taken first: the leftmost pair of positions that are
/// adjacent among the still-unmatched plain positions and match is removed,
/// and the scan resumes just before it.
pub fn parenthesize(w: &HattedWord) -> Result<Vec<MatchingPair>> {
    require_positive_delta_power(w)?;
    let mut open: Vec<usize> = (0..w.len()).filter(|&i| !w[i].hatted).collect();
    let mut pairs = Vec::with_capacity(open.len() / 2);
    let mut k = 0;
    while !open.is_empty() {
        let found =
            (k..open.len().saturating_sub(1)).find_map(|t| matches_unchecked(w, open[t], open[t + 1]).map(|r| (t, r)));
        let Some((t, r)) = found else {
            return Err(Error::Consistency(format!("no balanced matching for `{w}`")));
        };
        pairs.push(MatchingPair { i: open[t], j: open[t + 1], r });
        open.drain(t..t + 2);
        k = t.saturating_sub(1);
    }
    pairs.sort();
    Ok(pairs)
}

/// The same matching computed by a single stack pass, without calling
/// [`matches`]: a plain letter closes the pair on top of the stack when,
/// after undoing the `δ`s closed in between, the two form a δ-pair.
pub fn parenthesize_by_stack(w: &HattedWord) -> Result<Vec<MatchingPair>> {
    require_positive_delta_power(w)?;
    let mut stack: Vec<(usize, Atom, u64)> = Vec::new();
    let mut closed: u64 = 0;
    let mut pairs = Vec::new();
    for (pos, l) in w.iter().enumerate() {
        if l.hatted {
            continue;
        }
        let shifted = l.atom.tau(-(closed as i64));
        match stack.last() {
            Some(&(i, top, at)) if is_delta_pair(top, shifted) => {
                stack.pop();
                pairs.push(MatchingPair { i, j: pos, r: closed - at });
                closed += 1;
            }
            _ => stack.push((pos, shifted, closed)),
        }
    }
    if !stack.is_empty() {
        return Err(Error::Consistency(format!("unbalanced stack for `{w}`")));
    }
    pairs.sort();
    Ok(pairs)
}
