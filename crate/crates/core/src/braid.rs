//! Exact arithmetic in the three-strand braid group, presented with the
//! band generators `σ0, σ1, σ2` subject to `δ = σ2σ1 = σ1σ0 = σ0σ2`.
//!
//! Every element is stored in right normal form `U·δ^(-p)` where `U` is a
//! positive word without an adjacent pair equal to `δ`. Because all three
//! relation sides have length two, a positive word equal to `δ` has length
//! exactly two, so δ-freeness is the local predicate [`is_delta_pair`].
//!
//! Conjugation by `δ` shifts indices: `δ⁻¹·σi·δ = σ(i+1)`. This is the
//! automorphism exposed as `tau` on atoms, words and elements.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// One of the band generators `σ0, σ1, σ2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(u8);

impl Atom {
    pub const S0: Atom = Atom(0);
    pub const S1: Atom = Atom(1);
    pub const S2: Atom = Atom(2);
    pub const ALL: [Atom; 3] = [Atom::S0, Atom::S1, Atom::S2];

    pub fn new(index: u8) -> Option<Atom> {
        (index < 3).then_some(Atom(index))
    }

    pub fn index(self) -> u8 {
        self.0
    }

    /// `σi ↦ σ(i+k mod 3)`.
    pub fn tau(self, k: i64) -> Atom {
        Atom((i64::from(self.0) + k).rem_euclid(3) as u8)
    }

    /// The unique atom `c` with `self·c = δ`; equivalently `self⁻¹ = c·δ⁻¹`.
    pub fn complement(self) -> Atom {
        self.tau(-1)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

/// True exactly for `(σ2,σ1)`, `(σ1,σ0)` and `(σ0,σ2)`.
pub fn is_delta_pair(x: Atom, y: Atom) -> bool {
    y == x.complement()
}

/// A positive word over the band generators.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlainWord(Vec<Atom>);

impl PlainWord {
    pub fn new(letters: Vec<Atom>) -> Self {
        PlainWord(letters)
    }

    pub fn empty() -> Self {
        PlainWord(Vec::new())
    }

    pub fn letters(&self) -> &[Atom] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Atom> {
        self.0
    }

    pub fn tau(&self, k: i64) -> PlainWord {
        PlainWord(self.0.iter().map(|a| a.tau(k)).collect())
    }

    pub fn is_delta_free(&self) -> bool {
        !self.0.windows(2).any(|w| is_delta_pair(w[0], w[1]))
    }

    /// The word `(σ2σ1)^q`.
    pub fn delta_power(q: usize) -> PlainWord {
        PlainWord([Atom::S2, Atom::S1].repeat(q))
    }

    pub fn to_signed(&self) -> SignedWord {
        SignedWord(self.0.iter().map(|&a| SignedAtom::pos(a)).collect())
    }

    pub fn value(&self) -> BraidElement {
        BraidElement::from_positive(&self.0)
    }
}

impl Deref for PlainWord {
    type Target = [Atom];

    fn deref(&self) -> &[Atom] {
        &self.0
    }
}

impl From<Vec<Atom>> for PlainWord {
    fn from(letters: Vec<Atom>) -> Self {
        PlainWord(letters)
    }
}

impl FromIterator<Atom> for PlainWord {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        PlainWord(iter.into_iter().collect())
    }
}

/// A letter of a signed word: `σi` or `σi⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedAtom {
    pub atom: Atom,
    pub inverse: bool,
}

impl SignedAtom {
    pub fn pos(atom: Atom) -> Self {
        SignedAtom { atom, inverse: false }
    }

    pub fn neg(atom: Atom) -> Self {
        SignedAtom { atom, inverse: true }
    }

    pub fn inverted(self) -> Self {
        SignedAtom { atom: self.atom, inverse: !self.inverse }
    }
}

impl fmt::Display for SignedAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}-", self.atom)
        } else {
            write!(f, "{}", self.atom)
        }
    }
}

/// A word in the band generators and their inverses.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedWord(Vec<SignedAtom>);

impl SignedWord {
    pub fn new(letters: Vec<SignedAtom>) -> Self {
        SignedWord(letters)
    }

    pub fn empty() -> Self {
        SignedWord(Vec::new())
    }

    pub fn letters(&self) -> &[SignedAtom] {
        &self.0
    }

    /// The formal inverse: reversed, with every sign flipped.
    pub fn inverse(&self) -> SignedWord {
        SignedWord(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn concat(&self, other: &SignedWord) -> SignedWord {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        SignedWord(letters)
    }

    /// Cancels adjacent `x x⁻¹` and `x⁻¹ x` pairs.
    pub fn free_reduce(&self) -> SignedWord {
        let mut out: Vec<SignedAtom> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverted()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        SignedWord(out)
    }

    pub fn signed_length(&self) -> i64 {
        self.0.iter().map(|l| if l.inverse { -1 } else { 1 }).sum()
    }

    pub fn evaluate(&self) -> BraidElement {
        evaluate(self)
    }
}

impl Deref for SignedWord {
    type Target = [SignedAtom];

    fn deref(&self) -> &[SignedAtom] {
        &self.0
    }
}

impl FromIterator<SignedAtom> for SignedWord {
    fn from_iter<I: IntoIterator<Item = SignedAtom>>(iter: I) -> Self {
        SignedWord(iter.into_iter().collect())
    }
}

/// Rewrites a positive word to `(V, q)` with `V` δ-free and `w = V·δ^q`.
///
/// Removes the leftmost adjacent δ-pair first, using `A·δ·B = A·τ⁻¹(B)·δ`
/// for the suffix. Since everything left of the leftmost pair is δ-free,
/// the rewrite is a single left-to-right stack pass; the pending `τ⁻¹`
/// shifts are applied lazily to each incoming letter.
pub fn normalize_positive(w: &[Atom]) -> (PlainWord, u64) {
    let mut out: Vec<Atom> = Vec::with_capacity(w.len());
    let mut q: u64 = 0;
    for &x in w {
        let y = x.tau(-(q as i64));
        match out.last() {
            Some(&top) if is_delta_pair(top, y) => {
                out.pop();
                q += 1;
            }
            _ => out.push(y),
        }
    }
    (PlainWord(out), q)
}

/// A braid in right normal form `U·δ^(-p)`.
///
/// The fields are private so that the δ-freeness of `U` always holds; the
/// pair is therefore a canonical key for equality and hashing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BraidElement {
    u: PlainWord,
    p: i64,
}

/// Running product `word·δ^(-shift)` used by multiplication and evaluation.
struct Accumulator {
    word: Vec<Atom>,
    shift: i64,
}

impl Accumulator {
    fn new(start: &BraidElement) -> Self {
        Accumulator { word: start.u.0.clone(), shift: start.p }
    }

    fn push_pos(&mut self, x: Atom) {
        // δ^(-n)·x = τ^n(x)·δ^(-n)
        self.word.push(x.tau(self.shift));
    }

    fn push_inv(&mut self, x: Atom) {
        // x⁻¹ = c·δ⁻¹
        self.word.push(x.complement().tau(self.shift));
        self.shift += 1;
    }

    fn finish(self) -> BraidElement {
        let (u, q) = normalize_positive(&self.word);
        BraidElement { u, p: self.shift - q as i64 }
    }
}

impl BraidElement {
    pub fn identity() -> Self {
        BraidElement { u: PlainWord::empty(), p: 0 }
    }

    /// `δ^k`, stored as `(ε, -k)`.
    pub fn delta_power(k: i64) -> Self {
        BraidElement { u: PlainWord::empty(), p: -k }
    }

    pub fn delta() -> Self {
        Self::delta_power(1)
    }

    pub fn atom(x: Atom) -> Self {
        BraidElement { u: PlainWord(vec![x]), p: 0 }
    }

    pub fn from_positive(w: &[Atom]) -> Self {
        let (u, q) = normalize_positive(w);
        BraidElement { u, p: -(q as i64) }
    }

    /// Builds an element from a claimed normal form, checking δ-freeness.
    pub fn from_normal_form(u: PlainWord, p: i64) -> Option<Self> {
        u.is_delta_free().then_some(BraidElement { u, p })
    }

    pub fn u(&self) -> &PlainWord {
        &self.u
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_empty() && self.p == 0
    }

    /// `Some(k)` when the element equals `δ^k`.
    pub fn delta_exponent(&self) -> Option<i64> {
        self.u.is_empty().then_some(-self.p)
    }

    pub fn mul(&self, other: &BraidElement) -> BraidElement {
        let mut acc = Accumulator::new(self);
        acc.word.reserve(other.u.len());
        for &x in other.u.iter() {
            acc.push_pos(x);
        }
        acc.shift += other.p;
        acc.finish()
    }

    pub fn inv(&self) -> BraidElement {
        // (U·δ^(-p))⁻¹ = δ^p·U⁻¹
        let mut acc = Accumulator { word: Vec::with_capacity(self.u.len()), shift: -self.p };
        for &x in self.u.iter().rev() {
            acc.push_inv(x);
        }
        acc.finish()
    }

    /// `a·b·a⁻¹`.
    pub fn conjugate(&self, by: &BraidElement) -> BraidElement {
        by.mul(self).mul(&by.inv())
    }

    /// Conjugation by `δ^k`; `δ` is fixed by the shift, so only `U` moves.
    pub fn tau(&self, k: i64) -> BraidElement {
        BraidElement { u: self.u.tau(k), p: self.p }
    }

    pub fn is_positive(&self) -> bool {
        self.p <= 0
    }

    /// Image under the letter-count homomorphism to ℤ.
    pub fn band_length(&self) -> i64 {
        self.u.len() as i64 - 2 * self.p
    }

    /// The normal form written out as a signed word: `U` followed by
    /// `(σ1⁻¹σ2⁻¹)^p` (or `(σ2σ1)^(-p)` when `p < 0`).
    pub fn to_signed_word(&self) -> SignedWord {
        let mut letters: Vec<SignedAtom> = self.u.iter().map(|&a| SignedAtom::pos(a)).collect();
        if self.p > 0 {
            for _ in 0..self.p {
                letters.push(SignedAtom::neg(Atom::S1));
                letters.push(SignedAtom::neg(Atom::S2));
            }
        } else {
            for _ in 0..-self.p {
                letters.push(SignedAtom::pos(Atom::S2));
                letters.push(SignedAtom::pos(Atom::S1));
            }
        }
        SignedWord(letters)
    }

    /// A positive word representing the element: `U·(σ2σ1)^(-p)`.
    pub fn positive_word(&self) -> Result<PlainWord> {
        if !self.is_positive() {
            return Err(Error::NotPositive(self.clone()));
        }
        let mut letters = self.u.0.clone();
        letters.extend(PlainWord::delta_power((-self.p) as usize).0);
        Ok(PlainWord(letters))
    }
}

impl fmt::Display for BraidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.u.is_empty() {
            write!(f, "| {}", self.p)
        } else {
            write!(f, "{} | {}", self.u, self.p)
        }
    }
}

/// Canonical form of a product of signed letters.
pub fn evaluate(w: &SignedWord) -> BraidElement {
    let mut acc = Accumulator { word: Vec::with_capacity(w.len()), shift: 0 };
    for l in w.iter() {
        if l.inverse {
            acc.push_inv(l.atom);
        } else {
            acc.push_pos(l.atom);
        }
    }
    acc.finish()
}

/// All positive words equal to `a`, found as the closure of one
/// representative under single relation applications.
pub fn positive_words_equal_to(a: &BraidElement) -> Result<BTreeSet<PlainWord>> {
    let start = a.positive_word()?;
    Ok(relation_closure(start))
}

pub(crate) fn relation_closure(start: PlainWord) -> BTreeSet<PlainWord> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(w) = queue.pop_front() {
        for i in 0..w.len().saturating_sub(1) {
            if !is_delta_pair(w[i], w[i + 1]) {
                continue;
            }
            for x in Atom::ALL {
                if x == w[i] {
                    continue;
                }
                let mut next = w.0.clone();
                next[i] = x;
                next[i + 1] = x.complement();
                let next = PlainWord(next);
                if !seen.contains(&next) {
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> PlainWord {
        s.parse().unwrap()
    }

    fn el(s: &str) -> BraidElement {
        s.parse::<SignedWord>().unwrap().evaluate()
    }

    #[test]
    fn delta_pairs() {
        assert!(is_delta_pair(Atom::S2, Atom::S1));
        assert!(is_delta_pair(Atom::S1, Atom::S0));
        assert!(is_delta_pair(Atom::S0, Atom::S2));
        assert!(!is_delta_pair(Atom::S1, Atom::S1));
        assert!(!is_delta_pair(Atom::S1, Atom::S2));
        assert_eq!(normalize_positive(&w("s1 s2")), (w("s1 s2"), 0));
    }

    #[test]
    fn tau_on_atoms() {
        assert_eq!(Atom::S0.tau(1), Atom::S1);
        assert_eq!(Atom::S2.tau(1), Atom::S0);
        assert_eq!(Atom::S0.tau(3), Atom::S0);
        assert_eq!(Atom::S0.tau(-1), Atom::S2);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_positive(&w("s0 s2")), (PlainWord::empty(), 1));
        assert_eq!(normalize_positive(&[]), (PlainWord::empty(), 0));
        assert_eq!(normalize_positive(&w("s2 s0 s2")), (w("s2"), 1));
        assert_eq!(normalize_positive(&w("s1 s0 s2")), (w("s1"), 1));
    }

    #[test]
    fn mul_examples() {
        let d = BraidElement::delta();
        assert!(d.mul(&BraidElement::delta_power(-1)).is_identity());
        assert_eq!(BraidElement::atom(Atom::S1).mul(&BraidElement::atom(Atom::S0)), d);
    }

    #[test]
    fn inv_examples() {
        assert!(BraidElement::identity().inv().is_identity());
        let s2 = BraidElement::atom(Atom::S2);
        let inv = s2.inv();
        assert_eq!(inv, BraidElement::from_normal_form(w("s1"), 1).unwrap());
        assert!(s2.mul(&inv).is_identity());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(el("s2 s1"), BraidElement::delta());
        let word: SignedWord = "s1 s0 s2- s0-".parse().unwrap();
        assert!(word.evaluate().mul(&word.inverse().evaluate()).is_identity());
    }

    #[test]
    fn positivity_and_length() {
        let d = BraidElement::delta();
        assert!(d.is_positive());
        assert_eq!(d.band_length(), 2);
        let s2inv = BraidElement::from_normal_form(w("s1"), 1).unwrap();
        assert!(!s2inv.is_positive());
        assert_eq!(s2inv.band_length(), -1);
    }

    #[test]
    fn equal_positive_words() {
        let id = positive_words_equal_to(&BraidElement::identity()).unwrap();
        assert_eq!(id.into_iter().collect::<Vec<_>>(), vec![PlainWord::empty()]);
        let d = positive_words_equal_to(&BraidElement::delta()).unwrap();
        let expected: BTreeSet<_> = ["s2 s1", "s1 s0", "s0 s2"].iter().map(|s| w(s)).collect();
        assert_eq!(d, expected);
        let neg = BraidElement::delta_power(-1);
        assert!(matches!(positive_words_equal_to(&neg), Err(Error::NotPositive(_))));
    }

    #[test]
    fn signed_word_of_normal_form_round_trips() {
        for s in ["", "s1", "s2 s1", "s1- s2-", "s0 s0 s1- s2 s2-", "s2- s2- s0"] {
            let x = el(s);
            assert_eq!(x.to_signed_word().evaluate(), x, "{s}");
        }
    }

    #[test]
    fn display_normal_form() {
        assert_eq!(el("s2 s1").to_string(), "| -1");
        assert_eq!(el("").to_string(), "| 0");
        assert_eq!(el("s2 s0 s2").to_string(), "s2 | -1");
    }

    #[test]
    fn free_reduction() {
        let word: SignedWord = "s1 s0 s0- s2 s2- s1- s2".parse().unwrap();
        assert_eq!(word.free_reduce().to_string(), "s2");
    }
}
