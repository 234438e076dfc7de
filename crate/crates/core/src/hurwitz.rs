//! Quasipositive factorizations, the Hurwitz action and the bracket of a
//! vertex.
//!
//! A factor is stored as `(A, x)` meaning `A·x·A⁻¹`, so every factor is a
//! conjugate of an atom by construction. Tuples are compared by the normal
//! forms of their factor values; conjugator words are not unique.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::braid::{is_delta_pair, Atom, BraidElement, SignedAtom, SignedWord};
use crate::error::{Error, ParseError, Result};
use crate::graph::{Edge, EdgeKind, Vertex, Witness};
use crate::hatted::{f, HattedLetter, HattedSignedWord, HattedWord, SignedHattedLetter};
use crate::text::{parse_token, strip_comment, Token};

/// Node budget used by the CLI and the cross-checks.
pub const DEFAULT_BUDGET: usize = 50_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factor {
    pub conjugator: SignedWord,
    pub atom: Atom,
}

impl Factor {
    pub fn new(conjugator: SignedWord, atom: Atom) -> Self {
        Factor { conjugator, atom }
    }

    pub fn bare(atom: Atom) -> Self {
        Factor { conjugator: SignedWord::empty(), atom }
    }

    pub fn value(&self) -> BraidElement {
        BraidElement::atom(self.atom).conjugate(&self.conjugator.evaluate())
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conjugator.is_empty() {
            write!(f, ": {}", self.atom)
        } else {
            write!(f, "{} : {}", self.conjugator, self.atom)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<Factor>,
    pub target: BraidElement,
}

/// Why a factorization is not one of its declared target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Invalid {
    LengthMismatch { expected: i64, found: usize },
    ProductMismatch { product: BraidElement, target: BraidElement },
    TargetMismatch { declared: BraidElement, expected: BraidElement },
}

impl fmt::Display for Invalid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invalid::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: {found} factors, band length of target is {expected}")
            }
            Invalid::ProductMismatch { product, target } => {
                write!(f, "product mismatch: factors multiply to {product}, target is {target}")
            }
            Invalid::TargetMismatch { declared, expected } => {
                write!(f, "target mismatch: file declares {declared}, expected {expected}")
            }
        }
    }
}

impl Factorization {
    pub fn new(factors: Vec<Factor>, target: BraidElement) -> Self {
        Factorization { factors, target }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn values(&self) -> Vec<BraidElement> {
        self.factors.iter().map(Factor::value).collect()
    }

    pub fn product(&self) -> BraidElement {
        self.values().iter().fold(BraidElement::identity(), |acc, v| acc.mul(v))
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "target: {}", self.target.to_signed_word())?;
        for factor in &self.factors {
            writeln!(f, "{factor}")?;
        }
        Ok(())
    }
}

pub fn validate(fact: &Factorization) -> Result<(), Invalid> {
    let expected = fact.target.band_length();
    if expected != fact.len() as i64 {
        return Err(Invalid::LengthMismatch { expected, found: fact.len() });
    }
    let product = fact.product();
    if product != fact.target {
        return Err(Invalid::ProductMismatch { product, target: fact.target.clone() });
    }
    Ok(())
}

/// [`validate`], after checking that the declared target is `x`.
pub fn validate_against(fact: &Factorization, x: &BraidElement) -> Result<(), Invalid> {
    if &fact.target != x {
        return Err(Invalid::TargetMismatch { declared: fact.target.clone(), expected: x.clone() });
    }
    validate(fact)
}

/// Factor-wise value equality.
pub fn values_equal(a: &Factorization, b: &Factorization) -> bool {
    a.len() == b.len() && a.factors.iter().zip(&b.factors).all(|(x, y)| x.value() == y.value())
}

/// A generator `Σ_index` (1-based) or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub index: usize,
    pub inverse: bool,
}

impl Move {
    pub fn forward(index: usize) -> Self {
        Move { index, inverse: false }
    }

    pub fn backward(index: usize) -> Self {
        Move { index, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Move { index: self.index, inverse: !self.inverse }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}{}", self.index, if self.inverse { "-" } else { "" })
    }
}

/// Moves applied left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MoveSequence(pub Vec<Move>);

impl MoveSequence {
    pub fn moves(&self) -> &[Move] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> MoveSequence {
        MoveSequence(self.0.iter().rev().map(|m| m.inverted()).collect())
    }

    pub fn extend(&mut self, other: &MoveSequence) {
        self.0.extend_from_slice(&other.0);
    }
}

impl fmt::Display for MoveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Forward: `(X_i, X_{i+1}) ↦ (X_i·X_{i+1}·X_i⁻¹, X_i)`.
/// Inverse: `(X_i, X_{i+1}) ↦ (X_{i+1}, X_{i+1}⁻¹·X_i·X_{i+1})`.
/// The new conjugator is written as the normal form of its value.
pub fn sigma_move(fact: &Factorization, mv: Move) -> Result<Factorization> {
    let k = fact.len();
    if mv.index == 0 || mv.index >= k {
        return Err(Error::MoveOutOfRange { index: mv.index, len: k });
    }
    let (i, j) = (mv.index - 1, mv.index);
    let (a, b) = (&fact.factors[i], &fact.factors[j]);
    let (left, right) = if !mv.inverse {
        let conj = a.value().mul(&b.conjugator.evaluate());
        (Factor::new(conj.to_signed_word(), b.atom), a.clone())
    } else {
        let conj = b.value().inv().mul(&a.conjugator.evaluate());
        (b.clone(), Factor::new(conj.to_signed_word(), a.atom))
    };
    let mut factors = fact.factors.clone();
    factors[i] = left;
    factors[j] = right;
    Ok(Factorization { factors, target: fact.target.clone() })
}

pub fn apply_moves(fact: &Factorization, moves: &MoveSequence) -> Result<Factorization> {
    let mut out = fact.clone();
    for &m in moves.moves() {
        out = sigma_move(&out, m)?;
    }
    Ok(out)
}

/// The factorization `[W]`: the `i`-th factor is `A_i·x_i·A_i⁻¹` with `x_i`
/// the `i`-th hatted letter and `A_i` the plain letters before it. The
/// target is `bar(W)·δ^(-n)` where `prime(W) = δ^n`.
pub fn bracket(w: &HattedWord) -> Result<Factorization> {
    let n = w.prime_delta_exponent().ok_or_else(|| Error::NotDeltaPower(w.prime().value()))?;
    let mut prefix = Vec::new();
    let mut factors = Vec::new();
    for l in w.iter() {
        if l.hatted {
            factors.push(Factor::new(SignedWord::new(prefix.clone()), l.atom));
        } else {
            prefix.push(SignedAtom::pos(l.atom));
        }
    }
    let target = w.bar().value().mul(&BraidElement::delta_power(-(n as i64)));
    Ok(Factorization { factors, target })
}

/// `f(A_1·x̂_1·A_1⁻¹ ⋯ A_k·x̂_k·A_k⁻¹)`, a vertex whose bracket is
/// factor-wise equal to `fact`.
///
/// The weight is `p + m` below the exponent of the primed part, with `m` the
/// number of inverse letters; it is nonnegative even when `p < 0`.
pub fn factorization_to_vertex(fact: &Factorization) -> Result<Vertex> {
    let mut word = HattedSignedWord::default();
    for factor in &fact.factors {
        for &s in factor.conjugator.iter() {
            word.push(signed_letter(s));
        }
        word.push(SignedHattedLetter::Letter(HattedLetter::hatted(factor.atom)));
        for &s in factor.conjugator.inverse().iter() {
            word.push(signed_letter(s));
        }
    }
    let image = f(&word);
    Vertex::over(image, &fact.target)
        .map_err(|_| Error::Consistency(format!("f-image of {} is not a vertex over {}", word, fact.target)))
}

fn signed_letter(s: SignedAtom) -> SignedHattedLetter {
    if s.inverse {
        SignedHattedLetter::Inverse(s.atom)
    } else {
        SignedHattedLetter::Letter(HattedLetter::plain(s.atom))
    }
}

/// Closure of a tuple under the Hurwitz action, on factor values.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub tuples: HashSet<Vec<BraidElement>>,
    /// False if the budget stopped the search.
    pub saturated: bool,
}

impl Orbit {
    pub fn contains(&self, fact: &Factorization) -> bool {
        self.tuples.contains(&fact.values())
    }
}

fn neighbours(t: &[BraidElement]) -> impl Iterator<Item = Vec<BraidElement>> + '_ {
    (0..t.len().saturating_sub(1)).flat_map(move |i| {
        let fwd = {
            let mut v = t.to_vec();
            v[i] = t[i + 1].conjugate(&t[i]);
            v[i + 1] = t[i].clone();
            v
        };
        let back = {
            let mut v = t.to_vec();
            v[i] = t[i + 1].clone();
            v[i + 1] = t[i].conjugate(&t[i + 1].inv());
            v
        };
        [fwd, back]
    })
}

/// Breadth-first closure holding at most `budget` tuples (the start
/// counts). A zero budget returns just the start, unsaturated.
pub fn orbit_bfs(fact: &Factorization, budget: usize) -> Orbit {
    let start = fact.values();
    let mut tuples = HashSet::from([start.clone()]);
    if budget == 0 {
        return Orbit { tuples, saturated: false };
    }
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        for next in neighbours(&t) {
            if tuples.contains(&next) {
                continue;
            }
            if tuples.len() >= budget {
                return Orbit { tuples, saturated: false };
            }
            tuples.insert(next.clone());
            queue.push_back(next);
        }
    }
    Orbit { tuples, saturated: true }
}

/// Which of `targets` the orbit of `fact` reaches, searching breadth-first
/// and stopping once all are found or `budget` tuples have been seen.
/// The flag is true when the whole orbit was exhausted.
pub fn orbit_reaches(fact: &Factorization, targets: &[Vec<BraidElement>], budget: usize) -> (Vec<bool>, bool) {
    let start = fact.values();
    let mut found: Vec<bool> = targets.iter().map(|t| *t == start).collect();
    let mut missing = found.iter().filter(|f| !**f).count();
    let mut tuples = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        if missing == 0 {
            return (found, false);
        }
        for next in neighbours(&t) {
            if tuples.contains(&next) {
                continue;
            }
            if tuples.len() >= budget {
                return (found, false);
            }
            for (k, target) in targets.iter().enumerate() {
                if !found[k] && *target == next {
                    found[k] = true;
                    missing -= 1;
                }
            }
            tuples.insert(next.clone());
            queue.push_back(next);
        }
    }
    (found, true)
}

fn hats_through(w: &HattedWord, end: usize) -> usize {
    w[..=end].iter().filter(|l| l.hatted).count()
}

/// Moves taking `[from]` to `[to]` across an h1, h2 or h3 edge.
///
/// For h1/h2, with `W` the endpoint carrying the hat at the left swap
/// position, `m` the ordinal of that hat and `s − 1` the number of hats of
/// `W` up to the right position, the sequence from `[W]` is
/// `Σ_m, …, Σ_{s−2}`, empty when `s = m + 1`; from the other endpoint it is
/// inverted.
///
/// For h3 the factors of the rewritten run share one conjugator, so each
/// relation step `(a, b) → (c, d)` inside the run is a single move:
/// `Σ` when `d = a`, `Σ⁻¹` when `c = b`. A shortest relation path between
/// the two runs is used.
pub fn edge_to_moves(edge: &Edge) -> Result<MoveSequence> {
    match (edge.kind, &edge.witness) {
        (EdgeKind::H3, &Witness::Run { start, end }) => run_moves(&edge.from.word, &edge.to.word, start, end),
        (EdgeKind::H1 | EdgeKind::H2, &Witness::Swap { left, right }) => {
            let from = &edge.from.word;
            let w_is_from = from[left].hatted;
            let w = if w_is_from { from } else { &edge.to.word };
            let m = hats_through(w, left);
            let s = hats_through(w, right) + 1;
            let seq = MoveSequence((m..s - 1).map(Move::forward).collect());
            Ok(if w_is_from { seq } else { seq.inverse() })
        }
        (kind, _) => Err(Error::NoCertificate(kind.as_str())),
    }
}

fn run_moves(from: &HattedWord, to: &HattedWord, start: usize, end: usize) -> Result<MoveSequence> {
    let word = |w: &HattedWord| -> Vec<Atom> { w[start..end].iter().map(|l| l.atom).collect() };
    let (source, goal) = (word(from), word(to));
    let first = if start == 0 { 1 } else { hats_through(from, start - 1) + 1 };
    let mut prev: HashMap<Vec<Atom>, (Vec<Atom>, Move)> = HashMap::new();
    let mut queue = VecDeque::from([source.clone()]);
    let mut seen = HashSet::from([source.clone()]);
    while let Some(w) = queue.pop_front() {
        if w == goal {
            let mut moves = Vec::new();
            let mut cur = w;
            while let Some((p, mv)) = prev.get(&cur) {
                moves.push(*mv);
                cur = p.clone();
            }
            moves.reverse();
            return Ok(MoveSequence(moves));
        }
        for t in 0..w.len().saturating_sub(1) {
            let (a, b) = (w[t], w[t + 1]);
            if !is_delta_pair(a, b) {
                continue;
            }
            // (a, b) → (a·b·a⁻¹, a) and (a, b) → (b, b⁻¹·a·b)
            let steps =
                [((b.complement(), a), Move::forward(first + t)), ((b, b.complement()), Move::backward(first + t))];
            for (pair, mv) in steps {
                let mut next = w.clone();
                next[t] = pair.0;
                next[t + 1] = pair.1;
                if seen.insert(next.clone()) {
                    prev.insert(next.clone(), (w.clone(), mv));
                    queue.push_back(next);
                }
            }
        }
    }
    Err(Error::Consistency(format!("hatted runs of `{from}` and `{to}` are not equal")))
}

/// A parsed factorization file; the target line is optional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationFile {
    pub target: Option<SignedWord>,
    pub factors: Vec<Factor>,
}

impl FactorizationFile {
    /// Targets the declared word if present, else `x`.
    pub fn into_factorization(self, x: &BraidElement) -> Factorization {
        let target = self.target.map(|t| t.evaluate()).unwrap_or_else(|| x.clone());
        Factorization { factors: self.factors, target }
    }
}

/// Parses the `conjugator : atom` line format.
///
/// ```text
/// target: s2 s0 s1 s1 s1- s2-   # optional, first line only
/// s2 : s0
/// : s1
/// ```
pub fn parse_factorization(input: &str) -> Result<FactorizationFile, ParseError> {
    let mut target = None;
    let mut factors = Vec::new();
    let mut seen_line = false;
    for (n, raw) in input.lines().enumerate() {
        let line = n + 1;
        let text = strip_comment(raw).trim();
        if text.is_empty() {
            continue;
        }
        if let Some(rest) = text.strip_prefix("target").and_then(|r| r.trim_start().strip_prefix(':')) {
            if seen_line {
                return Err(ParseError::LateTarget { line });
            }
            seen_line = true;
            target = Some(signed_tokens(rest, line)?);
            continue;
        }
        seen_line = true;
        let (conj, atom) = text.split_once(':').ok_or(ParseError::MissingSeparator { line })?;
        let conjugator = signed_tokens(conj, line)?;
        let mut toks = atom.split_whitespace();
        let atom = match (toks.next(), toks.next()) {
            (Some(tok), None) => match parse_token(tok, line) {
                Ok(Token::Plain(a)) => a,
                _ => return Err(ParseError::BadAtom { found: atom.trim().to_string(), line }),
            },
            _ => return Err(ParseError::BadAtom { found: atom.trim().to_string(), line }),
        };
        factors.push(Factor::new(conjugator, atom));
    }
    Ok(FactorizationFile { target, factors })
}

fn signed_tokens(text: &str, line: usize) -> Result<SignedWord, ParseError> {
    text.split_whitespace()
        .map(|tok| match parse_token(tok, line)? {
            Token::Plain(a) => Ok(SignedAtom::pos(a)),
            Token::Inverse(a) => Ok(SignedAtom::neg(a)),
            Token::Hatted(_) => Err(ParseError::Disallowed { token: tok.to_string(), line, context: "a conjugator" }),
        })
        .collect()
}
