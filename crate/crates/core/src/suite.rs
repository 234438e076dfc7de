//! Seeded property suites over exhaustive and random corpora.
//!
//! Each suite returns a [`SuiteReport`]; a suite passes when it records no
//! failures. Random corpora are drawn from a ChaCha stream seeded from the
//! run seed and the suite name, so a seed reproduces every corpus.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::braid::{Atom, BraidElement, PlainWord, SignedAtom, SignedWord};
use crate::graph::{
    components_g0, decide_equivalence, descend, edge_h12, enumerate_v0, horizontal_edges, Components, LevelGraph,
    Verdict, Vertex,
};
use crate::hatted::{f, matches, parenthesize, HattedLetter, HattedSignedWord, HattedWord, SignedHattedLetter};
use crate::hurwitz::{
    apply_moves, bracket, edge_to_moves, factorization_to_vertex, orbit_bfs, orbit_reaches, sigma_move, validate,
    values_equal, Factor, Factorization, Move, DEFAULT_BUDGET,
};
use crate::quotient::{orbit_labels, standard_images, MatrixImage};
use crate::union_find::UnionFind;

const MAX_REPORTED: usize = 8;

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: u64,
    /// Instances the bounded oracle could not settle.
    pub unknown: u64,
    pub failure_count: u64,
    /// The first few failures, for display.
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport { name, cases: 0, unknown: 0, failure_count: 0, failures: Vec::new(), elapsed: Duration::ZERO }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn fail(&mut self, msg: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_REPORTED {
            self.failures.push(msg);
        }
    }

    fn absorb(&mut self, outcome: Outcome) {
        self.cases += outcome.cases;
        self.unknown += outcome.unknown;
        for msg in outcome.failures {
            self.fail(msg);
        }
    }

    fn timed(mut self, start: Instant) -> Self {
        self.elapsed = start.elapsed();
        self
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<4} {:<22} cases={:<8} unknown={:<5} failures={:<4} {:.2}s",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.cases,
            self.unknown,
            self.failure_count,
            self.elapsed.as_secs_f64()
        )
    }
}

/// Per-item tally, merged after parallel runs.
#[derive(Debug, Default)]
struct Outcome {
    cases: u64,
    unknown: u64,
    failures: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    fn merge(mut self, other: Outcome) -> Outcome {
        self.cases += other.cases;
        self.unknown += other.unknown;
        self.failures.extend(other.failures);
        self
    }
}

fn run_par<T: Sync>(items: &[T], body: impl Fn(&T, &mut Outcome) + Sync) -> Outcome {
    items
        .par_iter()
        .map(|item| {
            let mut o = Outcome::default();
            body(item, &mut o);
            o
        })
        .reduce(Outcome::default, Outcome::merge)
}

fn rng_for(seed: u64, name: &str) -> ChaCha8Rng {
    let salt = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

fn atom(i: u8) -> Atom {
    Atom::new(i).expect("index below 3")
}

fn random_signed_word(rng: &mut impl Rng, len: usize) -> SignedWord {
    (0..len)
        .map(|_| {
            let a = atom(rng.gen_range(0..3));
            if rng.gen_bool(0.5) {
                SignedAtom::neg(a)
            } else {
                SignedAtom::pos(a)
            }
        })
        .collect()
}

fn random_factorization(rng: &mut impl Rng, max_k: usize, max_conj: usize) -> Factorization {
    let k = rng.gen_range(1..=max_k);
    let factors: Vec<Factor> = (0..k)
        .map(|_| {
            let len = rng.gen_range(0..=max_conj);
            Factor::new(random_signed_word(rng, len), atom(rng.gen_range(0..3)))
        })
        .collect();
    let target = factors.iter().fold(BraidElement::identity(), |acc, x| acc.mul(&x.value()));
    Factorization::new(factors, target)
}

/// Positive words over three letters with no adjacent δ-pair.
pub fn delta_free_words(max_len: usize) -> Vec<PlainWord> {
    let mut out = vec![PlainWord::empty()];
    let mut layer = vec![Vec::<Atom>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for a in Atom::ALL {
                if w.last().map_or(true, |&b| a != b.complement()) {
                    let mut v = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned().map(PlainWord::new));
        layer = next;
    }
    out
}

/// Every `X = U·δ^(-p)` with `U` δ-free of length at most `max_len`,
/// `p ≤ max_p`, and at least one weight-0 vertex.
pub fn quasipositive_corpus(max_len: usize, max_p: i64) -> Vec<BraidElement> {
    let candidates: Vec<BraidElement> = delta_free_words(max_len)
        .into_iter()
        .flat_map(|u| {
            (0..=max_p).filter_map(move |p| {
                (u.len() as i64 >= 2 * p).then(|| BraidElement::from_normal_form(u.clone(), p)).flatten()
            })
        })
        .collect();
    candidates.into_par_iter().filter(|x| enumerate_v0(x).is_ok_and(|v| !v.is_empty())).collect()
}

// ---------------------------------------------------------------------------
// normal forms

/// All normal forms reachable by removing δ-pairs in every possible order.
/// Works on raw indices so it shares nothing with the library's rewriting:
/// `A·(x, x−1 mod 3)·B` becomes `A·τ⁻¹(B)` with one more `δ` on the right.
fn removal_outcomes(w: &[u8], memo: &mut HashMap<Vec<u8>, BTreeSet<(Vec<u8>, u32)>>) -> BTreeSet<(Vec<u8>, u32)> {
    if let Some(hit) = memo.get(w) {
        return hit.clone();
    }
    let mut out = BTreeSet::new();
    for i in 0..w.len().saturating_sub(1) {
        if w[i + 1] == (w[i] + 2) % 3 {
            let mut child = w[..i].to_vec();
            child.extend(w[i + 2..].iter().map(|&b| (b + 2) % 3));
            for (u, q) in removal_outcomes(&child, memo) {
                out.insert((u, q + 1));
            }
        }
    }
    if out.is_empty() {
        out.insert((w.to_vec(), 0));
    }
    memo.insert(w.to_vec(), out.clone());
    out
}

/// Every positive word of length at most `max_len` has one normal form under
/// all removal orders, and it is the library's.
pub fn confluence(max_len: usize) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("normal-form confluence");
    let mut words: Vec<Vec<u8>> = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer.iter().flat_map(|w: &Vec<u8>| (0..3).map(move |a| [w.as_slice(), &[a]].concat())).collect();
        words.extend(layer.iter().cloned());
    }
    let outcome = words
        .par_chunks(512)
        .map(|chunk| {
            let mut o = Outcome::default();
            let mut memo = HashMap::new();
            for w in chunk {
                let outcomes = removal_outcomes(w, &mut memo);
                let atoms: Vec<Atom> = w.iter().map(|&b| atom(b)).collect();
                let nf = BraidElement::from_positive(&atoms);
                let lib: Vec<u8> = nf.u().iter().map(|a| a.index()).collect();
                let single = outcomes.len() == 1;
                let agrees = outcomes.iter().all(|(u, q)| *u == lib && -(*q as i64) == nf.p());
                o.check(single && agrees, || format!("{w:?}: outcomes {outcomes:?}, library {nf}"));
            }
            if memo.len() > 200_000 {
                memo.clear();
            }
            o
        })
        .reduce(Outcome::default, Outcome::merge);
    report.absorb(outcome);
    report.timed(start)
}

// ---------------------------------------------------------------------------
// single orbit for p < 0

fn signed_words_up_to(max_len: usize) -> Vec<SignedWord> {
    let letters: Vec<SignedAtom> = Atom::ALL.iter().flat_map(|&a| [SignedAtom::pos(a), SignedAtom::neg(a)]).collect();
    let mut out = vec![SignedWord::empty()];
    let mut layer = vec![SignedWord::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last() != Some(&l.inverted()) {
                    next.push(w.concat(&SignedWord::new(vec![l])));
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Every factorization of `target` whose factors are `A·x·A⁻¹` with
/// `|A| ≤ max_conj`, one per tuple of factor values.
pub fn factorizations_with_short_conjugators(target: &BraidElement, max_conj: usize) -> Vec<Factorization> {
    let mut by_value: HashMap<BraidElement, Factor> = HashMap::new();
    for conj in signed_words_up_to(max_conj) {
        for a in Atom::ALL {
            let factor = Factor::new(conj.clone(), a);
            by_value.entry(factor.value()).or_insert(factor);
        }
    }
    let mut values: Vec<&BraidElement> = by_value.keys().collect();
    values.sort();
    let k = target.band_length();
    if k < 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut prefix: Vec<&BraidElement> = Vec::new();
    fn go<'a>(
        k: usize,
        target: &BraidElement,
        values: &[&'a BraidElement],
        by_value: &HashMap<BraidElement, Factor>,
        prefix: &mut Vec<&'a BraidElement>,
        product: BraidElement,
        out: &mut Vec<Factorization>,
    ) {
        if prefix.len() + 1 == k {
            let last = product.inv().mul(target);
            if let Some(factor) = by_value.get(&last) {
                let mut factors: Vec<Factor> = prefix.iter().map(|v| by_value[*v].clone()).collect();
                factors.push(factor.clone());
                out.push(Factorization::new(factors, target.clone()));
            }
            return;
        }
        for &v in values {
            prefix.push(v);
            go(k, target, values, by_value, prefix, product.mul(v), out);
            prefix.pop();
        }
    }
    go(k as usize, target, &values, &by_value, &mut prefix, BraidElement::identity(), &mut out);
    out
}

/// For `δ` and `δ²`: one saturated oracle orbit holds every enumerated
/// factorization, and every pair is decided equivalent.
pub fn single_orbit(max_conj: usize) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("single orbit (p<0)");
    for q in 1..=2 {
        let target = BraidElement::delta_power(q);
        let facts = factorizations_with_short_conjugators(&target, max_conj);
        let Some(first) = facts.first() else {
            report.fail(format!("no factorizations of δ^{q}"));
            continue;
        };
        let orbit = orbit_bfs(first, DEFAULT_BUDGET);
        report.cases += 1;
        if !orbit.saturated {
            report.fail(format!("oracle did not saturate for δ^{q} ({} tuples)", orbit.tuples.len()));
        }
        let outcome = run_par(&facts, |fact, o| {
            o.check(validate(fact).is_ok(), || format!("enumerated {fact} is invalid"));
            o.check(orbit.contains(fact), || format!("δ^{q}: {fact} not in the orbit of {first}"));
            for other in &facts {
                let verdict = decide_equivalence(fact, other, &target).map(|d| d.verdict);
                o.check(verdict == Ok(Verdict::Equivalent), || format!("δ^{q}: {verdict:?} for {fact} / {other}"));
            }
        });
        report.absorb(outcome);
        // the orbit from a few other starting points is the same set
        for other in facts.iter().step_by((facts.len() / 4).max(1)).skip(1) {
            let again = orbit_bfs(other, DEFAULT_BUDGET);
            report.cases += 1;
            if again.tuples != orbit.tuples {
                report.fail(format!("δ^{q}: orbit from {other} differs"));
            }
        }
    }
    report.timed(start)
}

// ---------------------------------------------------------------------------
// conjugates of one atom

/// Random conjugates `A·σ1·A⁻¹` with `p ≥ 0` and `|U| ≤ max_u` have exactly
/// one weight-0 vertex, which is where their own vertex descends.
pub fn single_vertex(samples: usize, max_u: usize, seed: u64) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("conjugate single vertex");
    let mut rng = rng_for(seed, report.name);
    let mut facts = Vec::new();
    let mut attempts = 0;
    while facts.len() < samples && attempts < 100_000 {
        attempts += 1;
        let len = rng.gen_range(0..=max_u / 2 + 1);
        let fact =
            Factorization::new(vec![Factor::new(random_signed_word(&mut rng, len), atom(1))], BraidElement::identity());
        let x = fact.factors[0].value();
        if x.p() >= 0 && x.u().len() <= max_u {
            facts.push(Factorization::new(fact.factors, x));
        }
    }
    if facts.len() < samples {
        report.fail(format!("only {} of {samples} samples found", facts.len()));
    }
    let outcome = run_par(&facts, |fact, o| {
        let x = &fact.target;
        let v0 = enumerate_v0(x).unwrap_or_default();
        o.check(v0.len() == 1, || format!("{x}: {} weight-0 vertices", v0.len()));
        let landed = factorization_to_vertex(fact).and_then(|v| descend(&v, x));
        o.check(matches!(&landed, Ok(v) if v0.first() == Some(v)), || format!("{x}: descended to {landed:?}"));
    });
    report.absorb(outcome);
    report.timed(start)
}

// ---------------------------------------------------------------------------
// matching

/// Hatted words of length at most `max_len` whose primed part is `δ^q` for
/// some `1 ≤ q ≤ max_q`.
pub fn delta_power_words(max_q: usize, max_len: usize) -> Vec<(HattedWord, u64)> {
    let mut out = Vec::new();
    for q in 1..=max_q {
        if 2 * q > max_len {
            break;
        }
        let primes = crate::braid::positive_words_equal_to(&BraidElement::delta_power(q as i64)).expect("positive");
        for prime in &primes {
            for len in 2 * q..=max_len {
                interleavings(prime, len - 2 * q, &mut |w| out.push((w, q as u64)));
            }
        }
    }
    out
}

fn interleavings(prime: &[Atom], hats: usize, emit: &mut impl FnMut(HattedWord)) {
    fn go(prime: &[Atom], hats: usize, cur: &mut Vec<HattedLetter>, emit: &mut impl FnMut(HattedWord)) {
        if prime.is_empty() && hats == 0 {
            emit(HattedWord::new(cur.clone()));
            return;
        }
        if let Some((&a, rest)) = prime.split_first() {
            cur.push(HattedLetter::plain(a));
            go(rest, hats, cur, emit);
            cur.pop();
        }
        if hats > 0 {
            for a in Atom::ALL {
                cur.push(HattedLetter::hatted(a));
                go(prime, hats - 1, cur, emit);
                cur.pop();
            }
        }
    }
    go(prime, hats, &mut Vec::new(), emit);
}

fn prime_value(w: &[HattedLetter]) -> BraidElement {
    let atoms: Vec<Atom> = w.iter().filter(|l| !l.hatted).map(|l| l.atom).collect();
    BraidElement::from_positive(&atoms)
}

/// The matching definition checked directly on the segments.
fn satisfies_definition(w: &HattedWord, i: usize, j: usize, r: u64) -> bool {
    i < j
        && !w[i].hatted
        && !w[j].hatted
        && prime_value(&w[i + 1..j]) == BraidElement::delta_power(r as i64)
        && prime_value(&w[i..=j]) == BraidElement::delta_power(r as i64 + 1)
}

/// Every word with primed part `δ^q` gets a perfect non-crossing matching
/// of its plain letters whose pairs satisfy the definition. The plain
/// words equal to `δ^q` are cross-checked against brute-force enumeration.
pub fn balanced_parentheses(max_q: usize, max_len: usize) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("balanced parentheses");
    for q in 1..=max_q.min(max_len / 2) {
        let target = BraidElement::delta_power(q as i64);
        let brute = (0..3usize.pow(2 * q as u32))
            .filter(|&code| {
                let w: Vec<Atom> = (0..2 * q).map(|k| atom((code / 3usize.pow(k as u32) % 3) as u8)).collect();
                BraidElement::from_positive(&w) == target
            })
            .count();
        let closure = crate::braid::positive_words_equal_to(&target).map(|s| s.len()).unwrap_or(0);
        report.cases += 1;
        if brute != closure {
            report.fail(format!("δ^{q}: {closure} words by relation closure, {brute} by brute force"));
        }
    }
    let corpus = delta_power_words(max_q, max_len);
    let outcome = run_par(&corpus, |(w, _), o| {
        let pairs = match parenthesize(w) {
            Ok(p) => p,
            Err(e) => {
                o.check(false, || format!("{w}: {e}"));
                return;
            }
        };
        let mut used = vec![0u8; w.len()];
        for p in &pairs {
            used[p.i] += 1;
            used[p.j] += 1;
        }
        let perfect = (0..w.len()).all(|k| used[k] == u8::from(!w[k].hatted));
        let crossing = pairs.iter().any(|a| pairs.iter().any(|b| a.i < b.i && b.i < a.j && a.j < b.j));
        let valid = pairs.iter().all(|p| satisfies_definition(w, p.i, p.j, p.r));
        o.check(perfect && !crossing && valid, || format!("{w}: bad matching {pairs:?}"));
    });
    report.absorb(outcome);
    report.timed(start)
}

/// Rotation: if `v` matches `u` in `W ≡ A·u·B·C·v·D`, then in
/// `W₁ ≡ C·v·D·τ^q(A·u·B)` the primed part is still `δ^q` and `τ^q(u)`
/// matches `v` with exponent `q − r − 1`.
pub fn matching_rotation(max_q: usize, max_len: usize) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("matching rotation");
    let corpus = delta_power_words(max_q, max_len);
    let outcome = run_par(&corpus, |(w, q), o| {
        let n = w.len();
        let delta_q = BraidElement::delta_power(*q as i64);
        for i in 0..n {
            for j in i + 1..n {
                let Ok(Some(r)) = matches(w, i, j) else { continue };
                for cut in i + 1..=j {
                    let rotated: HattedWord =
                        w[cut..].iter().copied().chain(w[..cut].iter().map(|l| l.tau(*q as i64))).collect();
                    let (vi, ui) = (j - cut, n - cut + i);
                    let ok = prime_value(&rotated) == delta_q
                        && q.checked_sub(r + 1).is_some_and(|r1| satisfies_definition(&rotated, vi, ui, r1));
                    o.check(ok, || format!("{w}: pair ({i},{j}) cut at {cut} gives {rotated}"));
                }
            }
        }
    });
    report.absorb(outcome);
    report.timed(start)
}

/// Locality: for `W ≡ A·B·C` with primed part `δ^q` and `B′ = δ^r`, every
/// plain letter of `A` is matched by some plain letter of `A` or `C`.
pub fn matching_locality(max_q: usize, max_len: usize) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("matching locality");
    let corpus = delta_power_words(max_q, max_len);
    let outcome = run_par(&corpus, |(w, _), o| {
        let n = w.len();
        let partners: Vec<Vec<usize>> = (0..n)
            .map(|u| (0..n).filter(|&v| matches(w, u.min(v), u.max(v)).ok().flatten().is_some()).collect())
            .collect();
        for a in 0..=n {
            for b in a..=n {
                if prime_value(&w[a..b]).delta_exponent().map_or(true, |r| r < 0) {
                    continue;
                }
                for u in (0..a).filter(|&u| !w[u].hatted) {
                    let ok = partners[u].iter().any(|&v| v < a || v >= b);
                    o.check(ok, || format!("{w}: letter {u} unmatched outside {a}..{b}"));
                }
            }
        }
    });
    report.absorb(outcome);
    report.timed(start)
}

// ---------------------------------------------------------------------------
// the graph criterion against the oracle

/// On the quasipositive corpus: two weight-0 vertices share a component
/// exactly when the oracle connects their brackets, and descending from the
/// vertex of a bracket stays in the bracket's component.
///
/// The oracle joins two brackets when a breadth-first orbit search finds one
/// from the other, and tells them apart when an orbit is exhausted without
/// it or when their images in some finite matrix quotient lie in different
/// orbits. Pairs settled neither way count as unknown.
pub fn graph_vs_oracle(corpus: &[BraidElement], budget: usize) -> SuiteReport {
    let start = Instant::now();
    let images = standard_images();
    let images = &images;
    let mut report = SuiteReport::new("components vs oracle");
    let outcome = run_par(corpus, |x, o| {
        let g = match components_g0(x) {
            Ok(g) => g,
            Err(e) => return o.check(false, || format!("{x}: {e}")),
        };
        let n = g.vertices.len();
        let brackets: Vec<Factorization> = g.vertices.iter().map(|v| bracket(&v.word).expect("vertex")).collect();
        for (i, v) in g.vertices.iter().enumerate() {
            o.check(validate(&brackets[i]) == Ok(()), || format!("{x}: bracket of {v} invalid"));
            o.check(v.word.hatted_count() as i64 == x.band_length(), || format!("{x}: {v} has wrong hat count"));
            let landed = factorization_to_vertex(&brackets[i]).and_then(|w| descend(&w, x));
            let same = landed.as_ref().ok().and_then(|l| g.component_of(&l.word)).map(|c| c.id);
            o.check(same == Some(g.component_index(i)), || format!("{x}: {v} descends to {landed:?}"));
        }
        if n < 2 {
            return;
        }
        let tuples: Vec<Vec<BraidElement>> = brackets.iter().map(Factorization::values).collect();
        // connections found by a short search first
        let mut uf = UnionFind::new(n);
        search_orbits(&brackets, &tuples, &mut uf, SHORT_SEARCH, &mut vec![vec![false; n]; n]);
        // finite images separate what cannot be connected; products of two
        // images only where single ones and the full search leave pairs open
        let mut apart = vec![vec![false; n]; n];
        let singles: Vec<Vec<&MatrixImage>> = images.iter().map(|img| vec![img]).collect();
        separate(x, &g, &singles, &tuples, &mut uf, &mut apart, o);
        search_orbits(&brackets, &tuples, &mut uf, budget, &mut apart);
        let pairs = (0..images.len()).flat_map(|a| (a + 1..images.len()).map(move |c| vec![&images[a], &images[c]]));
        separate(x, &g, pairs, &tuples, &mut uf, &mut apart, o);
        let mut unknown = false;
        for (i, row) in apart.iter().enumerate() {
            for (j, &is_apart) in row.iter().enumerate() {
                let same = g.component_index(i) == g.component_index(j);
                if uf.same(i, j) || is_apart {
                    o.check(uf.same(i, j) == same, || {
                        format!("{x}: {} / {}: component {same}, oracle {}", g.vertices[i], g.vertices[j], !same)
                    });
                } else {
                    unknown = true;
                }
            }
        }
        o.unknown += u64::from(unknown);
    });
    report.absorb(outcome);
    if report.unknown * 100 >= corpus.len().max(1) as u64 {
        report.fail(format!("{} of {} instances left unsettled by the oracle", report.unknown, corpus.len()));
    }
    report.timed(start)
}

const SHORT_SEARCH: usize = 2_000;
const QUOTIENT_CAP: usize = 500_000;

/// Marks pairs whose images under some group of `images` lie in different
/// orbits, stopping once every pair is joined or apart.
fn separate<'a, G: AsRef<[&'a MatrixImage]>>(
    x: &BraidElement,
    g: &Components,
    groups: impl IntoIterator<Item = G>,
    tuples: &[Vec<BraidElement>],
    uf: &mut UnionFind,
    apart: &mut [Vec<bool>],
    o: &mut Outcome,
) {
    let n = tuples.len();
    for group in groups {
        if (0..n).all(|i| (0..n).all(|j| uf.same(i, j) || apart[i][j])) {
            return;
        }
        let Some(labels) = orbit_labels(group.as_ref(), tuples, QUOTIENT_CAP) else { continue };
        for i in 0..n {
            for j in 0..n {
                if labels[i] != labels[j] {
                    o.check(!uf.same(i, j), || {
                        let names: Vec<&str> = group.as_ref().iter().map(|img| img.name()).collect();
                        format!("{x}: {} / {} connected but apart in {names:?}", g.vertices[i], g.vertices[j])
                    });
                    apart[i][j] = true;
                }
            }
        }
    }
}

/// Searches the orbit of each class representative for the classes not yet
/// joined or told apart. An exhausted orbit tells apart everything it
/// missed.
fn search_orbits(
    brackets: &[Factorization],
    tuples: &[Vec<BraidElement>],
    uf: &mut UnionFind,
    budget: usize,
    apart: &mut [Vec<bool>],
) {
    let n = tuples.len();
    for i in 0..n {
        if uf.find(i) != i {
            continue;
        }
        let open: Vec<usize> = (0..n).filter(|&j| uf.find(j) == j && j != i && !apart[i][j]).collect();
        if open.is_empty() {
            continue;
        }
        let targets: Vec<Vec<BraidElement>> = open.iter().map(|&j| tuples[j].clone()).collect();
        let (found, exhausted) = orbit_reaches(&brackets[i], &targets, budget);
        for (&j, hit) in open.iter().zip(found) {
            if hit {
                uf.union(i, j);
            } else if exhausted {
                apart[i][j] = true;
                apart[j][i] = true;
            }
        }
    }
    // spread separation to whole classes
    for i in 0..n {
        for j in 0..n {
            if apart[uf.find(i)][uf.find(j)] {
                apart[i][j] = true;
            }
        }
    }
}

/// Every h1/h2 edge of weight at most `max_weight`, in both directions,
/// carries a move sequence from one bracket to the other.
pub fn edge_certificates(corpus: &[BraidElement], max_weight: u64) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("edge move certificates");
    let outcome = run_par(corpus, |x, o| {
        for j in 0..=max_weight {
            for v in crate::graph::enumerate_level(x, j).unwrap_or_default() {
                for e in horizontal_edges(&v) {
                    let moves = match edge_to_moves(&e) {
                        Ok(m) => m,
                        Err(err) => return o.check(false, || format!("{x}: {err}")),
                    };
                    let got = bracket(&e.from.word).and_then(|b| apply_moves(&b, &moves));
                    let want = bracket(&e.to.word);
                    let ok = matches!((&got, &want), (Ok(g), Ok(w)) if values_equal(g, w));
                    o.check(ok, || format!("{x}: {} edge {} -> {} with `{moves}`", e.kind, e.from, e.to));
                }
            }
        }
    });
    report.absorb(outcome);
    report.timed(start)
}

/// Cyclic shift by `s = p + wt` maps h1/h2 edges to h1/h2 edges over the
/// shifted braid, keeping the type iff the first letters agree.
pub fn cyclic_shift_edges(corpus: &[BraidElement], max_weight: u64) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("cyclic shift of edges");
    let outcome = run_par(corpus, |x, o| {
        for j in 0..=max_weight {
            for v in crate::graph::enumerate_level(x, j).unwrap_or_default() {
                let s = x.p() + j as i64;
                for (w2, kind, _) in crate::graph::neighbors_h12(&v.word) {
                    let (a, b) = (v.word.cyclic_shift(s), w2.cyclic_shift(s));
                    let (Ok(a), Ok(b)) = (a, b) else {
                        return o.check(false, || format!("{x}: shift of empty word"));
                    };
                    let x1 = a.bar().value().mul(&BraidElement::delta_power(-s));
                    let vertex_ok = Vertex::over(a.clone(), &x1).is_ok() && Vertex::over(b.clone(), &x1).is_ok();
                    let shifted = edge_h12(&a, &b);
                    let same_first = v.word[0] == w2[0];
                    let ok = vertex_ok && shifted.is_some() && (shifted == Some(kind)) == same_first;
                    o.check(ok, || format!("{x}: {kind} edge {} / {w2} shifts to {shifted:?}", v.word));
                }
            }
        }
    });
    report.absorb(outcome);
    report.timed(start)
}

/// On the full graph up to `max_weight`: vertical neighbours of one vertex
/// are `∼_h`, and both ends of a horizontal edge of positive weight have
/// vertical neighbours that are `∼_h`.
pub fn diamond(corpus: &[BraidElement], max_weight: u64) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("diamond and lifting");
    let outcome = run_par(corpus, |x, o| {
        let g = match LevelGraph::build(x, max_weight) {
            Ok(g) => g,
            Err(e) => return o.check(false, || format!("{x}: {e}")),
        };
        let mut classes: Vec<_> = (0..max_weight).map(|l| g.classes_up_to(l)).collect();
        for (a, v) in g.vertices.iter().enumerate() {
            if v.weight == 0 {
                continue;
            }
            let uf = &mut classes[(v.weight - 1) as usize];
            let down = &g.vertical[a];
            if let Some(&(first, _)) = down.first() {
                let ok = down.iter().all(|&(b, _)| uf.same(first, b));
                o.check(ok, || format!("{x}: vertical neighbours of {v} split"));
            }
            for &(b, kind) in &g.horizontal[a] {
                if b < a {
                    continue;
                }
                let ok = g.vertical[a].iter().any(|&(v1, _)| g.vertical[b].iter().any(|&(v2, _)| uf.same(v1, v2)));
                o.check(ok, || format!("{x}: {kind} edge {v} / {} has no lifted pair", g.vertices[b]));
            }
        }
        let symmetric =
            g.horizontal.iter().enumerate().all(|(a, hs)| hs.iter().all(|&(b, k)| g.horizontal[b].contains(&(a, k))));
        o.check(symmetric, || format!("{x}: horizontal adjacency is not symmetric"));
    });
    report.absorb(outcome);
    report.timed(start)
}

// ---------------------------------------------------------------------------
// factorizations and f

/// Random valid factorizations survive the trip to a vertex and back.
pub fn round_trip(samples: usize, max_k: usize, max_conj: usize, seed: u64) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("vertex round trip");
    let mut rng = rng_for(seed, report.name);
    let facts: Vec<Factorization> = (0..samples).map(|_| random_factorization(&mut rng, max_k, max_conj)).collect();
    let outcome = run_par(&facts, |fact, o| {
        let back = factorization_to_vertex(fact).and_then(|v| bracket(&v.word).map(|b| (v, b)));
        let ok = matches!(&back, Ok((_, b)) if values_equal(b, fact) && b.target == fact.target);
        o.check(ok, || format!("{fact} -> {back:?}"));
    });
    report.absorb(outcome);
    report.timed(start)
}

/// `f` straight from its recursive definition.
fn f_by_definition(w: &[SignedHattedLetter]) -> Vec<HattedLetter> {
    match w.split_first() {
        None => Vec::new(),
        Some((SignedHattedLetter::Letter(l), rest)) => {
            let mut out = vec![*l];
            out.extend(f_by_definition(rest));
            out
        }
        Some((SignedHattedLetter::Inverse(x), rest)) => {
            let mut out = vec![HattedLetter::plain(x.tau(1))];
            out.extend(f_by_definition(rest));
            out.into_iter().map(|l| l.tau(1)).collect()
        }
    }
}

/// For random hatted signed words `w` with `m` inverse letters,
/// `w⁻¹·bar(f(w)) = δ^m`, and `f` agrees with its recursive definition.
pub fn f_invariant(samples: usize, max_len: usize, seed: u64) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("f power of delta");
    let mut rng = rng_for(seed, report.name);
    let words: Vec<HattedSignedWord> = (0..samples)
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            (0..len)
                .map(|_| {
                    let a = atom(rng.gen_range(0..3));
                    match rng.gen_range(0..3) {
                        0 => SignedHattedLetter::Inverse(a),
                        1 => SignedHattedLetter::Letter(HattedLetter::hatted(a)),
                        _ => SignedHattedLetter::Letter(HattedLetter::plain(a)),
                    }
                })
                .collect()
        })
        .collect();
    let outcome = run_par(&words, |w, o| {
        let image = f(w);
        let m = w.iter().filter(|l| matches!(l, SignedHattedLetter::Inverse(_))).count() as i64;
        let quotient = w.bar_value().inv().mul(&image.bar().value());
        o.check(quotient == BraidElement::delta_power(m), || format!("{w}: quotient {quotient}"));
        o.check(image.letters() == f_by_definition(w).as_slice(), || format!("{w}: f = {image}"));
        let hats_kept = image.iter().filter(|l| l.hatted).count()
            == w.iter().filter(|l| matches!(l, SignedHattedLetter::Letter(h) if h.hatted)).count();
        o.check(hats_kept, || format!("{w}: hat count changed in {image}"));
    });
    report.absorb(outcome);
    report.timed(start)
}

/// Brackets of random vertices of weight at most `max_weight` over corpus
/// braids with `p > 0`,
/// scrambled by a few random moves: the bracket of the vertex reached by
/// descent lies in the oracle orbit of the input.
pub fn descend_in_orbit(
    corpus: &[BraidElement],
    samples: usize,
    max_weight: u64,
    seed: u64,
    budget: usize,
) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("descent stays in orbit");
    let mut rng = rng_for(seed, report.name);
    // with p = 0 there is one weight-0 vertex and orbits can be infinite
    let corpus: Vec<&BraidElement> = corpus.iter().filter(|x| x.p() > 0).collect();
    let mut facts = Vec::new();
    while !corpus.is_empty() && facts.len() < samples {
        let x = corpus[rng.gen_range(0..corpus.len())];
        let level = crate::graph::enumerate_level(x, rng.gen_range(0..=max_weight)).unwrap_or_default();
        if level.is_empty() {
            continue;
        }
        let mut fact = bracket(&level[rng.gen_range(0..level.len())].word).expect("vertex");
        if fact.len() >= 2 {
            for _ in 0..rng.gen_range(0..=6) {
                let mv = Move { index: rng.gen_range(1..fact.len()), inverse: rng.gen_bool(0.5) };
                fact = sigma_move(&fact, mv).expect("index in range");
            }
        }
        facts.push(fact);
    }
    let outcome = run_par(&facts, |fact, o| {
        let landed = factorization_to_vertex(fact).and_then(|v| descend(&v, &fact.target));
        let Ok(landed) = landed else {
            return o.check(false, || format!("{fact}: {landed:?}"));
        };
        let Ok(b) = bracket(&landed.word) else {
            return o.check(false, || format!("{fact}: landed on {landed}"));
        };
        let (found, exhausted) = orbit_reaches(fact, &[b.values()], budget);
        if found[0] {
            o.cases += 1;
        } else if exhausted {
            o.check(false, || format!("{fact}: bracket of {landed} outside the orbit"));
        } else {
            o.cases += 1;
            o.unknown += 1;
        }
    });
    report.absorb(outcome);
    report.timed(start)
}

/// Parameters of a `check` run.
#[derive(Debug, Clone, Copy)]
pub struct CheckConfig {
    pub max_len: usize,
    pub seed: u64,
}

/// Every suite, sized by `max_len`. `max_len = 0` makes each corpus empty.
pub fn run_all(cfg: CheckConfig) -> Vec<SuiteReport> {
    let n = cfg.max_len;
    if n == 0 {
        return [
            "normal-form confluence",
            "single orbit (p<0)",
            "conjugate single vertex",
            "components vs oracle",
            "edge move certificates",
            "balanced parentheses",
            "matching rotation",
            "matching locality",
            "cyclic shift of edges",
            "diamond and lifting",
            "vertex round trip",
            "f power of delta",
            "descent stays in orbit",
        ]
        .into_iter()
        .map(SuiteReport::new)
        .collect();
    }
    let corpus = quasipositive_corpus(n.min(7), 2);
    // edge suites grow fastest with weight; the diamond needs two levels
    let weight = if n >= 2 { 2 } else { 1 };
    vec![
        confluence(n.min(10)),
        single_orbit(n.min(2)),
        single_vertex(30, n.min(9), cfg.seed),
        graph_vs_oracle(&corpus, DEFAULT_BUDGET),
        edge_certificates(&corpus, 1),
        balanced_parentheses(4, n.min(8)),
        matching_rotation(3, n.min(8)),
        matching_locality(3, n.min(8)),
        cyclic_shift_edges(&corpus, 1),
        diamond(&corpus, weight),
        round_trip(200, 4, n.min(3), cfg.seed),
        f_invariant(500, n.min(8), cfg.seed),
        descend_in_orbit(&corpus, 100, weight, cfg.seed, DEFAULT_BUDGET),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_sizes() {
        assert_eq!(delta_free_words(7).len(), 382);
        assert!(delta_free_words(3).iter().all(|w| w.is_delta_free()));
        let corpus = quasipositive_corpus(3, 1);
        assert!(corpus.contains(&"s2 s0 s1 s1- s2-".parse::<SignedWord>().unwrap().evaluate()));
        assert!(corpus.iter().all(|x| x.p() >= 0));
    }

    #[test]
    fn removal_oracle_small() {
        let mut memo = HashMap::new();
        let out = removal_outcomes(&[2, 1, 1, 0], &mut memo);
        assert_eq!(out, BTreeSet::from([(vec![], 2)]));
        let out = removal_outcomes(&[1, 2], &mut memo);
        assert_eq!(out, BTreeSet::from([(vec![1, 2], 0)]));
    }

    #[test]
    fn short_conjugator_factorizations_of_delta() {
        let facts = factorizations_with_short_conjugators(&BraidElement::delta(), 0);
        assert_eq!(facts.len(), 3);
    }

    #[test]
    fn small_run_passes() {
        for r in run_all(CheckConfig { max_len: 3, seed: 7 }) {
            assert!(r.passed(), "{r}\n{:#?}", r.failures);
        }
    }

    #[test]
    fn zero_length_is_vacuous() {
        let reports = run_all(CheckConfig { max_len: 0, seed: 0 });
        assert!(reports.iter().all(|r| r.passed() && r.cases == 0));
    }

    #[test]
    fn seeds_reproduce() {
        let a = f_invariant(20, 6, 11);
        let b = f_invariant(20, 6, 11);
        assert_eq!((a.cases, a.failure_count), (b.cases, b.failure_count));
        let mut r1 = rng_for(5, "x");
        let mut r2 = rng_for(5, "x");
        assert_eq!(random_signed_word(&mut r1, 8), random_signed_word(&mut r2, 8));
    }

    #[test]
    fn definition_of_f() {
        let w: HattedSignedWord = "s2 h0 s2-".parse().unwrap();
        assert_eq!(f_by_definition(&w), f(&w).letters());
    }
}
