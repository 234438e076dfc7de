//! Finite matrix images of the braid group and their Hurwitz orbits.
//!
//! A homomorphism onto a finite group carries Hurwitz orbits into Hurwitz
//! orbits, so two tuples whose images lie in different (finite, always
//! enumerable) orbits lie in different orbits upstairs. This gives the
//! orbit oracle a way to certify that two factorizations are inequivalent
//! when the orbit itself is infinite.
//!
//! The images are `σ1 ↦ a`, `σ2 ↦ b`, `σ0 ↦ a⁻¹·b·a` for 2×2 matrices with
//! `aba = bab`, over `ℤ/m`.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::braid::BraidElement;

type Mat = [u32; 4];

fn mat_mul(a: &Mat, b: &Mat, m: u32) -> Mat {
    [
        (a[0] * b[0] + a[1] * b[2]) % m,
        (a[0] * b[1] + a[1] * b[3]) % m,
        (a[2] * b[0] + a[3] * b[2]) % m,
        (a[2] * b[1] + a[3] * b[3]) % m,
    ]
}

fn mat_inv(a: &Mat, m: u32) -> Option<Mat> {
    let det = (a[0] * a[3] + m * m - (a[1] * a[2]) % (m * m)) % m;
    let d = (1..m).find(|d| det * d % m == 1)?;
    Some([a[3] * d % m, (m - a[1]) % m * d % m, (m - a[2]) % m * d % m, a[0] * d % m])
}

/// The finite group generated by the images, with elements numbered and
/// conjugation tabulated.
pub struct MatrixImage {
    name: String,
    /// Element numbers of `σ0, σ1, σ2` and of `δ⁻¹`.
    gens: [u16; 3],
    delta_inv: u16,
    mul: Vec<u16>,
    inv: Vec<u16>,
    /// `conj[a·n + b] = a·b·a⁻¹`
    conj: Vec<u16>,
    order: usize,
}

impl fmt::Debug for MatrixImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixImage({}, order {})", self.name, self.order)
    }
}

/// Largest group tabulated; keeps the tables at a few megabytes.
const MAX_ORDER: usize = 2100;

impl MatrixImage {
    fn from_pair(name: String, m: u32, a: Mat, b: Mat) -> Option<MatrixImage> {
        let ai = mat_inv(&a, m)?;
        let s0 = mat_mul(&mat_mul(&ai, &b, m), &a, m);
        let gens = [s0, a, b];
        let delta = mat_mul(&b, &a, m);
        if mat_mul(&a, &s0, m) != delta || mat_mul(&s0, &b, m) != delta {
            return None;
        }
        // closure under right multiplication by the generators
        let identity: Mat = [1, 0, 0, 1];
        let mut index: HashMap<Mat, u16> = HashMap::from([(identity, 0)]);
        let mut elems = vec![identity];
        let mut k = 0;
        while k < elems.len() {
            for g in &gens {
                let e = mat_mul(&elems[k], g, m);
                if let Entry::Vacant(slot) = index.entry(e) {
                    if elems.len() >= MAX_ORDER {
                        return None;
                    }
                    slot.insert(elems.len() as u16);
                    elems.push(e);
                }
            }
            k += 1;
        }
        let n = elems.len();
        let mut mul = vec![0u16; n * n];
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                mul[i * n + j] = index[&mat_mul(x, y, m)];
            }
        }
        let inv: Vec<u16> = elems.iter().map(|e| index[&mat_inv(e, m).expect("group element")]).collect();
        let mut conj = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                conj[a * n + b] = mul[mul[a * n + b] as usize * n + inv[a] as usize];
            }
        }
        Some(MatrixImage {
            name,
            gens: gens.map(|g| index[&g]),
            delta_inv: index[&mat_inv(&delta, m).expect("invertible")],
            mul,
            inv,
            conj,
            order: n,
        })
    }

    /// `σ1 ↦ [[1,1],[0,1]]`, `σ2 ↦ [[1,0],[-1,1]]` over `ℤ/m`.
    pub fn sl2(m: u32) -> Option<MatrixImage> {
        MatrixImage::from_pair(format!("SL2(Z/{m})"), m, [1, 1, 0, 1], [1, 0, m - 1, 1])
    }

    /// Reduced Burau matrices at `t` over `ℤ/p`.
    pub fn burau(p: u32, t: u32) -> Option<MatrixImage> {
        let neg_t = (p - t % p) % p;
        MatrixImage::from_pair(format!("Burau(t={t}, Z/{p})"), p, [neg_t, 1, 0, 1], [1, 0, t % p, neg_t])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.order + b as usize]
    }

    pub fn image(&self, x: &BraidElement) -> u16 {
        let mut r = 0;
        for a in x.u().iter() {
            r = self.mul(r, self.gens[a.index() as usize]);
        }
        for _ in 0..x.p().max(0) {
            r = self.mul(r, self.delta_inv);
        }
        for _ in 0..(-x.p()).max(0) {
            r = self.mul(r, self.inv[self.delta_inv as usize]);
        }
        r
    }

    /// The images of `(a, b)` after a forward or inverse move.
    pub fn hurwitz(&self, a: u16, b: u16, inverse: bool) -> (u16, u16) {
        let n = self.order;
        if inverse {
            (b, self.conj[self.inv[b as usize] as usize * n + a as usize])
        } else {
            (self.conj[a as usize * n + b as usize], a)
        }
    }

    /// Labels the tuples by the orbit their images fall in; `None` if an
    /// orbit exceeds `cap` states or the tuples are too long to encode.
    pub fn orbit_labels(&self, tuples: &[Vec<BraidElement>], cap: usize) -> Option<Vec<usize>> {
        orbit_labels(&[self], tuples, cap)
    }
}

const BITS: usize = 12;
const _: () = assert!(MAX_ORDER <= 1 << BITS);

/// [`MatrixImage::orbit_labels`] in the direct product of several images.
/// The product can tell apart tuples that no factor does on its own.
pub fn orbit_labels(images: &[&MatrixImage], tuples: &[Vec<BraidElement>], cap: usize) -> Option<Vec<usize>> {
    let len = tuples.first().map_or(0, Vec::len);
    if len * images.len() * BITS > 128 || tuples.iter().any(|t| t.len() != len) {
        return None;
    }
    let keys: Vec<u128> =
        tuples.iter().map(|t| pack(t.iter().flat_map(|v| images.iter().map(move |img| img.image(v))))).collect();
    let mut labels = vec![usize::MAX; keys.len()];
    let mut next_label = 0;
    for start in 0..keys.len() {
        if labels[start] != usize::MAX {
            continue;
        }
        let orbit = orbit(images, keys[start], len, cap)?;
        for (k, key) in keys.iter().enumerate() {
            if labels[k] == usize::MAX && orbit.contains(key) {
                labels[k] = next_label;
            }
        }
        next_label += 1;
    }
    Some(labels)
}

fn orbit(images: &[&MatrixImage], start: u128, len: usize, cap: usize) -> Option<HashSet<u128>> {
    let m = images.len();
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(key) = queue.pop_front() {
        let t = unpack(key, len * m);
        for i in 0..len.saturating_sub(1) {
            for inverse in [false, true] {
                let mut u = t.clone();
                for (c, img) in images.iter().enumerate() {
                    let (x, y) = img.hurwitz(t[i * m + c], t[(i + 1) * m + c], inverse);
                    u[i * m + c] = x;
                    u[(i + 1) * m + c] = y;
                }
                let k = pack(u.into_iter());
                if seen.insert(k) {
                    if seen.len() > cap {
                        return None;
                    }
                    queue.push_back(k);
                }
            }
        }
    }
    Some(seen)
}

fn pack(items: impl Iterator<Item = u16>) -> u128 {
    items.enumerate().fold(0u128, |acc, (i, v)| acc | (v as u128) << (BITS * i))
}

fn unpack(key: u128, len: usize) -> Vec<u16> {
    (0..len).map(|i| (key >> (BITS * i)) as u16 & ((1 << BITS) - 1)).collect()
}

/// The images tried by the oracle, smallest groups first. Composite moduli
/// matter: the orbit of a product image is finer than the pair of orbits.
pub fn standard_images() -> Vec<MatrixImage> {
    let mut out: Vec<MatrixImage> = (2..=12).filter_map(MatrixImage::sl2).collect();
    for p in [5, 7] {
        out.extend((2..p).filter_map(|t| MatrixImage::burau(p, t)));
    }
    out.sort_by_key(MatrixImage::order);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{Atom, SignedWord};

    #[test]
    fn images_respect_relations() {
        for img in standard_images() {
            let d1 = BraidElement::from_positive(&[Atom::S2, Atom::S1]);
            let d2 = BraidElement::from_positive(&[Atom::S1, Atom::S0]);
            assert_eq!(img.image(&d1), img.image(&d2));
            assert_eq!(img.image(&BraidElement::identity()), 0);
            let w: SignedWord = "s1 s0- s2 s2-".parse().unwrap();
            let x = w.evaluate();
            assert_eq!(img.mul(img.image(&x), img.image(&x.inv())), 0, "{}", img.name());
        }
        assert_eq!(MatrixImage::sl2(2).unwrap().order(), 6);
        assert_eq!(MatrixImage::sl2(3).unwrap().order(), 24);
    }

    #[test]
    fn images_of_delta_factorizations_share_an_orbit() {
        let t = |a: Atom, b: Atom| vec![BraidElement::atom(a), BraidElement::atom(b)];
        let tuples = [t(Atom::S1, Atom::S0), t(Atom::S2, Atom::S1), t(Atom::S0, Atom::S2)];
        for img in standard_images() {
            let labels = img.orbit_labels(&tuples, 10_000).unwrap();
            assert!(labels.iter().all(|&l| l == 0));
        }
    }
}
