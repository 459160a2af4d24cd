//! Nested code pairs `C2 ⊂ C1` and key extraction from the quotient `C1 / C2`.
//!
//! Every codeword of `C1` decomposes uniquely as `u = m·G2 ⊕ a·Q`, where the
//! rows of `Q` extend a basis of `C2` to a basis of `C1`. The coefficient
//! vector `a` (row 0 of `Q` is the most significant bit) is the extracted key,
//! so the key depends only on the coset `u ⊕ C2`. Each coset also carries a
//! representative: its minimum-weight member, lexicographically smallest on
//! ties. The representatives play the role of the low-weight set around the
//! zero word; translating them by a subcode word `D` gives the class of `C1`
//! words that decode to `D` under `C2`.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::code::{gray_span, LexWeightClass, LinearCode};
use crate::error::{check_len, Error, Result};
use crate::gf2::{hamming_distance, BitMatrix, BitVector};

/// Largest key length per block.
pub const MAX_KEY_BITS: usize = 24;
/// Largest block length for the exhaustive ball check.
pub const MAX_EXHAUSTIVE_N: usize = 16;

/// Extracted key bits, most significant first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KeyBits(BitVector);

impl KeyBits {
    pub fn from_index(index: u64, len: usize) -> Self {
        KeyBits(BitVector::from_u64(index, len))
    }

    pub fn bits(&self) -> &BitVector {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The coset index `a`.
    pub fn index(&self) -> u64 {
        self.0.to_u64()
    }
}

impl fmt::Display for KeyBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for KeyBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KeyBits({})", self.0)
    }
}

/// Result of an exhaustive check: how many cases were examined and what failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checked: u64,
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Partition of `C1` into key classes and into nearest-subcode-word classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisjointnessReport {
    pub checked: u64,
    /// Size of each key class, indexed by key.
    pub key_class_sizes: Vec<u64>,
    /// Number of distinct nearest-`C2` words.
    pub decode_classes: u64,
    /// Size of each nearest-`C2` class, in increasing order of the subcode word.
    pub decode_class_sizes: Vec<u64>,
    pub violations: Vec<String>,
}

impl DisjointnessReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A validated nested pair `C2 ⊂ C1`.
#[derive(Clone, Debug)]
pub struct CompositeCode {
    c1: LinearCode,
    c2: LinearCode,
    q: BitMatrix,
    /// `[G2; Q]`, a basis of `C1`.
    basis: BitMatrix,
    /// Pivot column of each row of the reduced basis.
    pivots: Vec<usize>,
    /// Key bits contributed by each pivot: for `u ∈ C1`, the key is the xor of
    /// `pivot_keys[i]` over pivots `i` with `u[pivots[i]] = 1`.
    pivot_keys: Vec<u64>,
    reps: Vec<BitVector>,
    rep_index: HashMap<BitVector, u64>,
}

impl CompositeCode {
    pub fn new(c1: LinearCode, c2: LinearCode) -> Result<Self> {
        check_len(c1.n(), c2.n())?;
        if c2.k() >= c1.k() {
            return Err(Error::Construction(format!(
                "inner code must be strictly smaller: k1 = {}, k2 = {}",
                c1.k(),
                c2.k()
            )));
        }
        let key_len = c1.k() - c2.k();
        if key_len > MAX_KEY_BITS {
            return Err(Error::Resource {
                what: "k1 - k2",
                value: key_len,
                limit: MAX_KEY_BITS,
            });
        }
        for (row, g) in c2.generator().rows().iter().enumerate() {
            if !c1.contains(g)? {
                return Err(Error::Nesting { row });
            }
        }

        let n = c1.n();
        let q = extend_basis(c2.generator(), c1.generator(), key_len);
        let basis = c2.generator().stack(&q)?;
        let (pivots, pivot_keys) = coordinate_extractor(&basis, key_len);

        let mut best: Vec<Option<BitVector>> = vec![None; 1 << key_len];
        let key_mask = (1u64 << key_len) - 1;
        for (msg, word) in gray_span(basis.rows(), n) {
            let slot = &mut best[(msg & key_mask) as usize];
            let better = match slot {
                None => true,
                Some(b) => (word.weight(), &word) < (b.weight(), &*b),
            };
            if better {
                *slot = Some(word);
            }
        }
        let reps: Vec<BitVector> = best.into_iter().map(|r| r.expect("every coset is hit")).collect();
        let rep_index = reps
            .iter()
            .enumerate()
            .map(|(a, r)| (r.clone(), a as u64))
            .collect();

        Ok(Self {
            c1,
            c2,
            q,
            basis,
            pivots,
            pivot_keys,
            reps,
            rep_index,
        })
    }

    pub fn c1(&self) -> &LinearCode {
        &self.c1
    }

    pub fn c2(&self) -> &LinearCode {
        &self.c2
    }

    pub fn n(&self) -> usize {
        self.c1.n()
    }

    /// `k1 - k2`.
    pub fn key_len(&self) -> usize {
        self.c1.k() - self.c2.k()
    }

    /// Rows completing a basis of `C2` to a basis of `C1`.
    pub fn q(&self) -> &BitMatrix {
        &self.q
    }

    pub fn coset_count(&self) -> u64 {
        1 << self.key_len()
    }

    /// Coset index of `u ∈ C1`.
    pub fn key_index(&self, u: &BitVector) -> Result<u64> {
        check_len(self.n(), u.len())?;
        if !self.c1.contains(u)? {
            return Err(Error::Membership);
        }
        Ok(self
            .pivots
            .iter()
            .zip(&self.pivot_keys)
            .filter(|(&p, _)| u.get(p))
            .fold(0, |acc, (_, &k)| acc ^ k))
    }

    pub fn extract_key(&self, u: &BitVector) -> Result<KeyBits> {
        Ok(KeyBits::from_index(self.key_index(u)?, self.key_len()))
    }

    /// Key obtained by decoding `u` to its nearest `C2` word `D` and looking up
    /// the representative `u ⊕ D`. Returns `None` if `u ⊕ D` is not a
    /// representative, which cannot happen when both use the same tie-break.
    pub fn key_via_nearest_subcode(&self, u: &BitVector) -> Result<Option<KeyBits>> {
        check_len(self.n(), u.len())?;
        if !self.c1.contains(u)? {
            return Err(Error::Membership);
        }
        let nearest = self.c2.decode(u)?.codeword;
        let offset = u ^ &nearest;
        Ok(self
            .rep_index
            .get(&offset)
            .map(|&a| KeyBits::from_index(a, self.key_len())))
    }

    pub fn coset_representative(&self, a: u64) -> Result<&BitVector> {
        self.reps.get(a as usize).ok_or(Error::Range {
            index: a,
            bound: self.coset_count(),
        })
    }

    pub fn representatives(&self) -> &[BitVector] {
        &self.reps
    }

    /// Every codeword of `C1` paired with its key index.
    pub fn keyed_codewords(&self) -> impl Iterator<Item = (u64, BitVector)> + '_ {
        let mask = self.coset_count() - 1;
        gray_span(self.basis.rows(), self.n()).map(move |(msg, w)| (msg & mask, w))
    }

    /// Codewords of `C1` within distance `radius` of `center`, sorted
    /// lexicographically.
    pub fn enumerate_ball(&self, center: &BitVector, radius: usize) -> Result<Vec<BitVector>> {
        let n = self.n();
        check_len(n, center.len())?;
        let radius = radius.min(n);
        let codeword_count = 1u128 << self.c1.k();
        let mut out = if ball_volume(n, radius) < codeword_count {
            let mut found = Vec::new();
            for w in 0..=radius {
                for positions in LexWeightClass::new(n, w) {
                    let mut v = center.clone();
                    positions.into_iter().for_each(|p| v.flip(p));
                    if self.c1.contains(&v)? {
                        found.push(v);
                    }
                }
            }
            found
        } else {
            let mut found = Vec::new();
            for c in self.c1.codewords() {
                if hamming_distance(&c, center)? <= radius {
                    found.push(c);
                }
            }
            found
        };
        out.sort();
        Ok(out)
    }

    /// For every `v ∈ F_2^n`, checks that the codewords of `C1` within distance
    /// `t2` of `v` carry pairwise distinct keys.
    pub fn verify_distinct_indices(&self) -> Result<CheckReport> {
        let n = self.n();
        if n > MAX_EXHAUSTIVE_N {
            return Err(Error::Resource {
                what: "n",
                value: n,
                limit: MAX_EXHAUSTIVE_N,
            });
        }
        let radius = self.c2.t();
        let violations = (0u64..1 << n)
            .into_par_iter()
            .map(|x| -> Result<Vec<String>> {
                let center = BitVector::from_u64(x, n);
                let ball = self.enumerate_ball(&center, radius)?;
                let mut seen: HashMap<u64, &BitVector> = HashMap::new();
                let mut found = Vec::new();
                for u in &ball {
                    let a = self.key_index(u)?;
                    if let Some(prev) = seen.insert(a, u) {
                        found.push(format!(
                            "center {center}: {prev} and {u} share key {}",
                            KeyBits::from_index(a, self.key_len())
                        ));
                    }
                }
                Ok(found)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        Ok(CheckReport {
            checked: 1 << n,
            violations,
        })
    }

    /// Partitions `C1` by key and by nearest `C2` word and checks that the key
    /// classes are equal-size and pairwise disjoint, and that each
    /// nearest-subcode class is the translate `D ⊕ {representatives}`.
    pub fn verify_coset_disjointness(&self) -> Result<DisjointnessReport> {
        let key_len = self.key_len();
        let k2 = self.c2.k();
        let mut key_classes: Vec<Vec<BitVector>> = vec![Vec::new(); 1 << key_len];
        let mut decode_classes: HashMap<BitVector, Vec<(u64, BitVector)>> = HashMap::new();
        let mut checked = 0u64;
        let mut violations = Vec::new();

        for (a, u) in self.keyed_codewords() {
            checked += 1;
            let algebraic = self.key_index(&u)?;
            if algebraic != a {
                violations.push(format!("{u}: basis coordinates give key {a}, solver gives {algebraic}"));
            }
            let nearest = self.c2.decode(&u)?.codeword;
            key_classes[a as usize].push(u.clone());
            decode_classes.entry(nearest).or_default().push((a, u));
        }

        for (a, class) in key_classes.iter().enumerate() {
            if class.len() != 1 << k2 {
                violations.push(format!("key class {a} has {} words, expected {}", class.len(), 1u64 << k2));
            }
        }
        let mut owner: HashMap<&BitVector, usize> = HashMap::new();
        for (a, class) in key_classes.iter().enumerate() {
            for u in class {
                if let Some(b) = owner.insert(u, a) {
                    violations.push(format!("{u} lies in key classes {b} and {a}"));
                }
            }
        }

        let mut decode_keys: Vec<_> = decode_classes.keys().cloned().collect();
        decode_keys.sort();
        let mut decode_class_sizes = Vec::with_capacity(decode_keys.len());
        for d in &decode_keys {
            let class = &decode_classes[d];
            decode_class_sizes.push(class.len() as u64);
            if !self.c2.contains(d)? {
                violations.push(format!("nearest word {d} is not in the subcode"));
            }
            let mut keys: Vec<u64> = class.iter().map(|(a, _)| *a).collect();
            keys.sort_unstable();
            keys.dedup();
            if keys.len() != class.len() || class.len() != 1 << key_len {
                violations.push(format!(
                    "class around {d} has {} words and {} distinct keys, expected {}",
                    class.len(),
                    keys.len(),
                    1u64 << key_len
                ));
            }
            for (a, u) in class {
                if (u ^ d) != self.reps[*a as usize] {
                    violations.push(format!("{u} is not {d} xor representative {a}"));
                }
            }
        }
        if decode_keys.len() as u64 != 1 << k2 {
            violations.push(format!(
                "{} nearest-subcode classes, expected {}",
                decode_keys.len(),
                1u64 << k2
            ));
        }
        let total: u64 = key_classes.iter().map(|c| c.len() as u64).sum();
        if total != checked || checked != 1 << self.c1.k() {
            violations.push(format!("key classes cover {total} of {checked} words"));
        }

        Ok(DisjointnessReport {
            checked,
            key_class_sizes: key_classes.iter().map(|c| c.len() as u64).collect(),
            decode_classes: decode_keys.len() as u64,
            decode_class_sizes,
            violations,
        })
    }
}

fn ball_volume(n: usize, radius: usize) -> u128 {
    let mut total = 0u128;
    let mut binom = 1u128;
    for w in 0..=radius {
        total = total.saturating_add(binom);
        binom = binom.saturating_mul((n - w) as u128) / (w as u128 + 1);
    }
    total
}

/// Reduces each row of `outer` against the span of `inner` and the rows chosen
/// so far, keeping the first `count` nonzero remainders.
fn extend_basis(inner: &BitMatrix, outer: &BitMatrix, count: usize) -> BitMatrix {
    let n = inner.ncols();
    let mut echelon: Vec<(usize, BitVector)> = Vec::new();
    let push = |v: &BitVector, echelon: &mut Vec<(usize, BitVector)>| -> Option<BitVector> {
        let mut r = v.clone();
        for (p, row) in echelon.iter() {
            if r.get(*p) {
                r.xor_assign(row);
            }
        }
        let pivot = r.support().next()?;
        echelon.push((pivot, r.clone()));
        Some(r)
    };
    for row in inner.rows() {
        push(row, &mut echelon);
    }
    let mut extra = Vec::with_capacity(count);
    for row in outer.rows() {
        if extra.len() == count {
            break;
        }
        if let Some(r) = push(row, &mut echelon) {
            extra.push(r);
        }
    }
    BitMatrix::from_rows(n, extra).expect("rows have length n")
}

/// Row-reduces `basis` while tracking the transform `T` with `R = T·basis`.
/// For `u` in the row space, its basis coordinates are `Σ_i u[pivot_i]·T_i`;
/// only the last `key_len` coordinates are kept, packed MSB-first.
fn coordinate_extractor(basis: &BitMatrix, key_len: usize) -> (Vec<usize>, Vec<u64>) {
    let k = basis.nrows();
    let mut rows: Vec<(BitVector, BitVector)> = basis
        .rows()
        .iter()
        .enumerate()
        .map(|(i, r)| (r.clone(), BitVector::unit(k, i)))
        .collect();
    let mut pivots = Vec::with_capacity(k);
    let mut rank = 0;
    for c in 0..basis.ncols() {
        if rank == k {
            break;
        }
        let Some(p) = (rank..k).find(|&r| rows[r].0.get(c)) else {
            continue;
        };
        rows.swap(rank, p);
        let (pr, pt) = rows[rank].clone();
        for (i, (r, t)) in rows.iter_mut().enumerate() {
            if i != rank && r.get(c) {
                r.xor_assign(&pr);
                t.xor_assign(&pt);
            }
        }
        pivots.push(c);
        rank += 1;
    }
    debug_assert_eq!(rank, k, "basis must be full rank");
    let keys = rows
        .iter()
        .map(|(_, t)| tail_value(t, key_len))
        .collect();
    (pivots, keys)
}

/// The last `len` bits of `v` as an MSB-first integer.
fn tail_value(v: &BitVector, len: usize) -> u64 {
    (v.len() - len..v.len()).fold(0, |acc, i| (acc << 1) | u64::from(v.get(i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{make_code, CodeFamily};

    fn code(s: &str) -> LinearCode {
        make_code(&CodeFamily::parse(s).unwrap()).unwrap()
    }

    fn pair(c1: &str, c2: &str) -> CompositeCode {
        CompositeCode::new(code(c1), code(c2)).unwrap()
    }

    /// Independent key oracle: solve `u = x·[G2; Q]` by trying every `x`.
    fn brute_key(cc: &CompositeCode, u: &BitVector) -> u64 {
        let basis = cc.c2().generator().stack(cc.q()).unwrap();
        let k1 = basis.nrows();
        let x = (0u64..1 << k1)
            .find(|&x| basis.combine(&BitVector::from_u64(x, k1)).unwrap() == *u)
            .expect("u in C1");
        x & ((1 << cc.key_len()) - 1)
    }

    #[test]
    fn construction_examples() {
        let hs = pair("hamming:3", "simplex:3");
        assert_eq!(hs.key_len(), 1);
        assert_eq!(hs.coset_count(), 2);
        let rm = pair("rm:1,3", "rm:0,3");
        assert_eq!(rm.key_len(), 3);
        assert_eq!(rm.coset_count(), 8);
        let hr = pair("hamming:3", "repetition:7");
        assert_eq!(hr.key_len(), 3);
        for cc in [&hs, &rm, &hr] {
            let basis = cc.c2().generator().stack(cc.q()).unwrap();
            assert_eq!(basis.rank(), cc.c1().k());
            for r in cc.q().rows() {
                assert!(cc.c1().contains(r).unwrap());
            }
        }
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            CompositeCode::new(code("hamming:3"), code("repetition:5")),
            Err(Error::Dimension { .. })
        ));
        assert!(matches!(
            CompositeCode::new(code("simplex:3"), code("hamming:3")),
            Err(Error::Construction(_))
        ));
        assert!(matches!(
            CompositeCode::new(code("hamming:3"), code("hamming:3")),
            Err(Error::Construction(_))
        ));
        let g: BitMatrix = "1100000\n0011000".parse().unwrap();
        let c2 = make_code(&CodeFamily::Generator(g)).unwrap();
        assert!(matches!(
            CompositeCode::new(code("hamming:3"), c2),
            Err(Error::Nesting { row: 0 })
        ));
    }

    #[test]
    fn keys_match_brute_force_solver() {
        for (a, b) in [("hamming:3", "simplex:3"), ("rm:1,3", "rm:0,3"), ("hamming:3", "repetition:7"), ("rm:2,4", "rm:1,4")] {
            let cc = pair(a, b);
            for u in cc.c1().codewords() {
                assert_eq!(cc.key_index(&u).unwrap(), brute_key(&cc, &u), "{a}/{b} {u}");
            }
        }
    }

    #[test]
    fn extract_key_examples() {
        let cc = pair("hamming:3", "simplex:3");
        for w in cc.c2().codewords() {
            assert_eq!(cc.extract_key(&w).unwrap().to_string(), "0");
        }
        let simplex: Vec<_> = cc.c2().codewords().collect();
        for u in cc.c1().codewords() {
            let key = cc.extract_key(&u).unwrap();
            for w in &simplex {
                assert_eq!(cc.extract_key(&(&u ^ w)).unwrap(), key);
            }
            if u.weight() == 3 || u.weight() == 7 {
                assert_eq!(key.to_string(), "1");
            }
        }
        let not_codeword: BitVector = "1000000".parse().unwrap();
        assert_eq!(cc.extract_key(&not_codeword), Err(Error::Membership));
        assert!(cc.extract_key(&"10".parse().unwrap()).is_err());
    }

    #[test]
    fn representative_examples() {
        let cc = pair("hamming:3", "simplex:3");
        assert!(cc.coset_representative(0).unwrap().is_zero());
        let smallest_weight3 = cc.c1().codewords().filter(|u| u.weight() == 3).min().unwrap();
        assert_eq!(*cc.coset_representative(1).unwrap(), smallest_weight3);
        assert!(matches!(cc.coset_representative(2), Err(Error::Range { index: 2, bound: 2 })));

        for (a, b) in [("hamming:3", "simplex:3"), ("rm:1,3", "rm:0,3"), ("rm:2,4", "rm:1,4")] {
            let cc = pair(a, b);
            for idx in 0..cc.coset_count() {
                let rep = cc.coset_representative(idx).unwrap();
                assert_eq!(cc.extract_key(rep).unwrap(), KeyBits::from_index(idx, cc.key_len()));
                let coset_min = cc
                    .c2()
                    .codewords()
                    .map(|w| rep ^ &w)
                    .min_by(|x, y| (x.weight(), x).cmp(&(y.weight(), y)))
                    .unwrap();
                assert_eq!(*rep, coset_min);
            }
        }
    }

    #[test]
    fn ball_examples() {
        let hs = pair("hamming:3", "simplex:3");
        let rm = pair("rm:1,3", "rm:0,3");
        assert_eq!(hs.enumerate_ball(&BitVector::zeros(7), 0).unwrap(), vec![BitVector::zeros(7)]);
        assert_eq!(rm.enumerate_ball(&BitVector::zeros(8), 3).unwrap(), vec![BitVector::zeros(8)]);
        for x in 0u64..128 {
            assert_eq!(hs.enumerate_ball(&BitVector::from_u64(x, 7), 1).unwrap().len(), 1);
        }
        // both enumeration strategies agree with a direct filter
        for (cc, n) in [(&hs, 7), (&rm, 8)] {
            let words: Vec<_> = cc.c1().codewords().collect();
            for x in (0u64..1 << n).step_by(5) {
                let v = BitVector::from_u64(x, n);
                for radius in 0..=n {
                    let mut expected: Vec<_> = words
                        .iter()
                        .filter(|c| hamming_distance(c, &v).unwrap() <= radius)
                        .cloned()
                        .collect();
                    expected.sort();
                    assert_eq!(cc.enumerate_ball(&v, radius).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn verification_reports() {
        let hs = pair("hamming:3", "simplex:3");
        let r = hs.verify_distinct_indices().unwrap();
        assert_eq!(r.checked, 128);
        assert!(r.passed(), "{:?}", r.violations);
        let d = hs.verify_coset_disjointness().unwrap();
        assert_eq!(d.key_class_sizes, vec![8, 8]);
        assert_eq!(d.decode_classes, 8);
        assert!(d.decode_class_sizes.iter().all(|&s| s == 2));
        assert!(d.passed(), "{:?}", d.violations);

        let rm = pair("rm:1,3", "rm:0,3");
        assert_eq!(rm.c2().t(), 3);
        let r = rm.verify_distinct_indices().unwrap();
        assert_eq!(r.checked, 256);
        assert!(r.passed());
        let d = rm.verify_coset_disjointness().unwrap();
        assert_eq!(d.key_class_sizes, vec![2; 8]);
        assert_eq!(d.key_class_sizes.iter().sum::<u64>(), 16);
        assert!(d.passed());
    }

    /// A pair whose subcode radius is too large for its distance must report
    /// collisions rather than pass.
    #[test]
    fn distinctness_violation_is_reported() {
        // C1 = even-weight code of length 6, C2 = {0, 110000} with t2 = 0.
        let even: BitMatrix = "110000\n011000\n001100\n000110\n000011".parse().unwrap();
        let sub: BitMatrix = "110000".parse().unwrap();
        let cc = CompositeCode::new(
            LinearCode::from_generator(&even).unwrap(),
            LinearCode::from_generator(&sub).unwrap(),
        )
        .unwrap();
        assert_eq!(cc.c2().t(), 0);
        assert!(cc.verify_distinct_indices().unwrap().passed());
        // radius 1 around 100000 contains 000000 and 110000, which share key 0
        let ball = cc.enumerate_ball(&"100000".parse().unwrap(), 1).unwrap();
        let keys: Vec<_> = ball.iter().map(|u| cc.key_index(u).unwrap()).collect();
        let mut dedup = keys.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert!(dedup.len() < keys.len());
    }

    #[test]
    fn nearest_subcode_pipeline_agrees() {
        for (a, b) in [("hamming:3", "simplex:3"), ("rm:1,3", "rm:0,3"), ("hamming:3", "repetition:7"), ("rm:2,4", "rm:1,4")] {
            let cc = pair(a, b);
            for u in cc.c1().codewords() {
                assert_eq!(cc.key_via_nearest_subcode(&u).unwrap(), Some(cc.extract_key(&u).unwrap()));
            }
        }
    }

    #[test]
    fn separation_and_uniformity() {
        let cc = pair("rm:2,4", "rm:1,4");
        let d2 = cc.c2().min_distance();
        let words: Vec<_> = cc.keyed_codewords().collect();
        let mut counts = vec![0u64; cc.coset_count() as usize];
        for (a, u) in &words {
            counts[*a as usize] += 1;
            for (b, v) in &words {
                if a == b && u != v {
                    assert!(hamming_distance(u, v).unwrap() >= d2);
                }
            }
        }
        assert!(counts.iter().all(|&c| c == 1 << cc.c2().k()));
    }
}
