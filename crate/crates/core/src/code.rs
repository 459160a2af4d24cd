//! Binary linear block codes with complete coset-leader decoding.
//!
//! Generators for the named families:
//!
//! * `hamming:r` uses the parity-check matrix `H = [A | I_r]` whose columns are
//!   the nonzero r-bit values, the weight ≥ 2 values first in increasing
//!   order and then the unit columns `100…`, `010…`, …; `G = [I_k | Aᵀ]`.
//! * `simplex:r` is the dual of `hamming:r` (generator = the Hamming `H`).
//! * `rm:r,m` evaluates every monomial of degree ≤ r in `x_1..x_m` at the points
//!   `0..2^m` (position j is the point whose MSB-first bits are `x_1..x_m`);
//!   monomials are ordered by degree, then lexicographically.
//! * `repetition:n` has the single all-ones generator row.
//! * `file:<path>` reads the code-spec text format and row-reduces the
//!   generator to systematic form.

use std::fmt;
use std::path::Path;

use crate::error::{check_len, Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Largest `k` for which codewords are enumerated.
pub const MAX_DIMENSION: usize = 24;
/// Largest `n - k` for which a full leader table is built.
pub const MAX_REDUNDANCY: usize = 24;

/// Family names accepted by [`CodeFamily::parse`].
pub const FAMILY_NAMES: &[&str] = &["hamming:<r>", "simplex:<r>", "rm:<r>,<m>", "repetition:<n>", "file:<path>"];

/// A named code construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeFamily {
    Hamming(usize),
    Simplex(usize),
    ReedMuller { r: usize, m: usize },
    Repetition(usize),
    Generator(BitMatrix),
}

impl CodeFamily {
    /// Parses `hamming:3`, `simplex:3`, `rm:1,3`, `repetition:5` or `file:<path>`.
    /// The `file:` form is read from disk immediately.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, arg) = s.split_once(':').ok_or_else(|| unknown_family(s))?;
        let int = |a: &str| {
            a.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad integer {a:?} in code family {s:?}")))
        };
        match name.trim() {
            "hamming" => Ok(Self::Hamming(int(arg)?)),
            "simplex" => Ok(Self::Simplex(int(arg)?)),
            "repetition" | "rep" => Ok(Self::Repetition(int(arg)?)),
            "rm" | "reed_muller" => {
                let (r, m) = arg
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("expected rm:<r>,<m>, got {s:?}")))?;
                Ok(Self::ReedMuller {
                    r: int(r)?,
                    m: int(m)?,
                })
            }
            "file" => {
                let text = std::fs::read_to_string(Path::new(arg.trim()))
                    .map_err(|e| Error::Io(format!("{}: {e}", arg.trim())))?;
                Ok(Self::Generator(parse_code_spec(&text)?))
            }
            _ => Err(unknown_family(s)),
        }
    }
}

fn unknown_family(s: &str) -> Error {
    Error::Parse(format!(
        "unknown code family {s:?}; valid families: {}",
        FAMILY_NAMES.join(", ")
    ))
}

/// Parses the code-spec text format: a header line `n k` followed by `k` rows of
/// the generator as 0/1 strings.
pub fn parse_code_spec(text: &str) -> Result<BitMatrix> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("code spec is empty".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header {header:?}"))))
        .collect::<Result<_>>()?;
    let [n, k] = dims[..] else {
        return Err(Error::Parse(format!("header must be \"n k\", got {header:?}")));
    };
    let rows = lines.map(str::parse).collect::<Result<Vec<BitVector>>>()?;
    check_len(k, rows.len())?;
    BitMatrix::from_rows(n, rows)
}

pub fn render_code_spec(generator: &BitMatrix) -> String {
    let mut out = format!("{} {}\n", generator.ncols(), generator.nrows());
    for r in generator.rows() {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}

/// Output of [`LinearCode::decode`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub codeword: BitVector,
    pub error_pattern: BitVector,
}

/// An `(n, k)` binary linear code with certified minimum distance and a
/// complete syndrome → coset-leader table.
#[derive(Clone)]
pub struct LinearCode {
    n: usize,
    k: usize,
    generator: BitMatrix,
    parity_check: BitMatrix,
    min_distance: usize,
    /// Syndrome contribution of each position, MSB-first in `n - k` bits.
    syndrome_columns: Vec<u32>,
    /// Leaders packed back to back, indexed by syndrome value.
    leader_words: Vec<u64>,
    words_per_leader: usize,
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinearCode")
            .field("n", &self.n)
            .field("k", &self.k)
            .field("d", &self.min_distance)
            .field("t", &self.t())
            .finish()
    }
}

/// Builds the code named by `family`.
pub fn make_code(family: &CodeFamily) -> Result<LinearCode> {
    match family {
        CodeFamily::Hamming(r) => {
            let (g, h) = hamming_matrices(*r)?;
            LinearCode::from_matrices(g, h)
        }
        CodeFamily::Simplex(r) => {
            let (g, h) = hamming_matrices(*r)?;
            LinearCode::from_matrices(h, g)
        }
        CodeFamily::ReedMuller { r, m } => {
            let g = reed_muller_generator(*r, *m)?;
            let h = g.nullspace_basis();
            LinearCode::from_matrices(g, h)
        }
        CodeFamily::Repetition(n) => {
            if *n == 0 {
                return Err(Error::Construction("repetition length must be >= 1".into()));
            }
            let g = BitMatrix::from_rows(*n, vec![BitVector::ones(*n)])?;
            let h = g.nullspace_basis();
            LinearCode::from_matrices(g, h)
        }
        CodeFamily::Generator(g) => LinearCode::from_generator(g),
    }
}

fn hamming_matrices(r: usize) -> Result<(BitMatrix, BitMatrix)> {
    if r < 2 {
        return Err(Error::Construction(format!("hamming(r) needs r >= 2, got {r}")));
    }
    if r > MAX_REDUNDANCY {
        return Err(Error::Resource {
            what: "n - k",
            value: r,
            limit: MAX_REDUNDANCY,
        });
    }
    let n = (1usize << r) - 1;
    let k = n - r;
    if k > MAX_DIMENSION {
        return Err(Error::Resource {
            what: "k",
            value: k,
            limit: MAX_DIMENSION,
        });
    }
    let non_unit = (1u64..=n as u64).filter(|v| v.count_ones() >= 2);
    let unit = (0..r).map(|j| 1u64 << (r - 1 - j));
    let columns: Vec<BitVector> = non_unit
        .chain(unit)
        .map(|v| BitVector::from_u64(v, r))
        .collect();
    let h = BitMatrix::from_rows(r, columns.clone())?.transpose();
    let g_rows = (0..k)
        .map(|i| {
            let mut row = BitVector::unit(n, i);
            for j in columns[i].support() {
                row.set(k + j, true);
            }
            row
        })
        .collect();
    Ok((BitMatrix::from_rows(n, g_rows)?, h))
}

fn reed_muller_generator(r: usize, m: usize) -> Result<BitMatrix> {
    if r > m || m > 5 {
        return Err(Error::Construction(format!(
            "reed_muller(r, m) needs 0 <= r <= m <= 5, got ({r}, {m})"
        )));
    }
    let n = 1usize << m;
    // x_i(j) is bit i of j read MSB-first over m bits
    let var = |i: usize| BitVector::from_bits((0..n).map(move |j| (j >> (m - 1 - i)) & 1 == 1));
    let mut rows = Vec::new();
    for degree in 0..=r {
        for subset in combinations(m, degree) {
            let mut row = BitVector::ones(n);
            for i in subset {
                let x = var(i);
                row = BitVector::from_bits(row.iter().zip(x.iter()).map(|(a, b)| a && b));
            }
            rows.push(row);
        }
    }
    BitMatrix::from_rows(n, rows)
}

/// `size`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::with_capacity(size), &mut out);
    out
}

/// Weight-`w` supports over `n` positions, yielded so that the corresponding
/// vectors increase lexicographically (equivalently, by MSB-first value).
pub(crate) struct LexWeightClass {
    n: usize,
    /// Bit significances `n - 1 - position`, ascending; advanced in colex order.
    sig: Vec<usize>,
    done: bool,
}

impl LexWeightClass {
    pub(crate) fn new(n: usize, w: usize) -> Self {
        Self {
            n,
            sig: (0..w).collect(),
            done: w > n,
        }
    }
}

impl Iterator for LexWeightClass {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let positions = self.sig.iter().rev().map(|&q| self.n - 1 - q).collect();
        let w = self.sig.len();
        let step = (0..w).find(|&j| {
            let bound = if j + 1 < w { self.sig[j + 1] } else { self.n };
            self.sig[j] + 1 < bound
        });
        match step {
            Some(j) => {
                self.sig[j] += 1;
                for (i, q) in self.sig.iter_mut().enumerate().take(j) {
                    *q = i;
                }
            }
            None => self.done = true,
        }
        Some(positions)
    }
}

impl LinearCode {
    /// Builds a code from an arbitrary full-rank generator, row-reducing it to
    /// systematic (reduced row-echelon) form.
    pub fn from_generator(generator: &BitMatrix) -> Result<Self> {
        let rref = generator.rref();
        if rref.rank != generator.nrows() {
            return Err(Error::Construction(format!(
                "generator is rank deficient: {} rows, rank {}",
                generator.nrows(),
                rref.rank
            )));
        }
        let g = rref.reduced;
        let h = g.nullspace_basis();
        Self::from_matrices(g, h)
    }

    fn from_matrices(generator: BitMatrix, parity_check: BitMatrix) -> Result<Self> {
        let n = generator.ncols();
        let k = generator.nrows();
        if k == 0 || n == 0 {
            return Err(Error::Construction("code must have n >= 1 and k >= 1".into()));
        }
        if k > MAX_DIMENSION {
            return Err(Error::Resource {
                what: "k",
                value: k,
                limit: MAX_DIMENSION,
            });
        }
        if n - k > MAX_REDUNDANCY {
            return Err(Error::Resource {
                what: "n - k",
                value: n - k,
                limit: MAX_REDUNDANCY,
            });
        }
        if generator.rank() != k {
            return Err(Error::Construction("generator is rank deficient".into()));
        }
        check_len(n - k, parity_check.nrows())?;
        if parity_check.rank() != n - k || !generator.mat_mul(&parity_check.transpose())?.is_zero() {
            return Err(Error::Construction("parity-check matrix does not match generator".into()));
        }

        let r = n - k;
        let syndrome_columns = (0..n)
            .map(|i| {
                (0..r).fold(0u32, |acc, j| {
                    acc | (u32::from(parity_check.get(j, i)) << (r - 1 - j))
                })
            })
            .collect();
        let mut code = LinearCode {
            n,
            k,
            generator,
            parity_check,
            min_distance: 0,
            syndrome_columns,
            leader_words: Vec::new(),
            words_per_leader: n.div_ceil(64),
        };
        code.min_distance = code.compute_min_distance();
        code.build_leader_table();
        Ok(code)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `k × n` generator.
    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    /// `(n - k) × n` parity-check matrix.
    pub fn parity_check(&self) -> &BitMatrix {
        &self.parity_check
    }

    pub fn min_distance(&self) -> usize {
        self.min_distance
    }

    /// Guaranteed error-correction length `⌊(d - 1) / 2⌋`.
    pub fn t(&self) -> usize {
        (self.min_distance - 1) / 2
    }

    /// `msg · G`.
    pub fn encode(&self, msg: &BitVector) -> Result<BitVector> {
        self.generator.combine(msg)
    }

    /// `v · Hᵀ`, of length `n - k`.
    pub fn syndrome(&self, v: &BitVector) -> Result<BitVector> {
        self.parity_check.mul_transposed(v)
    }

    pub(crate) fn syndrome_index(&self, v: &BitVector) -> usize {
        debug_assert_eq!(v.len(), self.n);
        v.support()
            .fold(0u32, |acc, i| acc ^ self.syndrome_columns[i]) as usize
    }

    pub fn contains(&self, v: &BitVector) -> Result<bool> {
        check_len(self.n, v.len())?;
        Ok(self.syndrome_index(v) == 0)
    }

    /// Complete decoding: subtracts the leader of `v`'s coset.
    pub fn decode(&self, v: &BitVector) -> Result<Decoded> {
        check_len(self.n, v.len())?;
        let error_pattern = self.leader_at(self.syndrome_index(v));
        let codeword = v ^ &error_pattern;
        Ok(Decoded {
            codeword,
            error_pattern,
        })
    }

    /// The minimum-weight (then lexicographically smallest) member of the coset
    /// with the given syndrome.
    pub fn leader(&self, syndrome: &BitVector) -> Result<BitVector> {
        check_len(self.n - self.k, syndrome.len())?;
        Ok(self.leader_at(syndrome.to_u64() as usize))
    }

    fn leader_at(&self, index: usize) -> BitVector {
        let w = self.words_per_leader;
        BitVector::from_words(self.n, &self.leader_words[index * w..(index + 1) * w])
    }

    /// Number of entries in the leader table, `2^(n - k)`.
    pub fn leader_count(&self) -> usize {
        1 << (self.n - self.k)
    }

    /// `(syndrome, leader)` pairs in increasing syndrome order.
    pub fn leader_table(&self) -> impl Iterator<Item = (BitVector, BitVector)> + '_ {
        let r = self.n - self.k;
        (0..self.leader_count()).map(move |s| (BitVector::from_u64(s as u64, r), self.leader_at(s)))
    }

    /// `counts[w]` = number of coset leaders of weight `w`.
    pub fn leader_weight_distribution(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n + 1];
        for s in 0..self.leader_count() {
            counts[self.leader_at(s).weight()] += 1;
        }
        while counts.len() > 1 && counts.last() == Some(&0) {
            counts.pop();
        }
        counts
    }

    /// All `2^k` codewords in Gray-code order of their messages, starting at zero.
    pub fn codewords(&self) -> impl Iterator<Item = BitVector> + '_ {
        gray_span(self.generator.rows(), self.n).map(|(_, c)| c)
    }

    fn compute_min_distance(&self) -> usize {
        gray_span(self.generator.rows(), self.n)
            .skip(1)
            .map(|(_, c)| c.weight())
            .min()
            .expect("k >= 1")
    }

    fn build_leader_table(&mut self) {
        let size = self.leader_count();
        let w = self.words_per_leader;
        let mut filled = vec![false; size];
        let mut leaders = vec![0u64; size * w];
        let mut remaining = size;
        'weights: for weight in 0..=self.n {
            for positions in LexWeightClass::new(self.n, weight) {
                let s = positions
                    .iter()
                    .fold(0u32, |acc, &i| acc ^ self.syndrome_columns[i]) as usize;
                if filled[s] {
                    continue;
                }
                filled[s] = true;
                let slot = &mut leaders[s * w..(s + 1) * w];
                for i in positions {
                    slot[i / 64] |= 1u64 << (63 - i % 64);
                }
                remaining -= 1;
                if remaining == 0 {
                    break 'weights;
                }
            }
        }
        self.leader_words = leaders;
    }
}

/// Walks all `2^rows` combinations of `rows` in Gray-code order, yielding the
/// message index (as a bit pattern with row 0 in the MSB) and the combination.
pub(crate) fn gray_span(rows: &[BitVector], n: usize) -> impl Iterator<Item = (u64, BitVector)> + '_ {
    let k = rows.len();
    let mut current = BitVector::zeros(n);
    let mut msg = 0u64;
    let total = 1u64 << k;
    (0..total).map(move |i| {
        if i > 0 {
            let bit = i.trailing_zeros() as usize;
            // row `k - 1 - bit` so that msg bit order matches row 0 = MSB
            let row = k - 1 - bit;
            current.xor_assign(&rows[row]);
            msg ^= 1 << bit;
        }
        (msg, current.clone())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn code(s: &str) -> LinearCode {
        make_code(&CodeFamily::parse(s).unwrap()).unwrap()
    }

    /// Brute-force minimum distance by enumerating every message independently
    /// of the Gray walk.
    fn brute_min_distance(c: &LinearCode) -> usize {
        (1u64..1 << c.k())
            .map(|m| c.encode(&BitVector::from_u64(m, c.k())).unwrap().weight())
            .min()
            .unwrap()
    }

    #[test]
    fn family_parameters() {
        let h = code("hamming:3");
        assert_eq!((h.n(), h.k(), h.min_distance(), h.t()), (7, 4, 3, 1));
        assert_eq!(brute_min_distance(&h), 3);
        let rep = code("repetition:5");
        assert_eq!((rep.n(), rep.k(), rep.min_distance(), rep.t()), (5, 1, 5, 2));
        let rm = code("rm:1,3");
        assert_eq!((rm.n(), rm.k(), rm.min_distance(), rm.t()), (8, 4, 4, 1));
        assert_eq!(brute_min_distance(&rm), 4);
        assert_eq!(code("repetition:7").min_distance(), 7);
        assert_eq!(code("rm:0,3").min_distance(), 8);
        let s = code("simplex:3");
        assert_eq!((s.n(), s.k(), s.min_distance()), (7, 3, 4));
        let h4 = code("hamming:4");
        assert_eq!((h4.n(), h4.k(), h4.min_distance()), (15, 11, 3));
        let rm25 = code("rm:2,5");
        assert_eq!((rm25.n(), rm25.k(), rm25.min_distance()), (32, 16, 8));
    }

    #[test]
    fn hamming_generator_is_textbook_systematic() {
        let h = code("hamming:3");
        assert_eq!(
            h.generator().to_string(),
            "1000011\n0100101\n0010110\n0001111"
        );
        assert_eq!(h.parity_check().to_string(), "0111100\n1011010\n1101001");
        // G·Hᵀ = 0 computed from the constructed matrices
        let prod = h.generator().mat_mul(&h.parity_check().transpose()).unwrap();
        assert_eq!((prod.nrows(), prod.ncols()), (4, 3));
        assert!(prod.is_zero());
        let rref = h.generator().rref();
        assert_eq!(rref.rank, 4);
        assert_eq!(code("rm:1,3").generator().rank(), 4);
    }

    #[test]
    fn hamming_nullspace_is_orthogonal() {
        let h = code("hamming:3");
        let ns = h.generator().nullspace_basis();
        assert_eq!(ns.nrows(), 3);
        assert!(h.generator().mat_mul(&ns.transpose()).unwrap().is_zero());
    }

    #[test]
    fn reed_muller_rows() {
        let rm = code("rm:1,3");
        assert_eq!(
            rm.generator().to_string(),
            "11111111\n00001111\n00110011\n01010101"
        );
        let weights: std::collections::BTreeSet<usize> =
            rm.codewords().map(|c| c.weight()).collect();
        assert_eq!(weights, [0, 4, 8].into_iter().collect());
    }

    #[test]
    fn construction_errors() {
        let g: BitMatrix = "1100\n0011\n1111".parse().unwrap();
        assert!(matches!(
            make_code(&CodeFamily::Generator(g)),
            Err(Error::Construction(_))
        ));
        assert!(matches!(
            make_code(&CodeFamily::Hamming(5)),
            Err(Error::Resource { what: "k", .. })
        ));
        assert!(matches!(
            make_code(&CodeFamily::ReedMuller { r: 1, m: 5 }),
            Err(Error::Resource { what: "n - k", .. })
        ));
        assert!(make_code(&CodeFamily::Hamming(1)).is_err());
        assert!(make_code(&CodeFamily::ReedMuller { r: 4, m: 3 }).is_err());
        assert!(CodeFamily::parse("golay:23").is_err());
        assert!(CodeFamily::parse("hamming").is_err());
        assert!(CodeFamily::parse("rm:1").is_err());
    }

    #[test]
    fn from_generator_is_systematic() {
        let g: BitMatrix = "1111000\n0110100\n1010010\n1100001".parse().unwrap();
        let c = LinearCode::from_generator(&g).unwrap();
        assert_eq!(c.generator().rref().reduced, *c.generator());
        for row in g.rows() {
            assert!(c.contains(row).unwrap());
        }
        assert_eq!(c.min_distance(), brute_min_distance(&c));
    }

    #[test]
    fn code_spec_round_trip() {
        let h = code("hamming:3");
        let text = render_code_spec(h.generator());
        assert!(text.starts_with("7 4\n"));
        assert_eq!(parse_code_spec(&text).unwrap(), *h.generator());
        assert!(parse_code_spec("7 3\n1000011\n").is_err());
        assert!(parse_code_spec("7\n1000011\n").is_err());
    }

    #[test]
    fn file_family() {
        let dir = std::env::temp_dir().join(format!("compcode-spec-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("rm13.txt");
        std::fs::write(&path, render_code_spec(code("rm:1,3").generator())).unwrap();
        let c = code(&format!("file:{}", path.display()));
        assert_eq!((c.n(), c.k(), c.min_distance()), (8, 4, 4));
        assert!(CodeFamily::parse("file:/nonexistent/spec.txt").is_err());
    }

    #[test]
    fn encode_examples() {
        let h = code("hamming:3");
        assert!(h.encode(&bv("0000")).unwrap().is_zero());
        assert_eq!(h.encode(&bv("1000")).unwrap(), *h.generator().row(0));
        assert_eq!(
            h.encode(&bv("1010")).unwrap(),
            h.generator().row(0) ^ h.generator().row(2)
        );
        assert!(h.encode(&bv("101")).is_err());
    }

    #[test]
    fn syndrome_examples() {
        let h = code("hamming:3");
        let hc = h.parity_check().transpose();
        for c in h.codewords() {
            assert!(h.syndrome(&c).unwrap().is_zero());
            for i in 0..7 {
                let mut v = c.clone();
                v.flip(i);
                assert_eq!(h.syndrome(&v).unwrap(), *hc.row(i));
            }
        }
        assert!(h.syndrome(&bv("101")).is_err());
    }

    #[test]
    fn decode_corrects_single_errors_exhaustively() {
        let h = code("hamming:3");
        for c in h.codewords() {
            assert_eq!(h.decode(&c).unwrap().codeword, c);
            for i in 0..7 {
                let e = BitVector::unit(7, i);
                let d = h.decode(&(&c ^ &e)).unwrap();
                assert_eq!(d.codeword, c);
                assert_eq!(d.error_pattern, e);
            }
        }
    }

    #[test]
    fn decode_weight_two_lands_on_neighbour() {
        let h = code("hamming:3");
        for c in h.codewords() {
            for positions in LexWeightClass::new(7, 2) {
                let mut v = c.clone();
                for p in positions {
                    v.flip(p);
                }
                let d = h.decode(&v).unwrap();
                assert_ne!(d.codeword, c);
                assert_eq!(crate::gf2::hamming_distance(&d.codeword, &v).unwrap(), 1);
            }
        }
    }

    #[test]
    fn leader_tables() {
        let h = code("hamming:3");
        assert_eq!(h.leader_count(), 8);
        let mut leaders: Vec<_> = h.leader_table().map(|(_, l)| l).collect();
        leaders.sort();
        let mut expected: Vec<_> = (0..7).map(|i| BitVector::unit(7, i)).collect();
        expected.push(BitVector::zeros(7));
        expected.sort();
        assert_eq!(leaders, expected);

        let rep = code("repetition:3");
        assert_eq!(rep.leader_count(), 4);
        assert!(rep.leader_table().all(|(_, l)| l.weight() <= 1));
        assert_eq!(rep.leader_weight_distribution(), vec![1, 3]);
        assert_eq!(h.leader_weight_distribution(), vec![1, 7]);
    }

    /// Brute-force leader check: for every vector, the table leader has minimum
    /// weight and is lexicographically smallest among equal-weight coset members.
    #[test]
    fn leaders_are_minimal_by_enumeration() {
        for name in ["hamming:3", "rm:1,3", "repetition:5", "simplex:3", "rm:1,4"] {
            let c = code(name);
            let n = c.n();
            let mut best: std::collections::HashMap<BitVector, BitVector> = Default::default();
            for x in 0u64..1 << n {
                let v = BitVector::from_u64(x, n);
                let s = c.syndrome(&v).unwrap();
                best.entry(s)
                    .and_modify(|b| {
                        if (v.weight(), &v) < (b.weight(), &*b) {
                            *b = v.clone();
                        }
                    })
                    .or_insert(v);
            }
            assert_eq!(best.len(), c.leader_count(), "{name}");
            for (s, l) in c.leader_table() {
                assert_eq!(c.syndrome(&l).unwrap(), s, "{name}");
                assert_eq!(best[&s], l, "{name}");
            }
            assert!(c.leader(&BitVector::zeros(n - c.k())).unwrap().is_zero());
        }
    }

    #[test]
    fn lex_weight_class_order() {
        let words: Vec<String> = LexWeightClass::new(4, 2)
            .map(|p| {
                let mut v = BitVector::zeros(4);
                p.into_iter().for_each(|i| v.set(i, true));
                v.to_string()
            })
            .collect();
        assert_eq!(words, ["0011", "0101", "0110", "1001", "1010", "1100"]);
        assert_eq!(LexWeightClass::new(3, 0).count(), 1);
        assert_eq!(LexWeightClass::new(3, 4).count(), 0);
        assert_eq!(LexWeightClass::new(10, 3).count(), 120);
    }

    #[test]
    fn hamming_is_perfect() {
        let h = code("hamming:3");
        let words: Vec<_> = h.codewords().collect();
        for x in 0u64..128 {
            let v = BitVector::from_u64(x, 7);
            let near = words
                .iter()
                .filter(|c| crate::gf2::hamming_distance(c, &v).unwrap() <= 1)
                .count();
            assert_eq!(near, 1);
        }
    }

    #[test]
    fn bounded_errors_decode_and_idempotence() {
        use crate::gf2::hamming_distance;
        for name in ["rm:1,3", "repetition:5", "simplex:3", "rm:1,4"] {
            let c = code(name);
            let n = c.n();
            for cw in c.codewords() {
                for w in 0..=c.t() {
                    for positions in LexWeightClass::new(n, w) {
                        let mut v = cw.clone();
                        positions.into_iter().for_each(|p| v.flip(p));
                        assert_eq!(c.decode(&v).unwrap().codeword, cw, "{name}");
                    }
                }
            }
            for x in (0u64..1 << n).step_by(7) {
                let v = BitVector::from_u64(x, n);
                let d = c.decode(&v).unwrap();
                assert!(c.contains(&d.codeword).unwrap());
                assert_eq!(c.decode(&d.codeword).unwrap().codeword, d.codeword);
                assert_eq!(hamming_distance(&v, &d.codeword).unwrap(), d.error_pattern.weight());
            }
        }
    }
}
