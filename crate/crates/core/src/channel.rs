//! Binary symmetric channels and the entropy quantities that bound key
//! agreement over them.

use num_bigint::BigUint;
use num_traits::{FromPrimitive, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::error::{check_len, Error, Result};
use crate::gf2::{hamming_distance, BitVector};

/// `H(x) = -x log2 x - (1 - x) log2 (1 - x)`, with `0 · log 0 = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("entropy argument {x} outside [0, 1]")));
    }
    let term = |p: f64| if p == 0.0 { 0.0 } else { -p * p.log2() };
    Ok(term(x) + term(1.0 - x))
}

/// Crossover probabilities of the legitimate (`e_ab`) and eavesdropper
/// (`e_ae`) channels.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChannelParams {
    pub e_ab: f64,
    pub e_ae: f64,
}

impl ChannelParams {
    pub fn new(e_ab: f64, e_ae: f64) -> Result<Self> {
        for (name, p) in [("e_ab", e_ab), ("e_ae", e_ae)] {
            if !(0.0..=0.5).contains(&p) {
                return Err(Error::Domain(format!("{name} = {p} outside [0, 0.5]")));
            }
        }
        Ok(Self { e_ab, e_ae })
    }
}

/// One row of the binomial-sum bound `Σ_{i ≤ ⌊nt⌋} C(n, i) ≤ 2^{n H(t)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Lemma1Row {
    pub n: u32,
    pub t: f64,
    /// Exact binomial sum.
    pub lhs: BigUint,
    pub rhs: f64,
    pub holds: bool,
}

/// Evaluates both sides of the binomial-sum bound, the sum exactly.
pub fn lemma1_check(n: u32, t: f64) -> Result<Lemma1Row> {
    if n == 0 {
        return Err(Error::Domain("n must be >= 1".into()));
    }
    if !(0.0..=0.5).contains(&t) {
        return Err(Error::Domain(format!("t = {t} outside [0, 0.5]")));
    }
    // absorb representation error in decimal inputs such as 10 * 0.3
    let upper = ((f64::from(n) * t) + 1e-9).floor() as u32;
    let mut lhs = BigUint::zero();
    let mut binom = BigUint::one();
    for i in 0..=upper.min(n) {
        lhs += &binom;
        binom = binom * (n - i) / (i + 1);
    }
    let rhs = (f64::from(n) * binary_entropy(t)?).exp2();
    let holds = match BigUint::from_f64(rhs.floor()) {
        Some(floor) => lhs <= floor,
        None => rhs.is_infinite(),
    };
    Ok(Lemma1Row {
        n,
        t,
        lhs,
        rhs,
        holds,
    })
}

/// Typical-sequence probability and typical-set size bounds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TypicalityBounds {
    pub p_lo: f64,
    pub p_hi: f64,
    pub size_lo: f64,
    pub size_hi: f64,
}

pub fn typicality_bounds(n: u32, e: f64, eps: f64) -> Result<TypicalityBounds> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::Domain(format!("eps = {eps} must be positive")));
    }
    if !(e > 0.0 && e < 1.0) {
        return Err(Error::Domain(format!("e = {e} outside (0, 1)")));
    }
    let h = binary_entropy(e)?;
    let n = f64::from(n);
    Ok(TypicalityBounds {
        p_lo: (-n * (h + eps)).exp2(),
        p_hi: (-n * (h - eps)).exp2(),
        size_lo: (1.0 - eps) * (n * (h - eps)).exp2(),
        size_hi: (n * (h + eps)).exp2(),
    })
}

/// `H(e_ae) - H(e_ab)`.
pub fn key_rate(params: &ChannelParams) -> f64 {
    let h = |p| binary_entropy(p).expect("validated probability");
    h(params.e_ae) - h(params.e_ab)
}

/// Eavesdropper guessing probability `2^{-n (H(e_ae) - H(e_ab))}`.
pub fn eve_guess_bound(n: u32, params: &ChannelParams) -> Result<f64> {
    if params.e_ae < params.e_ab {
        return Err(Error::Domain(format!(
            "guess bound needs e_ae >= e_ab, got e_ab = {}, e_ae = {}",
            params.e_ab, params.e_ae
        )));
    }
    Ok((-f64::from(n) * key_rate(params)).exp2())
}

/// Syndrome bits disclosed by reconciliation at efficiency `f`: `f · n · H(e)`.
pub fn reconciliation_leakage(n: u32, e: f64, f: f64) -> Result<f64> {
    if f.is_nan() || f < 1.0 {
        return Err(Error::Domain(format!("efficiency f = {f} must be >= 1")));
    }
    Ok(f * f64::from(n) * binary_entropy(e)?)
}

/// A reproducible random stream: ChaCha20 keyed by `seed` (expanded with
/// `SeedableRng::seed_from_u64`) on stream number `stream_id`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RngStream {
    pub seed: u64,
    pub stream_id: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        Self { seed, stream_id }
    }

    pub fn rng(&self) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

/// Each bit independently 1 with probability `p`.
pub fn sample_error_pattern<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<BitVector> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("p = {p} outside [0, 1]")));
    }
    Ok(BitVector::from_bits((0..n).map(|_| rng.gen_bool(p))))
}

/// Uniformly random vector of length `n`.
pub fn sample_uniform<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BitVector {
    BitVector::from_bits((0..n).map(|_| rng.gen::<bool>()))
}

/// `d(x, y) / n`.
pub fn empirical_ber(x: &BitVector, y: &BitVector) -> Result<f64> {
    check_len(x.len(), y.len())?;
    if x.is_empty() {
        return Err(Error::Domain("empty vectors have no error rate".into()));
    }
    Ok(hamming_distance(x, y)? as f64 / x.len() as f64)
}
