//! Seeded simulation of key agreement with a nested code pair.
//!
//! Step numbering used here (the original list skips a number):
//!
//! | here | exchange                                                        |
//! |------|-----------------------------------------------------------------|
//! | 0    | the code pair `(n, k1, k2)` is public                           |
//! | 1    | 4n states are sent; each basis choice agrees with probability ½ |
//! | 2    | mismatched bases are discarded, leaving ≈ 2n sifted bits        |
//! | 3    | n random sifted bits are disclosed to estimate the error rate   |
//! | 4    | Alice decodes `R_A` to `u_A ∈ C1` and announces `R_A ⊕ u_A`       |
//! | 5    | Bob decodes `announcement ⊕ R_B = u_A ⊕ E_AB` to `u_B`            |
//! | 6    | both decode their codeword with `C2` to the nearest `D_i`       |
//! | 7    | the key is the coset index of `u ⊕ D_i`                         |
//!
//! Steps 1–3 are an optional prologue that only gates the trial; the raw
//! strings themselves are drawn directly as BSC outputs.

use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{
    eve_guess_bound, key_rate, sample_error_pattern, sample_uniform, ChannelParams, RngStream,
};
use crate::composite::{CompositeCode, KeyBits};
use crate::error::{check_len, Error, Result};
use crate::gf2::BitVector;

/// Sub-streams of a trial. A trial on stream `s` draws purpose `p` from
/// stream `8·s + p` under the same seed.
mod purpose {
    pub const ALICE: u64 = 0;
    pub const BOB_CHANNEL: u64 = 1;
    pub const EVE_CHANNEL: u64 = 2;
    pub const EVE_GUESS: u64 = 3;
    pub const SIFTING: u64 = 4;
}

fn substream(stream: RngStream, purpose: u64) -> RngStream {
    RngStream::new(stream.seed, stream.stream_id.wrapping_mul(8).wrapping_add(purpose))
}

/// Outcome of the basis-sifting and error-estimation prologue.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SiftingOutcome {
    pub raw_len: usize,
    pub sifted_len: usize,
    /// Positions within the first `2n` sifted bits that were disclosed.
    pub check_bits: Vec<usize>,
    pub check_errors: usize,
    pub estimated_ber: f64,
    pub threshold: f64,
    pub aborted: bool,
}

/// Models `4n` transmissions with independent fair basis agreement, keeps the
/// first `2n` sifted bits, discloses `n` of them chosen uniformly and aborts if
/// fewer than `2n` bits survive or the disclosed error rate exceeds `threshold`.
pub fn simulate_sifting<R: Rng + ?Sized>(
    n: usize,
    p_true: f64,
    threshold: f64,
    rng: &mut R,
) -> Result<SiftingOutcome> {
    if n == 0 {
        return Err(Error::Domain("block length must be >= 1".into()));
    }
    if !(threshold > 0.0 && threshold < 0.5) {
        return Err(Error::Domain(format!("threshold {threshold} outside (0, 0.5)")));
    }
    if !(0.0..=1.0).contains(&p_true) {
        return Err(Error::Domain(format!("error rate {p_true} outside [0, 1]")));
    }
    let raw_len = 4 * n;
    let sifted_len = (0..raw_len).filter(|_| rng.gen::<bool>()).count();
    if sifted_len < 2 * n {
        return Ok(SiftingOutcome {
            raw_len,
            sifted_len,
            check_bits: Vec::new(),
            check_errors: 0,
            estimated_ber: 0.0,
            threshold,
            aborted: true,
        });
    }
    let mut check_bits = index::sample(rng, 2 * n, n).into_vec();
    check_bits.sort_unstable();
    let check_errors = (0..n).filter(|_| rng.gen_bool(p_true)).count();
    let estimated_ber = check_errors as f64 / n as f64;
    Ok(SiftingOutcome {
        raw_len,
        sifted_len,
        check_bits,
        check_errors,
        estimated_ber,
        threshold,
        aborted: estimated_ber > threshold,
    })
}

/// Both parties' codewords after the public announcement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconciliation {
    pub u_a: BitVector,
    pub u_b: BitVector,
    /// `R_A ⊕ u_A`, sent in the clear.
    pub announcement: BitVector,
    pub ok: bool,
}

pub fn reconcile(cc: &CompositeCode, r_a: &BitVector, r_b: &BitVector) -> Result<Reconciliation> {
    check_len(cc.n(), r_a.len())?;
    check_len(cc.n(), r_b.len())?;
    let c1 = cc.c1();
    let u_a = c1.decode(r_a)?.codeword;
    let announcement = r_a ^ &u_a;
    let u_b = c1.decode(&(&announcement ^ r_b))?.codeword;
    let ok = u_a == u_b;
    Ok(Reconciliation {
        u_a,
        u_b,
        announcement,
        ok,
    })
}

/// Final key for an agreed codeword `u ∈ C1`.
pub fn extract_shared_key(cc: &CompositeCode, u: &BitVector) -> Result<KeyBits> {
    cc.extract_key(u)
}

/// The key obtained the long way: decode `u` with `C2` to `D_i`, form the
/// offset `u ⊕ D_i` and look up its coset index. Agrees with
/// [`extract_shared_key`] whenever the offset is its coset's leader.
pub fn extract_shared_key_by_decoding(cc: &CompositeCode, u: &BitVector) -> Result<Option<KeyBits>> {
    cc.key_via_nearest_subcode(u)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EveMode {
    /// Decode the observed word and take its key.
    Decode,
    /// Guess uniformly among the keys of all `C1` words within `t2` of the
    /// decoded word.
    Ball,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EveOutcome {
    pub u_e: BitVector,
    pub guess: KeyBits,
    pub candidates: usize,
    /// Distinct keys among the candidates.
    pub candidate_keys: Vec<KeyBits>,
}

/// Eve strips the announcement from her string, `v_E = u_A ⊕ E_AE`, decodes it
/// with `C1` and guesses a key.
pub fn eve_attack<R: Rng + ?Sized>(
    cc: &CompositeCode,
    r_e: &BitVector,
    announcement: &BitVector,
    mode: EveMode,
    rng: &mut R,
) -> Result<EveOutcome> {
    check_len(cc.n(), r_e.len())?;
    check_len(cc.n(), announcement.len())?;
    let v_e = announcement ^ r_e;
    let u_e = cc.c1().decode(&v_e)?.codeword;
    match mode {
        EveMode::Decode => {
            let guess = cc.extract_key(&u_e)?;
            Ok(EveOutcome {
                u_e,
                candidate_keys: vec![guess.clone()],
                guess,
                candidates: 1,
            })
        }
        EveMode::Ball => {
            let ball = cc.enumerate_ball(&u_e, cc.c2().t())?;
            let mut keys = ball
                .iter()
                .map(|u| cc.extract_key(u))
                .collect::<Result<Vec<_>>>()?;
            keys.sort();
            keys.dedup();
            let guess = keys[rng.gen_range(0..keys.len())].clone();
            Ok(EveOutcome {
                u_e,
                guess,
                candidates: ball.len(),
                candidate_keys: keys,
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrialOptions {
    pub sifting: bool,
    /// Abort threshold on the estimated error rate when sifting is on.
    pub threshold: f64,
}

impl Default for TrialOptions {
    fn default() -> Self {
        Self {
            sifting: false,
            threshold: 0.11,
        }
    }
}

/// Everything observed in one completed exchange.
#[derive(Clone, Debug, PartialEq)]
pub struct Exchange {
    pub r_a: BitVector,
    pub r_b: BitVector,
    pub r_e: BitVector,
    pub announcement: BitVector,
    pub u_a: BitVector,
    pub u_b: BitVector,
    pub u_e: BitVector,
    pub key_a: KeyBits,
    pub key_b: KeyBits,
    pub eve_key_guess: KeyBits,
    pub eve_ball_guess: KeyBits,
    pub eve_candidates: usize,
    pub reconciliation_ok: bool,
    pub eve_match: bool,
    pub eve_ball_match: bool,
    /// `d(u_A, u_E) ≤ t2`.
    pub within_subcode_radius: bool,
    /// Alice's key is among Eve's ball candidates.
    pub truth_in_ball: bool,
    pub sifting: Option<SiftingOutcome>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TrialResult {
    Aborted {
        sifting: SiftingOutcome,
        reason: String,
    },
    Completed(Box<Exchange>),
}

impl TrialResult {
    pub fn exchange(&self) -> Option<&Exchange> {
        match self {
            TrialResult::Completed(x) => Some(x),
            TrialResult::Aborted { .. } => None,
        }
    }

    pub fn is_aborted(&self) -> bool {
        matches!(self, TrialResult::Aborted { .. })
    }
}

/// One full exchange: `R_A` uniform, `R_B = R_A ⊕ BSC(e_ab)`,
/// `R_E = R_A ⊕ BSC(e_ae)`, reconciliation, extraction and both Eve attacks.
pub fn run_trial(
    cc: &CompositeCode,
    params: &ChannelParams,
    stream: RngStream,
    options: &TrialOptions,
) -> Result<TrialResult> {
    let n = cc.n();
    let sifting = if options.sifting {
        let outcome = simulate_sifting(
            n,
            params.e_ab,
            options.threshold,
            &mut substream(stream, purpose::SIFTING).rng(),
        )?;
        if outcome.aborted {
            let reason = if outcome.sifted_len < 2 * n {
                format!("sifted {} bits, need {}", outcome.sifted_len, 2 * n)
            } else {
                format!(
                    "estimated error rate {} exceeds {}",
                    outcome.estimated_ber, outcome.threshold
                )
            };
            return Ok(TrialResult::Aborted {
                sifting: outcome,
                reason,
            });
        }
        Some(outcome)
    } else {
        None
    };

    let r_a = sample_uniform(n, &mut substream(stream, purpose::ALICE).rng());
    let e_ab = sample_error_pattern(n, params.e_ab, &mut substream(stream, purpose::BOB_CHANNEL).rng())?;
    let e_ae = sample_error_pattern(n, params.e_ae, &mut substream(stream, purpose::EVE_CHANNEL).rng())?;
    let r_b = &r_a ^ &e_ab;
    let r_e = &r_a ^ &e_ae;
    let exchange = exchange_from_strings(cc, r_a, r_b, r_e, stream)?;
    Ok(TrialResult::Completed(Box::new(Exchange { sifting, ..exchange })))
}

/// Runs reconciliation, extraction and both attacks on given raw strings.
pub fn exchange_from_strings(
    cc: &CompositeCode,
    r_a: BitVector,
    r_b: BitVector,
    r_e: BitVector,
    stream: RngStream,
) -> Result<Exchange> {
    let rec = reconcile(cc, &r_a, &r_b)?;
    let key_a = extract_shared_key(cc, &rec.u_a)?;
    let key_b = extract_shared_key(cc, &rec.u_b)?;
    let mut guess_rng = substream(stream, purpose::EVE_GUESS).rng();
    let decode = eve_attack(cc, &r_e, &rec.announcement, EveMode::Decode, &mut guess_rng)?;
    let ball = eve_attack(cc, &r_e, &rec.announcement, EveMode::Ball, &mut guess_rng)?;
    let within_subcode_radius =
        crate::gf2::hamming_distance(&rec.u_a, &decode.u_e)? <= cc.c2().t();
    let truth_in_ball = ball.candidate_keys.contains(&key_a);
    Ok(Exchange {
        eve_match: decode.guess == key_a,
        eve_ball_match: ball.guess == key_a,
        eve_key_guess: decode.guess,
        eve_ball_guess: ball.guess,
        eve_candidates: ball.candidates,
        u_e: decode.u_e,
        reconciliation_ok: rec.ok,
        u_a: rec.u_a,
        u_b: rec.u_b,
        announcement: rec.announcement,
        key_a,
        key_b,
        r_a,
        r_b,
        r_e,
        within_subcode_radius,
        truth_in_ball,
        sifting: None,
    })
}

/// Closed-form values reported next to the simulated rates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theory {
    pub key_rate: f64,
    /// `None` when `e_ae < e_ab`.
    pub eve_guess_bound: Option<f64>,
    /// `1 - Σ_leaders p^w (1-p)^(n-w)` at `p = e_ab`: the exact reconciliation
    /// failure probability of complete decoding.
    pub predicted_recon_fail_rate: f64,
    /// `2^-key_len`.
    pub no_advantage_match_rate: f64,
}

pub fn theory(cc: &CompositeCode, params: &ChannelParams) -> Theory {
    Theory {
        key_rate: key_rate(params),
        eve_guess_bound: eve_guess_bound(cc.n() as u32, params).ok(),
        predicted_recon_fail_rate: predicted_failure_rate(cc, params.e_ab),
        no_advantage_match_rate: (-(cc.key_len() as f64)).exp2(),
    }
}

/// Probability that a BSC(p) error pattern is not a coset leader of `C1`.
pub fn predicted_failure_rate(cc: &CompositeCode, p: f64) -> f64 {
    let n = cc.n() as i32;
    let success: f64 = cc
        .c1()
        .leader_weight_distribution()
        .iter()
        .enumerate()
        .map(|(w, &count)| count as f64 * p.powi(w as i32) * (1.0 - p).powi(n - w as i32))
        .sum();
    (1.0 - success).max(0.0)
}

/// Aggregate statistics of a Monte Carlo run. Rates are over completed
/// (non-aborted) trials and are `null` in JSON when none completed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub n: usize,
    pub k1: usize,
    pub k2: usize,
    pub key_len: usize,
    pub e_ab: f64,
    pub e_ae: f64,
    pub trials: u64,
    pub aborted: u64,
    pub completed: u64,
    pub reconciliation_failures: u64,
    pub eve_matches: u64,
    pub eve_ball_matches: u64,
    pub total_eve_candidates: u64,
    /// Trials with `d(u_A, u_E) ≤ t2` where Alice's key was not a candidate.
    pub ball_soundness_violations: u64,
    /// Trials with `u_A = u_B` but different keys.
    pub key_mismatches: u64,
    pub recon_fail_rate: f64,
    pub eve_match_rate_decode: f64,
    pub eve_match_rate_ball: f64,
    pub mean_eve_candidates: f64,
    pub theory: Theory,
    pub seed: u64,
    pub sifting: bool,
    pub threshold: f64,
}

#[derive(Clone, Copy, Default)]
struct Tally {
    aborted: u64,
    recon_fail: u64,
    eve_match: u64,
    eve_ball_match: u64,
    candidates: u64,
    soundness: u64,
    key_mismatch: u64,
}

impl Tally {
    fn of(result: &TrialResult) -> Self {
        match result {
            TrialResult::Aborted { .. } => Tally {
                aborted: 1,
                ..Tally::default()
            },
            TrialResult::Completed(x) => Tally {
                aborted: 0,
                recon_fail: u64::from(!x.reconciliation_ok),
                eve_match: u64::from(x.eve_match),
                eve_ball_match: u64::from(x.eve_ball_match),
                candidates: x.eve_candidates as u64,
                soundness: u64::from(x.within_subcode_radius && !x.truth_in_ball),
                key_mismatch: u64::from(x.reconciliation_ok && x.key_a != x.key_b),
            },
        }
    }

    fn merge(self, o: Tally) -> Tally {
        Tally {
            aborted: self.aborted + o.aborted,
            recon_fail: self.recon_fail + o.recon_fail,
            eve_match: self.eve_match + o.eve_match,
            eve_ball_match: self.eve_ball_match + o.eve_ball_match,
            candidates: self.candidates + o.candidates,
            soundness: self.soundness + o.soundness,
            key_mismatch: self.key_mismatch + o.key_mismatch,
        }
    }
}

/// Runs `trials` independent exchanges; trial `i` uses stream `(seed, i)`.
/// `workers = None` uses the global thread pool. The report depends only on
/// the inputs, never on the worker count.
pub fn run_experiment(
    cc: &CompositeCode,
    params: &ChannelParams,
    trials: u64,
    seed: u64,
    options: &TrialOptions,
    workers: Option<usize>,
) -> Result<ExperimentReport> {
    if trials == 0 {
        return Err(Error::Domain("trials must be >= 1".into()));
    }
    let work = || {
        (0..trials)
            .into_par_iter()
            .map(|i| run_trial(cc, params, RngStream::new(seed, i), options).map(|r| Tally::of(&r)))
            .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
    };
    let tally = match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::Domain(format!("thread pool: {e}")))?
            .install(work)?,
        None => work()?,
    };

    let completed = trials - tally.aborted;
    let rate = |count: u64| {
        if completed == 0 {
            f64::NAN
        } else {
            count as f64 / completed as f64
        }
    };
    Ok(ExperimentReport {
        n: cc.n(),
        k1: cc.c1().k(),
        k2: cc.c2().k(),
        key_len: cc.key_len(),
        e_ab: params.e_ab,
        e_ae: params.e_ae,
        trials,
        aborted: tally.aborted,
        completed,
        reconciliation_failures: tally.recon_fail,
        eve_matches: tally.eve_match,
        eve_ball_matches: tally.eve_ball_match,
        total_eve_candidates: tally.candidates,
        ball_soundness_violations: tally.soundness,
        key_mismatches: tally.key_mismatch,
        recon_fail_rate: rate(tally.recon_fail),
        eve_match_rate_decode: rate(tally.eve_match),
        eve_match_rate_ball: rate(tally.eve_ball_match),
        mean_eve_candidates: rate(tally.candidates),
        theory: theory(cc, params),
        seed,
        sifting: options.sifting,
        threshold: options.threshold,
    })
}

pub const CSV_COLUMNS: [&str; 14] = [
    "n",
    "k1",
    "k2",
    "key_len",
    "e_ab",
    "e_ae",
    "trials",
    "recon_fail_rate",
    "eve_match_rate_decode",
    "eve_match_rate_ball",
    "mean_candidates",
    "theory_key_rate",
    "theory_eve_bound",
    "seed",
];

impl ExperimentReport {
    pub fn csv_header() -> String {
        CSV_COLUMNS.join(",")
    }

    /// One CSV row, floats at 6 significant digits; an undefined value is empty.
    pub fn csv_row(&self) -> String {
        let fields = [
            self.n.to_string(),
            self.k1.to_string(),
            self.k2.to_string(),
            self.key_len.to_string(),
            format_sig6(self.e_ab),
            format_sig6(self.e_ae),
            self.trials.to_string(),
            format_sig6(self.recon_fail_rate),
            format_sig6(self.eve_match_rate_decode),
            format_sig6(self.eve_match_rate_ball),
            format_sig6(self.mean_eve_candidates),
            format_sig6(self.theory.key_rate),
            self.theory.eve_guess_bound.map(format_sig6).unwrap_or_default(),
            self.seed.to_string(),
        ];
        fields.join(",")
    }
}

/// `%g`-style rendering with 6 significant digits. NaN renders empty.
pub fn format_sig6(x: f64) -> String {
    if x.is_nan() {
        return String::new();
    }
    if x == 0.0 {
        return "0".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
