//! Bit-MAP and block-MAP decoding on the binary erasure channel, and Monte
//! Carlo estimation of the EXIT function `h(ε)` and block erasure rate.
//!
//! An erased bit `i` is recoverable iff no codeword supported inside the
//! erased set has a 1 at `i`. Eliminating the generator on the unerased
//! columns leaves exactly a basis of those codewords.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::numfmt::significant;

/// Channel output: `None` marks an erasure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErasureWord {
    values: Vec<Option<bool>>,
}

impl ErasureWord {
    pub fn new(values: Vec<Option<bool>>) -> Self {
        Self { values }
    }

    pub fn from_codeword(c: &BitVector, erased: &BitVector) -> Result<Self> {
        if c.len() != erased.len() {
            return Err(Error::LengthMismatch {
                expected: c.len(),
                actual: erased.len(),
            });
        }
        Ok(Self {
            values: (0..c.len()).map(|i| (!erased.get(i)).then(|| c.get(i))).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Option<bool>] {
        &self.values
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        self.values[i]
    }

    pub fn erased_mask(&self) -> BitVector {
        BitVector::from_bits(&self.values.iter().map(Option::is_none).collect::<Vec<_>>())
    }

    pub fn erased_set(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.values[i].is_none()).collect()
    }

    /// The word with erasures filled by `0`, and `None` if any remain.
    pub fn complete(&self) -> Option<BitVector> {
        self.values
            .iter()
            .copied()
            .collect::<Option<Vec<bool>>>()
            .map(|b| BitVector::from_bits(&b))
    }
}

/// Erases each position of `c` independently with probability `epsilon`.
pub fn bec_transmit<R: Rng + ?Sized>(c: &BitVector, epsilon: f64, rng: &mut R) -> Result<ErasureWord> {
    check_epsilon(epsilon)?;
    let erased = erasure_pattern(c.len(), epsilon, rng);
    ErasureWord::from_codeword(c, &erased)
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::InvalidParameters(format!(
            "epsilon must lie in [0,1], got {epsilon}"
        )));
    }
    Ok(())
}

fn erasure_pattern<R: Rng + ?Sized>(len: usize, epsilon: f64, rng: &mut R) -> BitVector {
    let mut e = BitVector::zeros(len);
    for i in 0..len {
        if rng.gen::<f64>() < epsilon {
            e.set(i, true);
        }
    }
    e
}

/// Result of eliminating a generator on the unerased columns.
#[derive(Debug, Clone)]
pub struct ErasureAnalysis {
    /// `(pivot column, reduced row)`; the pivot columns are unerased.
    pivots: Vec<(usize, BitVector)>,
    /// Nonzero codewords supported on the erased set, forming a basis.
    pub ambiguous: Vec<BitVector>,
    /// Erased positions that no decoder can recover.
    pub unresolved: BitVector,
}

/// Gauss–Jordan elimination of `g` restricted to pivots outside `erased`.
pub fn analyze_erasures(g: &BitMatrix, erased: &BitVector) -> Result<ErasureAnalysis> {
    if erased.len() != g.num_cols() {
        return Err(Error::DimensionMismatch(format!(
            "generator has {} columns, word has {} positions",
            g.num_cols(),
            erased.len()
        )));
    }
    let mut rows: Vec<BitVector> = g.rows().to_vec();
    let mut pivots: Vec<(usize, BitVector)> = Vec::new();
    for col in 0..g.num_cols() {
        if rows.is_empty() {
            break;
        }
        if erased.get(col) {
            continue;
        }
        let Some(p) = rows.iter().position(|r| r.get(col)) else {
            continue;
        };
        let pivot = rows.swap_remove(p);
        for r in rows.iter_mut().filter(|r| r.get(col)) {
            r.xor_assign(&pivot);
        }
        for (_, r) in pivots.iter_mut().filter(|(_, r)| r.get(col)) {
            r.xor_assign(&pivot);
        }
        pivots.push((col, pivot));
    }
    let mut unresolved = BitVector::zeros(g.num_cols());
    rows.retain(|r| !r.is_zero());
    for r in &rows {
        for i in r.iter_ones() {
            unresolved.set(i, true);
        }
    }
    Ok(ErasureAnalysis {
        pivots,
        ambiguous: rows,
        unresolved,
    })
}

/// Bit-MAP decoding: fills every recoverable erasure with its unique value.
///
/// Fails with [`Error::Inconsistent`] when the unerased values fit no codeword.
pub fn bitmap_erasure_decode(g: &BitMatrix, y: &ErasureWord) -> Result<ErasureWord> {
    let analysis = analyze_erasures(g, &y.erased_mask())?;
    // Any codeword is Σ_s c_{p_s} R_s plus something supported on the erasures.
    let mut c = BitVector::zeros(y.len());
    for (col, row) in &analysis.pivots {
        if y.get(*col) == Some(true) {
            c.xor_assign(row);
        }
    }
    let mut out = Vec::with_capacity(y.len());
    for i in 0..y.len() {
        match y.get(i) {
            Some(bit) if bit != c.get(i) => return Err(Error::Inconsistent),
            Some(bit) => out.push(Some(bit)),
            None if analysis.unresolved.get(i) => out.push(None),
            None => out.push(Some(c.get(i))),
        }
    }
    Ok(ErasureWord::new(out))
}

/// Which bit the EXIT estimate is taken at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimMode {
    /// `h_0` at coordinate 0, which suffices for transitive codes; plus `P_B`.
    BitmapAtZero,
    /// Block erasure rate only.
    BlockMap,
    /// `h` averaged over a uniformly random coordinate per trial; plus `P_B`.
    FullBitmap,
}

impl std::str::FromStr for SimMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bitmap_at_zero" | "bitmap-at-zero" => Ok(Self::BitmapAtZero),
            "block_map" | "block-map" => Ok(Self::BlockMap),
            "full_bitmap" | "full-bitmap" => Ok(Self::FullBitmap),
            other => Err(Error::InvalidParameters(format!(
                "unknown mode {other:?} (expected bitmap_at_zero, block_map or full_bitmap)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub epsilons: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    pub mode: SimMode,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameters("trials must be >= 1".into()));
        }
        if self.epsilons.is_empty() {
            return Err(Error::InvalidParameters("epsilon grid is empty".into()));
        }
        self.epsilons.iter().try_for_each(|&e| check_epsilon(e))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimRecord {
    pub epsilon: f64,
    /// `None` in block-only mode.
    pub h: Option<f64>,
    /// `ε · h`.
    pub pb: Option<f64>,
    /// Fraction of trials where some erased bit stayed unresolved.
    pub block_erasure_rate: f64,
    pub trials: u64,
    /// Resolved erasures over all erasures, across the block trials.
    pub determined_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimResult {
    pub seed: u64,
    pub records: Vec<SimRecord>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Tally {
    bit_failures: u64,
    block_failures: u64,
    erased: u64,
    resolved: u64,
}

impl std::ops::Add for Tally {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self {
            bit_failures: self.bit_failures + o.bit_failures,
            block_failures: self.block_failures + o.block_failures,
            erased: self.erased + o.erased,
            resolved: self.resolved + o.resolved,
        }
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Per-trial generator, a pure function of `(seed, ε index, trial)`.
pub fn trial_rng(seed: u64, eps_index: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix(splitmix(splitmix(seed) ^ eps_index) ^ trial))
}

fn run_trial(g: &BitMatrix, epsilon: f64, mode: SimMode, rng: &mut ChaCha8Rng) -> Result<Tally> {
    let len = g.num_cols();
    let erased = erasure_pattern(len, epsilon, rng);
    let mut tally = Tally::default();

    let block = analyze_erasures(g, &erased)?;
    tally.block_failures = u64::from(!block.ambiguous.is_empty());
    let erased_count = erased.weight() as u64;
    tally.erased = erased_count;
    tally.resolved = erased_count - block.unresolved.weight() as u64;

    let target = match mode {
        SimMode::BlockMap => return Ok(tally),
        SimMode::BitmapAtZero => 0,
        SimMode::FullBitmap => rng.gen_range(0..len),
    };
    // The EXIT function conditions on every other output only.
    let unresolved = if erased.get(target) {
        block.unresolved.get(target)
    } else {
        let mut e = erased;
        e.set(target, true);
        analyze_erasures(g, &e)?.unresolved.get(target)
    };
    tally.bit_failures = u64::from(unresolved);
    Ok(tally)
}

fn record(epsilon: f64, mode: SimMode, trials: u64, t: Tally) -> SimRecord {
    let h = (mode != SimMode::BlockMap).then(|| t.bit_failures as f64 / trials as f64);
    SimRecord {
        epsilon,
        h,
        pb: h.map(|h| epsilon * h),
        block_erasure_rate: t.block_failures as f64 / trials as f64,
        trials,
        determined_fraction: if t.erased == 0 {
            1.0
        } else {
            t.resolved as f64 / t.erased as f64
        },
    }
}

fn check_sim(g: &BitMatrix, cfg: &SimConfig) -> Result<()> {
    cfg.validate()?;
    if g.num_cols() == 0 {
        return Err(Error::InvalidParameters("generator has no columns".into()));
    }
    Ok(())
}

/// Runs all trials in parallel on the current rayon pool. Each trial draws
/// from its own stream and counts are summed, so the output does not depend
/// on scheduling.
pub fn exit_and_erasure_rates(g: &BitMatrix, cfg: &SimConfig) -> Result<SimResult> {
    check_sim(g, cfg)?;
    let records = cfg
        .epsilons
        .iter()
        .enumerate()
        .map(|(ei, &eps)| {
            let t = (0..cfg.trials)
                .into_par_iter()
                .map(|t| run_trial(g, eps, cfg.mode, &mut trial_rng(cfg.seed, ei as u64, t)))
                .try_reduce(Tally::default, |a, b| Ok(a + b))?;
            Ok(record(eps, cfg.mode, cfg.trials, t))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SimResult {
        seed: cfg.seed,
        records,
    })
}

/// Single-threaded reference for [`exit_and_erasure_rates`].
pub fn exit_and_erasure_rates_sequential(g: &BitMatrix, cfg: &SimConfig) -> Result<SimResult> {
    check_sim(g, cfg)?;
    let mut records = Vec::with_capacity(cfg.epsilons.len());
    for (ei, &eps) in cfg.epsilons.iter().enumerate() {
        let mut total = Tally::default();
        for t in 0..cfg.trials {
            total = total + run_trial(g, eps, cfg.mode, &mut trial_rng(cfg.seed, ei as u64, t))?;
        }
        records.push(record(eps, cfg.mode, cfg.trials, total));
    }
    Ok(SimResult {
        seed: cfg.seed,
        records,
    })
}

/// Largest length [`exact_h0`] will enumerate.
pub const EXACT_MAX_LENGTH: usize = 24;

/// `h_0(ε)` by summing over all erasure patterns of the other positions.
pub fn exact_h0(g: &BitMatrix, epsilon: f64) -> Result<f64> {
    check_epsilon(epsilon)?;
    let len = g.num_cols();
    if len == 0 || len > EXACT_MAX_LENGTH {
        return Err(Error::TooLarge(format!("length {len} outside 1..={EXACT_MAX_LENGTH}")));
    }
    let mut h = 0.0;
    for pattern in 0u64..(1 << (len - 1)) {
        let mut erased = BitVector::zeros(len);
        erased.set(0, true);
        for b in 0..len - 1 {
            if pattern >> b & 1 == 1 {
                erased.set(b + 1, true);
            }
        }
        if analyze_erasures(g, &erased)?.unresolved.get(0) {
            let w = pattern.count_ones() as i32;
            h += epsilon.powi(w) * (1.0 - epsilon).powi(len as i32 - 1 - w);
        }
    }
    Ok(h)
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| significant(v, 6)).unwrap_or_default()
}

/// CSV with header `epsilon,h,Pb,PB,trials,seed`; 6 significant digits.
pub fn to_csv(result: &SimResult) -> String {
    let mut s = String::from("epsilon,h,Pb,PB,trials,seed\n");
    for r in &result.records {
        s.push_str(&format!(
            "{},{},{},{},{},{}\n",
            significant(r.epsilon, 6),
            opt(r.h),
            opt(r.pb),
            significant(r.block_erasure_rate, 6),
            r.trials,
            result.seed
        ));
    }
    s
}
