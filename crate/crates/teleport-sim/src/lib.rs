//! Standard one-qubit teleportation through an arbitrary two-qubit channel,
//! averaged over Haar-random inputs.
//!
//! Qubit 0 holds the input, qubits 1 and 2 the channel; Bob owns qubit 2.

mod stats;

use linalg_core::{kron, pauli, Complex64, ComplexMatrix, DensityMatrix, PureState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use states::BellKind;

pub use stats::Accumulator;

/// Outcomes below this probability are skipped.
pub const MIN_OUTCOME_PROBABILITY: f64 = 1e-14;
pub const UNITARY_TOL: f64 = 1e-10;
/// Samples per shard; the shard plan depends only on the sample count.
pub const SHARD_SIZE: u64 = 4096;
pub const RNG_NAME: &str = "ChaCha8 (rand_chacha), one stream per shard";

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TeleportError {
    #[error("channel must be a two-qubit (4x4) state, got dimension {0}")]
    ChannelDimension(usize),
    #[error("input must be a single qubit, got dimension {0}")]
    InputDimension(usize),
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("pre-rotation on qubit {qubit} must be a 2x2 unitary (deviation {deviation:.3e})")]
    NotUnitary { qubit: usize, deviation: f64 },
    #[error(transparent)]
    Linalg(#[from] linalg_core::LinalgError),
}

/// Bob's correction per Bell outcome, in `BellKind::ALL` order.
pub fn correction(outcome: BellKind) -> ComplexMatrix {
    match outcome {
        BellKind::PhiPlus => pauli::identity(),
        BellKind::PhiMinus => pauli::z(),
        BellKind::PsiPlus => pauli::x(),
        BellKind::PsiMinus => pauli::y(),
    }
}

/// Local rotation taking the singlet to phi+ when applied to qubit 2.
pub fn singlet_to_phi_plus() -> (ComplexMatrix, ComplexMatrix) {
    let zx = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]).expect("2x2");
    (pauli::identity(), zx)
}

/// Uniform point on the Bloch sphere: four standard normals, normalised.
pub fn haar_random_qubit<R: Rng + ?Sized>(rng: &mut R) -> PureState {
    loop {
        let mut g = || -> f64 { rng.sample(StandardNormal) };
        let amps = vec![Complex64::new(g(), g()), Complex64::new(g(), g())];
        if let Ok(s) = PureState::normalised(amps) {
            return s;
        }
    }
}

/// Probability and conditional fidelity of one Bell outcome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Outcome {
    pub probability: f64,
    pub fidelity: f64,
}

/// All four outcomes of teleporting `input` through `channel`.
pub fn teleport_outcomes(channel: &ComplexMatrix, input: &PureState) -> Result<[Outcome; 4], TeleportError> {
    if channel.dim() != 4 {
        return Err(TeleportError::ChannelDimension(channel.dim()));
    }
    if input.dim() != 2 {
        return Err(TeleportError::InputDimension(input.dim()));
    }
    let full = kron(&input.projector(), channel);
    let chi = input.amplitudes();
    Ok(BellKind::ALL.map(|kind| {
        let bell = kind.state();
        let b = bell.amplitudes();
        // <B|_{01} full |B>_{01}, leaving Bob's 2x2 block
        let mut bob = ComplexMatrix::zeros(2);
        for q in 0..2 {
            for q2 in 0..2 {
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..4 {
                    for j in 0..4 {
                        acc += b[i].conj() * full[(2 * i + q, 2 * j + q2)] * b[j];
                    }
                }
                bob[(q, q2)] = acc;
            }
        }
        let probability = bob.trace().re;
        if probability < MIN_OUTCOME_PROBABILITY {
            return Outcome { probability, fidelity: 0.0 };
        }
        let u = correction(kind);
        let out = &(&u * &bob) * &u.dagger();
        let overlap: Complex64 =
            (0..2).flat_map(|a| (0..2).map(move |c| (a, c))).map(|(a, c)| chi[a].conj() * out[(a, c)] * chi[c]).sum();
        Outcome { probability, fidelity: overlap.re / probability }
    }))
}

/// Output fidelity averaged over the four outcomes, weighted by probability.
pub fn teleport_once(channel: &DensityMatrix, input: &PureState) -> Result<f64, TeleportError> {
    Ok(teleport_outcomes(channel.matrix(), input)?
        .iter()
        .filter(|o| o.probability >= MIN_OUTCOME_PROBABILITY)
        .map(|o| o.probability * o.fidelity)
        .sum())
}

fn unitarity_deviation(u: &ComplexMatrix) -> f64 {
    (&u.dagger() * u).max_abs_diff(&ComplexMatrix::identity(u.dim()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TeleportRun {
    pub channel: DensityMatrix,
    pub samples: u64,
    pub seed: u64,
    /// Local unitaries on qubits 1 and 2, applied to the channel first.
    pub pre_rotation: Option<(ComplexMatrix, ComplexMatrix)>,
}

impl TeleportRun {
    pub fn new(channel: DensityMatrix, samples: u64, seed: u64) -> Self {
        TeleportRun { channel, samples, seed, pre_rotation: None }
    }

    pub fn with_pre_rotation(mut self, a: ComplexMatrix, b: ComplexMatrix) -> Self {
        self.pre_rotation = Some((a, b));
        self
    }

    fn effective_channel(&self) -> Result<ComplexMatrix, TeleportError> {
        let c = self.channel.matrix();
        if c.dim() != 4 {
            return Err(TeleportError::ChannelDimension(c.dim()));
        }
        if self.samples == 0 {
            return Err(TeleportError::NoSamples);
        }
        let Some((a, b)) = &self.pre_rotation else {
            return Ok(c.clone());
        };
        for (qubit, u) in [(1, a), (2, b)] {
            let deviation = if u.dim() == 2 { unitarity_deviation(u) } else { f64::INFINITY };
            if deviation > UNITARY_TOL {
                return Err(TeleportError::NotUnitary { qubit, deviation });
            }
        }
        Ok(c.conjugate_by(&kron(a, b)))
    }

    /// `(shard index, length)` pairs covering all samples.
    fn shard_plan(&self) -> Vec<(u64, u64)> {
        (0..self.samples.div_ceil(SHARD_SIZE)).map(|i| (i, SHARD_SIZE.min(self.samples - i * SHARD_SIZE))).collect()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct ShardStats {
    fidelity: Accumulator,
    weighted: [f64; 4],
    probability: [f64; 4],
}

impl ShardStats {
    fn merge(self, o: ShardStats) -> ShardStats {
        let add = |a: [f64; 4], b: [f64; 4]| std::array::from_fn(|k| a[k] + b[k]);
        ShardStats {
            fidelity: self.fidelity.merge(o.fidelity),
            weighted: add(self.weighted, o.weighted),
            probability: add(self.probability, o.probability),
        }
    }
}

fn run_shard(channel: &ComplexMatrix, seed: u64, shard: u64, len: u64) -> Result<ShardStats, TeleportError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard);
    let mut s = ShardStats::default();
    for _ in 0..len {
        let input = haar_random_qubit(&mut rng);
        let outcomes = teleport_outcomes(channel, &input)?;
        let mut f = 0.0;
        for (k, o) in outcomes.iter().enumerate() {
            if o.probability >= MIN_OUTCOME_PROBABILITY {
                f += o.probability * o.fidelity;
                s.weighted[k] += o.probability * o.fidelity;
                s.probability[k] += o.probability;
            }
        }
        s.fidelity.push(f);
    }
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SimResult {
    pub mean_fidelity: f64,
    pub std_error: f64,
    /// Conditional fidelity per outcome in phi+, phi-, psi+, psi- order.
    pub per_outcome_fidelities: [f64; 4],
    pub outcome_probabilities: [f64; 4],
    pub samples: u64,
    pub seed: u64,
    pub shards: u64,
    pub rng: &'static str,
}

fn finish(tr: &TeleportRun, s: ShardStats) -> SimResult {
    let n = s.fidelity.count as f64;
    SimResult {
        mean_fidelity: s.fidelity.mean.clamp(0.0, 1.0),
        std_error: s.fidelity.std_error(),
        per_outcome_fidelities: std::array::from_fn(|k| {
            if s.probability[k] > 0.0 {
                s.weighted[k] / s.probability[k]
            } else {
                0.0
            }
        }),
        outcome_probabilities: s.probability.map(|p| p / n),
        samples: tr.samples,
        seed: tr.seed,
        shards: tr.samples.div_ceil(SHARD_SIZE),
        rng: RNG_NAME,
    }
}

/// Monte Carlo run with shards spread over the rayon pool. Shards are merged
/// in index order, so the result equals [`run_sequential`] bit for bit.
pub fn run(tr: &TeleportRun) -> Result<SimResult, TeleportError> {
    let channel = tr.effective_channel()?;
    let parts: Vec<ShardStats> = tr
        .shard_plan()
        .into_par_iter()
        .map(|(i, len)| run_shard(&channel, tr.seed, i, len))
        .collect::<Result<_, _>>()?;
    Ok(finish(tr, parts.into_iter().fold(ShardStats::default(), ShardStats::merge)))
}

pub fn run_sequential(tr: &TeleportRun) -> Result<SimResult, TeleportError> {
    let channel = tr.effective_channel()?;
    let mut total = ShardStats::default();
    for (i, len) in tr.shard_plan() {
        total = total.merge(run_shard(&channel, tr.seed, i, len)?);
    }
    Ok(finish(tr, total))
}
