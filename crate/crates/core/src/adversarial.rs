//! The adversarial game: score, gradients and the alternating training loop.
//!
//! The score `S(θ, w) = P_w(Real | target) − P_w(Real | v_θ)` is maximised by
//! the discriminator and minimised by the generator.

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::discriminator::{basis_real_probabilities, DiscriminatorConfig, DiscriminatorWeights};
use crate::distribution::{target_state, DiscreteDistribution};
use crate::error::{QuganError, Result};
use crate::generator::{generate_state, num_params, param_kinds, GeneratorParams, ParamKind};
use crate::metrics::{fidelity, kl_divergence, trace_distance_pure};
use crate::statevec::StateVector;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn real_probability(r: &[f64], state: &StateVector) -> f64 {
    state
        .amplitudes()
        .iter()
        .zip(r)
        .map(|(a, r)| a.norm_sqr() * r)
        .sum()
}

/// Exact `S(θ, w)`.
pub fn score(
    theta: &GeneratorParams,
    w: &DiscriminatorWeights,
    target: &StateVector,
    cfg: &DiscriminatorConfig,
) -> Result<f64> {
    let n = target.num_qubits();
    let r = basis_real_probabilities(w, cfg, n)?;
    let generated = generate_state(n, theta)?;
    Ok(real_probability(&r, target) - real_probability(&r, &generated))
}

fn bernoulli_mean(p: f64, shots: usize, rng: &mut impl Rng) -> f64 {
    (0..shots).filter(|_| rng.gen::<f64>() < p).count() as f64 / shots as f64
}

fn sampled_difference(p_real: f64, p_fake: f64, shots: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let real = bernoulli_mean(p_real, shots, &mut rng);
    let fake = bernoulli_mean(p_fake, shots, &mut rng);
    real - fake
}

/// `Ŝ_l`: `l` labelled runs on each of the target and the generated state.
pub fn score_sampled(
    theta: &GeneratorParams,
    w: &DiscriminatorWeights,
    target: &StateVector,
    cfg: &DiscriminatorConfig,
    shots: usize,
    seed: u64,
) -> Result<f64> {
    if shots == 0 {
        return Err(QuganError::InvalidArgument("shots must be ≥ 1".into()));
    }
    let n = target.num_qubits();
    let r = basis_real_probabilities(w, cfg, n)?;
    let generated = generate_state(n, theta)?;
    Ok(sampled_difference(
        real_probability(&r, target),
        real_probability(&r, &generated),
        shots,
        seed,
    ))
}

/// Coefficients of the four-term shift rule for gates with frequencies `½, 1`.
const D1: f64 = (SQRT_2 + 1.0) / (4.0 * SQRT_2);
const D2: f64 = (SQRT_2 - 1.0) / (4.0 * SQRT_2);

/// Evaluation offsets and weights of the shift rule for one parameter.
fn shift_rule(kind: ParamKind) -> &'static [(f64, f64)] {
    match kind {
        ParamKind::Ry => &[(FRAC_PI_2, 0.5), (-FRAC_PI_2, -0.5)],
        ParamKind::Cry => &[
            (FRAC_PI_2, D1),
            (-FRAC_PI_2, -D1),
            (3.0 * FRAC_PI_2, -D2),
            (-3.0 * FRAC_PI_2, D2),
        ],
    }
}

/// Evaluates `f` on every index, in parallel when asked. Output order always
/// follows the input order.
fn map_indices<F>(len: usize, parallel: bool, f: F) -> Result<Vec<f64>>
where
    F: Fn(usize) -> Result<f64> + Sync + Send,
{
    if parallel {
        (0..len).into_par_iter().map(f).collect()
    } else {
        (0..len).map(f).collect()
    }
}

/// What the generator can change: `P(Real | v_θ)` for fixed `r`.
struct GeneratorObjective<'a> {
    n: usize,
    r: &'a [f64],
    target_real: f64,
    shots: usize,
}

impl GeneratorObjective<'_> {
    fn eval(&self, theta: &GeneratorParams, seed: u64) -> Result<f64> {
        let fake = real_probability(self.r, &generate_state(self.n, theta)?);
        Ok(if self.shots == 0 {
            self.target_real - fake
        } else {
            sampled_difference(self.target_real, fake, self.shots, seed)
        })
    }

    fn gradient(&self, theta: &GeneratorParams, seeds: &[u64], parallel: bool) -> Result<Vec<f64>> {
        let kinds = param_kinds(self.n);
        // seed slots per parameter, four each, in parameter order
        map_indices(kinds.len(), parallel, |i| {
            shift_rule(kinds[i])
                .iter()
                .enumerate()
                .map(|(s, &(offset, coef))| {
                    let seed = seeds.get(4 * i + s).copied().unwrap_or(0);
                    Ok(coef * self.eval(&theta.shifted(i, offset), seed)?)
                })
                .sum()
        })
    }
}

/// `∂S/∂θ_i` by the shift rule: two terms for `R_Y` angles and four terms for
/// `CR_Y` angles, whose expectation carries frequencies `½` and `1`.
pub fn grad_theta(
    theta: &GeneratorParams,
    w: &DiscriminatorWeights,
    target: &StateVector,
    cfg: &DiscriminatorConfig,
) -> Result<Vec<f64>> {
    let n = target.num_qubits();
    let r = basis_real_probabilities(w, cfg, n)?;
    let objective = GeneratorObjective {
        n,
        r: &r,
        target_real: real_probability(&r, target),
        shots: 0,
    };
    objective.gradient(theta, &[], false)
}

/// What the discriminator can change: `S` as a function of `w` for fixed
/// target and generated distributions.
struct DiscriminatorObjective<'a> {
    n: usize,
    cfg: &'a DiscriminatorConfig,
    target_probs: Vec<f64>,
    fake_probs: Vec<f64>,
    shots: usize,
}

impl DiscriminatorObjective<'_> {
    fn eval(&self, w: &DiscriminatorWeights, seed: u64) -> Result<f64> {
        let r = basis_real_probabilities(w, self.cfg, self.n)?;
        let (real, fake) = (dot(&self.target_probs, &r), dot(&self.fake_probs, &r));
        Ok(if self.shots == 0 {
            real - fake
        } else {
            sampled_difference(real, fake, self.shots, seed)
        })
    }

    fn gradient(
        &self,
        w: &DiscriminatorWeights,
        h: f64,
        seeds: &[u64],
        parallel: bool,
    ) -> Result<Vec<f64>> {
        map_indices(w.len(), parallel, |i| {
            let s = |k: usize| seeds.get(2 * i + k).copied().unwrap_or(0);
            let up = self.eval(&w.shifted(i, h), s(0))?;
            let down = self.eval(&w.shifted(i, -h), s(1))?;
            Ok((up - down) / (2.0 * h))
        })
    }
}

/// `∂S/∂w_i` by central differences with step `fd_step`.
pub fn grad_w(
    theta: &GeneratorParams,
    w: &DiscriminatorWeights,
    target: &StateVector,
    cfg: &DiscriminatorConfig,
    fd_step: f64,
) -> Result<Vec<f64>> {
    if !(fd_step > 0.0) {
        return Err(QuganError::OutOfDomain {
            value: fd_step,
            domain: "fd_step > 0",
        });
    }
    let n = target.num_qubits();
    let objective = DiscriminatorObjective {
        n,
        cfg,
        target_probs: target.probabilities(),
        fake_probs: generate_state(n, theta)?.probabilities(),
        shots: 0,
    };
    objective.gradient(
        &DiscriminatorWeights::unchecked(w.as_slice().to_vec()),
        fd_step,
        &[],
        false,
    )
}

/// Largest score over a set of discriminator weights.
pub fn minmax_gap(
    theta: &GeneratorParams,
    target: &StateVector,
    cfg: &DiscriminatorConfig,
    w_grid: &[DiscriminatorWeights],
) -> Result<f64> {
    w_grid
        .iter()
        .map(|w| score(theta, w, target, cfg))
        .try_fold(f64::NEG_INFINITY, |best, s| Ok(best.max(s?)))
}

#[derive(Clone, Debug)]
pub struct TrainConfig {
    pub n_qubits: usize,
    pub epochs: usize,
    /// Discriminator ascent steps per epoch.
    pub n_d: usize,
    /// Generator descent steps per epoch.
    pub n_g: usize,
    pub lr_d: f64,
    pub lr_g: f64,
    /// Measurements per score estimate; 0 uses exact probabilities.
    pub shots: usize,
    pub seed: u64,
    /// Half-width of the central difference used for `∂S/∂w`. The label
    /// probability is nearly flat around `w = 0`, so a wide step is used
    /// during training.
    pub fd_step: f64,
    /// Initial angles are drawn uniformly from `[0, theta_init_max)`.
    pub theta_init_max: f64,
    pub parallel: bool,
    pub discriminator: DiscriminatorConfig,
}

impl TrainConfig {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            epochs: 300,
            n_d: 9,
            n_g: 1,
            lr_d: 20.0,
            lr_g: 2.0,
            shots: 0,
            seed: 0,
            fd_step: 0.5,
            theta_init_max: FRAC_PI_2,
            parallel: false,
            discriminator: DiscriminatorConfig::for_qubits(n_qubits),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(QuganError::Config(msg.into()));
        if self.n_qubits == 0 {
            return bad("n_qubits must be ≥ 1");
        }
        if self.epochs == 0 || self.n_d == 0 || self.n_g == 0 {
            return bad("epochs, n_d and n_g must be ≥ 1");
        }
        if !(self.lr_d > 0.0 && self.lr_g > 0.0) {
            return bad("learning rates must be positive");
        }
        if !(self.fd_step > 0.0) {
            return bad("fd_step must be positive");
        }
        if !(self.theta_init_max > 0.0 && self.theta_init_max.is_finite()) {
            return bad("theta_init_max must be positive");
        }
        if self.discriminator.m1 == 0 || self.discriminator.m2 == 0 {
            return bad("m1 and m2 must be ≥ 1");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpochRecord {
    pub epoch: usize,
    pub score: f64,
    pub fidelity: f64,
    pub kl: f64,
    pub trace_distance: f64,
    pub theta: Vec<f64>,
    pub w: Vec<f64>,
}

/// `initial` is taken before any update, `records[e]` after epoch `e + 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainTrace {
    pub initial: EpochRecord,
    pub records: Vec<EpochRecord>,
}

impl TrainTrace {
    pub fn last(&self) -> &EpochRecord {
        self.records.last().unwrap_or(&self.initial)
    }

    pub fn final_params(&self) -> Result<(GeneratorParams, DiscriminatorWeights)> {
        let last = self.last();
        Ok((
            GeneratorParams::new(last.theta.clone())?,
            DiscriminatorWeights::new(last.w.clone())?,
        ))
    }
}

fn record(
    epoch: usize,
    theta: &GeneratorParams,
    w: &DiscriminatorWeights,
    target: &DiscreteDistribution,
    target_ket: &StateVector,
    cfg: &DiscriminatorConfig,
) -> Result<EpochRecord> {
    let generated = generate_state(target.n_qubits(), theta)?;
    Ok(EpochRecord {
        epoch,
        score: score(theta, w, target_ket, cfg)?,
        fidelity: fidelity(target_ket, &generated)?,
        kl: kl_divergence(target, &generated)?,
        trace_distance: trace_distance_pure(target_ket, &generated)?,
        theta: theta.thetas().to_vec(),
        w: w.as_slice().to_vec(),
    })
}

/// Alternating training: per epoch, `n_d` projected ascent steps on `w`, then
/// `n_g` descent steps on `θ`.
pub fn train(cfg: &TrainConfig, target: &DiscreteDistribution) -> Result<TrainTrace> {
    cfg.validate()?;
    let n = cfg.n_qubits;
    if target.n_qubits() != n {
        return Err(QuganError::DimensionMismatch {
            expected: 1 << n,
            actual: target.len(),
        });
    }
    let disc = &cfg.discriminator;
    let target_ket = target_state(target);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut theta = GeneratorParams::new(
        (0..num_params(n))
            .map(|_| rng.gen_range(0.0..cfg.theta_init_max))
            .collect(),
    )?;
    let mut w = DiscriminatorWeights::new((0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect())?;
    let draw_seeds = |count: usize, rng: &mut ChaCha8Rng| -> Vec<u64> {
        if cfg.shots == 0 {
            Vec::new()
        } else {
            (0..count).map(|_| rng.gen()).collect()
        }
    };

    let initial = record(0, &theta, &w, target, &target_ket, disc)?;
    let mut records = Vec::with_capacity(cfg.epochs);
    for epoch in 1..=cfg.epochs {
        for _ in 0..cfg.n_d {
            let objective = DiscriminatorObjective {
                n,
                cfg: disc,
                target_probs: target.masses().to_vec(),
                fake_probs: generate_state(n, &theta)?.probabilities(),
                shots: cfg.shots,
            };
            let seeds = draw_seeds(2 * n, &mut rng);
            let g = objective.gradient(&w, cfg.fd_step, &seeds, cfg.parallel)?;
            w = DiscriminatorWeights::clipped(
                w.as_slice()
                    .iter()
                    .zip(&g)
                    .map(|(v, d)| v + cfg.lr_d * d)
                    .collect(),
            );
        }
        let r = basis_real_probabilities(&w, disc, n)?;
        let objective = GeneratorObjective {
            n,
            r: &r,
            target_real: dot(target.masses(), &r),
            shots: cfg.shots,
        };
        for _ in 0..cfg.n_g {
            let seeds = draw_seeds(4 * theta.len(), &mut rng);
            let g = objective.gradient(&theta, &seeds, cfg.parallel)?;
            theta = GeneratorParams::new(
                theta
                    .thetas()
                    .iter()
                    .zip(&g)
                    .map(|(t, d)| t - cfg.lr_g * d)
                    .collect(),
            )?;
        }
        records.push(record(epoch, &theta, &w, target, &target_ket, disc)?);
    }
    Ok(TrainTrace { initial, records })
}
