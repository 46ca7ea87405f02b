//! Acceptance run: one PASS/FAIL line per criterion. Exits non-zero if any fails.

use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qugan::adversarial::{grad_theta, score};
use qugan::discriminator::discriminate;
use qugan::fourier::{inverse_qft, qft, qft_circuit};
use qugan::generator::{build_exact_circuit, exact_angles, num_params};
use qugan::metrics::trace_distance_pure;
use qugan::phase_estimation::{qpe_distribution, size_ancillas};
use qugan::qneuron::{build_u_wm, encode_input, min_signed_ancillas, qip_signed};
use qugan::statevec::diagonal;
use qugan::svi::{bs_price, density, discretize, implied_vol, total_variance};
use qugan::{
    target_state, train, ActivationFn, DiscreteDistribution, DiscriminatorConfig,
    DiscriminatorWeights, GeneratorParams, StateVector, SviParams, TrainConfig, WeightVector,
};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn random_simplex(rng: &mut ChaCha8Rng, len: usize) -> DiscreteDistribution {
    let w: Vec<f64> = (0..len).map(|_| -rng.gen::<f64>().ln()).collect();
    DiscreteDistribution::normalized(w).unwrap()
}

fn random_state(rng: &mut ChaCha8Rng, n: usize) -> StateVector {
    let raw: Vec<Complex64> = (0..1usize << n)
        .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    StateVector::from_amplitudes(raw.into_iter().map(|a| a / norm).collect()).unwrap()
}

fn density_matrix(v: &StateVector) -> DMatrix<Complex64> {
    let a = v.amplitudes();
    DMatrix::from_fn(a.len(), a.len(), |i, j| a[i] * a[j].conj())
}

/// `‖ρ_a − ρ_b‖₁` from the eigenvalues of the difference.
fn trace_norm(a: &StateVector, b: &StateVector) -> f64 {
    let diff = density_matrix(a) - density_matrix(b);
    SymmetricEigen::new(diff)
        .eigenvalues
        .iter()
        .map(|l| l.abs())
        .sum()
}

fn c1_qft_round_trip() -> Verdict {
    let start = Instant::now();
    let mut err: f64 = 0.0;
    for n in 1..=6 {
        let circuit = qft_circuit(n).unwrap();
        for j in 0..1usize << n {
            let e = StateVector::basis(n, j).unwrap();
            let y = qft(&e);
            err = err.max(max_diff(inverse_qft(&y).amplitudes(), e.amplitudes()));
            err = err.max(max_diff(
                circuit.run(&e).unwrap().amplitudes(),
                y.amplitudes(),
            ));
        }
        // U†U = I
        let d = 1usize << n;
        let u = circuit.unitary_matrix();
        for r in 0..d {
            for c in 0..d {
                let g: Complex64 = (0..d).map(|k| u[k * d + r].conj() * u[k * d + c]).sum();
                let want = if r == c { 1.0 } else { 0.0 };
                err = err.max((g - want).norm());
            }
        }
    }
    let t = start.elapsed();
    verdict(
        err < 1e-10 && t < Duration::from_secs(5),
        format!("max error {err:.2e}, {:.2} s", t.as_secs_f64()),
    )
}

fn c2_product_form() -> Verdict {
    let mut err: f64 = 0.0;
    for n in 1..=5 {
        for j in 0..1usize << n {
            // qubit q carries (|0⟩ + e^{2iπ j/2^{q+1}}|1⟩)/√2
            let mut product: Option<StateVector> = None;
            for q in 0..n {
                let phase = Complex64::from_polar(1.0, TAU * j as f64 / 2f64.powi(q as i32 + 1));
                let s = 0.5f64.sqrt();
                let factor =
                    StateVector::from_amplitudes(vec![Complex64::new(s, 0.0), phase * s]).unwrap();
                product = Some(match product {
                    None => factor,
                    Some(p) => p.tensor(&factor).unwrap(),
                });
            }
            let y = qft(&StateVector::basis(n, j).unwrap());
            err = err.max(max_diff(y.amplitudes(), product.unwrap().amplitudes()));
        }
    }
    verdict(err < 1e-10, format!("max error {err:.2e}"))
}

fn circular(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

fn c3_qpe() -> Verdict {
    let eig = StateVector::basis(1, 1).unwrap();
    let mut exact_err: f64 = 0.0;
    for m in 1..=5 {
        for k in 0..1usize << m {
            let u = diagonal(&[0.0, k as f64 / (1u64 << m) as f64]).unwrap();
            let p = qpe_distribution(&u, &eig, m).unwrap();
            exact_err = exact_err.max((p[k] - 1.0).abs());
        }
    }
    let mut worst_margin = f64::INFINITY;
    for n in 1..=3 {
        for eps in [0.2, 0.1, 0.05] {
            let m = size_ancillas(n, eps).unwrap();
            for i in 0..64 {
                let phi = (i as f64 + 0.37) / 64.0;
                let u = diagonal(&[0.0, phi]).unwrap();
                let p = qpe_distribution(&u, &eig, m).unwrap();
                let tol = 2f64.powi(-(n as i32));
                let success: f64 = p
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| circular(*k as f64 / (1u64 << m) as f64, phi) < tol)
                    .map(|(_, p)| p)
                    .sum();
                worst_margin = worst_margin.min(success - (1.0 - eps));
            }
        }
    }
    verdict(
        exact_err < 1e-10 && worst_margin >= 0.0,
        format!("exact-phase error {exact_err:.2e}, worst success margin {worst_margin:.4}"),
    )
}

fn c4_qip_grid() -> Verdict {
    let start = Instant::now();
    let (p, m) = (2, 3);
    let grid_x = [0.0, 0.25, 0.5, 0.75];
    let grid_w = [-1.0, -0.5, 0.0, 0.5, 1.0];
    // readouts are spaced 2 apart; the bound is 2^{m+1}·2^{−m}
    let bound = 2f64.powi(m as i32 + 1) * 2f64.powi(-(m as i32));
    let (mut worst, mut cells) = (0.0f64, 0);
    for &x0 in &grid_x {
        for &x1 in &grid_x {
            for &w0 in &grid_w {
                for &w1 in &grid_w {
                    let exact = x0 * w0 + x1 * w1;
                    let w = WeightVector::new(vec![w0, w1]).unwrap();
                    let est = qip_signed(&[x0, x1], &w, m, p).unwrap();
                    worst = worst.max((est - exact).abs());
                    cells += 1;
                }
            }
        }
    }
    let t = start.elapsed();
    verdict(
        worst <= bound && t < Duration::from_secs(30),
        format!(
            "{cells} cells, max |estimate − x̃ᵀw| = {worst} (bound {bound}), {:.2} s",
            t.as_secs_f64()
        ),
    )
}

/// `U_{w,m}` on `H^{⊗m}|0⟩|x⟩` against `2^{−m/2} Σ_j e^{2iπ j x̃ᵀw/2^m}|j⟩|x⟩`.
fn phase_encoding_error(x: &[f64], w: &[f64], p: usize, m: usize) -> f64 {
    let input = encode_input(x, p).unwrap();
    // x lies on the p-bit grid, so x̃ = x
    let s: f64 = x.iter().zip(w).map(|(a, b)| a * b).sum();
    let data_bits = x.len() * p;
    let amp = Complex64::new(2f64.powf(-(m as f64) / 2.0), 0.0);
    let plus = StateVector::from_amplitudes(vec![amp; 1 << m]).unwrap();
    let state = plus.tensor(input.register()).unwrap();
    let out = build_u_wm(&WeightVector::new(w.to_vec()).unwrap(), m, p)
        .unwrap()
        .run(&state)
        .unwrap();
    let mut expected = vec![Complex64::new(0.0, 0.0); 1 << (m + data_bits)];
    for j in 0..1usize << m {
        expected[(j << data_bits) | input.index()] =
            amp * Complex64::from_polar(1.0, TAU * j as f64 * s / 2f64.powi(m as i32));
    }
    max_diff(out.amplitudes(), &expected)
}

fn c5_phase_encoding() -> Verdict {
    let grid_w = [-1.0, -0.5, 0.0, 0.5, 1.0];
    let mut err: f64 = 0.0;
    let mut cases = 0;
    for n in 1..=2usize {
        for p in 1..=2usize {
            for m in 1..=2usize {
                let levels = 1usize << p;
                for xi in 0..levels.pow(n as u32) {
                    let x: Vec<f64> = (0..n)
                        .map(|i| ((xi / levels.pow(i as u32)) % levels) as f64 / levels as f64)
                        .collect();
                    for wi in 0..grid_w.len().pow(n as u32) {
                        let w: Vec<f64> = (0..n)
                            .map(|i| grid_w[(wi / grid_w.len().pow(i as u32)) % grid_w.len()])
                            .collect();
                        err = err.max(phase_encoding_error(&x, &w, p, m));
                        cases += 1;
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let x: Vec<f64> = (0..3).map(|_| rng.gen_range(0..8) as f64 / 8.0).collect();
        let w: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        err = err.max(phase_encoding_error(&x, &w, 3, 3));
        cases += 1;
    }
    verdict(err < 1e-9, format!("{cases} cases, max error {err:.2e}"))
}

fn c6_exact_generator() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let p = random_simplex(&mut rng, 16);
        let out = build_exact_circuit(&exact_angles(&p))
            .unwrap()
            .run(&StateVector::zero(4).unwrap())
            .unwrap();
        let tv: f64 = 0.5
            * out
                .probabilities()
                .iter()
                .zip(p.masses())
                .map(|(a, b)| (a - b).abs())
                .sum::<f64>();
        worst = worst.max(tv);
    }
    verdict(worst < 1e-9, format!("max total variation {worst:.2e}"))
}

/// `P^R` and `P^F` on the data register from full discriminator runs.
fn label_operators(
    w: &DiscriminatorWeights,
    cfg: &DiscriminatorConfig,
    n: usize,
) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    let d = 1usize << n;
    let outs: Vec<StateVector> = (0..d)
        .map(|j| discriminate(w, cfg, &StateVector::basis(n, j).unwrap()).unwrap())
        .collect();
    let total = outs[0].dim();
    let real_from = total / 2;
    let mut pr = DMatrix::zeros(d, d);
    let mut pf = DMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let (a, b) = (outs[i].amplitudes(), outs[j].amplitudes());
            for idx in 0..total {
                let term = a[idx].conj() * b[idx];
                if idx >= real_from {
                    pr[(i, j)] += term;
                } else {
                    pf[(i, j)] += term;
                }
            }
        }
    }
    (pr, pf)
}

fn c7_score_identity() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut id_err, mut bound_violation) = (0.0f64, f64::NEG_INFINITY);
    for i in 0..200 {
        let n = 1 + i % 3;
        let cfg = DiscriminatorConfig {
            m1: 1 + rng.gen_range(0..2),
            m2: min_signed_ancillas(n) + rng.gen_range(0..2),
            activation: if rng.gen::<bool>() {
                ActivationFn::Sigmoid
            } else {
                ActivationFn::HalfSigmoid
            },
        };
        let target = target_state(&random_simplex(&mut rng, 1 << n));
        let theta = GeneratorParams::new(
            (0..num_params(n))
                .map(|_| rng.gen_range(0.0..TAU))
                .collect(),
        )
        .unwrap();
        let w =
            DiscriminatorWeights::new((0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect()).unwrap();
        let s = score(&theta, &w, &target, &cfg).unwrap();

        let generated = qugan::generator::generate_state(n, &theta).unwrap();
        let (pr, pf) = label_operators(&w, &cfg, n);
        let delta = density_matrix(&target) - density_matrix(&generated);
        let oracle = 0.5 * ((pr - pf) * &delta).trace().re;
        id_err = id_err.max((s - oracle).abs());
        bound_violation = bound_violation.max(s - 0.5 * trace_norm(&target, &generated));
    }
    verdict(
        id_err < 1e-10 && bound_violation <= 1e-10,
        format!("identity error {id_err:.2e}, max S − ½‖Δρ‖₁ = {bound_violation:.3e}"),
    )
}

fn c8_shift_rule() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let n = 1 + i % 4;
        let cfg = DiscriminatorConfig::for_qubits(n);
        let target = target_state(&random_simplex(&mut rng, 1 << n));
        let theta = GeneratorParams::new(
            (0..num_params(n))
                .map(|_| rng.gen_range(0.0..TAU))
                .collect(),
        )
        .unwrap();
        let w =
            DiscriminatorWeights::new((0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect()).unwrap();
        let g = grad_theta(&theta, &w, &target, &cfg).unwrap();
        for (k, gk) in g.iter().enumerate() {
            let up = score(&theta.shifted(k, h), &w, &target, &cfg).unwrap();
            let down = score(&theta.shifted(k, -h), &w, &target, &cfg).unwrap();
            worst = worst.max((gk - (up - down) / (2.0 * h)).abs());
        }
    }
    verdict(worst < 1e-6, format!("max componentwise gap {worst:.2e}"))
}

fn c9_trace_distance() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    for n in 1..=4 {
        for _ in 0..50 {
            let a = random_state(&mut rng, n);
            let b = random_state(&mut rng, n);
            worst = worst.max((trace_distance_pure(&a, &b).unwrap() - trace_norm(&a, &b)).abs());
        }
        let z = StateVector::basis(n, 0).unwrap();
        let o = StateVector::basis(n, (1 << n) - 1).unwrap();
        worst = worst.max((trace_distance_pure(&z, &o).unwrap() - trace_norm(&z, &o)).abs());
        worst = worst.max((trace_distance_pure(&z, &z).unwrap() - trace_norm(&z, &z)).abs());
    }
    verdict(worst < 1e-9, format!("max error {worst:.2e}"))
}

fn c10_svi() -> Verdict {
    let mut notes = Vec::new();
    let mut pass = true;

    // flat smile: lognormal log-density with variance a
    let mut lognormal_err: f64 = 0.0;
    for a in [0.01, 0.04, 0.09, 0.25] {
        let p = SviParams {
            a,
            b: 0.0,
            rho: 0.0,
            m: 0.0,
            xi: 0.1,
            t: 1.0,
        };
        for i in 0..=200 {
            let k = -1.0 + i as f64 / 100.0;
            let want = (-(k + a / 2.0).powi(2) / (2.0 * a)).exp() / (2.0 * PI * a).sqrt();
            lognormal_err = lognormal_err.max((density(&p, k).unwrap() - want).abs());
        }
    }
    pass &= lognormal_err < 1e-10;
    notes.push(format!("lognormal {lognormal_err:.1e}"));

    let mut iv_err: f64 = 0.0;
    let svi = SviParams::REFERENCE;
    for i in 0..=40 {
        let k = -1.0 + i as f64 / 20.0;
        let sigma = (total_variance(&svi, k).unwrap() / svi.t).sqrt();
        let price = bs_price(k, sigma * sigma * svi.t).unwrap();
        iv_err = iv_err.max((implied_vol(price, k, svi.t).unwrap() - sigma).abs());
    }
    for sigma in [0.15, 0.3, 0.6] {
        for t in [0.5, 1.0, 2.0] {
            for i in 0..=10 {
                let k = -0.5 + i as f64 / 10.0;
                let price = bs_price(k, sigma * sigma * t).unwrap();
                iv_err = iv_err.max((implied_vol(price, k, t).unwrap() - sigma).abs());
            }
        }
    }
    pass &= iv_err < 1e-8;
    notes.push(format!("implied vol {iv_err:.1e}"));

    let mut add_err: f64 = 0.0;
    let mut coarse = discretize(&svi, 1).unwrap().raw_masses;
    for n in 2..=5 {
        let fine = discretize(&svi, n).unwrap().raw_masses;
        for (c, pair) in coarse.iter().zip(fine.chunks(2)) {
            add_err = add_err.max((c - pair[0] - pair[1]).abs());
        }
        coarse = fine;
    }
    pass &= add_err < 1e-9;
    notes.push(format!("additivity {add_err:.1e}"));

    let target = discretize(&svi, 4).unwrap().distribution;
    let masses = target.masses();
    let sum: f64 = masses.iter().sum();
    let peak = masses
        .iter()
        .enumerate()
        .fold(0, |b, (i, m)| if *m > masses[b] { i } else { b });
    let unimodal = masses[..=peak].windows(2).all(|w| w[0] <= w[1])
        && masses[peak..].windows(2).all(|w| w[0] >= w[1]);
    let shape_ok = masses.len() == 16 && (sum - 1.0).abs() < 1e-12 && unimodal;
    pass &= shape_ok;
    notes.push(format!(
        "16-bin target normalized and unimodal: {shape_ok} (peak bin {peak})"
    ));
    verdict(pass, notes.join(", "))
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn c11_train_two_qubits() -> Verdict {
    let start = Instant::now();
    let target = DiscreteDistribution::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
    let finals: Vec<f64> = (0..5)
        .map(|seed| {
            let mut cfg = TrainConfig::new(2);
            cfg.seed = seed;
            cfg.lr_g = 10.0;
            train(&cfg, &target).unwrap().last().fidelity
        })
        .collect();
    let mean = finals.iter().sum::<f64>() / finals.len() as f64;
    let t = start.elapsed();
    verdict(
        mean >= 0.99 && t < Duration::from_secs(60),
        format!(
            "mean final fidelity {mean:.4} over seeds {finals:.4?}, {:.1} s",
            t.as_secs_f64()
        ),
    )
}

fn c12_train_svi() -> Verdict {
    let start = Instant::now();
    let target = discretize(&SviParams::REFERENCE, 4).unwrap().distribution;
    let mut cfg = TrainConfig::new(4);
    assert_eq!((num_params(4), cfg.n_d, cfg.n_g), (9, 9, 1));
    let (mut fids, mut kl0, mut kl1) = (Vec::new(), Vec::new(), Vec::new());
    for seed in 0..5 {
        cfg.seed = seed;
        let trace = train(&cfg, &target).unwrap();
        fids.push(trace.last().fidelity);
        kl0.push(trace.initial.kl);
        kl1.push(trace.last().kl);
    }
    let (mf, m0, m1) = (median(&mut fids), median(&mut kl0), median(&mut kl1));
    let t = start.elapsed();
    verdict(
        mf >= 0.9 && m1 < m0 && t < Duration::from_secs(600),
        format!(
            "median fidelity {mf:.4}, median KL {m0:.4} -> {m1:.4}, {:.1} s",
            t.as_secs_f64()
        ),
    )
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 12] = [
        ("QFT round trip and unitarity", c1_qft_round_trip),
        ("QFT product form", c2_product_form),
        ("phase estimation", c3_qpe),
        ("signed inner product grid", c4_qip_grid),
        ("phase-encoded state", c5_phase_encoding),
        ("exact generator construction", c6_exact_generator),
        ("score identity and bound", c7_score_identity),
        ("shift rule vs finite differences", c8_shift_rule),
        ("pure-state trace distance", c9_trace_distance),
        ("SVI pipeline", c10_svi),
        ("training n = 2", c11_train_two_qubits),
        ("training n = 4 on SVI", c12_train_svi),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        if !v.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}  {name}: {}",
            i + 1,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
