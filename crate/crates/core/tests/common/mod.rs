//! Shared fixtures: seeded random instances and the brute-force oracle the
//! solver is checked against.
//!
//! The oracle evaluates Lagrangians with its own plug-in code (no reuse of
//! the library's information functionals) and combines an exhaustive sweep
//! of deterministic encoders with multi-restart BA refinement.

use ib_core::ba::{solve_multi_restart, BaConfig, EncoderInit, RestartSchedule};
use ib_core::dist::{DiscreteConditional, DiscreteJoint};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn random_joint(rows: usize, cols: usize, seed: u64) -> DiscreteJoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<f64> = (0..rows * cols)
        .map(|_| -f64::ln(1.0 - rng.random::<f64>()))
        .collect();
    DiscreteJoint::normalized(rows, cols, weights).unwrap()
}

pub fn random_encoder(rows: usize, cols: usize, seed: u64) -> DiscreteConditional {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut kernel = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let mut row: Vec<f64> = (0..cols)
            .map(|_| -f64::ln(1.0 - rng.random::<f64>()))
            .collect();
        let sum: f64 = row.iter().sum();
        row.iter_mut().for_each(|v| *v /= sum);
        kernel.extend(row);
    }
    DiscreteConditional::new(rows, cols, kernel).unwrap()
}

/// Plug-in Lagrangian of an encoder, written independently of the library's
/// functionals.
pub fn oracle_lagrangian(joint: &DiscreteJoint, enc: &[f64], nx: usize, beta: f64) -> f64 {
    let (k, m) = (joint.rows(), joint.cols());
    let mut pz = vec![0.0; k];
    let mut pc = vec![0.0; m];
    for z in 0..k {
        for c in 0..m {
            pz[z] += joint.get(z, c);
            pc[c] += joint.get(z, c);
        }
    }
    let mut px = vec![0.0; nx];
    let mut pxc = vec![0.0; nx * m];
    for z in 0..k {
        for x in 0..nx {
            let e = enc[z * nx + x];
            if e > 0.0 {
                px[x] += pz[z] * e;
                for c in 0..m {
                    pxc[x * m + c] += e * joint.get(z, c);
                }
            }
        }
    }
    let mut rate = 0.0;
    for z in 0..k {
        for x in 0..nx {
            let p = pz[z] * enc[z * nx + x];
            if p > 0.0 && px[x] > 0.0 {
                rate += p * (p / (pz[z] * px[x])).ln();
            }
        }
    }
    let mut relevance = 0.0;
    for x in 0..nx {
        for c in 0..m {
            let p = pxc[x * m + c];
            if p > 0.0 && px[x] > 0.0 && pc[c] > 0.0 {
                relevance += p * (p / (px[x] * pc[c])).ln();
            }
        }
    }
    rate - beta * relevance
}

pub struct OracleOptimum {
    pub lagrangian: f64,
    pub relevance: f64,
}

/// Best Lagrangian over all deterministic encoders (exhaustive) combined
/// with multi-restart BA refinement.
pub fn oracle_optimum(joint: &DiscreteJoint, beta: f64, nx: usize, seed: u64) -> OracleOptimum {
    let k = joint.rows();
    assert!(
        nx.pow(k as u32) <= 1 << 20,
        "deterministic enumeration too large"
    );

    // Exhaustive deterministic sweep.
    let mut best_l = f64::INFINITY;
    let mut best_rel = 0.0;
    let mut assignment = vec![0usize; k];
    let total = nx.pow(k as u32);
    let mut enc = vec![0.0; k * nx];
    for code in 0..total {
        let mut c = code;
        for a in assignment.iter_mut() {
            *a = c % nx;
            c /= nx;
        }
        enc.iter_mut().for_each(|v| *v = 0.0);
        for (z, &x) in assignment.iter().enumerate() {
            enc[z * nx + x] = 1.0;
        }
        let l = oracle_lagrangian(joint, &enc, nx, beta);
        if l < best_l {
            best_l = l;
            best_rel = relevance_of(joint, &enc, nx);
        }
    }

    // Multi-restart BA refinement.
    let config = BaConfig {
        alphabet_size: Some(nx),
        max_iters: 20_000,
        tol: 1e-12,
        init: EncoderInit::PerturbedUniform { seed },
        anneal: true,
    };
    let schedule = RestartSchedule {
        restarts: 50,
        screen_iters: 200,
        finalists: 10,
    };
    let refined = solve_multi_restart(joint, beta, &config, &schedule, None).unwrap();
    let refined_l = oracle_lagrangian(joint, refined.encoder.kernel(), nx, beta);
    if refined_l < best_l {
        best_l = refined_l;
        best_rel = relevance_of(joint, refined.encoder.kernel(), nx);
    }
    let _ = m;
    OracleOptimum {
        lagrangian: best_l,
        relevance: best_rel,
    }
}

fn relevance_of(joint: &DiscreteJoint, enc: &[f64], nx: usize) -> f64 {
    // relevance = (rate - lagrangian) / beta at beta = 1
    let l0 = oracle_lagrangian(joint, enc, nx, 0.0);
    let l1 = oracle_lagrangian(joint, enc, nx, 1.0);
    l0 - l1
}
