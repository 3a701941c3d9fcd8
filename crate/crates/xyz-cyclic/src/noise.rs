//! Code-capacity Monte Carlo: Pauli channel sampling, logical error rate
//! estimation and threshold sweep campaigns.
//!
//! Failure classification assumes one logical qubit: the residual
//! `error * correction` always has zero syndrome, so it is a logical failure
//! iff it anticommutes with `X_L` or `Z_L`. Pure single-axis noise on a code
//! with repetition structure routes through the single circulant block, where
//! the residual is provably either trivial or the uniform weight-`N` logical.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::decoder::{decode, decode_pure, syndrome, ChannelPriors, DecoderConfig};
use crate::family::{build_code, has_repetition_structure, FamilyPolys, XYZParams};
use crate::gf2::{Bits, GF2Matrix};
use crate::pauli::{multiply, symplectic_product, Axis, PauliOp, PauliString, StabilizerCode};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NoiseKind {
    Depolarizing,
    /// Bias convention: `eta = p_Z / (p_X + p_Y)` with `p_X = p_Y`.
    ZBiased { eta: f64 },
    Pure { sigma: Axis },
}

impl NoiseKind {
    pub fn label(&self) -> String {
        match self {
            NoiseKind::Depolarizing => "depolarizing".into(),
            NoiseKind::ZBiased { .. } => "z_biased".into(),
            NoiseKind::Pure { sigma } => format!("pure_{}", sigma.label().to_ascii_lowercase()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseModel {
    pub kind: NoiseKind,
    /// Total physical error rate.
    pub p: f64,
}

/// Split the total rate into `(p_X, p_Y, p_Z)`, summing to `p`.
pub fn channel_rates(noise: &NoiseModel) -> Result<(f64, f64, f64)> {
    if !(0.0..=1.0).contains(&noise.p) {
        return Err(Error::InvalidArgument(format!(
            "physical error rate {} outside [0,1]",
            noise.p
        )));
    }
    let p = noise.p;
    Ok(match noise.kind {
        NoiseKind::Depolarizing => (p / 3.0, p / 3.0, p / 3.0),
        NoiseKind::ZBiased { eta } => {
            if eta <= 0.0 {
                return Err(Error::InvalidArgument(format!("bias rate {eta} must be positive")));
            }
            let pz = p * eta / (eta + 1.0);
            let pxy = p / (2.0 * (eta + 1.0));
            (pxy, pxy, pz)
        }
        NoiseKind::Pure { sigma } => match sigma {
            Axis::X => (p, 0.0, 0.0),
            Axis::Y => (0.0, p, 0.0),
            Axis::Z => (0.0, 0.0, p),
        },
    })
}

/// i.i.d. per-qubit Pauli sample under the given `(p_X, p_Y, p_Z)`.
pub fn sample_error(n: usize, rates: (f64, f64, f64), rng: &mut impl Rng) -> PauliString {
    let (px, py, pz) = rates;
    let mut e = PauliString::identity(n);
    for i in 0..n {
        let u: f64 = rng.random();
        let op = if u < px {
            PauliOp::X
        } else if u < px + py {
            PauliOp::Y
        } else if u < px + py + pz {
            PauliOp::Z
        } else {
            PauliOp::I
        };
        if op != PauliOp::I {
            e.set_op(i, op);
        }
    }
    e
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Failure,
    /// The decoder reported the syndrome as infeasible; never counted as a
    /// logical failure.
    Infeasible,
}

#[derive(Clone, Debug)]
pub struct TrialRecord {
    pub error: PauliString,
    pub outcome: Outcome,
}

/// Simulation configuration: the decoder settings plus the routing switch
/// between the circulant fast path and the full symplectic decoder for pure
/// noise.
#[derive(Clone, Copy, Debug, Default)]
pub struct SimConfig {
    pub decoder: DecoderConfig,
    pub force_full_decoder: bool,
}

impl SimConfig {
    pub fn new(decoder: DecoderConfig) -> Self {
        SimConfig {
            decoder,
            force_full_decoder: false,
        }
    }
}

/// Decode `error` with the full symplectic decoder and classify the residual.
pub fn classify_full(
    code: &StabilizerCode,
    error: &PauliString,
    priors: &ChannelPriors,
    cfg: &DecoderConfig,
) -> Result<Outcome> {
    let logicals = code.logicals().ok_or_else(|| {
        Error::Precondition("failure classification needs stored logical representatives".into())
    })?;
    let s = syndrome(code.h_matrix(), error)?;
    let res = match decode(code.h_matrix(), &s, priors, cfg) {
        Ok(r) => r,
        Err(Error::InfeasibleSyndrome) => return Ok(Outcome::Infeasible),
        Err(e) => return Err(e),
    };
    let residual = multiply(error, &res.correction)?;
    let fx = symplectic_product(&residual, &logicals.x_rep)?;
    let fz = symplectic_product(&residual, &logicals.z_rep)?;
    Ok(if fx == 0 && fz == 0 {
        Outcome::Success
    } else {
        Outcome::Failure
    })
}

/// Decode a pure-axis flip pattern on the single circulant block. Returns the
/// outcome and the residual pattern; under repetition structure the residual
/// is either zero or all-ones.
pub fn classify_pure(
    sigma: Axis,
    polys: &FamilyPolys,
    l: usize,
    pattern: &Bits,
    p: f64,
    cfg: &DecoderConfig,
) -> Result<(Outcome, Bits)> {
    let block = polys.for_axis(sigma);
    let m = GF2Matrix::circulant(block, l);
    let mut s = Bits::zeros(l);
    for r in 0..l {
        if m.row_bits(r).dot(pattern) {
            s.set(r, true);
        }
    }
    let hat = match decode_pure(sigma, block, l, &s, p, cfg) {
        Ok(e) => e,
        Err(Error::InfeasibleSyndrome) => return Ok((Outcome::Infeasible, Bits::zeros(l))),
        Err(e) => return Err(e),
    };
    let mut residual = hat;
    residual.xor_with(pattern);
    let outcome = if residual.is_zero() {
        Outcome::Success
    } else {
        Outcome::Failure
    };
    Ok((outcome, residual))
}

fn pure_fast_path(params: XYZParams, noise: &NoiseModel, cfg: &SimConfig) -> Option<Axis> {
    if cfg.force_full_decoder {
        return None;
    }
    match noise.kind {
        NoiseKind::Pure { sigma } => {
            has_repetition_structure(params, sigma).ok().filter(|&ok| ok).map(|_| sigma)
        }
        _ => None,
    }
}

/// One sample-decode-classify round.
pub fn run_trial(
    code: &StabilizerCode,
    params: XYZParams,
    polys: &FamilyPolys,
    noise: &NoiseModel,
    cfg: &SimConfig,
    rng: &mut impl Rng,
) -> Result<TrialRecord> {
    let rates = channel_rates(noise)?;
    let error = sample_error(code.n(), rates, rng);
    let outcome = if let Some(sigma) = pure_fast_path(params, noise, cfg) {
        let pattern = match sigma {
            Axis::X => error.x_bits().clone(),
            Axis::Z => error.z_bits().clone(),
            Axis::Y => error.x_bits().clone(), // pure Y: x and z supports agree
        };
        classify_pure(sigma, polys, code.n(), &pattern, noise.p, &cfg.decoder)?.0
    } else {
        let priors = ChannelPriors::new(rates.0, rates.1, rates.2)?;
        classify_full(code, &error, &priors, &cfg.decoder)?
    };
    Ok(TrialRecord { error, outcome })
}

/// Logical error rate estimate with binomial and Wilson 95% uncertainty.
#[derive(Clone, Debug)]
pub struct RateEstimate {
    pub params: XYZParams,
    pub n: usize,
    pub noise: NoiseModel,
    pub trials: usize,
    pub failures: usize,
    pub infeasible: usize,
    pub p_logical: f64,
    pub stderr: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
    pub seed: u64,
}

pub const CSV_HEADER: &str = "a,b,n,noise_kind,eta,p,trials,failures,p_logical,stderr,seed";

impl RateEstimate {
    pub fn csv_row(&self) -> String {
        let eta = match self.noise.kind {
            NoiseKind::ZBiased { eta } => format!("{eta}"),
            _ => String::new(),
        };
        format!(
            "{},{},{},{},{},{},{},{},{:.6},{:.6},{}",
            self.params.a,
            self.params.b,
            self.n,
            self.noise.kind.label(),
            eta,
            self.noise.p,
            self.trials,
            self.failures,
            self.p_logical,
            self.stderr,
            self.seed
        )
    }

    /// 95% Wilson score interval overlap test.
    pub fn interval_disjoint_from(&self, other: &RateEstimate) -> bool {
        self.wilson_high < other.wilson_low || other.wilson_high < self.wilson_low
    }
}

fn wilson_interval(failures: usize, trials: usize) -> (f64, f64) {
    let z = 1.959_963_984_540_054_f64;
    let n = trials as f64;
    let ph = failures as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (ph + z2 / (2.0 * n)) / denom;
    let half = z / denom * (ph * (1.0 - ph) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

fn estimate_with_stream(
    params: XYZParams,
    noise: &NoiseModel,
    trials: usize,
    cfg: &SimConfig,
    seed: u64,
    stream_base: u64,
) -> Result<RateEstimate> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be positive".into()));
    }
    let code = build_code(params);
    if code.num_logical_qubits() != 1 {
        return Err(Error::Precondition(format!(
            "C({},{}) has k = {}; the failure classifier needs k = 1",
            params.a,
            params.b,
            code.num_logical_qubits()
        )));
    }
    let polys = FamilyPolys::new(params);
    let counts = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<(usize, usize)> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(stream_base | t as u64);
            let rec = run_trial(&code, params, &polys, noise, cfg, &mut rng)?;
            Ok(match rec.outcome {
                Outcome::Success => (0, 0),
                Outcome::Failure => (1, 0),
                Outcome::Infeasible => (0, 1),
            })
        })
        .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
    let (failures, infeasible) = counts;
    let p_logical = failures as f64 / trials as f64;
    let stderr = (p_logical * (1.0 - p_logical) / trials as f64).sqrt();
    let (wilson_low, wilson_high) = wilson_interval(failures, trials);
    Ok(RateEstimate {
        params,
        n: params.n(),
        noise: *noise,
        trials,
        failures,
        infeasible,
        p_logical,
        stderr,
        wilson_low,
        wilson_high,
        seed,
    })
}

/// Estimate the logical error rate of `C(a,b)` under `noise`; deterministic
/// given `seed`, trials run in parallel on per-trial RNG streams.
pub fn logical_error_rate(
    params: XYZParams,
    noise: &NoiseModel,
    trials: usize,
    cfg: &SimConfig,
    seed: u64,
) -> Result<RateEstimate> {
    estimate_with_stream(params, noise, trials, cfg, seed, 0)
}

/// Cross-product campaign over codes and physical rates, in deterministic
/// `(code, p)` order. Every (code, p) combination draws from its own RNG
/// stream block so estimates are independent and order-stable.
pub fn threshold_sweep(
    codes: &[XYZParams],
    kind: NoiseKind,
    p_grid: &[f64],
    trials: usize,
    cfg: &SimConfig,
    seed: u64,
) -> Result<Vec<RateEstimate>> {
    if codes.is_empty() || p_grid.is_empty() {
        return Err(Error::InvalidArgument("empty sweep grid".into()));
    }
    let mut out = Vec::with_capacity(codes.len() * p_grid.len());
    for (ci, &params) in codes.iter().enumerate() {
        for (pi, &p) in p_grid.iter().enumerate() {
            let combo = (ci * p_grid.len() + pi) as u64;
            let noise = NoiseModel { kind, p };
            out.push(estimate_with_stream(
                params,
                &noise,
                trials,
                cfg,
                seed,
                combo << 32,
            )?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn channel_rate_conventions() {
        let (px, py, pz) = channel_rates(&NoiseModel {
            kind: NoiseKind::Depolarizing,
            p: 0.3,
        })
        .unwrap();
        assert!((px - 0.1).abs() < 1e-12 && (py - 0.1).abs() < 1e-12 && (pz - 0.1).abs() < 1e-12);

        let (px, py, pz) = channel_rates(&NoiseModel {
            kind: NoiseKind::Pure { sigma: Axis::Z },
            p: 0.4,
        })
        .unwrap();
        assert_eq!((px, py), (0.0, 0.0));
        assert!((pz - 0.4).abs() < 1e-12);

        let (px, py, pz) = channel_rates(&NoiseModel {
            kind: NoiseKind::ZBiased { eta: 1000.0 },
            p: 0.1001,
        })
        .unwrap();
        assert!((pz - 0.1).abs() < 1e-12);
        assert!((px - 0.00005).abs() < 1e-12);
        assert!((py - 0.00005).abs() < 1e-12);
        assert!((px + py + pz - 0.1001).abs() < 1e-12);

        assert!(channel_rates(&NoiseModel {
            kind: NoiseKind::ZBiased { eta: 0.0 },
            p: 0.1,
        })
        .is_err());
    }

    #[test]
    fn sample_error_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(sample_error(20, (0.0, 0.0, 0.0), &mut rng).is_identity());
        let all_z = sample_error(20, (0.0, 0.0, 1.0), &mut rng);
        assert_eq!(all_z, PauliString::uniform(20, Axis::Z));
    }

    #[test]
    fn sample_error_frequencies() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let n = 100_000;
        let e = sample_error(n, (0.1, 0.1, 0.1), &mut rng);
        let mut counts = [0usize; 4];
        for i in 0..n {
            counts[e.op_at(i) as usize] += 1;
        }
        // 3 sigma on a 0.1 binomial over 1e5 draws
        let tol = 3.0 * (0.1f64 * 0.9 / n as f64).sqrt();
        for &c in &counts[1..] {
            assert!((c as f64 / n as f64 - 0.1).abs() < tol, "counts {counts:?}");
        }
    }

    #[test]
    fn identity_error_succeeds() {
        let params = XYZParams::new(5, 0);
        let code = build_code(params);
        let priors = ChannelPriors::depolarizing(0.05).unwrap();
        let out = classify_full(
            &code,
            &PauliString::identity(17),
            &priors,
            &DecoderConfig::default(),
        )
        .unwrap();
        assert_eq!(out, Outcome::Success);
    }

    #[test]
    fn stabilizer_error_succeeds() {
        let params = XYZParams::new(5, 0);
        let code = build_code(params);
        let priors = ChannelPriors::depolarizing(0.05).unwrap();
        let g = code.generators()[4].clone();
        let out = classify_full(&code, &g, &priors, &DecoderConfig::default()).unwrap();
        assert_eq!(out, Outcome::Success);
    }

    #[test]
    fn pure_residual_two_coset() {
        let params = XYZParams::new(5, 0);
        let polys = FamilyPolys::new(params);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let pattern = Bits::from_bools(
                &(0..17).map(|_| rng.random::<bool>()).collect::<Vec<_>>(),
            );
            let (_, residual) = classify_pure(
                Axis::Z,
                &polys,
                17,
                &pattern,
                0.3,
                &DecoderConfig::default(),
            )
            .unwrap();
            assert!(
                residual.is_zero() || residual.count_ones() == 17,
                "third residual coset appeared"
            );
        }
    }

    #[test]
    fn zero_rate_at_p_zero() {
        let est = logical_error_rate(
            XYZParams::new(5, 0),
            &NoiseModel {
                kind: NoiseKind::Depolarizing,
                p: 0.0,
            },
            100,
            &SimConfig::default(),
            1,
        )
        .unwrap();
        assert_eq!(est.failures, 0);
        assert_eq!(est.p_logical, 0.0);
    }

    #[test]
    fn seed_reproducibility() {
        let noise = NoiseModel {
            kind: NoiseKind::ZBiased { eta: 10.0 },
            p: 0.1,
        };
        let a = logical_error_rate(XYZParams::new(5, 0), &noise, 300, &SimConfig::default(), 77)
            .unwrap();
        let b = logical_error_rate(XYZParams::new(5, 0), &noise, 300, &SimConfig::default(), 77)
            .unwrap();
        assert_eq!(a.failures, b.failures);
        assert_eq!(a.csv_row(), b.csv_row());
    }

    #[test]
    fn csv_row_shape() {
        let est = logical_error_rate(
            XYZParams::new(5, 0),
            &NoiseModel {
                kind: NoiseKind::Depolarizing,
                p: 0.05,
            },
            100,
            &SimConfig::default(),
            3,
        )
        .unwrap();
        let row = est.csv_row();
        assert_eq!(row.split(',').count(), CSV_HEADER.split(',').count());
        assert!(row.starts_with("5,0,17,depolarizing,,0.05,100,"));
    }

    #[test]
    fn rejects_k3() {
        let got = logical_error_rate(
            XYZParams::new(2, 2),
            &NoiseModel {
                kind: NoiseKind::Depolarizing,
                p: 0.1,
            },
            10,
            &SimConfig::default(),
            1,
        );
        assert!(matches!(got, Err(Error::Precondition(_))));
    }

    #[test]
    fn sweep_matches_single_estimate() {
        let codes = [XYZParams::new(5, 0)];
        let grid = [0.2];
        let sweep = threshold_sweep(
            &codes,
            NoiseKind::Pure { sigma: Axis::Z },
            &grid,
            200,
            &SimConfig::default(),
            5,
        )
        .unwrap();
        assert_eq!(sweep.len(), 1);
        // combo 0 uses stream base 0, identical to the direct call
        let single = logical_error_rate(
            codes[0],
            &NoiseModel {
                kind: NoiseKind::Pure { sigma: Axis::Z },
                p: 0.2,
            },
            200,
            &SimConfig::default(),
            5,
        )
        .unwrap();
        assert_eq!(sweep[0].failures, single.failures);
    }
}
