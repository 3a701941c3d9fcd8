//! Syndrome decoding: belief propagation over a binary Tanner graph with
//! ordered-statistics post-processing.
//!
//! A Pauli error is the `2n`-bit vector `(e_x | e_z)`. A stabilizer row with
//! symplectic form `(h_x | h_z)` checks it through the swapped operator
//! `(h_z | h_x)`, so `syndrome = H_z e_x + H_x e_z`. BP runs over that binary
//! graph with per-bit priors `P(e_x) = p_X + p_Y` and `P(e_z) = p_Z + p_Y`;
//! a per-qubit correlation factor links `e_x[i]` and `e_z[i]` through the
//! joint channel `(p_I, p_X, p_Z, p_Y)` so that Y statistics survive the
//! decoupling. OSD re-encoding over reliability-sorted columns guarantees a
//! syndrome-matching output whenever the syndrome is feasible.

use crate::gf2::{Bits, GF2Matrix, GF2Poly};
use crate::pauli::{Axis, PauliString};
use crate::{Error, Result};

const LLR_CLAMP: f64 = 30.0;
const LOG_ZERO: f64 = -1e18;

/// Per-qubit Pauli channel, identical on every qubit.
#[derive(Clone, Copy, Debug)]
pub struct ChannelPriors {
    pub p_i: f64,
    pub p_x: f64,
    pub p_y: f64,
    pub p_z: f64,
}

impl ChannelPriors {
    pub fn new(p_x: f64, p_y: f64, p_z: f64) -> Result<Self> {
        let total = p_x + p_y + p_z;
        if !(0.0..=1.0 + 1e-12).contains(&total) || p_x < 0.0 || p_y < 0.0 || p_z < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "invalid Pauli rates ({p_x}, {p_y}, {p_z})"
            )));
        }
        let p_i = (1.0 - total).max(0.0);
        let sum = p_i + total;
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument("rates do not normalize".into()));
        }
        Ok(ChannelPriors { p_i, p_x, p_y, p_z })
    }

    pub fn depolarizing(p: f64) -> Result<Self> {
        ChannelPriors::new(p / 3.0, p / 3.0, p / 3.0)
    }

    /// Joint prior indexed by the two symplectic bits: `[I, X, Z, Y]`.
    fn joint(&self) -> [f64; 4] {
        [self.p_i, self.p_x, self.p_z, self.p_y]
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BpVariant {
    ProductDomain,
    MinSum { scale: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schedule {
    Parallel,
    Serial,
}

#[derive(Clone, Copy, Debug)]
pub struct DecoderConfig {
    pub max_bp_iterations: usize,
    pub bp_variant: BpVariant,
    pub osd_order: usize,
    pub schedule: Schedule,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        DecoderConfig {
            max_bp_iterations: 100,
            bp_variant: BpVariant::ProductDomain,
            osd_order: 0,
            schedule: Schedule::Parallel,
        }
    }
}

impl DecoderConfig {
    fn validate(&self) -> Result<()> {
        if self.max_bp_iterations == 0 {
            return Err(Error::InvalidArgument("max_bp_iterations must be positive".into()));
        }
        if let BpVariant::MinSum { scale } = self.bp_variant {
            if !(scale > 0.0 && scale <= 1.0) {
                return Err(Error::InvalidArgument(format!(
                    "min-sum scale {scale} outside (0, 1]"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct DecodeResult {
    pub correction: PauliString,
    pub converged: bool,
    pub used_osd: bool,
    pub iterations: usize,
}

/// Syndrome of `error` under a stabilizer check matrix in `(H_x | H_z)`
/// symplectic form: bit `r` is the symplectic product of row `r` with the
/// error.
pub fn syndrome(check_matrix: &GF2Matrix, error: &PauliString) -> Result<Bits> {
    if check_matrix.cols() != 2 * error.n() {
        return Err(Error::DimensionMismatch {
            expected: check_matrix.cols(),
            got: 2 * error.n(),
        });
    }
    // symp(row, e) = row_x . e_z + row_z . e_x = row . (e_z | e_x)
    let swapped = error.z_bits().concat(error.x_bits());
    let mut s = Bits::zeros(check_matrix.rows());
    for r in 0..check_matrix.rows() {
        if check_matrix.row_bits(r).dot(&swapped) {
            s.set(r, true);
        }
    }
    Ok(s)
}

/// Prior model for the binary problem.
enum PriorModel {
    /// Independent bits with a single flip probability each.
    Independent(Vec<f64>),
    /// `2n` bits where bit `i` and bit `i + n` are one qubit's symplectic
    /// pair, coupled through the joint channel.
    Paired { n: usize, joint: [f64; 4] },
}

impl PriorModel {
    fn initial_llr(&self, v: usize) -> f64 {
        match self {
            PriorModel::Independent(p1) => llr_from_p1(p1[v]),
            PriorModel::Paired { n, joint } => {
                let (p0, p1) = if v < *n {
                    (joint[0] + joint[2], joint[1] + joint[3])
                } else {
                    (joint[0] + joint[1], joint[2] + joint[3])
                };
                llr_from_ratio(p0, p1)
            }
        }
    }

    /// Log-probability of a full assignment under the raw channel; the OSD
    /// candidate score.
    fn log_prob(&self, e: &Bits) -> f64 {
        match self {
            PriorModel::Independent(p1) => {
                let mut acc = 0.0;
                for (v, &p) in p1.iter().enumerate() {
                    let p = if e.get(v) { p } else { 1.0 - p };
                    acc += if p > 0.0 { p.ln() } else { LOG_ZERO };
                }
                acc
            }
            PriorModel::Paired { n, joint } => {
                let mut acc = 0.0;
                for i in 0..*n {
                    let idx = e.get(i) as usize | (e.get(i + n) as usize) << 1;
                    let p = joint[idx];
                    acc += if p > 0.0 { p.ln() } else { LOG_ZERO };
                }
                acc
            }
        }
    }
}

fn llr_from_p1(p1: f64) -> f64 {
    llr_from_ratio(1.0 - p1, p1)
}

fn llr_from_ratio(p0: f64, p1: f64) -> f64 {
    if p1 <= 0.0 {
        LLR_CLAMP
    } else if p0 <= 0.0 {
        -LLR_CLAMP
    } else {
        ((p0 / p1).ln()).clamp(-LLR_CLAMP, LLR_CLAMP)
    }
}

/// One BP+OSD instance over a binary check matrix.
struct BinaryDecoder<'a> {
    m: &'a GF2Matrix,
    target: &'a Bits,
    prior: PriorModel,
    cfg: DecoderConfig,
    checks: Vec<Vec<u32>>,
    // flat message arrays, indexed by (check, position-in-check)
    edge_offset: Vec<usize>,
    mv: Vec<f64>,
    mc: Vec<f64>,
    lambda: Vec<f64>,
    sum_mc: Vec<f64>,
    total: Vec<f64>,
    hard: Bits,
}

impl<'a> BinaryDecoder<'a> {
    fn new(m: &'a GF2Matrix, target: &'a Bits, prior: PriorModel, cfg: DecoderConfig) -> Result<Self> {
        cfg.validate()?;
        if target.len() != m.rows() {
            return Err(Error::DimensionMismatch {
                expected: m.rows(),
                got: target.len(),
            });
        }
        let nv = m.cols();
        let checks: Vec<Vec<u32>> = (0..m.rows())
            .map(|r| m.row_bits(r).iter_ones().map(|v| v as u32).collect())
            .collect();
        let mut edge_offset = Vec::with_capacity(checks.len() + 1);
        let mut total_edges = 0;
        for c in &checks {
            edge_offset.push(total_edges);
            total_edges += c.len();
        }
        edge_offset.push(total_edges);
        Ok(BinaryDecoder {
            m,
            target,
            prior,
            cfg,
            checks,
            edge_offset,
            mv: vec![0.0; total_edges],
            mc: vec![0.0; total_edges],
            lambda: vec![0.0; nv],
            sum_mc: vec![0.0; nv],
            total: vec![0.0; nv],
            hard: Bits::zeros(nv),
        })
    }

    fn refresh_lambda(&mut self) {
        let nv = self.lambda.len();
        match &self.prior {
            PriorModel::Independent(_) => {
                for v in 0..nv {
                    self.lambda[v] = self.prior.initial_llr(v);
                }
            }
            PriorModel::Paired { n, joint } => {
                let n = *n;
                let joint = *joint;
                for v in 0..nv {
                    // extrinsic belief of the partner bit, checks only
                    let partner = if v < n { v + n } else { v - n };
                    let t = (-self.sum_mc[partner]).clamp(-LLR_CLAMP, LLR_CLAMP).exp();
                    // joint indexed x | z<<1
                    let (p0, p1) = if v < n {
                        (joint[0] + joint[2] * t, joint[1] + joint[3] * t)
                    } else {
                        (joint[0] + joint[1] * t, joint[2] + joint[3] * t)
                    };
                    self.lambda[v] = llr_from_ratio(p0, p1);
                }
            }
        }
    }

    fn check_update(&mut self, c: usize) {
        let lo = self.edge_offset[c];
        let vars = &self.checks[c];
        let sign_flip = self.target.get(c);
        match self.cfg.bp_variant {
            BpVariant::ProductDomain => {
                // prefix/suffix products of tanh(mv/2)
                let deg = vars.len();
                let mut prefix = vec![1.0f64; deg + 1];
                for j in 0..deg {
                    prefix[j + 1] = prefix[j] * (self.mv[lo + j] / 2.0).tanh();
                }
                let mut suffix = 1.0f64;
                for j in (0..deg).rev() {
                    let t = (prefix[j] * suffix).clamp(-0.999_999_999_999, 0.999_999_999_999);
                    let mut msg = 2.0 * t.atanh();
                    if sign_flip {
                        msg = -msg;
                    }
                    self.mc[lo + j] = msg.clamp(-LLR_CLAMP, LLR_CLAMP);
                    suffix *= (self.mv[lo + j] / 2.0).tanh();
                }
            }
            BpVariant::MinSum { scale } => {
                let deg = vars.len();
                // track the two smallest magnitudes and the total sign
                let mut min1 = f64::INFINITY;
                let mut min2 = f64::INFINITY;
                let mut min1_at = 0usize;
                let mut neg = false;
                for j in 0..deg {
                    let m = self.mv[lo + j];
                    if m < 0.0 {
                        neg = !neg;
                    }
                    let a = m.abs();
                    if a < min1 {
                        min2 = min1;
                        min1 = a;
                        min1_at = j;
                    } else if a < min2 {
                        min2 = a;
                    }
                }
                for j in 0..deg {
                    let mag = if j == min1_at { min2 } else { min1 };
                    let others_neg = neg ^ (self.mv[lo + j] < 0.0);
                    let mut msg = scale * mag * if others_neg { -1.0 } else { 1.0 };
                    if sign_flip {
                        msg = -msg;
                    }
                    self.mc[lo + j] = msg.clamp(-LLR_CLAMP, LLR_CLAMP);
                }
            }
        }
    }

    fn syndrome_matches(&self) -> bool {
        for (c, vars) in self.checks.iter().enumerate() {
            let mut parity = false;
            for &v in vars {
                parity ^= self.hard.get(v as usize);
            }
            if parity != self.target.get(c) {
                return false;
            }
        }
        true
    }

    fn hard_decision(&mut self) {
        for v in 0..self.total.len() {
            self.total[v] = self.lambda[v] + self.sum_mc[v];
            self.hard.set(v, self.total[v] < 0.0);
        }
    }

    fn recompute_sums(&mut self) {
        self.sum_mc.iter_mut().for_each(|s| *s = 0.0);
        for (c, vars) in self.checks.iter().enumerate() {
            let lo = self.edge_offset[c];
            for (j, &v) in vars.iter().enumerate() {
                self.sum_mc[v as usize] += self.mc[lo + j];
            }
        }
    }

    /// Run BP; returns (converged, iterations).
    fn run_bp(&mut self) -> (bool, usize) {
        self.refresh_lambda();
        for (c, vars) in self.checks.iter().enumerate() {
            let lo = self.edge_offset[c];
            for (j, &v) in vars.iter().enumerate() {
                self.mv[lo + j] = self.lambda[v as usize];
            }
        }
        for iter in 1..=self.cfg.max_bp_iterations {
            match self.cfg.schedule {
                Schedule::Parallel => {
                    for c in 0..self.checks.len() {
                        self.check_update(c);
                    }
                    self.recompute_sums();
                    self.refresh_lambda();
                    for (c, vars) in self.checks.iter().enumerate() {
                        let lo = self.edge_offset[c];
                        for (j, &v) in vars.iter().enumerate() {
                            let v = v as usize;
                            self.mv[lo + j] = (self.lambda[v] + self.sum_mc[v]
                                - self.mc[lo + j])
                                .clamp(-LLR_CLAMP, LLR_CLAMP);
                        }
                    }
                }
                Schedule::Serial => {
                    for c in 0..self.checks.len() {
                        let lo = self.edge_offset[c];
                        for (j, &v) in self.checks[c].iter().enumerate() {
                            let v = v as usize;
                            self.mv[lo + j] = (self.lambda[v] + self.sum_mc[v]
                                - self.mc[lo + j])
                                .clamp(-LLR_CLAMP, LLR_CLAMP);
                        }
                        // retract old messages before replacing them
                        for (j, &v) in self.checks[c].iter().enumerate() {
                            self.sum_mc[v as usize] -= self.mc[lo + j];
                        }
                        self.check_update(c);
                        for (j, &v) in self.checks[c].iter().enumerate() {
                            self.sum_mc[v as usize] += self.mc[lo + j];
                        }
                    }
                    self.refresh_lambda();
                }
            }
            self.hard_decision();
            if self.syndrome_matches() {
                return (true, iter);
            }
        }
        (false, self.cfg.max_bp_iterations)
    }

    /// Ordered-statistics re-encoding over reliability-sorted columns.
    fn run_osd(&self) -> Result<Bits> {
        let nv = self.total.len();
        // descending posterior error probability == ascending total LLR,
        // ties broken by lowest index (sort_by on (llr, index) is stable here)
        let mut order: Vec<usize> = (0..nv).collect();
        order.sort_by(|&a, &b| {
            self.total[a]
                .partial_cmp(&self.total[b])
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });

        // RREF with pivot columns chosen in reliability order
        let mut rows: Vec<Bits> = (0..self.m.rows()).map(|r| self.m.row_bits(r)).collect();
        let mut s: Vec<bool> = (0..self.m.rows()).map(|r| self.target.get(r)).collect();
        let mut pivots: Vec<usize> = Vec::new();
        let mut r = 0usize;
        for &c in &order {
            let Some(pr) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, pr);
            s.swap(r, pr);
            for i in 0..rows.len() {
                if i != r && rows[i].get(c) {
                    let (head, tail) = rows.split_at_mut(i.max(r));
                    if i > r {
                        tail[0].xor_with(&head[r]);
                    } else {
                        head[i].xor_with(&tail[0]);
                    }
                    s[i] ^= s[r];
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        if s[r..].iter().any(|&b| b) {
            return Err(Error::InfeasibleSyndrome);
        }
        let free: Vec<usize> = order.iter().copied().filter(|c| !pivots.contains(c)).collect();

        let base_solution = |flips: &[usize]| -> Bits {
            let mut e = Bits::zeros(nv);
            for &f in flips {
                e.set(f, true);
            }
            for (k, &p) in pivots.iter().enumerate() {
                let mut bit = s[k];
                for &f in flips {
                    bit ^= rows[k].get(f);
                }
                e.set(p, bit);
            }
            e
        };

        let mut best = base_solution(&[]);
        if self.cfg.osd_order > 0 {
            let mut best_score = self.prior.log_prob(&best);
            let lambda = self.cfg.osd_order.min(free.len());
            let consider = |flips: &[usize], best: &mut Bits, best_score: &mut f64| {
                let e = base_solution(flips);
                let score = self.prior.log_prob(&e);
                if score > *best_score {
                    *best_score = score;
                    *best = e;
                }
            };
            // exhaustive re-encoding over subsets of the free columns,
            // ascending size, lexicographic within a size
            let mut stack: Vec<usize> = Vec::new();
            for size in 1..=lambda {
                stack.clear();
                enumerate_subsets(&free, size, 0, &mut stack, &mut |flips| {
                    consider(flips, &mut best, &mut best_score)
                });
            }
        }
        Ok(best)
    }

    fn decode(&mut self, force_osd: bool) -> Result<(Bits, bool, bool, usize)> {
        let (converged, iterations) = self.run_bp();
        if converged && !force_osd {
            return Ok((self.hard.clone(), true, false, iterations));
        }
        let e = self.run_osd()?;
        Ok((e, converged, true, iterations))
    }
}

fn enumerate_subsets(
    items: &[usize],
    size: usize,
    start: usize,
    stack: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if stack.len() == size {
        f(stack);
        return;
    }
    let remaining = size - stack.len();
    for i in start..=items.len().saturating_sub(remaining) {
        stack.push(items[i]);
        enumerate_subsets(items, size, i + 1, stack, f);
        stack.pop();
    }
}

/// Decode a full Pauli error from a stabilizer check matrix in `(H_x | H_z)`
/// symplectic form. The returned correction always reproduces
/// `target_syndrome`.
pub fn decode(
    check_matrix: &GF2Matrix,
    target_syndrome: &Bits,
    priors: &ChannelPriors,
    cfg: &DecoderConfig,
) -> Result<DecodeResult> {
    decode_inner(check_matrix, target_syndrome, priors, cfg, false)
}

/// As [`decode`], but always runs the OSD stage even when BP converges.
/// With `osd_order` at least the number of non-pivot columns this is full
/// re-encoding: the highest-scoring syndrome-matching error under the
/// channel.
pub fn decode_osd(
    check_matrix: &GF2Matrix,
    target_syndrome: &Bits,
    priors: &ChannelPriors,
    cfg: &DecoderConfig,
) -> Result<DecodeResult> {
    decode_inner(check_matrix, target_syndrome, priors, cfg, true)
}

fn decode_inner(
    check_matrix: &GF2Matrix,
    target_syndrome: &Bits,
    priors: &ChannelPriors,
    cfg: &DecoderConfig,
    force_osd: bool,
) -> Result<DecodeResult> {
    if check_matrix.cols() % 2 != 0 {
        return Err(Error::InvalidArgument(
            "symplectic check matrix must have an even column count".into(),
        ));
    }
    let n = check_matrix.cols() / 2;
    // swap the halves: the row acting on (e_x | e_z) is (h_z | h_x)
    let swapped_rows: Vec<Bits> = (0..check_matrix.rows())
        .map(|r| {
            let row = check_matrix.row_bits(r);
            let mut out = Bits::zeros(2 * n);
            for i in row.iter_ones() {
                out.set(if i < n { i + n } else { i - n }, true);
            }
            out
        })
        .collect();
    let m = GF2Matrix::from_rows(&swapped_rows);
    let prior = PriorModel::Paired {
        n,
        joint: priors.joint(),
    };
    let mut dec = BinaryDecoder::new(&m, target_syndrome, prior, *cfg)?;
    let (e, converged, used_osd, iterations) = dec.decode(force_osd)?;
    let correction = PauliString::from_symplectic_bits(&e)?;
    debug_assert_eq!(&syndrome(check_matrix, &correction)?, target_syndrome);
    Ok(DecodeResult {
        correction,
        converged,
        used_osd,
        iterations,
    })
}

/// Decode a single-component error pattern against one circulant block;
/// the pure-noise fast path. `sigma` only labels the component being
/// decoded, the arithmetic is plain binary BP+OSD.
pub fn decode_pure(
    _sigma: Axis,
    circulant: &GF2Poly,
    l: usize,
    target_syndrome: &Bits,
    p: f64,
    cfg: &DecoderConfig,
) -> Result<Bits> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("flip probability {p} outside [0,1]")));
    }
    let m = GF2Matrix::circulant(circulant, l);
    decode_binary(&m, target_syndrome, p, cfg)
}

/// Binary BP+OSD over an arbitrary check matrix with a uniform flip prior.
pub fn decode_binary(
    m: &GF2Matrix,
    target_syndrome: &Bits,
    p: f64,
    cfg: &DecoderConfig,
) -> Result<Bits> {
    let prior = PriorModel::Independent(vec![p; m.cols()]);
    let mut dec = BinaryDecoder::new(m, target_syndrome, prior, *cfg)?;
    let (e, _, _, _) = dec.decode(false)?;
    Ok(e)
}
