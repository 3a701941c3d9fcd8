//! Brute-force reference implementations used to certify the fast paths:
//! exhaustive maximum-likelihood decoding and small-instance logical
//! enumeration. Nothing here touches the BP/OSD code; syndromes are computed
//! directly from symplectic products against the generator list.

use crate::decoder::ChannelPriors;
use crate::pauli::{symplectic_product, PauliOp, PauliString, StabilizerCode};
use crate::{Error, Result};

/// Hard ceilings for exhaustive enumeration; exceeding one is a refusal,
/// never a silent truncation.
#[derive(Clone, Copy, Debug)]
pub struct EnumerationBudget {
    pub max_candidates: u64,
    pub max_weight: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_candidates: 5_000_000,
            max_weight: 12,
        }
    }
}

/// Largest qubit count for which `ml_decode` enumerates the full Pauli group.
pub const ML_MAX_QUBITS: usize = 10;
/// Largest qubit count for which `ml_decode` sums probabilities over whole
/// stabilizer cosets instead of picking a single most probable error.
pub const ML_COSET_MAX_QUBITS: usize = 7;

#[derive(Clone, Debug)]
pub struct MlDecodeOutcome {
    pub correction: PauliString,
    /// True when the answer maximizes total coset probability; false when it
    /// is the single most probable syndrome-matching error.
    pub coset_aware: bool,
}

fn candidate_syndrome(code: &StabilizerCode, e: &PauliString) -> Vec<bool> {
    code.generators()
        .iter()
        .map(|g| symplectic_product(g, e).expect("equal length") == 1)
        .collect()
}

/// Exact log-probability of the error under the i.i.d. single-qubit channel.
pub fn channel_log_prob(priors: &ChannelPriors, e: &PauliString) -> f64 {
    let table = [priors.p_i, priors.p_x, priors.p_y, priors.p_z];
    let mut acc = 0.0;
    for i in 0..e.n() {
        let p = match e.op_at(i) {
            PauliOp::I => table[0],
            PauliOp::X => table[1],
            PauliOp::Y => table[2],
            PauliOp::Z => table[3],
        };
        acc += if p > 0.0 { p.ln() } else { -1e18 };
    }
    acc
}

fn enumerate_all_paulis(n: usize, mut f: impl FnMut(&PauliString)) {
    let ops = [PauliOp::I, PauliOp::X, PauliOp::Y, PauliOp::Z];
    let total = 1u64 << (2 * n);
    let mut e = PauliString::identity(n);
    for idx in 0..total {
        for q in 0..n {
            e.set_op(q, ops[(idx >> (2 * q) & 3) as usize]);
        }
        f(&e);
    }
}

/// Exhaustive maximum-likelihood decoding over the full `4^n` Pauli group.
///
/// Coset-aware on small instances (`n <=` [`ML_COSET_MAX_QUBITS`], single
/// logical qubit with representatives attached): candidates are grouped by
/// their commutation class against `(X_L, Z_L)`, class probabilities are
/// summed, and the most probable member of the winning class is returned.
/// Otherwise the single most probable error is returned.
pub fn ml_decode(
    code: &StabilizerCode,
    syndrome: &[bool],
    rates: &ChannelPriors,
    budget: &EnumerationBudget,
) -> Result<MlDecodeOutcome> {
    let n = code.n();
    if syndrome.len() != code.generators().len() {
        return Err(Error::DimensionMismatch {
            expected: code.generators().len(),
            got: syndrome.len(),
        });
    }
    if n > ML_MAX_QUBITS {
        return Err(Error::BudgetExceeded(format!(
            "full-Pauli ML enumeration is limited to {ML_MAX_QUBITS} qubits, got {n}"
        )));
    }
    let total = 1u64 << (2 * n);
    if total > budget.max_candidates {
        return Err(Error::BudgetExceeded(format!(
            "4^{n} candidates exceed the budget of {}",
            budget.max_candidates
        )));
    }

    let coset_aware = n <= ML_COSET_MAX_QUBITS
        && code.num_logical_qubits() == 1
        && code.logicals().is_some();

    if coset_aware {
        let logicals = code.logicals().unwrap();
        // class key = (symp with X_L, symp with Z_L); four cosets for k = 1
        let mut class_prob = [0.0f64; 4];
        let mut class_best: [Option<(f64, PauliString)>; 4] = [None, None, None, None];
        enumerate_all_paulis(n, |e| {
            if candidate_syndrome(code, e) != syndrome {
                return;
            }
            let kx = symplectic_product(&logicals.x_rep, e).expect("equal length");
            let kz = symplectic_product(&logicals.z_rep, e).expect("equal length");
            let key = (kx | kz << 1) as usize;
            let lp = channel_log_prob(rates, e);
            class_prob[key] += lp.exp();
            let better = match &class_best[key] {
                None => true,
                Some((best_lp, _)) => lp > *best_lp,
            };
            if better {
                class_best[key] = Some((lp, e.clone()));
            }
        });
        let winner = (0..4)
            .filter(|&k| class_best[k].is_some())
            .max_by(|&i, &j| class_prob[i].partial_cmp(&class_prob[j]).unwrap())
            .ok_or(Error::InfeasibleSyndrome)?;
        let (_, correction) = class_best[winner].clone().unwrap();
        Ok(MlDecodeOutcome {
            correction,
            coset_aware: true,
        })
    } else {
        ml_decode_most_probable(code, syndrome, rates, budget)
    }
}

/// Exhaustive most-probable-error decoding: the single syndrome-matching
/// Pauli of maximal channel probability, regardless of instance size
/// (within the same `4^n` budget as [`ml_decode`]).
pub fn ml_decode_most_probable(
    code: &StabilizerCode,
    syndrome: &[bool],
    rates: &ChannelPriors,
    budget: &EnumerationBudget,
) -> Result<MlDecodeOutcome> {
    let n = code.n();
    if syndrome.len() != code.generators().len() {
        return Err(Error::DimensionMismatch {
            expected: code.generators().len(),
            got: syndrome.len(),
        });
    }
    if n > ML_MAX_QUBITS || 1u64 << (2 * n) > budget.max_candidates {
        return Err(Error::BudgetExceeded(format!(
            "full-Pauli ML enumeration refused at {n} qubits"
        )));
    }
    let mut best: Option<(f64, PauliString)> = None;
    enumerate_all_paulis(n, |e| {
        if candidate_syndrome(code, e) != syndrome {
            return;
        }
        let lp = channel_log_prob(rates, e);
        if best.as_ref().is_none_or(|(b, _)| lp > *b) {
            best = Some((lp, e.clone()));
        }
    });
    let (_, correction) = best.ok_or(Error::InfeasibleSyndrome)?;
    Ok(MlDecodeOutcome {
        correction,
        coset_aware: false,
    })
}

/// All logicals of weight ≤ `w_max`, grouped by commutation class against
/// `(X_L, Z_L)` when representatives are attached. Classes and members are
/// ordered by (weight, lexicographic label).
#[derive(Clone, Debug, Default)]
pub struct LogicalEnumeration {
    pub classes: Vec<(Option<(u8, u8)>, Vec<PauliString>)>,
}

impl LogicalEnumeration {
    pub fn is_empty(&self) -> bool {
        self.classes.iter().all(|(_, v)| v.is_empty())
    }

    pub fn all(&self) -> impl Iterator<Item = &PauliString> {
        self.classes.iter().flat_map(|(_, v)| v.iter())
    }

    pub fn min_weight(&self) -> Option<usize> {
        self.all().map(PauliString::weight).min()
    }
}

fn count_candidates(n: usize, w_max: usize) -> u64 {
    let mut total = 0u64;
    for w in 1..=w_max.min(n) {
        let mut c = 1u128;
        for i in 0..w {
            c = c * (n - i) as u128 / (i + 1) as u128;
        }
        let with_axes = c.saturating_mul(3u128.pow(w as u32));
        total = total.saturating_add(with_axes.min(u64::MAX as u128) as u64);
    }
    total
}

fn for_each_support(n: usize, w: usize, f: &mut impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    fn rec(
        n: usize,
        w: usize,
        start: usize,
        stack: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        if stack.len() == w {
            return f(stack);
        }
        for i in start..=n - (w - stack.len()) {
            stack.push(i);
            rec(n, w, i + 1, stack, f)?;
            stack.pop();
        }
        Ok(())
    }
    rec(n, w, 0, &mut Vec::new(), f)
}

/// Visit every Pauli string of weight exactly `w`, ascending lexicographic
/// label order within the weight class.
fn for_each_weight_w(n: usize, w: usize, mut f: impl FnMut(&PauliString) -> Result<()>) -> Result<()> {
    let axes = [PauliOp::X, PauliOp::Y, PauliOp::Z];
    for_each_support(n, w, &mut |support| {
        let mut assignment = vec![0usize; w];
        loop {
            let mut e = PauliString::identity(n);
            for (k, &q) in support.iter().enumerate() {
                e.set_op(q, axes[assignment[k]]);
            }
            f(&e)?;
            // odometer over axis assignments
            let mut k = w;
            loop {
                if k == 0 {
                    return Ok(());
                }
                k -= 1;
                assignment[k] += 1;
                if assignment[k] < 3 {
                    break;
                }
                assignment[k] = 0;
            }
        }
    })
}

/// Exhaustively list all logicals up to `w_max`, by ascending weight.
pub fn enumerate_logicals(
    code: &StabilizerCode,
    w_max: usize,
    budget: &EnumerationBudget,
) -> Result<LogicalEnumeration> {
    if w_max > budget.max_weight {
        return Err(Error::BudgetExceeded(format!(
            "w_max {w_max} exceeds the weight budget {}",
            budget.max_weight
        )));
    }
    let n = code.n();
    if count_candidates(n, w_max) > budget.max_candidates {
        return Err(Error::BudgetExceeded(format!(
            "{} candidates up to weight {w_max} on {n} qubits exceed the budget of {}",
            count_candidates(n, w_max),
            budget.max_candidates
        )));
    }
    let mut groups: std::collections::BTreeMap<Option<(u8, u8)>, Vec<PauliString>> =
        std::collections::BTreeMap::new();
    for w in 1..=w_max.min(n) {
        for_each_weight_w(n, w, |e| {
            if code.is_logical(e)? {
                let key = code.logicals().map(|l| {
                    (
                        symplectic_product(&l.x_rep, e).expect("equal length"),
                        symplectic_product(&l.z_rep, e).expect("equal length"),
                    )
                });
                groups.entry(key).or_default().push(e.clone());
            }
            Ok(())
        })?;
    }
    let mut classes: Vec<_> = groups.into_iter().collect();
    for (_, members) in &mut classes {
        members.sort_by_key(|p| (p.weight(), p.to_string()));
    }
    Ok(LogicalEnumeration { classes })
}

/// Ascending-weight scan stopping at the first weight class that contains a
/// logical; returns that weight and one witness.
pub fn min_logical_weight(
    code: &StabilizerCode,
    w_max: usize,
    budget: &EnumerationBudget,
) -> Result<Option<(usize, PauliString)>> {
    if w_max > budget.max_weight {
        return Err(Error::BudgetExceeded(format!(
            "w_max {w_max} exceeds the weight budget {}",
            budget.max_weight
        )));
    }
    let n = code.n();
    if count_candidates(n, w_max) > budget.max_candidates {
        return Err(Error::BudgetExceeded(format!(
            "weight-{w_max} scan on {n} qubits exceeds the budget of {}",
            budget.max_candidates
        )));
    }
    for w in 1..=w_max.min(n) {
        let mut hit: Option<PauliString> = None;
        for_each_weight_w(n, w, |e| {
            if hit.is_none() && code.is_logical(e)? {
                hit = Some(e.clone());
            }
            Ok(())
        })?;
        if let Some(p) = hit {
            return Ok(Some((w, p)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{build_code, XYZParams};
    use crate::pauli::multiply;

    fn five_qubit_code() -> StabilizerCode {
        let seed: PauliString = "IXZZX".parse().unwrap();
        let gens: Vec<PauliString> = (0..4).map(|i| seed.rotate(i)).collect();
        let code = StabilizerCode::new(gens).unwrap();
        let logicals = crate::pauli::LogicalSet {
            x_rep: PauliString::uniform(5, crate::pauli::Axis::X),
            z_rep: PauliString::uniform(5, crate::pauli::Axis::Z),
            y_rep: PauliString::uniform(5, crate::pauli::Axis::Y),
        };
        code.with_logicals(logicals).unwrap()
    }

    #[test]
    fn zero_syndrome_low_p_gives_identity() {
        let code = five_qubit_code();
        let rates = ChannelPriors::depolarizing(0.01).unwrap();
        let out = ml_decode(&code, &[false; 4], &rates, &EnumerationBudget::default()).unwrap();
        assert!(out.correction.is_identity());
        assert!(out.coset_aware);
    }

    #[test]
    fn single_x_syndrome_recovers_equivalent() {
        let code = five_qubit_code();
        let mut err = PauliString::identity(5);
        err.set_op(2, PauliOp::X);
        let syndrome = candidate_syndrome(&code, &err);
        let rates = ChannelPriors::depolarizing(0.05).unwrap();
        let out = ml_decode(&code, &syndrome, &rates, &EnumerationBudget::default()).unwrap();
        assert_eq!(out.correction.weight(), 1);
        let residual = multiply(&err, &out.correction).unwrap();
        assert!(code.contains(&residual).unwrap());
    }

    #[test]
    fn budget_refusal() {
        let code = build_code(XYZParams::new(5, 0));
        let got = ml_decode(
            &code,
            &[false; 17],
            &ChannelPriors::depolarizing(0.05).unwrap(),
            &EnumerationBudget::default(),
        );
        assert!(matches!(got, Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn five_qubit_distance_three() {
        let code = five_qubit_code();
        let budget = EnumerationBudget::default();
        assert!(enumerate_logicals(&code, 2, &budget).unwrap().is_empty());
        let (w, witness) = min_logical_weight(&code, 3, &budget).unwrap().unwrap();
        assert_eq!(w, 3);
        assert!(code.is_logical(&witness).unwrap());
    }

    #[test]
    fn xyz_code_a4_b0_contains_spaced_x_pattern() {
        let code = build_code(XYZParams::new(4, 0));
        let budget = EnumerationBudget {
            max_candidates: 2_000_000,
            max_weight: 3,
        };
        let found = enumerate_logicals(&code, 3, &budget).unwrap();
        let want: PauliString = "IIXIIIIXIIIIXII".parse().unwrap();
        assert!(found.all().any(|p| *p == want));
        assert_eq!(found.min_weight(), Some(3));
    }

    #[test]
    fn enumeration_is_sorted_by_weight_then_label() {
        let code = five_qubit_code();
        let found = enumerate_logicals(&code, 3, &EnumerationBudget::default()).unwrap();
        for (_, members) in &found.classes {
            for pair in members.windows(2) {
                let ka = (pair[0].weight(), pair[0].to_string());
                let kb = (pair[1].weight(), pair[1].to_string());
                assert!(ka <= kb, "{ka:?} > {kb:?}");
            }
        }
    }
}
