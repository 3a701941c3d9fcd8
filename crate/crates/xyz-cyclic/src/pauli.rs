//! Binary symplectic Pauli operators and stabilizer-code bookkeeping.
//!
//! A length-`n` Pauli operator is a pair of bit sequences `(x, z)`: qubit `i`
//! carries `X` iff `x[i]` alone is set, `Z` iff `z[i]` alone, `Y` iff both.
//! Phases are dropped throughout; commutation, weight and syndromes never see
//! them.

use std::fmt;
use std::str::FromStr;

use crate::gf2::{Bits, GF2Matrix, RowBasis};
use crate::{Error, Result};

/// One of the three non-identity Pauli axes.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn label(self) -> char {
        match self {
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl FromStr for Axis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" | "x" => Ok(Axis::X),
            "Y" | "y" => Ok(Axis::Y),
            "Z" | "z" => Ok(Axis::Z),
            _ => Err(Error::InvalidArgument(format!("unknown Pauli axis {s:?}"))),
        }
    }
}

/// Single-qubit Pauli operator, identity included.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PauliOp {
    I,
    X,
    Y,
    Z,
}

/// An `n`-qubit Pauli operator in binary symplectic form, phase ignored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Bits,
    z: Bits,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            n,
            x: Bits::zeros(n),
            z: Bits::zeros(n),
        }
    }

    pub fn from_bits(x: Bits, z: Bits) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                got: z.len(),
            });
        }
        Ok(PauliString { n: x.len(), x, z })
    }

    /// The weight-`n` operator `sigma^{\otimes n}`.
    pub fn uniform(n: usize, axis: Axis) -> Self {
        let ones = Bits::from_bools(&vec![true; n]);
        let zeros = Bits::zeros(n);
        match axis {
            Axis::X => PauliString { n, x: ones, z: zeros },
            Axis::Z => PauliString { n, x: zeros, z: ones },
            Axis::Y => PauliString {
                n,
                x: ones.clone(),
                z: ones,
            },
        }
    }

    /// Pure-`axis` operator with support on the set bits of `pattern`.
    pub fn from_support(axis: Axis, pattern: &Bits) -> Self {
        let n = pattern.len();
        let zeros = Bits::zeros(n);
        match axis {
            Axis::X => PauliString { n, x: pattern.clone(), z: zeros },
            Axis::Z => PauliString { n, x: zeros, z: pattern.clone() },
            Axis::Y => PauliString {
                n,
                x: pattern.clone(),
                z: pattern.clone(),
            },
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_bits(&self) -> &Bits {
        &self.x
    }

    pub fn z_bits(&self) -> &Bits {
        &self.z
    }

    pub fn op_at(&self, i: usize) -> PauliOp {
        match (self.x.get(i), self.z.get(i)) {
            (false, false) => PauliOp::I,
            (true, false) => PauliOp::X,
            (false, true) => PauliOp::Z,
            (true, true) => PauliOp::Y,
        }
    }

    pub fn set_op(&mut self, i: usize, op: PauliOp) {
        let (x, z) = match op {
            PauliOp::I => (false, false),
            PauliOp::X => (true, false),
            PauliOp::Z => (false, true),
            PauliOp::Y => (true, true),
        };
        self.x.set(i, x);
        self.z.set(i, z);
    }

    /// Number of qubits acted on nontrivially.
    pub fn weight(&self) -> usize {
        let mut support = self.x.clone();
        support.or_with(&self.z);
        support.count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Cyclic right shift by `k` qubits.
    pub fn rotate(&self, k: usize) -> PauliString {
        PauliString {
            n: self.n,
            x: self.x.rotate(k),
            z: self.z.rotate(k),
        }
    }

    /// The `(x | z)` row of length `2n`.
    pub fn symplectic_bits(&self) -> Bits {
        self.x.concat(&self.z)
    }

    pub fn from_symplectic_bits(v: &Bits) -> Result<Self> {
        if v.len() % 2 != 0 {
            return Err(Error::InvalidArgument(
                "symplectic vector length must be even".into(),
            ));
        }
        let n = v.len() / 2;
        let mut x = Bits::zeros(n);
        let mut z = Bits::zeros(n);
        for i in v.iter_ones() {
            if i < n {
                x.set(i, true);
            } else {
                z.set(i - n, true);
            }
        }
        Ok(PauliString { n, x, z })
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let c = match self.op_at(i) {
                PauliOp::I => 'I',
                PauliOp::X => 'X',
                PauliOp::Y => 'Y',
                PauliOp::Z => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = PauliString::identity(s.len());
        for (i, c) in s.chars().enumerate() {
            let op = match c {
                'I' => PauliOp::I,
                'X' => PauliOp::X,
                'Y' => PauliOp::Y,
                'Z' => PauliOp::Z,
                other => return Err(Error::BadLabel(other)),
            };
            p.set_op(i, op);
        }
        Ok(p)
    }
}

/// Symplectic product: 0 iff the operators commute.
pub fn symplectic_product(p: &PauliString, q: &PauliString) -> Result<u8> {
    if p.n != q.n {
        return Err(Error::DimensionMismatch {
            expected: p.n,
            got: q.n,
        });
    }
    Ok((p.x.dot(&q.z) ^ p.z.dot(&q.x)) as u8)
}

/// Phase-free product: componentwise XOR of the symplectic components.
pub fn multiply(p: &PauliString, q: &PauliString) -> Result<PauliString> {
    if p.n != q.n {
        return Err(Error::DimensionMismatch {
            expected: p.n,
            got: q.n,
        });
    }
    let mut out = p.clone();
    out.x.xor_with(&q.x);
    out.z.xor_with(&q.z);
    Ok(out)
}

/// Anticommuting logical representatives for a `k = 1` code.
#[derive(Clone, Debug)]
pub struct LogicalSet {
    pub x_rep: PauliString,
    pub z_rep: PauliString,
    pub y_rep: PauliString,
}

impl LogicalSet {
    pub fn rep(&self, axis: Axis) -> &PauliString {
        match axis {
            Axis::X => &self.x_rep,
            Axis::Z => &self.z_rep,
            Axis::Y => &self.y_rep,
        }
    }
}

/// A stabilizer code given by an ordered, possibly redundant generator list.
///
/// The parity-check matrix `H = (H_x | H_z)` keeps one `2n`-column row per
/// generator; `independent_rank` caches its GF(2) rank, so `k = n - rank`.
#[derive(Clone, Debug)]
pub struct StabilizerCode {
    n: usize,
    generators: Vec<PauliString>,
    h_matrix: GF2Matrix,
    independent_rank: usize,
    h_basis: RowBasis,
    logicals: Option<LogicalSet>,
}

impl StabilizerCode {
    pub fn new(generators: Vec<PauliString>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::InvalidArgument("empty generator list".into()));
        };
        let n = first.n();
        if let Some(bad) = generators.iter().find(|g| g.n() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.n(),
            });
        }
        let rows: Vec<Bits> = generators.iter().map(PauliString::symplectic_bits).collect();
        let h_matrix = GF2Matrix::from_rows(&rows);
        let h_basis = h_matrix.row_basis();
        let independent_rank = h_basis.rank();
        Ok(StabilizerCode {
            n,
            generators,
            h_matrix,
            independent_rank,
            h_basis,
            logicals: None,
        })
    }

    pub fn with_logicals(mut self, logicals: LogicalSet) -> Result<Self> {
        for rep in [&logicals.x_rep, &logicals.z_rep, &logicals.y_rep] {
            if !self.is_logical(rep)? {
                return Err(Error::InvalidArgument(format!(
                    "stored representative {rep} is not a logical operator"
                )));
            }
        }
        self.logicals = Some(logicals);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn h_matrix(&self) -> &GF2Matrix {
        &self.h_matrix
    }

    pub fn independent_rank(&self) -> usize {
        self.independent_rank
    }

    pub fn logicals(&self) -> Option<&LogicalSet> {
        self.logicals.as_ref()
    }

    /// `k = n - rank(H)`.
    pub fn num_logical_qubits(&self) -> usize {
        self.n - self.independent_rank
    }

    /// Do all pairs of generators commute?
    pub fn check_abelian(&self) -> bool {
        for (i, p) in self.generators.iter().enumerate() {
            for q in &self.generators[i + 1..] {
                if symplectic_product(p, q).expect("equal lengths") == 1 {
                    return false;
                }
            }
        }
        true
    }

    /// Stabilizer-group membership, sign ignored: rowspace membership of `H`.
    pub fn contains(&self, p: &PauliString) -> Result<bool> {
        if p.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: p.n(),
            });
        }
        Ok(self.h_basis.contains(&p.symplectic_bits()))
    }

    /// Commutes with every generator but lies outside the stabilizer group.
    pub fn is_logical(&self, p: &PauliString) -> Result<bool> {
        if p.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: p.n(),
            });
        }
        for g in &self.generators {
            if symplectic_product(g, p)? == 1 {
                return Ok(false);
            }
        }
        Ok(!self.h_basis.contains(&p.symplectic_bits()))
    }

    /// Syndrome of `e`: one symplectic product per generator row.
    pub fn syndrome(&self, e: &PauliString) -> Result<Bits> {
        if e.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: e.n(),
            });
        }
        let mut s = Bits::zeros(self.generators.len());
        for (i, g) in self.generators.iter().enumerate() {
            if symplectic_product(g, e)? == 1 {
                s.set(i, true);
            }
        }
        Ok(s)
    }
}
