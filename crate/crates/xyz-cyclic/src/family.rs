//! The quantum XYZ cyclic code family `C(a,b)`.
//!
//! The length-`N = 2(a+b)+7` code is generated by the `N` cyclic shifts of
//! the seed row `X I^b Z I^a Y I Y I^a Z I^b X`. Its `H_x` and `H_z` blocks
//! are the circulants of
//!
//! ```text
//! A(x) = 1 + x^{a+b+2} + x^{a+b+4} + x^{2(a+b)+6}
//! B(x) = x^{b+1} + x^{a+b+2} + x^{a+b+4} + x^{2a+b+5}
//! ```
//!
//! and the pure-Y check block is the circulant of `C(x) = A(x) + B(x)`.
//! This module carries the closed-form dimension, the repetition-structure
//! predicates and the closed-form logical witnesses.

use crate::gf2::{circulant_rank, GF2Poly};
use crate::pauli::{multiply, Axis, LogicalSet, PauliString, StabilizerCode};
use crate::{Error, Result};

/// Family parameters; the code length is derived.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct XYZParams {
    pub a: usize,
    pub b: usize,
}

impl XYZParams {
    pub fn new(a: usize, b: usize) -> Self {
        XYZParams { a, b }
    }

    /// Code length `N = 2(a+b)+7`, odd for every `a`, `b`.
    pub fn n(&self) -> usize {
        2 * (self.a + self.b) + 7
    }
}

/// The three block polynomials of `C(a,b)`.
#[derive(Clone, Debug)]
pub struct FamilyPolys {
    pub a_poly: GF2Poly,
    pub b_poly: GF2Poly,
    pub c_poly: GF2Poly,
}

impl FamilyPolys {
    pub fn new(params: XYZParams) -> Self {
        let (a, b) = (params.a, params.b);
        let a_poly = GF2Poly::from_exponents(&[0, a + b + 2, a + b + 4, 2 * (a + b) + 6]);
        let b_poly = GF2Poly::from_exponents(&[b + 1, a + b + 2, a + b + 4, 2 * a + b + 5]);
        let c_poly = a_poly.add(&b_poly);
        FamilyPolys {
            a_poly,
            b_poly,
            c_poly,
        }
    }

    /// Block polynomial whose circulant checks pure-`axis` noise:
    /// `A` for Z errors, `B` for X errors, `C` for Y errors.
    pub fn for_axis(&self, axis: Axis) -> &GF2Poly {
        match axis {
            Axis::Z => &self.a_poly,
            Axis::X => &self.b_poly,
            Axis::Y => &self.c_poly,
        }
    }
}

/// Seed generator `S_1 = X I^b Z I^a Y I Y I^a Z I^b X`.
pub fn seed_generator(params: XYZParams) -> PauliString {
    let (a, b) = (params.a, params.b);
    let n = params.n();
    let mut p = PauliString::identity(n);
    p.set_op(0, crate::pauli::PauliOp::X);
    p.set_op(b + 1, crate::pauli::PauliOp::Z);
    p.set_op(a + b + 2, crate::pauli::PauliOp::Y);
    p.set_op(a + b + 4, crate::pauli::PauliOp::Y);
    p.set_op(2 * a + b + 5, crate::pauli::PauliOp::Z);
    p.set_op(n - 1, crate::pauli::PauliOp::X);
    p
}

/// Build `C(a,b)` with all `N` cyclic generator rows. When `k = 1` the
/// uniform all-X, all-Z and all-Y operators are attached as logical
/// representatives.
pub fn build_code(params: XYZParams) -> StabilizerCode {
    let n = params.n();
    let seed = seed_generator(params);
    let gens: Vec<PauliString> = (0..n).map(|i| seed.rotate(i)).collect();
    let code = StabilizerCode::new(gens).expect("nonempty, equal-length generators");
    if code.num_logical_qubits() == 1 {
        let logicals = LogicalSet {
            x_rep: PauliString::uniform(n, Axis::X),
            z_rep: PauliString::uniform(n, Axis::Z),
            y_rep: PauliString::uniform(n, Axis::Y),
        };
        code.with_logicals(logicals)
            .expect("uniform operators are logical on odd-length k=1 codes")
    } else {
        code
    }
}

/// Closed-form code dimension: 1 or 3 depending on `(a, b) mod 3`.
pub fn code_dimension(params: XYZParams) -> usize {
    let (a, b) = (params.a, params.b);
    match b % 3 {
        0 => 1,
        2 => {
            // b = 3l - 1
            if (a + 1) % 3 == 0 {
                3
            } else {
                1
            }
        }
        _ => {
            // b = 3l - 2
            if a % 3 == 0 {
                3
            } else {
                1
            }
        }
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Does `C(a,b)` (with `k = 1`) have repetition structure under pure
/// `axis` noise? Equivalent to the relevant circulant having rank `N - 1`.
pub fn has_repetition_structure(params: XYZParams, axis: Axis) -> Result<bool> {
    if code_dimension(params) != 1 {
        return Err(Error::Precondition(format!(
            "C({},{}) encodes {} logical qubits; repetition structure is defined for k = 1",
            params.a,
            params.b,
            code_dimension(params)
        )));
    }
    let (a, b) = (params.a, params.b);
    let n = params.n();
    let (e1, e2) = match axis {
        Axis::Z => (a + b + 2, a + b + 4),
        Axis::X => (a + 1, a + 3),
        Axis::Y => (b + 1, 2 * a + b + 5),
    };
    Ok(gcd(e1, n) == 1 && gcd(e2, n) == 1)
}

/// Rank predicate companion to [`has_repetition_structure`]: does the
/// `axis` block circulant have rank `N - 1`?
pub fn repetition_rank_predicate(params: XYZParams, axis: Axis) -> bool {
    let polys = FamilyPolys::new(params);
    circulant_rank(polys.for_axis(axis), params.n()).expect("n >= 7") == params.n() - 1
}

/// Minimum-weight logical X witness `[I^{b+2} X I^{b+2}]` repeated `2l+1`
/// times, defined for `a = 2l(b+2) + l - 1`.
pub fn x_logical_witness(b: usize, l: usize) -> Result<PauliString> {
    if l == 0 {
        return Err(Error::InvalidArgument("l must be at least 1".into()));
    }
    let a = 2 * l * (b + 2) + l - 1;
    let params = XYZParams::new(a, b);
    let n = params.n();
    let block = 2 * (b + 2) + 1;
    debug_assert_eq!(n, (2 * l + 1) * block);
    let mut w = PauliString::identity(n);
    for rep in 0..2 * l + 1 {
        w.set_op(rep * block + b + 2, crate::pauli::PauliOp::X);
    }
    let code = build_code(params);
    if !code.is_logical(&w)? {
        return Err(Error::NoWitness(format!(
            "X witness failed the logical check at (a,b) = ({a},{b})"
        )));
    }
    Ok(w)
}

/// Upper bound on the minimum logical Y weight: `2b+5` unless
/// `b = 2 mod 3`, where it tightens to `2b+3`.
pub fn y_weight_upper_bound(b: usize) -> usize {
    if b % 3 == 2 {
        2 * b + 3
    } else {
        2 * b + 5
    }
}

/// Closed-form weight-`2b+5` Y witness `Z^{b+1} I^{a+1} Y Y I^{a+1} Z^{b+1} Y`
/// for `b mod 3 != 2`.
fn y_witness_pattern_narrow(params: XYZParams) -> PauliString {
    let (a, b) = (params.a, params.b);
    let label: String = std::iter::empty()
        .chain(std::iter::repeat_n('Z', b + 1))
        .chain(std::iter::repeat_n('I', a + 1))
        .chain("YY".chars())
        .chain(std::iter::repeat_n('I', a + 1))
        .chain(std::iter::repeat_n('Z', b + 1))
        .chain(std::iter::once('Y'))
        .collect();
    label.parse().expect("valid label alphabet")
}

/// Closed-form weight-`2b+3` Y witness for `b = 3l - 1`:
/// `(IZZ)^l I^M (ZII)^{l-1} ZIYIZ (IIZ)^{l-1} I^M (ZZI)^l` with `M = a - 3l + 3`.
fn y_witness_pattern_wide(params: XYZParams) -> Option<PauliString> {
    let (a, b) = (params.a, params.b);
    let l = (b + 1) / 3;
    let m = (a + 3).checked_sub(3 * l)?;
    let mut label = String::new();
    for _ in 0..l {
        label.push_str("IZZ");
    }
    label.push_str(&"I".repeat(m));
    for _ in 0..l - 1 {
        label.push_str("ZII");
    }
    label.push_str("ZIYIZ");
    for _ in 0..l - 1 {
        label.push_str("IIZ");
    }
    label.push_str(&"I".repeat(m));
    for _ in 0..l {
        label.push_str("ZZI");
    }
    debug_assert_eq!(label.len(), params.n());
    Some(label.parse().expect("valid label alphabet"))
}

/// Closed-form logical Y witness meeting [`y_weight_upper_bound`] exactly.
///
/// The base pattern is tried at every cyclic offset and the minimum-weight
/// rotation passing the logical check is kept; if none reaches the bound the
/// call fails rather than returning a heavier operator.
pub fn y_logical_witness(params: XYZParams) -> Result<PauliString> {
    if code_dimension(params) != 1 {
        return Err(Error::Precondition(format!(
            "C({},{}) has k = {}; Y witnesses are defined for k = 1",
            params.a,
            params.b,
            code_dimension(params)
        )));
    }
    let candidate = if params.b % 3 == 2 {
        y_witness_pattern_wide(params).ok_or_else(|| {
            Error::NoWitness(format!(
                "a = {} is too small for the b = {} selection",
                params.a, params.b
            ))
        })?
    } else {
        y_witness_pattern_narrow(params)
    };
    let code = build_code(params);
    let target = y_weight_upper_bound(params.b);
    let mut best: Option<PauliString> = None;
    for off in 0..params.n() {
        let w = candidate.rotate(off);
        if w.weight() <= best.as_ref().map_or(usize::MAX, PauliString::weight)
            && code.is_logical(&w)?
        {
            best = Some(w);
        }
        if best.as_ref().is_some_and(|b| b.weight() == target) {
            break;
        }
    }
    match best {
        Some(w) if w.weight() == target => Ok(w),
        Some(w) => Err(Error::NoWitness(format!(
            "best valid witness has weight {}, target {target}",
            w.weight()
        ))),
        None => Err(Error::NoWitness(format!(
            "no rotation of the closed-form pattern is logical for C({},{})",
            params.a, params.b
        ))),
    }
}

/// Multiply the seed rows selected by `selection` (indices into the full
/// cyclic generator matrix) into one stabilizer.
pub fn stabilizer_product(params: XYZParams, selection: &[usize]) -> PauliString {
    let seed = seed_generator(params);
    let mut acc = PauliString::identity(params.n());
    for &i in selection {
        acc = multiply(&acc, &seed.rotate(i % params.n())).expect("equal length");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{gf2_rank, poly_mul_mod};

    #[test]
    fn seed_generator_examples() {
        assert_eq!(seed_generator(XYZParams::new(0, 0)).to_string(), "XZYIYZX");
        assert_eq!(XYZParams::new(5, 0).n(), 17);
        let p = XYZParams::new(20, 3);
        assert_eq!(p.n(), 53);
        let code = build_code(p);
        assert!(code.generators().iter().all(|g| g.weight() == 6));
    }

    #[test]
    fn code_length_is_odd() {
        for a in 0..20 {
            for b in 0..20 {
                assert_eq!(XYZParams::new(a, b).n() % 2, 1);
            }
        }
    }

    #[test]
    fn dimension_closed_form_vs_rank() {
        for a in 0..10 {
            for b in 0..10 {
                let params = XYZParams::new(a, b);
                let code = build_code(params);
                assert_eq!(
                    code_dimension(params),
                    code.num_logical_qubits(),
                    "dimension mismatch at (a,b)=({a},{b})"
                );
            }
        }
        assert_eq!(code_dimension(XYZParams::new(5, 0)), 1);
        assert_eq!(code_dimension(XYZParams::new(2, 2)), 3);
        assert_eq!(code_dimension(XYZParams::new(1, 1)), 1);
    }

    #[test]
    fn h_blocks_match_family_polys() {
        let params = XYZParams::new(3, 2);
        let n = params.n();
        let polys = FamilyPolys::new(params);
        let code = build_code(params);
        let seed = &code.generators()[0];
        for i in 0..n {
            assert_eq!(seed.x_bits().get(i), polys.a_poly.coeff(i));
            assert_eq!(seed.z_bits().get(i), polys.b_poly.coeff(i));
        }
    }

    #[test]
    fn family_poly_factorizations() {
        for a in 0..12 {
            for b in 0..12 {
                let params = XYZParams::new(a, b);
                let n = params.n();
                let polys = FamilyPolys::new(params);
                assert_eq!(polys.c_poly, polys.a_poly.add(&polys.b_poly));
                let fa = poly_mul_mod(
                    &GF2Poly::from_exponents(&[0, a + b + 2]),
                    &GF2Poly::from_exponents(&[0, a + b + 4]),
                    n,
                )
                .unwrap();
                assert_eq!(fa, polys.a_poly.reduce_mod_xl1(n));
                let fb = poly_mul_mod(
                    &GF2Poly::from_exponents(&[b + 1])
                        .mul(&GF2Poly::from_exponents(&[0, a + 1])),
                    &GF2Poly::from_exponents(&[0, a + 3]),
                    n,
                )
                .unwrap();
                assert_eq!(fb, polys.b_poly.reduce_mod_xl1(n));
            }
        }
    }

    #[test]
    fn abelian_sample() {
        for (a, b) in [(0, 0), (5, 0), (8, 1), (13, 2), (20, 3), (4, 7)] {
            assert!(build_code(XYZParams::new(a, b)).check_abelian());
        }
    }

    #[test]
    fn repetition_structure_examples() {
        let p = XYZParams::new(5, 0);
        for axis in Axis::ALL {
            assert!(has_repetition_structure(p, axis).unwrap());
            assert!(repetition_rank_predicate(p, axis));
        }
        assert!(matches!(
            has_repetition_structure(XYZParams::new(2, 2), Axis::Z),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn repetition_gcd_equals_rank_predicate() {
        for a in 0..10 {
            for b in 0..8 {
                let params = XYZParams::new(a, b);
                if code_dimension(params) != 1 {
                    continue;
                }
                for axis in Axis::ALL {
                    assert_eq!(
                        has_repetition_structure(params, axis).unwrap(),
                        repetition_rank_predicate(params, axis),
                        "predicate split at (a,b)=({a},{b}) axis {axis:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn x_witness_examples() {
        let w = x_logical_witness(0, 1).unwrap();
        assert_eq!(w.n(), 15);
        assert_eq!(w.to_string(), "IIXIIIIXIIIIXII");
        assert_eq!(w.weight(), 3);

        let w = x_logical_witness(3, 1).unwrap();
        assert_eq!(w.n(), 33); // a = 10
        assert_eq!(w.weight(), 3);

        let w = x_logical_witness(3, 3).unwrap();
        assert_eq!(w.n(), 2 * (32 + 3) + 7); // a = 32
        assert_eq!(w.weight(), 7);
    }

    #[test]
    fn x_witness_anticommutes_with_z_and_y() {
        use crate::pauli::symplectic_product;
        let w = x_logical_witness(0, 1).unwrap();
        let n = w.n();
        assert_eq!(
            symplectic_product(&w, &PauliString::uniform(n, Axis::Z)).unwrap(),
            1
        );
        assert_eq!(
            symplectic_product(&w, &PauliString::uniform(n, Axis::Y)).unwrap(),
            1
        );
    }

    #[test]
    fn y_bound_values() {
        assert_eq!(y_weight_upper_bound(0), 5);
        assert_eq!(y_weight_upper_bound(2), 7);
        assert_eq!(y_weight_upper_bound(3), 11);
    }

    #[test]
    fn y_witness_table_rows() {
        for (a, b, want) in [(20usize, 3usize, 11usize), (13, 2, 7), (8, 1, 7)] {
            let w = y_logical_witness(XYZParams::new(a, b)).unwrap();
            assert_eq!(w.weight(), want, "(a,b)=({a},{b})");
        }
    }

    #[test]
    fn y_witness_rejects_k3() {
        assert!(matches!(
            y_logical_witness(XYZParams::new(2, 2)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn lemma_block_structure() {
        // N = 15 = 3 * 5 for (a,b) = (4,0): selecting rows at intervals of
        // T = 5 with a repeated selection vector yields a 3-fold repeated
        // result.
        let params = XYZParams::new(4, 0);
        let n = params.n();
        assert_eq!(n, 15);
        let t = 5;
        let k = n / t;
        for mask in 1u32..(1 << t) {
            let selection: Vec<usize> = (0..t)
                .filter(|&j| mask >> j & 1 == 1)
                .flat_map(|j| (0..k).map(move |rep| j + rep * t))
                .collect();
            let prod = stabilizer_product(params, &selection);
            let rotated = prod.rotate(t);
            assert_eq!(prod, rotated, "result is not T-periodic for mask {mask:b}");
        }
    }

    #[test]
    fn full_cyclic_rows_have_one_dependency_when_k1() {
        let code = build_code(XYZParams::new(5, 0));
        assert_eq!(code.generators().len(), 17);
        assert_eq!(gf2_rank(code.h_matrix()), 16);
    }
}
