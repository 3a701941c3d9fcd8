//! Polynomial arithmetic over GF(2) modulo `x^l + 1` and dense bit-packed
//! GF(2) linear algebra.
//!
//! An `l x l` circulant matrix is determined by its first row, which we carry
//! as a polynomial in `F_2[x]/(x^l + 1)`: the coefficient of `x^i` is the
//! entry in column `i`. All matrix storage is row-major with 64 entries per
//! word.

use crate::Error;

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// Fixed-length bit sequence, little-endian within each 64-bit word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_indices(len: usize, ones: &[usize]) -> Self {
        let mut b = Bits::zeros(len);
        for &i in ones {
            b.set(i, true);
        }
        b
    }

    pub fn from_bools(bools: &[bool]) -> Self {
        let mut b = Bits::zeros(bools.len());
        for (i, &v) in bools.iter().enumerate() {
            if v {
                b.set(i, true);
            }
        }
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if v {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn xor_with(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    pub fn or_with(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Parity of the AND of two sequences; the workhorse of symplectic
    /// products and syndrome extraction.
    pub fn dot(&self, other: &Bits) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u64;
        for (w, o) in self.words.iter().zip(&other.words) {
            acc ^= w & o;
        }
        acc.count_ones() % 2 == 1
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &Bits) -> Bits {
        let mut out = Bits::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Cyclic right shift by `k` positions.
    pub fn rotate(&self, k: usize) -> Bits {
        let mut out = Bits::zeros(self.len);
        if self.len == 0 {
            return out;
        }
        let k = k % self.len;
        for i in self.iter_ones() {
            out.set((i + k) % self.len, true);
        }
        out
    }
}

impl std::fmt::Debug for Bits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// Binary polynomial. Coefficient of `x^i` is bit `i`; the zero polynomial
/// has no degree (`degree()` returns `None`, never `-1`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GF2Poly {
    words: Vec<u64>,
}

impl GF2Poly {
    pub fn zero() -> Self {
        GF2Poly { words: vec![] }
    }

    pub fn one() -> Self {
        GF2Poly { words: vec![1] }
    }

    pub fn monomial(e: usize) -> Self {
        let mut words = vec![0u64; e / WORD + 1];
        words[e / WORD] = 1 << (e % WORD);
        GF2Poly { words }
    }

    /// Sum of `x^e` over the given exponents (mod 2: repeated exponents cancel).
    pub fn from_exponents(exps: &[usize]) -> Self {
        let mut p = GF2Poly::zero();
        for &e in exps {
            p = p.add(&GF2Poly::monomial(e));
        }
        p
    }

    /// `x^l + 1`.
    pub fn xl_plus_one(l: usize) -> Self {
        GF2Poly::from_exponents(&[0, l])
    }

    fn normalize(mut self) -> Self {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * WORD + (63 - last.leading_zeros() as usize))
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / WORD)
            .is_some_and(|w| w >> (i % WORD) & 1 == 1)
    }

    pub fn add(&self, other: &GF2Poly) -> GF2Poly {
        let mut words = vec![0u64; self.words.len().max(other.words.len())];
        for (i, w) in words.iter_mut().enumerate() {
            *w = self.words.get(i).copied().unwrap_or(0) ^ other.words.get(i).copied().unwrap_or(0);
        }
        GF2Poly { words }.normalize()
    }

    fn shifted(&self, k: usize) -> GF2Poly {
        if self.is_zero() {
            return GF2Poly::zero();
        }
        let wshift = k / WORD;
        let bshift = k % WORD;
        let mut words = vec![0u64; self.words.len() + wshift + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + wshift] |= w << bshift;
            if bshift > 0 {
                words[i + wshift + 1] |= w >> (WORD - bshift);
            }
        }
        GF2Poly { words }.normalize()
    }

    /// Carryless product over GF(2).
    pub fn mul(&self, other: &GF2Poly) -> GF2Poly {
        let mut acc = GF2Poly::zero();
        let (short, long) = if self.words.len() <= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        for i in 0..short.words.len() * WORD {
            if short.coeff(i) {
                acc = acc.add(&long.shifted(i));
            }
        }
        acc
    }

    /// Remainder of `self` divided by `div`.
    pub fn rem(&self, div: &GF2Poly) -> GF2Poly {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dd = div.degree().unwrap();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            r = r.add(&div.shifted(rd - dd));
        }
        r
    }

    /// Reduction modulo `x^l + 1`: the coefficient of `x^{i+l}` folds onto `x^i`.
    pub fn reduce_mod_xl1(&self, l: usize) -> GF2Poly {
        self.rem(&GF2Poly::xl_plus_one(l))
    }
}

/// `a * b` in `F_2[x]/(x^l + 1)`.
pub fn poly_mul_mod(a: &GF2Poly, b: &GF2Poly, l: usize) -> Result<GF2Poly, Error> {
    if l == 0 {
        return Err(Error::InvalidArgument("modulus length l must be positive".into()));
    }
    Ok(a.reduce_mod_xl1(l).mul(&b.reduce_mod_xl1(l)).reduce_mod_xl1(l))
}

/// Euclidean gcd over GF(2); monic by construction.
pub fn poly_gcd(a: &GF2Poly, b: &GF2Poly) -> Result<GF2Poly, Error> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidArgument("gcd of two zero polynomials".into()));
    }
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r;
    }
    Ok(a)
}

/// Rank of the `l x l` circulant generated by `gen`: `l - deg gcd(gen, x^l + 1)`.
pub fn circulant_rank(gen: &GF2Poly, l: usize) -> Result<usize, Error> {
    if l == 0 {
        return Err(Error::InvalidArgument("circulant size l must be positive".into()));
    }
    let g = gen.reduce_mod_xl1(l);
    if g.is_zero() {
        return Ok(0);
    }
    let d = poly_gcd(&g, &GF2Poly::xl_plus_one(l))?.degree().unwrap();
    Ok(l - d)
}

/// Dense bit-packed GF(2) matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GF2Matrix {
    rows: usize,
    cols: usize,
    wpr: usize,
    words: Vec<u64>,
}

impl GF2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let wpr = words_for(cols);
        GF2Matrix {
            rows,
            cols,
            wpr,
            words: vec![0; rows * wpr],
        }
    }

    pub fn from_rows(rows: &[Bits]) -> Self {
        let cols = rows.first().map_or(0, Bits::len);
        let mut m = GF2Matrix::zeros(rows.len(), cols);
        for (r, bits) in rows.iter().enumerate() {
            assert_eq!(bits.len(), cols, "ragged rows");
            m.words[r * m.wpr..(r + 1) * m.wpr].copy_from_slice(bits.words());
        }
        m
    }

    /// The circulant whose row `i` is `gen` rotated right by `i`.
    pub fn circulant(gen: &GF2Poly, l: usize) -> Self {
        let g = gen.reduce_mod_xl1(l);
        let mut first = Bits::zeros(l);
        for i in 0..l {
            if g.coeff(i) {
                first.set(i, true);
            }
        }
        let rows: Vec<Bits> = (0..l).map(|i| first.rotate(i)).collect();
        GF2Matrix::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.words[r * self.wpr + c / WORD] >> (c % WORD) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let mask = 1u64 << (c % WORD);
        let w = &mut self.words[r * self.wpr + c / WORD];
        if v {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.words[r * self.wpr..(r + 1) * self.wpr]
    }

    pub fn row_bits(&self, r: usize) -> Bits {
        Bits {
            len: self.cols,
            words: self.row(r).to_vec(),
        }
    }

    pub fn push_row(&mut self, bits: &Bits) {
        assert_eq!(bits.len(), self.cols);
        self.words.extend_from_slice(bits.words());
        self.rows += 1;
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        let (d, s) = (dst * self.wpr, src * self.wpr);
        for i in 0..self.wpr {
            let v = self.words[s + i];
            self.words[d + i] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.wpr {
            self.words.swap(a * self.wpr + i, b * self.wpr + i);
        }
    }

    /// Row rank via Gaussian elimination (on a copy).
    pub fn rank(&self) -> usize {
        self.clone().eliminate_in_place()
    }

    fn eliminate_in_place(&mut self) -> usize {
        let mut r = 0;
        for c in 0..self.cols {
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(r, piv);
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_rows(i, r);
                }
            }
            r += 1;
            if r == self.rows {
                break;
            }
        }
        r
    }

    /// Reduced row-echelon basis of the rowspace, for repeated membership tests.
    pub fn row_basis(&self) -> RowBasis {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c)) else {
                continue;
            };
            m.swap_rows(r, piv);
            for i in 0..m.rows {
                if i != r && m.get(i, c) {
                    m.xor_rows(i, r);
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        let rows = (0..r).map(|i| m.row_bits(i)).collect();
        RowBasis {
            cols: self.cols,
            rows,
            pivots,
        }
    }
}

/// Echelonized rowspace basis.
#[derive(Clone, Debug)]
pub struct RowBasis {
    cols: usize,
    rows: Vec<Bits>,
    pivots: Vec<usize>,
}

impl RowBasis {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Is `v` a GF(2) combination of the basis rows?
    pub fn contains(&self, v: &Bits) -> bool {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        let mut v = v.clone();
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            if v.get(piv) {
                v.xor_with(row);
            }
        }
        v.is_zero()
    }
}

/// True iff `v` lies in the rowspace of `m`.
pub fn in_rowspace(m: &GF2Matrix, v: &Bits) -> Result<bool, Error> {
    if v.len() != m.cols() {
        return Err(Error::DimensionMismatch {
            expected: m.cols(),
            got: v.len(),
        });
    }
    Ok(m.row_basis().contains(v))
}

pub fn gf2_rank(m: &GF2Matrix) -> usize {
    m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_degree_sentinel() {
        assert_eq!(GF2Poly::zero().degree(), None);
        assert_eq!(GF2Poly::one().degree(), Some(0));
        assert_eq!(GF2Poly::monomial(17).degree(), Some(17));
    }

    #[test]
    fn mul_mod_squaring_kills_cross_term() {
        // (1+x)^2 = 1+x^2 mod x^3+1
        let a = GF2Poly::from_exponents(&[0, 1]);
        let got = poly_mul_mod(&a, &a, 3).unwrap();
        assert_eq!(got, GF2Poly::from_exponents(&[0, 2]));
    }

    #[test]
    fn mul_mod_identity() {
        let a = GF2Poly::from_exponents(&[0, 2, 5]);
        assert_eq!(poly_mul_mod(&a, &GF2Poly::one(), 7).unwrap(), a);
    }

    #[test]
    fn mul_mod_hand_expansion() {
        // (1+x^2)(1+x) = 1+x+x^2+x^3 = x+x^2 mod x^3+1
        let a = GF2Poly::from_exponents(&[0, 2]);
        let b = GF2Poly::from_exponents(&[0, 1]);
        assert_eq!(
            poly_mul_mod(&a, &b, 3).unwrap(),
            GF2Poly::from_exponents(&[1, 2])
        );
    }

    #[test]
    fn mul_mod_rejects_zero_modulus() {
        assert!(poly_mul_mod(&GF2Poly::one(), &GF2Poly::one(), 0).is_err());
    }

    #[test]
    fn gcd_known_factorizations() {
        // x^2+1 = (x+1)^2, x^3+1 = (x+1)(x^2+x+1)
        let a = GF2Poly::from_exponents(&[0, 2]);
        let b = GF2Poly::from_exponents(&[0, 3]);
        assert_eq!(poly_gcd(&a, &b).unwrap(), GF2Poly::from_exponents(&[0, 1]));
    }

    #[test]
    fn gcd_with_zero() {
        let a = GF2Poly::from_exponents(&[1, 4]);
        assert_eq!(poly_gcd(&a, &GF2Poly::zero()).unwrap(), a);
        assert!(poly_gcd(&GF2Poly::zero(), &GF2Poly::zero()).is_err());
    }

    #[test]
    fn gcd_of_xm1_xn1() {
        // gcd(x^m+1, x^n+1) = x^gcd(m,n)+1
        let a = GF2Poly::xl_plus_one(7);
        let b = GF2Poly::xl_plus_one(17);
        assert_eq!(poly_gcd(&a, &b).unwrap(), GF2Poly::xl_plus_one(1));
    }

    #[test]
    fn circulant_rank_small() {
        let gen = GF2Poly::from_exponents(&[0, 1]);
        assert_eq!(circulant_rank(&gen, 5).unwrap(), 4);
        assert_eq!(
            GF2Matrix::circulant(&gen, 5).rank(),
            4,
            "dense oracle disagrees"
        );
        assert_eq!(circulant_rank(&GF2Poly::one(), 7).unwrap(), 7);
        assert_eq!(circulant_rank(&GF2Poly::zero(), 7).unwrap(), 0);
    }

    #[test]
    fn circulant_rank_family_a_poly() {
        // A(x) for (a,b) = (5,0), l = 17
        let gen = GF2Poly::from_exponents(&[0, 7, 9, 16]);
        assert_eq!(circulant_rank(&gen, 17).unwrap(), 16);
        assert_eq!(GF2Matrix::circulant(&gen, 17).rank(), 16);
    }

    #[test]
    fn rank_trivial_cases() {
        let mut id = GF2Matrix::zeros(4, 4);
        for i in 0..4 {
            id.set(i, i, true);
        }
        assert_eq!(id.rank(), 4);
        assert_eq!(GF2Matrix::zeros(3, 5).rank(), 0);
    }

    #[test]
    fn rowspace_membership() {
        let m = GF2Matrix::from_rows(&[
            Bits::from_bools(&[true, true, false]),
            Bits::from_bools(&[false, true, true]),
        ]);
        assert!(in_rowspace(&m, &Bits::zeros(3)).unwrap());
        assert!(in_rowspace(&m, &Bits::from_bools(&[true, false, true])).unwrap());
        // enumerated all 4 combinations: (1,0,0) is not one of them
        assert!(!in_rowspace(&m, &Bits::from_bools(&[true, false, false])).unwrap());
        assert!(in_rowspace(&m, &Bits::zeros(4)).is_err());
    }

    #[test]
    fn permutation_poly_has_order_l() {
        // x^l = 1 mod x^l+1, i.e. J^l = I
        for l in [1, 2, 5, 17] {
            let mut p = GF2Poly::one();
            for _ in 0..l {
                p = poly_mul_mod(&p, &GF2Poly::monomial(1), l).unwrap();
            }
            assert_eq!(p, GF2Poly::one());
        }
    }
}
