//! Structure of functions of degree at most two.
//!
//! The quadratic part of `f` defines the alternating bilinear form
//! `B(x, y) = f(x + y) + f(x) + f(y) + f(0)`. Its rank is `2k` and its radical
//! is the linear space `V(f)`, so `dim V(f) = n - 2k`. Whether `f` is balanced
//! is read off the derivative constants on the radical; the sign of `F(f)` for
//! unbalanced `f` comes from a symbolic canonical reduction.

use alloc::vec;
use alloc::vec::Vec;

use crate::anf::Anf;
use crate::error::{check_cap, Error, Result};
use crate::gf2::{self, Echelon};
use crate::table::TruthTable;

/// Cap for the generic `O(4^n)` linear-space scan.
pub const LINEAR_SPACE_SCAN_CAP: usize = 12;

/// Symmetric, zero-diagonal matrix of the quadratic part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    rows: Vec<u32>,
}

pub fn bilinear_form(f: &Anf) -> Result<BilinearForm> {
    let d = f.degree();
    if d > 2 {
        return Err(Error::DegreeTooHigh { max: 2, found: d });
    }
    let mut rows = vec![0u32; f.n()];
    for &m in f.monomials().iter().filter(|m| m.count_ones() == 2) {
        let i = m.trailing_zeros() as usize;
        let j = 31 - m.leading_zeros() as usize;
        rows[i] |= 1 << j;
        rows[j] |= 1 << i;
    }
    Ok(BilinearForm { rows })
}

impl BilinearForm {
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        gf2::rank(&self.rows)
    }

    /// `k` with `rank = 2k`.
    pub fn half_rank(&self) -> usize {
        self.rank() / 2
    }

    pub fn radical(&self) -> Vec<u32> {
        gf2::kernel(&self.rows, self.n())
    }

    pub fn eval(&self, x: u32, y: u32) -> bool {
        (gf2::mat_vec(&self.rows, x) & y).count_ones() & 1 == 1
    }
}

/// Half-rank `k` of the bilinear form and a basis of its radical.
pub fn bilinear_rank(f: &Anf) -> Result<(usize, Vec<u32>)> {
    let b = bilinear_form(f)?;
    Ok((b.half_rank(), b.radical()))
}

/// Basis of `V(f) = {a : D_a f constant}` together with the constant value of
/// `D_a f` for each basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSpaceBasis {
    n: usize,
    basis: Vec<u32>,
    constants: Vec<bool>,
}

impl LinearSpaceBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn constants(&self) -> &[bool] {
        &self.constants
    }

    pub fn elements(&self) -> Vec<u32> {
        gf2::span(&self.basis)
    }

    pub fn contains(&self, a: u32) -> bool {
        let mut e = Echelon::new();
        for &b in &self.basis {
            e.insert(b);
        }
        e.contains(a)
    }

    /// True when `D_a f = 1` for some `a` in the space. The map `a -> D_a f`
    /// is linear on `V(f)`, so the basis decides it.
    pub fn has_complementing_structure(&self) -> bool {
        self.constants.iter().any(|&c| c)
    }
}

/// Generic linear space by scanning every shift, `O(4^n)`; `n <= 12`.
pub fn linear_space(t: &TruthTable) -> Result<LinearSpaceBasis> {
    check_cap("linear_space", t.n(), LINEAR_SPACE_SCAN_CAP)?;
    let mut e = Echelon::new();
    let mut constants = Vec::new();
    for a in 1..t.len() as u32 {
        if e.contains(a) {
            continue;
        }
        if let Some(c) = t.derivative(a)?.constant_value() {
            e.insert(a);
            constants.push(c);
        }
    }
    Ok(LinearSpaceBasis { n: t.n(), basis: e.basis().to_vec(), constants })
}

/// Linear space of a function of degree at most two, from the bilinear radical.
/// For `a` in the radical, `D_a f = f(a) + f(0)`.
pub fn linear_space_quadratic(f: &Anf) -> Result<LinearSpaceBasis> {
    let basis = bilinear_form(f)?.radical();
    let f0 = f.eval(0);
    let constants = basis.iter().map(|&a| f.eval(a) ^ f0).collect();
    Ok(LinearSpaceBasis { n: f.n(), basis, constants })
}

/// Result of reducing `f` to `y_1y_2 + ... + y_{2k-1}y_{2k} + L(y) + c` by
/// an affine change of variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonicalForm {
    pub pairs: usize,
    /// A nonzero linear term survives on the remaining variables.
    pub linear_residue: bool,
    pub constant: bool,
}

/// Dickson-style reduction. Repeatedly take a product `x_i x_j`, write
/// `f = x_i x_j + x_i A + x_j B + R` with `A, B, R` free of `x_i, x_j`, and use
/// `f = (x_i + B)(x_j + A) + AB + R` to continue on `AB + R`.
pub fn canonical_reduction(f: &Anf) -> Result<CanonicalForm> {
    let d = f.degree();
    if d > 2 {
        return Err(Error::DegreeTooHigh { max: 2, found: d });
    }
    let n = f.n();
    let mut rest = f.clone();
    let mut pairs = 0;
    while let Some(&m) = rest.monomials().iter().find(|m| m.count_ones() == 2) {
        let bi = m & m.wrapping_neg();
        let bj = m ^ bi;
        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut r = Vec::new();
        for &t in rest.monomials() {
            if t == m {
                continue;
            } else if t & bi != 0 {
                a.push(t ^ bi);
            } else if t & bj != 0 {
                b.push(t ^ bj);
            } else {
                r.push(t);
            }
        }
        let a = Anf::from_monomials(n, a)?;
        let b = Anf::from_monomials(n, b)?;
        let r = Anf::from_monomials(n, r)?;
        rest = &(&a * &b) + &r;
        pairs += 1;
    }
    Ok(CanonicalForm {
        pairs,
        linear_residue: rest.degree() == 1,
        constant: rest.contains(0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadraticKind {
    Balanced,
    /// Unbalanced with `F(f) = +2^{n-k}`: affine equivalent to `x_1x_2 + ... + x_{2k-1}x_{2k}`.
    UnbalancedPlus,
    /// Unbalanced with `F(f) = -2^{n-k}`: the complement of the above.
    UnbalancedMinus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadraticClass {
    pub n: usize,
    pub k: usize,
    pub kind: QuadraticKind,
    pub dim_v: usize,
}

impl QuadraticClass {
    /// `F(f)` implied by the class.
    pub fn fourier(&self) -> i64 {
        let mag = 1i64 << (self.n - self.k);
        match self.kind {
            QuadraticKind::Balanced => 0,
            QuadraticKind::UnbalancedPlus => mag,
            QuadraticKind::UnbalancedMinus => -mag,
        }
    }

    pub fn weight(&self) -> u64 {
        quadratic_weight(self)
    }

    pub fn nonlinearity(&self) -> u64 {
        quadratic_nl(self)
    }
}

/// Class of a function of degree exactly two.
pub fn classify_quadratic(f: &Anf) -> Result<QuadraticClass> {
    match f.degree() {
        0 | 1 => return Err(Error::AffineInput),
        2 => {}
        d => return Err(Error::DegreeTooHigh { max: 2, found: d }),
    }
    let form = bilinear_form(f)?;
    let k = form.half_rank();
    let v = linear_space_quadratic(f)?;
    let kind = if v.has_complementing_structure() {
        QuadraticKind::Balanced
    } else if canonical_reduction(f)?.constant {
        QuadraticKind::UnbalancedMinus
    } else {
        QuadraticKind::UnbalancedPlus
    };
    Ok(QuadraticClass { n: f.n(), k, kind, dim_v: v.dim() })
}

/// `2^{n-1}`, `2^{n-1} - 2^{n-k-1}` or `2^{n-1} + 2^{n-k-1}` by kind.
pub fn quadratic_weight(c: &QuadraticClass) -> u64 {
    let half = 1u64 << (c.n - 1);
    let dev = 1u64 << (c.n - c.k - 1);
    match c.kind {
        QuadraticKind::Balanced => half,
        QuadraticKind::UnbalancedPlus => half - dev,
        QuadraticKind::UnbalancedMinus => half + dev,
    }
}

/// `2^{n-1} - 2^{n-k-1}` for every quadratic.
pub fn quadratic_nl(c: &QuadraticClass) -> u64 {
    (1u64 << (c.n - 1)) - (1u64 << (c.n - c.k - 1))
}

/// Two quadratics are affine equivalent iff weight and nonlinearity agree.
pub fn quadratics_affine_equivalent(g: &Anf, h: &Anf) -> Result<bool> {
    if g.n() != h.n() {
        return Err(Error::MismatchedVariables { left: g.n(), right: h.n() });
    }
    let (cg, ch) = (classify_quadratic(g)?, classify_quadratic(h)?);
    Ok(quadratic_weight(&cg) == quadratic_weight(&ch) && quadratic_nl(&cg) == quadratic_nl(&ch))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn anf(n: usize, terms: &[&[usize]]) -> Anf {
        Anf::from_terms(n, terms).unwrap()
    }

    #[test]
    fn bilinear_rank_examples() {
        let (k, rad) = bilinear_rank(&anf(4, &[&[1, 2], &[3, 4]])).unwrap();
        assert_eq!((k, rad.len()), (2, 0));
        let (k, rad) = bilinear_rank(&anf(5, &[&[1, 2], &[5]])).unwrap();
        assert_eq!((k, rad.len()), (1, 3));
        let (k, rad) = bilinear_rank(&anf(3, &[&[1], &[3], &[]])).unwrap();
        assert_eq!((k, rad.len()), (0, 3));
        assert!(bilinear_rank(&anf(3, &[&[1, 2, 3]])).is_err());
    }

    #[test]
    fn linear_space_examples() {
        let bent = anf(4, &[&[1, 2], &[3, 4]]);
        assert_eq!(linear_space(&bent.to_truth_table()).unwrap().dim(), 0);
        assert_eq!(linear_space_quadratic(&bent).unwrap().dim(), 0);
        let f = anf(3, &[&[1, 2], &[3]]);
        let v = linear_space(&f.to_truth_table()).unwrap();
        assert_eq!(v.dim(), 1);
        assert_eq!(v.basis(), &[0b100]);
        assert_eq!(v.constants(), &[true]);
        assert_eq!(linear_space_quadratic(&f).unwrap(), v);
        let aff = anf(3, &[&[1], &[2]]);
        assert_eq!(linear_space(&aff.to_truth_table()).unwrap().dim(), 3);
    }

    #[test]
    fn linear_space_scan_is_capped() {
        let t = TruthTable::zero(13).unwrap();
        assert!(matches!(linear_space(&t), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn classify_examples() {
        let c = classify_quadratic(&anf(3, &[&[1, 2], &[3]])).unwrap();
        assert_eq!((c.kind, c.k, c.dim_v), (QuadraticKind::Balanced, 1, 1));
        let c = classify_quadratic(&anf(4, &[&[1, 2], &[3, 4]])).unwrap();
        assert_eq!((c.kind, c.k), (QuadraticKind::UnbalancedPlus, 2));
        assert_eq!((quadratic_weight(&c), quadratic_nl(&c)), (6, 6));
        let c = classify_quadratic(&anf(2, &[&[1, 2], &[]])).unwrap();
        assert_eq!((c.kind, c.k), (QuadraticKind::UnbalancedMinus, 1));
        assert_eq!((quadratic_weight(&c), quadratic_nl(&c)), (3, 1));
    }

    #[test]
    fn classify_rejects_non_quadratics() {
        assert_eq!(classify_quadratic(&anf(3, &[&[1], &[]])), Err(Error::AffineInput));
        assert_eq!(
            classify_quadratic(&anf(3, &[&[1, 2, 3]])),
            Err(Error::DegreeTooHigh { max: 2, found: 3 })
        );
    }

    #[test]
    fn canonical_reduction_tracks_constant_through_substitution() {
        // x1x2 + x1x3 + x2x3 = (x1 + x3)(x2 + x3) + x3: one pair, x3 survives
        let c = canonical_reduction(&anf(3, &[&[1, 2], &[1, 3], &[2, 3]])).unwrap();
        assert_eq!(c, CanonicalForm { pairs: 1, linear_residue: true, constant: false });
        // x1x2 + x1 + x2 = (x1 + 1)(x2 + 1) + 1
        let c = canonical_reduction(&anf(2, &[&[1, 2], &[1], &[2]])).unwrap();
        assert_eq!(c, CanonicalForm { pairs: 1, linear_residue: false, constant: true });
    }

    #[test]
    fn affine_equivalence_of_quadratics() {
        let g = anf(3, &[&[1, 2]]);
        // brute force: both have weight 2 and nonlinearity 2 on three variables
        assert_eq!(g.to_truth_table().weight(), 2);
        assert_eq!(quadratics_affine_equivalent(&g, &anf(3, &[&[1, 3]])), Ok(true));
        assert_eq!(quadratics_affine_equivalent(&g, &g.complement()), Ok(false));
        assert_eq!(quadratics_affine_equivalent(&g, &g), Ok(true));
        assert!(quadratics_affine_equivalent(&g, &anf(3, &[&[1]])).is_err());
    }
}
