use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gf2;
use crate::table::{check_point, check_vars, TruthTable};

/// Invertible affinity `φ(x) = M·x + w` of `F_2^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    rows: Vec<u32>,
    translation: u32,
}

impl AffineMap {
    /// `rows[i]` is row `i` of `M`, i.e. output coordinate `i + 1`.
    pub fn new(rows: Vec<u32>, translation: u32) -> Result<Self> {
        let n = rows.len();
        check_vars(n)?;
        check_point(translation, n)?;
        for &r in &rows {
            check_point(r, n)?;
        }
        if gf2::rank(&rows) != n {
            return Err(Error::NotInvertible);
        }
        Ok(AffineMap { rows, translation })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| 1u32 << i).collect(), 0)
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn translation(&self) -> u32 {
        self.translation
    }

    /// The linear part `M·a`.
    pub fn linear(&self, a: u32) -> u32 {
        gf2::mat_vec(&self.rows, a)
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.linear(x) ^ self.translation
    }
}

/// `f ∘ φ`, the table `x -> f(φ(x))`.
pub fn apply_affine(t: &TruthTable, phi: &AffineMap) -> Result<TruthTable> {
    if t.n() != phi.n() {
        return Err(Error::MismatchedVariables { left: t.n(), right: phi.n() });
    }
    TruthTable::from_fn(t.n(), |x| t.get(phi.apply(x)))
}
