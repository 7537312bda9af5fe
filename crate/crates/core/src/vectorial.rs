//! Vectorial Boolean functions `F_2^n -> F_2^n` and their difference tables.

use alloc::vec;
use alloc::vec::Vec;

use crate::anf::Anf;
use crate::error::{check_cap, Error, Result};
use crate::table::{check_point, TruthTable};

/// Largest `n` for a vectorial function (a `2^n`-entry value table).
pub const MAX_VBF_VARS: usize = 16;
/// Cap for the `O(4^n)` difference table.
pub const DDT_CAP: usize = 12;
/// Cap for computing `deg(F)` over all `2^n - 1` components.
pub const COMPONENT_DEGREE_CAP: usize = 14;

/// `F = (f_1, ..., f_n)`; `F(x)` has bit `i` equal to `f_{i+1}(x)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorialBf {
    n: usize,
    coordinates: Vec<TruthTable>,
    values: Vec<u32>,
}

impl VectorialBf {
    pub fn new(coordinates: Vec<TruthTable>) -> Result<Self> {
        let n = coordinates.len();
        if n == 0 || n > MAX_VBF_VARS {
            return Err(Error::VariableCount { n });
        }
        if let Some(t) = coordinates.iter().find(|t| t.n() != n) {
            return Err(Error::MismatchedVariables { left: n, right: t.n() });
        }
        let values = (0..1u32 << n)
            .map(|x| {
                coordinates.iter().enumerate().fold(0, |v, (i, t)| v | (t.get(x) as u32) << i)
            })
            .collect();
        Ok(VectorialBf { n, coordinates, values })
    }

    pub fn from_anfs(coordinates: &[Anf]) -> Result<Self> {
        Self::new(coordinates.iter().map(Anf::to_truth_table).collect())
    }

    /// From the value list `F(0), F(1), ..., F(2^n - 1)`.
    pub fn from_values(n: usize, values: &[u32]) -> Result<Self> {
        if n == 0 || n > MAX_VBF_VARS {
            return Err(Error::VariableCount { n });
        }
        if values.len() != 1 << n {
            return Err(Error::TableLength { expected: 1 << n, got: values.len() });
        }
        if let Some(&v) = values.iter().find(|&&v| v >> n != 0) {
            return Err(Error::PointOutOfRange { point: v, n });
        }
        let coordinates = (0..n)
            .map(|i| TruthTable::from_fn(n, |x| values[x as usize] >> i & 1 == 1))
            .collect::<Result<Vec<_>>>()?;
        Ok(VectorialBf { n, coordinates, values: values.to_vec() })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let values: Vec<u32> = (0..1u32 << n.min(31)).collect();
        Self::from_values(n, &values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coordinates(&self) -> &[TruthTable] {
        &self.coordinates
    }

    pub fn coordinate_anfs(&self) -> Vec<Anf> {
        self.coordinates.iter().map(Anf::from_truth_table).collect()
    }

    pub fn value(&self, x: u32) -> u32 {
        self.values[x as usize]
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Number of nonzero components, `2^n - 1`.
    pub fn component_count(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    /// Table of `λ·F`.
    pub fn component(&self, lambda: u32) -> Result<TruthTable> {
        if lambda == 0 {
            return Err(Error::ZeroComponent);
        }
        check_point(lambda, self.n)?;
        let mut t = TruthTable::zero(self.n)?;
        for (i, c) in self.coordinates.iter().enumerate() {
            if lambda >> i & 1 == 1 {
                t = &t ^ c;
            }
        }
        Ok(t)
    }

    pub fn component_anf(&self, lambda: u32) -> Result<Anf> {
        Ok(Anf::from_truth_table(&self.component(lambda)?))
    }

    /// `deg(F) = max_λ deg(λ·F)` over every nonzero component; `n <= 14`.
    pub fn degree(&self) -> Result<usize> {
        check_cap("degree", self.n, COMPONENT_DEGREE_CAP)?;
        let mut d = 0;
        for lambda in 1..=self.component_count() {
            d = d.max(self.component_anf(lambda)?.degree());
        }
        Ok(d)
    }

    /// Bijectivity by marking images.
    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.values.len()];
        self.values.iter().all(|&v| !core::mem::replace(&mut seen[v as usize], true))
    }

    /// Difference distribution table; `n <= 12`.
    pub fn ddt(&self) -> Result<DduTable> {
        check_cap("ddt", self.n, DDT_CAP)?;
        let size = self.values.len();
        let mut counts = vec![0u16; size * size];
        counts[0] = size as u16;
        for a in 1..size {
            let row = &mut counts[a * size..(a + 1) * size];
            for x in 0..size {
                row[(self.values[x] ^ self.values[x ^ a]) as usize] += 1;
            }
        }
        let delta = counts[size..].iter().copied().max().unwrap_or(0) as u32;
        Ok(DduTable { n: self.n, counts, delta })
    }

    /// `δ(F) = 2`.
    pub fn is_apn_ddt(&self) -> Result<bool> {
        Ok(self.ddt()?.delta() == 2)
    }
}

impl core::fmt::Debug for VectorialBf {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("VectorialBf").field("n", &self.n).field("values", &self.values).finish()
    }
}

/// `δ_F(a, b) = |{x : F(x + a) + F(x) = b}|`.
#[derive(Clone, PartialEq, Eq)]
pub struct DduTable {
    n: usize,
    counts: Vec<u16>,
    delta: u32,
}

impl DduTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: u32, b: u32) -> u32 {
        self.counts[((a as usize) << self.n) | b as usize] as u32
    }

    pub fn row(&self, a: u32) -> impl Iterator<Item = u32> + '_ {
        let size = 1usize << self.n;
        self.counts[a as usize * size..(a as usize + 1) * size].iter().map(|&c| c as u32)
    }

    /// `δ(F) = max_{a≠0, b} δ_F(a, b)`.
    pub fn delta(&self) -> u32 {
        self.delta
    }
}

impl core::fmt::Debug for DduTable {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("DduTable").field("n", &self.n).field("delta", &self.delta).finish()
    }
}
