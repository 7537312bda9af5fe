//! Small dense linear algebra over `F_2`. Vectors are `u32` bit masks with
//! bit `i` for coordinate `i + 1`, matching the point encoding of truth tables.

use alloc::vec::Vec;

/// Incrementally built basis in fully reduced echelon form: each row owns a
/// pivot bit that no other row has set.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<u32>,
    original: Vec<u32>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduces `v` against the current basis.
    pub fn reduce(&self, mut v: u32) -> u32 {
        for &r in &self.rows {
            let pivot = 1u32 << (31 - r.leading_zeros());
            if v & pivot != 0 {
                v ^= r;
            }
        }
        v
    }

    /// Adds `v` if it is independent of the basis; returns whether it was added.
    pub fn insert(&mut self, v: u32) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        let pivot = 1u32 << (31 - r.leading_zeros());
        for row in self.rows.iter_mut() {
            if *row & pivot != 0 {
                *row ^= r;
            }
        }
        self.rows.push(r);
        self.original.push(v);
        true
    }

    pub fn contains(&self, v: u32) -> bool {
        self.reduce(v) == 0
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// The inserted independent vectors, in insertion order.
    pub fn basis(&self) -> &[u32] {
        &self.original
    }
}

/// Every element of the span of `basis` (which must be independent), `2^len` vectors.
pub fn span(basis: &[u32]) -> Vec<u32> {
    let mut out = alloc::vec![0u32];
    for &b in basis {
        let len = out.len();
        for i in 0..len {
            out.push(out[i] ^ b);
        }
    }
    out
}

/// `M·x` where `rows[i]` is row `i` of `M`.
#[inline]
pub fn mat_vec(rows: &[u32], x: u32) -> u32 {
    rows.iter().enumerate().fold(0, |acc, (i, &r)| acc | (((r & x).count_ones() & 1) << i))
}

pub fn rank(rows: &[u32]) -> usize {
    let mut e = Echelon::new();
    rows.iter().filter(|&&r| e.insert(r)).count()
}

/// Basis of `{x : M·x = 0}` for an `rows.len() × ncols` matrix.
pub fn kernel(rows: &[u32], ncols: usize) -> Vec<u32> {
    // Gauss-Jordan on the row space, then read the null space off the free columns.
    let mut m: Vec<u32> = rows.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, column)
    let mut r = 0;
    for c in 0..ncols {
        let bit = 1u32 << c;
        let Some(p) = (r..m.len()).find(|&i| m[i] & bit != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i] & bit != 0 {
                m[i] ^= m[r];
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    let pivot_cols: u32 = pivots.iter().fold(0, |acc, &(_, c)| acc | (1 << c));
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_cols >> free & 1 == 1 {
            continue;
        }
        let mut v = 1u32 << free;
        for &(row, col) in &pivots {
            if m[row] >> free & 1 == 1 {
                v |= 1 << col;
            }
        }
        basis.push(v);
    }
    basis
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(rows: &[u32]) -> Option<Vec<u32>> {
    let n = rows.len();
    let mut a: Vec<u32> = rows.to_vec();
    let mut inv: Vec<u32> = (0..n).map(|i| 1u32 << i).collect();
    for c in 0..n {
        let bit = 1u32 << c;
        let p = (c..n).find(|&i| a[i] & bit != 0)?;
        a.swap(c, p);
        inv.swap(c, p);
        for i in 0..n {
            if i != c && a[i] & bit != 0 {
                a[i] ^= a[c];
                inv[i] ^= inv[c];
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel_of_symplectic_form() {
        // bilinear form of x1x2 + x3x4
        let rows = [0b0010, 0b0001, 0b1000, 0b0100];
        assert_eq!(rank(&rows), 4);
        assert!(kernel(&rows, 4).is_empty());
        // x1x2 on five variables: rank 2, kernel of dimension 3
        let rows = [0b00010, 0b00001, 0, 0, 0];
        assert_eq!(rank(&rows), 2);
        let k = kernel(&rows, 5);
        assert_eq!(k.len(), 3);
        for v in k {
            assert_eq!(mat_vec(&rows, v), 0);
        }
    }

    #[test]
    fn kernel_brute_force() {
        let rows = [0b1011, 0b0110, 0b1101, 0b0000];
        let k = kernel(&rows, 4);
        let brute: Vec<u32> = (0..16).filter(|&x| mat_vec(&rows, x) == 0).collect();
        let mut s = span(&k);
        s.sort();
        assert_eq!(s, brute);
    }

    #[test]
    fn inverse_round_trip() {
        let m = [0b011, 0b110, 0b001];
        let inv = inverse(&m).unwrap();
        for x in 0..8 {
            assert_eq!(mat_vec(&inv, mat_vec(&m, x)), x);
        }
        assert!(inverse(&[0b11, 0b11]).is_none());
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(0b101));
        assert!(e.insert(0b011));
        assert!(!e.insert(0b110));
        assert!(e.contains(0b110));
        assert!(!e.contains(0b001));
        assert_eq!(e.dim(), 2);
        assert_eq!(e.basis(), &[0b101, 0b011]);
    }
}
