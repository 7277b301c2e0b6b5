//! Linear algebra over the two-element field.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

/// Sparse 0/1 matrix; an entry is 1 iff its position is in `entries`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeSet<(usize, usize)>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: BTreeSet::new(),
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries.iter().copied()
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.entries.contains(&(row, col))
    }

    pub fn set(&mut self, row: usize, col: usize) {
        assert!(
            row < self.rows && col < self.cols,
            "({row},{col}) outside {}x{}",
            self.rows,
            self.cols
        );
        self.entries.insert((row, col));
    }

    /// Adds 1 at a position (mod 2).
    pub fn toggle(&mut self, row: usize, col: usize) {
        assert!(
            row < self.rows && col < self.cols,
            "({row},{col}) outside {}x{}",
            self.rows,
            self.cols
        );
        if !self.entries.remove(&(row, col)) {
            self.entries.insert((row, col));
        }
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    fn packed_rows(&self) -> Vec<BitRow> {
        let mut out = vec![BitRow::zeros(self.cols); self.rows];
        for &(r, c) in &self.entries {
            out[r].set(c);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitRow(Vec<u64>);

impl BitRow {
    fn zeros(len: usize) -> Self {
        Self(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn xor_assign(&mut self, other: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }
}

/// Row-reduces in place; returns the pivot column of each pivot row, in order.
fn eliminate(rows: &mut [BitRow], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        let Some(p) = (next..rows.len()).find(|&r| rows[r].get(c)) else {
            continue;
        };
        rows.swap(next, p);
        let pivot = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && row.get(c) {
                row.xor_assign(&pivot);
            }
        }
        pivots.push(c);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank_mod2(m: &BinaryMatrix) -> usize {
    let mut rows = m.packed_rows();
    eliminate(&mut rows, m.cols).len()
}

/// Solves `A x = b` over the two-element field. Free variables are set to 0.
/// Returns `None` when the system is inconsistent.
pub fn solve_mod2(a: &BinaryMatrix, b: &[bool]) -> Option<Vec<bool>> {
    assert_eq!(a.rows, b.len(), "right-hand side length");
    let n = a.cols;
    let mut rows = vec![BitRow::zeros(n + 1); a.rows];
    for &(r, c) in &a.entries {
        rows[r].set(c);
    }
    for (r, &bit) in b.iter().enumerate() {
        if bit {
            rows[r].set(n);
        }
    }
    let pivots = eliminate(&mut rows, n + 1);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![false; n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rows[r].get(n);
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ranks() {
        assert_eq!(rank_mod2(&BinaryMatrix::zeros(3, 4)), 0);
        assert_eq!(rank_mod2(&BinaryMatrix::zeros(0, 4)), 0);
        assert_eq!(rank_mod2(&BinaryMatrix::zeros(4, 0)), 0);
        for m in [1, 5, 64, 65, 130] {
            assert_eq!(rank_mod2(&BinaryMatrix::identity(m)), m);
        }
        // two rows hitting the same column
        let mut m = BinaryMatrix::zeros(2, 2);
        m.set(0, 1);
        m.set(1, 1);
        assert_eq!(rank_mod2(&m), 1);
        // 1+1 = 0: rows (1,1),(1,0),(0,1) have rank 2
        let mut m = BinaryMatrix::zeros(3, 2);
        m.set(0, 0);
        m.set(0, 1);
        m.set(1, 0);
        m.set(2, 1);
        assert_eq!(rank_mod2(&m), 2);
    }

    #[test]
    fn toggle_is_addition() {
        let mut m = BinaryMatrix::zeros(1, 1);
        m.toggle(0, 0);
        assert!(m.get(0, 0));
        m.toggle(0, 0);
        assert_eq!(m.nnz(), 0);
    }

    #[test]
    fn inconsistent_system() {
        // x0 + x1 = 1, x0 + x1 = 0
        let mut a = BinaryMatrix::zeros(2, 2);
        for r in 0..2 {
            a.set(r, 0);
            a.set(r, 1);
        }
        assert_eq!(solve_mod2(&a, &[true, false]), None);
        let x = solve_mod2(&a, &[true, true]).unwrap();
        assert!(x[0] ^ x[1]);
    }

    fn brute_rank(rows: &[u8], cols: usize) -> usize {
        // size of the row space, by closure
        let mut span = std::collections::HashSet::from([0u8]);
        for &r in rows {
            let r = r & ((1u16 << cols) - 1) as u8;
            let new: Vec<u8> = span.iter().map(|&v| v ^ r).collect();
            span.extend(new);
        }
        span.len().trailing_zeros() as usize
    }

    proptest! {
        #[test]
        fn rank_matches_span_size(rows in prop::collection::vec(any::<u8>(), 0..8), cols in 1usize..=8) {
            let mut m = BinaryMatrix::zeros(rows.len(), cols);
            for (r, &bits) in rows.iter().enumerate() {
                for c in 0..cols {
                    if bits >> c & 1 == 1 {
                        m.set(r, c);
                    }
                }
            }
            prop_assert_eq!(rank_mod2(&m), brute_rank(&rows, cols));
        }

        #[test]
        fn solutions_satisfy_system(rows in prop::collection::vec(any::<u8>(), 1..8), b in any::<u8>()) {
            let mut a = BinaryMatrix::zeros(rows.len(), 8);
            for (r, &bits) in rows.iter().enumerate() {
                for c in 0..8 {
                    if bits >> c & 1 == 1 {
                        a.set(r, c);
                    }
                }
            }
            let rhs: Vec<bool> = (0..rows.len()).map(|r| b >> r & 1 == 1).collect();
            if let Some(x) = solve_mod2(&a, &rhs) {
                for (r, &bits) in rows.iter().enumerate() {
                    let lhs = (0..8).filter(|&c| bits >> c & 1 == 1 && x[c]).count() % 2 == 1;
                    prop_assert_eq!(lhs, rhs[r]);
                }
            } else {
                // inconsistent iff appending b raises the rank
                let mut aug = a.clone();
                let mut wide = BinaryMatrix::zeros(a.rows(), 9);
                for (r, c) in aug.entries() { wide.set(r, c); }
                for (r, &bit) in rhs.iter().enumerate() { if bit { wide.set(r, 8); } }
                aug = wide;
                prop_assert!(rank_mod2(&aug) > rank_mod2(&a));
            }
        }
    }
}
