//! Smith normal form over the integers with arbitrary-precision entries.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (c, &v) in row.iter().enumerate() {
                m[(r, c)] = BigInt::from(v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(l, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row[dst] -= f * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, f: &BigInt) {
        for c in 0..self.cols {
            let v = &self[(src, c)] * f;
            self[(dst, c)] -= v;
        }
    }

    fn col_axpy(&mut self, dst: usize, src: usize, f: &BigInt) {
        for r in 0..self.rows {
            let v = &self[(r, src)] * f;
            self[(r, dst)] -= v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

/// Nonzero invariant factors `d_1 | d_2 | ... | d_r`, all positive; `r` is the rank.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let mut diag = Vec::new();
    let steps = a.rows.min(a.cols);
    for t in 0..steps {
        // smallest nonzero entry of the trailing block
        let Some((pr, pc)) = min_nonzero(&a, t) else {
            break;
        };
        a.swap_rows(t, pr);
        a.swap_cols(t, pc);

        loop {
            let mut dirty = false;
            for r in t + 1..a.rows {
                if a[(r, t)].is_zero() {
                    continue;
                }
                let q = a[(r, t)].div_floor(&a[(t, t)]);
                a.row_axpy(r, t, &q);
                if !a[(r, t)].is_zero() {
                    a.swap_rows(t, r);
                    dirty = true;
                }
            }
            for c in t + 1..a.cols {
                if a[(t, c)].is_zero() {
                    continue;
                }
                let q = a[(t, c)].div_floor(&a[(t, t)]);
                a.col_axpy(c, t, &q);
                if !a[(t, c)].is_zero() {
                    a.swap_cols(t, c);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the whole trailing block
            let bad = (t + 1..a.rows)
                .find(|&r| (t + 1..a.cols).any(|c| !a[(r, c)].is_multiple_of(&a[(t, t)])));
            match bad {
                Some(r) => {
                    let one = -BigInt::one();
                    a.row_axpy(t, r, &one);
                }
                None => break,
            }
        }
        diag.push(a[(t, t)].abs());
    }
    diag
}

fn min_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in t..a.rows {
        for c in t..a.cols {
            let v = &a[(r, c)];
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(br, bc)| v.abs() < a[(br, bc)].abs()) {
                best = Some((r, c));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn factors(rows: &[Vec<i64>]) -> Vec<i64> {
        smith_normal_form(&IntMatrix::from_rows(rows))
            .into_iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(factors(&[vec![2, 0], vec![0, 2]]), vec![2, 2]);
        assert_eq!(factors(&[vec![2, 2]]), vec![2]);
        assert_eq!(factors(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(factors(&[vec![0, 2], vec![0, -2]]), vec![2]);
        assert_eq!(factors(&[vec![-4]]), vec![4]);
        assert!(factors(&[]).is_empty());
    }

    #[test]
    fn zero_dimensions() {
        assert!(smith_normal_form(&IntMatrix::zeros(0, 3)).is_empty());
        assert!(smith_normal_form(&IntMatrix::zeros(3, 0)).is_empty());
    }

    #[test]
    fn large_entries_stay_exact() {
        let big = 1i64 << 40;
        let f = factors(&[vec![big, big + 1], vec![big + 2, big + 3]]);
        // det = -2
        assert_eq!(f, vec![1, 2]);
    }

    // Determinantal divisors: gcd of all i x i minors equals d_1 ... d_i.
    fn det(m: &[Vec<i64>]) -> i128 {
        if m.is_empty() {
            return 1;
        }
        let mut total = 0i128;
        for c in 0..m.len() {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != c)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            total += sign * m[0][c] as i128 * det(&minor);
        }
        total
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
            .collect()
    }

    fn determinantal_divisors(m: &[Vec<i64>]) -> Vec<i128> {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut out = Vec::new();
        for i in 1..=rows.min(cols) {
            let mut g = 0i128;
            for rs in subsets(rows, i) {
                for cs in subsets(cols, i) {
                    let sub: Vec<Vec<i64>> = rs
                        .iter()
                        .map(|&r| cs.iter().map(|&c| m[r][c]).collect())
                        .collect();
                    g = g.gcd(&det(&sub));
                }
            }
            if g == 0 {
                break;
            }
            out.push(g);
        }
        out
    }

    proptest! {
        #[test]
        fn matches_determinantal_divisors(
            (r, c, vals) in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
                (Just(r), Just(c), prop::collection::vec(-6i64..=6, r * c))
            })
        ) {
            let rows: Vec<Vec<i64>> = vals.chunks(c).map(<[i64]>::to_vec).collect();
            let d: Vec<i128> = smith_normal_form(&IntMatrix::from_rows(&rows))
                .into_iter()
                .map(|x| i128::try_from(x).unwrap())
                .collect();
            for w in d.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
            let mut prefix = 1i128;
            let expected = determinantal_divisors(&rows);
            prop_assert_eq!(d.len(), expected.len());
            for (i, di) in d.iter().enumerate() {
                prefix *= di;
                prop_assert_eq!(prefix, expected[i]);
            }
            let _ = r;
        }
    }
}
