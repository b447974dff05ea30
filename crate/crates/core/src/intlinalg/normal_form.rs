//! Hermite and Smith normal forms with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

type Rows = Vec<Vec<BigInt>>;

/// `dst += k * src` on row vectors, skipping zero entries of `src`.
fn axpy(dst: &mut [BigInt], src: &[BigInt], k: &BigInt) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += k * s;
        }
    }
}

fn negate(v: &mut [BigInt]) {
    for x in v.iter_mut() {
        *x = -std::mem::take(x);
    }
}

/// Row-style Hermite normal form on a list of rows, in place. Returns the
/// pivot column of every nonzero row (rows beyond `pivots.len()` are zero).
/// When `u` is given, the same row operations are applied to it.
pub(crate) fn hnf_rows(h: &mut Rows, mut u: Option<&mut Rows>, cols: usize) -> Vec<usize> {
    let n = h.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let mut found = false;
        loop {
            let piv =
                (r..n).filter(|&i| !h[i][c].is_zero()).min_by(|&a, &b| h[a][c].magnitude().cmp(h[b][c].magnitude()));
            let Some(piv) = piv else { break };
            found = true;
            h.swap(r, piv);
            if let Some(u) = u.as_deref_mut() {
                u.swap(r, piv);
            }
            let prow = h[r].clone();
            let urow = u.as_deref().map(|u| u[r].clone());
            let mut clean = true;
            for i in r + 1..n {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = -h[i][c].div_floor(&prow[c]);
                axpy(&mut h[i], &prow, &q);
                if let (Some(u), Some(urow)) = (u.as_deref_mut(), urow.as_ref()) {
                    axpy(&mut u[i], urow, &q);
                }
                if !h[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if h[r][c].is_negative() {
            negate(&mut h[r]);
            if let Some(u) = u.as_deref_mut() {
                negate(&mut u[r]);
            }
        }
        let prow = h[r].clone();
        let urow = u.as_deref().map(|u| u[r].clone());
        for i in 0..r {
            if h[i][c].is_zero() {
                continue;
            }
            let q = -h[i][c].div_floor(&prow[c]);
            if q.is_zero() {
                continue;
            }
            axpy(&mut h[i], &prow, &q);
            if let (Some(u), Some(urow)) = (u.as_deref_mut(), urow.as_ref()) {
                axpy(&mut u[i], urow, &q);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Row Hermite normal form: returns `(H, U)` with `U` unimodular and `U·M = H`.
///
/// `H` is in row echelon form with positive pivots, and every entry above a
/// pivot lies in `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.to_row_vecs();
    let mut u = IntMatrix::identity(m.rows()).to_row_vecs();
    hnf_rows(&mut h, Some(&mut u), m.cols());
    (IntMatrix::from_rows(h, m.cols()), IntMatrix::from_rows(u, m.rows()))
}

/// Smith normal form together with the transforms and the inverse of the
/// row transform (the latter is needed to carry generators across a change
/// of basis).
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `s[k][k]` for `k < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|k| self.s.get(k, k).clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

struct SnfState {
    s: Rows,
    u: Rows,
    u_inv: Rows,
    v: Rows,
}

impl SnfState {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.s.swap(a, b);
        self.u.swap(a, b);
        for row in self.u_inv.iter_mut() {
            row.swap(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for row in self.s.iter_mut() {
            row.swap(a, b);
        }
        for row in self.v.iter_mut() {
            row.swap(a, b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        let srow = self.s[src].clone();
        axpy(&mut self.s[dst], &srow, k);
        let urow = self.u[src].clone();
        axpy(&mut self.u[dst], &urow, k);
        // inverse: column[src] -= k * column[dst]
        for row in self.u_inv.iter_mut() {
            if !row[dst].is_zero() {
                let t = k * &row[dst];
                row[src] -= t;
            }
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for row in self.s.iter_mut().chain(self.v.iter_mut()) {
            if !row[src].is_zero() {
                let t = k * &row[src];
                row[dst] += t;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        negate(&mut self.s[r]);
        negate(&mut self.u[r]);
        for row in self.u_inv.iter_mut() {
            row[r] = -std::mem::take(&mut row[r]);
        }
    }
}

/// Smith normal form: `U·M·V = S` with `U`, `V` unimodular, `S` diagonal with
/// nonnegative entries `d1 | d2 | ...` and zero entries last.
pub fn snf(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = m.shape();
    let mut st = SnfState {
        s: m.to_row_vecs(),
        u: IntMatrix::identity(rows).to_row_vecs(),
        u_inv: IntMatrix::identity(rows).to_row_vecs(),
        v: IntMatrix::identity(cols).to_row_vecs(),
    };
    'outer: for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if st.s[i][j].is_zero() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => st.s[i][j].magnitude() < st.s[bi][bj].magnitude(),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'outer };
            st.swap_rows(t, pi);
            st.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                if !st.s[i][t].is_zero() {
                    let q = -st.s[i][t].div_floor(&st.s[t][t]);
                    st.add_row(i, t, &q);
                    clean &= st.s[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !st.s[t][j].is_zero() {
                    let q = -st.s[t][j].div_floor(&st.s[t][t]);
                    st.add_col(j, t, &q);
                    clean &= st.s[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let pivot = st.s[t][t].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !st.s[i][j].is_multiple_of(&pivot)));
            match offender {
                Some(i) => st.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if st.s[t][t].is_negative() {
            st.negate_row(t);
        }
    }
    SmithForm {
        s: IntMatrix::from_rows(st.s, cols),
        u: IntMatrix::from_rows(st.u, rows),
        u_inv: IntMatrix::from_rows(st.u_inv, rows),
        v: IntMatrix::from_rows(st.v, cols),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, e: &[i64]) -> IntMatrix {
        IntMatrix::from_i64(rows, cols, e)
    }

    fn check_hnf(a: &IntMatrix) -> IntMatrix {
        let (h, u) = hnf(a);
        assert!(u.is_unimodular());
        assert_eq!(&u * a, h);
        h
    }

    fn check_snf(a: &IntMatrix) -> Vec<BigInt> {
        let f = snf(a);
        assert!(f.u.is_unimodular() && f.v.is_unimodular());
        assert_eq!(&(&f.u * a) * &f.v, f.s);
        assert_eq!(&f.u * &f.u_inv, IntMatrix::identity(a.rows()));
        let d = f.diagonal();
        for r in 0..a.rows() {
            for c in 0..a.cols() {
                if r != c {
                    assert!(f.s.get(r, c).is_zero());
                }
            }
        }
        for w in d.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        d
    }

    #[test]
    fn hnf_identity_and_zero() {
        let (h, u) = hnf(&IntMatrix::identity(2));
        assert_eq!(h, IntMatrix::identity(2));
        assert_eq!(u, IntMatrix::identity(2));
        let (h, u) = hnf(&m(1, 1, &[0]));
        assert_eq!(h, m(1, 1, &[0]));
        assert_eq!(u, m(1, 1, &[1]));
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let h = check_hnf(&m(2, 2, &[2, 4, 6, 8]));
        assert_eq!(h, m(2, 2, &[2, 0, 0, 4]));
    }

    #[test]
    fn snf_examples() {
        let d = check_snf(&m(2, 2, &[2, 4, 6, 8]));
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(4)]);
        let d = check_snf(&m(2, 2, &[1, 0, 0, 6]));
        assert_eq!(d, vec![BigInt::from(1), BigInt::from(6)]);
        let f = snf(&IntMatrix::zeros(2, 3));
        assert!(f.s.is_zero());
        assert_eq!(f.u, IntMatrix::identity(2));
        assert_eq!(f.v, IntMatrix::identity(3));
    }

    #[test]
    fn snf_enforces_divisibility() {
        let d = check_snf(&m(2, 2, &[2, 0, 0, 3]));
        assert_eq!(d, vec![BigInt::from(1), BigInt::from(6)]);
        let d = check_snf(&m(3, 3, &[4, 0, 0, 0, 6, 0, 0, 0, 10]));
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(2), BigInt::from(60)]);
    }

    #[test]
    fn empty_shapes() {
        check_hnf(&IntMatrix::zeros(0, 3));
        check_hnf(&IntMatrix::zeros(3, 0));
        check_snf(&IntMatrix::zeros(0, 2));
        check_snf(&IntMatrix::zeros(2, 0));
    }
}
