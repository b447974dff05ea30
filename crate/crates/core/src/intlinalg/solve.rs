use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::lattice::Lattice;
use super::normal_form::hnf_rows;
use super::IntMatrix;

/// Integer solution set `{ particular + kernel·t : t ∈ Z^k }` of `A·x = b`.
#[derive(Clone, Debug)]
pub struct Solution {
    pub particular: Vec<BigInt>,
    /// Columns generate the integer kernel of `A`.
    pub kernel: IntMatrix,
}

/// Column echelon decomposition `A·V = L`, `V` unimodular.
struct ColumnEchelon {
    /// `V^T` as rows: row `k` is column `k` of `V`.
    v_t: Vec<Vec<BigInt>>,
    /// Rows of `L^T` that are nonzero, i.e. the first `rank` columns of `L`.
    l_t: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn column_echelon(a: &IntMatrix) -> ColumnEchelon {
    let n = a.cols();
    let mut h = a.transpose().to_row_vecs();
    let mut u = IntMatrix::identity(n).to_row_vecs();
    let pivots = hnf_rows(&mut h, Some(&mut u), a.rows());
    h.truncate(pivots.len());
    ColumnEchelon { v_t: u, l_t: h, pivots }
}

/// Basis of the integer kernel `{x : A·x = 0}` as matrix columns, reduced to
/// Hermite form so the entries stay small.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let ce = column_echelon(a);
    kernel_from(&ce, a.cols()).basis_matrix()
}

fn kernel_from(ce: &ColumnEchelon, n: usize) -> Lattice {
    let r = ce.pivots.len();
    Lattice::from_vectors(n, ce.v_t[r..].to_vec())
}

/// Solves `A·x = b` over the integers. `None` means no integer solution
/// exists, which is an ordinary outcome rather than an error.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Solution> {
    assert_eq!(b.len(), a.rows(), "right-hand side length must match row count");
    let n = a.cols();
    let ce = column_echelon(a);
    let r = ce.pivots.len();
    // forward substitution on L·y = b, L[p][k] = l_t[k][p]
    let mut y: Vec<BigInt> = Vec::with_capacity(r);
    for k in 0..r {
        let p = ce.pivots[k];
        let mut rhs = b[p].clone();
        for (l, yl) in y.iter().enumerate() {
            if !yl.is_zero() {
                rhs -= &ce.l_t[l][p] * yl;
            }
        }
        let (q, rem) = rhs.div_mod_floor(&ce.l_t[k][p]);
        if !rem.is_zero() {
            return None;
        }
        y.push(q);
    }
    for row in 0..a.rows() {
        let mut acc = BigInt::zero();
        for (k, yk) in y.iter().enumerate() {
            if !yk.is_zero() {
                acc += &ce.l_t[k][row] * yk;
            }
        }
        if acc != b[row] {
            return None;
        }
    }
    let mut x = vec![BigInt::zero(); n];
    for (k, yk) in y.iter().enumerate() {
        if yk.is_zero() {
            continue;
        }
        for (xi, vi) in x.iter_mut().zip(&ce.v_t[k]) {
            if !vi.is_zero() {
                *xi += yk * vi;
            }
        }
    }
    let kernel = kernel_from(&ce, n);
    kernel.reduce(&mut x);
    Some(Solution { particular: x, kernel: kernel.basis_matrix() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn scalar_cases() {
        let a = IntMatrix::from_i64(1, 1, &[2]);
        let s = solve(&a, &ints(&[4])).expect("solvable");
        assert_eq!(s.particular, ints(&[2]));
        assert_eq!(s.kernel.cols(), 0);
        assert!(solve(&a, &ints(&[3])).is_none());
    }

    #[test]
    fn one_relation_two_unknowns() {
        let a = IntMatrix::from_i64(1, 2, &[1, 1]);
        let s = solve(&a, &ints(&[0])).expect("solvable");
        assert_eq!(s.particular, ints(&[0, 0]));
        assert_eq!(s.kernel.cols(), 1);
        let k = s.kernel.column(0);
        assert!(k == ints(&[1, -1]) || k == ints(&[-1, 1]));
    }

    #[test]
    fn empty_systems() {
        let a = IntMatrix::zeros(0, 3);
        let s = solve(&a, &[]).expect("trivially solvable");
        assert_eq!(s.kernel.cols(), 3);
        let a = IntMatrix::zeros(2, 0);
        assert!(solve(&a, &ints(&[0, 0])).is_some());
        assert!(solve(&a, &ints(&[0, 1])).is_none());
    }
}
