use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::normal_form::hnf_rows;
use super::IntMatrix;

/// A sublattice of `Z^dim` stored as a Hermite-reduced echelon basis.
///
/// Reduction against the basis gives a canonical representative of every
/// coset, which is what membership tests and map equality rely on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Vec::new(), pivots: Vec::new() }
    }

    /// The lattice spanned by the columns of `m`.
    pub fn from_columns(m: &IntMatrix) -> Self {
        Self::from_vectors(m.rows(), m.columns())
    }

    pub fn from_vectors(dim: usize, mut vectors: Vec<Vec<BigInt>>) -> Self {
        vectors.retain(|v| v.iter().any(|x| !x.is_zero()));
        let pivots = hnf_rows(&mut vectors, None, dim);
        vectors.truncate(pivots.len());
        Lattice { dim, basis: vectors, pivots }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of a `dim x rank` matrix.
    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim, &self.basis)
    }

    /// Reduces `v` to its canonical coset representative, returning the
    /// coefficients that were subtracted.
    pub fn reduce_with_coords(&self, v: &mut [BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.dim, "vector length does not match lattice dimension");
        let mut coords = Vec::with_capacity(self.basis.len());
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let q = v[p].div_floor(&b[p]);
            if !q.is_zero() {
                for (x, y) in v.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x -= &q * y;
                    }
                }
            }
            coords.push(q);
        }
        coords
    }

    pub fn reduce(&self, v: &mut [BigInt]) {
        self.reduce_with_coords(v);
    }

    pub fn reduced(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.reduced(v).iter().all(Zero::is_zero)
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the lattice.
    pub fn coords(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut w = v.to_vec();
        let c = self.reduce_with_coords(&mut w);
        w.iter().all(Zero::is_zero).then_some(c)
    }

    /// Copy of `m` with every column reduced.
    pub fn reduce_columns(&self, m: &IntMatrix) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = m.columns().into_iter().map(|c| self.reduced(&c)).collect();
        IntMatrix::from_columns(m.rows(), &cols)
    }

    pub fn contains_columns(&self, m: &IntMatrix) -> bool {
        (0..m.cols()).all(|c| self.contains(&m.column(c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_and_coords() {
        let l = Lattice::from_columns(&IntMatrix::from_i64(2, 2, &[2, 0, 2, 4]));
        assert_eq!(l.rank(), 2);
        let v = vec![BigInt::from(4), BigInt::from(8)];
        let c = l.coords(&v).expect("in lattice");
        let back = l.basis_matrix().mul_vec(&c);
        assert_eq!(back, v);
        assert!(!l.contains(&[BigInt::from(1), BigInt::from(0)]));
    }

    #[test]
    fn canonical_representatives() {
        let l = Lattice::from_columns(&IntMatrix::from_i64(1, 1, &[4]));
        assert_eq!(l.reduced(&[BigInt::from(-3)]), vec![BigInt::from(1)]);
        assert_eq!(l.reduced(&[BigInt::from(9)]), vec![BigInt::from(1)]);
    }
}
