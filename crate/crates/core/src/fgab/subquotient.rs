use num_bigint::BigInt;
use num_traits::One;

use super::{FgAbGroup, FgAbMap};
use crate::error::{Error, Result};
use crate::intlinalg::{kernel_basis, snf, IntMatrix, Lattice};

/// The homology `ker b / im a` of `A →a B →b C` with `b∘a = 0`.
///
/// The resulting group has a diagonal presentation. Elements of it are
/// represented in `B` by the columns of [`Subquotient::representatives`].
#[derive(Clone, Debug)]
pub struct Subquotient {
    group: FgAbGroup,
    ambient: FgAbGroup,
    incoming: FgAbGroup,
    outgoing: FgAbMap,
    /// `ker b` as a lattice in `Z^{ngens B}` (contains the relations of `B`).
    preimage: Lattice,
    /// `ngens B x ngens H`.
    reps: IntMatrix,
    /// Preimage lattice coordinates to generators of the group,
    /// `ngens H x rank(preimage)`.
    to_group: IntMatrix,
}

impl Subquotient {
    pub fn new(a: &FgAbMap, b: &FgAbMap) -> Result<Self> {
        if a.dst() != b.src() {
            return Err(Error::EndpointMismatch("subquotient maps do not meet".into()));
        }
        if !b.compose(a)?.is_zero() {
            return Err(Error::Precondition("subquotient needs b∘a = 0".into()));
        }
        let ambient = b.src().clone();
        let nb = ambient.ngens();
        let rel_c = b.dst().relation_basis();
        let system = IntMatrix::hstack(&[b.matrix(), &rel_c]);
        let ker = kernel_basis(&system);
        let vectors: Vec<Vec<BigInt>> = ker
            .columns()
            .into_iter()
            .map(|mut v| {
                v.truncate(nb);
                v
            })
            .collect();
        let preimage = Lattice::from_vectors(nb, vectors);
        let k = preimage.rank();

        let rel_b = ambient.relation_basis();
        let mut rel_cols = Vec::with_capacity(rel_b.cols() + a.src().ngens());
        for v in rel_b.columns().into_iter().chain(a.matrix().columns()) {
            let c =
                preimage.coords(&v).ok_or_else(|| Error::Precondition("image does not lie in the kernel".into()))?;
            rel_cols.push(c);
        }
        let rel = IntMatrix::from_columns(k, &rel_cols);
        let f = snf(&rel);
        let diag = f.diagonal();
        let d_at = |t: usize| diag.get(t).cloned().unwrap_or_default();
        let kept: Vec<usize> = (0..k).filter(|&t| !d_at(t).is_one()).collect();
        let orders: Vec<BigInt> = kept.iter().map(|&t| d_at(t)).collect();
        let group = FgAbGroup::diagonal(&orders);

        let gens = preimage.basis_matrix();
        let reps = ambient.lattice().reduce_columns(&(&gens * &f.u_inv.select_columns(&kept)));
        let to_group = f.u.select_rows(&kept);
        Ok(Subquotient { group, ambient, incoming: a.src().clone(), outgoing: b.clone(), preimage, reps, to_group })
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn ambient(&self) -> &FgAbGroup {
        &self.ambient
    }

    pub fn representatives(&self) -> &IntMatrix {
        &self.reps
    }

    /// Class in the subquotient of an element of `ker b` (given in ambient
    /// coordinates), or `None` when the element is not a cycle.
    pub fn class_of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let c = self.preimage.coords(v)?;
        Some(self.group.reduce(&self.to_group.mul_vec(&c)))
    }

    /// Factors `x: X → B` with `b∘x = 0` through the subquotient.
    pub fn lift_in(&self, x: &FgAbMap) -> Result<FgAbMap> {
        if x.dst() != &self.ambient {
            return Err(Error::EndpointMismatch("lift_in target is not the ambient group".into()));
        }
        let mut cols = Vec::with_capacity(x.src().ngens());
        for v in x.matrix().columns() {
            cols.push(
                self.class_of(&v)
                    .ok_or_else(|| Error::Precondition("map does not land in the kernel of the outgoing map".into()))?,
            );
        }
        FgAbMap::new(x.src().clone(), self.group.clone(), IntMatrix::from_columns(self.group.ngens(), &cols))
    }

    /// Factors `y: B → X` with `y∘a = 0`, restricted to the cycles.
    pub fn induce_out(&self, y: &FgAbMap) -> Result<FgAbMap> {
        if y.src() != &self.ambient {
            return Err(Error::EndpointMismatch("induce_out source is not the ambient group".into()));
        }
        let m = y.matrix() * &self.reps;
        FgAbMap::new(self.group.clone(), y.dst().clone(), m)
            .map(FgAbMap::reduced)
            .map_err(|_| Error::Precondition("map does not vanish on the incoming image".into()))
    }

    /// The map from the subquotient back into the ambient group, defined
    /// when the incoming map is zero (plain kernels).
    pub fn inclusion(&self) -> Result<FgAbMap> {
        FgAbMap::new(self.group.clone(), self.ambient.clone(), self.reps.clone())
    }

    pub fn incoming_source(&self) -> &FgAbGroup {
        &self.incoming
    }

    pub fn outgoing(&self) -> &FgAbMap {
        &self.outgoing
    }
}

/// Kernel of a map, with its inclusion and the universal factorization.
#[derive(Clone, Debug)]
pub struct Kernel {
    sq: Subquotient,
    incl: FgAbMap,
}

impl Kernel {
    pub fn group(&self) -> &FgAbGroup {
        self.sq.group()
    }

    pub fn inclusion(&self) -> &FgAbMap {
        &self.incl
    }

    /// Factors `x` with `f∘x = 0` through the kernel.
    pub fn lift(&self, x: &FgAbMap) -> Result<FgAbMap> {
        self.sq.lift_in(x)
    }
}

pub fn kernel(f: &FgAbMap) -> Kernel {
    let zero = FgAbMap::from_trivial(f.src());
    let sq = Subquotient::new(&zero, f).expect("kernel of a well-defined map");
    let incl = sq.inclusion().expect("kernel inclusion is well-defined");
    Kernel { sq, incl }
}

/// Cokernel of a map: same generators with the image added to the relations.
#[derive(Clone, Debug)]
pub struct Cokernel {
    group: FgAbGroup,
    proj: FgAbMap,
    source: FgAbMap,
}

impl Cokernel {
    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn projection(&self) -> &FgAbMap {
        &self.proj
    }

    /// Factors `y` with `y∘f = 0` through the cokernel.
    pub fn descend(&self, y: &FgAbMap) -> Result<FgAbMap> {
        if y.src() != self.source.dst() {
            return Err(Error::EndpointMismatch("descend source is not the cokernel's ambient".into()));
        }
        FgAbMap::new(self.group.clone(), y.dst().clone(), y.matrix().clone())
            .map_err(|_| Error::Precondition("map does not vanish on the image".into()))
    }
}

pub fn cokernel(f: &FgAbMap) -> Cokernel {
    let dst = f.dst();
    let rel = IntMatrix::hstack(&[&dst.relation_basis(), f.matrix()]);
    let group = FgAbGroup::new(dst.ngens(), rel).expect("cokernel presentation");
    let proj = FgAbMap::new(dst.clone(), group.clone(), IntMatrix::identity(dst.ngens()))
        .expect("cokernel projection is well-defined");
    Cokernel { group, proj, source: f.clone() }
}

/// Whether `ker b = im a` for composable `a` and `b`.
pub fn is_exact_at(a: &FgAbMap, b: &FgAbMap) -> Result<bool> {
    if a.dst() != b.src() {
        return Err(Error::EndpointMismatch("exactness check on maps that do not meet".into()));
    }
    if !b.compose(a)?.is_zero() {
        return Ok(false);
    }
    Ok(Subquotient::new(a, b)?.group().is_trivial())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_doubling_on_z4() {
        let z4 = FgAbGroup::cyclic(4);
        let f = FgAbMap::from_i64(&z4, &z4, &[2]).unwrap();
        let k = kernel(&f);
        assert_eq!(k.group().invariant_factors().torsion_u64(), vec![2]);
        assert!(f.compose(k.inclusion()).unwrap().is_zero());
        let c = cokernel(&f);
        assert_eq!(c.group().invariant_factors().torsion_u64(), vec![2]);
    }

    #[test]
    fn homology_of_z_times_two() {
        let z = FgAbGroup::free(1);
        let two = FgAbMap::from_i64(&z, &z, &[2]).unwrap();
        let zero = FgAbMap::to_trivial(&z);
        let h = Subquotient::new(&two, &zero).unwrap();
        assert_eq!(h.group().to_string(), "Z/2");
        let proj = h.lift_in(&FgAbMap::identity(&z)).unwrap();
        assert!(!proj.is_zero());
        assert!(!is_exact_at(&two, &zero).unwrap());
        assert!(is_exact_at(&FgAbMap::from_trivial(&z), &two).unwrap());
    }

    #[test]
    fn lift_and_induce_round_trip() {
        let z = FgAbGroup::free(2);
        let f = FgAbMap::from_i64(&z, &FgAbGroup::free(1), &[1, -1]).unwrap();
        let k = kernel(&f);
        assert_eq!(k.group().to_string(), "Z");
        let back = k.lift(k.inclusion()).unwrap();
        assert!(back.equals(&FgAbMap::identity(k.group())).unwrap());
        assert!(k.lift(&FgAbMap::identity(&z)).is_err());
    }
}
