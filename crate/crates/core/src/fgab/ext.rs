use num_bigint::BigInt;
use num_traits::Zero;

use super::{cokernel, kernel, FgAbGroup, FgAbMap, HomProblem, Kernel};
use crate::error::{Error, Result};
use crate::intlinalg::IntMatrix;

/// Precomposition with a relation matrix `R` (`n x m`), as a map
/// `Hom(Z^n, C) = C^n → C^m = Hom(Z^m, C)`.
pub(crate) fn cochain_map(r: &IntMatrix, c: &FgAbGroup) -> FgAbMap {
    let m = r.transpose().kron(&IntMatrix::identity(c.ngens()));
    FgAbMap::new(c.power(r.rows()), c.power(r.cols()), m).expect("precomposition is well-defined")
}

/// An extension `0 → C →incl Y →proj A → 0`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub carrier: FgAbGroup,
    pub incl: FgAbMap,
    pub proj: FgAbMap,
}

impl Extension {
    pub fn is_exact(&self) -> bool {
        self.incl.is_injective()
            && super::is_exact_at(&self.incl, &self.proj).unwrap_or(false)
            && self.proj.is_surjective()
    }

    /// A section `s: A → Y` with `proj∘s = id`, if the extension splits.
    pub fn section(&self) -> Option<FgAbMap> {
        let a = self.proj.dst();
        HomProblem::new(a, &self.carrier).postcompose(&self.proj, &FgAbMap::identity(a)).ok()?.solve()
    }
}

/// `Ext¹(A, C)` computed from the free presentation of `A`.
///
/// Generators of [`Ext1::group`] are the coordinates of `C^m`, one block of
/// `C` per independent relator of `A`, so a group element is directly a
/// cocycle.
#[derive(Clone, Debug)]
pub struct Ext1 {
    a: FgAbGroup,
    c: FgAbGroup,
    relators: IntMatrix,
    coboundary: FgAbMap,
    group: FgAbGroup,
}

pub fn ext1(a: &FgAbGroup, c: &FgAbGroup) -> Ext1 {
    let relators = a.relation_basis();
    let coboundary = cochain_map(&relators, c);
    let group = cokernel(&coboundary).group().clone();
    Ext1 { a: a.clone(), c: c.clone(), relators, coboundary, group }
}

impl Ext1 {
    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn quotient(&self) -> &FgAbGroup {
        &self.a
    }

    pub fn sub(&self) -> &FgAbGroup {
        &self.c
    }

    /// `Hom(Z^n, C) → Hom(Z^m, C)`; its cokernel is the Ext group.
    pub fn coboundary(&self) -> &FgAbMap {
        &self.coboundary
    }

    pub fn is_zero_class(&self, class: &[BigInt]) -> bool {
        self.group.is_zero_element(class)
    }

    /// The extension `(Z^n ⊕ C) / ⟨(r_l, −γ_l), (0, rel_C)⟩` of a cocycle `γ`.
    pub fn realize(&self, class: &[BigInt]) -> Result<Extension> {
        let n = self.a.ngens();
        let cn = self.c.ngens();
        let m = self.relators.cols();
        if class.len() != m * cn {
            return Err(Error::Dimension(format!("class has {} coordinates, expected {}", class.len(), m * cn)));
        }
        let gamma = IntMatrix::from_vec(m, cn, class.to_vec()).transpose();
        let rel_c = self.c.relation_basis();
        let zero_nc = IntMatrix::zeros(n, rel_c.cols());
        let rel = IntMatrix::from_blocks(
            &[n, cn],
            &[m, rel_c.cols()],
            &[vec![Some(&self.relators), Some(&zero_nc)], vec![Some(&-&gamma), Some(&rel_c)]],
        );
        let carrier = FgAbGroup::new(n + cn, rel)?;
        let incl = FgAbMap::new(
            self.c.clone(),
            carrier.clone(),
            IntMatrix::vstack(&[&IntMatrix::zeros(n, cn), &IntMatrix::identity(cn)]),
        )?;
        let proj = FgAbMap::new(
            carrier.clone(),
            self.a.clone(),
            IntMatrix::hstack(&[&IntMatrix::identity(n), &IntMatrix::zeros(n, cn)]),
        )?;
        Ok(Extension { carrier, incl, proj })
    }

    /// The class of an arbitrary extension of `A` by `C`, as a reduced
    /// cocycle. Sign convention matches [`Ext1::realize`].
    pub fn classify(&self, ext: &Extension) -> Result<Vec<BigInt>> {
        if ext.incl.src() != &self.c || ext.proj.dst() != &self.a {
            return Err(Error::EndpointMismatch("extension does not have the expected ends".into()));
        }
        let n = self.a.ngens();
        let free_n = FgAbGroup::free(n);
        let present = FgAbMap::new(free_n.clone(), self.a.clone(), IntMatrix::identity(n))?;
        let lift = HomProblem::new(&free_n, &ext.carrier)
            .postcompose(&ext.proj, &present)?
            .solve()
            .ok_or_else(|| Error::NotExact("extension projection is not surjective".into()))?;
        let free_m = FgAbGroup::free(self.relators.cols());
        let rel_map = FgAbMap::new(free_m.clone(), free_n, self.relators.clone())?;
        let target = lift.compose(&rel_map)?;
        let cocycle = HomProblem::new(&free_m, &self.c)
            .postcompose(&ext.incl, &target)?
            .solve()
            .ok_or_else(|| Error::NotExact("extension is not exact in the middle".into()))?;
        let flat = cocycle.matrix().transpose();
        Ok(self.group.reduce(flat.entries()))
    }

    pub fn zero_class(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.group.ngens()]
    }
}

/// `Hom(A, B)` as the group of cocycles `ker(B^n → B^m)`.
#[derive(Clone, Debug)]
pub struct HomGroup {
    a: FgAbGroup,
    b: FgAbGroup,
    kernel: Kernel,
}

pub fn hom_group(a: &FgAbGroup, b: &FgAbGroup) -> HomGroup {
    let k = kernel(&cochain_map(&a.relation_basis(), b));
    HomGroup { a: a.clone(), b: b.clone(), kernel: k }
}

impl HomGroup {
    pub fn group(&self) -> &FgAbGroup {
        self.kernel.group()
    }

    /// The homomorphism `A → B` named by an element of [`HomGroup::group`].
    pub fn to_map(&self, element: &[BigInt]) -> FgAbMap {
        let flat = self.kernel.inclusion().apply(element);
        let m = IntMatrix::from_vec(self.a.ngens(), self.b.ngens(), flat).transpose();
        FgAbMap::new(self.a.clone(), self.b.clone(), m).expect("cocycles are homomorphisms").reduced()
    }

    /// The element of [`HomGroup::group`] naming `f`.
    pub fn element_of(&self, f: &FgAbMap) -> Result<Vec<BigInt>> {
        let flat = f.matrix().transpose();
        let v = FgAbMap::new(
            FgAbGroup::free(1),
            self.kernel.inclusion().dst().clone(),
            IntMatrix::column_vector(flat.entries().to_vec()),
        )?;
        let e = self.kernel.lift(&v)?;
        Ok(e.matrix().column(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn ext_of_free_group_vanishes() {
        for c in [FgAbGroup::cyclic(2), FgAbGroup::free(2), FgAbGroup::cyclic(6)] {
            assert!(ext1(&FgAbGroup::free(1), &c).group().is_trivial());
        }
    }

    #[test]
    fn ext_z2_z2_is_z2_with_z4_extension() {
        let z2 = FgAbGroup::cyclic(2);
        let e = ext1(&z2, &z2);
        assert_eq!(e.group().to_string(), "Z/2");
        let y = e.realize(&ints(&[1])).unwrap();
        assert!(y.is_exact());
        assert_eq!(y.carrier.to_string(), "Z/4");
        assert!(y.section().is_none());
        let split = e.realize(&ints(&[0])).unwrap();
        assert_eq!(split.carrier.to_string(), "Z/2+Z/2");
        assert!(split.section().is_some());
        assert_eq!(e.classify(&y).unwrap(), ints(&[1]));
        assert_eq!(e.classify(&split).unwrap(), ints(&[0]));
    }

    #[test]
    fn ext_z2_z_is_z2() {
        let e = ext1(&FgAbGroup::cyclic(2), &FgAbGroup::free(1));
        assert_eq!(e.group().to_string(), "Z/2");
    }

    #[test]
    fn hom_group_round_trip() {
        let h = hom_group(&FgAbGroup::cyclic(4), &FgAbGroup::cyclic(6));
        assert_eq!(h.group().to_string(), "Z/2");
        let f = FgAbMap::from_i64(&FgAbGroup::cyclic(4), &FgAbGroup::cyclic(6), &[3]).unwrap();
        let e = h.element_of(&f).unwrap();
        assert!(h.to_map(&e).equals(&f).unwrap());
    }
}
