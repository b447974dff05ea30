//! Two-term complexes `E^{-1} →d E^0` and chain maps between them.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::fgab::{cokernel, kernel, Cokernel, FgAbGroup, FgAbMap, Kernel};
use crate::intlinalg::IntMatrix;

/// `H^{-1} = ker d` and `H^0 = coker d`, with their structure maps.
#[derive(Clone, Debug)]
pub struct Homology {
    pub h_m1: Kernel,
    pub h0: Cokernel,
}

impl Homology {
    pub fn h_m1(&self) -> &FgAbGroup {
        self.h_m1.group()
    }

    pub fn h0(&self) -> &FgAbGroup {
        self.h0.group()
    }
}

#[derive(Clone)]
pub struct TwoTermComplex {
    d: FgAbMap,
    homology: Arc<OnceLock<Homology>>,
}

impl PartialEq for TwoTermComplex {
    fn eq(&self, other: &Self) -> bool {
        self.d.src() == other.d.src() && self.d.dst() == other.d.dst() && self.d.equals(&other.d).unwrap_or(false)
    }
}

impl Eq for TwoTermComplex {}

impl fmt::Debug for TwoTermComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} -> {} by {}]", self.deg_m1(), self.deg_0(), self.d.matrix())
    }
}

impl fmt::Display for TwoTermComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} -> {}]", self.deg_m1(), self.deg_0())
    }
}

impl TwoTermComplex {
    pub fn new(d: FgAbMap) -> Self {
        TwoTermComplex { d, homology: Arc::new(OnceLock::new()) }
    }

    pub fn from_parts(deg_m1: &FgAbGroup, deg_0: &FgAbGroup, d: IntMatrix) -> Result<Self> {
        Ok(Self::new(FgAbMap::new(deg_m1.clone(), deg_0.clone(), d)?))
    }

    pub fn zero() -> Self {
        Self::new(FgAbMap::zero(&FgAbGroup::trivial(), &FgAbGroup::trivial()))
    }

    /// `[A → 0]`.
    pub fn shift1(a: &FgAbGroup) -> Self {
        Self::new(FgAbMap::to_trivial(a))
    }

    /// `[0 → A]`.
    pub fn embed0(a: &FgAbGroup) -> Self {
        Self::new(FgAbMap::from_trivial(a))
    }

    pub fn deg_m1(&self) -> &FgAbGroup {
        self.d.src()
    }

    pub fn deg_0(&self) -> &FgAbGroup {
        self.d.dst()
    }

    pub fn d(&self) -> &FgAbMap {
        &self.d
    }

    pub fn homology(&self) -> &Homology {
        self.homology.get_or_init(|| Homology { h_m1: kernel(&self.d), h0: cokernel(&self.d) })
    }

    pub fn direct_sum(parts: &[&TwoTermComplex]) -> Self {
        let ds: Vec<&FgAbMap> = parts.iter().map(|c| &c.d).collect();
        Self::new(FgAbMap::direct_sum(&ds))
    }

    /// Whether both homology groups vanish.
    pub fn is_acyclic(&self) -> bool {
        self.d.is_isomorphism()
    }
}

/// A morphism of complexes `(f^{-1}, f^0)`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    src: TwoTermComplex,
    dst: TwoTermComplex,
    f_m1: FgAbMap,
    f_0: FgAbMap,
}

impl ChainMap {
    pub fn new(src: &TwoTermComplex, dst: &TwoTermComplex, f_m1: FgAbMap, f_0: FgAbMap) -> Result<Self> {
        if f_m1.src() != src.deg_m1()
            || f_m1.dst() != dst.deg_m1()
            || f_0.src() != src.deg_0()
            || f_0.dst() != dst.deg_0()
        {
            return Err(Error::EndpointMismatch("chain map components do not match the complexes".into()));
        }
        if !f_0.compose(src.d())?.equals(&dst.d().compose(&f_m1)?)? {
            return Err(Error::Precondition("chain map does not commute with the differentials".into()));
        }
        Ok(ChainMap { src: src.clone(), dst: dst.clone(), f_m1, f_0 })
    }

    pub fn identity(e: &TwoTermComplex) -> Self {
        ChainMap {
            src: e.clone(),
            dst: e.clone(),
            f_m1: FgAbMap::identity(e.deg_m1()),
            f_0: FgAbMap::identity(e.deg_0()),
        }
    }

    pub fn zero(src: &TwoTermComplex, dst: &TwoTermComplex) -> Self {
        ChainMap {
            src: src.clone(),
            dst: dst.clone(),
            f_m1: FgAbMap::zero(src.deg_m1(), dst.deg_m1()),
            f_0: FgAbMap::zero(src.deg_0(), dst.deg_0()),
        }
    }

    pub fn src(&self) -> &TwoTermComplex {
        &self.src
    }

    pub fn dst(&self) -> &TwoTermComplex {
        &self.dst
    }

    pub fn f_m1(&self) -> &FgAbMap {
        &self.f_m1
    }

    pub fn f_0(&self) -> &FgAbMap {
        &self.f_0
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ChainMap) -> Result<ChainMap> {
        if inner.dst != self.src {
            return Err(Error::EndpointMismatch("chain maps do not compose".into()));
        }
        Ok(ChainMap {
            src: inner.src.clone(),
            dst: self.dst.clone(),
            f_m1: self.f_m1.compose(&inner.f_m1)?,
            f_0: self.f_0.compose(&inner.f_0)?,
        })
    }

    pub fn equals(&self, other: &ChainMap) -> Result<bool> {
        Ok(self.f_m1.equals(&other.f_m1)? && self.f_0.equals(&other.f_0)?)
    }

    pub fn on_h_m1(&self) -> FgAbMap {
        let he = &self.src.homology().h_m1;
        let hf = &self.dst.homology().h_m1;
        let through = self.f_m1.compose(he.inclusion()).expect("composable");
        hf.lift(&through).expect("chain maps preserve cycles")
    }

    pub fn on_h0(&self) -> FgAbMap {
        let he = &self.src.homology().h0;
        let hf = &self.dst.homology().h0;
        let through = hf.projection().compose(&self.f_0).expect("composable");
        he.descend(&through).expect("chain maps preserve boundaries")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homology_examples() {
        let z = FgAbGroup::free(1);
        let e2 = TwoTermComplex::from_parts(&z, &z, IntMatrix::from_i64(1, 1, &[2])).unwrap();
        assert!(e2.homology().h_m1().is_trivial());
        assert_eq!(e2.homology().h0().to_string(), "Z/2");
        let z2 = FgAbGroup::cyclic(2);
        let k2 = TwoTermComplex::from_parts(&z2, &z2, IntMatrix::from_i64(1, 1, &[0])).unwrap();
        assert_eq!(k2.homology().h_m1().to_string(), "Z/2");
        assert_eq!(k2.homology().h0().to_string(), "Z/2");
        assert_eq!(TwoTermComplex::shift1(&z2).homology().h_m1().to_string(), "Z/2");
        assert_eq!(TwoTermComplex::embed0(&z).homology().h0().to_string(), "Z");
        assert_eq!(TwoTermComplex::shift1(&FgAbGroup::trivial()), TwoTermComplex::zero());
    }

    #[test]
    fn chain_map_laws() {
        let z = FgAbGroup::free(1);
        let z2 = FgAbGroup::cyclic(2);
        let e2 = TwoTermComplex::from_parts(&z, &z, IntMatrix::from_i64(1, 1, &[2])).unwrap();
        let k2 = TwoTermComplex::from_parts(&z2, &z2, IntMatrix::from_i64(1, 1, &[0])).unwrap();
        let r = ChainMap::new(
            &e2,
            &k2,
            FgAbMap::from_i64(&z, &z2, &[1]).unwrap(),
            FgAbMap::from_i64(&z, &z2, &[1]).unwrap(),
        )
        .unwrap();
        assert!(r.compose(&ChainMap::identity(&e2)).unwrap().equals(&r).unwrap());
        assert!(ChainMap::identity(&k2).compose(&r).unwrap().equals(&r).unwrap());
        assert!(ChainMap::zero(&k2, &k2).compose(&r).unwrap().equals(&ChainMap::zero(&e2, &k2)).unwrap());
        assert!(r.on_h0().is_isomorphism());
        let id = ChainMap::identity(&k2);
        assert!(id.on_h_m1().equals(&FgAbMap::identity(k2.homology().h_m1())).unwrap());
        assert!(ChainMap::new(&k2, &e2, FgAbMap::zero(&z2, &z), FgAbMap::zero(&z2, &z)).is_ok());
    }
}
