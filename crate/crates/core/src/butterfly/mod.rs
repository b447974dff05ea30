//! Butterflies `E^• → F^•` between two-term complexes.
//!
//! ```text
//!   E^{-1}        F^{-1}
//!        \j      /i
//!          Y
//!        /q      \p
//!   E^0           F^0
//! ```
//!
//! with `q∘j = d_E`, `p∘i = -d_F`, `p∘j = 0` and `0 → F^{-1} → Y → E^0 → 0`
//! short exact.

mod compose;
mod random;
mod structure;
mod two_morphism;

pub use compose::{baer_sum, compose, pullback_compose, pushout_compose, splitting_compose};
pub use random::{random_butterfly, random_complex, random_group, random_map};
pub use structure::{
    canonical_coimage_iso, canonical_image_iso, classify, coimage_b, cokernel_b, copip, image_b, invert, is_invertible,
    kernel_b, middle_exact_iso, pip, Classification,
};
pub use two_morphism::{two_morphism_directions, two_morphism_find, TwoMorphism};

use std::fmt;

use crate::error::{Axiom, Error, Result};
use crate::fgab::{is_exact_at, FgAbGroup, FgAbMap, HomProblem};
use crate::intlinalg::IntMatrix;
use crate::twocomplex::{ChainMap, TwoTermComplex};

/// One of the four maps attached to the carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Wing {
    I,
    J,
    P,
    Q,
}

impl Wing {
    pub const ALL: [Wing; 4] = [Wing::I, Wing::J, Wing::P, Wing::Q];

    pub fn name(self) -> &'static str {
        match self {
            Wing::I => "i",
            Wing::J => "j",
            Wing::P => "p",
            Wing::Q => "q",
        }
    }
}

#[derive(Clone)]
pub struct Butterfly {
    src: TwoTermComplex,
    dst: TwoTermComplex,
    i: FgAbMap,
    j: FgAbMap,
    p: FgAbMap,
    q: FgAbMap,
}

impl fmt::Debug for Butterfly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Butterfly")
            .field("src", &self.src)
            .field("dst", &self.dst)
            .field("carrier", self.carrier())
            .field("i", self.i.matrix())
            .field("j", self.j.matrix())
            .field("p", self.p.matrix())
            .field("q", self.q.matrix())
            .finish()
    }
}

impl Butterfly {
    /// Checks every axiom and refuses with the first violation.
    pub fn new(
        src: &TwoTermComplex,
        dst: &TwoTermComplex,
        i: FgAbMap,
        j: FgAbMap,
        p: FgAbMap,
        q: FgAbMap,
    ) -> Result<Self> {
        let b = Self::assemble(src, dst, i, j, p, q)?;
        b.validate().map_err(Error::Axiom)?;
        Ok(b)
    }

    /// Checks only that the wings connect the right groups.
    pub fn assemble(
        src: &TwoTermComplex,
        dst: &TwoTermComplex,
        i: FgAbMap,
        j: FgAbMap,
        p: FgAbMap,
        q: FgAbMap,
    ) -> Result<Self> {
        let y = i.dst();
        let ok = i.src() == dst.deg_m1()
            && j.src() == src.deg_m1()
            && j.dst() == y
            && p.src() == y
            && p.dst() == dst.deg_0()
            && q.src() == y
            && q.dst() == src.deg_0();
        if !ok {
            return Err(Error::Axiom(Axiom::WingEndpoints));
        }
        Ok(Butterfly { src: src.clone(), dst: dst.clone(), i, j, p, q })
    }

    /// Builds from raw matrices against a given carrier presentation.
    pub fn from_matrices(
        src: &TwoTermComplex,
        dst: &TwoTermComplex,
        carrier: &FgAbGroup,
        [i, j, p, q]: [IntMatrix; 4],
    ) -> Result<Self> {
        let wing = |name: &str, s: &FgAbGroup, d: &FgAbGroup, m: IntMatrix| {
            FgAbMap::new(s.clone(), d.clone(), m).map_err(|e| match e {
                Error::NotWellDefined(_) => Error::NotWellDefined(format!("wing {name} is not a homomorphism")),
                Error::Dimension(_) => Error::Dimension(format!("wing {name} has the wrong shape")),
                other => other,
            })
        };
        let i = wing("i", dst.deg_m1(), carrier, i)?;
        let j = wing("j", src.deg_m1(), carrier, j)?;
        let p = wing("p", carrier, dst.deg_0(), p)?;
        let q = wing("q", carrier, src.deg_0(), q)?;
        Self::assemble(src, dst, i, j, p, q)
    }

    pub fn validate(&self) -> std::result::Result<(), Axiom> {
        let holds = |r: Result<bool>| r.unwrap_or(false);
        if !holds(self.q.compose(&self.j).and_then(|qj| qj.equals(self.src.d()))) {
            return Err(Axiom::TriangleQj);
        }
        if !holds(self.p.compose(&self.i).and_then(|pi| pi.equals(&self.dst.d().neg()))) {
            return Err(Axiom::TrianglePi);
        }
        if !self.p.compose(&self.j).map(|pj| pj.is_zero()).unwrap_or(false) {
            return Err(Axiom::CompositePj);
        }
        if !self.i.is_injective() {
            return Err(Axiom::ExactAtDstDegM1);
        }
        if !holds(is_exact_at(&self.i, &self.q)) {
            return Err(Axiom::ExactAtCarrier);
        }
        if !self.q.is_surjective() {
            return Err(Axiom::ExactAtSrcDeg0);
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn src(&self) -> &TwoTermComplex {
        &self.src
    }

    pub fn dst(&self) -> &TwoTermComplex {
        &self.dst
    }

    pub fn carrier(&self) -> &FgAbGroup {
        self.i.dst()
    }

    pub fn i(&self) -> &FgAbMap {
        &self.i
    }

    pub fn j(&self) -> &FgAbMap {
        &self.j
    }

    pub fn p(&self) -> &FgAbMap {
        &self.p
    }

    pub fn q(&self) -> &FgAbMap {
        &self.q
    }

    pub fn wing(&self, w: Wing) -> &FgAbMap {
        match w {
            Wing::I => &self.i,
            Wing::J => &self.j,
            Wing::P => &self.p,
            Wing::Q => &self.q,
        }
    }

    /// Copy with one wing replaced; the result is not validated.
    pub fn with_wing(&self, w: Wing, map: FgAbMap) -> Result<Self> {
        let mut maps = [self.i.clone(), self.j.clone(), self.p.clone(), self.q.clone()];
        maps[w as usize] = map;
        let [i, j, p, q] = maps;
        Self::assemble(&self.src, &self.dst, i, j, p, q)
    }

    /// Carrier `E^0 ⊕ E^{-1}`, `i = (0;1)`, `j = (d;1)`, `p = (1,-d)`, `q = (1,0)`.
    pub fn identity(e: &TwoTermComplex) -> Self {
        Self::from_chain_map(&ChainMap::identity(e))
    }

    /// Carrier `E^0 ⊕ F^{-1}`, `i = (0;1)`, `j = (d;φ^{-1})`, `p = (φ^0,-d)`, `q = (1,0)`.
    pub fn from_chain_map(f: &ChainMap) -> Self {
        let (e, g) = (f.src(), f.dst());
        let parts = [e.deg_0(), g.deg_m1()];
        let i = FgAbMap::injection(&parts, 1);
        let j = FgAbMap::column(&[e.d(), f.f_m1()]).expect("same source");
        let p = FgAbMap::row(&[f.f_0(), &g.d().neg()]).expect("same target");
        let q = FgAbMap::projection(&parts, 0);
        let b = Butterfly { src: e.clone(), dst: g.clone(), i, j, p, q };
        debug_assert!(b.is_valid());
        b
    }

    /// The butterfly of the zero chain map, i.e. the composite through the
    /// zero complex.
    pub fn zero(e: &TwoTermComplex, f: &TwoTermComplex) -> Self {
        Self::from_chain_map(&ChainMap::zero(e, f))
    }

    /// Chain map `(i^{-1}(j - s∘d), p∘s)` from a section `s` of `q`.
    pub fn to_chain_map(&self, s: &FgAbMap) -> Result<ChainMap> {
        let e0 = self.src.deg_0();
        if !self.q.compose(s)?.equals(&FgAbMap::identity(e0))? {
            return Err(Error::Precondition("s is not a section of q".into()));
        }
        let f0 = self.p.compose(s)?;
        let target = self.j.sub(&s.compose(self.src.d())?)?;
        let f_m1 = HomProblem::new(self.src.deg_m1(), self.dst.deg_m1())
            .postcompose(&self.i, &target)?
            .solve()
            .ok_or_else(|| Error::Precondition("j - s∘d does not factor through i".into()))?;
        ChainMap::new(&self.src, &self.dst, f_m1, f0)
    }

    /// A section of `q`, when the carrier sequence splits.
    pub fn find_section(&self) -> Option<FgAbMap> {
        let e0 = self.src.deg_0();
        HomProblem::new(e0, self.carrier()).postcompose(&self.q, &FgAbMap::identity(e0)).ok()?.solve()
    }

    /// Induced maps `H^{-1}E → H^{-1}F` (`i^{-1}j`) and `H^0E → H^0F` (`p q^{-1}`).
    pub fn homology_action(&self) -> (FgAbMap, FgAbMap) {
        let he = self.src.homology();
        let hf = self.dst.homology();
        let i_k = self.i.compose(hf.h_m1.inclusion()).expect("composable");
        let j_k = self.j.compose(he.h_m1.inclusion()).expect("composable");
        let h_m1 = HomProblem::new(he.h_m1(), hf.h_m1())
            .postcompose(&i_k, &j_k)
            .expect("endpoints match")
            .solve()
            .expect("j maps cycles into the image of i on cycles");
        let q_c = he.h0.projection().compose(&self.q).expect("composable");
        let p_c = hf.h0.projection().compose(&self.p).expect("composable");
        let h0 = HomProblem::new(he.h0(), hf.h0())
            .precompose(&q_c, &p_c)
            .expect("endpoints match")
            .solve()
            .expect("p descends along q on homology");
        (h_m1, h0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixtures_validate() {
        for b in [fixtures::b(), fixtures::ik2(), fixtures::br(), Butterfly::identity(&fixtures::e2())] {
            assert_eq!(b.validate(), Ok(()));
        }
        assert!(Butterfly::identity(&TwoTermComplex::zero()).carrier().ngens() == 0);
    }

    #[test]
    fn zeroed_wings_are_refused() {
        let b = fixtures::b();
        let q0 = FgAbMap::zero(b.carrier(), b.src().deg_0());
        // d = 0 on K2, so the triangle still commutes and exactness fails first
        assert_eq!(b.with_wing(Wing::Q, q0).unwrap().validate(), Err(Axiom::ExactAtCarrier));
        let e2 = fixtures::e2();
        let id = Butterfly::identity(&e2);
        let q0 = FgAbMap::zero(id.carrier(), e2.deg_0());
        assert_eq!(id.with_wing(Wing::Q, q0).unwrap().validate(), Err(Axiom::TriangleQj));
    }

    #[test]
    fn identity_of_e2_has_the_displayed_wings() {
        let id = Butterfly::identity(&fixtures::e2());
        assert_eq!(id.j().matrix(), &IntMatrix::from_i64(2, 1, &[2, 1]));
        assert_eq!(id.p().matrix(), &IntMatrix::from_i64(1, 2, &[1, -2]));
        assert_eq!(id.i().matrix(), &IntMatrix::from_i64(2, 1, &[0, 1]));
        assert_eq!(id.q().matrix(), &IntMatrix::from_i64(1, 2, &[1, 0]));
    }

    #[test]
    fn chain_map_round_trip() {
        let r = fixtures::r();
        let br = Butterfly::from_chain_map(&r);
        let s = FgAbMap::injection(&[br.src().deg_0(), br.dst().deg_m1()], 0);
        let back = br.to_chain_map(&s).unwrap();
        assert!(back.equals(&r).unwrap());
        assert!(fixtures::b().find_section().is_none());
    }

    #[test]
    fn homology_actions_of_fixtures() {
        let (a, b) = fixtures::b().homology_action();
        assert!(a.is_isomorphism() && b.is_isomorphism());
        let (a, b) = fixtures::br().homology_action();
        assert!(a.src().is_trivial());
        assert!(b.equals(&FgAbMap::from_i64(b.src(), b.dst(), &[1]).unwrap()).unwrap());
    }
}
