use super::Butterfly;
use crate::error::{Error, Result};
use crate::fgab::{cokernel, kernel, FgAbMap, HomProblem, Subquotient};
use crate::twocomplex::ChainMap;

/// `Z ∘ Y` for `Y: E → F` and `Z: F → G`.
///
/// The carrier is the homology of `F^{-1} →(i_Y; -j_Z) Y ⊕ Z →(-p_Y, q_Z) F^0`.
pub fn compose(z: &Butterfly, y: &Butterfly) -> Result<Butterfly> {
    if y.dst() != z.src() {
        return Err(Error::EndpointMismatch("Y.dst and Z.src differ".into()));
    }
    let parts = [y.carrier(), z.carrier()];
    let a = FgAbMap::column(&[y.i(), &z.j().neg()])?;
    let b = FgAbMap::row(&[&y.p().neg(), z.q()])?;
    let sq = Subquotient::new(&a, &b)?;
    let inj_y = FgAbMap::injection(&parts, 0);
    let inj_z = FgAbMap::injection(&parts, 1);
    let pr_y = FgAbMap::projection(&parts, 0);
    let pr_z = FgAbMap::projection(&parts, 1);
    let j = sq.lift_in(&inj_y.compose(y.j())?)?;
    let i = sq.lift_in(&inj_z.compose(z.i())?)?;
    let p = sq.induce_out(&z.p().compose(&pr_z)?)?;
    let q = sq.induce_out(&y.q().compose(&pr_y)?)?;
    Butterfly::new(y.src(), z.dst(), i, j, p, q)
}

/// Sum of parallel butterflies: the carrier is the homology of
/// `F^{-1} →(i_a; -i_b) Y_a ⊕ Y_b →(q_a, -q_b) E^0`.
pub fn baer_sum(a: &Butterfly, b: &Butterfly) -> Result<Butterfly> {
    if a.src() != b.src() || a.dst() != b.dst() {
        return Err(Error::EndpointMismatch("Baer sum of butterflies with different ends".into()));
    }
    let parts = [a.carrier(), b.carrier()];
    let incoming = FgAbMap::column(&[a.i(), &b.i().neg()])?;
    let outgoing = FgAbMap::row(&[a.q(), &b.q().neg()])?;
    let sq = Subquotient::new(&incoming, &outgoing)?;
    let i = sq.lift_in(&FgAbMap::injection(&parts, 0).compose(a.i())?)?;
    let j = sq.lift_in(&FgAbMap::column(&[a.j(), b.j()])?)?;
    let p = sq.induce_out(&FgAbMap::row(&[a.p(), b.p()])?)?;
    let q = sq.induce_out(&a.q().compose(&FgAbMap::projection(&parts, 0))?)?;
    Butterfly::new(a.src(), a.dst(), i, j, p, q)
}

/// The chain map `ψ` of `Z ∘ Y` determined by a splitting `φ: Y → Z` with
/// `φ∘i_Y = j_Z` and `q_Z∘φ = -p_Y`.
pub fn splitting_compose(z: &Butterfly, y: &Butterfly, phi: &FgAbMap) -> Result<ChainMap> {
    if y.dst() != z.src() {
        return Err(Error::EndpointMismatch("Y.dst and Z.src differ".into()));
    }
    if phi.src() != y.carrier() || phi.dst() != z.carrier() {
        return Err(Error::EndpointMismatch("φ must map carrier(Y) to carrier(Z)".into()));
    }
    if !phi.compose(y.i())?.equals(z.j())? {
        return Err(Error::Precondition("splitting needs φ∘i_Y = j_Z".into()));
    }
    if !z.q().compose(phi)?.equals(&y.p().neg())? {
        return Err(Error::Precondition("splitting needs q_Z∘φ = -p_Y".into()));
    }
    let (e, g) = (y.src(), z.dst());
    let psi_m1 = HomProblem::new(e.deg_m1(), g.deg_m1())
        .postcompose(z.i(), &phi.compose(y.j())?)?
        .solve()
        .ok_or_else(|| Error::Precondition("φ∘j_Y does not factor through i_Z".into()))?;
    let psi_0 = HomProblem::new(e.deg_0(), g.deg_0())
        .precompose(y.q(), &z.p().compose(phi)?.neg())?
        .solve()
        .ok_or_else(|| Error::Precondition("-p_Z∘φ does not descend along q_Y".into()))?;
    ChainMap::new(e, g, psi_m1, psi_0)
}

/// `Z ∘ Y` for `Y` the butterfly of a chain map `f: E → F`, as the kernel of
/// `E^0 ⊕ Z →(-f^0, q_Z) F^0`.
pub fn pullback_compose(z: &Butterfly, f: &ChainMap) -> Result<Butterfly> {
    if f.dst() != z.src() {
        return Err(Error::EndpointMismatch("f.dst and Z.src differ".into()));
    }
    let e = f.src();
    let k = kernel(&FgAbMap::row(&[&f.f_0().neg(), z.q()])?);
    let j = k.lift(&FgAbMap::column(&[e.d(), &z.j().compose(f.f_m1())?])?)?;
    let i = k.lift(&FgAbMap::column(&[&FgAbMap::zero(z.dst().deg_m1(), e.deg_0()), z.i()])?)?;
    let parts = [e.deg_0(), z.carrier()];
    let q = FgAbMap::projection(&parts, 0).compose(k.inclusion())?;
    let p = z.p().compose(&FgAbMap::projection(&parts, 1))?.compose(k.inclusion())?;
    Butterfly::new(e, z.dst(), i, j, p, q)
}

/// `g ∘ Y` for a chain map `g: F → G`, as the cokernel of
/// `F^{-1} →(i_Y; -g^{-1}) Y ⊕ G^{-1}`.
pub fn pushout_compose(g: &ChainMap, y: &Butterfly) -> Result<Butterfly> {
    if y.dst() != g.src() {
        return Err(Error::EndpointMismatch("Y.dst and g.src differ".into()));
    }
    let target = g.dst();
    let c = cokernel(&FgAbMap::column(&[y.i(), &g.f_m1().neg()])?);
    let parts = [y.carrier(), target.deg_m1()];
    let j = c.projection().compose(&FgAbMap::injection(&parts, 0).compose(y.j())?)?;
    let i = c.projection().compose(&FgAbMap::injection(&parts, 1))?;
    let p = c.descend(&FgAbMap::row(&[&g.f_0().compose(y.p())?, &target.d().neg()])?)?;
    let q = c.descend(&FgAbMap::row(&[y.q(), &FgAbMap::zero(target.deg_m1(), y.src().deg_0())])?)?;
    Butterfly::new(y.src(), target, i, j, p, q)
}

#[cfg(test)]
mod tests {
    use super::super::two_morphism_find;
    use super::*;
    use crate::fixtures;
    use crate::twocomplex::TwoTermComplex;

    #[test]
    fn b_composed_with_itself() {
        let bb = compose(&fixtures::b(), &fixtures::b()).unwrap();
        assert_eq!(bb.carrier().invariant_factors().torsion_u64(), vec![2, 2]);
        assert!(two_morphism_find(&bb, &fixtures::ik2()).unwrap().is_some());
    }

    #[test]
    fn identity_laws_on_fixtures() {
        for y in [fixtures::b(), fixtures::br(), fixtures::ik2()] {
            let left = compose(&Butterfly::identity(y.dst()), &y).unwrap();
            let right = compose(&y, &Butterfly::identity(y.src())).unwrap();
            assert!(two_morphism_find(&left, &y).unwrap().is_some());
            assert!(two_morphism_find(&right, &y).unwrap().is_some());
        }
    }

    #[test]
    fn composite_through_zero_complex() {
        let k = fixtures::k2();
        let zero = TwoTermComplex::zero();
        let w = compose(&Butterfly::zero(&zero, &k), &Butterfly::zero(&k, &zero)).unwrap();
        assert!(two_morphism_find(&w, &Butterfly::zero(&k, &k)).unwrap().is_some());
    }

    #[test]
    fn baer_sums() {
        let b = fixtures::b();
        let k = fixtures::k2();
        let zero = Butterfly::zero(&k, &k);
        let bz = baer_sum(&b, &zero).unwrap();
        assert!(two_morphism_find(&bz, &b).unwrap().is_some());
        let bb = baer_sum(&b, &b).unwrap();
        assert!(two_morphism_find(&bb, &zero).unwrap().is_some());
        assert!(two_morphism_find(&bb, &fixtures::ik2()).unwrap().is_none());
    }

    #[test]
    fn splitting_of_chain_map_composite() {
        let (e, f) = (fixtures::e2(), fixtures::f2());
        let r = fixtures::r();
        let id_f = ChainMap::identity(&f);
        let y = Butterfly::from_chain_map(&r);
        let z = Butterfly::from_chain_map(&id_f);
        // φ = [[-r^0, d_F], [0, id^{-1}]] on E^0 ⊕ F^{-1} → F^0 ⊕ F^{-1}
        let phi = FgAbMap::column(&[
            &FgAbMap::row(&[&r.f_0().neg(), f.d()]).unwrap(),
            &FgAbMap::row(&[&FgAbMap::zero(e.deg_0(), f.deg_m1()), &FgAbMap::identity(f.deg_m1())]).unwrap(),
        ])
        .unwrap();
        let psi = splitting_compose(&z, &y, &phi).unwrap();
        assert!(psi.equals(&r).unwrap());
    }

    #[test]
    fn pullback_and_pushout_agree_with_general_composition() {
        let r = fixtures::r();
        let idf = Butterfly::identity(r.dst());
        let pb = pullback_compose(&idf, &r).unwrap();
        assert!(two_morphism_find(&pb, &fixtures::br()).unwrap().is_some());
        let po = pushout_compose(&r, &Butterfly::identity(&fixtures::e2())).unwrap();
        assert!(two_morphism_find(&po, &fixtures::br()).unwrap().is_some());
        let b = fixtures::b();
        let pb = pullback_compose(&b, &ChainMap::identity(&fixtures::k2())).unwrap();
        assert!(two_morphism_find(&pb, &b).unwrap().is_some());
    }
}
