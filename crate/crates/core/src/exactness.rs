//! Short sequences `0 → E → F → G → 0` of butterflies, their exactness, the
//! standard examples and the six-term homology sequence.

use rand::Rng;

use crate::butterfly::{cokernel_b, is_invertible, random_butterfly, random_complex, random_map, Butterfly};
use crate::error::{Error, Result};
use crate::fgab::{cokernel, is_exact_at, kernel, FgAbGroup, FgAbMap, HomProblem};
use crate::twocomplex::{ChainMap, TwoTermComplex};

/// `φ: carrier(Y) → carrier(Z)` trivializing `Z ∘ Y`.
#[derive(Clone, Debug)]
pub struct ZeroWitness {
    pub phi: FgAbMap,
}

impl ZeroWitness {
    /// Checks `φ∘i_Y = j_Z`, `q_Z∘φ = -p_Y`, `p_Z∘φ = 0` and `φ∘j_Y = 0`.
    pub fn check(&self, y: &Butterfly, z: &Butterfly) -> Result<()> {
        let phi = &self.phi;
        if phi.src() != y.carrier() || phi.dst() != z.carrier() {
            return Err(Error::EndpointMismatch("φ must map carrier(Y) to carrier(Z)".into()));
        }
        if !phi.compose(y.i())?.equals(z.j())? {
            return Err(Error::Precondition("witness needs φ∘i_Y = j_Z".into()));
        }
        if !z.q().compose(phi)?.equals(&y.p().neg())? {
            return Err(Error::Precondition("witness needs q_Z∘φ = -p_Y".into()));
        }
        if !z.p().compose(phi)?.is_zero() {
            return Err(Error::Precondition("witness needs p_Z∘φ = 0".into()));
        }
        if !phi.compose(y.j())?.is_zero() {
            return Err(Error::Precondition("witness needs φ∘j_Y = 0".into()));
        }
        Ok(())
    }

    /// Some witness for `Z ∘ Y ≃ 0`, if one exists.
    pub fn find(y: &Butterfly, z: &Butterfly) -> Result<Option<ZeroWitness>> {
        if y.dst() != z.src() {
            return Err(Error::EndpointMismatch("Y.dst and Z.src differ".into()));
        }
        let g0 = z.dst().deg_0();
        let phi = HomProblem::new(y.carrier(), z.carrier())
            .precompose(y.i(), z.j())?
            .precompose(y.j(), &FgAbMap::zero(y.src().deg_m1(), z.carrier()))?
            .postcompose(z.q(), &y.p().neg())?
            .postcompose(z.p(), &FgAbMap::zero(y.carrier(), g0))?
            .solve();
        Ok(phi.map(|phi| ZeroWitness { phi }))
    }
}

/// `0 → E →Y F →Z G → 0` with a witness for `Z ∘ Y ≃ 0`.
#[derive(Clone, Debug)]
pub struct ButterflyShortSeq {
    pub y: Butterfly,
    pub z: Butterfly,
    pub w: ZeroWitness,
}

/// The six-term sequence
/// `H^{-1}E → H^{-1}F → H^{-1}G →δ H^0E → H^0F → H^0G`.
#[derive(Clone, Debug)]
pub struct SixTerm {
    pub groups: [FgAbGroup; 6],
    pub maps: [FgAbMap; 5],
}

impl SixTerm {
    pub fn delta(&self) -> &FgAbMap {
        &self.maps[2]
    }

    /// Exactness at each of the six positions, left to right.
    pub fn exactness(&self) -> [bool; 6] {
        let m = &self.maps;
        let mid = |k: usize| is_exact_at(&m[k], &m[k + 1]).unwrap_or(false);
        [m[0].is_injective(), mid(0), mid(1), mid(2), mid(3), m[4].is_surjective()]
    }

    pub fn is_exact(&self) -> bool {
        self.exactness().iter().all(|&b| b)
    }
}

impl ButterflyShortSeq {
    pub fn new(y: Butterfly, z: Butterfly, phi: FgAbMap) -> Result<Self> {
        if y.dst() != z.src() {
            return Err(Error::EndpointMismatch("Y.dst and Z.src differ".into()));
        }
        let w = ZeroWitness { phi };
        w.check(&y, &z)?;
        Ok(ButterflyShortSeq { y, z, w })
    }

    pub fn y(&self) -> &Butterfly {
        &self.y
    }

    pub fn z(&self) -> &Butterfly {
        &self.z
    }

    pub fn e(&self) -> &TwoTermComplex {
        self.y.src()
    }

    pub fn f(&self) -> &TwoTermComplex {
        self.y.dst()
    }

    pub fn g(&self) -> &TwoTermComplex {
        self.z.dst()
    }

    pub fn phi(&self) -> &FgAbMap {
        &self.w.phi
    }

    fn exact_at_y(&self) -> bool {
        is_exact_at(self.y.j(), self.phi()).unwrap_or(false)
    }

    fn exact_at_z(&self) -> bool {
        is_exact_at(self.phi(), self.z.p()).unwrap_or(false)
    }

    /// `0 → E^{-1} → Y → Z → G^0` exact.
    pub fn is_left_exact(&self) -> bool {
        self.y.j().is_injective() && self.exact_at_y() && self.exact_at_z()
    }

    /// `E^{-1} → Y → Z → G^0 → 0` exact.
    pub fn is_right_exact(&self) -> bool {
        self.exact_at_y() && self.exact_at_z() && self.z.p().is_surjective()
    }

    /// `0 → E^{-1} → Y → Z → G^0 → 0` exact.
    pub fn is_exact(&self) -> bool {
        self.is_left_exact() && self.is_right_exact()
    }

    /// `0 → E^{-1} → Y → ker p_Z → 0` exact.
    pub fn is_exact_onto_kernel(&self) -> bool {
        let kp = kernel(self.z.p());
        let Ok(phi) = kp.lift(self.phi()) else { return false };
        self.y.j().is_injective() && is_exact_at(self.y.j(), &phi).unwrap_or(false) && phi.is_surjective()
    }

    /// `0 → coker j_Y → Z → G^0 → 0` exact.
    pub fn is_exact_from_cokernel(&self) -> bool {
        let cj = cokernel(self.y.j());
        let Ok(phi) = cj.descend(self.phi()) else { return false };
        phi.is_injective() && is_exact_at(&phi, self.z.p()).unwrap_or(false) && self.z.p().is_surjective()
    }

    /// The butterfly `E → ker(Z)` on the carrier of `Y`, with `p = -φ`.
    pub fn kernel_factorization(&self) -> Result<Butterfly> {
        let kp = kernel(self.z.p());
        let target = TwoTermComplex::new(kp.lift(self.z.j())?);
        let p = kp.lift(&self.phi().neg())?;
        Butterfly::new(self.e(), &target, self.y.i().clone(), self.y.j().clone(), p, self.y.q().clone())
    }

    /// The butterfly `coker(Y) → G` on the carrier of `Z`, with `j = φ`.
    pub fn cokernel_factorization(&self) -> Result<Butterfly> {
        let (source, _) = cokernel_b(&self.y);
        let cj = cokernel(self.y.j());
        let j = cj.descend(self.phi())?;
        Butterfly::new(&source, self.g(), self.z.i().clone(), j, self.z.p().clone(), self.z.q().clone())
    }

    /// Exactness in the definitional form: `E → ker(Z)` and
    /// `coker(Y) → G` are both equivalences.
    pub fn is_exact_definitional(&self) -> bool {
        let k = self.kernel_factorization().map(|b| is_invertible(&b)).unwrap_or(false);
        let c = self.cokernel_factorization().map(|b| is_invertible(&b)).unwrap_or(false);
        k && c
    }

    /// The connecting map, through `φ': coker(j_Y) → ker(p_Z)`.
    pub fn connecting_map(&self) -> Result<FgAbMap> {
        let (e, g) = (self.e(), self.g());
        let cj = cokernel(self.y.j());
        let phi_bar = cj.descend(self.phi())?;
        let kp = kernel(self.z.p());
        let phi_prime = kp.lift(&phi_bar)?;
        let inv = phi_prime
            .inverse()
            .ok_or_else(|| Error::NotExact("φ': coker j_Y → ker p_Z is not an isomorphism".into()))?;
        let hg = &g.homology().h_m1;
        let i_restricted = kp.lift(&self.z.i().compose(hg.inclusion())?)?;
        let he0 = &e.homology().h0;
        let q_bar = cj.descend(&he0.projection().compose(self.y.q())?)?;
        q_bar.compose(&inv)?.compose(&i_restricted)
    }

    pub fn les(&self) -> Result<SixTerm> {
        if !self.is_exact() {
            return Err(Error::NotExact("0 → E^{-1} → Y → Z → G^0 → 0 is not exact".into()));
        }
        let (ya, y0) = self.y.homology_action();
        let (za, z0) = self.z.homology_action();
        let delta = self.connecting_map()?;
        let (he, hf, hg) = (self.e().homology(), self.f().homology(), self.g().homology());
        Ok(SixTerm {
            groups: [
                he.h_m1().clone(),
                hf.h_m1().clone(),
                hg.h_m1().clone(),
                he.h0().clone(),
                hf.h0().clone(),
                hg.h0().clone(),
            ],
            maps: [ya, za, delta, y0, z0],
        })
    }
}

/// The sequence of butterflies of a degreewise short exact sequence of
/// complexes `0 → E →f F →g G → 0`, with `φ = [[-f^0, d_F], [0, g^{-1}]]`.
pub fn from_chain_maps(f: &ChainMap, g: &ChainMap) -> Result<ButterflyShortSeq> {
    let y = Butterfly::from_chain_map(f);
    let z = Butterfly::from_chain_map(g);
    let (ff, gg) = (f.dst(), g.dst());
    let top = FgAbMap::row(&[&f.f_0().neg(), ff.d()])?;
    let bottom = FgAbMap::row(&[&FgAbMap::zero(f.src().deg_0(), gg.deg_m1()), g.f_m1()])?;
    let phi = FgAbMap::column(&[&top, &bottom])?;
    ButterflyShortSeq::new(y, z, phi)
}

/// `0 → E^{-1} → E^0 → E → 0`, the first two as degree-0 complexes.
pub fn presentation_sequence(e: &TwoTermComplex) -> ButterflyShortSeq {
    let a = TwoTermComplex::embed0(e.deg_m1());
    let b = TwoTermComplex::embed0(e.deg_0());
    let f = ChainMap::new(&a, &b, FgAbMap::identity(&FgAbGroup::trivial()), e.d().clone()).expect("d in degree 0");
    let g = ChainMap::new(&b, e, FgAbMap::from_trivial(e.deg_m1()), FgAbMap::identity(e.deg_0()))
        .expect("inclusion of E^0");
    let y = Butterfly::from_chain_map(&f);
    let z = Butterfly::from_chain_map(&g);
    let phi = FgAbMap::column(&[&e.d().neg(), &FgAbMap::identity(e.deg_m1()).neg()]).expect("same source");
    ButterflyShortSeq::new(y, z, phi).expect("standard witness")
}

/// `0 → E^0 → E → E^{-1}[1] → 0`.
pub fn truncation_sequence(e: &TwoTermComplex) -> ButterflyShortSeq {
    let b = TwoTermComplex::embed0(e.deg_0());
    let s = TwoTermComplex::shift1(e.deg_m1());
    let f = ChainMap::new(&b, e, FgAbMap::from_trivial(e.deg_m1()), FgAbMap::identity(e.deg_0()))
        .expect("inclusion of E^0");
    let g = ChainMap::new(e, &s, FgAbMap::identity(e.deg_m1()), FgAbMap::to_trivial(e.deg_0()))
        .expect("projection to E^{-1}");
    let y = Butterfly::from_chain_map(&f);
    let z = Butterfly::from_chain_map(&g);
    let top = FgAbMap::row(&[&FgAbMap::identity(e.deg_0()).neg(), e.d()]).expect("same target");
    let bottom =
        FgAbMap::row(&[&FgAbMap::zero(e.deg_0(), e.deg_m1()), &FgAbMap::identity(e.deg_m1())]).expect("same target");
    let phi = FgAbMap::column(&[&top, &bottom]).expect("same source");
    ButterflyShortSeq::new(y, z, phi).expect("standard witness")
}

/// `0 → E → E^{-1}[1] → E^0[1] → 0`.
pub fn shift_sequence(e: &TwoTermComplex) -> ButterflyShortSeq {
    let s = TwoTermComplex::shift1(e.deg_m1());
    let t = TwoTermComplex::shift1(e.deg_0());
    let f = ChainMap::new(e, &s, FgAbMap::identity(e.deg_m1()), FgAbMap::to_trivial(e.deg_0()))
        .expect("projection to E^{-1}");
    let g = ChainMap::new(&s, &t, e.d().clone(), FgAbMap::identity(&FgAbGroup::trivial())).expect("d in degree -1");
    let y = Butterfly::from_chain_map(&f);
    let z = Butterfly::from_chain_map(&g);
    let phi = FgAbMap::row(&[&FgAbMap::identity(e.deg_0()).neg(), e.d()]).expect("same target");
    ButterflyShortSeq::new(y, z, phi).expect("standard witness")
}

/// A degreewise short exact sequence of random complexes: `E` is the
/// kernel of a random chain map out of `F` and `G` the quotient.
pub fn random_degreewise_sequence<R: Rng + ?Sized>(rng: &mut R, max_order: u64, max_rank: usize) -> ButterflyShortSeq {
    let f = random_complex(rng, max_order, max_rank);
    let h = random_complex(rng, max_order, max_rank);
    // random chain map w: F → H: w^{-1} random, w^0 solved to commute when possible
    let w = (0..6)
        .find_map(|_| {
            let w_m1 = random_map(rng, f.deg_m1(), h.deg_m1());
            let target = h.d().compose(&w_m1).ok()?;
            let space = HomProblem::new(f.deg_0(), h.deg_0()).precompose(f.d(), &target).ok()?.solve_all()?;
            ChainMap::new(&f, &h, w_m1, space.sample(rng, 2)).ok()
        })
        .unwrap_or_else(|| ChainMap::zero(&f, &h));
    let k_m1 = kernel(w.f_m1());
    let k_0 = kernel(w.f_0());
    let d_e = k_0.lift(&f.d().compose(k_m1.inclusion()).expect("composable")).expect("chain map kernel");
    let e = TwoTermComplex::new(d_e);
    let incl = ChainMap::new(&e, &f, k_m1.inclusion().clone(), k_0.inclusion().clone()).expect("inclusion");
    let c_m1 = cokernel(k_m1.inclusion());
    let c_0 = cokernel(k_0.inclusion());
    let d_g = c_0.projection().compose(f.d()).expect("composable");
    let d_g = c_m1.descend(&d_g).expect("quotient differential");
    let g = TwoTermComplex::new(d_g);
    let proj = ChainMap::new(&f, &g, c_m1.projection().clone(), c_0.projection().clone()).expect("projection");
    from_chain_maps(&incl, &proj).expect("degreewise exact")
}

/// `E → F → coker(Y)` for a random butterfly `Y` with a witness found by
/// solving; `None` when the result is not exact.
pub fn random_cokernel_sequence<R: Rng + ?Sized>(
    rng: &mut R,
    max_order: u64,
    max_rank: usize,
) -> Option<ButterflyShortSeq> {
    let e = random_complex(rng, max_order, max_rank);
    let f = random_complex(rng, max_order, max_rank);
    let y = random_butterfly(rng, &e, &f);
    let (_, z) = cokernel_b(&y);
    let w = ZeroWitness::find(&y, &z).ok()??;
    let s = ButterflyShortSeq::new(y, z, w.phi).ok()?;
    s.is_exact().then_some(s)
}

/// Alternates the two generators until an exact sequence comes out.
pub fn random_exact_sequence<R: Rng + ?Sized>(rng: &mut R, max_order: u64, max_rank: usize) -> ButterflyShortSeq {
    loop {
        if rng.gen_bool(0.5) {
            let s = random_degreewise_sequence(rng, max_order, max_rank);
            if s.is_exact() {
                return s;
            }
        } else if let Some(s) = random_cokernel_sequence(rng, max_order, max_rank) {
            return s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn standard(e: &TwoTermComplex) -> [ButterflyShortSeq; 3] {
        [presentation_sequence(e), truncation_sequence(e), shift_sequence(e)]
    }

    #[test]
    fn standard_sequences_are_exact() {
        for e in [fixtures::e2(), fixtures::k2(), TwoTermComplex::zero()] {
            for s in standard(&e) {
                assert!(s.is_exact());
                assert!(s.is_exact_onto_kernel() && s.is_exact_from_cokernel());
                assert!(s.is_exact_definitional());
                assert!(s.les().unwrap().is_exact());
            }
        }
    }

    #[test]
    fn connecting_map_of_the_truncation_of_e2() {
        let les = truncation_sequence(&fixtures::e2()).les().unwrap();
        let d = les.delta();
        assert_eq!(d.src().to_string(), "Z");
        assert_eq!(d.dst().to_string(), "Z");
        assert_eq!(d.matrix().get(0, 0), &num_bigint::BigInt::from(2));
    }

    #[test]
    fn presentation_sequence_of_e2_has_the_expected_les() {
        let les = presentation_sequence(&fixtures::e2()).les().unwrap();
        let shapes: Vec<String> = les.groups.iter().map(|g| g.to_string()).collect();
        assert_eq!(shapes, ["0", "0", "0", "Z", "Z", "Z/2"]);
        assert_eq!(les.maps[3].matrix().get(0, 0), &num_bigint::BigInt::from(2));
    }

    #[test]
    fn left_exact_only_fixture() {
        let k = fixtures::k2();
        let z2 = FgAbGroup::cyclic(2);
        let g = TwoTermComplex::direct_sum(&[&k, &TwoTermComplex::embed0(&z2)]);
        let incl = ChainMap::new(
            &k,
            &g,
            FgAbMap::from_i64(k.deg_m1(), g.deg_m1(), &[1]).unwrap(),
            FgAbMap::from_i64(k.deg_0(), g.deg_0(), &[1, 0]).unwrap(),
        )
        .unwrap();
        let zero = TwoTermComplex::zero();
        let y = Butterfly::zero(&zero, &k);
        let z = Butterfly::from_chain_map(&incl);
        let w = ZeroWitness::find(&y, &z).unwrap().unwrap();
        let s = ButterflyShortSeq::new(y, z, w.phi).unwrap();
        assert!(s.is_left_exact());
        assert!(!s.is_right_exact());
        assert!(s.les().is_err());
    }

    #[test]
    fn random_sequences_are_exact_with_exact_les() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let s = random_exact_sequence(&mut rng, 16, 1);
            assert!(s.is_exact_onto_kernel() && s.is_exact_from_cokernel() && s.is_exact_definitional());
            assert!(s.les().unwrap().is_exact());
        }
    }
}
