use super::Butterfly;
use crate::error::{Error, Result};
use crate::fgab::{cokernel, is_exact_at, kernel, FgAbGroup, FgAbMap};
use crate::twocomplex::{ChainMap, TwoTermComplex};

/// Whether `0 → E^{-1} →j Y →p F^0 → 0` is exact.
pub fn is_invertible(y: &Butterfly) -> bool {
    y.j().is_injective() && is_exact_at(y.j(), y.p()).unwrap_or(false) && y.p().is_surjective()
}

/// The reflected butterfly `F → E` with wings `(j, i, -q, -p)` in the
/// `(i, j, p, q)` slots.
pub fn invert(y: &Butterfly) -> Result<Butterfly> {
    if !is_invertible(y) {
        return Err(Error::Precondition("butterfly is not invertible".into()));
    }
    Butterfly::new(y.dst(), y.src(), y.j().clone(), y.i().clone(), y.q().neg(), y.p().neg())
}

/// `[E^{-1} →j ker p]` with the butterfly of its chain map `(1, q|)` into `E`.
pub fn kernel_b(y: &Butterfly) -> (TwoTermComplex, Butterfly) {
    let k = kernel(y.p());
    let d = k.lift(y.j()).expect("p∘j = 0");
    let complex = TwoTermComplex::new(d);
    let e = y.src();
    let f0 = y.q().compose(k.inclusion()).expect("composable");
    let incl = ChainMap::new(&complex, e, FgAbMap::identity(e.deg_m1()), f0).expect("q∘incl∘j = d");
    (complex, Butterfly::from_chain_map(&incl))
}

/// `[coker j →-p F^0]` with the butterfly of the chain map `(π∘i, 1)` out of `F`.
pub fn cokernel_b(y: &Butterfly) -> (TwoTermComplex, Butterfly) {
    let c = cokernel(y.j());
    let d = c.descend(&y.p().neg()).expect("p∘j = 0");
    let complex = TwoTermComplex::new(d);
    let f = y.dst();
    let f_m1 = c.projection().compose(y.i()).expect("composable");
    let proj = ChainMap::new(f, &complex, f_m1, FgAbMap::identity(f.deg_0())).expect("-p∘i = d");
    (complex, Butterfly::from_chain_map(&proj))
}

/// `ker j`.
pub fn pip(y: &Butterfly) -> FgAbGroup {
    kernel(y.j()).group().clone()
}

/// `coker p`.
pub fn copip(y: &Butterfly) -> FgAbGroup {
    cokernel(y.p()).group().clone()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub mono: bool,
    pub epi: bool,
    pub faithful: bool,
    pub cofaithful: bool,
}

pub fn classify(y: &Butterfly) -> Classification {
    let middle = is_exact_at(y.j(), y.p()).unwrap_or(false);
    let faithful = y.j().is_injective();
    let cofaithful = y.p().is_surjective();
    Classification { mono: faithful && middle, epi: middle && cofaithful, faithful, cofaithful }
}

/// `[ker p →q E^0]`.
pub fn coimage_b(y: &Butterfly) -> TwoTermComplex {
    let k = kernel(y.p());
    TwoTermComplex::new(y.q().compose(k.inclusion()).expect("composable"))
}

/// `[F^{-1} →π∘i coker j]`.
pub fn image_b(y: &Butterfly) -> TwoTermComplex {
    let c = cokernel(y.j());
    TwoTermComplex::new(c.projection().compose(y.i()).expect("composable"))
}

/// The invertible butterfly `[ker p → E^0] → [F^{-1} → im p]` on the carrier
/// of `y`, with `j` the inclusion of `ker p` and `p` corestricted.
pub fn canonical_coimage_iso(y: &Butterfly) -> Result<Butterfly> {
    let kp = kernel(y.p());
    let src = TwoTermComplex::new(y.q().compose(kp.inclusion())?);
    let im_p = kernel(cokernel(y.p()).projection());
    let d = im_p.lift(y.dst().d())?;
    let dst = TwoTermComplex::new(d);
    let p = im_p.lift(y.p())?;
    Butterfly::new(&src, &dst, y.i().clone(), kp.inclusion().clone(), p, y.q().clone())
}

/// The invertible butterfly `[coim j → E^0] → [F^{-1} → coker j]` on the
/// carrier of `y`, with `j` descended and `p = -π`.
pub fn canonical_image_iso(y: &Butterfly) -> Result<Butterfly> {
    let coim = cokernel(kernel(y.j()).inclusion());
    let src = TwoTermComplex::new(coim.descend(y.src().d())?);
    let cj = cokernel(y.j());
    let dst = TwoTermComplex::new(cj.projection().compose(y.i())?);
    let j = coim.descend(y.j())?;
    Butterfly::new(&src, &dst, y.i().clone(), j, cj.projection().neg(), y.q().clone())
}

/// The three invertible butterflies
/// `[coim j → E^0] → [ker p → E^0] → [F^{-1} → coker j] → [F^{-1} → im p]`,
/// available when `ker p = im j`.
pub fn middle_exact_iso(y: &Butterfly) -> Result<[Butterfly; 3]> {
    if !is_exact_at(y.j(), y.p())? {
        return Err(Error::Precondition("needs ker p = im j".into()));
    }
    let e = y.src();
    let coim = cokernel(kernel(y.j()).inclusion());
    let coim_c = TwoTermComplex::new(coim.descend(e.d())?);
    let kp = kernel(y.p());
    let ker_c = TwoTermComplex::new(y.q().compose(kp.inclusion())?);
    let jbar = kp.lift(&coim.descend(y.j())?)?;
    let first = Butterfly::from_chain_map(&ChainMap::new(&coim_c, &ker_c, jbar, FgAbMap::identity(e.deg_0()))?);

    let cj = cokernel(y.j());
    let image_c = TwoTermComplex::new(cj.projection().compose(y.i())?);
    let second =
        Butterfly::new(&ker_c, &image_c, y.i().clone(), kp.inclusion().clone(), cj.projection().neg(), y.q().clone())?;

    let im_p = kernel(cokernel(y.p()).projection());
    let im_c = TwoTermComplex::new(im_p.lift(y.dst().d())?);
    let pbar = im_p.lift(&cj.descend(&y.p().neg())?)?;
    let third = Butterfly::from_chain_map(&ChainMap::new(&image_c, &im_c, FgAbMap::identity(y.dst().deg_m1()), pbar)?);
    Ok([first, second, third])
}

#[cfg(test)]
mod tests {
    use super::super::{compose, two_morphism_find};
    use super::*;
    use crate::fixtures;

    #[test]
    fn invertibility_of_fixtures() {
        let b = fixtures::b();
        assert!(is_invertible(&b));
        let inv = invert(&b).unwrap();
        assert!(two_morphism_find(&inv, &b).unwrap().is_some());
        assert!(is_invertible(&fixtures::br()));
        let k = fixtures::k2();
        assert!(!is_invertible(&Butterfly::zero(&k, &k)));
        let br = fixtures::br();
        let back = invert(&br).unwrap();
        let loop_e = compose(&back, &br).unwrap();
        assert!(two_morphism_find(&loop_e, &Butterfly::identity(br.src())).unwrap().is_some());
    }

    #[test]
    fn kernels_and_cokernels_of_b() {
        let (k, _) = kernel_b(&fixtures::b());
        assert!(k.is_acyclic());
        let (c, _) = cokernel_b(&fixtures::b());
        assert!(c.is_acyclic());
        let kk = fixtures::k2();
        let (k, _) = kernel_b(&Butterfly::zero(&kk, &kk));
        assert_eq!(k.homology().h_m1().to_string(), "Z/2");
        // H^0 picks up H^{-1} of the target alongside H^0 of the source
        assert_eq!(k.homology().h0().to_string(), "Z/2+Z/2");
    }

    #[test]
    fn classification_and_pips() {
        let c = classify(&fixtures::b());
        assert!(c.mono && c.epi && c.faithful && c.cofaithful);
        let k = fixtures::k2();
        let z = Butterfly::zero(&k, &k);
        assert!(!classify(&z).mono);
        assert_eq!(pip(&z).to_string(), "Z/2");
        assert!(pip(&fixtures::b()).is_trivial());
        assert!(copip(&fixtures::ik2()).is_trivial());
    }

    #[test]
    fn canonical_isos_are_invertible() {
        for y in [fixtures::b(), fixtures::br(), Butterfly::zero(&fixtures::k2(), &fixtures::k2())] {
            assert!(is_invertible(&canonical_coimage_iso(&y).unwrap()));
            assert!(is_invertible(&canonical_image_iso(&y).unwrap()));
        }
        for b in middle_exact_iso(&fixtures::b()).unwrap() {
            assert!(is_invertible(&b));
        }
        assert!(middle_exact_iso(&Butterfly::zero(&fixtures::k2(), &fixtures::k2())).is_err());
        // B is an equivalence, so its image has the homology of K2
        let im = image_b(&fixtures::b());
        assert!(im.d().is_zero());
        assert_eq!(im.homology().h0().to_string(), "Z/2");
        let co = coimage_b(&fixtures::br());
        assert!(co.homology().h_m1().is_trivial());
        assert_eq!(co.homology().h0().to_string(), "Z/2");
    }
}
