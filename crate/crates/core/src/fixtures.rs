//! The small named complexes, chain maps and butterflies used throughout the
//! tests and by `twoterm gen`.

use crate::butterfly::Butterfly;
use crate::fgab::{FgAbGroup, FgAbMap};
use crate::intlinalg::IntMatrix;
use crate::twocomplex::{ChainMap, TwoTermComplex};

/// `[Z/2 →0 Z/2]`.
pub fn k2() -> TwoTermComplex {
    let z2 = FgAbGroup::cyclic(2);
    TwoTermComplex::new(FgAbMap::zero(&z2, &z2))
}

/// `[Z →2 Z]`.
pub fn e2() -> TwoTermComplex {
    let z = FgAbGroup::free(1);
    TwoTermComplex::from_parts(&z, &z, IntMatrix::from_i64(1, 1, &[2])).expect("E2")
}

/// `[0 → Z/2]`.
pub fn f2() -> TwoTermComplex {
    TwoTermComplex::embed0(&FgAbGroup::cyclic(2))
}

/// Reduction mod 2 in degree 0, `E2 → F2`.
pub fn r() -> ChainMap {
    let (e, f) = (e2(), f2());
    ChainMap::new(
        &e,
        &f,
        FgAbMap::zero(e.deg_m1(), f.deg_m1()),
        FgAbMap::from_i64(e.deg_0(), f.deg_0(), &[1]).expect("reduction"),
    )
    .expect("r is a chain map")
}

/// The Bockstein butterfly `K2 → K2` on the carrier `Z/4`.
pub fn b() -> Butterfly {
    let k = k2();
    let z2 = k.deg_0().clone();
    let z4 = FgAbGroup::cyclic(4);
    let twice = FgAbMap::from_i64(&z2, &z4, &[2]).expect("×2");
    let red = FgAbMap::from_i64(&z4, &z2, &[1]).expect("mod 2");
    Butterfly::new(&k, &k, twice.clone(), twice, red.clone(), red).expect("B is a butterfly")
}

pub fn ik2() -> Butterfly {
    Butterfly::identity(&k2())
}

pub fn br() -> Butterfly {
    Butterfly::from_chain_map(&r())
}

/// Named complexes accepted by `twoterm gen`.
pub fn complex_by_name(name: &str) -> Option<TwoTermComplex> {
    match name {
        "K2" => Some(k2()),
        "E2" => Some(e2()),
        "F2" => Some(f2()),
        "zero" => Some(TwoTermComplex::zero()),
        _ => None,
    }
}

/// Named butterflies accepted by `twoterm gen`.
pub fn butterfly_by_name(name: &str) -> Option<Butterfly> {
    match name {
        "B" => Some(b()),
        "IK2" => Some(ik2()),
        "Br" => Some(br()),
        "IE2" => Some(Butterfly::identity(&e2())),
        "zeroK2" => Some(Butterfly::zero(&k2(), &k2())),
        _ => None,
    }
}
