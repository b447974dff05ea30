//! Derived tensor products of f.g. abelian groups and the groups of the
//! Biext groupoid `Hom(A ⊗^L B, C[1])`.

use num_bigint::BigInt;

use crate::error::Result;
use crate::fgab::{cochain_map, cokernel, ext1, hom_group, kernel, FgAbGroup, FgAbMap, Subquotient};
use crate::intlinalg::{solve, IntMatrix};
use crate::twocomplex::TwoTermComplex;

/// `A ⊗^L B` as `[B^m →R⊗1 B^n]` for the free presentation `Z^m →R Z^n` of `A`.
#[derive(Clone, Debug)]
pub struct DerivedTensor {
    pub a: FgAbGroup,
    pub b: FgAbGroup,
    pub complex: TwoTermComplex,
}

impl DerivedTensor {
    pub fn tor1(&self) -> &FgAbGroup {
        self.complex.homology().h_m1()
    }

    pub fn tensor(&self) -> &FgAbGroup {
        self.complex.homology().h0()
    }

    /// The class of `x ⊗ y` in `H^0`, for `x` in generator coordinates of `A`
    /// and `y` in those of `B`. This is the bilinear map identifying `H^0`
    /// with `A ⊗ B`.
    pub fn pure_tensor(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let v: Vec<BigInt> = x.iter().flat_map(|xi| y.iter().map(move |yj| xi * yj)).collect();
        self.complex.homology().h0.projection().apply(&v)
    }
}

pub fn derived_tensor(a: &FgAbGroup, b: &FgAbGroup) -> DerivedTensor {
    let r = a.relation_basis();
    let m = r.kron(&IntMatrix::identity(b.ngens()));
    let d = FgAbMap::new(b.power(r.cols()), b.power(r.rows()), m).expect("R ⊗ 1 is well-defined");
    DerivedTensor { a: a.clone(), b: b.clone(), complex: TwoTermComplex::new(d) }
}

/// `π_1` and `π_0` of the groupoid of butterflies `K → C[1]`, with the
/// filtration `0 → coker(Hom(K^0,C) → Hom(K^{-1},C)) → π_0 →
/// ker(Ext¹(K^0,C) → Ext¹(K^{-1},C)) → 0` made explicit.
#[derive(Clone, Debug)]
pub struct BiextGroups {
    pub pi1: FgAbGroup,
    pub pi0: FgAbGroup,
    /// `coker(Hom(K^0,C) → Hom(K^{-1},C))`.
    pub hom_part: FgAbGroup,
    /// `ker(Ext¹(K^0,C) → Ext¹(K^{-1},C))`.
    pub ext_part: FgAbGroup,
    pub sub: FgAbMap,
    pub quotient: FgAbMap,
}

impl BiextGroups {
    /// Whether `0 → hom_part → π_0 → ext_part → 0` is exact.
    pub fn filtration_is_exact(&self) -> bool {
        self.sub.is_injective()
            && crate::fgab::is_exact_at(&self.sub, &self.quotient).unwrap_or(false)
            && self.quotient.is_surjective()
    }
}

/// Groups of `Hom(K, C[1])` for a two-term complex `K`, computed through
/// the total complex of a free resolution
/// `Z^{m1} →(R1; -D') Z^{n1} ⊕ Z^{m0} →(D, R0) Z^{n0}`.
pub fn butterfly_groups_into_shift(k: &TwoTermComplex, c: &FgAbGroup) -> Result<BiextGroups> {
    let (k1, k0) = (k.deg_m1(), k.deg_0());
    let r1 = k1.relation_basis();
    let r0 = k0.relation_basis();
    let d = k.d().matrix().clone();
    let dr1 = &d * &r1;
    let mut d_prime_cols = Vec::with_capacity(r1.cols());
    for col in dr1.columns() {
        let s = solve(&r0, &col).expect("d maps relations to relations");
        d_prime_cols.push(s.particular);
    }
    let d_prime = IntMatrix::from_columns(r0.cols(), &d_prime_cols);
    let (n1, m0) = (r1.rows(), r0.cols());

    let top = IntMatrix::hstack(&[&d, &r0]);
    let bottom = IntMatrix::vstack(&[&r1, &-&d_prime]);
    let a = cochain_map(&top, c);
    let b = cochain_map(&bottom, c);
    let pi0_sq = Subquotient::new(&a, &b)?;
    let pi1 = kernel(&a).group().clone();

    // Hom part: cocycles of K^{-1} placed as (x, 0)
    let hom1 = hom_group(k1, c);
    let hom0 = hom_group(k0, c);
    let mut dstar_cols = Vec::new();
    for g in 0..hom0.group().ngens() {
        let mut e = vec![BigInt::from(0); hom0.group().ngens()];
        e[g] = 1.into();
        let f = hom0.to_map(&e).compose(k.d())?;
        dstar_cols.push(hom1.element_of(&f)?);
    }
    let dstar = FgAbMap::new(
        hom0.group().clone(),
        hom1.group().clone(),
        IntMatrix::from_columns(hom1.group().ngens(), &dstar_cols),
    )?;
    let hom_coker = cokernel(&dstar);
    let cn = c.ngens();
    let cochains = c.power(n1 + m0);
    let mut sub_cols = Vec::new();
    for g in 0..hom1.group().ngens() {
        let mut e = vec![BigInt::from(0); hom1.group().ngens()];
        e[g] = 1.into();
        let f = hom1.to_map(&e);
        let mut v = f.matrix().transpose().entries().to_vec();
        v.resize((n1 + m0) * cn, 0.into());
        sub_cols.push(v);
    }
    let into_cochains =
        FgAbMap::new(hom1.group().clone(), cochains.clone(), IntMatrix::from_columns((n1 + m0) * cn, &sub_cols))?;
    let sub = hom_coker.descend(&pi0_sq.lift_in(&into_cochains)?)?;

    // Ext part: the C^{m0} block of a cocycle, as an Ext¹(K^0, C) class
    let e0 = ext1(k0, c);
    let e1 = ext1(k1, c);
    let ext_map = FgAbMap::new(e0.group().clone(), e1.group().clone(), cochain_map(&d_prime, c).matrix().clone())?;
    let ext_kernel = kernel(&ext_map);
    let mut proj = IntMatrix::zeros(m0 * cn, (n1 + m0) * cn);
    for t in 0..m0 * cn {
        proj.set(t, n1 * cn + t, 1.into());
    }
    let to_ext = FgAbMap::new(cochains, e0.group().clone(), proj)?;
    let quotient = ext_kernel.lift(&pi0_sq.induce_out(&to_ext)?)?;

    Ok(BiextGroups {
        pi1,
        pi0: pi0_sq.group().clone(),
        hom_part: hom_coker.group().clone(),
        ext_part: ext_kernel.group().clone(),
        sub,
        quotient,
    })
}

pub fn biext_groups(a: &FgAbGroup, b: &FgAbGroup, c: &FgAbGroup) -> Result<BiextGroups> {
    butterfly_groups_into_shift(&derived_tensor(a, b).complex, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn derived_tensor_examples() {
        let t = derived_tensor(&g("Z"), &g("Z/6"));
        assert!(t.tor1().is_trivial());
        assert_eq!(t.tensor().to_string(), "Z/6");
        let t = derived_tensor(&g("Z/4"), &g("Z/6"));
        assert_eq!(t.tor1().to_string(), "Z/2");
        assert_eq!(t.tensor().to_string(), "Z/2");
        let t = derived_tensor(&g("Z/2"), &g("Z/2"));
        assert!(t.complex.d().is_zero());
    }

    #[test]
    fn biext_examples() {
        let x = biext_groups(&g("Z/2"), &g("Z/2"), &g("Z")).unwrap();
        assert!(x.pi1.is_trivial());
        assert_eq!(x.pi0.to_string(), "Z/2");
        assert!(x.filtration_is_exact());
        let x = biext_groups(&g("Z"), &g("Z"), &g("Z/3")).unwrap();
        assert_eq!(x.pi1.to_string(), "Z/3");
        assert!(x.pi0.is_trivial());
        let x = biext_groups(&g("Z"), &g("Z/2"), &g("Z")).unwrap();
        assert!(x.pi1.is_trivial());
        assert_eq!(x.pi0.to_string(), "Z/2");
        let x = biext_groups(&g("Z/4"), &g("Z/6"), &g("0")).unwrap();
        assert!(x.pi0.is_trivial() && x.pi1.is_trivial());
    }

    #[test]
    fn pi1_is_hom_out_of_h0() {
        let dt = derived_tensor(&g("Z/4"), &g("Z/6"));
        let c = g("Z/2+Z");
        let x = butterfly_groups_into_shift(&dt.complex, &c).unwrap();
        assert!(x.pi1.is_isomorphic(hom_group(dt.tensor(), &c).group()));
        assert!(x.filtration_is_exact());
    }
}
