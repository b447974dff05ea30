//! Finitely generated abelian groups given by presentations, and the
//! homomorphisms between them.
//!
//! A group is `Z^n / L` where `L` is the column span of its relation matrix.
//! Two groups compare equal when they have the same generators and the same
//! relation lattice; isomorphism is a separate question answered by
//! [`FgAbGroup::invariant_factors`].

mod ext;
mod hom;
mod subquotient;

pub(crate) use ext::cochain_map;
pub use ext::{ext1, hom_group, Ext1, Extension, HomGroup};
pub use hom::{HomProblem, HomSolutions};
pub use subquotient::{cokernel, is_exact_at, kernel, Cokernel, Kernel, Subquotient};

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intlinalg::{snf, IntMatrix, Lattice};

/// Complete isomorphism invariant: `Z^rank ⊕ Z/t1 ⊕ ... ⊕ Z/tk`, `t1 | t2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct InvariantFactors {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl InvariantFactors {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|t| u64::try_from(t).unwrap_or(u64::MAX)).collect()
    }

    /// `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        (self.rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        parts.extend(std::iter::repeat_n("Z".to_string(), self.rank));
        f.write_str(&parts.join("+"))
    }
}

struct GroupData {
    ngens: usize,
    relations: IntMatrix,
    lattice: Lattice,
    invariants: OnceLock<InvariantFactors>,
}

/// A finitely generated abelian group `Z^ngens / colspan(relations)`.
#[derive(Clone)]
pub struct FgAbGroup(Arc<GroupData>);

impl PartialEq for FgAbGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.ngens == other.0.ngens && self.0.lattice == other.0.lattice)
    }
}

impl Eq for FgAbGroup {}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup({} on {} gens, rel {})", self.invariant_factors(), self.ngens(), self.relations())
    }
}

impl FgAbGroup {
    pub fn new(ngens: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != ngens {
            return Err(Error::Dimension(format!(
                "relation matrix has {} rows but the group has {ngens} generators",
                relations.rows()
            )));
        }
        let lattice = Lattice::from_columns(&relations);
        Ok(FgAbGroup(Arc::new(GroupData { ngens, relations, lattice, invariants: OnceLock::new() })))
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn free(n: usize) -> Self {
        Self::new(n, IntMatrix::zeros(n, 0)).expect("free group presentation")
    }

    /// One generator per entry; an entry `d` contributes the relation `d·e`
    /// (so `0` gives a copy of `Z`, `1` a trivial generator).
    pub fn diagonal(orders: &[BigInt]) -> Self {
        let n = orders.len();
        let cols: Vec<Vec<BigInt>> = orders
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(k, d)| {
                let mut c = vec![BigInt::zero(); n];
                c[k] = d.abs();
                c
            })
            .collect();
        Self::new(n, IntMatrix::from_columns(n, &cols)).expect("diagonal presentation")
    }

    pub fn cyclic(order: u64) -> Self {
        Self::diagonal(&[BigInt::from(order)])
    }

    /// `Z^rank ⊕ Z/t1 ⊕ ...` with torsion summands listed first.
    pub fn from_invariants(inv: &InvariantFactors) -> Self {
        let mut orders = inv.torsion.clone();
        orders.extend(std::iter::repeat_n(BigInt::zero(), inv.rank));
        Self::diagonal(&orders)
    }

    pub fn ngens(&self) -> usize {
        self.0.ngens
    }

    /// The relation matrix exactly as this presentation was given.
    pub fn relations(&self) -> &IntMatrix {
        &self.0.relations
    }

    pub fn lattice(&self) -> &Lattice {
        &self.0.lattice
    }

    /// A basis of the relation lattice (linearly independent columns).
    pub fn relation_basis(&self) -> IntMatrix {
        self.0.lattice.basis_matrix()
    }

    pub fn invariant_factors(&self) -> &InvariantFactors {
        self.0.invariants.get_or_init(|| {
            let rel = self.relation_basis();
            let diag = snf(&rel).diagonal();
            let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
            InvariantFactors {
                rank: self.ngens() - nonzero,
                torsion: diag.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect(),
            }
        })
    }

    pub fn is_trivial(&self) -> bool {
        let l = self.lattice();
        l.rank() == self.ngens() && l.basis().iter().zip(l.pivots()).all(|(b, &p)| b[p].is_one())
    }

    pub fn is_finite(&self) -> bool {
        self.lattice().rank() == self.ngens()
    }

    pub fn order(&self) -> Option<BigInt> {
        self.invariant_factors().order()
    }

    pub fn is_isomorphic(&self, other: &FgAbGroup) -> bool {
        self.invariant_factors() == other.invariant_factors()
    }

    /// Direct sum with the first summand on the leading generators.
    pub fn direct_sum(parts: &[&FgAbGroup]) -> Self {
        let n = parts.iter().map(|g| g.ngens()).sum();
        let bases: Vec<IntMatrix> = parts.iter().map(|g| g.relation_basis()).collect();
        let refs: Vec<&IntMatrix> = bases.iter().collect();
        Self::new(n, IntMatrix::block_diag(&refs)).expect("direct sum presentation")
    }

    pub fn power(&self, n: usize) -> Self {
        let parts = vec![self; n];
        Self::direct_sum(&parts)
    }

    /// Canonical representative of the class of `v` modulo relations.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.lattice().reduced(v)
    }

    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        self.lattice().contains(v)
    }

    /// Replaces this presentation by a diagonal one. Returns the new group
    /// with the isomorphisms `self → new` and `new → self`.
    pub fn simplify(&self) -> (FgAbGroup, FgAbMap, FgAbMap) {
        let rel = self.relation_basis();
        let f = snf(&rel);
        let diag = f.diagonal();
        let n = self.ngens();
        let d_at = |t: usize| diag.get(t).cloned().unwrap_or_default();
        let kept: Vec<usize> = (0..n).filter(|&t| !d_at(t).is_one()).collect();
        let orders: Vec<BigInt> = kept.iter().map(|&t| d_at(t)).collect();
        let small = FgAbGroup::diagonal(&orders);
        let to = FgAbMap::new(self.clone(), small.clone(), f.u.select_rows(&kept))
            .expect("smith transform is well-defined")
            .reduced();
        let from = FgAbMap::new(small.clone(), self.clone(), f.u_inv.select_columns(&kept))
            .expect("inverse smith transform is well-defined")
            .reduced();
        (small, to, from)
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.invariant_factors())
    }
}

/// Parses invariant-factor shorthand such as `Z/2+Z/4+Z` or `0`.
impl FromStr for FgAbGroup {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(FgAbGroup::trivial());
        }
        let mut orders = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            if term == "Z" {
                orders.push(BigInt::zero());
            } else if let Some(d) = term.strip_prefix("Z/") {
                let d: BigInt = d.trim().parse().map_err(|_| format!("bad cyclic order in `{term}`"))?;
                if !d.is_positive() {
                    return Err(format!("cyclic order must be positive in `{term}`"));
                }
                orders.push(d);
            } else if term == "0" {
                continue;
            } else {
                return Err(format!("cannot parse group term `{term}`"));
            }
        }
        Ok(FgAbGroup::diagonal(&orders))
    }
}

/// A homomorphism between presented groups, given on generators.
///
/// Construction checks well-definedness: relations of the source must map
/// into the relation lattice of the target.
#[derive(Clone, PartialEq, Eq)]
pub struct FgAbMap {
    src: FgAbGroup,
    dst: FgAbGroup,
    matrix: IntMatrix,
}

impl fmt::Debug for FgAbMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbMap({} -> {}, {})", self.src, self.dst, self.matrix)
    }
}

impl FgAbMap {
    pub fn new(src: FgAbGroup, dst: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.shape() != (dst.ngens(), src.ngens()) {
            return Err(Error::Dimension(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                dst.ngens(),
                src.ngens()
            )));
        }
        let images = &matrix * &src.relation_basis();
        if !dst.lattice().contains_columns(&images) {
            return Err(Error::NotWellDefined(format!(
                "relations of {src} do not map to relations of {dst} under {matrix}"
            )));
        }
        Ok(FgAbMap { src, dst, matrix })
    }

    pub fn from_i64(src: &FgAbGroup, dst: &FgAbGroup, entries: &[i64]) -> Result<Self> {
        if entries.len() != src.ngens() * dst.ngens() {
            return Err(Error::Dimension("entry count does not match group sizes".into()));
        }
        Self::new(src.clone(), dst.clone(), IntMatrix::from_i64(dst.ngens(), src.ngens(), entries))
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        FgAbMap { src: g.clone(), dst: g.clone(), matrix: IntMatrix::identity(g.ngens()) }
    }

    pub fn zero(src: &FgAbGroup, dst: &FgAbGroup) -> Self {
        FgAbMap { src: src.clone(), dst: dst.clone(), matrix: IntMatrix::zeros(dst.ngens(), src.ngens()) }
    }

    /// The unique map out of the trivial group.
    pub fn from_trivial(dst: &FgAbGroup) -> Self {
        Self::zero(&FgAbGroup::trivial(), dst)
    }

    pub fn to_trivial(src: &FgAbGroup) -> Self {
        Self::zero(src, &FgAbGroup::trivial())
    }

    pub fn src(&self) -> &FgAbGroup {
        &self.src
    }

    pub fn dst(&self) -> &FgAbGroup {
        &self.dst
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &FgAbMap) -> Result<FgAbMap> {
        if inner.dst != self.src {
            return Err(Error::EndpointMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.src, self.dst, inner.src, inner.dst
            )));
        }
        Ok(FgAbMap { src: inner.src.clone(), dst: self.dst.clone(), matrix: &self.matrix * &inner.matrix }.reduced())
    }

    fn same_endpoints(&self, other: &FgAbMap, what: &str) -> Result<()> {
        if self.src != other.src || self.dst != other.dst {
            return Err(Error::EndpointMismatch(format!("{what} of maps with different endpoints")));
        }
        Ok(())
    }

    pub fn add(&self, other: &FgAbMap) -> Result<FgAbMap> {
        self.same_endpoints(other, "sum")?;
        Ok(FgAbMap { src: self.src.clone(), dst: self.dst.clone(), matrix: &self.matrix + &other.matrix }.reduced())
    }

    pub fn sub(&self, other: &FgAbMap) -> Result<FgAbMap> {
        self.same_endpoints(other, "difference")?;
        Ok(FgAbMap { src: self.src.clone(), dst: self.dst.clone(), matrix: &self.matrix - &other.matrix }.reduced())
    }

    pub fn neg(&self) -> FgAbMap {
        FgAbMap { src: self.src.clone(), dst: self.dst.clone(), matrix: -&self.matrix }.reduced()
    }

    pub fn scale(&self, k: i64) -> FgAbMap {
        FgAbMap { src: self.src.clone(), dst: self.dst.clone(), matrix: self.matrix.scale(&BigInt::from(k)) }.reduced()
    }

    /// Same homomorphism with every column reduced to its canonical
    /// representative modulo the target relations.
    pub fn reduced(self) -> FgAbMap {
        let matrix = self.dst.lattice().reduce_columns(&self.matrix);
        FgAbMap { matrix, ..self }
    }

    /// Agreement as group homomorphisms.
    pub fn equals(&self, other: &FgAbMap) -> Result<bool> {
        self.same_endpoints(other, "comparison")?;
        Ok(self.dst.lattice().contains_columns(&(&self.matrix - &other.matrix)))
    }

    pub fn is_zero(&self) -> bool {
        self.dst.lattice().contains_columns(&self.matrix)
    }

    /// Image of an element given in source generator coordinates.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.dst.reduce(&self.matrix.mul_vec(v))
    }

    pub fn is_injective(&self) -> bool {
        kernel(self).group().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        cokernel(self).group().is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Two-sided inverse, when this map is an isomorphism.
    pub fn inverse(&self) -> Option<FgAbMap> {
        let inv = HomProblem::new(&self.dst, &self.src)
            .precompose(self, &FgAbMap::identity(&self.src))
            .ok()?
            .postcompose(self, &FgAbMap::identity(&self.dst))
            .ok()?
            .solve()?;
        Some(inv)
    }

    /// `(f1; f2; ...)`: the map into the direct sum of the targets.
    pub fn column(parts: &[&FgAbMap]) -> Result<FgAbMap> {
        let src =
            parts.first().map(|p| p.src.clone()).ok_or_else(|| Error::Dimension("empty column of maps".into()))?;
        if parts.iter().any(|p| p.src != src) {
            return Err(Error::EndpointMismatch("column maps must share a source".into()));
        }
        let dsts: Vec<&FgAbGroup> = parts.iter().map(|p| &p.dst).collect();
        let mats: Vec<&IntMatrix> = parts.iter().map(|p| &p.matrix).collect();
        Ok(FgAbMap { src, dst: FgAbGroup::direct_sum(&dsts), matrix: IntMatrix::vstack(&mats) })
    }

    /// `(g1, g2, ...)`: the map out of the direct sum of the sources.
    pub fn row(parts: &[&FgAbMap]) -> Result<FgAbMap> {
        let dst = parts.first().map(|p| p.dst.clone()).ok_or_else(|| Error::Dimension("empty row of maps".into()))?;
        if parts.iter().any(|p| p.dst != dst) {
            return Err(Error::EndpointMismatch("row maps must share a target".into()));
        }
        let srcs: Vec<&FgAbGroup> = parts.iter().map(|p| &p.src).collect();
        let mats: Vec<&IntMatrix> = parts.iter().map(|p| &p.matrix).collect();
        Ok(FgAbMap { src: FgAbGroup::direct_sum(&srcs), dst, matrix: IntMatrix::hstack(&mats) })
    }

    /// `f ⊕ g`.
    pub fn direct_sum(parts: &[&FgAbMap]) -> FgAbMap {
        let srcs: Vec<&FgAbGroup> = parts.iter().map(|p| &p.src).collect();
        let dsts: Vec<&FgAbGroup> = parts.iter().map(|p| &p.dst).collect();
        let mats: Vec<&IntMatrix> = parts.iter().map(|p| &p.matrix).collect();
        FgAbMap {
            src: FgAbGroup::direct_sum(&srcs),
            dst: FgAbGroup::direct_sum(&dsts),
            matrix: IntMatrix::block_diag(&mats),
        }
    }

    /// Inclusion of summand `k` into `⊕ parts`.
    pub fn injection(parts: &[&FgAbGroup], k: usize) -> FgAbMap {
        let sum = FgAbGroup::direct_sum(parts);
        let off: usize = parts[..k].iter().map(|g| g.ngens()).sum();
        let mut m = IntMatrix::zeros(sum.ngens(), parts[k].ngens());
        for t in 0..parts[k].ngens() {
            m.set(off + t, t, BigInt::one());
        }
        FgAbMap { src: parts[k].clone(), dst: sum, matrix: m }
    }

    /// Projection of `⊕ parts` onto summand `k`.
    pub fn projection(parts: &[&FgAbGroup], k: usize) -> FgAbMap {
        let sum = FgAbGroup::direct_sum(parts);
        let off: usize = parts[..k].iter().map(|g| g.ngens()).sum();
        let mut m = IntMatrix::zeros(parts[k].ngens(), sum.ngens());
        for t in 0..parts[k].ngens() {
            m.set(t, off + t, BigInt::one());
        }
        FgAbMap { src: sum, dst: parts[k].clone(), matrix: m }
    }

    /// Same matrix, reinterpreted between other presentations on the same
    /// generators (used after adding relations to the target or dropping
    /// relations from the source).
    pub fn with_endpoints(&self, src: &FgAbGroup, dst: &FgAbGroup) -> Result<FgAbMap> {
        FgAbMap::new(src.clone(), dst.clone(), self.matrix.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> FgAbGroup {
        FgAbGroup::cyclic(n)
    }

    #[test]
    fn well_definedness() {
        assert!(FgAbMap::from_i64(&z(4), &z(2), &[1]).is_ok());
        assert!(matches!(FgAbMap::from_i64(&z(2), &z(4), &[1]), Err(Error::NotWellDefined(_))));
        assert!(FgAbMap::from_i64(&z(2), &z(4), &[2]).is_ok());
    }

    #[test]
    fn map_equality_modulo_relations() {
        let f = FgAbMap::from_i64(&z(2), &z(2), &[1]).unwrap();
        let g = FgAbMap::from_i64(&z(2), &z(2), &[3]).unwrap();
        assert!(f.equals(&g).unwrap());
        assert!(f.equals(&f).unwrap());
        let zz = FgAbGroup::free(1);
        let a = FgAbMap::from_i64(&zz, &zz, &[1]).unwrap();
        assert!(!a.equals(&FgAbMap::zero(&zz, &zz)).unwrap());
        assert!(a.equals(&FgAbMap::zero(&zz, &z(2))).is_err());
    }

    #[test]
    fn invariant_factors_of_presentations() {
        assert_eq!(FgAbGroup::free(1).invariant_factors().to_string(), "Z");
        let g = FgAbGroup::new(2, IntMatrix::from_i64(2, 2, &[2, 0, 0, 4])).unwrap();
        assert_eq!(g.invariant_factors().torsion_u64(), vec![2, 4]);
        let q = FgAbGroup::new(2, IntMatrix::from_i64(2, 3, &[4, 0, 2, 0, 4, 2])).unwrap();
        assert_eq!(q.invariant_factors().torsion_u64(), vec![2, 4]);
        assert!(FgAbGroup::cyclic(1).is_trivial());
        assert!(FgAbGroup::trivial().invariant_factors().is_trivial());
    }

    #[test]
    fn shorthand_parsing() {
        let g: FgAbGroup = "Z/2+Z/4+Z".parse().unwrap();
        assert_eq!(g.ngens(), 3);
        assert_eq!(g.to_string(), "Z/2+Z/4+Z");
        assert!("0".parse::<FgAbGroup>().unwrap().is_trivial());
        assert!("Q".parse::<FgAbGroup>().is_err());
        assert!("Z/0".parse::<FgAbGroup>().is_err());
    }

    #[test]
    fn simplify_is_an_isomorphism() {
        let g = FgAbGroup::new(2, IntMatrix::from_i64(2, 2, &[2, 1, 0, 2])).unwrap();
        let (s, to, from) = g.simplify();
        assert_eq!(s.invariant_factors().torsion_u64(), vec![4]);
        assert!(from.compose(&to).unwrap().equals(&FgAbMap::identity(&g)).unwrap());
        assert!(to.compose(&from).unwrap().equals(&FgAbMap::identity(&s)).unwrap());
    }
}
