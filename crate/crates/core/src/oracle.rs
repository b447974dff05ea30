//! Element-level arithmetic for small finite abelian groups.
//!
//! Groups are tuples of residues, maps are full tables, and subquotients are
//! built by coset enumeration. Nothing here calls into the presentation
//! algorithms except the Smith form used to read off a cyclic decomposition.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::butterfly::Butterfly;
use crate::error::{Error, Result};
use crate::fgab::{FgAbGroup, FgAbMap};
use crate::intlinalg::snf;
use crate::twocomplex::TwoTermComplex;

pub const DEFAULT_CAP: usize = 4096;

/// Largest number of candidate assignments a search will walk through.
const SEARCH_LIMIT: u128 = 5_000_000;

const NONE: usize = usize::MAX;

fn oracle_err(msg: impl Into<String>) -> Error {
    Error::Oracle(msg.into())
}

/// `Z/d1 ⊕ ... ⊕ Z/dk`, elements indexed in mixed radix with the first
/// component least significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementGroup {
    orders: Vec<u64>,
    size: usize,
}

impl ElementGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        Self::with_cap(orders, DEFAULT_CAP)
    }

    pub fn with_cap(orders: Vec<u64>, cap: usize) -> Result<Self> {
        let mut size = 1usize;
        for &d in &orders {
            if d == 0 {
                return Err(oracle_err("cyclic orders must be positive"));
            }
            size = size
                .checked_mul(d as usize)
                .filter(|&s| s <= cap)
                .ok_or_else(|| oracle_err(format!("group order exceeds the cap of {cap}")))?;
        }
        Ok(ElementGroup { orders, size })
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn decode(&self, mut x: usize) -> Vec<u64> {
        self.orders
            .iter()
            .map(|&d| {
                let r = x % d as usize;
                x /= d as usize;
                r as u64
            })
            .collect()
    }

    pub fn encode(&self, t: &[u64]) -> usize {
        self.orders.iter().zip(t).rev().fold(0usize, |acc, (&d, &r)| acc * d as usize + (r % d) as usize)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ta, tb) = (self.decode(a), self.decode(b));
        let t: Vec<u64> = ta.iter().zip(&tb).zip(&self.orders).map(|((x, y), d)| (x + y) % d).collect();
        self.encode(&t)
    }

    pub fn scale(&self, k: i64, a: usize) -> usize {
        let t: Vec<u64> = self
            .decode(a)
            .iter()
            .zip(&self.orders)
            .map(|(&x, &d)| (k as i128 * x as i128).rem_euclid(d as i128) as u64)
            .collect();
        self.encode(&t)
    }

    pub fn generator(&self, k: usize) -> usize {
        let mut t = vec![0; self.orders.len()];
        t[k] = 1;
        self.encode(&t)
    }
}

/// A subquotient `K/I` of an [`ElementGroup`], with one class per coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    ambient: ElementGroup,
    reps: Vec<usize>,
    class: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_element_group(g: ElementGroup) -> Self {
        let n = g.size();
        FiniteGroup { ambient: g, reps: (0..n).collect(), class: (0..n).collect() }
    }

    pub fn cyclic_sum(orders: &[u64]) -> Result<Self> {
        Ok(Self::from_element_group(ElementGroup::new(orders.to_vec())?))
    }

    pub fn trivial() -> Self {
        Self::from_element_group(ElementGroup { orders: vec![], size: 1 })
    }

    pub fn ambient(&self) -> &ElementGroup {
        &self.ambient
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn zero(&self) -> usize {
        self.class[0]
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.class[self.ambient.add(self.reps[a], self.reps[b])]
    }

    pub fn scale(&self, k: i64, a: usize) -> usize {
        self.class[self.ambient.scale(k, self.reps[a])]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.scale(-1, a)
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let z = self.zero();
        let (mut k, mut x) = (1u64, a);
        while x != z {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    /// A greedy generating set: each element is outside the span of the
    /// earlier ones.
    pub fn generators(&self) -> Vec<usize> {
        let n = self.order();
        let mut span = vec![false; n];
        span[self.zero()] = true;
        let mut members = vec![self.zero()];
        let mut gens = Vec::new();
        for x in 0..n {
            if span[x] {
                continue;
            }
            gens.push(x);
            let mut grown = members.clone();
            let mut m = x;
            while !span[m] {
                for &s in &members {
                    let t = self.add(s, m);
                    if !span[t] {
                        span[t] = true;
                        grown.push(t);
                    }
                }
                m = self.add(m, x);
            }
            members = grown;
        }
        gens
    }

    /// Invariant factors in increasing divisibility order, read off from the
    /// number of elements killed by each prime power.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let z = self.zero();
        let n = self.order();
        invariant_factors_from_counts(n as u64, |k| (0..n).filter(|&x| self.scale(k as i64, x) == z).count() as u64)
    }

    /// `A ⊕ B`, with class `(a, b)` numbered `a + |A|·b`.
    pub fn direct_sum(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
        let mut orders = a.ambient.orders.clone();
        orders.extend_from_slice(&b.ambient.orders);
        let ambient = ElementGroup::new(orders)?;
        let (na, nb) = (a.ambient.size(), b.ambient.size());
        let mut class = vec![NONE; na * nb];
        for y in 0..nb {
            for x in 0..na {
                let (cx, cy) = (a.class[x], b.class[y]);
                if cx != NONE && cy != NONE {
                    class[x + na * y] = cx + a.order() * cy;
                }
            }
        }
        let mut reps = vec![0; a.order() * b.order()];
        for cy in 0..b.order() {
            for cx in 0..a.order() {
                reps[cx + a.order() * cy] = a.reps[cx] + na * b.reps[cy];
            }
        }
        Ok(FiniteGroup { ambient, reps, class })
    }

    /// `{c : keep[c]} / {c : kill[c]}`; `kill` must be a subgroup inside `keep`.
    fn subquotient(&self, keep: &[bool], kill: &[bool]) -> FiniteGroup {
        let amb_kill: Vec<usize> =
            (0..self.ambient.size()).filter(|&x| self.class[x] != NONE && kill[self.class[x]]).collect();
        let mut class = vec![NONE; self.ambient.size()];
        let mut reps = Vec::new();
        for x in 0..self.ambient.size() {
            let c = self.class[x];
            if c == NONE || !keep[c] || class[x] != NONE {
                continue;
            }
            let h = reps.len();
            reps.push(x);
            for &k in &amb_kill {
                class[self.ambient.add(x, k)] = h;
            }
        }
        FiniteGroup { ambient: self.ambient.clone(), reps, class }
    }
}

/// Invariant factors of a finite abelian group of order `n`, given the
/// number of elements `x` with `k·x = 0` for each `k`.
pub fn invariant_factors_from_counts(n: u64, killed_by: impl Fn(u64) -> u64) -> Vec<u64> {
    let mut by_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while rest > 1 {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            // c_j = log_p |G[p^j]|; c_j - c_{j-1} counts the parts of size >= j
            let mut prev = 0;
            let mut at_least = Vec::new();
            for j in 1..=e {
                let count = killed_by(p.pow(j));
                let c = count.ilog(p);
                at_least.push(c - prev);
                prev = c;
            }
            let parts_count = at_least.first().copied().unwrap_or(0) as usize;
            let mut parts = vec![0u32; parts_count];
            for (j, &cnt) in at_least.iter().enumerate() {
                for part in parts.iter_mut().take(cnt as usize) {
                    *part = j as u32 + 1;
                }
            }
            by_prime.push((p, parts));
        }
        p += 1;
    }
    let len = by_prime.iter().map(|(_, parts)| parts.len()).max().unwrap_or(0);
    let mut factors: Vec<u64> =
        (0..len).map(|t| by_prime.iter().map(|(p, parts)| parts.get(t).map_or(1, |&e| p.pow(e))).product()).collect();
    factors.reverse();
    factors
}

/// A homomorphism given by its full table on classes.
#[derive(Clone, Debug)]
pub struct ElementMap {
    src: Arc<FiniteGroup>,
    dst: Arc<FiniteGroup>,
    table: Vec<usize>,
}

impl ElementMap {
    pub fn new(src: Arc<FiniteGroup>, dst: Arc<FiniteGroup>, table: Vec<usize>) -> Result<Self> {
        if table.len() != src.order() || table.iter().any(|&y| y >= dst.order()) {
            return Err(oracle_err("table does not match the groups"));
        }
        let f = ElementMap { src, dst, table };
        for g in f.src.generators() {
            for x in 0..f.src.order() {
                if f.table[f.src.add(x, g)] != f.dst.add(f.table[x], f.table[g]) {
                    return Err(oracle_err("table is not additive"));
                }
            }
        }
        Ok(f)
    }

    pub fn from_fn(src: &Arc<FiniteGroup>, dst: &Arc<FiniteGroup>, f: impl Fn(usize) -> usize) -> Result<Self> {
        Self::new(src.clone(), dst.clone(), (0..src.order()).map(f).collect())
    }

    pub fn zero(src: &Arc<FiniteGroup>, dst: &Arc<FiniteGroup>) -> Self {
        ElementMap { src: src.clone(), dst: dst.clone(), table: vec![dst.zero(); src.order()] }
    }

    pub fn identity(g: &Arc<FiniteGroup>) -> Self {
        ElementMap { src: g.clone(), dst: g.clone(), table: (0..g.order()).collect() }
    }

    pub fn src(&self) -> &Arc<FiniteGroup> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<FiniteGroup> {
        &self.dst
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ElementMap) -> Result<ElementMap> {
        if !same(&inner.dst, &self.src) {
            return Err(oracle_err("maps are not composable"));
        }
        Ok(ElementMap {
            src: inner.src.clone(),
            dst: self.dst.clone(),
            table: inner.table.iter().map(|&y| self.table[y]).collect(),
        })
    }

    pub fn neg(&self) -> ElementMap {
        ElementMap {
            src: self.src.clone(),
            dst: self.dst.clone(),
            table: self.table.iter().map(|&y| self.dst.neg(y)).collect(),
        }
    }

    pub fn add(&self, other: &ElementMap) -> Result<ElementMap> {
        if !same(&self.src, &other.src) || !same(&self.dst, &other.dst) {
            return Err(oracle_err("maps are not parallel"));
        }
        let table = self.table.iter().zip(&other.table).map(|(&a, &b)| self.dst.add(a, b)).collect();
        Ok(ElementMap { src: self.src.clone(), dst: self.dst.clone(), table })
    }

    pub fn equals(&self, other: &ElementMap) -> bool {
        same(&self.src, &other.src) && same(&self.dst, &other.dst) && self.table == other.table
    }

    pub fn is_zero(&self) -> bool {
        let z = self.dst.zero();
        self.table.iter().all(|&y| y == z)
    }

    pub fn kernel_mask(&self) -> Vec<bool> {
        let z = self.dst.zero();
        self.table.iter().map(|&y| y == z).collect()
    }

    pub fn image_mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.dst.order()];
        for &y in &self.table {
            m[y] = true;
        }
        m
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_mask().iter().filter(|&&k| k).count() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image_mask().iter().all(|&m| m)
    }
}

fn same(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// `ker(b)/im(a)` together with the group it is cut out of.
#[derive(Clone, Debug)]
pub struct ElementSubquotient {
    pub group: Arc<FiniteGroup>,
    pub of: Arc<FiniteGroup>,
}

impl ElementSubquotient {
    /// The class of an element of `of`, if it lies in the kept subgroup.
    pub fn project(&self, c: usize) -> Option<usize> {
        let h = self.group.class[self.of.reps[c]];
        (h != NONE).then_some(h)
    }

    pub fn representative(&self, h: usize) -> usize {
        self.of.class[self.group.reps[h]]
    }

    /// The map on the subquotient induced by `g`, which must kill the
    /// quotiented subgroup.
    pub fn induce_out(&self, g: &ElementMap) -> Result<ElementMap> {
        if !same(g.src(), &self.of) {
            return Err(oracle_err("map does not start at the ambient group"));
        }
        let table: Vec<usize> = (0..self.group.order()).map(|h| g.apply(self.representative(h))).collect();
        for c in 0..self.of.order() {
            if let Some(h) = self.project(c) {
                if g.apply(c) != table[h] {
                    return Err(oracle_err("map does not descend"));
                }
            }
        }
        Ok(ElementMap { src: self.group.clone(), dst: g.dst().clone(), table })
    }

    /// `f` corestricted to the kept subgroup and projected.
    pub fn lift_in(&self, f: &ElementMap) -> Result<ElementMap> {
        if !same(f.dst(), &self.of) {
            return Err(oracle_err("map does not end at the ambient group"));
        }
        let table = f
            .table()
            .iter()
            .map(|&y| self.project(y).ok_or_else(|| oracle_err("map leaves the kept subgroup")))
            .collect::<Result<Vec<_>>>()?;
        Ok(ElementMap { src: f.src().clone(), dst: self.group.clone(), table })
    }
}

/// Literal `ker(b)/im(a)` by coset enumeration.
pub fn element_homology(a: &ElementMap, b: &ElementMap) -> Result<ElementSubquotient> {
    if !same(a.dst(), b.src()) {
        return Err(oracle_err("maps are not composable"));
    }
    if !b.compose(a)?.is_zero() {
        return Err(oracle_err("b∘a is not zero"));
    }
    let group = a.dst().subquotient(&b.kernel_mask(), &a.image_mask());
    Ok(ElementSubquotient { group: Arc::new(group), of: a.dst().clone() })
}

pub fn element_kernel(f: &ElementMap) -> Result<ElementSubquotient> {
    let t = Arc::new(FiniteGroup::trivial());
    element_homology(&ElementMap::zero(&t, f.src()), f)
}

pub fn element_cokernel(f: &ElementMap) -> Result<ElementSubquotient> {
    let t = Arc::new(FiniteGroup::trivial());
    element_homology(f, &ElementMap::zero(f.dst(), &t))
}

/// `(H^{-1}, H^0)` of the complex `[src →d dst]`.
pub fn element_complex_homology(d: &ElementMap) -> Result<(FiniteGroup, FiniteGroup)> {
    Ok(((*element_kernel(d)?.group).clone(), (*element_cokernel(d)?.group).clone()))
}

/// A finite group realized from a presentation, with coordinates both ways.
#[derive(Clone, Debug)]
pub struct Realized {
    pub group: Arc<FiniteGroup>,
    rows: Vec<Vec<BigInt>>,
    moduli: Vec<BigInt>,
    gen_coords: Vec<Vec<BigInt>>,
}

impl Realized {
    /// The element named by presentation coordinates `x`.
    pub fn element(&self, x: &[BigInt]) -> usize {
        let t: Vec<u64> = self
            .rows
            .iter()
            .zip(&self.moduli)
            .map(|(row, m)| {
                let dot: BigInt = row.iter().zip(x).map(|(a, b)| a * b).sum();
                dot.mod_floor(m).to_u64().expect("residue fits")
            })
            .collect();
        self.group.class[self.group.ambient.encode(&t)]
    }

    /// Presentation coordinates of an element.
    pub fn coords(&self, c: usize) -> Vec<BigInt> {
        let t = self.group.ambient.decode(self.group.reps[c]);
        let n = self.gen_coords.first().map_or(0, Vec::len);
        let mut x = vec![BigInt::zero(); n];
        for (k, &r) in t.iter().enumerate() {
            for (xi, g) in x.iter_mut().zip(&self.gen_coords[k]) {
                *xi += g * BigInt::from(r);
            }
        }
        x
    }
}

/// The cyclic decomposition of a finite presented group, read off from the
/// Smith form `U·R·V = S`: coordinates `x` go to `U·x` modulo the diagonal.
pub fn realize(g: &FgAbGroup) -> Result<Realized> {
    realize_with_cap(g, DEFAULT_CAP)
}

pub fn realize_with_cap(g: &FgAbGroup, cap: usize) -> Result<Realized> {
    let n = g.ngens();
    let sf = snf(g.relations());
    let diag = sf.diagonal();
    let mut rows = Vec::new();
    let mut moduli = Vec::new();
    let mut gen_coords = Vec::new();
    for i in 0..n {
        let s = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if s.is_zero() {
            return Err(oracle_err("group is infinite"));
        }
        if s.is_one() {
            continue;
        }
        rows.push(sf.u.row(i).to_vec());
        gen_coords.push(sf.u_inv.column(i));
        moduli.push(s);
    }
    let orders =
        moduli.iter().map(|m| m.to_u64().ok_or_else(|| oracle_err("group too large"))).collect::<Result<Vec<_>>>()?;
    let group = FiniteGroup::from_element_group(ElementGroup::with_cap(orders, cap)?);
    Ok(Realized { group: Arc::new(group), rows, moduli, gen_coords })
}

/// The table of `f` between realized groups.
pub fn realize_map(f: &FgAbMap, src: &Realized, dst: &Realized) -> Result<ElementMap> {
    let n = f.src().ngens();
    let table = (0..src.group.order())
        .map(|c| {
            let mut x = src.coords(c);
            x.resize(n, BigInt::zero());
            dst.element(&f.matrix().mul_vec(&x))
        })
        .collect();
    ElementMap::new(src.group.clone(), dst.group.clone(), table)
}

pub fn realize_complex(k: &TwoTermComplex) -> Result<ElementMap> {
    let a = realize(k.deg_m1())?;
    let b = realize(k.deg_0())?;
    realize_map(k.d(), &a, &b)
}

/// A butterfly `E → F` with every object and map given elementwise.
#[derive(Clone, Debug)]
pub struct ElementButterfly {
    pub e: ElementMap,
    pub f: ElementMap,
    pub i: ElementMap,
    pub j: ElementMap,
    pub p: ElementMap,
    pub q: ElementMap,
}

pub fn realize_butterfly(y: &Butterfly) -> Result<ElementButterfly> {
    let e1 = realize(y.src().deg_m1())?;
    let e0 = realize(y.src().deg_0())?;
    let f1 = realize(y.dst().deg_m1())?;
    let f0 = realize(y.dst().deg_0())?;
    let c = realize(y.carrier())?;
    Ok(ElementButterfly {
        e: realize_map(y.src().d(), &e1, &e0)?,
        f: realize_map(y.dst().d(), &f1, &f0)?,
        i: realize_map(y.i(), &f1, &c)?,
        j: realize_map(y.j(), &e1, &c)?,
        p: realize_map(y.p(), &c, &f0)?,
        q: realize_map(y.q(), &c, &e0)?,
    })
}

impl ElementButterfly {
    pub fn carrier(&self) -> &Arc<FiniteGroup> {
        self.i.dst()
    }

    /// Every axiom checked on elements.
    pub fn is_valid(&self) -> bool {
        let check = || -> Result<bool> {
            Ok(self.q.compose(&self.j)?.equals(&self.e)
                && self.p.compose(&self.i)?.equals(&self.f.neg())
                && self.p.compose(&self.j)?.is_zero()
                && self.i.is_injective()
                && self.q.is_surjective()
                && self.i.image_mask() == self.q.kernel_mask())
        };
        check().unwrap_or(false)
    }

    /// The composite `z ∘ y` on `ker(-p_Y, q_Z) / im(i_Y; -j_Z)`.
    pub fn compose(z: &ElementButterfly, y: &ElementButterfly) -> Result<ElementButterfly> {
        if !y.f.equals(&z.e) {
            return Err(oracle_err("butterflies are not composable"));
        }
        let (cy, cz) = (y.carrier().clone(), z.carrier().clone());
        let sum = Arc::new(FiniteGroup::direct_sum(&cy, &cz)?);
        let ny = cy.order();
        let pair = |a: usize, b: usize| a + ny * b;
        let split = |s: usize| (s % ny, s / ny);
        let a = ElementMap::from_fn(y.i.src(), &sum, |x| pair(y.i.apply(x), cz.neg(z.j.apply(x))))?;
        let b = ElementMap::from_fn(&sum, y.p.dst(), |s| {
            let (u, v) = split(s);
            y.p.dst().add(y.p.dst().neg(y.p.apply(u)), z.q.apply(v))
        })?;
        let sq = element_homology(&a, &b)?;
        let i = sq.lift_in(&ElementMap::from_fn(z.i.src(), &sum, |x| pair(cy.zero(), z.i.apply(x)))?)?;
        let j = sq.lift_in(&ElementMap::from_fn(y.j.src(), &sum, |x| pair(y.j.apply(x), cz.zero()))?)?;
        let p = sq.induce_out(&ElementMap::from_fn(&sum, z.p.dst(), |s| z.p.apply(split(s).1))?)?;
        let q = sq.induce_out(&ElementMap::from_fn(&sum, y.q.dst(), |s| y.q.apply(split(s).0))?)?;
        Ok(ElementButterfly { e: y.e.clone(), f: z.f.clone(), i, j, p, q })
    }

    /// The maps on `H^{-1}` (`x ↦ y` with `i y = j x`) and on `H^0`
    /// (`q y ↦ p y`).
    pub fn homology_action(&self) -> Result<ElementHomologyAction> {
        let src_m1 = element_kernel(&self.e)?;
        let dst_m1 = element_kernel(&self.f)?;
        let src_0 = element_cokernel(&self.e)?;
        let dst_0 = element_cokernel(&self.f)?;
        let carrier = self.carrier();
        let mut i_inv = vec![NONE; carrier.order()];
        for x in 0..self.i.src().order() {
            i_inv[self.i.apply(x)] = x;
        }
        let mut q_pre = vec![NONE; self.q.dst().order()];
        for y in 0..carrier.order() {
            q_pre[self.q.apply(y)] = y;
        }
        let on_m1 = (0..src_m1.group.order())
            .map(|h| {
                let y = i_inv[self.j.apply(src_m1.representative(h))];
                (y != NONE)
                    .then(|| dst_m1.project(y))
                    .flatten()
                    .ok_or_else(|| oracle_err("j leaves the image of i on cycles"))
            })
            .collect::<Result<Vec<_>>>()?;
        let on_0 = (0..src_0.group.order())
            .map(|h| {
                let y = q_pre[src_0.representative(h)];
                (y != NONE).then(|| dst_0.project(self.p.apply(y))).flatten().ok_or_else(|| oracle_err("q is not onto"))
            })
            .collect::<Result<Vec<_>>>()?;
        let on_m1 = ElementMap::new(src_m1.group.clone(), dst_m1.group.clone(), on_m1)?;
        let on_0 = ElementMap::new(src_0.group.clone(), dst_0.group.clone(), on_0)?;
        Ok(ElementHomologyAction { src_m1, dst_m1, src_0, dst_0, on_m1, on_0 })
    }

    /// `ker j`.
    pub fn pip(&self) -> Result<FiniteGroup> {
        Ok((*element_kernel(&self.j)?.group).clone())
    }

    /// `coker p`.
    pub fn copip(&self) -> Result<FiniteGroup> {
        Ok((*element_cokernel(&self.p)?.group).clone())
    }

    /// The differential of `[E^{-1} →j ker p]`.
    pub fn kernel_complex(&self) -> Result<ElementMap> {
        element_kernel(&self.p)?.lift_in(&self.j)
    }

    /// The differential of `[coker j →-p F^0]`.
    pub fn cokernel_complex(&self) -> Result<ElementMap> {
        element_cokernel(&self.j)?.induce_out(&self.p.neg())
    }
}

#[derive(Clone, Debug)]
pub struct ElementHomologyAction {
    pub src_m1: ElementSubquotient,
    pub dst_m1: ElementSubquotient,
    pub src_0: ElementSubquotient,
    pub dst_0: ElementSubquotient,
    pub on_m1: ElementMap,
    pub on_0: ElementMap,
}

/// Runs `visit` on every homomorphism `src → dst` whose generator images are
/// drawn from `candidates(g)`; stops early when `visit` returns `false`.
fn search_homs(
    src: &FiniteGroup,
    dst: &FiniteGroup,
    candidates: impl Fn(usize) -> Vec<usize>,
    mut visit: impl FnMut(Vec<usize>) -> bool,
) -> Result<()> {
    let gens = src.generators();
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let ord = src.element_order(g) as i64;
            candidates(g).into_iter().filter(|&y| dst.scale(ord, y) == dst.zero()).collect()
        })
        .collect();
    let total: u128 = cands.iter().map(|c| c.len() as u128).product();
    if total > SEARCH_LIMIT {
        return Err(oracle_err("search space too large"));
    }
    if cands.iter().any(Vec::is_empty) {
        return Ok(());
    }
    let mut idx = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = idx.iter().zip(&cands).map(|(&k, c)| c[k]).collect();
        if let Some(table) = extend(src, dst, &gens, &images) {
            if !visit(table) {
                return Ok(());
            }
        }
        let mut t = 0;
        loop {
            if t == idx.len() {
                return Ok(());
            }
            idx[t] += 1;
            if idx[t] < cands[t].len() {
                break;
            }
            idx[t] = 0;
            t += 1;
        }
    }
}

/// The homomorphism with the given generator images, if one exists.
fn extend(src: &FiniteGroup, dst: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut table = vec![NONE; src.order()];
    table[src.zero()] = dst.zero();
    let mut queue = vec![src.zero()];
    while let Some(u) = queue.pop() {
        for (&g, &img) in gens.iter().zip(images) {
            let v = src.add(u, g);
            let w = dst.add(table[u], img);
            if table[v] == NONE {
                table[v] = w;
                queue.push(v);
            } else if table[v] != w {
                return None;
            }
        }
    }
    Some(table)
}

/// Every homomorphism `src → dst`.
pub fn enumerate_homs(src: &Arc<FiniteGroup>, dst: &Arc<FiniteGroup>) -> Result<Vec<ElementMap>> {
    let mut out = Vec::new();
    search_homs(
        src,
        dst,
        |_| (0..dst.order()).collect(),
        |t| {
            out.push(ElementMap { src: src.clone(), dst: dst.clone(), table: t });
            true
        },
    )?;
    Ok(out)
}

fn two_morphism_search(
    a: &ElementButterfly,
    b: &ElementButterfly,
    mut visit: impl FnMut(Vec<usize>) -> bool,
) -> Result<()> {
    if !a.e.equals(&b.e) || !a.f.equals(&b.f) {
        return Err(oracle_err("butterflies are not parallel"));
    }
    let (ya, yb) = (a.carrier(), b.carrier());
    if ya.order() != yb.order() {
        return Ok(());
    }
    search_homs(
        ya,
        yb,
        |g| (0..yb.order()).filter(|&y| b.p.apply(y) == a.p.apply(g) && b.q.apply(y) == a.q.apply(g)).collect(),
        |m| {
            let bijective = {
                let mut seen = vec![false; m.len()];
                m.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
            };
            let commutes = (0..a.i.src().order()).all(|x| m[a.i.apply(x)] == b.i.apply(x))
                && (0..a.j.src().order()).all(|x| m[a.j.apply(x)] == b.j.apply(x));
            if bijective && commutes {
                visit(m)
            } else {
                true
            }
        },
    )
}

/// Every carrier isomorphism `Y_a → Y_b` commuting with all four wings.
pub fn enumerate_two_morphisms(a: &ElementButterfly, b: &ElementButterfly) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    two_morphism_search(a, b, |m| {
        out.push(m);
        true
    })?;
    Ok(out)
}

pub fn two_morphism_exists(a: &ElementButterfly, b: &ElementButterfly) -> Result<bool> {
    let mut found = false;
    two_morphism_search(a, b, |_| {
        found = true;
        false
    })?;
    Ok(found)
}

/// Invariant-factor lists of every abelian group of order `n`.
pub fn abelian_groups_of_order(n: u64) -> Vec<Vec<u64>> {
    fn partitions(e: u32, max: u32) -> Vec<Vec<u32>> {
        if e == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=e.min(max)).rev() {
            for mut rest in partitions(e - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut result: Vec<Vec<u64>> = vec![vec![]];
    let mut rest = n;
    let mut p = 2;
    while rest > 1 {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            let mut next = Vec::new();
            for base in &result {
                for part in partitions(e, e) {
                    let len = base.len().max(part.len());
                    let mut f: Vec<u64> = (0..len)
                        .map(|t| {
                            let b = if t < base.len() { base[base.len() - 1 - t] } else { 1 };
                            b * part.get(t).map_or(1, |&x| p.pow(x))
                        })
                        .collect();
                    f.reverse();
                    next.push(f);
                }
            }
            result = next;
        }
        p += 1;
    }
    result
}

/// Orders of `π_0` and `π_1` of the groupoid of butterflies `[K^{-1} →d K^0] → C[1]`
/// by exhaustive enumeration of carriers, wings and 2-isomorphisms.
pub fn count_butterflies_into_shift(d: &ElementMap, c: &Arc<FiniteGroup>) -> Result<(usize, usize)> {
    let (k1, k0) = (d.src().clone(), d.dst().clone());
    let zero = Arc::new(FiniteGroup::trivial());
    let c_shift = ElementMap::zero(c, &zero);
    let n = (c.order() * k0.order()) as u64;
    let mut classes: Vec<ElementButterfly> = Vec::new();
    for orders in abelian_groups_of_order(n) {
        let y = Arc::new(FiniteGroup::cyclic_sum(&orders)?);
        let incs: Vec<ElementMap> = enumerate_homs(c, &y)?.into_iter().filter(ElementMap::is_injective).collect();
        let projs: Vec<ElementMap> = enumerate_homs(&y, &k0)?.into_iter().filter(ElementMap::is_surjective).collect();
        let lifts = enumerate_homs(&k1, &y)?;
        for i in &incs {
            for q in &projs {
                if !q.compose(i)?.is_zero() {
                    continue;
                }
                for j in &lifts {
                    if !q.compose(j)?.equals(d) {
                        continue;
                    }
                    let x = ElementButterfly {
                        e: d.clone(),
                        f: c_shift.clone(),
                        i: i.clone(),
                        j: j.clone(),
                        p: ElementMap::zero(&y, &zero),
                        q: q.clone(),
                    };
                    let mut known = false;
                    for r in &classes {
                        if two_morphism_exists(r, &x)? {
                            known = true;
                            break;
                        }
                    }
                    if !known {
                        classes.push(x);
                    }
                }
            }
        }
    }
    let pi1 = match classes.first() {
        Some(x) => enumerate_two_morphisms(x, x)?.len(),
        None => 0,
    };
    Ok((classes.len(), pi1))
}

/// Invariant factors of `π_0` for butterflies `[K^{-1} →d K^0] → Z[1]` with
/// `K` finite.
///
/// With `n` the exponent of `K^0`, every extension of `K^0` by `Z` embeds in
/// `(1/n)Z ⊕ K^0` over the identity of `K^0`, so carriers are the preimages of
/// graphs of `φ: K^0 → Z/n`. A lift `j` of `d` must land in torsion, which
/// forces `j(x) = (0, d x)` and `φ∘d = 0`; the only 2-automorphism is the
/// identity. The classes are enumerated as those `φ`.
pub fn pi0_into_shifted_integers(d: &ElementMap) -> Result<Vec<u64>> {
    let k0 = d.dst().clone();
    let exponent = (0..k0.order()).map(|x| k0.element_order(x)).fold(1u64, |a, b| a.lcm(&b));
    let zn = Arc::new(FiniteGroup::cyclic_sum(&[exponent])?);
    let phis: Vec<ElementMap> = enumerate_homs(&k0, &zn)?
        .into_iter()
        .filter(|phi| phi.compose(d).map(|m| m.is_zero()).unwrap_or(false))
        .collect();
    let count = phis.len() as u64;
    Ok(invariant_factors_from_counts(count, |k| {
        phis.iter().filter(|phi| phi.table().iter().all(|&v| zn.scale(k as i64, v) == zn.zero())).count() as u64
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::intlinalg::IntMatrix;

    fn fin(orders: &[u64]) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic_sum(orders).unwrap())
    }

    #[test]
    fn realize_examples() {
        assert_eq!(realize(&FgAbGroup::cyclic(2)).unwrap().group.ambient().orders(), &[2]);
        let g = FgAbGroup::new(2, IntMatrix::from_i64(2, 2, &[2, 0, 0, 4])).unwrap();
        assert_eq!(realize(&g).unwrap().group.invariant_factors(), vec![2, 4]);
        assert_eq!(realize(&FgAbGroup::trivial()).unwrap().group.order(), 1);
        assert!(realize(&FgAbGroup::free(1)).is_err());
        let scrambled = FgAbGroup::new(2, IntMatrix::from_i64(2, 3, &[2, 1, 3, 0, 3, 3])).unwrap();
        let r = realize(&scrambled).unwrap();
        assert_eq!(r.group.order() as u64, scrambled.order().unwrap().to_u64().unwrap());
        for c in 0..r.group.order() {
            assert_eq!(r.element(&r.coords(c)), c);
        }
    }

    #[test]
    fn invariant_factors_by_counting() {
        assert_eq!(fin(&[4, 2, 6]).invariant_factors(), vec![2, 2, 12]);
        assert_eq!(fin(&[3, 5]).invariant_factors(), vec![15]);
        assert!(fin(&[]).invariant_factors().is_empty());
        assert_eq!(abelian_groups_of_order(8).len(), 3);
        assert_eq!(abelian_groups_of_order(12), vec![vec![12], vec![2, 6]]);
    }

    #[test]
    fn homology_by_cosets() {
        let g = fin(&[2, 4]);
        let z = ElementMap::zero(&g, &g);
        assert_eq!(element_homology(&z, &z).unwrap().group.invariant_factors(), vec![2, 4]);
        let id = ElementMap::identity(&g);
        assert_eq!(element_homology(&id, &z).unwrap().group.order(), 1);
        let z4 = fin(&[4]);
        let twice = ElementMap::from_fn(&z4, &z4, |x| z4.scale(2, x)).unwrap();
        assert_eq!(element_homology(&twice, &twice).unwrap().group.invariant_factors(), Vec::<u64>::new());
        assert_eq!(element_kernel(&twice).unwrap().group.invariant_factors(), vec![2]);
    }

    #[test]
    fn two_morphism_goldens() {
        let b = realize_butterfly(&fixtures::b()).unwrap();
        let ik = realize_butterfly(&fixtures::ik2()).unwrap();
        assert!(b.is_valid() && ik.is_valid());
        assert_eq!(enumerate_two_morphisms(&b, &b).unwrap().len(), 2);
        assert_eq!(enumerate_two_morphisms(&ik, &ik).unwrap().len(), 2);
        assert!(enumerate_two_morphisms(&b, &ik).unwrap().is_empty());
        let bb = ElementButterfly::compose(&b, &b).unwrap();
        assert!(bb.is_valid());
        assert!(two_morphism_exists(&bb, &ik).unwrap());
    }

    #[test]
    fn biext_counts() {
        let z2 = fin(&[2]);
        let d = ElementMap::zero(&z2, &z2);
        assert_eq!(count_butterflies_into_shift(&d, &z2).unwrap(), (4, 2));
        assert_eq!(pi0_into_shifted_integers(&d).unwrap(), vec![2]);
    }
}
