use num_bigint::BigInt;
use rand::Rng;

use super::Butterfly;
use crate::fgab::{ext1, FgAbGroup, FgAbMap, HomProblem};
use crate::intlinalg::IntMatrix;
use crate::twocomplex::TwoTermComplex;

const CYCLIC_ORDERS: [u64; 8] = [2, 2, 3, 4, 2, 6, 8, 3];

/// A random group of torsion order at most `max_order` plus free rank at most
/// `max_rank`, often with a scrambled (non-diagonal, redundant) presentation.
pub fn random_group<R: Rng + ?Sized>(rng: &mut R, max_order: u64, max_rank: usize) -> FgAbGroup {
    let mut orders: Vec<BigInt> = Vec::new();
    let mut order = 1u64;
    for _ in 0..rng.gen_range(0..=3) {
        let c = CYCLIC_ORDERS[rng.gen_range(0..CYCLIC_ORDERS.len())];
        if order * c <= max_order {
            order *= c;
            orders.push(BigInt::from(c));
        }
    }
    for _ in 0..rng.gen_range(0..=max_rank) {
        orders.push(BigInt::from(0));
    }
    let n = orders.len();
    let diag = FgAbGroup::diagonal(&orders);
    if n < 2 || rng.gen_bool(0.5) {
        return diag;
    }
    let mut u = IntMatrix::identity(n);
    for _ in 0..rng.gen_range(1..=3) {
        let (r, s) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if r == s {
            continue;
        }
        let k = BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 });
        for c in 0..n {
            let v = u.get(s, c) * &k;
            *u.get_mut(r, c) += v;
        }
    }
    let mut rel = &u * diag.relations();
    if rel.cols() >= 2 && rng.gen_bool(0.5) {
        let extra: Vec<BigInt> = (0..n).map(|r| rel.get(r, 0) + rel.get(r, 1)).collect();
        rel = IntMatrix::hstack(&[&rel, &IntMatrix::column_vector(extra)]);
    }
    FgAbGroup::new(n, rel).expect("scrambled presentation")
}

/// A random homomorphism `a → b` with small coefficients.
pub fn random_map<R: Rng + ?Sized>(rng: &mut R, a: &FgAbGroup, b: &FgAbGroup) -> FgAbMap {
    HomProblem::new(a, b).solve_all().expect("zero is always a homomorphism").sample(rng, 2)
}

pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, max_order: u64, max_rank: usize) -> TwoTermComplex {
    let a = random_group(rng, max_order, max_rank);
    let b = random_group(rng, max_order, max_rank);
    TwoTermComplex::new(random_map(rng, &a, &b))
}

/// Samples an extension class of `E^0` by `F^{-1}`, realizes it and solves
/// for `j` and `p`; falls back to the zero butterfly when no attempt closes.
pub fn random_butterfly<R: Rng + ?Sized>(rng: &mut R, e: &TwoTermComplex, f: &TwoTermComplex) -> Butterfly {
    let ext = ext1(e.deg_0(), f.deg_m1());
    for attempt in 0..4 {
        let class: Vec<BigInt> = if attempt == 3 {
            ext.zero_class()
        } else {
            (0..ext.group().ngens()).map(|_| BigInt::from(rng.gen_range(-1..=2))).collect()
        };
        let class = ext.group().reduce(&class);
        let Ok(x) = ext.realize(&class) else { continue };
        let (carrier, to, from) = x.carrier.simplify();
        let i = to.compose(&x.incl).expect("composable");
        let q = x.proj.compose(&from).expect("composable");
        let Some(j_space) =
            HomProblem::new(e.deg_m1(), &carrier).postcompose(&q, e.d()).ok().and_then(|h| h.solve_all())
        else {
            continue;
        };
        for _ in 0..6 {
            let j = j_space.sample(rng, 2);
            let p_space = HomProblem::new(&carrier, f.deg_0())
                .precompose(&i, &f.d().neg())
                .and_then(|h| h.precompose(&j, &FgAbMap::zero(e.deg_m1(), f.deg_0())))
                .ok()
                .and_then(|h| h.solve_all());
            if let Some(ps) = p_space {
                let p = ps.sample(rng, 2);
                if let Ok(b) = Butterfly::new(e, f, i.clone(), j, p, q.clone()) {
                    return b;
                }
            }
        }
    }
    Butterfly::zero(e, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn deterministic_per_seed() {
        let k = fixtures::k2();
        let a = random_butterfly(&mut ChaCha8Rng::seed_from_u64(7), &k, &k);
        let b = random_butterfly(&mut ChaCha8Rng::seed_from_u64(7), &k, &k);
        assert_eq!(a.j().matrix(), b.j().matrix());
        assert_eq!(a.carrier(), b.carrier());
    }

    #[test]
    fn random_butterflies_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let e = random_complex(&mut rng, 16, 1);
            let f = random_complex(&mut rng, 16, 1);
            assert!(random_butterfly(&mut rng, &e, &f).is_valid());
        }
    }

    #[test]
    fn nonsplit_classes_on_k2_occur() {
        let k = fixtures::k2();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let found = (0..20).any(|_| random_butterfly(&mut rng, &k, &k).carrier().to_string() == "Z/4");
        assert!(found);
    }
}
