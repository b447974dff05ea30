use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twoterm::butterfly::{random_group, random_map};
use twoterm::fgab::{cokernel, ext1, is_exact_at, FgAbMap, Subquotient};
use twoterm::intlinalg::{hnf, snf, solve, IntMatrix};
use twoterm::oracle;

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (0..=max_dim, 0..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c).prop_map(move |v| IntMatrix::from_i64(r, c, &v))
    })
}

/// A unimodular `n×n` matrix as a product of elementary operations.
fn unimodular(n: usize, ops: &[(usize, usize, i64, bool)]) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    if n == 0 {
        return u;
    }
    for &(a, b, k, swap) in ops {
        let (a, b) = (a % n, b % n);
        let mut e = IntMatrix::identity(n);
        if swap {
            e.set(a, a, 0.into());
            e.set(b, b, 0.into());
            e.set(a, b, 1.into());
            e.set(b, a, 1.into());
            if a == b {
                e.set(a, a, (-1).into());
            }
        } else if a != b {
            e.set(a, b, k.into());
        }
        u = &e * &u;
    }
    u
}

fn ops() -> impl Strategy<Value = Vec<(usize, usize, i64, bool)>> {
    prop::collection::vec((0..6usize, 0..6usize, -3..=3i64, any::<bool>()), 0..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_recomposes(m in matrix(5, 20)) {
        let f = snf(&m);
        prop_assert!(&(&f.u * &m) * &f.v == f.s);
        prop_assert!(&f.u * &f.u_inv == IntMatrix::identity(m.rows()));
        prop_assert!(f.u.is_unimodular() && f.v.is_unimodular());
        let d = f.diagonal();
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                prop_assert!(r == c || f.s.get(r, c) == &BigInt::from(0));
            }
        }
        for w in d.windows(2) {
            prop_assert!(w[0] >= BigInt::from(0));
            let divides = if w[0] == BigInt::from(0) { w[1] == BigInt::from(0) } else { w[1].is_multiple_of(&w[0]) };
            prop_assert!(divides);
        }
    }

    #[test]
    fn snf_is_invariant_under_unimodular_change(m in matrix(4, 12), p in ops(), q in ops()) {
        let pm = unimodular(m.rows(), &p);
        let qm = unimodular(m.cols(), &q);
        prop_assert_eq!(snf(&m).diagonal(), snf(&(&(&pm * &m) * &qm)).diagonal());
    }

    #[test]
    fn hnf_recomposes(m in matrix(5, 20)) {
        let (h, u) = hnf(&m);
        prop_assert!(u.is_unimodular());
        prop_assert!(&u * &m == h);
    }

    #[test]
    fn solve_agrees_with_box_search(m in matrix(3, 5), b in prop::collection::vec(-6..=6i64, 3)) {
        let b: Vec<BigInt> = b.into_iter().take(m.rows()).map(BigInt::from).chain(std::iter::repeat(BigInt::from(0))).take(m.rows()).collect();
        let got = solve(&m, &b);
        if let Some(s) = &got {
            prop_assert_eq!(m.mul_vec(&s.particular), b.clone());
            prop_assert!((&m * &s.kernel).is_zero());
        }
        let n = m.cols();
        let mut found = false;
        let mut x = vec![-3i64; n];
        'search: loop {
            let xv: Vec<BigInt> = x.iter().map(|&t| BigInt::from(t)).collect();
            if m.mul_vec(&xv) == b {
                found = true;
                break;
            }
            for k in 0..n {
                if x[k] < 3 {
                    x[k] += 1;
                    continue 'search;
                }
                x[k] = -3;
            }
            break;
        }
        if found {
            prop_assert!(got.is_some());
        }
    }

    #[test]
    fn subquotient_and_exactness_match_the_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_group(&mut rng, 16, 0);
        let b = random_group(&mut rng, 64, 0);
        let c = random_group(&mut rng, 16, 0);
        let f = random_map(&mut rng, &a, &b);
        let coker = cokernel(&f);
        let g = random_map(&mut rng, coker.group(), &c).compose(coker.projection()).unwrap();
        let sq = Subquotient::new(&f, &g).unwrap();
        let (ra, rb, rc) = (oracle::realize(&a).unwrap(), oracle::realize(&b).unwrap(), oracle::realize(&c).unwrap());
        let ef = oracle::realize_map(&f, &ra, &rb).unwrap();
        let eg = oracle::realize_map(&g, &rb, &rc).unwrap();
        let h = oracle::element_homology(&ef, &eg).unwrap();
        prop_assert_eq!(sq.group().invariant_factors().torsion_u64(), h.group.invariant_factors());
        let exact = h.group.order() == 1;
        prop_assert_eq!(is_exact_at(&f, &g).unwrap(), exact);
    }

    #[test]
    fn extension_splits_iff_its_class_vanishes(seed in any::<u64>(), k in 0..6i64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_group(&mut rng, 16, 1);
        let c = random_group(&mut rng, 16, 1);
        let e = ext1(&a, &c);
        let class: Vec<BigInt> = (0..e.group().ngens()).map(|t| BigInt::from(k + t as i64)).collect();
        let x = e.realize(&class).unwrap();
        prop_assert!(x.is_exact());
        prop_assert_eq!(x.section().is_some(), e.is_zero_class(&class));
        let back = e.classify(&x).unwrap();
        let diff: Vec<BigInt> = back.iter().zip(&class).map(|(u, v)| u - v).collect();
        prop_assert!(e.group().is_zero_element(&diff));
    }
}

#[test]
fn element_maps_detect_exactness_of_small_sequences() {
    let z4 = twoterm::fgab::FgAbGroup::cyclic(4);
    let twice = FgAbMap::from_i64(&z4, &z4, &[2]).unwrap();
    assert!(is_exact_at(&twice, &twice).unwrap());
    let r = oracle::realize(&z4).unwrap();
    let e = oracle::realize_map(&twice, &r, &r).unwrap();
    let h = oracle::element_homology(&e, &e).unwrap();
    assert_eq!(h.group.order(), 1);
    let g = Arc::new(oracle::FiniteGroup::cyclic_sum(&[4]).unwrap());
    assert_eq!(oracle::enumerate_homs(&g, &g).unwrap().len(), 4);
}
