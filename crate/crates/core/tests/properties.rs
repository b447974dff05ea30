use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twoterm::butterfly::{
    baer_sum, canonical_coimage_iso, canonical_image_iso, classify, cokernel_b, compose, copip, invert, kernel_b, pip,
    random_butterfly, random_complex, random_group, two_morphism_find, Butterfly,
};
use twoterm::derived::derived_tensor;
use twoterm::exactness::{
    from_chain_maps, presentation_sequence, random_cokernel_sequence, random_degreewise_sequence,
    random_exact_sequence, truncation_sequence,
};
use twoterm::json::{self, Document};
use twoterm::oracle;
use twoterm::twocomplex::{ChainMap, TwoTermComplex};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pair(seed: u64) -> (Butterfly, Butterfly) {
    let mut r = rng(seed);
    let e = random_complex(&mut r, 16, 1);
    let f = random_complex(&mut r, 16, 1);
    let g = random_complex(&mut r, 16, 1);
    let y = random_butterfly(&mut r, &e, &f);
    let z = random_butterfly(&mut r, &f, &g);
    (y, z)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn operations_produce_valid_butterflies(seed in any::<u64>()) {
        let (y, z) = pair(seed);
        let mut r = rng(seed ^ 1);
        let y2 = random_butterfly(&mut r, y.src(), y.dst());
        prop_assert_eq!(y.validate(), Ok(()));
        prop_assert_eq!(compose(&z, &y).unwrap().validate(), Ok(()));
        prop_assert_eq!(baer_sum(&y, &y2).unwrap().validate(), Ok(()));
        prop_assert_eq!(kernel_b(&y).1.validate(), Ok(()));
        prop_assert_eq!(cokernel_b(&y).1.validate(), Ok(()));
        if let Ok(inv) = invert(&y) {
            prop_assert_eq!(inv.validate(), Ok(()));
        }
        for b in [canonical_image_iso(&y), canonical_coimage_iso(&y)].into_iter().flatten() {
            prop_assert_eq!(b.validate(), Ok(()));
        }
    }

    #[test]
    fn found_two_morphisms_verify(seed in any::<u64>()) {
        let (y, _) = pair(seed);
        let id = compose(&Butterfly::identity(y.dst()), &y).unwrap();
        let t = two_morphism_find(&id, &y).unwrap();
        prop_assert!(t.is_some_and(|t| t.verify()));
    }

    #[test]
    fn classification_flags(seed in any::<u64>()) {
        let (y, _) = pair(seed);
        let c = classify(&y);
        let (h1, h0) = y.homology_action();
        prop_assert_eq!(c.faithful, pip(&y).is_trivial());
        prop_assert_eq!(c.faithful, h1.is_injective());
        prop_assert_eq!(c.cofaithful, copip(&y).is_trivial());
        prop_assert_eq!(c.cofaithful, h0.is_surjective());
        prop_assert_eq!(c.mono, kernel_b(&y).0.is_acyclic());
        prop_assert_eq!(c.epi, cokernel_b(&y).0.is_acyclic());
    }

    #[test]
    fn exactness_formulations_agree(seed in any::<u64>(), which in 0..4u8) {
        let mut r = rng(seed);
        let s = match which {
            0 => random_exact_sequence(&mut r, 16, 1),
            1 => random_degreewise_sequence(&mut r, 16, 1),
            2 => match random_cokernel_sequence(&mut r, 16, 1) {
                Some(s) => s,
                None => return Ok(()),
            },
            _ => {
                let k: Vec<_> = (0..3).map(|_| random_complex(&mut r, 16, 1)).collect();
                from_chain_maps(&ChainMap::zero(&k[0], &k[1]), &ChainMap::zero(&k[1], &k[2])).unwrap()
            }
        };
        let exact = s.is_left_exact() && s.is_right_exact();
        prop_assert_eq!(exact, s.is_exact_definitional());
        prop_assert_eq!(exact, s.is_exact_onto_kernel() && s.z().p().is_surjective());
        prop_assert_eq!(exact, s.is_exact_from_cokernel() && s.y().j().is_injective());
        if exact {
            prop_assert!(s.les().unwrap().is_exact());
        }
    }

    #[test]
    fn edge_maps_of_the_standard_sequences_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let e = random_complex(&mut r, 32, 2);
        let p = presentation_sequence(&e).les().unwrap();
        let t = truncation_sequence(&e).les().unwrap();
        // H^0(E^0) → H^0(E) appears in both
        prop_assert!(p.maps[4].equals(&t.maps[3]).unwrap());
        // H^-1(E) → E^{-1} is δ in one and an edge map in the other
        let from_coker = TwoTermComplex::embed0(e.deg_m1()).homology().h0.projection().inverse().unwrap();
        let from_ker = TwoTermComplex::shift1(e.deg_m1()).homology().h_m1.inclusion().clone();
        let a = from_coker.compose(p.delta()).unwrap();
        let b = from_ker.compose(&t.maps[1]).unwrap();
        prop_assert!(a.equals(&b).unwrap() || a.equals(&b.neg()).unwrap());
        prop_assert!(a.is_injective());
    }

    #[test]
    fn homology_respects_direct_sums(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_complex(&mut r, 32, 2);
        let b = random_complex(&mut r, 32, 2);
        let s = TwoTermComplex::direct_sum(&[&a, &b]);
        let both = |f: fn(&TwoTermComplex) -> &twoterm::fgab::FgAbGroup| {
            twoterm::fgab::FgAbGroup::direct_sum(&[f(&a), f(&b)])
        };
        prop_assert!(s.homology().h_m1().is_isomorphic(&both(|k| k.homology().h_m1())));
        prop_assert!(s.homology().h0().is_isomorphic(&both(|k| k.homology().h0())));
        let id = ChainMap::identity(&a);
        prop_assert!(id.on_h_m1().is_isomorphism() && id.on_h0().is_isomorphism());
        prop_assert!(id.on_h0().equals(&twoterm::fgab::FgAbMap::identity(a.homology().h0())).unwrap());
    }

    #[test]
    fn tor_is_symmetric(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_group(&mut r, 16, 0);
        let b = random_group(&mut r, 16, 0);
        let (ab, ba) = (derived_tensor(&a, &b), derived_tensor(&b, &a));
        prop_assert_eq!(ab.tor1().invariant_factors(), ba.tor1().invariant_factors());
        prop_assert_eq!(ab.tensor().invariant_factors(), ba.tensor().invariant_factors());
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let e = random_complex(&mut r, 32, 2);
        let f = random_complex(&mut r, 32, 2);
        let docs = [
            Document::Complex(e.clone()),
            Document::Butterfly(random_butterfly(&mut r, &e, &f)),
            Document::Sequence(random_exact_sequence(&mut r, 16, 1)),
            Document::Group(random_group(&mut r, 64, 2)),
        ];
        for d in &docs {
            let s = json::document_to_string(d);
            let back = json::parse_document(&s, None).unwrap();
            prop_assert_eq!(back.kind(), d.kind());
            prop_assert_eq!(json::document_to_string(&back), s);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn two_morphism_search_is_complete_on_small_carriers(seed in any::<u64>()) {
        let mut r = rng(seed);
        let e = random_complex(&mut r, 8, 0);
        let f = random_complex(&mut r, 8, 0);
        let a = random_butterfly(&mut r, &e, &f);
        let b = random_butterfly(&mut r, &e, &f);
        let small = |y: &Butterfly| y.carrier().order().is_some_and(|o| o <= 32.into());
        prop_assume!(small(&a) && small(&b));
        let (ea, eb) = (oracle::realize_butterfly(&a).unwrap(), oracle::realize_butterfly(&b).unwrap());
        let found = two_morphism_find(&a, &b).unwrap();
        prop_assert_eq!(found.is_some(), oracle::two_morphism_exists(&ea, &eb).unwrap());
    }
}

#[test]
fn les_of_the_multiplication_sequence_has_delta_two() {
    let e2 = twoterm::fixtures::e2();
    let les = truncation_sequence(&e2).les().unwrap();
    assert_eq!(les.delta().matrix().get(0, 0), &2.into());
    assert!(presentation_sequence(&e2).les().unwrap().is_exact());
}
