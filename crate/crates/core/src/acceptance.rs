//! The acceptance criteria as runnable checks, shared by the `acceptance`
//! test target and `twoterm selftest`.

use std::fmt;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::butterfly::{
    baer_sum, canonical_coimage_iso, canonical_image_iso, classify, cokernel_b, compose, copip, invert, is_invertible,
    kernel_b, middle_exact_iso, pip, random_butterfly, random_complex, two_morphism_find, Butterfly, Wing,
};
use crate::derived::{biext_groups, derived_tensor};
use crate::error::Axiom;
use crate::exactness::{
    presentation_sequence, random_exact_sequence, shift_sequence, truncation_sequence, ZeroWitness,
};
use crate::fgab::{ext1, hom_group, Extension, FgAbGroup, FgAbMap};
use crate::fixtures;
use crate::json::{self, Document};
use crate::oracle::{self, ElementButterfly, ElementMap, ElementSubquotient, FiniteGroup};
use crate::twocomplex::TwoTermComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Full,
    /// A tenth of each sample count and no runtime targets.
    Quick,
}

impl Scale {
    fn count(self, n: usize) -> usize {
        match self {
            Scale::Full => n,
            Scale::Quick => (n / 10).max(3),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Option<Duration>,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "criterion {:>2} [{}] {verdict}: {} ({:.1}s",
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64()
        )?;
        match self.budget {
            Some(b) => write!(f, ", target < {}s)", b.as_secs()),
            None => write!(f, ")"),
        }
    }
}

pub const TITLES: [&str; 10] = [
    "axiom suite",
    "category laws",
    "functoriality",
    "invertibility criteria",
    "kernels and cokernels",
    "long exact sequence",
    "oracle differential",
    "Bockstein fixture",
    "derived and Biext",
    "command line",
];

const BUDGETS: [Option<u64>; 10] = [Some(30), Some(120), Some(60), None, None, None, Some(300), None, None, None];

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

trait Context<T> {
    fn ctx(self, what: &str) -> std::result::Result<T, String>;
}

impl<T, E: fmt::Display> Context<T> for std::result::Result<T, E> {
    fn ctx(self, what: &str) -> std::result::Result<T, String> {
        self.map_err(|e| format!("{what}: {e}"))
    }
}

fn seeded(id: u32) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + id as u64)
}

fn finish(id: u32, scale: Scale, start: Instant, outcome: Outcome) -> CriterionReport {
    let elapsed = start.elapsed();
    let budget = BUDGETS[id as usize - 1].map(Duration::from_secs);
    let (mut passed, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let (Scale::Full, Some(b)) = (scale, budget) {
        if passed && elapsed >= b {
            passed = false;
            detail = format!("{detail}; over the runtime target");
        }
    }
    CriterionReport { id, title: TITLES[id as usize - 1], passed, detail, elapsed, budget }
}

/// Runs criterion `id` (1 to 9).
pub fn run(id: u32, scale: Scale) -> CriterionReport {
    let start = Instant::now();
    let outcome = match id {
        1 => axiom_suite(scale),
        2 => category_laws(scale),
        3 => functoriality(scale),
        4 => invertibility(scale),
        5 => kernels_and_cokernels(scale),
        6 => long_exact_sequences(scale),
        7 => oracle_differential(scale),
        8 => bockstein(),
        9 => derived_and_biext(scale),
        _ => Err(format!("criterion {id} needs the command-line harness")),
    };
    finish(id, scale, start, outcome)
}

/// Criteria 1 to 9.
pub fn run_suites(scale: Scale) -> Vec<CriterionReport> {
    (1..=9).map(|id| run(id, scale)).collect()
}

fn iso(a: &Butterfly, b: &Butterfly) -> std::result::Result<bool, String> {
    Ok(two_morphism_find(a, b).ctx("two_morphism_find")?.is_some())
}

struct Mutation {
    fixture: &'static str,
    wing: Wing,
    row: usize,
    col: usize,
    delta: i64,
    expect: Axiom,
}

const fn mutation(fixture: &'static str, wing: Wing, row: usize, col: usize, delta: i64, expect: Axiom) -> Mutation {
    Mutation { fixture, wing, row, col, delta, expect }
}

/// Single-entry changes that keep the wing a homomorphism but change it, each
/// with the first axiom it breaks.
const MUTATIONS: [Mutation; 20] = [
    mutation("B", Wing::Q, 0, 0, 1, Axiom::ExactAtCarrier),
    mutation("IK2", Wing::I, 0, 0, 1, Axiom::TrianglePi),
    mutation("IK2", Wing::I, 1, 0, 1, Axiom::ExactAtDstDegM1),
    mutation("IK2", Wing::J, 0, 0, 1, Axiom::TriangleQj),
    mutation("IK2", Wing::P, 0, 1, 1, Axiom::TrianglePi),
    mutation("IK2", Wing::Q, 0, 0, 1, Axiom::ExactAtCarrier),
    mutation("IK2", Wing::Q, 0, 1, 1, Axiom::TriangleQj),
    mutation("Br", Wing::J, 0, 0, 1, Axiom::TriangleQj),
    mutation("Br", Wing::Q, 0, 0, 1, Axiom::TriangleQj),
    mutation("IE2", Wing::I, 0, 0, 1, Axiom::TrianglePi),
    mutation("IE2", Wing::J, 1, 0, 1, Axiom::CompositePj),
    mutation("IE2", Wing::P, 0, 0, 1, Axiom::CompositePj),
    mutation("IE2", Wing::Q, 0, 1, -1, Axiom::TriangleQj),
    mutation("zeroE2", Wing::I, 0, 0, 1, Axiom::ExactAtCarrier),
    mutation("zeroE2", Wing::J, 1, 0, 2, Axiom::CompositePj),
    mutation("zeroE2", Wing::P, 0, 1, -1, Axiom::TrianglePi),
    mutation("zeroE2", Wing::Q, 0, 1, 1, Axiom::ExactAtCarrier),
    mutation("zeroK2", Wing::I, 1, 0, 1, Axiom::ExactAtDstDegM1),
    mutation("zeroK2", Wing::P, 0, 1, 1, Axiom::TrianglePi),
    mutation("zeroZ", Wing::Q, 0, 0, 1, Axiom::ExactAtSrcDeg0),
];

fn mutation_fixture(name: &str) -> Butterfly {
    match name {
        "zeroE2" => Butterfly::zero(&fixtures::e2(), &fixtures::e2()),
        "zeroZ" => {
            Butterfly::zero(&TwoTermComplex::embed0(&FgAbGroup::free(1)), &TwoTermComplex::shift1(&FgAbGroup::free(1)))
        }
        other => fixtures::butterfly_by_name(other).expect("catalog names a fixture"),
    }
}

fn axiom_suite(scale: Scale) -> Outcome {
    let mut rng = seeded(1);
    let n = scale.count(500);
    let (mut split, mut nonsplit) = (0, 0);
    for k in 0..n {
        let e = random_complex(&mut rng, 64, 3);
        let f = random_complex(&mut rng, 64, 3);
        let y = random_butterfly(&mut rng, &e, &f);
        if let Err(a) = y.validate() {
            return Err(format!("random butterfly {k} refused: {a}"));
        }
        let ext = ext1(e.deg_0(), f.deg_m1());
        let x = Extension { carrier: y.carrier().clone(), incl: y.i().clone(), proj: y.q().clone() };
        let class = ext.classify(&x).ctx("classify")?;
        if ext.is_zero_class(&class) {
            split += 1;
        } else {
            nonsplit += 1;
        }
    }
    ensure(split > 0 && nonsplit > 0, || format!("Ext classes not mixed: {split} split, {nonsplit} non-split"))?;
    for (k, m) in MUTATIONS.iter().enumerate() {
        let y = mutation_fixture(m.fixture);
        ensure(y.is_valid(), || format!("fixture {} is not valid", m.fixture))?;
        let w = y.wing(m.wing);
        let mut entries = w.matrix().clone();
        *entries.get_mut(m.row, m.col) += BigInt::from(m.delta);
        let changed = FgAbMap::new(w.src().clone(), w.dst().clone(), entries).ctx("mutated wing")?;
        ensure(!changed.equals(w).unwrap_or(true), || format!("mutation {k} does not change the wing"))?;
        let got = y.with_wing(m.wing, changed).ctx("mutated butterfly")?.validate();
        ensure(got == Err(m.expect), || format!("mutation {k}: expected `{}`, got {got:?}", m.expect))?;
    }
    Ok(format!(
        "{n} random butterflies valid ({split} split, {nonsplit} non-split); {} mutations refused",
        MUTATIONS.len()
    ))
}

fn category_laws(scale: Scale) -> Outcome {
    let mut rng = seeded(2);
    let n = scale.count(100);
    for k in 0..n {
        let c: Vec<TwoTermComplex> = (0..4).map(|_| random_complex(&mut rng, 16, 1)).collect();
        let y = random_butterfly(&mut rng, &c[0], &c[1]);
        let z = random_butterfly(&mut rng, &c[1], &c[2]);
        let w = random_butterfly(&mut rng, &c[2], &c[3]);
        let left = compose(&compose(&w, &z).ctx("compose")?, &y).ctx("compose")?;
        let right = compose(&w, &compose(&z, &y).ctx("compose")?).ctx("compose")?;
        ensure(iso(&left, &right)?, || format!("triple {k}: associativity fails"))?;
        let ly = compose(&y, &Butterfly::identity(&c[0])).ctx("compose")?;
        let ry = compose(&Butterfly::identity(&c[1]), &y).ctx("compose")?;
        ensure(iso(&ly, &y)? && iso(&ry, &y)?, || format!("triple {k}: identity law fails"))?;
    }
    Ok(format!("{n} triples associative up to 2-isomorphism; identity laws hold"))
}

fn functoriality(scale: Scale) -> Outcome {
    let mut rng = seeded(3);
    let n = scale.count(200);
    for k in 0..n {
        let c: Vec<TwoTermComplex> = (0..3).map(|_| random_complex(&mut rng, 16, 1)).collect();
        let y = random_butterfly(&mut rng, &c[0], &c[1]);
        let z = random_butterfly(&mut rng, &c[1], &c[2]);
        let zy = compose(&z, &y).ctx("compose")?.homology_action();
        let (ya, za) = (y.homology_action(), z.homology_action());
        let m1 = zy.0.equals(&za.0.compose(&ya.0).ctx("compose")?).ctx("compare")?;
        let h0 = zy.1.equals(&za.1.compose(&ya.1).ctx("compose")?).ctx("compare")?;
        ensure(m1 && h0, || format!("pair {k}: induced maps differ (H^-1 {m1}, H^0 {h0})"))?;
    }
    Ok(format!("{n} pairs with (Z∘Y)_* = Z_*∘Y_* on H^-1 and H^0"))
}

/// The reflection `(j, i, -q, -p)` is a butterfly and a two-sided inverse.
fn has_two_sided_inverse(y: &Butterfly) -> std::result::Result<bool, String> {
    let Ok(r) = Butterfly::assemble(y.dst(), y.src(), y.j().clone(), y.i().clone(), y.q().neg(), y.p().neg()) else {
        return Ok(false);
    };
    if !r.is_valid() {
        return Ok(false);
    }
    let there = compose(&r, y).ctx("compose")?;
    let back = compose(y, &r).ctx("compose")?;
    Ok(iso(&there, &Butterfly::identity(y.src()))? && iso(&back, &Butterfly::identity(y.dst()))?)
}

fn homology_isomorphisms(y: &Butterfly) -> bool {
    let (a, b) = y.homology_action();
    a.is_isomorphism() && b.is_isomorphism()
}

fn invertibility(scale: Scale) -> Outcome {
    let mut rng = seeded(4);
    let n = scale.count(200);
    let (k2, e2) = (fixtures::k2(), fixtures::e2());
    let mut cases: Vec<(String, Butterfly)> = vec![
        ("B".into(), fixtures::b()),
        ("IK2".into(), fixtures::ik2()),
        ("Br".into(), fixtures::br()),
        ("IE2".into(), Butterfly::identity(&e2)),
        ("zero K2".into(), Butterfly::zero(&k2, &k2)),
        ("zero E2".into(), Butterfly::zero(&e2, &e2)),
    ];
    while cases.len() < n {
        let e = random_complex(&mut rng, 16, 1);
        let f = random_complex(&mut rng, 16, 1);
        let y = random_butterfly(&mut rng, &e, &f);
        let k = cases.len();
        cases.push(match rng.gen_range(0..5) {
            0 => (format!("random {k}"), y),
            1 => (format!("image iso {k}"), canonical_image_iso(&y).ctx("canonical_image_iso")?),
            2 => (format!("coimage iso {k}"), canonical_coimage_iso(&y).ctx("canonical_coimage_iso")?),
            3 => (format!("endomorphism {k}"), random_butterfly(&mut rng, &e, &e)),
            _ => (format!("zero {k}"), Butterfly::zero(&e, &f)),
        });
    }
    let (mut yes, mut no) = (0, 0);
    for (name, y) in &cases {
        let a = has_two_sided_inverse(y)?;
        let b = homology_isomorphisms(y);
        let c = is_invertible(y);
        ensure(a == b && b == c, || format!("{name}: inverse {a}, homology {b}, exactness {c}"))?;
        if c {
            yes += 1;
        } else {
            no += 1;
        }
    }
    ensure(is_invertible(&fixtures::b()), || "B is not invertible".into())?;
    for (name, y) in &cases {
        let nontrivial = !y.src().is_acyclic() || !y.dst().is_acyclic();
        if name.starts_with("zero") && nontrivial && is_invertible(y) {
            return Err(format!("{name} is invertible"));
        }
    }
    ensure(yes > 0 && no > 0, || format!("no mix: {yes} invertible, {no} not"))?;
    Ok(format!("{} butterflies, three criteria agree ({yes} invertible, {no} not)", cases.len()))
}

fn kernels_and_cokernels(scale: Scale) -> Outcome {
    let mut rng = seeded(5);
    let n = scale.count(100);
    let (mut monos, mut epis, mut middles) = (0, 0, 0);
    for k in 0..n {
        let e = random_complex(&mut rng, 16, 1);
        let f = if rng.gen_bool(0.3) { e.clone() } else { random_complex(&mut rng, 16, 1) };
        let y = if k % 7 == 0 { Butterfly::identity(&e) } else { random_butterfly(&mut rng, &e, &f) };
        let cls = classify(&y);
        let (kc, kappa) = kernel_b(&y);
        ensure(ZeroWitness::find(&kappa, &y).ctx("witness")?.is_some(), || format!("Y {k}: Y∘ker has no witness"))?;
        ensure(cls.mono == kc.is_acyclic(), || {
            format!("Y {k}: mono {} but kernel acyclic {}", cls.mono, kc.is_acyclic())
        })?;
        let (cc, pi) = cokernel_b(&y);
        ensure(ZeroWitness::find(&y, &pi).ctx("witness")?.is_some(), || format!("Y {k}: coker∘Y has no witness"))?;
        ensure(cls.epi == cc.is_acyclic(), || {
            format!("Y {k}: epi {} but cokernel acyclic {}", cls.epi, cc.is_acyclic())
        })?;
        if let Ok(b) = canonical_coimage_iso(&y) {
            ensure(is_invertible(&b), || format!("Y {k}: coimage iso not invertible"))?;
        }
        if let Ok(b) = canonical_image_iso(&y) {
            ensure(is_invertible(&b), || format!("Y {k}: image iso not invertible"))?;
        }
        if let Ok(chain) = middle_exact_iso(&y) {
            middles += 1;
            ensure(chain.iter().all(is_invertible), || format!("Y {k}: middle-exact chain not invertible"))?;
        }
        monos += cls.mono as usize;
        epis += cls.epi as usize;
    }
    ensure(monos > 0 && epis > 0 && middles > 0, || {
        format!("degenerate sample: {monos} mono, {epis} epi, {middles} middle-exact")
    })?;
    Ok(format!("{n} butterflies ({monos} mono, {epis} epi, {middles} middle-exact chains)"))
}

fn long_exact_sequences(scale: Scale) -> Outcome {
    let mut rng = seeded(6);
    let n = scale.count(50);
    for k in 0..n {
        let e = random_complex(&mut rng, 16, 1);
        for (name, s) in [
            ("presentation", presentation_sequence(&e)),
            ("truncation", truncation_sequence(&e)),
            ("shift", shift_sequence(&e)),
        ] {
            let les = s.les().ctx("les")?;
            ensure(les.is_exact(), || format!("complex {k}, sequence {name}: exactness {:?}", les.exactness()))?;
        }
    }
    let m = scale.count(300);
    for k in 0..m {
        let s = random_exact_sequence(&mut rng, 16, 1);
        let les = s.les().ctx("les")?;
        ensure(les.is_exact(), || format!("random sequence {k}: exactness {:?}", les.exactness()))?;
    }
    let les = truncation_sequence(&fixtures::e2()).les().ctx("les")?;
    let d = les.delta();
    let two = FgAbMap::from_i64(d.src(), d.dst(), &[2]).ctx("×2")?;
    ensure(d.src().to_string() == "Z" && d.dst().to_string() == "Z", || format!("δ runs {} → {}", d.src(), d.dst()))?;
    ensure(d.equals(&two).ctx("compare")?, || format!("δ is {} instead of ×2", d.matrix()))?;
    Ok(format!("{} standard and {m} random sequences exact at all six places; δ(E2) = ×2", 3 * n))
}

/// `ψ_m1: H^{-1}` and `ψ_0: H^0` of `k` at presentation level, read into the
/// element-level homology of `d`, checked to be bijective homomorphisms.
fn homology_bridges(
    k: &TwoTermComplex,
    ker: &ElementSubquotient,
    coker: &ElementSubquotient,
) -> std::result::Result<(ElementMap, ElementMap), String> {
    let h = k.homology();
    let e1 = oracle::realize(k.deg_m1()).ctx("realize")?;
    let e0 = oracle::realize(k.deg_0()).ctx("realize")?;
    let hm1 = oracle::realize(h.h_m1()).ctx("realize")?;
    let h0 = oracle::realize(h.h0()).ctx("realize")?;
    let incl = h.h_m1.inclusion();
    let psi_m1 = ElementMap::from_fn(&hm1.group, &ker.group, |c| {
        let mut x = hm1.coords(c);
        x.resize(incl.src().ngens(), BigInt::from(0));
        ker.project(e1.element(&incl.matrix().mul_vec(&x))).unwrap_or(usize::MAX)
    });
    let psi_0 = ElementMap::from_fn(&h0.group, &coker.group, |c| {
        let mut x = h0.coords(c);
        x.resize(k.deg_0().ngens(), BigInt::from(0));
        coker.project(e0.element(&x)).unwrap_or(usize::MAX)
    });
    let (psi_m1, psi_0) = (psi_m1.ctx("H^-1 bridge")?, psi_0.ctx("H^0 bridge")?);
    ensure(psi_m1.is_injective() && psi_m1.is_surjective(), || "H^-1 bridge is not bijective".into())?;
    ensure(psi_0.is_injective() && psi_0.is_surjective(), || "H^0 bridge is not bijective".into())?;
    Ok((psi_m1, psi_0))
}

fn factors(g: &FgAbGroup) -> Vec<u64> {
    g.invariant_factors().torsion_u64()
}

fn complex_factors(k: &TwoTermComplex) -> [Vec<u64>; 2] {
    [factors(k.homology().h_m1()), factors(k.homology().h0())]
}

fn element_complex_factors(d: &ElementMap) -> std::result::Result<[Vec<u64>; 2], String> {
    let (a, b) = oracle::element_complex_homology(d).ctx("element homology")?;
    Ok([a.invariant_factors(), b.invariant_factors()])
}

fn small(y: &Butterfly) -> bool {
    y.carrier().order().and_then(|o| o.to_u64()).is_some_and(|o| o <= 32)
}

fn oracle_differential(scale: Scale) -> Outcome {
    let mut rng = seeded(7);
    let target = scale.count(200);
    let (mut checked, mut attempts, mut iso_yes, mut iso_no) = (0, 0, 0, 0);
    while checked < target && attempts < 20 * target {
        attempts += 1;
        let c: Vec<TwoTermComplex> = (0..3).map(|_| random_complex(&mut rng, 16, 0)).collect();
        let y = random_butterfly(&mut rng, &c[0], &c[1]);
        let z = random_butterfly(&mut rng, &c[1], &c[2]);
        let y2 = random_butterfly(&mut rng, &c[0], &c[1]);
        let zy = compose(&z, &y).ctx("compose")?;
        if ![&y, &z, &y2, &zy].iter().all(|b| small(b)) {
            continue;
        }
        checked += 1;
        let ey = oracle::realize_butterfly(&y).ctx("realize")?;
        let ez = oracle::realize_butterfly(&z).ctx("realize")?;
        let ey2 = oracle::realize_butterfly(&y2).ctx("realize")?;
        ensure(ey.is_valid() && ez.is_valid() && ey2.is_valid(), || {
            format!("instance {checked}: element axioms fail")
        })?;

        // homology of the complexes, with explicit isomorphisms
        let act = ey.homology_action().ctx("element action")?;
        let (pe1, pe0) = homology_bridges(&c[0], &act.src_m1, &act.src_0)?;
        let (pf1, pf0) = homology_bridges(&c[1], &act.dst_m1, &act.dst_0)?;
        let (a1, a0) = y.homology_action();
        let hm1 = |g: &FgAbGroup| oracle::realize(g).ctx("realize");
        let a1e = oracle::realize_map(&a1, &hm1(a1.src())?, &hm1(a1.dst())?).ctx("realize action")?;
        let a0e = oracle::realize_map(&a0, &hm1(a0.src())?, &hm1(a0.dst())?).ctx("realize action")?;
        let lhs1 = act.on_m1.compose(&pe1).ctx("compose")?;
        let rhs1 = pf1.compose(&a1e).ctx("compose")?;
        let lhs0 = act.on_0.compose(&pe0).ctx("compose")?;
        let rhs0 = pf0.compose(&a0e).ctx("compose")?;
        ensure(lhs1.table() == rhs1.table() && lhs0.table() == rhs0.table(), || {
            format!("instance {checked}: homology action tables differ")
        })?;

        // composition up to an explicit carrier isomorphism
        let composite = ElementButterfly::compose(&ez, &ey).ctx("element compose")?;
        let ezy = oracle::realize_butterfly(&zy).ctx("realize")?;
        ensure(oracle::two_morphism_exists(&ezy, &composite).ctx("enumerate")?, || {
            format!("instance {checked}: composites are not 2-isomorphic")
        })?;

        // kernels, cokernels, pips, copips
        let (kc, _) = kernel_b(&y);
        let (cc, _) = cokernel_b(&y);
        ensure(complex_factors(&kc) == element_complex_factors(&ey.kernel_complex().ctx("kernel")?)?, || {
            format!("instance {checked}: kernel homology differs")
        })?;
        ensure(complex_factors(&cc) == element_complex_factors(&ey.cokernel_complex().ctx("cokernel")?)?, || {
            format!("instance {checked}: cokernel homology differs")
        })?;
        ensure(factors(&pip(&y)) == ey.pip().ctx("pip")?.invariant_factors(), || {
            format!("instance {checked}: pip differs")
        })?;
        ensure(factors(&copip(&y)) == ey.copip().ctx("copip")?.invariant_factors(), || {
            format!("instance {checked}: copip differs")
        })?;

        // existence of 2-morphisms, both ways round
        for (a, b, ea, eb) in [(&y, &y2, &ey, &ey2), (&y, &y, &ey, &ey)] {
            let presented = iso(a, b)?;
            let enumerated = oracle::two_morphism_exists(ea, eb).ctx("enumerate")?;
            ensure(presented == enumerated, || {
                format!("instance {checked}: two_morphism_find says {presented}, enumeration says {enumerated}")
            })?;
            if presented {
                iso_yes += 1;
            } else {
                iso_no += 1;
            }
        }
    }
    ensure(checked == target, || format!("only {checked} of {target} instances had carriers of order ≤ 32"))?;
    ensure(iso_no > 0, || "no pair without a 2-morphism was sampled".into())?;
    Ok(format!("{checked} finite instances agree ({iso_yes} 2-isomorphic pairs, {iso_no} not)"))
}

fn bockstein() -> Outcome {
    let b = fixtures::b();
    let k2 = fixtures::k2();
    let id = Butterfly::identity(&k2);
    ensure(is_invertible(&b), || "B is not invertible".into())?;
    ensure(!iso(&b, &id)?, || "B is 2-isomorphic to identity(K2)".into())?;
    let bb = compose(&b, &b).ctx("compose")?;
    ensure(iso(&bb, &id)?, || "B∘B is not 2-isomorphic to identity(K2)".into())?;
    let inv = invert(&b).ctx("invert")?;
    ensure(iso(&inv, &b)?, || "B is not its own inverse".into())?;
    let sum = baer_sum(&b, &b).ctx("baer_sum")?;
    let neutral = Butterfly::zero(&k2, &k2);
    ensure(iso(&sum, &neutral)?, || "B + B is not the neutral class".into())?;
    ensure(!iso(&b, &neutral)?, || "B is in the neutral class".into())?;
    ensure(iso(&baer_sum(&b, &neutral).ctx("baer_sum")?, &b)?, || "B + 0 is not B".into())?;
    Ok("B invertible, B ≄ id, B∘B ≅ id, B + B ≅ 0 ≄ B".into())
}

fn derived_and_biext(scale: Scale) -> Outcome {
    for a in 1..=12u64 {
        for b in 1..=12u64 {
            let t = derived_tensor(&FgAbGroup::cyclic(a), &FgAbGroup::cyclic(b));
            let zb = std::sync::Arc::new(FiniteGroup::cyclic_sum(&[b]).ctx("oracle")?);
            let times_a = ElementMap::from_fn(&zb, &zb, |x| zb.scale(a as i64, x)).ctx("oracle")?;
            let expected = oracle::element_kernel(&times_a).ctx("oracle")?.group.invariant_factors();
            let g = a.gcd(&b);
            ensure(expected == if g == 1 { vec![] } else { vec![g] }, || format!("oracle Tor(Z/{a},Z/{b})"))?;
            ensure(factors(t.tor1()) == expected, || format!("Tor(Z/{a},Z/{b}) = {}", t.tor1()))?;
        }
    }
    let mut rng = seeded(9);
    for _ in 0..scale.count(30) {
        let a = crate::butterfly::random_group(&mut rng, 16, 0);
        let b = crate::butterfly::random_group(&mut rng, 16, 0);
        let (ab, ba) = (derived_tensor(&a, &b), derived_tensor(&b, &a));
        ensure(ab.tor1().is_isomorphic(ba.tor1()), || format!("Tor not symmetric on {a}, {b}"))?;
        ensure(ab.tensor().is_isomorphic(ba.tensor()), || format!("⊗ not symmetric on {a}, {b}"))?;
    }
    let g = |s: &str| -> FgAbGroup { s.parse().expect("shorthand") };
    let x = biext_groups(&g("Z/2"), &g("Z/2"), &g("Z")).ctx("biext")?;
    ensure(x.pi1.is_trivial() && x.pi0.to_string() == "Z/2", || format!("biext(Z/2,Z/2,Z) = ({}, {})", x.pi1, x.pi0))?;
    ensure(x.filtration_is_exact(), || "filtration of biext(Z/2,Z/2,Z) is not exact".into())?;
    for (a, b) in [("Z/2", "Z/2"), ("Z/2", "Z/4"), ("Z/6", "Z/4"), ("Z/3", "Z/9")] {
        let k = oracle::realize_complex(&derived_tensor(&g(a), &g(b)).complex).ctx("realize")?;
        let enumerated = oracle::pi0_into_shifted_integers(&k).ctx("enumerate")?;
        let x = biext_groups(&g(a), &g(b), &g("Z")).ctx("biext")?;
        ensure(x.pi1.is_trivial() && factors(&x.pi0) == enumerated, || {
            format!("biext({a},{b},Z): pi0 {} vs enumerated {enumerated:?}", x.pi0)
        })?;
    }
    for (a, b, c) in [("Z/2", "Z/2", "Z/2"), ("Z/2", "Z/4", "Z/2"), ("Z/2", "Z/2", "Z/4"), ("Z/3", "Z/3", "Z/3")] {
        let k = oracle::realize_complex(&derived_tensor(&g(a), &g(b)).complex).ctx("realize")?;
        let cg = oracle::realize(&g(c)).ctx("realize")?.group;
        let (n0, n1) = oracle::count_butterflies_into_shift(&k, &cg).ctx("enumerate")?;
        let x = biext_groups(&g(a), &g(b), &g(c)).ctx("biext")?;
        let order = |h: &FgAbGroup| h.order().and_then(|o| o.to_usize());
        ensure(order(&x.pi0) == Some(n0) && order(&x.pi1) == Some(n1), || {
            format!("biext({a},{b},{c}) = ({}, {}) but enumeration counts ({n1}, {n0})", x.pi1, x.pi0)
        })?;
    }
    for b in ["Z", "Z/2", "Z/6", "Z/4+Z"] {
        for c in ["Z", "Z/2", "Z/6", "0"] {
            let x = biext_groups(&g("Z"), &g(b), &g(c)).ctx("biext")?;
            ensure(x.pi1.is_isomorphic(hom_group(&g(b), &g(c)).group()), || {
                format!("biext(Z,{b},{c}) pi1 = {}", x.pi1)
            })?;
            ensure(x.pi0.is_isomorphic(ext1(&g(b), &g(c)).group()), || format!("biext(Z,{b},{c}) pi0 = {}", x.pi0))?;
        }
        let x = biext_groups(&g(b), &g("Z/6"), &g("0")).ctx("biext")?;
        ensure(x.pi0.is_trivial() && x.pi1.is_trivial(), || format!("biext({b},Z/6,0) is not (0, 0)"))?;
    }
    Ok("Tor table 12x12 matches; Biext matches enumeration; free and zero cases collapse".into())
}

/// One case of the command-line golden set.
struct GoldenCase {
    name: String,
    args: Vec<String>,
    exit: i32,
    stdout: Option<String>,
    stderr: Option<String>,
}

fn golden_cases(dir: &Path) -> std::result::Result<Vec<GoldenCase>, String> {
    let text = std::fs::read_to_string(dir.join("cases.json")).ctx("cases.json")?;
    let v: Value = serde_json::from_str(&text).ctx("cases.json")?;
    let cases = v.as_array().ok_or("cases.json must be an array")?;
    cases
        .iter()
        .map(|c| {
            let s = |k: &str| c.get(k).and_then(Value::as_str).map(str::to_string);
            Ok(GoldenCase {
                name: s("name").ok_or("case without a name")?,
                args: c
                    .get("args")
                    .and_then(Value::as_array)
                    .ok_or("case without args")?
                    .iter()
                    .map(|a| a.as_str().unwrap_or_default().replace("$GOLDEN", &dir.display().to_string()))
                    .collect(),
                exit: c.get("exit").and_then(Value::as_i64).ok_or("case without an exit code")? as i32,
                stdout: s("stdout"),
                stderr: s("stderr"),
            })
        })
        .collect()
}

/// Criterion 10, against the `twoterm` binary at `bin` and the golden set in
/// `golden` (a directory holding `cases.json` and its input documents).
pub fn run_cli(bin: &Path, golden: &Path, scale: Scale) -> CriterionReport {
    let start = Instant::now();
    let outcome = cli_checks(bin, golden, scale);
    finish(10, scale, start, outcome)
}

fn cli_checks(bin: &Path, golden: &Path, scale: Scale) -> Outcome {
    let run = |args: &[String]| Command::new(bin).args(args).output().ctx("spawn twoterm");

    let selftest = run(&["selftest".into(), "--quick".into()])?;
    let out = String::from_utf8_lossy(&selftest.stdout);
    let lines = out.lines().filter(|l| l.starts_with("criterion")).count();
    ensure(selftest.status.code() == Some(0) && lines == 9, || {
        format!("selftest --quick: exit {:?}, {lines} lines", selftest.status.code())
    })?;

    // round trips through the library and through `gen`
    let mut rng = seeded(10);
    let mut docs = vec![
        Document::Butterfly(fixtures::b()),
        Document::Complex(fixtures::e2()),
        Document::Sequence(truncation_sequence(&fixtures::e2())),
        Document::Map(fixtures::r().f_0().clone()),
        Document::Group("Z/2+Z/4+Z".parse().expect("shorthand")),
    ];
    for _ in 0..scale.count(20) {
        let e = random_complex(&mut rng, 32, 2);
        let f = random_complex(&mut rng, 32, 2);
        docs.push(Document::Butterfly(random_butterfly(&mut rng, &e, &f)));
        docs.push(Document::Sequence(random_exact_sequence(&mut rng, 16, 1)));
    }
    for (k, d) in docs.iter().enumerate() {
        let s = json::document_to_string(d);
        let back = json::parse_document(&s, None).ctx("reparse")?;
        ensure(json::document_to_string(&back) == s, || format!("document {k} does not round-trip"))?;
    }
    for kind in ["butterfly", "sequence", "complex"] {
        let once = run(&["gen".into(), kind.into(), "--seed".into(), "7".into()])?;
        let tmp = std::env::temp_dir().join(format!("twoterm-roundtrip-{}-{kind}.json", std::process::id()));
        std::fs::write(&tmp, &once.stdout).ctx("write")?;
        let again = run(&["roundtrip".into(), tmp.display().to_string()])?;
        let valid = run(&["validate".into(), tmp.display().to_string()])?;
        let _ = std::fs::remove_file(&tmp);
        ensure(once.status.success() && again.stdout == once.stdout, || format!("gen {kind} does not round-trip"))?;
        ensure(valid.status.code() == Some(0), || format!("gen {kind} does not validate"))?;
    }

    let cases = golden_cases(golden)?;
    for c in &cases {
        let out = run(&c.args)?;
        let (so, se) = (String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr));
        ensure(out.status.code() == Some(c.exit), || {
            format!("{}: exit {:?}, expected {} ({se})", c.name, out.status.code(), c.exit)
        })?;
        if let Some(want) = &c.stdout {
            ensure(so.contains(want.as_str()), || format!("{}: stdout lacks `{want}`", c.name))?;
        }
        if let Some(want) = &c.stderr {
            ensure(se.contains(want.as_str()), || format!("{}: stderr lacks `{want}`", c.name))?;
        }
    }
    ensure(cases.len() == 10, || format!("golden set has {} cases", cases.len()))?;
    Ok(format!(
        "selftest ran 9 suites; {} documents round-trip; {} golden cases honor exit codes",
        docs.len() + 3,
        cases.len()
    ))
}
