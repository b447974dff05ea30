use super::Butterfly;
use crate::error::{Error, Result};
use crate::fgab::{FgAbMap, HomProblem};

/// A carrier isomorphism `m: Y → Y'` commuting with all four wings.
#[derive(Clone, Debug)]
pub struct TwoMorphism {
    pub from: Butterfly,
    pub to: Butterfly,
    pub m: FgAbMap,
    pub inverse: FgAbMap,
}

impl TwoMorphism {
    /// Rechecks the commutations and that `inverse` is a two-sided inverse.
    pub fn verify(&self) -> bool {
        let (a, b, m) = (&self.from, &self.to, &self.m);
        let eq = |x: Result<FgAbMap>, y: &FgAbMap| x.and_then(|x| x.equals(y)).unwrap_or(false);
        eq(m.compose(a.i()), b.i())
            && eq(m.compose(a.j()), b.j())
            && eq(b.p().compose(m), a.p())
            && eq(b.q().compose(m), a.q())
            && eq(self.inverse.compose(m), &FgAbMap::identity(a.carrier()))
            && eq(m.compose(&self.inverse), &FgAbMap::identity(b.carrier()))
    }
}

fn wing_problem(a: &Butterfly, b: &Butterfly) -> Result<HomProblem> {
    HomProblem::new(a.carrier(), b.carrier())
        .precompose(a.i(), b.i())?
        .precompose(a.j(), b.j())?
        .postcompose(b.p(), a.p())?
        .postcompose(b.q(), a.q())
}

/// Searches for a 2-morphism `a ⇒ b`. `Ok(None)` when none exists.
pub fn two_morphism_find(a: &Butterfly, b: &Butterfly) -> Result<Option<TwoMorphism>> {
    if a.src() != b.src() || a.dst() != b.dst() {
        return Err(Error::EndpointMismatch("2-morphisms need parallel butterflies".into()));
    }
    let Some(m) = wing_problem(a, b)?.solve() else {
        return Ok(None);
    };
    let inverse = wing_problem(b, a)?
        .precompose(&m, &FgAbMap::identity(a.carrier()))?
        .postcompose(&m, &FgAbMap::identity(b.carrier()))?
        .solve();
    Ok(inverse.map(|inverse| TwoMorphism { from: a.clone(), to: b.clone(), m, inverse }))
}

/// The whole space of wing-commuting carrier maps `a → b`.
pub fn two_morphism_directions(a: &Butterfly, b: &Butterfly) -> Result<Option<crate::fgab::HomSolutions>> {
    if a.src() != b.src() || a.dst() != b.dst() {
        return Err(Error::EndpointMismatch("2-morphisms need parallel butterflies".into()));
    }
    Ok(wing_problem(a, b)?.solve_all())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn self_and_cross_searches() {
        let b = fixtures::b();
        let t = two_morphism_find(&b, &b).unwrap().expect("identity");
        assert!(t.verify());
        assert!(two_morphism_find(&b, &fixtures::ik2()).unwrap().is_none());
        assert!(two_morphism_find(&b, &fixtures::br()).is_err());
    }
}
