use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use super::{FgAbGroup, FgAbMap};
use crate::error::{Error, Result};
use crate::intlinalg::{solve, IntMatrix};

/// Linear conditions on an unknown homomorphism `X: src → dst`.
///
/// Every condition is an equality of homomorphisms, so it only has to hold
/// modulo the target relations; the slack is absorbed by auxiliary integer
/// unknowns.
#[derive(Clone, Debug)]
pub struct HomProblem {
    src: FgAbGroup,
    dst: FgAbGroup,
    pre: Vec<(FgAbMap, FgAbMap)>,
    post: Vec<(FgAbMap, FgAbMap)>,
}

/// All solutions: `particular + Σ t_k · directions[k]`.
#[derive(Clone, Debug)]
pub struct HomSolutions {
    pub particular: FgAbMap,
    pub directions: Vec<IntMatrix>,
}

impl HomSolutions {
    /// Whether the solution is unique as a homomorphism.
    pub fn is_unique(&self) -> bool {
        self.directions.is_empty()
    }

    /// A pseudo-random solution with coefficients in `[-spread, spread]`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, spread: i64) -> FgAbMap {
        let mut m = self.particular.matrix().clone();
        for d in &self.directions {
            let t = rng.gen_range(-spread..=spread);
            if t != 0 {
                m = &m + &d.scale(&BigInt::from(t));
            }
        }
        FgAbMap::new(self.particular.src().clone(), self.particular.dst().clone(), m)
            .expect("solution space is closed under directions")
            .reduced()
    }
}

impl HomProblem {
    pub fn new(src: &FgAbGroup, dst: &FgAbGroup) -> Self {
        HomProblem { src: src.clone(), dst: dst.clone(), pre: Vec::new(), post: Vec::new() }
    }

    /// Requires `X ∘ f = g`.
    pub fn precompose(mut self, f: &FgAbMap, g: &FgAbMap) -> Result<Self> {
        if f.dst() != &self.src || g.dst() != &self.dst || f.src() != g.src() {
            return Err(Error::EndpointMismatch("precompose constraint has wrong endpoints".into()));
        }
        self.pre.push((f.clone(), g.clone()));
        Ok(self)
    }

    /// Requires `h ∘ X = k`.
    pub fn postcompose(mut self, h: &FgAbMap, k: &FgAbMap) -> Result<Self> {
        if h.src() != &self.dst || k.src() != &self.src || h.dst() != k.dst() {
            return Err(Error::EndpointMismatch("postcompose constraint has wrong endpoints".into()));
        }
        self.post.push((h.clone(), k.clone()));
        Ok(self)
    }

    pub fn solve(&self) -> Option<FgAbMap> {
        self.solve_all().map(|s| s.particular)
    }

    pub fn solve_all(&self) -> Option<HomSolutions> {
        let a = self.src.ngens();
        let b = self.dst.ngens();
        let nx = a * b;
        let rel_a = self.src.relation_basis();
        let rel_b = self.dst.relation_basis();
        let rb = rel_b.cols();

        // (rows, slack width) per block, in order: well-definedness, pre, post
        struct Block {
            rows: usize,
            slack: usize,
        }
        let mut blocks = vec![Block { rows: b * rel_a.cols(), slack: rb * rel_a.cols() }];
        for (f, _) in &self.pre {
            blocks.push(Block { rows: b * f.src().ngens(), slack: rb * f.src().ngens() });
        }
        let post_rel: Vec<IntMatrix> = self.post.iter().map(|(h, _)| h.dst().relation_basis()).collect();
        for ((h, _), rt) in self.post.iter().zip(&post_rel) {
            blocks.push(Block { rows: h.dst().ngens() * a, slack: rt.cols() * a });
        }
        let nrows: usize = blocks.iter().map(|bl| bl.rows).sum();
        let ncols: usize = nx + blocks.iter().map(|bl| bl.slack).sum::<usize>();
        let mut m = IntMatrix::zeros(nrows, ncols);
        let mut rhs = vec![BigInt::zero(); nrows];

        let mut row0 = 0;
        let mut slack0 = nx;
        // X·F ≡ G (mod rel_b), for F = rel_a (G = 0) and each precompose pair
        let right_block = |m: &mut IntMatrix,
                           rhs: &mut [BigInt],
                           row0: usize,
                           slack0: usize,
                           f: &IntMatrix,
                           g: Option<&IntMatrix>| {
            let s = f.cols();
            for r in 0..b {
                for l in 0..s {
                    let row = row0 + r * s + l;
                    for c in 0..a {
                        let v = f.get(c, l);
                        if !v.is_zero() {
                            m.set(row, r * a + c, v.clone());
                        }
                    }
                    for t in 0..rb {
                        let v = rel_b.get(r, t);
                        if !v.is_zero() {
                            m.set(row, slack0 + t * s + l, -v);
                        }
                    }
                    if let Some(g) = g {
                        rhs[row] = g.get(r, l).clone();
                    }
                }
            }
        };
        right_block(&mut m, &mut rhs, row0, slack0, &rel_a, None);
        row0 += blocks[0].rows;
        slack0 += blocks[0].slack;
        for (k, (f, g)) in self.pre.iter().enumerate() {
            right_block(&mut m, &mut rhs, row0, slack0, f.matrix(), Some(g.matrix()));
            row0 += blocks[1 + k].rows;
            slack0 += blocks[1 + k].slack;
        }
        // H·X ≡ K (mod rel_t)
        for (k, ((h, kk), rt)) in self.post.iter().zip(&post_rel).enumerate() {
            let t_n = h.dst().ngens();
            let hm = h.matrix();
            for u in 0..t_n {
                for c in 0..a {
                    let row = row0 + u * a + c;
                    for r in 0..b {
                        let v = hm.get(u, r);
                        if !v.is_zero() {
                            m.set(row, r * a + c, v.clone());
                        }
                    }
                    for t in 0..rt.cols() {
                        let v = rt.get(u, t);
                        if !v.is_zero() {
                            m.set(row, slack0 + t * a + c, -v);
                        }
                    }
                    rhs[row] = kk.matrix().get(u, c).clone();
                }
            }
            row0 += blocks[1 + self.pre.len() + k].rows;
            slack0 += blocks[1 + self.pre.len() + k].slack;
        }

        let sol = solve(&m, &rhs)?;
        let to_map = |x: &[BigInt]| IntMatrix::from_vec(b, a, x[..nx].to_vec());
        let particular = FgAbMap::new(self.src.clone(), self.dst.clone(), to_map(&sol.particular))
            .expect("solution satisfies well-definedness")
            .reduced();
        let mut directions: Vec<IntMatrix> = Vec::new();
        for col in sol.kernel.columns() {
            let d = self.dst.lattice().reduce_columns(&to_map(&col));
            if !d.is_zero() && !directions.contains(&d) {
                directions.push(d);
            }
        }
        Some(HomSolutions { particular, directions })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_through_a_surjection() {
        // X ∘ (Z → Z/2) = (Z → Z/2), X: Z/2 → Z/2
        let z = FgAbGroup::free(1);
        let z2 = FgAbGroup::cyclic(2);
        let q = FgAbMap::from_i64(&z, &z2, &[1]).unwrap();
        let x = HomProblem::new(&z2, &z2).precompose(&q, &q).unwrap().solve_all().unwrap();
        assert!(x.particular.equals(&FgAbMap::identity(&z2)).unwrap());
        assert!(x.is_unique());
    }

    #[test]
    fn unsolvable_lift() {
        // 2 ∘ X = id on Z has no solution
        let z = FgAbGroup::free(1);
        let two = FgAbMap::from_i64(&z, &z, &[2]).unwrap();
        assert!(HomProblem::new(&z, &z).postcompose(&two, &FgAbMap::identity(&z)).unwrap().solve().is_none());
    }

    #[test]
    fn hom_space_directions() {
        let z4 = FgAbGroup::cyclic(4);
        let z2 = FgAbGroup::cyclic(2);
        let s = HomProblem::new(&z2, &z4).solve_all().unwrap();
        assert!(s.particular.is_zero());
        assert_eq!(s.directions.len(), 1);
        assert_eq!(s.directions[0].get(0, 0), &BigInt::from(2));
    }
}
