//! The orbit category `𝒪_G`, linearized: `hom(G/H, G/K)` is free on `Map_G(G/H, G/K)`.

use std::sync::Arc;

use crate::context::GroupContext;
use crate::kan::{all_non_identity, LinearCategory, Morphism};
use crate::linalg::SVec;

/// Basis of `hom(a, b)`: points `p ∈ (G/H_b)^{H_a}`, standing for `eH_a ↦ p`.
pub struct OrbitCategory {
    ctx: Arc<GroupContext>,
    homs: Vec<Vec<Vec<usize>>>,
    base_points: Vec<usize>,
}

impl OrbitCategory {
    pub fn new(ctx: Arc<GroupContext>) -> Self {
        let n = ctx.orbit_count();
        let homs = (0..n)
            .map(|a| (0..n).map(|b| ctx.orbits[b].gset.fixed_point_list(&ctx.orbits[a].subgroup)).collect())
            .collect();
        let base_points = ctx.orbits.iter().map(|o| o.reps.iter().position(|&r| o.subgroup.contains(r)).unwrap()).collect();
        OrbitCategory { ctx, homs, base_points }
    }

    pub fn context(&self) -> &Arc<GroupContext> {
        &self.ctx
    }

    /// Image of `eH_a` under basis map `f`.
    pub fn point(&self, a: usize, b: usize, f: usize) -> usize {
        self.homs[a][b][f]
    }

    /// Basis index of the map `eH_a ↦ p`.
    pub fn index_of(&self, a: usize, b: usize, p: usize) -> Option<usize> {
        self.homs[a][b].binary_search(&p).ok()
    }

    pub fn maps(&self, a: usize, b: usize) -> &[usize] {
        &self.homs[a][b]
    }

    pub fn base_point(&self, a: usize) -> usize {
        self.base_points[a]
    }

    /// `f₁ × f₂` as a matrix from the summands of `a₁×a₂` to the summands of `b₁×b₂`.
    pub fn product_map(&self, (a1, b1, f1): (usize, usize, usize), (a2, b2, f2): (usize, usize, usize)) -> Vec<Vec<SVec>> {
        let src = self.ctx.product(a1, a2);
        let tgt = self.ctx.product(b1, b2);
        let (na2, nb2) = (self.ctx.orbits[a2].size(), self.ctx.orbits[b2].size());
        let mut out = vec![vec![SVec::new(); tgt.summands.len()]; src.summands.len()];
        for (s, summand) in src.summands.iter().enumerate() {
            let z = summand.iso[self.base_points[summand.class]];
            let w = self.apply(a1, b1, f1, z / na2) * nb2 + self.apply(a2, b2, f2, z % na2);
            let (t, q) = tgt.locate[w];
            out[s][t] = SVec::unit(self.index_of(summand.class, tgt.summands[t].class, q).expect("product of orbit maps"));
        }
        out
    }

    /// Apply basis map `f: G/H_a → G/H_b` to a coset.
    pub fn apply(&self, a: usize, b: usize, f: usize, x: usize) -> usize {
        self.ctx.orbits[b].gset.act(self.ctx.orbits[a].reps[x], self.homs[a][b][f])
    }
}

impl LinearCategory for OrbitCategory {
    fn object_count(&self) -> usize {
        self.ctx.orbit_count()
    }

    fn hom_rank(&self, a: usize, b: usize) -> usize {
        self.homs[a][b].len()
    }

    fn identity(&self, a: usize) -> usize {
        self.index_of(a, a, self.base_points[a]).unwrap()
    }

    fn compose(&self, a: usize, b: usize, c: usize, f: usize, g: usize) -> SVec {
        let p = self.homs[a][b][f];
        let q = self.ctx.orbits[c].gset.act(self.ctx.orbits[b].reps[p], self.homs[b][c][g]);
        SVec::unit(self.index_of(a, c, q).expect("composite of orbit maps"))
    }

    fn generators(&self) -> Vec<Morphism> {
        all_non_identity(self)
    }

    fn object_label(&self, a: usize) -> String {
        self.ctx.orbit_label(a)
    }

    fn morphism_label(&self, a: usize, b: usize, f: usize) -> String {
        format!("{} -> {} (eH ↦ {})", self.ctx.orbit_label(a), self.ctx.orbit_label(b), self.homs[a][b][f])
    }
}
