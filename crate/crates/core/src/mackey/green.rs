//! Green functors given by levelwise rings, their multiplication `M □ M → M`, and the unit law.

use std::sync::Arc;

use super::{apply_span_matrix, box_from_pairing, burnside_functor, summand_projections, zbar, MackeyFunctor};
use crate::categories::GroupCategories;
use crate::kan::{KanError, LeftKan, NatTrans};
use crate::linalg::{AbHom, Int, IntMatrix};

/// A Mackey functor with commutative ring structures on its values.
#[derive(Clone, Debug)]
pub struct GreenFunctor {
    pub functor: MackeyFunctor,
    /// `products[a][i][j]` is `eᵢ · eⱼ` in `M(G/H_a)`.
    pub products: Vec<Vec<Vec<Vec<Int>>>>,
    pub units: Vec<Vec<Int>>,
}

impl GreenFunctor {
    pub fn multiply(&self, a: usize, x: &[Int], y: &[Int]) -> Vec<Int> {
        let g = self.functor.value(a);
        let mut out = g.zero_element();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (o, p) in out.iter_mut().zip(&self.products[a][i][j]) {
                    *o += &c * p;
                }
            }
        }
        g.reduce(&out)
    }

    /// Failures of the ring axioms, of restrictions being unital ring maps, and of Frobenius reciprocity.
    pub fn levelwise_failures(&self, cats: &GroupCategories) -> Vec<String> {
        let n = cats.orbit_count();
        let (orbit, bc) = (&cats.orbit, &cats.burnside);
        let mut out = Vec::new();
        let basis = |a: usize| (0..self.functor.value(a).ngens()).map(move |i| self.functor.value(a).basis_element(i));
        let eq = |a: usize, x: &[Int], y: &[Int]| self.functor.value(a).reduce(x) == self.functor.value(a).reduce(y);
        for a in 0..n {
            let label = cats.ctx.orbit_label(a);
            for x in basis(a) {
                if !eq(a, &self.multiply(a, &self.units[a], &x), &x) {
                    out.push(format!("unit at {label}"));
                }
                for y in basis(a) {
                    if !eq(a, &self.multiply(a, &x, &y), &self.multiply(a, &y, &x)) {
                        out.push(format!("commutativity at {label}"));
                    }
                    for z in basis(a) {
                        let l = self.multiply(a, &self.multiply(a, &x, &y), &z);
                        let r = self.multiply(a, &x, &self.multiply(a, &y, &z));
                        if !eq(a, &l, &r) {
                            out.push(format!("associativity at {label}"));
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for &p in orbit.maps(a, b) {
                    let res = self.functor.map(b, a, bc.restriction_basis(a, b, p));
                    let tr = self.functor.map(a, b, bc.transfer_basis(a, b, p));
                    let name = format!("{} -> {} ({p})", cats.ctx.orbit_label(a), cats.ctx.orbit_label(b));
                    if !eq(a, &res.apply(&self.units[b]), &self.units[a]) {
                        out.push(format!("restriction along {name} is not unital"));
                    }
                    for y in basis(b) {
                        for y2 in basis(b) {
                            let l = res.apply(&self.multiply(b, &y, &y2));
                            let r = self.multiply(a, &res.apply(&y), &res.apply(&y2));
                            if !eq(a, &l, &r) {
                                out.push(format!("restriction along {name} is not multiplicative"));
                            }
                        }
                        for x in basis(a) {
                            let l = tr.apply(&self.multiply(a, &x, &res.apply(&y)));
                            let r = self.multiply(b, &tr.apply(&x), &y);
                            if !eq(b, &l, &r) {
                                out.push(format!("Frobenius reciprocity along {name}"));
                            }
                        }
                    }
                }
            }
        }
        out.dedup();
        out
    }

    /// `μ : M □ M → M`, `x ⊗ y ↦ res(x) · res(y)` on each orbit of the product.
    pub fn multiplication(&self, cats: &GroupCategories, bx: &LeftKan) -> Result<NatTrans, KanError> {
        let bc = &cats.burnside;
        let m = &self.functor;
        box_from_pairing(cats, bx, m, m, m, |c1, c2, i, j| {
            let dec = cats.ctx.product(c1, c2);
            (0..dec.summands.len())
                .map(|s| {
                    let x = dec.summands[s].class;
                    let (z1, z2) = summand_projections(cats, c1, c2, s);
                    let u = m.map(c1, x, bc.restriction_basis(x, c1, z1)).column(i);
                    let v = m.map(c2, x, bc.restriction_basis(x, c2, z2)).column(j);
                    self.multiply(x, &u, &v)
                })
                .collect()
        })
    }

    /// The unit `𝒜 → M`, `[G/G ← S → T] ↦ M(S → T) M(S → G/G)^*(1)`.
    pub fn unit_map(&self, cats: &GroupCategories) -> NatTrans {
        let top = cats.ctx.top();
        let a = burnside_functor(cats);
        NatTrans {
            components: (0..cats.orbit_count())
                .map(|d| {
                    let cols: Vec<Vec<Int>> = (0..cats.burnside.rank(top, d)).map(|x| self.functor.map(top, d, x).apply(&self.units[top])).collect();
                    AbHom::new(a.value(d).clone(), self.functor.value(d).clone(), IntMatrix::from_columns(&cols, self.functor.value(d).ngens())).unwrap()
                })
                .collect(),
        }
    }
}

/// `𝒜` with the Burnside ring structures given by products of G-sets over each orbit.
pub fn burnside_green(cats: &GroupCategories) -> GreenFunctor {
    let bc = &cats.burnside;
    let functor = burnside_functor(cats);
    let top = cats.ctx.top();
    let n = cats.orbit_count();
    let products = (0..n)
        .map(|a| {
            let r = bc.rank(top, a);
            (0..r).map(|i| (0..r).map(|j| bc.ring_product(a, i, j).to_dense(r)).collect()).collect()
        })
        .collect();
    let units = (0..n).map(|a| functor.value(a).basis_element(bc.ring_unit(a))).collect();
    GreenFunctor { functor, products, units }
}

/// `Z̄` with multiplication of integers at every level.
pub fn zbar_green(cats: &GroupCategories) -> GreenFunctor {
    let n = cats.orbit_count();
    GreenFunctor { functor: zbar(cats), products: vec![vec![vec![vec![Int::ONE]]]; n], units: vec![vec![Int::ONE]; n] }
}

/// The unit isomorphism `λ : 𝒜 □ M → M`, `x ⊗ m ↦ M(x × T)(m)` for `x ∈ ℬ(G/G, S)`, `m ∈ M(T)`.
pub fn unit_isomorphism(cats: &Arc<GroupCategories>, m: &MackeyFunctor, bx: &LeftKan) -> Result<NatTrans, KanError> {
    let bc = &cats.burnside;
    let top = cats.ctx.top();
    let a = burnside_functor(cats);
    box_from_pairing(cats, bx, &a, m, m, |c1, c2, x, j| {
        let sm = bc.product_basis((top, c1, x), (c2, c2, bc.identity_index(c2)));
        let z = cats.ctx.product(top, c2).summands[0].iso[bc.base_point(c2)];
        let v = m.map(c2, c2, bc.restriction_basis(c2, c2, z)).column(j);
        let image = apply_span_matrix(m, &sm).apply(&v);
        super::split_parts(m, &sm.targets, &image)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::{box_map, box_product};

    #[test]
    fn green_laws_levelwise() {
        for name in ["Z2", "Z4", "Z2xZ2", "S3"] {
            let c = GroupCategories::by_name(name).unwrap();
            assert_eq!(burnside_green(&c).levelwise_failures(&c), Vec::<String>::new(), "{name}");
            assert_eq!(zbar_green(&c).levelwise_failures(&c), Vec::<String>::new(), "{name}");
        }
    }

    #[test]
    fn burnside_ring_of_z2() {
        let c = GroupCategories::by_name("Z2").unwrap();
        let g = burnside_green(&c);
        let top = c.ctx.top();
        let one = g.units[top].clone();
        let t: Vec<Int> = (0..2).map(|i| if one[i].is_zero() { Int::ONE } else { Int::ZERO }).collect();
        let tt = g.multiply(top, &t, &t);
        assert_eq!(tt, t.iter().map(|x| x * &Int::from(2)).collect::<Vec<_>>());
    }

    #[test]
    fn unit_law_and_multiplication() {
        for name in ["Z2", "Z4"] {
            let c = GroupCategories::by_name(name).unwrap();
            let a = burnside_functor(&c);
            for g in [burnside_green(&c), zbar_green(&c)] {
                let m = &g.functor;
                let am = box_product(&c, &a, m).unwrap();
                let lambda = unit_isomorphism(&c, m, &am).unwrap();
                assert!(lambda.is_natural(&am.functor, m), "{name}");
                assert!(lambda.is_isomorphism(), "{name}");
                let mm = box_product(&c, m, m).unwrap();
                let mu = g.multiplication(&c, &mm).unwrap();
                assert!(mu.is_natural(&mm.functor, m));
                let eta = g.unit_map(&c);
                assert!(eta.is_natural(&a, m));
                let eta_box = box_map(&am, &mm, (&a, m), (m, m), &eta, &NatTrans::identity(m));
                assert_eq!(mu.compose(&eta_box), lambda, "{name}");
            }
        }
    }

    #[test]
    fn zbar_is_idempotent() {
        let c = GroupCategories::by_name("Z2").unwrap();
        let g = zbar_green(&c);
        let bx = box_product(&c, &g.functor, &g.functor).unwrap();
        let mu = g.multiplication(&c, &bx).unwrap();
        assert!(mu.is_isomorphism());
    }
}
