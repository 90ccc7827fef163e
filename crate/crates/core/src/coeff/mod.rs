//! Coefficient systems on `𝒪_G`, representables, `⊠`, and cellular chains of G-CW complexes.

mod complex;

use std::sync::Arc;

pub use complex::{
    bundled, cellular_chain, dual_cochain, product_complex, CellSet, ComplexError, FunctorCochainComplex, FunctorComplex, GCWComplex,
};

use crate::categories::GroupCategories;
use crate::groups::{orbit_decompose, GSet, OrbitSummand};
use crate::kan::{external_tensor, external_tensor_map, left_kan, left_kan_map, Cat, DiagramFunctor, KanError, LeftKan, LinearCategory, LinearFunctor, NatTrans};
use crate::linalg::{AbHom, FgAbGroup, Int, IntMatrix, SVec};

/// Coefficient systems are functors on `𝒪_G^op`.
pub type CoeffSystem = DiagramFunctor;
/// Co-coefficient systems are functors on `𝒪_G`.
pub type CoCoeffSystem = DiagramFunctor;

/// Basis of `F_S(G/H_a)`: the points of `S^{H_a}`.
pub fn representable_basis(cats: &GroupCategories, s: &GSet, a: usize) -> Vec<usize> {
    s.fixed_point_list(&cats.ctx.orbits[a].subgroup)
}

/// `F_S : G/H ↦ Z Map_G(G/H, S)`, structure maps by precomposition.
pub fn representable(cats: &GroupCategories, s: &GSet) -> CoeffSystem {
    let ctx = &cats.ctx;
    let n = ctx.orbit_count();
    let bases: Vec<Vec<usize>> = (0..n).map(|a| representable_basis(cats, s, a)).collect();
    let values: Vec<FgAbGroup> = bases.iter().map(|b| FgAbGroup::free(b.len())).collect();
    DiagramFunctor::from_fn(cats.orbit_op().clone(), values.clone(), |a, b, m| {
        // the orbit map G/H_b → G/H_a with eH_b ↦ p
        let p = cats.orbit.point(b, a, m);
        let rep = ctx.orbits[a].reps[p];
        let mut mat = IntMatrix::zeros(bases[b].len(), bases[a].len());
        for (j, &x) in bases[a].iter().enumerate() {
            let y = s.act(rep, x);
            mat[(bases[b].binary_search(&y).expect("fixed point"), j)] = Int::ONE;
        }
        AbHom::new(values[a].clone(), values[b].clone(), mat).unwrap()
    })
}

/// The transformation `F_S → F_T` given by an equivariant integer matrix `Z[S] → Z[T]` whose
/// entries only connect `x` to points fixed by `Stab(x)`.
pub fn representable_map(cats: &GroupCategories, s: &GSet, t: &GSet, m: &IntMatrix) -> NatTrans {
    let n = cats.orbit_count();
    NatTrans {
        components: (0..n)
            .map(|a| {
                let (bs, bt) = (representable_basis(cats, s, a), representable_basis(cats, t, a));
                let mut mat = IntMatrix::zeros(bt.len(), bs.len());
                for (j, &x) in bs.iter().enumerate() {
                    for (i, &y) in bt.iter().enumerate() {
                        mat[(i, j)] = m[(y, x)].clone();
                    }
                }
                AbHom::new(FgAbGroup::free(bs.len()), FgAbGroup::free(bt.len()), mat).unwrap()
            })
            .collect(),
    }
}

/// `A(∐ G/Hᵢ) = ⊕ A(G/Hᵢ)` over the orbit decomposition of `S`.
pub fn additive_extension(cats: &GroupCategories, a: &DiagramFunctor, s: &GSet) -> (FgAbGroup, Vec<OrbitSummand>) {
    let summands = orbit_decompose(&cats.ctx.group, &cats.ctx.lattice, s);
    let parts: Vec<&FgAbGroup> = summands.iter().map(|o| a.value(o.class)).collect();
    (FgAbGroup::direct_sum(&parts), summands)
}

/// The Cartesian product `𝒪 × 𝒪 → 𝒪` (or its opposite), sending a pair of orbits to the orbits of their product.
pub struct OrbitProduct {
    cats: Arc<GroupCategories>,
    opposite: bool,
    source: Cat,
    target: Cat,
}

impl OrbitProduct {
    pub fn new(cats: Arc<GroupCategories>, opposite: bool) -> Self {
        let (source, target) = if opposite {
            (cats.orbit_op_sq().clone(), cats.orbit_op().clone())
        } else {
            (cats.orbit_sq().clone(), cats.orbit_cat().clone())
        };
        OrbitProduct { cats, opposite, source, target }
    }
}

impl LinearFunctor for OrbitProduct {
    fn source(&self) -> &Cat {
        &self.source
    }

    fn target(&self) -> &Cat {
        &self.target
    }

    fn object_image(&self, c: usize) -> Vec<usize> {
        let n = self.cats.orbit_count();
        self.cats.ctx.product(c / n, c % n).classes()
    }

    fn morphism_image(&self, a: usize, b: usize, f: usize) -> Vec<Vec<SVec>> {
        let n = self.cats.orbit_count();
        let (a1, a2, b1, b2) = (a / n, a % n, b / n, b % n);
        let orbit = &self.cats.orbit;
        if self.opposite {
            let r2 = orbit.hom_rank(b2, a2);
            let m = orbit.product_map((b1, a1, f / r2), (b2, a2, f % r2));
            transpose_blocks(&m)
        } else {
            let r2 = orbit.hom_rank(a2, b2);
            orbit.product_map((a1, b1, f / r2), (a2, b2, f % r2))
        }
    }
}

pub(crate) fn transpose_blocks(m: &[Vec<SVec>]) -> Vec<Vec<SVec>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| (0..rows).map(|i| m[i][j].clone()).collect()).collect()
}

/// `A ⊠ B`: the left Kan extension of `A ⊗ B` along the Cartesian product.
pub fn boxtimes(cats: &Arc<GroupCategories>, a: &CoeffSystem, b: &CoeffSystem) -> Result<LeftKan, KanError> {
    let ext = external_tensor(a, b, cats.orbit_op_sq());
    left_kan(&OrbitProduct::new(cats.clone(), true), &ext)
}

/// `η ⊠ θ : A ⊠ B → A' ⊠ B'`.
#[allow(clippy::too_many_arguments)]
pub fn boxtimes_map(
    from: &LeftKan,
    to: &LeftKan,
    (a, b): (&CoeffSystem, &CoeffSystem),
    (a2, b2): (&CoeffSystem, &CoeffSystem),
    eta: &NatTrans,
    theta: &NatTrans,
) -> NatTrans {
    left_kan_map(from, to, &external_tensor_map(a, b, a2, b2, eta, theta))
}

/// The comparison `F_S ⊠ F_T → F_{S×T}` sending `h ⊗ (x ⊗ y)` to `(x × y) ∘ h`.
pub fn representable_product_comparison(cats: &GroupCategories, s: &GSet, t: &GSet, lan: &LeftKan) -> Result<NatTrans, KanError> {
    let ctx = &cats.ctx;
    let n = ctx.orbit_count();
    let (st, _, _) = crate::groups::gset_product(&ctx.group, s, t);
    let mut components = Vec::with_capacity(n);
    for d in 0..n {
        let target_basis = representable_basis(cats, &st, d);
        let target = FgAbGroup::free(target_basis.len());
        let h = lan.map_out(d, &target, |c, sidx, k, i| {
            let (c1, c2) = (c / n, c % n);
            let dec = ctx.product(c1, c2);
            let x = dec.summands[sidx].class;
            let q = cats.orbit.point(d, x, k);
            let z = dec.summands[sidx].iso[q];
            let size2 = ctx.orbits[c2].size();
            let (z1, z2) = (z / size2, z % size2);
            let bt = representable_basis(cats, t, c2);
            let bs = representable_basis(cats, s, c1);
            let (p1, p2) = (bs[i / bt.len()], bt[i % bt.len()]);
            let w = s.act(ctx.orbits[c1].reps[z1], p1) * t.size() + t.act(ctx.orbits[c2].reps[z2], p2);
            let mut v = vec![Int::ZERO; target_basis.len()];
            v[target_basis.binary_search(&w).expect("image is fixed")] = Int::ONE;
            v
        })?;
        components.push(h);
    }
    Ok(NatTrans { components })
}

/// Degreewise `Lan_F(C_p ⊗ D_q)` of two complexes, `d = d⊗1 + (−1)^p 1⊗d`.
pub struct ProductComplex {
    pub complex: FunctorComplex,
    /// Per degree, the summands `(p, q)` in order.
    pub blocks: Vec<Vec<(usize, usize)>>,
    /// `lans[p][q]` is `Lan_F(C_p ⊗ D_q)`.
    pub lans: Vec<Vec<LeftKan>>,
}

/// `C ⊠ D`.
pub fn boxtimes_complex(cats: &Arc<GroupCategories>, c: &FunctorComplex, d: &FunctorComplex) -> Result<ProductComplex, KanError> {
    lan_product_complex(&OrbitProduct::new(cats.clone(), true), c, d)
}

/// Degreewise left Kan extension of the external tensor along a product functor `f` on a square category.
pub fn lan_product_complex(f: &dyn LinearFunctor, c: &FunctorComplex, d: &FunctorComplex) -> Result<ProductComplex, KanError> {
    let sq = f.source().clone();
    let mut lans = Vec::with_capacity(c.len());
    for p in 0..c.len() {
        let mut row = Vec::with_capacity(d.len());
        for q in 0..d.len() {
            row.push(left_kan(f, &external_tensor(&c.terms[p], &d.terms[q], &sq))?);
        }
        lans.push(row);
    }
    let top = (c.len() + d.len()).saturating_sub(1);
    let blocks: Vec<Vec<(usize, usize)>> =
        (0..top).map(|n| (0..=n).filter(|&p| p < c.len() && n - p < d.len()).map(|p| (p, n - p)).collect()).collect();
    let op = f.target().clone();
    let terms: Vec<DiagramFunctor> = blocks
        .iter()
        .map(|bl| {
            let parts: Vec<&DiagramFunctor> = bl.iter().map(|&(p, q)| &lans[p][q].functor).collect();
            if parts.is_empty() {
                DiagramFunctor::zero(op.clone())
            } else {
                DiagramFunctor::direct_sum(&parts)
            }
        })
        .collect();
    let n_obj = op.object_count();
    let differentials = (1..top)
        .map(|n| {
            let (src, tgt) = (&blocks[n], &blocks[n - 1]);
            let mut pieces: Vec<Vec<Option<NatTrans>>> = vec![vec![None; src.len()]; tgt.len()];
            for (j, &(p, q)) in src.iter().enumerate() {
                if p > 0 {
                    let i = tgt.iter().position(|&b| b == (p - 1, q)).unwrap();
                    let id = NatTrans::identity(&d.terms[q]);
                    pieces[i][j] = Some(boxtimes_map(&lans[p][q], &lans[p - 1][q], (&c.terms[p], &d.terms[q]), (&c.terms[p - 1], &d.terms[q]), c.differential(p), &id));
                }
                if q > 0 {
                    let i = tgt.iter().position(|&b| b == (p, q - 1)).unwrap();
                    let id = NatTrans::identity(&c.terms[p]);
                    let m = boxtimes_map(&lans[p][q], &lans[p][q - 1], (&c.terms[p], &d.terms[q]), (&c.terms[p], &d.terms[q - 1]), &id, d.differential(q));
                    pieces[i][j] = Some(if p % 2 == 0 { m } else { m.scale(&Int::from(-1)) });
                }
            }
            NatTrans {
                components: (0..n_obj)
                    .map(|a| {
                        let sources: Vec<FgAbGroup> = src.iter().map(|&(p, q)| lans[p][q].functor.value(a).clone()).collect();
                        let targets: Vec<FgAbGroup> = tgt.iter().map(|&(p, q)| lans[p][q].functor.value(a).clone()).collect();
                        let b: Vec<Vec<Option<AbHom>>> =
                            pieces.iter().map(|row| row.iter().map(|m| m.as_ref().map(|m| m.components[a].clone())).collect()).collect();
                        AbHom::from_blocks(&sources, &targets, &b)
                    })
                    .collect(),
            }
        })
        .collect();
    Ok(ProductComplex { complex: FunctorComplex { terms, differentials }, blocks, lans })
}

/// Degreewise comparison `C_G(X) ⊠ C_G(Y) → C_G(X × Y)`, blockwise the representable comparison.
pub fn product_chain_comparison(cats: &GroupCategories, x: &GCWComplex, y: &GCWComplex, bx: &ProductComplex) -> Result<Vec<NatTrans>, KanError> {
    let n_obj = cats.orbit_count();
    bx.blocks
        .iter()
        .map(|bl| {
            let comps: Vec<NatTrans> =
                bl.iter().map(|&(p, q)| representable_product_comparison(cats, &x.cells(p), &y.cells(q), &bx.lans[p][q])).collect::<Result<_, _>>()?;
            Ok(NatTrans {
                components: (0..n_obj)
                    .map(|a| {
                        if comps.is_empty() {
                            AbHom::zero(&FgAbGroup::zero(), &FgAbGroup::zero())
                        } else {
                            AbHom::direct_sum(&comps.iter().map(|t| &t.components[a]).collect::<Vec<_>>())
                        }
                    })
                    .collect(),
            })
        })
        .collect()
}

/// Checks that a degreewise family of isomorphisms is a chain isomorphism `C → D`.
pub fn is_chain_isomorphism(c: &FunctorComplex, d: &FunctorComplex, f: &[NatTrans]) -> bool {
    if c.len() != d.len() || f.len() != c.len() {
        return false;
    }
    let iso = f.iter().enumerate().all(|(n, t)| t.is_isomorphism() && t.is_natural(&c.terms[n], &d.terms[n]));
    let commutes = (1..c.len()).all(|n| {
        let lhs = d.differential(n).compose(&f[n]);
        let rhs = f[n - 1].compose(c.differential(n));
        lhs.components.iter().zip(&rhs.components).all(|(a, b)| a.sub(b).is_zero())
    });
    iso && commutes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kan::check_functor;

    fn cats(name: &str) -> Arc<GroupCategories> {
        GroupCategories::by_name(name).unwrap()
    }

    #[test]
    fn representable_values() {
        let c = cats("Z2");
        let ctx = &c.ctx;
        let pt = representable(&c, &ctx.orbits[1].gset);
        assert!(pt.values().iter().all(|v| *v == FgAbGroup::free(1)));
        let free = representable(&c, &ctx.orbits[0].gset);
        assert_eq!(free.value(1), &FgAbGroup::zero());
        assert_eq!(free.value(0), &FgAbGroup::free(2));
        assert!(check_functor(&free).is_valid());
        let mixed = ctx.orbits[1].gset.disjoint_union(&ctx.orbits[0].gset, &ctx.group);
        let f = representable(&c, &mixed);
        let sum = DiagramFunctor::direct_sum(&[&pt, &free]);
        for a in 0..2 {
            assert_eq!(f.value(a), sum.value(a));
        }
        let (g, summands) = additive_extension(&c, &free, &mixed);
        assert_eq!(g, FgAbGroup::free(2));
        assert_eq!(summands.len(), 2);
        let (e, _) = additive_extension(&c, &free, &GSet::empty());
        assert!(e.is_trivial());
    }

    #[test]
    fn representable_products_on_all_orbit_pairs() {
        for name in ["Z2", "Z4", "Z2xZ2"] {
            let c = cats(name);
            let n = c.orbit_count();
            for a in 0..n {
                for b in 0..n {
                    let (s, t) = (&c.ctx.orbits[a].gset, &c.ctx.orbits[b].gset);
                    let (fs, ft) = (representable(&c, s), representable(&c, t));
                    let lan = boxtimes(&c, &fs, &ft).unwrap();
                    assert!(check_functor(&lan.functor).is_valid());
                    let (st, _, _) = crate::groups::gset_product(&c.ctx.group, s, t);
                    let fst = representable(&c, &st);
                    let cmp = representable_product_comparison(&c, s, t, &lan).unwrap();
                    assert!(cmp.is_isomorphism(), "{name} {a} {b}");
                    assert!(cmp.is_natural(&lan.functor, &fst));
                }
            }
        }
    }

    #[test]
    fn products_of_cellular_chains() {
        let c = cats("Z2");
        let s = bundled::sign_sphere(&c.ctx).unwrap();
        let pt = bundled::point(&c.ctx);
        for (x, y) in [(&s, &s), (&s, &pt), (&pt, &s)] {
            let (cx, cy) = (cellular_chain(&c, x), cellular_chain(&c, y));
            let bx = boxtimes_complex(&c, &cx, &cy).unwrap();
            assert!(bx.complex.is_valid());
            let prod = product_complex(x, y).unwrap();
            let cp = cellular_chain(&c, &prod);
            let cmp = product_chain_comparison(&c, x, y, &bx).unwrap();
            assert!(is_chain_isomorphism(&bx.complex, &cp, &cmp));
        }
    }

    #[test]
    fn cellular_chain_of_sign_sphere() {
        let c = cats("Z2");
        let x = bundled::sign_sphere(&c.ctx).unwrap();
        let ch = cellular_chain(&c, &x);
        assert!(ch.is_valid());
        assert!(ch.terms[1].value(1).is_trivial());
        assert_eq!(ch.terms[1].value(0), &FgAbGroup::free(2));
        assert_eq!(ch.terms[0].value(1), &FgAbGroup::free(2));
        let under = ch.evaluate(0);
        let direct = x.underlying_chain();
        assert_eq!(under.homology_all(), direct.homology_all());
        let dual = dual_cochain(&c, &x);
        assert!(dual.is_valid());
        for (t, orig) in dual.terms.iter().zip(&ch.terms) {
            let back = crate::kan::dual_functor(t, c.orbit_op());
            for a in 0..2 {
                for b in 0..2 {
                    for m in 0..c.orbit_op().hom_rank(a, b) {
                        assert_eq!(back.map(a, b, m), orig.map(a, b, m));
                    }
                }
            }
        }
    }

    #[test]
    fn box_unit() {
        let c = cats("Z2");
        let pt = representable(&c, &c.ctx.orbits[1].gset);
        let free = representable(&c, &c.ctx.orbits[0].gset);
        let lan = boxtimes(&c, &free, &pt).unwrap();
        for a in 0..2 {
            assert_eq!(lan.functor.value(a), free.value(a));
        }
        let lan = boxtimes(&c, &pt, &pt).unwrap();
        for a in 0..2 {
            assert_eq!(lan.functor.value(a), &FgAbGroup::free(1));
        }
    }
}
