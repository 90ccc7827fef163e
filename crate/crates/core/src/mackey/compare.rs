//! Comparison maps: `ℬ(S,−) □ ℬ(T,−) ≅ ℬ(S×T,−)`, `L(A ⊠ B) ≅ LA □ LB`, `C_M(X×Y) ≅ C_M X □ C_M Y`,
//! and the external product on Mackey homology.

use std::sync::Arc;

use super::{
    box_complex, box_from_pairing, box_map, box_product, box_with, l_complex, representable_mackey, LComplex, MackeyError,
    MackeyFunctor, RestrictionFunctor,
};
use super::{burnside_functor, burnside_green, mackey_l, unit_isomorphism, zbar_green};
use crate::categories::GroupCategories;
use crate::chain::AbChainComplex;
use crate::coeff::{
    boxtimes, cellular_chain, is_chain_isomorphism, product_complex, representable, representable_map, representable_product_comparison, GCWComplex, ProductComplex,
};
use crate::groups::gset_product;
use crate::kan::{left_kan_map, DiagramFunctor, KanError, LeftKan, LinearFunctor, NatTrans};
use crate::linalg::{AbHom, FgAbGroup, Int, IntMatrix, SVec, Subquotient, Tensor};
use crate::report::Check;

/// `⊕_u ℬ(G/H_u, −)` over the orbit summands `u` of `G/H_a × G/H_b`.
pub fn representable_sum(cats: &GroupCategories, a: usize, b: usize) -> MackeyFunctor {
    let parts: Vec<MackeyFunctor> = cats.ctx.product(a, b).classes().into_iter().map(|u| representable_mackey(cats, u)).collect();
    DiagramFunctor::direct_sum(&parts.iter().collect::<Vec<_>>())
}

/// `ℬ(a,−) □ ℬ(b,−) → ℬ(a×b,−)`, `φ ⊗ ψ ↦ φ × ψ`.
pub fn representable_box_comparison(cats: &GroupCategories, a: usize, b: usize, bx: &LeftKan) -> Result<NatTrans, KanError> {
    let bc = &cats.burnside;
    let (ma, mb) = (representable_mackey(cats, a), representable_mackey(cats, b));
    let target = representable_sum(cats, a, b);
    let sources = cats.ctx.product(a, b).classes();
    box_from_pairing(cats, bx, &ma, &mb, &target, |c1, c2, i, j| {
        let sm = bc.product_basis((a, c1, i), (b, c2, j));
        sm.targets
            .iter()
            .enumerate()
            .map(|(t, &x)| {
                let mut v = Vec::new();
                for (u, &src) in sources.iter().enumerate() {
                    v.extend(sm.entries[u][t].to_dense(bc.rank(src, x)));
                }
                v
            })
            .collect()
    })
}

/// `L(A ⊠ B) → LA □ LB`, sending `h ⊗ (k ⊗ (x ⊗ y))` to `(h ∘ k^*) ⊗ (x ⊗ y)`.
///
/// `inner = A ⊠ B`, `outer = L(A ⊠ B)`, `la = LA`, `lb = LB`, `bx = LA □ LB`.
#[allow(clippy::too_many_arguments)]
pub fn l_boxtimes_comparison(
    cats: &Arc<GroupCategories>,
    a: &DiagramFunctor,
    b: &DiagramFunctor,
    inner: &LeftKan,
    outer: &LeftKan,
    la: &LeftKan,
    lb: &LeftKan,
    bx: &LeftKan,
) -> Result<NatTrans, KanError> {
    let bc = &cats.burnside;
    let k = cats.orbit_count();
    let res = RestrictionFunctor::new(cats.clone());
    let ab: Vec<Tensor> = (0..k * k).map(|c| Tensor::new(a.value(c / k), b.value(c % k))).collect();
    let lab: Vec<Tensor> = (0..k * k).map(|c| Tensor::new(la.functor.value(c / k), lb.functor.value(c % k))).collect();
    let mut components = Vec::with_capacity(k);
    for e in 0..k {
        let target = bx.functor.value(e);
        let h = outer.map_out(e, target, |d, _, h, i| {
            let mut out = target.zero_element();
            for (c, s, kk, x) in inner.representative(d, i) {
                let (c1, c2) = (c / k, c % k);
                let cls = cats.ctx.product(c1, c2).summands[s].class;
                let path = bc.compose_vec(cls, d, e, &res.morphism_image(cls, d, kk)[0][0], &SVec::unit(h));
                for (j, xj) in x.iter().enumerate() {
                    if xj.is_zero() {
                        continue;
                    }
                    let (i1, i2) = ab[c].generator(j);
                    let ua = la.class_of(c1, c1, 0, bc.identity_index(c1), &a.value(c1).basis_element(i1));
                    let ub = lb.class_of(c2, c2, 0, bc.identity_index(c2), &b.value(c2).basis_element(i2));
                    let t = lab[c].pair(&ua, &ub);
                    for (k2, coef) in path.iter() {
                        let w = xj * coef;
                        for (o, v) in out.iter_mut().zip(bx.class_of(e, c, s, *k2, &t)) {
                            *o += &w * &v;
                        }
                    }
                }
            }
            target.reduce(&out)
        })?;
        components.push(h);
    }
    Ok(NatTrans { components })
}

/// `C_M X □ C_M Y` and `C_M(X × Y)` with a chain isomorphism between them.
pub struct ChainComparison {
    pub left: LComplex,
    pub right: LComplex,
    pub product: LComplex,
    pub boxed: ProductComplex,
    /// `maps[n] : (C_M X □ C_M Y)_n → C_M(X × Y)_n`.
    pub maps: Vec<NatTrans>,
    /// `blocks[n][i]`: the restriction of `maps[n]` to the `i`-th block `(p, q)`.
    pub blocks: Vec<Vec<NatTrans>>,
    pub is_isomorphism: bool,
}

/// Degreewise `L(ψ) ∘ Φ⁻¹`, where `ψ` is the cellular product comparison and `Φ` the `L`-of-`⊠` comparison.
pub fn chain_product_comparison(cats: &Arc<GroupCategories>, x: &GCWComplex, y: &GCWComplex) -> Result<ChainComparison, MackeyError> {
    let (cx, cy) = (cellular_chain(cats, x), cellular_chain(cats, y));
    let xy = product_complex(x, y).map_err(|e| MackeyError::NotIsomorphic(e.to_string()))?;
    let left = l_complex(cats, &cx)?;
    let right = l_complex(cats, &cy)?;
    let product = l_complex(cats, &cellular_chain(cats, &xy))?;
    let boxed = box_complex(cats, &left.complex, &right.complex)?;
    let k = cats.orbit_count();
    let mut maps = Vec::with_capacity(boxed.blocks.len());
    let mut blocks = Vec::with_capacity(boxed.blocks.len());
    for (n, bl) in boxed.blocks.iter().enumerate() {
        let target = &product.complex.terms[n];
        let mut row = Vec::with_capacity(bl.len());
        for &(p, q) in bl {
            let inner = boxtimes(cats, &cx.terms[p], &cy.terms[q])?;
            let outer = super::mackey_l(cats, &inner.functor)?;
            let phi = l_boxtimes_comparison(cats, &cx.terms[p], &cy.terms[q], &inner, &outer, &left.lans[p], &right.lans[q], &boxed.lans[p][q])?;
            let phi_inv = phi.inverse().ok_or_else(|| MackeyError::NotIsomorphic(format!("L(C_{p} ⊠ D_{q}) and L C_{p} □ L D_{q}")))?;
            let psi = representable_product_comparison(cats, &x.cells(p), &y.cells(q), &inner)?;
            let incl = block_inclusion(cats, x, y, &xy, n, (p, q));
            row.push(left_kan_map(&outer, &product.lans[n], &incl.compose(&psi)).compose(&phi_inv));
        }
        let components = (0..k)
            .map(|o| {
                let sources: Vec<FgAbGroup> = bl.iter().map(|&(p, q)| boxed.lans[p][q].functor.value(o).clone()).collect();
                let pieces = vec![row.iter().map(|t| Some(t.components[o].clone())).collect::<Vec<_>>()];
                AbHom::from_blocks(&sources, &[target.value(o).clone()], &pieces)
            })
            .collect();
        maps.push(NatTrans { components });
        blocks.push(row);
    }
    let is_isomorphism = is_chain_isomorphism(&boxed.complex, &product.complex, &maps);
    Ok(ChainComparison { left, right, product, boxed, maps, blocks, is_isomorphism })
}

/// `F_{X_p × Y_q} → F_{(X × Y)_n}`, the inclusion of a block of cells.
fn block_inclusion(cats: &GroupCategories, x: &GCWComplex, y: &GCWComplex, xy: &GCWComplex, n: usize, (p, q): (usize, usize)) -> NatTrans {
    let g = &cats.ctx.group;
    let mut offset = 0;
    for p2 in 0..p {
        if n - p2 < y.len() && p2 < x.len() {
            offset += x.cells(p2).size() * y.cells(n - p2).size();
        }
    }
    let (st, _, _) = gset_product(g, &x.cells(p), &y.cells(q));
    let all = xy.cells(n);
    let mut m = IntMatrix::zeros(all.size(), st.size());
    for i in 0..st.size() {
        m[(offset + i, i)] = Int::ONE;
    }
    representable_map(cats, &st, &all, &m)
}

/// The cross product `H_p((C_M X □ M)(G/G)) ⊗ H_q((C_M Y □ N)(G/G)) → H_{p+q}((C_M(X×Y) □ (M □ N))(G/G))`.
pub struct ExternalProduct {
    cats: Arc<GroupCategories>,
    pub comparison: ChainComparison,
    /// `C_M X □ M`, `C_M Y □ N`, and `C_M(X × Y) □ (M □ N)`.
    pub left: ProductComplex,
    pub right: ProductComplex,
    pub target: ProductComplex,
    m: MackeyFunctor,
    n: MackeyFunctor,
    mn: LeftKan,
    left_top: AbChainComplex,
    right_top: AbChainComplex,
    target_top: AbChainComplex,
}

impl ExternalProduct {
    pub fn new(cats: &Arc<GroupCategories>, x: &GCWComplex, y: &GCWComplex, m: &MackeyFunctor, n: &MackeyFunctor) -> Result<Self, MackeyError> {
        let comparison = chain_product_comparison(cats, x, y)?;
        let left = box_with(cats, &comparison.left.complex, m)?;
        let right = box_with(cats, &comparison.right.complex, n)?;
        let mn = box_product(cats, m, n)?;
        let target = box_with(cats, &comparison.product.complex, &mn.functor)?;
        let top = cats.ctx.top();
        let (left_top, right_top, target_top) = (left.complex.evaluate(top), right.complex.evaluate(top), target.complex.evaluate(top));
        Ok(ExternalProduct { cats: cats.clone(), comparison, left, right, target, m: m.clone(), n: n.clone(), mn, left_top, right_top, target_top })
    }

    pub fn left_homology(&self, p: usize) -> Subquotient {
        self.left_top.homology_data(p)
    }

    pub fn right_homology(&self, q: usize) -> Subquotient {
        self.right_top.homology_data(q)
    }

    pub fn target_homology(&self, n: usize) -> Subquotient {
        self.target_top.homology_data(n)
    }

    /// The chain `u × v` for chains `u ∈ (C_M X □ M)_p(G/G)`, `v ∈ (C_M Y □ N)_q(G/G)`.
    pub fn chain_product(&self, p: usize, u: &[Int], q: usize, v: &[Int]) -> Result<Vec<Int>, MackeyError> {
        let cats = &self.cats;
        let top = cats.ctx.top();
        let cmp = &self.comparison;
        let (ab, cd) = (&self.left.lans[p][0], &self.right.lans[q][0]);
        let ac = &cmp.boxed.lans[p][q];
        let q_lan = box_product(cats, &ac.functor, &self.mn.functor)?;
        let ext = interchange(cats, (ab, &cmp.left.complex.terms[p], &self.m), (cd, &cmp.right.complex.terms[q], &self.n), ac, &self.mn, &q_lan, u, v);
        let n = p + q;
        let i = cmp.boxed.blocks[n].iter().position(|&b| b == (p, q)).expect("block of the product");
        let into = box_map(&q_lan, &self.target.lans[n][0], (&ac.functor, &self.mn.functor), (&cmp.product.complex.terms[n], &self.mn.functor), &cmp.blocks[n][i], &NatTrans::identity(&self.mn.functor));
        Ok(into.components[top].apply(&ext))
    }

    /// The class of `u × v` in `H_{p+q}` for cycles `u`, `v`.
    pub fn product(&self, p: usize, u: &[Int], q: usize, v: &[Int]) -> Result<Vec<Int>, MackeyError> {
        let hu = self.left_homology(p);
        if hu.class_of(u).is_none() {
            return Err(MackeyError::NotACycle(p));
        }
        if self.right_homology(q).class_of(v).is_none() {
            return Err(MackeyError::NotACycle(q));
        }
        let w = self.chain_product(p, u, q, v)?;
        Ok(self.target_homology(p + q).class_of(&w).expect("products of cycles are cycles"))
    }
}

/// `(A□B)(G/G) ⊗ (C□D)(G/G) → ((A□C) □ (B□D))(G/G)`, built from the Lan generators of both factors.
#[allow(clippy::too_many_arguments)]
fn interchange(
    cats: &GroupCategories,
    (ab, a, bfun): (&LeftKan, &DiagramFunctor, &DiagramFunctor),
    (cd, c, dfun): (&LeftKan, &DiagramFunctor, &DiagramFunctor),
    ac: &LeftKan,
    bd: &LeftKan,
    q: &LeftKan,
    u: &[Int],
    v: &[Int],
) -> Vec<Int> {
    let ctx = &cats.ctx;
    let bc = &cats.burnside;
    let k = cats.orbit_count();
    let top = ctx.top();
    let qf = &q.functor;
    let mut out = qf.value(top).zero_element();
    let terms = |lan: &LeftKan, w: &[Int]| -> Vec<(usize, usize, usize, Vec<Int>)> {
        let mut acc = Vec::new();
        for (idx, coef) in w.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (cc, s, kk, x) in lan.representative(top, idx) {
                acc.push((cc, s, kk, x.iter().map(|t| t * coef).collect::<Vec<Int>>()));
            }
        }
        acc
    };
    for (cu, su, ku, xu) in terms(ab, u) {
        let (a1, a2) = (cu / k, cu % k);
        let tu = Tensor::new(a.value(a1), bfun.value(a2));
        let xs = ctx.product(a1, a2).summands[su].class;
        for (cv, sv, kv, xv) in terms(cd, v) {
            let (b1, b2) = (cv / k, cv % k);
            let tv = Tensor::new(c.value(b1), dfun.value(b2));
            let ys = ctx.product(b1, b2).summands[sv].class;
            let wdec = ctx.product(xs, ys);
            let sm = bc.product_basis((xs, top, ku), (ys, top, kv));
            for (w, summand) in wdec.summands.iter().enumerate() {
                let wc = summand.class;
                let z = summand.iso[bc.base_point(wc)];
                let (w1, w2) = (z / ctx.orbits[ys].size(), z % ctx.orbits[ys].size());
                let pa = ctx.product(a1, a2).summands[su].iso[w1];
                let pb = ctx.product(b1, b2).summands[sv].iso[w2];
                let (p1, p2) = (pa / ctx.orbits[a2].size(), pa % ctx.orbits[a2].size());
                let (q1, q2) = (pb / ctx.orbits[b2].size(), pb % ctx.orbits[b2].size());
                let (sig, isig) = ctx.product(a1, b1).locate[p1 * ctx.orbits[b1].size() + q1];
                let (tau, itau) = ctx.product(a2, b2).locate[p2 * ctx.orbits[b2].size() + q2];
                let (cs, ct) = (ctx.product(a1, b1).summands[sig].class, ctx.product(a2, b2).summands[tau].class);
                let (rho, qrho) = ctx.product(cs, ct).locate[isig * ctx.orbits[ct].size() + itau];
                let cr = ctx.product(cs, ct).summands[rho].class;
                let pair_ac = Tensor::new(ac.functor.value(cs), bd.functor.value(ct));
                let mut elem = qf.value(cr).zero_element();
                for (ju, xj) in xu.iter().enumerate() {
                    if xj.is_zero() {
                        continue;
                    }
                    let (ia, ib) = tu.generator(ju);
                    for (jv, yj) in xv.iter().enumerate() {
                        if yj.is_zero() {
                            continue;
                        }
                        let (ic, id) = tv.generator(jv);
                        let lac = Tensor::new(a.value(a1), c.value(b1));
                        let lbd = Tensor::new(bfun.value(a2), dfun.value(b2));
                        let e_ac = ac.class_of(cs, a1 * k + b1, sig, bc.identity_index(cs), &lac.pair(&a.value(a1).basis_element(ia), &c.value(b1).basis_element(ic)));
                        let e_bd = bd.class_of(ct, a2 * k + b2, tau, bc.identity_index(ct), &lbd.pair(&bfun.value(a2).basis_element(ib), &dfun.value(b2).basis_element(id)));
                        let g = q.class_of(cr, cs * k + ct, rho, bc.identity_index(cr), &pair_ac.pair(&e_ac, &e_bd));
                        let w8 = xj * yj;
                        for (o, gv) in elem.iter_mut().zip(g) {
                            *o += &w8 * &gv;
                        }
                    }
                }
                let restricted = qf.map(cr, wc, bc.restriction_basis(wc, cr, qrho)).apply(&elem);
                let pushed = qf.apply_vec(wc, top, &sm.entries[w][0]).apply(&restricted);
                for (o, pv) in out.iter_mut().zip(pushed) {
                    *o += pv;
                }
            }
        }
    }
    qf.value(top).reduce(&out)
}

/// `F_S ⊠ F_T ≅ F_(S×T)` and `L(F_S ⊠ F_T) ≅ L F_S □ L F_T` on every pair of orbits, the unit law `𝒜 □ M ≅ M` for `M ∈ {𝒜, Z̄}`, and
/// `Z̄ □ Z̄ ≅ Z̄` through the multiplication of `Z̄`.
pub fn lemma_suite(cats: &Arc<GroupCategories>) -> Result<Vec<Check>, MackeyError> {
    let n = cats.orbit_count();
    let label = |a: usize| cats.ctx.orbit_label(a);
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let (s, t) = (&cats.ctx.orbits[a].gset, &cats.ctx.orbits[b].gset);
            let (fs, ft) = (representable(cats, s), representable(cats, t));
            let lan = boxtimes(cats, &fs, &ft)?;
            let (st, _, _) = gset_product(&cats.ctx.group, s, t);
            let cmp = representable_product_comparison(cats, s, t, &lan)?;
            let ok = cmp.is_natural(&lan.functor, &representable(cats, &st)) && cmp.is_isomorphism();
            out.push(Check::new(format!("F_{} ⊠ F_{} ≅ F_({} × {})", label(a), label(b), label(a), label(b)), ok));

            let outer = mackey_l(cats, &lan.functor)?;
            let (la, lb) = (mackey_l(cats, &fs)?, mackey_l(cats, &ft)?);
            let bx = box_product(cats, &la.functor, &lb.functor)?;
            let phi = l_boxtimes_comparison(cats, &fs, &ft, &lan, &outer, &la, &lb, &bx)?;
            let ok = phi.is_natural(&outer.functor, &bx.functor) && phi.is_isomorphism();
            out.push(Check::new(format!("L(F_{} ⊠ F_{}) ≅ L F_{} □ L F_{}", label(a), label(b), label(a), label(b)), ok));
        }
    }
    let a = burnside_functor(cats);
    for (name, g) in [("𝒜", burnside_green(cats)), ("Z̄", zbar_green(cats))] {
        let m = &g.functor;
        let am = box_product(cats, &a, m)?;
        let lambda = unit_isomorphism(cats, m, &am)?;
        out.push(Check::new(format!("𝒜 □ {name} ≅ {name}"), lambda.is_natural(&am.functor, m) && lambda.is_isomorphism()));
    }
    let z = zbar_green(cats);
    let zz = box_product(cats, &z.functor, &z.functor)?;
    let mu = z.multiplication(cats, &zz)?;
    out.push(Check::new("Z̄ □ Z̄ ≅ Z̄ by multiplication", mu.is_natural(&zz.functor, &z.functor) && mu.is_isomorphism()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{bundled, representable};
    use crate::kan::check_functor;
    use crate::mackey::{burnside_functor, mackey_l, zbar};

    #[test]
    fn representables_box() {
        for name in ["Z2", "Z4"] {
            let c = GroupCategories::by_name(name).unwrap();
            let n = c.orbit_count();
            for a in 0..n {
                for b in 0..n {
                    let bx = box_product(&c, &representable_mackey(&c, a), &representable_mackey(&c, b)).unwrap();
                    let cmp = representable_box_comparison(&c, a, b, &bx).unwrap();
                    let target = representable_sum(&c, a, b);
                    assert!(cmp.is_natural(&bx.functor, &target), "{name} {a} {b}");
                    assert!(cmp.is_isomorphism(), "{name} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn l_takes_boxtimes_to_box_on_representables() {
        for name in ["Z2", "Z4", "Z2xZ2"] {
            let c = GroupCategories::by_name(name).unwrap();
            let n = c.orbit_count();
            for s in 0..n {
                for t in 0..n {
                    let a = representable(&c, &c.ctx.orbits[s].gset);
                    let b = representable(&c, &c.ctx.orbits[t].gset);
                    let inner = boxtimes(&c, &a, &b).unwrap();
                    let outer = mackey_l(&c, &inner.functor).unwrap();
                    let (la, lb) = (mackey_l(&c, &a).unwrap(), mackey_l(&c, &b).unwrap());
                    let bx = box_product(&c, &la.functor, &lb.functor).unwrap();
                    let phi = l_boxtimes_comparison(&c, &a, &b, &inner, &outer, &la, &lb, &bx).unwrap();
                    assert!(phi.is_natural(&outer.functor, &bx.functor));
                    assert!(phi.is_isomorphism(), "{name} {s} {t}");
                }
            }
        }
    }

    #[test]
    fn chain_level_product() {
        let c = GroupCategories::by_name("Z2").unwrap();
        let s = bundled::sign_sphere(&c.ctx).unwrap();
        let pt = bundled::point(&c.ctx);
        let z4 = GroupCategories::by_name("Z4").unwrap();
        let circle = bundled::free_circle(&z4.ctx, 4).unwrap();
        let cmp = chain_product_comparison(&z4, &circle, &bundled::point(&z4.ctx)).unwrap();
        assert!(cmp.is_isomorphism);
        for (x, y) in [(&s, &pt), (&s, &s)] {
            let cmp = chain_product_comparison(&c, x, y).unwrap();
            assert!(cmp.boxed.complex.is_valid());
            assert!(cmp.is_isomorphism);
            for t in &cmp.product.complex.terms {
                assert!(check_functor(t).is_valid());
            }
        }
    }

    #[test]
    fn cross_product_with_a_point() {
        let c = GroupCategories::by_name("Z2").unwrap();
        let s = bundled::sign_sphere(&c.ctx).unwrap();
        let pt = bundled::point(&c.ctx);
        let z = zbar(&c);
        let a = burnside_functor(&c);
        let ep = ExternalProduct::new(&c, &s, &pt, &z, &a).unwrap();
        let top = c.ctx.top();
        let one = a.value(top).basis_element(c.burnside.identity_index(top));
        let point_class = ep.right.complex.terms[0].value(top).zero_element();
        let unit = {
            let lan = &ep.right.lans[0][0];
            let l = &ep.comparison.right.lans[0];
            let gen = l.class_of(top, top, 0, c.burnside.identity_index(top), &[Int::ONE]);
            let t = Tensor::new(l.functor.value(top), a.value(top));
            let cc = top * c.orbit_count() + top;
            let mut v = point_class.clone();
            for (o, x) in v.iter_mut().zip(lan.class_of(top, cc, 0, c.burnside.identity_index(top), &t.pair(&gen, &one))) {
                *o += x;
            }
            v
        };
        for p in 0..2 {
            let h = ep.left_homology(p);
            let target = ep.target_homology(p);
            assert_eq!(h.group, target.group, "degree {p}");
            let cols: Vec<Vec<Int>> = (0..h.group.ngens()).map(|i| ep.product(p, &h.representative(&h.group.basis_element(i)), 0, &unit).unwrap()).collect();
            let m = AbHom::new(h.group.clone(), target.group.clone(), crate::linalg::IntMatrix::from_columns(&cols, target.group.ngens())).unwrap();
            assert!(m.is_isomorphism(), "degree {p}");
        }
    }

    #[test]
    fn cross_product_of_sign_spheres() {
        let c = GroupCategories::by_name("Z2").unwrap();
        let s = bundled::sign_sphere(&c.ctx).unwrap();
        let z = zbar(&c);
        let ep = ExternalProduct::new(&c, &s, &s, &z, &z).unwrap();
        let h = ep.left_homology(0);
        assert_eq!(h.group.free_rank(), 1);
        let u = h.representative(&h.group.basis_element(0));
        let uu = ep.product(0, &u, 0, &u).unwrap();
        assert!(!ep.target_homology(0).group.is_zero_element(&uu));
        let two: Vec<Int> = u.iter().map(|x| x * &Int::from(2)).collect();
        let lhs = ep.product(0, &two, 0, &u).unwrap();
        let rhs: Vec<Int> = uu.iter().map(|x| x * &Int::from(2)).collect();
        assert_eq!(ep.target_homology(0).group.reduce(&lhs), ep.target_homology(0).group.reduce(&rhs));
        let chains = ep.left.complex.evaluate(c.ctx.top());
        let d = chains.differential(1);
        let j = (0..chains.group(1).ngens()).find(|&j| !d.target().is_zero_element(&d.column(j))).expect("a non-cycle");
        let not_cycle = chains.group(1).basis_element(j);
        assert!(matches!(ep.product(1, &not_cycle, 0, &u), Err(MackeyError::NotACycle(1))));
    }

    #[test]
    fn lemma_suite_passes() {
        for name in ["Z2", "Z3", "Z4"] {
            let c = GroupCategories::by_name(name).unwrap();
            let r = lemma_suite(&c).unwrap();
            assert_eq!(r.len(), 2 * c.orbit_count() * c.orbit_count() + 3);
            assert!(r.iter().all(|x| x.holds), "{name}");
        }
    }
}
