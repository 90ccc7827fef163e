//! The Burnside category: spans of finite G-sets up to isomorphism, composed by pullback.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::context::{Decomposition, GroupContext};
use crate::groups::{GMap, GSet};
use crate::kan::{LinearCategory, Morphism};
use crate::linalg::{Int, SVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BurnsideError {
    #[error("composite mismatch: target {0} differs from source {1}")]
    SourceTargetMismatch(usize, usize),
    #[error("span legs do not share a source")]
    LegMismatch,
}

/// Basis span `G/H_a ← G/J → G/H_b`, recorded by `J`'s class and the images `t`, `u` of `eJ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisSpan {
    pub middle: usize,
    pub left: usize,
    pub right: usize,
}

/// Integer combination of basis spans between two canonical orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurnsideMor {
    pub source: usize,
    pub target: usize,
    pub coeffs: SVec,
}

/// Matrix of Burnside morphisms between decomposed G-sets; `entries[i][j]` maps summand `i` to summand `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanMatrix {
    pub sources: Vec<usize>,
    pub targets: Vec<usize>,
    pub entries: Vec<Vec<SVec>>,
}

impl SpanMatrix {
    pub fn zero(sources: Vec<usize>, targets: Vec<usize>) -> Self {
        let entries = vec![vec![SVec::new(); targets.len()]; sources.len()];
        SpanMatrix { sources, targets, entries }
    }
}

/// A span `T ← S → U` of finite G-sets.
#[derive(Clone, Debug)]
pub struct Span {
    pub left: GMap,
    pub right: GMap,
}

impl Span {
    pub fn new(left: GMap, right: GMap) -> Result<Self, BurnsideError> {
        if left.source != right.source {
            return Err(BurnsideError::LegMismatch);
        }
        Ok(Span { left, right })
    }
}

/// Orbit of a pullback: a representative pair and its stabilizer.
struct PullbackOrbit {
    x: usize,
    y: usize,
    stabilizer: Vec<usize>,
}

pub struct BurnsideCategory {
    ctx: Arc<GroupContext>,
    /// `homs[a][b]`: basis spans from `a` to `b`, sorted.
    homs: Vec<Vec<Vec<BasisSpan>>>,
    index: Vec<Vec<HashMap<BasisSpan, usize>>>,
    base_points: Vec<usize>,
    compositions: Vec<OnceLock<Vec<SVec>>>,
}

impl std::fmt::Debug for BurnsideCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BurnsideCategory({})", self.ctx.group.name())
    }
}

impl BurnsideCategory {
    pub fn new(ctx: Arc<GroupContext>) -> Self {
        let n = ctx.orbit_count();
        let base_points: Vec<usize> = ctx.orbits.iter().map(|o| o.reps.iter().position(|&r| o.subgroup.contains(r)).unwrap()).collect();
        let mut homs = vec![vec![Vec::new(); n]; n];
        let mut index = vec![vec![HashMap::new(); n]; n];
        for a in 0..n {
            for b in 0..n {
                let mut set = BTreeSet::new();
                for j in 0..n {
                    let jg = &ctx.orbits[j].subgroup;
                    let ts = ctx.orbits[a].gset.fixed_point_list(jg);
                    let us = ctx.orbits[b].gset.fixed_point_list(jg);
                    for &t in &ts {
                        for &u in &us {
                            set.insert(canonical(&ctx, a, b, j, t, u));
                        }
                    }
                }
                let list: Vec<BasisSpan> = set.into_iter().collect();
                index[a][b] = list.iter().enumerate().map(|(i, s)| (*s, i)).collect();
                homs[a][b] = list;
            }
        }
        let compositions = (0..n * n * n).map(|_| OnceLock::new()).collect();
        BurnsideCategory { ctx, homs, index, base_points, compositions }
    }

    pub fn context(&self) -> &Arc<GroupContext> {
        &self.ctx
    }

    pub fn object_count(&self) -> usize {
        self.ctx.orbit_count()
    }

    /// The basis of `ℬ(G/H_a, G/H_b)`.
    pub fn basis(&self, a: usize, b: usize) -> &[BasisSpan] {
        &self.homs[a][b]
    }

    pub fn rank(&self, a: usize, b: usize) -> usize {
        self.homs[a][b].len()
    }

    pub fn base_point(&self, a: usize) -> usize {
        self.base_points[a]
    }

    pub fn identity_index(&self, a: usize) -> usize {
        let p = self.base_points[a];
        self.index[a][a][&canonical(&self.ctx, a, a, a, p, p)]
    }

    pub fn identity(&self, a: usize) -> BurnsideMor {
        BurnsideMor { source: a, target: a, coeffs: SVec::unit(self.identity_index(a)) }
    }

    /// Index of the canonical form of `(J, t, u)`.
    pub fn locate(&self, a: usize, b: usize, j: usize, t: usize, u: usize) -> usize {
        self.index[a][b][&canonical(&self.ctx, a, b, j, t, u)]
    }

    /// Basis term of an orbit `S` mapping to `G/H_a` and `G/H_b`, given by a point's stabilizer and images.
    pub fn orbit_term(&self, stabilizer: &[usize], a: usize, t: usize, b: usize, u: usize) -> usize {
        let (j, c) = self.ctx.classify(stabilizer);
        let t = self.ctx.orbits[a].gset.act(c, t);
        let u = self.ctx.orbits[b].gset.act(c, u);
        self.locate(a, b, j, t, u)
    }

    fn pullback(&self, j1: usize, leg1: (usize, usize), j2: usize, leg2: (usize, usize)) -> Vec<PullbackOrbit> {
        // leg1 = (orbit b, point u): G/J1 → G/H_b; leg2 likewise into the same orbit
        let g = &self.ctx.group;
        let (o1, o2) = (&self.ctx.orbits[j1], &self.ctx.orbits[j2]);
        let ob = &self.ctx.orbits[leg1.0].gset;
        let n2 = o2.size();
        let mut seen = vec![false; o1.size() * n2];
        let mut out = Vec::new();
        for x in 0..o1.size() {
            let fx = ob.act(o1.reps[x], leg1.1);
            for y in 0..n2 {
                if seen[x * n2 + y] || fx != ob.act(o2.reps[y], leg2.1) {
                    continue;
                }
                for a in g.elements() {
                    seen[o1.gset.act(a, x) * n2 + o2.gset.act(a, y)] = true;
                }
                let stabilizer = g.elements().filter(|&a| o1.gset.act(a, x) == x && o2.gset.act(a, y) == y).collect();
                out.push(PullbackOrbit { x, y, stabilizer });
            }
        }
        out
    }

    fn compose_uncached(&self, a: usize, b: usize, c: usize, f: usize, g: usize) -> SVec {
        let fs = self.homs[a][b][f];
        let gs = self.homs[b][c][g];
        let (o1, o2) = (&self.ctx.orbits[fs.middle], &self.ctx.orbits[gs.middle]);
        let mut pairs = Vec::new();
        for p in self.pullback(fs.middle, (b, fs.right), gs.middle, (b, gs.left)) {
            let t = self.ctx.orbits[a].gset.act(o1.reps[p.x], fs.left);
            let u = self.ctx.orbits[c].gset.act(o2.reps[p.y], gs.right);
            pairs.push((self.orbit_term(&p.stabilizer, a, t, c, u), Int::ONE));
        }
        SVec::from_pairs(pairs)
    }

    /// `g ∘ f` for basis spans `f: a → b`, `g: b → c`, in the basis of `ℬ(a, c)`.
    pub fn compose_basis(&self, a: usize, b: usize, c: usize, f: usize, g: usize) -> &SVec {
        let n = self.object_count();
        let table = self.compositions[(a * n + b) * n + c].get_or_init(|| {
            let (r1, r2) = (self.rank(a, b), self.rank(b, c));
            let mut out = Vec::with_capacity(r1 * r2);
            for f in 0..r1 {
                for g in 0..r2 {
                    out.push(self.compose_uncached(a, b, c, f, g));
                }
            }
            out
        });
        &table[f * self.rank(b, c) + g]
    }

    /// Bilinear composite of coefficient vectors.
    pub fn compose_vec(&self, a: usize, b: usize, c: usize, f: &SVec, g: &SVec) -> SVec {
        let mut out = SVec::new();
        for (i, x) in f.iter() {
            for (j, y) in g.iter() {
                out = out.add_scaled(self.compose_basis(a, b, c, *i, *j), &(x * y));
            }
        }
        out
    }

    /// `g ∘ f`.
    pub fn span_compose(&self, g: &BurnsideMor, f: &BurnsideMor) -> Result<BurnsideMor, BurnsideError> {
        if f.target != g.source {
            return Err(BurnsideError::SourceTargetMismatch(f.target, g.source));
        }
        Ok(BurnsideMor { source: f.source, target: g.target, coeffs: self.compose_vec(f.source, f.target, g.target, &f.coeffs, &g.coeffs) })
    }

    /// Swap the legs of a basis span.
    pub fn transpose_basis(&self, a: usize, b: usize, f: usize) -> usize {
        let s = self.homs[a][b][f];
        self.locate(b, a, s.middle, s.right, s.left)
    }

    pub fn transpose(&self, f: &BurnsideMor) -> BurnsideMor {
        let coeffs = f.coeffs.map_indices(|i| self.transpose_basis(f.source, f.target, i));
        BurnsideMor { source: f.target, target: f.source, coeffs }
    }

    /// Restriction along the orbit map `G/H_a → G/H_b`, `eH_a ↦ p`: the span `b ← a → a`.
    pub fn restriction_basis(&self, a: usize, b: usize, p: usize) -> usize {
        let e = self.base_points[a];
        self.locate(b, a, a, p, e)
    }

    /// Transfer along the orbit map `G/H_a → G/H_b`, `eH_a ↦ p`: the span `a ← a → b`.
    pub fn transfer_basis(&self, a: usize, b: usize, p: usize) -> usize {
        let e = self.base_points[a];
        self.locate(a, b, a, e, p)
    }

    pub fn restriction_span(&self, a: usize, b: usize, p: usize) -> BurnsideMor {
        BurnsideMor { source: b, target: a, coeffs: SVec::unit(self.restriction_basis(a, b, p)) }
    }

    pub fn transfer_span(&self, a: usize, b: usize, p: usize) -> BurnsideMor {
        BurnsideMor { source: a, target: b, coeffs: SVec::unit(self.transfer_basis(a, b, p)) }
    }

    /// Canonical form of a span between decomposed G-sets.
    pub fn span_canonicalize(&self, span: &Span, source: &Decomposition, target: &Decomposition) -> SpanMatrix {
        let g = &self.ctx.group;
        let middle = &span.left.source;
        let mut out = SpanMatrix::zero(source.classes(), target.classes());
        for orbit in middle.orbits(g) {
            let m = orbit[0];
            let (i, p) = source.locate[span.left.apply(m)];
            let (j, q) = target.locate[span.right.apply(m)];
            let term = self.orbit_term(&middle.stabilizer_elements(g, m), out.sources[i], p, out.targets[j], q);
            out.entries[i][j] = out.entries[i][j].add_scaled(&SVec::unit(term), &Int::ONE);
        }
        out
    }

    /// Restriction matrix `T → S` along a G-map `f: S → T`, as the span `T ← S → S`.
    pub fn restriction_matrix(&self, f: &GMap, source: &Decomposition, target: &Decomposition) -> SpanMatrix {
        let span = Span { left: f.clone(), right: GMap::identity(&f.source) };
        self.span_canonicalize(&span, target, source)
    }

    /// Transfer matrix `S → T` along `f`, as the span `S ← S → T`.
    pub fn transfer_matrix(&self, f: &GMap, source: &Decomposition, target: &Decomposition) -> SpanMatrix {
        let span = Span { left: GMap::identity(&f.source), right: f.clone() };
        self.span_canonicalize(&span, source, target)
    }

    /// Product `φ₁ × φ₂` of basis spans as a matrix between the decompositions of `a₁×a₂` and `b₁×b₂`.
    pub fn product_basis(&self, (a1, b1, f1): (usize, usize, usize), (a2, b2, f2): (usize, usize, usize)) -> SpanMatrix {
        let g = &self.ctx.group;
        let (s1, s2) = (self.homs[a1][b1][f1], self.homs[a2][b2][f2]);
        let (m1, m2) = (&self.ctx.orbits[s1.middle], &self.ctx.orbits[s2.middle]);
        let src = self.ctx.product(a1, a2);
        let tgt = self.ctx.product(b1, b2);
        let (na2, nb2) = (self.ctx.orbits[a2].size(), self.ctx.orbits[b2].size());
        let mut out = SpanMatrix::zero(src.classes(), tgt.classes());
        let n2 = m2.size();
        let mut seen = vec![false; m1.size() * n2];
        for x in 0..m1.size() {
            for y in 0..n2 {
                if seen[x * n2 + y] {
                    continue;
                }
                for e in g.elements() {
                    seen[m1.gset.act(e, x) * n2 + m2.gset.act(e, y)] = true;
                }
                let stab: Vec<usize> = g.elements().filter(|&e| m1.gset.act(e, x) == x && m2.gset.act(e, y) == y).collect();
                let l = self.ctx.orbits[a1].gset.act(m1.reps[x], s1.left) * na2 + self.ctx.orbits[a2].gset.act(m2.reps[y], s2.left);
                let r = self.ctx.orbits[b1].gset.act(m1.reps[x], s1.right) * nb2 + self.ctx.orbits[b2].gset.act(m2.reps[y], s2.right);
                let (i, p) = src.locate[l];
                let (j, q) = tgt.locate[r];
                let term = self.orbit_term(&stab, out.sources[i], p, out.targets[j], q);
                out.entries[i][j] = out.entries[i][j].add_scaled(&SVec::unit(term), &Int::ONE);
            }
        }
        out
    }

    /// Multiplication in the Burnside ring of `H_a`: basis elements of `ℬ(G/G, G/H_a)` are G-sets over `G/H_a`.
    pub fn ring_product(&self, a: usize, x: usize, y: usize) -> SVec {
        let top = self.ctx.top();
        let (sx, sy) = (self.homs[top][a][x], self.homs[top][a][y]);
        let o1 = &self.ctx.orbits[sx.middle];
        let p0 = self.base_points[top];
        let mut pairs = Vec::new();
        for p in self.pullback(sx.middle, (a, sx.right), sy.middle, (a, sy.right)) {
            let u = self.ctx.orbits[a].gset.act(o1.reps[p.x], sx.right);
            pairs.push((self.orbit_term(&p.stabilizer, top, p0, a, u), Int::ONE));
        }
        SVec::from_pairs(pairs)
    }

    /// Unit of the Burnside ring of `H_a`: the identity `G/H_a → G/H_a` over `G/H_a`.
    pub fn ring_unit(&self, a: usize) -> usize {
        let top = self.ctx.top();
        self.locate(top, a, a, self.base_points[top], self.base_points[a])
    }

    pub fn label(&self, a: usize, b: usize, f: usize) -> String {
        let s = self.homs[a][b][f];
        format!("[{} <- {} -> {} : {}, {}]", self.ctx.orbit_label(a), self.ctx.orbit_label(s.middle), self.ctx.orbit_label(b), s.left, s.right)
    }
}

impl LinearCategory for BurnsideCategory {
    fn object_count(&self) -> usize {
        self.ctx.orbit_count()
    }

    fn hom_rank(&self, a: usize, b: usize) -> usize {
        self.homs[a][b].len()
    }

    fn identity(&self, a: usize) -> usize {
        self.identity_index(a)
    }

    fn compose(&self, a: usize, b: usize, c: usize, f: usize, g: usize) -> SVec {
        self.compose_basis(a, b, c, f, g).clone()
    }

    /// Restrictions and transfers along non-identity orbit maps.
    fn generators(&self) -> Vec<Morphism> {
        let n = self.object_count();
        let mut set = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                for p in self.ctx.orbits[b].gset.fixed_point_list(&self.ctx.orbits[a].subgroup) {
                    if a == b && p == self.base_points[a] {
                        continue;
                    }
                    set.insert((b, a, self.restriction_basis(a, b, p)));
                    set.insert((a, b, self.transfer_basis(a, b, p)));
                }
            }
        }
        set.into_iter().map(|(source, target, index)| Morphism { source, target, index }).collect()
    }

    fn object_label(&self, a: usize) -> String {
        self.ctx.orbit_label(a)
    }

    fn morphism_label(&self, a: usize, b: usize, f: usize) -> String {
        self.label(a, b, f)
    }
}

/// Least `(n·t, n·u)` over `n ∈ N(J)`.
fn canonical(ctx: &GroupContext, a: usize, b: usize, j: usize, t: usize, u: usize) -> BasisSpan {
    let (oa, ob) = (&ctx.orbits[a].gset, &ctx.orbits[b].gset);
    let (t, u) = ctx.orbits[j].normalizer.elements().iter().map(|&n| (oa.act(n, t), ob.act(n, u))).min().unwrap();
    BasisSpan { middle: j, left: t, right: u }
}

/// A G-set over `G/H_a`, as a sum of basis elements of `ℬ(G/G, G/H_a)`.
pub fn over_orbit_class(cat: &BurnsideCategory, a: usize, s: &GSet, f: &GMap) -> SVec {
    let ctx = cat.context();
    let top = ctx.top();
    let mut pairs = Vec::new();
    for orbit in s.orbits(&ctx.group) {
        let m = orbit[0];
        let term = cat.orbit_term(&s.stabilizer_elements(&ctx.group, m), top, cat.base_point(top), a, f.apply(m));
        pairs.push((term, Int::ONE));
    }
    SVec::from_pairs(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{double_cosets, gset_product, FiniteGroup};

    fn cat(name: &str) -> BurnsideCategory {
        BurnsideCategory::new(GroupContext::by_name(name).unwrap())
    }

    #[test]
    fn hom_ranks() {
        let c = cat("Z2");
        assert_eq!(c.rank(1, 1), 2);
        assert_eq!(c.rank(0, 0), 2);
        let t = cat("e");
        assert_eq!(t.rank(0, 0), 1);
        let v = cat("Z2xZ2");
        assert_eq!(v.rank(4, 4), 5);
        let total: usize = (0..5).flat_map(|a| (0..5).map(move |b| (a, b))).map(|(a, b)| v.rank(a, b)).sum();
        assert!(total > 25);
    }

    #[test]
    fn z2_res_tr() {
        let c = cat("Z2");
        let (e, g) = (0, 1);
        let tr = c.transfer_span(e, g, 0);
        let res = c.restriction_span(e, g, 0);
        let rt = c.span_compose(&res, &tr).unwrap();
        assert_eq!(rt.source, e);
        // identity plus the twist
        assert_eq!(rt.coeffs.len(), 2);
        assert!(rt.coeffs.iter().all(|(_, v)| v.is_one()));
        assert_eq!(rt.coeffs.get(c.identity_index(e)), Int::ONE);
        let tr_res = c.span_compose(&tr, &res).unwrap();
        assert_eq!(tr_res.coeffs.len(), 1);
        let (k, v) = tr_res.coeffs.iter().next().unwrap();
        assert!(v.is_one());
        assert_eq!(c.basis(g, g)[*k].middle, e);
        assert_eq!(c.transpose(&res), tr);
    }

    #[test]
    fn span_canonicalize_pullback_example() {
        let ctx = GroupContext::by_name("Z2").unwrap();
        let c = BurnsideCategory::new(ctx.clone());
        let free = ctx.orbits[0].gset.clone();
        let g = &ctx.group;
        let (p, l, r) = gset_product(g, &free, &free);
        let d = Decomposition::canonical(&ctx, 0);
        let m = c.span_canonicalize(&Span::new(l, r).unwrap(), &d, &d);
        assert_eq!(m.entries[0][0].len(), 2);
        assert_eq!(p.size(), 4);
        // two copies of the identity span collapse to coefficient 2
        let two = GSet::disjoint_union(&free, &free, g);
        let fold = GMap::new(g, two.clone(), free.clone(), vec![0, 1, 0, 1]).unwrap();
        let m = c.span_canonicalize(&Span::new(fold.clone(), fold).unwrap(), &d, &d);
        assert_eq!(m.entries[0][0], SVec::from_pairs([(c.identity_index(0), Int::from(2))]));
    }

    #[test]
    fn associativity_unit_and_transpose_all_groups() {
        for name in ["Z2", "Z4", "Z2xZ2", "S3"] {
            let c = cat(name);
            let n = c.object_count();
            for a in 0..n {
                for b in 0..n {
                    let id_a = SVec::unit(c.identity_index(a));
                    let id_b = SVec::unit(c.identity_index(b));
                    for f in 0..c.rank(a, b) {
                        let fv = SVec::unit(f);
                        assert_eq!(c.compose_vec(a, a, b, &id_a, &fv), fv);
                        assert_eq!(c.compose_vec(a, b, b, &fv, &id_b), fv);
                        assert_eq!(c.transpose_basis(b, a, c.transpose_basis(a, b, f)), f);
                    }
                    for d in 0..n {
                        for f in 0..c.rank(a, b) {
                            for g in 0..c.rank(b, d) {
                                let gf = c.compose_basis(a, b, d, f, g).clone();
                                let ft = SVec::unit(c.transpose_basis(a, b, f));
                                let gt = SVec::unit(c.transpose_basis(b, d, g));
                                let lhs = gf.map_indices(|i| c.transpose_basis(a, d, i));
                                assert_eq!(lhs, c.compose_vec(d, b, a, &gt, &ft));
                                for e in 0..n {
                                    for h in 0..c.rank(d, e) {
                                        let hv = SVec::unit(h);
                                        let left = c.compose_vec(a, d, e, &gf, &hv);
                                        let hg = c.compose_basis(b, d, e, g, h).clone();
                                        let right = c.compose_vec(a, b, e, &SVec::unit(f), &hg);
                                        assert_eq!(left, right, "{name}: ({a},{b},{d},{e}) f={f} g={g} h={h}");
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn double_coset_law() {
        for name in ["Z2", "Z4", "Z2xZ2", "S3"] {
            let c = cat(name);
            let ctx = c.context().clone();
            let g = &ctx.group;
            let n = c.object_count();
            for k in 0..n {
                for h in 0..n {
                    for l in 0..n {
                        let hs = &ctx.orbits[h].subgroup;
                        let ls = &ctx.orbits[l].subgroup;
                        let ks = &ctx.orbits[k].subgroup;
                        if !hs.is_subgroup_of(ks) || !ls.is_subgroup_of(ks) {
                            continue;
                        }
                        let base = c.base_point(k);
                        let res = c.restriction_span(l, k, base);
                        let tr = c.transfer_span(h, k, base);
                        let comp = c.span_compose(&res, &tr).unwrap();
                        let total: Int = comp.coeffs.iter().map(|(_, v)| v.clone()).sum();
                        // double cosets of K taken inside K
                        let sub = FiniteGroup::from_table(
                            "K",
                            ks.elements().iter().map(|&x| ks.elements().iter().map(|&y| ks.elements().binary_search(&g.mul(x, y)).unwrap()).collect()).collect(),
                        )
                        .unwrap();
                        let relabel = |s: &crate::groups::Subgroup| {
                            crate::groups::Subgroup::new(&sub, s.elements().iter().map(|x| ks.elements().binary_search(x).unwrap()).collect()).unwrap()
                        };
                        let dc = double_cosets(&sub, &relabel(ls), &relabel(hs));
                        assert_eq!(total, Int::from(dc.len()), "{name}: L={l} K={k} H={h}");
                    }
                }
            }
        }
    }

    #[test]
    fn burnside_ring_z2() {
        let c = cat("Z2");
        let top = 1;
        let one = c.ring_unit(top);
        let t = (0..c.rank(top, top)).find(|&i| i != one).unwrap();
        assert_eq!(c.ring_product(top, one, t), SVec::unit(t));
        assert_eq!(c.ring_product(top, t, t), SVec::from_pairs([(t, Int::from(2))]));
    }

    #[test]
    fn ring_product_matches_gset_products() {
        for name in ["Z2", "Z4", "Z2xZ2", "S3"] {
            let c = cat(name);
            let ctx = c.context().clone();
            let g = &ctx.group;
            let top = ctx.top();
            let pt = ctx.orbits[top].gset.clone();
            for x in 0..c.rank(top, top) {
                for y in 0..c.rank(top, top) {
                    let (sx, sy) = (c.basis(top, top)[x], c.basis(top, top)[y]);
                    let (p, _, _) = gset_product(g, &ctx.orbits[sx.middle].gset, &ctx.orbits[sy.middle].gset);
                    let to_pt = GMap::new(g, p.clone(), pt.clone(), vec![0; p.size()]).unwrap();
                    assert_eq!(c.ring_product(top, x, y), over_orbit_class(&c, top, &p, &to_pt));
                }
            }
        }
    }
}
