use std::sync::Arc;

use super::category::{Cat, LinearFunctor};
use super::functor::{DiagramFunctor, NatTrans};
use super::KanError;
use crate::linalg::{reduce_presentation, AbHom, FgAbGroup, HomGroup, Int, IntMatrix, Reduction, SVec, Solver};

/// Index layout of `⊕_c D(F c, d) ⊗ A(c)` (or `⊕_c Hom(D(d, F c), A(c))`) for one object `d`.
#[derive(Clone, Debug)]
struct Layout {
    /// Start of the block of `c`.
    offsets: Vec<usize>,
    /// Start of summand `s` inside the hom basis of `c`.
    blocks: Vec<Vec<usize>>,
    ngens: Vec<usize>,
    /// Rank of `⊕_s D(F_s c, d)` for each `c`.
    widths: Vec<usize>,
    total: usize,
}

impl Layout {
    fn new(images: &[Vec<usize>], ngens: Vec<usize>, rank: impl Fn(usize) -> usize) -> Self {
        let mut offsets = Vec::with_capacity(images.len());
        let mut blocks = Vec::with_capacity(images.len());
        let mut widths = Vec::with_capacity(images.len());
        let mut total = 0;
        for (c, im) in images.iter().enumerate() {
            offsets.push(total);
            let mut b = Vec::with_capacity(im.len());
            let mut width = 0;
            for &x in im {
                b.push(width);
                width += rank(x);
            }
            blocks.push(b);
            widths.push(width);
            total += width * ngens[c];
        }
        Layout { offsets, blocks, ngens, widths, total }
    }

    /// `(c, s, k, i)` of a flat index.
    fn decode(&self, g: usize) -> (usize, usize, usize, usize) {
        let c = (0..self.offsets.len()).find(|&c| g >= self.offsets[c] && g < self.offsets[c] + self.widths[c] * self.ngens[c]).expect("index in range");
        let local = g - self.offsets[c];
        let kk = local / self.ngens[c];
        let i = local % self.ngens[c];
        let s = self.blocks[c].iter().rposition(|&b| b <= kk).unwrap();
        (c, s, kk - self.blocks[c][s], i)
    }

    fn index(&self, c: usize, s: usize, k: usize, i: usize) -> usize {
        self.offsets[c] + (self.blocks[c][s] + k) * self.ngens[c] + i
    }

    fn flat(&self, c: usize, kk: usize, i: usize) -> usize {
        self.offsets[c] + kk * self.ngens[c] + i
    }
}

fn check_source(f: &dyn LinearFunctor, a: &DiagramFunctor) -> Result<(), KanError> {
    if !Arc::ptr_eq(f.source(), a.category()) && f.source().object_count() != a.category().object_count() {
        return Err(KanError::InvalidFunctor("functor is not defined on the source category".into()));
    }
    Ok(())
}

/// `Lan_F A` with the presentation data needed to map in and out of it.
pub struct LeftKan {
    pub functor: DiagramFunctor,
    images: Vec<Vec<usize>>,
    layouts: Vec<Layout>,
    reductions: Vec<Reduction>,
    source_values: Vec<FgAbGroup>,
    target: Cat,
    cached_relations: Vec<Vec<SVec>>,
}

impl LeftKan {
    /// Class of `h ⊗ x` where `h` is basis morphism `k` from summand `s` of `F c` to `d`.
    pub fn class_of(&self, d: usize, c: usize, s: usize, k: usize, x: &[Int]) -> Vec<Int> {
        let lay = &self.layouts[d];
        let v = SVec::from_pairs(x.iter().enumerate().map(|(i, v)| (lay.index(c, s, k, i), v.clone())));
        self.reductions[d].project(&v)
    }

    /// Representative of a coordinate of `Lan(d)` as terms `(c, s, k, x)`.
    pub fn representative(&self, d: usize, q: usize) -> Vec<(usize, usize, usize, Vec<Int>)> {
        let lay = &self.layouts[d];
        let mut out: Vec<(usize, usize, usize, Vec<Int>)> = Vec::new();
        for (g, v) in self.reductions[d].lift[q].iter() {
            let (c, s, k, i) = lay.decode(*g);
            match out.iter_mut().find(|t| t.0 == c && t.1 == s && t.2 == k) {
                Some(t) => t.3[i] += v,
                None => {
                    let mut x = vec![Int::ZERO; lay.ngens[c]];
                    x[i] = v.clone();
                    out.push((c, s, k, x));
                }
            }
        }
        out
    }

    /// Map `Lan(d) → T` determined by its values on generators `h ⊗ eᵢ`; relations are checked.
    pub fn map_out(&self, d: usize, target: &FgAbGroup, mut on_gen: impl FnMut(usize, usize, usize, usize) -> Vec<Int>) -> Result<AbHom, KanError> {
        let lay = &self.layouts[d];
        let mut images: Vec<Vec<Int>> = vec![Vec::new(); lay.total];
        for c in 0..self.images.len() {
            for (s, &x) in self.images[c].iter().enumerate() {
                for k in 0..self.target.hom_rank(x, d) {
                    for i in 0..lay.ngens[c] {
                        images[lay.index(c, s, k, i)] = on_gen(c, s, k, i);
                    }
                }
            }
        }
        let eval = |v: &SVec| -> Vec<Int> {
            let mut out = target.zero_element();
            for (g, c) in v.iter() {
                for (o, y) in out.iter_mut().zip(&images[*g]) {
                    *o += c * y;
                }
            }
            target.reduce(&out)
        };
        for rel in self.relations(d) {
            if !target.is_zero_element(&eval(rel)) {
                return Err(KanError::NotWellDefined);
            }
        }
        let cols: Vec<Vec<Int>> = self.reductions[d].lift.iter().map(|l| eval(l)).collect();
        AbHom::new(self.functor.value(d).clone(), target.clone(), IntMatrix::from_columns(&cols, target.ngens())).map_err(|_| KanError::NotWellDefined)
    }

    fn relations(&self, d: usize) -> &[SVec] {
        &self.cached_relations[d]
    }
}

/// Relations of the coend presentation at `d`.
fn coend_relations(f: &dyn LinearFunctor, a: &DiagramFunctor, images: &[Vec<usize>], lay: &Layout, d: usize) -> Vec<SVec> {
    let src = f.source();
    let tgt = f.target();
    let mut rels = Vec::new();
    for c in 0..images.len() {
        let av = a.value(c);
        for (s, &x) in images[c].iter().enumerate() {
            for k in 0..tgt.hom_rank(x, d) {
                for (i, o) in av.orders().iter().enumerate() {
                    if !o.is_zero() {
                        rels.push(SVec::from_pairs([(lay.index(c, s, k, i), o.clone())]));
                    }
                }
            }
        }
    }
    for m in src.generators() {
        let (c, c2) = (m.source, m.target);
        let fm = f.morphism_image(c, c2, m.index);
        let am = a.map(c, c2, m.index);
        for (s2, &x2) in images[c2].iter().enumerate() {
            for k in 0..tgt.hom_rank(x2, d) {
                // h ∘ F(φ) expanded in the basis of D(F c, d)
                let mut hv: Vec<(usize, SVec)> = Vec::new();
                for (s, &x) in images[c].iter().enumerate() {
                    let mut acc = SVec::new();
                    for (mm, coef) in fm[s][s2].iter() {
                        acc = acc.add_scaled(&tgt.compose(x, x2, d, *mm, k), coef);
                    }
                    if !acc.is_empty() {
                        hv.push((s, acc));
                    }
                }
                for i in 0..lay.ngens[c] {
                    let mut pairs: Vec<(usize, Int)> = Vec::new();
                    for (s, acc) in &hv {
                        for (kk, v) in acc.iter() {
                            pairs.push((lay.index(c, *s, *kk, i), v.clone()));
                        }
                    }
                    for (j, v) in am.column(i).iter().enumerate() {
                        if !v.is_zero() {
                            pairs.push((lay.index(c2, s2, k, j), -v));
                        }
                    }
                    let r = SVec::from_pairs(pairs);
                    if !r.is_empty() {
                        rels.push(r);
                    }
                }
            }
        }
    }
    rels
}

/// Left Kan extension `Lan_F A`, computed objectwise as a coend.
pub fn left_kan(f: &dyn LinearFunctor, a: &DiagramFunctor) -> Result<LeftKan, KanError> {
    left_kan_objects(f, a, None)
}

/// Left Kan extension restricted to the listed objects; other values are left as zero.
///
/// Structure maps are only meaningful between computed objects.
pub fn left_kan_objects(f: &dyn LinearFunctor, a: &DiagramFunctor, only: Option<&[usize]>) -> Result<LeftKan, KanError> {
    check_source(f, a)?;
    let src = f.source();
    let tgt = f.target().clone();
    let nc = src.object_count();
    let nd = tgt.object_count();
    let images: Vec<Vec<usize>> = (0..nc).map(|c| f.object_image(c)).collect();
    let ngens: Vec<usize> = (0..nc).map(|c| a.value(c).ngens()).collect();
    let wanted = |d: usize| only.map_or(true, |l| l.contains(&d));
    let mut layouts = Vec::with_capacity(nd);
    let mut reductions = Vec::with_capacity(nd);
    let mut cached = Vec::with_capacity(nd);
    for d in 0..nd {
        if !wanted(d) {
            let lay = Layout::new(&images, vec![0; nc], |_| 0);
            reductions.push(reduce_presentation(0, &[]));
            layouts.push(lay);
            cached.push(Vec::new());
            continue;
        }
        let lay = Layout::new(&images, ngens.clone(), |x| tgt.hom_rank(x, d));
        let rels = coend_relations(f, a, &images, &lay, d);
        reductions.push(reduce_presentation(lay.total, &rels));
        layouts.push(lay);
        cached.push(rels);
    }
    let values: Vec<FgAbGroup> = reductions.iter().map(|r| FgAbGroup::from_orders(r.orders.clone())).collect();
    let functor = DiagramFunctor::from_fn(tgt.clone(), values.clone(), |d, d2, psi| {
        if !wanted(d) || !wanted(d2) {
            return AbHom::zero(&values[d], &values[d2]);
        }
        let (lay, lay2) = (&layouts[d], &layouts[d2]);
        let cols: Vec<Vec<Int>> = reductions[d]
            .lift
            .iter()
            .map(|l| {
                let mut img = SVec::new();
                for (g, v) in l.iter() {
                    let (c, s, k, i) = lay.decode(*g);
                    let x = images[c][s];
                    for (k2, w) in tgt.compose(x, d, d2, k, psi).iter() {
                        img = img.add_scaled(&SVec::unit(lay2.index(c, s, *k2, i)), &(v * w));
                    }
                }
                reductions[d2].project(&img)
            })
            .collect();
        AbHom::new(values[d].clone(), values[d2].clone(), IntMatrix::from_columns(&cols, values[d2].ngens())).expect("structure map of a coend")
    });
    Ok(LeftKan { functor, images, layouts, reductions, source_values: a.values().to_vec(), target: tgt, cached_relations: cached })
}

/// `Lan_F(η)` for a natural transformation `η: A → A'`.
pub fn left_kan_map(from: &LeftKan, to: &LeftKan, eta: &NatTrans) -> NatTrans {
    let nd = from.functor.category().object_count();
    let components = (0..nd)
        .map(|d| {
            let (lay, lay2) = (&from.layouts[d], &to.layouts[d]);
            let cols: Vec<Vec<Int>> = from.reductions[d]
                .lift
                .iter()
                .map(|l| {
                    let mut img = SVec::new();
                    for (g, v) in l.iter() {
                        let (c, s, k, i) = lay.decode(*g);
                        for (j, w) in eta.components[c].column(i).iter().enumerate() {
                            if !w.is_zero() {
                                img = img.add_scaled(&SVec::unit(lay2.index(c, s, k, j)), &(v * w));
                            }
                        }
                    }
                    to.reductions[d].project(&img)
                })
                .collect();
            let (s, t) = (from.functor.value(d), to.functor.value(d));
            AbHom::new(s.clone(), t.clone(), IntMatrix::from_columns(&cols, t.ngens())).expect("induced map of coends")
        })
        .collect();
    NatTrans { components }
}

/// Unit `A → (Lan_F A) ∘ F`.
pub fn left_kan_unit(lan: &LeftKan, f: &dyn LinearFunctor) -> NatTrans {
    let components = (0..lan.images.len())
        .map(|c| {
            let parts: Vec<FgAbGroup> = lan.images[c].iter().map(|&x| lan.functor.value(x).clone()).collect();
            let tgt = FgAbGroup::direct_sum(&parts.iter().collect::<Vec<_>>());
            let src = lan.source_values[c].clone();
            let cols: Vec<Vec<Int>> = (0..src.ngens())
                .map(|i| {
                    let mut col = Vec::new();
                    for (s, &x) in lan.images[c].iter().enumerate() {
                        let id = f.target().identity(x);
                        col.extend(lan.class_of(x, c, s, id, &src.basis_element(i)));
                    }
                    col
                })
                .collect();
            AbHom::new(src.clone(), tgt.clone(), IntMatrix::from_columns(&cols, tgt.ngens())).expect("unit component")
        })
        .collect();
    NatTrans { components }
}

/// The transformation `Lan_F A → B` adjunct to `η: A → B ∘ F`.
pub fn left_kan_adjunct(lan: &LeftKan, b: &DiagramFunctor, eta: &NatTrans) -> Result<NatTrans, KanError> {
    let nd = b.category().object_count();
    let mut components = Vec::with_capacity(nd);
    for d in 0..nd {
        let h = lan.map_out(d, b.value(d), |c, s, k, i| {
            let x = lan.images[c][s];
            // component of η_c(eᵢ) in summand s, pushed along h
            let col = eta.components[c].column(i);
            let start: usize = lan.images[c][..s].iter().map(|&y| b.value(y).ngens()).sum();
            let part = &col[start..start + b.value(x).ngens()];
            b.map(x, d, k).apply(part)
        })?;
        components.push(h);
    }
    Ok(NatTrans { components })
}

/// `Ran_F A` with the data needed to map in and out of it.
pub struct RightKan {
    pub functor: DiagramFunctor,
    images: Vec<Vec<usize>>,
    layouts: Vec<Layout>,
    /// `Ran(d) → ⊕_{c, h} A(c)`.
    pub inclusions: Vec<AbHom>,
    solvers: Vec<Solver>,
    source_values: Vec<FgAbGroup>,
}

impl RightKan {
    /// The component `x_{c, h}` of an element, for `h` basis morphism `k` from `d` to summand `s` of `F c`.
    pub fn component(&self, d: usize, x: &[Int], c: usize, s: usize, k: usize) -> Vec<Int> {
        let amb = self.inclusions[d].apply(x);
        let lay = &self.layouts[d];
        (0..lay.ngens[c]).map(|i| amb[lay.index(c, s, k, i)].clone()).collect()
    }

    /// Element with the given ambient family, if the family is compatible.
    pub fn element(&self, d: usize, ambient: &[Int]) -> Option<Vec<Int>> {
        self.solvers[d].solve(ambient)
    }

    fn ambient(&self, d: usize) -> &FgAbGroup {
        self.inclusions[d].target()
    }
}

/// Right Kan extension `Ran_F A`, computed objectwise as an end.
pub fn right_kan(f: &dyn LinearFunctor, a: &DiagramFunctor) -> Result<RightKan, KanError> {
    check_source(f, a)?;
    let src = f.source();
    let tgt = f.target().clone();
    let nc = src.object_count();
    let nd = tgt.object_count();
    let images: Vec<Vec<usize>> = (0..nc).map(|c| f.object_image(c)).collect();
    let ngens: Vec<usize> = (0..nc).map(|c| a.value(c).ngens()).collect();
    let gens = src.generators();
    let mut layouts = Vec::with_capacity(nd);
    let mut inclusions = Vec::with_capacity(nd);
    let mut solvers = Vec::with_capacity(nd);
    for d in 0..nd {
        let lay = Layout::new(&images, ngens.clone(), |x| tgt.hom_rank(d, x));
        let mut orders = Vec::with_capacity(lay.total);
        for c in 0..nc {
            for _ in 0..lay.widths[c] {
                orders.extend(a.value(c).orders().iter().cloned());
            }
        }
        let ambient = FgAbGroup::from_orders(orders);
        // constraint rows
        let mut row_orders: Vec<Int> = Vec::new();
        let mut rows: Vec<Vec<(usize, Int)>> = Vec::new();
        for m in &gens {
            let (c, c2) = (m.source, m.target);
            let fm = f.morphism_image(c, c2, m.index);
            let am = a.map(c, c2, m.index);
            for (s, &x) in images[c].iter().enumerate() {
                for k in 0..tgt.hom_rank(d, x) {
                    let mut hv: Vec<(usize, SVec)> = Vec::new();
                    for (s2, &x2) in images[c2].iter().enumerate() {
                        let mut acc = SVec::new();
                        for (mm, coef) in fm[s][s2].iter() {
                            acc = acc.add_scaled(&tgt.compose(d, x, x2, k, *mm), coef);
                        }
                        if !acc.is_empty() {
                            hv.push((s2, acc));
                        }
                    }
                    for j in 0..ngens[c2] {
                        let mut row: Vec<(usize, Int)> = Vec::new();
                        for i in 0..ngens[c] {
                            let v = am.matrix()[(j, i)].clone();
                            if !v.is_zero() {
                                row.push((lay.index(c, s, k, i), v));
                            }
                        }
                        for (s2, acc) in &hv {
                            for (kk, v) in acc.iter() {
                                row.push((lay.index(c2, *s2, *kk, j), -v));
                            }
                        }
                        rows.push(row);
                        row_orders.push(a.value(c2).order(j).clone());
                    }
                }
            }
        }
        let qgroup = FgAbGroup::from_orders(row_orders);
        let mut mat = IntMatrix::zeros(rows.len(), lay.total);
        for (r, row) in rows.iter().enumerate() {
            for (col, v) in row {
                mat[(r, *col)] += v;
            }
        }
        let constraint = AbHom::new(ambient.clone(), qgroup, mat).map_err(|e| KanError::InvalidFunctor(e.to_string()))?;
        let ker = constraint.kernel();
        solvers.push(ker.inclusion.solver());
        inclusions.push(ker.inclusion);
        layouts.push(lay);
    }
    let values: Vec<FgAbGroup> = inclusions.iter().map(|i| i.source().clone()).collect();
    let functor = DiagramFunctor::from_fn(tgt.clone(), values.clone(), |d, d2, psi| {
        let (lay, lay2) = (&layouts[d], &layouts[d2]);
        let amb = inclusions[d].target();
        let amb2 = inclusions[d2].target();
        let mut m = IntMatrix::zeros(amb2.ngens(), amb.ngens());
        for c in 0..nc {
            for (s, &x) in images[c].iter().enumerate() {
                for k2 in 0..tgt.hom_rank(d2, x) {
                    for (k, w) in tgt.compose(d, d2, x, psi, k2).iter() {
                        for i in 0..ngens[c] {
                            m[(lay2.index(c, s, k2, i), lay.index(c, s, *k, i))] += w;
                        }
                    }
                }
            }
        }
        let amb_map = AbHom::new(amb.clone(), amb2.clone(), m).expect("ambient map");
        amb_map.compose(&inclusions[d]).factor_through(&solvers[d2]).expect("structure map of an end")
    });
    Ok(RightKan { functor, images, layouts, inclusions, solvers, source_values: a.values().to_vec() })
}

/// `Ran_F(η)` for `η: A → A'`.
pub fn right_kan_map(from: &RightKan, to: &RightKan, eta: &NatTrans) -> NatTrans {
    let nd = from.functor.category().object_count();
    let components = (0..nd)
        .map(|d| {
            let (lay, lay2) = (&from.layouts[d], &to.layouts[d]);
            let (amb, amb2) = (from.ambient(d), to.ambient(d));
            let mut m = IntMatrix::zeros(amb2.ngens(), amb.ngens());
            for c in 0..from.images.len() {
                for kk in 0..lay.widths[c] {
                    for i in 0..lay.ngens[c] {
                        for (j, w) in eta.components[c].column(i).iter().enumerate() {
                            if !w.is_zero() {
                                m[(lay2.flat(c, kk, j), lay.flat(c, kk, i))] += w;
                            }
                        }
                    }
                }
            }
            let amb_map = AbHom::new(amb.clone(), amb2.clone(), m).expect("ambient map");
            amb_map.compose(&from.inclusions[d]).factor_through(&to.solvers[d]).expect("induced map of ends")
        })
        .collect();
    NatTrans { components }
}

/// Counit `(Ran_F A) ∘ F → A`.
pub fn right_kan_counit(ran: &RightKan, f: &dyn LinearFunctor) -> NatTrans {
    let components = (0..ran.images.len())
        .map(|c| {
            let parts: Vec<FgAbGroup> = ran.images[c].iter().map(|&x| ran.functor.value(x).clone()).collect();
            let src = FgAbGroup::direct_sum(&parts.iter().collect::<Vec<_>>());
            let tgt = ran.source_values[c].clone();
            let mut cols = Vec::with_capacity(src.ngens());
            for (s, &x) in ran.images[c].iter().enumerate() {
                let id = f.target().identity(x);
                for q in 0..ran.functor.value(x).ngens() {
                    let e = ran.functor.value(x).basis_element(q);
                    cols.push(ran.component(x, &e, c, s, id));
                }
            }
            AbHom::new(src, tgt.clone(), IntMatrix::from_columns(&cols, tgt.ngens())).expect("counit component")
        })
        .collect();
    NatTrans { components }
}

/// The transformation `B → Ran_F A` adjunct to `η: B ∘ F → A`.
pub fn right_kan_adjunct(ran: &RightKan, b: &DiagramFunctor, eta: &NatTrans) -> Result<NatTrans, KanError> {
    let nd = b.category().object_count();
    let mut components = Vec::with_capacity(nd);
    for d in 0..nd {
        let lay = &ran.layouts[d];
        let amb = ran.ambient(d);
        let mut m = IntMatrix::zeros(amb.ngens(), b.value(d).ngens());
        for q in 0..b.value(d).ngens() {
            let e = b.value(d).basis_element(q);
            for (c, im) in ran.images.iter().enumerate() {
                let starts: Vec<usize> = im.iter().scan(0, |acc, &y| {
                    let s = *acc;
                    *acc += b.value(y).ngens();
                    Some(s)
                }).collect();
                let total: usize = im.iter().map(|&y| b.value(y).ngens()).sum();
                for (s, &x) in im.iter().enumerate() {
                    for k in 0..ran.functor.category().hom_rank(d, x) {
                        let mut v = vec![Int::ZERO; total];
                        let pushed = b.map(d, x, k).apply(&e);
                        v[starts[s]..starts[s] + pushed.len()].clone_from_slice(&pushed);
                        let y = eta.components[c].apply(&v);
                        for (i, yi) in y.into_iter().enumerate() {
                            m[(lay.index(c, s, k, i), q)] = yi;
                        }
                    }
                }
            }
        }
        let amb_map = AbHom::new(b.value(d).clone(), amb.clone(), m).map_err(|_| KanError::NotWellDefined)?;
        components.push(amb_map.factor_through(&ran.solvers[d]).ok_or(KanError::NotWellDefined)?);
    }
    Ok(NatTrans { components })
}

/// The group of natural transformations `A → B`, as a subgroup of `⊕_c Hom(A(c), B(c))`.
pub struct NatGroup {
    pub group: FgAbGroup,
    pub inclusion: AbHom,
    homs: Vec<HomGroup>,
    offsets: Vec<usize>,
    solver: Solver,
}

impl NatGroup {
    pub fn transformation(&self, x: &[Int]) -> NatTrans {
        let amb = self.inclusion.apply(x);
        NatTrans {
            components: self.homs.iter().zip(&self.offsets).map(|(h, &o)| h.to_hom(&amb[o..o + h.group.ngens()])).collect(),
        }
    }

    pub fn element(&self, eta: &NatTrans) -> Option<Vec<Int>> {
        let mut amb = Vec::new();
        for (h, e) in self.homs.iter().zip(&eta.components) {
            amb.extend(h.from_hom(e));
        }
        self.solver.solve(&amb)
    }

    /// Precomposition `Nat(X, M) → Nat(Y, M)` along `along: Y → X`.
    pub fn precompose_map(&self, target: &NatGroup, along: &NatTrans) -> AbHom {
        let cols: Vec<Vec<Int>> = (0..self.group.ngens())
            .map(|q| {
                let eta = self.transformation(&self.group.basis_element(q));
                target.element(&eta.compose(along)).expect("precomposite is natural")
            })
            .collect();
        AbHom::new(self.group.clone(), target.group.clone(), IntMatrix::from_columns(&cols, target.group.ngens())).expect("precomposition map")
    }

    /// Postcomposition `Nat(X, M) → Nat(X, N)` along `along: M → N`.
    pub fn postcompose_map(&self, target: &NatGroup, along: &NatTrans) -> AbHom {
        let cols: Vec<Vec<Int>> = (0..self.group.ngens())
            .map(|q| {
                let eta = self.transformation(&self.group.basis_element(q));
                target.element(&along.compose(&eta)).expect("postcomposite is natural")
            })
            .collect();
        AbHom::new(self.group.clone(), target.group.clone(), IntMatrix::from_columns(&cols, target.group.ngens())).expect("postcomposition map")
    }
}

/// Natural transformations between two functors on the same category.
pub fn nat_hom(a: &DiagramFunctor, b: &DiagramFunctor) -> NatGroup {
    let cat = a.category();
    let n = cat.object_count();
    let homs: Vec<HomGroup> = (0..n).map(|c| HomGroup::new(a.value(c), b.value(c))).collect();
    let mut offsets = Vec::with_capacity(n);
    let mut total = 0;
    for h in &homs {
        offsets.push(total);
        total += h.group.ngens();
    }
    let ambient = FgAbGroup::direct_sum(&homs.iter().map(|h| &h.group).collect::<Vec<_>>());
    let gens = cat.generators();
    let mut row_groups = Vec::new();
    let mut blocks: Vec<IntMatrix> = Vec::new();
    for m in &gens {
        let (x, y) = (m.source, m.target);
        let target = HomGroup::new(a.value(x), b.value(y));
        let mut block = IntMatrix::zeros(target.group.ngens(), total);
        for q in 0..homs[x].group.ngens() {
            let h = homs[x].to_hom(&homs[x].group.basis_element(q));
            let v = target.from_hom(&b.map(x, y, m.index).compose(&h));
            for (r, val) in v.into_iter().enumerate() {
                block[(r, offsets[x] + q)] += val;
            }
        }
        for q in 0..homs[y].group.ngens() {
            let h = homs[y].to_hom(&homs[y].group.basis_element(q));
            let v = target.from_hom(&h.compose(a.map(x, y, m.index)));
            for (r, val) in v.into_iter().enumerate() {
                block[(r, offsets[y] + q)] -= val;
            }
        }
        row_groups.push(target.group.clone());
        blocks.push(block);
    }
    let qgroup = FgAbGroup::direct_sum(&row_groups.iter().collect::<Vec<_>>());
    let mut mat = IntMatrix::zeros(qgroup.ngens(), total);
    let mut r0 = 0;
    for b in &blocks {
        mat.set_block(r0, 0, b);
        r0 += b.rows();
    }
    let constraint = AbHom::new(ambient, qgroup, mat).expect("naturality constraint");
    let ker = constraint.kernel();
    let solver = ker.inclusion.solver();
    NatGroup { group: ker.group.clone(), inclusion: ker.inclusion, homs, offsets, solver }
}

/// `A ⊗_C B` for `A` on `C^op` and `B` on `C`, presented over `⊕_c A(c) ⊗ B(c)`.
pub struct TensorOver {
    pub group: FgAbGroup,
    offsets: Vec<usize>,
    tensors: Vec<crate::linalg::Tensor>,
    reduction: Reduction,
    relations: Vec<SVec>,
}

impl TensorOver {
    /// Class of `x ⊗ y` at object `c`.
    pub fn class_of(&self, c: usize, x: &[Int], y: &[Int]) -> Vec<Int> {
        let t = self.tensors[c].pair(x, y);
        let v = SVec::from_pairs(t.into_iter().enumerate().map(|(i, v)| (self.offsets[c] + i, v)));
        self.reduction.project(&v)
    }

    /// Map out of `A ⊗_C B` determined by values on generators `(c, tensor coordinate)`; relations are checked.
    pub fn map_out(&self, target: &FgAbGroup, images: &[Vec<Vec<Int>>]) -> Result<AbHom, KanError> {
        let eval = |v: &SVec| -> Vec<Int> {
            let mut out = target.zero_element();
            for (g, c) in v.iter() {
                let cc = self.offsets.partition_point(|&o| o <= *g) - 1;
                let cc = (0..=cc).rev().find(|&x| *g - self.offsets[x] < self.tensors[x].group.ngens()).unwrap();
                for (o, y) in out.iter_mut().zip(&images[cc][*g - self.offsets[cc]]) {
                    *o += c * y;
                }
            }
            target.reduce(&out)
        };
        for r in &self.relations {
            if !target.is_zero_element(&eval(r)) {
                return Err(KanError::NotWellDefined);
            }
        }
        let cols: Vec<Vec<Int>> = self.reduction.lift.iter().map(|l| eval(l)).collect();
        AbHom::new(self.group.clone(), target.clone(), IntMatrix::from_columns(&cols, target.ngens())).map_err(|_| KanError::NotWellDefined)
    }

    pub fn tensor(&self, c: usize) -> &crate::linalg::Tensor {
        &self.tensors[c]
    }

    /// Map `A ⊗_C B → A' ⊗_C B'` induced by `α: A → A'` and `β: B → B'`.
    pub fn induced_map(&self, target: &TensorOver, alpha: &NatTrans, beta: &NatTrans) -> AbHom {
        let images: Vec<Vec<Vec<Int>>> = (0..self.tensors.len())
            .map(|c| {
                let tm = self.tensors[c].map(&target.tensors[c], &alpha.components[c], &beta.components[c]);
                (0..self.tensors[c].group.ngens())
                    .map(|q| {
                        let v = SVec::from_pairs(tm.column(q).into_iter().enumerate().map(|(i, v)| (target.offsets[c] + i, v)));
                        target.reduction.project(&v)
                    })
                    .collect()
            })
            .collect();
        self.map_out(&target.group, &images).expect("induced map of tensor products")
    }
}

/// The coend `A ⊗_C B`; `a` must be a functor on the opposite of `b`'s category with matching generators.
pub fn tensor_over(a: &DiagramFunctor, b: &DiagramFunctor) -> TensorOver {
    let cat = b.category();
    let n = cat.object_count();
    let tensors: Vec<crate::linalg::Tensor> = (0..n).map(|c| crate::linalg::Tensor::new(a.value(c), b.value(c))).collect();
    let mut offsets = Vec::with_capacity(n);
    let mut total = 0;
    for t in &tensors {
        offsets.push(total);
        total += t.group.ngens();
    }
    let mut rels = Vec::new();
    for (c, t) in tensors.iter().enumerate() {
        for (i, o) in t.group.orders().iter().enumerate() {
            if !o.is_zero() {
                rels.push(SVec::from_pairs([(offsets[c] + i, o.clone())]));
            }
        }
    }
    for m in cat.generators() {
        // φ: x → y in C; A(φ): A(y) → A(x); B(φ): B(x) → B(y)
        let (x, y) = (m.source, m.target);
        let am = a.map(y, x, m.index);
        let bm = b.map(x, y, m.index);
        for i in 0..a.value(y).ngens() {
            let ai = am.column(i);
            for j in 0..b.value(x).ngens() {
                let bj = bm.column(j);
                let mut pairs: Vec<(usize, Int)> = Vec::new();
                for (p, u) in ai.iter().enumerate() {
                    if let Some(q) = tensors[x].coordinate(p, j) {
                        if !u.is_zero() {
                            pairs.push((offsets[x] + q, u.clone()));
                        }
                    }
                }
                for (p, u) in bj.iter().enumerate() {
                    if let Some(q) = tensors[y].coordinate(i, p) {
                        if !u.is_zero() {
                            pairs.push((offsets[y] + q, -u));
                        }
                    }
                }
                let r = SVec::from_pairs(pairs);
                if !r.is_empty() {
                    rels.push(r);
                }
            }
        }
    }
    let reduction = reduce_presentation(total, &rels);
    TensorOver { group: FgAbGroup::from_orders(reduction.orders.clone()), offsets, tensors, reduction, relations: rels }
}
