use std::collections::HashMap;
use std::fmt;

use super::category::{Cat, LinearFunctor, Morphism};
use super::KanError;
use crate::linalg::{AbHom, FgAbGroup, Int, SVec, Tensor};

/// A functor from a linear category to finitely generated abelian groups.
///
/// Values are stored per object and maps per basis morphism.
#[derive(Clone)]
pub struct DiagramFunctor {
    category: Cat,
    values: Vec<FgAbGroup>,
    maps: Vec<Vec<Vec<AbHom>>>,
}

impl fmt::Debug for DiagramFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiagramFunctor{:?}", self.values)
    }
}

impl DiagramFunctor {
    /// Build from a map on every basis morphism; no functoriality check is made.
    pub fn from_fn(category: Cat, values: Vec<FgAbGroup>, mut map: impl FnMut(usize, usize, usize) -> AbHom) -> Self {
        let n = category.object_count();
        assert_eq!(values.len(), n, "one value per object");
        let maps = (0..n)
            .map(|a| (0..n).map(|b| (0..category.hom_rank(a, b)).map(|f| map(a, b, f)).collect()).collect())
            .collect();
        DiagramFunctor { category, values, maps }
    }

    /// Extend data given on generating morphisms to all basis morphisms.
    ///
    /// Fails if some basis morphism cannot be reached as a composite.
    pub fn from_generators(category: Cat, values: Vec<FgAbGroup>, given: &HashMap<Morphism, AbHom>) -> Result<Self, KanError> {
        let n = category.object_count();
        if values.len() != n {
            return Err(KanError::InvalidFunctor(format!("expected {n} values, got {}", values.len())));
        }
        let mut known: Vec<Vec<Vec<Option<AbHom>>>> =
            (0..n).map(|a| (0..n).map(|b| vec![None; category.hom_rank(a, b)]).collect()).collect();
        for a in 0..n {
            known[a][a][category.identity(a)] = Some(AbHom::identity(&values[a]));
        }
        for (m, h) in given {
            if !h.source().same_presentation(&values[m.source]) || !h.target().same_presentation(&values[m.target]) {
                return Err(KanError::InvalidFunctor(format!("map on {} has the wrong shape", category.morphism_label(m.source, m.target, m.index))));
            }
            known[m.source][m.target][m.index] = Some(h.clone());
        }
        let gens: Vec<Morphism> = given.keys().copied().collect();
        loop {
            let mut progress = false;
            for g in &gens {
                let (b, c) = (g.source, g.target);
                let fg = known[b][c][g.index].clone().unwrap();
                for a in 0..n {
                    for f in 0..category.hom_rank(a, b) {
                        let Some(ff) = known[a][b][f].clone() else { continue };
                        let comp = category.compose(a, b, c, f, g.index);
                        let unknown: Vec<(usize, Int)> = comp.iter().filter(|(i, _)| known[a][c][*i].is_none()).cloned().collect();
                        if unknown.len() != 1 || !unknown[0].1.is_unit() {
                            continue;
                        }
                        let mut rest = fg.compose(&ff);
                        for (i, v) in comp.iter() {
                            if *i != unknown[0].0 {
                                rest = rest.sub(&known[a][c][*i].as_ref().unwrap().scale(v));
                            }
                        }
                        known[a][c][unknown[0].0] = Some(rest.scale(&unknown[0].1));
                        progress = true;
                    }
                }
            }
            if !progress {
                break;
            }
        }
        let mut maps = Vec::with_capacity(n);
        for (a, row) in known.into_iter().enumerate() {
            let mut out_row = Vec::with_capacity(n);
            for (b, cell) in row.into_iter().enumerate() {
                let mut out = Vec::with_capacity(cell.len());
                for (f, h) in cell.into_iter().enumerate() {
                    match h {
                        Some(h) => out.push(h),
                        None => {
                            return Err(KanError::InvalidFunctor(format!(
                                "{} is not reachable from the given maps",
                                category.morphism_label(a, b, f)
                            )))
                        }
                    }
                }
                out_row.push(out);
            }
            maps.push(out_row);
        }
        Ok(DiagramFunctor { category, values, maps })
    }

    pub fn zero(category: Cat) -> Self {
        let n = category.object_count();
        Self::from_fn(category, vec![FgAbGroup::zero(); n], |_, _, _| AbHom::zero(&FgAbGroup::zero(), &FgAbGroup::zero()))
    }

    pub fn direct_sum(parts: &[&DiagramFunctor]) -> Self {
        let category = parts[0].category.clone();
        let n = category.object_count();
        let values = (0..n).map(|a| FgAbGroup::direct_sum(&parts.iter().map(|p| &p.values[a]).collect::<Vec<_>>())).collect();
        Self::from_fn(category, values, |a, b, f| AbHom::direct_sum(&parts.iter().map(|p| &p.maps[a][b][f]).collect::<Vec<_>>()))
    }

    pub fn category(&self) -> &Cat {
        &self.category
    }

    pub fn value(&self, a: usize) -> &FgAbGroup {
        &self.values[a]
    }

    pub fn values(&self) -> &[FgAbGroup] {
        &self.values
    }

    pub fn map(&self, a: usize, b: usize, f: usize) -> &AbHom {
        &self.maps[a][b][f]
    }

    /// Image of a linear combination of basis morphisms.
    pub fn apply_vec(&self, a: usize, b: usize, v: &SVec) -> AbHom {
        let mut out = AbHom::zero(&self.values[a], &self.values[b]);
        for (i, c) in v.iter() {
            out = out.add(&self.maps[a][b][*i].scale(c));
        }
        out
    }

    /// Replace the values by isomorphic presentations via per-object isomorphisms `iso[a]: F(a) → new(a)`.
    pub fn transport(&self, iso: &[AbHom]) -> Self {
        let inv: Vec<AbHom> = iso.iter().map(|h| h.inverse().expect("transport along isomorphisms")).collect();
        let values = iso.iter().map(|h| h.target().clone()).collect();
        Self::from_fn(self.category.clone(), values, |a, b, f| iso[b].compose(&self.maps[a][b][f]).compose(&inv[a]))
    }

    /// Rank and torsion summary per object.
    pub fn describe(&self) -> Vec<String> {
        self.values.iter().enumerate().map(|(a, v)| format!("{}: {}", self.category.object_label(a), v)).collect()
    }
}

/// Outcome of [`check_functor`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FunctorReport {
    pub violations: Vec<String>,
}

impl FunctorReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verify identities and every composite `g ∘ f` with `g` a generator and `f` a basis morphism.
pub fn check_functor(f: &DiagramFunctor) -> FunctorReport {
    let cat = &f.category;
    let n = cat.object_count();
    let mut violations = Vec::new();
    for a in 0..n {
        let id = cat.identity(a);
        if f.maps[a][a][id] != AbHom::identity(&f.values[a]) {
            violations.push(format!("identity of {} is not sent to the identity", cat.object_label(a)));
        }
    }
    for g in cat.generators() {
        let (b, c) = (g.source, g.target);
        for a in 0..n {
            for h in 0..cat.hom_rank(a, b) {
                let lhs = f.maps[b][c][g.index].compose(&f.maps[a][b][h]);
                let rhs = f.apply_vec(a, c, &cat.compose(a, b, c, h, g.index));
                if lhs != rhs {
                    violations.push(format!(
                        "{} ∘ {} is not preserved",
                        cat.morphism_label(b, c, g.index),
                        cat.morphism_label(a, b, h)
                    ));
                }
            }
        }
    }
    FunctorReport { violations }
}

/// A natural transformation, one component per object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTrans {
    pub components: Vec<AbHom>,
}

impl NatTrans {
    pub fn identity(f: &DiagramFunctor) -> Self {
        NatTrans { components: f.values.iter().map(AbHom::identity).collect() }
    }

    pub fn zero(f: &DiagramFunctor, g: &DiagramFunctor) -> Self {
        NatTrans { components: f.values.iter().zip(&g.values).map(|(a, b)| AbHom::zero(a, b)).collect() }
    }

    /// Failing generators of the naturality square `G(φ)∘η = η∘F(φ)`.
    pub fn naturality_failures(&self, f: &DiagramFunctor, g: &DiagramFunctor) -> Vec<String> {
        let cat = &f.category;
        let mut out = Vec::new();
        for m in cat.generators() {
            let lhs = g.maps[m.source][m.target][m.index].compose(&self.components[m.source]);
            let rhs = self.components[m.target].compose(&f.maps[m.source][m.target][m.index]);
            if lhs != rhs {
                out.push(cat.morphism_label(m.source, m.target, m.index));
            }
        }
        out
    }

    pub fn is_natural(&self, f: &DiagramFunctor, g: &DiagramFunctor) -> bool {
        self.naturality_failures(f, g).is_empty()
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &NatTrans) -> NatTrans {
        NatTrans { components: self.components.iter().zip(&inner.components).map(|(a, b)| a.compose(b)).collect() }
    }

    pub fn add(&self, other: &NatTrans) -> NatTrans {
        NatTrans { components: self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: &Int) -> NatTrans {
        NatTrans { components: self.components.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn is_isomorphism(&self) -> bool {
        self.components.iter().all(AbHom::is_isomorphism)
    }

    pub fn inverse(&self) -> Option<NatTrans> {
        Some(NatTrans { components: self.components.iter().map(AbHom::inverse).collect::<Option<Vec<_>>>()? })
    }
}

/// `B ∘ F` for a functor `F: C → D` and `B` on `D`, with sums of objects sent to direct sums.
pub fn precompose(b: &DiagramFunctor, f: &dyn LinearFunctor) -> DiagramFunctor {
    let src = f.source().clone();
    let n = src.object_count();
    let images: Vec<Vec<usize>> = (0..n).map(|c| f.object_image(c)).collect();
    let parts: Vec<Vec<FgAbGroup>> = images.iter().map(|im| im.iter().map(|&d| b.values[d].clone()).collect()).collect();
    let values = parts.iter().map(|p| FgAbGroup::direct_sum(&p.iter().collect::<Vec<_>>())).collect();
    DiagramFunctor::from_fn(src, values, |x, y, m| {
        let fm = f.morphism_image(x, y, m);
        let blocks: Vec<Vec<Option<AbHom>>> = (0..images[y].len())
            .map(|t| (0..images[x].len()).map(|s| Some(b.apply_vec(images[x][s], images[y][t], &fm[s][t]))).collect())
            .collect();
        AbHom::from_blocks(&parts[x], &parts[y], &blocks)
    })
}

/// Apply a natural transformation `η: B → B'` on `D` to `B∘F → B'∘F`.
pub fn whisker(eta: &NatTrans, f: &dyn LinearFunctor) -> NatTrans {
    let n = f.source().object_count();
    NatTrans {
        components: (0..n)
            .map(|c| AbHom::direct_sum(&f.object_image(c).iter().map(|&d| &eta.components[d]).collect::<Vec<_>>()))
            .collect(),
    }
}

/// External tensor `(a, b) ↦ A(a) ⊗ B(b)` on the product category `prod` of their categories.
pub fn external_tensor(a: &DiagramFunctor, b: &DiagramFunctor, prod: &Cat) -> DiagramFunctor {
    let n2 = b.category.object_count();
    let tensors: Vec<Tensor> = (0..prod.object_count()).map(|x| Tensor::new(a.value(x / n2), b.value(x % n2))).collect();
    let values = tensors.iter().map(|t| t.group.clone()).collect();
    DiagramFunctor::from_fn(prod.clone(), values, |x, y, f| {
        let (x1, x2, y1, y2) = (x / n2, x % n2, y / n2, y % n2);
        let r2 = b.category.hom_rank(x2, y2);
        tensors[x].map(&tensors[y], a.map(x1, y1, f / r2), b.map(x2, y2, f % r2))
    })
}

/// `η ⊗ θ` between external tensors.
pub fn external_tensor_map(a: &DiagramFunctor, b: &DiagramFunctor, a2: &DiagramFunctor, b2: &DiagramFunctor, eta: &NatTrans, theta: &NatTrans) -> NatTrans {
    let (n1, n2) = (a.category.object_count(), b.category.object_count());
    NatTrans {
        components: (0..n1 * n2)
            .map(|x| {
                let s = Tensor::new(a.value(x / n2), b.value(x % n2));
                let t = Tensor::new(a2.value(x / n2), b2.value(x % n2));
                s.map(&t, &eta.components[x / n2], &theta.components[x % n2])
            })
            .collect(),
    }
}

/// Objectwise `Hom(−, Z)` of a functor with free values, on the opposite category `op`.
pub fn dual_functor(f: &DiagramFunctor, op: &Cat) -> DiagramFunctor {
    assert!(f.values.iter().all(FgAbGroup::is_free), "dual of a functor with torsion values");
    DiagramFunctor::from_fn(op.clone(), f.values.clone(), |a, b, m| {
        let h = &f.maps[b][a][m];
        AbHom::new(f.values[a].clone(), f.values[b].clone(), h.matrix().transpose()).expect("transpose of a free map")
    })
}

/// Objectwise transpose of a transformation between functors with free values.
pub fn dual_transformation(eta: &NatTrans) -> NatTrans {
    NatTrans {
        components: eta
            .components
            .iter()
            .map(|h| AbHom::new(h.target().clone(), h.source().clone(), h.matrix().transpose()).expect("transpose of a free map"))
            .collect(),
    }
}
