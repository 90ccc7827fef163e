use std::sync::Arc;

use crate::linalg::{Int, SVec};

/// A basis morphism `source → target` with its index in the hom basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub index: usize,
}

/// A finite category enriched in free abelian groups with chosen bases.
pub trait LinearCategory: Send + Sync {
    fn object_count(&self) -> usize;
    fn hom_rank(&self, a: usize, b: usize) -> usize;
    /// Basis index of the identity of `a`.
    fn identity(&self, a: usize) -> usize;
    /// `g ∘ f` for basis morphisms `f: a → b`, `g: b → c`.
    fn compose(&self, a: usize, b: usize, c: usize, f: usize, g: usize) -> SVec;
    /// Morphisms generating the category under composition and linear combination.
    fn generators(&self) -> Vec<Morphism>;

    fn object_label(&self, a: usize) -> String {
        a.to_string()
    }

    fn morphism_label(&self, a: usize, b: usize, f: usize) -> String {
        format!("{} -> {} #{}", self.object_label(a), self.object_label(b), f)
    }

    /// Bilinear composite of coefficient vectors.
    fn compose_vec(&self, a: usize, b: usize, c: usize, f: &SVec, g: &SVec) -> SVec {
        let mut out = SVec::new();
        for (i, x) in f.iter() {
            for (j, y) in g.iter() {
                out = out.add_scaled(&self.compose(a, b, c, *i, *j), &(x * y));
            }
        }
        out
    }
}

pub type Cat = Arc<dyn LinearCategory>;

/// Every non-identity basis morphism.
pub fn all_non_identity(cat: &dyn LinearCategory) -> Vec<Morphism> {
    let n = cat.object_count();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for f in 0..cat.hom_rank(a, b) {
                if a != b || f != cat.identity(a) {
                    out.push(Morphism { source: a, target: b, index: f });
                }
            }
        }
    }
    out
}

/// The opposite category; hom bases are shared with the original.
pub struct Opposite {
    inner: Cat,
}

impl Opposite {
    pub fn new(inner: Cat) -> Self {
        Opposite { inner }
    }

    pub fn inner(&self) -> &Cat {
        &self.inner
    }
}

impl LinearCategory for Opposite {
    fn object_count(&self) -> usize {
        self.inner.object_count()
    }

    fn hom_rank(&self, a: usize, b: usize) -> usize {
        self.inner.hom_rank(b, a)
    }

    fn identity(&self, a: usize) -> usize {
        self.inner.identity(a)
    }

    fn compose(&self, a: usize, b: usize, c: usize, f: usize, g: usize) -> SVec {
        self.inner.compose(c, b, a, g, f)
    }

    fn generators(&self) -> Vec<Morphism> {
        self.inner.generators().into_iter().map(|m| Morphism { source: m.target, target: m.source, index: m.index }).collect()
    }

    fn object_label(&self, a: usize) -> String {
        self.inner.object_label(a)
    }

    fn morphism_label(&self, a: usize, b: usize, f: usize) -> String {
        format!("op({})", self.inner.morphism_label(b, a, f))
    }
}

/// Product category; object `(a₁, a₂)` is `a₁·n₂ + a₂` and morphism `(f₁, f₂)` is `f₁·r₂ + f₂`.
pub struct Product {
    left: Cat,
    right: Cat,
}

impl Product {
    pub fn new(left: Cat, right: Cat) -> Self {
        Product { left, right }
    }

    pub fn split(&self, a: usize) -> (usize, usize) {
        let n2 = self.right.object_count();
        (a / n2, a % n2)
    }

    pub fn pair(&self, a1: usize, a2: usize) -> usize {
        a1 * self.right.object_count() + a2
    }

    /// Split a morphism index of `hom(a, b)`.
    pub fn split_morphism(&self, a: usize, b: usize, f: usize) -> (usize, usize) {
        let ((_, a2), (_, b2)) = (self.split(a), self.split(b));
        let r2 = self.right.hom_rank(a2, b2);
        (f / r2, f % r2)
    }

    pub fn pair_morphism(&self, a: usize, b: usize, f1: usize, f2: usize) -> usize {
        let ((_, a2), (_, b2)) = (self.split(a), self.split(b));
        f1 * self.right.hom_rank(a2, b2) + f2
    }

    pub fn left(&self) -> &Cat {
        &self.left
    }

    pub fn right(&self) -> &Cat {
        &self.right
    }
}

impl LinearCategory for Product {
    fn object_count(&self) -> usize {
        self.left.object_count() * self.right.object_count()
    }

    fn hom_rank(&self, a: usize, b: usize) -> usize {
        let ((a1, a2), (b1, b2)) = (self.split(a), self.split(b));
        self.left.hom_rank(a1, b1) * self.right.hom_rank(a2, b2)
    }

    fn identity(&self, a: usize) -> usize {
        let (a1, a2) = self.split(a);
        self.pair_morphism(a, a, self.left.identity(a1), self.right.identity(a2))
    }

    fn compose(&self, a: usize, b: usize, c: usize, f: usize, g: usize) -> SVec {
        let ((a1, a2), (b1, b2), (c1, c2)) = (self.split(a), self.split(b), self.split(c));
        let (f1, f2) = self.split_morphism(a, b, f);
        let (g1, g2) = self.split_morphism(b, c, g);
        let x = self.left.compose(a1, b1, c1, f1, g1);
        let y = self.right.compose(a2, b2, c2, f2, g2);
        let r2 = self.right.hom_rank(a2, c2);
        let mut pairs: Vec<(usize, Int)> = Vec::with_capacity(x.len() * y.len());
        for (i, u) in x.iter() {
            for (j, v) in y.iter() {
                pairs.push((i * r2 + j, u * v));
            }
        }
        SVec::from_pairs(pairs)
    }

    fn generators(&self) -> Vec<Morphism> {
        let mut out = Vec::new();
        let (n1, n2) = (self.left.object_count(), self.right.object_count());
        for m in self.left.generators() {
            for x in 0..n2 {
                let (s, t) = (self.pair(m.source, x), self.pair(m.target, x));
                out.push(Morphism { source: s, target: t, index: self.pair_morphism(s, t, m.index, self.right.identity(x)) });
            }
        }
        for m in self.right.generators() {
            for x in 0..n1 {
                let (s, t) = (self.pair(x, m.source), self.pair(x, m.target));
                out.push(Morphism { source: s, target: t, index: self.pair_morphism(s, t, self.left.identity(x), m.index) });
            }
        }
        out
    }

    fn object_label(&self, a: usize) -> String {
        let (a1, a2) = self.split(a);
        format!("({}, {})", self.left.object_label(a1), self.right.object_label(a2))
    }

    fn morphism_label(&self, a: usize, b: usize, f: usize) -> String {
        let ((a1, a2), (b1, b2)) = (self.split(a), self.split(b));
        let (f1, f2) = self.split_morphism(a, b, f);
        format!("({}, {})", self.left.morphism_label(a1, b1, f1), self.right.morphism_label(a2, b2, f2))
    }
}

/// A linear functor whose object images are direct sums of objects.
pub trait LinearFunctor: Send + Sync {
    fn source(&self) -> &Cat;
    fn target(&self) -> &Cat;
    /// Summands of the image of `c`.
    fn object_image(&self, c: usize) -> Vec<usize>;
    /// `result[s][t]`: the component from summand `s` of `F a` to summand `t` of `F b`.
    fn morphism_image(&self, a: usize, b: usize, f: usize) -> Vec<Vec<SVec>>;
}

pub struct IdentityFunctor {
    cat: Cat,
}

impl IdentityFunctor {
    pub fn new(cat: Cat) -> Self {
        IdentityFunctor { cat }
    }
}

impl LinearFunctor for IdentityFunctor {
    fn source(&self) -> &Cat {
        &self.cat
    }

    fn target(&self) -> &Cat {
        &self.cat
    }

    fn object_image(&self, c: usize) -> Vec<usize> {
        vec![c]
    }

    fn morphism_image(&self, _a: usize, _b: usize, f: usize) -> Vec<Vec<SVec>> {
        vec![vec![SVec::unit(f)]]
    }
}
