use std::sync::Arc;

use thiserror::Error;

use super::{representable, representable_map, CoCoeffSystem, CoeffSystem};
use crate::categories::GroupCategories;
use crate::chain::{AbChainComplex, AbCochainComplex};
use crate::context::GroupContext;
use crate::groups::{gset_product, GSet, Subgroup};
use crate::kan::{dual_functor, dual_transformation, NatTrans};
use crate::linalg::{Int, IntMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
}

fn invalid(msg: impl Into<String>) -> ComplexError {
    ComplexError::InvalidComplex(msg.into())
}

/// The cells of one dimension: a G-set, optionally with orientation signs `signs[g][x]`,
/// so that `g·e_x = signs[g][x] e_{gx}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellSet {
    pub gset: GSet,
    pub signs: Option<Vec<Vec<i8>>>,
}

impl CellSet {
    pub fn unsigned(gset: GSet) -> Self {
        CellSet { gset, signs: None }
    }

    pub fn signed(gset: GSet, signs: Vec<Vec<i8>>) -> Self {
        CellSet { gset, signs: Some(signs) }
    }

    fn sign(&self, g: usize, x: usize) -> i64 {
        self.signs.as_ref().map_or(1, |s| s[g][x] as i64)
    }
}

/// A finite G-CW complex given by its cells and equivariant incidence matrices.
///
/// Internally the orientation of every cell orbit is transported from one chosen cell, so the stored
/// action is unsigned; `boundary(n)` refers to these orientations.
#[derive(Clone, Debug)]
pub struct GCWComplex {
    ctx: Arc<GroupContext>,
    cells: Vec<GSet>,
    /// `boundaries[n - 1]` is `∂_n`, of shape `|I_{n-1}| × |I_n|`.
    boundaries: Vec<IntMatrix>,
    input: (Vec<CellSet>, Vec<IntMatrix>),
}

impl GCWComplex {
    pub fn new(ctx: Arc<GroupContext>, cells: Vec<GSet>, boundaries: Vec<IntMatrix>) -> Result<Self, ComplexError> {
        Self::new_signed(ctx, cells.into_iter().map(CellSet::unsigned).collect(), boundaries)
    }

    pub fn new_signed(ctx: Arc<GroupContext>, cells: Vec<CellSet>, boundaries: Vec<IntMatrix>) -> Result<Self, ComplexError> {
        let g = &ctx.group;
        if boundaries.len() + 1 != cells.len().max(1) {
            return Err(invalid(format!("{} cell dimensions need {} boundary matrices", cells.len(), cells.len().saturating_sub(1))));
        }
        for (n, c) in cells.iter().enumerate() {
            if c.gset.size() > 0 && c.gset.action_row(0).len() != c.gset.size() {
                return Err(invalid(format!("cells in dimension {n} are not a G-set")));
            }
            if let Some(s) = &c.signs {
                if s.len() != g.order() || s.iter().any(|r| r.len() != c.gset.size() || r.iter().any(|&v| v != 1 && v != -1)) {
                    return Err(invalid(format!("signs in dimension {n} must be ±1 for every group element and cell")));
                }
                for a in g.elements() {
                    for b in g.elements() {
                        for x in 0..c.gset.size() {
                            if c.sign(g.mul(a, b), x) != c.sign(a, c.gset.act(b, x)) * c.sign(b, x) {
                                return Err(invalid(format!("signs in dimension {n} are not a cocycle at cell {x}")));
                            }
                        }
                    }
                }
                for a in g.elements() {
                    for x in 0..c.gset.size() {
                        if c.gset.act(a, x) == x && c.sign(a, x) != 1 {
                            return Err(invalid(format!("cell {x} in dimension {n} is reversed by an element fixing it")));
                        }
                    }
                }
            }
        }
        for (i, d) in boundaries.iter().enumerate() {
            let (lo, hi) = (&cells[i], &cells[i + 1]);
            if d.rows() != lo.gset.size() || d.cols() != hi.gset.size() {
                return Err(invalid(format!("boundary in dimension {} has shape {}×{}, expected {}×{}", i + 1, d.rows(), d.cols(), lo.gset.size(), hi.gset.size())));
            }
            for a in g.elements() {
                for x in 0..hi.gset.size() {
                    for y in 0..lo.gset.size() {
                        let lhs = &d[(lo.gset.act(a, y), hi.gset.act(a, x))] * &Int::from(hi.sign(a, x));
                        let rhs = &d[(y, x)] * &Int::from(lo.sign(a, y));
                        if lhs != rhs {
                            return Err(invalid(format!("boundary in dimension {} is not equivariant at cell {x}", i + 1)));
                        }
                    }
                }
            }
        }
        let orientation: Vec<Vec<i64>> = cells.iter().map(|c| orbit_orientation(&ctx, c)).collect();
        let normalized: Vec<IntMatrix> = boundaries
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mut m = d.clone();
                for y in 0..m.rows() {
                    for x in 0..m.cols() {
                        if orientation[i][y] * orientation[i + 1][x] < 0 {
                            m[(y, x)] = -&m[(y, x)];
                        }
                    }
                }
                m
            })
            .collect();
        for (i, d) in normalized.iter().enumerate() {
            let (lo, hi) = (&cells[i].gset, &cells[i + 1].gset);
            for x in 0..hi.size() {
                let stab = Subgroup::new(g, hi.stabilizer_elements(g, x)).expect("stabilizer");
                for y in 0..lo.size() {
                    if !d[(y, x)].is_zero() && !lo.is_fixed(&stab, y) {
                        return Err(invalid(format!("cell {x} in dimension {} has boundary meeting cell {y}, which is not fixed by its stabilizer", i + 1)));
                    }
                }
            }
        }
        for i in 1..normalized.len() {
            if !normalized[i - 1].mul(&normalized[i]).is_zero() {
                return Err(invalid(format!("∂∘∂ ≠ 0 out of dimension {}", i + 1)));
            }
        }
        Ok(GCWComplex { ctx, cells: cells.iter().map(|c| c.gset.clone()).collect(), boundaries: normalized, input: (cells, boundaries) })
    }

    pub fn context(&self) -> &Arc<GroupContext> {
        &self.ctx
    }

    /// Number of cell dimensions (top dimension plus one).
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.iter().all(|c| c.size() == 0)
    }

    pub fn cells(&self, n: usize) -> GSet {
        self.cells.get(n).cloned().unwrap_or_else(GSet::empty)
    }

    /// `∂_n : Z[I_n] → Z[I_{n-1}]` in the normalized orientation.
    pub fn boundary(&self, n: usize) -> IntMatrix {
        match n.checked_sub(1).and_then(|i| self.boundaries.get(i)) {
            Some(d) => d.clone(),
            None => {
                let rows = if n == 0 { 0 } else { self.cells(n - 1).size() };
                IntMatrix::zeros(rows, self.cells(n).size())
            }
        }
    }

    /// The data the complex was built from.
    pub fn input(&self) -> (&[CellSet], &[IntMatrix]) {
        (&self.input.0, &self.input.1)
    }

    /// Cellular chain complex of the fixed-point subcomplex `X^H`.
    pub fn fixed_point_chain(&self, h: &Subgroup) -> AbChainComplex {
        let fixed: Vec<Vec<usize>> = self.cells.iter().map(|c| c.fixed_point_list(h)).collect();
        let groups: Vec<_> = fixed.iter().map(|f| crate::linalg::FgAbGroup::free(f.len())).collect();
        let diffs = (1..self.len())
            .map(|n| {
                let d = self.boundary(n);
                let mut m = IntMatrix::zeros(fixed[n - 1].len(), fixed[n].len());
                for (j, &x) in fixed[n].iter().enumerate() {
                    for (i, &y) in fixed[n - 1].iter().enumerate() {
                        m[(i, j)] = d[(y, x)].clone();
                    }
                }
                crate::linalg::AbHom::new(groups[n].clone(), groups[n - 1].clone(), m).expect("free groups")
            })
            .collect();
        AbChainComplex::new(groups, diffs).expect("subcomplex of a valid complex")
    }

    /// The underlying nonequivariant cellular chain complex.
    pub fn underlying_chain(&self) -> AbChainComplex {
        self.fixed_point_chain(&Subgroup::trivial(&self.ctx.group))
    }
}

/// `ε(x) = sign(g, x₀)` for `x = g·x₀`, `x₀` the least cell of its orbit.
fn orbit_orientation(ctx: &GroupContext, c: &CellSet) -> Vec<i64> {
    let g = &ctx.group;
    let mut eps = vec![0i64; c.gset.size()];
    for orbit in c.gset.orbits(g) {
        let x0 = orbit[0];
        for a in g.elements() {
            eps[c.gset.act(a, x0)] = c.sign(a, x0);
        }
    }
    eps
}

/// `X × Y` with cells `⊔_{p+q=n} I_p × J_q` and `∂(a×b) = ∂a×b + (−1)^p a×∂b`.
pub fn product_complex(x: &GCWComplex, y: &GCWComplex) -> Result<GCWComplex, ComplexError> {
    if !Arc::ptr_eq(&x.ctx, &y.ctx) && x.ctx.group.table_rows() != y.ctx.group.table_rows() {
        return Err(invalid("factors are complexes over different groups"));
    }
    let g = &x.ctx.group;
    if x.len() == 0 || y.len() == 0 {
        return GCWComplex::new(x.ctx.clone(), Vec::new(), Vec::new());
    }
    let top = x.len() + y.len() - 1;
    let blocks = |n: usize| -> Vec<(usize, usize)> { (0..=n).filter(|&p| p < x.len() && n - p < y.len()).map(|p| (p, n - p)).collect() };
    let offsets = |n: usize| -> Vec<usize> {
        let mut acc = 0;
        blocks(n)
            .iter()
            .map(|&(p, q)| {
                let o = acc;
                acc += x.cells(p).size() * y.cells(q).size();
                o
            })
            .collect()
    };
    let cells: Vec<GSet> = (0..top)
        .map(|n| blocks(n).iter().fold(GSet::empty(), |acc, &(p, q)| acc.disjoint_union(&gset_product(g, &x.cells(p), &y.cells(q)).0, g)))
        .collect();
    let boundaries = (1..top)
        .map(|n| {
            let mut d = IntMatrix::zeros(cells[n - 1].size(), cells[n].size());
            let (lo_blocks, lo_off) = (blocks(n - 1), offsets(n - 1));
            let lo_at = |p: usize, q: usize| lo_blocks.iter().position(|&b| b == (p, q)).map(|i| lo_off[i]);
            for (&(p, q), &off) in blocks(n).iter().zip(offsets(n).iter()) {
                let (ip, jq) = (x.cells(p).size(), y.cells(q).size());
                for a in 0..ip {
                    for b in 0..jq {
                        let col = off + a * jq + b;
                        if p > 0 {
                            if let Some(o) = lo_at(p - 1, q) {
                                let dx = x.boundary(p);
                                for a2 in 0..x.cells(p - 1).size() {
                                    d[(o + a2 * jq + b, col)] = dx[(a2, a)].clone();
                                }
                            }
                        }
                        if q > 0 {
                            if let Some(o) = lo_at(p, q - 1) {
                                let dy = y.boundary(q);
                                let jq1 = y.cells(q - 1).size();
                                for b2 in 0..jq1 {
                                    let v = dy[(b2, b)].clone();
                                    d[(o + a * jq1 + b2, col)] = if p % 2 == 0 { v } else { -&v };
                                }
                            }
                        }
                    }
                }
            }
            d
        })
        .collect();
    GCWComplex::new(x.ctx.clone(), cells, boundaries)
}

/// A bounded complex of functors on one category; `differentials[i] : terms[i+1] → terms[i]`.
#[derive(Clone)]
pub struct FunctorComplex {
    pub terms: Vec<CoeffSystem>,
    pub differentials: Vec<NatTrans>,
}

impl FunctorComplex {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `d_n : C_n → C_{n-1}` for `n ≥ 1`.
    pub fn differential(&self, n: usize) -> &NatTrans {
        &self.differentials[n - 1]
    }

    /// Objectwise `d ∘ d = 0` and naturality of every differential.
    pub fn is_valid(&self) -> bool {
        self.differentials.iter().enumerate().all(|(i, d)| d.is_natural(&self.terms[i + 1], &self.terms[i]))
            && (1..self.differentials.len()).all(|i| self.differentials[i - 1].compose(&self.differentials[i]).components.iter().all(|c| c.is_zero()))
    }

    /// The complex of abelian groups at object `a`.
    pub fn evaluate(&self, a: usize) -> AbChainComplex {
        AbChainComplex::new(
            self.terms.iter().map(|t| t.value(a).clone()).collect(),
            self.differentials.iter().map(|d| d.components[a].clone()).collect(),
        )
        .expect("valid functor complex")
    }
}

/// `codifferentials[i] : terms[i] → terms[i+1]`.
#[derive(Clone)]
pub struct FunctorCochainComplex {
    pub terms: Vec<CoCoeffSystem>,
    pub codifferentials: Vec<NatTrans>,
}

impl FunctorCochainComplex {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        self.codifferentials.iter().enumerate().all(|(i, d)| d.is_natural(&self.terms[i], &self.terms[i + 1]))
            && (1..self.codifferentials.len()).all(|i| self.codifferentials[i].compose(&self.codifferentials[i - 1]).components.iter().all(|c| c.is_zero()))
    }

    pub fn evaluate(&self, a: usize) -> AbCochainComplex {
        AbCochainComplex::new(
            self.terms.iter().map(|t| t.value(a).clone()).collect(),
            self.codifferentials.iter().map(|d| d.components[a].clone()).collect(),
        )
        .expect("valid functor cochain complex")
    }
}

/// `C_G(X)`: `F_{I_n}` in degree `n`, differentials induced by the incidence matrices.
pub fn cellular_chain(cats: &GroupCategories, x: &GCWComplex) -> FunctorComplex {
    let terms: Vec<CoeffSystem> = (0..x.len()).map(|n| representable(cats, &x.cells(n))).collect();
    let differentials = (1..x.len()).map(|n| representable_map(cats, &x.cells(n), &x.cells(n - 1), &x.boundary(n))).collect();
    FunctorComplex { terms, differentials }
}

/// `C*_G(X)`: objectwise `Hom(−, Z)` of `C_G(X)`, a complex of co-coefficient systems.
pub fn dual_cochain(cats: &GroupCategories, x: &GCWComplex) -> FunctorCochainComplex {
    dualize(cats, &cellular_chain(cats, x))
}

pub(crate) fn dualize(cats: &GroupCategories, c: &FunctorComplex) -> FunctorCochainComplex {
    let op = if Arc::ptr_eq(c.terms.first().map_or(cats.orbit_op(), |t| t.category()), cats.orbit_op()) {
        cats.orbit_cat().clone()
    } else {
        cats.orbit_op().clone()
    };
    FunctorCochainComplex {
        terms: c.terms.iter().map(|t| dual_functor(t, &op)).collect(),
        codifferentials: c.differentials.iter().map(dual_transformation).collect(),
    }
}

/// Example complexes.
pub mod bundled {
    use super::*;

    fn require_cyclic(ctx: &GroupContext, n: usize) -> Result<(), ComplexError> {
        let g = &ctx.group;
        if g.order() == n && g.cyclic_generator().is_some() {
            Ok(())
        } else {
            Err(invalid(format!("this complex needs the cyclic group of order {n}, not {}", g.name())))
        }
    }

    fn fixed(ctx: &GroupContext, k: usize) -> GSet {
        (0..k).fold(GSet::empty(), |acc, _| acc.disjoint_union(&GSet::point(&ctx.group), &ctx.group))
    }

    fn free(ctx: &GroupContext, k: usize) -> GSet {
        (0..k).fold(GSet::empty(), |acc, _| acc.disjoint_union(&GSet::regular(&ctx.group), &ctx.group))
    }

    fn matrix(rows: &[&[i64]], nrows: usize, ncols: usize) -> IntMatrix {
        if rows.is_empty() {
            return IntMatrix::zeros(nrows, ncols);
        }
        IntMatrix::from_i64(rows)
    }

    /// A single fixed 0-cell.
    pub fn point(ctx: &Arc<GroupContext>) -> GCWComplex {
        GCWComplex::new(ctx.clone(), vec![fixed(ctx, 1)], Vec::new()).expect("point")
    }

    /// No cells at all.
    pub fn empty(ctx: &Arc<GroupContext>) -> GCWComplex {
        GCWComplex::new(ctx.clone(), Vec::new(), Vec::new()).expect("empty complex")
    }

    /// The sign-representation sphere over `Z/2`: fixed poles `N, S` and a free orbit of arcs `N ← e → S`.
    pub fn sign_sphere(ctx: &Arc<GroupContext>) -> Result<GCWComplex, ComplexError> {
        require_cyclic(ctx, 2)?;
        GCWComplex::new(ctx.clone(), vec![fixed(ctx, 2), free(ctx, 1)], vec![matrix(&[&[1, 1], &[-1, -1]], 2, 2)])
    }

    /// `S^σ` with each arc subdivided at a free orbit of midpoints.
    pub fn sign_sphere_subdivided(ctx: &Arc<GroupContext>) -> Result<GCWComplex, ComplexError> {
        require_cyclic(ctx, 2)?;
        // 0-cells: N, S, m, gm; 1-cells: a, ga (pole N to midpoints), b, gb (midpoints to S)
        let zero = fixed(ctx, 2).disjoint_union(&free(ctx, 1), &ctx.group);
        let d = matrix(&[&[-1, -1, 0, 0], &[0, 0, 1, 1], &[1, 0, -1, 0], &[0, 1, 0, -1]], 4, 4);
        GCWComplex::new(ctx.clone(), vec![zero, free(ctx, 2)], vec![d])
    }

    /// The unreduced suspension of a finite G-set: fixed poles `N, S` and an arc `N ← x → S` for each point `x`.
    pub fn suspension(ctx: &Arc<GroupContext>, s: &GSet) -> Result<GCWComplex, ComplexError> {
        let mut d = IntMatrix::zeros(2, s.size());
        for x in 0..s.size() {
            d[(0, x)] = Int::from(-1);
            d[(1, x)] = Int::ONE;
        }
        GCWComplex::new(ctx.clone(), vec![fixed(ctx, 2), s.clone()], vec![d])
    }

    /// Every bundled complex that makes sense over the group, by name.
    pub fn catalogue(ctx: &Arc<GroupContext>) -> Vec<(String, GCWComplex)> {
        let mut out = vec![("point".to_string(), point(ctx)), ("empty".to_string(), empty(ctx))];
        for (k, o) in ctx.orbits.iter().enumerate() {
            out.push((format!("suspension:{}", ctx.orbit_label(k)), suspension(ctx, &o.gset).expect("suspension of an orbit")));
        }
        let named: [(&str, Result<GCWComplex, ComplexError>); 4] = [
            ("sign-sphere", sign_sphere(ctx)),
            ("sign-sphere-subdivided", sign_sphere_subdivided(ctx)),
            ("antipodal-circle", antipodal_circle_signed(ctx)),
            ("free-circle", free_circle(ctx, ctx.group.order())),
        ];
        out.extend(named.into_iter().filter_map(|(n, x)| x.ok().map(|x| (n.to_string(), x))));
        out
    }

    /// The circle with `Z/n` rotating `n` vertices and `n` edges freely.
    pub fn free_circle(ctx: &Arc<GroupContext>, n: usize) -> Result<GCWComplex, ComplexError> {
        require_cyclic(ctx, n)?;
        let gen = ctx.group.cyclic_generator().expect("cyclic");
        // vertex g^i v and edge g^i e with ∂(g^i e) = g^{i+1} v − g^i v
        let mut d = IntMatrix::zeros(n, n);
        for i in 0..n {
            let next = ctx.group.mul(gen, i);
            d[(next, i)] = &d[(next, i)] + &Int::ONE;
            d[(i, i)] = &d[(i, i)] - &Int::ONE;
        }
        GCWComplex::new(ctx.clone(), vec![free(ctx, 1), free(ctx, 1)], vec![d])
    }

    /// The antipodal circle over `Z/2`, with the second edge given the reversed orientation so that
    /// the generator acts on edges with sign −1.
    pub fn antipodal_circle_signed(ctx: &Arc<GroupContext>) -> Result<GCWComplex, ComplexError> {
        require_cyclic(ctx, 2)?;
        let g = &ctx.group;
        let t = ctx.group.cyclic_generator().expect("cyclic");
        let signs: Vec<Vec<i8>> = g.elements().map(|a| if a == t { vec![-1, -1] } else { vec![1, 1] }).collect();
        let edges = CellSet::signed(free(ctx, 1), signs);
        // ∂e = gv − v, ∂e' = gv − v with e' = −g·e
        let d = if t == 1 { matrix(&[&[-1, -1], &[1, 1]], 2, 2) } else { unreachable!("generator of Z/2 is element 1") };
        GCWComplex::new_signed(ctx.clone(), vec![CellSet::unsigned(free(ctx, 1)), edges], vec![d])
    }
}
