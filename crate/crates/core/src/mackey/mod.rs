//! Mackey functors as additive functors on `ℬ_G`, the box product `□`, internal Hom, and the Kan
//! extensions `L` and `R*` from (co)coefficient systems.

mod closed;
mod compare;
mod green;
mod levelwise;

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

pub use closed::{curry, duality_check, find_isomorphism, hom_m, hom_unit_evaluation, uncurry, DualityReport, HomM, IsoSearch, Obstruction};
pub use compare::{
    chain_product_comparison, lemma_suite, l_boxtimes_comparison, representable_box_comparison, representable_sum, ChainComparison,
    ExternalProduct,
};
pub use green::{burnside_green, unit_isomorphism, zbar_green, GreenFunctor};
pub use levelwise::{inverse_point, levelwise_view, mackey_from_levelwise, LevelwiseData};

use crate::burnside::SpanMatrix;
use crate::categories::GroupCategories;
use crate::coeff::{lan_product_complex, CoCoeffSystem, CoeffSystem, FunctorComplex, ProductComplex};
use crate::kan::{
    external_tensor, external_tensor_map, left_kan, left_kan_map, right_kan, Cat, DiagramFunctor, KanError, LeftKan, LinearFunctor,
    NatTrans, RightKan,
};
use crate::linalg::{AbHom, FgAbGroup, Int, IntMatrix, SVec, Tensor};

/// A Mackey functor is a functor on `ℬ_G`.
pub type MackeyFunctor = DiagramFunctor;
/// Bounded complexes of Mackey functors.
pub type MackeyChainComplex = FunctorComplex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MackeyError {
    #[error("Mackey axiom fails: {0}")]
    MackeyAxiomViolation(String),
    #[error("missing levelwise data: {0}")]
    MissingData(String),
    #[error("not isomorphic: {0}")]
    NotIsomorphic(String),
    #[error("chain is not a cycle in degree {0}")]
    NotACycle(usize),
    #[error("not a natural transformation")]
    NotNatural,
    #[error(transparent)]
    Kan(#[from] KanError),
}

/// The linearization `𝒪_G^op → ℬ_G` sending an orbit map to its restriction span.
pub struct RestrictionFunctor {
    cats: Arc<GroupCategories>,
}

impl RestrictionFunctor {
    pub fn new(cats: Arc<GroupCategories>) -> Self {
        RestrictionFunctor { cats }
    }
}

impl LinearFunctor for RestrictionFunctor {
    fn source(&self) -> &Cat {
        self.cats.orbit_op()
    }

    fn target(&self) -> &Cat {
        self.cats.burnside_cat()
    }

    fn object_image(&self, c: usize) -> Vec<usize> {
        vec![c]
    }

    fn morphism_image(&self, a: usize, b: usize, f: usize) -> Vec<Vec<SVec>> {
        let p = self.cats.orbit.point(b, a, f);
        vec![vec![SVec::unit(self.cats.burnside.restriction_basis(b, a, p))]]
    }
}

/// The linearization `𝒪_G → ℬ_G` sending an orbit map to its transfer span.
pub struct TransferFunctor {
    cats: Arc<GroupCategories>,
}

impl TransferFunctor {
    pub fn new(cats: Arc<GroupCategories>) -> Self {
        TransferFunctor { cats }
    }
}

impl LinearFunctor for TransferFunctor {
    fn source(&self) -> &Cat {
        self.cats.orbit_cat()
    }

    fn target(&self) -> &Cat {
        self.cats.burnside_cat()
    }

    fn object_image(&self, c: usize) -> Vec<usize> {
        vec![c]
    }

    fn morphism_image(&self, a: usize, b: usize, f: usize) -> Vec<Vec<SVec>> {
        let p = self.cats.orbit.point(a, b, f);
        vec![vec![SVec::unit(self.cats.burnside.transfer_basis(a, b, p))]]
    }
}

/// The Cartesian product `ℬ_G × ℬ_G → ℬ_G`.
pub struct BurnsideProduct {
    cats: Arc<GroupCategories>,
}

impl BurnsideProduct {
    pub fn new(cats: Arc<GroupCategories>) -> Self {
        BurnsideProduct { cats }
    }
}

impl LinearFunctor for BurnsideProduct {
    fn source(&self) -> &Cat {
        self.cats.burnside_sq()
    }

    fn target(&self) -> &Cat {
        self.cats.burnside_cat()
    }

    fn object_image(&self, c: usize) -> Vec<usize> {
        let n = self.cats.orbit_count();
        self.cats.ctx.product(c / n, c % n).classes()
    }

    fn morphism_image(&self, a: usize, b: usize, f: usize) -> Vec<Vec<SVec>> {
        let n = self.cats.orbit_count();
        let (a1, a2, b1, b2) = (a / n, a % n, b / n, b % n);
        let r2 = self.cats.burnside.rank(a2, b2);
        self.cats.burnside.product_basis((a1, b1, f / r2), (a2, b2, f % r2)).entries
    }
}

/// `T ↦ G/H_a × T` on `ℬ_G`.
pub struct ProductWith {
    cats: Arc<GroupCategories>,
    left: usize,
}

impl ProductWith {
    pub fn new(cats: Arc<GroupCategories>, left: usize) -> Self {
        ProductWith { cats, left }
    }
}

impl LinearFunctor for ProductWith {
    fn source(&self) -> &Cat {
        self.cats.burnside_cat()
    }

    fn target(&self) -> &Cat {
        self.cats.burnside_cat()
    }

    fn object_image(&self, c: usize) -> Vec<usize> {
        self.cats.ctx.product(self.left, c).classes()
    }

    fn morphism_image(&self, a: usize, b: usize, f: usize) -> Vec<Vec<SVec>> {
        let id = self.cats.burnside.identity_index(self.left);
        self.cats.burnside.product_basis((self.left, self.left, id), (a, b, f)).entries
    }
}

/// Points of `G/H_a` and `G/H_b` hit by the base coset of summand `s` of `G/H_a × G/H_b`.
pub fn summand_projections(cats: &GroupCategories, a: usize, b: usize, s: usize) -> (usize, usize) {
    let summand = &cats.ctx.product(a, b).summands[s];
    let z = summand.iso[cats.orbit.base_point(summand.class)];
    let nb = cats.ctx.orbits[b].size();
    (z / nb, z % nb)
}

/// `M` applied to a matrix of spans between decomposed G-sets.
pub fn apply_span_matrix(m: &MackeyFunctor, sm: &SpanMatrix) -> AbHom {
    let sources: Vec<FgAbGroup> = sm.sources.iter().map(|&x| m.value(x).clone()).collect();
    let targets: Vec<FgAbGroup> = sm.targets.iter().map(|&x| m.value(x).clone()).collect();
    let blocks: Vec<Vec<Option<AbHom>>> = (0..sm.targets.len())
        .map(|t| (0..sm.sources.len()).map(|s| Some(m.apply_vec(sm.sources[s], sm.targets[t], &sm.entries[s][t]))).collect())
        .collect();
    AbHom::from_blocks(&sources, &targets, &blocks)
}

/// The represented functor `ℬ_G(G/H_c, −)`.
pub fn representable_mackey(cats: &GroupCategories, c: usize) -> MackeyFunctor {
    let bc = &cats.burnside;
    let n = cats.orbit_count();
    let values: Vec<FgAbGroup> = (0..n).map(|d| FgAbGroup::free(bc.rank(c, d))).collect();
    DiagramFunctor::from_fn(cats.burnside_cat().clone(), values.clone(), |d, d2, f| {
        let mut m = IntMatrix::zeros(bc.rank(c, d2), bc.rank(c, d));
        for x in 0..bc.rank(c, d) {
            for (y, v) in bc.compose_basis(c, d, d2, x, f).iter() {
                m[(*y, x)] += v;
            }
        }
        AbHom::new(values[d].clone(), values[d2].clone(), m).expect("composition map")
    })
}

/// The Burnside functor `𝒜 = ℬ_G(G/G, −)`, with `𝒜(G/H) = A(H)`.
pub fn burnside_functor(cats: &GroupCategories) -> MackeyFunctor {
    representable_mackey(cats, cats.ctx.top())
}

/// The constant Green functor `Z̄`: restrictions are identities, transfers multiply by the index.
pub fn zbar(cats: &GroupCategories) -> MackeyFunctor {
    let z = FgAbGroup::free(1);
    let n = cats.orbit_count();
    DiagramFunctor::from_fn(cats.burnside_cat().clone(), vec![z.clone(); n], |d, d2, f| {
        let span = &cats.burnside.basis(d, d2)[f];
        let k = cats.ctx.orbits[d2].subgroup.order() / cats.ctx.orbits[span.middle].subgroup.order();
        AbHom::new(z.clone(), z.clone(), IntMatrix::from_i64(&[&[k as i64]])).unwrap()
    })
}

/// `M* = Hom(M(−), Z)`, made covariant by transposing spans. Values must be free.
pub fn dual_mackey(cats: &GroupCategories, m: &MackeyFunctor) -> MackeyFunctor {
    assert!(m.values().iter().all(FgAbGroup::is_free), "dual of a Mackey functor with torsion");
    DiagramFunctor::from_fn(cats.burnside_cat().clone(), m.values().to_vec(), |d, d2, f| {
        let t = cats.burnside.transpose_basis(d, d2, f);
        let h = m.map(d2, d, t);
        AbHom::new(m.value(d).clone(), m.value(d2).clone(), h.matrix().transpose()).unwrap()
    })
}

/// `L A`, the left Kan extension along `𝒪_G^op → ℬ_G`.
pub fn mackey_l(cats: &Arc<GroupCategories>, a: &CoeffSystem) -> Result<LeftKan, KanError> {
    left_kan(&RestrictionFunctor::new(cats.clone()), a)
}

/// `L` applied degreewise to a complex of coefficient systems.
pub struct LComplex {
    pub complex: MackeyChainComplex,
    pub lans: Vec<LeftKan>,
}

/// `C_M(X) = L C_G(X)` when applied to a cellular chain complex.
pub fn l_complex(cats: &Arc<GroupCategories>, c: &FunctorComplex) -> Result<LComplex, KanError> {
    let lans: Vec<LeftKan> = c.terms.iter().map(|t| mackey_l(cats, t)).collect::<Result<_, _>>()?;
    let differentials = c.differentials.iter().enumerate().map(|(i, d)| left_kan_map(&lans[i + 1], &lans[i], d)).collect();
    let terms = lans.iter().map(|l| l.functor.clone()).collect();
    Ok(LComplex { complex: FunctorComplex { terms, differentials }, lans })
}

/// `R* A`, the right Kan extension along `𝒪_G → ℬ_G`.
pub fn rstar(cats: &Arc<GroupCategories>, a: &CoCoeffSystem) -> Result<RightKan, KanError> {
    right_kan(&TransferFunctor::new(cats.clone()), a)
}

/// `M □ N`.
pub fn box_product(cats: &Arc<GroupCategories>, m: &MackeyFunctor, n: &MackeyFunctor) -> Result<LeftKan, KanError> {
    left_kan(&BurnsideProduct::new(cats.clone()), &external_tensor(m, n, cats.burnside_sq()))
}

/// `η □ θ`.
pub fn box_map(
    from: &LeftKan,
    to: &LeftKan,
    (m, n): (&MackeyFunctor, &MackeyFunctor),
    (m2, n2): (&MackeyFunctor, &MackeyFunctor),
    eta: &NatTrans,
    theta: &NatTrans,
) -> NatTrans {
    left_kan_map(from, to, &external_tensor_map(m, n, m2, n2, eta, theta))
}

/// Degreewise `C □ D` with the Leibniz differential.
pub fn box_complex(cats: &Arc<GroupCategories>, c: &MackeyChainComplex, d: &MackeyChainComplex) -> Result<ProductComplex, KanError> {
    lan_product_complex(&BurnsideProduct::new(cats.clone()), c, d)
}

/// `C □ M` for a single Mackey functor `M` in degree zero.
pub fn box_with(cats: &Arc<GroupCategories>, c: &MackeyChainComplex, m: &MackeyFunctor) -> Result<ProductComplex, KanError> {
    box_complex(cats, c, &FunctorComplex { terms: vec![m.clone()], differentials: Vec::new() })
}

/// The map `M □ N → P` induced by a pairing `M(c₁) ⊗ N(c₂) → P(c₁ × c₂)`.
///
/// `pairing(c₁, c₂, i, j)` gives the image of `eᵢ ⊗ eⱼ`, one vector per orbit summand of `c₁ × c₂`.
/// Fails if the pairing is not compatible with the structure maps.
pub fn box_from_pairing(
    cats: &GroupCategories,
    bx: &LeftKan,
    m: &MackeyFunctor,
    n: &MackeyFunctor,
    p: &MackeyFunctor,
    mut pairing: impl FnMut(usize, usize, usize, usize) -> Vec<Vec<Int>>,
) -> Result<NatTrans, KanError> {
    let k = cats.orbit_count();
    let tensors: Vec<Tensor> = (0..k * k).map(|c| Tensor::new(m.value(c / k), n.value(c % k))).collect();
    let mut cache: HashMap<(usize, usize), Vec<Vec<Int>>> = HashMap::new();
    let mut components = Vec::with_capacity(k);
    for d in 0..k {
        let h = bx.map_out(d, p.value(d), |c, s, kk, i| {
            let parts = cache.entry((c, i)).or_insert_with(|| {
                let (i1, i2) = tensors[c].generator(i);
                pairing(c / k, c % k, i1, i2)
            });
            let x = cats.ctx.product(c / k, c % k).summands[s].class;
            p.map(x, d, kk).apply(&parts[s])
        })?;
        components.push(h);
    }
    Ok(NatTrans { components })
}

/// Split a vector of `⊕ᵢ P(xᵢ)` into its summands.
pub(crate) fn split_parts(p: &MackeyFunctor, classes: &[usize], v: &[Int]) -> Vec<Vec<Int>> {
    let mut out = Vec::with_capacity(classes.len());
    let mut start = 0;
    for &x in classes {
        let len = p.value(x).ngens();
        out.push(v[start..start + len].to_vec());
        start += len;
    }
    out
}
