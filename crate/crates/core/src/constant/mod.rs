//! Z̄-modules: fixed and cofixed point Mackey functors of Z[G]-modules, the universal Z̄-modules Ξ,
//! `C_Z̄(X)`, and fp/cfp-equivalences of Z[G]-chain complexes.

mod sample;
mod snake;

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::categories::GroupCategories;
use crate::chain::{is_quasi_iso, AbChainComplex, ChainMap};
use crate::coeff::{FunctorComplex, GCWComplex};
use crate::groups::{FiniteGroup, GSet, Subgroup};
use crate::kan::NatTrans;
use crate::linalg::{AbHom, Cokernel, FgAbGroup, HomGroup, Int, IntMatrix, Kernel, Tensor};
use crate::mackey::{mackey_from_levelwise, representable_mackey, LevelwiseData, MackeyError, MackeyFunctor};

pub use crate::report::Check;
pub use sample::{nonrealizable_witness_search, random_equivariant_map, random_module, random_ses, RealizabilityWitness, WitnessReport};
pub use snake::{
    augmentation_sequence, counterexample_z2z2, cyclic_exactness_check, exactness_report, lambda_sequence, relation_module, snake_gamma,
    CounterexampleReport, ExactnessReport, ShortExactSequence,
    SubgroupExactness,
};

#[derive(Debug, Error)]
pub enum ConstantError {
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("map is not equivariant")]
    NotEquivariant,
    #[error("not a chain map in degree {0}")]
    NotAChainMap(usize),
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("group is not cyclic")]
    NotCyclic,
    #[error("not a Z̄-module: {0}")]
    NotZbarModule(String),
    #[error(transparent)]
    Mackey(#[from] MackeyError),
}

/// A Z[G]-module: an abelian group with an action matrix for every group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZGModule {
    group: FgAbGroup,
    actions: Vec<AbHom>,
}

impl ZGModule {
    /// Extend actions of generating elements to the whole group, checking the group relations.
    pub fn from_generators(g: &FiniteGroup, group: FgAbGroup, given: &[(usize, AbHom)]) -> Result<Self, ConstantError> {
        for (s, a) in given {
            if *s >= g.order() || !a.source().same_presentation(&group) || !a.target().same_presentation(&group) {
                return Err(ConstantError::InvalidModule(format!("action of element {s} has the wrong shape")));
            }
        }
        let mut actions: Vec<Option<AbHom>> = vec![None; g.order()];
        actions[g.identity()] = Some(AbHom::identity(&group));
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            for (s, a) in given {
                let y = g.mul(*s, x);
                let ay = a.compose(actions[x].as_ref().unwrap());
                match &actions[y] {
                    Some(b) if *b != ay => return Err(ConstantError::InvalidModule(format!("relations fail at element {y}"))),
                    Some(_) => {}
                    None => {
                        actions[y] = Some(ay);
                        queue.push_back(y);
                    }
                }
            }
        }
        let actions: Option<Vec<AbHom>> = actions.into_iter().collect();
        let actions = actions.ok_or_else(|| ConstantError::InvalidModule("the given elements do not generate the group".into()))?;
        Self::from_actions(g, group, actions)
    }

    pub fn from_actions(g: &FiniteGroup, group: FgAbGroup, actions: Vec<AbHom>) -> Result<Self, ConstantError> {
        if actions.len() != g.order() {
            return Err(ConstantError::InvalidModule(format!("expected {} action maps", g.order())));
        }
        if actions[g.identity()] != AbHom::identity(&group) {
            return Err(ConstantError::InvalidModule("identity acts nontrivially".into()));
        }
        for a in g.elements() {
            for b in g.elements() {
                if actions[g.mul(a, b)] != actions[a].compose(&actions[b]) {
                    return Err(ConstantError::InvalidModule(format!("action is not multiplicative at ({a}, {b})")));
                }
            }
        }
        Ok(ZGModule { group, actions })
    }

    pub fn trivial(g: &FiniteGroup, a: &FgAbGroup) -> Self {
        ZGModule { group: a.clone(), actions: vec![AbHom::identity(a); g.order()] }
    }

    /// `A[S]`, a copy of `A` for every point of `S`, permuted by `G`.
    pub fn permutation_with(g: &FiniteGroup, s: &GSet, a: &FgAbGroup) -> Self {
        let group = FgAbGroup::direct_sum(&vec![a; s.size()]);
        let k = a.ngens();
        let actions = g
            .elements()
            .map(|x| {
                let mut m = IntMatrix::zeros(group.ngens(), group.ngens());
                for p in 0..s.size() {
                    let q = s.act(x, p);
                    for i in 0..k {
                        m[(q * k + i, p * k + i)] = Int::ONE;
                    }
                }
                AbHom::new(group.clone(), group.clone(), m).unwrap()
            })
            .collect();
        ZGModule { group, actions }
    }

    pub fn permutation(g: &FiniteGroup, s: &GSet) -> Self {
        Self::permutation_with(g, s, &FgAbGroup::free(1))
    }

    pub fn regular(g: &FiniteGroup) -> Self {
        Self::permutation(g, &GSet::regular(g))
    }

    /// `Z` with `x` acting by `−1` off an index-two subgroup `kernel`.
    pub fn sign(g: &FiniteGroup, kernel: &Subgroup) -> Self {
        let z = FgAbGroup::free(1);
        let actions = g.elements().map(|x| if kernel.contains(x) { AbHom::identity(&z) } else { AbHom::identity(&z).neg() }).collect();
        ZGModule { group: z, actions }
    }

    pub fn direct_sum(parts: &[&ZGModule]) -> Self {
        let group = FgAbGroup::direct_sum(&parts.iter().map(|p| &p.group).collect::<Vec<_>>());
        let n = parts.first().map_or(0, |p| p.actions.len());
        let actions = (0..n).map(|x| AbHom::direct_sum(&parts.iter().map(|p| &p.actions[x]).collect::<Vec<_>>())).collect();
        ZGModule { group, actions }
    }

    /// The same module in a new basis: `x` acts by `P A_x P⁻¹` for a unimodular `P`.
    pub fn transport(&self, p: &AbHom) -> Option<Self> {
        let inv = p.inverse()?;
        let actions = self.actions.iter().map(|a| p.compose(a).compose(&inv)).collect();
        Some(ZGModule { group: p.target().clone(), actions })
    }

    /// The module restricted to a subgroup, as a module over that subgroup in its own right.
    pub fn restrict(&self, g: &FiniteGroup, h: &Subgroup) -> (FiniteGroup, ZGModule) {
        let els = h.elements();
        let table: Vec<Vec<usize>> = els.iter().map(|&a| els.iter().map(|&b| els.binary_search(&g.mul(a, b)).unwrap()).collect()).collect();
        let sub = FiniteGroup::from_table(format!("{} < {}", h.order(), g.name()), table).expect("subgroup table");
        let actions = els.iter().map(|&a| self.actions[a].clone()).collect();
        (sub, ZGModule { group: self.group.clone(), actions })
    }

    /// `ker f` with the induced action, and its inclusion.
    pub fn kernel_of(&self, to: &ZGModule, f: &AbHom) -> Result<(ZGModule, AbHom), ConstantError> {
        if !self.is_equivariant(to, f) {
            return Err(ConstantError::NotEquivariant);
        }
        let k = f.kernel();
        let solver = k.inclusion.solver();
        let actions = self.actions.iter().map(|a| a.compose(&k.inclusion).factor_through(&solver).expect("kernel is a submodule")).collect();
        Ok((ZGModule { group: k.group.clone(), actions }, k.inclusion))
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn action(&self, x: usize) -> &AbHom {
        &self.actions[x]
    }

    pub fn rank(&self) -> usize {
        self.group.free_rank()
    }

    pub fn is_equivariant(&self, to: &ZGModule, f: &AbHom) -> bool {
        f.source().same_presentation(&self.group)
            && f.target().same_presentation(&to.group)
            && self.actions.iter().zip(&to.actions).all(|(a, b)| f.compose(a) == b.compose(f))
    }

    fn gap_map(&self, g: &FiniteGroup, h: &Subgroup) -> AbHom {
        let gens = h.generators(g);
        let parts: Vec<AbHom> = gens.iter().map(|&s| self.actions[s].sub(&AbHom::identity(&self.group))).collect();
        let targets = vec![self.group.clone(); parts.len()];
        AbHom::from_blocks(&[self.group.clone()], &targets, &parts.into_iter().map(|p| vec![Some(p)]).collect::<Vec<_>>())
    }

    /// `N^H`, as the kernel of `x ↦ (sx − x)` over generators `s` of `H`.
    pub fn fixed_points(&self, g: &FiniteGroup, h: &Subgroup) -> Kernel {
        self.gap_map(g, h).kernel()
    }

    /// `N_H`, as the cokernel of `(x_s) ↦ Σ (s − 1)x_s`.
    pub fn cofixed_points(&self, g: &FiniteGroup, h: &Subgroup) -> Cokernel {
        let gens = h.generators(g);
        let parts: Vec<Option<AbHom>> = gens.iter().map(|&s| Some(self.actions[s].sub(&AbHom::identity(&self.group)))).collect();
        let sources = vec![self.group.clone(); parts.len()];
        AbHom::from_blocks(&sources, &[self.group.clone()], &[parts]).cokernel()
    }

    /// A basis of `Hom_{Z[G]}(self, to)`.
    pub fn equivariant_maps(&self, g: &FiniteGroup, to: &ZGModule) -> Vec<AbHom> {
        let hom = HomGroup::new(&self.group, &to.group);
        let gens = g.generators().to_vec();
        let cols: Vec<Vec<Int>> = (0..hom.group.ngens())
            .map(|q| {
                let f = hom.to_hom(&hom.group.basis_element(q));
                gens.iter().flat_map(|&s| hom.from_hom(&to.actions[s].compose(&f).sub(&f.compose(&self.actions[s])))).collect()
            })
            .collect();
        let target = FgAbGroup::direct_sum(&vec![&hom.group; gens.len()]);
        let constraint = AbHom::new(hom.group.clone(), target.clone(), IntMatrix::from_columns(&cols, target.ngens())).expect("constraint map");
        let k = constraint.kernel();
        (0..k.group.ngens()).map(|i| hom.to_hom(&k.inclusion.column(i))).collect()
    }
}

/// Representatives of `H_b g⁻¹ / H_a`, the cosets summed over by transfers.
fn transfer_cosets(cats: &GroupCategories, a: usize, b: usize, g: usize) -> Vec<usize> {
    let grp = &cats.ctx.group;
    let cosets = &cats.ctx.orbits[a].gset;
    let base = cats.orbit.base_point(a);
    let mut seen = BTreeMap::new();
    for &h in cats.ctx.orbits[b].subgroup.elements() {
        let c = grp.mul(h, grp.inv(g));
        seen.entry(cosets.act(c, base)).or_insert(c);
    }
    seen.into_values().collect()
}

enum Flavor {
    Fixed(Vec<Kernel>),
    Cofixed(Vec<Cokernel>),
}

/// Structure maps of `N^H` or `N_H`, assembled from restrictions, transfers and Weyl actions.
fn levelwise(cats: &GroupCategories, n: &ZGModule, flavor: &Flavor) -> LevelwiseData {
    let k = cats.orbit_count();
    let orbit = &cats.orbit;
    let grp = &cats.ctx.group;
    let sum = |els: &[usize]| els.iter().fold(AbHom::zero(&n.group, &n.group), |acc, &c| acc.add(&n.actions[c]));
    // the map N → N that induces the structure map from level `from` to level `to`
    let induced = |from: usize, to: usize, on_n: &AbHom| -> AbHom {
        match flavor {
            Flavor::Fixed(ks) => on_n.compose(&ks[from].inclusion).factor_through(&ks[to].inclusion.solver()).expect("fixed points go to fixed points"),
            Flavor::Cofixed(cs) => {
                let cols: Vec<Vec<Int>> = cs[from].lift.iter().map(|l| cs[to].projection.apply(&on_n.apply(l))).collect();
                AbHom::new(cs[from].group.clone(), cs[to].group.clone(), IntMatrix::from_columns(&cols, cs[to].group.ngens())).unwrap()
            }
        }
    };
    let values = (0..k)
        .map(|a| match flavor {
            Flavor::Fixed(ks) => ks[a].group.clone(),
            Flavor::Cofixed(cs) => cs[a].group.clone(),
        })
        .collect();
    let mut data = LevelwiseData { values, ..Default::default() };
    let fixed = matches!(flavor, Flavor::Fixed(_));
    for a in 0..k {
        for b in 0..k {
            for &p in orbit.maps(a, b) {
                let g = cats.ctx.orbits[b].reps[p];
                if a == b {
                    if p != orbit.base_point(a) {
                        data.weyl.insert((a, p), induced(a, a, &n.actions[grp.inv(g)]));
                    }
                    continue;
                }
                let summed = sum(&transfer_cosets(cats, a, b, g));
                let inverse_sum = sum(&transfer_cosets(cats, a, b, g).iter().map(|&c| grp.inv(c)).collect::<Vec<_>>());
                let (res, tr) = if fixed { (n.actions[g].clone(), summed) } else { (inverse_sum, n.actions[grp.inv(g)].clone()) };
                data.restrictions.insert((a, b, p), induced(b, a, &res));
                data.transfers.insert((a, b, p), induced(a, b, &tr));
            }
        }
    }
    data
}

/// `G/H ↦ N^H`, restrictions by inclusion and transfers by summing over cosets.
pub fn fixed_point_mackey(cats: &GroupCategories, n: &ZGModule) -> Result<MackeyFunctor, ConstantError> {
    let ks = (0..cats.orbit_count()).map(|a| n.fixed_points(&cats.ctx.group, &cats.ctx.orbits[a].subgroup)).collect();
    Ok(mackey_from_levelwise(cats, &levelwise(cats, n, &Flavor::Fixed(ks)))?)
}

/// `G/H ↦ N_H`, transfers by projection and restrictions by summing over cosets.
pub fn cofixed_point_mackey(cats: &GroupCategories, n: &ZGModule) -> Result<MackeyFunctor, ConstantError> {
    let cs = (0..cats.orbit_count()).map(|a| n.cofixed_points(&cats.ctx.group, &cats.ctx.orbits[a].subgroup)).collect();
    Ok(mackey_from_levelwise(cats, &levelwise(cats, n, &Flavor::Cofixed(cs)))?)
}

/// `f^H` levelwise, for an equivariant `f : N → N'`.
pub fn fixed_point_map(cats: &GroupCategories, n: &ZGModule, n2: &ZGModule, f: &AbHom) -> Result<NatTrans, ConstantError> {
    if !n.is_equivariant(n2, f) {
        return Err(ConstantError::NotEquivariant);
    }
    let g = &cats.ctx.group;
    let components = cats
        .ctx
        .orbits
        .iter()
        .map(|o| {
            let (k, k2) = (n.fixed_points(g, &o.subgroup), n2.fixed_points(g, &o.subgroup));
            f.compose(&k.inclusion).factor_through(&k2.inclusion.solver()).expect("fixed points go to fixed points")
        })
        .collect();
    Ok(NatTrans { components })
}

/// `f_H` levelwise, for an equivariant `f : N → N'`.
pub fn cofixed_point_map(cats: &GroupCategories, n: &ZGModule, n2: &ZGModule, f: &AbHom) -> Result<NatTrans, ConstantError> {
    if !n.is_equivariant(n2, f) {
        return Err(ConstantError::NotEquivariant);
    }
    let g = &cats.ctx.group;
    let components = cats.ctx.orbits.iter().map(|o| cofixed_map(g, n, n2, f, &o.subgroup)).collect();
    Ok(NatTrans { components })
}

fn cofixed_map(g: &FiniteGroup, n: &ZGModule, n2: &ZGModule, f: &AbHom, h: &Subgroup) -> AbHom {
    let (c, c2) = (n.cofixed_points(g, h), n2.cofixed_points(g, h));
    let cols: Vec<Vec<Int>> = c.lift.iter().map(|l| c2.projection.apply(&f.apply(l))).collect();
    AbHom::new(c.group.clone(), c2.group.clone(), IntMatrix::from_columns(&cols, c2.group.ngens())).unwrap()
}

fn fixed_map(g: &FiniteGroup, n: &ZGModule, n2: &ZGModule, f: &AbHom, h: &Subgroup) -> AbHom {
    let (k, k2) = (n.fixed_points(g, h), n2.fixed_points(g, h));
    f.compose(&k.inclusion).factor_through(&k2.inclusion.solver()).expect("fixed points go to fixed points")
}

/// An orbit map `f` at which `f_* f^*` is not multiplication by the index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZbarFailure {
    pub source: usize,
    pub target: usize,
    pub point: usize,
    pub description: String,
}

/// Checks `f_* f^* = |H_b|/|H_a|` on `M(G/H_b)` for every orbit map `f : G/H_a → G/H_b`.
pub fn is_zbar_module(cats: &GroupCategories, m: &MackeyFunctor) -> Result<(), Vec<ZbarFailure>> {
    let (orbit, bc) = (&cats.orbit, &cats.burnside);
    let mut failures = Vec::new();
    for a in 0..cats.orbit_count() {
        for b in 0..cats.orbit_count() {
            if a == b {
                continue;
            }
            for &p in orbit.maps(a, b) {
                let res = m.map(b, a, bc.restriction_basis(a, b, p));
                let tr = m.map(a, b, bc.transfer_basis(a, b, p));
                let index = cats.ctx.orbits[b].subgroup.order() / cats.ctx.orbits[a].subgroup.order();
                let expected = AbHom::identity(m.value(b)).scale(&Int::from(index));
                if tr.compose(res) != expected {
                    let (la, lb) = (cats.ctx.orbit_label(a), cats.ctx.orbit_label(b));
                    failures.push(ZbarFailure {
                        source: a,
                        target: b,
                        point: p,
                        description: format!("f: {la} -> {lb} (eH ↦ coset {p}): f_* f^* ≠ {index} on M({lb})"),
                    });
                }
            }
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures)
    }
}

/// `Ξ_{G/H}(A) : G/K ↦ (A ⊗ Z[G/H])^K`, the universal Z̄-module on `F_{G/H} ⊗ A`.
pub fn xi(cats: &GroupCategories, h: usize, a: &FgAbGroup) -> Result<MackeyFunctor, ConstantError> {
    fixed_point_mackey(cats, &xi_module(cats, h, a))
}

fn xi_module(cats: &GroupCategories, h: usize, a: &FgAbGroup) -> ZGModule {
    ZGModule::permutation_with(&cats.ctx.group, &cats.ctx.orbits[h].gset, a)
}

/// `a ↦ a·eH` into `Ξ_{G/H}(A)(G/H)`.
fn xi_base_inclusion(cats: &GroupCategories, h: usize, a: &FgAbGroup) -> AbHom {
    let module = xi_module(cats, h, a);
    let k = module.fixed_points(&cats.ctx.group, &cats.ctx.orbits[h].subgroup);
    let base = cats.orbit.base_point(h);
    let r = a.ngens();
    let mut m = IntMatrix::zeros(module.group.ngens(), r);
    for i in 0..r {
        m[(base * r + i, i)] = Int::ONE;
    }
    AbHom::new(a.clone(), module.group.clone(), m).unwrap().factor_through(&k.inclusion.solver()).expect("eH is H-fixed")
}

/// `ℬ(G/H, G/K) ⊗ A → Ξ_{G/H}(A)(G/K)`, `φ ⊗ a ↦ Ξ(φ)(a·eH)`.
fn xi_yoneda_level(cats: &GroupCategories, h: usize, a: &FgAbGroup, x: &MackeyFunctor, d: usize) -> (Tensor, AbHom) {
    let iota = xi_base_inclusion(cats, h, a);
    let t = Tensor::new(&FgAbGroup::free(cats.burnside.rank(h, d)), a);
    let cols: Vec<Vec<Int>> = (0..t.group.ngens())
        .map(|q| {
            let (phi, i) = t.generator(q);
            x.map(h, d, phi).apply(&iota.column(i))
        })
        .collect();
    let m = AbHom::new(t.group.clone(), x.value(d).clone(), IntMatrix::from_columns(&cols, x.value(d).ngens())).unwrap();
    (t, m)
}

/// The comparison `ℬ(G/H, −) → Ξ_{G/H}(Z)` sending `id` to `eH`.
pub fn xi_yoneda(cats: &GroupCategories, h: usize) -> Result<NatTrans, ConstantError> {
    let z = FgAbGroup::free(1);
    let x = xi(cats, h, &z)?;
    Ok(NatTrans { components: (0..cats.orbit_count()).map(|d| xi_yoneda_level(cats, h, &z, &x, d).1).collect() })
}

/// Elements `φ_*(f_* f^* − index)(ψ)` of `ℬ(G/H, G/K)` for orbit maps `f` and spans `φ`, `ψ`.
pub fn zbar_relations(cats: &GroupCategories, h: usize, d: usize) -> Vec<Vec<Int>> {
    let rep = representable_mackey(cats, h);
    let (orbit, bc) = (&cats.orbit, &cats.burnside);
    let mut out = Vec::new();
    for a in 0..cats.orbit_count() {
        for b in 0..cats.orbit_count() {
            if a == b {
                continue;
            }
            let index = Int::from(cats.ctx.orbits[b].subgroup.order() / cats.ctx.orbits[a].subgroup.order());
            for &p in orbit.maps(a, b) {
                let ff = rep.map(a, b, bc.transfer_basis(a, b, p)).compose(rep.map(b, a, bc.restriction_basis(a, b, p)));
                let rel = ff.sub(&AbHom::identity(rep.value(b)).scale(&index));
                for phi in 0..bc.rank(b, d) {
                    let r = rep.map(b, d, phi).compose(&rel);
                    for j in 0..r.source().ngens() {
                        let v = r.column(j);
                        if v.iter().any(|x| !x.is_zero()) {
                            out.push(v);
                        }
                    }
                }
            }
        }
    }
    out
}

/// The map `Ξ_{G/H}(A) → M` adjoint to `ψ : A → M(G/H)`, for a Z̄-module `M`.
pub fn xi_adjunct(cats: &GroupCategories, h: usize, a: &FgAbGroup, m: &MackeyFunctor, psi: &AbHom) -> Result<NatTrans, ConstantError> {
    let x = xi(cats, h, a)?;
    let mut components = Vec::with_capacity(cats.orbit_count());
    for d in 0..cats.orbit_count() {
        let (t, y) = xi_yoneda_level(cats, h, a, &x, d);
        let cols: Vec<Vec<Int>> = (0..t.group.ngens())
            .map(|q| {
                let (phi, i) = t.generator(q);
                m.map(h, d, phi).apply(&psi.column(i))
            })
            .collect();
        let on_t = AbHom::new(t.group.clone(), m.value(d).clone(), IntMatrix::from_columns(&cols, m.value(d).ngens())).unwrap();
        if !on_t.compose(&y.kernel().inclusion).is_zero() {
            return Err(ConstantError::NotZbarModule(format!("relation survives at {}", cats.ctx.orbit_label(d))));
        }
        let solver = y.solver();
        let cols: Vec<Vec<Int>> =
            (0..x.value(d).ngens()).map(|j| on_t.apply(&solver.solve(&x.value(d).basis_element(j)).expect("Ξ is generated by eH"))).collect();
        components.push(AbHom::new(x.value(d).clone(), m.value(d).clone(), IntMatrix::from_columns(&cols, m.value(d).ngens())).unwrap());
    }
    Ok(NatTrans { components })
}

/// `θ_{G/H}(a·eH)`, the restriction of a map out of `Ξ_{G/H}(A)` to `A`.
pub fn xi_restrict(cats: &GroupCategories, h: usize, a: &FgAbGroup, theta: &NatTrans) -> AbHom {
    theta.components[h].compose(&xi_base_inclusion(cats, h, a))
}

/// A bounded chain complex of Z[G]-modules; `diffs[i] : modules[i+1] → modules[i]`.
#[derive(Clone, Debug)]
pub struct ZGChainComplex {
    pub modules: Vec<ZGModule>,
    pub diffs: Vec<AbHom>,
}

impl ZGChainComplex {
    pub fn new(modules: Vec<ZGModule>, diffs: Vec<AbHom>) -> Result<Self, ConstantError> {
        if diffs.len() + 1 != modules.len().max(1) {
            return Err(ConstantError::InvalidModule("one differential per adjacent pair of modules".into()));
        }
        for (i, d) in diffs.iter().enumerate() {
            if !modules[i + 1].is_equivariant(&modules[i], d) {
                return Err(ConstantError::NotEquivariant);
            }
            if i > 0 && !diffs[i - 1].compose(d).is_zero() {
                return Err(ConstantError::InvalidModule(format!("d∘d ≠ 0 in degree {}", i + 1)));
            }
        }
        Ok(ZGChainComplex { modules, diffs })
    }

    /// The Z[G]-cellular chains of a G-CW complex.
    pub fn cellular(x: &GCWComplex) -> Self {
        let g = &x.context().group;
        let modules: Vec<ZGModule> = (0..x.len()).map(|n| ZGModule::permutation(g, &x.cells(n))).collect();
        let diffs = (1..x.len()).map(|n| AbHom::new(modules[n].group.clone(), modules[n - 1].group.clone(), x.boundary(n)).unwrap()).collect();
        ZGChainComplex { modules, diffs }
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    fn module(&self, g: &FiniteGroup, n: usize) -> ZGModule {
        self.modules.get(n).cloned().unwrap_or_else(|| ZGModule::trivial(g, &FgAbGroup::zero()))
    }

    pub fn fixed_points(&self, g: &FiniteGroup, h: &Subgroup) -> AbChainComplex {
        let groups = self.modules.iter().map(|m| m.fixed_points(g, h).group).collect();
        let diffs = self.diffs.iter().enumerate().map(|(i, d)| fixed_map(g, &self.modules[i + 1], &self.modules[i], d, h)).collect();
        AbChainComplex::new(groups, diffs).expect("fixed points of a complex")
    }

    pub fn cofixed_points(&self, g: &FiniteGroup, h: &Subgroup) -> AbChainComplex {
        let groups = self.modules.iter().map(|m| m.cofixed_points(g, h).group).collect();
        let diffs = self.diffs.iter().enumerate().map(|(i, d)| cofixed_map(g, &self.modules[i + 1], &self.modules[i], d, h)).collect();
        AbChainComplex::new(groups, diffs).expect("cofixed points of a complex")
    }

    pub fn underlying(&self) -> AbChainComplex {
        AbChainComplex::new(self.modules.iter().map(|m| m.group.clone()).collect(), self.diffs.clone()).expect("valid complex")
    }
}

/// An equivariant chain map; `components[n] : C_n → D_n`, missing degrees are zero.
#[derive(Clone, Debug)]
pub struct ZGChainMap {
    pub components: Vec<AbHom>,
}

impl ZGChainMap {
    fn component(&self, g: &FiniteGroup, n: usize, c: &ZGChainComplex, d: &ZGChainComplex) -> AbHom {
        self.components.get(n).cloned().unwrap_or_else(|| AbHom::zero(c.module(g, n).group(), d.module(g, n).group()))
    }

    pub fn check(&self, g: &FiniteGroup, c: &ZGChainComplex, d: &ZGChainComplex) -> Result<(), ConstantError> {
        let top = c.len().max(d.len()).max(self.components.len());
        for n in 0..top {
            if !c.module(g, n).is_equivariant(&d.module(g, n), &self.component(g, n, c, d)) {
                return Err(ConstantError::NotAChainMap(n));
            }
        }
        let dd = |x: &ZGChainComplex, n: usize| -> AbHom {
            x.diffs.get(n - 1).cloned().unwrap_or_else(|| AbHom::zero(x.module(g, n).group(), x.module(g, n - 1).group()))
        };
        for n in 1..top {
            let lhs = dd(d, n).compose(&self.component(g, n, c, d));
            let rhs = self.component(g, n - 1, c, d).compose(&dd(c, n));
            if !lhs.sub(&rhs).is_zero() {
                return Err(ConstantError::NotAChainMap(n));
            }
        }
        Ok(())
    }

    fn on_points(&self, g: &FiniteGroup, h: &Subgroup, c: &ZGChainComplex, d: &ZGChainComplex, fixed: bool) -> (ChainMap, AbChainComplex, AbChainComplex) {
        let top = c.len().max(d.len());
        let pad = |x: &ZGChainComplex| -> ZGChainComplex {
            let mut modules = x.modules.clone();
            let mut diffs = x.diffs.clone();
            while modules.len() < top {
                let z = ZGModule::trivial(g, &FgAbGroup::zero());
                if let Some(last) = modules.last() {
                    diffs.push(AbHom::zero(z.group(), last.group()));
                }
                modules.push(z);
            }
            ZGChainComplex { modules, diffs }
        };
        let (c, d) = (pad(c), pad(d));
        let comps = (0..top)
            .map(|n| {
                let f = self.component(g, n, &c, &d);
                if fixed {
                    fixed_map(g, &c.modules[n], &d.modules[n], &f, h)
                } else {
                    cofixed_map(g, &c.modules[n], &d.modules[n], &f, h)
                }
            })
            .collect();
        let (cc, dd) = if fixed { (c.fixed_points(g, h), d.fixed_points(g, h)) } else { (c.cofixed_points(g, h), d.cofixed_points(g, h)) };
        (ChainMap { components: comps }, cc, dd)
    }
}

fn equivalence(cats: &GroupCategories, f: &ZGChainMap, c: &ZGChainComplex, d: &ZGChainComplex, fixed: bool) -> Result<bool, ConstantError> {
    let g = &cats.ctx.group;
    f.check(g, c, d)?;
    for o in &cats.ctx.orbits {
        let (fh, ch, dh) = f.on_points(g, &o.subgroup, c, d, fixed);
        if !is_quasi_iso(&fh, &ch, &dh).map_err(|_| ConstantError::NotAChainMap(0))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `f^H` is a quasi-isomorphism for one subgroup `H` from each conjugacy class.
pub fn fp_equivalent(cats: &GroupCategories, f: &ZGChainMap, c: &ZGChainComplex, d: &ZGChainComplex) -> Result<bool, ConstantError> {
    equivalence(cats, f, c, d, true)
}

/// `f_H` is a quasi-isomorphism for one subgroup `H` from each conjugacy class.
pub fn cfp_equivalent(cats: &GroupCategories, f: &ZGChainMap, c: &ZGChainComplex, d: &ZGChainComplex) -> Result<bool, ConstantError> {
    equivalence(cats, f, c, d, false)
}

/// `f` is a quasi-isomorphism of underlying complexes.
pub fn quasi_isomorphic(cats: &GroupCategories, f: &ZGChainMap, c: &ZGChainComplex, d: &ZGChainComplex) -> Result<bool, ConstantError> {
    let g = &cats.ctx.group;
    f.check(g, c, d)?;
    let (fh, ch, dh) = f.on_points(g, &Subgroup::trivial(g), c, d, true);
    is_quasi_iso(&fh, &ch, &dh).map_err(|_| ConstantError::NotAChainMap(0))
}

/// The periodic free resolution `Z[G] ← Z[G] ← ⋯` of `Z` over a cyclic group, `length` free terms,
/// closed off by the kernel of the last differential, with its augmentation to `Z`.
pub fn capped_resolution(g: &FiniteGroup, length: usize) -> Result<(ZGChainComplex, ZGChainComplex, ZGChainMap), ConstantError> {
    let t = g.cyclic_generator().ok_or(ConstantError::NotCyclic)?;
    let free = ZGModule::regular(g);
    let zg = free.group.clone();
    let one_minus_t = AbHom::identity(&zg).sub(free.action(t));
    let norm = g.elements().fold(AbHom::zero(&zg, &zg), |acc, x| acc.add(free.action(x)));
    let mut modules = vec![free.clone(); length.max(1)];
    let mut diffs: Vec<AbHom> = (1..length.max(1)).map(|n| if n % 2 == 1 { one_minus_t.clone() } else { norm.clone() }).collect();
    let last = diffs.last().cloned().unwrap_or_else(|| AbHom::zero(&zg, &zg));
    let (cap, incl) = if length <= 1 {
        let z = ZGModule::trivial(g, &FgAbGroup::free(1));
        let eps = AbHom::new(zg.clone(), FgAbGroup::free(1), IntMatrix::from_rows(&[vec![Int::ONE; g.order()]], g.order())).unwrap();
        free.kernel_of(&z, &eps)?
    } else {
        free.kernel_of(&free, &last)?
    };
    modules.push(cap);
    diffs.push(incl);
    let c = ZGChainComplex::new(modules, diffs)?;
    let z = ZGModule::trivial(g, &FgAbGroup::free(1));
    let eps = AbHom::new(zg, FgAbGroup::free(1), IntMatrix::from_rows(&[vec![Int::ONE; g.order()]], g.order())).unwrap();
    let d = ZGChainComplex::new(vec![z], Vec::new())?;
    Ok((c, d, ZGChainMap { components: vec![eps] }))
}

/// `C_Z̄(X) : G/K ↦ C(X)^K`, the fixed-point Mackey functors of the Z[G]-cellular chains.
pub fn c_zbar(cats: &GroupCategories, x: &GCWComplex) -> Result<FunctorComplex, ConstantError> {
    let c = ZGChainComplex::cellular(x);
    let terms = c.modules.iter().map(|m| fixed_point_mackey(cats, m)).collect::<Result<Vec<_>, _>>()?;
    let differentials = c.diffs.iter().enumerate().map(|(i, d)| fixed_point_map(cats, &c.modules[i + 1], &c.modules[i], d)).collect::<Result<Vec<_>, _>>()?;
    Ok(FunctorComplex { terms, differentials })
}

/// `⊕ Ξ_{G/H_i}(Z)` over the orbit summands of the `n`-cells, and the comparison with `C_Z̄(X)_n`.
pub fn c_zbar_from_xi(cats: &GroupCategories, x: &GCWComplex, n: usize) -> Result<(MackeyFunctor, NatTrans), ConstantError> {
    let g = &cats.ctx.group;
    let cells = x.cells(n);
    let dec = crate::context::Decomposition::new(&cats.ctx, &cells);
    let z = FgAbGroup::free(1);
    let target = ZGModule::permutation(g, &cells);
    let mut parts = Vec::new();
    let mut blocks = Vec::new();
    for s in &dec.summands {
        let part = xi_module(cats, s.class, &z);
        // coset k of the summand ↦ cell iso[k]
        let mut m = IntMatrix::zeros(cells.size(), s.iso.len());
        for (k, &cell) in s.iso.iter().enumerate() {
            m[(cell, k)] = Int::ONE;
        }
        blocks.push(AbHom::new(part.group.clone(), target.group.clone(), m).unwrap());
        parts.push(part);
    }
    let values = parts.iter().map(|p| fixed_point_mackey(cats, p)).collect::<Result<Vec<_>, _>>()?;
    let functor = crate::kan::DiagramFunctor::direct_sum(&values.iter().collect::<Vec<_>>());
    let components = cats
        .ctx
        .orbits
        .iter()
        .map(|o| {
            let pieces: Vec<AbHom> = parts.iter().zip(&blocks).map(|(p, b)| fixed_map(g, p, &target, b, &o.subgroup)).collect();
            let sources: Vec<FgAbGroup> = pieces.iter().map(|f| f.source().clone()).collect();
            let target_k = target.fixed_points(g, &o.subgroup).group;
            AbHom::from_blocks(&sources, &[target_k], &[pieces.into_iter().map(Some).collect()])
        })
        .collect();
    Ok((functor, NatTrans { components }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::bundled;
    use crate::kan::check_functor;
    use crate::mackey::{burnside_functor, dual_mackey, zbar};

    fn same_functor(cats: &GroupCategories, a: &MackeyFunctor, b: &MackeyFunctor) -> bool {
        (0..cats.orbit_count()).all(|x| {
            a.value(x) == b.value(x) && (0..cats.orbit_count()).all(|y| (0..cats.burnside.rank(x, y)).all(|f| a.map(x, y, f) == b.map(x, y, f)))
        })
    }

    #[test]
    fn trivial_module_gives_zbar_and_its_dual() {
        for name in ["Z2", "Z4", "Z2xZ2", "S3"] {
            let c = GroupCategories::by_name(name).unwrap();
            let z = ZGModule::trivial(&c.ctx.group, &FgAbGroup::free(1));
            let fp = fixed_point_mackey(&c, &z).unwrap();
            assert!(same_functor(&c, &fp, &zbar(&c)), "{name}");
            let cfp = cofixed_point_mackey(&c, &z).unwrap();
            assert!(same_functor(&c, &cfp, &dual_mackey(&c, &zbar(&c))), "{name}");
        }
    }

    #[test]
    fn regular_and_sign_modules_of_z2() {
        let c = GroupCategories::by_name("Z2").unwrap();
        let g = &c.ctx.group;
        let fp = fixed_point_mackey(&c, &ZGModule::regular(g)).unwrap();
        assert_eq!(fp.value(1), &FgAbGroup::free(1));
        assert_eq!(fp.value(0), &FgAbGroup::free(2));
        let sign = ZGModule::sign(g, &Subgroup::trivial(g));
        assert!(fixed_point_mackey(&c, &sign).unwrap().value(1).is_trivial());
        assert_eq!(cofixed_point_mackey(&c, &sign).unwrap().value(1), &FgAbGroup::cyclic(2));
    }

    #[test]
    fn zbar_recognition() {
        let c = GroupCategories::by_name("Z2").unwrap();
        assert!(is_zbar_module(&c, &zbar(&c)).is_ok());
        let fails = is_zbar_module(&c, &burnside_functor(&c)).unwrap_err();
        assert_eq!(fails.len(), 1);
        assert!(fails[0].description.contains("G/e -> G/G"));
        let t = GroupCategories::by_name("1").unwrap();
        assert!(is_zbar_module(&t, &burnside_functor(&t)).is_ok());
    }

    #[test]
    fn module_validation() {
        let g = FiniteGroup::cyclic(2);
        let z = FgAbGroup::free(1);
        let bad = AbHom::identity(&z).scale(&Int::from(2));
        assert!(ZGModule::from_generators(&g, z.clone(), &[(1, bad)]).is_err());
        let sign = ZGModule::from_generators(&g, z.clone(), &[(1, AbHom::identity(&z).neg())]).unwrap();
        assert_eq!(sign.action(1).matrix()[(0, 0)], Int::from(-1));
    }

    #[test]
    fn xi_values() {
        let c = GroupCategories::by_name("Z2").unwrap();
        let z = FgAbGroup::free(1);
        assert!(same_functor(&c, &xi(&c, c.ctx.top(), &z).unwrap(), &zbar(&c)));
        // (Z[G])^G is the norm line
        assert_eq!(xi(&c, 0, &z).unwrap().value(1), &FgAbGroup::free(1));
        let v = GroupCategories::by_name("Z2xZ2").unwrap();
        for k in 1..v.orbit_count() - 1 {
            assert_eq!(xi(&v, k, &z).unwrap().value(k).free_rank(), 2);
        }
    }

    #[test]
    fn xi_is_the_zbar_quotient_of_the_representable() {
        for name in ["Z2", "Z4", "Z2xZ2", "S3"] {
            let c = GroupCategories::by_name(name).unwrap();
            for h in 0..c.orbit_count() {
                let y = xi_yoneda(&c, h).unwrap();
                for d in 0..c.orbit_count() {
                    let yd = &y.components[d];
                    assert!(yd.is_surjective(), "{name} {h} {d}");
                    let rels = zbar_relations(&c, h, d);
                    for r in &rels {
                        assert!(yd.target().is_zero_element(&yd.apply(r)));
                    }
                    let span = AbHom::new(
                        FgAbGroup::free(rels.len()),
                        yd.source().clone(),
                        IntMatrix::from_columns(&rels, yd.source().ngens()),
                    )
                    .unwrap()
                    .solver();
                    let k = yd.kernel();
                    for j in 0..k.group.ngens() {
                        assert!(span.solve(&k.inclusion.column(j)).is_some(), "{name} {h} {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn xi_adjunction_round_trips() {
        let c = GroupCategories::by_name("Z2xZ2").unwrap();
        let g = &c.ctx.group;
        let m = fixed_point_mackey(&c, &ZGModule::regular(g)).unwrap();
        for h in 0..c.orbit_count() {
            for a in [FgAbGroup::free(1), FgAbGroup::free(2)] {
                for seed in 0..3i64 {
                    let cols: Vec<Vec<Int>> = (0..a.ngens()).map(|i| (0..m.value(h).ngens()).map(|j| Int::from((seed + i as i64 * 2 + j as i64) % 3 - 1)).collect()).collect();
                    let psi = AbHom::new(a.clone(), m.value(h).clone(), IntMatrix::from_columns(&cols, m.value(h).ngens())).unwrap();
                    let theta = xi_adjunct(&c, h, &a, &m, &psi).unwrap();
                    assert!(theta.is_natural(&xi(&c, h, &a).unwrap(), &m));
                    assert_eq!(xi_restrict(&c, h, &a, &theta), psi);
                    assert_eq!(xi_adjunct(&c, h, &a, &m, &xi_restrict(&c, h, &a, &theta)).unwrap(), theta);
                }
            }
        }
        let z = FgAbGroup::free(1);
        let a = burnside_functor(&c);
        let top = c.ctx.top();
        let unit = AbHom::new(z.clone(), a.value(top).clone(), IntMatrix::from_columns(&[a.value(top).basis_element(c.burnside.identity_index(top))], a.value(top).ngens())).unwrap();
        let bad = xi_adjunct(&c, top, &z, &a, &unit);
        assert!(matches!(bad, Err(ConstantError::NotZbarModule(_))));
    }

    #[test]
    fn c_zbar_of_bundled_complexes() {
        let c = GroupCategories::by_name("Z2").unwrap();
        let pt = c_zbar(&c, &bundled::point(&c.ctx)).unwrap();
        assert!(same_functor(&c, &pt.terms[0], &zbar(&c)));
        let s = bundled::sign_sphere(&c.ctx).unwrap();
        let cs = c_zbar(&c, &s).unwrap();
        assert!(cs.is_valid());
        assert_eq!(cs.terms[1].value(1), &FgAbGroup::free(1));
        assert_eq!(cs.terms[1].value(0), &FgAbGroup::free(2));
        assert_eq!(cs.evaluate(0).homology_all(), s.underlying_chain().homology_all());
        for name in ["Z2", "Z4", "Z2xZ2", "S3"] {
            let c = GroupCategories::by_name(name).unwrap();
            for (label, x) in bundled::catalogue(&c.ctx) {
                let cz = c_zbar(&c, &x).unwrap();
                for n in 0..x.len() {
                    let (sum, iso) = c_zbar_from_xi(&c, &x, n).unwrap();
                    assert!(check_functor(&sum).is_valid());
                    assert!(iso.is_natural(&sum, &cz.terms[n]) && iso.is_isomorphism(), "{name} {label} {n}");
                }
            }
        }
    }

    #[test]
    fn resolution_is_a_quasi_isomorphism_but_not_fp() {
        let c = GroupCategories::by_name("Z2").unwrap();
        for length in 1..4 {
            let (p, z, eps) = capped_resolution(&c.ctx.group, length).unwrap();
            assert!(quasi_isomorphic(&c, &eps, &p, &z).unwrap(), "{length}");
            assert!(!fp_equivalent(&c, &eps, &p, &z).unwrap(), "{length}");
            assert!(!cfp_equivalent(&c, &eps, &p, &z).unwrap(), "{length}");
        }
        let (p, _, _) = capped_resolution(&c.ctx.group, 2).unwrap();
        let id = ZGChainMap { components: p.modules.iter().map(|m| AbHom::identity(m.group())).collect() };
        assert!(fp_equivalent(&c, &id, &p, &p).unwrap() && cfp_equivalent(&c, &id, &p, &p).unwrap());
        let bad = ZGChainMap { components: vec![AbHom::identity(p.modules[0].group()).scale(&Int::from(2)), AbHom::zero(p.modules[1].group(), p.modules[1].group())] };
        assert!(matches!(fp_equivalent(&c, &bad, &p, &p), Err(ConstantError::NotAChainMap(_))));
    }
}
