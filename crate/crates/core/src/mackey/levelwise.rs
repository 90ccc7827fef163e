//! Restrictions, transfers and Weyl actions as an import and export view of Mackey functors.

use std::collections::{BTreeMap, HashMap};

use super::{MackeyError, MackeyFunctor};
use crate::categories::GroupCategories;
use crate::kan::{check_functor, DiagramFunctor, KanError, Morphism};
use crate::linalg::{AbHom, FgAbGroup};

/// Levelwise data over the canonical orbits.
///
/// Orbit maps are named `(a, b, p)`: the map `G/H_a → G/H_b` with `eH_a ↦ p`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LevelwiseData {
    pub values: Vec<FgAbGroup>,
    /// `M(G/H_b) → M(G/H_a)`, for `a ≠ b`.
    pub restrictions: BTreeMap<(usize, usize, usize), AbHom>,
    /// `M(G/H_a) → M(G/H_b)`, for `a ≠ b`.
    pub transfers: BTreeMap<(usize, usize, usize), AbHom>,
    /// `(a, p)`: the action on `M(G/H_a)` of the automorphism `eH_a ↦ p`.
    pub weyl: BTreeMap<(usize, usize), AbHom>,
}

/// The point `q` with `eH_a ↦ q` inverse to the automorphism `eH_a ↦ p`.
pub fn inverse_point(cats: &GroupCategories, a: usize, p: usize) -> usize {
    let orbit = &cats.orbit;
    *orbit.maps(a, a).iter().find(|&&q| orbit.apply(a, a, orbit.index_of(a, a, q).unwrap(), p) == orbit.base_point(a)).expect("automorphisms are invertible")
}

/// Assemble a Mackey functor and check the double coset formula on every composite of spans.
pub fn mackey_from_levelwise(cats: &GroupCategories, data: &LevelwiseData) -> Result<MackeyFunctor, MackeyError> {
    let n = cats.orbit_count();
    if data.values.len() != n {
        return Err(MackeyError::MissingData(format!("expected {n} values, got {}", data.values.len())));
    }
    let (orbit, bc) = (&cats.orbit, &cats.burnside);
    let mut given: HashMap<Morphism, AbHom> = HashMap::new();
    let fetch = |m: Option<&AbHom>, what: String| m.cloned().ok_or(MackeyError::MissingData(what));
    for a in 0..n {
        for b in 0..n {
            for &p in orbit.maps(a, b) {
                if a == b {
                    if p == orbit.base_point(a) {
                        continue;
                    }
                    let w = fetch(data.weyl.get(&(a, p)), format!("Weyl action ({a}, {p})"))?;
                    given.insert(Morphism { source: a, target: a, index: bc.transfer_basis(a, a, p) }, w);
                    let q = inverse_point(cats, a, p);
                    let w = fetch(data.weyl.get(&(a, q)), format!("Weyl action ({a}, {q})"))?;
                    given.insert(Morphism { source: a, target: a, index: bc.restriction_basis(a, a, p) }, w);
                } else {
                    let r = fetch(data.restrictions.get(&(a, b, p)), format!("restriction ({a}, {b}, {p})"))?;
                    given.insert(Morphism { source: b, target: a, index: bc.restriction_basis(a, b, p) }, r);
                    let t = fetch(data.transfers.get(&(a, b, p)), format!("transfer ({a}, {b}, {p})"))?;
                    given.insert(Morphism { source: a, target: b, index: bc.transfer_basis(a, b, p) }, t);
                }
            }
        }
    }
    let f = DiagramFunctor::from_generators(cats.burnside_cat().clone(), data.values.clone(), &given).map_err(|e| match e {
        KanError::InvalidFunctor(s) => MackeyError::MissingData(s),
        e => MackeyError::Kan(e),
    })?;
    let report = check_functor(&f);
    if let Some(first) = report.violations.first() {
        return Err(MackeyError::MackeyAxiomViolation(first.clone()));
    }
    Ok(f)
}

/// Restrictions, transfers and Weyl actions of a Mackey functor.
pub fn levelwise_view(cats: &GroupCategories, m: &MackeyFunctor) -> LevelwiseData {
    let n = cats.orbit_count();
    let (orbit, bc) = (&cats.orbit, &cats.burnside);
    let mut data = LevelwiseData { values: m.values().to_vec(), ..Default::default() };
    for a in 0..n {
        for b in 0..n {
            for &p in orbit.maps(a, b) {
                if a == b {
                    if p != orbit.base_point(a) {
                        data.weyl.insert((a, p), m.map(a, a, bc.transfer_basis(a, a, p)).clone());
                    }
                } else {
                    data.restrictions.insert((a, b, p), m.map(b, a, bc.restriction_basis(a, b, p)).clone());
                    data.transfers.insert((a, b, p), m.map(a, b, bc.transfer_basis(a, b, p)).clone());
                }
            }
        }
    }
    data
}
