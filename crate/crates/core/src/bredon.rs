//! Bredon homology and cohomology of G-CW complexes, and homology with Mackey functor coefficients.

use std::fmt;
use std::sync::Arc;

use crate::categories::GroupCategories;
use crate::chain::{AbChainComplex, AbCochainComplex};
use crate::coeff::{cellular_chain, CoCoeffSystem, CoeffSystem, GCWComplex};
use crate::kan::{dual_functor, nat_hom, precompose, tensor_over, DiagramFunctor, NatTrans};
use crate::linalg::{AbHom, FgAbGroup, Int, IntMatrix};
use crate::mackey::{box_with, l_complex, MackeyError, MackeyFunctor, RestrictionFunctor, TransferFunctor};

pub use crate::chain::{is_quasi_iso, mapping_cone, ChainMap};

/// Groups indexed by degree; degrees past the end are zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedAbGroups {
    pub groups: Vec<FgAbGroup>,
}

impl GradedAbGroups {
    pub fn new(mut groups: Vec<FgAbGroup>) -> Self {
        while groups.last().is_some_and(FgAbGroup::is_trivial) {
            groups.pop();
        }
        GradedAbGroups { groups }
    }

    pub fn degree(&self, n: usize) -> FgAbGroup {
        self.groups.get(n).cloned().unwrap_or_else(FgAbGroup::zero)
    }

    pub fn nonzero_degrees(&self) -> Vec<usize> {
        (0..self.groups.len()).filter(|&n| !self.groups[n].is_trivial()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.groups.iter().map(FgAbGroup::free_rank).collect()
    }
}

impl fmt::Display for GradedAbGroups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return write!(f, "0");
        }
        for (n, g) in self.groups.iter().enumerate() {
            if n > 0 {
                writeln!(f)?;
            }
            write!(f, "{n}: {g}")?;
        }
        Ok(())
    }
}

/// `Hom_{𝒪_G}(C_G(X), M)`.
pub fn bredon_cochain(cats: &GroupCategories, x: &GCWComplex, m: &CoeffSystem) -> AbCochainComplex {
    let c = cellular_chain(cats, x);
    let nats: Vec<_> = c.terms.iter().map(|t| nat_hom(t, m)).collect();
    let codiffs = (1..c.len()).map(|n| nats[n - 1].precompose_map(&nats[n], c.differential(n))).collect();
    AbCochainComplex::new(nats.iter().map(|g| g.group.clone()).collect(), codiffs).expect("dual of a chain complex")
}

pub fn bredon_cohomology(cats: &GroupCategories, x: &GCWComplex, m: &CoeffSystem) -> GradedAbGroups {
    GradedAbGroups::new(bredon_cochain(cats, x, m).cohomology_all())
}

/// `C_G(X) ⊗_{𝒪_G} M`.
pub fn bredon_chain(cats: &GroupCategories, x: &GCWComplex, m: &CoCoeffSystem) -> AbChainComplex {
    let c = cellular_chain(cats, x);
    let tensors: Vec<_> = c.terms.iter().map(|t| tensor_over(t, m)).collect();
    let id = NatTrans::identity(m);
    let diffs = (1..c.len()).map(|n| tensors[n].induced_map(&tensors[n - 1], c.differential(n), &id)).collect();
    AbChainComplex::new(tensors.iter().map(|t| t.group.clone()).collect(), diffs).expect("tensor of a chain complex")
}

pub fn bredon_homology(cats: &GroupCategories, x: &GCWComplex, m: &CoCoeffSystem) -> GradedAbGroups {
    GradedAbGroups::new(bredon_chain(cats, x, m).homology_all())
}

/// `(C_M(X) □ M)(G/H_k)`.
pub fn mackey_chain(cats: &Arc<GroupCategories>, x: &GCWComplex, m: &MackeyFunctor, k: usize) -> Result<AbChainComplex, MackeyError> {
    let l = l_complex(cats, &cellular_chain(cats, x))?;
    Ok(box_with(cats, &l.complex, m)?.complex.evaluate(k))
}

pub fn mackey_homology(cats: &Arc<GroupCategories>, x: &GCWComplex, m: &MackeyFunctor, k: usize) -> Result<GradedAbGroups, MackeyError> {
    Ok(GradedAbGroups::new(mackey_chain(cats, x, m, k)?.homology_all()))
}

/// The coefficient system of restrictions of a Mackey functor.
pub fn restriction_system(cats: &Arc<GroupCategories>, m: &MackeyFunctor) -> CoeffSystem {
    precompose(m, &RestrictionFunctor::new(cats.clone()))
}

/// The co-coefficient system of transfers of a Mackey functor.
pub fn transfer_system(cats: &Arc<GroupCategories>, m: &MackeyFunctor) -> CoCoeffSystem {
    precompose(m, &TransferFunctor::new(cats.clone()))
}

/// `A` at every orbit with identity structure maps; `contravariant` picks coefficient systems.
pub fn constant_system(cats: &GroupCategories, a: &FgAbGroup, contravariant: bool) -> DiagramFunctor {
    let cat = if contravariant { cats.orbit_op() } else { cats.orbit_cat() };
    DiagramFunctor::from_fn(cat.clone(), vec![a.clone(); cats.orbit_count()], |_, _, _| AbHom::identity(a))
}

/// `Z 𝒪_G(G/H_k, −)`, the co-coefficient system with `C_G(X) ⊗_{𝒪_G} (−) = C(X^{H_k})`.
pub fn corepresentable(cats: &GroupCategories, k: usize) -> CoCoeffSystem {
    let orbit = &cats.orbit;
    let values: Vec<FgAbGroup> = (0..cats.orbit_count()).map(|a| FgAbGroup::free(orbit.maps(k, a).len())).collect();
    DiagramFunctor::from_fn(cats.orbit_cat().clone(), values.clone(), |a, b, f| {
        let mut mat = IntMatrix::zeros(values[b].ngens(), values[a].ngens());
        for (j, &p) in orbit.maps(k, a).iter().enumerate() {
            let q = orbit.apply(a, b, f, p);
            let i = orbit.maps(k, b).iter().position(|&x| x == q).expect("fixed points go to fixed points");
            mat[(i, j)] = Int::ONE;
        }
        AbHom::new(values[a].clone(), values[b].clone(), mat).unwrap()
    })
}

/// `Hom(Z 𝒪_G(G/H_k, −), Z)`, the coefficient system with `Hom_{𝒪_G}(C_G(X), −) = C^*(X^{H_k})`.
pub fn corepresentable_dual(cats: &GroupCategories, k: usize) -> CoeffSystem {
    dual_functor(&corepresentable(cats, k), cats.orbit_op())
}
