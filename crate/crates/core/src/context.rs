//! Per-group data shared by the orbit and Burnside categories.

use std::sync::Arc;

use crate::groups::{coset_data, orbit_decompose, subgroup_lattice, FiniteGroup, GSet, GroupError, OrbitSummand, Subgroup, SubgroupLattice};

/// A canonical orbit `G/H` with `H` the least member of its conjugacy class.
#[derive(Clone, Debug)]
pub struct OrbitType {
    pub subgroup: Subgroup,
    pub gset: GSet,
    /// Least element of each coset.
    pub reps: Vec<usize>,
    pub normalizer: Subgroup,
}

impl OrbitType {
    pub fn size(&self) -> usize {
        self.reps.len()
    }
}

/// Orbit decomposition of a G-set, with the inverse of the orbit isomorphisms.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub gset: GSet,
    pub summands: Vec<OrbitSummand>,
    /// Point → (summand, coset index).
    pub locate: Vec<(usize, usize)>,
}

impl Decomposition {
    pub fn new(ctx: &GroupContext, gset: &GSet) -> Self {
        let summands = orbit_decompose(&ctx.group, &ctx.lattice, gset);
        Self::from_summands(gset.clone(), summands)
    }

    pub fn from_summands(gset: GSet, summands: Vec<OrbitSummand>) -> Self {
        let mut locate = vec![(usize::MAX, usize::MAX); gset.size()];
        for (i, s) in summands.iter().enumerate() {
            for (k, &x) in s.iso.iter().enumerate() {
                locate[x] = (i, k);
            }
        }
        Decomposition { gset, summands, locate }
    }

    /// The canonical orbit itself, as a one-summand decomposition.
    pub fn canonical(ctx: &GroupContext, class: usize) -> Self {
        let o = &ctx.orbits[class];
        let summand = OrbitSummand { class, subgroup: o.subgroup.clone(), iso: (0..o.size()).collect() };
        Self::from_summands(o.gset.clone(), vec![summand])
    }

    /// Orbit types of the summands, in order.
    pub fn classes(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.class).collect()
    }
}

/// Group, subgroup lattice, canonical orbits and their pairwise products.
#[derive(Debug)]
pub struct GroupContext {
    pub group: FiniteGroup,
    pub lattice: SubgroupLattice,
    pub orbits: Vec<OrbitType>,
    products: Vec<Vec<Decomposition>>,
}

impl GroupContext {
    pub fn new(group: FiniteGroup) -> Result<Arc<Self>, GroupError> {
        let lattice = subgroup_lattice(&group)?;
        let orbits: Vec<OrbitType> = lattice
            .classes
            .iter()
            .map(|c| {
                let h = c.representative.clone();
                let (reps, _) = coset_data(&group, &h);
                OrbitType { gset: GSet::cosets(&group, &h), normalizer: h.normalizer(&group), subgroup: h, reps }
            })
            .collect();
        let mut ctx = GroupContext { group, lattice, orbits, products: Vec::new() };
        let n = ctx.orbits.len();
        let mut products = Vec::with_capacity(n);
        for a in 0..n {
            let mut row = Vec::with_capacity(n);
            for b in 0..n {
                let (p, _, _) = crate::groups::gset_product(&ctx.group, &ctx.orbits[a].gset, &ctx.orbits[b].gset);
                row.push(Decomposition::new(&ctx, &p));
            }
            products.push(row);
        }
        ctx.products = products;
        Ok(Arc::new(ctx))
    }

    pub fn by_name(name: &str) -> Option<Arc<Self>> {
        Self::new(FiniteGroup::by_name(name)?).ok()
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    /// Index of `G/G`.
    pub fn top(&self) -> usize {
        self.orbits.len() - 1
    }

    /// Index of `G/e`.
    pub fn bottom(&self) -> usize {
        0
    }

    /// Decomposition of `G/H_a × G/H_b`; pair `(x, y)` is point `x·|G/H_b| + y`.
    pub fn product(&self, a: usize, b: usize) -> &Decomposition {
        &self.products[a][b]
    }

    /// Canonical orbit index and conjugator for a stabilizer element list.
    pub fn classify(&self, stabilizer: &[usize]) -> (usize, usize) {
        self.lattice.class_of_elements(stabilizer)
    }

    pub fn orbit_label(&self, class: usize) -> String {
        let h = &self.orbits[class].subgroup;
        if h.order() == 1 {
            "G/e".into()
        } else if h.order() == self.group.order() {
            "G/G".into()
        } else {
            format!("G/{{{}}}", h.elements().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        }
    }

    /// Resolve an orbit by index, `G`/`G/G`, `e`/`G/e`, or an element list such as `{0,2}`.
    pub fn parse_orbit(&self, s: &str) -> Option<usize> {
        let s = s.trim();
        if let Ok(i) = s.parse::<usize>() {
            return (i < self.orbit_count()).then_some(i);
        }
        match s {
            "G" | "G/G" => return Some(self.top()),
            "e" | "G/e" => return Some(self.bottom()),
            _ => {}
        }
        let inner = s.trim_start_matches("G/").trim_start_matches('{').trim_end_matches('}');
        let mut elems: Vec<usize> = inner.split(',').map(|x| x.trim().parse().ok()).collect::<Option<Vec<_>>>()?;
        elems.sort_unstable();
        elems.dedup();
        let h = Subgroup::new(&self.group, elems).ok()?;
        Some(self.lattice.classify(&h).0)
    }
}
