use std::collections::{BTreeSet, HashMap};

use super::group::FiniteGroup;
use super::GroupError;

/// Largest group order accepted by [`subgroup_lattice`].
pub const MAX_LATTICE_ORDER: usize = 48;

/// Subgroup as a sorted list of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    /// Validated constructor: the set must contain the identity and be closed.
    pub fn new(g: &FiniteGroup, mut elements: Vec<usize>) -> Result<Self, GroupError> {
        elements.sort_unstable();
        elements.dedup();
        if elements.iter().any(|&x| x >= g.order()) || elements.binary_search(&g.identity()).is_err() {
            return Err(GroupError::NotASubgroup);
        }
        for &a in &elements {
            for &b in &elements {
                if elements.binary_search(&g.mul(a, b)).is_err() {
                    return Err(GroupError::NotASubgroup);
                }
            }
        }
        Ok(Subgroup { elements })
    }

    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Self {
        Subgroup { elements: g.generated(gens) }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Subgroup { elements: vec![g.identity()] }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup { elements: g.elements().collect() }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// `a·H·a⁻¹`
    pub fn conjugate(&self, g: &FiniteGroup, a: usize) -> Subgroup {
        let mut e: Vec<usize> = self.elements.iter().map(|&h| g.conj(a, h)).collect();
        e.sort_unstable();
        Subgroup { elements: e }
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup { elements: self.elements.iter().copied().filter(|&x| other.contains(x)).collect() }
    }

    pub fn normalizer(&self, g: &FiniteGroup) -> Subgroup {
        Subgroup { elements: g.elements().filter(|&a| self.conjugate(g, a) == *self).collect() }
    }

    /// Whether the subgroup is cyclic, with a generator.
    pub fn cyclic_generator(&self, g: &FiniteGroup) -> Option<usize> {
        self.elements.iter().copied().find(|&a| g.element_order(a) == self.order())
    }

    /// Smallest-index generating set.
    pub fn generators(&self, g: &FiniteGroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![g.identity()];
        for &a in &self.elements {
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = g.generated(&gens);
            }
        }
        gens
    }
}

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    /// Lexicographically least member.
    pub representative: Subgroup,
    pub members: Vec<Subgroup>,
}

/// All subgroups of a group, partitioned into conjugacy classes.
///
/// Classes are ordered by representative order and then lexicographically,
/// so index 0 is the trivial subgroup and the last index is the whole group.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    pub subgroups: Vec<Subgroup>,
    pub classes: Vec<ConjugacyClass>,
    /// Subgroup → (class index, element `c` with `c·H·c⁻¹` = representative).
    lookup: HashMap<Subgroup, (usize, usize)>,
}

impl SubgroupLattice {
    /// Class index and conjugating element for a subgroup.
    pub fn classify(&self, h: &Subgroup) -> (usize, usize) {
        self.lookup[h]
    }

    pub fn class_of_elements(&self, elements: &[usize]) -> (usize, usize) {
        self.lookup[&Subgroup { elements: elements.to_vec() }]
    }

    pub fn representative(&self, class: usize) -> &Subgroup {
        &self.classes[class].representative
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

pub fn subgroup_lattice(g: &FiniteGroup) -> Result<SubgroupLattice, GroupError> {
    if g.order() > MAX_LATTICE_ORDER {
        return Err(GroupError::GroupTooLarge(g.order()));
    }
    let mut all: BTreeSet<Subgroup> = g.elements().map(|a| Subgroup::generated(g, &[a])).collect();
    let cyclic: Vec<Subgroup> = all.iter().cloned().collect();
    let mut frontier: Vec<Subgroup> = all.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for c in &cyclic {
                if c.is_subgroup_of(h) {
                    continue;
                }
                let mut gens = h.generators(g);
                gens.extend(c.generators(g));
                let j = Subgroup::generated(g, &gens);
                if all.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let subgroups: Vec<Subgroup> = all.into_iter().collect();
    let mut lookup: HashMap<Subgroup, (usize, usize)> = HashMap::new();
    let mut reps: Vec<(Subgroup, Vec<Subgroup>)> = Vec::new();
    let mut seen: BTreeSet<Subgroup> = BTreeSet::new();
    for h in &subgroups {
        if seen.contains(h) {
            continue;
        }
        let class: BTreeSet<Subgroup> = g.elements().map(|a| h.conjugate(g, a)).collect();
        let rep = class.iter().next().unwrap().clone();
        seen.extend(class.iter().cloned());
        reps.push((rep, class.into_iter().collect()));
    }
    reps.sort_by(|a, b| (a.0.order(), &a.0).cmp(&(b.0.order(), &b.0)));
    let mut classes = Vec::new();
    for (idx, (rep, members)) in reps.into_iter().enumerate() {
        for m in &members {
            let c = g.elements().find(|&a| m.conjugate(g, a) == rep).unwrap();
            lookup.insert(m.clone(), (idx, c));
        }
        classes.push(ConjugacyClass { representative: rep, members });
    }
    Ok(SubgroupLattice { subgroups, classes, lookup })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_sizes() {
        let t = subgroup_lattice(&FiniteGroup::cyclic(1)).unwrap();
        assert_eq!((t.subgroups.len(), t.classes.len()), (1, 1));
        let v = subgroup_lattice(&FiniteGroup::by_name("Z2xZ2").unwrap()).unwrap();
        assert_eq!((v.subgroups.len(), v.classes.len()), (5, 5));
        let s3 = subgroup_lattice(&FiniteGroup::symmetric3()).unwrap();
        assert_eq!((s3.subgroups.len(), s3.classes.len()), (6, 4));
        let z4 = subgroup_lattice(&FiniteGroup::cyclic(4)).unwrap();
        assert_eq!(z4.classes.len(), 3);
        let d8 = subgroup_lattice(&FiniteGroup::dihedral(8)).unwrap();
        assert_eq!((d8.subgroups.len(), d8.classes.len()), (10, 8));
    }

    #[test]
    fn representative_is_least_and_conjugator_works() {
        let g = FiniteGroup::symmetric3();
        let lat = subgroup_lattice(&g).unwrap();
        for h in &lat.subgroups {
            let (c, x) = lat.classify(h);
            let rep = lat.representative(c);
            assert_eq!(&h.conjugate(&g, x), rep);
            assert!(lat.classes[c].members.iter().all(|m| m >= rep));
        }
        assert_eq!(lat.representative(0).order(), 1);
        assert_eq!(lat.representative(lat.class_count() - 1).order(), 6);
    }

    #[test]
    fn too_large() {
        let g = FiniteGroup::cyclic(60);
        assert!(matches!(subgroup_lattice(&g), Err(GroupError::GroupTooLarge(60))));
    }
}
