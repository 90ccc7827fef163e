//! Finite groups, subgroup lattices and finite G-sets.

mod group;
mod gset;
mod subgroup;

use thiserror::Error;

pub use group::FiniteGroup;
pub use gset::{
    coset_data, double_cosets, fixed_points, gmaps, gset_product, gset_pullback, orbit_decompose, FixedPoints, GMap, GSet,
    OrbitSummand,
};
pub use subgroup::{subgroup_lattice, ConjugacyClass, Subgroup, SubgroupLattice, MAX_LATTICE_ORDER};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("group of order {0} exceeds the supported bound")]
    GroupTooLarge(usize),
    #[error("element list is not a subgroup")]
    NotASubgroup,
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("map is not equivariant")]
    NotEquivariant,
    #[error("cospan legs have different targets")]
    TargetMismatch,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn test_groups() -> Vec<FiniteGroup> {
        ["Z2", "Z4", "Z2xZ2", "S3"].iter().map(|n| FiniteGroup::by_name(n).unwrap()).collect()
    }

    /// Equivariant maps counted by brute force over all functions.
    fn brute_map_count(g: &FiniteGroup, s: &GSet, t: &GSet) -> usize {
        let (m, n) = (s.size(), t.size());
        let mut count = 0;
        let total = n.pow(m as u32);
        for code in 0..total {
            let f: Vec<usize> = (0..m).map(|i| code / n.pow(i as u32) % n).collect();
            if g.elements().all(|a| (0..m).all(|x| f[s.act(a, x)] == t.act(a, f[x]))) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn hom_set_sizes_equal_fixed_point_counts() {
        for g in test_groups() {
            let lat = subgroup_lattice(&g).unwrap();
            for h in &lat.subgroups {
                for k in &lat.subgroups {
                    let s = GSet::cosets(&g, h);
                    let t = GSet::cosets(&g, k);
                    let fixed = t.fixed_point_list(h).len();
                    assert_eq!(gmaps(&g, h, k).len(), fixed);
                    assert_eq!(brute_map_count(&g, &s, &t), fixed);
                }
            }
        }
    }

    fn random_gset(g: &FiniteGroup, lat: &SubgroupLattice, picks: &[usize]) -> GSet {
        let mut s = GSet::empty();
        for &p in picks {
            let h = &lat.subgroups[p % lat.subgroups.len()];
            s = s.disjoint_union(&GSet::cosets(g, h), g);
        }
        s
    }

    proptest! {
        #[test]
        fn orbit_counting(gi in 0usize..4, picks in proptest::collection::vec(0usize..20, 0..5)) {
            let g = &test_groups()[gi];
            let lat = subgroup_lattice(g).unwrap();
            let s = random_gset(g, &lat, &picks);
            let orbits = orbit_decompose(g, &lat, &s);
            let total: usize = orbits.iter().map(|o| g.order() / o.subgroup.order()).sum();
            prop_assert_eq!(total, s.size());
            for o in &orbits {
                for (k, &x) in o.iso.iter().enumerate() {
                    let cosets = GSet::cosets(g, &o.subgroup);
                    for a in g.elements() {
                        prop_assert_eq!(s.act(a, x), o.iso[cosets.act(a, k)]);
                    }
                }
            }
        }

        #[test]
        fn pullback_universal_property(gi in 0usize..4, picks in proptest::collection::vec(0usize..20, 1..3), seed in 0usize..1000) {
            let g = &test_groups()[gi];
            let lat = subgroup_lattice(g).unwrap();
            let u = GSet::cosets(g, &lat.subgroups[seed % lat.subgroups.len()]);
            // S, T: orbits mapping to U, built from maps out of coset sets
            let cands: Vec<&Subgroup> = lat.subgroups.iter().filter(|h| !u.fixed_point_list(h).is_empty()).collect();
            let h1 = cands[picks[0] % cands.len()];
            let h2 = cands[picks[picks.len() - 1] % cands.len()];
            let f = GMap::new(g, GSet::cosets(g, h1), u.clone(), gmaps(g, h1, &lat.subgroups[seed % lat.subgroups.len()])[seed % u.fixed_point_list(h1).len()].map.clone()).unwrap();
            let h = GMap::new(g, GSet::cosets(g, h2), u.clone(), gmaps(g, h2, &lat.subgroups[seed % lat.subgroups.len()])[0].map.clone()).unwrap();
            let (p, p1, p2) = gset_pullback(g, &f, &h).unwrap();
            // any compatible pair out of a test orbit W factors uniquely through P
            for w in &lat.subgroups {
                for a in gmaps(g, w, h1) {
                    for b in gmaps(g, w, h2) {
                        let compatible = (0..a.source.size()).all(|x| f.apply(a.apply(x)) == h.apply(b.apply(x)));
                        let factorizations = (0..a.source.size()).map(|x| {
                            (0..p.size()).filter(|&q| p1.apply(q) == a.apply(x) && p2.apply(q) == b.apply(x)).count()
                        }).collect::<Vec<_>>();
                        if compatible {
                            prop_assert!(factorizations.iter().all(|&c| c == 1));
                        } else {
                            prop_assert!(factorizations.iter().any(|&c| c == 0));
                        }
                    }
                }
            }
        }
    }
}
