use std::collections::BTreeSet;

use super::group::FiniteGroup;
use super::subgroup::{Subgroup, SubgroupLattice};
use super::GroupError;

/// Finite G-set given by its full action table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GSet {
    size: usize,
    /// `action[g * size + x] = g·x`
    action: Vec<usize>,
}

impl GSet {
    /// Validated constructor from a full action table (`table[g][x] = g·x`).
    pub fn new(g: &FiniteGroup, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        if table.len() != g.order() {
            return Err(GroupError::InvalidAction("one row per group element required".into()));
        }
        let size = table.first().map_or(0, |r| r.len());
        if table.iter().any(|r| r.len() != size || r.iter().any(|&p| p >= size)) {
            return Err(GroupError::InvalidAction("rows must be maps of {0..size}".into()));
        }
        let s = GSet { size, action: table.into_iter().flatten().collect() };
        s.validate(g)?;
        Ok(s)
    }

    /// Extend an action given on some elements (typically generators) to the whole group.
    pub fn from_partial(g: &FiniteGroup, size: usize, given: &[(usize, Vec<usize>)]) -> Result<Self, GroupError> {
        let mut rows: Vec<Option<Vec<usize>>> = vec![None; g.order()];
        rows[g.identity()] = Some((0..size).collect());
        for (e, r) in given {
            if *e >= g.order() || r.len() != size || r.iter().any(|&p| p >= size) {
                return Err(GroupError::InvalidAction(format!("bad action row for element {e}")));
            }
            if let Some(old) = &rows[*e] {
                if old != r {
                    return Err(GroupError::InvalidAction(format!("conflicting action for element {e}")));
                }
            }
            rows[*e] = Some(r.clone());
        }
        let gens: Vec<usize> = given.iter().map(|(e, _)| *e).collect();
        let mut queue: Vec<usize> = vec![g.identity()];
        let mut visited = vec![false; g.order()];
        visited[g.identity()] = true;
        let mut i = 0;
        while i < queue.len() {
            let a = queue[i];
            i += 1;
            for &s in &gens {
                let b = g.mul(a, s);
                let ra = rows[a].clone().unwrap();
                let rs = rows[s].clone().unwrap();
                let rb: Vec<usize> = (0..size).map(|x| ra[rs[x]]).collect();
                match &rows[b] {
                    Some(old) if *old != rb => {
                        return Err(GroupError::InvalidAction(format!("action incompatible with relations at element {b}")))
                    }
                    Some(_) => {}
                    None => rows[b] = Some(rb),
                }
                if !visited[b] {
                    visited[b] = true;
                    queue.push(b);
                }
            }
        }
        if rows.iter().any(Option::is_none) {
            return Err(GroupError::InvalidAction("given elements do not generate the group".into()));
        }
        Self::new(g, rows.into_iter().map(Option::unwrap).collect())
    }

    fn validate(&self, g: &FiniteGroup) -> Result<(), GroupError> {
        for x in 0..self.size {
            if self.act(g.identity(), x) != x {
                return Err(GroupError::InvalidAction("identity does not act trivially".into()));
            }
        }
        for a in g.elements() {
            for b in g.elements() {
                for x in 0..self.size {
                    if self.act(g.mul(a, b), x) != self.act(a, self.act(b, x)) {
                        return Err(GroupError::InvalidAction(format!("(ab)x ≠ a(bx) for a={a}, b={b}, x={x}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn point(g: &FiniteGroup) -> Self {
        GSet { size: 1, action: vec![0; g.order()] }
    }

    pub fn empty() -> Self {
        GSet { size: 0, action: Vec::new() }
    }

    /// Left cosets `G/H`, numbered by their least element; `a·(xH) = (ax)H`.
    pub fn cosets(g: &FiniteGroup, h: &Subgroup) -> Self {
        let (reps, coset_of) = coset_data(g, h);
        let size = reps.len();
        let mut action = vec![0; g.order() * size];
        for a in g.elements() {
            for (k, &r) in reps.iter().enumerate() {
                action[a * size + k] = coset_of[g.mul(a, r)];
            }
        }
        GSet { size, action }
    }

    /// The group acting on itself by left multiplication.
    pub fn regular(g: &FiniteGroup) -> Self {
        Self::cosets(g, &Subgroup::trivial(g))
    }

    /// Disjoint union; points of `other` are shifted by `self.size()`.
    pub fn disjoint_union(&self, other: &GSet, g: &FiniteGroup) -> GSet {
        let size = self.size + other.size;
        let mut action = vec![0; g.order() * size];
        for a in g.elements() {
            for x in 0..self.size {
                action[a * size + x] = self.act(a, x);
            }
            for y in 0..other.size {
                action[a * size + self.size + y] = self.size + other.act(a, y);
            }
        }
        GSet { size, action }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn act(&self, a: usize, x: usize) -> usize {
        self.action[a * self.size + x]
    }

    pub fn action_row(&self, a: usize) -> &[usize] {
        &self.action[a * self.size..(a + 1) * self.size]
    }

    pub fn stabilizer(&self, g: &FiniteGroup, x: usize) -> Subgroup {
        Subgroup::new(g, g.elements().filter(|&a| self.act(a, x) == x).collect()).expect("stabilizers are subgroups")
    }

    pub fn stabilizer_elements(&self, g: &FiniteGroup, x: usize) -> Vec<usize> {
        g.elements().filter(|&a| self.act(a, x) == x).collect()
    }

    /// Orbits as sorted point lists, ordered by least point.
    pub fn orbits(&self, g: &FiniteGroup) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for x in 0..self.size {
            if seen[x] {
                continue;
            }
            let orbit: BTreeSet<usize> = g.elements().map(|a| self.act(a, x)).collect();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit.into_iter().collect());
        }
        out
    }

    pub fn is_fixed(&self, h: &Subgroup, x: usize) -> bool {
        h.elements().iter().all(|&a| self.act(a, x) == x)
    }

    /// Points fixed by every element of `h`.
    pub fn fixed_point_list(&self, h: &Subgroup) -> Vec<usize> {
        (0..self.size).filter(|&x| self.is_fixed(h, x)).collect()
    }
}

/// Least representatives of left cosets of `h` and the coset index of every element.
pub fn coset_data(g: &FiniteGroup, h: &Subgroup) -> (Vec<usize>, Vec<usize>) {
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        for &k in h.elements() {
            coset_of[g.mul(x, k)] = reps.len();
        }
        reps.push(x);
    }
    (reps, coset_of)
}

/// Equivariant map between G-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GMap {
    pub source: GSet,
    pub target: GSet,
    pub map: Vec<usize>,
}

impl GMap {
    pub fn new(g: &FiniteGroup, source: GSet, target: GSet, map: Vec<usize>) -> Result<Self, GroupError> {
        if map.len() != source.size() || map.iter().any(|&y| y >= target.size()) {
            return Err(GroupError::NotEquivariant);
        }
        for a in g.elements() {
            for x in 0..source.size() {
                if map[source.act(a, x)] != target.act(a, map[x]) {
                    return Err(GroupError::NotEquivariant);
                }
            }
        }
        Ok(GMap { source, target, map })
    }

    pub fn identity(s: &GSet) -> Self {
        GMap { source: s.clone(), target: s.clone(), map: (0..s.size()).collect() }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &GMap) -> GMap {
        GMap { source: inner.source.clone(), target: self.target.clone(), map: inner.map.iter().map(|&x| self.map[x]).collect() }
    }
}

/// Product with its two projections; pair `(s, t)` has index `s·|T| + t`.
pub fn gset_product(g: &FiniteGroup, s: &GSet, t: &GSet) -> (GSet, GMap, GMap) {
    let size = s.size() * t.size();
    let mut action = vec![0; g.order() * size];
    for a in g.elements() {
        for x in 0..s.size() {
            for y in 0..t.size() {
                action[a * size + x * t.size() + y] = s.act(a, x) * t.size() + t.act(a, y);
            }
        }
    }
    let p = GSet { size, action };
    let p1 = GMap { source: p.clone(), target: s.clone(), map: (0..size).map(|i| i / t.size().max(1)).collect() };
    let p2 = GMap { source: p.clone(), target: t.clone(), map: (0..size).map(|i| i % t.size().max(1)).collect() };
    (p, p1, p2)
}

/// Pullback of a cospan `S → U ← T` with its projections.
pub fn gset_pullback(g: &FiniteGroup, f: &GMap, h: &GMap) -> Result<(GSet, GMap, GMap), GroupError> {
    if f.target != h.target {
        return Err(GroupError::TargetMismatch);
    }
    let pairs: Vec<(usize, usize)> = (0..f.source.size())
        .flat_map(|x| (0..h.source.size()).map(move |y| (x, y)))
        .filter(|&(x, y)| f.apply(x) == h.apply(y))
        .collect();
    let index = |x: usize, y: usize| pairs.binary_search(&(x, y)).unwrap();
    let size = pairs.len();
    let mut action = vec![0; g.order() * size];
    for a in g.elements() {
        for (k, &(x, y)) in pairs.iter().enumerate() {
            action[a * size + k] = index(f.source.act(a, x), h.source.act(a, y));
        }
    }
    let p = GSet { size, action };
    let p1 = GMap { source: p.clone(), target: f.source.clone(), map: pairs.iter().map(|q| q.0).collect() };
    let p2 = GMap { source: p.clone(), target: h.source.clone(), map: pairs.iter().map(|q| q.1).collect() };
    Ok((p, p1, p2))
}

/// All equivariant maps `G/H → G/K`, one per point of `(G/K)^H`.
pub fn gmaps(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Vec<GMap> {
    let src = GSet::cosets(g, h);
    let tgt = GSet::cosets(g, k);
    let (reps, _) = coset_data(g, h);
    tgt.fixed_point_list(h)
        .into_iter()
        .map(|p| GMap { source: src.clone(), target: tgt.clone(), map: reps.iter().map(|&r| tgt.act(r, p)).collect() })
        .collect()
}

/// Representatives (least elements) of the double cosets `K\G/H`.
pub fn double_cosets(g: &FiniteGroup, k: &Subgroup, h: &Subgroup) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if seen[x] {
            continue;
        }
        reps.push(x);
        for &a in k.elements() {
            for &b in h.elements() {
                seen[g.mul(g.mul(a, x), b)] = true;
            }
        }
    }
    reps
}

/// Points fixed by `H`, with the residual action of the normalizer.
#[derive(Clone, Debug)]
pub struct FixedPoints {
    pub points: Vec<usize>,
    pub normalizer: Subgroup,
    /// `action[i][p]`: index in `points` of `n_i · points[p]` for the `i`-th normalizer element.
    pub action: Vec<Vec<usize>>,
}

pub fn fixed_points(g: &FiniteGroup, s: &GSet, h: &Subgroup) -> FixedPoints {
    let points = s.fixed_point_list(h);
    let normalizer = h.normalizer(g);
    let action = normalizer
        .elements()
        .iter()
        .map(|&n| points.iter().map(|&x| points.binary_search(&s.act(n, x)).unwrap()).collect())
        .collect();
    FixedPoints { points, normalizer, action }
}

/// One orbit of a decomposed G-set.
#[derive(Clone, Debug)]
pub struct OrbitSummand {
    /// Canonical orbit index (conjugacy class of the stabilizer).
    pub class: usize,
    /// Representative subgroup `H`.
    pub subgroup: Subgroup,
    /// `iso[k]` is the image of the `k`-th coset of `G/H`.
    pub iso: Vec<usize>,
}

/// Orbit decomposition with explicit isomorphisms from canonical coset G-sets.
pub fn orbit_decompose(g: &FiniteGroup, lat: &SubgroupLattice, s: &GSet) -> Vec<OrbitSummand> {
    s.orbits(g)
        .into_iter()
        .map(|orbit| {
            let x = orbit[0];
            let (class, c) = lat.class_of_elements(&s.stabilizer_elements(g, x));
            let y = s.act(c, x);
            let h = lat.representative(class).clone();
            let (reps, _) = coset_data(g, &h);
            let iso = reps.iter().map(|&r| s.act(r, y)).collect();
            OrbitSummand { class, subgroup: h, iso }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::subgroup::subgroup_lattice;
    use super::*;

    fn z2() -> FiniteGroup {
        FiniteGroup::cyclic(2)
    }

    #[test]
    fn decompose_mixed_set() {
        let g = z2();
        let lat = subgroup_lattice(&g).unwrap();
        // three fixed points and one free orbit {3, 4}
        let s = GSet::new(&g, vec![vec![0, 1, 2, 3, 4], vec![0, 1, 2, 4, 3]]).unwrap();
        let orbits = orbit_decompose(&g, &lat, &s);
        assert_eq!(orbits.len(), 4);
        assert_eq!(orbits.iter().filter(|o| o.subgroup.order() == 2).count(), 3);
        assert_eq!(orbits.iter().filter(|o| o.subgroup.order() == 1).count(), 1);
        let total: usize = orbits.iter().map(|o| o.iso.len()).sum();
        assert_eq!(total, 5);
    }

    #[test]
    fn regular_and_coset_orbits() {
        let g = FiniteGroup::symmetric3();
        let lat = subgroup_lattice(&g).unwrap();
        let o = orbit_decompose(&g, &lat, &GSet::regular(&g));
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].subgroup.order(), 1);
        for c in 0..lat.class_count() {
            let h = lat.representative(c);
            let o = orbit_decompose(&g, &lat, &GSet::cosets(&g, h));
            assert_eq!(o.len(), 1);
            assert_eq!(&o[0].subgroup, h);
        }
    }

    #[test]
    fn fixed_point_examples() {
        let g = z2();
        let free = GSet::regular(&g);
        assert!(fixed_points(&g, &free, &Subgroup::whole(&g)).points.is_empty());
        assert_eq!(fixed_points(&g, &free, &Subgroup::trivial(&g)).points.len(), 2);
        let v = FiniteGroup::by_name("Z2xZ2").unwrap();
        let alpha = Subgroup::generated(&v, &[2]);
        let s = GSet::cosets(&v, &alpha);
        assert_eq!(fixed_points(&v, &s, &alpha).points.len(), 2);
    }

    #[test]
    fn products_and_pullbacks() {
        let g = z2();
        let free = GSet::regular(&g);
        let pt = GSet::point(&g);
        let lat = subgroup_lattice(&g).unwrap();
        let (p, _, _) = gset_product(&g, &free, &pt);
        assert_eq!(p.size(), 2);
        let (ff, _, _) = gset_product(&g, &free, &free);
        let o = orbit_decompose(&g, &lat, &ff);
        assert_eq!(o.len(), 2);
        assert!(o.iter().all(|s| s.subgroup.order() == 1));
        let f = gmaps(&g, &Subgroup::trivial(&g), &Subgroup::whole(&g)).pop().unwrap();
        let (pb, _, _) = gset_pullback(&g, &f, &f).unwrap();
        assert_eq!(pb.size(), 4);
        assert_eq!(orbit_decompose(&g, &lat, &pb).len(), 2);
        let id = GMap::identity(&free);
        assert_eq!(gset_pullback(&g, &f, &id), Err(GroupError::TargetMismatch));
    }

    #[test]
    fn hom_sets_and_double_cosets() {
        let g = z2();
        let e = Subgroup::trivial(&g);
        let whole = Subgroup::whole(&g);
        assert_eq!(gmaps(&g, &whole, &whole).len(), 1);
        assert_eq!(gmaps(&g, &e, &e).len(), 2);
        let v = FiniteGroup::by_name("Z2xZ2").unwrap();
        let alpha = Subgroup::generated(&v, &[2]);
        let h = Subgroup::generated(&v, &[1]);
        assert_eq!(double_cosets(&v, &alpha, &h).len(), 1);
    }

    #[test]
    fn partial_action_extends() {
        let g = FiniteGroup::cyclic(4);
        let s = GSet::from_partial(&g, 4, &[(1, vec![1, 2, 3, 0])]).unwrap();
        assert_eq!(s, GSet::regular(&g));
        assert!(GSet::from_partial(&g, 2, &[(1, vec![1, 0]), (2, vec![1, 0])]).is_err());
    }
}
