//! Random Z[G]-modules and short exact sequences, and a search for Z̄-modules that are neither
//! fixed nor cofixed point functors.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{cofixed_point_mackey, fixed_point_mackey, ConstantError, ShortExactSequence, ZGModule};
use crate::categories::GroupCategories;
use crate::linalg::{AbHom, FgAbGroup, Int, IntMatrix};
use crate::mackey::MackeyFunctor;

/// Small building blocks: `Z`, permutation modules, sign modules, augmentation ideals and,
/// optionally, `Z/2` and `Z/3` with trivial action.
pub fn building_blocks(cats: &GroupCategories, torsion: bool) -> Vec<(String, ZGModule)> {
    let g = &cats.ctx.group;
    let z = FgAbGroup::free(1);
    let mut out = vec![("Z".to_string(), ZGModule::trivial(g, &z))];
    for (k, o) in cats.ctx.orbits.iter().enumerate() {
        if o.size() == 1 {
            continue;
        }
        let label = cats.ctx.orbit_label(k);
        let perm = ZGModule::permutation(g, &o.gset);
        let eps = AbHom::new(perm.group().clone(), z.clone(), IntMatrix::from_rows(&[vec![Int::ONE; o.size()]], o.size())).unwrap();
        let (aug, _) = perm.kernel_of(&ZGModule::trivial(g, &z), &eps).expect("augmentation is equivariant");
        out.push((format!("Z[{label}]"), perm));
        out.push((format!("I[{label}]"), aug));
        if o.size() == 2 {
            out.push((format!("sign[{label}]"), ZGModule::sign(g, &o.subgroup)));
        }
    }
    if torsion {
        out.push(("Z/2".to_string(), ZGModule::trivial(g, &FgAbGroup::cyclic(2))));
        out.push(("Z/3".to_string(), ZGModule::trivial(g, &FgAbGroup::cyclic(3))));
    }
    out
}

fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = *[-2i64, -1, 1, 2].choose(rng).unwrap();
        m.add_row_multiple(i, j, &Int::from(c));
    }
    m
}

/// A direct sum of building blocks with at most `max_rank` generators, in a scrambled basis when free.
pub fn random_module<R: Rng>(cats: &GroupCategories, rng: &mut R, max_rank: usize, torsion: bool) -> ZGModule {
    let blocks = building_blocks(cats, torsion);
    let mut parts: Vec<&ZGModule> = Vec::new();
    let mut used = 0;
    let target = rng.gen_range(1..=max_rank.max(1));
    for _ in 0..8 {
        let (_, b) = blocks.choose(rng).unwrap();
        let r = b.group().ngens();
        if r > 0 && used + r <= target {
            parts.push(b);
            used += r;
        }
        if used == target {
            break;
        }
    }
    if parts.is_empty() {
        parts.push(&blocks[0].1);
    }
    let sum = ZGModule::direct_sum(&parts);
    if !sum.group().is_free() {
        return sum;
    }
    let n = sum.group().ngens();
    let p = AbHom::new(sum.group().clone(), sum.group().clone(), random_unimodular(rng, n)).unwrap();
    sum.transport(&p).expect("unimodular change of basis")
}

/// An integer combination of a basis of equivariant maps, coefficients in `[-2, 2]`.
pub fn random_equivariant_map<R: Rng>(cats: &GroupCategories, rng: &mut R, n: &ZGModule, m: &ZGModule) -> AbHom {
    cats_maps(cats, n, m).iter().fold(AbHom::zero(n.group(), m.group()), |acc, f| acc.add(&f.scale(&Int::from(rng.gen_range(-2i64..=2)))))
}

fn cats_maps(cats: &GroupCategories, n: &ZGModule, m: &ZGModule) -> Vec<AbHom> {
    n.equivariant_maps(&cats.ctx.group, m)
}

/// A short exact sequence with `N` of rank at most `max_rank`: an equivariant surjection between
/// random modules when one turns up, otherwise `N₀ ⊕ M → M`, `(x, y) ↦ f(x) + y`.
pub fn random_ses<R: Rng>(cats: &GroupCategories, rng: &mut R, max_rank: usize, torsion: bool) -> ShortExactSequence {
    let max_rank = max_rank.max(2);
    for _ in 0..12 {
        let m = random_module(cats, rng, (max_rank - 1).min(3), torsion);
        let n = random_module(cats, rng, max_rank, torsion);
        let maps = cats_maps(cats, &n, &m);
        if maps.is_empty() {
            continue;
        }
        for _ in 0..4 {
            let p = maps.iter().fold(AbHom::zero(n.group(), m.group()), |acc, f| acc.add(&f.scale(&Int::from(rng.gen_range(-2i64..=2)))));
            if p.is_surjective() {
                if let Ok(ses) = ShortExactSequence::from_surjection(n.clone(), m.clone(), p) {
                    return ses;
                }
            }
        }
    }
    let m = random_module(cats, rng, max_rank / 2, torsion);
    let n0 = random_module(cats, rng, max_rank - m.group().ngens(), torsion);
    let f = random_equivariant_map(cats, rng, &n0, &m);
    let n = ZGModule::direct_sum(&[&n0, &m]);
    let p = AbHom::from_blocks(&[n0.group().clone(), m.group().clone()], &[m.group().clone()], &[vec![Some(f), Some(AbHom::identity(m.group()))]]);
    ShortExactSequence::from_surjection(n, m, p).expect("split surjection")
}

/// Isomorphism invariants of a Mackey functor: value groups and the kernels and cokernels of
/// restrictions and transfers along every orbit map.
fn invariants(cats: &GroupCategories, m: &MackeyFunctor) -> Vec<(Vec<Int>, usize)> {
    let shape = |g: &FgAbGroup| (g.torsion_invariants(), g.free_rank());
    let mut out: Vec<(Vec<Int>, usize)> = m.values().iter().map(shape).collect();
    let bc = &cats.burnside;
    for a in 0..cats.orbit_count() {
        for b in 0..cats.orbit_count() {
            if a == b {
                continue;
            }
            for &p in cats.orbit.maps(a, b) {
                for f in [m.map(b, a, bc.restriction_basis(a, b, p)), m.map(a, b, bc.transfer_basis(a, b, p))] {
                    out.push(shape(&f.kernel().group));
                    out.push(shape(&f.cokernel().group));
                }
            }
        }
    }
    out
}

/// `FP(A) ⊕ CFP(B)` whose invariants match neither `FP(A ⊕ B)` nor `CFP(A ⊕ B)`.
#[derive(Clone, Debug)]
pub struct RealizabilityWitness {
    pub fixed_part: String,
    pub cofixed_part: String,
}

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub group: String,
    pub bound: usize,
    pub candidates: usize,
    pub witnesses: Vec<RealizabilityWitness>,
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {} candidates of underlying rank ≤ {}, {} witnesses", self.group, self.candidates, self.bound, self.witnesses.len())?;
        for w in &self.witnesses {
            writeln!(f, "  FP({}) ⊕ CFP({})", w.fixed_part, w.cofixed_part)?;
        }
        Ok(())
    }
}

/// A Z̄-module `M` with `M ≅ FP(N')` forces `N' ≅ M(G/e)`, so comparing `FP(A) ⊕ CFP(B)` against
/// `FP(A ⊕ B)` and `CFP(A ⊕ B)` decides whether it is a fixed (cofixed) point functor at all.
pub fn nonrealizable_witness_search(cats: &GroupCategories, bound: usize) -> Result<WitnessReport, ConstantError> {
    let blocks: Vec<(String, ZGModule)> = building_blocks(cats, false).into_iter().filter(|(_, b)| b.rank() <= bound).collect();
    let mut candidates = 0;
    let mut witnesses = Vec::new();
    for (la, a) in &blocks {
        for (lb, b) in &blocks {
            if a.rank() + b.rank() > bound {
                continue;
            }
            candidates += 1;
            let fa = fixed_point_mackey(cats, a)?;
            let cb = cofixed_point_mackey(cats, b)?;
            let mixed = crate::kan::DiagramFunctor::direct_sum(&[&fa, &cb]);
            let n = ZGModule::direct_sum(&[a, b]);
            let inv = invariants(cats, &mixed);
            if inv != invariants(cats, &fixed_point_mackey(cats, &n)?) && inv != invariants(cats, &cofixed_point_mackey(cats, &n)?) {
                witnesses.push(RealizabilityWitness { fixed_part: la.clone(), cofixed_part: lb.clone() });
            }
        }
    }
    Ok(WitnessReport { group: cats.ctx.group.name().to_string(), bound, candidates, witnesses })
}
