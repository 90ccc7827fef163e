//! Acceptance battery. Prints one line per criterion and exits nonzero on an error or an
//! unexpected failure. Criteria listed in `KNOWN_UNATTAINABLE` fail on verified counter-evidence.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use common::{coinvariants, fixed_lattice, fixed_onto, fixed_point_matrices, snf_homology, GROUPS};
use mackey_core::burnside::BasisSpan;
use mackey_core::categories::GroupCategories;
use mackey_core::coeff::{
    boxtimes, boxtimes_complex, bundled, cellular_chain, is_chain_isomorphism, product_chain_comparison, product_complex, representable,
    representable_product_comparison, GCWComplex,
};
use mackey_core::constant::{
    counterexample_z2z2, cyclic_exactness_check, fixed_point_mackey, cofixed_point_mackey, is_zbar_module, random_module, random_ses, xi,
};
use mackey_core::groups::{gset_product, FiniteGroup, GSet};
use mackey_core::kan::nat_hom;
use mackey_core::linalg::{integer_kernel, AbHom, FgAbGroup, Int, IntMatrix, SVec};
use mackey_core::mackey::{
    box_product, burnside_functor, chain_product_comparison, curry, duality_check, hom_m, lemma_suite, representable_mackey, uncurry, zbar,
    IsoSearch, Obstruction,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const KNOWN_UNATTAINABLE: [usize; 1] = [6];
const BURNSIDE_GROUPS: [&str; 4] = ["Z2", "Z4", "Z2xZ2", "S3"];

type Criterion = fn(&mut Vec<String>) -> Result<bool, String>;

fn cats(name: &str) -> Arc<GroupCategories> {
    GroupCategories::by_name(name).unwrap_or_else(|| panic!("no group {name}"))
}

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

// ---------------------------------------------------------------------------------------------
// Concrete spans and their marks

/// A finite G-set with maps to two orbits, as explicit tables.
struct ConcreteSpan {
    act: Vec<Vec<usize>>,
    left: Vec<usize>,
    right: Vec<usize>,
}

fn concrete_basis(c: &GroupCategories, a: usize, b: usize, s: BasisSpan) -> ConcreteSpan {
    let g = &c.ctx.group;
    let j = &c.ctx.orbits[s.middle].gset;
    let base = (0..j.size()).find(|&x| c.ctx.orbits[s.middle].subgroup.elements().iter().all(|&h| j.act(h, x) == x)).unwrap();
    let mut left = vec![usize::MAX; j.size()];
    let mut right = vec![usize::MAX; j.size()];
    for x in g.elements() {
        let p = j.act(x, base);
        if left[p] == usize::MAX {
            left[p] = c.ctx.orbits[a].gset.act(x, s.left);
            right[p] = c.ctx.orbits[b].gset.act(x, s.right);
        }
    }
    ConcreteSpan { act: g.elements().map(|x| j.action_row(x).to_vec()).collect(), left, right }
}

fn pullback(g: &FiniteGroup, s: &ConcreteSpan, t: &ConcreteSpan) -> ConcreteSpan {
    let pairs: Vec<(usize, usize)> =
        (0..s.left.len()).flat_map(|x| (0..t.left.len()).map(move |y| (x, y))).filter(|&(x, y)| s.right[x] == t.left[y]).collect();
    let index = |p: (usize, usize)| pairs.iter().position(|&q| q == p).unwrap();
    let act = g.elements().map(|e| pairs.iter().map(|&(x, y)| index((s.act[e][x], t.act[e][y]))).collect()).collect();
    ConcreteSpan { act, left: pairs.iter().map(|&(x, _)| s.left[x]).collect(), right: pairs.iter().map(|&(_, y)| t.right[y]).collect() }
}

/// `marks[(k, x, z)]`: points fixed by the k-th class representative lying over `(x, z)`.
fn marks(c: &GroupCategories, s: &ConcreteSpan, a: usize, b: usize) -> Vec<i64> {
    let (na, nb) = (c.ctx.orbits[a].size(), c.ctx.orbits[b].size());
    let mut out = vec![0i64; c.orbit_count() * na * nb];
    for k in 0..c.orbit_count() {
        let elems = c.ctx.orbits[k].subgroup.elements();
        for p in 0..s.left.len() {
            if elems.iter().all(|&h| s.act[h][p] == p) {
                out[(k * na + s.left[p]) * nb + s.right[p]] += 1;
            }
        }
    }
    out
}

fn marks_of(c: &GroupCategories, a: usize, b: usize, v: &SVec) -> Vec<i64> {
    let basis = c.burnside.basis(a, b);
    let mut out = vec![0i64; c.orbit_count() * c.ctx.orbits[a].size() * c.ctx.orbits[b].size()];
    for (i, coeff) in v.iter() {
        let m = marks(c, &concrete_basis(c, a, b, basis[*i]), a, b);
        let k = coeff.to_i64().unwrap();
        out.iter_mut().zip(m).for_each(|(o, x)| *o += k * x);
    }
    out
}

// ---------------------------------------------------------------------------------------------
// 1

fn burnside_structure(notes: &mut Vec<String>) -> Result<bool, String> {
    let mut ok = true;
    for name in BURNSIDE_GROUPS {
        let c = cats(name);
        let (b, n, g) = (&c.burnside, c.orbit_count(), &c.ctx.group);
        let (mut pairs, mut triples, mut double) = (0, 0, 0);
        let mut bad = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for f in 0..b.rank(x, y) {
                        for h in 0..b.rank(y, z) {
                            pairs += 1;
                            let got = b.compose_basis(x, y, z, f, h);
                            let s = concrete_basis(&c, x, y, b.basis(x, y)[f]);
                            let t = concrete_basis(&c, y, z, b.basis(y, z)[h]);
                            if marks_of(&c, x, z, got) != marks(&c, &pullback(g, &s, &t), x, z) {
                                bad.push(format!("{name}: composite {} then {}", b.label(x, y, f), b.label(y, z, h)));
                            }
                            let tr = b.compose_basis(z, y, x, b.transpose_basis(y, z, h), b.transpose_basis(x, y, f));
                            if got.map_indices(|i| b.transpose_basis(x, z, i)) != *tr {
                                bad.push(format!("{name}: transpose of {} then {}", b.label(x, y, f), b.label(y, z, h)));
                            }
                        }
                    }
                    for w in 0..n {
                        for f in 0..b.rank(x, y) {
                            for h in 0..b.rank(y, z) {
                                for k in 0..b.rank(z, w) {
                                    triples += 1;
                                    let l = b.compose_vec(x, z, w, b.compose_basis(x, y, z, f, h), &SVec::unit(k));
                                    let r = b.compose_vec(x, y, w, &SVec::unit(f), b.compose_basis(y, z, w, h, k));
                                    if l != r {
                                        bad.push(format!("{name}: associativity at {x} {y} {z} {w}"));
                                    }
                                }
                            }
                        }
                    }
                }
                for f in 0..b.rank(x, y) {
                    let unit = SVec::unit(f);
                    if *b.compose_basis(x, x, y, b.identity_index(x), f) != unit || *b.compose_basis(x, y, y, f, b.identity_index(y)) != unit {
                        bad.push(format!("{name}: unit law at {}", b.label(x, y, f)));
                    }
                }
            }
        }

        // res∘tr inside K = H_y against double cosets H_z \ K / H_x
        for y in 0..n {
            let k = &c.ctx.orbits[y].subgroup;
            let p = (0..c.ctx.orbits[y].size()).find(|&q| k.elements().iter().all(|&e| c.ctx.orbits[y].gset.act(e, q) == q)).unwrap();
            for x in (0..n).filter(|&x| c.ctx.orbits[x].subgroup.is_subgroup_of(k)) {
                for z in (0..n).filter(|&z| c.ctx.orbits[z].subgroup.is_subgroup_of(k)) {
                    double += 1;
                    let (hx, hz) = (c.ctx.orbits[x].subgroup.elements(), c.ctx.orbits[z].subgroup.elements());
                    let composite = b.compose_basis(x, y, z, b.transfer_basis(x, y, p), b.restriction_basis(z, y, p));
                    let mut lib: Vec<usize> = Vec::new();
                    for (i, coeff) in composite.iter() {
                        let m = coeff.to_i64().unwrap();
                        if m < 0 {
                            bad.push(format!("{name}: negative coefficient in res∘tr"));
                        }
                        lib.extend(std::iter::repeat(b.basis(x, z)[*i].middle).take(m.max(0) as usize));
                    }
                    let mut seen = BTreeSet::new();
                    let mut oracle = Vec::new();
                    for &t in k.elements() {
                        let coset: BTreeSet<usize> = hz.iter().flat_map(|&l| hx.iter().map(move |&h| g.mul(g.mul(l, t), h))).collect();
                        if seen.insert(coset.iter().copied().collect::<Vec<_>>()) {
                            let conj: BTreeSet<usize> = hx.iter().map(|&h| g.mul(g.mul(t, h), g.inv(t))).collect();
                            let stab: Vec<usize> = hz.iter().copied().filter(|l| conj.contains(l)).collect();
                            oracle.push(c.ctx.classify(&stab).0);
                        }
                    }
                    lib.sort();
                    oracle.sort();
                    if lib != oracle {
                        bad.push(format!("{name}: res∘tr through {} has middles {lib:?}, double cosets give {oracle:?}", c.ctx.orbit_label(y)));
                    }
                }
            }
        }
        notes.push(format!("{name}: {pairs} composites against pullback marks, {triples} associativity triples, {double} res∘tr double coset checks"));
        for m in bad.iter().take(5) {
            notes.push(format!("mismatch: {m}"));
        }
        ok &= bad.is_empty();
    }

    // A(Z/2): 1·t = t and t·t = 2t, with 2 read off the orbits of G/e × G/e
    let c = cats("Z2");
    let b = &c.burnside;
    let top = c.ctx.top();
    let one = b.ring_unit(top);
    let t = (0..b.rank(top, top)).find(|&i| b.basis(top, top)[i].middle == c.ctx.bottom()).unwrap();
    let free = &c.ctx.orbits[c.ctx.bottom()].gset;
    let (prod, _, _) = gset_product(&c.ctx.group, free, free);
    let orbits = prod.orbits(&c.ctx.group);
    let free_orbits = orbits.iter().filter(|o| o.len() == c.ctx.group.order()).count();
    let tt_expected = if free_orbits == orbits.len() { SVec::from_pairs([(t, Int::from(free_orbits))]) } else { SVec::new() };
    let table_ok = b.ring_product(top, one, t) == SVec::unit(t) && b.ring_product(top, t, one) == SVec::unit(t) && b.ring_product(top, t, t) == tt_expected;
    notes.push(format!("A(Z/2): G/e × G/e has {} orbits, {free_orbits} free; 1·t = t, t·t = {free_orbits}t: {table_ok}", orbits.len()));
    Ok(ok && table_ok && free_orbits == 2)
}

// ---------------------------------------------------------------------------------------------
// 2

fn fixed_count(s: &GSet, elems: &[usize]) -> usize {
    (0..s.size()).filter(|&x| elems.iter().all(|&h| s.act(h, x) == x)).count()
}

fn bundled_pairs() -> Vec<(String, Arc<GroupCategories>, GCWComplex, GCWComplex)> {
    let z2 = cats("Z2");
    let z4 = cats("Z4");
    let s = bundled::sign_sphere(&z2.ctx).unwrap();
    let pt2 = bundled::point(&z2.ctx);
    let circle = bundled::free_circle(&z4.ctx, 4).unwrap();
    let pt4 = bundled::point(&z4.ctx);
    vec![
        ("Z2 S^σ × pt".into(), z2.clone(), s.clone(), pt2.clone()),
        ("Z2 pt × S^σ".into(), z2.clone(), pt2.clone(), s.clone()),
        ("Z2 S^σ × S^σ".into(), z2.clone(), s.clone(), s),
        ("Z2 pt × pt".into(), z2, pt2.clone(), pt2),
        ("Z4 circle × pt".into(), z4.clone(), circle.clone(), pt4.clone()),
        ("Z4 pt × circle".into(), z4.clone(), pt4, circle.clone()),
        ("Z4 circle × circle".into(), z4, circle.clone(), circle),
    ]
}

fn representable_products(notes: &mut Vec<String>) -> Result<bool, String> {
    let mut ok = true;
    for name in BURNSIDE_GROUPS {
        let c = cats(name);
        let n = c.orbit_count();
        let mut good = 0;
        for a in 0..n {
            for b in 0..n {
                let (s, t) = (&c.ctx.orbits[a].gset, &c.ctx.orbits[b].gset);
                let lan = boxtimes(&c, &representable(&c, s), &representable(&c, t)).map_err(|e| e.to_string())?;
                let (st, _, _) = gset_product(&c.ctx.group, s, t);
                let target = representable(&c, &st);
                let cmp = representable_product_comparison(&c, s, t, &lan).map_err(|e| e.to_string())?;
                let iso = cmp.is_natural(&lan.functor, &target) && cmp.is_isomorphism();
                let values = (0..n).all(|k| {
                    let elems = c.ctx.orbits[k].subgroup.elements();
                    let expected = FgAbGroup::free(fixed_count(s, elems) * fixed_count(t, elems));
                    *lan.functor.value(k) == expected && *target.value(k) == expected
                });
                if iso && values {
                    good += 1;
                } else {
                    notes.push(format!("{name}: F_{} ⊠ F_{} fails (iso {iso}, values {values})", c.ctx.orbit_label(a), c.ctx.orbit_label(b)));
                    ok = false;
                }
            }
        }
        notes.push(format!("{name}: {good}/{} orbit pairs with natural isomorphism and brute-force fixed-point ranks", n * n));
    }
    for (label, c, x, y) in bundled_pairs() {
        let (cx, cy) = (cellular_chain(&c, &x), cellular_chain(&c, &y));
        let bx = boxtimes_complex(&c, &cx, &cy).map_err(|e| e.to_string())?;
        let prod = product_complex(&x, &y).map_err(|e| e.to_string())?;
        let cp = cellular_chain(&c, &prod);
        let cmp = product_chain_comparison(&c, &x, &y, &bx).map_err(|e| e.to_string())?;
        let iso = bx.complex.is_valid() && is_chain_isomorphism(&bx.complex, &cp, &cmp);
        let homology = (0..c.orbit_count()).all(|k| {
            let (dims, mats) = fixed_point_matrices(&prod, &c.ctx.orbits[k].subgroup);
            bx.complex.evaluate(k).homology_all() == snf_homology(&dims, &mats)
        });
        notes.push(format!("{label}: chain isomorphism {iso}, homology at every orbit equals fixed-point SNF {homology}"));
        ok &= iso && homology;
    }
    Ok(ok)
}

// ---------------------------------------------------------------------------------------------
// 3

fn l_takes_boxtimes_to_box(notes: &mut Vec<String>) -> Result<bool, String> {
    let mut ok = true;
    for name in BURNSIDE_GROUPS {
        let c = cats(name);
        let checks = lemma_suite(&c).map_err(|e| e.to_string())?;
        let held = checks.iter().filter(|ch| ch.holds).count();
        notes.push(format!("{name}: {held}/{} checks (representable grid, 𝒜 □ 𝒜, 𝒜 □ Z̄, Z̄ □ Z̄)", checks.len()));
        for ch in checks.iter().filter(|ch| !ch.holds) {
            notes.push(format!("fails: {}", ch.label));
        }
        ok &= held == checks.len() && checks.len() == 2 * c.orbit_count() * c.orbit_count() + 3;
    }
    for (label, c, x, y) in bundled_pairs() {
        let cmp = chain_product_comparison(&c, &x, &y).map_err(|e| e.to_string())?;
        notes.push(format!("{label}: L C(X × Y) ≅ C_M X □ C_M Y {}", cmp.is_isomorphism));
        ok &= cmp.is_isomorphism;
    }
    Ok(ok)
}

// ---------------------------------------------------------------------------------------------
// 4

fn currying_and_duality(notes: &mut Vec<String>) -> Result<bool, String> {
    let mut ok = true;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut forward, mut backward) = (0, 0);
    for (name, rep) in [("Z2", 0), ("Z4", 1)] {
        let c = cats(name);
        let fs = [burnside_functor(&c), zbar(&c), representable_mackey(&c, rep)];
        for (m, n, p) in [(&fs[1], &fs[1], &fs[1]), (&fs[0], &fs[1], &fs[2]), (&fs[2], &fs[0], &fs[1]), (&fs[2], &fs[2], &fs[0])] {
            let bx = box_product(&c, m, n).map_err(|e| e.to_string())?;
            let hom = hom_m(&c, n, p);
            let thetas = nat_hom(&bx.functor, p);
            let phis = nat_hom(m, &hom.functor);
            for _ in 0..4 {
                if thetas.group.ngens() > 0 {
                    let x: Vec<Int> = (0..thetas.group.ngens()).map(|_| Int::from(rng.gen_range(-3i64..=3))).collect();
                    let theta = thetas.transformation(&x);
                    let phi = curry(&c, m, n, &bx, &hom, &theta).map_err(|e| e.to_string())?;
                    let back = uncurry(&c, m, n, p, &bx, &hom, &phi).map_err(|e| e.to_string())?;
                    ok &= phi.is_natural(m, &hom.functor) && back == theta;
                    forward += 1;
                }
                if phis.group.ngens() > 0 {
                    let x: Vec<Int> = (0..phis.group.ngens()).map(|_| Int::from(rng.gen_range(-3i64..=3))).collect();
                    let phi = phis.transformation(&x);
                    let theta = uncurry(&c, m, n, p, &bx, &hom, &phi).map_err(|e| e.to_string())?;
                    let back = curry(&c, m, n, &bx, &hom, &theta).map_err(|e| e.to_string())?;
                    ok &= theta.is_natural(&bx.functor, p) && back == phi;
                    backward += 1;
                }
            }
        }
    }
    notes.push(format!("curry then uncurry: {forward} round trips; uncurry then curry: {backward} round trips; all identities: {ok}"));
    ok &= forward >= 20 && backward >= 20;

    let z2 = cats("Z2");
    let z4 = cats("Z4");
    let complexes = [
        ("Z2 point", z2.clone(), bundled::point(&z2.ctx)),
        ("Z2 S^σ", z2.clone(), bundled::sign_sphere(&z2.ctx).unwrap()),
        ("Z4 free circle", z4.clone(), bundled::free_circle(&z4.ctx, 4).unwrap()),
    ];
    for (label, c, x) in complexes {
        let r = duality_check(&c, &x, 20_000).map_err(|e| e.to_string())?;
        let iso = r.all_isomorphic() && r.degrees.len() == x.len();
        notes.push(format!("{label}: Hom_M(C_M X, 𝒜) ≅ R* C*_G(X) in {} degrees: {iso}", r.degrees.len()));
        ok &= iso;
    }
    let pt4 = duality_check(&z4, &bundled::point(&z4.ctx), 20_000).map_err(|e| e.to_string())?;
    let why = match &pt4.degrees[0] {
        IsoSearch::Found { .. } => "isomorphic".to_string(),
        IsoSearch::Obstructed(Obstruction::Modular { prime }) => format!("no isomorphism, every map is singular mod {prime}"),
        IsoSearch::Obstructed(Obstruction::Values(k)) => format!("no isomorphism, values differ at {}", z4.ctx.orbit_label(*k)),
        IsoSearch::Undetermined => "undetermined".to_string(),
    };
    notes.push(format!("Z4 point (outside the bundled set, recorded): {why}"));
    Ok(ok)
}

// ---------------------------------------------------------------------------------------------
// 5

fn zbar_recognition(notes: &mut Vec<String>) -> Result<bool, String> {
    let mut ok = true;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut accepted, mut tried) = (0, 0);
    for name in GROUPS {
        let c = cats(name);
        let mut candidates = Vec::new();
        for i in 0..6 {
            let n = random_module(&c, &mut rng, 4, i % 2 == 1);
            candidates.push(fixed_point_mackey(&c, &n).map_err(|e| e.to_string())?);
            candidates.push(cofixed_point_mackey(&c, &n).map_err(|e| e.to_string())?);
        }
        for h in 0..c.orbit_count() {
            for a in [FgAbGroup::free(1), FgAbGroup::cyclic(2), FgAbGroup::from_orders(ints(&[3, 0]))] {
                candidates.push(xi(&c, h, &a).map_err(|e| e.to_string())?);
            }
        }
        for m in &candidates {
            tried += 1;
            if is_zbar_module(&c, m).is_ok() {
                accepted += 1;
            }
        }

        let burnside = burnside_functor(&c);
        match is_zbar_module(&c, &burnside) {
            Ok(()) => {
                notes.push(format!("{name}: 𝒜 accepted"));
                ok = false;
            }
            Err(failures) => {
                let named = failures.iter().all(|f| f.description.contains("->"));
                notes.push(format!("{name}: 𝒜 rejected with {} witnesses, first: {}", failures.len(), failures[0].description));
                ok &= named;
            }
        }
        // f_* f^* for G/e → G/G in 𝒜(G/G) against |G|·id, compared through marks
        let b = &c.burnside;
        let (top, bottom) = (c.ctx.top(), c.ctx.bottom());
        let p = 0;
        let composite = b.compose_basis(top, bottom, top, b.restriction_basis(bottom, top, p), b.transfer_basis(bottom, top, p));
        let index = SVec::unit(b.identity_index(top)).scale(&Int::from(c.ctx.group.order()));
        let differ = marks_of(&c, top, top, composite) != marks_of(&c, top, top, &index);
        ok &= differ;
    }
    notes.push(format!("{accepted}/{tried} fixed, cofixed and Ξ functors accepted; 𝒜 composite tr∘res ≠ |G| by marks in every group"));
    Ok(ok && accepted == tried && tried >= 50)
}

// ---------------------------------------------------------------------------------------------
// 6 and 7: raw exactness facts for 0 → K → N → M → 0 with K = ker p

struct SequenceFacts {
    fixed_onto: Vec<bool>,
    k_cofixed: Vec<(Vec<Int>, usize)>,
    cofixed_injective: Vec<bool>,
}

fn induced_actions(actions: &[IntMatrix], basis: &[Vec<Int>]) -> Vec<IntMatrix> {
    let n = actions[0].cols();
    let inclusion = AbHom::new(FgAbGroup::free(basis.len()), FgAbGroup::free(n), IntMatrix::from_columns(basis, n)).unwrap();
    actions
        .iter()
        .map(|a| {
            let cols: Vec<Vec<Int>> = basis.iter().map(|v| inclusion.preimage(&a.mul_vec(v)).expect("kernel is invariant")).collect();
            IntMatrix::from_columns(&cols, basis.len())
        })
        .collect()
}

/// Columns `(A_g − 1)e_j` spanning `I_H L`.
fn augmentation_columns(actions: &[IntMatrix], h: &[usize]) -> Vec<Vec<Int>> {
    let n = actions[0].cols();
    h.iter()
        .flat_map(|&g| {
            let d = actions[g].sub(&IntMatrix::identity(n));
            (0..n).map(move |j| d.column(j))
        })
        .collect()
}

/// `K_H → N_H` is injective iff `Kx ∈ I_H N` forces `x ∈ I_H K`.
fn cofixed_injective(k_act: &[IntMatrix], n_act: &[IntMatrix], kernel: &[Vec<Int>], h: &[usize]) -> bool {
    let (r, n) = (kernel.len(), n_act[0].cols());
    if r == 0 {
        return true;
    }
    let rel_n = augmentation_columns(n_act, h);
    let mut cols: Vec<Vec<Int>> = kernel.to_vec();
    cols.extend(rel_n.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
    let joint = IntMatrix::from_columns(&cols, n);
    let rows: Vec<SVec> = (0..n).map(|i| SVec::from_dense(joint.row(i))).collect();
    let rel_k = augmentation_columns(k_act, h);
    let span = AbHom::new(FgAbGroup::free(rel_k.len()), FgAbGroup::free(r), IntMatrix::from_columns(&rel_k, r)).unwrap();
    integer_kernel(&rows, cols.len()).iter().all(|v| span.preimage(&v[..r]).is_some())
}

fn sequence_facts(n_act: &[IntMatrix], m_act: &[IntMatrix], p: &IntMatrix, subgroups: &[Vec<usize>]) -> SequenceFacts {
    let rows: Vec<SVec> = (0..p.rows()).map(|i| SVec::from_dense(p.row(i))).collect();
    let kernel = integer_kernel(&rows, p.cols());
    let k_act = if kernel.is_empty() { vec![IntMatrix::zeros(0, 0); n_act.len()] } else { induced_actions(n_act, &kernel) };
    let mut facts = SequenceFacts { fixed_onto: Vec::new(), k_cofixed: Vec::new(), cofixed_injective: Vec::new() };
    for h in subgroups {
        facts.fixed_onto.push(fixed_onto(n_act, m_act, p, h));
        facts.k_cofixed.push(if kernel.is_empty() { (Vec::new(), 0) } else { coinvariants(&k_act, h) });
        facts.cofixed_injective.push(cofixed_injective(&k_act, n_act, &kernel, h));
    }
    facts
}

fn regular_matrices(g: &FiniteGroup) -> Vec<IntMatrix> {
    g.elements()
        .map(|x| {
            let mut m = IntMatrix::zeros(g.order(), g.order());
            for y in g.elements() {
                m[(g.mul(x, y), y)] = Int::ONE;
            }
            m
        })
        .collect()
}

fn group_text(torsion: &[Int], rank: usize) -> String {
    let mut orders = torsion.to_vec();
    orders.extend(std::iter::repeat(Int::ZERO).take(rank));
    FgAbGroup::from_orders(orders).to_string()
}

fn counterexample(notes: &mut Vec<String>) -> Result<bool, String> {
    let c = cats("Z2xZ2");
    let g = &c.ctx.group;
    let (e, h, a) = (g.identity(), g.generators()[0], g.generators()[1]);
    let ah = g.mul(a, h);
    let all: Vec<usize> = g.elements().collect();

    // M = Z[G]/(αh − α + h − 1) on the basis 1, h, α; π: Z[G] → M
    let pi_of = |x: usize| -> Vec<Int> {
        match x {
            _ if x == e => ints(&[1, 0, 0]),
            _ if x == h => ints(&[0, 1, 0]),
            _ if x == a => ints(&[0, 0, 1]),
            _ => ints(&[1, -1, 1]),
        }
    };
    let pi = IntMatrix::from_columns(&all.iter().map(|&x| pi_of(x)).collect::<Vec<_>>(), 3);
    let reg = regular_matrices(g);
    let relation: Vec<Int> = (0..4).map(|x| Int::from([(ah, 1), (a, -1), (h, 1), (e, -1)].iter().filter(|t| t.0 == x).map(|t| t.1).sum::<i64>())).collect();
    if all.iter().any(|&x| pi.mul_vec(&reg[x].mul_vec(&relation)).iter().any(|v| !v.is_zero())) {
        return Err("the relation does not generate a submodule".into());
    }
    let m_act: Vec<IntMatrix> =
        all.iter().map(|&x| IntMatrix::from_columns(&[e, h, a].iter().map(|&y| pi_of(g.mul(x, y))).collect::<Vec<_>>(), 3)).collect();
    let n_act: Vec<IntMatrix> = reg.iter().map(|r| r.direct_sum(&IntMatrix::identity(1))).collect();
    let lambda = pi.hstack(&IntMatrix::from_columns(&[ints(&[1, 0, 1])], 3));
    if all.iter().any(|&x| m_act[x].mul(&lambda) != lambda.mul(&n_act[x])) {
        return Err("λ is not equivariant".into());
    }

    let subgroups: Vec<Vec<usize>> = vec![vec![e], vec![e, h], vec![e, a], vec![e, ah], all.clone()];
    let whole = subgroups.len() - 1;
    let fixed_m = fixed_lattice(&m_act, &all);
    let facts = sequence_facts(&n_act, &m_act, &lambda, &subgroups);
    let n_cofixed = coinvariants(&n_act, &all);
    let injective = facts.cofixed_injective[whole];

    let stated = [
        ("M^G = Z{1+α}", fixed_m.len() == 1 && (fixed_m[0] == ints(&[1, 0, 1]) || fixed_m[0] == ints(&[-1, 0, -1]))),
        ("fixed points short exact at all five subgroups", facts.fixed_onto.iter().all(|&x| x)),
        ("K_G ≅ Z/2 ⊕ Z", facts.k_cofixed[whole] == (ints(&[2]), 1)),
        ("N_G ≅ Z ⊕ Z", n_cofixed == (Vec::new(), 2)),
        ("K_G → N_G not injective", !injective),
    ];
    for (label, holds) in &stated {
        notes.push(format!("[{}] {label}", if *holds { "reproduced" } else { "NOT reproduced" }));
    }
    let (kt, kr) = &facts.k_cofixed[whole];
    notes.push(format!(
        "raw oracle: K_G = {}, N_G = {}, K_G → N_G {}",
        group_text(kt, *kr),
        group_text(&n_cofixed.0, n_cofixed.1),
        if injective { "injective" } else { "not injective" }
    ));

    let report = counterexample_z2z2().map_err(|e| e.to_string())?;
    let lib_at = |r: &mackey_core::constant::ExactnessReport, k: &[usize]| {
        r.subgroups.iter().find(|s| c.ctx.orbits[s.class].subgroup.elements() == k).map(|s| (s.fixed_exact, s.cofixed_exact))
    };
    let agree = report.k_cofixed == FgAbGroup::from_orders(kt.iter().cloned().chain(std::iter::repeat(Int::ZERO).take(*kr)))
        && report.n_cofixed == FgAbGroup::free(n_cofixed.1)
        && lib_at(&report.lambda, &all) == Some((true, injective))
        && subgroups.iter().zip(&facts.fixed_onto).all(|(k, &f)| lib_at(&report.lambda, k).map(|x| x.0) == Some(f));
    if !agree {
        return Err("library report disagrees with the raw oracle".into());
    }

    // Z[G]² → I_G, generators to h − 1 and α − 1
    let others: Vec<usize> = all.iter().copied().filter(|&x| x != e).collect();
    let ideal = |x: usize| -> Vec<Int> {
        let mut v = vec![Int::ZERO; 3];
        if x != e {
            v[others.iter().position(|&y| y == x).unwrap()] = Int::ONE;
        }
        v
    };
    let diff = |x: usize, y: usize| -> Vec<Int> { ideal(x).iter().zip(ideal(y)).map(|(p, q)| p.clone() - q).collect() };
    let i_act: Vec<IntMatrix> =
        all.iter().map(|&x| IntMatrix::from_columns(&others.iter().map(|&y| diff(g.mul(x, y), x)).collect::<Vec<_>>(), 3)).collect();
    let aug_p = IntMatrix::from_columns(&[h, a].iter().flat_map(|&s| all.iter().map(move |&x| (x, s))).map(|(x, s)| diff(g.mul(x, s), x)).collect::<Vec<_>>(), 3);
    let aug_n: Vec<IntMatrix> = reg.iter().map(|r| r.direct_sum(r)).collect();
    let aug = sequence_facts(&aug_n, &i_act, &aug_p, &subgroups);
    let (at, ar) = &aug.k_cofixed[whole];
    let aug_counter = aug.fixed_onto.iter().all(|&x| x) && !aug.cofixed_injective[whole];
    notes.push(format!(
        "Z[G]² → I_G: fixed points onto at all five subgroups {}, K_G = {}, K_G → N_G not injective {}",
        aug.fixed_onto.iter().all(|&x| x),
        group_text(at, *ar),
        !aug.cofixed_injective[whole]
    ));
    if !aug_counter || report.augmentation_k_cofixed != FgAbGroup::from_orders(at.iter().cloned().chain(std::iter::repeat(Int::ZERO).take(*ar))) {
        return Err("augmentation sequence does not separate fixed and cofixed exactness".into());
    }
    notes.push(format!("library: fp-equivalence {}, cfp-equivalence {} for the augmentation sequence", report.fp, report.cfp));
    Ok(stated.iter().all(|s| s.1))
}

// ---------------------------------------------------------------------------------------------
// 7

fn cyclic_proposition(notes: &mut Vec<String>) -> Result<bool, String> {
    let mut ok = true;
    for (seed, name) in ["Z2", "Z3", "Z4", "Z6"].iter().enumerate() {
        let c = cats(name);
        let g = &c.ctx.group;
        let subgroups: Vec<Vec<usize>> = c.ctx.orbits.iter().map(|o| o.subgroup.elements().to_vec()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(70 + seed as u64);
        let (mut exact, mut inexact, mut oracle_checked) = (0, 0, 0);
        for i in 0..200 {
            let torsion = i >= 100;
            let ses = random_ses(&c, &mut rng, 6, torsion);
            if ses.n.rank() > 6 {
                return Err(format!("{name}: sample {i} has rank {}", ses.n.rank()));
            }
            let r = cyclic_exactness_check(&c, &ses).map_err(|e| e.to_string())?;
            let gamma_decided = r.subgroups.iter().all(|s| s.gamma_zero.is_some());
            let agrees = r.consistent() && gamma_decided && r.fixed_exact() == r.cofixed_exact();
            if r.fixed_exact() {
                exact += 1;
            } else {
                inexact += 1;
            }
            if !torsion {
                let act = |m: &mackey_core::constant::ZGModule| g.elements().map(|x| m.action(x).matrix().clone()).collect::<Vec<_>>();
                let facts = sequence_facts(&act(&ses.n), &act(&ses.m), ses.p.matrix(), &subgroups);
                for (k, s) in r.subgroups.iter().enumerate() {
                    if facts.fixed_onto[k] != s.fixed_exact {
                        ok = false;
                        notes.push(format!("{name} sample {i}: fixed exactness at {} disagrees with the oracle", s.label));
                    }
                    if facts.cofixed_injective[k] != s.cofixed_exact {
                        ok = false;
                        notes.push(format!("{name} sample {i}: cofixed exactness at {} disagrees with the oracle", s.label));
                    }
                    oracle_checked += 1;
                }
            }
            if !agrees {
                ok = false;
                notes.push(format!("{name} sample {i}: fixed, cofixed and γ disagree"));
            }
        }
        notes.push(format!(
            "{name}: 200 sequences ({exact} exact, {inexact} not), fixed ⇔ cofixed ⇔ γ = 0 on all; raw oracle confirmed {oracle_checked} fixed and cofixed verdicts on the torsion-free half"
        ));
        ok &= exact > 0 && inexact > 0;
    }
    Ok(ok)
}

// ---------------------------------------------------------------------------------------------
// 8

fn bredon_oracles(notes: &mut Vec<String>) -> Result<bool, String> {
    use common::{all_complexes, orbit_space_matrices, transpose_cohomology};
    use mackey_core::bredon::{bredon_cohomology, bredon_homology, constant_system, corepresentable, corepresentable_dual, mackey_homology, GradedAbGroups};
    let mut ok = true;
    let mut count = 0;
    for (label, c, x) in all_complexes() {
        count += 1;
        let mut good = true;
        for k in 0..c.orbit_count() {
            let (dims, mats) = fixed_point_matrices(&x, &c.ctx.orbits[k].subgroup);
            good &= bredon_homology(&c, &x, &corepresentable(&c, k)) == GradedAbGroups::new(snf_homology(&dims, &mats));
            good &= bredon_cohomology(&c, &x, &corepresentable_dual(&c, k)) == GradedAbGroups::new(transpose_cohomology(&dims, &mats));
        }
        let (dims, mats) = orbit_space_matrices(&c, &x);
        let z = FgAbGroup::free(1);
        good &= bredon_homology(&c, &x, &constant_system(&c, &z, false)) == GradedAbGroups::new(snf_homology(&dims, &mats));
        good &= bredon_cohomology(&c, &x, &constant_system(&c, &z, true)) == GradedAbGroups::new(transpose_cohomology(&dims, &mats));
        let (dims, mats) = fixed_point_matrices(&x, &mackey_core::groups::Subgroup::trivial(&c.ctx.group));
        let under = GradedAbGroups::new(snf_homology(&dims, &mats));
        good &= GradedAbGroups::new(x.underlying_chain().homology_all()) == under;
        for m in [burnside_functor(&c), zbar(&c)] {
            good &= mackey_homology(&c, &x, &m, c.ctx.bottom()).map_err(|e| e.to_string())? == under;
        }
        if !good {
            notes.push(format!("{label}: mismatch"));
        }
        ok &= good;
    }
    notes.push(format!("{count} bundled complexes over {}: fixed-point, orbit-space and G/e oracles", GROUPS.join(", ")));
    Ok(ok)
}

// ---------------------------------------------------------------------------------------------

fn main() -> ExitCode {
    let criteria: [(usize, &str, Criterion); 8] = [
        (1, "Burnside category structure", burnside_structure),
        (2, "products of representables and cellular complexes", representable_products),
        (3, "L(A ⊠ B) ≅ LA □ LB and the unit laws", l_takes_boxtimes_to_box),
        (4, "currying and duality", currying_and_duality),
        (5, "Z̄-module recognition", zbar_recognition),
        (6, "Z/2 × Z/2 sequence with the stated data", counterexample),
        (7, "fixed and cofixed exactness over cyclic groups", cyclic_proposition),
        (8, "Bredon groups against brute-force oracles", bredon_oracles),
    ];
    let mut healthy = true;
    for (n, title, run) in criteria {
        let start = Instant::now();
        let mut notes = Vec::new();
        let outcome = catch_unwind(AssertUnwindSafe(|| run(&mut notes))).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        let (tag, expected) = match &outcome {
            Ok(true) => ("PASS", true),
            Ok(false) => ("FAIL", KNOWN_UNATTAINABLE.contains(&n)),
            Err(_) => ("ERROR", false),
        };
        let known = if tag == "FAIL" && expected { " (known: stated data not reproducible)" } else { "" };
        println!("criterion {n} [{tag}] {title}{known} ({secs:.1}s)");
        for line in &notes {
            println!("    {line}");
        }
        if let Err(e) = &outcome {
            println!("    error: {e}");
        }
        healthy &= expected;
    }
    if healthy {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
