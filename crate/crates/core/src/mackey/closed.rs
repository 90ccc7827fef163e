//! The internal Hom of Mackey functors, currying, and the comparison `Hom_M(C_M X, 𝒜)` with `R* C*_G(X)`.

use std::sync::Arc;

use super::{apply_span_matrix, box_from_pairing, burnside_functor, mackey_l, rstar, split_parts, MackeyError, MackeyFunctor, ProductWith};
use crate::categories::GroupCategories;
use crate::coeff::{cellular_chain, dual_cochain, GCWComplex};
use crate::kan::{nat_hom, precompose, DiagramFunctor, LeftKan, NatGroup, NatTrans};
use crate::linalg::{AbHom, FgAbGroup, Int, IntMatrix, Tensor};

/// `Hom_M(N, P)` with the data needed to move between its elements and families `g_T`.
pub struct HomM {
    pub functor: MackeyFunctor,
    /// `groups[a] = Nat(N, P(G/H_a × −))`.
    pub groups: Vec<NatGroup>,
    /// `shifted[a] = P(G/H_a × −)`.
    pub shifted: Vec<DiagramFunctor>,
}

/// `P(φ × −) : P(a × −) → P(b × −)` for a basis span `φ: a → b`.
fn shift_transformation(cats: &GroupCategories, p: &MackeyFunctor, a: usize, b: usize, f: usize) -> NatTrans {
    let bc = &cats.burnside;
    NatTrans {
        components: (0..cats.orbit_count())
            .map(|t| apply_span_matrix(p, &bc.product_basis((a, b, f), (t, t, bc.identity_index(t)))))
            .collect(),
    }
}

/// `Hom_M(N, P)(S) = Nat(N, P(S × −))`, with `φ` acting by postcomposition with `P(φ × −)`.
pub fn hom_m(cats: &Arc<GroupCategories>, n: &MackeyFunctor, p: &MackeyFunctor) -> HomM {
    let k = cats.orbit_count();
    let shifted: Vec<DiagramFunctor> = (0..k).map(|a| precompose(p, &ProductWith::new(cats.clone(), a))).collect();
    let groups: Vec<NatGroup> = shifted.iter().map(|s| nat_hom(n, s)).collect();
    let values: Vec<FgAbGroup> = groups.iter().map(|g| g.group.clone()).collect();
    let functor = DiagramFunctor::from_fn(cats.burnside_cat().clone(), values, |a, b, f| {
        groups[a].postcompose_map(&groups[b], &shift_transformation(cats, p, a, b, f))
    });
    HomM { functor, groups, shifted }
}

/// `Hom_M(𝒜, P) → P`, `g ↦ g_{G/G}(1)`.
pub fn hom_unit_evaluation(cats: &GroupCategories, hom: &HomM, p: &MackeyFunctor) -> NatTrans {
    let (bc, top) = (&cats.burnside, cats.ctx.top());
    NatTrans {
        components: (0..cats.orbit_count())
            .map(|a| {
                let z = cats.ctx.product(a, top).summands[0].iso[bc.base_point(a)];
                let back = p.map(a, a, bc.transfer_basis(a, a, z));
                let g = &hom.groups[a];
                let one = FgAbGroup::free(bc.rank(top, top)).basis_element(bc.identity_index(top));
                let cols: Vec<Vec<Int>> = (0..g.group.ngens())
                    .map(|q| back.apply(&g.transformation(&g.group.basis_element(q)).components[top].apply(&one)))
                    .collect();
                AbHom::new(g.group.clone(), p.value(a).clone(), IntMatrix::from_columns(&cols, p.value(a).ngens())).unwrap()
            })
            .collect(),
    }
}

/// `Θ : M □ N → P` to `M → Hom_M(N, P)`, `m ↦ (n ↦ Θ(m ⊗ n))`.
pub fn curry(cats: &GroupCategories, m: &MackeyFunctor, n: &MackeyFunctor, bx: &LeftKan, hom: &HomM, theta: &NatTrans) -> Result<NatTrans, MackeyError> {
    let (bc, k) = (&cats.burnside, cats.orbit_count());
    let mut components = Vec::with_capacity(k);
    for a in 0..k {
        let mut cols = Vec::with_capacity(m.value(a).ngens());
        for i in 0..m.value(a).ngens() {
            let x = m.value(a).basis_element(i);
            let g = NatTrans {
                components: (0..k)
                    .map(|t| {
                        let dec = cats.ctx.product(a, t);
                        let tensor = Tensor::new(m.value(a), n.value(t));
                        let target = hom.shifted[a].value(t);
                        let cols: Vec<Vec<Int>> = (0..n.value(t).ngens())
                            .map(|j| {
                                let pair = tensor.pair(&x, &n.value(t).basis_element(j));
                                let mut v = Vec::with_capacity(target.ngens());
                                for (s, summand) in dec.summands.iter().enumerate() {
                                    let y = summand.class;
                                    let class = bx.class_of(y, a * k + t, s, bc.identity_index(y), &pair);
                                    v.extend(theta.components[y].apply(&class));
                                }
                                v
                            })
                            .collect();
                        AbHom::new(n.value(t).clone(), target.clone(), IntMatrix::from_columns(&cols, target.ngens())).unwrap()
                    })
                    .collect(),
            };
            cols.push(hom.groups[a].element(&g).ok_or(MackeyError::NotNatural)?);
        }
        let target = &hom.groups[a].group;
        components.push(AbHom::new(m.value(a).clone(), target.clone(), IntMatrix::from_columns(&cols, target.ngens())).unwrap());
    }
    Ok(NatTrans { components })
}

/// `Φ : M → Hom_M(N, P)` to `M □ N → P`, `m ⊗ n ↦ Φ(m)(n)`.
pub fn uncurry(cats: &GroupCategories, m: &MackeyFunctor, n: &MackeyFunctor, p: &MackeyFunctor, bx: &LeftKan, hom: &HomM, phi: &NatTrans) -> Result<NatTrans, MackeyError> {
    Ok(box_from_pairing(cats, bx, m, n, p, |c1, c2, i, j| {
        let g = hom.groups[c1].transformation(&phi.components[c1].column(i));
        let v = g.components[c2].column(j);
        split_parts(p, &cats.ctx.product(c1, c2).classes(), &v)
    })?)
}

/// Why no isomorphism exists between two functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// The values at this object are not isomorphic groups.
    Values(usize),
    /// Every transformation, reduced mod `prime`, is singular at some object.
    Modular { prime: u64 },
}

/// Outcome of a search for a natural isomorphism.
#[derive(Clone, Debug)]
pub enum IsoSearch {
    Found { forward: NatTrans, backward: NatTrans },
    Obstructed(Obstruction),
    Undetermined,
}

impl IsoSearch {
    pub fn is_found(&self) -> bool {
        matches!(self, IsoSearch::Found { .. })
    }
}

fn det_mod(m: &[Vec<u64>], p: u64) -> u64 {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = 1u64;
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| a[r][c] != 0) else { return 0 };
        if r != c {
            a.swap(r, c);
            det = (p - det) % p;
        }
        det = det * a[c][c] % p;
        let inv = pow_mod(a[c][c], p - 2, p);
        for r in c + 1..n {
            let f = a[r][c] * inv % p;
            if f != 0 {
                for j in c..n {
                    a[r][j] = (a[r][j] + (p - f) * a[c][j] % p) % p;
                }
            }
        }
    }
    det
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn residue(x: &Int, p: u64) -> u64 {
    x.modulo(&Int::from(p as i64)).to_i64().unwrap() as u64
}

/// Search `Nat(A, B)` for an isomorphism between functors with free values.
///
/// Coefficient vectors with entries in `{−1, 0, 1}` are tried by increasing support, up to `budget`
/// candidates; failing that, small primes are tried for a modular obstruction.
pub fn find_isomorphism(a: &DiagramFunctor, b: &DiagramFunctor, budget: usize) -> IsoSearch {
    let n = a.category().object_count();
    for o in 0..n {
        let (x, y) = (a.value(o), b.value(o));
        if x.free_rank() != y.free_rank() || x.torsion_invariants() != y.torsion_invariants() {
            return IsoSearch::Obstructed(Obstruction::Values(o));
        }
    }
    if !a.values().iter().chain(b.values()).all(FgAbGroup::is_free) {
        return IsoSearch::Undetermined;
    }
    let ng = nat_hom(a, b);
    let r = ng.group.ngens();
    let basis: Vec<NatTrans> = (0..r).map(|q| ng.transformation(&ng.group.basis_element(q))).collect();
    let combine = |c: &[i64]| -> NatTrans {
        let mut t = NatTrans::zero(a, b);
        for (q, &v) in c.iter().enumerate() {
            if v != 0 {
                t = t.add(&basis[q].scale(&Int::from(v)));
            }
        }
        t
    };
    let mut tried = 0usize;
    'outer: for support in 1..=r {
        for subset in subsets(r, support) {
            for signs in 0..(1u64 << support) {
                if tried >= budget {
                    break 'outer;
                }
                tried += 1;
                let mut c = vec![0i64; r];
                for (bit, &q) in subset.iter().enumerate() {
                    c[q] = if signs >> bit & 1 == 1 { -1 } else { 1 };
                }
                let t = combine(&c);
                if t.is_isomorphism() {
                    let inv = t.inverse().expect("isomorphism has an inverse");
                    if t.is_natural(a, b) && inv.is_natural(b, a) {
                        return IsoSearch::Found { forward: t, backward: inv };
                    }
                }
            }
        }
    }
    for p in [2u64, 3, 5, 7] {
        let Some(total) = p.checked_pow(r as u32).filter(|&t| t <= budget as u64) else { continue };
        let mats: Vec<Vec<Vec<Vec<u64>>>> = basis
            .iter()
            .map(|t| {
                t.components
                    .iter()
                    .map(|h| (0..h.matrix().rows()).map(|i| (0..h.matrix().cols()).map(|j| residue(&h.matrix()[(i, j)], p)).collect()).collect())
                    .collect()
            })
            .collect();
        let mut all_singular = true;
        for code in 0..total {
            let mut digits = Vec::with_capacity(r);
            let mut x = code;
            for _ in 0..r {
                digits.push(x % p);
                x /= p;
            }
            let singular = (0..n).any(|o| {
                let size = a.value(o).ngens();
                if size == 0 {
                    return false;
                }
                let mut m = vec![vec![0u64; size]; size];
                for (q, &d) in digits.iter().enumerate() {
                    if d != 0 {
                        for (i, row) in m.iter_mut().enumerate() {
                            for (j, e) in row.iter_mut().enumerate() {
                                *e = (*e + d * mats[q][o][i][j]) % p;
                            }
                        }
                    }
                }
                det_mod(&m, p) == 0
            });
            if !singular {
                all_singular = false;
                break;
            }
        }
        if all_singular {
            return IsoSearch::Obstructed(Obstruction::Modular { prime: p });
        }
    }
    IsoSearch::Undetermined
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Per degree, the two sides `Hom_M(C_M X, 𝒜)` and `R* C*_G(X)` and the outcome of the search.
pub struct DualityReport {
    pub left: Vec<MackeyFunctor>,
    pub right: Vec<MackeyFunctor>,
    pub degrees: Vec<IsoSearch>,
}

impl DualityReport {
    pub fn all_isomorphic(&self) -> bool {
        self.degrees.iter().all(IsoSearch::is_found)
    }
}

/// Compare `Hom_M(C_M(X)_n, 𝒜)` with `R*(C^n_G(X))` degree by degree.
pub fn duality_check(cats: &Arc<GroupCategories>, x: &GCWComplex, budget: usize) -> Result<DualityReport, MackeyError> {
    let chains = cellular_chain(cats, x);
    let cochains = dual_cochain(cats, x);
    let a = burnside_functor(cats);
    let mut report = DualityReport { left: Vec::new(), right: Vec::new(), degrees: Vec::new() };
    for (c, d) in chains.terms.iter().zip(&cochains.terms) {
        let l = mackey_l(cats, c)?;
        let left = hom_m(cats, &l.functor, &a).functor;
        let right = rstar(cats, d)?.functor;
        report.degrees.push(find_isomorphism(&left, &right, budget));
        report.left.push(left);
        report.right.push(right);
    }
    Ok(report)
}
