//! Independent oracles built from raw cell data and Smith normal forms.
#![allow(dead_code)]

use std::sync::Arc;

use mackey_core::categories::GroupCategories;
use mackey_core::chain::AbCochainComplex;
use mackey_core::coeff::{bundled, GCWComplex};
use mackey_core::groups::Subgroup;
use mackey_core::linalg::{integer_kernel, invariant_factors, AbHom, FgAbGroup, Int, IntMatrix, SVec};

pub const GROUPS: [&str; 5] = ["Z2", "Z3", "Z4", "Z2xZ2", "S3"];

/// Homology from ranks and Smith invariants of the boundary matrices alone.
pub fn snf_homology(dims: &[usize], boundaries: &[IntMatrix]) -> Vec<FgAbGroup> {
    let rank_and_torsion = |n: usize| -> (usize, Vec<Int>) {
        match boundaries.get(n.wrapping_sub(1)) {
            Some(d) if n >= 1 => {
                let (f, r) = invariant_factors(d);
                (r, f)
            }
            _ => (0, Vec::new()),
        }
    };
    (0..dims.len())
        .map(|n| {
            let (r_out, _) = rank_and_torsion(n);
            let (r_in, torsion) = rank_and_torsion(n + 1);
            let free = dims[n] - r_out - r_in;
            let mut orders: Vec<Int> = torsion.into_iter().filter(|t| !t.is_one()).collect();
            orders.extend(std::iter::repeat(Int::ZERO).take(free));
            FgAbGroup::from_orders(orders)
        })
        .collect()
}

pub fn fixed_point_matrices(x: &GCWComplex, k: &Subgroup) -> (Vec<usize>, Vec<IntMatrix>) {
    let fixed: Vec<Vec<usize>> = (0..x.len()).map(|n| x.cells(n).fixed_point_list(k)).collect();
    let mats = (1..x.len())
        .map(|n| {
            let d = x.boundary(n);
            let mut m = IntMatrix::zeros(fixed[n - 1].len(), fixed[n].len());
            for (j, &a) in fixed[n].iter().enumerate() {
                for (i, &b) in fixed[n - 1].iter().enumerate() {
                    m[(i, j)] = d[(b, a)].clone();
                }
            }
            m
        })
        .collect();
    (fixed.iter().map(Vec::len).collect(), mats)
}

/// Cells of `X/G` are orbits; `∂[x] = Σ_y D[y][x] [Gy]`.
pub fn orbit_space_matrices(c: &GroupCategories, x: &GCWComplex) -> (Vec<usize>, Vec<IntMatrix>) {
    let g = &c.ctx.group;
    let orbits: Vec<Vec<Vec<usize>>> = (0..x.len()).map(|n| x.cells(n).orbits(g)).collect();
    let which = |n: usize, y: usize| orbits[n].iter().position(|o| o.contains(&y)).unwrap();
    let mats = (1..x.len())
        .map(|n| {
            let d = x.boundary(n);
            let mut m = IntMatrix::zeros(orbits[n - 1].len(), orbits[n].len());
            for (j, o) in orbits[n].iter().enumerate() {
                let a = o[0];
                for b in 0..x.cells(n - 1).size() {
                    m[(which(n - 1, b), j)] += d[(b, a)].clone();
                }
            }
            m
        })
        .collect();
    (orbits.iter().map(Vec::len).collect(), mats)
}

pub fn transpose_cohomology(dims: &[usize], boundaries: &[IntMatrix]) -> Vec<FgAbGroup> {
    let groups: Vec<FgAbGroup> = dims.iter().map(|&d| FgAbGroup::free(d)).collect();
    let codiffs = boundaries
        .iter()
        .enumerate()
        .map(|(n, m)| AbHom::new(groups[n].clone(), groups[n + 1].clone(), m.transpose()).unwrap())
        .collect();
    AbCochainComplex::new(groups, codiffs).unwrap().cohomology_all()
}

pub fn all_complexes() -> Vec<(String, Arc<GroupCategories>, GCWComplex)> {
    let mut out = Vec::new();
    for name in GROUPS {
        let c = GroupCategories::by_name(name).unwrap();
        for (label, x) in bundled::catalogue(&c.ctx) {
            out.push((format!("{name} {label}"), c.clone(), x));
        }
    }
    out
}

/// A saturated basis of `{v : A_g v = v for every g in elements}`.
pub fn fixed_lattice(actions: &[IntMatrix], elements: &[usize]) -> Vec<Vec<Int>> {
    let n = actions[0].cols();
    let mut rows = Vec::new();
    for &g in elements {
        let d = actions[g].sub(&IntMatrix::identity(n));
        for i in 0..n {
            rows.push(SVec::from_dense(d.row(i)));
        }
    }
    integer_kernel(&rows, n)
}

/// `Z^n / span{(A_g − 1)v}` as torsion invariants and rank.
pub fn coinvariants(actions: &[IntMatrix], elements: &[usize]) -> (Vec<Int>, usize) {
    let n = actions[0].cols();
    let mut cols = Vec::new();
    for &g in elements {
        let d = actions[g].sub(&IntMatrix::identity(n));
        cols.extend((0..n).map(|j| d.column(j)));
    }
    if cols.is_empty() {
        return (Vec::new(), n);
    }
    let (torsion, rank) = invariant_factors(&IntMatrix::from_columns(&cols, n));
    (torsion, n - rank)
}

/// Whether `p` maps the fixed lattice of `N` onto that of `M`. The image lies in the saturated
/// lattice `M^H`, so it is all of it exactly when it is saturated of the same rank.
pub fn fixed_onto(n_actions: &[IntMatrix], m_actions: &[IntMatrix], p: &IntMatrix, elements: &[usize]) -> bool {
    let target = fixed_lattice(m_actions, elements).len();
    let source = fixed_lattice(n_actions, elements);
    if source.is_empty() {
        return target == 0;
    }
    let image = p.mul(&IntMatrix::from_columns(&source, p.cols()));
    let (torsion, rank) = invariant_factors(&image);
    rank == target && torsion.is_empty()
}
