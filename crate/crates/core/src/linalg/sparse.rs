use std::collections::BTreeMap;

use super::int::Int;
use super::matrix::IntMatrix;
use super::smith::{smith, Track};

/// Sparse integer vector: sorted indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SVec {
    entries: Vec<(usize, Int)>,
}

impl SVec {
    pub fn new() -> Self {
        SVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SVec { entries: vec![(i, Int::ONE)] }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, Int)>>(pairs: I) -> Self {
        let mut map: BTreeMap<usize, Int> = BTreeMap::new();
        for (i, c) in pairs {
            if c.is_zero() {
                continue;
            }
            *map.entry(i).or_default() += c;
        }
        SVec { entries: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn from_dense(v: &[Int]) -> Self {
        SVec { entries: v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect() }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Int> {
        let mut out = vec![Int::ZERO; n];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, (usize, Int)> {
        self.entries.iter()
    }

    pub fn get(&self, i: usize) -> Int {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Int::ZERO,
        }
    }

    pub fn first_index(&self) -> Option<usize> {
        self.entries.first().map(|e| e.0)
    }

    /// `self + c·other`
    pub fn add_scaled(&self, other: &SVec, c: &Int) -> SVec {
        if c.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, &b[j].1 * c));
                j += 1;
            } else {
                let v = &a[i].1 + &(&b[j].1 * c);
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SVec { entries: out }
    }

    pub fn scale(&self, c: &Int) -> SVec {
        if c.is_zero() {
            return SVec::new();
        }
        SVec { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    /// Gcd of the entries (zero for the empty vector).
    pub fn content(&self) -> Int {
        let mut g = Int::ZERO;
        for (_, c) in &self.entries {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn exact_div(&self, d: &Int) -> SVec {
        SVec { entries: self.entries.iter().map(|(i, v)| (*i, v.exact_div(d))).collect() }
    }

    /// Re-index entries through `f`, merging collisions.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> SVec {
        SVec::from_pairs(self.entries.iter().map(|(i, c)| (f(*i), c.clone())))
    }

    /// Reduce each entry modulo `orders[i]` (orders of zero leave the entry alone).
    pub fn reduce_mod(&self, orders: &[Int]) -> SVec {
        SVec {
            entries: self
                .entries
                .iter()
                .filter_map(|(i, c)| {
                    let r = c.modulo(&orders[*i]);
                    (!r.is_zero()).then_some((*i, r))
                })
                .collect(),
        }
    }

    pub fn dot_dense(&self, dense: &[Int]) -> Int {
        let mut acc = Int::ZERO;
        for (i, c) in &self.entries {
            let d = &dense[*i];
            if !d.is_zero() {
                acc += c * d;
            }
        }
        acc
    }
}

/// A finitely presented abelian group `Z^n / ⟨relations⟩` brought to cyclic normal form.
#[derive(Clone, Debug)]
pub struct Reduction {
    /// Orders of the surviving cyclic factors (0 = infinite, never 1).
    pub orders: Vec<Int>,
    /// Image of each original generator in normalized coordinates.
    pub proj: Vec<SVec>,
    /// A representative (over original generators) for each normalized coordinate.
    pub lift: Vec<SVec>,
}

impl Reduction {
    pub fn project(&self, v: &SVec) -> Vec<Int> {
        let mut out = vec![Int::ZERO; self.orders.len()];
        for (i, c) in v.iter() {
            for (k, d) in self.proj[*i].iter() {
                out[*k] += c * d;
            }
        }
        for (k, o) in self.orders.iter().enumerate() {
            out[k] = out[k].modulo(o);
        }
        out
    }
}

fn substitute(v: SVec, expr: &[Option<SVec>]) -> SVec {
    let mut v = v;
    loop {
        let hits: Vec<(usize, Int)> = v.iter().filter(|(i, _)| expr[*i].is_some()).cloned().collect();
        if hits.is_empty() {
            return v;
        }
        for (i, _) in hits {
            let cur = v.get(i);
            if cur.is_zero() {
                continue;
            }
            v = v.add_scaled(&SVec::unit(i), &-&cur).add_scaled(expr[i].as_ref().unwrap(), &cur);
        }
    }
}

/// Normalize the presentation `Z^n / ⟨relations⟩`.
///
/// Generators with a unit coefficient in some relation are eliminated by
/// substitution; the remaining relations are diagonalized densely.
pub fn reduce_presentation(n: usize, relations: &[SVec]) -> Reduction {
    let mut order: Vec<usize> = (0..relations.len()).collect();
    order.sort_by_key(|&i| relations[i].len());
    let mut expr: Vec<Option<SVec>> = vec![None; n];
    let mut elim_order: Vec<usize> = Vec::new();
    let mut pending: Vec<SVec> = order.into_iter().map(|i| relations[i].clone()).collect();
    loop {
        let mut progress = false;
        let mut hard = Vec::new();
        for r in pending {
            let r = substitute(r, &expr);
            if r.is_empty() {
                continue;
            }
            let pivot = r.iter().rev().find(|(_, c)| c.is_unit()).cloned();
            match pivot {
                Some((j, c)) => {
                    // e_j = −c · (r − c·e_j)
                    let rest = r.add_scaled(&SVec::unit(j), &-&c);
                    expr[j] = Some(rest.scale(&-&c));
                    elim_order.push(j);
                    progress = true;
                }
                None => hard.push(r),
            }
        }
        pending = hard;
        if !progress {
            break;
        }
    }
    // fully resolve eliminated generators in terms of survivors
    for &j in elim_order.iter().rev() {
        let e = expr[j].take().unwrap();
        let resolved = substitute(e, &expr);
        expr[j] = Some(resolved);
    }
    let survivors: Vec<usize> = (0..n).filter(|&i| expr[i].is_none()).collect();
    let mut pos = vec![usize::MAX; n];
    for (k, &s) in survivors.iter().enumerate() {
        pos[s] = k;
    }
    let m = survivors.len();
    let pending: Vec<SVec> = pending.into_iter().map(|r| substitute(r, &expr)).filter(|r| !r.is_empty()).collect();
    let mut rel = IntMatrix::zeros(pending.len(), m);
    for (row, r) in pending.iter().enumerate() {
        for (i, c) in r.iter() {
            rel[(row, pos[*i])] = c.clone();
        }
    }
    let s = smith(&rel, Track::V_BOTH);
    let v = s.v.unwrap();
    let v_inv = s.v_inv.unwrap();
    let mut kept: Vec<(usize, Int)> = Vec::new();
    for k in 0..m {
        let d = if k < s.rank { s.diag[k].clone() } else { Int::ZERO };
        if !d.is_one() {
            kept.push((k, d));
        }
    }
    let orders: Vec<Int> = kept.iter().map(|(_, d)| d.clone()).collect();
    let coord_of: Vec<Option<usize>> = {
        let mut c = vec![None; m];
        for (idx, (k, _)) in kept.iter().enumerate() {
            c[*k] = Some(idx);
        }
        c
    };
    let project_survivor_vec = |x: &SVec| -> SVec {
        // x is over survivor positions; returns x·V restricted to kept coordinates
        let mut acc: BTreeMap<usize, Int> = BTreeMap::new();
        for (i, c) in x.iter() {
            for (k, ck) in coord_of.iter().enumerate() {
                if let Some(idx) = ck {
                    let e = &v[(*i, k)];
                    if !e.is_zero() {
                        *acc.entry(*idx).or_default() += c * e;
                    }
                }
            }
        }
        SVec::from_pairs(acc).reduce_mod(&orders)
    };
    let proj: Vec<SVec> = (0..n)
        .map(|i| match &expr[i] {
            None => project_survivor_vec(&SVec::unit(pos[i])),
            Some(e) => project_survivor_vec(&e.map_indices(|g| pos[g])),
        })
        .collect();
    let lift: Vec<SVec> = kept
        .iter()
        .map(|(k, _)| SVec::from_pairs((0..m).map(|j| (survivors[j], v_inv[(*k, j)].clone()))))
        .collect();
    Reduction { orders, proj, lift }
}

/// Basis of the lattice `{x ∈ Z^n : r·x = 0 for every row r}`.
///
/// Rows are first brought to a fraction-free echelon form (which preserves
/// the rational kernel and hence its integer points); the small echelon
/// matrix is then diagonalized to read off a saturated basis.
pub fn integer_kernel(rows: &[SVec], n: usize) -> Vec<Vec<Int>> {
    let mut pivots: BTreeMap<usize, SVec> = BTreeMap::new();
    for r in rows {
        let mut v = r.clone();
        loop {
            let hit = v.iter().map(|(i, _)| *i).find(|i| pivots.contains_key(i));
            let Some(c) = hit else { break };
            let p = &pivots[&c];
            let a = v.get(c);
            let b = p.get(c);
            let g = a.gcd(&b);
            v = v.scale(&b.exact_div(&g)).add_scaled(p, &-(a.exact_div(&g)));
            let ct = v.content();
            if !ct.is_zero() && !ct.is_one() {
                v = v.exact_div(&ct);
            }
        }
        if let Some(lead) = v.first_index() {
            let ct = v.content();
            let v = if ct.is_one() { v } else { v.exact_div(&ct) };
            pivots.insert(lead, v);
        }
    }
    let mut e = IntMatrix::zeros(pivots.len(), n);
    for (row, (_, v)) in pivots.iter().enumerate() {
        for (i, c) in v.iter() {
            e[(row, *i)] = c.clone();
        }
    }
    let s = smith(&e, Track::V);
    let v = s.v.unwrap();
    (s.rank..n).map(|k| v.column(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(pairs: &[(usize, i64)]) -> SVec {
        SVec::from_pairs(pairs.iter().map(|&(i, c)| (i, Int::from(c))))
    }

    #[test]
    fn presentation_with_eliminations() {
        // Z^3 / ⟨e0 − e1, 2e1 + 4e2⟩ ≅ Z/2 ⊕ Z
        let red = reduce_presentation(3, &[sv(&[(0, 1), (1, -1)]), sv(&[(1, 2), (2, 4)])]);
        let mut ords = red.orders.clone();
        ords.sort();
        assert_eq!(ords, vec![Int::ZERO, Int::from(2)]);
        assert_eq!(red.project(&sv(&[(0, 1)])), red.project(&sv(&[(1, 1)])));
        for (k, l) in red.lift.iter().enumerate() {
            let p = red.project(l);
            for (k2, x) in p.iter().enumerate() {
                assert_eq!(*x, if k == k2 { Int::ONE } else { Int::ZERO });
            }
        }
    }

    #[test]
    fn chain_substitution() {
        // e0 = e1, e1 = e2, e2 = e3 → Z
        let rels = [sv(&[(2, 1), (3, -1)]), sv(&[(0, 1), (1, -1)]), sv(&[(1, 1), (2, -1)])];
        let red = reduce_presentation(4, &rels);
        assert_eq!(red.orders, vec![Int::ZERO]);
        let p0 = red.project(&sv(&[(0, 1)]));
        assert_eq!(p0, red.project(&sv(&[(3, 1)])));
        assert!(p0[0].is_unit());
    }

    #[test]
    fn kernel_of_rank_one_row() {
        let k = integer_kernel(&[sv(&[(0, 2), (1, 4)])], 2);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(&v[0] * Int::from(2) + &v[1] * Int::from(4), Int::ZERO);
        assert!(v[0].gcd(&v[1]).is_one());
    }
}
