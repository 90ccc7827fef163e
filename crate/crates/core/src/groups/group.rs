use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use super::GroupError;

/// Finite group given by its multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    n: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Validate a multiplication table (`table[a][b] = a·b`).
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(GroupError::InvalidTable("table is not n×n with entries below n".into()));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let mul = |a: usize, b: usize| flat[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or_else(|| GroupError::InvalidTable("no identity element".into()))?;
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                .ok_or_else(|| GroupError::InvalidTable(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(GroupError::InvalidTable(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        let mut g = FiniteGroup { name: name.into(), n, table: flat, identity, inverse, generators: Vec::new() };
        g.generators = g.greedy_generators();
        Ok(g)
    }

    fn trusted(name: String, n: usize, table: Vec<usize>) -> Self {
        let identity = (0..n).find(|&e| (0..n).all(|a| table[e * n + a] == a)).unwrap();
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n).find(|&b| table[a * n + b] == identity).unwrap();
        }
        let mut g = FiniteGroup { name, n, table, identity, inverse, generators: Vec::new() };
        g.generators = g.greedy_generators();
        g
    }

    /// Cyclic group `Z/n`; element `k` is `g^k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::trusted(format!("Z{n}"), n, table)
    }

    /// Direct product; element `(a, b)` has index `a·|H| + b`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (m, k) = (g.n, h.n);
        let n = m * k;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let (a1, b1) = (x / k, x % k);
                let (a2, b2) = (y / k, y % k);
                table[x * n + y] = g.mul(a1, a2) * k + h.mul(b1, b2);
            }
        }
        Self::trusted(format!("{}x{}", g.name, h.name), n, table)
    }

    /// Group generated by permutations of `{0..d}`; elements are numbered in
    /// breadth-first order from the identity, multiplying generators on the right.
    /// The product `a·b` means "apply `b` first, then `a`".
    pub fn from_permutations(name: impl Into<String>, gens: &[Vec<usize>]) -> Result<Self, GroupError> {
        let d = gens.first().map_or(0, |p| p.len());
        for p in gens {
            let set: BTreeSet<usize> = p.iter().copied().collect();
            if p.len() != d || set.len() != d || p.iter().any(|&x| x >= d) {
                return Err(GroupError::InvalidTable("generator is not a permutation of a common degree".into()));
            }
        }
        let id: Vec<usize> = (0..d).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in gens {
                let prod: Vec<usize> = (0..d).map(|x| elems[i][s[x]]).collect();
                if !index.contains_key(&prod) {
                    index.insert(prod.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(prod);
                }
                if elems.len() > 5040 {
                    return Err(GroupError::GroupTooLarge(elems.len()));
                }
            }
        }
        let n = elems.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let prod: Vec<usize> = (0..d).map(|x| elems[a][elems[b][x]]).collect();
                table[a * n + b] = index[&prod];
            }
        }
        Ok(Self::trusted(name.into(), n, table))
    }

    pub fn symmetric3() -> Self {
        Self::from_permutations("S3", &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap()
    }

    pub fn dihedral(order: usize) -> Self {
        let k = order / 2;
        let rot: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
        let refl: Vec<usize> = (0..k).map(|i| (k - i) % k).collect();
        Self::from_permutations(format!("D{order}"), &[rot, refl]).unwrap()
    }

    /// `Z<n>`, `Z<a>xZ<b>` (any number of factors), `S3`, `D<2k>`, `e`.
    pub fn by_name(name: &str) -> Option<Self> {
        let name = name.trim();
        if name == "S3" {
            return Some(Self::symmetric3());
        }
        if name == "e" || name == "1" {
            return Some(Self::cyclic(1));
        }
        if let Some(rest) = name.strip_prefix('D') {
            let k: usize = rest.parse().ok()?;
            if k >= 4 && k % 2 == 0 {
                return Some(Self::dihedral(k));
            }
            return None;
        }
        let mut factors = Vec::new();
        for part in name.split(['x', '×']) {
            let k: usize = part.trim().strip_prefix('Z')?.parse().ok()?;
            if k == 0 {
                return None;
            }
            factors.push(Self::cyclic(k));
        }
        let mut g = factors.first()?.clone();
        for f in &factors[1..] {
            g = Self::product(&g, f);
        }
        g.name = name.to_string();
        Some(g)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// `a·b·a⁻¹`
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// An element generating the whole group, if the group is cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        (0..self.n).find(|&a| self.element_order(a) == self.n)
    }

    /// Sorted closure of a set of elements under multiplication.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[self.identity] = true;
        let mut out = vec![self.identity];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for a in 0..self.n {
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.generated(&gens);
            }
        }
        gens
    }

    /// A generating set chosen greedily in index order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| (0..self.n).map(|b| self.mul(a, b)).collect()).collect()
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.n)
    }
}
