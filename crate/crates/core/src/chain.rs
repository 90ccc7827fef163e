//! Bounded chain and cochain complexes of finitely generated abelian groups.

use thiserror::Error;

use crate::linalg::{subquotient, AbHom, FgAbGroup, Subquotient};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("differential out of degree {0} has the wrong source or target")]
    ShapeMismatch(usize),
    #[error("d ∘ d is nonzero out of degree {0}")]
    NotSquareZero(usize),
    #[error("map does not commute with the differentials in degree {0}")]
    NotAChainMap(usize),
}

/// `C_0 ← C_1 ← … ← C_top`, homologically graded from zero.
#[derive(Clone, Debug)]
pub struct AbChainComplex {
    groups: Vec<FgAbGroup>,
    /// `diffs[i]` is `d_{i+1} : C_{i+1} → C_i`.
    diffs: Vec<AbHom>,
}

impl AbChainComplex {
    pub fn new(groups: Vec<FgAbGroup>, diffs: Vec<AbHom>) -> Result<Self, ChainError> {
        for (i, d) in diffs.iter().enumerate() {
            if i + 1 >= groups.len() || !d.source().same_presentation(&groups[i + 1]) || !d.target().same_presentation(&groups[i]) {
                return Err(ChainError::ShapeMismatch(i + 1));
            }
        }
        if diffs.len() + 1 != groups.len().max(1) {
            return Err(ChainError::ShapeMismatch(diffs.len()));
        }
        for i in 1..diffs.len() {
            if !diffs[i - 1].compose(&diffs[i]).is_zero() {
                return Err(ChainError::NotSquareZero(i + 1));
            }
        }
        Ok(AbChainComplex { groups, diffs })
    }

    /// `A` in degree `degree`, zero elsewhere.
    pub fn concentrated(a: FgAbGroup, degree: usize) -> Self {
        let mut groups = vec![FgAbGroup::zero(); degree + 1];
        groups[degree] = a;
        let diffs = (0..degree).map(|i| AbHom::zero(&groups[i + 1], &groups[i])).collect();
        AbChainComplex { groups, diffs }
    }

    /// Number of stored degrees.
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn group(&self, n: usize) -> FgAbGroup {
        self.groups.get(n).cloned().unwrap_or_else(FgAbGroup::zero)
    }

    pub fn groups(&self) -> &[FgAbGroup] {
        &self.groups
    }

    /// `d_n : C_n → C_{n-1}`, zero outside the stored range.
    pub fn differential(&self, n: usize) -> AbHom {
        match n.checked_sub(1).and_then(|i| self.diffs.get(i)) {
            Some(d) => d.clone(),
            None => {
                let target = if n == 0 { FgAbGroup::zero() } else { self.group(n - 1) };
                AbHom::zero(&self.group(n), &target)
            }
        }
    }

    pub fn homology_data(&self, n: usize) -> Subquotient {
        let d_out = if n == 0 { AbHom::zero(&self.group(0), &FgAbGroup::zero()) } else { self.differential(n) };
        subquotient(&self.differential(n + 1), &d_out).expect("square-zero complex")
    }

    pub fn homology(&self, n: usize) -> FgAbGroup {
        self.homology_data(n).group
    }

    /// Homology in every stored degree.
    pub fn homology_all(&self) -> Vec<FgAbGroup> {
        (0..self.len()).map(|n| self.homology(n)).collect()
    }

    pub fn is_exact(&self) -> bool {
        self.homology_all().iter().all(FgAbGroup::is_trivial)
    }
}

/// `C^0 → C^1 → … → C^top`.
#[derive(Clone, Debug)]
pub struct AbCochainComplex {
    groups: Vec<FgAbGroup>,
    /// `codiffs[i]` is `δ^i : C^i → C^{i+1}`.
    codiffs: Vec<AbHom>,
}

impl AbCochainComplex {
    pub fn new(groups: Vec<FgAbGroup>, codiffs: Vec<AbHom>) -> Result<Self, ChainError> {
        if codiffs.len() + 1 != groups.len().max(1) {
            return Err(ChainError::ShapeMismatch(codiffs.len()));
        }
        for (i, d) in codiffs.iter().enumerate() {
            if !d.source().same_presentation(&groups[i]) || !d.target().same_presentation(&groups[i + 1]) {
                return Err(ChainError::ShapeMismatch(i));
            }
        }
        for i in 1..codiffs.len() {
            if !codiffs[i].compose(&codiffs[i - 1]).is_zero() {
                return Err(ChainError::NotSquareZero(i - 1));
            }
        }
        Ok(AbCochainComplex { groups, codiffs })
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn group(&self, n: usize) -> FgAbGroup {
        self.groups.get(n).cloned().unwrap_or_else(FgAbGroup::zero)
    }

    /// `δ^n : C^n → C^{n+1}`, zero outside the stored range.
    pub fn codifferential(&self, n: usize) -> AbHom {
        self.codiffs.get(n).cloned().unwrap_or_else(|| AbHom::zero(&self.group(n), &self.group(n + 1)))
    }

    pub fn cohomology(&self, n: usize) -> FgAbGroup {
        let d_in = if n == 0 { AbHom::zero(&FgAbGroup::zero(), &self.group(0)) } else { self.codifferential(n - 1) };
        subquotient(&d_in, &self.codifferential(n)).expect("square-zero complex").group
    }

    pub fn cohomology_all(&self) -> Vec<FgAbGroup> {
        (0..self.len()).map(|n| self.cohomology(n)).collect()
    }
}

/// A degreewise map `C → D`; `components[n] : C_n → D_n`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub components: Vec<AbHom>,
}

impl ChainMap {
    pub fn identity(c: &AbChainComplex) -> Self {
        ChainMap { components: c.groups.iter().map(AbHom::identity).collect() }
    }

    pub fn component(&self, n: usize, c: &AbChainComplex, d: &AbChainComplex) -> AbHom {
        self.components.get(n).cloned().unwrap_or_else(|| AbHom::zero(&c.group(n), &d.group(n)))
    }

    pub fn check(&self, c: &AbChainComplex, d: &AbChainComplex) -> Result<(), ChainError> {
        let top = c.len().max(d.len()).max(self.components.len());
        for n in 0..top {
            let f = self.component(n, c, d);
            if !f.source().same_presentation(&c.group(n)) || !f.target().same_presentation(&d.group(n)) {
                return Err(ChainError::NotAChainMap(n));
            }
        }
        for n in 1..top {
            let lhs = d.differential(n).compose(&self.component(n, c, d));
            let rhs = self.component(n - 1, c, d).compose(&c.differential(n));
            if !lhs.sub(&rhs).is_zero() {
                return Err(ChainError::NotAChainMap(n));
            }
        }
        Ok(())
    }

    /// The map induced on `H_n`.
    pub fn on_homology(&self, n: usize, c: &AbChainComplex, d: &AbChainComplex) -> AbHom {
        let (hc, hd) = (c.homology_data(n), d.homology_data(n));
        let f = self.component(n, c, d);
        let columns: Vec<Vec<crate::linalg::Int>> = (0..hc.group.ngens())
            .map(|i| {
                let z = hc.representative(&hc.group.basis_element(i));
                hd.class_of(&f.apply(&z)).expect("chain maps send cycles to cycles")
            })
            .collect();
        AbHom::new(hc.group.clone(), hd.group.clone(), crate::linalg::IntMatrix::from_columns(&columns, hd.group.ngens())).expect("induced map")
    }
}

/// Cone of `f : C → D`: `Cone_n = C_{n-1} ⊕ D_n`, `d(x, y) = (−dx, f(x) + dy)`.
pub fn mapping_cone(f: &ChainMap, c: &AbChainComplex, d: &AbChainComplex) -> Result<AbChainComplex, ChainError> {
    f.check(c, d)?;
    let top = c.len().max(d.len()).max(f.components.len()) + 1;
    let cone_part = |n: usize| -> Vec<FgAbGroup> { vec![if n == 0 { FgAbGroup::zero() } else { c.group(n - 1) }, d.group(n)] };
    let groups: Vec<FgAbGroup> = (0..top).map(|n| FgAbGroup::direct_sum(&cone_part(n).iter().collect::<Vec<_>>())).collect();
    let diffs = (1..top)
        .map(|n| {
            let (src, tgt) = (cone_part(n), cone_part(n - 1));
            let dc = if n == 1 { AbHom::zero(&src[0], &tgt[0]) } else { c.differential(n - 1).neg() };
            let fx = f.component(n - 1, c, d);
            let dd = d.differential(n);
            AbHom::from_blocks(&src, &tgt, &[vec![Some(dc), None], vec![Some(fx), Some(dd)]])
        })
        .collect();
    AbChainComplex::new(groups, diffs)
}

/// `f` is a quasi-isomorphism iff its cone is exact.
pub fn is_quasi_iso(f: &ChainMap, c: &AbChainComplex, d: &AbChainComplex) -> Result<bool, ChainError> {
    Ok(mapping_cone(f, c, d)?.is_exact())
}
