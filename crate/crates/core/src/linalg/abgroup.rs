use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use super::int::Int;
use super::matrix::IntMatrix;
use super::smith::{smith, Smith, Track};
use super::sparse::{integer_kernel, reduce_presentation, Reduction, SVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix does not carry source relations into target relations (source generator {0})")]
    NotWellDefined(usize),
    #[error("composite d_out ∘ d_in is nonzero")]
    CompositionNonzero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Invariants {
    torsion: Vec<Int>,
    free_rank: usize,
}

/// Finitely generated abelian group in cyclic form `⊕ Z/oᵢ` (order 0 meaning `Z`).
///
/// Generators of order one are never stored. Equality is isomorphism.
#[derive(Clone)]
pub struct FgAbGroup {
    orders: Vec<Int>,
    invariants: OnceLock<Invariants>,
}

impl FgAbGroup {
    /// Cyclic decomposition with the given orders; orders of one are dropped.
    pub fn from_orders<I: IntoIterator<Item = Int>>(orders: I) -> Self {
        let orders = orders.into_iter().map(|o| o.abs()).filter(|o| !o.is_one()).collect();
        FgAbGroup { orders, invariants: OnceLock::new() }
    }

    pub fn zero() -> Self {
        Self::from_orders([])
    }

    pub fn free(n: usize) -> Self {
        Self::from_orders(vec![Int::ZERO; n])
    }

    pub fn cyclic(n: i64) -> Self {
        Self::from_orders([Int::from(n)])
    }

    /// `Z^n / ⟨columns of relations⟩`, returned together with the reduction data.
    pub fn from_presentation(generators: usize, relations: &IntMatrix) -> (Self, Reduction) {
        assert_eq!(relations.rows(), generators, "relation columns must have one entry per generator");
        let rels: Vec<SVec> = (0..relations.cols()).map(|j| SVec::from_dense(&relations.column(j))).collect();
        let red = reduce_presentation(generators, &rels);
        (Self::from_orders(red.orders.clone()), red)
    }

    pub fn direct_sum(parts: &[&FgAbGroup]) -> Self {
        Self::from_orders(parts.iter().flat_map(|g| g.orders.iter().cloned()))
    }

    /// Number of cyclic generators.
    pub fn ngens(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[Int] {
        &self.orders
    }

    pub fn order(&self, i: usize) -> &Int {
        &self.orders[i]
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.orders.iter().all(Int::is_zero)
    }

    fn invariants(&self) -> &Invariants {
        self.invariants.get_or_init(|| {
            let free_rank = self.orders.iter().filter(|o| o.is_zero()).count();
            let tors: Vec<Int> = self.orders.iter().filter(|o| !o.is_zero()).cloned().collect();
            let s = smith(&IntMatrix::diagonal(&tors), Track::default());
            let torsion = s.diag.into_iter().filter(|d| !d.is_one()).collect();
            Invariants { torsion, free_rank }
        })
    }

    /// Torsion invariant factors `d₁ | d₂ | ...`, all at least two.
    pub fn torsion_invariants(&self) -> Vec<Int> {
        self.invariants().torsion.clone()
    }

    pub fn free_rank(&self) -> usize {
        self.invariants().free_rank
    }

    /// Cardinality, or `None` if infinite.
    pub fn cardinality(&self) -> Option<Int> {
        if self.free_rank() > 0 {
            return None;
        }
        Some(self.orders.iter().fold(Int::ONE, |a, o| a * o))
    }

    pub fn reduce(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.ngens(), "element has wrong length");
        v.iter().zip(&self.orders).map(|(x, o)| x.modulo(o)).collect()
    }

    pub fn is_zero_element(&self, v: &[Int]) -> bool {
        v.iter().zip(&self.orders).all(|(x, o)| x.modulo(o).is_zero())
    }

    pub fn zero_element(&self) -> Vec<Int> {
        vec![Int::ZERO; self.ngens()]
    }

    pub fn basis_element(&self, i: usize) -> Vec<Int> {
        let mut v = self.zero_element();
        v[i] = Int::ONE;
        v
    }

    /// All elements of a finite group in reduced coordinates.
    pub fn elements(&self) -> Option<Vec<Vec<Int>>> {
        let card = self.cardinality()?.to_i64()?;
        let mut out = Vec::with_capacity(card as usize);
        let mut cur = self.zero_element();
        loop {
            out.push(cur.clone());
            let mut k = 0;
            loop {
                if k == cur.len() {
                    return Some(out);
                }
                cur[k] += Int::ONE;
                if cur[k] == self.orders[k] {
                    cur[k] = Int::ZERO;
                    k += 1;
                } else {
                    break;
                }
            }
        }
    }

    /// Structural equality of the chosen cyclic decomposition (not just isomorphism).
    pub fn same_presentation(&self, other: &FgAbGroup) -> bool {
        self.orders == other.orders
    }
}

impl PartialEq for FgAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.invariants() == other.invariants()
    }
}

impl Eq for FgAbGroup {}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inv = self.invariants();
        let mut parts: Vec<String> = inv.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match inv.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup({self}; orders {:?})", self.orders)
    }
}

/// Homomorphism between cyclic-form groups; matrix is target × source, entries reduced.
#[derive(Clone)]
pub struct AbHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

fn reduce_matrix(target: &FgAbGroup, m: &mut IntMatrix) {
    for i in 0..m.rows() {
        let o = target.order(i);
        if o.is_zero() {
            continue;
        }
        for j in 0..m.cols() {
            let r = m[(i, j)].modulo(o);
            m[(i, j)] = r;
        }
    }
}

impl AbHom {
    /// Checked constructor: each source relation must map to a target relation.
    pub fn new(source: FgAbGroup, target: FgAbGroup, mut matrix: IntMatrix) -> Result<Self, LinalgError> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(LinalgError::DimensionMismatch(format!(
                "matrix {}x{} for map from {} to {} generators",
                matrix.rows(),
                matrix.cols(),
                source.ngens(),
                target.ngens()
            )));
        }
        for j in 0..source.ngens() {
            let o = source.order(j);
            if o.is_zero() {
                continue;
            }
            for i in 0..target.ngens() {
                if !target.order(i).divides(&(&matrix[(i, j)] * o)) {
                    return Err(LinalgError::NotWellDefined(j));
                }
            }
        }
        reduce_matrix(&target, &mut matrix);
        Ok(AbHom { source, target, matrix })
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        AbHom { source: source.clone(), target: target.clone(), matrix: IntMatrix::zeros(target.ngens(), source.ngens()) }
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        let mut m = IntMatrix::identity(g.ngens());
        reduce_matrix(g, &mut m);
        AbHom { source: g.clone(), target: g.clone(), matrix: m }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        self.target.reduce(&self.matrix.mul_vec(v))
    }

    /// Image of the `j`-th source generator.
    pub fn column(&self, j: usize) -> Vec<Int> {
        self.matrix.column(j)
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &AbHom) -> AbHom {
        assert_eq!(inner.target.ngens(), self.source.ngens(), "composition of incompatible maps");
        let mut m = self.matrix.mul(&inner.matrix);
        reduce_matrix(&self.target, &mut m);
        AbHom { source: inner.source.clone(), target: self.target.clone(), matrix: m }
    }

    pub fn add(&self, other: &AbHom) -> AbHom {
        let mut m = self.matrix.add(&other.matrix);
        reduce_matrix(&self.target, &mut m);
        AbHom { source: self.source.clone(), target: self.target.clone(), matrix: m }
    }

    pub fn sub(&self, other: &AbHom) -> AbHom {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AbHom {
        self.scale(&Int::from(-1))
    }

    pub fn scale(&self, c: &Int) -> AbHom {
        let mut m = self.matrix.scale(c);
        reduce_matrix(&self.target, &mut m);
        AbHom { source: self.source.clone(), target: self.target.clone(), matrix: m }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Block matrix map `⊕ sources → ⊕ targets`; `blocks[t][s]` maps source `s` to target `t`.
    pub fn from_blocks(sources: &[FgAbGroup], targets: &[FgAbGroup], blocks: &[Vec<Option<AbHom>>]) -> AbHom {
        let src = FgAbGroup::direct_sum(&sources.iter().collect::<Vec<_>>());
        let tgt = FgAbGroup::direct_sum(&targets.iter().collect::<Vec<_>>());
        let mut m = IntMatrix::zeros(tgt.ngens(), src.ngens());
        let mut r0 = 0;
        for (t, tg) in targets.iter().enumerate() {
            let mut c0 = 0;
            for (s, sg) in sources.iter().enumerate() {
                if let Some(b) = &blocks[t][s] {
                    m.set_block(r0, c0, &b.matrix);
                }
                c0 += sg.ngens();
            }
            r0 += tg.ngens();
        }
        AbHom { source: src, target: tgt, matrix: m }
    }

    pub fn direct_sum(maps: &[&AbHom]) -> AbHom {
        let sources: Vec<FgAbGroup> = maps.iter().map(|f| f.source.clone()).collect();
        let targets: Vec<FgAbGroup> = maps.iter().map(|f| f.target.clone()).collect();
        let blocks: Vec<Vec<Option<AbHom>>> = (0..maps.len())
            .map(|t| (0..maps.len()).map(|s| (s == t).then(|| maps[t].clone())).collect())
            .collect();
        Self::from_blocks(&sources, &targets, &blocks)
    }

    /// Kernel with its inclusion into the source.
    pub fn kernel(&self) -> Kernel {
        let a = self.source.ngens();
        let b = self.target.ngens();
        // rows: target coordinates; columns: source generators, then a slack per torsion target generator
        let mut slack = 0;
        let mut rows = Vec::with_capacity(b);
        for i in 0..b {
            let mut pairs: Vec<(usize, Int)> = (0..a).map(|j| (j, self.matrix[(i, j)].clone())).collect();
            let o = self.target.order(i);
            if !o.is_zero() {
                pairs.push((a + slack, -o));
                slack += 1;
            }
            rows.push(SVec::from_pairs(pairs));
        }
        let basis = integer_kernel(&rows, a + slack);
        let lattice: Vec<Vec<Int>> = basis.into_iter().map(|v| v[..a].to_vec()).collect();
        lattice_quotient(&self.source, lattice)
    }

    /// Cokernel with its projection from the target.
    pub fn cokernel(&self) -> Cokernel {
        let b = self.target.ngens();
        let mut rels: Vec<SVec> = Vec::new();
        for (i, o) in self.target.orders().iter().enumerate() {
            if !o.is_zero() {
                rels.push(SVec::from_pairs([(i, o.clone())]));
            }
        }
        for j in 0..self.source.ngens() {
            rels.push(SVec::from_dense(&self.matrix.column(j)));
        }
        let red = reduce_presentation(b, &rels);
        let group = FgAbGroup::from_orders(red.orders.clone());
        let mut pm = IntMatrix::zeros(group.ngens(), b);
        for (i, p) in red.proj.iter().enumerate() {
            for (k, c) in p.iter() {
                pm[(*k, i)] = c.clone();
            }
        }
        let projection = AbHom { source: self.target.clone(), target: group.clone(), matrix: pm };
        let lift = red.lift.iter().map(|l| self.target.reduce(&l.to_dense(b))).collect();
        Cokernel { group, projection, lift }
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().group.is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        if self.source.is_free() && self.target.is_free() {
            return self.source.ngens() == self.target.ngens() && self.matrix.determinant().is_unit();
        }
        self.is_injective() && self.is_surjective()
    }

    pub fn solver(&self) -> Solver {
        Solver::new(self)
    }

    /// Some `x` with `self(x) = y`, if one exists.
    pub fn preimage(&self, y: &[Int]) -> Option<Vec<Int>> {
        self.solver().solve(y)
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<AbHom> {
        if !self.is_isomorphism() {
            return None;
        }
        let s = self.solver();
        let cols: Option<Vec<Vec<Int>>> = (0..self.target.ngens()).map(|k| s.solve(&self.target.basis_element(k))).collect();
        let m = IntMatrix::from_columns(&cols?, self.source.ngens());
        AbHom::new(self.target.clone(), self.source.clone(), m).ok()
    }

    /// Factor `self: A → B` through an injection `incl: K → B`.
    pub fn factor_through(&self, incl: &Solver) -> Option<AbHom> {
        let cols: Option<Vec<Vec<Int>>> = (0..self.source.ngens()).map(|j| incl.solve(&self.matrix.column(j))).collect();
        let m = IntMatrix::from_columns(&cols?, incl.source.ngens());
        AbHom::new(self.source.clone(), incl.source.clone(), m).ok()
    }
}

impl PartialEq for AbHom {
    fn eq(&self, other: &Self) -> bool {
        self.source.same_presentation(&other.source)
            && self.target.same_presentation(&other.target)
            && self.matrix == other.matrix
    }
}

impl Eq for AbHom {}

impl fmt::Debug for AbHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbHom({:?} -> {:?}: {:?})", self.source.orders, self.target.orders, self.matrix)
    }
}

/// `L / ⟨source relations⟩` where `L` is a sublattice (given by a basis) containing those relations.
fn lattice_quotient(source: &FgAbGroup, lattice: Vec<Vec<Int>>) -> Kernel {
    let a = source.ngens();
    let k = lattice.len();
    let lb = IntMatrix::from_columns(&lattice, a);
    let basis_solver = LatticeSolver::new(&lb);
    let mut rels = Vec::new();
    for (j, o) in source.orders().iter().enumerate() {
        if o.is_zero() {
            continue;
        }
        let mut r = vec![Int::ZERO; a];
        r[j] = o.clone();
        let c = basis_solver.solve(&r).expect("source relation lies in the kernel lattice");
        rels.push(SVec::from_dense(&c));
    }
    let red = reduce_presentation(k, &rels);
    let group = FgAbGroup::from_orders(red.orders.clone());
    let cols: Vec<Vec<Int>> = red.lift.iter().map(|l| source.reduce(&lb.mul_vec(&l.to_dense(k)))).collect();
    let m = IntMatrix::from_columns(&cols, a);
    let inclusion = AbHom { source: group.clone(), target: source.clone(), matrix: m };
    Kernel { group, inclusion }
}

/// Exact solver for `B·c = r` where `B` has independent columns.
struct LatticeSolver {
    s: Smith,
    cols: usize,
}

impl LatticeSolver {
    fn new(b: &IntMatrix) -> Self {
        LatticeSolver { s: smith(b, Track::UV), cols: b.cols() }
    }

    fn solve(&self, r: &[Int]) -> Option<Vec<Int>> {
        let ur = self.s.u.as_ref().unwrap().mul_vec(r);
        let mut z = vec![Int::ZERO; self.cols];
        for (i, x) in ur.iter().enumerate() {
            if i < self.s.rank {
                let d = &self.s.diag[i];
                if !d.divides(x) {
                    return None;
                }
                z[i] = x.exact_div(d);
            } else if !x.is_zero() {
                return None;
            }
        }
        Some(self.s.v.as_ref().unwrap().mul_vec(&z))
    }
}

/// Reusable solver for `f(x) = y` modulo the target relations.
pub struct Solver {
    source: FgAbGroup,
    target: FgAbGroup,
    s: Smith,
    width: usize,
}

impl Solver {
    pub fn new(f: &AbHom) -> Self {
        let a = f.source.ngens();
        let b = f.target.ngens();
        let tors: Vec<usize> = (0..b).filter(|&i| !f.target.order(i).is_zero()).collect();
        let mut m = IntMatrix::zeros(b, a + tors.len());
        m.set_block(0, 0, &f.matrix);
        for (k, &i) in tors.iter().enumerate() {
            m[(i, a + k)] = f.target.order(i).clone();
        }
        Solver { source: f.source.clone(), target: f.target.clone(), s: smith(&m, Track::UV), width: a + tors.len() }
    }

    pub fn solve(&self, y: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(y.len(), self.target.ngens());
        let uy = self.s.u.as_ref().unwrap().mul_vec(y);
        let mut z = vec![Int::ZERO; self.width];
        for (i, x) in uy.iter().enumerate() {
            if i < self.s.rank {
                let d = &self.s.diag[i];
                if !d.divides(x) {
                    return None;
                }
                z[i] = x.exact_div(d);
            } else if !x.is_zero() {
                return None;
            }
        }
        let w = self.s.v.as_ref().unwrap().mul_vec(&z);
        Some(self.source.reduce(&w[..self.source.ngens()]))
    }
}

#[derive(Clone, Debug)]
pub struct Kernel {
    pub group: FgAbGroup,
    pub inclusion: AbHom,
}

#[derive(Clone, Debug)]
pub struct Cokernel {
    pub group: FgAbGroup,
    pub projection: AbHom,
    /// Target-element representative of each cokernel generator.
    pub lift: Vec<Vec<Int>>,
}

/// `ker(d_out) / im(d_in)` with the maps needed to move between representatives and classes.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub group: FgAbGroup,
    pub cycles: Kernel,
    /// Cycles → homology.
    pub projection: AbHom,
    /// Cycle-coordinate representative of each homology generator.
    pub lift: Vec<Vec<Int>>,
    cycle_solver: std::sync::Arc<Solver>,
}

impl Subquotient {
    /// Class of a middle element, or `None` if it is not a cycle.
    pub fn class_of(&self, b: &[Int]) -> Option<Vec<Int>> {
        let z = self.cycle_solver.solve(b)?;
        Some(self.projection.apply(&z))
    }

    /// Middle-group representative of a homology element.
    pub fn representative(&self, h: &[Int]) -> Vec<Int> {
        let mut z = vec![Int::ZERO; self.cycles.group.ngens()];
        for (k, c) in h.iter().enumerate() {
            for (zi, l) in z.iter_mut().zip(&self.lift[k]) {
                *zi += c * l;
            }
        }
        self.cycles.inclusion.apply(&z)
    }
}

impl fmt::Debug for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Solver({:?} -> {:?})", self.source, self.target)
    }
}

/// Homology `ker(d_out)/im(d_in)` at the middle of `A --d_in--> B --d_out--> C`.
pub fn subquotient(d_in: &AbHom, d_out: &AbHom) -> Result<Subquotient, LinalgError> {
    if d_in.target.ngens() != d_out.source.ngens() {
        return Err(LinalgError::DimensionMismatch("d_in target differs from d_out source".into()));
    }
    if !d_out.compose(d_in).is_zero() {
        return Err(LinalgError::CompositionNonzero);
    }
    let cycles = d_out.kernel();
    let solver = cycles.inclusion.solver();
    let into_cycles = d_in.factor_through(&solver).expect("image lies in the kernel");
    let coker = into_cycles.cokernel();
    Ok(Subquotient {
        group: coker.group,
        cycles,
        projection: coker.projection,
        lift: coker.lift,
        cycle_solver: std::sync::Arc::new(solver),
    })
}

/// `A ⊗ B` in cyclic form with generator pairs `(i, j)` of order `gcd(oᵢ, o'ⱼ)`.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub group: FgAbGroup,
    left: FgAbGroup,
    right: FgAbGroup,
    index: Vec<Option<usize>>,
}

impl Tensor {
    pub fn new(a: &FgAbGroup, b: &FgAbGroup) -> Self {
        let mut index = Vec::with_capacity(a.ngens() * b.ngens());
        let mut orders = Vec::new();
        for i in 0..a.ngens() {
            for j in 0..b.ngens() {
                let g = a.order(i).gcd(b.order(j));
                if g.is_one() {
                    index.push(None);
                } else {
                    index.push(Some(orders.len()));
                    orders.push(g);
                }
            }
        }
        Tensor { group: FgAbGroup { orders, invariants: OnceLock::new() }, left: a.clone(), right: b.clone(), index }
    }

    /// Coordinate of `eᵢ ⊗ fⱼ`, or `None` if that generator vanishes.
    pub fn coordinate(&self, i: usize, j: usize) -> Option<usize> {
        self.index[i * self.right.ngens() + j]
    }

    /// The pair `(i, j)` behind coordinate `k`.
    pub fn generator(&self, k: usize) -> (usize, usize) {
        let n = self.index.iter().position(|&c| c == Some(k)).expect("coordinate in range");
        (n / self.right.ngens(), n % self.right.ngens())
    }

    /// The bilinear pairing `x ⊗ y`.
    pub fn pair(&self, x: &[Int], y: &[Int]) -> Vec<Int> {
        let mut out = self.group.zero_element();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if let Some(k) = self.coordinate(i, j) {
                    out[k] += xi * yj;
                }
            }
        }
        self.group.reduce(&out)
    }

    /// `f ⊗ g` between two tensor products.
    pub fn map(&self, target: &Tensor, f: &AbHom, g: &AbHom) -> AbHom {
        let mut m = IntMatrix::zeros(target.group.ngens(), self.group.ngens());
        for i in 0..self.left.ngens() {
            for j in 0..self.right.ngens() {
                let Some(src) = self.coordinate(i, j) else { continue };
                for (i2, a) in f.column(i).iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j2, b) in g.column(j).iter().enumerate() {
                        if let Some(t) = target.coordinate(i2, j2) {
                            m[(t, src)] += a * b;
                        }
                    }
                }
            }
        }
        AbHom::new(self.group.clone(), target.group.clone(), m).expect("tensor of homomorphisms is well defined")
    }
}

pub fn tensor(a: &FgAbGroup, b: &FgAbGroup) -> FgAbGroup {
    Tensor::new(a, b).group
}

/// `Hom(A, B)` in cyclic form; coordinate `(i, j)` is the map `eⱼ ↦ s·fᵢ`
/// with the minimal well-defined scale `s`.
#[derive(Clone, Debug)]
pub struct HomGroup {
    pub group: FgAbGroup,
    source: FgAbGroup,
    target: FgAbGroup,
    /// Per (target i, source j): (scale, coordinate).
    cells: Vec<(Int, Option<usize>)>,
}

impl HomGroup {
    pub fn new(a: &FgAbGroup, b: &FgAbGroup) -> Self {
        let mut cells = Vec::new();
        let mut orders = Vec::new();
        for i in 0..b.ngens() {
            for j in 0..a.ngens() {
                let (oa, ob) = (a.order(j), b.order(i));
                let (scale, order) = match (oa.is_zero(), ob.is_zero()) {
                    (true, _) => (Int::ONE, ob.clone()),
                    (false, true) => (Int::ZERO, Int::ONE),
                    (false, false) => {
                        let g = oa.gcd(ob);
                        (ob.exact_div(&g), g)
                    }
                };
                if order.is_one() {
                    cells.push((scale, None));
                } else {
                    cells.push((scale, Some(orders.len())));
                    orders.push(order);
                }
            }
        }
        HomGroup { group: FgAbGroup { orders, invariants: OnceLock::new() }, source: a.clone(), target: b.clone(), cells }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    /// Scale and coordinate of the `(target i, source j)` matrix entry.
    pub fn cell(&self, i: usize, j: usize) -> (&Int, Option<usize>) {
        let (s, c) = &self.cells[i * self.source.ngens() + j];
        (s, *c)
    }

    pub fn to_hom(&self, x: &[Int]) -> AbHom {
        let mut m = IntMatrix::zeros(self.target.ngens(), self.source.ngens());
        for i in 0..self.target.ngens() {
            for j in 0..self.source.ngens() {
                let (s, c) = self.cell(i, j);
                if let Some(c) = c {
                    m[(i, j)] = s * &x[c];
                }
            }
        }
        AbHom::new(self.source.clone(), self.target.clone(), m).expect("hom-group element is well defined")
    }

    pub fn from_hom(&self, f: &AbHom) -> Vec<Int> {
        let mut out = self.group.zero_element();
        for i in 0..self.target.ngens() {
            for j in 0..self.source.ngens() {
                let (s, c) = self.cell(i, j);
                if let Some(c) = c {
                    out[c] = f.matrix()[(i, j)].exact_div(s);
                }
            }
        }
        self.group.reduce(&out)
    }
}

pub fn hom_group(a: &FgAbGroup, b: &FgAbGroup) -> FgAbGroup {
    HomGroup::new(a, b).group
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(orders: &[i64]) -> FgAbGroup {
        FgAbGroup::from_orders(orders.iter().map(|&o| Int::from(o)))
    }

    fn hom(src: &FgAbGroup, tgt: &FgAbGroup, rows: &[&[i64]]) -> AbHom {
        let m = if rows.is_empty() { IntMatrix::zeros(tgt.ngens(), src.ngens()) } else { IntMatrix::from_i64(rows) };
        AbHom::new(src.clone(), tgt.clone(), m).unwrap()
    }

    #[test]
    fn subquotient_examples() {
        let z2 = g(&[0, 0]);
        let h = subquotient(&AbHom::zero(&z2, &z2), &AbHom::zero(&z2, &z2)).unwrap();
        assert_eq!(h.group, g(&[0, 0]));

        let z = g(&[0]);
        let h = subquotient(&hom(&z, &z, &[&[2]]), &AbHom::zero(&z, &FgAbGroup::zero())).unwrap();
        assert_eq!(h.group, g(&[2]));

        let h = subquotient(&AbHom::identity(&z), &AbHom::zero(&z, &FgAbGroup::zero())).unwrap();
        assert!(h.group.is_trivial());

        let err = subquotient(&AbHom::identity(&z), &AbHom::identity(&z)).unwrap_err();
        assert_eq!(err, LinalgError::CompositionNonzero);
    }

    #[test]
    fn tensor_and_hom_examples() {
        assert!(tensor(&g(&[2]), &g(&[3])).is_trivial());
        let a = g(&[4, 0, 6]);
        assert_eq!(tensor(&g(&[0]), &a), a);
        assert!(hom_group(&g(&[2]), &g(&[0])).is_trivial());
        assert_eq!(hom_group(&g(&[4]), &g(&[6])), g(&[2]));
        assert_eq!(hom_group(&g(&[0]), &g(&[6])), g(&[6]));
    }

    #[test]
    fn ill_defined_map_rejected() {
        let z2 = g(&[2]);
        let z = g(&[0]);
        assert!(AbHom::new(z2.clone(), z.clone(), IntMatrix::from_i64(&[&[1]])).is_err());
        assert!(AbHom::new(z, z2, IntMatrix::from_i64(&[&[1]])).is_ok());
    }

    #[test]
    fn presentation_equality_is_isomorphism() {
        let (a, _) = FgAbGroup::from_presentation(2, &IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(a, g(&[6]));
        assert_eq!(g(&[2, 3]), g(&[6]));
        assert_ne!(g(&[2, 2]), g(&[4]));
        assert_eq!(g(&[2, 0]).to_string(), "Z/2 ⊕ Z");
    }

    #[test]
    fn hom_group_roundtrip() {
        let a = g(&[4, 0]);
        let b = g(&[6, 0]);
        let h = HomGroup::new(&a, &b);
        for x in [vec![1, 2, 0, 5], vec![0, 1, 1, -3]] {
            let x: Vec<Int> = x.into_iter().map(Int::from).collect();
            let x = h.group.reduce(&x[..h.group.ngens()]);
            let f = h.to_hom(&x);
            assert_eq!(h.from_hom(&f), x);
        }
    }

    /// Brute force: elements of ker(d_out) modulo im(d_in), for finite middle groups.
    fn brute_homology_order(d_in: &AbHom, d_out: &AbHom) -> usize {
        let b = d_in.target();
        let elems = b.elements().unwrap();
        let cycles: Vec<Vec<Int>> = elems.iter().filter(|x| d_out.target().is_zero_element(&d_out.apply(x))).cloned().collect();
        let image: std::collections::HashSet<Vec<Int>> =
            d_in.source().elements().unwrap().iter().map(|x| d_in.apply(x)).collect();
        cycles.len() / image.len()
    }

    proptest! {
        #[test]
        fn subquotient_matches_enumeration(
            a_ord in proptest::collection::vec(prop_oneof![Just(2i64), Just(3), Just(4), Just(6)], 0..3),
            b_ord in proptest::collection::vec(prop_oneof![Just(2i64), Just(3), Just(4), Just(5)], 1..4),
            c_ord in proptest::collection::vec(prop_oneof![Just(0i64), Just(2), Just(4), Just(3)], 0..3),
            entries in proptest::collection::vec(-6i64..7, 24),
        ) {
            let a = g(&a_ord);
            let b = g(&b_ord);
            let c = g(&c_ord);
            prop_assume!(b.cardinality().unwrap() <= Int::from(200));
            // d_out: B → C, made well defined by scaling columns
            let mut mo = IntMatrix::zeros(c.ngens(), b.ngens());
            for i in 0..c.ngens() {
                for j in 0..b.ngens() {
                    let o = c.order(i);
                    let bj = b.order(j);
                    let base = if o.is_zero() { Int::ZERO } else { o.exact_div(&o.gcd(bj)) };
                    mo[(i, j)] = &base * Int::from(entries[i * 4 + j]);
                }
            }
            let d_out = AbHom::new(b.clone(), c.clone(), mo).unwrap();
            // d_in: A → ker(d_out), composed with the inclusion
            let k = d_out.kernel();
            let mut mi = IntMatrix::zeros(k.group.ngens(), a.ngens());
            for i in 0..k.group.ngens() {
                for j in 0..a.ngens() {
                    let o = k.group.order(i);
                    let aj = a.order(j);
                    let base = if o.is_zero() { Int::ZERO } else { o.exact_div(&o.gcd(aj)) };
                    mi[(i, j)] = &base * Int::from(entries[12 + i % 4 * 3 + j]);
                }
            }
            let into_k = AbHom::new(a.clone(), k.group.clone(), mi).unwrap();
            let d_in = k.inclusion.compose(&into_k);
            let h = subquotient(&d_in, &d_out).unwrap();
            let card = h.group.cardinality().unwrap();
            prop_assert_eq!(card, Int::from(brute_homology_order(&d_in, &d_out)));
        }

        #[test]
        fn cyclic_tensor_hom_formulas(a in 0i64..13, b in 0i64..13) {
            let ga = g(&[a]);
            let gb = g(&[b]);
            let expect = g(&[Int::from(a).gcd(&Int::from(b)).to_i64().unwrap()]);
            prop_assert_eq!(tensor(&ga, &gb), expect.clone());
            if a != 0 {
                prop_assert_eq!(hom_group(&ga, &gb), if b == 0 { FgAbGroup::zero() } else { expect });
            } else {
                prop_assert_eq!(hom_group(&ga, &gb), gb);
            }
        }
    }
}
