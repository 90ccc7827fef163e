//! Fixed and cofixed points of short exact sequences, the snake map for cyclic subgroups, and an
//! exact sequence over `Z/2 × Z/2` whose fixed points are exact but whose cofixed points are not.

use std::fmt;

use super::{cfp_equivalent, cofixed_map, fixed_map, fp_equivalent, ConstantError, ZGChainComplex, ZGChainMap, ZGModule};
use crate::categories::GroupCategories;
use crate::groups::{FiniteGroup, Subgroup};
use crate::linalg::{AbHom, FgAbGroup, Int, IntMatrix};
use crate::report::Check;

/// `0 → K →i N →p M → 0`, exact and equivariant.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub k: ZGModule,
    pub n: ZGModule,
    pub m: ZGModule,
    pub i: AbHom,
    pub p: AbHom,
}

impl ShortExactSequence {
    pub fn new(k: ZGModule, n: ZGModule, m: ZGModule, i: AbHom, p: AbHom) -> Result<Self, ConstantError> {
        if !k.is_equivariant(&n, &i) || !n.is_equivariant(&m, &p) {
            return Err(ConstantError::NotEquivariant);
        }
        if !i.is_injective() {
            return Err(ConstantError::NotExact("i is not injective".into()));
        }
        if !p.is_surjective() {
            return Err(ConstantError::NotExact("p is not surjective".into()));
        }
        if !p.compose(&i).is_zero() {
            return Err(ConstantError::NotExact("p∘i ≠ 0".into()));
        }
        let ker = p.kernel();
        let solver = i.solver();
        if (0..ker.group.ngens()).any(|j| solver.solve(&ker.inclusion.column(j)).is_none()) {
            return Err(ConstantError::NotExact("ker p ⊄ im i".into()));
        }
        Ok(ShortExactSequence { k, n, m, i, p })
    }

    /// `0 → ker p → N → M → 0` for an equivariant surjection `p`.
    pub fn from_surjection(n: ZGModule, m: ZGModule, p: AbHom) -> Result<Self, ConstantError> {
        let (k, i) = n.kernel_of(&m, &p)?;
        Self::new(k, n, m, i, p)
    }

    /// `N^H → M^H` is onto, so `0 → K^H → N^H → M^H → 0` is exact.
    pub fn fixed_exact(&self, g: &FiniteGroup, h: &Subgroup) -> bool {
        fixed_map(g, &self.n, &self.m, &self.p, h).is_surjective()
    }

    /// `K_H → N_H` is injective, so `0 → K_H → N_H → M_H → 0` is exact.
    pub fn cofixed_exact(&self, g: &FiniteGroup, h: &Subgroup) -> bool {
        cofixed_map(g, &self.k, &self.n, &self.i, h).is_injective()
    }

    /// `K[1] → (N →p M)`, a quasi-isomorphism which is an fp- (cfp-) equivalence exactly when
    /// every fixed (cofixed) point sequence is exact.
    pub fn chain_map(&self, g: &FiniteGroup) -> (ZGChainComplex, ZGChainComplex, ZGChainMap) {
        let zero = ZGModule::trivial(g, &FgAbGroup::zero());
        let shifted = ZGChainComplex::new(vec![zero.clone(), self.k.clone()], vec![AbHom::zero(self.k.group(), zero.group())]).expect("K[1]");
        let two = ZGChainComplex::new(vec![self.m.clone(), self.n.clone()], vec![self.p.clone()]).expect("N → M");
        let f = ZGChainMap { components: vec![AbHom::zero(zero.group(), self.m.group()), self.i.clone()] };
        (shifted, two, f)
    }
}

/// The connecting map `M^⟨α⟩ → K_⟨α⟩`, `m ↦ [i⁻¹((1 − α)·n)]` for any lift `n` of `m`.
pub fn snake_gamma(g: &FiniteGroup, ses: &ShortExactSequence, alpha: usize) -> AbHom {
    let h = Subgroup::generated(g, &[alpha]);
    let fixed = ses.m.fixed_points(g, &h);
    let cofixed = ses.k.cofixed_points(g, &h);
    let gap = AbHom::identity(ses.n.group()).sub(ses.n.action(alpha));
    let (lift, back) = (ses.p.solver(), ses.i.solver());
    let cols: Vec<Vec<Int>> = (0..fixed.group.ngens())
        .map(|j| {
            let n = lift.solve(&fixed.inclusion.column(j)).expect("p is onto");
            let k = back.solve(&gap.apply(&n)).expect("(1 − α)n lies in K");
            cofixed.projection.apply(&k)
        })
        .collect();
    AbHom::new(fixed.group.clone(), cofixed.group.clone(), IntMatrix::from_columns(&cols, cofixed.group.ngens())).unwrap()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupExactness {
    pub class: usize,
    pub label: String,
    pub fixed_exact: bool,
    pub cofixed_exact: bool,
    /// `None` when the subgroup is not cyclic.
    pub gamma_zero: Option<bool>,
}

/// Exactness of fixed and cofixed points at one subgroup from each conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub subgroups: Vec<SubgroupExactness>,
}

impl ExactnessReport {
    pub fn fixed_exact(&self) -> bool {
        self.subgroups.iter().all(|s| s.fixed_exact)
    }

    pub fn cofixed_exact(&self) -> bool {
        self.subgroups.iter().all(|s| s.cofixed_exact)
    }

    /// At every cyclic subgroup, fixed exactness, cofixed exactness and `γ = 0` agree.
    pub fn consistent(&self) -> bool {
        self.subgroups.iter().all(|s| s.gamma_zero.map_or(true, |z| z == s.fixed_exact && z == s.cofixed_exact))
    }
}

impl fmt::Display for ExactnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.subgroups {
            let gamma = match s.gamma_zero {
                Some(true) => "γ = 0",
                Some(false) => "γ ≠ 0",
                None => "not cyclic",
            };
            writeln!(f, "{}: fixed exact {}, cofixed exact {}, {gamma}", s.label, s.fixed_exact, s.cofixed_exact)?;
        }
        Ok(())
    }
}

pub fn exactness_report(cats: &GroupCategories, ses: &ShortExactSequence) -> ExactnessReport {
    let g = &cats.ctx.group;
    let subgroups = (0..cats.orbit_count())
        .map(|class| {
            let h = &cats.ctx.orbits[class].subgroup;
            SubgroupExactness {
                class,
                label: cats.ctx.orbit_label(class),
                fixed_exact: ses.fixed_exact(g, h),
                cofixed_exact: ses.cofixed_exact(g, h),
                gamma_zero: h.cyclic_generator(g).map(|a| snake_gamma(g, ses, a).is_zero()),
            }
        })
        .collect();
    ExactnessReport { subgroups }
}

/// The exactness report over a cyclic group, where every subgroup carries a snake map.
pub fn cyclic_exactness_check(cats: &GroupCategories, ses: &ShortExactSequence) -> Result<ExactnessReport, ConstantError> {
    if cats.ctx.group.cyclic_generator().is_none() {
        return Err(ConstantError::NotCyclic);
    }
    Ok(exactness_report(cats, ses))
}

fn check(label: &str, holds: bool) -> Check {
    Check::new(label, holds)
}

/// Both `Z/2 × Z/2` sequences: `λ = (ε, 1 + α) : Z[G] ⊕ Z → M` with its stated data, and
/// `Z[G]² → I_G` onto the augmentation ideal.
#[derive(Clone, Debug)]
pub struct CounterexampleReport {
    /// The data stated for `ker λ`, each marked with whether it is reproduced.
    pub stated: Vec<Check>,
    /// Facts about both sequences, all of which should hold.
    pub findings: Vec<Check>,
    pub lambda: ExactnessReport,
    pub augmentation: ExactnessReport,
    pub k_cofixed: FgAbGroup,
    pub n_cofixed: FgAbGroup,
    pub augmentation_k_cofixed: FgAbGroup,
    /// fp- and cfp-equivalence of `K[1] → (N → M)` for the augmentation sequence.
    pub fp: bool,
    pub cfp: bool,
}

impl CounterexampleReport {
    /// Every finding holds; in particular fp- and cfp-equivalence differ over `Z/2 × Z/2`.
    pub fn passed(&self) -> bool {
        self.findings.iter().all(|c| c.holds)
    }

    pub fn stated_data_reproduced(&self) -> bool {
        self.stated.iter().all(|c| c.holds)
    }
}

impl fmt::Display for CounterexampleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line = |f: &mut fmt::Formatter<'_>, c: &Check, yes: &str, no: &str| writeln!(f, "  [{}] {}", if c.holds { yes } else { no }, c.label);
        writeln!(f, "λ = (ε, 1 + α) : Z[G] ⊕ Z → M, stated data:")?;
        for c in &self.stated {
            line(f, c, "reproduced", "NOT reproduced")?;
        }
        writeln!(f, "findings:")?;
        for c in &self.findings {
            line(f, c, "ok", "FAIL")?;
        }
        writeln!(f, "λ, K_G = {}, N_G = {}:", self.k_cofixed, self.n_cofixed)?;
        for l in self.lambda.to_string().lines() {
            writeln!(f, "  {l}")?;
        }
        writeln!(f, "Z[G]² → I_G, K_G = {}:", self.augmentation_k_cofixed)?;
        for l in self.augmentation.to_string().lines() {
            writeln!(f, "  {l}")?;
        }
        writeln!(f, "K[1] → (Z[G]² → I_G): fp-equivalence {}, cfp-equivalence {}", self.fp, self.cfp)
    }
}

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// Same lattice spanned by the columns of `a` and by the vectors `b`.
fn same_span(a: &AbHom, b: &[Vec<Int>]) -> bool {
    let bm = AbHom::new(FgAbGroup::free(b.len()), a.target().clone(), IntMatrix::from_columns(b, a.target().ngens())).unwrap();
    let (sa, sb) = (a.solver(), bm.solver());
    (0..a.source().ngens()).all(|j| sb.solve(&a.column(j)).is_some()) && b.iter().all(|v| sa.solve(v).is_some())
}

fn group_vector(g: &FiniteGroup, terms: &[(usize, i64)], extra: usize) -> Vec<Int> {
    let mut v = vec![Int::ZERO; g.order() + extra];
    for &(x, c) in terms {
        v[x] += Int::from(c);
    }
    v
}

/// `M = Z{1, h, α}` with `αh = α − h + 1`, the quotient of `Z[G]` by `(1 + α)(h − 1)`.
pub fn relation_module(g: &FiniteGroup, h: usize, alpha: usize) -> Result<ZGModule, ConstantError> {
    let z3 = FgAbGroup::free(3);
    let hom = |rows: &[&[i64]]| AbHom::new(z3.clone(), z3.clone(), IntMatrix::from_i64(rows)).unwrap();
    // columns are images of 1, h, α
    let act_h = hom(&[&[0, 1, 1], &[1, 0, -1], &[0, 0, 1]]);
    let act_alpha = hom(&[&[0, 1, 1], &[0, -1, 0], &[1, 1, 0]]);
    ZGModule::from_generators(g, z3, &[(h, act_h), (alpha, act_alpha)])
}

/// `0 → K → Z[G] ⊕ Z → M → 0` with `λ = (ε, 1 + α)`, `ε(1) = 1`.
pub fn lambda_sequence(g: &FiniteGroup, h: usize, alpha: usize) -> Result<ShortExactSequence, ConstantError> {
    let m = relation_module(g, h, alpha)?;
    let n = ZGModule::direct_sum(&[&ZGModule::regular(g), &ZGModule::trivial(g, &FgAbGroup::free(1))]);
    let one = ints(&[1, 0, 0]);
    let mut cols: Vec<Vec<Int>> = g.elements().map(|x| m.action(x).apply(&one)).collect();
    cols.push(ints(&[1, 0, 1]));
    let lambda = AbHom::new(n.group().clone(), m.group().clone(), IntMatrix::from_columns(&cols, 3)).unwrap();
    ShortExactSequence::from_surjection(n, m, lambda)
}

/// `0 → K → Z[G]² → I_G → 0`, the generators going to `h − 1` and `α − 1`.
pub fn augmentation_sequence(g: &FiniteGroup, h: usize, alpha: usize) -> Result<ShortExactSequence, ConstantError> {
    let free = ZGModule::regular(g);
    let z = ZGModule::trivial(g, &FgAbGroup::free(1));
    let eps = AbHom::new(free.group().clone(), z.group().clone(), IntMatrix::from_rows(&[vec![Int::ONE; g.order()]], g.order())).unwrap();
    let (ideal, incl) = free.kernel_of(&z, &eps)?;
    let solver = incl.solver();
    let e = g.identity();
    let gens: Vec<Vec<Int>> = [h, alpha].iter().map(|&s| solver.solve(&group_vector(g, &[(s, 1), (e, -1)], 0)).expect("in the ideal")).collect();
    let n = ZGModule::direct_sum(&[&free, &free]);
    let cols: Vec<Vec<Int>> = (0..2 * g.order()).map(|j| ideal.action(j % g.order()).apply(&gens[j / g.order()])).collect();
    let p = AbHom::new(n.group().clone(), ideal.group().clone(), IntMatrix::from_columns(&cols, ideal.group().ngens())).unwrap();
    ShortExactSequence::from_surjection(n, ideal, p)
}

pub fn counterexample_z2z2() -> Result<CounterexampleReport, ConstantError> {
    let cats = GroupCategories::by_name("Z2xZ2").expect("Klein four group");
    let g = &cats.ctx.group;
    let (h, alpha) = (g.generators()[0], g.generators()[1]);
    let (e, ah) = (g.identity(), g.mul(alpha, h));
    let whole = Subgroup::whole(g);
    let ses = lambda_sequence(g, h, alpha)?;
    let lambda = exactness_report(&cats, &ses);

    // elements of N = Z[G] ⊕ Z
    let u = group_vector(g, &[(ah, 1), (alpha, -1), (h, 1), (e, -1)], 1);
    let mut w = group_vector(g, &[(e, 1), (alpha, 1), (h, 1), (ah, 1)], 1);
    w[g.order()] = Int::from(-2);
    let mut v = group_vector(g, &[(e, 1), (alpha, 1)], 1);
    v[g.order()] = Int::from(-1);
    let back = ses.i.solver();
    let (ku, kv) = (back.solve(&u), back.solve(&v));

    let kc = ses.k.cofixed_points(g, &whole);
    let nc = ses.n.cofixed_points(g, &whole);
    let i_g = cofixed_map(g, &ses.k, &ses.n, &ses.i, &whole);
    let witness = ku.as_ref().map(|x| kc.projection.apply(x));
    let witness_holds = witness.as_ref().is_some_and(|x| {
        let doubled: Vec<Int> = x.iter().map(|c| c.clone() * Int::from(2)).collect();
        !kc.group.is_zero_element(x) && kc.group.is_zero_element(&doubled) && nc.group.is_zero_element(&i_g.apply(x))
    });
    let stated = vec![
        check("M^G = Z{1 + α}", same_span(&ses.m.fixed_points(g, &whole).inclusion, &[ints(&[1, 0, 1])])),
        check("N^H → M^H is onto for all five subgroups H", lambda.fixed_exact()),
        check("K = ⟨(αh − α + h − 1, 0)⟩ ⊕ ⟨(1 + α + h + αh, −2)⟩", same_span(&ses.i, &[u.clone(), w.clone()])),
        check("K_G ≅ Z/2 ⊕ Z", kc.group.torsion_invariants() == vec![Int::from(2)] && kc.group.free_rank() == 1),
        check("N_G ≅ Z ⊕ Z", nc.group.is_free() && nc.group.free_rank() == 2),
        check("the class of (αh − α + h − 1, 0) is a Z/2 in K_G killed in N_G", witness_holds),
        check("K_G → N_G is not injective", !i_g.is_injective()),
    ];

    let sub = |x: usize| Subgroup::generated(g, &[x]);
    let fixed_span = |x: usize, b: &[Vec<Int>]| same_span(&ses.m.fixed_points(g, &sub(x)).inclusion, b);
    let acts = |x: usize, k: &[Int]| ses.k.action(x).apply(k);
    let k_structure = match (&ku, &kv) {
        (Some(ku), Some(kv)) => {
            let sum: Vec<Int> = ku.iter().zip(kv).map(|(a, b)| a.clone() + b.clone()).collect();
            acts(h, kv) == sum && acts(alpha, kv) == *kv && acts(alpha, ku) == *ku
        }
        _ => false,
    };
    let aug = augmentation_sequence(g, h, alpha)?;
    let augmentation = exactness_report(&cats, &aug);
    let akc = aug.k.cofixed_points(g, &whole).group;
    let (shifted, two, f) = aug.chain_map(g);
    let fp = fp_equivalent(&cats, &f, &shifted, &two)?;
    let cfp = cfp_equivalent(&cats, &f, &shifted, &two)?;
    let proper_cofixed = augmentation.subgroups.iter().all(|s| s.cofixed_exact == (s.class != cats.ctx.top()));
    let findings = vec![
        check("M^⟨α⟩ = Z{1 + α}", fixed_span(alpha, &[ints(&[1, 0, 1])])),
        check("M^⟨h⟩ = Z{αh − 1, 1 + α}", fixed_span(h, &[ints(&[0, -1, 1]), ints(&[1, 0, 1])])),
        check("M^⟨αh⟩ = Z{h − 1, 1 + α}", fixed_span(ah, &[ints(&[-1, 1, 0]), ints(&[1, 0, 1])])),
        check("λ is onto on fixed points for all five subgroups", lambda.fixed_exact()),
        check("K = ⟨u⟩ ⊕ ⟨v⟩ with u = (αh − α + h − 1, 0), v = (1 + α, −1)", same_span(&ses.i, &[u, v])),
        check("h·v = v + u and α fixes u and v, so K ≅ Z[G/⟨α⟩]", k_structure),
        check("K_G ≅ Z and K_G → N_G is injective", kc.group.is_free() && kc.group.free_rank() == 1 && i_g.is_injective()),
        check("λ is exact on cofixed points for all five subgroups", lambda.cofixed_exact()),
        check("Z[G]² → I_G is onto on fixed points for all five subgroups", augmentation.fixed_exact()),
        check("its cofixed points are exact at every proper subgroup and not at G", proper_cofixed),
        check("K_G ≅ Z/2 ⊕ Z² for the augmentation sequence", akc.torsion_invariants() == vec![Int::from(2)] && akc.free_rank() == 2),
        check("snake maps agree with exactness at every cyclic subgroup", lambda.consistent() && augmentation.consistent()),
        check("K[1] → (Z[G]² → I_G) is an fp-equivalence and not a cfp-equivalence", fp && !cfp),
    ];
    Ok(CounterexampleReport {
        stated,
        findings,
        lambda,
        augmentation,
        k_cofixed: kc.group,
        n_cofixed: nc.group,
        augmentation_k_cofixed: akc,
        fp,
        cfp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_sequence_and_augmentation_sequence() {
        let r = counterexample_z2z2().unwrap();
        assert!(r.passed(), "{r}");
        assert!(!r.stated_data_reproduced());
        let reproduced: Vec<bool> = r.stated.iter().map(|c| c.holds).collect();
        assert_eq!(reproduced, [true, true, false, false, true, false, false]);
        assert!(r.fp && !r.cfp);
        assert!(r.to_string().contains("[NOT reproduced] K_G ≅ Z/2 ⊕ Z"));
    }

    #[test]
    fn restricting_to_a_cyclic_subgroup() {
        let v = GroupCategories::by_name("Z2xZ2").unwrap();
        let g = &v.ctx.group;
        let (h, alpha) = (g.generators()[0], g.generators()[1]);
        for ses in [lambda_sequence(g, h, alpha).unwrap(), augmentation_sequence(g, h, alpha).unwrap()] {
            for x in [h, alpha, g.mul(h, alpha)] {
                let sub = Subgroup::generated(g, &[x]);
                let (c, k) = ses.k.restrict(g, &sub);
                let (_, n) = ses.n.restrict(g, &sub);
                let (_, m) = ses.m.restrict(g, &sub);
                let cats = GroupCategories::new(c).unwrap();
                let restricted = ShortExactSequence::new(k, n, m, ses.i.clone(), ses.p.clone()).unwrap();
                let r = cyclic_exactness_check(&cats, &restricted).unwrap();
                assert!(r.consistent());
                assert_eq!(r.fixed_exact(), r.cofixed_exact());
            }
        }
    }

    #[test]
    fn augmentation_sequence_over_z2() {
        let cats = GroupCategories::by_name("Z2").unwrap();
        let g = &cats.ctx.group;
        let free = ZGModule::regular(g);
        let z = ZGModule::trivial(g, &FgAbGroup::free(1));
        let eps = AbHom::new(free.group().clone(), z.group().clone(), IntMatrix::from_i64(&[&[1, 1]])).unwrap();
        let ses = ShortExactSequence::from_surjection(free, z, eps).unwrap();
        let r = cyclic_exactness_check(&cats, &ses).unwrap();
        assert!(r.consistent());
        let top = &r.subgroups[1];
        assert!(!top.fixed_exact && !top.cofixed_exact && top.gamma_zero == Some(false));
        assert!(r.subgroups[0].fixed_exact && r.subgroups[0].cofixed_exact);
        let (a, b, f) = ses.chain_map(g);
        assert!(!fp_equivalent(&cats, &f, &a, &b).unwrap());
        assert!(!cfp_equivalent(&cats, &f, &a, &b).unwrap());
    }

    #[test]
    fn rejects_bad_sequences() {
        let cats = GroupCategories::by_name("Z2").unwrap();
        let g = &cats.ctx.group;
        let z = ZGModule::trivial(g, &FgAbGroup::free(1));
        let two = AbHom::identity(z.group()).scale(&Int::from(2));
        assert!(matches!(ShortExactSequence::from_surjection(z.clone(), z.clone(), two), Err(ConstantError::NotExact(_))));
        let sign = ZGModule::sign(g, &Subgroup::trivial(g));
        let id = AbHom::identity(z.group());
        assert!(matches!(ShortExactSequence::from_surjection(z, sign, id), Err(ConstantError::NotEquivariant)));
        let v = GroupCategories::by_name("Z2xZ2").unwrap();
        let zv = ZGModule::trivial(&v.ctx.group, &FgAbGroup::free(1));
        let ses = ShortExactSequence::from_surjection(zv.clone(), zv.clone(), AbHom::identity(zv.group())).unwrap();
        assert!(matches!(cyclic_exactness_check(&v, &ses), Err(ConstantError::NotCyclic)));
    }
}
