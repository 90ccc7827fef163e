//! Declarations resolved into library objects. Every declaration is validated on load.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use mackey_core::bredon::{constant_system, corepresentable, corepresentable_dual, restriction_system, transfer_system};
use mackey_core::categories::GroupCategories;
use mackey_core::coeff::{bundled, GCWComplex};
use mackey_core::constant::{cofixed_point_mackey, fixed_point_mackey, xi, ZGChainComplex, ZGModule};
use mackey_core::groups::{FiniteGroup, GSet};
use mackey_core::kan::DiagramFunctor;
use mackey_core::linalg::{AbHom, FgAbGroup, Int};
use mackey_core::mackey::{
    box_product, burnside_functor, dual_mackey, levelwise_view, mackey_from_levelwise, representable_mackey, zbar, LevelwiseData, MackeyFunctor,
};

use crate::error::{invalid, CliError};
use crate::format::{parse, Decl, Document, Entry, Matrix};

pub enum Object {
    Group(Arc<GroupCategories>),
    GSet { group: String, gset: GSet },
    Module { group: String, module: ZGModule },
    Complex { group: String, complex: GCWComplex },
    ZGComplex { group: String, complex: ZGChainComplex },
    Mackey { group: String, functor: MackeyFunctor },
    Coeff { group: String, covariant: bool, system: DiagramFunctor },
}

impl Object {
    pub fn group_name(&self) -> Option<&str> {
        match self {
            Object::Group(_) => None,
            Object::GSet { group, .. }
            | Object::Module { group, .. }
            | Object::Complex { group, .. }
            | Object::ZGComplex { group, .. }
            | Object::Mackey { group, .. }
            | Object::Coeff { group, .. } => Some(group),
        }
    }
}

pub struct Workspace {
    pub doc: Document,
    objects: BTreeMap<String, Object>,
}

const MACKEY_KINDS: [&str; 10] = ["burnside", "zbar", "representable", "fixed", "cofixed", "xi", "dual", "sum", "box", "levelwise"];
const COEFF_KINDS: [&str; 5] = ["constant", "corepresentable", "corepresentable-dual", "restriction", "transfer"];

fn perr(e: &Entry, message: impl Into<String>) -> CliError {
    CliError::Parse { line: e.line, message: message.into() }
}

fn nargs(e: &Entry, n: usize) -> Result<(), CliError> {
    if e.args.len() != n {
        return Err(perr(e, format!("'{}' takes {n} argument(s), got {}", e.keyword, e.args.len())));
    }
    Ok(())
}

fn no_matrix(e: &Entry) -> Result<(), CliError> {
    if e.matrix.is_some() {
        return Err(perr(e, format!("'{}' takes no matrix", e.keyword)));
    }
    Ok(())
}

fn matrix(e: &Entry) -> Result<&Matrix, CliError> {
    e.matrix.as_ref().ok_or_else(|| perr(e, format!("'{}' needs a matrix", e.keyword)))
}

fn usize_arg(e: &Entry, tok: &str) -> Result<usize, CliError> {
    tok.parse().map_err(|_| perr(e, format!("'{tok}' is not a nonnegative integer")))
}

fn orders(e: &Entry, toks: &[String]) -> Result<FgAbGroup, CliError> {
    let mut out = Vec::new();
    for t in toks {
        let v: Int = t.parse().map_err(|_| perr(e, format!("'{t}' is not an integer")))?;
        if v.is_negative() {
            return Err(perr(e, format!("negative order {t}")));
        }
        out.push(v);
    }
    Ok(FgAbGroup::from_orders(out))
}

fn index_rows(e: &Entry, m: &Matrix) -> Result<Vec<Vec<usize>>, CliError> {
    m.entries
        .iter()
        .map(|r| r.iter().map(|v| v.to_string().parse::<usize>().map_err(|_| perr(e, format!("'{v}' is not an index")))).collect())
        .collect()
}

fn hom(source: &FgAbGroup, target: &FgAbGroup, e: &Entry) -> Result<AbHom, CliError> {
    AbHom::new(source.clone(), target.clone(), matrix(e)?.to_int_matrix()).map_err(|err| invalid(format!("line {}: {err}", e.line)))
}

fn orbit(cats: &GroupCategories, e: &Entry, label: &str) -> Result<usize, CliError> {
    cats.ctx.parse_orbit(label).ok_or_else(|| CliError::UnknownName(format!("line {}: no orbit '{label}' for {}", e.line, cats.ctx.group.name())))
}

/// Keywords of a declaration, rejecting anything outside `allowed`.
fn check_keywords(d: &Decl, allowed: &[&str]) -> Result<(), CliError> {
    for e in d.entries() {
        if !allowed.contains(&e.keyword.as_str()) {
            return Err(perr(e, format!("unexpected '{}' in {} {}", e.keyword, d.kind, d.name)));
        }
    }
    Ok(())
}

fn single<'a>(d: &'a Decl, keywords: &[&str]) -> Result<&'a Entry, CliError> {
    let found: Vec<&Entry> = d.entries().filter(|e| keywords.contains(&e.keyword.as_str())).collect();
    match found[..] {
        [e] => Ok(e),
        [] => Err(CliError::Parse { line: d.line, message: format!("{} {} needs one of: {}", d.kind, d.name, keywords.join(", ")) }),
        [_, e, ..] => Err(perr(e, format!("{} {} has more than one of: {}", d.kind, d.name, keywords.join(", ")))),
    }
}

struct Resolver<'a> {
    decls: HashMap<&'a str, &'a Decl>,
    objects: BTreeMap<String, Object>,
    visiting: HashSet<String>,
}

impl<'a> Resolver<'a> {
    fn resolve(&mut self, name: &str, from: usize) -> Result<&Object, CliError> {
        if !self.objects.contains_key(name) {
            let d = *self.decls.get(name).ok_or_else(|| CliError::UnknownName(format!("line {from}: '{name}' is not declared")))?;
            if !self.visiting.insert(name.to_string()) {
                return Err(invalid(format!("line {from}: '{name}' refers to itself")));
            }
            let obj = self.build(d)?;
            self.visiting.remove(name);
            self.objects.insert(name.to_string(), obj);
        }
        Ok(&self.objects[name])
    }

    fn cats(&mut self, name: &str, from: usize) -> Result<Arc<GroupCategories>, CliError> {
        match self.resolve(name, from)? {
            Object::Group(c) => Ok(c.clone()),
            _ => Err(CliError::UnknownName(format!("line {from}: '{name}' is not a group"))),
        }
    }

    /// The group of a declaration, from its `group` entry.
    fn owner(&mut self, d: &Decl) -> Result<(String, Arc<GroupCategories>), CliError> {
        let e = single(d, &["group"])?;
        nargs(e, 1)?;
        no_matrix(e)?;
        let c = self.cats(&e.args[0], e.line)?;
        Ok((e.args[0].clone(), c))
    }

    fn same_group(&mut self, name: &str, group: &str, from: usize) -> Result<&Object, CliError> {
        let obj = self.resolve(name, from)?;
        match obj.group_name() {
            Some(g) if g != group => Err(invalid(format!("line {from}: '{name}' is over group {g}, not {group}"))),
            _ => Ok(obj),
        }
    }

    fn gset(&mut self, name: &str, group: &str, from: usize) -> Result<GSet, CliError> {
        match self.same_group(name, group, from)? {
            Object::GSet { gset, .. } => Ok(gset.clone()),
            _ => Err(CliError::UnknownName(format!("line {from}: '{name}' is not a gset"))),
        }
    }

    fn module(&mut self, name: &str, group: &str, from: usize) -> Result<ZGModule, CliError> {
        match self.same_group(name, group, from)? {
            Object::Module { module, .. } => Ok(module.clone()),
            _ => Err(CliError::UnknownName(format!("line {from}: '{name}' is not a module"))),
        }
    }

    fn mackey(&mut self, name: &str, group: &str, from: usize) -> Result<MackeyFunctor, CliError> {
        match self.same_group(name, group, from)? {
            Object::Mackey { functor, .. } => Ok(functor.clone()),
            _ => Err(CliError::UnknownName(format!("line {from}: '{name}' is not a mackey functor"))),
        }
    }

    fn build(&mut self, d: &Decl) -> Result<Object, CliError> {
        match d.kind.as_str() {
            "group" => self.build_group(d),
            "gset" => self.build_gset(d),
            "module" => self.build_module(d),
            "complex" => self.build_complex(d),
            "zgcomplex" => self.build_zgcomplex(d),
            "mackey" => self.build_mackey(d),
            "coeff" => self.build_coeff(d),
            k => Err(CliError::Parse { line: d.line, message: format!("unknown declaration kind '{k}'") }),
        }
    }

    fn build_group(&mut self, d: &Decl) -> Result<Object, CliError> {
        check_keywords(d, &["builtin", "table"])?;
        let e = single(d, &["builtin", "table"])?;
        let g = if e.keyword == "builtin" {
            nargs(e, 1)?;
            no_matrix(e)?;
            FiniteGroup::by_name(&e.args[0]).ok_or_else(|| CliError::UnknownName(format!("line {}: no builtin group '{}'", e.line, e.args[0])))?
        } else {
            nargs(e, 0)?;
            let m = matrix(e)?;
            if m.rows != m.cols {
                return Err(invalid(format!("line {}: multiplication table must be square", e.line)));
            }
            FiniteGroup::from_table(d.name.clone(), index_rows(e, m)?).map_err(invalid)?
        };
        Ok(Object::Group(GroupCategories::new(g).map_err(invalid)?))
    }

    fn build_gset(&mut self, d: &Decl) -> Result<Object, CliError> {
        check_keywords(d, &["group", "orbits", "action"])?;
        let (gname, cats) = self.owner(d)?;
        let g = &cats.ctx.group;
        let e = single(d, &["orbits", "action"])?;
        let gset = if e.keyword == "orbits" {
            no_matrix(e)?;
            let mut s = GSet::empty();
            for label in &e.args {
                let k = orbit(&cats, e, label)?;
                s = s.disjoint_union(&cats.ctx.orbits[k].gset, g);
            }
            s
        } else {
            nargs(e, 0)?;
            let m = matrix(e)?;
            GSet::new(g, index_rows(e, m)?).map_err(|err| invalid(format!("line {}: {err}", e.line)))?
        };
        Ok(Object::GSet { group: gname, gset })
    }

    fn build_module(&mut self, d: &Decl) -> Result<Object, CliError> {
        check_keywords(d, &["group", "trivial", "permutation", "regular", "orders", "action"])?;
        let (gname, cats) = self.owner(d)?;
        let g = &cats.ctx.group;
        let e = single(d, &["trivial", "permutation", "regular", "orders"])?;
        no_matrix(e)?;
        let actions: Vec<&Entry> = d.entries().filter(|x| x.keyword == "action").collect();
        if e.keyword != "orders" {
            if let Some(a) = actions.first() {
                return Err(perr(a, format!("'action' only follows 'orders', not '{}'", e.keyword)));
            }
        }
        let module = match e.keyword.as_str() {
            "trivial" => ZGModule::trivial(g, &orders(e, &e.args)?),
            "permutation" => {
                nargs(e, 1)?;
                ZGModule::permutation(g, &self.gset(&e.args[0], &gname, e.line)?)
            }
            "regular" => {
                nargs(e, 0)?;
                ZGModule::regular(g)
            }
            _ => {
                let a = orders(e, &e.args)?;
                let mut given = Vec::new();
                for x in actions {
                    nargs(x, 1)?;
                    let elem = usize_arg(x, &x.args[0])?;
                    given.push((elem, hom(&a, &a, x)?));
                }
                ZGModule::from_generators(g, a, &given).map_err(|err| invalid(format!("{} {}: {err}", d.kind, d.name)))?
            }
        };
        Ok(Object::Module { group: gname, module })
    }

    fn build_complex(&mut self, d: &Decl) -> Result<Object, CliError> {
        check_keywords(d, &["group", "bundled", "cells", "boundary"])?;
        let (gname, cats) = self.owner(d)?;
        if let Some(e) = d.entries().find(|e| e.keyword == "bundled") {
            nargs(e, 1)?;
            no_matrix(e)?;
            if let Some(other) = d.entries().find(|x| x.keyword != "group" && x.keyword != "bundled") {
                return Err(perr(other, "a bundled complex takes no cells"));
            }
            let complex = bundled::catalogue(&cats.ctx)
                .into_iter()
                .find(|(label, _)| *label == e.args[0])
                .map(|(_, x)| x)
                .ok_or_else(|| CliError::UnknownName(format!("line {}: no bundled complex '{}' for {}", e.line, e.args[0], cats.ctx.group.name())))?;
            return Ok(Object::Complex { group: gname, complex });
        }
        let mut cells: BTreeMap<usize, GSet> = BTreeMap::new();
        let mut bounds: BTreeMap<usize, (&Entry, &Matrix)> = BTreeMap::new();
        for e in d.entries() {
            match e.keyword.as_str() {
                "cells" => {
                    nargs(e, 2)?;
                    no_matrix(e)?;
                    let n = usize_arg(e, &e.args[0])?;
                    let s = self.gset(&e.args[1], &gname, e.line)?;
                    if cells.insert(n, s).is_some() {
                        return Err(perr(e, format!("cells {n} given twice")));
                    }
                }
                "boundary" => {
                    nargs(e, 1)?;
                    let n = usize_arg(e, &e.args[0])?;
                    if bounds.insert(n, (e, matrix(e)?)).is_some() {
                        return Err(perr(e, format!("boundary {n} given twice")));
                    }
                }
                _ => {}
            }
        }
        if cells.keys().enumerate().any(|(i, &n)| i != n) {
            return Err(invalid(format!("complex {}: cell dimensions must be 0, 1, ..., without gaps", d.name)));
        }
        let top = cells.len();
        if let Some(&n) = bounds.keys().find(|&&n| n == 0 || n >= top) {
            return Err(invalid(format!("complex {}: boundary {n} has no cells to map between", d.name)));
        }
        let mut boundaries = Vec::new();
        for n in 1..top {
            let (_, m) = bounds.get(&n).ok_or_else(|| invalid(format!("complex {}: boundary {n} missing", d.name)))?;
            boundaries.push(m.to_int_matrix());
        }
        let complex = GCWComplex::new(cats.ctx.clone(), cells.into_values().collect(), boundaries).map_err(|err| invalid(format!("complex {}: {err}", d.name)))?;
        Ok(Object::Complex { group: gname, complex })
    }

    fn build_zgcomplex(&mut self, d: &Decl) -> Result<Object, CliError> {
        check_keywords(d, &["group", "module", "diff"])?;
        let (gname, _) = self.owner(d)?;
        let mut modules: BTreeMap<usize, ZGModule> = BTreeMap::new();
        let mut diffs: BTreeMap<usize, &Entry> = BTreeMap::new();
        for e in d.entries() {
            match e.keyword.as_str() {
                "module" => {
                    nargs(e, 2)?;
                    no_matrix(e)?;
                    let n = usize_arg(e, &e.args[0])?;
                    let m = self.module(&e.args[1], &gname, e.line)?;
                    if modules.insert(n, m).is_some() {
                        return Err(perr(e, format!("module {n} given twice")));
                    }
                }
                "diff" => {
                    nargs(e, 1)?;
                    matrix(e)?;
                    let n = usize_arg(e, &e.args[0])?;
                    if diffs.insert(n, e).is_some() {
                        return Err(perr(e, format!("diff {n} given twice")));
                    }
                }
                _ => {}
            }
        }
        if modules.keys().enumerate().any(|(i, &n)| i != n) {
            return Err(invalid(format!("zgcomplex {}: degrees must be 0, 1, ..., without gaps", d.name)));
        }
        let modules: Vec<ZGModule> = modules.into_values().collect();
        if let Some(&n) = diffs.keys().find(|&&n| n == 0 || n >= modules.len()) {
            return Err(invalid(format!("zgcomplex {}: diff {n} has no modules to map between", d.name)));
        }
        let mut maps = Vec::new();
        for n in 1..modules.len() {
            let e = diffs.get(&n).ok_or_else(|| invalid(format!("zgcomplex {}: diff {n} missing", d.name)))?;
            maps.push(hom(modules[n].group(), modules[n - 1].group(), e)?);
        }
        let complex = ZGChainComplex::new(modules, maps).map_err(|err| invalid(format!("zgcomplex {}: {err}", d.name)))?;
        Ok(Object::ZGComplex { group: gname, complex })
    }

    fn build_mackey(&mut self, d: &Decl) -> Result<Object, CliError> {
        let mut allowed = vec!["group", "value", "res", "tr", "weyl"];
        allowed.extend(MACKEY_KINDS);
        check_keywords(d, &allowed)?;
        let (gname, cats) = self.owner(d)?;
        let e = single(d, &MACKEY_KINDS)?;
        no_matrix(e)?;
        if e.keyword != "levelwise" {
            if let Some(x) = d.entries().find(|x| ["value", "res", "tr", "weyl"].contains(&x.keyword.as_str())) {
                return Err(perr(x, format!("'{}' only appears in levelwise functors", x.keyword)));
            }
        }
        let name = &d.name;
        let functor = match e.keyword.as_str() {
            "burnside" | "zbar" | "levelwise" => {
                nargs(e, 0)?;
                match e.keyword.as_str() {
                    "burnside" => burnside_functor(&cats),
                    "zbar" => zbar(&cats),
                    _ => self.levelwise(d, &cats)?,
                }
            }
            "representable" => {
                nargs(e, 1)?;
                representable_mackey(&cats, orbit(&cats, e, &e.args[0])?)
            }
            "fixed" | "cofixed" => {
                nargs(e, 1)?;
                let n = self.module(&e.args[0], &gname, e.line)?;
                let m = if e.keyword == "fixed" { fixed_point_mackey(&cats, &n) } else { cofixed_point_mackey(&cats, &n) };
                m.map_err(|err| invalid(format!("mackey {name}: {err}")))?
            }
            "xi" => {
                if e.args.is_empty() {
                    return Err(perr(e, "'xi' takes an orbit and a list of orders"));
                }
                let h = orbit(&cats, e, &e.args[0])?;
                xi(&cats, h, &orders(e, &e.args[1..])?).map_err(|err| invalid(format!("mackey {name}: {err}")))?
            }
            "dual" => {
                nargs(e, 1)?;
                let m = self.mackey(&e.args[0], &gname, e.line)?;
                if !m.values().iter().all(FgAbGroup::is_free) {
                    return Err(invalid(format!("mackey {name}: the dual needs torsion-free values")));
                }
                dual_mackey(&cats, &m)
            }
            "sum" => {
                if e.args.is_empty() {
                    return Err(perr(e, "'sum' takes at least one functor"));
                }
                let parts = e.args.iter().map(|a| self.mackey(a, &gname, e.line)).collect::<Result<Vec<_>, _>>()?;
                DiagramFunctor::direct_sum(&parts.iter().collect::<Vec<_>>())
            }
            _ => {
                nargs(e, 2)?;
                let m = self.mackey(&e.args[0], &gname, e.line)?;
                let n = self.mackey(&e.args[1], &gname, e.line)?;
                box_product(&cats, &m, &n).map_err(|err| invalid(format!("mackey {name}: {err}")))?.functor
            }
        };
        Ok(Object::Mackey { group: gname, functor })
    }

    fn levelwise(&mut self, d: &Decl, cats: &GroupCategories) -> Result<MackeyFunctor, CliError> {
        let n = cats.orbit_count();
        let mut values: Vec<Option<FgAbGroup>> = vec![None; n];
        for e in d.entries().filter(|e| e.keyword == "value") {
            no_matrix(e)?;
            if e.args.is_empty() {
                return Err(perr(e, "'value' takes an orbit and a list of orders"));
            }
            let k = orbit(cats, e, &e.args[0])?;
            if values[k].replace(orders(e, &e.args[1..])?).is_some() {
                return Err(perr(e, format!("value at {} given twice", e.args[0])));
            }
        }
        let values: Vec<FgAbGroup> = values
            .into_iter()
            .enumerate()
            .map(|(k, v)| v.ok_or_else(|| invalid(format!("mackey {}: no value at {}", d.name, cats.ctx.orbit_label(k)))))
            .collect::<Result<_, _>>()?;
        let mut data = LevelwiseData { values: values.clone(), ..Default::default() };
        for e in d.entries() {
            match e.keyword.as_str() {
                "res" | "tr" => {
                    nargs(e, 3)?;
                    let a = orbit(cats, e, &e.args[0])?;
                    let b = orbit(cats, e, &e.args[1])?;
                    let p = usize_arg(e, &e.args[2])?;
                    let map = if e.keyword == "res" { hom(&values[b], &values[a], e)? } else { hom(&values[a], &values[b], e)? };
                    let slot = if e.keyword == "res" { &mut data.restrictions } else { &mut data.transfers };
                    if slot.insert((a, b, p), map).is_some() {
                        return Err(perr(e, "map given twice"));
                    }
                }
                "weyl" => {
                    nargs(e, 2)?;
                    let a = orbit(cats, e, &e.args[0])?;
                    let p = usize_arg(e, &e.args[1])?;
                    if data.weyl.insert((a, p), hom(&values[a], &values[a], e)?).is_some() {
                        return Err(perr(e, "map given twice"));
                    }
                }
                _ => {}
            }
        }
        mackey_from_levelwise(cats, &data).map_err(|err| invalid(format!("mackey {}: {err}", d.name)))
    }

    fn build_coeff(&mut self, d: &Decl) -> Result<Object, CliError> {
        let mut allowed = vec!["group"];
        allowed.extend(COEFF_KINDS);
        check_keywords(d, &allowed)?;
        let (gname, cats) = self.owner(d)?;
        let e = single(d, &COEFF_KINDS)?;
        no_matrix(e)?;
        let (covariant, system) = match e.keyword.as_str() {
            "constant" => {
                let Some(variance) = e.args.first() else {
                    return Err(perr(e, "'constant' takes covariant or contravariant, then orders"));
                };
                let covariant = match variance.as_str() {
                    "covariant" => true,
                    "contravariant" => false,
                    v => return Err(perr(e, format!("'{v}' is neither covariant nor contravariant"))),
                };
                (covariant, constant_system(&cats, &orders(e, &e.args[1..])?, !covariant))
            }
            "corepresentable" | "corepresentable-dual" => {
                nargs(e, 1)?;
                let k = orbit(&cats, e, &e.args[0])?;
                if e.keyword == "corepresentable" {
                    (true, corepresentable(&cats, k))
                } else {
                    (false, corepresentable_dual(&cats, k))
                }
            }
            _ => {
                nargs(e, 1)?;
                let m = self.mackey(&e.args[0], &gname, e.line)?;
                if e.keyword == "restriction" {
                    (false, restriction_system(&cats, &m))
                } else {
                    (true, transfer_system(&cats, &m))
                }
            }
        };
        Ok(Object::Coeff { group: gname, covariant, system })
    }
}

impl Workspace {
    pub fn load(text: &str) -> Result<Self, CliError> {
        Self::from_document(parse(text)?)
    }

    pub fn read(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::load(&text)
    }

    pub fn from_document(doc: Document) -> Result<Self, CliError> {
        let mut decls: HashMap<&str, &Decl> = HashMap::new();
        for d in &doc.decls {
            if decls.insert(d.name.as_str(), d).is_some() {
                return Err(invalid(format!("line {}: '{}' is declared twice", d.line, d.name)));
            }
        }
        let mut r = Resolver { decls, objects: BTreeMap::new(), visiting: HashSet::new() };
        for d in &doc.decls {
            r.resolve(&d.name, d.line)?;
        }
        let objects = r.objects;
        Ok(Workspace { doc, objects })
    }

    pub fn object(&self, name: &str) -> Result<&Object, CliError> {
        self.objects.get(name).ok_or_else(|| CliError::UnknownName(format!("'{name}' is not declared")))
    }

    pub fn names(&self) -> impl Iterator<Item = (&str, &Object)> {
        self.doc.decls.iter().map(|d| (d.name.as_str(), &self.objects[&d.name]))
    }

    pub fn group(&self, name: &str) -> Result<&Arc<GroupCategories>, CliError> {
        match self.object(name)? {
            Object::Group(c) => Ok(c),
            _ => Err(CliError::UnknownName(format!("'{name}' is not a group"))),
        }
    }

    fn owner_of(&self, obj: &Object) -> &Arc<GroupCategories> {
        self.group(obj.group_name().expect("declarations other than groups name a group")).expect("resolved on load")
    }

    pub fn complex(&self, name: &str) -> Result<(&str, &Arc<GroupCategories>, &GCWComplex), CliError> {
        match self.object(name)? {
            o @ Object::Complex { group, complex } => Ok((group, self.owner_of(o), complex)),
            _ => Err(CliError::UnknownName(format!("'{name}' is not a complex"))),
        }
    }

    pub fn mackey(&self, name: &str) -> Result<(&str, &Arc<GroupCategories>, &MackeyFunctor), CliError> {
        match self.object(name)? {
            o @ Object::Mackey { group, functor } => Ok((group, self.owner_of(o), functor)),
            _ => Err(CliError::UnknownName(format!("'{name}' is not a mackey functor"))),
        }
    }

    /// A coefficient system and whether it is covariant.
    pub fn coeff(&self, name: &str) -> Result<(&str, bool, &DiagramFunctor), CliError> {
        match self.object(name)? {
            Object::Coeff { group, covariant, system } => Ok((group, *covariant, system)),
            _ => Err(CliError::UnknownName(format!("'{name}' is not a coefficient system"))),
        }
    }
}

/// A levelwise declaration of `m`, with every restriction, transfer and Weyl action written out.
pub fn mackey_decl(name: &str, group: &str, cats: &GroupCategories, m: &MackeyFunctor) -> Decl {
    let data = levelwise_view(cats, m);
    let label = |k: usize| cats.ctx.orbit_label(k);
    let mut d = Decl::new("mackey", name);
    d.push(Entry::new("group", vec![group.to_string()], None));
    d.push(Entry::new("levelwise", Vec::new(), None));
    for (k, v) in data.values.iter().enumerate() {
        let mut args = vec![label(k)];
        args.extend(v.orders().iter().map(|o| o.to_string()));
        d.push(Entry::new("value", args, None));
    }
    for (kw, maps) in [("res", &data.restrictions), ("tr", &data.transfers)] {
        for (&(a, b, p), f) in maps {
            d.push(Entry::new(kw, vec![label(a), label(b), p.to_string()], Some(Matrix::from_int_matrix(f.matrix()))));
        }
    }
    for (&(a, p), f) in &data.weyl {
        d.push(Entry::new("weyl", vec![label(a), p.to_string()], Some(Matrix::from_int_matrix(f.matrix()))));
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(body: &str) -> Result<Workspace, CliError> {
        Workspace::load(&format!("mackey-workspace 1\n\ngroup G\n  builtin Z2\n\n{body}"))
    }

    #[test]
    fn error_classes() {
        let code = |body: &str| load(body).err().map(|e| e.exit_code());
        assert_eq!(code("mackey M\n  group G\n  zbar\n"), None);
        assert_eq!(code("mackey M\n  group H\n  zbar\n"), Some(4));
        assert_eq!(code("mackey M\n  group G\n  representable G/{7}\n"), Some(4));
        assert_eq!(code("mackey M\n  group G\n  zbar\n  burnside\n"), Some(2));
        assert_eq!(code("mackey M\n  group G\n  frobnicate\n"), Some(2));
        assert_eq!(code("mackey M\n  group G\n  dual M\n"), Some(3));
        assert_eq!(code("mackey M\n  group G\n  zbar\n\nmackey M\n  group G\n  zbar\n"), Some(3));
        assert_eq!(code("gset S\n  group G\n  action 2x2\n    0 1\n    0 0\n"), Some(3));
        assert_eq!(code("complex X\n  group G\n  bundled torus\n"), Some(4));
    }

    #[test]
    fn references_resolve_in_any_order() {
        let w = load("mackey D\n  group G\n  dual A\n\nmackey A\n  group G\n  burnside\n").unwrap();
        let (_, c, d) = w.mackey("D").unwrap();
        assert_eq!(d.values(), burnside_functor(c).values());
    }

    #[test]
    fn levelwise_view_round_trips() {
        let w = load("mackey A\n  group G\n  burnside\n").unwrap();
        let (g, c, a) = w.mackey("A").unwrap();
        let d = mackey_decl("B", g, c, a);
        let mut doc = w.doc.clone();
        doc.decls.push(d);
        let w2 = Workspace::from_document(doc).unwrap();
        assert_eq!(levelwise_view(c, w2.mackey("B").unwrap().2), levelwise_view(c, a));
    }

    #[test]
    fn explicit_modules_and_complexes() {
        let text = "gset P\n  group G\n  orbits G/G G/G\n\ngset F\n  group G\n  orbits G/e\n\n\
complex S\n  group G\n  cells 0 P\n  cells 1 F\n  boundary 1 2x2\n    -1 -1\n    1 1\n\n\
module N\n  group G\n  orders 0 0\n  action 1 2x2\n    0 1\n    1 0\n\n\
mackey M\n  group G\n  fixed N\n";
        let w = load(text).unwrap();
        let (_, c, x) = w.complex("S").unwrap();
        let expected = bundled::sign_sphere(&c.ctx).unwrap();
        assert_eq!(x.underlying_chain().homology_all(), expected.underlying_chain().homology_all());
        assert_eq!(w.mackey("M").unwrap().2.values(), &[FgAbGroup::free(2), FgAbGroup::free(1)]);
    }
}
