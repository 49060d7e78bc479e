//! Turns an [`InputDocument`] into core objects, reporting the location of
//! the first problem.

use std::sync::Arc;

use coring_core::algkernel::{AlgRef, Bimodule, FinAlgebra};
use coring_core::coring::{Bicomodule, Coring, CoringRef};
use coring_core::entwine::{entwining_coring, Entwining, EntwiningMorphism};
use coring_core::exactla::{Field, Mat, Scalar};
use coring_core::frobenius::{trivial_morphism, CoringMorphism};
use coring_core::graded::{
    build_graded_coring, comodule_of_graded, BigradedBimodule, FiniteGroup, GSet, GSetRef,
    GradedAlgebra, GradedMorphism, GradedRef, GroupRef,
};

use crate::input::*;

#[derive(Debug, thiserror::Error)]
#[error("{location}: {message}")]
pub struct InputError {
    pub location: String,
    pub message: String,
}

fn err<T>(location: &str, message: impl Into<String>) -> Result<T, InputError> {
    Err(InputError {
        location: location.to_string(),
        message: message.into(),
    })
}

fn core<T>(location: &str, r: coring_core::Result<T>) -> Result<T, InputError> {
    r.or_else(|e| err(location, e.to_string()))
}

fn need<'a, T>(location: &str, v: &'a Option<T>, field: &str) -> Result<&'a T, InputError> {
    match v {
        Some(x) => Ok(x),
        None => err(location, format!("missing field `{field}`")),
    }
}

/// Name-indexed objects in declaration order.
#[derive(Debug)]
pub struct Named<T> {
    kind: &'static str,
    items: Vec<(String, T)>,
}

impl<T> Named<T> {
    fn new(kind: &'static str) -> Self {
        Named {
            kind,
            items: Vec::new(),
        }
    }

    fn insert(&mut self, location: &str, name: &str, v: T) -> Result<(), InputError> {
        if self.items.iter().any(|(n, _)| n == name) {
            return err(location, format!("duplicate {} name {name:?}", self.kind));
        }
        self.items.push((name.to_string(), v));
        Ok(())
    }

    pub fn get(&self, location: &str, name: &str) -> Result<&T, InputError> {
        match self.items.iter().find(|(n, _)| n == name) {
            Some((_, v)) => Ok(v),
            None => err(location, format!("unknown {} {name:?}", self.kind)),
        }
    }

    pub fn contains(&self, name: &str) -> bool {
        self.items.iter().any(|(n, _)| n == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &T)> {
        self.items.iter().map(|(n, v)| (n.as_str(), v))
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

pub enum Morphism {
    Coring(CoringMorphism),
    Graded(GradedMorphism),
    Entwining(EntwiningMorphism),
}

pub struct System {
    pub x: String,
    pub lambda: String,
    pub witness: Option<(Mat, Mat)>,
}

pub struct Env {
    pub field: Field,
    pub description: Option<String>,
    pub ground: AlgRef,
    pub groups: Named<GroupRef>,
    pub gsets: Named<GSetRef>,
    pub algebras: Named<AlgRef>,
    pub gradings: Named<GradedAlgebra>,
    pub bimodules: Named<Bimodule>,
    pub entwinings: Named<Entwining>,
    pub corings: Named<CoringRef>,
    /// Corings built from a grading, by coring name.
    pub graded: Named<GradedRef>,
    pub comodules: Named<Bicomodule>,
    pub graded_modules: Named<BigradedBimodule>,
    pub morphisms: Named<Morphism>,
    pub systems: Named<System>,
}

pub fn parse_scalar(field: Field, location: &str, s: &ScalarSpec) -> Result<Scalar, InputError> {
    match s {
        ScalarSpec::Int(v) => Ok(field.from_i64(*v)),
        ScalarSpec::Text(t) => core(location, field.parse(t.trim())),
    }
}

pub fn parse_matrix(field: Field, location: &str, m: &MatrixSpec) -> Result<Mat, InputError> {
    match m {
        MatrixSpec::Dense(rows) => {
            let cols = rows.first().map_or(0, Vec::len);
            let mut data = Vec::with_capacity(rows.len() * cols);
            for (i, row) in rows.iter().enumerate() {
                if row.len() != cols {
                    return err(
                        location,
                        format!("row {i} has {} entries, expected {cols}", row.len()),
                    );
                }
                for (j, s) in row.iter().enumerate() {
                    data.push(parse_scalar(field, &format!("{location}[{i}][{j}]"), s)?);
                }
            }
            core(location, Mat::new(field, rows.len(), cols, data))
        }
        MatrixSpec::Sparse {
            rows,
            cols,
            entries,
        } => {
            let mut out = Mat::zeros(field, *rows, *cols);
            for (k, (i, j, s)) in entries.iter().enumerate() {
                if i >= rows || j >= cols {
                    return err(
                        location,
                        format!("entry {k} at ({i}, {j}) is outside {rows}x{cols}"),
                    );
                }
                out.add_at(
                    *i,
                    *j,
                    &parse_scalar(field, &format!("{location}.entries[{k}]"), s)?,
                );
            }
            Ok(out)
        }
    }
}

fn parse_field(location: &str, f: &Option<FieldSpec>) -> Result<Field, InputError> {
    match f {
        None => Ok(Field::Rationals),
        Some(FieldSpec::Named(s)) if s == "Q" => Ok(Field::Rationals),
        Some(FieldSpec::Named(s)) => err(
            location,
            format!("unknown field {s:?}; use \"Q\" or {{\"Fp\": p}}"),
        ),
        Some(FieldSpec::Prime { fp }) => core(location, Field::prime(*fp)),
    }
}

fn shape(location: &str, m: &Mat, rows: usize, cols: usize) -> Result<(), InputError> {
    if m.shape() != (rows, cols) {
        return err(
            location,
            format!(
                "expected a {rows}x{cols} matrix, got {}x{}",
                m.rows(),
                m.cols()
            ),
        );
    }
    Ok(())
}

impl Env {
    pub fn build(doc: &InputDocument) -> Result<Env, InputError> {
        let field = parse_field("field", &doc.field)?;
        let ground = Arc::new(FinAlgebra::ground(field));
        let mut env = Env {
            field,
            description: doc.description.clone(),
            ground,
            groups: Named::new("group"),
            gsets: Named::new("G-set"),
            algebras: Named::new("algebra"),
            gradings: Named::new("grading"),
            bimodules: Named::new("bimodule"),
            entwinings: Named::new("entwining"),
            corings: Named::new("coring"),
            graded: Named::new("graded coring"),
            comodules: Named::new("comodule"),
            graded_modules: Named::new("graded module"),
            morphisms: Named::new("morphism"),
            systems: Named::new("system"),
        };
        for (i, g) in doc.groups.iter().enumerate() {
            let loc = format!("groups[{i}] {:?}", g.name);
            let group = match (&g.table, g.cyclic) {
                (Some(t), None) => core(&loc, FiniteGroup::new(t.clone()))?,
                (None, Some(n)) if n > 0 => FiniteGroup::cyclic(n),
                _ => return err(&loc, "give exactly one of `table` or a positive `cyclic`"),
            };
            env.groups.insert(&loc, &g.name, Arc::new(group))?;
        }
        for (i, x) in doc.gsets.iter().enumerate() {
            let loc = format!("gsets[{i}] {:?}", x.name);
            let group = env.groups.get(&loc, &x.group)?.clone();
            let set = match (&x.action, x.regular, x.points) {
                (Some(a), false, None) => core(&loc, GSet::new(group, a.clone()))?,
                (None, true, None) => GSet::regular(group),
                (None, false, Some(n)) => GSet::fixed_points(group, n),
                _ => return err(&loc, "give exactly one of `action`, `regular` or `points`"),
            };
            env.gsets.insert(&loc, &x.name, Arc::new(set))?;
        }
        for (i, a) in doc.algebras.iter().enumerate() {
            let loc = format!("algebras[{i}] {:?}", a.name);
            let alg = env.algebra(&loc, a)?;
            env.algebras.insert(&loc, &a.name, Arc::new(alg))?;
        }
        for (i, g) in doc.gradings.iter().enumerate() {
            let loc = format!("gradings[{i}] {:?}", g.name);
            let alg = env.algebras.get(&loc, &g.algebra)?.clone();
            let group = env.groups.get(&loc, &g.group)?.clone();
            let ga = match &g.degree {
                Some(d) => core(&loc, GradedAlgebra::new(alg, group, d.clone()))?,
                None => GradedAlgebra::concentrated(alg, group),
            };
            env.gradings.insert(&loc, &g.name, ga)?;
        }
        for (i, b) in doc.bimodules.iter().enumerate() {
            let loc = format!("bimodules[{i}] {:?}", b.name);
            let m = env.bimodule(&loc, b)?;
            env.bimodules.insert(&loc, &b.name, m)?;
        }
        for (i, c) in doc.corings.iter().enumerate() {
            let loc = format!("corings[{i}] {:?}", c.name);
            let coring = env.coring(&loc, c, doc)?;
            env.corings.insert(&loc, &c.name, coring)?;
        }
        for (i, e) in doc.entwinings.iter().enumerate() {
            if !env.entwinings.contains(&e.name) {
                let loc = format!("entwinings[{i}] {:?}", e.name);
                let ent = env.entwining(&loc, e)?;
                env.entwinings.insert(&loc, &e.name, ent)?;
            }
        }
        for (i, g) in doc.graded_modules.iter().enumerate() {
            let loc = format!("graded_modules[{i}] {:?}", g.name);
            let m = env.graded_module(&loc, g)?;
            env.graded_modules.insert(&loc, &g.name, m)?;
        }
        for (i, c) in doc.comodules.iter().enumerate() {
            let loc = format!("comodules[{i}] {:?}", c.name);
            let m = env.comodule(&loc, c)?;
            env.comodules.insert(&loc, &c.name, m)?;
        }
        for (i, m) in doc.morphisms.iter().enumerate() {
            let loc = format!("morphisms[{i}] {:?}", m.name);
            let mor = env.morphism(&loc, m)?;
            env.morphisms.insert(&loc, &m.name, mor)?;
        }
        for (i, s) in doc.systems.iter().enumerate() {
            let loc = format!("systems[{i}] {:?}", s.name);
            env.comodules.get(&loc, &s.x)?;
            env.comodules.get(&loc, &s.lambda)?;
            let witness = match (&s.psi_raw, &s.omega_raw) {
                (Some(p), Some(o)) => Some((
                    parse_matrix(env.field, &format!("{loc}.psi_raw"), p)?,
                    parse_matrix(env.field, &format!("{loc}.omega_raw"), o)?,
                )),
                (None, None) => None,
                _ => return err(&loc, "give both `psi_raw` and `omega_raw` or neither"),
            };
            let sys = System {
                x: s.x.clone(),
                lambda: s.lambda.clone(),
                witness,
            };
            env.systems.insert(&loc, &s.name, sys)?;
        }
        Ok(env)
    }

    fn mat(&self, location: &str, m: &Option<MatrixSpec>, name: &str) -> Result<Mat, InputError> {
        parse_matrix(
            self.field,
            &format!("{location}.{name}"),
            need(location, m, name)?,
        )
    }

    fn algebra_or_ground(
        &self,
        location: &str,
        name: &Option<String>,
    ) -> Result<AlgRef, InputError> {
        match name {
            Some(n) => Ok(self.algebras.get(location, n)?.clone()),
            None => Ok(self.ground.clone()),
        }
    }

    fn algebra(&self, loc: &str, a: &AlgebraSpec) -> Result<FinAlgebra, InputError> {
        let f = self.field;
        let given = [
            a.mult.is_some(),
            a.builtin.is_some(),
            a.group_algebra.is_some(),
            a.monic_quotient.is_some(),
        ];
        if given.iter().filter(|&&b| b).count() != 1 {
            return err(
                loc,
                "give exactly one of `mult`, `builtin`, `group_algebra` or `monic_quotient`",
            );
        }
        if let Some(b) = &a.builtin {
            return match b.as_str() {
                "ground" => Ok(FinAlgebra::ground(f)),
                "upper_triangular" => Ok(FinAlgebra::upper_triangular(f)),
                "dual_numbers" => Ok(FinAlgebra::dual_numbers(f)),
                other => err(loc, format!("unknown builtin algebra {other:?}")),
            };
        }
        if let Some(g) = &a.group_algebra {
            let group = self.groups.get(loc, g)?;
            return core(
                loc,
                FinAlgebra::group_algebra(a.name.clone(), f, group.table()),
            );
        }
        if let Some(c) = &a.monic_quotient {
            if c.is_empty() {
                return err(loc, "`monic_quotient` needs at least one coefficient");
            }
            let coeffs = c
                .iter()
                .enumerate()
                .map(|(k, s)| parse_scalar(f, &format!("{loc}.monic_quotient[{k}]"), s))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(FinAlgebra::monic_quotient(a.name.clone(), f, &coeffs));
        }
        let dim = *need(loc, &a.dim, "dim")?;
        let unit = need(loc, &a.unit, "unit")?
            .iter()
            .enumerate()
            .map(|(k, s)| parse_scalar(f, &format!("{loc}.unit[{k}]"), s))
            .collect::<Result<Vec<_>, _>>()?;
        if unit.len() != dim {
            return err(
                loc,
                format!("unit has {} entries, expected {dim}", unit.len()),
            );
        }
        let triples = need(loc, &a.mult, "mult")?
            .iter()
            .enumerate()
            .map(|(k, (i, j, l, s))| {
                Ok((*i, *j, *l, parse_scalar(f, &format!("{loc}.mult[{k}]"), s)?))
            })
            .collect::<Result<Vec<_>, InputError>>()?;
        core(
            loc,
            FinAlgebra::from_triples(a.name.clone(), f, dim, unit, &triples),
        )
    }

    fn bimodule(&self, loc: &str, b: &BimoduleSpec) -> Result<Bimodule, InputError> {
        if let Some(a) = &b.regular {
            return Ok(Bimodule::regular(self.algebras.get(loc, a)?));
        }
        let left = self.algebra_or_ground(loc, &b.left)?;
        let right = self.algebra_or_ground(loc, &b.right)?;
        let dim = *need(loc, &b.dim, "dim")?;
        let actions = |alg: &AlgRef,
                       given: &Option<Vec<MatrixSpec>>,
                       name: &str|
         -> Result<Vec<Mat>, InputError> {
            match given {
                None if alg.dim() == 1 => Ok(vec![Mat::identity(self.field, dim)]),
                None => err(loc, format!("missing field `{name}`")),
                Some(ms) => ms
                    .iter()
                    .enumerate()
                    .map(|(k, m)| {
                        let l = format!("{loc}.{name}[{k}]");
                        let mat = parse_matrix(self.field, &l, m)?;
                        shape(&l, &mat, dim, dim)?;
                        Ok(mat)
                    })
                    .collect(),
            }
        };
        let l = actions(&left, &b.left_action, "left_action")?;
        let r = actions(&right, &b.right_action, "right_action")?;
        core(loc, Bimodule::new(left, right, dim, l, r))
    }

    fn entwining(&self, loc: &str, e: &EntwiningSpec) -> Result<Entwining, InputError> {
        if let Some(g) = &e.graded {
            let ga = self.gradings.get(loc, g)?;
            let x = self.gsets.get(loc, need(loc, &e.gset, "gset")?)?;
            return core(loc, Entwining::graded(ga, x));
        }
        let a = self
            .algebras
            .get(loc, need(loc, &e.algebra, "algebra")?)?
            .clone();
        let c = self
            .corings
            .get(loc, need(loc, &e.coalgebra, "coalgebra")?)?
            .clone();
        match &e.psi {
            None => core(loc, Entwining::flip(a, c)),
            Some(p) => {
                let psi = parse_matrix(self.field, &format!("{loc}.psi"), p)?;
                core(loc, Entwining::new(a, c, psi))
            }
        }
    }

    fn coring(
        &mut self,
        loc: &str,
        c: &CoringSpec,
        doc: &InputDocument,
    ) -> Result<CoringRef, InputError> {
        let f = self.field;
        let coring = match c.kind.as_str() {
            "trivial" => {
                Coring::trivial(self.algebras.get(loc, need(loc, &c.algebra, "algebra")?)?)
            }
            "grouplike" => Coring::grouplike(f, *need(loc, &c.size, "size")?),
            "dual" => Coring::dual_of(self.algebras.get(loc, need(loc, &c.algebra, "algebra")?)?),
            "sweedler" => {
                let a = self.algebras.get(loc, need(loc, &c.algebra, "algebra")?)?;
                let b = self.algebras.get(loc, need(loc, &c.base, "base")?)?;
                let iota = self.mat(loc, &c.iota, "iota")?;
                shape(&format!("{loc}.iota"), &iota, a.dim(), b.dim())?;
                core(loc, Coring::sweedler(a, b, &iota))?
            }
            "graded" => {
                let ga = self.gradings.get(loc, need(loc, &c.grading, "grading")?)?;
                let x = self.gsets.get(loc, need(loc, &c.gset, "gset")?)?;
                let gc = Arc::new(core(loc, build_graded_coring(ga, x))?);
                let coring = gc.coring.clone();
                self.graded.insert(loc, &c.name, gc)?;
                return Ok(coring);
            }
            "entwining" => {
                let name = need(loc, &c.entwining, "entwining")?;
                if !self.entwinings.contains(name) {
                    let Some((i, spec)) = doc
                        .entwinings
                        .iter()
                        .enumerate()
                        .find(|(_, e)| &e.name == name)
                    else {
                        return err(loc, format!("unknown entwining {name:?}"));
                    };
                    let eloc = format!("entwinings[{i}] {name:?}");
                    let e = self.entwining(&eloc, spec)?;
                    self.entwinings.insert(&eloc, name, e)?;
                }
                core(loc, entwining_coring(self.entwinings.get(loc, name)?))?
            }
            "raw" => {
                let carrier = self
                    .bimodules
                    .get(loc, need(loc, &c.carrier, "carrier")?)?
                    .clone();
                let delta = self.mat(loc, &c.delta, "delta")?;
                let eps = self.mat(loc, &c.epsilon, "epsilon")?;
                core(loc, Coring::from_raw(c.name.clone(), carrier, &delta, eps))?
            }
            other => return err(loc, format!("unknown coring kind {other:?}")),
        };
        Ok(Arc::new(coring))
    }

    fn graded_module(
        &self,
        loc: &str,
        g: &GradedModuleSpec,
    ) -> Result<BigradedBimodule, InputError> {
        if let Some(c) = &g.hat {
            return Ok(BigradedBimodule::hat(self.graded.get(loc, c)?));
        }
        if let Some(c) = &g.free_right {
            return Ok(BigradedBimodule::free_right(
                self.graded.get(loc, c)?,
                self.shift(loc, g, c)?,
            ));
        }
        if let Some(c) = &g.free_left {
            return Ok(BigradedBimodule::free_left(
                self.graded.get(loc, c)?,
                self.shift(loc, g, c)?,
            ));
        }
        if let Some(parts) = &g.sum {
            let mut it = parts.iter();
            let first = it.next().ok_or_else(|| InputError {
                location: loc.into(),
                message: "`sum` is empty".into(),
            })?;
            let mut acc = self.graded_modules.get(loc, first)?.clone();
            for p in it {
                acc = core(loc, acc.direct_sum(self.graded_modules.get(loc, p)?))?;
            }
            return Ok(acc);
        }
        let left = self.graded.get(loc, need(loc, &g.left, "left")?)?.clone();
        let right = self.graded.get(loc, need(loc, &g.right, "right")?)?.clone();
        let carrier = self
            .bimodules
            .get(loc, need(loc, &g.carrier, "carrier")?)?
            .clone();
        let degrees = need(loc, &g.degrees, "degrees")?.clone();
        core(loc, BigradedBimodule::new(left, right, carrier, degrees))
    }

    fn shift(&self, loc: &str, g: &GradedModuleSpec, c: &str) -> Result<usize, InputError> {
        let x = g.shift.unwrap_or(0);
        if x >= self.graded.get(loc, c)?.set_len() {
            return err(loc, format!("shift {x} is outside the G-set"));
        }
        Ok(x)
    }

    fn coring_or_ground(&self, loc: &str, name: &Option<String>) -> Result<CoringRef, InputError> {
        match name {
            Some(n) => Ok(self.corings.get(loc, n)?.clone()),
            None => Ok(Arc::new(Coring::ground(self.field))),
        }
    }

    fn comodule(&self, loc: &str, c: &ComoduleSpec) -> Result<Bicomodule, InputError> {
        if let Some(r) = &c.regular {
            return Ok(Bicomodule::regular(self.corings.get(loc, r)?));
        }
        if let Some(g) = &c.graded {
            return core(loc, comodule_of_graded(self.graded_modules.get(loc, g)?));
        }
        let left = self.coring_or_ground(loc, &c.left)?;
        let right = self.coring_or_ground(loc, &c.right)?;
        let carrier = self
            .bimodules
            .get(loc, need(loc, &c.carrier, "carrier")?)?
            .clone();
        let id = Mat::identity(self.field, carrier.dim());
        let lambda = match (&c.left, &c.lambda) {
            (None, None) => id.clone(),
            _ => self.mat(loc, &c.lambda, "lambda")?,
        };
        let rho = match (&c.right, &c.rho) {
            (None, None) => id,
            _ => self.mat(loc, &c.rho, "rho")?,
        };
        core(
            loc,
            Bicomodule::from_raw(left, right, carrier, &lambda, &rho),
        )
    }

    fn morphism(&self, loc: &str, m: &MorphismSpec) -> Result<Morphism, InputError> {
        Ok(match m.kind.as_str() {
            "coring" => {
                let s = self.corings.get(loc, &m.source)?.clone();
                let t = self.corings.get(loc, &m.target)?.clone();
                let rho = self.mat(loc, &m.rho, "rho")?;
                let phi = self.mat(loc, &m.phi, "phi")?;
                Morphism::Coring(core(loc, CoringMorphism::new(s, t, rho, phi))?)
            }
            "algebra" => {
                let a = self.algebras.get(loc, &m.source)?;
                let b = self.algebras.get(loc, &m.target)?;
                let rho = self.mat(loc, &m.rho, "rho")?;
                shape(&format!("{loc}.rho"), &rho, b.dim(), a.dim())?;
                Morphism::Coring(core(loc, trivial_morphism(a, b, rho))?)
            }
            "graded" => {
                let source = self.graded.get(loc, &m.source)?.clone();
                let target = self.graded.get(loc, &m.target)?.clone();
                let f = need(loc, &m.group_map, "group_map")?.clone();
                let phi = need(loc, &m.set_map, "set_map")?.clone();
                let alpha = self.mat(loc, &m.alpha, "alpha")?;
                Morphism::Graded(GradedMorphism {
                    source,
                    target,
                    f,
                    phi,
                    alpha,
                })
            }
            "entwining" => {
                let source = self.entwinings.get(loc, &m.source)?.clone();
                let target = self.entwinings.get(loc, &m.target)?.clone();
                let alpha = self.mat(loc, &m.alpha, "alpha")?;
                let gamma = self.mat(loc, &m.gamma, "gamma")?;
                Morphism::Entwining(EntwiningMorphism {
                    source,
                    target,
                    alpha,
                    gamma,
                })
            }
            other => return err(loc, format!("unknown morphism kind {other:?}")),
        })
    }
}
