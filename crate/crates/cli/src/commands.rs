//! One function per subcommand. Each returns a result per object in
//! declaration order, or an input error (exit code 3).

use coring_core::algkernel::check_algebra;
use coring_core::coring::{
    check_bicomodule, check_coring, check_cotensor, check_counit_isos, coseparability,
    coseparability_report, cotensor, injectivity_splitting, is_cointegral, nat_space, Bicomodule,
    Coseparability, Splitting, SplittingBasis,
};
use coring_core::entwine::{check_entwining, check_entwining_morphism, entwined_frobenius_check};
use coring_core::exactla::Mat;
use coring_core::frobenius::{
    check_coring_morphism, frobenius_coring_check, frobenius_extension_check,
    search_frobenius_system, verify_frobenius_system, Budget, FrobeniusReport, FrobeniusSystem,
    Verdict,
};
use coring_core::graded::{
    check_graded_morphism, cohom_graded, graded_cointegral, tstar_frobenius_check,
    tstar_mirror_check, tstar_route_check, BigradedBimodule,
};
use coring_core::report::Status;
use coring_core::Error;

use crate::output::{ResultDoc, WitnessDoc};
use crate::resolve::{Env, InputError, Morphism, Named};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    CheckAlgebra,
    CheckCoring,
    Cotensor,
    NatSpace,
    Coseparable,
    Injective,
    FrobeniusPair,
    FrobeniusCoring,
    FrobeniusExtension,
    GradedBuild,
    GradedCohom,
    TstarCheck,
    EntwineCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::CheckAlgebra => "check-algebra",
            Command::CheckCoring => "check-coring",
            Command::Cotensor => "cotensor",
            Command::NatSpace => "nat-space",
            Command::Coseparable => "coseparable",
            Command::Injective => "injective",
            Command::FrobeniusPair => "frobenius-pair",
            Command::FrobeniusCoring => "frobenius-coring",
            Command::FrobeniusExtension => "frobenius-extension",
            Command::GradedBuild => "graded-build",
            Command::GradedCohom => "graded-cohom",
            Command::TstarCheck => "tstar-check",
            Command::EntwineCheck => "entwine-check",
        }
    }

    /// The statement each command decides.
    pub fn criterion(self) -> &'static str {
        match self {
            Command::CheckAlgebra => "associativity and unit of the structure constants",
            Command::CheckCoring => "bimodule axioms, coassociativity and counit of Δ",
            Command::Cotensor => "M□N = ker(ρ⊗N − M⊗λ) with its induced bicomodule structure",
            Command::NatSpace => "Nat(−□Λ, −□Λ') ≅ bicolinear maps Λ → Λ'",
            Command::Coseparable => "C is coseparable iff Δ has a bicolinear retraction (a cointegral)",
            Command::Injective => "a comodule is relatively injective iff its coaction splits colinearly",
            Command::FrobeniusPair => {
                "(−□X, −□Λ) is a Frobenius pair iff both adjunctions admit bicolinear unit/counit systems"
            }
            Command::FrobeniusCoring => {
                "C is Frobenius iff C ≅ its dual ring as bimodules; cross-checked by the forgetful Frobenius pair"
            }
            Command::FrobeniusExtension => {
                "induction along a coring morphism is Frobenius iff (−□X, −□Λ) is a Frobenius pair for the induced bicomodules"
            }
            Command::GradedBuild => "A⊗kX is a coring with cointegral δ(a⊗x⊗y) = [x = y]a",
            Command::GradedCohom => "the cohom M⊗̂H(N, A') carries a unique coaction making it left adjoint to −⊗̂N",
            Command::TstarCheck => {
                "T* is Frobenius iff every (T*(Â))_x' is f.g. projective and Â'⊗̂H(T*(Â), A) ≅ (T*)'(Â)"
            }
            Command::EntwineCheck => "entwining axioms through the coring A⊗C; induction through its coring morphism",
        }
    }
}

/// Core errors on input the parser accepted: shape and compatibility
/// problems are input errors, the rest are outcomes.
fn outcome(r: &mut ResultDoc, what: &str, e: Error) -> Result<(), InputError> {
    match e {
        Error::DimensionMismatch { .. }
        | Error::FieldMismatch(_)
        | Error::AlgebraMismatch(_)
        | Error::CoringMismatch(_)
        | Error::InvalidInput(_) => Err(InputError {
            location: format!("{} {:?}", what, r.object),
            message: e.to_string(),
        }),
        Error::NotApplicable(m) => {
            r.set_status(Status::Undecided);
            r.reason = Some(format!("not applicable: {m}"));
            Ok(())
        }
        Error::Precondition(m) | Error::InvalidStructure(m) => {
            r.set_status(Status::Fail);
            r.reason = Some(m);
            Ok(())
        }
    }
}

/// The named objects, or all of them when no names are given.
fn select<'a, T>(
    objs: &'a Named<T>,
    names: &[String],
    kind: &str,
) -> Result<Vec<(String, &'a T)>, InputError> {
    if names.is_empty() {
        if objs.is_empty() {
            return Err(InputError {
                location: "document".into(),
                message: format!("no {kind} declared"),
            });
        }
        return Ok(objs.iter().map(|(n, v)| (n.to_string(), v)).collect());
    }
    names
        .iter()
        .map(|n| Ok((n.clone(), objs.get("arguments", n)?)))
        .collect()
}

/// Exactly two names, or the first two declared objects.
fn pair<'a, T>(
    objs: &'a Named<T>,
    names: &[String],
    kind: &str,
) -> Result<[(String, &'a T); 2], InputError> {
    let chosen: Vec<String> = if names.is_empty() {
        objs.iter().take(2).map(|(n, _)| n.to_string()).collect()
    } else {
        names.to_vec()
    };
    if chosen.len() != 2 {
        return Err(InputError {
            location: "arguments".into(),
            message: format!("expected two {kind} names, got {}", chosen.len()),
        });
    }
    Ok([
        (chosen[0].clone(), objs.get("arguments", &chosen[0])?),
        (chosen[1].clone(), objs.get("arguments", &chosen[1])?),
    ])
}

fn witness_pair(r: &mut ResultDoc, label: &str, s: &FrobeniusSystem) -> Result<(), InputError> {
    let raw = s.psi_raw().and_then(|p| Ok((p, s.omega_raw()?)));
    match raw {
        Ok((p, o)) => {
            r.witnesses
                .push(WitnessDoc::matrix(format!("{label} psi_raw"), &p));
            r.witnesses
                .push(WitnessDoc::matrix(format!("{label} omega_raw"), &o));
            Ok(())
        }
        Err(e) => outcome(r, "witness", e),
    }
}

/// Verdict, reason and witnesses of a Frobenius search; the log of the
/// search is kept but only the verdict decides the status.
fn frobenius(r: &mut ResultDoc, rep: FrobeniusReport) -> Result<(), InputError> {
    r.log(&rep.checks);
    for item in rep
        .checks
        .items
        .iter()
        .filter(|i| i.name.ends_with("routes agree"))
    {
        r.worsen(if item.status == Status::Fail {
            Status::Fail
        } else {
            Status::Pass
        });
    }
    r.verdict = Some(rep.verdict.label().to_string());
    match rep.verdict {
        Verdict::Frobenius(pair) => {
            witness_pair(r, "forward", &pair.forward)?;
            witness_pair(r, "backward", &pair.backward)?;
        }
        Verdict::NotFrobenius(why) => {
            r.worsen(Status::Fail);
            r.reason = Some(why);
        }
        Verdict::Undecided(why) => {
            r.worsen(Status::Undecided);
            r.reason = Some(why);
        }
    }
    Ok(())
}

/// Runs `f` and folds a core error into the result.
fn attempt(
    r: &mut ResultDoc,
    what: &str,
    f: impl FnOnce(&mut ResultDoc) -> coring_core::Result<Result<(), InputError>>,
) -> Result<(), InputError> {
    match f(r) {
        Ok(inner) => inner,
        Err(e) => outcome(r, what, e),
    }
}

/// A pair `(X, Λ)` to decide, with an optional raw witness.
type Run<'a> = (String, &'a Bicomodule, &'a Bicomodule, Option<(Mat, Mat)>);

pub fn run(
    cmd: Command,
    env: &Env,
    names: &[String],
    budget: &Budget,
) -> Result<Vec<ResultDoc>, InputError> {
    let mut out = Vec::new();
    match cmd {
        Command::CheckAlgebra => {
            for (n, a) in select(&env.algebras, names, "algebras")? {
                let mut r = ResultDoc::new(n);
                r.value("dim", a.dim());
                r.absorb(&check_algebra(a));
                out.push(r);
            }
        }
        Command::CheckCoring => {
            for (n, c) in select(&env.corings, names, "corings")? {
                let mut r = ResultDoc::new(n);
                r.value("dim", c.dim());
                r.value("base dim", c.base().dim());
                r.absorb(&check_coring(c));
                out.push(r);
            }
        }
        Command::Cotensor => {
            let [(mn, m), (nn, n)] = pair(&env.comodules, names, "comodules")?;
            let mut r = ResultDoc::new(format!("{mn}□{nn}"));
            r.absorb(&check_bicomodule(m));
            r.absorb(&check_bicomodule(n));
            attempt(&mut r, "cotensor", |r| {
                let s = cotensor(m, n)?;
                r.value("dim", s.dim());
                r.value("tensor dim", s.chain.dim());
                r.absorb(&check_cotensor(&s));
                r.absorb(&check_counit_isos(m));
                r.absorb(&check_counit_isos(n));
                r.witnesses
                    .push(WitnessDoc::matrix("inclusion", &s.inclusion));
                Ok(Ok(()))
            })?;
            out.push(r);
        }
        Command::NatSpace => {
            let [(ln, l), (mn, m)] = pair(&env.comodules, names, "comodules")?;
            let mut r = ResultDoc::new(format!("Nat(−□{ln}, −□{mn})"));
            attempt(&mut r, "nat-space", |r| {
                let h = nat_space(l, m)?;
                r.value("dim", h.dim());
                for (i, b) in h.basis().iter().enumerate() {
                    r.witnesses
                        .push(WitnessDoc::matrix(format!("basis {i}"), b));
                }
                Ok(Ok(()))
            })?;
            out.push(r);
        }
        Command::Coseparable => {
            for (n, c) in select(&env.corings, names, "corings")? {
                let mut r = ResultDoc::new(n);
                attempt(&mut r, "coseparable", |r| {
                    match coseparability(c)? {
                        Coseparability::Yes {
                            retraction,
                            cointegral,
                        } => {
                            r.verdict = Some("Coseparable".into());
                            r.witnesses
                                .push(WitnessDoc::matrix("cointegral", &cointegral));
                            r.witnesses
                                .push(WitnessDoc::matrix("retraction", &retraction));
                        }
                        Coseparability::No => {
                            r.verdict = Some("NotCoseparable".into());
                            r.reason =
                                Some("the bicolinear retraction system is infeasible".into());
                        }
                    }
                    r.absorb(&coseparability_report(c));
                    Ok(Ok(()))
                })?;
                out.push(r);
            }
        }
        Command::Injective => {
            for (n, m) in select(&env.comodules, names, "comodules")? {
                let mut r = ResultDoc::new(n);
                r.absorb(&check_bicomodule(m));
                attempt(&mut r, "injective", |r| {
                    let (split, basis) = injectivity_splitting(m)?;
                    r.tags.push(
                        match basis {
                            SplittingBasis::FieldBase => "base is a field",
                            SplittingBasis::SeparableBase => "base algebra is separable",
                            SplittingBasis::CoseparableCoring => "coring is coseparable",
                        }
                        .into(),
                    );
                    match split {
                        Splitting::Yes { retraction } => {
                            r.verdict = Some("Injective".into());
                            r.witnesses
                                .push(WitnessDoc::matrix("retraction", &retraction));
                        }
                        Splitting::No => {
                            r.verdict = Some("NotInjective".into());
                            r.reason = Some("no colinear retraction of the coaction".into());
                            r.worsen(Status::Fail);
                        }
                    }
                    Ok(Ok(()))
                })?;
                out.push(r);
            }
        }
        Command::FrobeniusPair => {
            let use_systems = match names.first() {
                Some(first) => env.systems.contains(first),
                None => !env.systems.is_empty(),
            };
            let runs: Vec<Run> = if use_systems {
                select(&env.systems, names, "systems")?
                    .into_iter()
                    .map(|(n, s)| {
                        Ok((
                            n,
                            env.comodules.get("systems", &s.x)?,
                            env.comodules.get("systems", &s.lambda)?,
                            s.witness.clone(),
                        ))
                    })
                    .collect::<Result<_, InputError>>()?
            } else {
                let [(xn, x), (ln, l)] = pair(&env.comodules, names, "comodules")?;
                vec![(format!("({xn}, {ln})"), x, l, None)]
            };
            for (n, x, l, witness) in runs {
                let mut r = ResultDoc::new(n);
                r.absorb(&check_bicomodule(x));
                r.absorb(&check_bicomodule(l));
                attempt(&mut r, "frobenius-pair", |r| match witness {
                    Some((psi, omega)) => {
                        let s = FrobeniusSystem::from_raw(x, l, &psi, &omega)?;
                        r.absorb(&verify_frobenius_system(&s));
                        r.verdict = Some(
                            if r.state == Status::Pass {
                                "WitnessVerified"
                            } else {
                                "WitnessRejected"
                            }
                            .into(),
                        );
                        Ok(Ok(()))
                    }
                    None => Ok(frobenius(r, search_frobenius_system(x, l, budget)?)),
                })?;
                out.push(r);
            }
        }
        Command::FrobeniusCoring => {
            for (n, c) in select(&env.corings, names, "corings")? {
                let mut r = ResultDoc::new(n);
                r.absorb(&check_coring(c));
                if r.state == Status::Pass {
                    attempt(&mut r, "frobenius-coring", |r| {
                        Ok(frobenius(r, frobenius_coring_check(c, budget)?))
                    })?;
                }
                out.push(r);
            }
        }
        Command::FrobeniusExtension => {
            for (n, m) in select(&env.morphisms, names, "morphisms")? {
                let mut r = ResultDoc::new(n.clone());
                let m = match m {
                    Morphism::Coring(m) => m,
                    _ => {
                        return Err(InputError {
                            location: format!("morphism {n:?}"),
                            message: "frobenius-extension needs a coring or algebra morphism"
                                .into(),
                        })
                    }
                };
                r.absorb(&check_coring(&m.source));
                r.absorb(&check_coring(&m.target));
                r.absorb(&check_coring_morphism(m));
                if r.state == Status::Pass {
                    attempt(&mut r, "frobenius-extension", |r| {
                        Ok(frobenius(r, frobenius_extension_check(m, budget)?))
                    })?;
                }
                out.push(r);
            }
        }
        Command::GradedBuild => {
            for (n, gc) in select(&env.graded, names, "graded corings")? {
                let mut r = ResultDoc::new(n);
                r.value("dim", gc.coring.dim());
                r.value("|X|", gc.set_len());
                r.value("|G|", gc.algebra.group().order());
                r.absorb(&check_coring(&gc.coring));
                attempt(&mut r, "graded-build", |r| {
                    let delta = graded_cointegral(gc)?;
                    let ok = is_cointegral(&gc.coring, &delta)?;
                    let mut rep = coring_core::report::Report::new("cointegral");
                    rep.check(
                        "δ(a⊗x⊗y) = [x = y]a is a cointegral",
                        ok,
                        "cointegral equations fail",
                    );
                    r.absorb(&rep);
                    r.witnesses.push(WitnessDoc::matrix("cointegral", &delta));
                    Ok(Ok(()))
                })?;
                out.push(r);
            }
        }
        Command::GradedCohom => {
            let [(nn, n), (mn, m)] = pair(&env.graded_modules, names, "graded modules")?;
            let mut r = ResultDoc::new(format!("{mn}⊗̂H({nn})"));
            attempt(&mut r, "graded-cohom", |r| {
                let h = cohom_graded(n, m)?;
                r.value("dim", h.module.dim());
                r.value("coaction solution dim", h.solution_dim);
                r.value("components", component_values(&h.module));
                r.absorb(&h.report);
                r.witnesses.push(WitnessDoc::matrix("rho", &h.rho));
                Ok(Ok(()))
            })?;
            out.push(r);
        }
        Command::TstarCheck => {
            for (n, m) in select(&env.morphisms, names, "morphisms")? {
                let Morphism::Graded(m) = m else {
                    if names.is_empty() {
                        continue;
                    }
                    return Err(InputError {
                        location: format!("morphism {n:?}"),
                        message: "tstar-check needs a graded morphism".into(),
                    });
                };
                let mut r = ResultDoc::new(n);
                r.absorb(&check_graded_morphism(m));
                if r.state == Status::Pass {
                    attempt(&mut r, "tstar-check", |r| {
                        let hat = BigradedBimodule::hat(&m.source);
                        r.absorb(&tstar_route_check(m, &hat, budget.grid)?);
                        let mirror = tstar_mirror_check(m, budget)?;
                        r.value("mirror verdict", mirror.verdict.label());
                        Ok(frobenius(r, tstar_frobenius_check(m, budget)?))
                    })?;
                }
                out.push(r);
            }
        }
        Command::EntwineCheck => {
            let all = names.is_empty();
            for (n, e) in env.entwinings.iter() {
                if all || names.iter().any(|x| x == n) {
                    let mut r = ResultDoc::new(n);
                    r.value("dim", e.algebra.dim() * e.coalgebra.dim());
                    r.absorb(&check_entwining(e));
                    out.push(r);
                }
            }
            for (n, m) in env.morphisms.iter() {
                let Morphism::Entwining(m) = m else { continue };
                if all || names.iter().any(|x| x == n) {
                    let mut r = ResultDoc::new(n);
                    r.absorb(&check_entwining(&m.source));
                    r.absorb(&check_entwining(&m.target));
                    r.absorb(&check_entwining_morphism(m));
                    if r.state == Status::Pass {
                        attempt(&mut r, "entwine-check", |r| {
                            Ok(frobenius(r, entwined_frobenius_check(m, budget)?))
                        })?;
                    }
                    out.push(r);
                }
            }
            for x in names {
                if !out.iter().any(|r| &r.object == x) {
                    return Err(InputError {
                        location: "arguments".into(),
                        message: format!("unknown entwining or entwining morphism {x:?}"),
                    });
                }
            }
            if out.is_empty() {
                return Err(InputError {
                    location: "document".into(),
                    message: "no entwinings declared".into(),
                });
            }
        }
    }
    if cmd == Command::TstarCheck && out.is_empty() {
        return Err(InputError {
            location: "document".into(),
            message: "no graded morphisms declared".into(),
        });
    }
    Ok(out)
}

fn component_values(m: &BigradedBimodule) -> serde_json::Value {
    m.component_dims()
        .into_iter()
        .map(|((a, b), d)| serde_json::json!([a, b, d]))
        .collect::<Vec<_>>()
        .into()
}
