//! The `analyze` command.

use std::collections::BTreeMap;

use liespray::fields::{
    bracket_tm, in_ag, in_agamma, in_as, in_nullity, is_horizontal, lie_derivative_oneform,
    nullity_rank_numeric, solve_in_span, BaseField, Condition, MembershipVerdict,
};
use liespray::geom::{
    connection_form, fn_bracket, identity, liouville, nijenhuis, projectors, tangent_structure,
    Geometry, MetricKind, VectorOneForm, VectorTwoForm,
};
use liespray::liealg::{
    center, classify_subalgebra, derivations, derived_subalgebra, find_abelian_ideals_coordinate,
    format_combination, ideal_check, abelian_ideal_check, is_derivation, is_semisimple, is_simple,
    is_solvable, killing_form, levi_decomposition, radical, verify_levi, LeviResult, SimpleType,
    StructureConstants, Subspace,
};
use liespray::linalg::Matrix;
use liespray::symexpr::TermKey;
use liespray::{int, rat, CanonicalExpr, Rational};
use num_traits::Zero;

use crate::error::CliError;
use crate::oracle::{self, Arbitration, Deviation, Point};
use crate::problem::{Predicate, Problem, SolveCondition, SubspaceProperty};
use crate::report::*;
use crate::table::{cells, structure_constants};

#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    pub seed: u64,
    pub points: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            seed: oracle::DEFAULT_SEED,
            points: oracle::DEFAULT_POINTS,
        }
    }
}

/// Runs every analysis requested by the problem file.
pub fn analyze(problem: &Problem, cfg: OracleConfig) -> Result<AnalysisReport, CliError> {
    let g = &problem.geometry;
    let n = problem.dim();
    let points = oracle::sample_points(n, cfg.points, cfg.seed);
    let mut mismatches = Vec::new();
    let mut violations = Vec::new();

    let spray: Vec<String> = (0..n).map(|k| g.spray.g(k).to_string()).collect();
    let mut connection = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let e = g.connection.gamma(j, i);
            if !e.is_zero() {
                connection.push(Entry {
                    label: format!("Γ^{}_{}", j + 1, i + 1),
                    value: e.to_string(),
                });
            }
        }
    }

    let curvature = curvature_summary(g, &points)?;
    let expect = &problem.file.analyses.geometry;
    if let Some(z) = expect.curvature_zero {
        if z != curvature.zero {
            mismatches.push(format!("curvature zero: expected {z}, computed {}", curvature.zero));
        }
    }
    if let Some(k) = expect.nullity {
        if k != curvature.nullity {
            mismatches.push(format!("curvature nullity: expected {k}, computed {}", curvature.nullity));
        }
    }

    let identities = identity_checks(g, &points)?;
    for i in identities.iter().filter(|i| !i.structural) {
        violations.push(format!("identity {} fails structurally", i.identity));
    }

    let mut membership = Vec::new();
    for (set, preds) in problem.file.analyses.membership.iter() {
        for (name, field) in problem.set_names(set)?.iter().zip(problem.set_fields(set)?) {
            for &p in preds {
                let v = membership_verdict(g, &field, p);
                if !v.holds {
                    mismatches.push(format!("{name} in {set} fails {}", p.label()));
                }
                membership.push(MembershipRow {
                    set: set.clone(),
                    field: name.clone(),
                    predicate: p.label().into(),
                    holds: v.holds,
                    residual: v.residual.map(|r| r.to_string()),
                    provenance: Provenance::Structural,
                });
            }
        }
    }

    let mut algebra_sets: Vec<String> = problem.file.analyses.algebra.iter().map(|a| a.set.clone()).collect();
    for (s, _) in problem.file.expected_tables.iter() {
        if !algebra_sets.contains(s) {
            algebra_sets.push(s.clone());
        }
    }
    let mut constants = BTreeMap::new();
    for set in &algebra_sets {
        constants.insert(set.clone(), structure_constants(problem, set)?);
    }

    let mut algebras = Vec::new();
    for req in &problem.file.analyses.algebra {
        let sc = &constants[&req.set];
        let a = algebra_summary(&req.set, sc, curvature.nullity, &mut violations);
        let e = &req.expect;
        let mut claim = |what: &str, expected: Option<bool>, got: bool| {
            if let Some(x) = expected {
                if x != got {
                    mismatches.push(format!("{}: {what} expected {x}, computed {got}", req.set));
                }
            }
        };
        claim("semisimple", e.semisimple, a.semisimple);
        claim("simple", e.simple, a.simple);
        claim("derived ideal is whole", e.derived_is_whole, a.derived_is_whole);
        if let Some(d) = e.radical_dim {
            if d != a.radical.len() {
                mismatches.push(format!("{}: radical dimension expected {d}, computed {}", req.set, a.radical.len()));
            }
        }
        if let Some(d) = e.outer_derivations {
            if d != a.derivations.outer {
                mismatches.push(format!("{}: outer derivations expected {d}, computed {}", req.set, a.derivations.outer));
            }
        }
        if let Some(d) = e.outer_derivations_at_least {
            if a.derivations.outer < d {
                mismatches.push(format!("{}: outer derivations expected ≥ {d}, computed {}", req.set, a.derivations.outer));
            }
        }
        if !a.criterion.consistent {
            mismatches.push(format!("{}: semisimplicity criterion inconsistent", req.set));
        }
        algebras.push(a);
    }

    let mut subspaces = Vec::new();
    for claim in &problem.file.analyses.subspaces {
        let sc = match constants.get(&claim.set) {
            Some(sc) => sc.clone(),
            None => structure_constants(problem, &claim.set)?,
        };
        let vectors = claim
            .span
            .iter()
            .map(|s| problem.combination(&claim.set, s, &format!("subspace {}", claim.name)))
            .collect::<Result<Vec<_>, _>>()?;
        let sub = Subspace::span(sc.dim(), &vectors);
        let checks: Vec<PropertyCheck> = claim
            .properties
            .iter()
            .map(|&p| PropertyCheck {
                property: p.label().into(),
                holds: subspace_property(&sc, &sub, p),
            })
            .collect();
        for c in checks.iter().filter(|c| !c.holds) {
            mismatches.push(format!("{} in {}: not {}", claim.name, claim.set, c.property));
        }
        subspaces.push(SubspaceResult {
            set: claim.set.clone(),
            name: claim.name.clone(),
            basis: sub.basis().iter().map(|v| format_combination(v, sc.names())).collect(),
            checks,
        });
    }

    let mut derivation_results = Vec::new();
    for claim in &problem.file.analyses.derivations {
        let sc = match constants.get(&claim.set) {
            Some(sc) => sc.clone(),
            None => structure_constants(problem, &claim.set)?,
        };
        let m = sc.dim();
        let mut d = Matrix::<Rational>::zeros(m, m);
        for (gen, image) in claim.images.iter() {
            let col = sc
                .names()
                .iter()
                .position(|n| n == gen)
                .ok_or_else(|| CliError::Input(format!("derivation {}: unknown generator `{gen}`", claim.name)))?;
            let v = problem.combination(&claim.set, image, &format!("derivation {}", claim.name))?;
            for (row, x) in v.into_iter().enumerate() {
                d[(row, col)] = x;
            }
        }
        let ok = is_derivation(&sc, &d);
        let inner = derivations(&sc).is_inner(&d);
        if !ok {
            mismatches.push(format!("{}: not a derivation", claim.name));
        }
        if let Some(outer) = claim.outer {
            if outer == inner {
                mismatches.push(format!("{}: expected outer = {outer}", claim.name));
            }
        }
        derivation_results.push(DerivationResult {
            set: claim.set.clone(),
            name: claim.name.clone(),
            is_derivation: ok,
            is_inner: inner,
            expected_outer: claim.outer,
        });
    }

    let mut solves = Vec::new();
    for req in &problem.file.analyses.solve {
        let r = run_solve(problem, &req.dictionary, &req.conditions)?;
        let mut result = r;
        result.expected_dim = req.expect_dim;
        if let Some(d) = req.expect_dim {
            if d != result.dim {
                mismatches.push(format!("solve over {}: expected dimension {d}, computed {}", req.dictionary, result.dim));
            }
        }
        if let Some(target) = &req.expect_span_of {
            let sol = solve_fields(problem, &req.dictionary, &req.conditions)?;
            let same = same_span(&sol, &problem.set_fields(target)?);
            result.span_matches = Some(same);
            if !same {
                mismatches.push(format!("solve over {}: solution space differs from span of {target}", req.dictionary));
            }
        }
        solves.push(result);
    }

    let mut discrepancies = reference_discrepancies(problem, &points, cfg.seed)?;
    for set in &algebra_sets {
        if let Some(rows) = problem.file.expected_tables.get(set) {
            discrepancies.extend(table_discrepancies(problem, set, &constants[set], rows, &points, cfg.seed)?);
        }
    }
    for d in discrepancies.iter_mut() {
        if let Some(k) = problem.file.known_discrepancies.iter().find(|k| k.location == d.location) {
            d.documented = true;
            d.note = Some(k.note.clone());
        }
    }
    for k in &problem.file.known_discrepancies {
        if !discrepancies.iter().any(|d| d.location == k.location) {
            mismatches.push(format!("documented discrepancy `{}` was not observed", k.location));
        }
    }

    Ok(AnalysisReport {
        name: problem.name.clone(),
        dim: n,
        seed: cfg.seed,
        oracle_points: cfg.points,
        metric_kind: match g.metric.kind() {
            MetricKind::Diagonal => "diagonal".into(),
            MetricKind::General => "general".into(),
        },
        spray,
        connection,
        curvature,
        identities,
        membership,
        algebras,
        subspaces,
        derivations: derivation_results,
        solves,
        discrepancies,
        mismatches,
        violations,
    })
}

fn curvature_summary(g: &Geometry, points: &[Point]) -> Result<CurvatureSummary, CliError> {
    let n = g.dim();
    let mut nonzero = 0;
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if !g.curvature.r(k, i, j).is_zero() {
                    nonzero += 1;
                }
            }
        }
    }
    let ranks = nullity_rank_numeric(&g.curvature, points)
        .map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(CurvatureSummary {
        zero: g.curvature.is_zero(),
        nonzero_components: nonzero,
        zero_provenance: Provenance::Structural,
        nullity: ranks.min_nullity(),
        ranks: ranks.ranks,
        nullity_provenance: Provenance::NumericOracle,
    })
}

pub fn membership_verdict(g: &Geometry, x: &BaseField, p: Predicate) -> MembershipVerdict {
    match p {
        Predicate::SpraySymmetry => in_as(x, &g.spray),
        Predicate::ConnectionSymmetry => in_agamma(x, &g.connection),
        Predicate::Isometry => in_ag(x, &g.metric, &g.spray),
        Predicate::Horizontal => is_horizontal(x, &g.connection),
        Predicate::CurvatureNullity => in_nullity(x, &g.curvature),
    }
}

/// The structural identities of the pipeline, each compared exactly and at
/// the sample points.
pub fn identity_checks(g: &Geometry, points: &[Point]) -> Result<Vec<IdentityCheck>, CliError> {
    let n = g.dim();
    let (h, v) = projectors(&g.connection);
    let gamma = connection_form(&g.connection);
    let j = tangent_structure(n);
    let s = g.spray.as_field();
    let c = liouville(n);
    let r = g.curvature.as_two_form();
    let half_hh = nijenhuis(&h);
    let eighth_gg = fn_bracket(&gamma, &gamma).scale(&rat(1, 8));
    let js = lie_derivative_oneform(&s, &j).scale(&int(-1));
    let cj = lie_derivative_oneform(&c, &j);
    let cs = bracket_tm(&c, &s);
    let id = identity(n);

    let two = |name: &str, a: &VectorTwoForm, b: &VectorTwoForm| -> Result<IdentityCheck, CliError> {
        let mut d = Deviation::default();
        for p in points {
            d.extend(&oracle::eval_all(a.entries(), p)?, &oracle::eval_all(b.entries(), p)?);
        }
        Ok(IdentityCheck {
            identity: name.into(),
            structural: a == b,
            numeric: d,
        })
    };
    let one = |name: &str, a: &VectorOneForm, b: &VectorOneForm| -> Result<IdentityCheck, CliError> {
        let mut d = Deviation::default();
        for p in points {
            d.extend(&oracle::eval_all(a.entries(), p)?, &oracle::eval_all(b.entries(), p)?);
        }
        Ok(IdentityCheck {
            identity: name.into(),
            structural: a == b,
            numeric: d,
        })
    };
    let mut cs_dev = Deviation::default();
    for p in points {
        cs_dev.extend(&oracle::eval_all(cs.components(), p)?, &oracle::eval_all(s.components(), p)?);
    }
    Ok(vec![
        two("R = 1/2 [h,h]", &r, &half_hh)?,
        two("1/2 [h,h] = 1/8 [Gamma,Gamma]", &half_hh, &eighth_gg)?,
        one("[J,S] = Gamma", &js, &gamma)?,
        one("[C,J] = -J", &cj, &j.scale(&int(-1)))?,
        IdentityCheck {
            identity: "[C,S] = S".into(),
            structural: cs == s,
            numeric: cs_dev,
        },
        one("h^2 = h", &h.compose(&h), &h)?,
        one("h + v = I", &h.add(&v), &id)?,
        one("Gamma^2 = I", &gamma.compose(&gamma), &id)?,
    ])
}

pub fn algebra_summary(
    set: &str,
    sc: &StructureConstants,
    nullity: usize,
    violations: &mut Vec<String>,
) -> AlgebraSummary {
    let names = sc.names().to_vec();
    let fmt = |s: &Subspace| -> Vec<String> { s.basis().iter().map(|v| format_combination(v, &names)).collect() };
    let jacobi = sc.jacobi_check();
    if let Some(v) = &jacobi {
        violations.push(format!("{set}: Jacobi identity fails at ({}, {}, {})", names[v.i], names[v.j], names[v.k]));
    }
    let kf = killing_form(sc);
    if !kf.is_ad_invariant(sc) {
        violations.push(format!("{set}: Killing form is not ad-invariant"));
    }
    let derived = derived_subalgebra(sc);
    let rad = radical(sc);
    if !ideal_check(sc, &rad) || !is_solvable(sc, &rad) {
        violations.push(format!("{set}: radical is not a solvable ideal"));
    }
    let levi = match levi_decomposition(sc) {
        Ok(r) => fmt(&r.levi),
        Err(e) => {
            violations.push(format!("{set}: {e}"));
            vec![]
        }
    };
    let ideals = find_abelian_ideals_coordinate(sc)
        .map(|v| v.iter().map(&fmt).collect())
        .unwrap_or_default();
    let der = derivations(sc);
    let semisimple = is_semisimple(sc);
    let derived_is_whole = derived.is_whole();
    AlgebraSummary {
        set: set.into(),
        dim: sc.dim(),
        table: cells(sc),
        jacobi: jacobi.is_none(),
        killing_determinant: kf.determinant().to_string(),
        semisimple,
        simple: is_simple(sc),
        derived_dim: derived.dim(),
        derived_is_whole,
        center: fmt(&center(sc)),
        radical: fmt(&rad),
        levi,
        abelian_ideals_coordinate: ideals,
        derivations: DerivationDims {
            dim: der.dim(),
            inner: der.inner_dim(),
            outer: der.outer_dim(),
        },
        criterion: SemisimplicityCriterion {
            semisimple,
            nullity_zero: nullity == 0,
            derived_is_whole,
            consistent: semisimple == (nullity == 0 && derived_is_whole),
        },
        names,
        provenance: Provenance::ExactLinearAlgebra,
    }
}

pub fn subspace_property(sc: &StructureConstants, sub: &Subspace, p: SubspaceProperty) -> bool {
    match p {
        SubspaceProperty::Subalgebra => sc.restrict(sub).is_ok(),
        SubspaceProperty::Ideal => ideal_check(sc, sub),
        SubspaceProperty::AbelianIdeal => abelian_ideal_check(sc, sub),
        SubspaceProperty::Solvable => sc.restrict(sub).is_ok() && is_solvable(sc, sub),
        SubspaceProperty::Radical => radical(sc) == *sub,
        SubspaceProperty::LeviComplement => verify_levi(
            sc,
            &LeviResult {
                radical: radical(sc),
                levi: sub.clone(),
            },
        )
        .is_ok(),
        SubspaceProperty::Sl2Type => classify_subalgebra(sc, sub) == Ok(SimpleType::Sl2),
        SubspaceProperty::So3Type => classify_subalgebra(sc, sub) == Ok(SimpleType::So3),
        SubspaceProperty::Simple => sc.restrict(sub).map(|r| is_simple(&r)).unwrap_or(false),
    }
}

fn conditions(cs: &[SolveCondition]) -> Vec<Condition> {
    cs.iter()
        .map(|c| match c {
            SolveCondition::SpraySymmetry => Condition::SpraySymmetry,
            SolveCondition::Isometry => Condition::Isometry,
            SolveCondition::Horizontal => Condition::Horizontality,
        })
        .collect()
}

fn solve_fields(problem: &Problem, dict: &str, cs: &[SolveCondition]) -> Result<Vec<BaseField>, CliError> {
    let fields = problem.set_fields(dict)?;
    let sol = solve_in_span(&fields, &conditions(cs), &problem.geometry)
        .map_err(|e| CliError::input(&format!("solve over `{dict}`"), e))?;
    Ok(sol.fields)
}

pub fn run_solve(problem: &Problem, dict: &str, cs: &[SolveCondition]) -> Result<SolveResult, CliError> {
    let fields = solve_fields(problem, dict, cs)?;
    Ok(SolveResult {
        dictionary: dict.into(),
        conditions: cs
            .iter()
            .map(|c| match c {
                SolveCondition::SpraySymmetry => "spray-symmetry",
                SolveCondition::Isometry => "isometry",
                SolveCondition::Horizontal => "horizontal",
            })
            .map(String::from)
            .collect(),
        dim: fields.len(),
        basis: fields
            .iter()
            .map(|f| f.components().iter().map(ToString::to_string).collect())
            .collect(),
        expected_dim: None,
        span_matches: None,
    })
}

/// Rank of a list of base fields over ℚ, by coefficient matching.
pub fn field_rank(fields: &[BaseField]) -> usize {
    let m = fields.len();
    let mut rows: BTreeMap<(usize, TermKey), Vec<Rational>> = BTreeMap::new();
    for (col, f) in fields.iter().enumerate() {
        for (slot, e) in f.components().iter().enumerate() {
            for (k, c) in e.terms() {
                rows.entry((slot, k.clone())).or_insert_with(|| vec![Rational::zero(); m])[col] = c.clone();
            }
        }
    }
    Matrix::from_rows(rows.into_values().collect(), m).rank()
}

pub fn same_span(a: &[BaseField], b: &[BaseField]) -> bool {
    let joint: Vec<BaseField> = a.iter().chain(b).cloned().collect();
    let r = field_rank(&joint);
    r == field_rank(a) && r == field_rank(b)
}

fn arbitrate_exprs(
    points: &[Point],
    seed: u64,
    oracle_fn: impl Fn(&Point) -> Result<Vec<f64>, CliError>,
    computed: &[CanonicalExpr],
    reference: &[CanonicalExpr],
) -> Result<Arbitration, CliError> {
    Arbitration::run(
        points,
        seed,
        oracle_fn,
        |p| oracle::eval_all(computed, p),
        |p| oracle::eval_all(reference, p),
    )
}

fn join(exprs: &[CanonicalExpr]) -> String {
    exprs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn reference_discrepancies(problem: &Problem, points: &[Point], seed: u64) -> Result<Vec<Discrepancy>, CliError> {
    let g = &problem.geometry;
    let n = problem.dim();
    let reference = &problem.file.reference;
    let mut out = Vec::new();
    let mut push = |location: String, r: Vec<CanonicalExpr>, c: Vec<CanonicalExpr>, a: Arbitration| {
        out.push(Discrepancy {
            location,
            reference: join(&r),
            computed: join(&c),
            arbitration: a,
            documented: false,
            note: None,
        });
    };

    if let Some(sp) = &reference.spray {
        if sp.len() != n {
            return Err(CliError::Input(format!("reference spray needs {n} entries")));
        }
        for (k, src) in sp.iter().enumerate() {
            let r = problem.expr(src, &format!("reference spray {}", k + 1))?;
            let c = g.spray.g(k).clone();
            if r != c {
                let a = arbitrate_exprs(points, seed, |p| Ok(vec![oracle::spray_numeric(&g.metric, p)?[k]]), &[c.clone()], &[r.clone()])?;
                push(format!("spray {}", k + 1), vec![r], vec![c], a);
            }
        }
    }

    if let Some(conn) = &reference.connection {
        let mut given = vec![vec![CanonicalExpr::zero(); n]; n];
        for (key, src) in conn.iter() {
            let (j, i) = parse_pair(key, n).ok_or_else(|| CliError::Input(format!("bad connection key `{key}`")))?;
            given[j][i] = problem.expr(src, &format!("reference connection {key}"))?;
        }
        for (j, row) in given.iter().enumerate() {
            for (i, r) in row.iter().enumerate() {
                let c = g.connection.gamma(j, i).clone();
                if *r != c {
                    let a = arbitrate_exprs(
                        points,
                        seed,
                        |p| Ok(vec![oracle::connection_numeric(&g.metric, p)?[j][i]]),
                        &[c.clone()],
                        &[r.clone()],
                    )?;
                    push(format!("connection {},{}", j + 1, i + 1), vec![r.clone()], vec![c], a);
                }
            }
        }
    }

    if let Some(hs) = &reference.horizontal {
        if hs.len() != n || hs.iter().any(|v| v.len() != 2 * n) {
            return Err(CliError::Input(format!("reference horizontal needs {n} vectors of {} components", 2 * n)));
        }
        let (h, _) = projectors(&g.connection);
        for (i, v) in hs.iter().enumerate() {
            let r = v
                .iter()
                .enumerate()
                .map(|(s, src)| problem.expr(src, &format!("reference horizontal {}[{}]", i + 1, s + 1)))
                .collect::<Result<Vec<_>, _>>()?;
            let c = h.column(i).components().to_vec();
            if r != c {
                let a = arbitrate_exprs(points, seed, |p| Ok(oracle::horizontal_numeric(&g.metric, p)?[i].clone()), &c, &r)?;
                push(format!("horizontal {}", i + 1), r, c, a);
            }
        }
    }
    Ok(out)
}

fn parse_pair(key: &str, n: usize) -> Option<(usize, usize)> {
    let (a, b) = key.split_once(',')?;
    let (a, b): (usize, usize) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
    (1..=n).contains(&a).then_some(())?;
    (1..=n).contains(&b).then_some((a - 1, b - 1))
}

/// Cells of an expected table that differ from the computed constants, each
/// arbitrated against a finite-difference bracket of the generators.
pub fn table_discrepancies(
    problem: &Problem,
    set: &str,
    sc: &StructureConstants,
    rows: &[Vec<String>],
    points: &[Point],
    seed: u64,
) -> Result<Vec<Discrepancy>, CliError> {
    let fields = problem.set_fields(set)?;
    let names = sc.names();
    let mut out = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            let what = format!("expected table {set} [{}, {}]", names[i], names[j]);
            let expected = problem.combination(set, cell, &what)?;
            let computed = sc.bracket_basis(i, j).to_vec();
            if expected == computed {
                continue;
            }
            let a = Arbitration::run(
                points,
                seed,
                |p| oracle::bracket_numeric(&fields[i], &fields[j], p),
                |p| oracle::combination_numeric(&fields, &computed, p),
                |p| oracle::combination_numeric(&fields, &expected, p),
            )?;
            out.push(Discrepancy {
                location: format!("table {set} {} {}", names[i], names[j]),
                reference: format_combination(&expected, names),
                computed: format_combination(&computed, names),
                arbitration: a,
                documented: false,
                note: None,
            });
        }
    }
    Ok(out)
}
