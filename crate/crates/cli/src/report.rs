//! Analysis report and its markdown and JSON renderings.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{EXIT_INTERNAL, EXIT_MISMATCH, EXIT_OK};
use crate::oracle::{Arbitration, Deviation};

/// How a reported fact was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Equality of canonical forms.
    Structural,
    /// Exact rational linear algebra.
    ExactLinearAlgebra,
    /// Floating-point evaluation at recorded sample points.
    NumericOracle,
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub label: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurvatureSummary {
    pub zero: bool,
    pub nonzero_components: usize,
    pub zero_provenance: Provenance,
    /// Rank of `X ↦ X^l R^k_{l,ij}` at each sample point.
    pub ranks: Vec<usize>,
    pub nullity: usize,
    pub nullity_provenance: Provenance,
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipRow {
    pub set: String,
    pub field: String,
    pub predicate: String,
    pub holds: bool,
    pub residual: Option<String>,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, Serialize)]
pub struct DerivationDims {
    pub dim: usize,
    pub inner: usize,
    pub outer: usize,
}

/// Semisimple iff nullity 0 and derived ideal whole.
#[derive(Clone, Debug, Serialize)]
pub struct SemisimplicityCriterion {
    pub semisimple: bool,
    pub nullity_zero: bool,
    pub derived_is_whole: bool,
    pub consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraSummary {
    pub set: String,
    pub dim: usize,
    pub names: Vec<String>,
    pub table: Vec<Vec<String>>,
    pub jacobi: bool,
    pub killing_determinant: String,
    pub semisimple: bool,
    pub simple: bool,
    pub derived_dim: usize,
    pub derived_is_whole: bool,
    pub center: Vec<String>,
    pub radical: Vec<String>,
    pub levi: Vec<String>,
    pub abelian_ideals_coordinate: Vec<Vec<String>>,
    pub derivations: DerivationDims,
    pub criterion: SemisimplicityCriterion,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyCheck {
    pub property: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubspaceResult {
    pub set: String,
    pub name: String,
    pub basis: Vec<String>,
    pub checks: Vec<PropertyCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DerivationResult {
    pub set: String,
    pub name: String,
    pub is_derivation: bool,
    pub is_inner: bool,
    pub expected_outer: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveResult {
    pub dictionary: String,
    pub conditions: Vec<String>,
    pub dim: usize,
    pub basis: Vec<Vec<String>>,
    pub expected_dim: Option<usize>,
    pub span_matches: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Discrepancy {
    pub location: String,
    pub reference: String,
    pub computed: String,
    pub arbitration: Arbitration,
    /// Listed among the documented discrepancies of the problem file.
    pub documented: bool,
    pub note: Option<String>,
}

impl Discrepancy {
    /// A documented discrepancy is tolerated only when the oracle sides
    /// with the computation.
    pub fn is_resolved(&self) -> bool {
        self.documented && self.arbitration.verdict == crate::oracle::Verdict::Computation
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub structural: bool,
    pub numeric: Deviation,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub name: String,
    pub dim: usize,
    pub seed: u64,
    pub oracle_points: usize,
    pub metric_kind: String,
    pub spray: Vec<String>,
    pub connection: Vec<Entry>,
    pub curvature: CurvatureSummary,
    pub identities: Vec<IdentityCheck>,
    pub membership: Vec<MembershipRow>,
    pub algebras: Vec<AlgebraSummary>,
    pub subspaces: Vec<SubspaceResult>,
    pub derivations: Vec<DerivationResult>,
    pub solves: Vec<SolveResult>,
    pub discrepancies: Vec<Discrepancy>,
    /// Failed claims: exit 2.
    pub mismatches: Vec<String>,
    /// Violated structural invariants: exit 3.
    pub violations: Vec<String>,
}

impl AnalysisReport {
    pub fn exit_code(&self) -> i32 {
        if !self.violations.is_empty() {
            EXIT_INTERNAL
        } else if !self.mismatches.is_empty()
            || self.discrepancies.iter().any(|d| !d.is_resolved())
        {
            EXIT_MISMATCH
        } else {
            EXIT_OK
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let yn = |b: bool| if b { "yes" } else { "no" };
        let _ = writeln!(s, "# Analysis: {}\n", self.name);
        let _ = writeln!(
            s,
            "dimension {}, {} metric; oracle seed {} with {} points\n",
            self.dim, self.metric_kind, self.seed, self.oracle_points
        );

        s.push_str("## Spray\n\n");
        for (k, g) in self.spray.iter().enumerate() {
            let _ = writeln!(s, "- G^{} = {}", k + 1, g);
        }
        s.push_str("\n## Connection (nonzero Γ^j_i)\n\n");
        for e in &self.connection {
            let _ = writeln!(s, "- {} = {}", e.label, e.value);
        }
        let c = &self.curvature;
        let _ = writeln!(
            s,
            "\n## Curvature\n\n- zero: {} ({} nonzero components; structural)\n- nullity: {} \
             (numeric rank per point: {:?})\n",
            yn(c.zero),
            c.nonzero_components,
            c.nullity,
            c.ranks
        );

        if !self.identities.is_empty() {
            s.push_str("## Structural identities\n\n```csv\nidentity,structural,max_rel_deviation\n");
            for i in &self.identities {
                let _ = writeln!(s, "{},{},{:e}", i.identity, i.structural, i.numeric.max_rel);
            }
            s.push_str("```\n\n");
        }

        if !self.membership.is_empty() {
            s.push_str("## Membership\n\n```csv\nset,field,predicate,holds,residual\n");
            for m in &self.membership {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    m.set,
                    m.field,
                    m.predicate,
                    m.holds,
                    m.residual.as_deref().map(csv_quote).unwrap_or_default()
                );
            }
            s.push_str("```\n\n");
        }

        for a in &self.algebras {
            let _ = writeln!(s, "## Algebra {}\n", a.set);
            s.push_str("```csv\n");
            s.push_str(&crate::table::render_csv(&a.names, &a.table));
            s.push_str("```\n\n");
            let _ = writeln!(s, "- dimension: {}", a.dim);
            let _ = writeln!(s, "- Jacobi identity: {}", yn(a.jacobi));
            let _ = writeln!(s, "- det κ: {}", a.killing_determinant);
            let _ = writeln!(s, "- semisimple: {}", yn(a.semisimple));
            let _ = writeln!(s, "- simple: {}", yn(a.simple));
            let _ = writeln!(s, "- derived ideal: dimension {} (whole: {})", a.derived_dim, yn(a.derived_is_whole));
            let _ = writeln!(s, "- center: {}", span(&a.center));
            let _ = writeln!(s, "- radical: {}", span(&a.radical));
            let _ = writeln!(s, "- Levi factor: {}", span(&a.levi));
            let ideals: Vec<String> = a.abelian_ideals_coordinate.iter().map(|b| span(b)).collect();
            let _ = writeln!(
                s,
                "- coordinate abelian ideals: {}",
                if ideals.is_empty() { "none".to_string() } else { ideals.join(", ") }
            );
            let _ = writeln!(
                s,
                "- derivations: {} ({} inner, {} outer)",
                a.derivations.dim, a.derivations.inner, a.derivations.outer
            );
            let k = &a.criterion;
            let _ = writeln!(
                s,
                "- semisimple ⇔ (nullity 0 and derived whole): {} ⇔ ({} and {}): {}\n",
                yn(k.semisimple),
                yn(k.nullity_zero),
                yn(k.derived_is_whole),
                if k.consistent { "consistent" } else { "INCONSISTENT" }
            );
        }

        if !self.subspaces.is_empty() {
            s.push_str("## Subspaces\n\n```csv\nset,name,basis,property,holds\n");
            for r in &self.subspaces {
                for c in &r.checks {
                    let _ = writeln!(s, "{},{},{},{},{}", r.set, r.name, csv_quote(&span(&r.basis)), c.property, c.holds);
                }
            }
            s.push_str("```\n\n");
        }

        if !self.derivations.is_empty() {
            s.push_str("## Derivations\n\n```csv\nset,name,derivation,inner\n");
            for d in &self.derivations {
                let _ = writeln!(s, "{},{},{},{}", d.set, d.name, d.is_derivation, d.is_inner);
            }
            s.push_str("```\n\n");
        }

        for r in &self.solves {
            let _ = writeln!(s, "## Solve over {} [{}]\n", r.dictionary, r.conditions.join(", "));
            let _ = writeln!(s, "dimension {}\n", r.dim);
            for (i, b) in r.basis.iter().enumerate() {
                let _ = writeln!(s, "{}. ({})", i + 1, b.join(", "));
            }
            s.push('\n');
        }

        s.push_str("## Discrepancies\n\n");
        if self.discrepancies.is_empty() {
            s.push_str("none\n\n");
        } else {
            s.push_str(
                "```csv\nlocation,reference,computed,oracle_verdict,reference_rel_dev,computed_rel_dev,documented\n",
            );
            for d in &self.discrepancies {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{:e},{:e},{}",
                    d.location,
                    csv_quote(&d.reference),
                    csv_quote(&d.computed),
                    d.arbitration.verdict,
                    d.arbitration.reference.max_rel,
                    d.arbitration.computed.max_rel,
                    d.documented
                );
            }
            s.push_str("```\n\n");
            for d in self.discrepancies.iter().filter(|d| d.note.is_some()) {
                let _ = writeln!(s, "- {}: {}", d.location, d.note.as_deref().unwrap_or_default());
            }
            s.push('\n');
        }

        s.push_str("## Verdict\n\n");
        for m in &self.mismatches {
            let _ = writeln!(s, "- mismatch: {m}");
        }
        for v in &self.violations {
            let _ = writeln!(s, "- invariant violation: {v}");
        }
        let _ = writeln!(s, "exit code {}", self.exit_code());
        s
    }
}

fn span(vectors: &[String]) -> String {
    if vectors.is_empty() {
        "0".into()
    } else {
        format!("span{{{}}}", vectors.join(", "))
    }
}

pub fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
