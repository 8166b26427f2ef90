//! Problem files: JSON documents describing a metric, candidate fields,
//! generator sets and the claims to verify.

use std::fmt;
use std::path::Path;

use liespray::fields::BaseField;
use liespray::geom::{Geometry, MetricSpec};
use liespray::symexpr::{canonicalize, parse_with, ExprError};
use liespray::{CanonicalExpr, Rational, Var};
use num_traits::Zero;
use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer};

use crate::error::CliError;

/// JSON object that rejects duplicate keys and keeps insertion order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct UniqueMap<V>(pub Vec<(String, V)>);

impl<V> UniqueMap<V> {
    pub fn get(&self, key: &str) -> Option<&V> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &V)> {
        self.0.iter().map(|(k, v)| (k, v))
    }
}

impl<'de, V: Deserialize<'de>> Deserialize<'de> for UniqueMap<V> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V2<V>(std::marker::PhantomData<V>);
        impl<'de, V: Deserialize<'de>> Visitor<'de> for V2<V> {
            type Value = UniqueMap<V>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object with unique keys")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
                let mut out: Vec<(String, V)> = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, V>()? {
                    if out.iter().any(|(e, _)| *e == k) {
                        return Err(serde::de::Error::custom(format!("duplicate name `{k}`")));
                    }
                    out.push((k, v));
                }
                Ok(UniqueMap(out))
            }
        }
        d.deserialize_map(V2(std::marker::PhantomData))
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default)]
    pub name: Option<String>,
    pub dim: usize,
    /// Optional aliases for `x1..xn`.
    #[serde(default)]
    pub coordinates: Option<Vec<String>>,
    pub metric: MetricBlock,
    #[serde(default)]
    pub fields: UniqueMap<Vec<String>>,
    #[serde(default)]
    pub sets: UniqueMap<Vec<String>>,
    #[serde(default)]
    pub analyses: Analyses,
    #[serde(default)]
    pub reference: Reference,
    #[serde(default)]
    pub expected_tables: UniqueMap<Vec<Vec<String>>>,
    #[serde(default)]
    pub known_discrepancies: Vec<KnownDiscrepancy>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricBlock {
    pub kind: Kind,
    /// Full `n × n` matrix of expressions.
    pub entries: Vec<Vec<String>>,
    #[serde(default)]
    pub inverse: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Diagonal,
    General,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq, PartialOrd, Ord)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    SpraySymmetry,
    ConnectionSymmetry,
    Isometry,
    Horizontal,
    CurvatureNullity,
}

impl Predicate {
    pub fn label(self) -> &'static str {
        match self {
            Predicate::SpraySymmetry => "spray-symmetry",
            Predicate::ConnectionSymmetry => "connection-symmetry",
            Predicate::Isometry => "isometry",
            Predicate::Horizontal => "horizontal",
            Predicate::CurvatureNullity => "curvature-nullity",
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Analyses {
    #[serde(default)]
    pub geometry: GeometryExpect,
    /// Set name → predicates every member must satisfy.
    #[serde(default)]
    pub membership: UniqueMap<Vec<Predicate>>,
    #[serde(default)]
    pub algebra: Vec<AlgebraRequest>,
    #[serde(default)]
    pub subspaces: Vec<SubspaceClaim>,
    #[serde(default)]
    pub derivations: Vec<DerivationClaim>,
    #[serde(default)]
    pub solve: Vec<SolveRequest>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryExpect {
    #[serde(default)]
    pub curvature_zero: Option<bool>,
    #[serde(default)]
    pub nullity: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraRequest {
    pub set: String,
    #[serde(default)]
    pub expect: AlgebraExpect,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraExpect {
    pub semisimple: Option<bool>,
    pub simple: Option<bool>,
    pub derived_is_whole: Option<bool>,
    pub radical_dim: Option<usize>,
    pub outer_derivations: Option<usize>,
    pub outer_derivations_at_least: Option<usize>,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum SubspaceProperty {
    Subalgebra,
    Ideal,
    AbelianIdeal,
    Solvable,
    Radical,
    LeviComplement,
    Sl2Type,
    So3Type,
    Simple,
}

impl SubspaceProperty {
    pub fn label(self) -> &'static str {
        match self {
            SubspaceProperty::Subalgebra => "subalgebra",
            SubspaceProperty::Ideal => "ideal",
            SubspaceProperty::AbelianIdeal => "abelian-ideal",
            SubspaceProperty::Solvable => "solvable",
            SubspaceProperty::Radical => "radical",
            SubspaceProperty::LeviComplement => "levi-complement",
            SubspaceProperty::Sl2Type => "sl2-type",
            SubspaceProperty::So3Type => "so3-type",
            SubspaceProperty::Simple => "simple",
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceClaim {
    pub set: String,
    pub name: String,
    /// Spanning vectors as combinations of the set's generators.
    pub span: Vec<String>,
    pub properties: Vec<SubspaceProperty>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationClaim {
    pub set: String,
    pub name: String,
    /// Generator → image; unlisted generators map to 0.
    pub images: UniqueMap<String>,
    #[serde(default)]
    pub outer: Option<bool>,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum SolveCondition {
    SpraySymmetry,
    Isometry,
    Horizontal,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveRequest {
    pub dictionary: String,
    pub conditions: Vec<SolveCondition>,
    #[serde(default)]
    pub expect_dim: Option<usize>,
    /// Set whose span must equal the solution space.
    #[serde(default)]
    pub expect_span_of: Option<String>,
}

/// Printed values to compare against the computation.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Reference {
    /// `G^1..G^n`.
    #[serde(default)]
    pub spray: Option<Vec<String>>,
    /// Nonzero `Γ^j_i`, keyed `"j,i"`; unlisted entries are zero.
    #[serde(default)]
    pub connection: Option<UniqueMap<String>>,
    /// Horizontal lifts `h(∂/∂x^i)`, each with `2n` components.
    #[serde(default)]
    pub horizontal: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnownDiscrepancy {
    /// `spray k`, `connection j,i`, `horizontal i` or `table <set> <row> <col>`.
    pub location: String,
    pub note: String,
}

/// A validated problem.
#[derive(Clone, Debug)]
pub struct Problem {
    pub name: String,
    pub file: ProblemFile,
    pub geometry: Geometry,
    pub fields: Vec<(String, BaseField)>,
}

impl Problem {
    pub fn load(path: &Path) -> Result<Problem, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(&format!("cannot read {}", path.display()), e))?;
        let default_name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        Problem::from_json(&text, &default_name)
    }

    pub fn from_json(text: &str, default_name: &str) -> Result<Problem, CliError> {
        let file: ProblemFile =
            serde_json::from_str(text).map_err(|e| CliError::input("problem file", e))?;
        Problem::from_file(file, default_name)
    }

    pub fn from_file(file: ProblemFile, default_name: &str) -> Result<Problem, CliError> {
        let n = file.dim;
        if n < 2 {
            return Err(CliError::Input(format!("dim must be at least 2, found {n}")));
        }
        if let Some(c) = &file.coordinates {
            if c.len() != n {
                return Err(CliError::Input(format!("{} coordinate names for dim {n}", c.len())));
            }
        }
        let resolver = Resolver::new(&file);
        let matrix = |rows: &Vec<Vec<String>>, what: &str| -> Result<Vec<Vec<CanonicalExpr>>, CliError> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(CliError::Input(format!("{what} must be a {n}×{n} matrix")));
            }
            rows.iter()
                .enumerate()
                .map(|(i, r)| {
                    r.iter()
                        .enumerate()
                        .map(|(j, s)| resolver.expr(s, &format!("{what}[{}][{}]", i + 1, j + 1)))
                        .collect()
                })
                .collect()
        };
        let g = matrix(&file.metric.entries, "metric")?;
        let spec = match file.metric.kind {
            Kind::Diagonal => MetricSpec::diagonal_matrix(g)?,
            Kind::General => {
                let inv = file
                    .metric
                    .inverse
                    .as_ref()
                    .ok_or_else(|| CliError::Input("general metric requires `inverse`".into()))?;
                MetricSpec::general(g, matrix(inv, "inverse")?)?
            }
        };
        let geometry = Geometry::from_metric(spec)?;

        let mut fields = Vec::new();
        for (name, comps) in file.fields.iter() {
            if comps.len() != n {
                return Err(CliError::Input(format!(
                    "field `{name}` has {} components, expected {n}",
                    comps.len()
                )));
            }
            let exprs = comps
                .iter()
                .enumerate()
                .map(|(i, s)| resolver.expr(s, &format!("field {name}[{}]", i + 1)))
                .collect::<Result<Vec<_>, _>>()?;
            let f = BaseField::new(exprs).map_err(|e| CliError::input(&format!("field `{name}`"), e))?;
            fields.push((name.clone(), f));
        }
        let problem = Problem {
            name: file.name.clone().unwrap_or_else(|| default_name.to_string()),
            file,
            geometry,
            fields,
        };
        problem.validate_references()?;
        Ok(problem)
    }

    fn validate_references(&self) -> Result<(), CliError> {
        for (set, members) in self.file.sets.iter() {
            for m in members {
                if self.field(m).is_none() {
                    return Err(CliError::Input(format!("set `{set}` names unknown field `{m}`")));
                }
            }
        }
        let sets = |s: &str| -> Result<(), CliError> {
            self.set_names(s).map(|_| ())
        };
        for (s, _) in self.file.analyses.membership.iter() {
            sets(s)?;
        }
        for a in &self.file.analyses.algebra {
            sets(&a.set)?;
        }
        for c in &self.file.analyses.subspaces {
            sets(&c.set)?;
        }
        for d in &self.file.analyses.derivations {
            sets(&d.set)?;
        }
        for s in &self.file.analyses.solve {
            sets(&s.dictionary)?;
            if let Some(t) = &s.expect_span_of {
                sets(t)?;
            }
        }
        for (s, rows) in self.file.expected_tables.iter() {
            let m = self.set_names(s)?.len();
            if rows.len() != m || rows.iter().any(|r| r.len() != m) {
                return Err(CliError::Input(format!("expected table for `{s}` must be {m}×{m}")));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.file.dim
    }

    pub fn field(&self, name: &str) -> Option<&BaseField> {
        self.fields.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn set_names(&self, set: &str) -> Result<&[String], CliError> {
        self.file
            .sets
            .get(set)
            .map(Vec::as_slice)
            .ok_or_else(|| CliError::Input(format!("unknown set `{set}`")))
    }

    pub fn set_fields(&self, set: &str) -> Result<Vec<BaseField>, CliError> {
        Ok(self
            .set_names(set)?
            .iter()
            .map(|n| self.field(n).expect("validated").clone())
            .collect())
    }

    /// Parses an expression over the problem's coordinates.
    pub fn expr(&self, src: &str, what: &str) -> Result<CanonicalExpr, CliError> {
        Resolver::new(&self.file).expr(src, what)
    }

    /// Parses a linear combination of generator names, e.g. `-e1/2 + e6/2`.
    pub fn combination(&self, set: &str, src: &str, what: &str) -> Result<Vec<Rational>, CliError> {
        parse_combination(self.set_names(set)?, src, what)
    }
}

/// Coefficients of a combination of `names`.
pub fn parse_combination(names: &[String], src: &str, what: &str) -> Result<Vec<Rational>, CliError> {
    let resolve = |s: &str| names.iter().position(|n| n == s).map(|k| Var::X(k as u32 + 1));
    let ast = parse_with(src, &resolve).map_err(|e| CliError::input(what, e))?;
    let e = canonicalize(&ast).map_err(|e| CliError::input(what, e))?;
    let lin = e
        .as_linear_form()
        .ok_or_else(|| CliError::Input(format!("{what}: `{src}` is not a linear combination")))?;
    let mut out = vec![Rational::zero(); names.len()];
    for (k, c) in lin.iter() {
        out[k as usize - 1] = c.clone();
    }
    Ok(out)
}

struct Resolver<'a> {
    dim: usize,
    aliases: Option<&'a [String]>,
}

impl<'a> Resolver<'a> {
    fn new(file: &'a ProblemFile) -> Self {
        Resolver {
            dim: file.dim,
            aliases: file.coordinates.as_deref(),
        }
    }

    fn expr(&self, src: &str, what: &str) -> Result<CanonicalExpr, CliError> {
        let resolve = |s: &str| {
            if let Some(i) = self.aliases.and_then(|a| a.iter().position(|n| n == s)) {
                return Some(Var::X(i as u32 + 1));
            }
            liespray::symexpr::coordinate(s)
        };
        let wrap = |e: ExprError| CliError::input(what, e);
        let ast = parse_with(src, &resolve).map_err(wrap)?;
        let e = canonicalize(&ast).map_err(wrap)?;
        for v in e.variables() {
            v.check(self.dim).map_err(wrap)?;
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "dim": 2,
        "metric": {"kind": "diagonal", "entries": [["1", "0"], ["0", "1"]]},
        "fields": {"t1": ["1", "0"], "t2": ["0", "1"]},
        "sets": {"T": ["t1", "t2"]}
    }"#;

    #[test]
    fn loads_minimal_file() {
        let p = Problem::from_json(MINIMAL, "flat").unwrap();
        assert_eq!(p.name, "flat");
        assert_eq!(p.set_fields("T").unwrap().len(), 2);
        assert!(p.geometry.curvature.is_zero());
    }

    #[test]
    fn rejects_bad_input() {
        let dup = MINIMAL.replace(r#""t2": ["0", "1"]"#, r#""t1": ["0", "1"]"#);
        assert!(Problem::from_json(&dup, "x").is_err());
        let y_dep = MINIMAL.replace(r#""t2": ["0", "1"]"#, r#""t2": ["0", "y1"]"#);
        assert!(Problem::from_json(&y_dep, "x").is_err());
        let out_of_range = MINIMAL.replace(r#""t2": ["0", "1"]"#, r#""t2": ["0", "x3"]"#);
        assert!(Problem::from_json(&out_of_range, "x").is_err());
        assert!(matches!(Problem::from_json("", "x"), Err(CliError::Input(_))));
    }

    #[test]
    fn combinations() {
        let names: Vec<String> = ["e1", "e2", "e11"].iter().map(|s| s.to_string()).collect();
        let c = parse_combination(&names, "-e1/2 + e11/2", "cell").unwrap();
        assert_eq!(c, vec![liespray::rat(-1, 2), Rational::zero(), liespray::rat(1, 2)]);
        assert!(parse_combination(&names, "e1*e2", "cell").is_err());
        assert!(parse_combination(&names, "e1 + 1", "cell").is_err());
    }
}
