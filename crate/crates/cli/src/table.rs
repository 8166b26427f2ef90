//! Multiplication tables.

use liespray::liealg::StructureConstants;

use crate::error::CliError;
use crate::problem::Problem;
use crate::report::csv_quote;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum TableFormat {
    Md,
    Csv,
}

/// Structure constants of a generator set; non-closure is an input error
/// naming the pair and its bracket.
pub fn structure_constants(problem: &Problem, set: &str) -> Result<StructureConstants, CliError> {
    let names = problem.set_names(set)?.to_vec();
    let fields = problem.set_fields(set)?;
    StructureConstants::from_fields(&fields, names).map_err(|e| CliError::input(&format!("set `{set}`"), e))
}

pub fn cells(sc: &StructureConstants) -> Vec<Vec<String>> {
    let m = sc.dim();
    (0..m).map(|i| (0..m).map(|j| sc.cell(i, j)).collect()).collect()
}

pub fn render_csv(names: &[String], cells: &[Vec<String>]) -> String {
    let mut s = String::from("[.]");
    for n in names {
        s.push(',');
        s.push_str(&csv_quote(n));
    }
    s.push('\n');
    for (n, row) in names.iter().zip(cells) {
        s.push_str(&csv_quote(n));
        for c in row {
            s.push(',');
            s.push_str(&csv_quote(c));
        }
        s.push('\n');
    }
    s
}

pub fn render_markdown(names: &[String], cells: &[Vec<String>]) -> String {
    let mut s = String::from("| [.] |");
    for n in names {
        s.push_str(&format!(" {n} |"));
    }
    s.push_str("\n|---|");
    for _ in names {
        s.push_str("---|");
    }
    s.push('\n');
    for (n, row) in names.iter().zip(cells) {
        s.push_str(&format!("| {n} |"));
        for c in row {
            s.push_str(&format!(" {c} |"));
        }
        s.push('\n');
    }
    s
}

pub fn cmd_table(problem: &Problem, set: &str, format: TableFormat) -> Result<String, CliError> {
    let sc = structure_constants(problem, set)?;
    let c = cells(&sc);
    Ok(match format {
        TableFormat::Md => render_markdown(sc.names(), &c),
        TableFormat::Csv => render_csv(sc.names(), &c),
    })
}
