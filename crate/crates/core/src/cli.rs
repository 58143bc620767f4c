//! Command-line front end. Every command writes to the given sinks and returns the
//! process exit code: 0 Cohen-Macaulay (or success), 1 not Cohen-Macaulay, 2 unknown,
//! 3 usage, parse or applicability errors.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{AlphaVector, SimplicialComplex};
use crate::field::FieldSpec;
use crate::fixtures;
use crate::generate;
use crate::graphs;
use crate::homology::{IdealOracle, OracleVerdict};
use crate::ideals;
use crate::problem::{Problem, ProblemFile};
use crate::satisfying::{self, QuasiTreeCase, TreeCase, Verdict};
use crate::structure;

pub const EXIT_CM: i32 = 0;
pub const EXIT_NOT_CM: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "cm-lab", version, about = "Cohen-Macaulay tests for monomial ideals I_Δ(α)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Structural report for a complex, plus every applicable test when α is given.
    Analyze {
        /// Problem file, or the name of a built-in example.
        input: String,
        #[arg(long = "char")]
        characteristic: Option<u32>,
    },
    /// Decide Cohen-Macaulayness of I_Δ(α) with one method.
    Check {
        input: String,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        #[arg(long = "char")]
        characteristic: Option<u32>,
    },
    /// Compare the combinatorial tests against the oracle on random multiplicities.
    CrossValidate {
        input: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long = "max-exp", default_value_t = 3)]
        max_exp: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "char")]
        characteristic: Option<u32>,
    },
    /// List the built-in examples or print one as JSON.
    Examples {
        #[command(subcommand)]
        action: Option<ExamplesAction>,
    },
    /// Print the components Q_j, and optionally the minimal generators of I_Δ(α).
    Ideal {
        input: String,
        #[arg(long)]
        expand: bool,
    },
}

#[derive(Debug, Subcommand)]
enum ExamplesAction {
    List,
    Show { name: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Tree,
    Quasitree,
    General,
    Oracle,
    Auto,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Analyze { input, characteristic } => {
            load(&input, characteristic).and_then(|p| analyze(&p))
        }
        Command::Check { input, method, characteristic } => {
            load(&input, characteristic).and_then(|p| check(&p, method))
        }
        Command::CrossValidate { input, samples, max_exp, seed, characteristic } => {
            load(&input, characteristic).and_then(|p| cross_validate(&input, &p, samples, max_exp, seed))
        }
        Command::Examples { action } => examples(action),
        Command::Ideal { input, expand } => load(&input, None).and_then(|p| ideal(&p, expand)),
    };
    match result {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_ERROR
        }
    }
}

type Outcome = Result<(String, i32), String>;

/// Reads a problem file, or falls back to a built-in example of that name.
fn load(input: &str, characteristic: Option<u32>) -> Result<Problem, String> {
    let file = if Path::new(input).is_file() {
        let text = std::fs::read_to_string(input).map_err(|e| format!("{input}: {e}"))?;
        ProblemFile::from_json(&text).map_err(|e| format!("{input}: {e}"))?
    } else if let Some(f) = fixtures::get(input) {
        f.problem
    } else {
        return Err(format!("{input}: no such file or example"));
    };
    let mut problem = file.validate().map_err(|e| format!("{input}: {e}"))?;
    if let Some(p) = characteristic {
        problem.field = FieldSpec::new(p).map_err(|e| e.to_string())?;
    }
    Ok(problem)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn facet_list(delta: &SimplicialComplex, indices: &[usize]) -> String {
    let parts: Vec<String> =
        indices.iter().map(|&j| format!("F{}={}", j + 1, delta.facets()[j])).collect();
    format!("<{}>", parts.join(", "))
}

fn analyze(p: &Problem) -> Outcome {
    let delta = &p.complex;
    let mut s = String::new();
    let all: Vec<usize> = (0..delta.num_facets()).collect();
    writeln!(s, "complex: {} vertices, {} facets, dimension {}", delta.n(), delta.num_facets(), delta.dim()).unwrap();
    writeln!(s, "facets: {}", facet_list(delta, &all)).unwrap();
    writeln!(s, "field: {}", p.field).unwrap();
    writeln!(s, "f-vector: ({})", join(&delta.f_vector())).unwrap();
    writeln!(s, "h-vector: ({})", join(&delta.h_vector())).unwrap();
    writeln!(s, "multiplicity: {}", delta.multiplicity()).unwrap();

    let report = structure::classify(delta, p.field).map_err(|e| e.to_string())?;
    writeln!(s, "pure: {}", yes(report.pure)).unwrap();
    writeln!(s, "strongly connected: {}", yes(report.strongly_connected)).unwrap();
    writeln!(s, "shellable: {}", yes(report.shellable)).unwrap();
    writeln!(s, "cohen-macaulay: {}", yes(report.cohen_macaulay)).unwrap();
    writeln!(s, "minimal multiplicity: {}", yes(report.minimal_multiplicity)).unwrap();
    writeln!(s, "quasi-tree: {}", yes(report.quasi_tree)).unwrap();
    writeln!(s, "strongly connected quasi-tree: {}", yes(report.strongly_connected_quasi_tree)).unwrap();
    writeln!(s, "facet graph is a tree: {}", yes(report.facet_graph_is_tree)).unwrap();
    writeln!(s, "cohen-macaulay without codimension-1 cycles: {}", yes(report.cm_without_codim1_cycles)).unwrap();
    writeln!(s, "minimal-multiplicity conditions agree: {}", yes(report.conditions_agree())).unwrap();

    if report.pure {
        let g = graphs::facet_graph(delta).map_err(|e| e.to_string())?;
        writeln!(s, "facet graph: {g}").unwrap();
        writeln!(s, "vertex graphs:").unwrap();
        for i in 1..=delta.n() {
            let gi = graphs::vertex_graph(delta, i).map_err(|e| e.to_string())?;
            writeln!(s, "  V{i}: {gi}").unwrap();
        }
    }

    if let Some(alpha) = &p.alpha {
        writeln!(s, "multiplicities:").unwrap();
        for (j, q) in ideals::components(delta, alpha).map_err(|e| e.to_string())?.iter().enumerate() {
            writeln!(s, "  Q_{} = {q}", j + 1).unwrap();
        }
        match TreeCase::with_field(delta, p.field) {
            Ok(case) => {
                let v = case.check(alpha).map_err(|e| e.to_string())?;
                writeln!(s, "tree condition: {}", if v.satisfied { "satisfied" } else { "violated" }).unwrap();
                for (i, d) in &v.diagnostics {
                    writeln!(s, "  vertex {i}: {d}").unwrap();
                }
            }
            Err(e) => writeln!(s, "tree condition: not applicable ({e})").unwrap(),
        }
        match QuasiTreeCase::new(delta) {
            Ok(case) => {
                let v = case.check(alpha).map_err(|e| e.to_string())?;
                match v.relation_tree {
                    Some(t) => writeln!(s, "quasi-tree condition: satisfied by relation tree {t}").unwrap(),
                    None => writeln!(s, "quasi-tree condition: no relation tree fits").unwrap(),
                }
            }
            Err(e) => writeln!(s, "quasi-tree condition: not applicable ({e})").unwrap(),
        }
        match satisfying::general_satisfying_shellings(delta, alpha) {
            Ok(Some(shellings)) => {
                writeln!(s, "shelling condition: satisfied").unwrap();
                for (i, sh) in shellings {
                    writeln!(s, "  vertex {i}: {sh}").unwrap();
                }
            }
            Ok(None) => writeln!(s, "shelling condition: not satisfied").unwrap(),
            Err(e) => writeln!(s, "shelling condition: not applicable ({e})").unwrap(),
        }
        let v = IdealOracle::new(delta, p.field)
            .and_then(|o| o.check(alpha))
            .map_err(|e| e.to_string())?;
        write_oracle(&mut s, delta, alpha, &v);
    }
    Ok((s, 0))
}

fn write_oracle(s: &mut String, delta: &SimplicialComplex, alpha: &AlphaVector, v: &OracleVerdict) {
    writeln!(
        s,
        "oracle: {} ({} distinct subcomplexes)",
        if v.cohen_macaulay { "cohen-macaulay" } else { "not cohen-macaulay" },
        v.subcomplexes
    )
    .unwrap();
    if let Some(a) = &v.witness {
        let kept = crate::complex::alpha_a_facets(delta, alpha, a).expect("validated");
        writeln!(s, "  witness a = ({})", join(a)).unwrap();
        writeln!(s, "  failing subcomplex: {}", facet_list(delta, &kept)).unwrap();
    }
}

fn verdict_code(cm: bool) -> i32 {
    if cm {
        EXIT_CM
    } else {
        EXIT_NOT_CM
    }
}

fn check(p: &Problem, method: Method) -> Outcome {
    let delta = &p.complex;
    let alpha = p.alpha_or_ones();
    let mut s = String::new();
    let oracle = |s: &mut String| -> Outcome {
        let v = IdealOracle::new(delta, p.field).and_then(|o| o.check(&alpha)).map_err(|e| e.to_string())?;
        write_oracle(s, delta, &alpha, &v);
        Ok((std::mem::take(s), verdict_code(v.cohen_macaulay)))
    };
    let tree = |s: &mut String, case: TreeCase| -> Outcome {
        let v = case.check(&alpha).map_err(|e| e.to_string())?;
        writeln!(s, "tree condition: {}", if v.satisfied { "satisfied" } else { "violated" }).unwrap();
        for (i, d) in &v.diagnostics {
            writeln!(s, "  vertex {i}: {d}").unwrap();
        }
        writeln!(s, "verdict: {}", if v.satisfied { "cohen-macaulay" } else { "not cohen-macaulay" }).unwrap();
        Ok((std::mem::take(s), verdict_code(v.satisfied)))
    };
    let quasi = |s: &mut String, case: QuasiTreeCase| -> Result<Verdict, String> {
        let v = case.check(&alpha).map_err(|e| e.to_string())?;
        match &v.relation_tree {
            Some(t) => writeln!(s, "quasi-tree condition: satisfied by relation tree {t}").unwrap(),
            None => writeln!(s, "quasi-tree condition: no relation tree fits").unwrap(),
        }
        Ok(if v.satisfied { Verdict::CohenMacaulay } else { Verdict::Unknown })
    };
    let not_applicable = |e: crate::error::Error| format!("method not applicable: {e}");

    match method {
        Method::Oracle => oracle(&mut s),
        Method::Tree => {
            let case = TreeCase::with_field(delta, p.field).map_err(not_applicable)?;
            tree(&mut s, case)
        }
        Method::Quasitree => {
            let case = QuasiTreeCase::new(delta).map_err(not_applicable)?;
            let verdict = quasi(&mut s, case)?;
            writeln!(s, "verdict: {verdict}").unwrap();
            let code = if verdict == Verdict::CohenMacaulay { EXIT_CM } else { EXIT_UNKNOWN };
            Ok((s, code))
        }
        Method::General => {
            let found = satisfying::general_satisfying_shellings(delta, &alpha).map_err(not_applicable)?;
            match found {
                Some(shellings) => {
                    writeln!(s, "shelling condition: satisfied").unwrap();
                    for (i, sh) in shellings {
                        writeln!(s, "  vertex {i}: {sh}").unwrap();
                    }
                }
                None => writeln!(s, "shelling condition: not satisfied").unwrap(),
            }
            // the shelling condition neither implies nor is implied by Cohen-Macaulayness
            writeln!(s, "verdict: unknown").unwrap();
            Ok((s, EXIT_UNKNOWN))
        }
        Method::Auto => {
            if let Ok(case) = TreeCase::with_field(delta, p.field) {
                writeln!(s, "method: tree").unwrap();
                return tree(&mut s, case);
            }
            if let Ok(case) = QuasiTreeCase::new(delta) {
                writeln!(s, "method: quasitree").unwrap();
                if quasi(&mut s, case)? == Verdict::CohenMacaulay {
                    writeln!(s, "verdict: cohen-macaulay").unwrap();
                    return Ok((s, EXIT_CM));
                }
                writeln!(s, "falling back to the oracle").unwrap();
            } else {
                writeln!(s, "method: oracle").unwrap();
            }
            oracle(&mut s)
        }
    }
}

#[derive(Default)]
struct Tally {
    oracle_cm: usize,
    oracle_not_cm: usize,
    tree_agree: usize,
    tree_disagree: usize,
    quasi_confirmed: usize,
    quasi_violations: usize,
    quasi_unknown_cm: usize,
    quasi_unknown_not_cm: usize,
    general: [[usize; 2]; 2],
}

fn cross_validate(name: &str, p: &Problem, samples: usize, max_exp: u32, seed: u64) -> Outcome {
    if max_exp == 0 {
        return Err("--max-exp must be at least 1".into());
    }
    let delta = &p.complex;
    let oracle = IdealOracle::new(delta, p.field).map_err(|e| e.to_string())?;
    let tree = TreeCase::with_field(delta, p.field).ok();
    let quasi = QuasiTreeCase::new(delta).ok();
    let shellable = delta.is_pure() && structure::find_shelling(delta, None).map_err(|e| e.to_string())?.is_some();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::default();
    let mut s = String::new();
    for k in 0..samples {
        let alpha = generate::uniform_alpha(&mut rng, delta, max_exp);
        let cm = oracle.check(&alpha).map_err(|e| e.to_string())?.cohen_macaulay;
        if cm {
            t.oracle_cm += 1;
        } else {
            t.oracle_not_cm += 1;
        }
        if let Some(case) = &tree {
            let fast = case.check(&alpha).map_err(|e| e.to_string())?.satisfied;
            if fast == cm {
                t.tree_agree += 1;
            } else {
                t.tree_disagree += 1;
                writeln!(s, "tree disagreement at sample {k}: {}", describe(&alpha)).unwrap();
            }
        }
        if let Some(case) = &quasi {
            let sat = case.check(&alpha).map_err(|e| e.to_string())?.satisfied;
            match (sat, cm) {
                (true, true) => t.quasi_confirmed += 1,
                (true, false) => {
                    t.quasi_violations += 1;
                    writeln!(s, "quasi-tree violation at sample {k}: {}", describe(&alpha)).unwrap();
                }
                (false, true) => t.quasi_unknown_cm += 1,
                (false, false) => t.quasi_unknown_not_cm += 1,
            }
        }
        if shellable {
            let sat = satisfying::is_general_satisfying(delta, &alpha).map_err(|e| e.to_string())?;
            t.general[usize::from(sat)][usize::from(cm)] += 1;
        }
    }

    let mut head = String::new();
    writeln!(head, "input: {name}").unwrap();
    writeln!(head, "field: {}", p.field).unwrap();
    writeln!(head, "samples: {samples}, entries in 1..={max_exp}, seed {seed}").unwrap();
    writeln!(head, "oracle: {} cohen-macaulay, {} not", t.oracle_cm, t.oracle_not_cm).unwrap();
    match tree {
        Some(_) => writeln!(head, "tree condition: {} agree, {} disagree", t.tree_agree, t.tree_disagree).unwrap(),
        None => writeln!(head, "tree condition: not applicable").unwrap(),
    }
    match quasi {
        Some(_) => writeln!(
            head,
            "quasi-tree condition: {} satisfied and confirmed, {} violations, {} unknown but cohen-macaulay, {} unknown and not",
            t.quasi_confirmed, t.quasi_violations, t.quasi_unknown_cm, t.quasi_unknown_not_cm
        )
        .unwrap(),
        None => writeln!(head, "quasi-tree condition: not applicable").unwrap(),
    }
    if shellable {
        writeln!(
            head,
            "shelling condition: satisfied {} (cohen-macaulay {}, not {}), unsatisfied {} (cohen-macaulay {}, not {})",
            t.general[1][0] + t.general[1][1],
            t.general[1][1],
            t.general[1][0],
            t.general[0][0] + t.general[0][1],
            t.general[0][1],
            t.general[0][0]
        )
        .unwrap();
    } else {
        writeln!(head, "shelling condition: not applicable").unwrap();
    }
    head.push_str(&s);
    let failed = t.tree_disagree > 0 || t.quasi_violations > 0;
    Ok((head, if failed { 1 } else { 0 }))
}

fn describe(alpha: &AlphaVector) -> String {
    let parts: Vec<String> = ProblemFile::alpha_records(alpha)
        .iter()
        .map(|r| format!("a{}(F{})={}", r.vertex, r.facet, r.value))
        .collect();
    if parts.is_empty() {
        "all ones".into()
    } else {
        parts.join(" ")
    }
}

fn examples(action: Option<ExamplesAction>) -> Outcome {
    match action.unwrap_or(ExamplesAction::List) {
        ExamplesAction::List => {
            let mut s = String::new();
            for f in fixtures::all() {
                writeln!(s, "{:<14} {}", f.name, f.problem.description.as_deref().unwrap_or("")).unwrap();
            }
            Ok((s, 0))
        }
        ExamplesAction::Show { name } => match fixtures::get(&name) {
            Some(f) => Ok((f.problem.to_json() + "\n", 0)),
            None => Err(format!("unknown example {name:?}; known: {}", fixtures::names().join(", "))),
        },
    }
}

fn ideal(p: &Problem, expand: bool) -> Outcome {
    let delta = &p.complex;
    let alpha = p.alpha_or_ones();
    let mut s = String::new();
    for (j, q) in ideals::components(delta, &alpha).map_err(|e| e.to_string())?.iter().enumerate() {
        writeln!(s, "Q_{} = {q}", j + 1).unwrap();
    }
    if expand {
        let full = ideals::expand_ideal(delta, &alpha).map_err(|e| e.to_string())?;
        writeln!(s, "I = {full}").unwrap();
        writeln!(s, "radical = {}", full.radical()).unwrap();
    }
    Ok((s, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("cm-lab").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exit_codes_follow_verdicts() {
        assert_eq!(call(&["check", "square-alpha", "--method", "oracle"]).0, EXIT_NOT_CM);
        assert_eq!(call(&["check", "star-alpha", "--method", "quasitree"]).0, EXIT_UNKNOWN);
        assert_eq!(call(&["check", "star-alpha", "--method", "oracle"]).0, EXIT_CM);
        assert_eq!(call(&["check", "tree-complex", "--method", "tree"]).0, EXIT_CM);
        assert_eq!(call(&["check", "star", "--method", "tree"]).0, EXIT_ERROR);
        assert_eq!(call(&["check", "nope"]).0, EXIT_ERROR);
        assert_eq!(call(&["bogus"]).0, EXIT_ERROR);
    }

    #[test]
    fn auto_falls_back() {
        let (code, out, _) = call(&["check", "star-alpha"]);
        assert_eq!(code, EXIT_CM);
        assert!(out.contains("falling back to the oracle"));
        let (code, out, _) = call(&["check", "square-alpha"]);
        assert_eq!(code, EXIT_NOT_CM);
        assert!(out.contains("witness a = (0,2,2,0)"), "{out}");
    }

    #[test]
    fn empty_cross_validation() {
        let (code, out, _) = call(&["cross-validate", "tree-complex", "--samples", "0"]);
        assert_eq!(code, 0);
        assert!(out.contains("oracle: 0 cohen-macaulay, 0 not"));
    }
}
