//! The `valdim` command line. [`run`] parses arguments, reads the inputs,
//! dispatches to the engine and writes the buffered result.
//!
//! Exit codes: 0 on success, 1 when a verification suite fails, 2 on
//! unparsable input or arguments, 3 on well-formed input the engine rejects.

mod args;
mod input;

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::Parser;
use serde::Serialize;
use serde_json::{json, Value};
use valdim_core::mixedcell::{
    mixed_cell_decompose, mixed_dimension, parse_mixed, parse_mixed_n, project_to_gamma, MixedFormula,
};
use valdim_core::semilinear::{
    cell_decompose, closure, dimension, one_var_canonical, parse_formula, parse_formula_n, project,
    GammaFormula,
};
use valdim_core::trop::{image_report, pure_dimension_check, trop_hypersurface, MonomialMap, TropPoly};
use valdim_core::{Dim, Error};
use valdim_verify::{suites, Config, Report};

use args::{Cli, Command, Format, GammaCmd, GammaInput, LowersetCmd, MixedCmd, MixedInput, TropCmd, VerifyCmd};
use input::{AnySet, Inputs};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_SEMANTIC: u8 = 3;

#[derive(Debug)]
enum Failure {
    Engine(Error),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Engine(e) if e.is_parse() => EXIT_PARSE,
            _ => EXIT_SEMANTIC,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Engine(e) => write!(f, "{e}"),
            Failure::Io(msg) => f.write_str(msg),
        }
    }
}

/// A result in both output formats.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, ok: true }
    }

    fn of<T: Serialize>(text: impl Into<String>, value: &T) -> Self {
        Self::new(text, serde_json::to_value(value).expect("engine values serialize"))
    }
}

/// Runs one command line and returns its exit code.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let mut inputs = Inputs::new(stdin);
    match dispatch(&cli, &mut inputs) {
        Ok(output) => {
            let _ = match cli.format {
                Format::Text => writeln!(out, "{}", output.text.trim_end()),
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&output.json).expect("json")),
            };
            if output.ok {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(f) => {
            let _ = writeln!(err, "valdim: {f}");
            f.code()
        }
    }
}

fn dispatch(cli: &Cli, inputs: &mut Inputs) -> Result<Output, Failure> {
    match &cli.command {
        Command::Lowerset(cmd) => lowerset(cmd, inputs),
        Command::Gamma(cmd) => gamma(cmd, inputs),
        Command::Mixed(cmd) => mixed(cmd, inputs),
        Command::Trop(cmd) => trop(cmd, inputs),
        Command::Verify(cmd) => Ok(verify(cmd, &Config { seed: cli.seed, cases: cli.cases })),
    }
}

fn lowerset(cmd: &LowersetCmd, inputs: &mut Inputs) -> Result<Output, Failure> {
    let set = |inputs: &mut Inputs, s: &str| -> Result<AnySet, Failure> { input::lower_set(&inputs.read(s)?) };
    let ls = |s: AnySet| Output::new(s.to_string(), s.to_json());
    Ok(match cmd {
        LowersetCmd::Closure { set: s } => ls(set(inputs, s)?),
        LowersetCmd::Join { a, b } => ls(set(inputs, a)?.combine(&set(inputs, b)?, "join")?),
        LowersetCmd::Add { a, b } => ls(set(inputs, a)?.combine(&set(inputs, b)?, "add")?),
        LowersetCmd::Shift { set: s } => ls(set(inputs, s)?.shift_closure()),
        LowersetCmd::Dimnat { set: s } => dim_output(set(inputs, s)?.dim_nat()),
        LowersetCmd::Render { set: s } => match set(inputs, s)? {
            AnySet::Two(a) => {
                let diagram = a.render_diagram();
                Output::new(diagram.clone(), json!({ "diagram": diagram }))
            }
            AnySet::Three(_) => return Err(Error::Invalid("diagrams are drawn for lower sets of ℕ² only".into()).into()),
        },
    })
}

fn dim_output(d: Dim) -> Output {
    Output::new(d.to_string(), json!({ "dim": d }))
}

fn formula_output(f: &GammaFormula) -> Output {
    Output::new(f.to_string(), json!({ "nvars": f.nvars(), "formula": f.to_string() }))
}

fn gamma_formula(input: &GammaInput, inputs: &mut Inputs) -> Result<GammaFormula, Failure> {
    let text = inputs.read(&input.formula)?;
    Ok(match input.vars {
        Some(n) => parse_formula_n(&text, n)?,
        None => parse_formula(&text)?,
    })
}

fn lines<T: std::fmt::Display>(items: &[T]) -> String {
    if items.is_empty() {
        return "(empty)".to_string();
    }
    items.iter().map(T::to_string).collect::<Vec<_>>().join("\n")
}

fn gamma(cmd: &GammaCmd, inputs: &mut Inputs) -> Result<Output, Failure> {
    Ok(match cmd {
        GammaCmd::Dim(i) => dim_output(dimension(&gamma_formula(i, inputs)?)),
        GammaCmd::Cells(i) => {
            let cells = cell_decompose(&gamma_formula(i, inputs)?);
            Output::new(lines(&cells), json!({ "cells": cells }))
        }
        GammaCmd::Project { input, keep } => {
            let f = gamma_formula(input, inputs)?;
            let n = f.nvars();
            if let Some(&bad) = keep.iter().find(|&&k| k == 0 || k > n) {
                return Err(Error::Invalid(format!("no variable x{bad} among x1..x{n}")).into());
            }
            let mut keep: Vec<usize> = keep.iter().map(|k| k - 1).collect();
            keep.sort_unstable();
            keep.dedup();
            formula_output(&project(&f, &keep))
        }
        GammaCmd::Closure(i) => formula_output(&closure(&gamma_formula(i, inputs)?)),
        GammaCmd::Type1d(i) => {
            let f = gamma_formula(i, inputs)?;
            if f.nvars() != 1 {
                return Err(Error::Arity { expected: 1, found: f.nvars() }.into());
            }
            let t = one_var_canonical(&f);
            let (m, n) = t.type_mn();
            let mut value = serde_json::to_value(&t).expect("json");
            value["type"] = json!([m, n]);
            Output::new(format!("type ({m},{n}): {t}"), value)
        }
    })
}

fn mixed_formula(input: &MixedInput, inputs: &mut Inputs) -> Result<MixedFormula, Failure> {
    let text = inputs.read(&input.formula)?;
    Ok(match input.vars {
        Some(n) => parse_mixed_n(&text, n)?,
        None => parse_mixed(&text)?,
    })
}

fn mixed(cmd: &MixedCmd, inputs: &mut Inputs) -> Result<Output, Failure> {
    Ok(match cmd {
        MixedCmd::Dim(i) => {
            let d = mixed_dimension(&mixed_formula(i, inputs)?);
            Output::of(d.to_string(), &d)
        }
        MixedCmd::Cells(i) => {
            let cells = mixed_cell_decompose(&mixed_formula(i, inputs)?);
            Output::new(lines(&cells), json!({ "cells": cells }))
        }
        MixedCmd::Project(i) => formula_output(&project_to_gamma(&mixed_formula(i, inputs)?)),
    })
}

fn trop(cmd: &TropCmd, inputs: &mut Inputs) -> Result<Output, Failure> {
    Ok(match cmd {
        TropCmd::Hypersurface { poly } => {
            let c = trop_hypersurface(&TropPoly::parse(&inputs.read(poly)?)?);
            Output::of(c.to_string(), &c)
        }
        TropCmd::Image { domain, map } => {
            let map = MonomialMap::parse(&inputs.read(map)?)?;
            let domain = parse_formula_n(&inputs.read(domain)?, map.ninputs())?;
            let r = image_report(&domain, &map)?;
            let yes_no = |b: bool| if b { "yes" } else { "no" };
            let text = format!(
                "image: {}\nimage dim: {}\ndomain dim: {}\nclosure polyhedral: {}\nimage closed: {}",
                r.image,
                r.image_dim,
                r.domain_dim,
                yes_no(r.closure_polyhedral),
                yes_no(r.image_closed)
            );
            Output::of(text, &r)
        }
        TropCmd::CheckPure { poly, dim } => {
            let p = TropPoly::parse(&inputs.read(poly)?)?;
            let d = dim.unwrap_or(p.nvars() as u32 - 1);
            let pure = pure_dimension_check(&trop_hypersurface(&p), d);
            Output::new(pure.to_string(), json!({ "dim": d, "pure": pure }))
        }
    })
}

fn verify(cmd: &VerifyCmd, cfg: &Config) -> Output {
    let reports: Vec<Report> = match cmd {
        VerifyCmd::Figures => vec![suites::figures::run()],
        VerifyCmd::Axioms => suites::axioms(cfg),
        VerifyCmd::PaperSuite => suites::paper_suite(cfg),
    };
    let passed = reports.iter().filter(|r| r.passed()).count();
    let mut text = String::new();
    for r in &reports {
        text.push_str(&format!("{r}\n"));
        for e in &r.examples {
            text.push_str(&format!("    failure: {e}\n"));
        }
        for n in &r.notes {
            text.push_str(&format!("    note: {n}\n"));
        }
    }
    text.push_str(&format!("{passed} of {} criteria passed", reports.len()));
    let ok = passed == reports.len();
    Output { text, json: json!({ "passed": ok, "reports": reports }), ok }
}
