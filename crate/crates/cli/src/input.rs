//! Reading command inputs and lower-set literals.

use std::fmt;
use std::io::Read;

use serde::Deserialize;
use serde_json::Value;
use valdim_core::{DimPoint, Dim, Error, LowerSet2, LowerSet3};

use crate::Failure;

/// Resolves input arguments: `-` is stdin (once), `@path` a file, anything
/// else the text itself.
pub struct Inputs<'a> {
    stdin: Option<&'a mut dyn Read>,
}

impl<'a> Inputs<'a> {
    pub fn new(stdin: &'a mut dyn Read) -> Self {
        Inputs { stdin: Some(stdin) }
    }

    pub fn read(&mut self, arg: &str) -> Result<String, Failure> {
        if arg == "-" {
            let stdin = self.stdin.take().ok_or_else(|| Failure::Io("stdin can be read only once".into()))?;
            let mut text = String::new();
            stdin.read_to_string(&mut text).map_err(|e| Failure::Io(format!("reading stdin: {e}")))?;
            Ok(text)
        } else if let Some(path) = arg.strip_prefix('@') {
            std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("reading {path}: {e}")))
        } else {
            Ok(arg.to_string())
        }
    }
}

/// A lower set of ℕ² or ℕ³, decided by the length of its points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnySet {
    Two(LowerSet2),
    Three(LowerSet3),
}

impl AnySet {
    pub fn combine(&self, other: &AnySet, op: &str) -> Result<AnySet, Error> {
        let add = op == "add";
        match (self, other) {
            (AnySet::Two(a), AnySet::Two(b)) => Ok(AnySet::Two(if add { a.add(b) } else { a.join(b) })),
            (AnySet::Three(a), AnySet::Three(b)) => Ok(AnySet::Three(if add { a.add(b) } else { a.join(b) })),
            (a, b) => Err(Error::Arity { expected: a.arity(), found: b.arity() }),
        }
    }

    fn arity(&self) -> usize {
        match self {
            AnySet::Two(_) => 2,
            AnySet::Three(_) => 3,
        }
    }

    pub fn shift_closure(&self) -> AnySet {
        match self {
            AnySet::Two(a) => AnySet::Two(a.shift_closure()),
            AnySet::Three(a) => AnySet::Three(a.shift_closure3()),
        }
    }

    pub fn dim_nat(&self) -> Dim {
        match self {
            AnySet::Two(a) => a.dim_nat(),
            AnySet::Three(a) => a.dim_nat(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnySet::Two(a) => serde_json::to_value(a),
            AnySet::Three(a) => serde_json::to_value(a),
        }
        .expect("lower sets serialize")
    }
}

impl fmt::Display for AnySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnySet::Two(a) => write!(f, "{a}"),
            AnySet::Three(a) => write!(f, "{a}"),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Repr {
    Points(Vec<Vec<u32>>),
    Maxima { maxima: Vec<Vec<u32>> },
}

/// Byte offset of a JSON error position.
fn offset(text: &str, line: usize, column: usize) -> usize {
    let before: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    before + column.saturating_sub(1)
}

/// `[[1,4],[2,2]]` or `{"maxima": [[1,4],[2,2]]}`; the empty list is the
/// empty lower set of ℕ².
pub fn lower_set(text: &str) -> Result<AnySet, Failure> {
    let syntax = |pos, msg: String| Failure::Engine(Error::Syntax { pos, msg });
    let value: Value =
        serde_json::from_str(text).map_err(|e| syntax(offset(text, e.line(), e.column()), e.to_string()))?;
    let points = match Repr::deserialize(value) {
        Ok(Repr::Points(p) | Repr::Maxima { maxima: p }) => p,
        Err(_) => return Err(syntax(0, "expected a list of points of natural numbers".into())),
    };
    let arity = points.first().map_or(2, Vec::len);
    if let Some(p) = points.iter().find(|p| p.len() != arity) {
        return Err(Error::Arity { expected: arity, found: p.len() }.into());
    }
    match arity {
        2 => Ok(AnySet::Two(LowerSet2::lower_closure(points.iter().map(|p| DimPoint([p[0], p[1]]))))),
        3 => Ok(AnySet::Three(LowerSet3::lower_closure(points.iter().map(|p| DimPoint([p[0], p[1], p[2]]))))),
        n => Err(Error::Invalid(format!("points need 2 or 3 coordinates, found {n}")).into()),
    }
}
