//! The worked lower-set figures.

use serde::Serialize;
use valdim_core::{Dim, DimPoint2, LowerSet2};

use crate::report::{Report, Tally};

#[derive(Clone, Debug, Serialize)]
pub struct Clause {
    pub name: &'static str,
    pub expected: String,
    pub actual: String,
}

impl Clause {
    pub fn ok(&self) -> bool {
        self.expected == self.actual
    }
}

fn pts(v: &[(u32, u32)]) -> Vec<DimPoint2> {
    v.iter().map(|&(a, b)| DimPoint2::new(a, b)).collect()
}

fn maxima(l: &LowerSet2) -> String {
    let v: Vec<String> = l.maxima().iter().map(|p| format!("({},{})", p.0[0], p.0[1])).collect();
    format!("{{{}}}", v.join(","))
}

pub fn d1() -> Vec<DimPoint2> {
    pts(&[(0, 0), (0, 3), (0, 4), (1, 4), (2, 0), (2, 1), (2, 2), (4, 0), (4, 1)])
}

pub fn d4() -> LowerSet2 {
    LowerSet2::lower_closure(pts(&[(1, 4), (5, 1)]))
}

pub fn clauses() -> Vec<Clause> {
    let d2 = LowerSet2::lower_closure(d1());
    vec![
        Clause { name: "lower closure of D1 is D2", expected: "{(1,4),(2,2),(4,1)}".into(), actual: maxima(&d2) },
        Clause {
            name: "shift closure of D4 is D5",
            expected: "{(1,4),(2,3),(3,2),(5,1),(6,0)}".into(),
            actual: maxima(&d4().shift_closure()),
        },
        Clause { name: "dim_N(D2) = 5", expected: Dim::Finite(5).to_string(), actual: d2.dim_nat().to_string() },
        Clause { name: "dim_N(D4) = 6", expected: Dim::Finite(6).to_string(), actual: d4().dim_nat().to_string() },
    ]
}

pub fn run() -> Report {
    let mut t = Tally::new(1, "figure reproduction", Some(std::time::Duration::from_secs(1)));
    t.instances = 1;
    for c in clauses() {
        t.check(c.ok(), || format!("{}: expected {}, got {}", c.name, c.expected, c.actual));
    }
    t.finish()
}
