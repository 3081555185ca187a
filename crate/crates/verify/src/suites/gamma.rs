//! Value-group suites: elimination, cells, dimension axioms and closures.

use std::time::Duration;

use rand::Rng;
use valdim_core::semilinear::{
    cell_decompose, closure, dimension, equivalent, interior_dimension, is_empty_formula,
    normalize_dnf, parse_formula_n, project, BasicSet, GammaFormula, Rel,
};
use valdim_core::{Dim, Rat};

use crate::gen::{self, case_rng};
use crate::oracle::{grid, in_closure, Compiled, Q};
use crate::report::{Config, Report, Tally};

const STREAM_FORMULAS: u64 = 2;
const STREAM_AXIOMS: u64 = 4;
const STREAM_CLOSURE: u64 = 7;

/// A random formula together with the coordinates kept by its projection.
pub struct Instance {
    pub text: String,
    pub formula: GammaFormula,
    pub keep: Vec<usize>,
}

impl Instance {
    pub fn eliminated(&self) -> Vec<usize> {
        (0..self.formula.nvars()).filter(|v| !self.keep.contains(v)).collect()
    }
}

/// Instance `index` of the shared elimination and cell suites: `n ≤ 3`
/// variables, at most four atoms, at most two variables eliminated.
pub fn instance(seed: u64, index: usize) -> Instance {
    let mut rng = case_rng(seed, STREAM_FORMULAS, index);
    let n = rng.gen_range(1..=3);
    let atoms = rng.gen_range(1..=4);
    let text = gen::gamma_formula(&mut rng, n, atoms);
    let formula = parse_formula_n(&text, n).expect("generated text parses");
    let keep = loop {
        let keep: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if n - keep.len() <= 2 {
            break keep;
        }
    };
    Instance { text, formula, keep }
}

fn embed_point(n: usize, keep: &[usize], eta: &[Q]) -> Vec<Q> {
    let mut p = vec![Q::from(0); n];
    for (k, v) in keep.iter().zip(eta) {
        p[*k] = *v;
    }
    p
}

/// Projection against an existential test at every point of `[−4, 4]ᵏ`
/// with denominator 8.
pub fn elimination(cfg: &Config) -> Report {
    let mut t = Tally::new(2, "elimination soundness", Some(Duration::from_secs(30)));
    for i in 0..cfg.cases_or(500) {
        let inst = instance(cfg.seed, i);
        let n = inst.formula.nvars();
        let proj = Compiled::new(&project(&inst.formula, &inst.keep));
        let full = Compiled::new(&inst.formula);
        let elim = inst.eliminated();
        let mismatch = grid(inst.keep.len(), 4, 8)
            .into_iter()
            .find(|eta| proj.eval(eta) != full.exists(&embed_point(n, &inst.keep, eta), &elim));
        t.check(mismatch.is_none(), || {
            format!("#{i} `{}` keep {:?}: disagreement at {:?}", inst.text, inst.keep, mismatch.unwrap())
        });
        t.instances += 1;
    }
    t.finish()
}

type Bound = Option<(Rat, bool)>;

/// Bounds on the first coordinate stated by atoms in that coordinate alone,
/// each with its strictness.
fn first_range(b: &BasicSet) -> (Bound, Bound) {
    let tighter = |old: Bound, new: (Rat, bool), lower: bool| match old {
        Some((v, s)) if v == new.0 => Some((v, s || new.1)),
        Some((v, s)) if (v > new.0) == lower => Some((v, s)),
        _ => Some(new),
    };
    let (mut lo, mut hi) = (None, None);
    for a in b.atoms() {
        let c = a.coeff(0);
        if c == 0 || a.coeffs()[1..].iter().any(|&k| k != 0) {
            continue;
        }
        let v = a.rhs() / &Rat::from_int(c);
        let strict = a.rel().is_strict();
        if a.rel() == Rel::Eq || c > 0 {
            hi = tighter(hi, (v.clone(), strict), false);
        }
        if a.rel() == Rel::Eq || c < 0 {
            lo = tighter(lo, (v, strict), true);
        }
    }
    (lo, hi)
}

/// Whether the first-coordinate bounds alone separate two sets.
fn separated(a: &(Bound, Bound), b: &(Bound, Bound)) -> bool {
    let below = |hi: &Bound, lo: &Bound| match (hi, lo) {
        (Some((h, hs)), Some((l, ls))) => h < l || (h == l && (*hs || *ls)),
        _ => false,
    };
    below(&a.1, &b.0) || below(&b.1, &a.0)
}

/// `b \ c` as a disjoint union of basic sets, empty pieces dropped.
fn subtract(b: &BasicSet, c: &BasicSet) -> Vec<BasicSet> {
    if b.intersect(c).is_empty() {
        return vec![b.clone()];
    }
    let mut out = Vec::new();
    let mut prefix = b.clone();
    for a in c.atoms() {
        for neg in a.negate() {
            let piece = prefix.with_atom(neg);
            if !piece.is_empty() {
                out.push(piece);
            }
        }
        prefix = prefix.with_atom(a.clone());
        if prefix.is_empty() {
            break;
        }
    }
    out
}

/// Cells: disjoint and covering (symbolically and on a grid), and the two
/// dimension computations agree.
pub fn cells(cfg: &Config) -> Report {
    let mut t = Tally::new(3, "cell decomposition", Some(Duration::from_secs(60)));
    for i in 0..cfg.cases_or(500) {
        let inst = instance(cfg.seed, i);
        let f = &inst.formula;
        let cells = cell_decompose(f);
        let sets: Vec<BasicSet> = cells.iter().map(|c| c.to_basic_set()).collect();

        let ranges: Vec<_> = sets.iter().map(first_range).collect();
        let overlap = (0..sets.len())
            .flat_map(|a| (a + 1..sets.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| !separated(&ranges[a], &ranges[b]))
            .find(|&(a, b)| !sets[a].intersect(&sets[b]).is_empty());
        t.check(overlap.is_none(), || format!("#{i} `{}`: cells {:?} overlap", inst.text, overlap.unwrap()));

        let outside = sets.iter().position(|s| !is_empty_formula(&s.to_formula().and(&f.negate())));
        t.check(outside.is_none(), || format!("#{i} `{}`: cell {} leaves the set", inst.text, outside.unwrap()));

        let mut rest = normalize_dnf(f);
        for s in &sets {
            rest = rest.iter().flat_map(|b| subtract(b, s)).collect();
        }
        t.check(rest.is_empty(), || format!("#{i} `{}`: uncovered part {}", inst.text, rest[0]));

        let compiled: Vec<Compiled> = sets.iter().map(Compiled::from_basic_set).collect();
        let full = Compiled::new(f);
        let bad = grid(f.nvars(), 3, 2).into_iter().find(|x| {
            compiled.iter().filter(|c| c.eval(x)).count() != usize::from(full.eval(x))
        });
        t.check(bad.is_none(), || format!("#{i} `{}`: grid point {:?} miscounted", inst.text, bad.unwrap()));

        let (by_cells, by_interior) = (dimension(f), interior_dimension(f));
        t.check(by_cells == by_interior, || {
            format!("#{i} `{}`: cells give {by_cells}, interiors give {by_interior}", inst.text)
        });
        t.instances += 1;
    }
    t.finish()
}

/// Union, product, projection and frontier laws.
pub fn axioms(cfg: &Config) -> Report {
    let mut t = Tally::new(4, "dimension axioms", None);
    for i in 0..cfg.cases_or(200) {
        let mut rng = case_rng(cfg.seed, STREAM_AXIOMS, i);
        let n = rng.gen_range(1..=2);
        let m = rng.gen_range(1..=2);
        let mut atoms = || rng.gen_range(1..=3);
        let sizes = [atoms(), atoms(), atoms()];
        let texts = [
            gen::gamma_formula(&mut rng, n, sizes[0]),
            gen::gamma_formula(&mut rng, n, sizes[1]),
            gen::gamma_formula(&mut rng, m, sizes[2]),
        ];
        let f = parse_formula_n(&texts[0], n).unwrap();
        let h = parse_formula_n(&texts[1], n).unwrap();
        let g = parse_formula_n(&texts[2], m).unwrap();
        let (df, dh, dg) = (dimension(&f), dimension(&h), dimension(&g));

        let du = dimension(&f.or(&h));
        t.check(du == df.max(dh), || format!("#{i} union of `{}` and `{}`: {du}", texts[0], texts[1]));

        let dp = dimension(&f.product(&g));
        t.check(dp == df.plus(dg), || format!("#{i} product of `{}` and `{}`: {dp}", texts[0], texts[2]));

        let keep: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        let dproj = dimension(&project(&f, &keep));
        t.check(dproj <= df, || format!("#{i} projection of `{}` to {keep:?}: {dproj} > {df}", texts[0]));

        if df != Dim::NegInf {
            let cl = closure(&f);
            if !equivalent(&cl, &f) {
                let dfr = dimension(&cl.and(&f.negate()));
                t.check(dfr < df, || format!("#{i} frontier of `{}`: {dfr} not below {df}", texts[0]));
            }
        }
        t.instances += 1;
    }
    t.finish()
}

/// Closures of basic sets against the segment criterion.
pub fn closures(cfg: &Config) -> Report {
    let mut t = Tally::new(7, "closure lemma", None);
    let mut caveat = 0;
    for i in 0..cfg.cases_or(200) {
        let mut rng = case_rng(cfg.seed, STREAM_CLOSURE, i);
        let n = rng.gen_range(1..=2);
        let b = gen::basic_set(&mut rng, n);
        let relaxed = b.relaxed();
        let cl = closure(&b.to_formula());
        let fast = Compiled::from_basic_set(&b);
        let point = fast.any_point();

        t.check(point.is_none() == b.is_empty(), || format!("#{i} `{b}`: emptiness disagrees with the reference"));
        match point {
            Some(p) => {
                t.check(equivalent(&cl, &relaxed.to_formula()), || format!("#{i} `{b}`: closure is not `{relaxed}`"));
                let cl_fast = Compiled::new(&cl);
                let bad = grid(n, 3, 4).into_iter().find(|x| cl_fast.eval(x) != in_closure(&fast, &p, x));
                t.check(bad.is_none(), || format!("#{i} `{b}`: closure wrong at {:?}", bad.unwrap()));
            }
            None => {
                t.check(Compiled::new(&cl).any_point().is_none(), || format!("#{i} `{b}`: empty set, nonempty closure"));
                if !relaxed.is_empty() {
                    caveat += 1;
                }
            }
        }
        t.check(equivalent(&closure(&cl), &cl), || format!("#{i} `{b}`: closure not idempotent"));
        t.instances += 1;
    }
    t.notes.push(format!("{caveat} empty sets with a nonempty relaxation"));
    t.finish()
}
