//! Seeded random instances. Each case draws from its own ChaCha stream, so a
//! case is reproducible from `(seed, suite, index)` alone.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use valdim_core::mixedcell::{FactoredPoly, PuiseuxElement};
use valdim_core::semilinear::{BasicSet, LinearAtom, Normalized, Rel};
use valdim_core::trop::{MonomialMap, TropPoly};
use valdim_core::Rat;

pub type Rng8 = ChaCha8Rng;

pub fn case_rng(seed: u64, suite: u64, index: usize) -> Rng8 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((suite << 32) | index as u64);
    rng
}

const RELS: [&str; 6] = ["<", "<=", "=", ">=", ">", "!="];

/// `Σ c·name_i` with explicit signs, or `0` for the zero vector.
pub fn linear_text(coeffs: &[i64], name: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mag = c.unsigned_abs();
        let sign = match (out.is_empty(), c < 0) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        out.push_str(sign);
        if mag != 1 {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(&name(i));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn nonzero_coeffs(rng: &mut Rng8, n: usize, bound: i64) -> Vec<i64> {
    loop {
        let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
        if c.iter().any(|&v| v != 0) {
            return c;
        }
    }
}

fn small_rat(rng: &mut Rng8, num: i64, max_den: i64) -> Rat {
    Rat::new(rng.gen_range(-num..=num), rng.gen_range(1..=max_den))
}

/// A Γ-atom with coefficients in `[−3, 3]` and a constant of denominator ≤ 2.
fn gamma_atom(rng: &mut Rng8, n: usize) -> String {
    let lhs = linear_text(&nonzero_coeffs(rng, n, 3), |i| format!("x{}", i + 1));
    let rel = RELS.choose(rng).unwrap();
    format!("{lhs} {rel} {}", small_rat(rng, 6, 2))
}

/// A Boolean tree over exactly `atoms` leaves.
fn combine(rng: &mut Rng8, atoms: usize, leaf: &mut impl FnMut(&mut Rng8) -> String) -> String {
    let body = if atoms <= 1 {
        leaf(rng)
    } else {
        let left = rng.gen_range(1..atoms);
        let a = combine(rng, left, leaf);
        let b = combine(rng, atoms - left, leaf);
        let op = if rng.gen_bool(0.5) { "&" } else { "|" };
        format!("({a}) {op} ({b})")
    };
    if rng.gen_bool(0.2) {
        format!("!({body})")
    } else {
        body
    }
}

/// Text of a random Boolean combination of `atoms` Γ-atoms.
pub fn gamma_formula(rng: &mut Rng8, n: usize, atoms: usize) -> String {
    combine(rng, atoms, &mut |r| gamma_atom(r, n))
}

/// A conjunction of one to four atoms; one case in four contains a pair of
/// opposite strict inequalities, so that the set may be empty while its
/// relaxation is not.
pub fn basic_set(rng: &mut Rng8, n: usize) -> BasicSet {
    let mut atoms = Vec::new();
    let push = |atoms: &mut Vec<LinearAtom>, c: Vec<i64>, rel: Rel, rhs: Rat| {
        if let Normalized::Atom(a) = LinearAtom::new(c, rel, rhs) {
            atoms.push(a);
        }
    };
    if rng.gen_bool(0.25) {
        let c = nonzero_coeffs(rng, n, 3);
        let q = small_rat(rng, 4, 2);
        push(&mut atoms, c.clone(), Rel::Lt, q.clone());
        push(&mut atoms, c.iter().map(|v| -v).collect(), Rel::Lt, -q);
    }
    for _ in 0..rng.gen_range(1..=4 - atoms.len().min(2)) {
        let rel = [Rel::Lt, Rel::Le, Rel::Le, Rel::Eq][rng.gen_range(0..4)];
        push(&mut atoms, nonzero_coeffs(rng, n, 3), rel, small_rat(rng, 4, 2));
    }
    BasicSet::new(n, atoms)
}

/// Finite Puiseux elements used as roots and as centers of sample points.
const ROOT_POOL: &[&str] =
    &["0", "1", "-1", "t", "-t", "2*t", "1 + t", "t^2", "t^(1/2)", "1 + t^2", "3*t^(3/2)", "t - t^2"];

pub fn puiseux(text: &str) -> PuiseuxElement {
    PuiseuxElement::parse(text).expect("pool literal")
}

/// Up to four distinct roots.
pub fn root_set(rng: &mut Rng8) -> Vec<PuiseuxElement> {
    let k = rng.gen_range(1..=4);
    ROOT_POOL.choose_multiple(rng, k).map(|s| puiseux(s)).collect()
}

/// A factored polynomial whose roots come from `roots`.
pub fn factored_poly(rng: &mut Rng8, roots: &[PuiseuxElement]) -> FactoredPoly {
    let k = rng.gen_range(0..=roots.len().min(3));
    let picked: Vec<PuiseuxElement> = roots.choose_multiple(rng, k).cloned().collect();
    let factors: Vec<(PuiseuxElement, u32)> = picked.into_iter().map(|r| (r, rng.gen_range(1..=2))).collect();
    FactoredPoly::new(Rat::from_int(rng.gen_range(1..=3)), factors).expect("nonzero leading")
}

/// Text of a random mixed formula over `ngamma` Γ-variables with roots drawn
/// from `roots`.
pub fn mixed_formula(rng: &mut Rng8, ngamma: usize, roots: &[PuiseuxElement]) -> String {
    let polys: Vec<FactoredPoly> = (0..rng.gen_range(1..=2)).map(|_| factored_poly(rng, roots)).collect();
    let atoms = rng.gen_range(1..=3);
    combine(rng, atoms, &mut |r| {
        let p = polys.choose(r).unwrap();
        if !p.roots().is_empty() && r.gen_bool(0.15) {
            let rel = if r.gen_bool(0.5) { "=" } else { "!=" };
            return format!("{p} {rel} 0");
        }
        let kc = [1i64, 1, 2, -1][r.gen_range(0..4)];
        let mut coeffs = vec![kc];
        coeffs.extend((0..ngamma).map(|_| r.gen_range(-2..=2)));
        let lhs = linear_text(&coeffs, |i| if i == 0 { format!("v({p})") } else { format!("g{i}") });
        let rel = RELS.choose(r).unwrap();
        format!("{lhs} {rel} {}", small_rat(r, 4, 2))
    })
}

/// Sample points of the valued field: perturbations of the roots and of 0 at
/// a spread of valuations, topped up with random two-term perturbations.
pub fn field_points(rng: &mut Rng8, roots: &[PuiseuxElement], count: usize) -> Vec<PuiseuxElement> {
    let mut centers = roots.to_vec();
    centers.push(PuiseuxElement::zero());
    let coefs = [Rat::one(), Rat::from_int(-1), Rat::from_int(2), Rat::new(1, 2)];
    let exps: Vec<Rat> = ["-1", "0", "1/2", "1", "3/2", "2", "3"].iter().map(|s| s.parse().unwrap()).collect();
    let mut out = centers.clone();
    for c in &centers {
        for k in &coefs {
            for e in &exps {
                out.push(c + &PuiseuxElement::monomial(k.clone(), e.clone()));
            }
        }
    }
    while out.len() < count {
        let c = centers.choose(rng).unwrap();
        let a = PuiseuxElement::monomial(small_nonzero(rng), Rat::new(rng.gen_range(-2..=8), rng.gen_range(1..=2)));
        let b = PuiseuxElement::monomial(small_nonzero(rng), Rat::new(rng.gen_range(0..=10), rng.gen_range(1..=3)));
        out.push(&(c + &a) + &b);
    }
    out
}

fn small_nonzero(rng: &mut Rng8) -> Rat {
    let v = rng.gen_range(1..=3);
    Rat::from_int(if rng.gen_bool(0.5) { v } else { -v })
}

/// A bivariate min-plus polynomial with `3..=6` terms.
pub fn trop_poly(rng: &mut Rng8) -> TropPoly {
    let mut exps: Vec<Vec<u32>> = (0..=3).flat_map(|a| (0..=3).map(move |b| vec![a, b])).collect();
    exps.shuffle(rng);
    let k = rng.gen_range(3..=6);
    let terms = exps.into_iter().take(k).map(|e| (e, small_rat(rng, 4, 3))).collect();
    TropPoly::new(terms).expect("distinct exponents")
}

pub fn monomial_map(rng: &mut Rng8, outputs: usize, inputs: usize) -> MonomialMap {
    let rows = (0..outputs).map(|_| nonzero_coeffs(rng, inputs, 2)).collect();
    MonomialMap::new(rows).expect("rectangular")
}

/// A box `lo ⋈ x_i ⋈ hi` per coordinate. Compact boxes use weak bounds on
/// both sides; otherwise each side is weak, strict or absent.
pub fn box_domain(rng: &mut Rng8, n: usize, compact: bool) -> String {
    let mut parts = Vec::new();
    for i in 1..=n {
        let lo = rng.gen_range(-3..=2);
        let hi = if rng.gen_bool(0.15) { lo } else { rng.gen_range(lo + 1..=3) };
        // a degenerate side stays weak so the box is never empty
        let compact = compact || hi == lo;
        if let Some(rel) = bound_side(rng, compact) {
            parts.push(format!("{lo} {rel} x{i}"));
        }
        if let Some(rel) = bound_side(rng, compact) {
            parts.push(format!("x{i} {rel} {hi}"));
        }
    }
    if parts.is_empty() {
        "true".to_string()
    } else {
        parts.join(" & ")
    }
}

fn bound_side(rng: &mut Rng8, compact: bool) -> Option<&'static str> {
    if compact {
        return Some("<=");
    }
    [Some("<="), Some("<"), None][rng.gen_range(0..3)]
}
