//! Mixed engine suite.

use std::time::Duration;

use rand::seq::SliceRandom;
use rand::Rng;
use valdim_core::mixedcell::{
    apply_bijection, mixed_cell_decompose, mixed_dimension, monomial_decompose, parse_mixed_n,
    project_to_gamma, Bijection, MixedFormula, PuiseuxElement,
};
use valdim_core::semilinear::dimension;
use valdim_core::{Dim, Rat};

use crate::gen::{self, case_rng, Rng8};
use crate::oracle::poly_valuation;
use crate::report::{Config, Report, Tally};

const STREAM: u64 = 5;
const SAMPLE_POINTS: usize = 120;

fn random_bijection(rng: &mut Rng8, n: usize, roots: &[PuiseuxElement]) -> Bijection {
    match rng.gen_range(0..4) {
        0 => {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            Bijection::PermuteGamma(perm)
        }
        1 => Bijection::TranslateGamma((0..n).map(|_| Rat::new(rng.gen_range(-3..=3), rng.gen_range(1..=2))).collect()),
        2 => {
            // a product of elementary integer matrices
            let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
            for _ in 0..3 {
                let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if a == b {
                    m[a].iter_mut().for_each(|v| *v = -*v);
                } else {
                    let k = rng.gen_range(-2..=2);
                    let src = m[b].clone();
                    m[a].iter_mut().zip(src).for_each(|(v, s)| *v += k * s);
                }
            }
            Bijection::Unimodular(m)
        }
        _ => Bijection::TranslateK(roots.choose(rng).cloned().unwrap_or_else(PuiseuxElement::zero)),
    }
}

/// Image of a point under a bijection.
fn apply_to_point(b: &Bijection, x: &PuiseuxElement, g: &[Rat]) -> (PuiseuxElement, Vec<Rat>) {
    match b {
        Bijection::PermuteGamma(perm) => {
            let mut out = vec![Rat::zero(); g.len()];
            for (i, v) in g.iter().enumerate() {
                out[perm[i]] = v.clone();
            }
            (x.clone(), out)
        }
        Bijection::TranslateGamma(c) => (x.clone(), g.iter().zip(c).map(|(a, b)| a + b).collect()),
        Bijection::Unimodular(m) => {
            let out = m.iter().map(|row| row.iter().zip(g).fold(Rat::zero(), |acc, (&k, v)| acc + v.mul_int(k))).collect();
            (x.clone(), out)
        }
        Bijection::TranslateK(a) => (x - a, g.to_vec()),
    }
}

pub struct Instance {
    pub text: String,
    pub formula: MixedFormula,
    pub roots: Vec<PuiseuxElement>,
}

pub fn instance(seed: u64, index: usize) -> (Instance, Rng8) {
    let mut rng = case_rng(seed, STREAM, index);
    let roots = gen::root_set(&mut rng);
    let n = rng.gen_range(1..=2);
    let text = gen::mixed_formula(&mut rng, n, &roots);
    let formula = parse_mixed_n(&text, n).unwrap_or_else(|e| panic!("generated `{text}` does not parse: {e}"));
    (Instance { text, formula, roots }, rng)
}

pub fn run(cfg: &Config) -> Report {
    let mut t = Tally::new(5, "mixed engine", Some(Duration::from_secs(120)));
    for i in 0..cfg.cases_or(100) {
        let (inst, mut rng) = instance(cfg.seed, i);
        let f = &inst.formula;
        let n = f.ngamma();
        let polys = f.polys();
        let xs = gen::field_points(&mut rng, &inst.roots, SAMPLE_POINTS);

        let dec = monomial_decompose(&polys);
        let mut bad = None;
        for x in &xs {
            let hits: Vec<_> = dec.iter().filter(|(p, _)| p.contains(x)).collect();
            if hits.len() != 1 {
                bad = Some(format!("{x} lies in {} pieces", hits.len()));
                break;
            }
            let (piece, vals) = hits[0];
            let rho = piece.radius_of(x);
            if let Some((p, mv)) = polys.iter().zip(vals).find(|(p, mv)| mv.eval(&rho) != poly_valuation(p, x)) {
                bad = Some(format!("v({p}) at {x}: piece `{piece}` says {:?}", mv.eval(&rho)));
                break;
            }
        }
        t.check(bad.is_none(), || format!("#{i} `{}`: {}", inst.text, bad.unwrap()));

        let gammas: Vec<Vec<Rat>> =
            xs.iter().map(|_| (0..n).map(|_| Rat::new(rng.gen_range(-6..=6), 2)).collect()).collect();
        let cells = mixed_cell_decompose(f);
        let miscount = xs.iter().zip(&gammas).find(|(x, g)| {
            cells.iter().filter(|c| c.contains(x, g)).count() != usize::from(f.eval(x, g))
        });
        t.check(miscount.is_none(), || {
            let (x, g) = miscount.unwrap();
            format!("#{i} `{}`: ({x}, {g:?}) miscounted by the cells", inst.text)
        });

        let md = mixed_dimension(f);
        for _ in 0..4 {
            let b = random_bijection(&mut rng, n, &inst.roots);
            let image = apply_bijection(f, &b).expect("valid bijection");
            let mdi = mixed_dimension(&image);
            t.check(mdi == md, || format!("#{i} `{}`: {b:?} changes the dimension to {mdi:?}", inst.text));
            let moved = xs.iter().zip(&gammas).find(|(x, g)| {
                let (y, h) = apply_to_point(&b, x, g);
                image.eval(&y, &h) != f.eval(x, g)
            });
            t.check(moved.is_none(), || format!("#{i} `{}`: {b:?} image formula wrong", inst.text));
        }

        let over = cells.iter().find(|c| dimension(&c.projection()) > Dim::Finite(c.dim().0[1] + 1));
        t.check(over.is_none(), || format!("#{i} `{}`: projection of `{}` too large", inst.text, over.unwrap()));

        let dg = dimension(&project_to_gamma(f));
        let bound = md.shift_closure().dim_nat();
        t.check(dg <= bound, || format!("#{i} `{}`: Γ-projection has dimension {dg} > {bound}", inst.text));
        t.instances += 1;
    }
    t.finish()
}
