//! Tropical hypersurfaces and monomial images.

use std::time::Duration;

use rand::Rng;
use valdim_core::semilinear::{interior_dimension, parse_formula_n, GammaFormula, LinearAtom, Rel};
use valdim_core::trop::{image_report, pure_dimension_check, trop_hypersurface};
use valdim_core::{Dim, Rat};

use crate::gen::{self, case_rng};
use crate::oracle::{duplicate_min, grid, rat, Compiled, Q};
use crate::report::{Config, Report, Tally};

const STREAM_POLYS: u64 = 6;
const STREAM_IMAGES: u64 = 16;

pub fn run(cfg: &Config) -> Report {
    let mut t = Tally::new(6, "tropical suite", Some(Duration::from_secs(60)));
    let cases = cfg.cases_or(50);
    let points = grid(2, 3, 4);
    for i in 0..cases {
        let mut rng = case_rng(cfg.seed, STREAM_POLYS, i);
        let p = gen::trop_poly(&mut rng);
        let c = trop_hypersurface(&p);
        let faces: Vec<Compiled> = c.faces().iter().map(|f| Compiled::from_basic_set(f.set())).collect();
        let bad = points.iter().find(|x| {
            let xr: Vec<Rat> = x.iter().map(rat).collect();
            faces.iter().any(|f| f.eval(x)) != duplicate_min(p.terms(), &xr)
        });
        t.check(bad.is_none(), || format!("#{i} `{p}`: disagrees with the duplicate minimum at {:?}", bad.unwrap()));

        t.check(pure_dimension_check(&c, 1), || format!("#{i} `{p}`: not pure of dimension 1"));
        let thick = c.faces().iter().find(|f| interior_dimension(&f.set().to_formula()) != Dim::Finite(1));
        t.check(thick.is_none(), || format!("#{i} `{p}`: face `{}` is not 1-dimensional", thick.unwrap()));

        // each face carries a rational point on the hypersurface
        let unwitnessed = c.faces().iter().find(|f| {
            f.set().witness().is_none_or(|w| !f.contains(&w) || !duplicate_min(p.terms(), &w))
        });
        t.check(unwitnessed.is_none(), || format!("#{i} `{p}`: face `{}` has no rational witness", unwitnessed.unwrap()));
        t.instances += 1;
    }

    for i in 0..cases {
        let mut rng = case_rng(cfg.seed, STREAM_IMAGES, i);
        let (k, n) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let compact = i % 2 == 0;
        let map = gen::monomial_map(&mut rng, k, n);
        let text = gen::box_domain(&mut rng, n, compact);
        let domain = parse_formula_n(&text, n).unwrap();
        let rep = image_report(&domain, &map).expect("arities match");
        let what = || format!("#{i} {:?} on `{text}`", map.rows());

        t.check(rep.closure_polyhedral, || format!("{}: closure of the image is not polyhedral", what()));
        t.check(rep.dimension_bounded(), || {
            format!("{}: image dimension {} above {}", what(), rep.image_dim, rep.domain_dim)
        });
        if compact {
            t.check(rep.image_closed, || format!("{}: image of a compact box is not closed", what()));
        }

        // η ∈ image iff some X in the box has U·X = η
        let graph = map.rows().iter().enumerate().map(|(r, row)| {
            let mut coeffs = vec![0; k + n];
            coeffs[r] = 1;
            for (j, &u) in row.iter().enumerate() {
                coeffs[k + j] = -u;
            }
            LinearAtom::nonconstant(coeffs, Rel::Eq, Rat::zero())
        });
        let inputs: Vec<usize> = (k..k + n).collect();
        let joint = GammaFormula::conjunction(k + n, graph).unwrap().and(&domain.embed(k + n, &inputs));
        let joint = Compiled::new(&joint);
        let image = Compiled::new(&rep.image);
        let bad = grid(k, 3, 4).into_iter().find(|eta| {
            let mut p: Vec<Q> = eta.clone();
            p.resize(k + n, Q::from(0));
            image.eval(eta) != joint.exists(&p, &inputs)
        });
        t.check(bad.is_none(), || format!("{}: image wrong at {:?}", what(), bad.unwrap()));
        t.instances += 1;
    }
    t.finish()
}
