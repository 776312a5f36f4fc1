//! Resolution tests: classical pinned examples (Koszul complexes, the
//! twisted cubic), exactness and minimality properties on random ideals,
//! and Hilbert data cross-checked between counting, series expansion, and
//! polynomial evaluation.

use super::*;
use crate::gb::Strategy;
use crate::gf::PrimeField;
use crate::mpoly::MonomialOrder;
use crate::pipeline::rng::SplitMix64;
use crate::mpoly::{Monomial, Poly};

fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn md(a: i64) -> Multidegree {
    Multidegree(a, 0)
}

fn md2(a: i64, b: i64) -> Multidegree {
    Multidegree(a, b)
}

fn p3_ring() -> Ring {
    Ring::standard(fp(997), &["x", "y", "z", "w"]).unwrap()
}

fn p5_ring() -> Ring {
    Ring::standard(fp(997), &["x_0", "x_1", "x_2", "x_3", "x_4", "x_5"]).unwrap()
}

fn cox_ring() -> Ring {
    // Cox ring of P^1 × P^2.
    Ring::new(
        fp(997),
        vec![
            "x_0".into(),
            "x_1".into(),
            "y_0".into(),
            "y_1".into(),
            "y_2".into(),
        ],
        vec![md2(1, 0), md2(1, 0), md2(0, 1), md2(0, 1), md2(0, 1)],
        2,
        MonomialOrder::GrevLex,
    )
    .unwrap()
}

fn ideal(ring: &Ring, gens: &[&str]) -> Ideal {
    Ideal::new(
        ring.clone(),
        gens.iter().map(|s| ring.parse_poly(s).unwrap()).collect(),
    )
}

fn twisted_cubic() -> Ideal {
    let r = p3_ring();
    ideal(&r, &["x*z - y^2", "x*w - y*z", "y*w - z^2"])
}

#[test]
fn free_module_resolves_to_itself() {
    let r = p3_ring();
    let m = ModulePresentation::free(FreeModule::rank1(r.clone()));
    let c = free_resolution(&m, true, &GbOptions::default()).unwrap();
    assert_eq!(c.len(), 0);
    let series = hilbert_series_numerator(&c);
    assert_eq!(
        series.numerator().iter().collect::<Vec<_>>(),
        vec![(&md(0), &1)]
    );
    assert_eq!(series.denominator(), vec![(md(1), 4)]);
    let p = hilbert_polynomial(&c).unwrap();
    for d in 0..5 {
        assert_eq!(p.eval_int(d), r.piece_dim(md(d)) as i64);
    }
}

#[test]
fn koszul_complex_of_two_quadrics_in_p5() {
    let r = p5_ring();
    let i = ideal(&r, &["x_0*x_1 + x_2*x_3 + x_4*x_5", "x_0^2 + x_1^2 + x_2*x_4"]);
    let m = ModulePresentation::quotient_ring(&i);
    let c = free_resolution(&m, true, &GbOptions::default()).unwrap();
    assert!(c.is_complex());
    assert!(c.is_minimal());
    let b = betti_table(&c).unwrap();
    assert_eq!(b.totals(), vec![1, 2, 1]);
    assert_eq!(b.entry(0, md(0)), 1);
    assert_eq!(b.entry(1, md(2)), 2);
    assert_eq!(b.entry(2, md(4)), 1);

    let series = hilbert_series_numerator(&c);
    let expected: BTreeMap<Multidegree, i64> =
        [(md(0), 1), (md(2), -2), (md(4), 1)].into_iter().collect();
    assert_eq!(series.numerator(), &expected);

    // deg X = 4, dim X = 3 (Krull dimension 4).
    let dg = degree_genus(&i).unwrap();
    assert_eq!((dg.dim, dg.degree, dg.genus), (4, 4, None));
    assert!(matches!(
        curve_degree_genus(&i),
        Err(ResolveError::NotACurve { dim: 4 })
    ));
}

#[test]
fn twisted_cubic_resolution_and_invariants() {
    let i = twisted_cubic();
    let m = ModulePresentation::quotient_ring(&i);
    let c = free_resolution(&m, true, &GbOptions::default()).unwrap();
    let b = betti_table(&c).unwrap();
    assert_eq!(b.totals(), vec![1, 3, 2]);
    assert_eq!(b.entry(1, md(2)), 3);
    assert_eq!(b.entry(2, md(3)), 2);

    // Hilbert polynomial 3d + 1.
    let p = hilbert_polynomial(&c).unwrap();
    assert_eq!(p.degree(), Some(1));
    assert_eq!(p.eval_int(0), 1);
    assert_eq!(p.eval_int(5), 16);
    for d in 0..=6 {
        assert_eq!(p.eval_int(d), m.hilbert_function(md(d)).unwrap() as i64);
    }

    let dg = degree_genus(&i).unwrap();
    assert_eq!((dg.dim, dg.degree, dg.genus), (2, 3, Some(0)));
    assert_eq!(curve_degree_genus(&i).unwrap(), (3, 0));
}

#[test]
fn betti_table_prints_in_row_format() {
    let i = twisted_cubic();
    let c = free_resolution(
        &ModulePresentation::quotient_ring(&i),
        true,
        &GbOptions::default(),
    )
    .unwrap();
    let b = betti_table(&c).unwrap();
    let expected = concat!(
        "       0 1 2\n",
        "total: 1 3 2\n",
        "    0: 1 . .\n",
        "    1: . 3 2",
    );
    assert_eq!(b.to_string(), expected);
    assert_eq!(
        b.to_json(),
        serde_json::json!({"0": {"0": 1}, "1": {"2": 3}, "2": {"3": 2}})
    );
}

#[test]
fn hilbert_function_of_the_cox_ring() {
    let r = cox_ring();
    let m = ModulePresentation::free(FreeModule::rank1(r.clone()));
    assert_eq!(m.hilbert_function(md2(1, 1)).unwrap(), 6);
    assert_eq!(m.hilbert_function(md2(3, 4)).unwrap(), 60);
    assert_eq!(m.hilbert_function(md2(0, 0)).unwrap(), 1);
    assert_eq!(m.hilbert_function(md2(-1, 2)).unwrap(), 0);
}

#[test]
fn bigraded_koszul_resolution() {
    let r = cox_ring();
    let i = ideal(&r, &["x_0*y_0", "x_1*y_1"]);
    let m = ModulePresentation::quotient_ring(&i);
    let c = free_resolution(&m, true, &GbOptions::default()).unwrap();
    let b = betti_table(&c).unwrap();
    assert_eq!(b.totals(), vec![1, 2, 1]);
    assert_eq!(b.entry(1, md2(1, 1)), 2);
    assert_eq!(b.entry(2, md2(2, 2)), 1);

    // Series expansion matches the Hilbert function on a 5×4 grid.
    let series = hilbert_series_numerator(&c);
    for a in 0..5 {
        for bb in 0..4 {
            let d = md2(a, bb);
            assert_eq!(
                series.coefficient(d),
                m.hilbert_function(d).unwrap() as i64,
                "degree {d:?}"
            );
            assert_eq!(c.euler_piece(d), m.hilbert_function(d).unwrap() as i64);
        }
    }
    // Hilbert polynomials are rank-1 only.
    assert!(matches!(
        hilbert_polynomial(&c),
        Err(ResolveError::NotStandardGraded)
    ));
}

#[test]
fn single_point_reports_no_genus() {
    let r = Ring::standard(fp(997), &["x", "y", "z"]).unwrap();
    let i = ideal(&r, &["x", "y"]);
    let dg = degree_genus(&i).unwrap();
    assert_eq!((dg.dim, dg.degree, dg.genus), (1, 1, None));
}

#[test]
fn minimal_generator_examples() {
    let r = Ring::standard(fp(997), &["x", "y"]).unwrap();
    let i = ideal(&r, &["x^2", "x^3"]);
    let min = i.minimal_generators().unwrap();
    assert_eq!(min.len(), 1);
    assert_eq!(r.poly_string(&min[0].0), "x^2");
    assert_eq!(min[0].1, md(2));

    // Module version.
    let fm = FreeModule::new(r.clone(), vec![md(0), md(0)]);
    let x = r.parse_poly("x").unwrap();
    let x2 = r.parse_poly("x^2").unwrap();
    let y = r.parse_poly("y").unwrap();
    let gens = vec![
        fm.elt_from_polys(vec![x2, Poly::zero()]),
        fm.elt_from_polys(vec![x.clone(), Poly::zero()]),
        fm.elt_from_polys(vec![Poly::zero(), y]),
    ];
    let min = minimal_generators(&fm, &gens).unwrap();
    assert_eq!(min.len(), 2);
    assert_eq!(min[0].1, md(1)); // (x, 0) comes first after degree sort
    assert_eq!(min[1].1, md(1));
    assert_eq!(min[0].0.comps[0], x);
}

#[test]
fn redundant_relations_make_nonminimal_complexes() {
    let r = Ring::standard(fp(997), &["x", "y"]).unwrap();
    let fm = FreeModule::rank1(r.clone());
    let x = r.parse_poly("x").unwrap();
    let m = ModulePresentation::new(
        fm.clone(),
        vec![fm.poly_elt(x.clone()), fm.poly_elt(x)],
    )
    .unwrap();
    let raw = free_resolution(&m, false, &GbOptions::default()).unwrap();
    assert!(raw.is_complex());
    // The duplicate generator forces a unit entry in the syzygy map.
    assert!(!raw.is_minimal());
    assert!(matches!(
        betti_table(&raw),
        Err(ResolveError::NotMinimal { .. })
    ));
    // The minimal resolution of S/⟨x⟩ is one step.
    let min = free_resolution(&m, true, &GbOptions::default()).unwrap();
    assert_eq!(min.len(), 1);
    assert!(betti_table(&min).is_ok());
}

#[test]
fn ideal_as_module_presentation() {
    let i = twisted_cubic();
    let m = ModulePresentation::of_ideal_module(&i).unwrap();
    assert_eq!(m.ambient().gen_degs(), &[md(2), md(2), md(2)]);
    assert_eq!(m.relations().len(), 2);
    // Hilbert function of the ideal-as-module equals the ideal's piece
    // dimensions.
    for d in 0..=6 {
        assert_eq!(
            m.hilbert_function(md(d)).unwrap(),
            i.piece_dim(md(d)).unwrap(),
            "degree {d}"
        );
    }
    // Its resolution finishes the twisted cubic's: 0 → S(−3)² → S(−2)³.
    let c = free_resolution(&m, true, &GbOptions::default()).unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(c.module(1).gen_degs(), &[md(3), md(3)]);
}

#[test]
fn random_resolutions_are_exact_minimal_and_strategy_independent() {
    let mut rng = SplitMix64::new(61);
    let r = Ring::standard(fp(997), &["x", "y", "z"]).unwrap();
    for case in 0..10 {
        let ngens = 2 + (case % 2);
        let gens: Vec<Poly> = (0..ngens)
            .map(|_| {
                let d = 2 + rng.next_below(2) as i64;
                random_homog_poly(&r, &mut rng, d)
            })
            .collect();
        let i = Ideal::new(r.clone(), gens);
        let m = ModulePresentation::quotient_ring(&i);

        let sugar = free_resolution(
            &m,
            true,
            &GbOptions {
                strategy: Strategy::Sugar,
                degree_bound: None,
            },
        )
        .unwrap();
        assert!(sugar.is_complex(), "case {case}");
        assert!(sugar.is_minimal(), "case {case}");
        assert!(sugar.len() <= 3, "case {case}: length exceeds #vars");

        let fifo = free_resolution(
            &m,
            true,
            &GbOptions {
                strategy: Strategy::DegreeFifo,
                degree_bound: None,
            },
        )
        .unwrap();
        assert_eq!(
            betti_table(&sugar).unwrap(),
            betti_table(&fifo).unwrap(),
            "case {case}: Betti numbers depend on pair strategy"
        );

        // Euler characteristic and series expansion equal the Hilbert
        // function everywhere on a grid.
        let series = hilbert_series_numerator(&sugar);
        for d in 0..=7 {
            let hf = m.hilbert_function(md(d)).unwrap() as i64;
            assert_eq!(sugar.euler_piece(md(d)), hf, "case {case} degree {d}");
            assert_eq!(series.coefficient(md(d)), hf, "case {case} degree {d}");
        }

        // The non-minimal route is still a resolution with the same Euler
        // data.
        let raw = free_resolution(&m, false, &GbOptions::default()).unwrap();
        assert!(raw.is_complex(), "case {case}");
        for d in 0..=7 {
            assert_eq!(
                raw.euler_piece(md(d)),
                m.hilbert_function(md(d)).unwrap() as i64,
                "case {case} degree {d}"
            );
        }
    }
}

fn random_homog_poly(ring: &Ring, rng: &mut SplitMix64, d: i64) -> Poly {
    let monos = ring.monomials_of_multidegree(md(d));
    let p = ring.field().p() as u64;
    loop {
        let pairs: Vec<(i64, Monomial)> = monos
            .iter()
            .map(|&m| {
                let c = if rng.next_below(2) == 0 {
                    0
                } else {
                    1 + rng.next_below(p - 1)
                };
                (c as i64, m)
            })
            .collect();
        let f = ring.poly_from_pairs(&pairs);
        if !f.is_zero() {
            return f;
        }
    }
}
