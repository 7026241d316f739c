use approx::assert_abs_diff_eq;
use bpb_core::{parse_space, BpbError, Functional, NormedSpace, Polytope, Vector};
use minilp::{ComparisonOp, OptimizationDirection, Problem};
use proptest::prelude::*;

fn spaces() -> Vec<NormedSpace> {
    [
        "r:1",
        "l1:2",
        "l2:2",
        "linf:2",
        "l1:3",
        "l2:3",
        "lp:3:p=1.5",
        "lp:2:p=4",
        "poly:hexagon",
        "sum1(r:1,r:1)",
        "suminf(r:1,r:1)",
        "sum1(l2:2,r:1)",
        "suminf(l1:2,lp:2:p=3)",
    ]
    .iter()
    .map(|s| parse_space(s).unwrap())
    .collect()
}

/// Gauge of the convex hull of `vertices`: `min Σλ` with `Σλ v = x`, `λ ≥ 0`.
fn lp_gauge(vertices: &[Vec<f64>], x: &[f64]) -> f64 {
    let mut pb = Problem::new(OptimizationDirection::Minimize);
    let lambdas: Vec<_> = vertices.iter().map(|_| pb.add_var(1.0, (0.0, f64::INFINITY))).collect();
    for (i, &xi) in x.iter().enumerate() {
        let row: Vec<_> = lambdas.iter().zip(vertices).map(|(&l, v)| (l, v[i])).collect();
        pb.add_constraint(&row, ComparisonOp::Eq, xi);
    }
    pb.solve().unwrap().objective()
}

fn coords(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0f64..3.0, dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn norm_axioms(idx in 0usize..13, a in coords(4), b in coords(4), t in -4.0f64..4.0) {
        let s = &spaces()[idx];
        let d = s.dim();
        let x = Vector::new(a[..d].to_vec()).unwrap();
        let y = Vector::new(b[..d].to_vec()).unwrap();
        let nx = s.norm(&x).unwrap();
        let ny = s.norm(&y).unwrap();
        prop_assert!(nx >= 0.0);
        let sum = Vector::new(x.coords().iter().zip(y.coords()).map(|(p, q)| p + q).collect::<Vec<f64>>()).unwrap();
        prop_assert!(s.norm(&sum).unwrap() <= nx + ny + 1e-12);
        let scaled = Vector::new(x.coords().iter().map(|c| t * c).collect::<Vec<f64>>()).unwrap();
        prop_assert!((s.norm(&scaled).unwrap() - t.abs() * nx).abs() <= 1e-12 * (1.0 + nx * t.abs()));
    }

    #[test]
    fn support_functional_attains_and_holder_holds(idx in 0usize..13, a in coords(4), b in coords(4)) {
        let s = &spaces()[idx];
        let d = s.dim();
        let x = Vector::new(a[..d].to_vec()).unwrap();
        prop_assume!(s.norm(&x).unwrap() > 1e-6);
        let f = s.support_functional(&x).unwrap();
        prop_assert!((s.dual_norm(&f).unwrap() - 1.0).abs() <= 1e-9);
        prop_assert!((f.apply(&x) - s.norm(&x).unwrap()).abs() <= 1e-9 * (1.0 + s.norm(&x).unwrap()));

        let g = Functional::new(b[..d].to_vec()).unwrap();
        prop_assert!(g.apply(&x).abs() <= s.dual_norm(&g).unwrap() * s.norm(&x).unwrap() + 1e-9);
        if s.dual_norm(&g).unwrap() > 1e-6 {
            let z = s.attaining_vector(&g).unwrap();
            prop_assert!((s.norm(&z).unwrap() - 1.0).abs() <= 1e-9);
            prop_assert!((g.apply(&z) - s.dual_norm(&g).unwrap()).abs() <= 1e-9 * (1.0 + s.dual_norm(&g).unwrap()));
        }
    }

    #[test]
    fn polytope_gauge_matches_lp(a in coords(3)) {
        let verts = vec![
            vec![1.0, 0.0, 0.0], vec![-1.0, 0.0, 0.0],
            vec![0.5, 1.0, 0.0], vec![-0.5, -1.0, 0.0],
            vec![0.0, 0.3, 1.0], vec![0.0, -0.3, -1.0],
            vec![0.7, 0.7, 0.7], vec![-0.7, -0.7, -0.7],
        ];
        let s = NormedSpace::polytope(verts.iter().map(|v| Vector::new(v.clone()).unwrap()).collect()).unwrap();
        let n = s.norm(&Vector::new(a.clone()).unwrap()).unwrap();
        prop_assert!((n - lp_gauge(&verts, &a)).abs() <= 1e-7 * (1.0 + n));
    }

    #[test]
    fn polytope_dual_norm_is_max_over_vertices(a in coords(2)) {
        let s = NormedSpace::hexagon();
        let f = Functional::new(a.clone()).unwrap();
        let best = s.corners().iter().map(|v| f.apply(v)).fold(f64::NEG_INFINITY, f64::max);
        prop_assert!((s.dual_norm(&f).unwrap() - best).abs() <= 1e-12 * (1.0 + best));
    }
}

#[test]
fn lp_norms_match_formulas() {
    let x = Vector::new(vec![3.0, -4.0]).unwrap();
    assert_abs_diff_eq!(NormedSpace::l1(2).unwrap().norm(&x).unwrap(), 7.0, epsilon = 1e-15);
    assert_abs_diff_eq!(NormedSpace::l2(2).unwrap().norm(&x).unwrap(), 5.0, epsilon = 1e-15);
    assert_abs_diff_eq!(NormedSpace::linf(2).unwrap().norm(&x).unwrap(), 4.0, epsilon = 1e-15);
    let p3 = NormedSpace::lp(3.0, 2).unwrap().norm(&x).unwrap();
    assert_abs_diff_eq!(p3, 91f64.cbrt(), epsilon = 1e-12);
}

#[test]
fn dual_spaces() {
    assert_eq!(NormedSpace::l1(3).unwrap().dual(), NormedSpace::linf(3).unwrap());
    assert_eq!(
        NormedSpace::lp(1.5, 2).unwrap().dual(),
        NormedSpace::lp(3.0, 2).unwrap()
    );
    assert_eq!(NormedSpace::l2(2).unwrap().dual(), NormedSpace::l2(2).unwrap());
    let s = parse_space("sum1(l1:2,r:1)").unwrap();
    assert_eq!(s.dual(), parse_space("suminf(linf:2,r:1)").unwrap());
    let h = NormedSpace::hexagon();
    assert_eq!(h.dual().dual(), h);
}

#[test]
fn sum_norms() {
    let x = Vector::new(vec![3.0, 4.0, -2.0]).unwrap();
    let s1 = parse_space("sum1(l2:2,r:1)").unwrap();
    let si = parse_space("suminf(l2:2,r:1)").unwrap();
    assert_abs_diff_eq!(s1.norm(&x).unwrap(), 7.0, epsilon = 1e-15);
    assert_abs_diff_eq!(si.norm(&x).unwrap(), 5.0, epsilon = 1e-15);
}

#[test]
fn hexagon_is_the_regular_polygon() {
    let p = Polytope::regular_polygon(6).unwrap();
    assert_eq!(p.vertices().len(), 6);
    assert_eq!(p.facets().len(), 6);
    let h = NormedSpace::hexagon();
    for v in p.vertices() {
        assert_abs_diff_eq!(h.norm(v).unwrap(), 1.0, epsilon = 1e-12);
    }
}

#[test]
fn rejects_bad_input() {
    assert!(matches!(NormedSpace::lp(0.5, 2), Err(BpbError::InvalidParameter(_))));
    assert!(matches!(
        NormedSpace::polytope(vec![
            Vector::new(vec![1.0, 0.0]).unwrap(),
            Vector::new(vec![0.0, 1.0]).unwrap()
        ]),
        Err(BpbError::NonSymmetricPolytope(_))
    ));
    let s = NormedSpace::l2(2).unwrap();
    assert!(matches!(
        s.support_functional(&Vector::new(vec![0.0, 0.0]).unwrap()),
        Err(BpbError::ZeroVector)
    ));
    assert!(matches!(
        s.norm(&Vector::new(vec![1.0, 0.0, 0.0]).unwrap()),
        Err(BpbError::DimensionMismatch { expected: 2, found: 3 })
    ));
}

#[test]
fn display_round_trips() {
    for s in spaces() {
        assert_eq!(parse_space(&s.to_string()).unwrap(), s);
    }
}
