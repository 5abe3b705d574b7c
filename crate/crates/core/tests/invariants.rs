use std::f64::consts::PI;

use grushin_core::cutlocus::{cut_locus, meeting_point, minimality_time, RaySpec};
use grushin_core::distance::{
    boundary_preimages, graph_oracle_distance, invert_exp, DistanceStatus,
};
use grushin_core::gluing::{glued_measure, BorelSetSpec, SheetSelection};
use grushin_core::mcp::{pointwise_n, scan_min_n, verify_mcp, BranchTag, ScanConfig};
use grushin_core::{
    distance, exp_jacobian, exp_map, glued_distance, in_injectivity_domain, reflect_x, translate_y,
    Covector, GluedPoint, GridOracleConfig, Point, Region, Sheet, SpaceKind,
};
use proptest::prelude::*;

fn plane_point() -> impl Strategy<Value = Point> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(x, y)| Point::new(x, y))
}

fn right_point() -> impl Strategy<Value = Point> {
    (0.0..2.0f64, -2.0..2.0f64).prop_map(|(x, y)| Point::new(x, y))
}

fn d(p: Point, q: Point) -> f64 {
    distance(p, q, SpaceKind::FullPlane).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn invert_exp_round_trips(q in plane_point(), u in -2.0..2.0f64, v in -2.9..2.9f64) {
        let lam = Covector::new(u, v);
        prop_assume!(exp_jacobian(q, lam) > 1e-6);
        let p = exp_map(q, lam, 1.0);
        let back = invert_exp(q, p, SpaceKind::FullPlane).unwrap();
        prop_assert!(exp_map(q, back, 1.0).coord_dist(&p) <= 1e-10);
        prop_assert!((back.u - u).abs() < 1e-6 && (back.v - v).abs() < 1e-6, "{back:?} vs {lam:?}");
    }

    #[test]
    fn jacobian_positive_in_domain(q in plane_point(), u in -3.0..3.0f64, v in -3.1..3.1f64) {
        let lam = Covector::new(u, v);
        prop_assume!(u != 0.0 || q.x != 0.0);
        prop_assert!(in_injectivity_domain(q, lam, SpaceKind::FullPlane).unwrap());
        prop_assert!(exp_jacobian(q, lam) > 0.0);
    }

    #[test]
    fn distance_symmetries(p in plane_point(), q in plane_point(), c in -3.0..3.0f64) {
        let base = d(p, q);
        prop_assert!((d(q, p) - base).abs() <= 1e-9);
        prop_assert!((d(reflect_x(p), reflect_x(q)) - base).abs() <= 1e-9);
        prop_assert!((d(translate_y(p, c), translate_y(q, c)) - base).abs() <= 1e-9);
    }

    #[test]
    fn triangle_inequality(p in plane_point(), q in plane_point(), r in plane_point()) {
        prop_assert!(d(p, r) <= d(p, q) + d(q, r) + 1e-6);
    }

    #[test]
    fn half_plane_is_convex(p in right_point(), q in right_point()) {
        let half = distance(p, q, SpaceKind::HalfPlanePlus).unwrap().value;
        prop_assert!((half - d(p, q)).abs() <= 1e-9);
    }

    #[test]
    fn unique_distances_have_witnesses(p in plane_point(), q in plane_point()) {
        let r = distance(q, p, SpaceKind::FullPlane).unwrap();
        if r.status == DistanceStatus::Unique && p != q {
            let lam = r.witness.unwrap();
            prop_assert!(exp_map(q, lam, 1.0).coord_dist(&p) <= 1e-9);
            prop_assert!((r.value - (lam.u * lam.u + q.x * q.x * lam.v * lam.v).sqrt()).abs() <= 1e-12 * r.value.max(1.0));
        }
    }

    #[test]
    fn glued_metric_axioms(
        a in right_point(), b in right_point(), c in right_point(),
        sa in any::<bool>(), sb in any::<bool>(), sc in any::<bool>(),
    ) {
        let sheet = |s: bool| if s { Sheet::A } else { Sheet::B };
        let ga = GluedPoint::new(sheet(sa), a).unwrap();
        let gb = GluedPoint::new(sheet(sb), b).unwrap();
        let gc = GluedPoint::new(sheet(sc), c).unwrap();
        let ab = glued_distance(ga, gb).unwrap();
        prop_assert!(ab >= 0.0);
        prop_assert!((ab - glued_distance(gb, ga).unwrap()).abs() <= 1e-9);
        let ac = glued_distance(ga, gc).unwrap();
        let bc = glued_distance(gb, gc).unwrap();
        prop_assert!(ac <= ab + bc + 1e-6);
        prop_assert_eq!(glued_distance(ga, ga).unwrap(), 0.0);
    }

    #[test]
    fn glued_measure_is_additive(x0 in -1.0..1.0f64, w in 0.1..2.0f64, y0 in -1.0..1.0f64, h in 0.1..2.0f64) {
        let region = Region::rectangle(x0, x0 + w, y0, y0 + h);
        let m = |copy| glued_measure(&BorelSetSpec { region, copy }).unwrap();
        let (a, b, both) = (m(SheetSelection::A), m(SheetSelection::B), m(SheetSelection::Both));
        prop_assert!((a + b - both).abs() <= 1e-12);
        prop_assert!((a - h * (x0 + w).max(0.0).min(w)).abs() <= 1e-12);
        let split = x0 + 0.5 * w;
        let left = Region::rectangle(x0, split, y0, y0 + h);
        let right = Region::rectangle(split, x0 + w, y0, y0 + h);
        let m2 = |r: Region| glued_measure(&BorelSetSpec { region: r, copy: SheetSelection::A }).unwrap();
        prop_assert!((m2(left) + m2(right) - a).abs() <= 1e-12);
    }

    #[test]
    fn meeting_points_on_cut_locus(q in plane_point(), u in -2.0..2.0f64, v in 0.3..3.0f64) {
        prop_assume!(q.x != 0.0 || u != 0.0);
        let (m, t) = meeting_point(q, u, v).unwrap();
        prop_assert!(cut_locus(q).distance_to(m) <= 1e-9);
        prop_assert!((t - PI / v).abs() <= 1e-9);
        let ray = RaySpec::new(q, Covector::new(u, v)).unwrap();
        prop_assert!((minimality_time(&ray) - PI / v).abs() <= 1e-12);
    }

    #[test]
    fn cut_points_have_two_preimages(x0 in 0.2..2.0f64, y0 in -1.0..1.0f64, extra in 0.0..2.0f64, up in any::<bool>()) {
        let q = Point::new(x0, y0);
        let off = PI * x0 * x0 / 2.0 + extra;
        let p = Point::new(-x0, if up { y0 + off } else { y0 - off });
        let pre = boundary_preimages(q, p, SpaceKind::FullPlane);
        prop_assert_eq!(pre.len(), 2, "{:?}", pre);
        let lens: Vec<f64> = pre.iter().map(|l| PI * (l.u * l.u + x0 * x0 * l.v * l.v).sqrt()).collect();
        prop_assert!((lens[0] - lens[1]).abs() <= 1e-8 * lens[0]);
    }
}

#[test]
fn axis_distance_closed_form() {
    let o = Point::new(0.0, 0.0);
    for y in [0.1, 0.5, 1.0, 2.0, 7.0] {
        let r = distance(o, Point::new(0.0, y), SpaceKind::FullPlane).unwrap();
        assert_eq!(r.status, DistanceStatus::CutPoint);
        assert!(
            (r.value - (2.0 * PI * y).sqrt()).abs() <= 1e-9,
            "y = {y}: {}",
            r.value
        );
    }
}

#[test]
fn oracle_dominates_and_converges() {
    let cases = [
        (Point::new(0.0, 0.0), Point::new(1.0, 0.5)),
        (Point::new(1.0, 0.0), Point::new(-1.0, 0.0)),
        (Point::new(0.5, -0.5), Point::new(1.5, 1.0)),
    ];
    for (q, p) in cases {
        let exact = d(q, p);
        let err = |h: f64| {
            graph_oracle_distance(
                q,
                p,
                SpaceKind::FullPlane,
                &GridOracleConfig::around(q, p, h),
            )
            .unwrap()
                - exact
        };
        let (coarse, fine) = (err(0.02), err(0.005));
        assert!(
            coarse >= -1e-6 && fine >= -1e-6,
            "{q:?} -> {p:?}: {coarse} {fine}"
        );
        assert!(
            fine <= coarse + 1e-9 && fine <= 0.02 * exact,
            "{q:?} -> {p:?}: {coarse} {fine}"
        );
    }
}

#[test]
fn oracle_respects_dilations() {
    // a lattice is not dilation invariant; the vertical aspect keeps the bias level
    let o = Point::new(0.0, 0.0);
    let gap = |y: f64| {
        let p = Point::new(0.0, y);
        let exact = (2.0 * PI * y).sqrt();
        let g = graph_oracle_distance(
            o,
            p,
            SpaceKind::FullPlane,
            &GridOracleConfig::around(o, p, exact / 200.0),
        )
        .unwrap();
        (g - exact) / exact
    };
    let (small, unit) = (gap(0.01), gap(1.0));
    assert!((small - unit).abs() < 2e-3, "{small} vs {unit}");
}

fn scaled_config(x: f64) -> ScanConfig {
    let base = ScanConfig::default();
    ScanConfig {
        u_min: base.u_min * x,
        u_max: base.u_max * x,
        n_u: 121,
        n_v: 61,
        x_grid: vec![x],
        ..base
    }
}

#[test]
fn scan_is_scale_invariant() {
    for space in [SpaceKind::HalfPlanePlus, SpaceKind::FullPlane] {
        let ns: Vec<f64> = [0.1, 1.0, 10.0]
            .iter()
            .map(|&x| scan_min_n(space, &scaled_config(x)).unwrap().n_min)
            .collect();
        for n in &ns {
            assert!((n - ns[1]).abs() <= 1e-9, "{space}: {ns:?}");
        }
    }
}

#[test]
fn verification_is_monotone_in_n() {
    let cfg = scaled_config(1.0);
    let holds: Vec<bool> = [3.0, 3.9, 4.0, 4.5, 6.0]
        .iter()
        .map(|&n| verify_mcp(SpaceKind::HalfPlanePlus, n, &cfg).unwrap().holds)
        .collect();
    assert_eq!(holds, vec![false, false, true, true, true]);
    assert!(verify_mcp(SpaceKind::FullPlane, 2.0 + 1e-9, &cfg).is_ok());
    assert!(verify_mcp(SpaceKind::FullPlane, 2.0, &cfg).is_err());
}

#[test]
fn vertical_branch_tends_to_two() {
    let cfg = ScanConfig {
        branches: vec![BranchTag::UZero],
        ..scaled_config(1.0)
    };
    let r = scan_min_n(SpaceKind::FullPlane, &cfg).unwrap();
    assert!(r.n_min <= 2.0 && r.n_min > 2.0 - 1e-6, "{}", r.n_min);
    // 1 + v cot v decreases away from v = 0
    let at = |v: f64| {
        pointwise_n(
            Point::new(1.0, 0.0),
            Covector::new(0.0, v),
            SpaceKind::FullPlane,
        )
        .unwrap()
    };
    assert!(at(0.1) > at(1.0) && at(1.0) > at(2.0));
    assert!((at(1.0) - (1.0 + 1.0 / 1f64.tan())).abs() < 1e-12);
}
