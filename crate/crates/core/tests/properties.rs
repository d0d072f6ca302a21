mod common;

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use surgerylab::invariants::{rasmussen_bounds_kp, torus_determinant};
use surgerylab::knots::{classify_surgery, kp_diagram_stats, surface_slope, KpSign, SurgeryClassification, Verdict};
use surgerylab::magic::{classify_mpq, is_exceptional_filling, mpq_filling, MagicFilling};
use surgerylab::moser::{classify_torus_surgery, TorusSurgeryVerdict};
use surgerylab::triangulation::census::{
    bundled, figure_eight, figure_eight_sister, magic_manifold, FIGURE_EIGHT_TRI, MAGIC_VOLUME, MPQ_CUSPS,
};
use surgerylab::triangulation::solver::{jacobian, residuals};
use surgerylab::triangulation::volume::REGULAR_TETRAHEDRON_VOLUME;
use surgerylab::triangulation::{
    bloch_wigner, gluing_system, isomorphic, parse_triangulation, serialize_triangulation, solve_geometric, volume,
    FillingInstruction, IdealTriangulation, Isomorphism, Perm4, RowKind, SolverParams, TriangulationError,
};
use surgerylab::Slope;

fn relabelled(tri: &IdealTriangulation, seed: u64) -> IdealTriangulation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = tri.num_tetrahedra();
    let mut tet_map: Vec<usize> = (0..n).collect();
    tet_map.shuffle(&mut rng);
    let even: Vec<Perm4> = Perm4::even().collect();
    let maps: Vec<Perm4> = (0..n).map(|_| even[rng.gen_range(0..12)]).collect();
    tri.relabel(&tet_map, &maps).unwrap()
}

fn magic_filled(a: Slope, b: Slope) -> Vec<FillingInstruction> {
    let mut f = vec![FillingInstruction::Complete; 3];
    f[MPQ_CUSPS.0] = FillingInstruction::Filled(a);
    f[MPQ_CUSPS.1] = FillingInstruction::Filled(b);
    f
}

fn on_cusps(c0: usize, c1: usize, a: Slope, b: Slope) -> Vec<FillingInstruction> {
    let mut f = vec![FillingInstruction::Complete; 3];
    f[c0] = FillingInstruction::Filled(a);
    f[c1] = FillingInstruction::Filled(b);
    f
}

fn upper_half_plane() -> impl Strategy<Value = Complex64> {
    (-4.0f64..4.0, 0.01f64..4.0).prop_map(|(re, im)| Complex64::new(re, im))
}

// ---------------------------------------------------------------- structure

#[test]
fn bundled_files_have_expected_counts() {
    let f8 = figure_eight();
    assert_eq!((f8.num_tetrahedra(), f8.num_edges(), f8.num_cusps()), (2, 2, 1));
    let sister = figure_eight_sister();
    assert_eq!((sister.num_tetrahedra(), sister.num_edges(), sister.num_cusps()), (2, 2, 1));
    let n = magic_manifold();
    assert_eq!((n.num_tetrahedra(), n.num_edges(), n.num_cusps()), (6, 6, 3));
}

#[test]
fn serialize_parse_roundtrip_is_exact() {
    for (name, tri) in bundled() {
        let text = serialize_triangulation(&tri);
        let again = parse_triangulation(&text).unwrap();
        assert_eq!(serialize_triangulation(&again), text, "{name}");
        assert!(isomorphic(&tri, &again).is_some_and(|i| i == Isomorphism::identity(tri.num_tetrahedra())), "{name}");
    }
    assert_eq!(serialize_triangulation(&figure_eight()), FIGURE_EIGHT_TRI);
}

fn edit_line(text: &str, line: usize, new: &str) -> String {
    text.lines().enumerate().map(|(i, l)| if i == line { new } else { l }).collect::<Vec<_>>().join("\n")
}

#[test]
fn each_structural_defect_has_its_own_error() {
    // second gluing line of tet 0 aims at a face already claimed
    let reglued = edit_line(FIGURE_EIGHT_TRI, 2, "face 1 -> tet 1 face 0 perm 1023");
    assert!(matches!(parse_triangulation(&reglued), Err(TriangulationError::FaceReglued { .. })));

    let missing = edit_line(FIGURE_EIGHT_TRI, 8, "");
    assert!(matches!(parse_triangulation(&missing), Err(TriangulationError::UngluedFace { tet: 1, face: 3 })));

    let not_involution = edit_line(FIGURE_EIGHT_TRI, 5, "face 0 -> tet 0 face 0 perm 0213");
    assert!(matches!(parse_triangulation(&not_involution), Err(TriangulationError::InconsistentInvolution { .. })));

    let reversing = edit_line(
        &edit_line(FIGURE_EIGHT_TRI, 1, "face 0 -> tet 1 face 0 perm 0123"),
        5,
        "face 0 -> tet 0 face 0 perm 0123",
    );
    assert!(matches!(parse_triangulation(&reversing), Err(TriangulationError::OrientationReversing { .. })));

    let mismatch = edit_line(FIGURE_EIGHT_TRI, 1, "face 0 -> tet 1 face 1 perm 0132");
    assert!(matches!(parse_triangulation(&mismatch), Err(TriangulationError::TargetFaceMismatch { .. })));

    assert!(matches!(parse_triangulation("tets 2\n"), Err(TriangulationError::Syntax { .. })));
    assert!(matches!(parse_triangulation(""), Err(TriangulationError::Syntax { .. })));
}

#[test]
fn wrong_edge_count_is_reported() {
    // one tetrahedron with faces paired 0-1 and 2-3 by odd permutations
    let text = "tets 1 cusps 1\n\
        face 0 -> tet 0 face 1 perm 1023\n\
        face 1 -> tet 0 face 0 perm 1023\n\
        face 2 -> tet 0 face 3 perm 0132\n\
        face 3 -> tet 0 face 2 perm 0132\n\
        cusp 0 tet 0 vertex 0\n";
    match parse_triangulation(text) {
        Err(TriangulationError::WrongEdgeCount { edges, tets: 1 }) => assert_ne!(edges, 1),
        other => panic!("expected an edge count error, got {other:?}"),
    }
}

#[test]
fn gluing_row_counts() {
    let f8 = gluing_system(&figure_eight(), &[FillingInstruction::Complete]).unwrap();
    assert_eq!(f8.edge_rows().count(), 2);
    assert_eq!(f8.rows.len(), 4);

    let n = magic_manifold();
    let complete = gluing_system(&n, &vec![FillingInstruction::Complete; 3]).unwrap();
    assert_eq!(complete.edge_rows().count(), 6);
    assert_eq!(complete.rows.len(), 12);

    let filled = gluing_system(&n, &magic_filled(Slope::new(-3, 2), Slope::new(-3, 2))).unwrap();
    let count = |pred: fn(&RowKind) -> bool| filled.rows.iter().filter(|r| pred(&r.kind)).count();
    assert_eq!(count(|k| matches!(k, RowKind::Edge(_))), 6);
    assert_eq!(count(|k| matches!(k, RowKind::Filling(_))), 2);
    assert_eq!(count(|k| matches!(k, RowKind::Meridian(_))), 1);
    assert_eq!(count(|k| matches!(k, RowKind::Longitude(_))), 1);

    assert!(gluing_system(&n, &[FillingInstruction::Complete]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn edge_rows_use_every_corner_once(which in 0usize..3, seed in any::<u64>()) {
        let (_, tri) = bundled().swap_remove(which);
        let tri = relabelled(&tri, seed);
        prop_assert_eq!(tri.num_edges(), tri.num_tetrahedra());
        let system = gluing_system(&tri, &vec![FillingInstruction::Complete; tri.num_cusps()]).unwrap();
        let mut totals = vec![[0i64; 3]; tri.num_tetrahedra()];
        for row in system.edge_rows() {
            prop_assert_eq!(row.rhs, 2);
            for (t, k) in row.corners.iter().enumerate() {
                for s in 0..3 {
                    totals[t][s] += k[s];
                }
            }
        }
        // each shape slot labels two opposite edges
        for t in totals {
            prop_assert_eq!(t, [2, 2, 2]);
        }
    }

    #[test]
    fn isomorphism_is_reflexive_and_symmetric(which in 0usize..3, seed in any::<u64>()) {
        let (_, tri) = bundled().swap_remove(which);
        let copy = relabelled(&tri, seed);
        let id = isomorphic(&tri, &tri);
        prop_assert!(id.is_some_and(|i| i.verify(&tri, &tri)));
        let forward = isomorphic(&tri, &copy);
        let backward = isomorphic(&copy, &tri);
        prop_assert!(forward.is_some_and(|i| i.verify(&tri, &copy)));
        prop_assert!(backward.is_some_and(|i| i.verify(&copy, &tri)));
    }

    #[test]
    fn relabelled_files_roundtrip(which in 0usize..3, seed in any::<u64>()) {
        let (_, tri) = bundled().swap_remove(which);
        let copy = relabelled(&tri, seed);
        let text = serialize_triangulation(&copy);
        prop_assert_eq!(serialize_triangulation(&parse_triangulation(&text).unwrap()), text);
    }
}

#[test]
fn distinct_bundled_files_are_not_isomorphic() {
    let all = bundled();
    for (i, (a_name, a)) in all.iter().enumerate() {
        for (j, (b_name, b)) in all.iter().enumerate() {
            assert_eq!(isomorphic(a, b).is_some(), i == j, "{a_name} vs {b_name}");
        }
    }
}

// ------------------------------------------------------------------ solver

fn check_jacobian(tri: &IdealTriangulation, fillings: &[FillingInstruction]) {
    let system = gluing_system(tri, fillings).unwrap();
    let s = solve_geometric(tri, fillings, &SolverParams::default()).unwrap();
    assert!(s.is_geometric());
    let w: Vec<Complex64> = s.shapes.iter().map(|z| z.ln()).collect();
    let j = jacobian(&system, &w);
    let h = 1e-5;
    for t in 0..w.len() {
        let shifted = |d: f64| {
            let mut v = w.clone();
            v[t] += d;
            residuals(&system, &v)
        };
        let (plus, minus) = (shifted(h), shifted(-h));
        for r in 0..system.rows.len() {
            let numeric = (plus[r] - minus[r]) / (2.0 * h);
            assert!((numeric - j[(r, t)]).norm() < 1e-6, "row {r}, tet {t}: {numeric} vs {}", j[(r, t)]);
        }
    }
}

#[test]
fn jacobian_matches_central_differences_at_solutions() {
    check_jacobian(&figure_eight(), &[FillingInstruction::Complete]);
    check_jacobian(&figure_eight_sister(), &[FillingInstruction::Complete]);
    let n = magic_manifold();
    check_jacobian(&n, &vec![FillingInstruction::Complete; 3]);
    check_jacobian(&n, &magic_filled(Slope::new(-4, 3), Slope::new(-6, 5)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn geometric_solutions_meet_tolerance(k in 3i64..=12, l in 3i64..=12) {
        let params = SolverParams::default();
        let n = magic_manifold();
        let fill = magic_filled(Slope::new(-(k + 1), k), Slope::new(-(l + 1), l));
        let s = solve_geometric(&n, &fill, &params).unwrap();
        prop_assert!(s.is_geometric());
        let system = gluing_system(&n, &fill).unwrap();
        let w: Vec<Complex64> = s.shapes.iter().map(|z| z.ln()).collect();
        let worst = residuals(&system, &w).iter().map(|x| x.norm()).fold(0.0, f64::max);
        prop_assert!(worst < params.tol);
        prop_assert!(s.shapes.iter().all(|z| z.im > params.epsilon));
        let v = volume(&s).unwrap();
        prop_assert!(v < MAGIC_VOLUME);
        for z in &s.shapes {
            let d = bloch_wigner(*z);
            prop_assert!(d > 0.0 && d <= REGULAR_TETRAHEDRON_VOLUME + 1e-12);
        }
    }

    #[test]
    fn volume_terms_are_bounded_by_the_regular_tetrahedron(z in upper_half_plane()) {
        let d = bloch_wigner(z);
        prop_assert!(d > 0.0);
        prop_assert!(d <= 1.014_941_606_5);
    }

    #[test]
    fn bloch_wigner_matches_lobachevsky_form(z in upper_half_plane()) {
        let one = Complex64::new(1.0, 0.0);
        let angles = [z.arg(), (one / (one - z)).arg(), (one - one / z).arg()];
        prop_assume!(angles.iter().all(|a| *a > 0.05));
        let by_angles = common::tetrahedron_volume_by_angles(z, 40_000);
        prop_assert!((bloch_wigner(z) - by_angles).abs() < 1e-6, "{} vs {}", bloch_wigner(z), by_angles);
    }

    #[test]
    fn bloch_wigner_symmetries(z in upper_half_plane()) {
        let one = Complex64::new(1.0, 0.0);
        let d = bloch_wigner(z);
        prop_assert!((bloch_wigner(one / (one - z)) - d).abs() < 1e-10);
        prop_assert!((bloch_wigner(one - one / z) - d).abs() < 1e-10);
        prop_assert!((bloch_wigner(z.conj()) + d).abs() < 1e-10);
    }
}

#[test]
fn real_shapes_contribute_nothing() {
    for x in [-3.0, -0.5, 0.25, 0.5, 2.0, 7.0] {
        assert_eq!(bloch_wigner(Complex64::new(x, 0.0)), 0.0);
    }
}

#[test]
fn magic_volume_agrees_with_lobachevsky_evaluation() {
    let s =
        solve_geometric(&magic_manifold(), &vec![FillingInstruction::Complete; 3], &SolverParams::default()).unwrap();
    assert!(s.is_geometric());
    let by_angles = common::signed_volume_by_angles(&s.shapes, 400_000);
    let v = volume(&s).unwrap();
    assert!((v - by_angles).abs() < 1e-8, "{v} vs {by_angles}");
    assert!((v - MAGIC_VOLUME).abs() < 1e-10);
}

#[test]
fn figure_eight_constant_is_six_lobachevsky_pi_over_three() {
    let s = solve_geometric(&figure_eight(), &[FillingInstruction::Complete], &SolverParams::default()).unwrap();
    let reference = 6.0 * common::lobachevsky(PI / 3.0, 2_000_000);
    assert!((volume(&s).unwrap() - reference).abs() < 1e-9);
    let sister =
        solve_geometric(&figure_eight_sister(), &[FillingInstruction::Complete], &SolverParams::default()).unwrap();
    assert!((volume(&sister).unwrap() - reference).abs() < 1e-9);
}

#[test]
fn exceptional_pairs_fix_the_orientation() {
    // the table lists (1,1) but not its mirror image (-4,-4); likewise for (1,-5/2)
    let n = magic_manifold();
    let params = SolverParams::default();
    let solve = |a: Slope, b: Slope| solve_geometric(&n, &on_cusps(1, 2, a, b), &params).unwrap();
    for (a, b) in [
        (Slope::new(1, 1), Slope::new(1, 1)),
        (Slope::new(-4, 1), Slope::new(-1, 2)),
        (Slope::new(-3, 2), Slope::new(-5, 2)),
    ] {
        assert!(is_exceptional_filling(&MagicFilling::pair(a.clone(), b.clone())).unwrap());
        assert!(!solve(a, b).is_geometric());
    }
    for (a, b) in [(Slope::new(-4, 1), Slope::new(-4, 1)), (Slope::new(1, 1), Slope::new(-5, 2))] {
        assert!(!is_exceptional_filling(&MagicFilling::pair(a.clone(), b.clone())).unwrap());
        assert!(solve(a, b).is_geometric());
    }
}

#[test]
fn single_exceptional_slopes_are_not_geometric() {
    let n = magic_manifold();
    let params = SolverParams::default();
    for bad in [Slope::new(-3, 1), Slope::new(-2, 1), Slope::new(-1, 1), Slope::new(0, 1)] {
        for other in [Slope::new(-4, 3), Slope::new(2, 1), Slope::new(-7, 2)] {
            let s = solve_geometric(&n, &magic_filled(bad.clone(), other), &params).unwrap();
            assert!(!s.is_geometric(), "{bad}");
        }
    }
}

// ---------------------------------------------------------- knots and tables

proptest! {
    #[test]
    fn equal_parameters_are_never_reducible_or_seifert(k in 2i64..60, r in -400i64..400) {
        let p = 2 * k + 1;
        let v = classify_surgery(p, p, &Slope::integer(r)).unwrap();
        prop_assert!(!matches!(v.verdict(), Verdict::Reducible | Verdict::SeifertFibered));
    }

    #[test]
    fn toroidal_verdicts_sit_at_the_surface_slope(k in 1i64..40, extra in 0i64..40, r in -400i64..400) {
        let p = 2 * k + 1;
        let q = p + 2 * extra;
        prop_assume!(!(p == 3 && (q == 3 || q == 5)));
        let v = classify_surgery(p, q, &Slope::integer(r)).unwrap();
        prop_assert_eq!(matches!(v, SurgeryClassification::Toroidal { .. }), r == surface_slope(p, q).unwrap());
    }

    #[test]
    fn writhe_is_odd(k in 2i64..500) {
        let p = 2 * k + 1;
        for sign in [KpSign::Plus, KpSign::Minus] {
            prop_assert_eq!(kp_diagram_stats(p, sign).unwrap().writhe.rem_euclid(2), 1);
            let b = rasmussen_bounds_kp(p, sign).unwrap();
            prop_assert_eq!(b.upper - b.lower, 6);
        }
    }

    #[test]
    fn torus_determinant_symmetry(x in 2i64..12, y in 2i64..40) {
        prop_assume!(num_integer::gcd(x, y) == 1);
        prop_assert_eq!(torus_determinant(x, y).unwrap(), torus_determinant(y, x).unwrap());
        if y % 2 == 1 {
            prop_assert_eq!(torus_determinant(2, y).unwrap(), y as u64);
        }
    }

    #[test]
    fn torus_surgery_is_symmetric(x in 2i64..15, y in 2i64..40, a in -300i64..300, b in 1i64..20) {
        prop_assume!(num_integer::gcd(x, y) == 1);
        let s = Slope::new(a, b);
        let (u, v) = (classify_torus_surgery(x, y, &s).unwrap(), classify_torus_surgery(y, x, &s).unwrap());
        prop_assert_eq!(&u, &v);
        if let TorusSurgeryVerdict::SeifertFibered { fibers } = u {
            prop_assert!(fibers.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn mpq_classification_matches_table(k in 1i64..50, extra in 0i64..50) {
        let (p, q) = (2 * k + 1, 2 * (k + extra) + 1);
        prop_assume!(!(p == 3 && (q == 3 || q == 5)));
        let hyperbolic = classify_mpq(p, q).unwrap().is_hyperbolic();
        prop_assert_eq!(hyperbolic, !is_exceptional_filling(&mpq_filling(p, q).unwrap()).unwrap());
    }
}
