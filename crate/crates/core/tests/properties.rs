mod common;

use common::{apply, cofactor, Q};
use pblab_core::*;
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Q> {
    (-40i64..=40, 1i64..=9).prop_map(|(n, d)| Q::from_ratio(n, d))
}

fn point() -> impl Strategy<Value = ProjPoint<Q>> {
    (rat(), rat(), rat()).prop_filter_map("nonzero", |(x, y, z)| ProjPoint::new(x, y, z).ok())
}

fn affine_point() -> impl Strategy<Value = ProjPoint<Q>> {
    (rat(), rat()).prop_map(|(x, y)| ProjPoint::affine(x, y))
}

fn line() -> impl Strategy<Value = ProjLine<Q>> {
    (rat(), rat(), rat()).prop_filter_map("nonzero", |(a, b, c)| ProjLine::new(a, b, c).ok())
}

fn matrix() -> impl Strategy<Value = [[Q; 3]; 3]> {
    proptest::array::uniform3(proptest::array::uniform3((-5i64..=5).prop_map(Q::from_i64))).prop_filter(
        "invertible",
        |m| {
            let c = cofactor(m);
            let det = (0..3).fold(Q::from_i64(0), |acc, j| acc + m[0][j].clone() * c[0][j].clone());
            !Scalar::is_zero(&det)
        },
    )
}

fn map_point(m: &[[Q; 3]; 3], p: &ProjPoint<Q>) -> ProjPoint<Q> {
    ProjPoint::from_coords(apply(m, p.coords())).unwrap()
}

fn map_line(m: &[[Q; 3]; 3], l: &ProjLine<Q>) -> ProjLine<Q> {
    ProjLine::from_coeffs(apply(&cofactor(m), l.coeffs())).unwrap()
}

/// Four distinct collinear points `p + s_i·q`, or `None` if degenerate.
fn collinear_four(p: &ProjPoint<Q>, q: &ProjPoint<Q>, s: [Q; 4]) -> Option<[ProjPoint<Q>; 4]> {
    let pts: Vec<_> = s
        .iter()
        .map(|si| {
            let c: [Q; 3] = std::array::from_fn(|i| p.coords()[i].clone() + si.clone() * q.coords()[i].clone());
            ProjPoint::from_coords(c).ok()
        })
        .collect::<Option<_>>()?;
    for i in 0..4 {
        for j in i + 1..4 {
            if pts[i] == pts[j] {
                return None;
            }
        }
    }
    pts.try_into().ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn join_and_meet_are_incident(p in point(), q in point(), l in line(), m in line()) {
        if let Ok(pq) = join(&p, &q) {
            prop_assert!(incident(&p, &pq) && incident(&q, &pq));
        }
        if let Ok(x) = meet(&l, &m) {
            prop_assert!(incident(&x, &l) && incident(&x, &m));
        }
    }

    #[test]
    fn cross_ratio_is_projectively_invariant(
        p in point(), q in point(), s in proptest::array::uniform4(rat()), h in matrix()
    ) {
        let Some([a, b, c, d]) = collinear_four(&p, &q, s) else { return Ok(()); };
        let before = cross_ratio_points(&a, &b, &c, &d).unwrap();
        let [ha, hb, hc, hd] = [&a, &b, &c, &d].map(|x| map_point(&h, x));
        let after = cross_ratio_points(&ha, &hb, &hc, &hd).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn cross_ratio_symmetries(p in point(), q in point(), s in proptest::array::uniform4(rat())) {
        let Some([a, b, c, d]) = collinear_four(&p, &q, s) else { return Ok(()); };
        let abcd = cross_ratio_points(&a, &b, &c, &d).unwrap();
        let badc = cross_ratio_points(&b, &a, &d, &c).unwrap();
        let bacd = cross_ratio_points(&b, &a, &c, &d).unwrap();
        prop_assert_eq!(&abcd, &badc);
        let product = abcd.finite().unwrap().clone() * bacd.finite().unwrap().clone();
        prop_assert_eq!(product, Q::from_i64(1));
    }

    #[test]
    fn pencil_cross_ratio_ignores_transversal(
        vertex in point(), others in proptest::array::uniform4(point()),
        t1 in line(), t2 in line(),
    ) {
        let lines: Option<Vec<_>> = others.iter().map(|o| join(&vertex, o).ok()).collect();
        let Some(lines) = lines else { return Ok(()); };
        let cut = |t: Option<&ProjLine<Q>>| cross_ratio_lines(&lines[0], &lines[1], &lines[2], &lines[3], t);
        let Ok(reference) = cut(None) else { return Ok(()); };
        for t in [&t1, &t2] {
            if !incident(&vertex, t) {
                prop_assert_eq!(&cut(Some(t)).unwrap(), &reference);
            }
        }
    }

    #[test]
    fn harmonic_conjugates_are_involutions(
        p in point(), q in point(), s in proptest::array::uniform4(rat()),
        vertex in point(), dirs in proptest::array::uniform3(point()),
    ) {
        if let Some([a, _, c, d]) = collinear_four(&p, &q, s) {
            let b = harmonic_conjugate_point(&a, &c, &d).unwrap();
            prop_assert!(cross_ratio_points(&a, &b, &c, &d).unwrap().is_harmonic());
            prop_assert_eq!(harmonic_conjugate_point(&b, &c, &d).unwrap(), a.clone());
            prop_assert!(b != a);
        }
        let lines: Option<Vec<_>> = dirs.iter().map(|o| join(&vertex, o).ok()).collect();
        if let Some(ls) = lines {
            if ls[1] != ls[2] && ls[0] != ls[1] && ls[0] != ls[2] {
                let image = harmonic_conjugate_line(&ls[0], &ls[1], &ls[2]).unwrap();
                prop_assert!(image != ls[0]);
                prop_assert_eq!(harmonic_conjugate_line(&image, &ls[1], &ls[2]).unwrap(), ls[0].clone());
                prop_assert!(cross_ratio_lines(&ls[0], &image, &ls[1], &ls[2], None).unwrap().is_harmonic());
            }
        }
    }

    #[test]
    fn polarity_is_involutive_and_transports_incidence(
        center in affine_point(), p in point(), l in line()
    ) {
        let pol = Polarity::new(center).unwrap();
        prop_assert_eq!(pol.polar_line(&pol.polar_point(&p)), p.clone());
        prop_assert_eq!(pol.polar_point(&pol.polar_line(&l)), l.clone());
        prop_assert_eq!(
            incident(&p, &l),
            incident(&pol.polar_line(&l), &pol.polar_point(&p))
        );
    }

    #[test]
    fn reflection_is_an_involution(
        verts in proptest::array::uniform3(affine_point()), t in 1i64..50, other in point()
    ) {
        let [a, b, c] = verts;
        let Ok(table) = right_spherical(a, b, c) else { return Ok(()); };
        let m = table.edge(0).point_at(&Q::from_ratio(t, 51)).unwrap();
        let Ok(incoming) = join(&m, &other) else { return Ok(()); };
        let out = reflect(&table, 0, &m, &incoming).unwrap();
        prop_assert!(incident(&m, &out));
        prop_assert_eq!(reflect(&table, 0, &m, &out).unwrap(), incoming);
    }

    #[test]
    fn orbits_are_projectively_equivariant(
        origin in affine_point(), verts in proptest::array::uniform4(affine_point()),
        t0 in 1i64..30, t1 in 1i64..30, h in matrix(),
    ) {
        let Ok(table) = centrally_projective(origin.clone(), verts.to_vec()) else { return Ok(()); };
        let chord = ChordParam::new(Q::from_ratio(t0, 31), Q::from_ratio(t1, 31)).unwrap();
        let Ok(orbit) = orbit(&table, &chord, 6) else { return Ok(()); };
        if orbit.termination().is_some() { return Ok(()); }

        let image_verts: Vec<_> = verts.iter().map(|v| map_point(&h, v)).collect();
        let image_table = centrally_projective(map_point(&h, &origin), image_verts).unwrap();
        let pts = orbit.points();
        let mut prev = map_point(&h, &pts[0]);
        let mut cur = map_point(&h, &pts[1]);
        for k in 1..pts.len() - 1 {
            let next = step(&image_table, k, &prev, &cur).unwrap();
            prop_assert_eq!(&next, &map_point(&h, &pts[k + 1]));
            prop_assert_eq!(
                image_table.edge(k + 1).support(),
                &map_line(&h, table.edge(k + 1).support())
            );
            prev = cur;
            cur = next;
        }
    }

    #[test]
    fn outer_orbit_two_step_identity(
        qs in proptest::collection::vec(affine_point(), 3..8), start in affine_point()
    ) {
        // table whose sides are the polars of qs about the origin
        let n = qs.len();
        let origin = ProjPoint::affine(Q::from_i64(0), Q::from_i64(0));
        let pol = Polarity::new(origin.clone()).unwrap();
        if qs.iter().any(|q| q == &origin) { return Ok(()); }
        let sides: Vec<ProjLine<Q>> = qs.iter().map(|q| pol.polar_point(q)).collect();
        let verts: Option<Vec<_>> = (0..n).map(|k| meet(&sides[(k + n - 1) % n], &sides[k]).ok()).collect();
        let Some(verts) = verts else { return Ok(()); };
        let Ok(table) = centrally_projective(origin, verts) else { return Ok(()); };
        let dual = dual_polygon(&table).unwrap();
        for (k, q) in qs.iter().enumerate() {
            prop_assert_eq!(dual.dual_vertex(k), q);
        }
        let Ok(outer) = outer_orbit(&dual, &start, 2 * n + 2) else { return Ok(()); };
        for k in 0..2 * n {
            let (ax, ay) = outer.point(k + 2).unwrap().to_affine().unwrap();
            let (bx, by) = outer.point(k).unwrap().to_affine().unwrap();
            let (qx1, qy1) = dual.dual_vertex(k + 1).to_affine().unwrap();
            let (qx0, qy0) = dual.dual_vertex(k).to_affine().unwrap();
            prop_assert_eq!(ax - bx, Q::from_i64(2) * (qx1 - qx0));
            prop_assert_eq!(ay - by, Q::from_i64(2) * (qy1 - qy0));
        }
        if n % 2 == 1 {
            prop_assert_eq!(outer.is_periodic(2 * n), Some(true));
            let zero = (Q::from_i64(0), Q::from_i64(0));
            prop_assert_eq!(dual.alternating_closure_sum().unwrap(), zero);
        }
    }
}
