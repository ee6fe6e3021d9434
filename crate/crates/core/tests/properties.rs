use std::sync::OnceLock;

use proptest::prelude::*;

use quasiherm_core::group::{enumerate_group, GroupElem, GroupKind};
use quasiherm_core::invariants::klein::{
    apply6, find_convention, klein_map, on_klein_quadric, display_matrix, Convention,
};
use quasiherm_core::invariants::lines::{census_of, contained_lines};
use quasiherm_core::projgeom::{canonical6, klein_form};
use quasiherm_core::quasi::{assemble, plane_spectrum, QuasiKind};
use quasiherm_core::srg::weight_distribution;
use quasiherm_core::varieties::{build_surface, e_indices, s_indices};
use quasiherm_core::{Fe, Field, PointSet, Space, SurfaceId};

struct Fixture {
    space: Space,
    k: Vec<GroupElem>,
    g: Vec<GroupElem>,
    conv: Convention,
}

fn fixture(q: u32) -> &'static Fixture {
    static F3: OnceLock<Fixture> = OnceLock::new();
    static F5: OnceLock<Fixture> = OnceLock::new();
    let cell = match q {
        3 => &F3,
        5 => &F5,
        _ => unreachable!(),
    };
    cell.get_or_init(|| {
        let space = Space::for_q(q).unwrap();
        let f = space.field();
        Fixture {
            k: enumerate_group(f, GroupKind::K),
            g: enumerate_group(f, GroupKind::G),
            conv: find_convention(f).unwrap(),
            space,
        }
    })
}

fn field_q() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![3u32, 5, 7, 9, 11, 13]).prop_map(|q| Field::for_q(q).unwrap())
}

fn small_q() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![3u32, 5])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frobenius_fixes_exactly_the_subfield(f in field_q(), code in any::<u8>()) {
        let a = Fe::from_code(code % f.q2() as u8);
        prop_assert_eq!(f.frob(a) == a, f.in_subfield(a));
    }

    #[test]
    fn decomposition_round_trips(f in field_q(), code in any::<u8>()) {
        let a = Fe::from_code(code % f.q2() as u8);
        let (x0, x1) = f.decompose(a);
        prop_assert!(f.in_subfield(x0) && f.in_subfield(x1));
        prop_assert_eq!(f.compose(x0, x1), a);
    }

    #[test]
    fn field_axioms(f in field_q(), a in any::<u8>(), b in any::<u8>(), c in any::<u8>()) {
        let n = f.q2() as u8;
        let (a, b, c) = (Fe::from_code(a % n), Fe::from_code(b % n), Fe::from_code(c % n));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a)), Fe::ONE);
        }
        prop_assert_eq!(f.frob(f.mul(a, b)), f.mul(f.frob(a), f.frob(b)));
    }

    #[test]
    fn norm_square_iff_square(f in field_q(), code in 1u8..=255) {
        let a = Fe::from_code(1 + (code - 1) % (f.q2() as u8 - 1));
        prop_assert_eq!(f.is_square_in_subfield(f.norm(a)), f.is_square(a));
    }

    #[test]
    fn two_points_span_one_line(q in small_q(), a in any::<u32>(), b in any::<u32>()) {
        let s = &fixture(q).space;
        let n = s.num_points() as u32;
        let (a, b) = (a % n, b % n);
        prop_assume!(a != b);
        let l = s.line_id(a, b).unwrap();
        prop_assert_eq!(s.line_id(b, a).unwrap(), l);
        let pts = s.line_points(l);
        prop_assert_eq!(pts.len(), s.line_size());
        prop_assert!(pts.contains(&a) && pts.contains(&b));
    }

    #[test]
    fn tau_is_an_involution(q in small_q(), p in any::<u32>()) {
        let s = &fixture(q).space;
        let p = p % s.num_points() as u32;
        prop_assert_eq!(s.tau(s.tau(p)), p);
    }

    #[test]
    fn polar_line_is_an_involution(q in small_q(), l in any::<u32>()) {
        let s = &fixture(q).space;
        let l = l % s.num_lines() as u32;
        prop_assert_eq!(s.perp_line(s.perp_line(l)), l);
    }

    #[test]
    fn pluecker_vectors_lie_on_the_klein_quadric(q in small_q(), l in any::<u32>()) {
        let fx = fixture(q);
        let s = &fx.space;
        let l = l % s.num_lines() as u32;
        prop_assert!(klein_form(s.field(), &s.pluecker(l)).is_zero());
        prop_assert!(on_klein_quadric(s.field(), &fx.conv, &klein_map(s, &fx.conv, l)));
    }

    #[test]
    fn klein_map_is_equivariant(q in small_q(), l in any::<u32>(), g in any::<usize>()) {
        let fx = fixture(q);
        let (s, f) = (&fx.space, fx.space.field());
        let l = l % s.num_lines() as u32;
        let g = fx.g[g % fx.g.len()];
        let image = s.map_line(l, |x| g.apply(f, x));
        let m = display_matrix(f, &fx.conv.variant.apply(f, &g.mat));
        let moved = canonical6(f, apply6(f, &m, &klein_map(s, &fx.conv, l))).unwrap();
        prop_assert_eq!(klein_map(s, &fx.conv, image), moved);
    }

    #[test]
    fn k_stabilizes_every_surface(q in small_q(), g in any::<usize>()) {
        let fx = fixture(q);
        let (s, f) = (&fx.space, fx.space.field());
        let g = fx.k[g % fx.k.len()];
        let ids = s_indices(q).into_iter().map(SurfaceId::S)
            .chain(e_indices(q).into_iter().map(SurfaceId::E));
        for id in ids {
            let set = build_surface(s, id).unwrap();
            for p in set.iter() {
                prop_assert!(set.contains(s.id_of(&g.apply(f, &s.coords(p)))));
            }
        }
    }

    #[test]
    fn k_stabilizes_quasi_sets(q in small_q(), g in any::<usize>(), pick in any::<usize>()) {
        let fx = fixture(q);
        let (s, f) = (&fx.space, fx.space.field());
        let g = fx.k[g % fx.k.len()];
        let kinds = QuasiKind::all(q);
        let set = assemble(s, kinds[pick % kinds.len()]).unwrap();
        for p in set.iter() {
            prop_assert!(set.contains(s.id_of(&g.apply(f, &s.coords(p)))));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn line_census_double_count(
        spans in prop::collection::vec(0u32..7462, 0..40),
        ids in prop::collection::vec(0u32..820, 0..100),
    ) {
        let s = &fixture(3).space;
        let mut set = PointSet::from_ids(s.num_points(), ids);
        for l in spans {
            s.for_each_on_line(l, |p| { set.insert(p); });
        }
        let lines = contained_lines(s, &set);
        let census = census_of(s, &set, &lines);
        prop_assert_eq!(census.incidences(), lines.len() * s.line_size());
    }

    #[test]
    fn weights_are_the_plane_spectrum_reflected(ids in prop::collection::vec(0u32..820, 0..300)) {
        let s = &fixture(3).space;
        let set = PointSet::from_ids(s.num_points(), ids);
        let w = weight_distribution(s, &set);
        let expected: std::collections::BTreeMap<usize, usize> = plane_spectrum(s, &set)
            .into_iter()
            .map(|(h, m)| (set.len() - h, m * 8))
            .collect();
        prop_assert_eq!(w.total(), 6560);
        prop_assert_eq!(w.weights, expected);
    }
}
