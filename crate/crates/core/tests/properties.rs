mod common;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use iyb_core::alat::{smith_normal_form, Matrix};
use iyb_core::cohomology::{is_bijective_table, twist_by_coboundary_table};
use iyb_core::constructions::{search_iyb, SearchLimits};
use iyb_core::groups::PermGroup;
use iyb_core::structure::{invert_pi, lattice_ball, theorem_b_enumerate};
use iyb_core::{FiniteGroup, Int};

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-20i64..=20, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_diagonal_is_an_invariant_under_row_and_column_ops(rows in matrix(), i in 0usize..5, j in 0usize..5, k in -3i64..=3) {
        let a: Matrix<Int> = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap();
        let d = smith_normal_form(&a).diagonal();
        // add k times row i to another row
        let mut b = a.clone();
        let (r, c) = (a.rows(), a.cols());
        if r > 1 {
            let (i, i2) = (i % r, (i + 1) % r);
            for col in 0..c {
                let v = b.get(i2, col) + BigInt::from(k) * b.get(i, col);
                b.set(i2, col, v);
            }
        }
        if c > 1 {
            let (j, j2) = (j % c, (j + 1) % c);
            b.swap_cols(j, j2);
        }
        prop_assert_eq!(smith_normal_form(&b).diagonal(), d);
    }

    #[test]
    fn smith_rank_matches_nonzero_diagonal(rows in matrix()) {
        let a: Matrix<Int> = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap();
        let s = smith_normal_form(&a);
        let nz = s.diagonal().iter().filter(|x| !x.is_zero()).count();
        prop_assert_eq!(s.rank(), nz);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
    }
}

#[test]
fn bijectivity_is_a_class_property_on_search_results() {
    for g in [FiniteGroup::cyclic(4), FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)), FiniteGroup::dihedral(3)] {
        let g = Arc::new(g);
        for d in search_iyb(&g, SearchLimits::default()).unwrap() {
            for a in d.module().base().elements().unwrap() {
                let tw = iyb_core::cohomology::twist_by_coboundary(d.pi0(), &a).unwrap();
                assert!(tw.is_bijective().unwrap());
            }
        }
    }
}

#[test]
fn table_twists_preserve_bijectivity_in_the_lift_suite() {
    for c in common::lift_suite().iter().take(300) {
        let gamma = c.problem.gamma_over_g();
        let n = gamma.base().order();
        for pi in common::oracle_lifts(&c.problem) {
            let b = is_bijective_table(n, &pi);
            for x in 0..n {
                assert_eq!(is_bijective_table(n, &twist_by_coboundary_table(gamma, &pi, x)), b, "{}", c.label);
            }
        }
    }
}

#[test]
fn search_matches_brute_force_up_to_order_six() {
    let groups: Vec<(&str, FiniteGroup)> = vec![
        ("C1", FiniteGroup::trivial()),
        ("C2", FiniteGroup::cyclic(2)),
        ("C3", FiniteGroup::cyclic(3)),
        ("C4", FiniteGroup::cyclic(4)),
        ("C2xC2", FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))),
        ("C5", FiniteGroup::cyclic(5)),
        ("C6", FiniteGroup::cyclic(6)),
        ("S3", PermGroup::symmetric(3).into_group()),
    ];
    for (name, g) in groups {
        let g = Arc::new(g);
        let found = search_iyb(&g, SearchLimits::default()).unwrap().len();
        assert_eq!(found, common::oracle_iyb_count(&g), "{name}");
    }
}

#[test]
fn invert_pi_round_trips_on_lattice_balls() {
    for (name, d, lat) in common::itype_corpus().into_iter().filter(|(_, _, l)| l.rank() <= 3).take(12) {
        let tb = theorem_b_enumerate(&d, &lat, false).unwrap();
        for e in tb.entries.iter().take(2) {
            let g = &e.group;
            for m in lattice_ball(g.rank(), 2) {
                let x = invert_pi(g, &m).unwrap();
                assert_eq!(g.pi(&x), m, "{name}");
            }
        }
    }
}

/// Generator rank of `A` stays below the lattice rank on every enumerated datum.
#[test]
fn module_rank_is_below_lattice_rank() {
    for (name, d, lat) in common::itype_corpus() {
        let tb = theorem_b_enumerate(&d, &lat, false).unwrap();
        if tb.surjections > 0 {
            assert!(d.module().base().ncoords() < lat.rank(), "{name}");
        }
    }
}
