//! Randomized property suite for the structural invariants that the unit
//! tests only spot-check.

use proptest::prelude::*;
use simplex_obstruction::dynsys;
use simplex_obstruction::linalg::{parse_rational, solve_field, Field};
use simplex_obstruction::partition::{orbit_partition, Partition};
use simplex_obstruction::perm::{enumerate_sn, Permutation};
use simplex_obstruction::skeleton::Subsimplex;
use std::collections::BTreeMap;

fn arb_permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n as u8).collect::<Vec<u8>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

fn arb_partition(n: usize) -> impl Strategy<Value = Partition> {
    // random block assignment labels, canonicalized by the constructor
    proptest::collection::vec(0..n, n).prop_map(move |labels| {
        let mut blocks: BTreeMap<usize, Vec<u8>> = BTreeMap::new();
        for (i, &l) in labels.iter().enumerate() {
            blocks.entry(l).or_default().push(i as u8 + 1);
        }
        Partition::from_blocks(blocks.into_values().collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative(
        a in arb_permutation(5),
        b in arb_permutation(5),
        c in arb_permutation(5),
    ) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_and_sign(g in arb_permutation(5), h in arb_permutation(5)) {
        prop_assert!(g.compose(&g.inverse()).unwrap().is_identity());
        prop_assert_eq!(
            g.compose(&h).unwrap().sign(),
            g.sign() * h.sign()
        );
    }

    #[test]
    fn join_is_least_upper_bound(
        p in arb_partition(5),
        q in arb_partition(5),
        r in arb_partition(5),
    ) {
        let join = p.join(&q).unwrap();
        prop_assert!(p.refines(&join).unwrap());
        prop_assert!(q.refines(&join).unwrap());
        // least: any common upper bound is refined by the join
        if p.refines(&r).unwrap() && q.refines(&r).unwrap() {
            prop_assert!(join.refines(&r).unwrap());
        }
    }

    #[test]
    fn cell_partition_is_basepoint_free(
        g0 in arb_permutation(4),
        g1 in arb_permutation(4),
        g2 in arb_permutation(4),
    ) {
        let mut verts = vec![g0, g1, g2];
        verts.sort();
        verts.dedup();
        let cell = Subsimplex::new(verts.clone()).unwrap();
        // recompute from every basepoint: orbits of g_i⁻¹g_j for j ≠ i
        for i in 0..verts.len() {
            let generators: Vec<Permutation> = (0..verts.len())
                .filter(|&j| j != i)
                .map(|j| verts[i].inverse().compose(&verts[j]).unwrap())
                .collect();
            prop_assert_eq!(orbit_partition(4, &generators).unwrap(), cell.partition());
        }
    }

    #[test]
    fn rank_respects_row_scaling_over_q(
        rows in proptest::collection::vec(
            proptest::collection::vec(-1i8..=1, 6), 1..6),
    ) {
        let rhs = vec![0i64; rows.len()];
        let base = solve_field(&rows, &rhs, Field::Rational, None).unwrap();
        // duplicating every row cannot change the rank
        let mut doubled = rows.clone();
        doubled.extend(rows.iter().cloned());
        let doubled_rhs = vec![0i64; doubled.len()];
        let twice = solve_field(&doubled, &doubled_rhs, Field::Rational, None).unwrap();
        prop_assert_eq!(base.rank, twice.rank);
    }

    #[test]
    fn homogeneous_systems_are_always_solvable(
        rows in proptest::collection::vec(
            proptest::collection::vec(-2i8..=2, 5), 1..6),
    ) {
        let rhs = vec![0i64; rows.len()];
        for (field, p) in [
            (Field::Gf2, None),
            (Field::Gfp, Some(5)),
            (Field::Rational, None),
            (Field::Integer, None),
        ] {
            let report = solve_field(&rows, &rhs, field, p).unwrap();
            prop_assert!(report.solvable);
            prop_assert_eq!(report.rank, report.rank_augmented);
        }
    }

    #[test]
    fn rational_witness_parses_and_verifies(
        rows in proptest::collection::vec(
            proptest::collection::vec(-1i8..=1, 4), 1..5),
        xs in proptest::collection::vec(-3i64..=3, 4),
    ) {
        // rhs in the column span by construction
        let rhs: Vec<i64> = rows
            .iter()
            .map(|r| r.iter().zip(&xs).map(|(&m, &x)| i64::from(m) * x).sum())
            .collect();
        let report = solve_field(&rows, &rhs, Field::Rational, None).unwrap();
        prop_assert!(report.solvable);
        for w in report.witness.unwrap() {
            prop_assert!(parse_rational(&w).is_ok());
        }
    }

    #[test]
    fn z_class_is_well_defined(
        g in arb_permutation(4),
        h in arb_permutation(4),
        weight in 1i64..=3,
    ) {
        // a point on the edge {g, h} (or the vertex g when they collide)
        let mut coords = BTreeMap::new();
        if g == h {
            coords.insert(g.clone(), num_rational::Rational64::new(1, 1));
        } else {
            coords.insert(g.clone(), num_rational::Rational64::new(weight, 4));
            coords.insert(h.clone(), num_rational::Rational64::new(4 - weight, 4));
        }
        let x = dynsys::SkeletonPoint::new(coords).unwrap();
        for i in 1..=4u8 {
            let class = dynsys::z_class(&x, i).unwrap();
            // the representative is idempotent and minimal in its block
            prop_assert!(class.rep <= i);
            prop_assert_eq!(dynsys::z_class(&x, class.rep).unwrap().rep, class.rep);
        }
    }

    #[test]
    fn tau_is_chart_independent_on_edges(
        g in arb_permutation(4),
        h in arb_permutation(4),
    ) {
        prop_assume!(g != h);
        let mut coords = BTreeMap::new();
        coords.insert(g.clone(), num_rational::Rational64::new(1, 2));
        coords.insert(h.clone(), num_rational::Rational64::new(1, 2));
        let x = dynsys::SkeletonPoint::new(coords).unwrap();
        for i in 1..=4u8 {
            let through_g = dynsys::z_class(&x, g.inverse().apply(i)).unwrap();
            let through_h = dynsys::z_class(&x, h.inverse().apply(i)).unwrap();
            prop_assert_eq!(&through_g, &through_h);
            prop_assert_eq!(dynsys::tau_eval(&x, i).unwrap(), through_g);
        }
    }
}

#[test]
fn lexicographic_enumeration_is_sorted_and_complete() {
    for n in 1..=5usize {
        let group = enumerate_sn(n).unwrap();
        let expected: usize = (1..=n).product();
        assert_eq!(group.len(), expected);
        assert!(group.windows(2).all(|w| w[0] < w[1]));
    }
}
