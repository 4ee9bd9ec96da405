use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::exactmath::{FMatrix, FiniteField, Subspace};
use crate::jordan::{count_n, module_type};
use crate::lieoracle::gprime_multiplicity;
use crate::rootdata::{
    build_graph, nu_map, type_from_dv, DynkinGraph, Family, GPrimeWeight, IVec, Partition,
};

fn fq(q: u32) -> FiniteField {
    FiniteField::from_order(q).unwrap()
}

fn graph(f: Family, n: usize) -> Arc<DynkinGraph> {
    Arc::new(build_graph(f, n).unwrap())
}

fn wt(g: &Arc<DynkinGraph>, d: &[i64], v: &[i64]) -> GPrimeWeight {
    type_from_dv(g, &IVec(d.to_vec()), &IVec(v.to_vec())).unwrap()
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// The A_1 datum with `d = 2`, `v = 1`, `p = (1, 0)`, `q = (0, 1)^T`.
fn a1_square_zero(f: FiniteField) -> ADHMDatum {
    ADHMDatum::new(
        graph(Family::A, 1),
        f,
        vec![2],
        vec![1],
        vec![],
        vec![FMatrix::from_ints(f, &[&[1, 0]])],
        vec![FMatrix::from_ints(f, &[&[0], &[1]])],
    )
    .unwrap()
}

fn line(f: FiniteField, v: &[i64]) -> Subspace {
    Subspace::span(&FMatrix::from_ints(f, &[v]))
}

#[test]
fn flatness_examples() {
    let f = fq(3);
    let a1 = graph(Family::A, 1);
    assert!(ADHMDatum::zero(a1.clone(), f, vec![2], vec![1]).is_flat());
    let one = ADHMDatum::new(
        a1,
        f,
        vec![1],
        vec![1],
        vec![],
        vec![FMatrix::from_ints(f, &[&[1]])],
        vec![FMatrix::from_ints(f, &[&[1]])],
    )
    .unwrap();
    assert_eq!(one.moment_residual()[0], FMatrix::from_ints(f, &[&[-1]]));
    assert!(!one.is_flat());
    assert!(a1_square_zero(f).is_flat());
}

#[test]
fn stability_examples() {
    let f = fq(2);
    assert!(ADHMDatum::zero(graph(Family::A, 2), f, vec![1, 1], vec![0, 0]).is_stable());
    assert!(!ADHMDatum::zero(graph(Family::A, 1), f, vec![2], vec![1]).is_stable());
    let a2 = graph(Family::A, 2);
    let mut d = ADHMDatum::zero(a2, f, vec![2, 0], vec![1, 0]);
    d.p[0] = FMatrix::from_ints(f, &[&[0, 1]]);
    assert!(d.is_stable());
}

#[test]
fn costable_radical_examples() {
    let f = fq(2);
    let datum = a1_square_zero(f);
    assert!(datum.costable_radical().is_zero());
    let mut killed = datum.clone();
    killed.q[0] = FMatrix::zeros(f, 2, 1);
    assert_eq!(killed.costable_radical().dims(), vec![1]);
    // on A_2, a vector killed by q but moved by x outside ker q survives only if x w is killed too
    let a2 = graph(Family::A, 2);
    let mut d = ADHMDatum::zero(a2, f, vec![1, 1], vec![1, 1]);
    d.q[1] = FMatrix::from_ints(f, &[&[1]]);
    d.x[0] = FMatrix::from_ints(f, &[&[1]]);
    assert_eq!(d.costable_radical().dims(), vec![0, 0]);
    d.x[0] = FMatrix::zeros(f, 1, 1);
    assert_eq!(d.costable_radical().dims(), vec![1, 0]);
}

#[test]
fn type_of_examples() {
    let f = fq(2);
    let a2 = graph(Family::A, 2);
    let zero = ADHMDatum::zero(a2.clone(), f, vec![2, 1], vec![0, 0]);
    let t = zero.type_of().unwrap();
    assert_eq!((t.gamma(), t.delta()), (IVec(vec![2, 1]), IVec(vec![2, 1])));

    let a1 = graph(Family::A, 1);
    let datum = a1_square_zero(f);
    assert_eq!(datum.type_of().unwrap(), wt(&a1, &[2], &[1]));
    let mut killed = datum.clone();
    killed.q[0] = FMatrix::zeros(f, 2, 1);
    assert_eq!(killed.type_of().unwrap(), wt(&a1, &[2], &[0]));

    let unstable = ADHMDatum::zero(a1.clone(), f, vec![2], vec![1]);
    assert_eq!(unstable.type_of(), Err(Error::NotStable));
    let mut not_flat = datum;
    not_flat.q[0] = FMatrix::from_ints(f, &[&[1], &[0]]);
    assert_eq!(not_flat.type_of(), Err(Error::NotFlat));
}

#[test]
fn module_op_examples() {
    let f = fq(3);
    let datum = a1_square_zero(f);
    let b = datum.module_op(&Word::bracket(0)).unwrap();
    assert_eq!(b, FMatrix::from_ints(f, &[&[0, 0], &[1, 0]]));
    assert!(b.mul(&b).is_zero());
    let u = datum.module_op(&Word::Idem(0)).unwrap();
    assert_eq!(u, FMatrix::identity(f, 2));

    let a2 = graph(Family::A, 2);
    let data = collect_bistable(&a2, f, &[1, 1], &[1, 1], 4).unwrap();
    let d = &data[0];
    let u0 = d.module_op(&Word::Idem(0)).unwrap();
    let u1 = d.module_op(&Word::Idem(1)).unwrap();
    assert!(u0.mul(&u1).is_zero());
    assert_eq!(u0.mul(&u0), u0);
    assert!(matches!(
        d.module_op(&Word::Path {
            tail: 0,
            arrows: vec![1]
        }),
        Err(Error::NotComposable)
    ));

    // the worked A_2 example: pi([1]) is rank one and squares to zero
    let data = collect_bistable(&a2, f, &[2, 0], &[1, 0], 1).unwrap();
    let b = data[0].module_op(&Word::bracket(0)).unwrap();
    assert_eq!(b.rank(), 1);
    assert!(b.mul(&b).is_zero());
}

#[test]
fn multiplicativity_on_bistable_data() {
    for (fam, n, d, v) in [
        (Family::A, 2, vec![1, 1], vec![1, 1]),
        (Family::A, 2, vec![2, 1], vec![1, 1]),
        (Family::A, 3, vec![1, 0, 1], vec![1, 1, 1]),
    ] {
        let g = graph(fam, n);
        let words = words_up_to(&g, 2);
        for datum in collect_bistable(&g, fq(2), &d, &v, 40).unwrap() {
            assert!(datum.is_flat() && datum.is_costable());
            for a in &words {
                for b in &words {
                    if a.path_len() + b.path_len() > 4 {
                        continue;
                    }
                    let lhs = datum
                        .module_op(a)
                        .unwrap()
                        .mul(&datum.module_op(b).unwrap());
                    let rhs = datum.element_op(&product(&g, a, b)).unwrap();
                    assert_eq!(lhs, rhs, "{a:?} * {b:?}");
                }
            }
        }
    }
}

#[test]
fn bracket_square_rule() {
    let g = graph(Family::A, 2);
    for datum in collect_bistable(&g, fq(3), &[2, 1], &[1, 1], 60).unwrap() {
        for i in 0..2 {
            let b = datum.module_op(&Word::bracket(i)).unwrap();
            let sq = datum
                .element_op(&product(&g, &Word::bracket(i), &Word::bracket(i)))
                .unwrap();
            assert_eq!(b.mul(&b), sq);
        }
    }
}

#[test]
fn subrep_examples() {
    let f = fq(3);
    let datum = a1_square_zero(f);
    let zero = GradedSubspace::zero(f, &[2]);
    let full = GradedSubspace::full(f, &[2]);
    assert!(datum.is_subrep(&zero) && datum.is_subrep(&full));
    // ker pi([1]) is spanned by e_2
    let kernel = GradedSubspace(vec![line(f, &[0, 1])]);
    assert!(datum.is_subrep(&kernel));
    let moved = GradedSubspace(vec![line(f, &[1, 1])]);
    assert!(!datum.is_subrep(&moved));
    assert_eq!(datum.sub_datum(&moved), Err(Error::NotSubrep));

    let a1 = graph(Family::A, 1);
    let sub = datum.sub_datum(&kernel).unwrap();
    let quo = datum.quotient_datum(&kernel).unwrap();
    assert_eq!(sub.type_of().unwrap(), wt(&a1, &[1], &[0]));
    assert_eq!(quo.type_of().unwrap(), wt(&a1, &[1], &[0]));

    let empty = datum.sub_datum(&zero).unwrap();
    assert_eq!((empty.d.clone(), empty.v.clone()), (vec![0], vec![0]));
    assert_eq!(datum.quotient_datum(&zero).unwrap(), datum);
    let top = datum.sub_datum(&full).unwrap();
    assert_eq!(top.type_of().unwrap(), datum.type_of().unwrap());
    let nothing = datum.quotient_datum(&full).unwrap();
    assert_eq!((nothing.d, nothing.v), (vec![0], vec![0]));
}

#[test]
fn flag_type_examples() {
    let f = fq(2);
    let a1 = graph(Family::A, 1);
    let datum = a1_square_zero(f);
    let one_step = GradedFlag::new(vec![
        GradedSubspace::zero(f, &[2]),
        GradedSubspace::full(f, &[2]),
    ])
    .unwrap();
    assert_eq!(
        datum.flag_types(&one_step).unwrap(),
        vec![datum.type_of().unwrap()]
    );

    let std = wt(&a1, &[1], &[0]);
    let flag = GradedFlag::new(vec![
        GradedSubspace::zero(f, &[2]),
        GradedSubspace(vec![line(f, &[0, 1])]),
        GradedSubspace::full(f, &[2]),
    ])
    .unwrap();
    assert_eq!(
        datum.flag_types(&flag).unwrap(),
        vec![std.clone(), std.clone()]
    );

    let zero = ADHMDatum::zero(a1, f, vec![2], vec![0]);
    for l in [[1, 0], [0, 1], [1, 1]] {
        let flag = GradedFlag::new(vec![
            GradedSubspace::zero(f, &[2]),
            GradedSubspace(vec![line(f, &l)]),
            GradedSubspace::full(f, &[2]),
        ])
        .unwrap();
        assert_eq!(
            zero.flag_types(&flag).unwrap(),
            vec![std.clone(), std.clone()]
        );
    }
    let bad = GradedFlag::new(vec![
        GradedSubspace::zero(f, &[2]),
        GradedSubspace(vec![line(f, &[1, 0])]),
        GradedSubspace::full(f, &[2]),
    ])
    .unwrap();
    assert_eq!(datum.flag_types(&bad), Err(Error::NotSubrep));
}

#[test]
fn count_x_examples() {
    let a1 = graph(Family::A, 1);
    for q in [2, 3, 4, 5] {
        let n = count_x(&a1, &wt(&a1, &[2], &[1]), fq(q)).unwrap();
        assert_eq!(n, big(q as i64 * q as i64 - 1));
        assert_eq!(count_x(&a1, &wt(&a1, &[1], &[1]), fq(q)).unwrap(), big(0));
    }
    let raw = count_x_detailed(&a1, &wt(&a1, &[2], &[1]), fq(2)).unwrap();
    assert_eq!((raw.raw, raw.group_order), (big(3), big(1)));
    let raw = count_x_detailed(&a1, &wt(&a1, &[2], &[1]), fq(3)).unwrap();
    assert_eq!((raw.raw, raw.group_order), (big(16), big(2)));
    let d4 = graph(Family::D, 4);
    assert_eq!(
        count_x(&d4, &wt(&d4, &[1, 0, 2, 1], &[0, 0, 0, 0]), fq(2)).unwrap(),
        big(1)
    );
}

#[test]
fn count_p_examples() {
    let a1 = graph(Family::A, 1);
    let std = wt(&a1, &[1], &[0]);
    let etas = [std.clone(), std.clone()];
    assert_eq!(
        count_p(&a1, &wt(&a1, &[2], &[1]), &etas, fq(2)).unwrap(),
        big(3)
    );
    assert_eq!(
        count_p(&a1, &wt(&a1, &[2], &[0]), &etas, fq(3)).unwrap(),
        big(4)
    );
    let three = [std.clone(), std.clone(), std.clone()];
    // (q^3 - 1)(q + 1)(2q + 1), matching the enumeration script at q = 2, 3
    assert_eq!(
        count_p(&a1, &wt(&a1, &[3], &[1]), &three, fq(2)).unwrap(),
        big(105)
    );
    assert_eq!(
        count_p(&a1, &wt(&a1, &[3], &[1]), &three, fq(3)).unwrap(),
        big(728)
    );
    // q (q^3 - 1)(q + 1)
    let mixed = [wt(&a1, &[2], &[1]), std.clone()];
    assert_eq!(
        count_p(&a1, &wt(&a1, &[3], &[1]), &mixed, fq(2)).unwrap(),
        big(42)
    );
    assert_eq!(
        count_p(&a1, &wt(&a1, &[3], &[1]), &mixed, fq(3)).unwrap(),
        big(312)
    );

    let a2 = graph(Family::A, 2);
    let s2 = wt(&a2, &[1, 0], &[0, 0]);
    let xi = wt(&a2, &[2, 0], &[1, 0]);
    assert_eq!(
        count_p(&a2, &xi, &[s2.clone(), s2.clone()], fq(2)).unwrap(),
        big(3)
    );

    assert!(matches!(
        count_p(&a1, &wt(&a1, &[3], &[1]), &etas, fq(2)),
        Err(Error::SizeMismatch { .. })
    ));
    assert_eq!(
        count_p(&a1, &wt(&a1, &[1], &[1]), &[std], fq(2)),
        Err(Error::NotPositiveIntegrable)
    );
}

#[test]
fn leading_coefficient_matches_multiplicity_in_rank_one() {
    let a1 = graph(Family::A, 1);
    let std = wt(&a1, &[1], &[0]);
    let qs = [2u32, 3, 4, 5, 7, 8];
    for (d, v, k) in [(2, 1, 2), (2, 0, 2), (3, 0, 3), (3, 1, 2)] {
        let xi = wt(&a1, &[d], &[v]);
        let etas: Vec<GPrimeWeight> = if k == 2 && d == 3 {
            vec![wt(&a1, &[2], &[1]), std.clone()]
        } else {
            vec![std.clone(); k]
        };
        let points: Vec<_> = qs
            .iter()
            .map(|&q| (big(q as i64), count_p(&a1, &xi, &etas, fq(q)).unwrap()))
            .collect();
        let poly = crate::exactmath::lagrange_fit(&points).unwrap();
        let m = gprime_multiplicity(&xi, &etas).unwrap();
        assert_eq!(
            poly.leading(),
            num_rational::BigRational::from_integer(m),
            "d={d} v={v}"
        );
        let sizes: Vec<i64> = etas.iter().map(|e| e.delta().total()).collect();
        let twice =
            2 * crate::rootdata::g_dim(&etas.iter().map(GPrimeWeight::delta).collect::<Vec<_>>())
                + crate::rootdata::x_dim(&xi)
                + etas.iter().map(crate::rootdata::x_dim).sum::<i64>();
        assert_eq!(poly.degree().unwrap() as i64 * 2, twice, "sizes {sizes:?}");
    }
}

#[test]
fn vanishing_and_nonemptiness() {
    // nonempty exactly at positive-integrable weights, over integrable (d, v) with |d| <= 3
    for (fam, n) in [(Family::A, 1), (Family::A, 2)] {
        let g = graph(fam, n);
        for d in vectors(n, 3) {
            for v in vectors(n, 3)
                .into_iter()
                .filter(|v| v.iter().all(|&x| x <= 2))
            {
                let xi = wt(&g, &d, &v);
                if !xi.is_integrable() {
                    continue;
                }
                let (du, vu) = dimensions(&xi).unwrap();
                for q in [2u32, 3] {
                    if enumeration_size(&g, q as u64, &du, &vu) > 2e6 {
                        continue;
                    }
                    let c = count_x(&g, &xi, fq(q)).unwrap();
                    assert_eq!(c > big(0), xi.is_positive_integrable(), "{xi:?} q={q}");
                }
            }
        }
    }
}

/// Nonnegative vectors of length `n` with entry sum at most `max`.
fn vectors(n: usize, max: i64) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=max {
        for mut rest in vectors(n - 1, max - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[test]
fn gauge_invariance() {
    let a2 = graph(Family::A, 2);
    let flipped = Arc::new(a2.flip_edge(0));
    let negated = Arc::new(a2.negate_epsilon());
    let s = wt(&a2, &[1, 0], &[0, 0]);
    let t = wt(&a2, &[0, 1], &[0, 0]);
    let cases = [
        (wt(&a2, &[1, 1], &[1, 1]), vec![s.clone(), t.clone()]),
        (
            wt(&a2, &[2, 1], &[1, 1]),
            vec![s.clone(), t.clone(), s.clone()],
        ),
        (wt(&a2, &[2, 0], &[1, 0]), vec![s.clone(), s.clone()]),
    ];
    for q in [2, 3] {
        let f = fq(q);
        for (xi, etas) in &cases {
            let base = count_p(&a2, xi, etas, f).unwrap();
            assert_eq!(count_p(&flipped, xi, etas, f).unwrap(), base);
            assert_eq!(count_p(&negated, xi, etas, f).unwrap(), base);
            // the diagram flip of A_2
            let perm = [1, 0];
            let xi_p = xi.permuted(a2.clone(), &perm);
            let etas_p: Vec<_> = etas.iter().map(|e| e.permuted(a2.clone(), &perm)).collect();
            assert_eq!(count_p(&a2, &xi_p, &etas_p, f).unwrap(), base);
            assert_eq!(
                count_x(&a2, xi, f).unwrap(),
                count_x(&negated, xi, f).unwrap()
            );
        }
    }
}

#[test]
fn d4_triality_invariance() {
    let d4 = graph(Family::D, 4);
    let xi = wt(&d4, &[0, 1, 1, 0], &[0, 1, 1, 0]);
    let base = count_x(&d4, &xi, fq(2)).unwrap();
    for perm in [[2, 1, 3, 0], [3, 1, 0, 2]] {
        assert!(d4.is_automorphism(&perm));
        assert_eq!(
            count_x(&d4, &xi.permuted(d4.clone(), &perm), fq(2)).unwrap(),
            base
        );
    }
}

#[test]
fn bridge_examples() {
    let a2 = graph(Family::A, 2);
    let f = fq(2);
    for datum in collect_bistable(&a2, f, &[2, 0], &[1, 0], 10).unwrap() {
        let t = a_type_bridge(&datum).unwrap();
        assert_eq!(t.matrix().rank(), 1);
        assert_eq!(module_type(&t), Partition::from_parts(&[1, 1]));
    }
    let zero = ADHMDatum::zero(a2.clone(), f, vec![3, 0], vec![0, 0]);
    assert_eq!(
        module_type(&a_type_bridge(&zero).unwrap()),
        Partition::from_parts(&[3])
    );
    for datum in collect_bistable(&a2, f, &[3, 0], &[1, 0], 10).unwrap() {
        assert_eq!(
            module_type(&a_type_bridge(&datum).unwrap()),
            Partition::from_parts(&[2, 1])
        );
    }
    for datum in collect_bistable(&a2, f, &[3, 0], &[2, 1], 10).unwrap() {
        assert_eq!(
            module_type(&a_type_bridge(&datum).unwrap()),
            Partition::from_parts(&[1, 1, 1])
        );
    }
    let spread = ADHMDatum::zero(a2, f, vec![1, 1], vec![0, 0]);
    assert_eq!(a_type_bridge(&spread), Err(Error::NotConcentrated));
}

#[test]
fn concentrated_counts_match_classical_side() {
    let a2 = graph(Family::A, 2);
    let s = wt(&a2, &[1, 0], &[0, 0]);
    let to_lambda = |w: &GPrimeWeight| nu_map(w).unwrap();
    let cases = [
        (wt(&a2, &[2, 0], &[1, 0]), vec![s.clone(), s.clone()]),
        (wt(&a2, &[2, 0], &[0, 0]), vec![s.clone(), s.clone()]),
        (
            wt(&a2, &[3, 0], &[1, 0]),
            vec![s.clone(), s.clone(), s.clone()],
        ),
    ];
    for q in [2, 3] {
        for (xi, etas) in &cases {
            let mus: Vec<Partition> = etas.iter().map(to_lambda).collect();
            assert_eq!(
                count_p(&a2, xi, etas, fq(q)).unwrap(),
                count_n(fq(q), &to_lambda(xi), &mus).unwrap(),
                "{xi:?} q={q}"
            );
        }
    }
}

#[test]
fn json_dump() {
    let datum = a1_square_zero(fq(2));
    let json = serde_json::to_string(&datum.to_json()).unwrap();
    assert_eq!(
        json,
        r#"{"family":"A","rank":1,"q":2,"d":[2],"v":[1],"x":[],"p":[[[1,0]]],"q_maps":[[[0],[1]]]}"#
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sub_and_quotient_are_flat_and_stable(idx in 0usize..200, sub in 0usize..64) {
        let g = graph(Family::A, 2);
        let f = fq(2);
        let data = collect_bistable(&g, f, &[2, 1], &[1, 1], 200).unwrap();
        let datum = &data[idx % data.len()];
        let dims = [vec![1, 0], vec![1, 1], vec![0, 1], vec![2, 0]][sub % 4].clone();
        let all = graded_subspaces(f, &datum.d, &dims);
        let s = &all[sub % all.len()];
        if datum.is_subrep(s) {
            let a = datum.sub_datum(s).unwrap();
            let b = datum.quotient_datum(s).unwrap();
            prop_assert!(a.is_flat() && a.is_stable());
            prop_assert!(b.is_flat() && b.is_stable());
            // dimensions add up
            let da: Vec<usize> = a.d.iter().zip(&b.d).map(|(x, y)| x + y).collect();
            prop_assert_eq!(da, datum.d.clone());
        } else {
            prop_assert_eq!(datum.sub_datum(s), Err(Error::NotSubrep));
        }
    }
}
