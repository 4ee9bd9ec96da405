use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::error::Error;

fn graph(f: Family, n: usize) -> Arc<DynkinGraph> {
    Arc::new(build_graph(f, n).unwrap())
}

fn iv(v: &[i64]) -> IVec {
    IVec(v.to_vec())
}

#[test]
fn kappa_examples() {
    let a1 = graph(Family::A, 1);
    assert_eq!(kappa(&a1, &iv(&[1]), &iv(&[0])), (iv(&[1]), iv(&[1])));
    let a2 = graph(Family::A, 2);
    assert_eq!(
        kappa(&a2, &iv(&[1, 1]), &iv(&[1, 0])),
        (iv(&[0, 1]), iv(&[2, 0]))
    );
    let d4 = graph(Family::D, 4);
    assert_eq!(
        kappa(&d4, &IVec::zeros(4), &IVec::zeros(4)),
        (IVec::zeros(4), IVec::zeros(4))
    );
}

#[test]
fn kappa_inv_examples() {
    let a1 = graph(Family::A, 1);
    assert_eq!(
        kappa_inv(&a1, &iv(&[1]), &iv(&[1])).unwrap(),
        (iv(&[1]), iv(&[0]))
    );
    assert_eq!(
        kappa_inv(&a1, &iv(&[0]), &iv(&[1])),
        Err(Error::NotInLattice)
    );
    let a2 = graph(Family::A, 2);
    assert_eq!(
        kappa_inv(&a2, &iv(&[0, 1]), &iv(&[2, 0])).unwrap(),
        (iv(&[1, 1]), iv(&[1, 0]))
    );
}

#[test]
fn type_from_dv_examples() {
    let a1 = graph(Family::A, 1);
    let xi = type_from_dv(&a1, &iv(&[2]), &iv(&[1])).unwrap();
    assert_eq!(
        (xi.u(), xi.gamma(), xi.delta()),
        (&iv(&[1]), iv(&[0]), iv(&[2]))
    );

    let a2 = graph(Family::A, 2);
    let xi = type_from_dv(&a2, &iv(&[2, 0]), &iv(&[1, 0])).unwrap();
    assert_eq!(xi.u(), &iv(&[1, 1]));
    assert_eq!(xi.gamma(), iv(&[0, 1]));
    assert_eq!(xi.delta(), iv(&[2, 0]));

    let d4 = graph(Family::D, 4);
    let d = iv(&[3, 1, 0, 2]);
    let xi = type_from_dv(&d4, &d, &IVec::zeros(4)).unwrap();
    assert_eq!((xi.u(), xi.gamma(), xi.delta()), (&d, d.clone(), d.clone()));
}

#[test]
fn dimension_formulas() {
    let a1 = graph(Family::A, 1);
    assert_eq!(x_dim(&type_from_dv(&a1, &iv(&[2]), &iv(&[1])).unwrap()), 2);
    assert_eq!(x_dim(&type_from_dv(&a1, &iv(&[3]), &iv(&[1])).unwrap()), 4);
    assert_eq!(x_dim(&type_from_dv(&a1, &iv(&[5]), &iv(&[0])).unwrap()), 0);

    assert_eq!(o_dim(&Partition::from_parts(&[1, 1])), 2);
    assert_eq!(o_dim(&Partition::from_parts(&[2])), 0);
    assert_eq!(o_dim(&Partition::from_parts(&[2, 1])), 4);

    assert_eq!(f_dim(&[1, 1]), 1);
    assert_eq!(f_dim(&[1, 1, 1]), 3);
    assert_eq!(g_dim(&[iv(&[1]), iv(&[1]), iv(&[1])]), 3);
    assert_eq!(g_dim(&[iv(&[1, 2]), iv(&[3, 1])]), 5);
}

#[test]
fn nu_examples() {
    let a2 = graph(Family::A, 2);
    let eta = type_from_dv(&a2, &iv(&[2, 0]), &iv(&[1, 0])).unwrap();
    assert_eq!(nu_map(&eta).unwrap(), Partition::from_parts(&[1, 1]));
    let eta = type_from_dv(&a2, &iv(&[2, 0]), &iv(&[0, 0])).unwrap();
    assert_eq!(nu_map(&eta).unwrap(), Partition::from_parts(&[2]));
    let eta = type_from_dv(&a2, &iv(&[1, 1]), &iv(&[0, 0])).unwrap();
    assert_eq!(nu_map(&eta), Err(Error::NotConcentrated));
    let eta = type_from_dv(&a2, &iv(&[3, 0]), &iv(&[2, 0])).unwrap();
    assert!(matches!(nu_map(&eta), Err(Error::NotAPartition(_))));
    let d4 = graph(Family::D, 4);
    let eta = type_from_dv(&d4, &iv(&[1, 0, 0, 0]), &IVec::zeros(4)).unwrap();
    assert_eq!(nu_map(&eta), Err(Error::NotTypeA));
}

#[test]
fn nu_succeeds_exactly_on_positive_integrable_weights() {
    for rank in 1..=3 {
        let g = graph(Family::A, rank);
        for d1 in 0..=5i64 {
            let mut d = vec![0; rank];
            d[0] = d1;
            let d = IVec(d);
            let range: Vec<i64> = (-1..=d1 + 1).collect();
            let mut v = vec![-1i64; rank];
            loop {
                let eta = type_from_dv(&g, &d, &IVec(v.clone())).unwrap();
                let nu = nu_map(&eta);
                assert_eq!(
                    nu.is_ok(),
                    eta.is_positive_integrable(),
                    "A{rank} d={d:?} v={v:?}"
                );
                if let Ok(lambda) = nu {
                    assert_eq!(weight_of_partition(&g, &lambda).unwrap(), eta);
                }
                // odometer over v
                let mut k = 0;
                while k < rank {
                    if v[k] < *range.last().unwrap() {
                        v[k] += 1;
                        break;
                    }
                    v[k] = range[0];
                    k += 1;
                }
                if k == rank {
                    break;
                }
            }
        }
    }
}

#[test]
fn partitions() {
    assert_eq!(
        Partition::new(vec![2, 1, 0, 0]).unwrap(),
        Partition::from_parts(&[2, 1])
    );
    assert!(Partition::new(vec![1, 2]).is_err());
    assert!(Partition::new(vec![1, -1]).is_err());
    assert_eq!(
        Partition::from_parts(&[3, 1]).conjugate(),
        Partition::from_parts(&[2, 1, 1])
    );
    assert_eq!(Partition::all_of_size(4).len(), 5);
    assert_eq!(Partition::all_of_size(0), vec![Partition::empty()]);
    let json = serde_json::to_string(&Partition::from_parts(&[2, 1])).unwrap();
    assert_eq!(json, "[2,1]");
    let back: Partition = serde_json::from_str("[3,3,1]").unwrap();
    assert_eq!(back, Partition::from_parts(&[3, 3, 1]));
    assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
}

#[test]
fn weight_json_round_trip() {
    let a2 = graph(Family::A, 2);
    let xi = type_from_dv(&a2, &iv(&[2, 0]), &iv(&[1, 0])).unwrap();
    let json = serde_json::to_string(&xi).unwrap();
    assert_eq!(json, r#"{"family":"A","rank":2,"u":[1,1],"v":[1,0]}"#);
    let back: GPrimeWeight = serde_json::from_str(&json).unwrap();
    assert_eq!(back, xi);
}

#[test]
fn integrability() {
    let a1 = graph(Family::A, 1);
    // d=2, v=1 is positive-integrable; d=1, v=1 is integrable only
    let ok = type_from_dv(&a1, &iv(&[2]), &iv(&[1])).unwrap();
    assert!(ok.is_positive_integrable());
    let bad = type_from_dv(&a1, &iv(&[1]), &iv(&[1])).unwrap();
    assert!(bad.is_integrable());
    assert!(!bad.is_positive_integrable());
}

proptest! {
    #[test]
    fn kappa_inv_inverts_kappa(fam in 0usize..3, u in prop::collection::vec(-20i64..20, 8),
                               v in prop::collection::vec(-20i64..20, 8)) {
        let g = match fam {
            0 => graph(Family::A, 4),
            1 => graph(Family::D, 5),
            _ => graph(Family::E, 8),
        };
        let n = g.rank();
        let (u, v) = (IVec(u[..n].to_vec()), IVec(v[..n].to_vec()));
        let (gamma, delta) = kappa(&g, &u, &v);
        prop_assert_eq!(kappa_inv(&g, &gamma, &delta).unwrap(), (u, v));
    }

    #[test]
    fn type_from_dv_has_delta_d(d in prop::collection::vec(0i64..6, 4), v in prop::collection::vec(0i64..4, 4)) {
        let g = graph(Family::D, 4);
        let xi = type_from_dv(&g, &IVec(d.clone()), &IVec(v)).unwrap();
        prop_assert_eq!(xi.delta(), IVec(d));
    }
}
