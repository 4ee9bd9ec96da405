use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rootdata::Partition;

fn contains(outer: &Partition, inner: &Partition) -> bool {
    inner.length() <= outer.length() && (0..inner.length()).all(|i| inner.part(i) <= outer.part(i))
}

/// Two-factor coefficient `c^lambda_{mu nu}`: the number of LR tableaux of
/// skew shape `lambda / mu` and content `nu`.
pub fn lr_two(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.size() != mu.size() + nu.size() || !contains(lambda, mu) || !contains(lambda, nu) {
        return 0;
    }
    // cells in reading order: rows top to bottom, right to left within a row
    let mut cells = Vec::new();
    for r in 0..lambda.length() {
        for c in (mu.part(r)..lambda.part(r)).rev() {
            cells.push((r, c));
        }
    }
    let mut fill: Vec<Vec<usize>> = (0..lambda.length())
        .map(|r| vec![0; lambda.part(r)])
        .collect();
    let mut counts = vec![0usize; nu.length() + 1];
    let mut total = 0u64;
    fill_cells(
        &cells,
        0,
        lambda,
        mu,
        nu,
        &mut fill,
        &mut counts,
        &mut total,
    );
    total
}

#[allow(clippy::too_many_arguments)]
fn fill_cells(
    cells: &[(usize, usize)],
    idx: usize,
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    fill: &mut Vec<Vec<usize>>,
    counts: &mut Vec<usize>,
    total: &mut u64,
) {
    if idx == cells.len() {
        *total += 1;
        return;
    }
    let (r, c) = cells[idx];
    // row weakly increasing: bounded by the already filled right neighbour
    let hi = if c + 1 < lambda.part(r) {
        fill[r][c + 1]
    } else {
        nu.length()
    };
    // column strict: above the cell must be smaller (cells of mu count as 0)
    let lo = if r > 0 && c >= mu.part(r - 1) {
        fill[r - 1][c] + 1
    } else {
        1
    };
    for e in lo..=hi.min(r + 1) {
        if counts[e] >= nu.part(e - 1) {
            continue;
        }
        if e > 1 && counts[e] + 1 > counts[e - 1] {
            continue;
        }
        counts[e] += 1;
        fill[r][c] = e;
        fill_cells(cells, idx + 1, lambda, mu, nu, fill, counts, total);
        counts[e] -= 1;
    }
    fill[r][c] = 0;
}

/// Coefficient of `s_lambda` in `s_{mu^1} ... s_{mu^n}`, iterating the two-factor rule.
pub fn lr_coefficient(lambda: &Partition, mus: &[Partition]) -> Result<BigInt> {
    let parts: usize = mus.iter().map(Partition::size).sum();
    if parts != lambda.size() {
        return Err(Error::SizeMismatch {
            total: lambda.size().to_string(),
            parts: parts.to_string(),
        });
    }
    // partial products restricted to shapes inside lambda
    let mut acc: BTreeMap<Partition, BigInt> = BTreeMap::new();
    acc.insert(Partition::empty(), BigInt::one());
    let mut size = 0;
    for mu in mus {
        size += mu.size();
        let shapes: Vec<Partition> = Partition::all_of_size(size)
            .into_iter()
            .filter(|k| contains(lambda, k))
            .collect();
        let mut next = BTreeMap::new();
        for kappa in shapes {
            let mut c = BigInt::zero();
            for (nu, m) in &acc {
                let t = lr_two(&kappa, nu, mu);
                if t > 0 {
                    c += m * BigInt::from(t);
                }
            }
            if !c.is_zero() {
                next.insert(kappa, c);
            }
        }
        acc = next;
    }
    Ok(acc.remove(lambda).unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::from_parts(parts)
    }

    #[test]
    fn small_coefficients() {
        assert_eq!(
            lr_coefficient(&p(&[1, 1]), &[p(&[1]), p(&[1])]).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            lr_coefficient(&p(&[2]), &[p(&[1]), p(&[1])]).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            lr_coefficient(&p(&[2, 1]), &[p(&[1]), p(&[1]), p(&[1])]).unwrap(),
            BigInt::from(2)
        );
        assert!(matches!(
            lr_coefficient(&p(&[2]), &[p(&[1])]),
            Err(Error::SizeMismatch { .. })
        ));
        assert_eq!(
            lr_coefficient(&Partition::empty(), &[]).unwrap(),
            BigInt::one()
        );
    }

    #[test]
    fn classic_two_factor() {
        // c^{(3,2,1)}_{(2,1),(2,1)} = 2
        assert_eq!(lr_two(&p(&[3, 2, 1]), &p(&[2, 1]), &p(&[2, 1])), 2);
        // the remaining constituents of s_{21}^2 with coefficient 1
        assert_eq!(lr_two(&p(&[4, 2]), &p(&[2, 1]), &p(&[2, 1])), 1);
        assert_eq!(lr_two(&p(&[2, 2, 1, 1]), &p(&[2, 1]), &p(&[2, 1])), 1);
        assert_eq!(lr_two(&p(&[4, 1, 1]), &p(&[2, 1]), &p(&[2, 1])), 1);
    }

    #[test]
    fn standard_tableaux_count() {
        // coefficient of s_lambda in s_1^n counts standard tableaux
        let ones = vec![p(&[1]); 5];
        let expected = [
            (vec![5], 1),
            (vec![4, 1], 4),
            (vec![3, 2], 5),
            (vec![3, 1, 1], 6),
            (vec![2, 2, 1], 5),
        ];
        for (shape, f) in expected {
            assert_eq!(
                lr_coefficient(&p(&shape), &ones).unwrap(),
                BigInt::from(f),
                "{shape:?}"
            );
        }
    }

    #[test]
    fn symmetric_in_factors() {
        for lambda in Partition::all_of_size(5) {
            for mu in Partition::all_of_size(2) {
                for nu in Partition::all_of_size(3) {
                    assert_eq!(lr_two(&lambda, &mu, &nu), lr_two(&lambda, &nu, &mu));
                    assert_eq!(
                        lr_two(&lambda, &mu, &nu),
                        lr_two(&lambda.conjugate(), &mu.conjugate(), &nu.conjugate())
                    );
                }
            }
        }
    }
}
