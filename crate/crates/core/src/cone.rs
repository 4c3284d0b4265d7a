//! Extreme rays of the per-block PPT cones `{x ≥ 0 : B x ≥ 0}`.
//!
//! For the block sizes met in practice every extreme ray is a 0/1 vector, so
//! the rays are found by scanning all indicator vectors and keeping the ones
//! whose tight constraints have rank `m - 1`. Larger blocks return `None` and
//! fall back to linear programming.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

/// Largest block whose indicator vectors are scanned exhaustively.
pub const MAX_SCANNED_BLOCK: usize = 16;

/// Each ray is a bit mask over the block's positions.
pub type Rays = Arc<Vec<u32>>;

type Cache = Mutex<HashMap<Vec<Vec<i64>>, Option<Rays>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// 0/1 extreme rays of `{x ≥ 0 : B x ≥ 0}`, or `None` when the block is too
/// large to scan or its entries are not all in `{-c, 0, c}`.
pub fn zero_one_rays(block: &[Vec<Rational>]) -> Option<Rays> {
    let m = block.len();
    if m == 0 || m > MAX_SCANNED_BLOCK {
        return None;
    }
    let scaled = integer_rows(block)?;
    if let Some(hit) = cache().lock().expect("ray cache poisoned").get(&scaled) {
        return hit.clone();
    }
    let rays = scan(&scaled);
    cache()
        .lock()
        .expect("ray cache poisoned")
        .insert(scaled, rays.clone());
    rays
}

fn integer_rows(block: &[Vec<Rational>]) -> Option<Vec<Vec<i64>>> {
    let mut lcm = num_bigint::BigInt::one();
    for v in block.iter().flatten() {
        lcm = lcm.lcm(v.denom());
    }
    let rows: Vec<Vec<i64>> = block
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| (v * Rational::from_integer(lcm.clone())).to_integer().to_i64())
                .collect::<Option<Vec<i64>>>()
        })
        .collect::<Option<_>>()?;
    let unit = rows.iter().flatten().map(|v| v.abs()).max().unwrap_or(0);
    if unit == 0 || rows.iter().flatten().any(|v| *v != 0 && v.abs() != unit) {
        return None;
    }
    Some(
        rows.into_iter()
            .map(|r| r.into_iter().map(|v| v / unit).collect())
            .collect(),
    )
}

fn scan(rows: &[Vec<i64>]) -> Option<Rays> {
    let m = rows.len();
    let pos: Vec<u32> = rows
        .iter()
        .map(|r| (0..m).filter(|&i| r[i] > 0).fold(0, |a, i| a | 1 << i))
        .collect();
    let neg: Vec<u32> = rows
        .iter()
        .map(|r| (0..m).filter(|&i| r[i] < 0).fold(0, |a, i| a | 1 << i))
        .collect();
    let mut rays = Vec::new();
    for mask in 1u32..(1u32 << m) {
        let values: Vec<i64> = (0..m)
            .map(|j| (mask & pos[j]).count_ones() as i64 - (mask & neg[j]).count_ones() as i64)
            .collect();
        if values.iter().any(|v| *v < 0) {
            continue;
        }
        let mut tight: Vec<Vec<i64>> = Vec::new();
        for i in 0..m {
            if (mask >> i) & 1 == 0 {
                let mut e = vec![0; m];
                e[i] = 1;
                tight.push(e);
            }
        }
        for (j, v) in values.iter().enumerate() {
            if *v == 0 {
                tight.push(rows[j].clone());
            }
        }
        if tight.len() + 1 >= m && integer_rank(tight, m) == m - 1 {
            rays.push(mask);
        }
    }
    Some(Arc::new(rays))
}

/// Exact rank by fraction-free elimination.
fn integer_rank(mut rows: Vec<Vec<i64>>, cols: usize) -> usize {
    let mut a: Vec<Vec<i128>> = rows
        .drain(..)
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect();
    let mut rank = 0;
    let mut prev: i128 = 1;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            for k in c + 1..cols {
                a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// Whether `B x ≥ 0` for the indicator of `mask`.
pub fn indicator_in_cone(block: &[Vec<Rational>], mask: u32) -> bool {
    (0..block.len()).all(|j| {
        let s = (0..block.len())
            .filter(|&i| (mask >> i) & 1 == 1)
            .fold(Rational::zero(), |acc, i| acc + &block[j][i]);
        !s.is_negative()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Bipartition, Graph};
    use crate::transfer::TransferMatrix;

    #[test]
    fn one_bp_blocks_have_pair_rays() {
        let c4 = Graph::builtin("C4").unwrap();
        let m = Bipartition::parse(4, "A|BCD").unwrap();
        let t = TransferMatrix::new(&c4, &m).unwrap();
        let rays = zero_one_rays(&t.block_pattern()).unwrap();
        assert_eq!(rays.len(), 6);
        assert!(rays.iter().all(|r| r.count_ones() == 2));
    }

    #[test]
    fn two_bp_block_ray_count() {
        let c4 = Graph::builtin("C4").unwrap();
        let m = Bipartition::parse(4, "AD|BC").unwrap();
        let t = TransferMatrix::new(&c4, &m).unwrap();
        let rays = zero_one_rays(&t.block_pattern()).unwrap();
        assert_eq!(rays.len(), 252);
        let four = rays.iter().filter(|r| r.count_ones() == 4).count();
        let six = rays.iter().filter(|r| r.count_ones() == 6).count();
        assert_eq!((four, six), (60, 192));
    }

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(integer_rank(vec![vec![1, 1], vec![2, 2]], 2), 1);
        assert_eq!(integer_rank(vec![vec![1, -1], vec![1, 1]], 2), 2);
        assert_eq!(integer_rank(vec![vec![0, 0, 1], vec![0, 1, 0], vec![0, 1, 1]], 3), 2);
    }
}
