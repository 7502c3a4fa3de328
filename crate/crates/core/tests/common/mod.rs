#![allow(dead_code)]

use coves::RegressionData;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TAUS: [f64; 4] = [0.25, 0.5, 0.75, 0.9];

/// Random design with an intercept, an optional 0/1 column and an optional
/// continuous column. Odd instances use integer data, which produces ties
/// and degenerate optima.
pub fn random_instance(k: u64, rng: &mut ChaCha8Rng) -> (RegressionData, Vec<Vec<f64>>) {
    let p = rng.random_range(1..=3usize);
    let n = rng.random_range(p.max(2)..=12usize);
    let round = k % 2 == 1;
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            let mut r = vec![1.0];
            if p >= 2 {
                r.push(rng.random_range(0..2) as f64);
            }
            if p >= 3 {
                let c: f64 = rng.random_range(-3.0..3.0);
                r.push(if round { c.round() } else { c });
            }
            r
        })
        .collect();
    let y = (0..n)
        .map(|_| {
            let v: f64 = rng.random_range(-5.0..5.0);
            if round { v.round() } else { v }
        })
        .collect();
    (RegressionData::new(y, &rows).unwrap(), rows)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Z = (0,1,2,10, 0,1,2,4), four treated then four controls, C = 1..4 twice.
pub fn eight_point() -> coves::Dataset {
    coves::Dataset::new(
        vec![0.0, 1.0, 2.0, 10.0, 0.0, 1.0, 2.0, 4.0],
        vec![1, 1, 1, 1, 0, 0, 0, 0],
        vec![1.0, 2.0, 3.0, 4.0, 1.0, 2.0, 3.0, 4.0],
    )
    .unwrap()
}

pub const EIGHT_POINT_CSV: &str = "z,d,c\n0,1,1\n1,1,2\n2,1,3\n10,1,4\n0,0,1\n1,0,2\n2,0,3\n4,0,4\n";
