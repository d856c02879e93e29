//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use linfield::{FieldTower, LinPoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `(label, p, e, n)` for the benchmarked towers.
pub const TOWERS: [(&str, u32, usize, usize); 4] = [
    ("GF(2^4)", 2, 1, 4),
    ("GF(2^8)", 2, 1, 8),
    ("GF(3^6)", 3, 1, 6),
    ("GF(16^4)", 2, 4, 4),
];

pub fn tower(p: u32, e: usize, n: usize) -> Arc<FieldTower> {
    Arc::new(FieldTower::with_degrees(p, e, n).expect("benchmark towers exist"))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_polys(t: &Arc<FieldTower>, count: usize, seed: u64) -> Vec<LinPoly> {
    let mut rng = rng(seed);
    (0..count).map(|_| LinPoly::random(t, &mut rng)).collect()
}

/// Random polynomials of rank exactly `n - 1`.
pub fn corank_one_polys(t: &Arc<FieldTower>, count: usize, seed: u64) -> Vec<LinPoly> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let l = LinPoly::random(t, &mut rng);
        if l.rank_bruteforce() + 1 == t.n() {
            out.push(l);
        }
    }
    out
}
