#![allow(dead_code)]

use pblab_core::{ProjPoint, Rational, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Q = Rational;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Random rational with denominator up to `den` and magnitude up to `span`.
pub fn rational(rng: &mut ChaCha8Rng, span: i64, den: i64) -> Q {
    let d = rng.gen_range(1..=den);
    let n = rng.gen_range(-span * d..=span * d);
    Q::from_ratio(n, d)
}

/// Random rational strictly inside (0, 1).
pub fn unit_open(rng: &mut ChaCha8Rng) -> Q {
    let d = rng.gen_range(2..=97);
    let n = rng.gen_range(1..d);
    Q::from_ratio(n, d)
}

pub fn rational_point(rng: &mut ChaCha8Rng) -> ProjPoint<Q> {
    ProjPoint::affine(rational(rng, 10, 12), rational(rng, 10, 12))
}

/// Rational point near the circle of radius `r` at a given angle.
pub fn point_near_circle(rng: &mut ChaCha8Rng, angle: f64, r: f64) -> ProjPoint<Q> {
    let jitter = rng.gen_range(0.8..1.2);
    let x = (r * jitter * angle.cos() * 1000.0).round() as i64;
    let y = (r * jitter * angle.sin() * 1000.0).round() as i64;
    ProjPoint::affine(Q::from_ratio(x, 1000), Q::from_ratio(y, 1000))
}

/// Clockwise star-shaped rational polygon around the origin.
pub fn star_polygon(rng: &mut ChaCha8Rng, n: usize) -> Vec<ProjPoint<Q>> {
    let mut angles: Vec<f64> = (0..n)
        .map(|k| -(k as f64 + rng.gen_range(0.1..0.9)) * std::f64::consts::TAU / n as f64)
        .collect();
    angles.sort_by(|a, b| b.partial_cmp(a).unwrap());
    angles.into_iter().map(|a| point_near_circle(rng, a, 5.0)).collect()
}

/// Homogeneous 3×3 integer matrix with nonzero determinant.
pub fn random_transform(rng: &mut ChaCha8Rng) -> [[Q; 3]; 3] {
    loop {
        let m: [[Q; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| Q::from_i64(rng.gen_range(-6..=6))));
        let det = m[0][0].clone() * (m[1][1].clone() * m[2][2].clone() - m[1][2].clone() * m[2][1].clone())
            - m[0][1].clone() * (m[1][0].clone() * m[2][2].clone() - m[1][2].clone() * m[2][0].clone())
            + m[0][2].clone() * (m[1][0].clone() * m[2][1].clone() - m[1][1].clone() * m[2][0].clone());
        if !Scalar::is_zero(&det) {
            return m;
        }
    }
}

pub fn apply(m: &[[Q; 3]; 3], v: &[Q; 3]) -> [Q; 3] {
    std::array::from_fn(|i| (0..3).fold(Q::from_i64(0), |acc, j| acc + m[i][j].clone() * v[j].clone()))
}

/// Cofactor matrix, which maps lines when points map by `m` (up to scale).
pub fn cofactor(m: &[[Q; 3]; 3]) -> [[Q; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let (i1, i2) = ((i + 1) % 3, (i + 2) % 3);
            let (j1, j2) = ((j + 1) % 3, (j + 2) % 3);
            m[i1][j1].clone() * m[i2][j2].clone() - m[i1][j2].clone() * m[i2][j1].clone()
        })
    })
}
