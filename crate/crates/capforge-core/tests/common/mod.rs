#![allow(dead_code)]

use std::f64::consts::PI;

use capforge_core::{Polygon, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random star-shaped counterclockwise polygon with `n` vertices, placed with
/// a random similarity. Retries until the constructor accepts it.
pub fn random_polygon(rng: &mut ChaCha8Rng, n: usize) -> Polygon {
    loop {
        let gaps: Vec<f64> = (0..n).map(|_| rng.gen_range(0.3..1.0)).collect();
        let total: f64 = gaps.iter().sum();
        let mut angle = rng.gen_range(0.0..2.0 * PI);
        let scale = rng.gen_range(0.2..5.0);
        let center = Vertex::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let vertices = gaps
            .iter()
            .map(|g| {
                angle += g / total * 2.0 * PI;
                center + Vertex::from_polar(scale * rng.gen_range(0.35..1.0), angle)
            })
            .collect();
        if let Ok(p) = Polygon::new(vertices) {
            return p;
        }
    }
}

pub fn random_complex(rng: &mut ChaCha8Rng, r: f64) -> Vertex {
    Vertex::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

/// Nonzero similarity factor.
pub fn random_scale(rng: &mut ChaCha8Rng) -> Vertex {
    Vertex::from_polar(rng.gen_range(0.1..10.0), rng.gen_range(-PI..PI))
}

pub fn regular(n: usize) -> Polygon {
    Polygon::new((0..n).map(|k| Vertex::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)).collect()).unwrap()
}

pub fn square_octagon() -> Polygon {
    Polygon::from_xy(&[
        (0.0, 0.0),
        (0.5, 0.0),
        (1.0, 0.0),
        (1.0, 0.5),
        (1.0, 1.0),
        (0.5, 1.0),
        (0.0, 1.0),
        (0.0, 0.5),
    ])
    .unwrap()
}

/// Maximum of `|a_k - b_k|` over two equally long lists.
pub fn max_diff(a: &[Vertex], b: &[Vertex]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
