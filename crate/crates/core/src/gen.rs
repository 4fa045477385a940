//! Seeded random terrain generation for tests and experiments.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geom::Point;
use crate::terrain::Terrain;

/// A random terrain with `n` vertices, integer coordinates in
/// `[0, coord_max]`, equal end heights and all interior vertices strictly
/// above the base. Always valid by construction.
pub fn random_terrain(seed: u64, n: usize, coord_max: u32) -> Terrain {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_terrain_with(&mut rng, n, coord_max)
}

pub fn random_terrain_with<R: Rng>(rng: &mut R, n: usize, coord_max: u32) -> Terrain {
    assert!(n >= 3);
    assert!(coord_max as usize >= n, "need at least n distinct x values");
    let max = coord_max as i64;
    // n distinct x values.
    let mut xs: Vec<i64> = Vec::with_capacity(n);
    while xs.len() < n {
        let x = rng.gen_range(0..=max);
        if !xs.contains(&x) {
            xs.push(x);
        }
    }
    xs.sort_unstable();
    let base_y = rng.gen_range(0..max); // leave room above
    let mut pts = Vec::with_capacity(n);
    for (i, &x) in xs.iter().enumerate() {
        let y = if i == 0 || i == n - 1 {
            base_y
        } else {
            rng.gen_range(base_y + 1..=max)
        };
        pts.push(Point::new(x as f64, y as f64));
    }
    Terrain::build(&pts).expect("generated terrain is valid by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_terrains_are_valid_and_deterministic() {
        for seed in 0..50 {
            let t = random_terrain(seed, 4 + (seed as usize % 7), 20);
            assert!(t.n() >= 4);
            assert!(t.max_height() > 0.0);
            let again = random_terrain(seed, 4 + (seed as usize % 7), 20);
            assert_eq!(t.chain(), again.chain());
        }
    }
}
