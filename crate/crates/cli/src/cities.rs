//! Synthetic stand-in for the two-group city dataset: uniform points in the
//! latitude/longitude boxes of the contiguous states (group A) and of Hawaii
//! and Alaska (group B), as `(lat, lon)` pairs rounded to 4 decimals.

use fermat_dc::Vector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const GROUP_A_SIZE: usize = 1097;
pub const HAWAII_SIZE: usize = 30;
pub const ALASKA_SIZE: usize = 90;

const CONTIGUOUS: ([f64; 2], [f64; 2]) = ([25.0, 49.0], [-124.0, -67.0]);
const HAWAII: ([f64; 2], [f64; 2]) = ([19.0, 22.5], [-160.5, -154.5]);
const ALASKA: ([f64; 2], [f64; 2]) = ([55.0, 71.0], [-168.0, -130.0]);

#[derive(Debug, Clone, PartialEq)]
pub struct Cities {
    pub group_a: Vec<Vector>,
    pub group_b: Vec<Vector>,
}

fn sample(rng: &mut ChaCha8Rng, (lat, lon): ([f64; 2], [f64; 2]), count: usize) -> Vec<Vector> {
    let round = |x: f64| (x * 1e4).round() / 1e4;
    (0..count)
        .map(|_| {
            let a = rng.random_range(lat[0]..=lat[1]);
            let b = rng.random_range(lon[0]..=lon[1]);
            Vector::from_vec(vec![round(a), round(b)])
        })
        .collect()
}

/// Deterministic for a given seed. Group A uses ChaCha8 stream 0 and group B
/// stream 1.
pub fn generate(seed: u64) -> Cities {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(0);
    let group_a = sample(&mut rng, CONTIGUOUS, GROUP_A_SIZE);
    rng.set_stream(1);
    rng.set_word_pos(0);
    let mut group_b = sample(&mut rng, HAWAII, HAWAII_SIZE);
    group_b.extend(sample(&mut rng, ALASKA, ALASKA_SIZE));
    Cities { group_a, group_b }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_ranges_and_determinism() {
        let c = generate(5);
        assert_eq!(c.group_a.len(), 1097);
        assert_eq!(c.group_b.len(), 120);
        assert!(c
            .group_a
            .iter()
            .all(|p| (25.0..=49.0).contains(&p[0]) && (-124.0..=-67.0).contains(&p[1])));
        assert_eq!(c, generate(5));
        assert_ne!(c, generate(6));
    }
}
