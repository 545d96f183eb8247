//! Seeded random base points, for building general members of a component.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{build_net, CremonaMap, MapError};
use crate::multiindex::MultiIndex;
use crate::polyring::ProjPoint;

/// Largest absolute value of a sampled coordinate.
pub const HEIGHT: i64 = 20;
/// Fresh point sets tried before giving up on special position.
pub const ATTEMPTS: usize = 5;

/// `n` distinct points with integer coordinates in `[-HEIGHT, HEIGHT]`.
pub fn random_points(rng: &mut impl Rng, n: usize) -> Vec<ProjPoint> {
    let mut out: Vec<ProjPoint> = Vec::with_capacity(n);
    while out.len() < n {
        let c: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-HEIGHT..=HEIGHT));
        if c == [0, 0, 0] {
            continue;
        }
        let p = ProjPoint::from_ints(c[0], c[1], c[2]);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// A map of type `nu` through seeded random points. Point sets in special
/// position are redrawn up to `ATTEMPTS` times.
pub fn random_net(nu: &MultiIndex, seed: u64) -> Result<(CremonaMap, Vec<ProjPoint>), MapError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = nu.reduced_length() as usize;
    let mut last = None;
    for _ in 0..ATTEMPTS {
        let pts = random_points(&mut rng, r);
        match build_net(nu, &pts) {
            Ok(map) => return Ok((map, pts)),
            Err(e @ MapError::SpecialPosition { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_a_seed() {
        let nu = MultiIndex::new(3, &[4, 1]).unwrap();
        let (a, pa) = random_net(&nu, 7).unwrap();
        let (b, pb) = random_net(&nu, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(pa, pb);
        assert_eq!(a.multiplicity_at(&pa[0]), 2);
    }

    #[test]
    fn points_are_distinct_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pts = random_points(&mut rng, 40);
        for (i, p) in pts.iter().enumerate() {
            assert!(!pts[..i].contains(p));
        }
    }
}
