use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparationOutcome {
    pub trials: usize,
    /// Trials in which two sets of the family received the same total weight.
    pub collisions: usize,
}

impl SeparationOutcome {
    pub fn frequency(&self) -> f64 {
        self.collisions as f64 / self.trials as f64
    }
}

/// `C(|F|, 2) / M`, the bound on the collision probability.
pub fn collision_bound(family_size: usize, weight_cap: u64) -> f64 {
    let pairs = family_size * family_size.saturating_sub(1) / 2;
    pairs as f64 / weight_cap as f64
}

/// Draws iid weights `w: [ground] → {1..M}` `trials` times and counts the trials in which two
/// sets of `sets` have equal total weight.
pub fn separation_check(
    sets: &[Vec<usize>],
    ground: usize,
    weight_cap: u64,
    trials: usize,
    seed: u64,
) -> Result<SeparationOutcome> {
    if trials == 0 || weight_cap == 0 {
        return Err(Error::Precondition(
            "trials and weight cap must be positive".into(),
        ));
    }
    if let Some(x) = sets.iter().flatten().find(|&&x| x >= ground) {
        return Err(Error::Precondition(format!(
            "element {x} outside the ground set"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weights = vec![0u64; ground];
    let mut totals = Vec::with_capacity(sets.len());
    let mut collisions = 0;
    for _ in 0..trials {
        for w in weights.iter_mut() {
            *w = rng.gen_range(1..=weight_cap);
        }
        totals.clear();
        totals.extend(
            sets.iter()
                .map(|s| s.iter().map(|&x| weights[x]).sum::<u64>()),
        );
        totals.sort_unstable();
        if totals.windows(2).any(|w| w[0] == w[1]) {
            collisions += 1;
        }
    }
    Ok(SeparationOutcome { trials, collisions })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_family_never_collides() {
        let out = separation_check(&[vec![0, 1]], 2, 3, 500, 1).unwrap();
        assert_eq!(out.collisions, 0);
    }

    #[test]
    fn identical_sets_always_collide() {
        let out = separation_check(&[vec![0], vec![0]], 1, 10, 50, 1).unwrap();
        assert_eq!(out.collisions, 50);
    }

    #[test]
    fn preconditions() {
        assert!(separation_check(&[], 0, 0, 1, 0).is_err());
        assert!(separation_check(&[vec![3]], 2, 5, 1, 0).is_err());
    }
}
