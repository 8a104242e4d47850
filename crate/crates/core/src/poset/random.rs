//! Seeded random posets.
//!
//! The generator is pinned so a seed reproduces the same poset everywhere:
//! the PRNG is ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded through
//! `SeedableRng::seed_from_u64`, and relations are drawn as independent
//! Bernoulli trials over the strict upper triangle in row-major order
//! (`i` ascending, then `j` ascending, `i < j`), followed by transitive
//! closure and reduction. Labels are `x0 .. x{n-1}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Poset;

pub type PosetRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> PosetRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random poset on `n` elements where each `i < j` pair is related with
/// probability `density` before closure.
pub fn random_poset(n: usize, density: f64, seed: u64) -> Poset {
    random_poset_with(n, density, &mut rng_from_seed(seed))
}

pub(crate) fn random_poset_with<R: Rng>(n: usize, density: f64, rng: &mut R) -> Poset {
    let density = density.clamp(0.0, 1.0);
    let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_id_relations(labels, &pairs).expect("upper-triangular relations are acyclic")
}

/// Random homogeneous poset of dimension 1 (a bipartite cover graph without
/// isolated points) with at most `max_size >= 2` elements.
pub fn random_homogeneous_dim1<R: Rng>(max_size: usize, rng: &mut R) -> Poset {
    let max_size = max_size.max(2);
    let total = rng.gen_range(2..=max_size);
    let bottom = rng.gen_range(1..total);
    let top = total - bottom;
    let mut labels: Vec<String> = (0..bottom).map(|i| format!("m{i}")).collect();
    labels.extend((0..top).map(|j| format!("M{j}")));
    let mut pairs = Vec::new();
    for i in 0..bottom {
        for j in 0..top {
            if rng.gen_bool(0.4) {
                pairs.push((i, bottom + j));
            }
        }
    }
    for i in 0..bottom {
        if !pairs.iter().any(|&(a, _)| a == i) {
            pairs.push((i, bottom + rng.gen_range(0..top)));
        }
    }
    for j in bottom..total {
        if !pairs.iter().any(|&(_, b)| b == j) {
            pairs.push((rng.gen_range(0..bottom), j));
        }
    }
    Poset::from_id_relations(labels, &pairs).expect("bipartite relations are acyclic")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_extremes() {
        let anti = random_poset(5, 0.0, 7);
        assert!(anti.covers().is_empty());
        let chain = random_poset(5, 1.0, 7);
        assert_eq!(chain.covers().len(), 4);
        assert_eq!(chain.maximal_chains().len(), 1);
    }

    #[test]
    fn seeded_generation_is_deterministic() {
        assert_eq!(random_poset(6, 0.4, 11), random_poset(6, 0.4, 11));
    }

    #[test]
    fn homogeneous_generator() {
        let mut rng = rng_from_seed(3);
        for _ in 0..50 {
            let p = random_homogeneous_dim1(10, &mut rng);
            assert!(p.len() <= 10);
            assert_eq!(p.homogeneity(), Some(1));
        }
    }
}
