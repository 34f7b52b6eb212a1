use crate::error::{Error, Result};
use crate::lattice::{validate_tree, Bond, RootedTree, Site};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

/// Grows a random `bonds`-bond tree from the origin, deterministic in `seed`.
///
/// Each step picks uniformly among lattice bonds that join a tree site to an
/// unoccupied site, so no site is ever reused.
pub fn random_lattice_tree(bonds: usize, seed: u64) -> Result<RootedTree> {
    if bonds == 0 {
        return Err(Error::InvalidParameter(
            "a tree needs at least one bond".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut occupied = BTreeSet::from([Site::ORIGIN]);
    let mut placed = Vec::with_capacity(bonds);
    while placed.len() < bonds {
        let candidates: Vec<Bond> = occupied
            .iter()
            .flat_map(|&s| {
                s.neighbours()
                    .into_iter()
                    .filter(|t| !occupied.contains(t))
                    .map(move |t| Bond::new(s, t).expect("neighbours are unit apart"))
            })
            .collect();
        let Some(&b) = candidates.choose(&mut rng) else {
            return Err(Error::Stuck {
                placed: placed.len(),
            });
        };
        let (u, v) = b.endpoints();
        occupied.insert(u);
        occupied.insert(v);
        placed.push(b);
    }
    validate_tree(Site::ORIGIN, placed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_bond_at_root() {
        for seed in 0..20 {
            let t = random_lattice_tree(1, seed).unwrap();
            assert_eq!(t.len(), 1);
            assert!(t.bonds()[0].touches(Site::ORIGIN));
        }
    }

    #[test]
    fn deterministic_in_seed() {
        let a = random_lattice_tree(9, 7).unwrap();
        let b = random_lattice_tree(9, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 9);
        assert_eq!(a.sites().len(), 10);
        let differs = (0..10).any(|s| random_lattice_tree(9, s).unwrap() != a);
        assert!(differs);
    }

    #[test]
    fn zero_bonds_rejected() {
        assert!(random_lattice_tree(0, 1).is_err());
    }
}
