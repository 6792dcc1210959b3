//! Seeded random cubes over the group library.

use std::sync::{Arc, OnceLock};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::Groups;
use crate::cube::Cube;
use crate::error::{Error, Result};
use crate::group::{FinGroup, Subgroup};
use crate::harness::enumerate::enumerate_normal_subgroups;
use crate::library;

/// Largest library order with cached normal subgroups.
pub const POOL_MAX_ORDER: usize = 24;
const RESAMPLE_LIMIT: usize = 256;

/// A library group with all its normal subgroups.
#[derive(Debug, Clone)]
pub struct PoolEntry {
    pub name: String,
    pub group: Arc<FinGroup>,
    pub normals: Vec<Subgroup>,
}

/// Library groups of order at most [`POOL_MAX_ORDER`] with their normal subgroups.
pub fn pool() -> &'static [PoolEntry] {
    static POOL: OnceLock<Vec<PoolEntry>> = OnceLock::new();
    POOL.get_or_init(|| {
        library::up_to_order(POOL_MAX_ORDER)
            .into_iter()
            .map(|(name, group)| {
                let normals = enumerate_normal_subgroups(&group).expect("library groups are small");
                PoolEntry { name, group, normals }
            })
            .collect()
    })
}

/// A random cube together with how it was built.
#[derive(Debug, Clone)]
pub struct RandomCube {
    pub cube: Cube<Groups>,
    pub group: String,
    /// The normal subgroups of the top vertex used for the quotient lattice.
    pub normals: Vec<Subgroup>,
    pub mutated: bool,
}

/// Draws a quotient-lattice `dim`-cube on a library group of order at most
/// `max_order`, resampling the normal subgroups until the lattice is an
/// extension (always so for `dim ≤ 2`). With `mutate` the bottom vertex is
/// enlarged so that the arrows into it stop being surjective.
pub fn random_cube_with(rng: &mut ChaCha8Rng, dim: usize, max_order: usize, mutate: bool) -> Result<RandomCube> {
    if dim > 3 {
        return Err(Error::DimCapExceeded { dim, cap: 3 });
    }
    if mutate && dim == 0 {
        return Err(Error::ShapeMismatch("a 0-cube has no arrow to break".into()));
    }
    let candidates: Vec<&PoolEntry> = pool().iter().filter(|e| e.group.order() <= max_order).collect();
    let entry = *candidates.choose(rng).expect("the trivial group is always a candidate");
    let mut chosen = None;
    for _ in 0..RESAMPLE_LIMIT {
        let normals: Vec<Subgroup> = (0..dim)
            .map(|_| entry.normals[rng.gen_range(0..entry.normals.len())].clone())
            .collect();
        let cube = Cube::quotient_lattice(&entry.group, &normals)?;
        if cube.is_n_fold_extension()? {
            chosen = Some((cube, normals));
            break;
        }
    }
    let (cube, normals) = match chosen {
        Some(c) => c,
        None => {
            let normals = vec![Subgroup::trivial(&entry.group); dim];
            (Cube::quotient_lattice(&entry.group, &normals)?, normals)
        }
    };
    let cube = if mutate { cube.mutated()? } else { cube };
    Ok(RandomCube {
        cube,
        group: entry.name.clone(),
        normals,
        mutated: mutate,
    })
}

/// [`random_cube_with`] on a fresh generator seeded by `seed`.
pub fn random_cube(dim: usize, seed: u64, max_order: usize, mutate: bool) -> Result<RandomCube> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_cube_with(&mut rng, dim, max_order, mutate)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        for seed in 0..5 {
            let a = random_cube(2, seed, 8, false).unwrap();
            let b = random_cube(2, seed, 8, false).unwrap();
            assert_eq!(a.group, b.group);
            assert_eq!(a.normals, b.normals);
            assert!(a.cube.same_as(&b.cube));
        }
    }

    #[test]
    fn extensions_unless_mutated() {
        for seed in 0..40 {
            for dim in 1..=3 {
                let c = random_cube(dim, seed, 16, false).unwrap();
                assert!(c.cube.is_n_fold_extension().unwrap());
                let m = random_cube(dim, seed, 16, true).unwrap();
                assert!(!m.cube.is_n_fold_extension().unwrap());
            }
        }
    }

    #[test]
    fn coordinate_three_cube_is_an_extension() {
        let g = library::elementary_abelian2(3).unwrap();
        let ks: Vec<Subgroup> = [1, 2, 4].iter().map(|&x| Subgroup::generated(&g, [x]).unwrap()).collect();
        assert!(Cube::quotient_lattice(&g, &ks).unwrap().is_n_fold_extension().unwrap());
    }

    #[test]
    fn respects_order_bound() {
        for seed in 0..20 {
            assert!(random_cube(2, seed, 4, false).unwrap().cube.top().order() <= 4);
        }
    }
}
