//! Exhaustive enumeration of normal subgroups, quotient extensions and
//! double extensions of small groups.

use std::collections::HashSet;
use std::sync::Arc;

use crate::category::Groups;
use crate::cube::Cube;
use crate::error::{Error, Result};
use crate::group::{FinGroup, Subgroup};
use crate::hom::{quotient, GroupHom};

pub const NORMAL_SUBGROUP_CAP: usize = 64;
pub const EXTENSION_CAP: usize = 32;
pub const DOUBLE_EXTENSION_CAP: usize = 16;

fn check_cap(g: &FinGroup, cap: usize) -> Result<()> {
    if g.order() > cap {
        Err(Error::CapExceeded { order: g.order(), cap })
    } else {
        Ok(())
    }
}

/// Every normal subgroup is a product of normal closures of single elements,
/// so closing those under products reaches all of them. Sorted by order,
/// then by members.
pub fn enumerate_normal_subgroups(g: &Arc<FinGroup>) -> Result<Vec<Subgroup>> {
    check_cap(g, NORMAL_SUBGROUP_CAP)?;
    let mut closures: Vec<Subgroup> = Vec::new();
    let mut seen_closure = HashSet::new();
    for x in g.elements() {
        let c = Subgroup::generated(g, [x])?.normal_closure();
        if seen_closure.insert(c.members().to_vec()) {
            closures.push(c);
        }
    }
    let trivial = Subgroup::trivial(g);
    let mut seen = HashSet::from([trivial.members().to_vec()]);
    let mut all = vec![trivial];
    let mut k = 0;
    while k < all.len() {
        let n = all[k].clone();
        for c in &closures {
            let p = n.product(c)?;
            if seen.insert(p.members().to_vec()) {
                all.push(p);
            }
        }
        k += 1;
    }
    all.sort_by(|a, b| (a.order(), a.members()).cmp(&(b.order(), b.members())));
    Ok(all)
}

/// One quotient projection per normal subgroup.
pub fn enumerate_extensions_from(g: &Arc<FinGroup>) -> Result<Vec<GroupHom>> {
    check_cap(g, EXTENSION_CAP)?;
    enumerate_normal_subgroups(g)?
        .iter()
        .map(|n| Ok(quotient(n)?.projection))
        .collect()
}

/// Quotient squares `A₂ → A₂/N, A₂ → A₂/M` over `A₂/NM`, for all ordered pairs,
/// kept when they pass the extension test.
pub fn enumerate_double_extensions(a2: &Arc<FinGroup>) -> Result<Vec<Cube<Groups>>> {
    check_cap(a2, DOUBLE_EXTENSION_CAP)?;
    let normals = enumerate_normal_subgroups(a2)?;
    let mut out = Vec::new();
    for n in &normals {
        for m in &normals {
            let cube = Cube::quotient_lattice(a2, &[n.clone(), m.clone()])?;
            if cube.is_n_fold_extension()? {
                out.push(cube);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;

    #[test]
    fn normal_subgroup_counts() {
        let count = |name: &str| enumerate_normal_subgroups(&library::lookup(name).unwrap()).unwrap().len();
        let z4 = enumerate_normal_subgroups(&library::cyclic(4).unwrap()).unwrap();
        assert_eq!(z4.iter().map(|n| n.order()).collect::<Vec<_>>(), vec![1, 2, 4]);
        let s3 = enumerate_normal_subgroups(&library::symmetric(3).unwrap()).unwrap();
        assert_eq!(s3.iter().map(|n| n.order()).collect::<Vec<_>>(), vec![1, 3, 6]);
        assert_eq!(count("trivial"), 1);
        // Klein: all five subgroups are normal
        assert_eq!(count("Klein"), 5);
        // hand audit: 1, Z(D4), rotations, two Klein subgroups, D4
        assert_eq!(count("D4"), 6);
        assert_eq!(count("Q8"), 6);
        assert_eq!(count("A4"), 3);
        assert_eq!(count("Z2^3"), 16);
        assert_eq!(count("Z2^4"), 67);
    }

    #[test]
    fn normal_subgroups_brute_force_on_small_groups() {
        // compare against filtering all subsets closed under the operations
        for name in ["Klein", "S3", "D4", "Q8", "Z6"] {
            let g = library::lookup(name).unwrap();
            let n = g.order();
            let mut brute = 0;
            for mask in 0u32..1 << n {
                let members: Vec<usize> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
                if !members.contains(&g.identity()) {
                    continue;
                }
                let closed = members.iter().all(|&a| members.iter().all(|&b| mask >> g.mul(a, b) & 1 == 1));
                let normal = members
                    .iter()
                    .all(|&a| g.elements().all(|x| mask >> g.conjugate(a, x) & 1 == 1));
                if closed && normal {
                    brute += 1;
                }
            }
            assert_eq!(enumerate_normal_subgroups(&g).unwrap().len(), brute, "{name}");
        }
    }

    #[test]
    fn extensions_from_examples() {
        let s3 = library::symmetric(3).unwrap();
        let exts = enumerate_extensions_from(&s3).unwrap();
        let mut orders: Vec<usize> = exts.iter().map(|f| f.codomain().order()).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 6]);
        assert_eq!(enumerate_extensions_from(&FinGroup::trivial()).unwrap().len(), 1);
        assert_eq!(enumerate_extensions_from(&library::dihedral(4).unwrap()).unwrap().len(), 6);
    }

    #[test]
    fn double_extensions_examples() {
        let v = library::klein().unwrap();
        let squares = enumerate_double_extensions(&v).unwrap();
        assert_eq!(squares.len(), 25);
        assert!(squares.iter().any(|c| c.top_kernels().iter().all(|k| k.order() == 2)
            && c.vertex(0).is_trivial()));
        assert_eq!(enumerate_double_extensions(&FinGroup::trivial()).unwrap().len(), 1);

        let d4 = library::dihedral(4).unwrap();
        let (rot, klein) = library::d4_rotations_and_klein(&d4);
        let squares = enumerate_double_extensions(&d4).unwrap();
        assert!(squares.iter().any(|c| c.top_kernels() == vec![rot.clone(), klein.clone()]));
    }

    #[test]
    fn caps_are_enforced() {
        let s4 = library::symmetric(4).unwrap();
        assert!(matches!(enumerate_double_extensions(&s4), Err(Error::CapExceeded { .. })));
    }
}
