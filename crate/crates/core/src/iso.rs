//! Isomorphism search by backtracking over images of a generating set.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::FinGroup;
use crate::hom::GroupHom;
use crate::limits;

fn order_profile(g: &FinGroup) -> Vec<usize> {
    let mut counts = vec![0; g.order() + 1];
    for x in g.elements() {
        counts[g.element_order(x)] += 1;
    }
    counts
}

/// Extends the assignment `gens[i] ↦ imgs[i]` over the subgroup the gens
/// generate. Returns `None` if it is inconsistent or not injective.
fn extend(g: &FinGroup, h: &FinGroup, gens: &[usize], imgs: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    let mut hit = vec![false; h.order()];
    map[g.identity()] = h.identity();
    hit[h.identity()] = true;
    let mut stack = vec![g.identity()];
    while let Some(x) = stack.pop() {
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = g.mul(x, s);
            let fy = h.mul(map[x], t);
            if map[y] == usize::MAX {
                if hit[fy] {
                    return None;
                }
                hit[fy] = true;
                map[y] = fy;
                stack.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map)
}

/// Finds an isomorphism `g → h`, if one exists. Both orders must be at most
/// the isomorphism cap.
pub fn find_isomorphism(g: &Arc<FinGroup>, h: &Arc<FinGroup>) -> Result<Option<GroupHom>> {
    let cap = limits::ISO_ORDER_CAP;
    for x in [g, h] {
        if x.order() > cap {
            return Err(Error::CapExceeded { order: x.order(), cap });
        }
    }
    if g.order() != h.order() || order_profile(g) != order_profile(h) {
        return Ok(None);
    }
    if g.is_abelian() != h.is_abelian() {
        return Ok(None);
    }
    let gens = g.generators().to_vec();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let o = g.element_order(s);
            h.elements().filter(|&y| h.element_order(y) == o).collect()
        })
        .collect();
    let mut imgs = Vec::with_capacity(gens.len());
    let found = search(g, h, &gens, &candidates, &mut imgs);
    Ok(found.map(|map| GroupHom::new_trusted(Arc::clone(g), Arc::clone(h), map)))
}

fn search(
    g: &FinGroup,
    h: &FinGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    imgs: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let k = imgs.len();
    if k == gens.len() {
        let map = extend(g, h, gens, imgs)?;
        return (!map.contains(&usize::MAX)).then_some(map);
    }
    for &y in &candidates[k] {
        imgs.push(y);
        if extend(g, h, &gens[..=k], imgs).is_some() {
            if let Some(map) = search(g, h, gens, candidates, imgs) {
                return Some(map);
            }
        }
        imgs.pop();
    }
    None
}

pub fn are_isomorphic(g: &Arc<FinGroup>, h: &Arc<FinGroup>) -> Result<bool> {
    Ok(find_isomorphism(g, h)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::{direct_product, quotient};
    use crate::group::Subgroup;
    use crate::library;

    #[test]
    fn distinguishes_groups_of_order_eight() {
        let d4 = library::dihedral(4).unwrap();
        let q8 = library::quaternion8().unwrap();
        let z8 = library::cyclic(8).unwrap();
        assert!(!are_isomorphic(&d4, &q8).unwrap());
        assert!(!are_isomorphic(&d4, &z8).unwrap());
        let iso = find_isomorphism(&d4, &d4.with_label("copy")).unwrap().unwrap();
        assert!(iso.is_isomorphism());
    }

    #[test]
    fn quotient_of_q8_by_center_is_klein() {
        let q8 = library::quaternion8().unwrap();
        let k = quotient(&Subgroup::center(&q8)).unwrap().group;
        let iso = find_isomorphism(&k, &library::klein().unwrap()).unwrap().unwrap();
        // validated as a homomorphism independently
        assert!(GroupHom::new(Arc::clone(iso.domain()), Arc::clone(iso.codomain()), iso.map().to_vec()).is_ok());
    }

    #[test]
    fn z2_times_z3_is_z6_but_z2_times_z2_is_not_z4() {
        let z2 = library::cyclic(2).unwrap();
        let z3 = library::cyclic(3).unwrap();
        let z6 = direct_product(&z2, &z3).unwrap().group;
        assert!(are_isomorphic(&z6, &library::cyclic(6).unwrap()).unwrap());
        let v = direct_product(&z2, &z2).unwrap().group;
        assert!(!are_isomorphic(&v, &library::cyclic(4).unwrap()).unwrap());
    }

    #[test]
    fn dicyclic_and_dihedral_twelve_differ() {
        let dic = library::dicyclic3().unwrap();
        assert!(!are_isomorphic(&dic, &library::dihedral(6).unwrap()).unwrap());
        assert!(!are_isomorphic(&dic, &library::alternating(4).unwrap()).unwrap());
    }

    #[test]
    fn respects_cap() {
        let s5 = library::symmetric(5).unwrap();
        let big = direct_product(&s5, &library::cyclic(2).unwrap()).unwrap().group;
        assert!(matches!(find_isomorphism(&big, &big), Err(Error::CapExceeded { .. })));
    }
}
