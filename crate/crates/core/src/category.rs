//! Just enough category theory to run the extension tests generically: a
//! category with pullbacks and a distinguished class of extensions.

use std::fmt;
use std::sync::Arc;

use crate::error::Result;
use crate::group::{same_group, FinGroup};
use crate::hom::{self, GroupHom};

pub trait Category: Clone + fmt::Debug + Send + Sync + 'static {
    type Obj: Clone + fmt::Debug + Send + Sync;
    type Mor: Clone + fmt::Debug + Send + Sync;

    fn source(&self, f: &Self::Mor) -> Self::Obj;
    fn target(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    /// `g ∘ f`
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor>;
    fn same_obj(&self, a: &Self::Obj, b: &Self::Obj) -> bool;
    fn same_mor(&self, f: &Self::Mor, g: &Self::Mor) -> bool;
    /// Pullback of a cospan `f: X → Z ← Y: g`.
    fn pullback(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Cone<Self>>;
    /// The map into the apex induced by `u` (into `X`) and `v` (into `Y`).
    fn factor(&self, cone: &Cone<Self>, u: &Self::Mor, v: &Self::Mor) -> Result<Self::Mor>;
    /// Membership in the class of extensions.
    fn is_extension(&self, f: &Self::Mor) -> Result<bool>;
    /// Objects `X` for which `X → 0` is an extension.
    fn is_admissible(&self, x: &Self::Obj) -> Result<bool>;
}

/// A pullback with its two legs.
pub struct Cone<C: Category> {
    pub apex: C::Obj,
    pub left: C::Mor,
    pub right: C::Mor,
}

impl<C: Category> Clone for Cone<C> {
    fn clone(&self) -> Self {
        Cone {
            apex: self.apex.clone(),
            left: self.left.clone(),
            right: self.right.clone(),
        }
    }
}

impl<C: Category> fmt::Debug for Cone<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Cone")
            .field("apex", &self.apex)
            .field("left", &self.left)
            .field("right", &self.right)
            .finish()
    }
}

/// The comparison `r: A1 → A0 ×_{B0} B1` of the square
///
/// ```text
///   A1 --top--> B1
///   |           |
///  left       right
///   v           v
///   A0 -bottom> B0
/// ```
pub fn comparison<C: Category>(
    cat: &C,
    top: &C::Mor,
    left: &C::Mor,
    right: &C::Mor,
    bottom: &C::Mor,
) -> Result<(C::Mor, Cone<C>)> {
    let cone = cat.pullback(bottom, right)?;
    let r = cat.factor(&cone, left, top)?;
    Ok((r, cone))
}

/// All four sides and the comparison to the pullback are extensions.
pub fn is_double_extension<C: Category>(
    cat: &C,
    top: &C::Mor,
    left: &C::Mor,
    right: &C::Mor,
    bottom: &C::Mor,
) -> Result<bool> {
    for side in [top, left, right, bottom] {
        if !cat.is_extension(side)? {
            return Ok(false);
        }
    }
    let (r, _) = comparison(cat, top, left, right, bottom)?;
    cat.is_extension(&r)
}

/// Finite groups with surjections as extensions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Groups;

impl Category for Groups {
    type Obj = Arc<FinGroup>;
    type Mor = GroupHom;

    fn source(&self, f: &GroupHom) -> Arc<FinGroup> {
        Arc::clone(f.domain())
    }

    fn target(&self, f: &GroupHom) -> Arc<FinGroup> {
        Arc::clone(f.codomain())
    }

    fn identity(&self, x: &Arc<FinGroup>) -> GroupHom {
        GroupHom::identity(x)
    }

    fn compose(&self, g: &GroupHom, f: &GroupHom) -> Result<GroupHom> {
        g.compose(f)
    }

    fn same_obj(&self, a: &Arc<FinGroup>, b: &Arc<FinGroup>) -> bool {
        same_group(a, b)
    }

    fn same_mor(&self, f: &GroupHom, g: &GroupHom) -> bool {
        f == g
    }

    fn pullback(&self, f: &GroupHom, g: &GroupHom) -> Result<Cone<Self>> {
        let pb = hom::pullback(f, g)?;
        Ok(Cone {
            apex: pb.group,
            left: pb.left,
            right: pb.right,
        })
    }

    fn factor(&self, cone: &Cone<Self>, u: &GroupHom, v: &GroupHom) -> Result<GroupHom> {
        let pb = hom::Pullback {
            group: Arc::clone(&cone.apex),
            left: cone.left.clone(),
            right: cone.right.clone(),
        };
        pb.factor(u, v)
    }

    fn is_extension(&self, f: &GroupHom) -> Result<bool> {
        Ok(f.is_surjective())
    }

    fn is_admissible(&self, _x: &Arc<FinGroup>) -> Result<bool> {
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::{direct_product, quotient};
    use crate::library;

    #[test]
    fn projection_square_is_double_extension() {
        let z2 = library::cyclic(2).unwrap();
        let one = FinGroup::trivial();
        let v = direct_product(&z2, &z2).unwrap();
        let to_one = GroupHom::zero(&z2, &one);
        assert!(is_double_extension(&Groups, &v.proj_right, &v.proj_left, &to_one, &to_one).unwrap());
    }

    #[test]
    fn diagonal_square_is_not_double_extension() {
        // Z2 mapping diagonally; all sides surjective, comparison into Z2 x Z2 is not.
        let z2 = library::cyclic(2).unwrap();
        let one = FinGroup::trivial();
        let id = GroupHom::identity(&z2);
        let to_one = GroupHom::zero(&z2, &one);
        assert!(!is_double_extension(&Groups, &id, &id, &to_one, &to_one).unwrap());
        let (r, cone) = comparison(&Groups, &id, &id, &to_one, &to_one).unwrap();
        assert_eq!(cone.apex.order(), 4);
        assert_eq!(r.image().order(), 2);
    }

    #[test]
    fn d4_square_modulo_rotations_and_klein() {
        let d4 = library::dihedral(4).unwrap();
        let (rot, klein) = library::d4_rotations_and_klein(&d4);
        let a = quotient(&rot).unwrap();
        let b = quotient(&klein).unwrap();
        let one = FinGroup::trivial();
        let sq = (
            b.projection.clone(),
            a.projection.clone(),
            GroupHom::zero(&b.group, &one),
            GroupHom::zero(&a.group, &one),
        );
        assert!(is_double_extension(&Groups, &sq.0, &sq.1, &sq.2, &sq.3).unwrap());
        let (r, _) = comparison(&Groups, &sq.0, &sq.1, &sq.2, &sq.3).unwrap();
        let mut pairs: Vec<_> = d4
            .elements()
            .map(|x| (a.projection.apply(x), b.projection.apply(x)))
            .collect();
        pairs.sort();
        pairs.dedup();
        assert_eq!(r.image().order(), pairs.len());
    }
}
