//! Homomorphisms, quotients, products and pullbacks of finite groups.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{same_group, FinGroup, Subgroup};
use crate::limits;

/// A homomorphism given by the image of every element id.
#[derive(Clone)]
pub struct GroupHom {
    domain: Arc<FinGroup>,
    codomain: Arc<FinGroup>,
    map: Vec<usize>,
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroupHom({} -> {}: {:?})",
            self.domain.label(),
            self.codomain.label(),
            self.map
        )
    }
}

impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
            && same_group(&self.domain, &other.domain)
            && same_group(&self.codomain, &other.codomain)
    }
}

impl Eq for GroupHom {}

impl GroupHom {
    /// Validates length, range and the homomorphism property.
    pub fn new(domain: Arc<FinGroup>, codomain: Arc<FinGroup>, map: Vec<usize>) -> Result<Self> {
        if map.len() != domain.order() {
            return Err(Error::InvalidHom(format!(
                "map has {} entries, domain has order {}",
                map.len(),
                domain.order()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&x| x >= codomain.order()) {
            return Err(Error::InvalidHom(format!("image {bad} outside the codomain")));
        }
        let hom = GroupHom {
            domain,
            codomain,
            map,
        };
        hom.check_multiplicative()?;
        Ok(hom)
    }

    pub(crate) fn new_trusted(domain: Arc<FinGroup>, codomain: Arc<FinGroup>, map: Vec<usize>) -> Self {
        debug_assert_eq!(map.len(), domain.order());
        GroupHom {
            domain,
            codomain,
            map,
        }
    }

    fn check_multiplicative(&self) -> Result<()> {
        let (a, b) = (&*self.domain, &*self.codomain);
        // Checking against a generating set is enough by induction on word length.
        for g in a.elements() {
            for &s in a.generators() {
                if self.map[a.mul(g, s)] != b.mul(self.map[g], self.map[s]) {
                    return Err(Error::InvalidHom(format!(
                        "f({g}·{s}) differs from f({g})·f({s})"
                    )));
                }
            }
        }
        if self.map[a.identity()] != b.identity() {
            return Err(Error::InvalidHom("identity not preserved".into()));
        }
        Ok(())
    }

    /// Extends generator images to a homomorphism, failing if the assignment
    /// is inconsistent or the given elements do not generate the domain.
    pub fn from_generator_images(
        domain: Arc<FinGroup>,
        codomain: Arc<FinGroup>,
        images: &[(usize, usize)],
    ) -> Result<Self> {
        let (a, b) = (&*domain, &*codomain);
        for &(g, h) in images {
            if g >= a.order() || h >= b.order() {
                return Err(Error::InvalidHom(format!("pair ({g}, {h}) out of range")));
            }
        }
        let mut map = vec![usize::MAX; a.order()];
        map[a.identity()] = b.identity();
        let mut frontier = vec![a.identity()];
        while let Some(x) = frontier.pop() {
            for &(g, h) in images {
                let y = a.mul(x, g);
                let fy = b.mul(map[x], h);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    frontier.push(y);
                } else if map[y] != fy {
                    return Err(Error::InvalidHom(format!(
                        "generator images are inconsistent at element {y}"
                    )));
                }
            }
        }
        if map.contains(&usize::MAX) {
            return Err(Error::InvalidHom("given elements do not generate the domain".into()));
        }
        GroupHom::new(domain, codomain, map)
    }

    pub fn identity(g: &Arc<FinGroup>) -> Self {
        GroupHom::new_trusted(Arc::clone(g), Arc::clone(g), g.elements().collect())
    }

    /// The map sending everything to the identity.
    pub fn zero(domain: &Arc<FinGroup>, codomain: &Arc<FinGroup>) -> Self {
        GroupHom::new_trusted(
            Arc::clone(domain),
            Arc::clone(codomain),
            vec![codomain.identity(); domain.order()],
        )
    }

    pub fn domain(&self) -> &Arc<FinGroup> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FinGroup> {
        &self.codomain
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.map[g]
    }

    /// `self ∘ f`
    pub fn compose(&self, f: &GroupHom) -> Result<GroupHom> {
        if !same_group(&f.codomain, &self.domain) {
            return Err(Error::CompositionMismatch);
        }
        Ok(GroupHom::new_trusted(
            Arc::clone(&f.domain),
            Arc::clone(&self.codomain),
            f.map.iter().map(|&x| self.map[x]).collect(),
        ))
    }

    pub fn kernel(&self) -> Subgroup {
        let e = self.codomain.identity();
        let mask = self.map.iter().map(|&x| x == e).collect();
        Subgroup::from_mask(&self.domain, mask)
    }

    pub fn image(&self) -> Subgroup {
        let mut mask = vec![false; self.codomain.order()];
        for &x in &self.map {
            mask[x] = true;
        }
        Subgroup::from_mask(&self.codomain, mask)
    }

    /// Image of a subgroup of the domain.
    pub fn image_of(&self, h: &Subgroup) -> Result<Subgroup> {
        if !same_group(h.parent(), &self.domain) {
            return Err(Error::ParentMismatch);
        }
        let mut mask = vec![false; self.codomain.order()];
        for &x in h.members() {
            mask[self.map[x]] = true;
        }
        Ok(Subgroup::from_mask(&self.codomain, mask))
    }

    /// Preimage of a subgroup of the codomain.
    pub fn preimage(&self, k: &Subgroup) -> Result<Subgroup> {
        if !same_group(k.parent(), &self.codomain) {
            return Err(Error::ParentMismatch);
        }
        let mask = self.map.iter().map(|&x| k.contains(x)).collect();
        Ok(Subgroup::from_mask(&self.domain, mask))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.codomain.order()];
        let mut count = 0;
        for &x in &self.map {
            if !seen[x] {
                seen[x] = true;
                count += 1;
            }
        }
        count == self.codomain.order()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.domain.order() == self.codomain.order() && self.is_injective()
    }

    /// Restriction to `h`, with codomain the image `f(h)`.
    pub fn restrict(&self, h: &Subgroup) -> Result<Restriction> {
        let image = self.image_of(h)?;
        let (source, domain_inclusion) = h.to_group();
        let (target, codomain_inclusion) = image.to_group();
        let hom = self.restrict_between_groups(&domain_inclusion, &codomain_inclusion)?;
        debug_assert!(same_group(hom.codomain(), &target));
        debug_assert!(same_group(hom.domain(), &source));
        Ok(Restriction {
            hom,
            domain_inclusion,
            codomain_inclusion,
        })
    }

    /// The map `h → k` induced by `self` on subgroups realized via `to_group`,
    /// given their inclusions. Fails if `f(h) ⊄ k`.
    pub fn restrict_between_groups(
        &self,
        domain_inclusion: &GroupHom,
        codomain_inclusion: &GroupHom,
    ) -> Result<GroupHom> {
        if !same_group(domain_inclusion.codomain(), &self.domain)
            || !same_group(codomain_inclusion.codomain(), &self.codomain)
        {
            return Err(Error::ParentMismatch);
        }
        let mut position = vec![usize::MAX; self.codomain.order()];
        for (i, &y) in codomain_inclusion.map.iter().enumerate() {
            position[y] = i;
        }
        let mut map = Vec::with_capacity(domain_inclusion.map.len());
        for &x in &domain_inclusion.map {
            let p = position[self.map[x]];
            if p == usize::MAX {
                return Err(Error::InvalidHom("restriction leaves the target subgroup".into()));
            }
            map.push(p);
        }
        Ok(GroupHom::new_trusted(
            Arc::clone(domain_inclusion.domain()),
            Arc::clone(codomain_inclusion.domain()),
            map,
        ))
    }
}

/// `f|_H : H → f(H)` with both inclusions.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub hom: GroupHom,
    pub domain_inclusion: GroupHom,
    pub codomain_inclusion: GroupHom,
}

#[derive(Debug, Clone)]
pub struct Product {
    pub group: Arc<FinGroup>,
    pub proj_left: GroupHom,
    pub proj_right: GroupHom,
}

/// `G × H` with pair `(g, h)` at id `g·|H| + h`.
pub fn direct_product(g: &Arc<FinGroup>, h: &Arc<FinGroup>) -> Result<Product> {
    let (m, n) = (g.order(), h.order());
    let order = m * n;
    if order > limits::order_cap() {
        return Err(Error::ClosureCapExceeded {
            order,
            cap: limits::order_cap(),
        });
    }
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        let (a1, a2) = (a / n, a % n);
        for b in 0..order {
            let (b1, b2) = (b / n, b % n);
            table.push((g.mul(a1, b1) * n + h.mul(a2, b2)) as u32);
        }
    }
    let perms = match (g.perms(), h.perms()) {
        (Some(pg), Some(ph)) => {
            let (dg, dh) = (pg[0].degree(), ph[0].degree());
            let total = dg + dh;
            Some(
                (0..order)
                    .map(|x| {
                        pg[x / n]
                            .shifted(0, total)
                            .compose(&ph[x % n].shifted(dg, total))
                    })
                    .collect(),
            )
        }
        _ => None,
    };
    let label = format!("{} x {}", wrap_label(g.label()), wrap_label(h.label()));
    let identity = g.identity() * n + h.identity();
    let group = FinGroup::from_table_trusted(label, order, table, identity, perms);
    let proj_left = GroupHom::new_trusted(Arc::clone(&group), Arc::clone(g), (0..order).map(|x| x / n).collect());
    let proj_right = GroupHom::new_trusted(Arc::clone(&group), Arc::clone(h), (0..order).map(|x| x % n).collect());
    Ok(Product {
        group,
        proj_left,
        proj_right,
    })
}

fn wrap_label(label: &str) -> String {
    if label.contains(' ') {
        format!("({label})")
    } else {
        label.to_string()
    }
}

#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: Arc<FinGroup>,
    pub projection: GroupHom,
}

/// `G/N`, cosets numbered by increasing least member id.
pub fn quotient(n: &Subgroup) -> Result<Quotient> {
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let g = n.parent();
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &k in n.members() {
            coset_of[g.mul(x, k)] = id;
        }
    }
    let order = reps.len();
    let mut table = Vec::with_capacity(order * order);
    for &a in &reps {
        for &b in &reps {
            table.push(coset_of[g.mul(a, b)] as u32);
        }
    }
    let label = format!("{}/N{}", wrap_label(g.label()), n.order());
    let group = FinGroup::from_table_trusted(label, order, table, coset_of[g.identity()], None);
    let projection = GroupHom::new_trusted(Arc::clone(g), Arc::clone(&group), coset_of);
    Ok(Quotient { group, projection })
}

/// The map `G/N → H` induced by `f: G → H` along the projection `G → G/N`.
pub fn factor_through_quotient(projection: &GroupHom, f: &GroupHom) -> Result<GroupHom> {
    if !same_group(projection.domain(), f.domain()) {
        return Err(Error::CompositionMismatch);
    }
    let q = projection.codomain();
    let mut map = vec![usize::MAX; q.order()];
    for x in f.domain().elements() {
        let c = projection.apply(x);
        let y = f.apply(x);
        if map[c] == usize::MAX {
            map[c] = y;
        } else if map[c] != y {
            return Err(Error::InvalidHom(
                "map is not constant on the cosets of the quotient".into(),
            ));
        }
    }
    Ok(GroupHom::new_trusted(Arc::clone(q), Arc::clone(f.codomain()), map))
}

/// `P = A ×_B C` with its two projections.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub group: Arc<FinGroup>,
    pub left: GroupHom,
    pub right: GroupHom,
}

impl Pullback {
    /// The unique map `X → P` with `left∘r = u` and `right∘r = v`.
    pub fn factor(&self, u: &GroupHom, v: &GroupHom) -> Result<GroupHom> {
        if !same_group(u.domain(), v.domain())
            || !same_group(u.codomain(), self.left.codomain())
            || !same_group(v.codomain(), self.right.codomain())
        {
            return Err(Error::CompositionMismatch);
        }
        let index: HashMap<(usize, usize), usize> = self
            .group
            .elements()
            .map(|p| ((self.left.apply(p), self.right.apply(p)), p))
            .collect();
        let mut map = Vec::with_capacity(u.domain().order());
        for x in u.domain().elements() {
            match index.get(&(u.apply(x), v.apply(x))) {
                Some(&p) => map.push(p),
                None => return Err(Error::NonCommutingSquare),
            }
        }
        Ok(GroupHom::new_trusted(Arc::clone(u.domain()), Arc::clone(&self.group), map))
    }
}

/// Pullback of `f: A → B` and `g: C → B`; pairs `(a, c)` numbered lexicographically.
pub fn pullback(f: &GroupHom, g: &GroupHom) -> Result<Pullback> {
    if !same_group(f.codomain(), g.codomain()) {
        return Err(Error::ShapeMismatch("pullback legs have different codomains".into()));
    }
    let (a, c, b) = (f.domain(), g.domain(), f.codomain());
    let mut fibre_f = vec![Vec::new(); b.order()];
    for x in a.elements() {
        fibre_f[f.apply(x)].push(x);
    }
    let mut fibre_g = vec![Vec::new(); b.order()];
    for y in c.elements() {
        fibre_g[g.apply(y)].push(y);
    }
    let order: usize = fibre_f.iter().zip(&fibre_g).map(|(p, q)| p.len() * q.len()).sum();
    if order > limits::order_cap() {
        return Err(Error::ClosureCapExceeded {
            order,
            cap: limits::order_cap(),
        });
    }
    let mut pairs = Vec::with_capacity(order);
    for x in a.elements() {
        for &y in &fibre_g[f.apply(x)] {
            pairs.push((x, y));
        }
    }
    let mut index = vec![u32::MAX; a.order() * c.order()];
    for (i, &(x, y)) in pairs.iter().enumerate() {
        index[x * c.order() + y] = i as u32;
    }
    let mut table = Vec::with_capacity(order * order);
    for &(x1, y1) in &pairs {
        for &(x2, y2) in &pairs {
            table.push(index[a.mul(x1, x2) * c.order() + c.mul(y1, y2)]);
        }
    }
    let identity = index[a.identity() * c.order() + c.identity()] as usize;
    let label = format!("{} x_{} {}", wrap_label(a.label()), wrap_label(b.label()), wrap_label(c.label()));
    let group = FinGroup::from_table_trusted(label, order, table, identity, None);
    let left = GroupHom::new_trusted(Arc::clone(&group), Arc::clone(a), pairs.iter().map(|p| p.0).collect());
    let right = GroupHom::new_trusted(Arc::clone(&group), Arc::clone(c), pairs.iter().map(|p| p.1).collect());
    Ok(Pullback { group, left, right })
}

/// `R[f] = A ×_B A`, projections `(π₁, π₂)`.
pub fn kernel_pair(f: &GroupHom) -> Result<Pullback> {
    pullback(f, f)
}

/// A commutative square, read as a morphism `(top, bottom): left → right`
/// of arrows:
///
/// ```text
///   A1 --top--> B1
///   |           |
///  left       right
///   v           v
///   A0 -bottom> B0
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Square {
    pub top: GroupHom,
    pub left: GroupHom,
    pub right: GroupHom,
    pub bottom: GroupHom,
}

impl Square {
    pub fn new(top: GroupHom, left: GroupHom, right: GroupHom, bottom: GroupHom) -> Result<Self> {
        let sq = Square {
            top,
            left,
            right,
            bottom,
        };
        sq.check_shape()?;
        if !sq.commutes() {
            return Err(Error::NonCommutingSquare);
        }
        Ok(sq)
    }

    fn check_shape(&self) -> Result<()> {
        let ok = same_group(self.top.domain(), self.left.domain())
            && same_group(self.top.codomain(), self.right.domain())
            && same_group(self.left.codomain(), self.bottom.domain())
            && same_group(self.right.codomain(), self.bottom.codomain());
        if ok {
            Ok(())
        } else {
            Err(Error::ShapeMismatch("square edges do not line up".into()))
        }
    }

    pub fn commutes(&self) -> bool {
        self.top
            .domain()
            .elements()
            .all(|x| self.right.apply(self.top.apply(x)) == self.bottom.apply(self.left.apply(x)))
    }

    /// The same square with the roles of horizontal and vertical swapped.
    pub fn transpose(&self) -> Square {
        Square {
            top: self.left.clone(),
            left: self.top.clone(),
            right: self.bottom.clone(),
            bottom: self.right.clone(),
        }
    }
}

/// The factorization `r: A1 → A0 ×_{B0} B1` of a commutative square.
pub fn comparison_to_pullback(sq: &Square) -> Result<(GroupHom, Pullback)> {
    if !sq.commutes() {
        return Err(Error::NonCommutingSquare);
    }
    let pb = pullback(&sq.bottom, &sq.right)?;
    let r = pb.factor(&sq.left, &sq.top)?;
    Ok((r, pb))
}

/// A short exact sequence `K → A → B`.
#[derive(Debug, Clone)]
pub struct ExactnessWitness {
    pub kernel_inclusion: GroupHom,
    pub projection: GroupHom,
}

impl ExactnessWitness {
    /// The sequence `K[f] → A → B` of a surjection.
    pub fn of_surjection(f: &GroupHom) -> Result<Self> {
        if !f.is_surjective() {
            return Err(Error::NotSurjective(format!("{f:?}")));
        }
        let (_, kernel_inclusion) = f.kernel().to_group();
        Ok(ExactnessWitness {
            kernel_inclusion,
            projection: f.clone(),
        })
    }

    pub fn is_exact(&self) -> bool {
        same_group(self.kernel_inclusion.codomain(), self.projection.domain())
            && self.projection.is_surjective()
            && self.kernel_inclusion.is_injective()
            && self.kernel_inclusion.image() == self.projection.kernel()
    }
}

/// The induced iso `G/K[f] → Im f` of a homomorphism.
pub fn first_isomorphism(f: &GroupHom) -> Result<GroupHom> {
    let q = quotient(&f.kernel())?;
    let (_, incl) = f.image().to_group();
    let into_codomain = factor_through_quotient(&q.projection, f)?;
    let mut position = vec![usize::MAX; f.codomain().order()];
    for (i, &y) in incl.map().iter().enumerate() {
        position[y] = i;
    }
    Ok(GroupHom::new_trusted(
        Arc::clone(&q.group),
        Arc::clone(incl.domain()),
        into_codomain.map().iter().map(|&y| position[y]).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;

    fn sign(s3: &Arc<FinGroup>) -> GroupHom {
        quotient(&Subgroup::derived(s3)).unwrap().projection
    }

    #[test]
    fn product_examples() {
        let z2 = library::cyclic(2).unwrap();
        let v = direct_product(&z2, &z2).unwrap();
        assert_eq!(v.group.order(), 4);
        assert!(v.group.elements().all(|x| v.group.element_order(x) <= 2));
        assert!(v.proj_left.is_surjective() && v.proj_right.is_surjective());

        let s3 = library::symmetric(3).unwrap();
        let one = FinGroup::trivial();
        let p = direct_product(&s3, &one).unwrap();
        assert!(p.proj_left.is_isomorphism());
        assert_eq!(direct_product(&s3, &z2).unwrap().group.order(), 12);
    }

    #[test]
    fn product_keeps_permutation_realization() {
        let s3 = library::symmetric(3).unwrap();
        let z2 = library::cyclic(2).unwrap();
        let p = direct_product(&s3, &z2).unwrap();
        let perms = p.group.perms().unwrap();
        let regen = FinGroup::from_permutation_generators(5, &perms[1..]).unwrap();
        assert_eq!(regen.order(), 12);
    }

    #[test]
    fn quotient_examples() {
        let s3 = library::symmetric(3).unwrap();
        let q = quotient(&Subgroup::derived(&s3)).unwrap();
        assert_eq!(q.group.order(), 2);
        // sign: transpositions map to the nontrivial class
        for x in s3.elements() {
            let odd = s3.element_order(x) == 2;
            assert_eq!(q.projection.apply(x) != q.group.identity(), odd);
        }
        let t = quotient(&Subgroup::trivial(&s3)).unwrap();
        assert!(t.projection.is_isomorphism());

        let q8 = library::quaternion8().unwrap();
        let k = quotient(&Subgroup::center(&q8)).unwrap();
        assert_eq!(k.group.order(), 4);
        assert!(k.group.elements().all(|x| k.group.element_order(x) <= 2));
    }

    #[test]
    fn quotient_requires_normality() {
        let s3 = library::symmetric(3).unwrap();
        let t = Subgroup::generated(&s3, [library::find_cycle(&s3, &[&[0, 1]])]).unwrap();
        assert_eq!(quotient(&t).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn kernel_and_image_examples() {
        let s3 = library::symmetric(3).unwrap();
        let sgn = sign(&s3);
        assert_eq!(sgn.kernel(), Subgroup::derived(&s3));
        assert!(sgn.image().is_whole());
        assert!(GroupHom::identity(&s3).kernel().is_trivial());

        let z2 = library::cyclic(2).unwrap();
        let v = direct_product(&z2, &z2).unwrap();
        let k = v.proj_left.kernel();
        assert_eq!(k.order(), 2);
        assert!(k.members().iter().all(|&x| x / 2 == 0));
    }

    #[test]
    fn compose_and_restrict() {
        let s3 = library::symmetric(3).unwrap();
        let sgn = sign(&s3);
        assert_eq!(sgn.compose(&GroupHom::identity(&s3)).unwrap(), sgn);
        let z2 = library::cyclic(2).unwrap();
        assert_eq!(
            GroupHom::identity(&z2).compose(&GroupHom::identity(&s3)).unwrap_err(),
            Error::CompositionMismatch
        );
        let r = sgn.restrict(&Subgroup::derived(&s3)).unwrap();
        assert_eq!(r.hom.domain().order(), 3);
        assert_eq!(r.hom.codomain().order(), 1);
    }

    #[test]
    fn pullback_examples() {
        let s3 = library::symmetric(3).unwrap();
        let sgn = sign(&s3);
        assert_eq!(pullback(&sgn, &sgn).unwrap().group.order(), 18);

        let id = GroupHom::identity(sgn.codomain());
        let pb = pullback(&sgn, &id).unwrap();
        assert_eq!(pb.group.order(), 6);
        assert!(pb.left.is_isomorphism());

        let z2 = library::cyclic(2).unwrap();
        let v = direct_product(&z2, &z2).unwrap();
        assert_eq!(pullback(&v.proj_left, &v.proj_right).unwrap().group.order(), 8);
    }

    #[test]
    fn kernel_pair_examples() {
        let s3 = library::symmetric(3).unwrap();
        let kp = kernel_pair(&GroupHom::identity(&s3)).unwrap();
        assert!(kp.left.is_isomorphism() && kp.right.is_isomorphism());
        assert_eq!(kernel_pair(&sign(&s3)).unwrap().group.order(), 18);
        let to_one = GroupHom::zero(&s3, &FinGroup::trivial());
        assert_eq!(kernel_pair(&to_one).unwrap().group.order(), 36);
    }

    #[test]
    fn comparison_examples() {
        let z2 = library::cyclic(2).unwrap();
        let one = FinGroup::trivial();
        let v = direct_product(&z2, &z2).unwrap();
        let sq = Square::new(
            v.proj_right.clone(),
            v.proj_left.clone(),
            GroupHom::zero(&z2, &one),
            GroupHom::zero(&z2, &one),
        )
        .unwrap();
        let (r, pb) = comparison_to_pullback(&sq).unwrap();
        assert_eq!(pb.group.order(), 4);
        assert!(r.is_isomorphism());
        // the pullback over 1 numbers pairs exactly like the product
        assert_eq!(r.map(), &[0, 1, 2, 3]);

        // D4 over D4/Klein and D4/Z4 with the trivial corner
        let d4 = library::dihedral(4).unwrap();
        let (rot, klein) = library::d4_rotations_and_klein(&d4);
        let a = quotient(&klein).unwrap();
        let b = quotient(&rot).unwrap();
        let sq = Square::new(
            b.projection.clone(),
            a.projection.clone(),
            GroupHom::zero(&b.group, &one),
            GroupHom::zero(&a.group, &one),
        )
        .unwrap();
        let (r, pb) = comparison_to_pullback(&sq).unwrap();
        assert_eq!(pb.group.order(), 4);
        // brute force the image of (x ↦ (x mod Klein, x mod Z4))
        let mut pairs: Vec<(usize, usize)> = d4
            .elements()
            .map(|x| (a.projection.apply(x), b.projection.apply(x)))
            .collect();
        pairs.sort();
        pairs.dedup();
        assert_eq!(r.image().order(), pairs.len());
        assert_eq!(pairs.len(), 4);
    }

    #[test]
    fn comparison_rejects_non_commuting_square() {
        let z2 = library::cyclic(2).unwrap();
        let id = GroupHom::identity(&z2);
        let zero = GroupHom::zero(&z2, &z2);
        let err = Square::new(id.clone(), id.clone(), id, zero).unwrap_err();
        assert_eq!(err, Error::NonCommutingSquare);
    }

    #[test]
    fn from_generator_images_extends_or_fails() {
        let z4 = library::cyclic(4).unwrap();
        let z2 = library::cyclic(2).unwrap();
        let f = GroupHom::from_generator_images(Arc::clone(&z4), Arc::clone(&z2), &[(1, 1)]).unwrap();
        assert!(f.is_surjective());
        assert_eq!(f.kernel().order(), 2);
        // a generator of Z2 cannot go to an element of order 4
        let bad = GroupHom::from_generator_images(z2, z4, &[(1, 1)]);
        assert!(bad.is_err());
    }

    #[test]
    fn exactness_witness_of_sign() {
        let s3 = library::symmetric(3).unwrap();
        let w = ExactnessWitness::of_surjection(&sign(&s3)).unwrap();
        assert!(w.is_exact());
        assert_eq!(w.kernel_inclusion.domain().order(), 3);
    }

    #[test]
    fn first_isomorphism_is_bijective() {
        let s3 = library::symmetric(3).unwrap();
        let sgn = sign(&s3);
        let iso = first_isomorphism(&sgn).unwrap();
        assert!(iso.is_isomorphism());
    }
}
