//! Finite groups as multiplication tables, and their subgroups.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::limits;
use crate::perm::Perm;

/// A finite group given by its multiplication table over element ids `0..order`.
///
/// Values are immutable once built and are shared behind [`Arc`].
#[derive(Clone)]
pub struct FinGroup {
    label: String,
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<usize>,
    perms: Option<Vec<Perm>>,
    gens: OnceLock<Vec<usize>>,
}

impl fmt::Debug for FinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinGroup")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

impl PartialEq for FinGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.identity == other.identity && self.table == other.table
    }
}

impl Eq for FinGroup {}

/// Pointer equality first, table equality second.
pub fn same_group(a: &Arc<FinGroup>, b: &Arc<FinGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FinGroup {
    /// Builds a group from a Cayley table and validates the group axioms.
    pub fn from_table(label: impl Into<String>, rows: Vec<Vec<usize>>) -> Result<Arc<Self>> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if order > limits::order_cap() {
            return Err(Error::ClosureCapExceeded {
                order,
                cap: limits::order_cap(),
            });
        }
        let mut table = Vec::with_capacity(order * order);
        for (g, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGroup(format!(
                    "row {g} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= order {
                    return Err(Error::InvalidGroup(format!("entry {x} out of range in row {g}")));
                }
                table.push(x as u32);
            }
        }
        let group = Self::validated(label.into(), order, table, None)?;
        Ok(Arc::new(group))
    }

    fn validated(
        label: String,
        order: usize,
        table: Vec<u32>,
        perms: Option<Vec<Perm>>,
    ) -> Result<Self> {
        // Latin square
        for g in 0..order {
            let mut row_seen = vec![false; order];
            let mut col_seen = vec![false; order];
            for h in 0..order {
                let r = table[g * order + h] as usize;
                let c = table[h * order + g] as usize;
                if row_seen[r] || col_seen[c] {
                    return Err(Error::InvalidGroup(format!(
                        "table is not a Latin square at element {g}"
                    )));
                }
                row_seen[r] = true;
                col_seen[c] = true;
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| table[e * order + g] as usize == g))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        if (0..order).any(|g| table[g * order + identity] as usize != g) {
            return Err(Error::InvalidGroup("left identity is not a right identity".into()));
        }
        let mut inverse = vec![0; order];
        for g in 0..order {
            let inv = (0..order)
                .find(|&h| table[g * order + h] as usize == identity)
                .expect("Latin square rows contain the identity");
            if table[inv * order + g] as usize != identity {
                return Err(Error::InvalidGroup(format!("element {g} has no two-sided inverse")));
            }
            inverse[g] = inv;
        }
        let m = |a: usize, b: usize| table[a * order + b] as usize;
        let assoc = |a: usize, b: usize, c: usize| m(m(a, b), c) == m(a, m(b, c));
        if order <= limits::FULL_ASSOCIATIVITY_ORDER {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        if !assoc(a, b, c) {
                            return Err(Error::InvalidGroup(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..1000 {
                let (a, b, c) = (
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                );
                if !assoc(a, b, c) {
                    return Err(Error::InvalidGroup(format!(
                        "associativity fails at ({a}, {b}, {c})"
                    )));
                }
            }
        }
        Ok(FinGroup {
            label,
            order,
            table,
            identity,
            inverse,
            perms,
            gens: OnceLock::new(),
        })
    }

    /// Builds a group from a table known to satisfy the axioms.
    pub(crate) fn from_table_trusted(
        label: String,
        order: usize,
        table: Vec<u32>,
        identity: usize,
        perms: Option<Vec<Perm>>,
    ) -> Arc<Self> {
        debug_assert_eq!(table.len(), order * order);
        let mut inverse = vec![0; order];
        for g in 0..order {
            let row = &table[g * order..(g + 1) * order];
            let h = row
                .iter()
                .position(|&x| x as usize == identity)
                .expect("identity occurs in every row");
            inverse[g] = h;
        }
        Arc::new(FinGroup {
            label,
            order,
            table,
            identity,
            inverse,
            perms,
            gens: OnceLock::new(),
        })
    }

    /// Enumerates the closure of `gens` under `mul`, breadth first from the identity.
    ///
    /// Element ids follow discovery order, trying generators in the order given.
    pub fn generate<T, F>(
        label: impl Into<String>,
        identity: T,
        gens: &[T],
        mul: F,
        cap: usize,
    ) -> Result<(Arc<Self>, Vec<T>)>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = mul(&elements[x], g);
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(Error::ClosureCapExceeded {
                            order: elements.len() + 1,
                            cap,
                        });
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let order = elements.len();
        let mut table = Vec::with_capacity(order * order);
        for a in &elements {
            for b in &elements {
                let c = mul(a, b);
                let id = *index.get(&c).ok_or_else(|| {
                    Error::InvalidGroup("multiplication does not close on the generated set".into())
                })?;
                table.push(id as u32);
            }
        }
        let group = Self::from_table_trusted(label.into(), order, table, 0, None);
        Ok((group, elements))
    }

    /// The group generated by permutations of `0..degree`, capped at [`limits::order_cap`].
    pub fn from_permutation_generators(degree: usize, generators: &[Perm]) -> Result<Arc<Self>> {
        Self::from_permutation_generators_capped(degree, generators, limits::order_cap())
    }

    pub fn from_permutation_generators_capped(
        degree: usize,
        generators: &[Perm],
        cap: usize,
    ) -> Result<Arc<Self>> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        for g in generators {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {g} has degree {}, expected {degree}",
                    g.degree()
                )));
            }
        }
        let label = if generators.is_empty() {
            "1".to_string()
        } else {
            let gs: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
            format!("<{}>", gs.join(", "))
        };
        let (group, elements) =
            Self::generate(label, Perm::identity(degree), generators, |a, b| a.compose(b), cap)?;
        let mut group = Arc::try_unwrap(group).expect("fresh Arc");
        group.perms = Some(elements);
        Ok(Arc::new(group))
    }

    pub fn trivial() -> Arc<Self> {
        Self::from_table_trusted("1".into(), 1, vec![0], 0, Some(vec![Perm::identity(1)]))
    }

    pub fn with_label(self: &Arc<Self>, label: impl Into<String>) -> Arc<Self> {
        let mut g = (**self).clone();
        g.label = label.into();
        Arc::new(g)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `a⁻¹ b⁻¹ a b`
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// `g⁻¹ x g`
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|g| (0..self.order).map(|h| self.mul(g, h)).collect())
            .collect()
    }

    pub fn perms(&self) -> Option<&[Perm]> {
        self.perms.as_deref()
    }

    pub fn perm(&self, a: usize) -> Option<&Perm> {
        self.perms.as_ref().map(|p| &p[a])
    }

    /// Element id of a permutation, when the group carries a permutation realization.
    pub fn find_perm(&self, p: &Perm) -> Option<usize> {
        self.perms.as_ref()?.iter().position(|q| q == p)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// A small generating set, chosen greedily by decreasing element order.
    pub fn generators(&self) -> &[usize] {
        self.gens.get_or_init(|| {
            let mut candidates: Vec<usize> = (0..self.order).filter(|&g| g != self.identity).collect();
            candidates.sort_by_key(|&g| (std::cmp::Reverse(self.element_order(g)), g));
            let mut members = vec![false; self.order];
            members[self.identity] = true;
            let mut list = vec![self.identity];
            let mut gens = Vec::new();
            for g in candidates {
                if members[g] {
                    continue;
                }
                gens.push(g);
                close_under(self, &mut members, &mut list, &gens);
                if list.len() == self.order {
                    break;
                }
            }
            gens
        })
    }
}

/// Extends `list`/`members` to the closure under right multiplication by `gens`.
fn close_under(g: &FinGroup, members: &mut [bool], list: &mut Vec<usize>, gens: &[usize]) {
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for &s in gens {
            let y = g.mul(x, s);
            if !members[y] {
                members[y] = true;
                list.push(y);
            }
        }
        i += 1;
    }
}

/// A subgroup of a parent [`FinGroup`], stored as a sorted member list.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FinGroup>,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup({} of {}: {:?})", self.members.len(), self.parent.label, self.members)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && same_group(&self.parent, &other.parent)
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub(crate) fn from_mask(parent: &Arc<FinGroup>, mask: Vec<bool>) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect();
        Subgroup {
            parent: Arc::clone(parent),
            members,
            mask,
        }
    }

    /// Wraps a set already known to be a subgroup.
    pub(crate) fn from_members_trusted(parent: &Arc<FinGroup>, members: &[usize]) -> Self {
        let mut mask = vec![false; parent.order()];
        for &m in members {
            mask[m] = true;
        }
        Self::from_mask(parent, mask)
    }

    pub fn trivial(parent: &Arc<FinGroup>) -> Self {
        Self::from_members_trusted(parent, &[parent.identity()])
    }

    pub fn whole(parent: &Arc<FinGroup>) -> Self {
        Self::from_mask(parent, vec![true; parent.order()])
    }

    /// Smallest subgroup containing `seed`.
    pub fn generated(parent: &Arc<FinGroup>, seed: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members = vec![false; parent.order()];
        members[parent.identity()] = true;
        let mut list = vec![parent.identity()];
        let mut gens = Vec::new();
        for s in seed {
            if s >= parent.order() {
                return Err(Error::InvalidGroup(format!(
                    "element {s} outside a group of order {}",
                    parent.order()
                )));
            }
            if !members[s] {
                gens.push(s);
                close_under(parent, &mut members, &mut list, &gens);
            }
        }
        Ok(Self::from_mask(parent, members))
    }

    pub fn parent(&self) -> &Arc<FinGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.members.len()
    }

    #[inline]
    pub fn contains(&self, g: usize) -> bool {
        self.mask[g]
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&g| other.contains(g))
    }

    fn check_parent(&self, other: &Subgroup) -> Result<()> {
        if same_group(&self.parent, &other.parent) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    /// A small generating set of this subgroup.
    pub fn generators(&self) -> Vec<usize> {
        let g = &*self.parent;
        let mut candidates: Vec<usize> = self
            .members
            .iter()
            .copied()
            .filter(|&x| x != g.identity())
            .collect();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
        let mut members = vec![false; g.order()];
        members[g.identity()] = true;
        let mut list = vec![g.identity()];
        let mut gens = Vec::new();
        for x in candidates {
            if members[x] {
                continue;
            }
            gens.push(x);
            close_under(g, &mut members, &mut list, &gens);
            if list.len() == self.members.len() {
                break;
            }
        }
        gens
    }

    pub fn is_normal(&self) -> bool {
        let g = &*self.parent;
        let own = self.generators();
        g.generators()
            .iter()
            .all(|&s| own.iter().all(|&x| self.contains(g.conjugate(x, s))))
    }

    /// Whether every element of `other` normalizes `self`.
    pub fn is_normalized_by(&self, other: &Subgroup) -> bool {
        let g = &*self.parent;
        let own = self.generators();
        other
            .generators()
            .iter()
            .all(|&s| own.iter().all(|&x| self.contains(g.conjugate(x, s))))
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        let mask = self
            .mask
            .iter()
            .zip(&other.mask)
            .map(|(&a, &b)| a && b)
            .collect();
        Ok(Subgroup::from_mask(&self.parent, mask))
    }

    /// `[H, K]`, generated by all `h⁻¹k⁻¹hk`.
    pub fn commutator(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        let g = &*self.parent;
        let mut seed = Vec::new();
        let mut seen = vec![false; g.order()];
        for &h in &self.members {
            for &k in &other.members {
                let c = g.commutator(h, k);
                if !seen[c] {
                    seen[c] = true;
                    seed.push(c);
                }
            }
        }
        Subgroup::generated(&self.parent, seed)
    }

    /// The setwise product `{nm}`; one factor must normalize the other.
    pub fn product(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        if !(self.is_normalized_by(other) || other.is_normalized_by(self)) {
            return Err(Error::NotPermutable);
        }
        let g = &*self.parent;
        let mut mask = vec![false; g.order()];
        for &n in &self.members {
            for &m in &other.members {
                mask[g.mul(n, m)] = true;
            }
        }
        Ok(Subgroup::from_mask(&self.parent, mask))
    }

    /// Subgroup generated by both; no permutability requirement.
    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        Subgroup::generated(
            &self.parent,
            self.generators().into_iter().chain(other.generators()),
        )
    }

    /// Smallest normal subgroup of the parent containing `self`.
    pub fn normal_closure(&self) -> Subgroup {
        let g = &*self.parent;
        let mut current = self.clone();
        loop {
            let own = current.generators();
            let extra: Vec<usize> = g
                .generators()
                .iter()
                .flat_map(|&s| own.iter().map(move |&x| g.conjugate(x, s)))
                .filter(|&c| !current.contains(c))
                .collect();
            if extra.is_empty() {
                return current;
            }
            current = Subgroup::generated(&self.parent, own.into_iter().chain(extra))
                .expect("ids come from the parent");
        }
    }

    pub fn center(parent: &Arc<FinGroup>) -> Subgroup {
        let g = &**parent;
        let gens = g.generators();
        let mask = (0..g.order())
            .map(|z| gens.iter().all(|&s| g.mul(z, s) == g.mul(s, z)))
            .collect();
        Subgroup::from_mask(parent, mask)
    }

    /// Derived subgroup `[G, G]`.
    pub fn derived(parent: &Arc<FinGroup>) -> Subgroup {
        let whole = Subgroup::whole(parent);
        whole.commutator(&whole).expect("same parent")
    }

    /// `[G, G]` together with all `m`-th powers.
    pub fn derived_and_powers(parent: &Arc<FinGroup>, m: usize) -> Subgroup {
        let g = &**parent;
        let derived = Subgroup::derived(parent);
        let powers = (0..g.order()).map(|x| g.pow(x, m));
        Subgroup::generated(parent, derived.generators().into_iter().chain(powers))
            .expect("ids come from the parent")
    }

    /// Realizes this subgroup as a group in its own right with ids indexing
    /// the sorted member list, together with the inclusion.
    pub fn to_group(&self) -> (Arc<FinGroup>, crate::hom::GroupHom) {
        let g = &*self.parent;
        let n = self.members.len();
        let mut position = vec![usize::MAX; g.order()];
        for (i, &m) in self.members.iter().enumerate() {
            position[m] = i;
        }
        let mut table = Vec::with_capacity(n * n);
        for &a in &self.members {
            for &b in &self.members {
                table.push(position[g.mul(a, b)] as u32);
            }
        }
        let perms = g
            .perms()
            .map(|ps| self.members.iter().map(|&m| ps[m].clone()).collect());
        let label = format!("sub({})", g.label());
        let sub = FinGroup::from_table_trusted(label, n, table, position[g.identity()], perms);
        let inclusion =
            crate::hom::GroupHom::new_trusted(Arc::clone(&sub), Arc::clone(&self.parent), self.members.clone());
        (sub, inclusion)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;

    #[test]
    fn rejects_non_latin_table() {
        let err = FinGroup::from_table("bad", vec![vec![0, 1], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, Error::InvalidGroup(_)));
    }

    #[test]
    fn rejects_non_associative_quasigroup() {
        // A Latin square with identity 0 that is not associative (order 5 loop).
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FinGroup::from_table("loop", rows).unwrap_err();
        assert!(err.to_string().contains("associativity"), "{err}");
    }

    #[test]
    fn accepts_cyclic_table() {
        let rows = (0..5).map(|a| (0..5).map(|b| (a + b) % 5).collect()).collect();
        let g = FinGroup::from_table("Z5", rows).unwrap();
        assert_eq!(g.order(), 5);
        assert!(g.is_abelian());
        assert_eq!(g.inv(2), 3);
    }

    #[test]
    fn permutation_closure_examples() {
        let s3 = FinGroup::from_permutation_generators(
            3,
            &[
                Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap(),
                Perm::from_cycles(3, &[vec![0, 1]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());

        let one = FinGroup::from_permutation_generators(1, &[]).unwrap();
        assert_eq!(one.order(), 1);

        let z4 = FinGroup::from_permutation_generators(
            4,
            &[Perm::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap()],
        )
        .unwrap();
        assert_eq!(z4.order(), 4);
        assert!(z4.is_abelian());
        assert_eq!(z4.element_order(1), 4);
    }

    #[test]
    fn closure_respects_cap() {
        let gens = [
            Perm::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap(),
            Perm::from_cycles(5, &[vec![0, 1]]).unwrap(),
        ];
        let err = FinGroup::from_permutation_generators_capped(5, &gens, 100).unwrap_err();
        assert!(matches!(err, Error::ClosureCapExceeded { cap: 100, .. }));
    }

    #[test]
    fn bfs_ids_are_canonical() {
        let gens = [
            Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap(),
            Perm::from_cycles(3, &[vec![0, 1]]).unwrap(),
        ];
        let a = FinGroup::from_permutation_generators(3, &gens).unwrap();
        let b = FinGroup::from_permutation_generators(3, &gens).unwrap();
        assert_eq!(*a, *b);
        assert_eq!(a.identity(), 0);
        assert_eq!(a.perm(1), Some(&gens[0]));
        assert_eq!(a.perm(2), Some(&gens[1]));
    }

    #[test]
    fn subgroup_generated_examples() {
        let s3 = library::symmetric(3).unwrap();
        let three_cycle = s3
            .find_perm(&Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap())
            .unwrap();
        assert_eq!(Subgroup::generated(&s3, [three_cycle]).unwrap().order(), 3);
        assert!(Subgroup::generated(&s3, []).unwrap().is_trivial());

        let z4 = library::cyclic(4).unwrap();
        let sq = z4.mul(1, 1);
        assert_eq!(Subgroup::generated(&z4, [sq]).unwrap().order(), 2);
    }

    #[test]
    fn commutator_examples() {
        let s3 = library::symmetric(3).unwrap();
        let whole = Subgroup::whole(&s3);
        let d = whole.commutator(&whole).unwrap();
        assert_eq!(d.order(), 3);
        // brute force: every product of commutators lies in A3
        for a in s3.elements() {
            for b in s3.elements() {
                assert!(d.contains(s3.commutator(a, b)));
            }
        }
        assert!(whole.commutator(&Subgroup::trivial(&s3)).unwrap().is_trivial());

        let d4 = library::dihedral(4).unwrap();
        let (rot, klein) = library::d4_rotations_and_klein(&d4);
        let c = rot.commutator(&klein).unwrap();
        assert_eq!(c, library::d4_center(&d4));
    }

    #[test]
    fn commutator_rejects_foreign_parent() {
        let a = library::cyclic(4).unwrap();
        let b = library::symmetric(3).unwrap();
        let err = Subgroup::whole(&a).commutator(&Subgroup::whole(&b)).unwrap_err();
        assert_eq!(err, Error::ParentMismatch);
    }

    #[test]
    fn center_examples() {
        let q8 = library::quaternion8().unwrap();
        let z = Subgroup::center(&q8);
        assert_eq!(z.order(), 2);
        let brute: Vec<usize> = q8
            .elements()
            .filter(|&x| q8.elements().all(|y| q8.mul(x, y) == q8.mul(y, x)))
            .collect();
        assert_eq!(z.members(), &brute[..]);

        let z6 = library::cyclic(6).unwrap();
        assert!(Subgroup::center(&z6).is_whole());
        assert!(Subgroup::center(&library::symmetric(3).unwrap()).is_trivial());
    }

    #[test]
    fn normal_closure_examples() {
        let s3 = library::symmetric(3).unwrap();
        let t = s3.find_perm(&Perm::from_cycles(3, &[vec![0, 1]]).unwrap()).unwrap();
        let h = Subgroup::generated(&s3, [t]).unwrap();
        assert!(!h.is_normal());
        assert!(h.normal_closure().is_whole());
        assert!(Subgroup::trivial(&s3).normal_closure().is_trivial());

        let d4 = library::dihedral(4).unwrap();
        let s = library::d4_reflection(&d4);
        let closure = Subgroup::generated(&d4, [s]).unwrap().normal_closure();
        assert_eq!(closure.order(), 4);
        assert!(closure.contains(s));
        assert!(library::d4_center(&d4).is_subset_of(&closure));
    }

    #[test]
    fn product_examples() {
        let d4 = library::dihedral(4).unwrap();
        let s = library::d4_reflection(&d4);
        let center = library::d4_center(&d4);
        let refl = Subgroup::generated(&d4, [s]).unwrap();
        let prod = center.product(&refl).unwrap();
        assert_eq!(prod.order(), 4);
        assert_eq!(prod, prod.join(&center).unwrap());
        assert_eq!(center.product(&Subgroup::trivial(&d4)).unwrap(), center);

        let s3 = library::symmetric(3).unwrap();
        let a3 = Subgroup::derived(&s3);
        let t = s3.find_perm(&Perm::from_cycles(3, &[vec![0, 1]]).unwrap()).unwrap();
        let two = Subgroup::generated(&s3, [t]).unwrap();
        assert!(a3.product(&two).unwrap().is_whole());
    }

    #[test]
    fn product_of_non_permuting_subgroups_fails() {
        let s3 = library::symmetric(3).unwrap();
        let a = Subgroup::generated(&s3, [s3.find_perm(&Perm::from_cycles(3, &[vec![0, 1]]).unwrap()).unwrap()]).unwrap();
        let b = Subgroup::generated(&s3, [s3.find_perm(&Perm::from_cycles(3, &[vec![1, 2]]).unwrap()).unwrap()]).unwrap();
        assert_eq!(a.product(&b).unwrap_err(), Error::NotPermutable);
    }

    #[test]
    fn intersection_examples() {
        let s3 = library::symmetric(3).unwrap();
        let a3 = Subgroup::derived(&s3);
        assert_eq!(a3.intersection(&a3).unwrap(), a3);
        let t = s3.find_perm(&Perm::from_cycles(3, &[vec![0, 1]]).unwrap()).unwrap();
        let two = Subgroup::generated(&s3, [t]).unwrap();
        assert!(a3.intersection(&two).unwrap().is_trivial());

        let d4 = library::dihedral(4).unwrap();
        let (rot, klein) = library::d4_rotations_and_klein(&d4);
        assert_eq!(rot.intersection(&klein).unwrap(), library::d4_center(&d4));
    }

    #[test]
    fn to_group_realizes_subgroup() {
        let d4 = library::dihedral(4).unwrap();
        let (rot, _) = library::d4_rotations_and_klein(&d4);
        let (g, incl) = rot.to_group();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
        assert!(incl.is_injective());
        assert_eq!(incl.image().members(), rot.members());
    }
}
