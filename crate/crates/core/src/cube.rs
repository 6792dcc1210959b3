//! n-fold arrows: contravariant functors from the subsets of `{0..n-1}` into
//! a category, stored as vertices indexed by bitmask plus the arrows
//! `a^T_{T∖{i}}` for covering pairs.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::category::{self, Category, Cone, Groups};
use crate::error::{Error, Result};
use crate::group::{same_group, FinGroup, Subgroup};
use crate::hom::{self, factor_through_quotient, quotient, GroupHom, Square};
use crate::library;
use crate::limits;

/// `s_i` on a single index.
pub fn shift_index(i: usize, k: usize) -> usize {
    if k < i {
        k
    } else {
        k + 1
    }
}

/// `s_i(S)` on a bitmask.
pub fn index_shift(i: usize, s: usize) -> usize {
    let low = s & ((1 << i) - 1);
    let high = s >> i;
    low | (high << (i + 1))
}

/// Inverse of [`index_shift`] on masks not containing `i`; drops bit `i`.
pub fn squeeze(i: usize, m: usize) -> usize {
    let low = m & ((1 << i) - 1);
    let high = m >> (i + 1);
    low | (high << i)
}

/// `{0,2}` style rendering of a mask.
pub fn fmt_subset(mask: usize) -> String {
    let items: Vec<String> = (0..usize::BITS as usize)
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| i.to_string())
        .collect();
    format!("{{{}}}", items.join(","))
}

struct CubeData<C: Category> {
    cat: C,
    dim: usize,
    vertices: Vec<C::Obj>,
    edges: Vec<Option<C::Mor>>,
    memo: Vec<OnceLock<C::Mor>>,
}

/// A functor `𝒫(n)ᵒᵖ → C`. Cheap to clone.
pub struct Cube<C: Category> {
    inner: Arc<CubeData<C>>,
}

impl<C: Category> Clone for Cube<C> {
    fn clone(&self) -> Self {
        Cube {
            inner: Arc::clone(&self.inner),
        }
    }
}

impl<C: Category> fmt::Debug for Cube<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (s, v) in self.inner.vertices.iter().enumerate() {
            m.entry(&fmt_subset(s), v);
        }
        m.finish()
    }
}

impl<C: Category> Cube<C> {
    /// Builds a cube from its vertices and covering arrows `edge(T, i)`,
    /// checking sources, targets and every coface square.
    pub fn new(
        cat: C,
        dim: usize,
        vertices: Vec<C::Obj>,
        mut edge: impl FnMut(usize, usize) -> Result<C::Mor>,
    ) -> Result<Self> {
        if vertices.len() != 1 << dim {
            return Err(Error::ShapeMismatch(format!(
                "{} vertices given for a cube of dimension {dim}",
                vertices.len()
            )));
        }
        let mut edges = vec![None; vertices.len() * dim.max(1)];
        for t in 0..vertices.len() {
            for i in (0..dim).filter(|&i| t >> i & 1 == 1) {
                let e = edge(t, i)?;
                let s = t & !(1 << i);
                if !cat.same_obj(&cat.source(&e), &vertices[t])
                    || !cat.same_obj(&cat.target(&e), &vertices[s])
                {
                    return Err(Error::NotFunctorial(format!(
                        "arrow {} -> {} has the wrong source or target",
                        fmt_subset(t),
                        fmt_subset(s)
                    )));
                }
                edges[t * dim + i] = Some(e);
            }
        }
        let cube = Self::from_parts(cat, dim, vertices, edges);
        cube.check_cofaces()?;
        Ok(cube)
    }

    fn from_parts(cat: C, dim: usize, vertices: Vec<C::Obj>, edges: Vec<Option<C::Mor>>) -> Self {
        let n = vertices.len();
        Cube {
            inner: Arc::new(CubeData {
                cat,
                dim,
                vertices,
                edges,
                memo: (0..n * n).map(|_| OnceLock::new()).collect(),
            }),
        }
    }

    fn check_cofaces(&self) -> Result<()> {
        let cat = &self.inner.cat;
        let dim = self.inner.dim;
        for t in 0..1usize << dim {
            for i in 0..dim {
                for j in i + 1..dim {
                    if t >> i & 1 == 0 || t >> j & 1 == 0 {
                        continue;
                    }
                    let (ti, tj) = (t & !(1 << i), t & !(1 << j));
                    let via_i = cat.compose(self.edge(ti, j), self.edge(t, i))?;
                    let via_j = cat.compose(self.edge(tj, i), self.edge(t, j))?;
                    if !cat.same_mor(&via_i, &via_j) {
                        return Err(Error::NotFunctorial(format!(
                            "coface square at {} in directions {i}, {j} does not commute",
                            fmt_subset(t)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The 0-cube on a single object.
    pub fn point(cat: C, x: C::Obj) -> Self {
        Self::from_parts(cat, 0, vec![x], vec![None])
    }

    /// The 1-cube `f: X → Y`, with `Y` at `∅` and `X` at `{0}`.
    pub fn arrow(cat: C, f: C::Mor) -> Self {
        let vertices = vec![cat.target(&f), cat.source(&f)];
        Self::from_parts(cat, 1, vertices, vec![None, Some(f)])
    }

    pub fn cat(&self) -> &C {
        &self.inner.cat
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    pub fn full(&self) -> usize {
        (1 << self.inner.dim) - 1
    }

    pub fn vertex(&self, s: usize) -> &C::Obj {
        &self.inner.vertices[s]
    }

    pub fn vertices(&self) -> &[C::Obj] {
        &self.inner.vertices
    }

    pub fn top(&self) -> &C::Obj {
        self.vertex(self.full())
    }

    /// The covering arrow `a^T_{T∖{i}}`; panics if `i ∉ T`.
    pub fn edge(&self, t: usize, i: usize) -> &C::Mor {
        self.inner.edges[t * self.inner.dim + i]
            .as_ref()
            .expect("direction lies in the subset")
    }

    /// `a_i = a^n_{n∖{i}}`.
    pub fn a(&self, i: usize) -> &C::Mor {
        self.edge(self.full(), i)
    }

    /// The general arrow `a^T_S` for `S ⊆ T`, composed along a chain and memoized.
    pub fn arrow_between(&self, t: usize, s: usize) -> Result<C::Mor> {
        let n = self.inner.vertices.len();
        if t >= n || s & !t != 0 {
            return Err(Error::ShapeMismatch(format!(
                "{} is not a subset of {}",
                fmt_subset(s),
                fmt_subset(t)
            )));
        }
        if let Some(m) = self.inner.memo[t * n + s].get() {
            return Ok(m.clone());
        }
        let cat = &self.inner.cat;
        let m = if s == t {
            cat.identity(self.vertex(t))
        } else {
            let i = (t & !s).trailing_zeros() as usize;
            let rest = self.arrow_between(t & !(1 << i), s)?;
            cat.compose(&rest, self.edge(t, i))?
        };
        Ok(self.inner.memo[t * n + s].get_or_init(|| m).clone())
    }

    /// Structural equality of vertices and covering arrows.
    pub fn same_as(&self, other: &Cube<C>) -> bool {
        if Arc::ptr_eq(&self.inner, &other.inner) {
            return true;
        }
        let cat = &self.inner.cat;
        self.dim() == other.dim()
            && self
                .vertices()
                .iter()
                .zip(other.vertices())
                .all(|(a, b)| cat.same_obj(a, b))
            && self
                .inner
                .edges
                .iter()
                .zip(&other.inner.edges)
                .all(|(a, b)| match (a, b) {
                    (Some(a), Some(b)) => cat.same_mor(a, b),
                    (None, None) => true,
                    _ => false,
                })
    }

    fn check_direction(&self, i: usize) -> Result<()> {
        if i >= self.dim() {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.dim(),
            });
        }
        Ok(())
    }

    /// `S ↦ A_{Sⁱ ∪ {i}}` (upper) or `S ↦ A_{Sⁱ}` (lower).
    pub fn face(&self, i: usize, upper: bool) -> Result<Cube<C>> {
        self.check_direction(i)?;
        let d = self.dim() - 1;
        let bit = if upper { 1 << i } else { 0 };
        let vertices = (0..1usize << d)
            .map(|s| self.vertex(index_shift(i, s) | bit).clone())
            .collect();
        let mut edges = vec![None; (1usize << d) * d.max(1)];
        for t in 0..1usize << d {
            for j in (0..d).filter(|&j| t >> j & 1 == 1) {
                edges[t * d + j] = Some(self.edge(index_shift(i, t) | bit, shift_index(i, j)).clone());
            }
        }
        Ok(Self::from_parts(self.cat().clone(), d, vertices, edges))
    }

    /// `δ_i A: (A_{Sⁱ∪{i}})_S → (A_{Sⁱ})_S`.
    pub fn delta(&self, i: usize) -> Result<CubeMorphism<C>> {
        let domain = self.face(i, true)?;
        let codomain = self.face(i, false)?;
        let components = (0..1usize << domain.dim())
            .map(|s| self.edge(index_shift(i, s) | 1 << i, i).clone())
            .collect();
        Ok(CubeMorphism::from_parts(domain, codomain, components))
    }

    /// Reassembles `A` from `δ_i A`.
    pub fn from_delta(i: usize, f: &CubeMorphism<C>) -> Result<Cube<C>> {
        let n = f.dim() + 1;
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, dim: n });
        }
        let cat = f.domain.cat().clone();
        let vertices = (0..1usize << n)
            .map(|m| {
                let s = squeeze(i, m);
                if m >> i & 1 == 1 {
                    f.domain.vertex(s).clone()
                } else {
                    f.codomain.vertex(s).clone()
                }
            })
            .collect();
        Cube::new(cat, n, vertices, |t, j| {
            let s = squeeze(i, t);
            Ok(if j == i {
                f.component(s).clone()
            } else {
                let j2 = if j < i { j } else { j - 1 };
                if t >> i & 1 == 1 {
                    f.domain.edge(s, j2).clone()
                } else {
                    f.codomain.edge(s, j2).clone()
                }
            })
        })
    }

    /// `ρ_i A`: the (n−1)-cube of arrows `a^{Sⁱ∪{i}}_{Sⁱ}`.
    pub fn rho(&self, i: usize) -> Result<Cube<CubeCategory<C>>> {
        self.check_direction(i)?;
        let cat = self.cat().clone();
        let arrows = CubeCategory::new(cat.clone(), 1);
        let d = self.dim() - 1;
        let vertices: Vec<Cube<C>> = (0..1usize << d)
            .map(|s| Cube::arrow(cat.clone(), self.edge(index_shift(i, s) | 1 << i, i).clone()))
            .collect();
        let mut edges = vec![None; (1usize << d) * d.max(1)];
        for t in 0..1usize << d {
            for j in (0..d).filter(|&j| t >> j & 1 == 1) {
                let (ts, js) = (index_shift(i, t), shift_index(i, j));
                let components = vec![self.edge(ts, js).clone(), self.edge(ts | 1 << i, js).clone()];
                let m = CubeMorphism::from_parts(
                    vertices[t].clone(),
                    vertices[t & !(1 << j)].clone(),
                    components,
                );
                edges[t * d + j] = Some(m);
            }
        }
        Ok(Cube::from_parts(arrows, d, vertices, edges))
    }

    /// Reassembles `A` from `ρ_i A`.
    pub fn from_rho(i: usize, r: &Cube<CubeCategory<C>>) -> Result<Cube<C>> {
        let n = r.dim() + 1;
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, dim: n });
        }
        let cat = r.cat().base.clone();
        let vertices = (0..1usize << n)
            .map(|m| r.vertex(squeeze(i, m)).vertex(m >> i & 1).clone())
            .collect();
        Cube::new(cat, n, vertices, |t, j| {
            let s = squeeze(i, t);
            Ok(if j == i {
                r.vertex(s).edge(1, 0).clone()
            } else {
                let j2 = if j < i { j } else { j - 1 };
                r.edge(s, j2).component(t >> i & 1).clone()
            })
        })
    }

    /// Extension status computed through `δ_i`.
    pub fn is_extension_via(&self, i: usize) -> Result<bool> {
        let n = self.dim();
        if n > limits::dim_cap() {
            return Err(Error::DimCapExceeded {
                dim: n,
                cap: limits::dim_cap(),
            });
        }
        if n == 0 {
            return self.cat().is_admissible(self.vertex(0));
        }
        let lower = CubeCategory::new(self.cat().clone(), n - 1);
        lower.is_extension(&self.delta(i)?)
    }

    /// The recursive n-fold extension test, splitting off the last direction.
    pub fn is_n_fold_extension(&self) -> Result<bool> {
        match self.dim() {
            0 => self.is_extension_via(0),
            n => self.is_extension_via(n - 1),
        }
    }

    /// Tests `ρ_i A` as an (n−1)-fold extension of arrows, where arrows of
    /// arrows are extensions when they are double extensions.
    pub fn is_extension_via_rho(&self, i: usize) -> Result<bool> {
        self.rho(i)?.is_n_fold_extension()
    }

    /// Double-extension status of the square `δ_j δ_i A` of (n−2)-cubes.
    pub fn delta_delta_status(&self, i: usize, j: usize) -> Result<bool> {
        let f = self.delta(i)?;
        let [top, left, right, bottom] = f.delta_square(j)?;
        let cat = CubeCategory::new(self.cat().clone(), self.dim() - 2);
        category::is_double_extension(&cat, &top, &left, &right, &bottom)
    }

    /// `δ_{j−1}(ρ_i A) = (ρ_i, ρ_i)(δ_j A)` for `i < j` and
    /// `δ_j(ρ_i A) = (ρ_{i−1}, ρ_{i−1})(δ_j A)` for `i > j`, over all pairs.
    pub fn shift_commutation_holds(&self) -> Result<bool> {
        let n = self.dim();
        if n < 2 {
            return Ok(true);
        }
        let outer = CubeCategory::new(CubeCategory::new(self.cat().clone(), 1), n - 2);
        for i in 0..n {
            let r = self.rho(i)?;
            for j in (0..n).filter(|&j| j != i) {
                let (lhs, rhs) = if i < j {
                    (r.delta(j - 1)?, self.delta(j)?.rho(i)?)
                } else {
                    (r.delta(j)?, self.delta(j)?.rho(i - 1)?)
                };
                if !outer.same_mor(&lhs, &rhs) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// A natural transformation between cubes of the same dimension.
pub struct CubeMorphism<C: Category> {
    domain: Cube<C>,
    codomain: Cube<C>,
    components: Vec<C::Mor>,
}

impl<C: Category> Clone for CubeMorphism<C> {
    fn clone(&self) -> Self {
        CubeMorphism {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            components: self.components.clone(),
        }
    }
}

impl<C: Category> fmt::Debug for CubeMorphism<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (s, c) in self.components.iter().enumerate() {
            m.entry(&fmt_subset(s), c);
        }
        m.finish()
    }
}

impl<C: Category> CubeMorphism<C> {
    /// Checks component sources, targets and naturality along every covering arrow.
    pub fn new(domain: Cube<C>, codomain: Cube<C>, components: Vec<C::Mor>) -> Result<Self> {
        if domain.dim() != codomain.dim() || components.len() != domain.vertices().len() {
            return Err(Error::ShapeMismatch("cube morphism dimensions differ".into()));
        }
        let cat = domain.cat().clone();
        for (s, c) in components.iter().enumerate() {
            if !cat.same_obj(&cat.source(c), domain.vertex(s))
                || !cat.same_obj(&cat.target(c), codomain.vertex(s))
            {
                return Err(Error::ShapeMismatch(format!(
                    "component at {} has the wrong source or target",
                    fmt_subset(s)
                )));
            }
        }
        let f = Self::from_parts(domain, codomain, components);
        for t in 0..f.components.len() {
            for i in (0..f.dim()).filter(|&i| t >> i & 1 == 1) {
                let s = t & !(1 << i);
                let lhs = cat.compose(f.codomain.edge(t, i), &f.components[t])?;
                let rhs = cat.compose(&f.components[s], f.domain.edge(t, i))?;
                if !cat.same_mor(&lhs, &rhs) {
                    return Err(Error::NotFunctorial(format!(
                        "naturality fails along {} -> {}",
                        fmt_subset(t),
                        fmt_subset(s)
                    )));
                }
            }
        }
        Ok(f)
    }

    pub(crate) fn from_parts(domain: Cube<C>, codomain: Cube<C>, components: Vec<C::Mor>) -> Self {
        debug_assert_eq!(components.len(), domain.vertices().len());
        CubeMorphism {
            domain,
            codomain,
            components,
        }
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn domain(&self) -> &Cube<C> {
        &self.domain
    }

    pub fn codomain(&self) -> &Cube<C> {
        &self.codomain
    }

    pub fn component(&self, s: usize) -> &C::Mor {
        &self.components[s]
    }

    pub fn components(&self) -> &[C::Mor] {
        &self.components
    }

    /// Restriction to the upper or lower face in direction `j`.
    pub fn face(&self, j: usize, upper: bool) -> Result<CubeMorphism<C>> {
        let domain = self.domain.face(j, upper)?;
        let codomain = self.codomain.face(j, upper)?;
        let bit = if upper { 1 << j } else { 0 };
        let components = (0..1usize << domain.dim())
            .map(|s| self.components[index_shift(j, s) | bit].clone())
            .collect();
        Ok(CubeMorphism::from_parts(domain, codomain, components))
    }

    /// The square `[δ_j X, f|upper, f|lower, δ_j Y]` (top, left, right, bottom)
    /// of morphisms between (n−1)-cubes.
    pub fn delta_square(&self, j: usize) -> Result<[CubeMorphism<C>; 4]> {
        Ok([
            self.domain.delta(j)?,
            self.face(j, true)?,
            self.face(j, false)?,
            self.codomain.delta(j)?,
        ])
    }

    /// `(ρ_i, ρ_i)` applied to this morphism.
    pub fn rho(&self, i: usize) -> Result<CubeMorphism<CubeCategory<C>>> {
        let domain = self.domain.rho(i)?;
        let codomain = self.codomain.rho(i)?;
        let components = (0..1usize << domain.dim())
            .map(|s| {
                let t = index_shift(i, s);
                CubeMorphism::from_parts(
                    domain.vertex(s).clone(),
                    codomain.vertex(s).clone(),
                    vec![self.components[t].clone(), self.components[t | 1 << i].clone()],
                )
            })
            .collect();
        Ok(CubeMorphism::from_parts(domain, codomain, components))
    }
}

/// Cubes of a fixed dimension over `base`, with natural transformations as
/// morphisms. A morphism is an extension when, read as a cube of one more
/// dimension, it is an extension of that dimension.
#[derive(Debug, Clone)]
pub struct CubeCategory<C: Category> {
    pub base: C,
    pub dim: usize,
}

impl<C: Category> CubeCategory<C> {
    pub fn new(base: C, dim: usize) -> Self {
        CubeCategory { base, dim }
    }
}

/// Arrows of finite groups, with double extensions as extensions.
pub type Arrows = CubeCategory<Groups>;

pub fn arrows() -> Arrows {
    CubeCategory::new(Groups, 1)
}

impl<C: Category> Category for CubeCategory<C> {
    type Obj = Cube<C>;
    type Mor = CubeMorphism<C>;

    fn source(&self, f: &Self::Mor) -> Cube<C> {
        f.domain.clone()
    }

    fn target(&self, f: &Self::Mor) -> Cube<C> {
        f.codomain.clone()
    }

    fn identity(&self, x: &Cube<C>) -> Self::Mor {
        let components = x.vertices().iter().map(|v| self.base.identity(v)).collect();
        CubeMorphism::from_parts(x.clone(), x.clone(), components)
    }

    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor> {
        if !f.codomain.same_as(&g.domain) {
            return Err(Error::CompositionMismatch);
        }
        let components = g
            .components
            .iter()
            .zip(&f.components)
            .map(|(b, a)| self.base.compose(b, a))
            .collect::<Result<_>>()?;
        Ok(CubeMorphism::from_parts(f.domain.clone(), g.codomain.clone(), components))
    }

    fn same_obj(&self, a: &Cube<C>, b: &Cube<C>) -> bool {
        a.same_as(b)
    }

    fn same_mor(&self, f: &Self::Mor, g: &Self::Mor) -> bool {
        f.domain.same_as(&g.domain)
            && f.codomain.same_as(&g.codomain)
            && f
                .components
                .iter()
                .zip(&g.components)
                .all(|(a, b)| self.base.same_mor(a, b))
    }

    fn pullback(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Cone<Self>> {
        if !f.codomain.same_as(&g.codomain) {
            return Err(Error::ShapeMismatch("pullback legs have different codomains".into()));
        }
        let base = &self.base;
        let cones: Vec<Cone<C>> = f
            .components
            .iter()
            .zip(&g.components)
            .map(|(a, b)| base.pullback(a, b))
            .collect::<Result<_>>()?;
        let (x, y) = (&f.domain, &g.domain);
        let apex = Cube::new(
            base.clone(),
            f.dim(),
            cones.iter().map(|c| c.apex.clone()).collect(),
            |t, i| {
                let s = t & !(1 << i);
                let u = base.compose(x.edge(t, i), &cones[t].left)?;
                let v = base.compose(y.edge(t, i), &cones[t].right)?;
                base.factor(&cones[s], &u, &v)
            },
        )?;
        let left = CubeMorphism::from_parts(apex.clone(), x.clone(), cones.iter().map(|c| c.left.clone()).collect());
        let right = CubeMorphism::from_parts(apex.clone(), y.clone(), cones.iter().map(|c| c.right.clone()).collect());
        Ok(Cone { apex, left, right })
    }

    fn factor(&self, cone: &Cone<Self>, u: &Self::Mor, v: &Self::Mor) -> Result<Self::Mor> {
        let components = (0..cone.apex.vertices().len())
            .map(|s| {
                let c = Cone {
                    apex: cone.apex.vertex(s).clone(),
                    left: cone.left.components[s].clone(),
                    right: cone.right.components[s].clone(),
                };
                self.base.factor(&c, &u.components[s], &v.components[s])
            })
            .collect::<Result<_>>()?;
        Ok(CubeMorphism::from_parts(u.domain.clone(), cone.apex.clone(), components))
    }

    fn is_extension(&self, f: &Self::Mor) -> Result<bool> {
        if self.dim == 0 {
            return self.base.is_extension(&f.components[0]);
        }
        let [top, left, right, bottom] = f.delta_square(self.dim - 1)?;
        let lower = CubeCategory::new(self.base.clone(), self.dim - 1);
        category::is_double_extension(&lower, &top, &left, &right, &bottom)
    }

    fn is_admissible(&self, x: &Cube<C>) -> Result<bool> {
        x.is_n_fold_extension()
    }
}

// ---------------------------------------------------------------------------
// Cubes of groups

impl Cube<Groups> {
    /// `ιⁿA`: `A` on top, trivial elsewhere.
    pub fn iota(n: usize, a: &Arc<FinGroup>) -> Result<Self> {
        let one = FinGroup::trivial();
        let full = (1usize << n) - 1;
        let vertices = (0..1usize << n)
            .map(|s| if s == full { Arc::clone(a) } else { Arc::clone(&one) })
            .collect::<Vec<_>>();
        let v = vertices.clone();
        Cube::new(Groups, n, vertices, |t, i| Ok(GroupHom::zero(&v[t], &v[t & !(1 << i)])))
    }

    /// `A_S = G/N_S` for a family of normal subgroups with `N_T ⊆ N_S` when `S ⊆ T`.
    /// A trivial `N_S` gives `G` itself.
    pub fn from_normal_family(g: &Arc<FinGroup>, family: &[Subgroup]) -> Result<Self> {
        let dim = family.len().trailing_zeros() as usize;
        if family.len() != 1 << dim {
            return Err(Error::ShapeMismatch("family size is not a power of two".into()));
        }
        let projections: Vec<GroupHom> = family
            .iter()
            .map(|n| {
                if !same_group(n.parent(), g) {
                    return Err(Error::ParentMismatch);
                }
                if n.is_trivial() {
                    Ok(GroupHom::identity(g))
                } else {
                    Ok(quotient(n)?.projection)
                }
            })
            .collect::<Result<_>>()?;
        let vertices = projections.iter().map(|p| Arc::clone(p.codomain())).collect();
        Cube::new(Groups, dim, vertices, |t, i| {
            let s = t & !(1 << i);
            if !family[t].is_subset_of(&family[s]) {
                return Err(Error::ShapeMismatch(format!(
                    "normal subgroup at {} is not contained in the one at {}",
                    fmt_subset(t),
                    fmt_subset(s)
                )));
            }
            factor_through_quotient(&projections[t], &projections[s])
        })
    }

    /// The quotient-lattice cube `A_S = G / ∏_{i∉S} N_i`.
    pub fn quotient_lattice(g: &Arc<FinGroup>, normals: &[Subgroup]) -> Result<Self> {
        let n = normals.len();
        let family = (0..1usize << n)
            .map(|s| {
                let mut acc = Subgroup::trivial(g);
                for (i, ni) in normals.iter().enumerate() {
                    if s >> i & 1 == 0 {
                        acc = acc.product(ni)?;
                    }
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_normal_family(g, &family)
    }

    /// Kernels `K[a_i]` of the arrows out of the top vertex.
    pub fn top_kernels(&self) -> Vec<Subgroup> {
        (0..self.dim()).map(|i| self.a(i).kernel()).collect()
    }

    /// Embeds `A_∅` into `A_∅ × Z2`, so every arrow into `∅` stops being surjective.
    pub fn mutated(&self) -> Result<Self> {
        let bottom = self.vertex(0);
        let z2 = library::cyclic(2)?;
        let prod = hom::direct_product(bottom, &z2)?;
        let embed = GroupHom::new(
            Arc::clone(bottom),
            Arc::clone(&prod.group),
            bottom.elements().map(|x| x * 2 + z2.identity()).collect(),
        )?;
        let mut vertices = self.vertices().to_vec();
        vertices[0] = Arc::clone(&prod.group);
        Cube::new(Groups, self.dim(), vertices, |t, i| {
            let e = self.edge(t, i);
            if t == 1 << i {
                embed.compose(e)
            } else {
                Ok(e.clone())
            }
        })
    }

    /// Reads a square as a 2-cube: `A1` at `{0,1}`, `B1` at `{0}`, `A0` at `{1}`, `B0` at `∅`.
    pub fn from_square(sq: &Square) -> Result<Self> {
        let vertices = vec![
            Arc::clone(sq.right.codomain()),
            Arc::clone(sq.top.codomain()),
            Arc::clone(sq.left.codomain()),
            Arc::clone(sq.top.domain()),
        ];
        Cube::new(Groups, 2, vertices, |t, i| {
            Ok(match (t, i) {
                (3, 1) => sq.top.clone(),
                (3, 0) => sq.left.clone(),
                (1, 0) => sq.right.clone(),
                (2, 1) => sq.bottom.clone(),
                _ => unreachable!("covering pairs of a square"),
            })
        })
    }

    pub fn to_square(&self) -> Result<Square> {
        if self.dim() != 2 {
            return Err(Error::ShapeMismatch(format!("expected a square, got dimension {}", self.dim())));
        }
        Ok(Square {
            top: self.edge(3, 1).clone(),
            left: self.edge(3, 0).clone(),
            right: self.edge(1, 0).clone(),
            bottom: self.edge(2, 1).clone(),
        })
    }

    /// Largest vertex order.
    pub fn max_order(&self) -> usize {
        self.vertices().iter().map(|g| g.order()).max().unwrap_or(1)
    }
}

/// Vertexwise kernel of a morphism of group cubes, with its inclusion.
pub fn cube_kernel(f: &CubeMorphism<Groups>) -> Result<(Cube<Groups>, CubeMorphism<Groups>)> {
    let inclusions: Vec<GroupHom> = f.components().iter().map(|c| c.kernel().to_group().1).collect();
    let vertices = inclusions.iter().map(|i| Arc::clone(i.domain())).collect();
    let x = f.domain();
    let k = Cube::new(Groups, f.dim(), vertices, |t, i| {
        x.edge(t, i)
            .restrict_between_groups(&inclusions[t], &inclusions[t & !(1 << i)])
    })?;
    let incl = CubeMorphism::from_parts(k.clone(), x.clone(), inclusions);
    Ok((k, incl))
}

/// Vertexwise pullback of two cube morphisms with a common codomain.
pub fn cube_pullback(f: &CubeMorphism<Groups>, g: &CubeMorphism<Groups>) -> Result<Cone<CubeCategory<Groups>>> {
    CubeCategory::new(Groups, f.dim()).pullback(f, g)
}

pub fn cube_kernel_pair(f: &CubeMorphism<Groups>) -> Result<Cone<CubeCategory<Groups>>> {
    cube_pullback(f, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::direct_product;

    fn projection_square() -> Cube<Groups> {
        let z2 = library::cyclic(2).unwrap();
        let v = direct_product(&z2, &z2).unwrap().group;
        let k0 = Subgroup::generated(&v, [1]).unwrap();
        let k1 = Subgroup::generated(&v, [2]).unwrap();
        Cube::quotient_lattice(&v, &[k0, k1]).unwrap()
    }

    fn d4_square() -> Cube<Groups> {
        let d4 = library::dihedral(4).unwrap();
        let (rot, klein) = library::d4_rotations_and_klein(&d4);
        Cube::quotient_lattice(&d4, &[rot, klein]).unwrap()
    }

    fn diagonal_square() -> Cube<Groups> {
        let z2 = library::cyclic(2).unwrap();
        let one = FinGroup::trivial();
        let id = GroupHom::identity(&z2);
        let to_one = GroupHom::zero(&z2, &one);
        Cube::from_square(&Square::new(id.clone(), id, to_one.clone(), to_one).unwrap()).unwrap()
    }

    fn z2_cubed_coordinates() -> Cube<Groups> {
        let g = library::elementary_abelian2(3).unwrap();
        // ids: x = 4a + 2b + c for coordinates (a, b, c)
        let ks: Vec<Subgroup> = [4, 2, 1]
            .iter()
            .map(|&x| Subgroup::generated(&g, [x]).unwrap())
            .collect();
        Cube::quotient_lattice(&g, &ks).unwrap()
    }

    #[test]
    fn index_shift_examples() {
        assert_eq!(index_shift(0, 0b011), 0b110);
        assert_eq!(index_shift(3, 0), 0);
        assert_eq!(index_shift(2, 0b011), 0b011);
        for i in 0..5 {
            for s in 0..32usize {
                assert_eq!(squeeze(i, index_shift(i, s)), s);
                assert_eq!(index_shift(i, s) >> i & 1, 0);
            }
        }
    }

    #[test]
    fn shift_composition_lemma() {
        for j in 0..=6 {
            for i in 0..j {
                for k in 0..8 {
                    assert_eq!(
                        shift_index(j, shift_index(i, k)),
                        shift_index(i, shift_index(j - 1, k))
                    );
                }
            }
        }
    }

    #[test]
    fn fmt_subset_renders_sorted() {
        assert_eq!(fmt_subset(0), "{}");
        assert_eq!(fmt_subset(0b101), "{0,2}");
    }

    #[test]
    fn rejects_non_commuting_coface() {
        let z2 = library::cyclic(2).unwrap();
        let id = GroupHom::identity(&z2);
        let zero = GroupHom::zero(&z2, &z2);
        let vertices = vec![Arc::clone(&z2); 4];
        let err = Cube::new(Groups, 2, vertices, |t, i| {
            Ok(if (t, i) == (3, 0) { zero.clone() } else { id.clone() })
        })
        .unwrap_err();
        assert!(matches!(err, Error::NotFunctorial(_)));
    }

    #[test]
    fn delta_unfoldings() {
        let z2 = library::cyclic(2).unwrap();
        let f = GroupHom::zero(&z2, &FinGroup::trivial());
        let a = Cube::arrow(Groups, f.clone());
        let d = a.delta(0).unwrap();
        assert_eq!(d.dim(), 0);
        assert_eq!(d.component(0), &f);

        let sq = d4_square();
        let d1 = sq.delta(1).unwrap();
        assert_eq!(d1.component(0), sq.edge(0b10, 1));
        assert_eq!(d1.component(1), sq.edge(0b11, 1));
        let d0 = sq.delta(0).unwrap();
        assert_eq!(d0.component(0), sq.edge(0b01, 0));
        assert_eq!(d0.component(1), sq.edge(0b11, 0));
        assert!(matches!(sq.delta(2), Err(Error::IndexOutOfRange { index: 2, dim: 2 })));
    }

    #[test]
    fn delta_and_rho_round_trip() {
        for cube in [d4_square(), z2_cubed_coordinates()] {
            for i in 0..cube.dim() {
                let back = Cube::from_delta(i, &cube.delta(i).unwrap()).unwrap();
                assert!(back.same_as(&cube));
                let back = Cube::from_rho(i, &cube.rho(i).unwrap()).unwrap();
                assert!(back.same_as(&cube));
            }
        }
    }

    #[test]
    fn rho_vertices_match_index_arithmetic() {
        let c = z2_cubed_coordinates();
        let r = c.rho(1).unwrap();
        // vertex S of ρ₁ is a^{s₁(S)∪{1}}_{s₁(S)}
        for s in 0..4usize {
            let lifted: usize = (0..2).filter(|&k| s >> k & 1 == 1).map(|k| 1 << if k < 1 { k } else { k + 1 }).sum();
            assert_eq!(r.vertex(s).edge(1, 0), c.arrow_between(lifted | 0b010, lifted).as_ref().unwrap());
        }
        assert_eq!(r.vertex(0b01).edge(1, 0), c.edge(0b011, 1));
        assert_eq!(r.vertex(0b10).edge(1, 0), c.edge(0b110, 1));
    }

    #[test]
    fn rho_of_arrow_is_point() {
        let z2 = library::cyclic(2).unwrap();
        let f = GroupHom::zero(&z2, &FinGroup::trivial());
        let r = Cube::arrow(Groups, f.clone()).rho(0).unwrap();
        assert_eq!(r.dim(), 0);
        assert_eq!(r.vertex(0).edge(1, 0), &f);
    }

    #[test]
    fn shift_commutes_on_a_square_and_a_cube() {
        for cube in [d4_square(), z2_cubed_coordinates()] {
            assert!(cube.shift_commutation_holds().unwrap());
        }
    }

    #[test]
    fn iota_examples() {
        let s3 = library::symmetric(3).unwrap();
        let i0 = Cube::iota(0, &s3).unwrap();
        assert!(same_group(i0.vertex(0), &s3));
        let z2 = library::cyclic(2).unwrap();
        let i1 = Cube::iota(1, &z2).unwrap();
        assert_eq!(i1.vertex(0).order(), 1);
        assert_eq!(i1.edge(1, 0).kernel().order(), 2);
        let i2 = Cube::iota(2, &s3).unwrap();
        assert_eq!(i2.vertices().iter().map(|g| g.order()).collect::<Vec<_>>(), vec![1, 1, 1, 6]);
    }

    #[test]
    fn extension_examples() {
        let z2 = library::cyclic(2).unwrap();
        let surj = Cube::arrow(Groups, GroupHom::zero(&z2, &FinGroup::trivial()));
        assert!(surj.is_n_fold_extension().unwrap());
        let inj = Cube::arrow(Groups, GroupHom::zero(&FinGroup::trivial(), &z2));
        assert!(!inj.is_n_fold_extension().unwrap());

        assert!(projection_square().is_n_fold_extension().unwrap());
        assert!(d4_square().is_n_fold_extension().unwrap());
        assert!(!diagonal_square().is_n_fold_extension().unwrap());
        assert!(z2_cubed_coordinates().is_n_fold_extension().unwrap());
    }

    #[test]
    fn projection_square_matches_square_comparison() {
        let sq = projection_square().to_square().unwrap();
        let (r, pb) = hom::comparison_to_pullback(&sq).unwrap();
        assert!(r.is_isomorphism());
        assert_eq!(pb.group.order(), 4);
    }

    #[test]
    fn extension_status_is_symmetric_on_examples() {
        for cube in [projection_square(), d4_square(), diagonal_square(), z2_cubed_coordinates()] {
            let expect = cube.is_n_fold_extension().unwrap();
            for i in 0..cube.dim() {
                assert_eq!(cube.is_extension_via(i).unwrap(), expect);
                assert_eq!(cube.is_extension_via_rho(i).unwrap(), expect);
            }
        }
        let c = z2_cubed_coordinates();
        for i in 0..3 {
            for j in 0..2 {
                assert!(c.delta_delta_status(i, j).unwrap());
            }
        }
    }

    #[test]
    fn klein_lattice_in_three_directions_is_not_an_extension() {
        // three order-2 subgroups of Klein: any two already generate it
        let v = library::klein().unwrap();
        let ks: Vec<Subgroup> = (1..4).map(|x| Subgroup::generated(&v, [x]).unwrap()).collect();
        let c = Cube::quotient_lattice(&v, &ks).unwrap();
        assert!(!c.is_n_fold_extension().unwrap());
        for i in 0..3 {
            assert!(!c.is_extension_via(i).unwrap());
        }
    }

    #[test]
    fn mutation_breaks_extension() {
        for cube in [d4_square(), z2_cubed_coordinates()] {
            let m = cube.mutated().unwrap();
            assert!(!m.is_n_fold_extension().unwrap());
        }
    }

    #[test]
    fn kernel_examples() {
        let sq = projection_square();
        let (k, incl) = cube_kernel(&sq.delta(0).unwrap()).unwrap();
        assert_eq!(k.dim(), 1);
        // K[p0] maps isomorphically onto the kernel of Z2 -> 1
        assert_eq!(k.vertex(1).order(), 2);
        assert_eq!(k.vertex(0).order(), 2);
        assert!(k.edge(1, 0).is_isomorphism());
        assert!(incl.components().iter().all(|c| c.is_injective()));

        let d4 = d4_square();
        let id = CubeCategory::new(Groups, 2).identity(&d4);
        let (k, _) = cube_kernel(&id).unwrap();
        assert!(k.vertices().iter().all(|g| g.is_trivial()));
    }

    #[test]
    fn kernel_pair_is_vertexwise() {
        let sq = d4_square();
        let f = sq.delta(1).unwrap();
        let kp = cube_kernel_pair(&f).unwrap();
        for s in 0..2 {
            let direct = hom::kernel_pair(f.component(s)).unwrap();
            assert_eq!(**kp.apex.vertex(s), *direct.group);
        }
    }

    #[test]
    fn square_round_trip() {
        let sq = d4_square();
        let back = Cube::from_square(&sq.to_square().unwrap()).unwrap();
        assert!(back.same_as(&sq));
    }
}
