//! Registered properties, run over enumerated and seeded random data.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::birkhoff::BirkhoffDatum;
use crate::category::{Category, Groups};
use crate::cube::{arrows, cube_kernel, shift_index, Cube, CubeMorphism};
use crate::error::Result;
use crate::group::{FinGroup, Subgroup};
use crate::harness::enumerate::{enumerate_double_extensions, enumerate_extensions_from, enumerate_normal_subgroups};
use crate::harness::random::{pool, random_cube_with, PoolEntry};
use crate::hom::{direct_product, factor_through_quotient, quotient, GroupHom};
use crate::homology::{abelianization_invariants, integral_homology, AbelianInvariants};
use crate::{higher, hopf, library};

/// Outcome of one property over all its cases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyRunReport {
    pub property: String,
    pub attempted: usize,
    pub passed: usize,
    /// The first failing case in case order.
    pub counterexample: Option<Value>,
    pub seed: u64,
}

impl PropertyRunReport {
    pub fn ok(&self) -> bool {
        self.passed == self.attempted
    }
}

/// Random cases per randomized property when no budget is given.
pub const DEFAULT_BUDGET: usize = 600;
/// Largest top-vertex order for randomized cubes.
pub const RANDOM_MAX_ORDER: usize = 16;
/// Largest domain order for the enumerated extension properties.
pub const ENUM_MAX_ORDER: usize = 16;
const DOUBLE_EXT_MAX_ORDER: usize = 8;

type Check = Result<Option<Value>>;

pub struct Property {
    pub id: &'static str,
    pub about: &'static str,
    run: fn(u64, usize) -> PropertyRunReport,
}

pub fn registry() -> &'static [Property] {
    &[
        Property { id: "index-shift", about: "s_j s_i = s_i s_{j-1} for i < j <= 6", run: index_shift },
        Property { id: "shiftcommutes", about: "delta/rho commutation on random 3-cubes", run: shiftcommutes },
        Property { id: "symmetry-n2", about: "extension status of squares via either direction", run: symmetry_n2 },
        Property { id: "symmetry-n3", about: "3-cubes: status via delta_i, delta_j delta_i, brackets", run: symmetry_n3 },
        Property { id: "rho", about: "A is an extension iff rho_i A is one over arrows", run: rho },
        Property { id: "e1-axioms", about: "double extensions form a class of extensions", run: e1_axioms },
        Property { id: "rotation", about: "double extension iff the kernel map is surjective", run: rotation },
        Property { id: "central-equivalence", about: "normality route iff kernel in the centre", run: central_equivalence },
        Property { id: "central-implies-normal", about: "trivial => normal => central, both data", run: chain },
        Property { id: "strongly-birkhoff", about: "unit naturality squares are double extensions", run: strongly_birkhoff },
        Property { id: "double-central", about: "commutator criterion iff normality route; brackets agree", run: double_central },
        Property { id: "rho-bracket", about: "level-1 bracket of rho_i A is iota of the square bracket", run: rho_bracket },
        Property { id: "centralize-n", about: "I_n is idempotent, central, universal", run: centralize_n },
        Property { id: "universality", about: "[K,A] is the least central-izing normal subgroup", run: universality },
        Property { id: "hopf-dual", about: "comparison kernel iso to the Hopf quotient, both data", run: hopf_dual },
        Property { id: "hopf-symmetry", about: "Delta_n invariant under permuting directions", run: hopf_symmetry },
        Property { id: "oracle-h1", about: "bar-complex H0, H1 against the abelianization", run: oracle_h1 },
    ]
}

/// Runs the named properties in order. An unknown id yields a failed report
/// carrying the id.
pub fn run_property_suite(ids: &[String], seed: u64, budget: usize) -> Vec<PropertyRunReport> {
    ids.iter()
        .map(|id| match registry().iter().find(|p| p.id == id.as_str()) {
            Some(p) => (p.run)(seed, budget),
            None => PropertyRunReport {
                property: id.clone(),
                attempted: 1,
                passed: 0,
                counterexample: Some(json!({ "error": "unknown property" })),
                seed,
            },
        })
        .collect()
}

pub fn all_ids() -> Vec<String> {
    registry().iter().map(|p| p.id.to_string()).collect()
}

fn stream_seed(seed: u64, id: &str) -> u64 {
    // FNV-1a over the id keeps streams of different properties apart
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed
}

fn case_rng(seed: u64, id: &str, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(seed, id));
    rng.set_stream(index as u64);
    rng
}

fn report(id: &str, seed: u64, outcomes: Vec<Check>) -> PropertyRunReport {
    let attempted = outcomes.len();
    let mut passed = 0;
    let mut counterexample = None;
    for (index, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok(None) => passed += 1,
            Ok(Some(detail)) => {
                counterexample.get_or_insert(json!({ "case": index, "detail": detail }));
            }
            Err(e) => {
                counterexample.get_or_insert(json!({ "case": index, "error": e.to_string() }));
            }
        }
    }
    PropertyRunReport {
        property: id.to_string(),
        attempted,
        passed,
        counterexample,
        seed,
    }
}

fn run_cases<T: Sync>(id: &str, seed: u64, cases: &[T], check: impl Fn(&T) -> Check + Sync) -> PropertyRunReport {
    let outcomes = cases.par_iter().map(&check).collect();
    report(id, seed, outcomes)
}

fn run_random(id: &str, seed: u64, n: usize, check: impl Fn(&mut ChaCha8Rng) -> Check + Sync) -> PropertyRunReport {
    let outcomes = (0..n)
        .into_par_iter()
        .map(|i| check(&mut case_rng(seed, id, i)))
        .collect();
    report(id, seed, outcomes)
}

fn fail_unless(ok: bool, detail: impl FnOnce() -> Value) -> Check {
    Ok(if ok { None } else { Some(detail()) })
}

fn describe_subgroup(h: &Subgroup) -> Value {
    json!(h.generators())
}

fn describe_lattice(group: &str, normals: &[Subgroup], mutated: bool) -> Value {
    json!({
        "group": group,
        "normals": normals.iter().map(describe_subgroup).collect::<Vec<_>>(),
        "mutated": mutated,
    })
}

fn describe_hom(f: &GroupHom) -> Value {
    json!({
        "domain": f.domain().label(),
        "codomain": f.codomain().label(),
        "kernel": describe_subgroup(&f.kernel()),
    })
}

fn describe_cube(c: &Cube<Groups>) -> Value {
    json!({
        "dim": c.dim(),
        "orders": c.vertices().iter().map(|g| g.order()).collect::<Vec<_>>(),
        "top_kernels": c.top_kernels().iter().map(describe_subgroup).collect::<Vec<_>>(),
    })
}

fn small_pool(max_order: usize) -> Vec<&'static PoolEntry> {
    pool().iter().filter(|e| e.group.order() <= max_order).collect()
}

/// Every quotient projection out of a library group of order at most `max_order`.
pub fn enumerated_projections(max_order: usize) -> Vec<GroupHom> {
    library::up_to_order(max_order)
        .into_iter()
        .flat_map(|(_, g)| enumerate_extensions_from(&g).expect("library groups are small"))
        .collect()
}

/// Every double extension on a library group of order at most `max_order`.
pub fn enumerated_double_extensions(max_order: usize) -> Vec<Cube<Groups>> {
    library::up_to_order(max_order)
        .into_iter()
        .flat_map(|(_, g)| enumerate_double_extensions(&g).expect("library groups are small"))
        .collect()
}

fn index_shift(seed: u64, _budget: usize) -> PropertyRunReport {
    let mut cases = Vec::new();
    for j in 1..=6 {
        for i in 0..j {
            cases.push((i, j));
        }
    }
    run_cases("index-shift", seed, &cases, |&(i, j)| {
        let ok = (0..=7).all(|k| shift_index(j, shift_index(i, k)) == shift_index(i, shift_index(j - 1, k)));
        fail_unless(ok, || json!({ "i": i, "j": j }))
    })
}

fn random_lattice(rng: &mut ChaCha8Rng, dim: usize, mutate: bool) -> Result<(Cube<Groups>, Value)> {
    let r = random_cube_with(rng, dim, RANDOM_MAX_ORDER, mutate)?;
    let d = describe_lattice(&r.group, &r.normals, mutate);
    Ok((r.cube, d))
}

fn shiftcommutes(seed: u64, budget: usize) -> PropertyRunReport {
    run_random("shiftcommutes", seed, budget.max(1), |rng| {
        let mutate = rng.gen_bool(0.25);
        let (c, d) = random_lattice(rng, 3, mutate)?;
        fail_unless(c.shift_commutation_holds()?, || d)
    })
}

fn via_all_directions(c: &Cube<Groups>) -> Result<Vec<bool>> {
    (0..c.dim()).map(|i| c.is_extension_via(i)).collect()
}

fn all_equal<T: PartialEq>(xs: &[T]) -> bool {
    xs.windows(2).all(|w| w[0] == w[1])
}

fn symmetry_square(c: &Cube<Groups>, expected: Option<bool>, d: impl FnOnce() -> Value) -> Check {
    let st = via_all_directions(c)?;
    let ok = all_equal(&st) && expected.is_none_or(|e| st[0] == e);
    fail_unless(ok, || json!({ "cube": d(), "status": st }))
}

fn symmetry_n2(seed: u64, budget: usize) -> PropertyRunReport {
    let enumerated = enumerated_double_extensions(DOUBLE_EXT_MAX_ORDER);
    let n_random = budget.max(1);
    let total = enumerated.len() + n_random + 1;
    let outcomes = (0..total)
        .into_par_iter()
        .map(|k| {
            if k < enumerated.len() {
                let c = &enumerated[k];
                symmetry_square(c, Some(true), || describe_cube(c))
            } else if k < enumerated.len() + n_random {
                let mut rng = case_rng(seed, "symmetry-n2", k);
                let mutate = rng.gen_bool(0.3);
                let (c, d) = random_lattice(&mut rng, 2, mutate)?;
                symmetry_square(&c, Some(!mutate), || d)
            } else {
                let c = diagonal_square()?;
                symmetry_square(&c, Some(false), || json!("diagonal square"))
            }
        })
        .collect();
    report("symmetry-n2", seed, outcomes)
}

/// Two identity-read legs of `Z2` over the trivial group: every side is onto,
/// the comparison into `Z2 × Z2` is not.
pub fn diagonal_square() -> Result<Cube<Groups>> {
    let z2 = library::cyclic(2)?;
    let one = FinGroup::trivial();
    let id = GroupHom::identity(&z2);
    let to_one = GroupHom::zero(&z2, &one);
    Cube::from_square(&crate::hom::Square::new(id.clone(), id, to_one.clone(), to_one)?)
}

/// A quotient-lattice cube without resampling; often not an extension.
fn raw_lattice(rng: &mut ChaCha8Rng, dim: usize) -> Result<(Cube<Groups>, Value)> {
    let entries = small_pool(RANDOM_MAX_ORDER);
    let e = entries[rng.gen_range(0..entries.len())];
    let normals: Vec<Subgroup> = (0..dim).map(|_| draw(rng, e)).collect();
    let c = Cube::quotient_lattice(&e.group, &normals)?;
    Ok((c, json!({ "raw": describe_lattice(&e.name, &normals, false) })))
}

fn symmetry_n3(seed: u64, budget: usize) -> PropertyRunReport {
    run_random("symmetry-n3", seed, budget.max(1), |rng| {
        let roll: f64 = rng.gen();
        let (c, d, expected) = if roll < 0.25 {
            let (c, d) = raw_lattice(rng, 3)?;
            (c, d, None)
        } else {
            let mutate = roll < 0.5;
            let (c, d) = random_lattice(rng, 3, mutate)?;
            (c, d, Some(!mutate))
        };
        let st = via_all_directions(&c)?;
        let mut dd = Vec::new();
        for i in 0..3 {
            for j in 0..2 {
                dd.push(c.delta_delta_status(i, j)?);
            }
        }
        let mut ok = all_equal(&st) && expected.is_none_or(|e| st[0] == e) && all_equal(&dd) && dd[0] == st[0];
        let mut agree = None;
        if ok && st[0] {
            let r = higher::bracket_report(&c, BirkhoffDatum::Ab)?;
            ok = r.agree;
            agree = Some(r.agree);
        }
        fail_unless(ok, || json!({ "cube": d, "via_delta": st, "delta_delta": dd, "brackets_agree": agree }))
    })
}

fn rho(seed: u64, budget: usize) -> PropertyRunReport {
    run_random("rho", seed, budget.max(1), |rng| {
        let dim = rng.gen_range(1..=3);
        let mutate = rng.gen_bool(0.3);
        let (c, d) = random_lattice(rng, dim, mutate)?;
        let direct = c.is_n_fold_extension()?;
        let via: Vec<bool> = (0..dim).map(|i| c.is_extension_via_rho(i)).collect::<Result<_>>()?;
        fail_unless(via.iter().all(|&v| v == direct), || {
            json!({ "cube": d, "direct": direct, "via_rho": via })
        })
    })
}

/// Quotients of one group by a family of normal subgroups, with the
/// canonical projections between them.
struct Lattice {
    quotients: Vec<(Subgroup, crate::hom::Quotient)>,
}

impl Lattice {
    fn new() -> Self {
        Lattice { quotients: Vec::new() }
    }

    fn object(&mut self, n: &Subgroup) -> Result<usize> {
        if let Some(k) = self.quotients.iter().position(|(m, _)| m == n) {
            return Ok(k);
        }
        self.quotients.push((n.clone(), quotient(n)?));
        Ok(self.quotients.len() - 1)
    }

    /// `G/N → G/M` for `N ⊆ M`.
    fn map(&mut self, n: &Subgroup, m: &Subgroup) -> Result<GroupHom> {
        let (a, b) = (self.object(n)?, self.object(m)?);
        factor_through_quotient(&self.quotients[a].1.projection, &self.quotients[b].1.projection)
    }

    /// The arrow `G/N → G/M` as a 1-cube.
    fn arrow(&mut self, n: &Subgroup, m: &Subgroup) -> Result<Cube<Groups>> {
        Ok(Cube::arrow(Groups, self.map(n, m)?))
    }

    /// The morphism of arrows `(G/N₁ → G/M₁) → (G/N₂ → G/M₂)`.
    fn morphism(&mut self, from: (&Subgroup, &Subgroup), to: (&Subgroup, &Subgroup)) -> Result<CubeMorphism<Groups>> {
        let dom = self.arrow(from.0, from.1)?;
        let cod = self.arrow(to.0, to.1)?;
        let bottom = self.map(from.1, to.1)?;
        let top = self.map(from.0, to.0)?;
        CubeMorphism::new(dom, cod, vec![bottom, top])
    }
}

fn draw(rng: &mut ChaCha8Rng, e: &PoolEntry) -> Subgroup {
    e.normals[rng.gen_range(0..e.normals.len())].clone()
}

/// Like [`draw`], but trivial with probability 2/5 so that products of
/// several draws do not fill the whole group.
fn draw_sparse(rng: &mut ChaCha8Rng, e: &PoolEntry) -> Subgroup {
    if rng.gen_bool(0.4) {
        Subgroup::trivial(&e.group)
    } else {
        draw(rng, e)
    }
}

fn product(a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    a.product(b)
}

/// `a × b` of arrows with the projection onto `a` and its section.
fn split_projection(a: &GroupHom, b: &GroupHom) -> Result<CubeMorphism<Groups>> {
    let top = direct_product(a.domain(), b.domain())?;
    let bottom = direct_product(a.codomain(), b.codomain())?;
    let nb = b.domain().order();
    let nc = b.codomain().order();
    let map = top
        .group
        .elements()
        .map(|x| a.apply(x / nb) * nc + b.apply(x % nb))
        .collect();
    let ab = GroupHom::new(Arc::clone(&top.group), Arc::clone(&bottom.group), map)?;
    let proj = CubeMorphism::new(
        Cube::arrow(Groups, ab),
        Cube::arrow(Groups, a.clone()),
        vec![bottom.proj_left.clone(), top.proj_left.clone()],
    )?;
    let section_top = GroupHom::new(
        Arc::clone(a.domain()),
        Arc::clone(&top.group),
        a.domain().elements().map(|x| x * nb + b.domain().identity()).collect(),
    )?;
    let section_bottom = GroupHom::new(
        Arc::clone(a.codomain()),
        Arc::clone(&bottom.group),
        a.codomain().elements().map(|x| x * nc + b.codomain().identity()).collect(),
    )?;
    let section = CubeMorphism::new(proj.codomain().clone(), proj.domain().clone(), vec![section_bottom, section_top])?;
    let cat = arrows();
    let back = cat.compose(&proj, &section)?;
    if !cat.same_mor(&back, &cat.identity(proj.codomain())) {
        return Err(crate::Error::AgreementFailure("section is not a section".into()));
    }
    Ok(proj)
}

/// Restriction of a morphism of arrows to the kernels of two others.
fn restrict_to_kernels(
    m: &CubeMorphism<Groups>,
    from: &CubeMorphism<Groups>,
    to: &CubeMorphism<Groups>,
) -> Result<CubeMorphism<Groups>> {
    let (k, k_incl) = cube_kernel(from)?;
    let (l, l_incl) = cube_kernel(to)?;
    let comps = (0..2)
        .map(|s| m.component(s).restrict_between_groups(k_incl.component(s), l_incl.component(s)))
        .collect::<Result<Vec<_>>>()?;
    CubeMorphism::new(k, l, comps)
}

/// One sampled E¹ configuration: the violated axioms, whether `f`, `g` and
/// `g∘f` are double extensions, and whether the short-five premise held.
struct E1Case {
    violations: Vec<&'static str>,
    ef: bool,
    eg: bool,
    egf: bool,
    five_premise: bool,
    describe: Value,
}

fn e1_case(rng: &mut ChaCha8Rng, entries: &[&PoolEntry]) -> Result<E1Case> {
    let e = entries[rng.gen_range(0..entries.len())];
    let x: Vec<Subgroup> = (0..6).map(|_| draw_sparse(rng, e)).collect();
    let (n1, m1) = (x[0].clone(), product(&x[0], &x[1])?);
    let (n2, m2) = (product(&n1, &x[2])?, product(&product(&m1, &x[2])?, &x[3])?);
    let (n3, m3) = (product(&n2, &x[4])?, product(&product(&m2, &x[4])?, &x[5])?);
    let mut lat = Lattice::new();
    let cat = arrows();
    let f = lat.morphism((&n1, &m1), (&n2, &m2))?;
    let g = lat.morphism((&n2, &m2), (&n3, &m3))?;
    let gf = cat.compose(&g, &f)?;
    let (ef, eg, egf) = (cat.is_extension(&f)?, cat.is_extension(&g)?, cat.is_extension(&gf)?);
    let mut violations = Vec::new();

    if !cat.is_extension(&split_projection(f.domain().a(0), g.codomain().a(0))?)? {
        violations.push("split epimorphism");
    }
    if ef && eg && !egf {
        violations.push("composition");
    }
    if egf && !eg {
        violations.push("right cancellation");
    }
    // pullback of f along a morphism into its codomain
    let (n4, m4) = (n2.intersection(&x[4])?, m2.intersection(&product(&x[4], &x[5])?)?);
    let h = lat.morphism((&n4, &m4), (&n2, &m2))?;
    let cone = cat.pullback(&f, &h)?;
    if ef && !cat.is_extension(&cone.right)? {
        violations.push("pullback stability");
    }
    // f is the cokernel of its kernel, which is admissible iff f is an extension
    let (k, _) = cube_kernel(&f)?;
    if k.is_n_fold_extension()? != ef {
        violations.push("cokernel");
    }
    // short five on g∘f = g ∘ f with the kernel map K[g∘f] → K[g]
    let kmap = restrict_to_kernels(&f, &gf, &g)?;
    let five_premise = egf && cat.is_extension(&kmap)?;
    if five_premise && !ef {
        violations.push("short five");
    }
    Ok(E1Case {
        violations,
        ef,
        eg,
        egf,
        five_premise,
        describe: json!({ "group": e.name, "normals": x.iter().map(describe_subgroup).collect::<Vec<_>>() }),
    })
}

fn e1_axioms(seed: u64, budget: usize) -> PropertyRunReport {
    let entries = small_pool(12);
    run_random("e1-axioms", seed, budget.max(500), |rng| {
        let c = e1_case(rng, &entries)?;
        fail_unless(c.violations.is_empty(), || {
            json!({
                "case": c.describe, "violations": c.violations,
                "f": c.ef, "g": c.eg, "gf": c.egf, "short_five_premise": c.five_premise,
            })
        })
    })
}

/// Double-extension status of a random lattice square and surjectivity of its kernel map.
fn rotation_case(rng: &mut ChaCha8Rng, entries: &[&PoolEntry]) -> Result<(bool, bool, Value)> {
    let e = entries[rng.gen_range(0..entries.len())];
    let x: Vec<Subgroup> = (0..4).map(|_| draw_sparse(rng, e)).collect();
    let (n1, m1) = (x[0].clone(), product(&x[0], &x[1])?);
    let (n2, m2) = (product(&n1, &x[2])?, product(&product(&m1, &x[2])?, &x[3])?);
    let mut lat = Lattice::new();
    let f = lat.morphism((&n1, &m1), (&n2, &m2))?;
    let double = arrows().is_extension(&f)?;
    // K[f₁] → K[f₀] induced by the arrow a
    let (f1, f0) = (f.component(1), f.component(0));
    let a = f.domain().a(0);
    let k_onto = a.image_of(&f1.kernel())? == f0.kernel();
    Ok((double, k_onto, json!({ "group": e.name, "normals": x.iter().map(describe_subgroup).collect::<Vec<_>>() })))
}

fn rotation(seed: u64, budget: usize) -> PropertyRunReport {
    let entries = small_pool(16);
    run_random("rotation", seed, budget.max(200), |rng| {
        let (double, k_onto, d) = rotation_case(rng, &entries)?;
        fail_unless(double == k_onto, || {
            json!({ "case": d, "double_extension": double, "kernel_map_onto": k_onto })
        })
    })
}

fn central_equivalence(seed: u64, _budget: usize) -> PropertyRunReport {
    let cases = enumerated_projections(ENUM_MAX_ORDER);
    run_cases("central-equivalence", seed, &cases, |f| {
        let normal = BirkhoffDatum::Ab.is_normal_extension(f)?;
        let classical = f.kernel().is_subset_of(&Subgroup::center(f.domain()));
        fail_unless(normal == classical, || {
            json!({ "hom": describe_hom(f), "normal": normal, "kernel_central": classical })
        })
    })
}

const DATA: [BirkhoffDatum; 2] = [BirkhoffDatum::Ab, BirkhoffDatum::AbMod(2)];

fn chain(seed: u64, _budget: usize) -> PropertyRunReport {
    let cases = enumerated_projections(ENUM_MAX_ORDER);
    run_cases("central-implies-normal", seed, &cases, |f| {
        for d in DATA {
            let trivial = d.is_trivial_extension(f)?;
            let normal = d.is_normal_extension(f)?;
            let central = d.is_central_extension(f)?;
            if (trivial && !normal) || (normal && !central) {
                return Ok(Some(json!({
                    "hom": describe_hom(f), "datum": d.to_string(),
                    "trivial": trivial, "normal": normal, "central": central,
                })));
            }
        }
        Ok(None)
    })
}

fn strongly_birkhoff(seed: u64, _budget: usize) -> PropertyRunReport {
    let cases = enumerated_projections(ENUM_MAX_ORDER);
    run_cases("strongly-birkhoff", seed, &cases, |f| {
        for d in DATA {
            if !d.is_strongly_birkhoff_on(f)? {
                return Ok(Some(json!({ "hom": describe_hom(f), "datum": d.to_string() })));
            }
            // the comparison into the trivialization is onto
            let t = d.trivialize(f)?;
            if !t.comparison.is_surjective() {
                return Ok(Some(json!({ "hom": describe_hom(f), "datum": d.to_string(), "comparison": "not onto" })));
            }
        }
        Ok(None)
    })
}

fn double_central(seed: u64, _budget: usize) -> PropertyRunReport {
    let cases = enumerated_double_extensions(ENUM_MAX_ORDER);
    run_cases("double-central", seed, &cases, |c| {
        let janelidze = higher::janelidze_criterion(c)?;
        let categorical = higher::is_n_fold_central_via_normality(c, BirkhoffDatum::Ab)?;
        let explicit = higher::bracket_n_explicit(c, BirkhoffDatum::Ab)?;
        let b0 = higher::bracket_n_categorical(c, BirkhoffDatum::Ab, 0)?;
        let b1 = higher::bracket_n_categorical(c, BirkhoffDatum::Ab, 1)?;
        let ok = janelidze == categorical && janelidze == explicit.is_trivial() && explicit == b0 && explicit == b1;
        fail_unless(ok, || {
            json!({
                "cube": describe_cube(c), "janelidze": janelidze, "normality_route": categorical,
                "explicit": describe_subgroup(&explicit),
                "categorical": [describe_subgroup(&b0), describe_subgroup(&b1)],
            })
        })
    })
}

fn rho_bracket(seed: u64, budget: usize) -> PropertyRunReport {
    let enumerated = enumerated_double_extensions(DOUBLE_EXT_MAX_ORDER);
    let n_random = budget.max(1) / 4;
    let total = enumerated.len() + n_random;
    let outcomes = (0..total)
        .into_par_iter()
        .map(|k| {
            let (c, d) = if k < enumerated.len() {
                (enumerated[k].clone(), describe_cube(&enumerated[k]))
            } else {
                random_lattice(&mut case_rng(seed, "rho-bracket", k), 2, false)?
            };
            let b = higher::bracket_n_explicit(&c, BirkhoffDatum::Ab)?;
            for i in 0..2 {
                let (top, bottom) = higher::rho_bracket(&c, BirkhoffDatum::Ab, i)?;
                if top != b || !bottom.is_trivial() {
                    return Ok(Some(json!({ "cube": d, "direction": i })));
                }
            }
            Ok(None)
        })
        .collect();
    report("rho-bracket", seed, outcomes)
}

/// Quotients of the top vertex by normal subgroups inside every top kernel.
fn top_quotient(c: &Cube<Groups>, n: &Subgroup) -> Result<Cube<Groups>> {
    let q = quotient(n)?;
    let full = c.full();
    let mut vertices = c.vertices().to_vec();
    vertices[full] = Arc::clone(&q.group);
    Cube::new(Groups, c.dim(), vertices, |t, i| {
        if t == full {
            factor_through_quotient(&q.projection, c.edge(t, i))
        } else {
            Ok(c.edge(t, i).clone())
        }
    })
}

fn centralize_n(seed: u64, budget: usize) -> PropertyRunReport {
    let enumerated = enumerated_double_extensions(DOUBLE_EXT_MAX_ORDER);
    let n_random = budget.max(1) / 4;
    let total = enumerated.len() + n_random;
    let outcomes = (0..total)
        .into_par_iter()
        .map(|k| {
            let (c, d) = if k < enumerated.len() {
                (enumerated[k].clone(), describe_cube(&enumerated[k]))
            } else {
                let mut rng = case_rng(seed, "centralize-n", k);
                let dim = rng.gen_range(1..=3);
                random_lattice(&mut rng, dim, false)?
            };
            let ab = BirkhoffDatum::Ab;
            let once = higher::centralize_n(&c, ab)?;
            let twice = higher::centralize_n(&once.cube, ab)?;
            let mut ok = once.cube.is_n_fold_extension()?
                && higher::is_n_fold_central(&once.cube, ab)?
                && twice.cube.same_as(&once.cube);
            // universality over quotients of the top vertex, on small cubes
            if ok && c.dim() == 2 && c.top().order() <= DOUBLE_EXT_MAX_ORDER {
                let mut meet = Subgroup::whole(c.top());
                for kern in c.top_kernels() {
                    meet = meet.intersection(&kern)?;
                }
                for n in enumerate_normal_subgroups(c.top())? {
                    if !n.is_subset_of(&meet) {
                        continue;
                    }
                    let q = top_quotient(&c, &n)?;
                    if q.is_n_fold_extension()? && higher::is_n_fold_central(&q, ab)? && !once.bracket.is_subset_of(&n) {
                        ok = false;
                    }
                }
            }
            fail_unless(ok, || d)
        })
        .collect();
    report("centralize-n", seed, outcomes)
}

fn universality(seed: u64, _budget: usize) -> PropertyRunReport {
    let cases = enumerated_projections(ENUM_MAX_ORDER);
    run_cases("universality", seed, &cases, |f| {
        let a = f.domain();
        let k = f.kernel();
        let bracket = k.commutator(&Subgroup::whole(a))?;
        let mut least_is_central = false;
        for n in enumerate_normal_subgroups(a)? {
            if !n.is_subset_of(&k) {
                continue;
            }
            let q = quotient(&n)?;
            let induced = factor_through_quotient(&q.projection, f)?;
            let central = BirkhoffDatum::Ab.is_central_extension(&induced)?;
            if central && !bracket.is_subset_of(&n) {
                return Ok(Some(json!({ "hom": describe_hom(f), "normal": describe_subgroup(&n) })));
            }
            if n == bracket {
                least_is_central = central;
            }
        }
        fail_unless(least_is_central, || json!({ "hom": describe_hom(f), "bracket_not_central": true }))
    })
}

fn hopf_dual(seed: u64, _budget: usize) -> PropertyRunReport {
    let cases = enumerated_projections(ENUM_MAX_ORDER);
    run_cases("hopf-dual", seed, &cases, |f| {
        for d in DATA {
            let kernel = hopf::hopf_via_trivialization(f, d)?;
            let direct = hopf::hopf_delta(f, d)?;
            if kernel.order() != direct.quotient.order() {
                return Ok(Some(json!({ "hom": describe_hom(f), "datum": d.to_string() })));
            }
        }
        Ok(None)
    })
}

fn hopf_symmetry(seed: u64, budget: usize) -> PropertyRunReport {
    run_random("hopf-symmetry", seed, (budget.max(1) / 2).max(1), |rng| {
        let dim = rng.gen_range(2..=3);
        let r = random_cube_with(rng, dim, RANDOM_MAX_ORDER, false)?;
        let base = hopf::hopf_delta_n(&r.cube, BirkhoffDatum::Ab)?;
        let mut perm: Vec<usize> = (0..dim).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), rng);
        let permuted: Vec<Subgroup> = perm.iter().map(|&p| r.normals[p].clone()).collect();
        let c = Cube::quotient_lattice(&r.cube.top().clone(), &permuted)?;
        if !c.is_n_fold_extension()? {
            return Ok(Some(json!({ "cube": describe_lattice(&r.group, &r.normals, false), "permuted_not_extension": perm })));
        }
        let other = hopf::hopf_delta_n(&c, BirkhoffDatum::Ab)?;
        fail_unless(
            other.numerator == base.numerator && other.denominator == base.denominator,
            || json!({ "cube": describe_lattice(&r.group, &r.normals, false), "permutation": perm }),
        )
    })
}

fn oracle_h1(seed: u64, _budget: usize) -> PropertyRunReport {
    let cases = library::up_to_order(24);
    run_cases("oracle-h1", seed, &cases, |(name, g)| {
        let h0 = integral_homology(g, 0)?;
        let h1 = integral_homology(g, 1)?;
        let ab = abelianization_invariants(g)?;
        let z = AbelianInvariants { divisors: vec![], free_rank: 1 };
        fail_unless(h0 == z && h1 == ab, || json!({ "group": name, "h0": h0, "h1": h1, "abelianization": ab }))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_list_gives_empty_report() {
        assert!(run_property_suite(&[], 1, 10).is_empty());
    }

    #[test]
    fn unknown_property_fails() {
        let r = run_property_suite(&["no-such".into()], 1, 10);
        assert!(!r[0].ok());
    }

    #[test]
    fn quick_properties_pass() {
        for id in ["index-shift", "symmetry-n2", "central-implies-normal", "rotation", "rho"] {
            let r = run_property_suite(&[id.to_string()], 7, 40);
            assert!(r[0].ok(), "{:?}", r[0]);
            assert!(r[0].attempted > 0);
        }
    }

    #[test]
    fn deterministic_reports() {
        let ids = vec!["symmetry-n3".to_string(), "e1-axioms".to_string()];
        let a = serde_json::to_string(&run_property_suite(&ids, 3, 20)).unwrap();
        let b = serde_json::to_string(&run_property_suite(&ids, 3, 20)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sampled_configurations_are_not_vacuous() {
        let entries = small_pool(12);
        let mut seen = [[0usize; 2]; 4];
        for i in 0..300 {
            let c = e1_case(&mut case_rng(5, "e1-axioms", i), &entries).unwrap();
            for (k, flag) in [c.ef, c.eg, c.egf, c.five_premise].into_iter().enumerate() {
                seen[k][flag as usize] += 1;
            }
        }
        assert!(seen.iter().all(|s| s[0] > 10 && s[1] > 10), "{seen:?}");
        let entries = small_pool(16);
        let mut verdicts = [0usize; 2];
        for i in 0..300 {
            let (double, _, _) = rotation_case(&mut case_rng(5, "rotation", i), &entries).unwrap();
            verdicts[double as usize] += 1;
        }
        assert!(verdicts[0] > 10 && verdicts[1] > 10, "{verdicts:?}");
    }

    #[test]
    fn split_projection_is_double_extension() {
        let s3 = library::symmetric(3).unwrap();
        let sign = quotient(&Subgroup::derived(&s3)).unwrap().projection;
        let z4 = library::cyclic(4).unwrap();
        let to_one = GroupHom::zero(&z4, &FinGroup::trivial());
        let p = split_projection(&sign, &to_one).unwrap();
        assert!(arrows().is_extension(&p).unwrap());
    }
}
