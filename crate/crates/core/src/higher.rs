//! Higher centrality: the brackets `[A]ₙ` of an n-fold extension by the
//! commutator formula and by recursion through kernel pairs, n-fold central
//! extensions, and the reflector `Iₙ`.

use std::sync::Arc;

use crate::birkhoff::BirkhoffDatum;
use crate::category::{Category, Groups};
use crate::cube::{arrows, cube_kernel_pair, Cube, CubeMorphism};
use crate::error::{Error, Result};
use crate::group::{FinGroup, Subgroup};
use crate::hom::{self, factor_through_quotient, quotient, GroupHom, Square};
use crate::limits;

/// Both computations of `[A]ₙ`.
#[derive(Debug, Clone)]
pub struct BracketReport {
    /// `None` when the datum has no explicit formula.
    pub explicit: Option<Subgroup>,
    /// The categorical bracket through `δ_i`, one entry per direction.
    pub categorical: Vec<Subgroup>,
    pub agree: bool,
}

/// `∏_{S⊆n} [∩_{i∈S} Kᵢ, ∩_{i∉S} Kᵢ]`, with empty intersections equal to the top.
pub fn bracket_from_kernels(top: &Arc<FinGroup>, kernels: &[Subgroup]) -> Result<Subgroup> {
    let n = kernels.len();
    let whole = Subgroup::whole(top);
    let meet = |mask: usize| -> Result<Subgroup> {
        let mut acc = whole.clone();
        for (i, k) in kernels.iter().enumerate() {
            if mask >> i & 1 == 1 {
                acc = acc.intersection(k)?;
            }
        }
        Ok(acc)
    };
    let full = (1usize << n) - 1;
    let mut product = Subgroup::trivial(top);
    for s in 0..=full {
        let c = meet(s)?.commutator(&meet(full & !s)?)?;
        product = product.product(&c)?;
    }
    Ok(product)
}

fn require_extension(a: &Cube<Groups>) -> Result<()> {
    if a.is_n_fold_extension()? {
        Ok(())
    } else {
        Err(Error::NotAnExtension(format!("{}-cube", a.dim())))
    }
}

fn require_bracket_dim(n: usize) -> Result<()> {
    if n > limits::BRACKET_DIM_CAP {
        Err(Error::DimCapExceeded {
            dim: n,
            cap: limits::BRACKET_DIM_CAP,
        })
    } else {
        Ok(())
    }
}

/// The commutator formula for `[A]ₙ`, available for `Ab` only.
pub fn bracket_n_explicit(a: &Cube<Groups>, datum: BirkhoffDatum) -> Result<Subgroup> {
    if datum != BirkhoffDatum::Ab {
        return Err(Error::Unsupported(format!(
            "no explicit bracket formula for {datum}"
        )));
    }
    require_extension(a)?;
    bracket_from_kernels(a.top(), &a.top_kernels())
}

/// `[Z]_m` at the top of an m-cube, without the extension check: the
/// radical for `m = 0`, the commutator formula for `Ab`, the recursion otherwise.
fn level_radical(z: &Cube<Groups>, datum: BirkhoffDatum) -> Result<Subgroup> {
    let rad = match (z.dim(), datum) {
        (0, _) => datum.radical(z.top()),
        (_, BirkhoffDatum::Ab) => bracket_from_kernels(z.top(), &z.top_kernels())?,
        (m, _) => categorical_unchecked(z, datum, m - 1)?,
    };
    // The unit Z → I Z only touches the top vertex: the radical must lie in
    // every kernel out of the top, or the unit would be nontrivial elsewhere.
    for (i, k) in z.top_kernels().iter().enumerate() {
        if !rad.is_subset_of(k) {
            let vertex = crate::cube::fmt_subset(z.full() & !(1 << i));
            return Err(Error::NotIotaShaped(vertex));
        }
    }
    Ok(rad)
}

fn categorical_unchecked(a: &Cube<Groups>, datum: BirkhoffDatum, i: usize) -> Result<Subgroup> {
    let n = a.dim();
    require_bracket_dim(n)?;
    if n == 0 {
        return Ok(datum.radical(a.top()));
    }
    let f = a.delta(i)?;
    let kp = cube_kernel_pair(&f)?;
    let r = &kp.apex;
    let rad = level_radical(r, datum)?;
    let top = r.full();
    let (pi1, pi2) = (kp.left.component(top), kp.right.component(top));
    let e = pi1.codomain().identity();
    let image: Vec<usize> = rad
        .members()
        .iter()
        .filter(|&&p| pi1.apply(p) == e)
        .map(|&p| pi2.apply(p))
        .collect();
    let bracket = Subgroup::generated(a.top(), image.iter().copied())?;
    let mut distinct = image;
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != bracket.order() || !bracket.is_normal() {
        return Err(Error::AgreementFailure(
            "categorical bracket is not a normal subgroup of the top vertex".into(),
        ));
    }
    Ok(bracket)
}

/// `[A]ₙ` as `π₂(K[[π₁]])` for the kernel pair of `δ_i A` in (n−1)-cubes,
/// with the level-(n−1) radical of that kernel pair.
pub fn bracket_n_categorical(a: &Cube<Groups>, datum: BirkhoffDatum, i: usize) -> Result<Subgroup> {
    require_bracket_dim(a.dim())?;
    require_extension(a)?;
    if a.dim() > 0 && i >= a.dim() {
        return Err(Error::IndexOutOfRange { index: i, dim: a.dim() });
    }
    categorical_unchecked(a, datum, i)
}

/// Both brackets, the categorical one through every direction.
pub fn bracket_report(a: &Cube<Groups>, datum: BirkhoffDatum) -> Result<BracketReport> {
    require_bracket_dim(a.dim())?;
    require_extension(a)?;
    let explicit = match datum {
        BirkhoffDatum::Ab => Some(bracket_from_kernels(a.top(), &a.top_kernels())?),
        _ => None,
    };
    let categorical = (0..a.dim().max(1))
        .map(|i| categorical_unchecked(a, datum, i))
        .collect::<Result<Vec<_>>>()?;
    let first = &categorical[0];
    let agree = categorical.iter().all(|c| c == first) && explicit.as_ref().is_none_or(|e| e == first);
    Ok(BracketReport {
        explicit,
        categorical,
        agree,
    })
}

/// `[K₀, K₁] = 1` and `[K₀ ∩ K₁, A₂] = 1` for a double extension.
pub fn janelidze_criterion(a: &Cube<Groups>) -> Result<bool> {
    if a.dim() != 2 {
        return Err(Error::ShapeMismatch(format!("expected a square, got dimension {}", a.dim())));
    }
    require_extension(a)?;
    let k = a.top_kernels();
    let meet = k[0].intersection(&k[1])?;
    Ok(k[0].commutator(&k[1])?.is_trivial() && meet.commutator(&Subgroup::whole(a.top()))?.is_trivial())
}

/// Centrality of `δ_{n−1}A` relative to the level-(n−1) reflector, tested as
/// normality: the unit square at the first kernel-pair projection is a
/// pullback. Only the top vertex of that square can fail.
pub fn is_n_fold_central_via_normality(a: &Cube<Groups>, datum: BirkhoffDatum) -> Result<bool> {
    let n = a.dim();
    require_bracket_dim(n)?;
    require_extension(a)?;
    if n == 0 {
        return Ok(datum.radical(a.top()).is_trivial());
    }
    let f = a.delta(n - 1)?;
    let kp = cube_kernel_pair(&f)?;
    let top = kp.apex.full();
    let rad_r = level_radical(&kp.apex, datum)?;
    let rad_x = level_radical(f.domain(), datum)?;
    let pi1 = kp.left.component(top);
    if !pi1.image_of(&rad_r)?.is_subset_of(&rad_x) {
        return Err(Error::RadicalNotFunctorial("first kernel-pair projection".into()));
    }
    let eta_r = quotient(&rad_r)?.projection;
    let eta_x = quotient(&rad_x)?.projection;
    let i_pi1 = factor_through_quotient(&eta_r, &eta_x.compose(pi1)?)?;
    let sq = Square {
        top: eta_r,
        left: pi1.clone(),
        right: i_pi1,
        bottom: eta_x,
    };
    let (r, _) = hom::comparison_to_pullback(&sq)?;
    Ok(r.is_isomorphism())
}

/// n-fold centrality: trivial bracket, checked against the normality route.
pub fn is_n_fold_central(a: &Cube<Groups>, datum: BirkhoffDatum) -> Result<bool> {
    require_bracket_dim(a.dim())?;
    require_extension(a)?;
    let by_bracket = match datum {
        BirkhoffDatum::Ab => bracket_from_kernels(a.top(), &a.top_kernels())?.is_trivial(),
        _ => categorical_unchecked(a, datum, a.dim().saturating_sub(1))?.is_trivial(),
    };
    let by_normality = is_n_fold_central_via_normality(a, datum)?;
    if by_bracket != by_normality {
        return Err(Error::AgreementFailure(format!(
            "{}-fold centrality: bracket says {by_bracket}, normality route says {by_normality}",
            a.dim()
        )));
    }
    Ok(by_bracket)
}

/// `Iₙ A` with the unit `A → IₙA`.
#[derive(Debug, Clone)]
pub struct Centralized {
    pub bracket: Subgroup,
    pub cube: Cube<Groups>,
    pub unit: CubeMorphism<Groups>,
}

/// Replaces the top vertex by `Aₙ/[A]ₙ` and keeps everything else.
pub fn centralize_n(a: &Cube<Groups>, datum: BirkhoffDatum) -> Result<Centralized> {
    require_extension(a)?;
    let bracket = match datum {
        BirkhoffDatum::Ab => bracket_from_kernels(a.top(), &a.top_kernels())?,
        _ => bracket_n_categorical(a, datum, a.dim().saturating_sub(1))?,
    };
    let full = a.full();
    if bracket.is_trivial() {
        let unit = crate::cube::CubeCategory::new(Groups, a.dim()).identity(a);
        return Ok(Centralized {
            bracket,
            cube: a.clone(),
            unit,
        });
    }
    let q = quotient(&bracket)?;
    let mut vertices = a.vertices().to_vec();
    vertices[full] = Arc::clone(&q.group);
    let cube = Cube::new(Groups, a.dim(), vertices, |t, i| {
        if t == full {
            factor_through_quotient(&q.projection, a.edge(t, i))
        } else {
            Ok(a.edge(t, i).clone())
        }
    })?;
    let components = (0..=full)
        .map(|s| {
            if s == full {
                q.projection.clone()
            } else {
                GroupHom::identity(a.vertex(s))
            }
        })
        .collect();
    let unit = CubeMorphism::new(a.clone(), cube.clone(), components)?;
    Ok(Centralized { bracket, cube, unit })
}

/// The level-1 bracket of `ρ_i A` computed in the category of arrows, for a
/// square `A`: kernel pair of arrows, the centralization radical of that
/// arrow, then the image along the second projection. Returns the top and
/// bottom components of the resulting subobject of `(ρ_i A)_{0}`.
pub fn rho_bracket(a: &Cube<Groups>, datum: BirkhoffDatum, i: usize) -> Result<(Subgroup, Subgroup)> {
    if a.dim() != 2 {
        return Err(Error::ShapeMismatch(format!("expected a square, got dimension {}", a.dim())));
    }
    require_extension(a)?;
    let r = a.rho(i)?;
    let g = r.delta(0)?;
    let square = g.component(0);
    let arr = arrows();
    let kp = arr.pullback(square, square)?;
    // the kernel pair is an arrow R₁ → R₀; its radical lives on R₁ only.
    // The categorical level-one route would square |R₁| once more.
    let rad = datum.bracket1(kp.apex.edge(1, 0))?;
    let (pi1, pi2) = (kp.left.component(1), kp.right.component(1));
    let e = pi1.codomain().identity();
    let top = Subgroup::generated(
        pi2.codomain(),
        rad.members().iter().filter(|&&p| pi1.apply(p) == e).map(|&p| pi2.apply(p)),
    )?;
    let bottom = Subgroup::trivial(kp.right.component(0).codomain());
    Ok((top, bottom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::direct_product;
    use crate::iso::are_isomorphic;
    use crate::library;

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

    fn sign_arrow() -> Cube<Groups> {
        let s3 = library::symmetric(3).unwrap();
        Cube::arrow(Groups, quotient(&Subgroup::derived(&s3)).unwrap().projection)
    }

    #[test]
    fn explicit_bracket_examples() {
        let ab = BirkhoffDatum::Ab;
        let s = sign_arrow();
        let direct = s.a(0).kernel().commutator(&Subgroup::whole(s.top())).unwrap();
        assert_eq!(bracket_n_explicit(&s, ab).unwrap(), direct);
        assert!(bracket_n_explicit(&projection_square(), ab).unwrap().is_trivial());
        let d4 = d4_square();
        assert_eq!(bracket_n_explicit(&d4, ab).unwrap(), library::d4_center(d4.top()));
        assert!(matches!(
            bracket_n_explicit(&d4, BirkhoffDatum::AbMod(2)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn categorical_bracket_examples() {
        let ab = BirkhoffDatum::Ab;
        let s = sign_arrow();
        assert_eq!(
            bracket_n_categorical(&s, ab, 0).unwrap(),
            ab.bracket1_categorical(s.a(0)).unwrap()
        );
        assert!(bracket_n_categorical(&projection_square(), ab, 0).unwrap().is_trivial());
        let d4 = d4_square();
        for i in 0..2 {
            assert_eq!(bracket_n_categorical(&d4, ab, i).unwrap(), library::d4_center(d4.top()));
        }
        let report = bracket_report(&d4, ab).unwrap();
        assert!(report.agree);
    }

    #[test]
    fn brackets_agree_on_all_small_double_extensions() {
        for (_, g) in library::up_to_order(8) {
            for c in crate::harness::enumerate_double_extensions(&g).unwrap() {
                let report = bracket_report(&c, BirkhoffDatum::Ab).unwrap();
                assert!(report.agree, "{}", g.label());
            }
        }
    }

    #[test]
    fn rejects_non_extension() {
        let z2 = library::cyclic(2).unwrap();
        let one = FinGroup::trivial();
        let id = GroupHom::identity(&z2);
        let to_one = GroupHom::zero(&z2, &one);
        let diag = Cube::from_square(&Square::new(id.clone(), id, to_one.clone(), to_one).unwrap()).unwrap();
        assert!(matches!(bracket_n_explicit(&diag, BirkhoffDatum::Ab), Err(Error::NotAnExtension(_))));
        assert!(matches!(
            bracket_n_categorical(&diag, BirkhoffDatum::Ab, 0),
            Err(Error::NotAnExtension(_))
        ));
    }

    #[test]
    fn centrality_examples() {
        let ab = BirkhoffDatum::Ab;
        assert!(is_n_fold_central(&projection_square(), ab).unwrap());
        assert!(!is_n_fold_central(&d4_square(), ab).unwrap());
        assert!(janelidze_criterion(&projection_square()).unwrap());
        assert!(!janelidze_criterion(&d4_square()).unwrap());

        // K[a0] trivial: a0 is an isomorphism
        let s3 = library::symmetric(3).unwrap();
        let triv = Subgroup::trivial(&s3);
        let c = Cube::quotient_lattice(&s3, &[triv, Subgroup::derived(&s3)]).unwrap();
        assert!(is_n_fold_central(&c, ab).unwrap());
    }

    #[test]
    fn centrality_at_level_one_matches_birkhoff() {
        for (_, g) in library::up_to_order(12) {
            for f in crate::harness::enumerate_extensions_from(&g).unwrap() {
                let c = Cube::arrow(Groups, f.clone());
                for d in [BirkhoffDatum::Ab, BirkhoffDatum::AbMod(2)] {
                    assert_eq!(is_n_fold_central(&c, d).unwrap(), d.is_central_extension(&f).unwrap());
                }
            }
        }
    }

    #[test]
    fn centralize_examples() {
        let ab = BirkhoffDatum::Ab;
        let sq = projection_square();
        let c = centralize_n(&sq, ab).unwrap();
        assert!(c.cube.same_as(&sq));

        let c = centralize_n(&d4_square(), ab).unwrap();
        assert!(are_isomorphic(c.cube.top(), &library::klein().unwrap()).unwrap());
        assert!(c.cube.is_n_fold_extension().unwrap());
        assert!(is_n_fold_central(&c.cube, ab).unwrap());

        let c = centralize_n(&sign_arrow(), ab).unwrap();
        assert_eq!(c.cube.top().order(), 2);
        assert!(c.cube.a(0).is_isomorphism());
    }

    #[test]
    fn centralize_is_idempotent() {
        let ab = BirkhoffDatum::Ab;
        let once = centralize_n(&d4_square(), ab).unwrap().cube;
        let twice = centralize_n(&once, ab).unwrap().cube;
        assert!(twice.same_as(&once));
    }

    #[test]
    fn rho_bracket_is_iota_of_the_square_bracket() {
        for c in [projection_square(), d4_square()] {
            let b = bracket_n_explicit(&c, BirkhoffDatum::Ab).unwrap();
            for i in 0..2 {
                let (top, bottom) = rho_bracket(&c, BirkhoffDatum::Ab, i).unwrap();
                assert_eq!(top, b);
                assert!(bottom.is_trivial());
            }
        }
    }

    #[test]
    fn three_cube_brackets_agree() {
        let g = library::elementary_abelian2(3).unwrap();
        let ks: Vec<Subgroup> = [4, 2, 1].iter().map(|&x| Subgroup::generated(&g, [x]).unwrap()).collect();
        let c = Cube::quotient_lattice(&g, &ks).unwrap();
        let r = bracket_report(&c, BirkhoffDatum::Ab).unwrap();
        assert!(r.agree);
        assert!(is_n_fold_central(&c, BirkhoffDatum::Ab).unwrap());

        let d4 = library::dihedral(4).unwrap();
        let (rot, klein) = library::d4_rotations_and_klein(&d4);
        let center = library::d4_center(&d4);
        let c = Cube::quotient_lattice(&d4, &[rot, klein, center]);
        if let Ok(c) = c {
            if c.is_n_fold_extension().unwrap() {
                assert!(bracket_report(&c, BirkhoffDatum::Ab).unwrap().agree);
            }
        }
    }
}
