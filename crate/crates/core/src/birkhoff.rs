//! Birkhoff subcategories of groups given by their radicals: abelianization
//! and exponent-m abelianization. Trivial, normal and central extensions,
//! and the centralization of an extension.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{same_group, FinGroup, Subgroup};
use crate::hom::{self, factor_through_quotient, kernel_pair, quotient, GroupHom, Pullback, Quotient, Square};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BirkhoffDatum {
    /// Abelian groups; radical `[A, A]`.
    Ab,
    /// Abelian groups of exponent dividing `m`; radical `[A, A]·⟨gᵐ⟩`.
    AbMod(usize),
}

impl fmt::Display for BirkhoffDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BirkhoffDatum::Ab => write!(f, "ab"),
            BirkhoffDatum::AbMod(m) => write!(f, "ab-mod:{m}"),
        }
    }
}

impl FromStr for BirkhoffDatum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        if lower == "ab" {
            return Ok(BirkhoffDatum::Ab);
        }
        if let Some(m) = lower.strip_prefix("ab-mod:") {
            let m: usize = m
                .parse()
                .map_err(|_| Error::Unsupported(format!("bad modulus in datum '{s}'")))?;
            if m == 0 {
                return Err(Error::Unsupported("modulus must be positive".into()));
            }
            return Ok(BirkhoffDatum::AbMod(m));
        }
        Err(Error::Unsupported(format!("unknown datum '{s}'")))
    }
}

/// The naturality square of `η` at `f`, with `f` and `If` as its vertical sides.
#[derive(Debug, Clone)]
pub struct Reflection {
    pub unit_domain: Quotient,
    pub unit_codomain: Quotient,
    /// `If: IA → IB`
    pub arrow: GroupHom,
}

impl Reflection {
    /// `η_A` on top, `f` on the left, `If` on the right, `η_B` at the bottom.
    pub fn square(&self, f: &GroupHom) -> Square {
        Square {
            top: self.unit_domain.projection.clone(),
            left: f.clone(),
            right: self.arrow.clone(),
            bottom: self.unit_codomain.projection.clone(),
        }
    }
}

/// `I₁f: A/N → B` with the unit component `A → A/N`.
#[derive(Debug, Clone)]
pub struct Centralization {
    pub bracket: Subgroup,
    pub unit: GroupHom,
    pub arrow: GroupHom,
}

/// `Tf: B ×_{IB} IA → B` with the comparison from `I₁f`.
#[derive(Debug, Clone)]
pub struct Trivialization {
    pub pullback: Pullback,
    /// `Tf`, the leg of the pullback towards `B`.
    pub arrow: GroupHom,
    /// `I₁f → Tf`, `[a] ↦ (f(a), η_A(a))`.
    pub comparison: GroupHom,
    pub centralization: Centralization,
}

fn require_surjective(f: &GroupHom) -> Result<()> {
    if f.is_surjective() {
        Ok(())
    } else {
        Err(Error::NotSurjective(format!(
            "{} -> {}",
            f.domain().label(),
            f.codomain().label()
        )))
    }
}

impl BirkhoffDatum {
    /// `[A]`, the kernel of the unit at `A`.
    pub fn radical(&self, a: &Arc<FinGroup>) -> Subgroup {
        match *self {
            BirkhoffDatum::Ab => Subgroup::derived(a),
            BirkhoffDatum::AbMod(m) => Subgroup::derived_and_powers(a, m),
        }
    }

    /// `η_A: A → A/[A]`.
    pub fn unit(&self, a: &Arc<FinGroup>) -> Result<Quotient> {
        quotient(&self.radical(a))
    }

    /// Fails unless `f([A]) ⊆ [B]`.
    pub fn check_functorial(&self, f: &GroupHom) -> Result<()> {
        let image = f.image_of(&self.radical(f.domain()))?;
        if image.is_subset_of(&self.radical(f.codomain())) {
            Ok(())
        } else {
            Err(Error::RadicalNotFunctorial(format!(
                "{} -> {}",
                f.domain().label(),
                f.codomain().label()
            )))
        }
    }

    /// `f` restricted to `[A] → [B]`.
    pub fn radical_restriction(&self, f: &GroupHom) -> Result<GroupHom> {
        self.check_functorial(f)?;
        let (_, src) = self.radical(f.domain()).to_group();
        let (_, dst) = self.radical(f.codomain()).to_group();
        f.restrict_between_groups(&src, &dst)
    }

    pub fn reflect(&self, f: &GroupHom) -> Result<Reflection> {
        self.check_functorial(f)?;
        let unit_domain = self.unit(f.domain())?;
        let unit_codomain = self.unit(f.codomain())?;
        let arrow = factor_through_quotient(&unit_domain.projection, &unit_codomain.projection.compose(f)?)?;
        Ok(Reflection {
            unit_domain,
            unit_codomain,
            arrow,
        })
    }

    /// The naturality square of `η` at `f` is a double extension.
    pub fn is_strongly_birkhoff_on(&self, f: &GroupHom) -> Result<bool> {
        require_surjective(f)?;
        let sq = self.reflect(f)?.square(f);
        for side in [&sq.top, &sq.left, &sq.right, &sq.bottom] {
            if !side.is_surjective() {
                return Ok(false);
            }
        }
        let (r, _) = hom::comparison_to_pullback(&sq)?;
        Ok(r.is_surjective())
    }

    /// The naturality square at `f` is a pullback. Cross-checked against the
    /// restriction `[A] → [B]` being an isomorphism.
    pub fn is_trivial_extension(&self, f: &GroupHom) -> Result<bool> {
        require_surjective(f)?;
        let sq = self.reflect(f)?.square(f);
        let (r, _) = hom::comparison_to_pullback(&sq)?;
        let via_pullback = r.is_isomorphism();
        let via_radicals = self.radical_restriction(f)?.is_isomorphism();
        if via_pullback != via_radicals {
            return Err(Error::AgreementFailure(format!(
                "trivial extension test: pullback says {via_pullback}, radical restriction says {via_radicals}"
            )));
        }
        Ok(via_pullback)
    }

    /// The first kernel-pair projection `π₁: R[f] → A` is a trivial extension.
    pub fn is_normal_extension(&self, f: &GroupHom) -> Result<bool> {
        require_surjective(f)?;
        let kp = kernel_pair(f)?;
        self.is_trivial_extension(&kp.left)
    }

    /// Central extensions are tested as normal extensions. For `Ab` the
    /// classical test `K[f] ⊆ Z(A)` is run alongside.
    pub fn is_central_extension(&self, f: &GroupHom) -> Result<bool> {
        let normal = self.is_normal_extension(f)?;
        if *self == BirkhoffDatum::Ab {
            let classical = f.kernel().is_subset_of(&Subgroup::center(f.domain()));
            if classical != normal {
                return Err(Error::AgreementFailure(format!(
                    "central extension test: normality route says {normal}, kernel in centre says {classical}"
                )));
            }
        }
        Ok(normal)
    }

    /// `[f]₁ = π₂(K[[π₁]])` computed inside the kernel pair.
    pub fn bracket1_categorical(&self, f: &GroupHom) -> Result<Subgroup> {
        require_surjective(f)?;
        let kp = kernel_pair(f)?;
        let r = &kp.group;
        let radical = self.radical(r);
        self.check_functorial(&kp.left)?;
        self.check_functorial(&kp.right)?;
        let e = f.domain().identity();
        let mut mask = vec![false; f.domain().order()];
        for &p in radical.members() {
            if kp.left.apply(p) == e {
                mask[kp.right.apply(p)] = true;
            }
        }
        let members: Vec<usize> = (0..mask.len()).filter(|&x| mask[x]).collect();
        let bracket = Subgroup::generated(f.domain(), members.iter().copied())?;
        if bracket.order() != members.len() || !bracket.is_normal() {
            return Err(Error::AgreementFailure(
                "categorical bracket is not a normal subgroup".into(),
            ));
        }
        if *self == BirkhoffDatum::Ab {
            let explicit = bracket1_explicit(f);
            if explicit != bracket {
                return Err(Error::AgreementFailure(format!(
                    "level-1 bracket: categorical has order {}, [K[f], A] has order {}",
                    bracket.order(),
                    explicit.order()
                )));
            }
        }
        Ok(bracket)
    }

    /// `[f]₁`: explicit for `Ab`, categorical otherwise.
    pub fn bracket1(&self, f: &GroupHom) -> Result<Subgroup> {
        match self {
            BirkhoffDatum::Ab => {
                require_surjective(f)?;
                Ok(bracket1_explicit(f))
            }
            BirkhoffDatum::AbMod(_) => self.bracket1_categorical(f),
        }
    }

    /// `I₁f: A/[f]₁ → B`.
    pub fn centralize(&self, f: &GroupHom) -> Result<Centralization> {
        let bracket = self.bracket1(f)?;
        centralize_by(f, bracket)
    }

    /// `Tf = B ×_{IB} IA → B` together with the comparison `I₁f → Tf`.
    pub fn trivialize(&self, f: &GroupHom) -> Result<Trivialization> {
        require_surjective(f)?;
        let refl = self.reflect(f)?;
        let pullback = hom::pullback(&refl.unit_codomain.projection, &refl.arrow)?;
        let arrow = pullback.left.clone();
        let centralization = self.centralize(f)?;
        let into_pullback = pullback.factor(f, &refl.unit_domain.projection)?;
        let comparison = factor_through_quotient(&centralization.unit, &into_pullback)?;
        Ok(Trivialization {
            pullback,
            arrow,
            comparison,
            centralization,
        })
    }
}

/// `[K[f], A]`.
pub fn bracket1_explicit(f: &GroupHom) -> Subgroup {
    f.kernel()
        .commutator(&Subgroup::whole(f.domain()))
        .expect("same parent")
}

fn centralize_by(f: &GroupHom, bracket: Subgroup) -> Result<Centralization> {
    if !same_group(bracket.parent(), f.domain()) {
        return Err(Error::ParentMismatch);
    }
    let q = quotient(&bracket)?;
    let arrow = factor_through_quotient(&q.projection, f)?;
    Ok(Centralization {
        bracket,
        unit: q.projection,
        arrow,
    })
}

/// `ab₁ f: A/[K[f], A] → B`.
pub fn centralize_explicit(f: &GroupHom) -> Result<Centralization> {
    require_surjective(f)?;
    centralize_by(f, bracket1_explicit(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::direct_product;
    use crate::iso::are_isomorphic;
    use crate::library;

    const DATA: [BirkhoffDatum; 3] = [BirkhoffDatum::Ab, BirkhoffDatum::AbMod(2), BirkhoffDatum::AbMod(3)];

    fn sign() -> GroupHom {
        let s3 = library::symmetric(3).unwrap();
        quotient(&Subgroup::derived(&s3)).unwrap().projection
    }

    fn d4_mod_rotations() -> GroupHom {
        let d4 = library::dihedral(4).unwrap();
        let (rot, _) = library::d4_rotations_and_klein(&d4);
        quotient(&rot).unwrap().projection
    }

    fn q8_mod_center() -> GroupHom {
        let q8 = library::quaternion8().unwrap();
        quotient(&Subgroup::center(&q8)).unwrap().projection
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("ab".parse::<BirkhoffDatum>().unwrap(), BirkhoffDatum::Ab);
        assert_eq!("AB-MOD:4".parse::<BirkhoffDatum>().unwrap(), BirkhoffDatum::AbMod(4));
        assert!("ab-mod:0".parse::<BirkhoffDatum>().is_err());
        assert_eq!(BirkhoffDatum::AbMod(2).to_string(), "ab-mod:2");
    }

    #[test]
    fn radical_is_normal_and_idempotent() {
        for (_, g) in library::up_to_order(24) {
            for d in DATA {
                let r = d.radical(&g);
                assert!(r.is_normal());
                let q = d.unit(&g).unwrap();
                assert!(d.radical(&q.group).is_trivial(), "{d} on {}", g.label());
            }
        }
    }

    #[test]
    fn ab_mod_radical_matches_brute_force() {
        let z12 = library::cyclic(12).unwrap();
        let r = BirkhoffDatum::AbMod(4).radical(&z12);
        assert_eq!(r.order(), 3);
        let d4 = library::dihedral(4).unwrap();
        let r = BirkhoffDatum::AbMod(2).radical(&d4);
        // Frattini subgroup of D4 is {1, r²}
        assert_eq!(r, library::d4_center(&d4));
    }

    #[test]
    fn strongly_birkhoff_examples() {
        let ab = BirkhoffDatum::Ab;
        assert!(ab.is_strongly_birkhoff_on(&sign()).unwrap());
        let s3 = library::symmetric(3).unwrap();
        assert!(ab.is_strongly_birkhoff_on(&GroupHom::identity(&s3)).unwrap());
        let z4 = library::cyclic(4).unwrap();
        let f = quotient(&Subgroup::generated(&z4, [2]).unwrap()).unwrap().projection;
        assert!(ab.is_strongly_birkhoff_on(&f).unwrap());
    }

    #[test]
    fn trivial_extension_examples() {
        let ab = BirkhoffDatum::Ab;
        let z2 = library::cyclic(2).unwrap();
        let s3 = library::symmetric(3).unwrap();
        let p = direct_product(&z2, &s3).unwrap();
        assert!(ab.is_trivial_extension(&p.proj_right).unwrap());
        assert!(!ab.is_trivial_extension(&q8_mod_center()).unwrap());
        assert!(ab.is_trivial_extension(&GroupHom::identity(&s3)).unwrap());
    }

    #[test]
    fn normal_and_central_examples() {
        let ab = BirkhoffDatum::Ab;
        let z4 = library::cyclic(4).unwrap();
        let f = quotient(&Subgroup::generated(&z4, [2]).unwrap()).unwrap().projection;
        assert!(ab.is_normal_extension(&f).unwrap());
        assert!(ab.is_central_extension(&f).unwrap());
        assert!(ab.is_normal_extension(&q8_mod_center()).unwrap());
        assert!(ab.is_central_extension(&q8_mod_center()).unwrap());
        assert!(!ab.is_normal_extension(&sign()).unwrap());
        assert!(!ab.is_central_extension(&sign()).unwrap());
    }

    #[test]
    fn rejects_non_surjection() {
        let z2 = library::cyclic(2).unwrap();
        let f = GroupHom::zero(&FinGroup::trivial(), &z2);
        assert!(matches!(BirkhoffDatum::Ab.is_trivial_extension(&f), Err(Error::NotSurjective(_))));
    }

    #[test]
    fn centralize_examples() {
        let c = centralize_explicit(&sign()).unwrap();
        assert_eq!(c.bracket.order(), 3);
        assert!(c.arrow.is_isomorphism());

        let c = centralize_explicit(&q8_mod_center()).unwrap();
        assert!(c.bracket.is_trivial());
        assert!(c.unit.is_isomorphism());

        let f = d4_mod_rotations();
        let c = centralize_explicit(&f).unwrap();
        assert_eq!(c.bracket, library::d4_center(f.domain()));
        assert!(are_isomorphic(c.arrow.domain(), &library::klein().unwrap()).unwrap());
        assert!(BirkhoffDatum::Ab.is_central_extension(&c.arrow).unwrap());
    }

    #[test]
    fn bracket1_categorical_examples() {
        let ab = BirkhoffDatum::Ab;
        assert_eq!(ab.bracket1_categorical(&sign()).unwrap().order(), 3);
        let s3 = library::symmetric(3).unwrap();
        assert!(ab.bracket1_categorical(&GroupHom::identity(&s3)).unwrap().is_trivial());
        let f = d4_mod_rotations();
        assert_eq!(ab.bracket1_categorical(&f).unwrap(), library::d4_center(f.domain()));
    }

    #[test]
    fn ab_mod_bracket_is_central_relative_to_the_datum() {
        // the centralization for AB_MOD(m) is central for that datum
        for (_, g) in library::up_to_order(12) {
            for n in crate::harness::enumerate_normal_subgroups(&g).unwrap() {
                let f = quotient(&n).unwrap().projection;
                for d in DATA {
                    let c = d.centralize(&f).unwrap();
                    assert!(d.is_normal_extension(&c.arrow).unwrap(), "{d} on {}", g.label());
                }
            }
        }
    }

    #[test]
    fn trivialize_examples() {
        let ab = BirkhoffDatum::Ab;
        let z4 = library::cyclic(4).unwrap();
        let f = quotient(&Subgroup::generated(&z4, [2]).unwrap()).unwrap().projection;
        let t = ab.trivialize(&f).unwrap();
        assert!(t.comparison.is_isomorphism());
        assert_eq!(t.arrow.domain().order(), 4);

        let t = ab.trivialize(&sign()).unwrap();
        assert_eq!(t.arrow.domain().order(), 2);
        assert!(t.arrow.is_isomorphism());

        let t = ab.trivialize(&d4_mod_rotations()).unwrap();
        assert!(are_isomorphic(t.arrow.domain(), &library::klein().unwrap()).unwrap());
        assert!(t.comparison.is_surjective());
    }

    #[test]
    fn trivialization_over_trivial_codomain_is_iso() {
        for (_, g) in library::up_to_order(16) {
            let f = GroupHom::zero(&g, &FinGroup::trivial());
            for d in DATA {
                assert!(d.trivialize(&f).unwrap().comparison.is_isomorphism());
            }
        }
    }
}
