//! Named small groups, all realized as permutation groups.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::group::{FinGroup, Subgroup};
use crate::hom::direct_product;
use crate::perm::Perm;

fn perm(degree: usize, cycles: &[&[usize]]) -> Perm {
    let owned: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
    Perm::from_cycles(degree, &owned).expect("library permutations are valid")
}

fn from_perms(label: &str, degree: usize, gens: Vec<Perm>) -> Result<Arc<FinGroup>> {
    Ok(FinGroup::from_permutation_generators(degree, &gens)?.with_label(label))
}

/// `Z_n` generated by an `n`-cycle.
pub fn cyclic(n: usize) -> Result<Arc<FinGroup>> {
    if n == 0 {
        return Err(Error::InvalidGroup("cyclic group of order 0".into()));
    }
    let cycle: Vec<usize> = (0..n).collect();
    let gens = if n == 1 { vec![] } else { vec![perm(n, &[&cycle])] };
    from_perms(&format!("Z{n}"), n, gens)
}

pub fn symmetric(n: usize) -> Result<Arc<FinGroup>> {
    if n == 0 {
        return Err(Error::InvalidGroup("symmetric group on 0 points".into()));
    }
    let cycle: Vec<usize> = (0..n).collect();
    let gens = if n == 1 {
        vec![]
    } else {
        vec![perm(n, &[&cycle]), perm(n, &[&[0, 1]])]
    };
    from_perms(&format!("S{n}"), n, gens)
}

/// `A_n` generated by the 3-cycles `(0 1 k)`.
pub fn alternating(n: usize) -> Result<Arc<FinGroup>> {
    if n == 0 {
        return Err(Error::InvalidGroup("alternating group on 0 points".into()));
    }
    let gens = (2..n).map(|k| perm(n, &[&[0, 1, k]])).collect();
    from_perms(&format!("A{n}"), n, gens)
}

/// Dihedral group of order `2n` acting on the vertices of an `n`-gon.
pub fn dihedral(n: usize) -> Result<Arc<FinGroup>> {
    if n < 3 {
        return Err(Error::InvalidGroup(format!("dihedral group needs n >= 3, got {n}")));
    }
    let cycle: Vec<usize> = (0..n).collect();
    let flips: Vec<Vec<usize>> = (1..n).filter(|&k| k < n - k).map(|k| vec![k, n - k]).collect();
    let flip_refs: Vec<&[usize]> = flips.iter().map(|c| c.as_slice()).collect();
    from_perms(&format!("D{n}"), n, vec![perm(n, &[&cycle]), perm(n, &flip_refs)])
}

pub fn quaternion8() -> Result<Arc<FinGroup>> {
    from_perms(
        "Q8",
        8,
        vec![
            perm(8, &[&[0, 1, 3, 6], &[2, 5, 7, 4]]),
            perm(8, &[&[0, 2, 3, 7], &[1, 4, 6, 5]]),
        ],
    )
}

/// Dicyclic group of order 12, `Z3 ⋊ Z4`.
pub fn dicyclic3() -> Result<Arc<FinGroup>> {
    from_perms(
        "Dic3",
        7,
        vec![perm(7, &[&[0, 1, 2]]), perm(7, &[&[0, 1], &[3, 4, 5, 6]])],
    )
}

/// Generalized quaternion group of order 16 in its regular representation.
pub fn quaternion16() -> Result<Arc<FinGroup>> {
    // Elements a^i b^j, i < 8, j < 2, with a^8 = 1, b^2 = a^4, b a b^-1 = a^-1.
    let index = |i: usize, j: usize| (i % 8) + 8 * j;
    let mul = |(i1, j1): (usize, usize), (i2, j2): (usize, usize)| -> (usize, usize) {
        // a^i1 b^j1 a^i2 b^j2 = a^(i1 ± i2) b^(j1 + j2)
        let i2 = if j1 == 1 { (8 - i2) % 8 } else { i2 };
        let mut i = i1 + i2;
        let mut j = j1 + j2;
        if j == 2 {
            j = 0;
            i += 4;
        }
        (i % 8, j)
    };
    let left_mult = |g: (usize, usize)| -> Perm {
        let images = (0..16)
            .map(|x| {
                let (i, j) = mul(g, (x % 8, x / 8));
                index(i, j)
            })
            .collect();
        Perm::from_images(images).expect("regular representation")
    };
    from_perms("Q16", 16, vec![left_mult((1, 0)), left_mult((0, 1))])
}

fn product(label: &str, a: Arc<FinGroup>, b: Arc<FinGroup>) -> Result<Arc<FinGroup>> {
    Ok(direct_product(&a, &b)?.group.with_label(label))
}

pub fn klein() -> Result<Arc<FinGroup>> {
    product("Klein", cyclic(2)?, cyclic(2)?)
}

/// `Z2^k`.
pub fn elementary_abelian2(k: usize) -> Result<Arc<FinGroup>> {
    let mut g = FinGroup::trivial();
    for _ in 0..k {
        g = direct_product(&g, &cyclic(2)?)?.group;
    }
    Ok(g.with_label(format!("Z2^{k}")))
}

/// Finds the element acting as the given product of cycles; panics if absent.
pub fn find_cycle(g: &Arc<FinGroup>, cycles: &[&[usize]]) -> usize {
    let degree = g.perm(g.identity()).expect("permutation group").degree();
    g.find_perm(&perm(degree, cycles)).expect("element present")
}

/// Inside `dihedral(4)`: the rotation subgroup and the Klein subgroup
/// `{1, r², s, r²s}` containing the reflection `(1 3)`.
pub fn d4_rotations_and_klein(d4: &Arc<FinGroup>) -> (Subgroup, Subgroup) {
    let r = find_cycle(d4, &[&[0, 1, 2, 3]]);
    let s = d4_reflection(d4);
    let rot = Subgroup::generated(d4, [r]).expect("ids from d4");
    let klein = Subgroup::generated(d4, [s, d4.mul(r, r)]).expect("ids from d4");
    (rot, klein)
}

/// The reflection `(1 3)` of `dihedral(4)`.
pub fn d4_reflection(d4: &Arc<FinGroup>) -> usize {
    find_cycle(d4, &[&[1, 3]])
}

/// `{1, r²}` inside `dihedral(4)`.
pub fn d4_center(d4: &Arc<FinGroup>) -> Subgroup {
    let r2 = find_cycle(d4, &[&[0, 2], &[1, 3]]);
    Subgroup::generated(d4, [r2]).expect("ids from d4")
}

type Builder = fn() -> Result<Arc<FinGroup>>;

const CATALOG: &[(&str, Builder)] = &[
    ("trivial", || Ok(FinGroup::trivial().with_label("trivial"))),
    ("Z2", || cyclic(2)),
    ("Z3", || cyclic(3)),
    ("Z4", || cyclic(4)),
    ("Klein", klein),
    ("Z5", || cyclic(5)),
    ("Z6", || cyclic(6)),
    ("S3", || symmetric(3)),
    ("Z7", || cyclic(7)),
    ("Z8", || cyclic(8)),
    ("Z2xZ4", || product("Z2xZ4", cyclic(2)?, cyclic(4)?)),
    ("Z2^3", || elementary_abelian2(3)),
    ("D4", || dihedral(4)),
    ("Q8", quaternion8),
    ("Z9", || cyclic(9)),
    ("Z3xZ3", || product("Z3xZ3", cyclic(3)?, cyclic(3)?)),
    ("Z10", || cyclic(10)),
    ("D5", || dihedral(5)),
    ("Z11", || cyclic(11)),
    ("Z12", || cyclic(12)),
    ("Z2xZ6", || product("Z2xZ6", cyclic(2)?, cyclic(6)?)),
    ("A4", || alternating(4)),
    ("D6", || dihedral(6)),
    ("S3xZ2", || product("S3xZ2", symmetric(3)?, cyclic(2)?)),
    ("Dic3", dicyclic3),
    ("Z16", || cyclic(16)),
    ("Z4xZ4", || product("Z4xZ4", cyclic(4)?, cyclic(4)?)),
    ("Z2xZ8", || product("Z2xZ8", cyclic(2)?, cyclic(8)?)),
    ("Z2^4", || elementary_abelian2(4)),
    ("D8", || dihedral(8)),
    ("Q16", quaternion16),
    ("Z2xD4", || product("Z2xD4", cyclic(2)?, dihedral(4)?)),
    ("Z2xQ8", || product("Z2xQ8", cyclic(2)?, quaternion8()?)),
    ("S3xZ3", || product("S3xZ3", symmetric(3)?, cyclic(3)?)),
    ("Z3xZ6", || product("Z3xZ6", cyclic(3)?, cyclic(6)?)),
    ("D10", || dihedral(10)),
    ("S4", || symmetric(4)),
    ("Z2xA4", || product("Z2xA4", cyclic(2)?, alternating(4)?)),
    ("D12", || dihedral(12)),
    ("S3xZ4", || product("S3xZ4", symmetric(3)?, cyclic(4)?)),
    ("Z2xZ12", || product("Z2xZ12", cyclic(2)?, cyclic(12)?)),
];

/// The named catalog in increasing order of group order. Entries above the
/// order cap in force at first use are left out.
pub fn catalog() -> &'static [(String, Arc<FinGroup>)] {
    static CELL: OnceLock<Vec<(String, Arc<FinGroup>)>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut v: Vec<(String, Arc<FinGroup>)> = CATALOG
            .iter()
            .filter_map(|(name, build)| Some((name.to_string(), build().ok()?)))
            .collect();
        v.sort_by_key(|(_, g)| g.order());
        v
    })
}

/// Catalog entries with order at most `max_order`.
pub fn up_to_order(max_order: usize) -> Vec<(String, Arc<FinGroup>)> {
    catalog()
        .iter()
        .filter(|(_, g)| g.order() <= max_order)
        .cloned()
        .collect()
}

/// Case-insensitive lookup; also accepts `Zn`, `Sn`, `An`, `Dn` for any `n`.
pub fn lookup(name: &str) -> Result<Arc<FinGroup>> {
    let key = name.trim().to_ascii_lowercase();
    if let Some((n, _)) = CATALOG.iter().find(|(n, _)| n.to_ascii_lowercase() == key) {
        if let Some((_, g)) = catalog().iter().find(|(m, _)| m == n) {
            return Ok(Arc::clone(g));
        }
        return CATALOG.iter().find(|(m, _)| m == n).map(|(_, build)| build()).expect("name just found");
    }
    let (head, digits) = key.split_at(key.find(|c: char| c.is_ascii_digit()).unwrap_or(key.len()));
    let n: Option<usize> = digits.parse().ok();
    match (head, n) {
        ("z", Some(n)) => cyclic(n),
        ("s", Some(n)) => symmetric(n),
        ("a", Some(n)) => alternating(n),
        ("d", Some(n)) => dihedral(n),
        ("q", Some(8)) => quaternion8(),
        ("q", Some(16)) => quaternion16(),
        ("v", Some(4)) => klein(),
        ("c", Some(n)) => cyclic(n),
        _ => Err(Error::InvalidGroup(format!("unknown group name '{name}'"))),
    }
}
