//! Integral homology of finite groups from the normalized bar complex.

pub mod snf;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FinGroup, Subgroup};
use crate::hom::quotient;

pub use snf::{smith_normal_form, Arithmetic, SmithForm};

/// Matrix entries the homology computation may materialize.
pub const DEFAULT_BUDGET: usize = 4_000_000;
pub const MAX_DEGREE: usize = 3;

/// `Z^free_rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` with `d₁ | d₂ | …` and every `dᵢ > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct AbelianInvariants {
    pub divisors: Vec<u64>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty() && self.free_rank == 0
    }

    /// Invariant factors of a product of cyclic groups of the given orders.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &n in orders {
            for (p, e) in factorize(n) {
                by_prime.entry(p).or_default().push(e);
            }
        }
        Self::from_prime_powers(by_prime)
    }

    fn from_prime_powers(mut by_prime: BTreeMap<u64, Vec<u32>>) -> Self {
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut divisors = vec![1u64; len];
        for (p, exps) in by_prime.iter_mut() {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            // largest exponents go to the largest divisors
            for (k, &e) in exps.iter().enumerate() {
                divisors[len - 1 - k] *= p.pow(e);
            }
        }
        AbelianInvariants {
            divisors: divisors.into_iter().filter(|&d| d > 1).collect(),
            free_rank: 0,
        }
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.divisors.iter().map(|d| format!("Z/{d}")).collect();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".into()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Invariant factors of a finite abelian group, read off from the number of
/// solutions of `x^{p^k} = 1` for each prime `p`.
pub fn abelian_invariants(g: &FinGroup) -> Result<AbelianInvariants> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let mut by_prime = BTreeMap::new();
    for (p, top) in factorize(g.order() as u64) {
        // s[k] = log_p #{x : x^{p^k} = 1} = Σ min(k, eᵢ)
        let mut s = vec![0u32];
        for k in 1..=top {
            let pk = p.pow(k) as usize;
            let count = g.elements().filter(|&x| g.pow(x, pk) == g.identity()).count();
            s.push(log_exact(count as u64, p));
        }
        // #{i : eᵢ ≥ k} = s[k] − s[k−1]
        let at_least: Vec<u32> = (1..s.len()).map(|k| s[k] - s[k - 1]).collect();
        let mut exps = Vec::new();
        for (k, &c) in at_least.iter().enumerate() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            for _ in 0..c - next {
                exps.push(k as u32 + 1);
            }
        }
        by_prime.insert(p, exps);
    }
    Ok(AbelianInvariants::from_prime_powers(by_prime))
}

fn log_exact(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n > 1 {
        debug_assert_eq!(n % p, 0);
        n /= p;
        e += 1;
    }
    e
}

/// Invariants of `A/[A,A]`.
pub fn abelianization_invariants(g: &std::sync::Arc<FinGroup>) -> Result<AbelianInvariants> {
    let q = quotient(&Subgroup::derived(g))?;
    abelian_invariants(&q.group)
}

/// A sparse integer matrix stored by rows: row `r` lists `(column, value)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        self.entries
            .iter()
            .map(|row| {
                let mut dense = vec![0; self.cols];
                for &(c, v) in row {
                    dense[c] += v;
                }
                dense
            })
            .collect()
    }
}

/// Chain complex of free abelian groups. `boundaries[k]` is `d_{k+1}`, with
/// one row per basis element of `C_{k+1}` holding its boundary in `C_k`.
#[derive(Debug, Clone)]
pub struct ChainComplexZ {
    pub ranks: Vec<usize>,
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplexZ {
    /// `d_{k−1} ∘ d_k = 0` for every `k`.
    pub fn is_complex(&self) -> bool {
        self.boundaries.windows(2).all(|w| {
            let (lower, upper) = (&w[0], &w[1]);
            upper.entries.iter().all(|row| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for &(c, v) in row {
                    for &(c2, v2) in &lower.entries[c] {
                        *acc.entry(c2).or_insert(0) += v * v2;
                    }
                }
                acc.values().all(|&x| x == 0)
            })
        })
    }
}

/// Non-identity elements, numbered from zero.
struct Alphabet {
    letters: Vec<usize>,
    index: Vec<Option<usize>>,
}

impl Alphabet {
    fn new(g: &FinGroup) -> Self {
        let letters: Vec<usize> = g.elements().filter(|&x| x != g.identity()).collect();
        let mut index = vec![None; g.order()];
        for (i, &x) in letters.iter().enumerate() {
            index[x] = Some(i);
        }
        Alphabet { letters, index }
    }

    fn encode(&self, tuple: &[usize]) -> Option<usize> {
        let base = self.letters.len();
        let mut code = 0;
        for &x in tuple {
            code = code * base + self.index[x]?;
        }
        Some(code)
    }

    fn decode(&self, mut code: usize, len: usize) -> Vec<usize> {
        let base = self.letters.len();
        let mut out = vec![0; len];
        for slot in out.iter_mut().rev() {
            *slot = self.letters[code % base];
            code /= base;
        }
        out
    }
}

fn rank_of(order: usize, degree: usize) -> Option<usize> {
    (order - 1).checked_pow(degree as u32)
}

fn boundary(g: &FinGroup, alpha: &Alphabet, j: usize) -> SparseMatrix {
    let rows = rank_of(g.order(), j).expect("checked by caller");
    let cols = rank_of(g.order(), j - 1).expect("checked by caller");
    let entries = (0..rows)
        .map(|code| {
            let t = alpha.decode(code, j);
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            let mut add = |face: &[usize], sign: i64| {
                if let Some(c) = alpha.encode(face) {
                    *acc.entry(c).or_insert(0) += sign;
                }
            };
            add(&t[1..], 1);
            for i in 0..j - 1 {
                let mut face = t[..i].to_vec();
                face.push(g.mul(t[i], t[i + 1]));
                face.extend_from_slice(&t[i + 2..]);
                add(&face, if i % 2 == 0 { -1 } else { 1 });
            }
            add(&t[..j - 1], if j.is_multiple_of(2) { 1 } else { -1 });
            acc.into_iter().filter(|&(_, v)| v != 0).collect()
        })
        .collect();
    SparseMatrix { rows, cols, entries }
}

fn dense_size(order: usize, degree: usize) -> Option<usize> {
    rank_of(order, degree)?.checked_mul(rank_of(order, degree - 1)?)
}

/// The normalized bar complex `C_0 ← C_1 ← … ← C_k` with trivial coefficients.
pub fn bar_complex(g: &FinGroup, top_degree: usize, budget: usize) -> Result<ChainComplexZ> {
    let needed = (1..=top_degree)
        .map(|j| rank_of(g.order(), j).unwrap_or(usize::MAX))
        .fold(0usize, |a, b| a.saturating_add(b));
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let alpha = Alphabet::new(g);
    let ranks = (0..=top_degree).map(|j| rank_of(g.order(), j).unwrap()).collect();
    let boundaries = (1..=top_degree).map(|j| boundary(g, &alpha, j)).collect();
    let complex = ChainComplexZ { ranks, boundaries };
    if !complex.is_complex() {
        return Err(Error::AgreementFailure("bar complex: d∘d is not zero".into()));
    }
    Ok(complex)
}

fn to_u64(x: &num_bigint::BigInt) -> Result<u64> {
    x.to_u64()
        .ok_or_else(|| Error::Unsupported(format!("elementary divisor {x} does not fit in 64 bits")))
}

/// `H_n(A; Z) = ker d_n / im d_{n+1}` for `n ≤ 3`, with the default budget.
pub fn integral_homology(g: &std::sync::Arc<FinGroup>, n: usize) -> Result<AbelianInvariants> {
    integral_homology_with(g, n, DEFAULT_BUDGET, Arithmetic::Adaptive)
}

/// `H_n` with an explicit entry budget and arithmetic mode. For `n = 1` the
/// result is checked against the abelianization.
pub fn integral_homology_with(
    g: &std::sync::Arc<FinGroup>,
    n: usize,
    budget: usize,
    arithmetic: Arithmetic,
) -> Result<AbelianInvariants> {
    if n > MAX_DEGREE {
        return Err(Error::Unsupported(format!("homology in degree {n}; the maximum is {MAX_DEGREE}")));
    }
    let order = g.order();
    let needed = [n, n + 1]
        .iter()
        .filter(|&&d| d >= 1)
        .map(|&d| dense_size(order, d).unwrap_or(usize::MAX))
        .fold(0usize, |a, b| a.saturating_add(b));
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let alpha = Alphabet::new(g);
    let rank_n = rank_of(order, n).unwrap();
    let rank_dn = if n == 0 {
        0
    } else {
        let d = boundary(g, &alpha, n);
        smith_normal_form(&d.to_dense(), d.cols, arithmetic)?.rank
    };
    let upper = boundary(g, &alpha, n + 1);
    let snf = smith_normal_form(&upper.to_dense(), upper.cols, arithmetic)?;
    let divisors = snf.torsion().iter().map(to_u64).collect::<Result<Vec<_>>>()?;
    let h = AbelianInvariants {
        divisors,
        free_rank: rank_n - rank_dn - snf.rank,
    };
    if n == 1 {
        let ab = abelianization_invariants(g)?;
        if ab != h {
            return Err(Error::AgreementFailure(format!("H1 is {h} but the abelianization is {ab}")));
        }
    }
    Ok(h)
}
