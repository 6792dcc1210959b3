//! Process-wide resource caps.

use std::sync::atomic::{AtomicUsize, Ordering};

pub const DEFAULT_ORDER_CAP: usize = 512;
/// Largest dimension accepted by the recursive extension test.
pub const DEFAULT_DIM_CAP: usize = 4;
/// Largest dimension for the categorical bracket recursion.
pub const BRACKET_DIM_CAP: usize = 3;
/// Cap for the isomorphism search.
pub const ISO_ORDER_CAP: usize = 128;
/// Full associativity check up to this order; sampled above.
pub const FULL_ASSOCIATIVITY_ORDER: usize = 64;

/// Environment variable the CLI reads to override the order cap.
pub const ORDER_CAP_ENV: &str = "HOPFCUBE_ORDER_CAP";

static ORDER_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_ORDER_CAP);
static DIM_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_DIM_CAP);

pub fn order_cap() -> usize {
    ORDER_CAP.load(Ordering::Relaxed)
}

pub fn set_order_cap(cap: usize) {
    ORDER_CAP.store(cap.max(1), Ordering::Relaxed);
}

pub fn dim_cap() -> usize {
    DIM_CAP.load(Ordering::Relaxed)
}

pub fn set_dim_cap(cap: usize) {
    DIM_CAP.store(cap, Ordering::Relaxed);
}
