//! Process-wide limits.

use std::sync::atomic::{AtomicUsize, Ordering};

/// Default cap on the number of elements any closure may materialize.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

static ELEMENT_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_ELEMENT_CAP);

/// Current element cap used by group and brace closures.
pub fn element_cap() -> usize {
    ELEMENT_CAP.load(Ordering::Relaxed)
}

/// Override the element cap (the CLI wires `YBE_ELEMENT_CAP` through here).
pub fn set_element_cap(cap: usize) {
    ELEMENT_CAP.store(cap.max(1), Ordering::Relaxed);
}
