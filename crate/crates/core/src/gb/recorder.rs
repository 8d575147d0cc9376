//! Opt-in capture of every strong basis computed over `ℤ`, so a test
//! harness can re-check them afterwards. Off by default; recording costs a
//! clone per basis.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;

use num_bigint::BigInt;

use super::GBasis;

static ENABLED: AtomicBool = AtomicBool::new(false);
static BASES: Mutex<Vec<GBasis<BigInt>>> = Mutex::new(Vec::new());

pub fn start() {
    BASES.lock().expect("recorder lock").clear();
    ENABLED.store(true, Ordering::SeqCst);
}

/// Stops recording and returns the bases collected since [`start`],
/// without duplicates.
pub fn stop() -> Vec<GBasis<BigInt>> {
    ENABLED.store(false, Ordering::SeqCst);
    let mut bases = std::mem::take(&mut *BASES.lock().expect("recorder lock"));
    let mut seen = HashSet::new();
    bases.retain(|g| seen.insert(format!("{g:?}")));
    bases
}

pub(crate) fn record(g: &GBasis<BigInt>) {
    if ENABLED.load(Ordering::Relaxed) {
        BASES.lock().expect("recorder lock").push(g.clone());
    }
}
