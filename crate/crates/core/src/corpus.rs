//! Named modules used throughout the test suites and the command line.

use std::sync::Arc;

use crate::gf2::{BitVec, LinMap};
use crate::umod::{free, phi, pullback, suspend, ModuleMap, RealizedModule};

/// `ℤ/2` in degree `d`.
pub fn point(d: usize, top: usize) -> RealizedModule {
    suspend(&free(0, top), d)
}

/// The map onto `Σ^d ℤ/2` sending every degree-`d` basis vector to the class.
fn onto_point(m: &Arc<RealizedModule>, d: usize) -> ModuleMap {
    let target = Arc::new(point(d, m.top()));
    let maps = (0..=m.top())
        .map(|e| {
            if e == d {
                LinMap::from_columns(1, vec![BitVec::unit(1, 0); m.dim(e)])
            } else {
                LinMap::zero(m.dim(e), target.dim(e))
            }
        })
        .collect();
    ModuleMap::new(Arc::clone(m), target, maps, m.cert())
}

/// The pullback of `ΣF(3) -> Σ^4ℤ/2 <- Φ^2F(1)`, both maps onto the degree-4
/// classes. It is cyclic on a degree-4 class; `k_1` of it is `Φ^3F(1)` while
/// `R_0` of it is `Φ^2F(1)`.
pub fn pullback_module(top: usize) -> RealizedModule {
    let (m, _, _) = pullback_with_legs(top);
    Arc::try_unwrap(m).unwrap_or_else(|a| (*a).clone())
}

/// [`pullback_module`] with its projections to `ΣF(3)` and `Φ^2F(1)`.
pub fn pullback_with_legs(top: usize) -> (Arc<RealizedModule>, ModuleMap, ModuleMap) {
    let sf3 = Arc::new(suspend(&free(3, top), 1));
    let p2 = Arc::new(phi(&phi(&free(1, top))));
    pullback(&onto_point(&sf3, 4), &onto_point(&p2, 4))
}
