//! Turning expressions into modules.

use std::sync::Arc;

use krull_core::corpus::pullback_module;
use krull_core::kalg::{bq8, free_unstable_algebra, poly_algebra, s3_mod_q8};
use krull_core::umod::{free, phi, present, suspend, tensor, truncate_above, PresentedModule, RealizedModule};
use krull_core::{Error, Result};

use crate::expr::ModuleExpr;

/// A module realized through twice the degree cap, with a presentation
/// whose generators lie at or below the generator window.
pub struct Evaluated {
    pub module: Arc<RealizedModule>,
    pub presentation: PresentedModule,
    pub degree: usize,
}

/// The working window for a degree cap: relations and `T̄`-iterates need
/// room above the degrees that are reported.
pub fn realization_top(degree: usize) -> usize {
    2 * degree
}

pub fn evaluate(e: &ModuleExpr, degree: usize) -> Result<Evaluated> {
    let top = realization_top(degree);
    let module = realize_expr(e, top)?;
    if degree > module.cert() {
        return Err(Error::Window { degree, cert: module.cert() });
    }
    let presentation = present(&module, degree)?;
    Ok(Evaluated {
        module: Arc::new(module),
        presentation,
        degree,
    })
}

pub fn realize_expr(e: &ModuleExpr, top: usize) -> Result<RealizedModule> {
    use ModuleExpr::*;
    Ok(match e {
        Free(n) => free(*n, top),
        Bz2(r) => (**poly_algebra(*r, top).module()).clone(),
        S3q8 => (**s3_mod_q8(top)?.module()).clone(),
        Bq8 => (**bq8(top)?.module()).clone(),
        Kvm(m) => (**free_unstable_algebra(&free(*m, top))?.module()).clone(),
        Example62 => pullback_module(top),
        Susp(s, e) => suspend(&realize_expr(e, top)?, *s),
        Phi(e) => phi(&realize_expr(e, top)?),
        Tensor(a, b) => tensor(&realize_expr(a, top)?, &realize_expr(b, top)?),
        Trunc(r, e) => truncate_above(&realize_expr(e, top)?, *r),
        Ufree(e) => (**free_unstable_algebra(&realize_expr(e, top)?)?.module()).clone(),
    })
}
