use krull_core::gf2::Subspace;
use krull_core::krull::{check_locally_finite, k_n_spaces_capped, nil_1, sigma_capped};
use krull_core::lannes::{tbar_iter, EquivariantModule};
use krull_core::suites;
use krull_core::sym::{subgroups, Subgroup};
use krull_core::Error;

use crate::eval::{evaluate, realization_top, Evaluated};
use crate::expr::{render, ModuleExpr};
use crate::report::Report;

/// Degrees of σ_n and T̄ⁿ that are reported.
const OUT_TOP: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Info(ModuleExpr),
    Krull { max: usize, expr: ModuleExpr },
    Nil(ModuleExpr),
    Sigma { max: usize, expr: ModuleExpr },
    Tbar { iter: usize, expr: ModuleExpr },
    Verify(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub degree: usize,
    pub gen_window: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            degree: 32,
            gen_window: None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error("unknown suite {0:?}; known suites: {1}")]
    UnknownSuite(String, String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl Command {
    /// The command in canonical form, used as the report's echo.
    pub fn echo(&self) -> String {
        match self {
            Command::Info(e) => format!("info {}", render(e)),
            Command::Krull { max, expr } => format!("krull --max {max} {}", render(expr)),
            Command::Nil(e) => format!("nil {}", render(e)),
            Command::Sigma { max, expr } => format!("sigma --max {max} {}", render(expr)),
            Command::Tbar { iter, expr } => format!("tbar --iter {iter} {}", render(expr)),
            Command::Verify(s) => format!("verify {s}"),
        }
    }
}

pub fn run(cmd: &Command, opts: Options) -> Result<Report, CommandError> {
    let d = opts.degree;
    let mut r = Report::new(cmd.echo(), d, d);
    match cmd {
        Command::Info(e) => info(&mut r, &evaluate(e, d)?),
        Command::Krull { max, expr } => krull(&mut r, &evaluate(expr, d)?, *max)?,
        Command::Nil(e) => nil(&mut r, &evaluate(e, d)?),
        Command::Sigma { max, expr } => sigma(&mut r, &evaluate(expr, d)?, *max, opts.gen_window)?,
        Command::Tbar { iter, expr } => tbar(&mut r, &evaluate(expr, d)?, *iter),
        Command::Verify(name) => verify(&mut r, name)?,
    }
    Ok(r)
}

fn info(r: &mut Report, m: &Evaluated) {
    let d = m.degree;
    r.table("dim M", m.module.dims()[..=d].to_vec());
    let mut gens = vec![0; d + 1];
    for &g in m.presentation.gens() {
        gens[g] += 1;
    }
    r.table("generators", gens);
    r.table("relations", {
        let mut rel = vec![0; d + 1];
        for i in 0..m.presentation.relations().len() {
            let e = m.presentation.relation_degree(i);
            if e <= d {
                rel[e] += 1;
            }
        }
        rel
    });
    r.assert("M is unstable and satisfies the Adem relations", m.module.validate().is_ok());
    let realized = krull_core::umod::realize(&m.presentation, d);
    r.assert("the presentation realizes M through the degree cap", realized.dims() == &m.module.dims()[..=d]);
}

fn krull(r: &mut Report, m: &Evaluated, max: usize) -> Result<(), CommandError> {
    let d = m.degree;
    let cap = realization_top(d);
    let mut levels: Vec<Vec<Subspace>> = Vec::new();
    for n in 0..=max {
        let (_, spaces) = k_n_spaces_capped(&m.presentation, n, d, cap)?;
        r.table(format!("k_{n}"), spaces.iter().map(Subspace::dim).collect());
        levels.push(spaces);
    }
    for n in 1..=max {
        let below = &levels[n - 1];
        let here = &levels[n];
        let bar = here.iter().zip(below).map(|(a, b)| a.dim() - b.dim().min(a.dim())).collect();
        r.table(format!("kbar_{n}"), bar);
    }
    for n in 0..max {
        let inside = levels[n].iter().zip(&levels[n + 1]).all(|(a, b)| a.is_subspace_of(b));
        r.assert(format!("k_{n} M ⊆ k_{} M", n + 1), inside);
    }
    Ok(())
}

fn nil(r: &mut Report, m: &Evaluated) {
    let nil = nil_1(&m.module);
    let through = nil.certified.min(m.degree);
    r.cert = through;
    let nil_dims: Vec<usize> = nil.spaces[..=through].iter().map(Subspace::dim).collect();
    let r0: Vec<usize> = (0..=through).map(|e| m.module.dim(e) - nil_dims[e]).collect();
    r.table("nil_1", nil_dims.clone());
    r.table("R_0", r0);
    let closed = m.module.restrict(through).is_sq_stable(&nil.spaces[..=through]);
    r.assert("nil_1 M is a submodule", closed);
    if check_locally_finite(&m.module).is_ok() {
        // nil_s M = M^{>=s} and R_s M = M^s
        let top_s = (0..=through).rev().find(|&e| m.module.dim(e) > 0).unwrap_or(0);
        for s in 2..=top_s {
            r.table(
                format!("nil_{s}"),
                (0..=through).map(|e| if e >= s { m.module.dim(e) } else { 0 }).collect(),
            );
        }
        r.table("R_s", m.module.dims()[..=through].to_vec());
        let above_zero = (0..=through).all(|e| nil_dims[e] == if e >= 1 { m.module.dim(e) } else { 0 });
        r.assert("M is locally finite, so nil_1 M = M^{>=1}", above_zero);
    }
}

fn full_group(n: usize) -> Subgroup {
    subgroups(n)
        .into_iter()
        .max_by_key(Subgroup::order)
        .expect("Σ_n has subgroups")
}

fn equivariant_tables(r: &mut Report, name: &str, e: &EquivariantModule, n: usize) {
    r.table(name.to_string(), e.module.dims().to_vec());
    let g = full_group(n);
    r.table(
        format!("{name} fixed by Σ_{n}"),
        (0..=e.module.top()).map(|d| e.fixed_dim(&g, d)).collect(),
    );
}

fn sigma(r: &mut Report, m: &Evaluated, max: usize, gen_window: Option<usize>) -> Result<(), CommandError> {
    let d = m.degree;
    for n in 0..=max {
        let s = sigma_capped(&m.presentation, n, d, realization_top(d), gen_window, OUT_TOP)?;
        equivariant_tables(r, &format!("σ_{n}"), &s.0, n);
        r.assert(format!("σ_{n} M is an unstable module with a Σ_{n}-action"), s.0.validate().is_ok());
    }
    Ok(())
}

fn tbar(r: &mut Report, m: &Evaluated, iter: usize) {
    let e = tbar_iter(&m.presentation, iter, m.degree);
    equivariant_tables(r, &format!("Tbar^{iter}"), &e, iter);
    r.assert(format!("Tbar^{iter} M is an unstable module with a Σ_{iter}-action"), e.validate().is_ok());
}

/// Suite names accepted by `verify`; `example62` names the pullback suite.
fn resolve_suite(name: &str) -> Option<&'static suites::Suite> {
    suites::suite(if name == "example62" { "pullback" } else { name })
}

fn verify(r: &mut Report, name: &str) -> Result<(), CommandError> {
    let suite = resolve_suite(name).ok_or_else(|| {
        let names: Vec<&str> = suites::SUITES.iter().map(|s| s.name).collect();
        CommandError::UnknownSuite(name.to_string(), names.join(", "))
    })?;
    let report = suite.run(r.degree_cap);
    for t in report.tables {
        r.table(t.name, t.dims);
    }
    for c in report.checks {
        let anchor = if c.detail.is_empty() { c.anchor } else { format!("{} ({})", c.anchor, c.detail) };
        r.assert(anchor, c.pass);
    }
    if r.assertions.is_empty() {
        r.assert(format!("suite {} recorded checks", suite.name), false);
    }
    Ok(())
}
