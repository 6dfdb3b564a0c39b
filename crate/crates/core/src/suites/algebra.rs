use super::SuiteReport;
use crate::kalg::{bq8, free_unstable_algebra, s3_mod_q8};
use crate::krull::{kbar_n_capped, sh_m, sigma_capped, trivial_object, unit_module};
use crate::sym::subgroups;
use crate::umod::{free, present};
use crate::Result;

/// Dimensions of `Λ^k V` through degree `top` for a graded space with
/// dimensions `dims` concentrated in positive degrees.
fn exterior_power_dims(dims: &[usize], k: usize, top: usize) -> Vec<usize> {
    // table[j][e] = dim Λ^j in degree e, built one basis vector at a time
    let mut table = vec![vec![0usize; top + 1]; k + 1];
    table[0][0] = 1;
    for (d, &count) in dims.iter().enumerate().take(top + 1).skip(1) {
        for _ in 0..count {
            for j in (1..=k).rev() {
                for e in (d..=top).rev() {
                    table[j][e] += table[j - 1][e - d];
                }
            }
        }
    }
    table.swap_remove(k)
}

pub(super) fn algebras(degree: usize) -> SuiteReport {
    let mut r = SuiteReport::new("algebras", degree);
    if let Err(e) = free_algebras(&mut r, degree) {
        r.check("the free-algebra cases ran to completion", Err(e));
    }
    if let Err(e) = quaternion(&mut r, degree) {
        r.check("the quaternion case ran to completion", Err(e));
    }
    r
}

fn free_algebras(r: &mut SuiteReport, degree: usize) -> Result<()> {
    // U(F(2)) grows quickly; its window is kept at 16
    for (m, d) in [(1, degree), (2, degree.min(16))] {
        let cap = 2 * d;
        let u = free_unstable_algebra(&free(m, cap))?;
        let p = present(u.module(), d)?;
        let fm = free(m, d);
        for n in 0..=4 {
            let kb = kbar_n_capped(&p, n, d, cap)?;
            r.table(format!("kbar_{n} U(F({m}))"), kb.dims().to_vec());
            let want = if n % m == 0 {
                exterior_power_dims(fm.dims(), n / m, d)
            } else {
                vec![0; d + 1]
            };
            r.check_eq(
                format!("kbar_{n} U(F({m})) ≅ Λ^{{{n}/{m}}} F({m}) (zero unless {m} divides {n})"),
                Ok(kb.dims().to_vec()),
                want,
            );
            if n % m == 0 {
                r.check_eq(
                    format!("kbar_{n} U(F({m})) is the length-{} quotient of U(F({m}))", n / m),
                    Ok(kb.dims().to_vec()),
                    u.length_quotient(n / m).dims()[..=d].to_vec(),
                );
            }
        }
        let sh = sh_m(&trivial_object(unit_module(4), m), 4);
        for n in 0..=4 {
            let s = sigma_capped(&p, n, d, cap, None, 4)?;
            let fixed_ok = subgroups(n)
                .iter()
                .all(|h| (0..=4).all(|e| s.fixed_dim(h, e) == sh.get(n).fixed_dim(h, e)));
            r.check(
                format!("σ_{n} U(F({m})) ≅ (sh_{m} ℤ/2)_{n} in dimensions and fixed points"),
                Ok(s.dims() == sh.get(n).dims() && fixed_ok),
            );
        }
    }
    Ok(())
}

fn quaternion(r: &mut SuiteReport, degree: usize) -> Result<()> {
    let d = degree;
    let q8 = bq8(2 * d)?;
    let s3 = s3_mod_q8(8)?;
    // H*(BQ₈) = H*(S³/Q₈) ⊗ GF(2)[e₄]
    let conv: Vec<usize> = (0..=d)
        .map(|e| (0..=e).step_by(4).map(|j| s3.dims().get(e - j).copied().unwrap_or(0)).sum())
        .collect();
    r.check_eq("H*(BQ₈) ≅ H*(S³/Q₈) ⊗ GF(2)[e₄] additively", Ok(q8.dims()[..=d].to_vec()), conv);
    let p = present(q8.module(), d)?;
    for n in 0..=2 {
        let s = sigma_capped(&p, n, d, 2 * d, None, 8)?;
        r.table(format!("σ_{n} H*(BQ₈)"), s.dims().to_vec());
        let trivial = subgroups(n)
            .iter()
            .all(|h| (0..=8).all(|e| s.fixed_dim(h, e) == s3.dims()[e]));
        r.check(
            format!("σ_{n} H*(BQ₈) ≅ H*(S³/Q₈) with trivial Σ_{n}-action"),
            Ok(s.dims() == s3.dims() && trivial && s.0.validate().is_ok()),
        );
        if n == 0 {
            let same_ranks = (1..=3).all(|e| {
                (1..=3 - e).all(|k| s.module().sq_matrix(k, e).rank() == s3.module().sq_matrix(k, e).rank())
            });
            r.check("σ_0 H*(BQ₈) has the Steenrod operations of H*(S³/Q₈)", Ok(same_ranks));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::exterior_power_dims;

    #[test]
    fn exterior_powers_of_small_spaces() {
        // V = one class in each of degrees 1, 2, 4
        let dims = [0, 1, 1, 0, 1, 0, 0, 0];
        assert_eq!(exterior_power_dims(&dims, 0, 7), vec![1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(exterior_power_dims(&dims, 2, 7), vec![0, 0, 0, 1, 0, 1, 1, 0]);
        assert_eq!(exterior_power_dims(&dims, 3, 7), vec![0, 0, 0, 0, 0, 0, 0, 1]);
        // two classes in degree 1 give one class in degree 2
        assert_eq!(exterior_power_dims(&[0, 2, 0], 2, 2), vec![0, 0, 1]);
    }
}
