use serde::Serialize;

use super::{algebraic_map, matrix_fiber, named_complex, proxy_row, NamedError};
use crate::exactla::{inverse, LinearMap};
use crate::polyforms::MonomialBasis;

pub const IDENTITY_NAMES: [&str; 4] = ["inc_sym_transpose", "inc_skew_zero", "cinc_three_forms", "curl_sym_tracefree"];

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub degree: i64,
    pub passed: bool,
}

/// `id ⊗ f` on polynomials of degree at most `cap` in 3D.
fn lift(f: &LinearMap, cap: i64) -> LinearMap {
    LinearMap::block_diag_repeat(MonomialBasis::get(3, cap).len(), f)
}

/// Row-wise curl on matrix fields from degree `cap` to `cap - 1`, taken
/// from the vector-valued proxy row.
fn curl(cap: i64) -> LinearMap {
    proxy_row(3, 1, cap + 1).expect("3D row").diffs[1].clone()
}

fn s_inv(cap: i64) -> LinearMap {
    let s = algebraic_map("Sop", 3).expect("known map");
    lift(&inverse(&s).expect("S is invertible"), cap)
}

/// Checks a named operator identity with matrix fields of degree at most
/// `r`.
pub fn operator_identity_check(name: &str, r: i64) -> Result<IdentityReport, NamedError> {
    let p_sym = |cap| lift(&matrix_fiber(3, "S").unwrap().projector, cap);
    let passed = match name {
        // inc u = curl T curl u for symmetric u.
        "inc_sym_transpose" => {
            let t = lift(&algebraic_map("transpose", 3)?, r - 1);
            let inc = &(&curl(r - 1) * &s_inv(r - 1)) * &curl(r);
            let alt = &(&curl(r - 1) * &t) * &curl(r);
            &inc * &p_sym(r) == &alt * &p_sym(r)
        }
        "inc_skew_zero" => {
            let p_skw = lift(&matrix_fiber(3, "K").unwrap().projector, r);
            let inc = &(&curl(r - 1) * &s_inv(r - 1)) * &curl(r);
            (&inc * &p_skw).is_zero()
        }
        // curl S⁻¹ curl S⁻¹ curl = inc S⁻¹ curl, with inc the middle
        // operator of the derived elasticity complex.
        "cinc_three_forms" => {
            let elast = named_complex("elasticity3d", r)?;
            let inc = &elast.diffs[1];
            let lhs = &(&(&(&curl(r - 2) * &s_inv(r - 2)) * &curl(r - 1)) * &s_inv(r - 1)) * &curl(r);
            let rhs = &(inc * &s_inv(r - 1)) * &curl(r);
            lhs == rhs
        }
        "curl_sym_tracefree" => {
            let tr = lift(&algebraic_map("tr", 3)?, r - 1);
            (&(&tr * &curl(r)) * &p_sym(r)).is_zero()
        }
        other => return Err(NamedError::UnknownName(other.to_string())),
    };
    Ok(IdentityReport {
        name: name.to_string(),
        degree: r,
        passed,
    })
}
