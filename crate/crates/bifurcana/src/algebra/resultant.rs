//! Sylvester resultants via fraction-free Bareiss elimination.
//!
//! The determinant is taken over the polynomial ring in the remaining
//! variables, so the result is exact. Bareiss keeps every intermediate
//! entry a true minor of the original matrix; the division at each step is
//! exact in the ring, which `MPoly::div_exact` verifies as it runs. At the
//! degrees this crate meets (<= ~14 in the eliminated variable) no modular
//! tricks are needed.

use crate::algebra::mpoly::MPoly;
use crate::error::{Error, Result};

/// Determinant of the Sylvester matrix of `p`, `q` with respect to `var`.
///
/// Vanishes at a parameter point exactly when p and q share a root in
/// `var` there, up to degenerate vanishing of the leading coefficients
/// (which, being polynomials themselves, the caller can test).
pub fn sylvester_resultant(p: &MPoly, q: &MPoly, var: &str) -> Result<MPoly> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::InvalidArgument(
            "resultant of the zero polynomial".into(),
        ));
    }
    // A variable missing from a polynomial's list counts as degree zero.
    let m = p.degree_in(var).unwrap_or(0) as usize;
    let n = q.degree_in(var).unwrap_or(0) as usize;
    if m == 0 && n == 0 {
        return Err(Error::InvalidArgument(format!(
            "variable {var:?} absent from both inputs"
        )));
    }
    if m == 0 || n == 0 {
        return Err(Error::DegenerateInput(format!(
            "degree in {var:?} must be >= 1 in both inputs (got {m} and {n})"
        )));
    }

    let pc = p.coeffs_in(var)?;
    let qc = q.coeffs_in(var)?;
    // Stored coefficients are trimmed, so the leading entries are nonzero
    // polynomials by construction.

    let size = m + n;
    let vars: Vec<&str> = pc[0].vars().iter().map(|s| s.as_str()).collect();
    let zero = MPoly::zero(&vars);
    let mut mat = vec![vec![zero.clone(); size]; size];
    // n rows of p's coefficients, highest degree first, then m rows of q's.
    for r in 0..n {
        for (k, c) in pc.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in qc.iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }

    bareiss_determinant(mat)
}

fn bareiss_determinant(mut m: Vec<Vec<MPoly>>) -> Result<MPoly> {
    let n = m.len();
    let vnames: Vec<String> = m[0][0].vars().to_vec();
    let vrefs: Vec<&str> = vnames.iter().map(|s| s.as_str()).collect();
    let zero = MPoly::zero(&vrefs);
    let mut sign_flip = false;
    let mut prev = MPoly::one(&vrefs);
    for k in 0..n {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return Ok(zero),
            }
        }
        if k == n - 1 {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev).ok_or_else(|| {
                    Error::Internal("Bareiss division failed to be exact".into())
                })?;
            }
            m[i][k] = zero.clone();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign_flip { det.neg() } else { det })
}
