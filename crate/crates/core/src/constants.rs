//! Closed forms for every constant appearing in the inequalities, plus the
//! crossover root `p1`.
//!
//! At branch seams (p = 2 for `R`/`L`/`C`, p = 4 for `M`) both branch
//! formulas agree analytically; evaluation uses the left branch at the seam.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

fn require_gt(p: f64, lo: f64, param: &'static str, reason: &'static str) -> Result<()> {
    if !p.is_finite() || p <= lo {
        return Err(Error::OutOfRange {
            param,
            value: p,
            reason,
        });
    }
    Ok(())
}

/// Upper Riesz constant: `1/cos(π/2p)` for `1 < p ≤ 2`, `1/sin(π/2p)` for
/// `p ≥ 2`. Continuous at p = 2 where both branches give √2.
pub fn riesz_r(p: f64) -> Result<f64> {
    require_gt(p, 1.0, "p", "Riesz constants need p > 1")?;
    let angle = PI / (2.0 * p);
    Ok(if p <= 2.0 {
        1.0 / angle.cos()
    } else {
        1.0 / angle.sin()
    })
}

/// Lower Riesz constant: the branch-swapped mirror of [`riesz_r`].
pub fn riesz_l(p: f64) -> Result<f64> {
    require_gt(p, 1.0, "p", "Riesz constants need p > 1")?;
    let angle = PI / (2.0 * p);
    Ok(if p <= 2.0 {
        1.0 / angle.sin()
    } else {
        1.0 / angle.cos()
    })
}

/// Carleman-type constant `C_p = cos(π/4p)/cos(π/2p)` for `1 < p ≤ 2`,
/// `cos(π/4p)/sin(π/2p)` for `p ≥ 2`; equals `M(2p)`.
pub fn carleman_c(p: f64) -> Result<f64> {
    require_gt(p, 1.0, "p", "C_p needs p > 1")?;
    let num = (PI / (4.0 * p)).cos();
    let angle = PI / (2.0 * p);
    Ok(if p <= 2.0 {
        num / angle.cos()
    } else {
        num / angle.sin()
    })
}

/// `M_p = cos(π/2p)/cos(π/p)` for `2 < p ≤ 4`, `cos(π/2p)/sin(π/p)` for
/// `p ≥ 4`.
pub fn m_constant(p: f64) -> Result<f64> {
    require_gt(p, 2.0, "p", "M_p needs p > 2")?;
    let num = (PI / (2.0 * p)).cos();
    let angle = PI / p;
    Ok(if p <= 4.0 {
        num / angle.cos()
    } else {
        num / angle.sin()
    })
}

/// `(p/(p-1))^{1/p}`.
pub fn newt_constant(p: f64) -> Result<f64> {
    require_gt(p, 1.0, "p", "(p/(p-1))^{1/p} needs p > 1")?;
    Ok((p / (p - 1.0)).powf(1.0 / p))
}

/// `cos(π/8)`.
pub fn e4() -> f64 {
    (PI / 8.0).cos()
}

/// Conjugate-exponent maximum `max(p, p/(p-1))`.
pub fn pbar(p: f64) -> Result<f64> {
    require_gt(p, 1.0, "p", "pbar needs p > 1")?;
    Ok(p.max(p / (p - 1.0)))
}

/// The unique solution of `(p/(p-1))^{1/p} = 2^{-1/p}/sin(π/2p)` on [2, 4],
/// by bisection to 1e-12.
pub fn p1_root() -> f64 {
    let f = |p: f64| (p / (p - 1.0)).powf(1.0 / p) - 2.0f64.powf(-1.0 / p) / (PI / (2.0 * p)).sin();
    let (mut lo, mut hi) = (2.0f64, 4.0f64);
    debug_assert!(f(lo) > 0.0 && f(hi) < 0.0);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All constants at a given exponent, as dumped by `disk-ineq constants`.
#[derive(Debug, Clone, Serialize)]
pub struct ConstantTable {
    pub p: f64,
    pub r_p: f64,
    pub l_p: f64,
    /// `M_p`, defined only for p > 2.
    pub m_p: Option<f64>,
    pub c_p: f64,
    pub e4: f64,
    pub pbar: f64,
    /// `(p/(p-1))^{1/p}`.
    pub newt: f64,
    pub p1: f64,
}

impl ConstantTable {
    pub fn for_p(p: f64) -> Result<Self> {
        Ok(Self {
            p,
            r_p: riesz_r(p)?,
            l_p: riesz_l(p)?,
            m_p: if p > 2.0 { Some(m_constant(p)?) } else { None },
            c_p: carleman_c(p)?,
            e4: e4(),
            pbar: pbar(p)?,
            newt: newt_constant(p)?,
            p1: p1_root(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn riesz_constants_at_two_are_sqrt2() {
        assert_abs_diff_eq!(riesz_r(2.0).unwrap(), 2.0f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(riesz_l(2.0).unwrap(), 2.0f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn riesz_constants_at_four() {
        assert_abs_diff_eq!(riesz_r(4.0).unwrap(), 2.613125929752753, epsilon = 1e-12);
        assert_abs_diff_eq!(riesz_l(4.0).unwrap(), 1.082392200292394, epsilon = 1e-12);
    }

    #[test]
    fn riesz_near_one_diverges_at_the_right_scale() {
        // 1/cos(π/(2·1.0001)) ≈ 6366.8, large but finite.
        let v = riesz_r(1.0001).unwrap();
        assert!(v.is_finite());
        assert_abs_diff_eq!(v, 6366.834369625502, epsilon = 1e-6);
        assert!(riesz_r(1.0).is_err());
        assert!(riesz_l(0.5).is_err());
    }

    #[test]
    fn riesz_limit_at_large_p_is_one() {
        assert_abs_diff_eq!(riesz_l(1e6).unwrap(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn conjugate_exponent_symmetry() {
        for p in [1.5f64, 3.0, 4.0] {
            let q = p / (p - 1.0);
            assert_abs_diff_eq!(riesz_r(p).unwrap(), riesz_r(q).unwrap(), epsilon = 1e-13);
            assert_abs_diff_eq!(riesz_l(p).unwrap(), riesz_l(q).unwrap(), epsilon = 1e-13);
        }
    }

    #[test]
    fn carleman_constants_match_quoted_values() {
        // C_2 = 1/(2 sin(π/8)), C_4 = 1/(2 sin(π/16)).
        assert_abs_diff_eq!(carleman_c(2.0).unwrap(), 1.3065629648763766, epsilon = 1e-14);
        assert_abs_diff_eq!(carleman_c(4.0).unwrap(), 2.5629154477415062, epsilon = 1e-14);
        assert_abs_diff_eq!(
            carleman_c(2.0).unwrap(),
            1.0 / (2.0 * (std::f64::consts::PI / 8.0).sin()),
            epsilon = 1e-15
        );
    }

    #[test]
    fn carleman_equals_m_at_doubled_exponent() {
        for p in [1.5f64, 2.0, 3.0, 4.0] {
            assert_abs_diff_eq!(
                carleman_c(p).unwrap(),
                m_constant(2.0 * p).unwrap(),
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn m_branch_values() {
        assert_abs_diff_eq!(m_constant(3.0).unwrap(), 3.0f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(m_constant(8.0).unwrap(), 2.5629154477415062, epsilon = 1e-12);
        // Branch agreement at the seam p = 4.
        let left = (PI / 8.0).cos() / (PI / 4.0).cos();
        let right = (PI / 8.0).cos() / (PI / 4.0).sin();
        assert_abs_diff_eq!(left, right, epsilon = 1e-15);
        assert_abs_diff_eq!(m_constant(4.0).unwrap(), left, epsilon = 1e-15);
    }

    #[test]
    fn newt_values() {
        assert_abs_diff_eq!(newt_constant(2.0).unwrap(), 2.0f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(newt_constant(4.0).unwrap(), 1.074569931823542, epsilon = 1e-13);
    }

    #[test]
    fn p1_root_matches_reference() {
        assert_abs_diff_eq!(p1_root(), 2.4248398572899666, epsilon = 5e-6);
    }

    #[test]
    fn remark_inequality_chain_on_grid() {
        // 2^{-1/p} L_p ≤ (p/(p-1))^{1/p} for p ≥ 4, and the reverse bound
        // against R_p on [p1, 4].
        let p1 = p1_root();
        for k in 0..100 {
            let p = 4.0 + 6.0 * k as f64 / 99.0;
            let lhs = 2.0f64.powf(-1.0 / p) * riesz_l(p).unwrap();
            assert!(lhs <= newt_constant(p).unwrap() + 1e-12, "p = {p}");
        }
        for k in 0..100 {
            let p = p1 + (4.0 - p1) * k as f64 / 99.0;
            let rhs = 2.0f64.powf(-1.0 / p) * riesz_r(p).unwrap();
            assert!(newt_constant(p).unwrap() <= rhs + 1e-12, "p = {p}");
        }
    }

    #[test]
    fn table_serializes_with_optional_m() {
        let t = ConstantTable::for_p(1.5).unwrap();
        assert!(t.m_p.is_none());
        let t4 = ConstantTable::for_p(4.0).unwrap();
        assert!(t4.m_p.is_some());
        let json = serde_json::to_string(&t4).unwrap();
        assert!(json.contains("\"c_p\""));
    }
}
