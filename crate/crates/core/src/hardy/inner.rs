//! Inner functions and orthogonal projection onto the shift-invariant
//! subspaces `bH²`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::{analytic_project, eval_taylor, GridFunction};
use crate::error::{Error, Result};

const INTERIOR_RADII: [f64; 6] = [0.0, 0.2, 0.4, 0.6, 0.8, 0.9];
const INTERIOR_ANGLES: usize = 48;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InnerReport {
    /// `max_j ||b_j| − 1|`.
    pub boundary_dev: f64,
    /// `max |b|` over a polar grid inside the disk.
    pub interior_max: f64,
    pub tol: f64,
    pub interior_ok: bool,
    pub is_inner: bool,
}

pub fn inner_check(b: &GridFunction, tol: f64) -> InnerReport {
    let boundary_dev = b.samples().iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max);
    let spec = b.spectrum();
    let taylor = spec.nonnegative();
    let mut interior_max: f64 = 0.0;
    for &r in &INTERIOR_RADII {
        for k in 0..INTERIOR_ANGLES {
            let t = 2.0 * std::f64::consts::PI * k as f64 / INTERIOR_ANGLES as f64;
            interior_max = interior_max.max(eval_taylor(taylor, Complex64::from_polar(r, t)).norm());
        }
    }
    let interior_ok = interior_max <= 1.0 + tol;
    InnerReport { boundary_dev, interior_max, tol, interior_ok, is_inner: interior_ok && boundary_dev <= tol }
}

/// Boundary samples of the Blaschke factor `(z − a)/(1 − āz)`.
pub fn blaschke_factor(n: usize, a: Complex64) -> Result<GridFunction> {
    if !(a.norm() < 1.0) {
        return Err(Error::InvalidInput(format!("Blaschke parameter {a} must lie in the open disk")));
    }
    GridFunction::from_boundary(n, |z| (z - a) / (1.0 - a.conj() * z))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Projection {
    pub projection: GridFunction,
    /// `‖f − P f‖₂`.
    pub distance: f64,
    pub inner: InnerReport,
}

/// Orthogonal projection `b·P₊(conj(b)·f)` onto `bH²` for inner `b`.
pub fn project_onto_bh2(f: &GridFunction, b: &GridFunction, tol: f64) -> Result<Projection> {
    let inner = inner_check(b, tol);
    if !inner.is_inner {
        return Err(Error::NotInner { boundary_dev: inner.boundary_dev, interior_max: inner.interior_max });
    }
    let pulled = f.zip_with(b, |x, y| x * y.conj())?;
    let projection = analytic_project(&pulled).zip_with(b, |x, y| x * y)?;
    let distance = f.zip_with(&projection, |x, y| x - y)?.norm();
    Ok(Projection { projection, distance, inner })
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: usize = 1024;

    fn one() -> GridFunction {
        GridFunction::constant(N, Complex64::new(1.0, 0.0)).unwrap()
    }

    #[test]
    fn identity_function_is_inner() {
        let z = GridFunction::from_boundary(N, |z| z).unwrap();
        let rep = inner_check(&z, 1e-10);
        assert!(rep.boundary_dev < 1e-15 && rep.is_inner);
    }

    #[test]
    fn blaschke_is_inner() {
        let b = blaschke_factor(N, Complex64::new(0.5, 0.0)).unwrap();
        assert!(inner_check(&b, 1e-10).boundary_dev <= 1e-10);
        assert!(blaschke_factor(N, Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn averaged_shift_is_not_inner() {
        let b = GridFunction::from_boundary(N, |z| (1.0 + z) / 2.0).unwrap();
        let rep = inner_check(&b, 1e-10);
        assert!((rep.boundary_dev - 1.0).abs() < 1e-12);
        assert!(!rep.is_inner);
        assert!(matches!(project_onto_bh2(&one(), &b, 1e-10), Err(Error::NotInner { .. })));
    }

    #[test]
    fn distance_from_one_to_z_h2() {
        let z = GridFunction::from_boundary(N, |z| z).unwrap();
        let p = project_onto_bh2(&one(), &z, 1e-10).unwrap();
        assert!(p.projection.sup() < 1e-14);
        assert!((p.distance - 1.0).abs() < 1e-14);
    }

    #[test]
    fn blaschke_distance_and_fixed_points() {
        let a = Complex64::new(0.5, 0.2);
        let b = blaschke_factor(N, a).unwrap();
        let p = project_onto_bh2(&one(), &b, 1e-10).unwrap();
        assert!((p.distance.powi(2) - (1.0 - a.norm_sqr())).abs() < 1e-12);
        // projection of 1 is −ā·b
        let want = b.map(|v| -a.conj() * v);
        assert!(p.projection.max_abs_diff(&want) < 1e-12);

        let inside = GridFunction::from_boundary(N, |z| z * (z - a) / (1.0 - a.conj() * z)).unwrap();
        assert!(project_onto_bh2(&inside, &b, 1e-10).unwrap().distance < 1e-10);
    }
}
