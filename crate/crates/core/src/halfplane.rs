//! Transfer between the disk and the right half-plane through
//! `φ(s) = (s − 1)/(s + 1)`.
//!
//! `H∞` functions move by composition alone. `H²` functions pick up the
//! factor `1/(1 + s)` on the way to the half-plane and `2/(1 − z)` on the way
//! back; the two factors cancel, so the maps are mutually inverse.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hardy::{eval_taylor, HardyFactorization, OuterFunction};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `φ(s) = (s − 1)/(s + 1)`.
pub fn mobius(s: Complex64) -> Result<Complex64> {
    if !(s.re.is_finite() && s.im.is_finite()) || s == -ONE {
        return Err(Error::InvalidInput(format!("φ is undefined at {s}")));
    }
    Ok((s - 1.0) / (s + 1.0))
}

/// `φ⁻¹(z) = (1 + z)/(1 − z)`.
pub fn mobius_inv(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) || z == ONE {
        return Err(Error::InvalidInput(format!("φ⁻¹ is undefined at {z}")));
    }
    Ok((1.0 + z) / (1.0 - z))
}

/// A function on the unit disk.
pub trait DiskFunction {
    fn eval(&self, z: Complex64) -> Complex64;
}

/// A function on the right half-plane.
pub trait HalfPlaneFunction {
    fn eval(&self, s: Complex64) -> Complex64;
}

impl<F: Fn(Complex64) -> Complex64> DiskFunction for F {
    fn eval(&self, z: Complex64) -> Complex64 {
        self(z)
    }
}

/// Wraps a closure as a half-plane function.
pub struct HalfPlaneFn<F>(pub F);

impl<F: Fn(Complex64) -> Complex64> HalfPlaneFunction for HalfPlaneFn<F> {
    fn eval(&self, s: Complex64) -> Complex64 {
        (self.0)(s)
    }
}

/// A truncated power series `Σ a_m z^m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Taylor(pub Vec<Complex64>);

impl DiskFunction for Taylor {
    fn eval(&self, z: Complex64) -> Complex64 {
        eval_taylor(&self.0, z)
    }
}

impl DiskFunction for OuterFunction {
    fn eval(&self, z: Complex64) -> Complex64 {
        OuterFunction::eval(self, z)
    }
}

/// The `h` factor of a Hardy factorization, through its Taylor series.
pub struct FactorH<'a>(pub &'a HardyFactorization);

impl DiskFunction for FactorH<'_> {
    fn eval(&self, z: Complex64) -> Complex64 {
        self.0.eval_h(z)
    }
}

fn check_halfplane(s: Complex64) -> Result<()> {
    if !(s.re > 0.0 && s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::InvalidInput(format!("{s} is not in the open right half-plane")));
    }
    Ok(())
}

fn check_disk(z: Complex64) -> Result<()> {
    if !(z.norm() < 1.0) {
        return Err(Error::InvalidInput(format!("{z} is not in the open unit disk")));
    }
    Ok(())
}

/// `F(s) = f(φ(s))/(1 + s)`.
pub struct DiskToHalfPlane<D>(pub D);

impl<D: DiskFunction> DiskToHalfPlane<D> {
    pub fn at(&self, s: Complex64) -> Result<Complex64> {
        check_halfplane(s)?;
        Ok(self.0.eval(mobius(s)?) / (1.0 + s))
    }
}

/// `f(z) = 2F(φ⁻¹(z))/(1 − z)`.
pub struct HalfPlaneToDisk<H>(pub H);

impl<H: HalfPlaneFunction> HalfPlaneToDisk<H> {
    pub fn at(&self, z: Complex64) -> Result<Complex64> {
        check_disk(z)?;
        Ok(2.0 * self.0.eval(mobius_inv(z)?) / (1.0 - z))
    }
}

impl<D: DiskFunction> HalfPlaneFunction for DiskToHalfPlane<D> {
    fn eval(&self, s: Complex64) -> Complex64 {
        self.0.eval((s - 1.0) / (s + 1.0)) / (1.0 + s)
    }
}

impl<H: HalfPlaneFunction> DiskFunction for HalfPlaneToDisk<H> {
    fn eval(&self, z: Complex64) -> Complex64 {
        2.0 * self.0.eval((1.0 + z) / (1.0 - z)) / (1.0 - z)
    }
}

pub fn disk_to_halfplane_h2<D: DiskFunction>(f: D) -> DiskToHalfPlane<D> {
    DiskToHalfPlane(f)
}

pub fn halfplane_to_disk_h2<H: HalfPlaneFunction>(f: H) -> HalfPlaneToDisk<H> {
    HalfPlaneToDisk(f)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfPlaneSamples {
    pub points: Vec<Complex64>,
    pub values: Vec<Complex64>,
}

impl HalfPlaneSamples {
    pub fn sample<D: DiskFunction>(f: &DiskToHalfPlane<D>, points: &[Complex64]) -> Result<Self> {
        let values = points.iter().map(|&s| f.at(s)).collect::<Result<_>>()?;
        Ok(Self { points: points.to_vec(), values })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransferReport {
    pub points: Vec<Complex64>,
    /// `F(s) = f(φ(s))/(1 + s)`.
    pub big_f: Vec<Complex64>,
    /// `G(s) = g(φ(s))`.
    pub big_g: Vec<Complex64>,
    /// `H(s) = h(φ(s))/(1 + s)`.
    pub big_h: Vec<Complex64>,
    /// `max |F − G·H|` over the points.
    pub max_defect: f64,
    /// `max |f − g·h|` over `φ(points)`.
    pub disk_defect: f64,
    /// `max |1/(1 + s)|` over the points.
    pub jacobian_sup: f64,
    /// `sup |G|` over the points and `sup |g|` over their images.
    pub g_sup_halfplane: f64,
    pub g_sup_disk: f64,
}

impl TransferReport {
    /// The half-plane defect is bounded by the disk defect times the
    /// Jacobian factor, up to rounding.
    pub fn conformal_bookkeeping_ok(&self) -> bool {
        self.max_defect <= self.disk_defect * self.jacobian_sup * (1.0 + 1e-9) + 1e-15
    }
}

/// Moves `f = g·h` on the disk to `F = G·H` on the half-plane.
pub fn transfer_factorization(
    f: &impl DiskFunction,
    g: &impl DiskFunction,
    h: &impl DiskFunction,
    points: &[Complex64],
) -> Result<TransferReport> {
    let mut rep = TransferReport {
        points: points.to_vec(),
        big_f: Vec::with_capacity(points.len()),
        big_g: Vec::with_capacity(points.len()),
        big_h: Vec::with_capacity(points.len()),
        max_defect: 0.0,
        disk_defect: 0.0,
        jacobian_sup: 0.0,
        g_sup_halfplane: 0.0,
        g_sup_disk: 0.0,
    };
    for &s in points {
        check_halfplane(s)?;
        let z = mobius(s)?;
        let jac = 1.0 / (1.0 + s);
        let (fz, gz, hz) = (f.eval(z), g.eval(z), h.eval(z));
        let (bf, bg, bh) = (fz * jac, gz, hz * jac);
        rep.max_defect = rep.max_defect.max((bf - bg * bh).norm());
        rep.disk_defect = rep.disk_defect.max((fz - gz * hz).norm());
        rep.jacobian_sup = rep.jacobian_sup.max(jac.norm());
        rep.g_sup_halfplane = rep.g_sup_halfplane.max(bg.norm());
        rep.g_sup_disk = rep.g_sup_disk.max(gz.norm());
        rep.big_f.push(bf);
        rep.big_g.push(bg);
        rep.big_h.push(bh);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn mobius_points() {
        assert_eq!(mobius(ONE).unwrap(), Complex64::default());
        assert_eq!(mobius_inv(Complex64::default()).unwrap(), ONE);
        let z = mobius(Complex64::i()).unwrap();
        assert!((z - Complex64::i()).norm() < 1e-15);
        assert!((z.norm() - 1.0).abs() < 1e-15);
        assert!(mobius(-ONE).is_err());
        assert!(mobius_inv(ONE).is_err());
    }

    #[test]
    fn imaginary_axis_to_circle() {
        for k in -50..=50 {
            let z = mobius(c(0.0, k as f64 * 0.37)).unwrap();
            assert!((z.norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn one_minus_z_over_two() {
        let big_f = disk_to_halfplane_h2(|z: Complex64| (1.0 - z) / 2.0);
        for s in [c(1.0, 0.0), c(0.3, 2.0), c(5.0, -1.0)] {
            let want = 1.0 / ((1.0 + s) * (1.0 + s));
            assert!((big_f.at(s).unwrap() - want).norm() < 1e-15);
        }
        assert!(big_f.at(c(-0.1, 0.0)).is_err());
        assert!(big_f.at(c(0.0, 1.0)).is_err());

        let back = halfplane_to_disk_h2(HalfPlaneFn(|s: Complex64| 1.0 / ((1.0 + s) * (1.0 + s))));
        let z = c(0.2, -0.4);
        assert!((back.at(z).unwrap() - (1.0 - z) / 2.0).norm() < 1e-15);
        assert!(back.at(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn constant_one() {
        let big_f = disk_to_halfplane_h2(|_: Complex64| ONE);
        let s = c(0.7, 0.3);
        assert!((big_f.at(s).unwrap() - 1.0 / (1.0 + s)).norm() < 1e-16);
        let zero = disk_to_halfplane_h2(|_: Complex64| Complex64::default());
        assert_eq!(zero.at(s).unwrap(), Complex64::default());
    }

    #[test]
    fn transfer_of_simple_factorization() {
        let f = |z: Complex64| (1.0 - z) / 2.0;
        let g = |z: Complex64| (1.0 - z) / 2.0;
        let h = |_: Complex64| ONE;
        let pts = [c(1.0, 0.0), c(0.5, 3.0), c(2.0, -1.5)];
        let rep = transfer_factorization(&f, &g, &h, &pts).unwrap();
        for (i, s) in pts.iter().enumerate() {
            let j = 1.0 / (1.0 + s);
            assert!((rep.big_f[i] - j * j).norm() < 1e-15);
            assert!((rep.big_g[i] - j).norm() < 1e-15);
            assert!((rep.big_h[i] - j).norm() < 1e-15);
        }
        assert!(rep.max_defect < 1e-15);
        assert_eq!(rep.g_sup_disk, rep.g_sup_halfplane);

        let rep = transfer_factorization(&f, &|_: Complex64| ONE, &f, &pts).unwrap();
        assert_eq!(rep.max_defect, 0.0);
        assert!(transfer_factorization(&f, &g, &h, &[c(-1.0, 0.0)]).is_err());
    }
}
