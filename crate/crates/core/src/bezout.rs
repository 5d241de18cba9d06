//! Pointwise constructions behind the Bézout property of `L∞`: polar parts
//! `f = |f|·u_f` and the principal generator `|f| + |g|` of `⟨f, g⟩`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::sampled::SampledFunction;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `|z|` as an unevaluated sum `hi + lo`, accurate to about `2⁻¹⁰⁴`.
fn modulus_dd(z: Complex64) -> (f64, f64) {
    let big = z.re.abs().max(z.im.abs());
    if big == 0.0 || !big.is_finite() {
        return (z.norm(), 0.0);
    }
    let k = big.log2().floor() as i32;
    let (x, y) = (ldexp(z.re, -k), ldexp(z.im, -k));
    let (p, e) = two_prod(x, x);
    let (q, f) = two_prod(y, y);
    let (s, t) = two_sum(p, q);
    let lo = t + e + f;
    let r = s.sqrt();
    let (rr, rre) = two_prod(r, r);
    let corr = ((s - rr) - rre + lo) / (2.0 * r);
    let (hi, lo) = two_sum(r, corr);
    (ldexp(hi, k), ldexp(lo, k))
}

fn ldexp(x: f64, k: i32) -> f64 {
    x * 2f64.powi(k)
}

/// `x / (hi + lo)`, rounded once.
fn div_dd(x: f64, (hi, lo): (f64, f64)) -> f64 {
    let q = x / hi;
    let r = (-q).mul_add(hi, x) - q * lo;
    q + r / hi
}

fn unit_part(z: Complex64) -> Complex64 {
    if z == Complex64::default() {
        return ONE;
    }
    let m = modulus_dd(z);
    Complex64::new(div_dd(z.re, m), div_dd(z.im, m))
}

/// `|f| + |g|`, rounded once.
fn modulus_sum(f: Complex64, g: Complex64) -> f64 {
    let (a, b) = modulus_dd(f);
    let (c, d) = modulus_dd(g);
    let (s, e) = two_sum(a, c);
    s + (e + b + d)
}

/// Splits `f` into its modulus `|f|` and unimodular part `u_f` (equal to 1
/// where `f` vanishes).
pub fn polar_parts(f: &SampledFunction) -> (SampledFunction, SampledFunction) {
    let modulus = f.values.iter().map(|z| Complex64::new(z.norm(), 0.0)).collect();
    let unit = f.values.iter().copied().map(unit_part).collect();
    (f.with_values(modulus), f.with_values(unit))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BezoutGenerator {
    /// `d = |f| + |g|`.
    pub d: SampledFunction,
    /// `F` with `f = F·d`.
    pub big_f: SampledFunction,
    /// `G` with `g = G·d`.
    pub big_g: SampledFunction,
    /// `conj(u_f)`, so that `d = f·cf + g·cg`.
    pub cf: SampledFunction,
    pub cg: SampledFunction,
}

/// Principal generator of `⟨f, g⟩` together with the cofactors certifying
/// both inclusions.
pub fn principal_generator(f: &SampledFunction, g: &SampledFunction) -> Result<BezoutGenerator> {
    f.same_atoms(g)?;
    let n = f.len();
    let mut d = Vec::with_capacity(n);
    let mut big_f = Vec::with_capacity(n);
    let mut big_g = Vec::with_capacity(n);
    let mut cf = Vec::with_capacity(n);
    let mut cg = Vec::with_capacity(n);
    for (&fv, &gv) in f.values.iter().zip(&g.values) {
        let dv = modulus_sum(fv, gv);
        d.push(Complex64::new(dv, 0.0));
        if dv == 0.0 {
            big_f.push(ONE);
            big_g.push(ONE);
        } else {
            big_f.push(fv.unscale(dv));
            big_g.push(gv.unscale(dv));
        }
        cf.push(unit_part(fv).conj());
        cg.push(unit_part(gv).conj());
    }
    Ok(BezoutGenerator {
        d: f.with_values(d),
        big_f: f.with_values(big_f),
        big_g: f.with_values(big_g),
        cf: f.with_values(cf),
        cg: f.with_values(cg),
    })
}

/// Distance between `a` and `b` in units in the last place of the larger
/// modulus. Both zero gives 0.
pub fn ulp_distance(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        return 0.0;
    }
    let ulp = 2f64.powi(scale.log2().floor() as i32) * f64::EPSILON;
    (a - b).norm() / ulp
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BezoutReport {
    /// Worst ulp distance in `f = F·d`.
    pub f_reconstruction_ulps: f64,
    pub g_reconstruction_ulps: f64,
    /// Worst ulp distance in `d = f·cf + g·cg`.
    pub generator_ulps: f64,
    pub max_abs_big_f: f64,
    pub max_abs_big_g: f64,
    /// Worst `||cf| − 1|` and `||cg| − 1|`.
    pub cofactor_unimodular_dev: f64,
}

impl BezoutReport {
    pub fn passes(&self, max_ulps: f64) -> bool {
        self.f_reconstruction_ulps <= max_ulps
            && self.g_reconstruction_ulps <= max_ulps
            && self.generator_ulps <= max_ulps
            && self.max_abs_big_f <= 1.0 + max_ulps * f64::EPSILON
            && self.max_abs_big_g <= 1.0 + max_ulps * f64::EPSILON
            && self.cofactor_unimodular_dev <= max_ulps * f64::EPSILON
    }
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let t = s - a;
    (s, (a - (s - t)) + (b - t))
}

/// `Σ xᵢyᵢ` in twice the working precision, rounded once.
fn dot2(pairs: &[(f64, f64)]) -> f64 {
    let (mut s, mut c) = (0.0, 0.0);
    for &(x, y) in pairs {
        let (p, e) = two_prod(x, y);
        let (t, f) = two_sum(s, p);
        s = t;
        c += e + f;
    }
    s + c
}

/// `f·cf + g·cg` with a single final rounding per component.
fn combination(f: Complex64, cf: Complex64, g: Complex64, cg: Complex64) -> Complex64 {
    Complex64::new(
        dot2(&[(f.re, cf.re), (-f.im, cf.im), (g.re, cg.re), (-g.im, cg.im)]),
        dot2(&[(f.re, cf.im), (f.im, cf.re), (g.re, cg.im), (g.im, cg.re)]),
    )
}

/// Re-evaluates the membership identities on every atom.
pub fn verify_generator(f: &SampledFunction, g: &SampledFunction, gen: &BezoutGenerator) -> BezoutReport {
    let mut rep = BezoutReport {
        f_reconstruction_ulps: 0.0,
        g_reconstruction_ulps: 0.0,
        generator_ulps: 0.0,
        max_abs_big_f: 0.0,
        max_abs_big_g: 0.0,
        cofactor_unimodular_dev: 0.0,
    };
    for i in 0..f.len() {
        let d = gen.d.values[i];
        rep.f_reconstruction_ulps = rep
            .f_reconstruction_ulps
            .max(ulp_distance(f.values[i], gen.big_f.values[i] * d));
        rep.g_reconstruction_ulps = rep
            .g_reconstruction_ulps
            .max(ulp_distance(g.values[i], gen.big_g.values[i] * d));
        let combo = combination(f.values[i], gen.cf.values[i], g.values[i], gen.cg.values[i]);
        rep.generator_ulps = rep.generator_ulps.max(ulp_distance(d, combo));
        rep.max_abs_big_f = rep.max_abs_big_f.max(gen.big_f.values[i].norm());
        rep.max_abs_big_g = rep.max_abs_big_g.max(gen.big_g.values[i].norm());
        let dev = (gen.cf.values[i].norm() - 1.0)
            .abs()
            .max((gen.cg.values[i].norm() - 1.0).abs());
        rep.cofactor_unimodular_dev = rep.cofactor_unimodular_dev.max(dev);
    }
    rep
}

/// Why a principal ideal `⟨g⟩` cannot absorb all of `L²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrictnessReport {
    /// `⟨g⟩` is proper: `g` vanishes on a set of positive measure. On a
    /// finite atom set a `g` without such zeros is invertible in `L∞`.
    pub proper: bool,
    /// Measure of the zero set `K` of `g` (positive-weight atoms only).
    pub zero_set_measure: f64,
    /// Indices of the atoms in `K`; `1_K` lies outside `g·L²`.
    pub zero_atoms: Vec<usize>,
    /// Lower bound for `‖1_K − g·h‖₂²` over every `h`, namely `µ(K)`.
    pub residual_lower_bound: f64,
    /// `max 1/|g|` over positive-weight atoms when `g` has no zeros there.
    pub inverse_sup: Option<f64>,
}

/// Non-solvability certificate for `g·h = 1_K` with `K = {g = 0}`.
pub fn principal_strictness(g: &SampledFunction) -> StrictnessReport {
    let zero_atoms: Vec<usize> = (0..g.len())
        .filter(|&i| g.weights[i] > 0.0 && g.values[i] == Complex64::default())
        .collect();
    let zero_set_measure: f64 = zero_atoms.iter().map(|&i| g.weights[i]).sum();
    let inverse_sup = zero_atoms.is_empty().then(|| {
        g.values
            .iter()
            .zip(&g.weights)
            .filter(|(_, w)| **w > 0.0)
            .map(|(v, _)| 1.0 / v.norm())
            .fold(0.0, f64::max)
    });
    StrictnessReport {
        proper: !zero_atoms.is_empty(),
        zero_set_measure,
        zero_atoms,
        residual_lower_bound: zero_set_measure,
        inverse_sup,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(z: Complex64) -> SampledFunction {
        SampledFunction::new(vec![z], vec![1.0]).unwrap()
    }

    #[test]
    fn polar_parts_of_three_four() {
        let (m, u) = polar_parts(&single(Complex64::new(3.0, 4.0)));
        assert_eq!(m.values[0], Complex64::new(5.0, 0.0));
        assert_eq!(u.values[0], Complex64::new(0.6, 0.8));
    }

    #[test]
    fn polar_parts_conventions() {
        let (m, u) = polar_parts(&single(Complex64::default()));
        assert_eq!(m.values[0], Complex64::default());
        assert_eq!(u.values[0], ONE);
        let (m, u) = polar_parts(&single(Complex64::new(-2.0, 0.0)));
        assert_eq!(m.values[0], Complex64::new(2.0, 0.0));
        assert_eq!(u.values[0], Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn polar_identities() {
        let f = SampledFunction::new(
            vec![Complex64::new(0.3, -1.7), Complex64::new(-5.0, 2.0), Complex64::default()],
            vec![1.0; 3],
        )
        .unwrap();
        let (m, u) = polar_parts(&f);
        let (_, ubar) = polar_parts(&f.with_values(f.values.iter().map(|z| z.conj()).collect()));
        for i in 0..3 {
            assert!(ulp_distance(f.values[i], m.values[i] * u.values[i]) <= 2.0);
            assert!(ulp_distance(ONE, u.values[i] * ubar.values[i]) <= 2.0);
            assert!(ulp_distance(m.values[i], f.values[i] * u.values[i].conj()) <= 2.0);
        }
    }

    #[test]
    fn generator_examples() {
        let gen = principal_generator(&single(Complex64::new(3.0, 4.0)), &single(Complex64::default())).unwrap();
        assert_eq!(gen.d.values[0], Complex64::new(5.0, 0.0));
        assert_eq!(gen.big_f.values[0], Complex64::new(0.6, 0.8));
        assert_eq!(gen.big_g.values[0], Complex64::default());

        let zero = single(Complex64::default());
        let gen = principal_generator(&zero, &zero).unwrap();
        assert_eq!(gen.d.values[0], Complex64::default());
        assert_eq!(gen.big_f.values[0], ONE);
        assert_eq!(gen.big_g.values[0], ONE);

        let f = single(ONE);
        let g = single(Complex64::i());
        let gen = principal_generator(&f, &g).unwrap();
        assert_eq!(gen.d.values[0], Complex64::new(2.0, 0.0));
        assert_eq!(gen.big_f.values[0], Complex64::new(0.5, 0.0));
        assert_eq!(gen.big_g.values[0], Complex64::new(0.0, 0.5));
        assert_eq!(gen.cg.values[0], Complex64::new(0.0, -1.0));
        let rep = verify_generator(&f, &g, &gen);
        assert!(rep.passes(2.0), "{rep:?}");
    }

    #[test]
    fn mismatched_atoms_rejected() {
        let f = SampledFunction::new(vec![ONE], vec![1.0]).unwrap();
        let g = SampledFunction::new(vec![ONE], vec![2.0]).unwrap();
        assert!(principal_generator(&f, &g).is_err());
    }

    #[test]
    fn strictness_needs_zero_set() {
        let g = SampledFunction::new(vec![ONE, Complex64::default(), Complex64::default()], vec![0.5, 0.25, 0.0])
            .unwrap();
        let rep = principal_strictness(&g);
        assert!(rep.proper);
        assert_eq!(rep.zero_atoms, vec![1]);
        assert_eq!(rep.zero_set_measure, 0.25);

        let g = SampledFunction::new(vec![Complex64::new(0.5, 0.0), ONE], vec![1.0, 1.0]).unwrap();
        let rep = principal_strictness(&g);
        assert!(!rep.proper);
        assert_eq!(rep.inverse_sup, Some(2.0));
    }
}
