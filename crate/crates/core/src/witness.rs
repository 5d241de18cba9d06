//! Flatness certificates for sampled linear relations `Σ rᵢ mᵢ = 0`.
//!
//! At each atom `x` the relation says `m(x)` lies in the complement
//! `{v : Σ rᵢ(x) vᵢ = 0}`. An orthonormal frame `e_1(x), …, e_n(x)` of that
//! complement (padded with a zero vector) gives bounded cofactors
//! `ρᵢⱼ(x) = (e_j(x))ᵢ` and module elements `μⱼ(x) = ⟨m(x), e_j(x)⟩` with
//!
//! ```text
//! Σᵢ rᵢ ρᵢⱼ = 0        mᵢ = Σⱼ ρᵢⱼ μⱼ
//! ```

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};

type Row = Vec<Complex64>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointwiseRelation {
    /// Atom measures `µ({x})`; zero-weight atoms form the null set.
    pub weights: Vec<f64>,
    /// `r(x)` per atom, each of length `n`.
    pub r: Vec<Row>,
    /// `m(x)` per atom, each of length `n`.
    pub m: Vec<Row>,
}

fn euclid(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

impl PointwiseRelation {
    pub fn new(weights: Vec<f64>, r: Vec<Row>, m: Vec<Row>) -> Result<Self> {
        let rel = Self { weights, r, m };
        rel.validate_shape()?;
        Ok(rel)
    }

    pub fn validate_shape(&self) -> Result<()> {
        let p = self.weights.len();
        if self.r.len() != p || self.m.len() != p {
            return Err(Error::InvalidInput(format!(
                "relation has {p} weights, {} r rows, {} m rows",
                self.r.len(),
                self.m.len()
            )));
        }
        let n = self.terms();
        if n == 0 {
            return Err(Error::InvalidInput("relation needs at least one term".into()));
        }
        for (i, (r, m)) in self.r.iter().zip(&self.m).enumerate() {
            if r.len() != n || m.len() != n {
                return Err(Error::InvalidInput(format!("row {i} does not have {n} entries")));
            }
            ensure_finite(r, "r row")?;
            ensure_finite(m, "m row")?;
        }
        if let Some(i) = self.weights.iter().position(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::InvalidInput(format!("weight {i} is negative or non-finite")));
        }
        Ok(())
    }

    /// Number of relation terms `n`.
    pub fn terms(&self) -> usize {
        self.r.first().map_or(0, Vec::len)
    }

    /// Number of atoms `P`.
    pub fn points(&self) -> usize {
        self.weights.len()
    }

    /// `|Σᵢ rᵢ(x) mᵢ(x)|` at atom `x`.
    pub fn residual_at(&self, x: usize) -> f64 {
        self.r[x].iter().zip(&self.m[x]).map(|(a, b)| a * b).sum::<Complex64>().norm()
    }

    /// Weighted `‖mᵢ‖₂²` for each term.
    pub fn m_norms_sq(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.terms()];
        for (w, row) in self.weights.iter().zip(&self.m) {
            for (acc, z) in out.iter_mut().zip(row) {
                *acc += w * z.norm_sqr();
            }
        }
        out
    }

    /// `max_x ‖r(x)‖_∞`, the scale for the zero-row threshold.
    pub fn r_sup(&self) -> f64 {
        self.r.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn live_points(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.points()).filter(|&x| self.weights[x] > 0.0)
    }
}

/// Orthonormal frame of `{v : Σ rᵢ vᵢ = 0}`, padded to `n` vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthonormalFrame {
    pub vectors: Vec<Row>,
    /// Which of `vectors` are the zero padding.
    pub zero: Vec<bool>,
}

impl OrthonormalFrame {
    fn standard(n: usize) -> Self {
        let vectors = (0..n)
            .map(|j| (0..n).map(|i| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
            .collect();
        Self { vectors, zero: vec![false; n] }
    }
}

fn phase(z: Complex64) -> Complex64 {
    let a = z.norm();
    if a == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        z.unscale(a)
    }
}

/// Builds the frame with a Householder reflector sending `conj(r)/‖r‖` to a
/// multiple of the first coordinate; the remaining reflected coordinates span
/// the complement. Rows with `‖r‖ ≤ zero_threshold` get the standard basis.
pub fn orthocomplement_frame(r: &[Complex64], zero_threshold: f64) -> Result<OrthonormalFrame> {
    let n = r.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty coefficient row".into()));
    }
    ensure_finite(r, "coefficient row")?;
    let norm = euclid(r);
    if norm <= zero_threshold {
        return Ok(OrthonormalFrame::standard(n));
    }
    let v: Row = r.iter().map(|z| z.conj().unscale(norm)).collect();
    // pivot sign opposite to v₁ avoids cancellation in u₁ = v₁ − α
    let alpha = -phase(v[0]);
    let mut u = v;
    u[0] -= alpha;
    let unorm_sq: f64 = u.iter().map(|z| z.norm_sqr()).sum();
    let mut vectors = Vec::with_capacity(n);
    for k in 1..n {
        let coef = u[k].conj() * (2.0 / unorm_sq);
        let col: Row = (0..n)
            .map(|i| {
                let delta = if i == k { 1.0 } else { 0.0 };
                Complex64::new(delta, 0.0) - u[i] * coef
            })
            .collect();
        vectors.push(col);
    }
    vectors.push(vec![Complex64::default(); n]);
    let mut zero = vec![false; n];
    zero[n - 1] = true;
    Ok(OrthonormalFrame { vectors, zero })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    /// Inner dimension; always `n` for this construction.
    pub k: usize,
    /// `rho[x][i][j] = ρᵢⱼ(x)`.
    pub rho: Vec<Vec<Row>>,
    /// `mu[x][j] = μⱼ(x)`.
    pub mu: Vec<Row>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthesisOptions {
    /// Rows with `‖r(x)‖` at or below this are treated as zero. `None` uses
    /// `1e-13·max_x ‖r(x)‖_∞`.
    pub zero_threshold: Option<f64>,
    /// Admissible `|Σ rᵢmᵢ| / (1 + ‖r‖‖m‖)` at positive-weight atoms.
    pub relation_tol: f64,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        Self { zero_threshold: None, relation_tol: 1e-10 }
    }
}

/// Constructs `(ρ, μ)` atom by atom.
pub fn synthesize_witness(rel: &PointwiseRelation, opts: SynthesisOptions) -> Result<WitnessCertificate> {
    rel.validate_shape()?;
    for x in rel.live_points() {
        let bound = opts.relation_tol * (1.0 + euclid(&rel.r[x]) * euclid(&rel.m[x]));
        let residual = rel.residual_at(x);
        if residual > bound {
            return Err(Error::NotARelation { point: x, residual, bound });
        }
    }
    let threshold = opts.zero_threshold.unwrap_or(1e-13 * rel.r_sup());
    let n = rel.terms();
    let per_point: Vec<(Vec<Row>, Row)> = (0..rel.points())
        .into_par_iter()
        .map(|x| {
            let frame = orthocomplement_frame(&rel.r[x], threshold)?;
            let rho = (0..n)
                .map(|i| (0..n).map(|j| frame.vectors[j][i]).collect())
                .collect();
            let mu = frame
                .vectors
                .iter()
                .map(|e| rel.m[x].iter().zip(e).map(|(a, b)| a * b.conj()).sum())
                .collect();
            Ok((rho, mu))
        })
        .collect::<Result<_>>()?;
    let (rho, mu) = per_point.into_iter().unzip();
    Ok(WitnessCertificate { k: n, rho, mu })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    /// `max |Σᵢ rᵢ ρᵢⱼ|` over live atoms and `j`.
    pub max_coeff_residual: f64,
    /// `max |mᵢ − Σⱼ ρᵢⱼ μⱼ|` over live atoms and `i`.
    pub max_reconstruction_residual: f64,
    pub coeff_bound: f64,
    pub reconstruction_bound: f64,
    pub max_abs_rho: f64,
    pub rho_bound_ok: bool,
    /// Weighted `‖μⱼ‖₂²` per `j`.
    pub mu_norms_sq: Vec<f64>,
    /// `Σᵢ` weighted `‖mᵢ‖₂²`.
    pub m_energy: f64,
    pub mu_norm_ok: bool,
    pub tol: f64,
    pub passes: bool,
}

/// Checks both defining identities of a certificate plus its bounds.
pub fn verify_witness(rel: &PointwiseRelation, cert: &WitnessCertificate, tol: f64) -> Result<WitnessReport> {
    rel.validate_shape()?;
    let (p, n, k) = (rel.points(), rel.terms(), cert.k);
    let shape_ok = cert.rho.len() == p
        && cert.mu.len() == p
        && cert.rho.iter().all(|m| m.len() == n && m.iter().all(|row| row.len() == k))
        && cert.mu.iter().all(|row| row.len() == k);
    if !shape_ok {
        return Err(Error::InvalidInput("certificate shape does not match relation".into()));
    }

    let mut coeff: f64 = 0.0;
    let mut recon: f64 = 0.0;
    let mut max_rho: f64 = 0.0;
    let mut r_max: f64 = 0.0;
    let mut m_max: f64 = 0.0;
    let mut mu_norms_sq = vec![0.0; k];
    for x in rel.live_points() {
        let (r, m, rho, mu) = (&rel.r[x], &rel.m[x], &cert.rho[x], &cert.mu[x]);
        r_max = r_max.max(euclid(r));
        m_max = m_max.max(euclid(m));
        for j in 0..k {
            let s: Complex64 = (0..n).map(|i| r[i] * rho[i][j]).sum();
            coeff = coeff.max(s.norm());
            mu_norms_sq[j] += rel.weights[x] * mu[j].norm_sqr();
        }
        for i in 0..n {
            let s: Complex64 = (0..k).map(|j| rho[i][j] * mu[j]).sum();
            recon = recon.max((m[i] - s).norm());
            max_rho = rho[i].iter().fold(max_rho, |a, z| a.max(z.norm()));
        }
    }
    let m_energy: f64 = rel.m_norms_sq().iter().sum();
    let coeff_bound = tol * (1.0 + r_max);
    let reconstruction_bound = tol * (1.0 + m_max);
    let rho_bound_ok = max_rho <= 1.0 + 1e-12;
    let mu_norm_ok = mu_norms_sq.iter().all(|v| *v <= m_energy + tol * (1.0 + m_energy));
    Ok(WitnessReport {
        max_coeff_residual: coeff,
        max_reconstruction_residual: recon,
        coeff_bound,
        reconstruction_bound,
        max_abs_rho: max_rho,
        rho_bound_ok,
        passes: coeff <= coeff_bound && recon <= reconstruction_bound && rho_bound_ok && mu_norm_ok,
        mu_norms_sq,
        m_energy,
        mu_norm_ok,
        tol,
    })
}
