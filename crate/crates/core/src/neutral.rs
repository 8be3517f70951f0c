//! Linear stability of the trivial state: Mexican-hat kernel, its hyperbolic
//! Fourier transform, and the neutral stability surface.
//!
//! With geodesic polar coordinates `(r, ψ)` on the disc and `u = log z3`,
//! the transform of a radial kernel reduces to
//!
//! ```text
//! ŵ(ρ, β) = 2π ∫∫ f(√(r² + u²)) φ_ρ(r) sinh r cos(u log β) dr du
//! ```
//!
//! where `φ_ρ(r)` is the average of `e_{-ρ,b}` over the geodesic circle of
//! radius `r`.

use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypgeo::{DiscPoint, Wave, C64};

/// Difference of Gaussians in the hyperbolic distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MexicanHat {
    pub sigma1: f64,
    pub sigma2: f64,
    pub theta: f64,
}

impl Default for MexicanHat {
    fn default() -> Self {
        MexicanHat { sigma1: 1.0, sigma2: 2.0, theta: 1.0 }
    }
}

impl MexicanHat {
    /// `sigma1 == sigma2` is accepted so that the null kernel is expressible.
    pub fn new(sigma1: f64, sigma2: f64, theta: f64) -> Result<Self> {
        if !(sigma1 > 0.0 && sigma2 > 0.0 && sigma1.is_finite() && sigma2.is_finite()) {
            return Err(Error::Invalid(format!("widths must be positive, got ({sigma1}, {sigma2})")));
        }
        if sigma1 > sigma2 {
            return Err(Error::Invalid(format!("sigma1 = {sigma1} exceeds sigma2 = {sigma2}")));
        }
        if !(theta <= 1.0) {
            return Err(Error::Invalid(format!("theta = {theta} exceeds 1")));
        }
        Ok(MexicanHat { sigma1, sigma2, theta })
    }

    fn gauss(s: f64, x: f64) -> f64 {
        (2.0 * PI * s * s).sqrt().recip() * (-x * x / (2.0 * s * s)).exp()
    }

    pub fn eval(&self, x: f64) -> f64 {
        Self::gauss(self.sigma1, x) - self.theta * Self::gauss(self.sigma2, x)
    }

    /// Decreasing bound on `|f|` over `[x, ∞)`.
    pub fn envelope(&self, x: f64) -> f64 {
        Self::gauss(self.sigma1, x) + self.theta.abs() * Self::gauss(self.sigma2, x)
    }

    /// Smallest integer radius at which the envelope drops below `cutoff`.
    pub fn truncation_radius(&self, cutoff: f64) -> f64 {
        let mut r = 1.0;
        while self.envelope(r) >= cutoff {
            r += 1.0;
        }
        r
    }

    /// Positive zeros of `f` located by sign changes on a fine grid and bisection.
    pub fn sign_changes(&self, upto: f64) -> Vec<f64> {
        let n = 20_000;
        let h = upto / n as f64;
        let mut out = Vec::new();
        for i in 0..n {
            let (mut a, mut b) = (i as f64 * h, (i + 1) as f64 * h);
            let (fa, fb) = (self.eval(a), self.eval(b));
            if fa == 0.0 || fa * fb >= 0.0 {
                continue;
            }
            for _ in 0..100 {
                let m = 0.5 * (a + b);
                if self.eval(m) * fa > 0.0 {
                    a = m;
                } else {
                    b = m;
                }
            }
            out.push(0.5 * (a + b));
        }
        out
    }
}

pub fn kernel_eval(f: &MexicanHat, x: f64) -> f64 {
    f.eval(x)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else if n == 1 { z } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * p - pm) / (z * z - 1.0);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Composite rule on `[0, len]` with unit panels.
fn panel_rule(len: f64, per_unit: usize) -> (Vec<f64>, Vec<f64>) {
    let (gx, gw) = gauss_legendre(per_unit);
    let panels = len.ceil().max(1.0) as usize;
    let h = len / panels as f64;
    let mut x = Vec::with_capacity(panels * per_unit);
    let mut w = Vec::with_capacity(panels * per_unit);
    for p in 0..panels {
        let a = p as f64 * h;
        for (t, wt) in gx.iter().zip(&gw) {
            x.push(a + 0.5 * h * (t + 1.0));
            w.push(0.5 * h * wt);
        }
    }
    (x, w)
}

/// Uniform average of `e_{ρ,b}` over `n` points of the geodesic circle of
/// radius `r`. Spectrally accurate only while `n e^{-r}` is large.
pub fn circle_average_uniform(rho: f64, r: f64, b: C64, n: usize) -> C64 {
    let w = Wave { rho, b };
    let t = (0.5 * r).tanh();
    (0..n)
        .map(|k| w.eval(DiscPoint(C64::from_polar(t, 2.0 * PI * k as f64 / n as f64))))
        .sum::<C64>()
        / n as f64
}

/// Average of `e_{ρ,b}` over the geodesic circle of radius `r`. The wave
/// peaks within about `e^{-r}` of `arg b`, so the rule is composite
/// Gauss–Legendre with panels halving toward that direction.
pub fn circle_average(rho: f64, r: f64, b: C64, per_panel: usize) -> C64 {
    if r == 0.0 {
        return C64::new(1.0, 0.0);
    }
    let w = Wave { rho, b };
    let t = (0.5 * r).tanh();
    let (gx, gw) = gauss_legendre(per_panel);
    let mut edges = vec![PI];
    while *edges.last().unwrap() > 0.25 * (-r).exp() {
        let e = 0.5 * edges.last().unwrap();
        edges.push(e);
    }
    edges.push(0.0);
    edges.reverse();
    let phase = b.arg();
    let mut s = C64::new(0.0, 0.0);
    for pair in edges.windows(2) {
        let (a, c) = (pair[0], pair[1]);
        for (x, wt) in gx.iter().zip(&gw) {
            let psi = a + 0.5 * (c - a) * (x + 1.0);
            let wt = 0.5 * (c - a) * wt;
            let up = w.eval(DiscPoint(C64::from_polar(t, phase + psi)));
            let down = w.eval(DiscPoint(C64::from_polar(t, phase - psi)));
            s += (up + down) * wt;
        }
    }
    s / (2.0 * PI)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureOptions {
    /// Gauss–Legendre points per unit length in `r` and `u`.
    pub per_unit: usize,
    /// Points per angular panel.
    pub angular: usize,
    /// Kernel envelope level at which the domain is truncated.
    pub cutoff: f64,
    /// Largest tolerated tail estimate.
    pub tail_tol: f64,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions { per_unit: 32, angular: 16, cutoff: 1e-12, tail_tol: 1e-6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WHat {
    pub value: f64,
    /// Imaginary part left over from the complex waves.
    pub imag: f64,
    /// Bound on the contribution beyond the truncation box.
    pub tail: f64,
    pub radius: f64,
}

/// Precomputed radial and axial data for one kernel.
#[derive(Debug, Clone)]
pub struct Transform {
    pub kernel: MexicanHat,
    pub opts: QuadratureOptions,
    pub radius: f64,
    pub tail: f64,
    r: Vec<f64>,
    wr: Vec<f64>,
    u: Vec<f64>,
    wu: Vec<f64>,
    /// `f(√(r_i² + u_j²))`, row-major in `r`.
    table: Vec<f64>,
}

impl Transform {
    pub fn new(kernel: MexicanHat, opts: QuadratureOptions) -> Result<Self> {
        let radius = kernel.truncation_radius(opts.cutoff);
        Self::with_radius(kernel, opts, radius)
    }

    pub fn with_radius(kernel: MexicanHat, opts: QuadratureOptions, radius: f64) -> Result<Self> {
        let (r, wr) = panel_rule(radius, opts.per_unit);
        let (u, wu) = panel_rule(radius, opts.per_unit);
        let table = r
            .iter()
            .flat_map(|&ri| u.iter().map(move |&uj| (ri, uj)))
            .map(|(ri, uj)| kernel.eval((ri * ri + uj * uj).sqrt()))
            .collect();
        let tail = tail_bound(&kernel, radius, &opts);
        if tail > opts.tail_tol {
            return Err(Error::Numerical(format!(
                "truncation radius {radius} too small: tail estimate {tail:.3e}"
            )));
        }
        Ok(Transform { kernel, opts, radius, tail, r, wr, u, wu, table })
    }

    /// `φ_ρ` at the radial nodes.
    pub fn radial_profile(&self, rho: f64, b: C64) -> Vec<C64> {
        self.r.iter().map(|&r| circle_average(-rho, r, b, self.opts.angular)).collect()
    }

    /// `∫ f(√(r_i² + u²)) cos(u log β) du` over the real line.
    pub fn axial_profile(&self, beta: f64) -> Vec<f64> {
        let lb = beta.ln();
        let cu: Vec<f64> = self.u.iter().zip(&self.wu).map(|(u, w)| 2.0 * w * (u * lb).cos()).collect();
        self.table
            .chunks(self.u.len())
            .map(|row| row.iter().zip(&cu).map(|(f, c)| f * c).sum())
            .collect()
    }

    pub fn combine(&self, radial: &[C64], axial: &[f64]) -> WHat {
        let s: C64 = self
            .r
            .iter()
            .zip(&self.wr)
            .zip(radial.iter().zip(axial))
            .map(|((r, w), (p, a))| p * (w * r.sinh() * a))
            .sum();
        let s = s * (2.0 * PI);
        WHat { value: s.re, imag: s.im, tail: self.tail, radius: self.radius }
    }

    pub fn eval_at(&self, rho: f64, beta: f64, b: C64) -> Result<WHat> {
        if !(beta > 0.0) {
            return Err(Error::Invalid(format!("beta = {beta} must be positive")));
        }
        Ok(self.combine(&self.radial_profile(rho, b), &self.axial_profile(beta)))
    }

    pub fn eval(&self, rho: f64, beta: f64) -> Result<WHat> {
        self.eval_at(rho, beta, C64::new(1.0, 0.0))
    }
}

/// `2π ∫∫ envelope · φ_0 · sinh r` over `[0, 2R]² \ [0, R]²` (both signs of `u`),
/// using `|φ_ρ| ≤ φ_0` and `|cos| ≤ 1`.
fn tail_bound(kernel: &MexicanHat, radius: f64, opts: &QuadratureOptions) -> f64 {
    let (x, w) = panel_rule(2.0 * radius, opts.per_unit.min(16));
    let phi0: Vec<f64> = x.iter().map(|&r| circle_average(0.0, r, C64::new(1.0, 0.0), opts.angular).re).collect();
    let mut s = 0.0;
    for (i, (&r, &wr)) in x.iter().zip(&w).enumerate() {
        for (&u, &wu) in x.iter().zip(&w) {
            if r <= radius && u <= radius {
                continue;
            }
            s += wr * wu * kernel.envelope((r * r + u * u).sqrt()) * phi0[i] * r.sinh();
        }
    }
    2.0 * 2.0 * PI * s
}

pub fn w_hat(f: &MexicanHat, rho: f64, beta: f64) -> Result<WHat> {
    Transform::new(*f, QuadratureOptions::default())?.eval(rho, beta)
}

/// Grid of wavenumbers and log-symmetric `β` values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeutralGrid {
    pub rhos: Vec<f64>,
    pub betas: Vec<f64>,
}

impl NeutralGrid {
    /// `n` values of `ρ` in `[0, rho_max]` and `n` of `β` in
    /// `[e^{-log_beta_max}, e^{log_beta_max}]`; `n` odd puts `β = 1` on the grid.
    pub fn uniform(n: usize, rho_max: f64, log_beta_max: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::Invalid(format!("grid size {n} must be at least 3")));
        }
        let step = |i: usize| i as f64 / (n - 1) as f64;
        Ok(NeutralGrid {
            rhos: (0..n).map(|i| rho_max * step(i)).collect(),
            betas: (0..n).map(|i| (log_beta_max * (2.0 * step(i) - 1.0)).exp()).collect(),
        })
    }
}

impl Default for NeutralGrid {
    fn default() -> Self {
        NeutralGrid::uniform(41, 4.0, 2.0).expect("valid grid")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NeutralStatus {
    Unstable,
    NoInstability,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Minimizer {
    pub rho: f64,
    pub beta: f64,
    pub mu: f64,
    pub i: usize,
    pub j: usize,
    /// Not on the grid boundary.
    pub interior: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeutralSurface {
    pub kernel: MexicanHat,
    pub grid: NeutralGrid,
    /// `w[i][j] = ŵ(ρ_i, β_j)`.
    pub w: Vec<Vec<f64>>,
    pub mu: Vec<Vec<Option<f64>>>,
    pub status: NeutralStatus,
    pub minimizer: Option<Minimizer>,
    pub max_imag: f64,
    pub tail: f64,
    pub radius: f64,
}

pub fn neutral_surface(f: &MexicanHat, grid: &NeutralGrid) -> Result<NeutralSurface> {
    neutral_surface_with(f, grid, QuadratureOptions::default())
}

pub fn neutral_surface_with(f: &MexicanHat, grid: &NeutralGrid, opts: QuadratureOptions) -> Result<NeutralSurface> {
    if grid.betas.iter().any(|&b| !(b > 0.0)) {
        return Err(Error::Invalid("beta grid must be positive".into()));
    }
    let tr = Transform::new(*f, opts)?;
    let axial: Vec<Vec<f64>> = grid.betas.iter().map(|&b| tr.axial_profile(b)).collect();
    let mut w = Vec::with_capacity(grid.rhos.len());
    let mut max_imag = 0.0f64;
    for &rho in &grid.rhos {
        let radial = tr.radial_profile(rho, C64::new(1.0, 0.0));
        let row: Vec<f64> = axial
            .iter()
            .map(|a| {
                let v = tr.combine(&radial, a);
                max_imag = max_imag.max(v.imag.abs());
                v.value
            })
            .collect();
        w.push(row);
    }
    let mu: Vec<Vec<Option<f64>>> = w
        .iter()
        .map(|row| row.iter().map(|&v| (v > 0.0).then(|| 1.0 / v)).collect())
        .collect();
    let mut minimizer: Option<Minimizer> = None;
    for (i, row) in mu.iter().enumerate() {
        for (j, m) in row.iter().enumerate() {
            if let Some(m) = *m {
                if minimizer.is_none_or(|b| m < b.mu) {
                    let interior = i > 0 && j > 0 && i + 1 < grid.rhos.len() && j + 1 < grid.betas.len();
                    minimizer = Some(Minimizer { rho: grid.rhos[i], beta: grid.betas[j], mu: m, i, j, interior });
                }
            }
        }
    }
    let status = if minimizer.is_some() { NeutralStatus::Unstable } else { NeutralStatus::NoInstability };
    Ok(NeutralSurface {
        kernel: *f,
        grid: grid.clone(),
        w,
        mu,
        status,
        minimizer,
        max_imag,
        tail: tr.tail,
        radius: tr.radius,
    })
}

impl NeutralSurface {
    /// Growth rate `σ = -1 + μ ŵ` at grid point `(i, j)`.
    pub fn growth_rate(&self, mu: f64, i: usize, j: usize) -> f64 {
        -1.0 + mu * self.w[i][j]
    }

    /// Rows `rho,beta,w_hat,mu` with an empty `mu` where undefined.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(f, "rho,beta,w_hat,mu")?;
        for (i, rho) in self.grid.rhos.iter().enumerate() {
            for (j, beta) in self.grid.betas.iter().enumerate() {
                let mu = self.mu[i][j].map(|m| format!("{m:.12e}")).unwrap_or_default();
                writeln!(f, "{rho:.12e},{beta:.12e},{:.12e},{mu}", self.w[i][j])?;
            }
        }
        f.flush()?;
        Ok(())
    }

    pub fn summary(&self) -> NeutralSummary {
        NeutralSummary {
            kernel: self.kernel,
            status: self.status,
            minimizer: self.minimizer,
            max_imag: self.max_imag,
            tail: self.tail,
            radius: self.radius,
            grid_size: (self.grid.rhos.len(), self.grid.betas.len()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeutralSummary {
    pub kernel: MexicanHat,
    pub status: NeutralStatus,
    pub minimizer: Option<Minimizer>,
    pub max_imag: f64,
    pub tail: f64,
    pub radius: f64,
    pub grid_size: (usize, usize),
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `P_{-1/2+iρ}(cosh r)` from the Mehler–Dirichlet integral, with
    /// `s = r - t²` removing the endpoint singularity.
    fn mehler(rho: f64, r: f64) -> f64 {
        if r == 0.0 {
            return 1.0;
        }
        let (x, w) = gauss_legendre(200);
        let top = r.sqrt();
        let mut s = 0.0;
        for (xi, wi) in x.iter().zip(&w) {
            let t = 0.5 * top * (xi + 1.0);
            let sv = r - t * t;
            let den = (2.0 * (0.5 * (r + sv)).sinh() * (0.5 * t * t).sinh()).sqrt();
            let g = if t == 0.0 { 2.0 / r.sinh().sqrt() } else { 2.0 * t / den };
            s += 0.5 * top * wi * (rho * sv).cos() * g;
        }
        s * 2f64.sqrt() / PI
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(8);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(14)).sum();
        assert!((s - 2.0 / 15.0).abs() < 1e-14);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn circle_average_matches_spherical_function() {
        for rho in [0.0, 0.7, 2.5] {
            for r in [0.3, 1.0, 4.0, 9.0, 14.0] {
                let a = circle_average(-rho, r, C64::new(1.0, 0.0), 16);
                let m = mehler(rho, r);
                assert!((a.re - m).abs() < 1e-10 * m.abs().max(1e-3), "rho {rho} r {r}: {} vs {m}", a.re);
                assert!(a.im.abs() < 1e-12);
            }
        }
        // the uniform rule agrees for small radii only
        let u = circle_average_uniform(-1.0, 1.0, C64::new(1.0, 0.0), 64);
        assert!((u.re - mehler(1.0, 1.0)).abs() < 1e-12);
    }

    #[test]
    fn sign_change_is_unique() {
        let f = MexicanHat::default();
        assert_eq!(f.sign_changes(20.0).len(), 1);
        assert_eq!(MexicanHat::new(1.0, 1.0, 1.0).unwrap().eval(0.7), 0.0);
        assert!(MexicanHat::new(2.0, 1.0, 1.0).is_err());
        assert!(MexicanHat::new(1.0, 2.0, 1.5).is_err());
    }
}
