//! Poincaré-disc geometry.
//!
//! Points of the hyperbolic plane are complex numbers in the open unit disc
//! with metric `4|dz|^2 / (1 - |z|^2)^2` (curvature -1). Direct isometries are
//! elements of SU(1,1); orientation-reversing ones are stored as an SU(1,1)
//! matrix together with a flag meaning "conjugate the argument first".

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complex number shorthand used throughout the crate.
pub type C64 = Complex64;

/// Tolerance on `|alpha|^2 - |beta|^2 = 1` accepted by [`Isometry::new`].
pub const SU11_TOL: f64 = 1e-12;

/// A point of the open unit disc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscPoint(pub C64);

impl DiscPoint {
    pub fn new(z: C64) -> Result<Self> {
        if z.norm_sqr() < 1.0 && z.re.is_finite() && z.im.is_finite() {
            Ok(DiscPoint(z))
        } else {
            Err(Error::OutsideDisc(z.norm()))
        }
    }

    pub fn from_re_im(re: f64, im: f64) -> Result<Self> {
        Self::new(C64::new(re, im))
    }

    pub fn origin() -> Self {
        DiscPoint(C64::new(0.0, 0.0))
    }

    /// Point at hyperbolic distance `r` from the origin in direction `phi`.
    pub fn polar(r: f64, phi: f64) -> Self {
        DiscPoint(C64::from_polar((0.5 * r).tanh(), phi))
    }

    #[inline]
    pub fn z(self) -> C64 {
        self.0
    }

    /// Conformal factor `4 / (1 - |z|^2)^2` of the metric.
    #[inline]
    pub fn conformal_factor(self) -> f64 {
        conformal_factor(self.0)
    }
}

/// Conformal factor `4 / (1 - |z|^2)^2` of the disc metric at `z`.
#[inline]
pub fn conformal_factor(z: C64) -> f64 {
    let d = 1.0 - z.norm_sqr();
    4.0 / (d * d)
}

/// Hyperbolic distance in the disc: `2 artanh(|z - w| / |1 - conj(z) w|)`.
pub fn dist_disc(z: DiscPoint, w: DiscPoint) -> f64 {
    dist_c(z.0, w.0)
}

#[inline]
pub(crate) fn dist_c(z: C64, w: C64) -> f64 {
    let num = (z - w).norm();
    let den = (C64::new(1.0, 0.0) - z.conj() * w).norm();
    2.0 * (num / den).min(1.0).atanh()
}

/// An isometry of the disc: `z -> (alpha z' + beta) / (conj(beta) z' + conj(alpha))`
/// where `z' = conj(z)` when `reversing` is set and `z' = z` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Isometry {
    pub alpha: C64,
    pub beta: C64,
    pub reversing: bool,
}

impl Isometry {
    pub fn new(alpha: C64, beta: C64, reversing: bool) -> Result<Self> {
        let det = alpha.norm_sqr() - beta.norm_sqr();
        if (det - 1.0).abs() > SU11_TOL {
            return Err(Error::NotSu11(det));
        }
        Ok(Isometry { alpha, beta, reversing })
    }

    /// Builds an isometry from an SU(1,1) matrix given up to a positive scale
    /// (e.g. exact integer/surd entries) and rescales it onto the group.
    pub fn from_unnormalized(alpha: C64, beta: C64, reversing: bool) -> Result<Self> {
        let det = alpha.norm_sqr() - beta.norm_sqr();
        if !(det > 0.0) {
            return Err(Error::NotSu11(det));
        }
        let s = det.sqrt().recip();
        Ok(Isometry { alpha: alpha * s, beta: beta * s, reversing })
    }

    pub fn identity() -> Self {
        Isometry { alpha: C64::new(1.0, 0.0), beta: C64::new(0.0, 0.0), reversing: false }
    }

    /// Reflection through the real axis, `z -> conj(z)`.
    pub fn conjugation() -> Self {
        Isometry { reversing: true, ..Self::identity() }
    }

    /// Rotation `r_phi` about the origin: `z -> e^{i phi} z`.
    pub fn rotation(phi: f64) -> Self {
        Isometry {
            alpha: C64::from_polar(1.0, 0.5 * phi),
            beta: C64::new(0.0, 0.0),
            reversing: false,
        }
    }

    /// Boost `a_t` along the real axis (moves the origin to `tanh(t/2)`).
    pub fn boost(t: f64) -> Self {
        Isometry {
            alpha: C64::new((0.5 * t).cosh(), 0.0),
            beta: C64::new((0.5 * t).sinh(), 0.0),
            reversing: false,
        }
    }

    /// Horocyclic element `n_s`, fixing the boundary point 1.
    pub fn horocyclic(s: f64) -> Self {
        Isometry {
            alpha: C64::new(1.0, s),
            beta: C64::new(0.0, -s),
            reversing: false,
        }
    }

    /// Direct isometry sending the origin to `p`: `z -> (z + p) / (conj(p) z + 1)`.
    pub fn translation_to(p: C64) -> Self {
        let s = (1.0 - p.norm_sqr()).sqrt().recip();
        Isometry { alpha: C64::new(s, 0.0), beta: p * s, reversing: false }
    }

    /// Rotation by `angle` about the point `c`.
    pub fn rotation_about(c: C64, angle: f64) -> Self {
        let t = Self::translation_to(c);
        t.compose(&Self::rotation(angle)).compose(&t.inverse())
    }

    /// Reflection through the geodesic passing through `a` and `b`.
    pub fn reflection_through(a: C64, b: C64) -> Self {
        // Move `a` to the origin, rotate the image of `b` onto the real axis,
        // conjugate, and undo.
        let ta = Self::translation_to(a);
        let bb = ta.inverse().apply_c(b);
        let r = Self::rotation(bb.arg());
        let frame = ta.compose(&r);
        frame.compose(&Self::conjugation()).compose(&frame.inverse())
    }

    #[inline]
    pub fn apply(&self, z: DiscPoint) -> DiscPoint {
        DiscPoint(self.apply_c(z.0))
    }

    /// Action on a raw complex number; also valid on the boundary circle.
    #[inline]
    pub fn apply_c(&self, z: C64) -> C64 {
        let z = if self.reversing { z.conj() } else { z };
        (self.alpha * z + self.beta) / (self.beta.conj() * z + self.alpha.conj())
    }

    /// `self ∘ other`, i.e. `other` is applied first.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        // g = M_g κ^{r_g}, h = M_h κ^{r_h}; κ M κ = conj(M).
        let (ha, hb) = if self.reversing {
            (other.alpha.conj(), other.beta.conj())
        } else {
            (other.alpha, other.beta)
        };
        let (a, b) = (self.alpha, self.beta);
        let alpha = a * ha + b * hb.conj();
        let beta = a * hb + b * ha.conj();
        Isometry { alpha, beta, reversing: self.reversing ^ other.reversing }.renormalized()
    }

    pub fn inverse(&self) -> Isometry {
        // M^{-1} = [[conj a, -b], [-conj b, a]]; (M κ)^{-1} = κ M^{-1} = conj(M^{-1}) κ.
        let (alpha, beta) = (self.alpha.conj(), -self.beta);
        if self.reversing {
            Isometry { alpha: alpha.conj(), beta: beta.conj(), reversing: true }
        } else {
            Isometry { alpha, beta, reversing: false }
        }
    }

    pub fn pow(&self, n: i32) -> Isometry {
        let base = if n < 0 { self.inverse() } else { *self };
        (0..n.unsigned_abs()).fold(Isometry::identity(), |acc, _| acc.compose(&base))
    }

    /// `|alpha|^2 - |beta|^2`, which is 1 on the group.
    pub fn determinant(&self) -> f64 {
        self.alpha.norm_sqr() - self.beta.norm_sqr()
    }

    /// Real trace `2 Re(alpha)` of the SU(1,1) matrix (sign ambiguous).
    pub fn trace(&self) -> f64 {
        2.0 * self.alpha.re
    }

    pub fn is_hyperbolic(&self) -> bool {
        !self.reversing && self.trace().abs() > 2.0
    }

    fn renormalized(self) -> Isometry {
        let det = self.determinant();
        let s = det.sqrt().recip();
        Isometry { alpha: self.alpha * s, beta: self.beta * s, reversing: self.reversing }
    }

    /// Entrywise distance to another matrix, modulo the sign ambiguity of SU(1,1).
    pub fn matrix_distance(&self, other: &Isometry) -> f64 {
        if self.reversing != other.reversing {
            return f64::INFINITY;
        }
        let plus = (self.alpha - other.alpha).norm() + (self.beta - other.beta).norm();
        let minus = (self.alpha + other.alpha).norm() + (self.beta + other.beta).norm();
        plus.min(minus)
    }
}

/// Iwasawa factors `g = r_phi a_t n_s` of a direct isometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Iwasawa {
    pub phi: f64,
    pub t: f64,
    pub s: f64,
}

impl Iwasawa {
    pub fn factor(g: &Isometry) -> Result<Iwasawa> {
        if g.reversing {
            return Err(Error::Invalid("Iwasawa factorization needs a direct isometry".into()));
        }
        // a_t and n_s fix the boundary point 1, so r_phi carries 1 to g(1).
        let phi = g.apply_c(C64::new(1.0, 0.0)).arg();
        let an = Isometry::rotation(-phi).compose(g);
        // a_t n_s = [[c + i s e^{t/2}, sh - i s e^{t/2}], ...] up to an overall sign.
        let sign = if an.alpha.re < 0.0 { -1.0 } else { 1.0 };
        let alpha = an.alpha * sign;
        let beta = an.beta * sign;
        let t = 2.0 * beta.re.asinh();
        let s = alpha.im * (-0.5 * t).exp();
        Ok(Iwasawa { phi, t, s })
    }

    pub fn compose(&self) -> Isometry {
        Isometry::rotation(self.phi)
            .compose(&Isometry::boost(self.t))
            .compose(&Isometry::horocyclic(self.s))
    }
}

/// A structure tensor, i.e. a 2x2 symmetric positive-definite matrix
/// `[[x1, x3], [x3, x2]]`, kept in the `(z, z3)` chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TensorPoint {
    pub z: DiscPoint,
    pub z3: f64,
}

impl TensorPoint {
    pub fn new(z: DiscPoint, z3: f64) -> Result<Self> {
        if !(z3 > 0.0) || !z3.is_finite() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(TensorPoint { z, z3 })
    }

    /// From matrix entries; rejects anything that is not positive definite.
    pub fn from_entries(x1: f64, x2: f64, x3: f64) -> Result<Self> {
        let det = x1 * x2 - x3 * x3;
        if !(x1 > 0.0) || !(det > 0.0) || !det.is_finite() {
            return Err(Error::NotPositiveDefinite);
        }
        let z3 = det.sqrt();
        let (t1, t2, t3) = (x1 / z3, x2 / z3, x3 / z3);
        let s = t1 + t2 + 2.0;
        let z = C64::new((t1 - t2) / s, 2.0 * t3 / s);
        Ok(TensorPoint { z: DiscPoint::new(z)?, z3 })
    }

    /// Matrix entries `(x1, x2, x3)`.
    pub fn entries(&self) -> (f64, f64, f64) {
        let (z1, z2) = (self.z.0.re, self.z.0.im);
        let d = 1.0 - z1 * z1 - z2 * z2;
        let t1 = ((1.0 + z1).powi(2) + z2 * z2) / d;
        let t2 = ((1.0 - z1).powi(2) + z2 * z2) / d;
        let t3 = 2.0 * z2 / d;
        (self.z3 * t1, self.z3 * t2, self.z3 * t3)
    }

    pub fn matrix(&self) -> [[f64; 2]; 2] {
        let (x1, x2, x3) = self.entries();
        [[x1, x3], [x3, x2]]
    }

    /// Congruence action `G^T T G` for an invertible 2x2 matrix `G`.
    pub fn congruence(&self, g: [[f64; 2]; 2]) -> Result<TensorPoint> {
        let t = self.matrix();
        let mut out = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        out[i][j] += g[k][i] * t[k][l] * g[l][j];
                    }
                }
            }
        }
        TensorPoint::from_entries(out[0][0], out[1][1], 0.5 * (out[0][1] + out[1][0]))
    }
}

/// Forward change of variables: tensor entries to `(z, z3)`.
pub fn theta(x1: f64, x2: f64, x3: f64) -> Result<(DiscPoint, f64)> {
    let t = TensorPoint::from_entries(x1, x2, x3)?;
    Ok((t.z, t.z3))
}

/// Inverse change of variables: `(z, z3)` to tensor entries.
pub fn theta_inv(z: DiscPoint, z3: f64) -> Result<(f64, f64, f64)> {
    Ok(TensorPoint::new(z, z3)?.entries())
}

/// Affine-invariant distance `sqrt(log^2 l1 + log^2 l2)`, with `l1, l2` the
/// eigenvalues of `T1^{-1} T2`.
pub fn dist_tensor(a: &TensorPoint, b: &TensorPoint) -> f64 {
    let [[a1, a3], [_, a2]] = a.matrix();
    let [[b1, b3], [_, b2]] = b.matrix();
    // det(B - l A) = 0  <=>  detA l^2 - (a1 b2 + a2 b1 - 2 a3 b3) l + detB = 0
    let da = a1 * a2 - a3 * a3;
    let db = b1 * b2 - b3 * b3;
    let tr = a1 * b2 + a2 * b1 - 2.0 * a3 * b3;
    // log l1 + log l2 = log(db/da); log l1 - log l2 from the discriminant,
    // written to avoid cancellation near l1 = l2.
    let sum = (db / da).ln();
    let disc = (tr * tr - 4.0 * da * db).max(0.0);
    let ratio = (tr + disc.sqrt()) / (tr - disc.sqrt()).max(f64::MIN_POSITIVE);
    let diff = if disc == 0.0 { 0.0 } else { ratio.ln() };
    let l1 = 0.5 * (sum + diff);
    let l2 = 0.5 * (sum - diff);
    (l1 * l1 + l2 * l2).sqrt()
}

/// Product distance on `D x R+`: `sqrt(d_D(z, z')^2 + log^2(z3 / z3'))`.
///
/// The affine-invariant metric on tensors is twice this product metric, so
/// `dist_tensor(a, b) = sqrt(2) * dist_product(a, b)`.
pub fn dist_product(a: &TensorPoint, b: &TensorPoint) -> f64 {
    let d = dist_disc(a.z, b.z);
    let l = (a.z3 / b.z3).ln();
    (d * d + l * l).sqrt()
}

/// Signed distance from the origin to the horocycle through `z` based at `b`:
/// `log((1 - |z|^2) / |z - b|^2)`.
pub fn horocycle_bracket(z: DiscPoint, b: C64) -> f64 {
    let z = z.0;
    ((1.0 - z.norm_sqr()) / (z - b).norm_sqr()).ln()
}

/// Hyperbolic plane wave `e_{rho,b}(z) = exp((i rho + 1/2) <z, b>)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Wave {
    pub rho: f64,
    pub b: C64,
}

impl Wave {
    pub fn new(rho: f64, b: C64) -> Result<Self> {
        if ((b.norm() - 1.0).abs()) > 1e-12 {
            return Err(Error::Invalid(format!("boundary point has modulus {}", b.norm())));
        }
        Ok(Wave { rho, b })
    }

    pub fn at_angle(rho: f64, angle: f64) -> Self {
        Wave { rho, b: C64::from_polar(1.0, angle) }
    }

    pub fn eval(&self, z: DiscPoint) -> C64 {
        wave_eval(self, z)
    }

    /// `rho^2 + 1/4`, the eigenvalue of `-Δ_D` carried by the wave.
    pub fn eigenvalue(&self) -> f64 {
        self.rho * self.rho + 0.25
    }
}

pub fn wave_eval(w: &Wave, z: DiscPoint) -> C64 {
    let h = horocycle_bracket(z, w.b);
    (C64::new(0.5, w.rho) * h).exp()
}

/// `Δ_D = ((1 - |z|^2)^2 / 4)(∂_1^2 + ∂_2^2)` applied by a 5-point stencil of width `h`.
pub fn laplacian_fd<F: Fn(C64) -> C64>(f: F, z: C64, h: f64) -> C64 {
    let e1 = C64::new(h, 0.0);
    let e2 = C64::new(0.0, h);
    let lap = (f(z + e1) + f(z - e1) + f(z + e2) + f(z - e2) - f(z) * 4.0) / (h * h);
    lap / conformal_factor(z)
}

/// Interior angle at `b` of the geodesic triangle `a b c`.
pub fn angle_at(a: C64, b: C64, c: C64) -> f64 {
    // Move b to the origin; geodesics through the origin are straight.
    let t = Isometry::translation_to(b).inverse();
    let (ua, uc) = (t.apply_c(a), t.apply_c(c));
    let mut ang = (uc.arg() - ua.arg()).abs();
    if ang > PI {
        ang = 2.0 * PI - ang;
    }
    ang
}

/// Area of the geodesic triangle by Gauss–Bonnet.
pub fn triangle_area(a: C64, b: C64, c: C64) -> f64 {
    PI - angle_at(c, a, b) - angle_at(a, b, c) - angle_at(b, c, a)
}

/// Disc point to Klein-model point (geodesics become straight chords).
#[inline]
pub fn poincare_to_klein(z: C64) -> C64 {
    z * (2.0 / (1.0 + z.norm_sqr()))
}

/// Klein-model point to disc point.
#[inline]
pub fn klein_to_poincare(k: C64) -> C64 {
    k / (1.0 + (1.0 - k.norm_sqr()).max(0.0).sqrt())
}

/// Point at fraction `s` of the hyperbolic length along the geodesic from `a` to `b`.
pub fn geodesic_point(a: C64, b: C64, s: f64) -> C64 {
    let t = Isometry::translation_to(a);
    let bb = t.inverse().apply_c(b);
    let d = dist_c(C64::new(0.0, 0.0), bb);
    t.apply_c(C64::from_polar((0.5 * s * d).tanh(), bb.arg()))
}
