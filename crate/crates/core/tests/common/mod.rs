#![allow(dead_code)]

use hplanforms::hypgeo::{self, DiscPoint, Isometry, TensorPoint, C64};
use rand::Rng;

/// Random isometry with translation length at most `max_t`.
pub fn random_isometry<R: Rng>(rng: &mut R, max_t: f64) -> Isometry {
    let t = rng.gen_range(0.0..max_t);
    let a = rng.gen_range(0.0..std::f64::consts::TAU);
    let b = rng.gen_range(0.0..std::f64::consts::TAU);
    let reversing = rng.gen_bool(0.5);
    Isometry::new(C64::from_polar((0.5 * t).cosh(), a), C64::from_polar((0.5 * t).sinh(), b), reversing)
        .expect("cosh^2 - sinh^2 = 1")
}

/// Random point with `|z| < r`.
pub fn random_point<R: Rng>(rng: &mut R, r: f64) -> DiscPoint {
    let rad = r * rng.gen_range(0.0f64..1.0).sqrt();
    DiscPoint::polar(rad, rng.gen_range(0.0..std::f64::consts::TAU))
}

pub fn random_tensor<R: Rng>(rng: &mut R) -> TensorPoint {
    TensorPoint::new(random_point(rng, 0.9), rng.gen_range(0.2..5.0)).expect("positive z3")
}

/// `⟨z, b⟩` from the picture: the horocycle through `z` based at `b` is the
/// Euclidean circle of centre `c b` and radius `1 - c`; it meets the diameter
/// through `b` at `(2c - 1) b`, and the bracket is the signed hyperbolic length
/// from the origin to that point, positive towards `b`.
pub fn horocycle_length_oracle(z: DiscPoint, b: C64) -> f64 {
    let z = z.0;
    let c = (1.0 - z.norm_sqr()) / (2.0 * (1.0 - (z * b.conj()).re));
    let s = 2.0 * c - 1.0;
    let d = hypgeo::dist_disc(DiscPoint::origin(), DiscPoint(b * s.abs()));
    d.copysign(s)
}

/// `|-Δ e - (ρ² + 1/4) e|` at `z` with stencil width `h`.
pub fn eigenwave_fd_error(rho: f64, b: C64, z: C64, h: f64) -> f64 {
    let w = hypgeo::Wave::new(rho, b).expect("unit boundary point");
    let f = |p: C64| hypgeo::wave_eval(&w, DiscPoint(p));
    let lap = hypgeo::laplacian_fd(f, z, h);
    (-lap - f(z) * w.eigenvalue()).norm()
}
