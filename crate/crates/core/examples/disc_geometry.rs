// Poincaré-disc isometries, distances, structure tensors and plane waves.

use hplanforms::hypgeo::{self, DiscPoint, Isometry, TensorPoint, Wave, C64};

pub fn run_example() -> hplanforms::Result<()> {
    let z = DiscPoint::from_re_im(0.3, 0.2)?;
    let w = DiscPoint::from_re_im(-0.1, 0.45)?;

    // a rotation, a boost and a reflection, composed
    let g = Isometry::rotation(0.7)
        .compose(&Isometry::boost(1.2))
        .compose(&Isometry::conjugation());
    println!("d(z, w)       = {:.12}", hypgeo::dist_disc(z, w));
    println!("d(gz, gw)     = {:.12}", hypgeo::dist_disc(g.apply(z), g.apply(w)));
    println!("boost(1)·0    = {:.12}  (tanh 1/2 = {:.12})", Isometry::boost(1.0).apply_c(C64::new(0.0, 0.0)).re, 0.5f64.tanh());

    // structure tensors and the (z, z3) coordinates
    let a = TensorPoint::from_entries(2.0, 1.0, 0.3)?;
    let b = TensorPoint::from_entries(1.0, 3.0, -0.5)?;
    let (zz, z3) = hypgeo::theta(2.0, 1.0, 0.3)?;
    println!("theta(T)      = ({:.6}, {:.6})", zz.z(), z3);
    println!("d0(T1, T2)    = {:.12}", hypgeo::dist_tensor(&a, &b));
    println!("product dist  = {:.12}", hypgeo::dist_product(&a, &b));

    // horocycles and the plane wave e_{ρ,b}
    let bnd = C64::from_polar(1.0, 0.4);
    println!("<z, b>        = {:.12}", hypgeo::horocycle_bracket(z, bnd));
    let wave = Wave::new(1.0, bnd)?;
    let lap = hypgeo::laplacian_fd(|q| wave.eval(DiscPoint(q)), z.z(), 1e-3);
    println!("-Δe / e       = {:.6}  (ρ² + 1/4 = {})", (-lap / wave.eval(z)).re, wave.eigenvalue());
    Ok(())
}

#[allow(dead_code)]
fn main() -> hplanforms::Result<()> {
    run_example()
}
