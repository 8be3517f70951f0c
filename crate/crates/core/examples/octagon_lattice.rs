// The octagonal lattice: generators, fundamental domain, reduction into the
// octagon and the tessellation by 96 copies of the T(2,3,8) triangle.

use std::f64::consts::PI;

use hplanforms::hypgeo::DiscPoint;
use hplanforms::lattice;

pub fn run_example() -> hplanforms::Result<()> {
    let oct = lattice::build_octagon();
    println!("circumradius    {:.12}", oct.circumradius());
    println!("interior angle  {:.12} (π/4 = {:.12})", oct.interior_angle(0), PI / 4.0);
    println!("area            {:.12} (4π = {:.12})", oct.area(), 4.0 * PI);
    for (side, opp, j) in &oct.side_pairing {
        println!("  g{j} maps side {opp} onto side {side}");
    }

    let gens = lattice::build_generators();
    println!("translation length {:.12}", gens.translation_length());

    // a point far out in the disc, brought back into the octagon
    let z = DiscPoint::from_re_im(0.83, -0.41)?;
    let w = lattice::wrap(z)?;
    println!("wrap({}) = {:.6} after {} moves", z.z(), w.point.z(), w.word.len());
    println!("  word isometry recovers z: {:.2e}", (w.word_isometry().apply_c(w.point.z()) - z.z()).norm());

    let tess = lattice::build_tessellation()?;
    let tri = &tess.triangle;
    let (a, b, c) = tri.angles();
    println!("triangle angles {:.6} {:.6} {:.6}", a / PI, b / PI, c / PI);
    println!("tiles {} covering area {:.12}", tess.tiles.len(), tess.total_area());
    let reversed = tess.tiles.iter().filter(|t| t.orientation < 0).count();
    println!("orientation-reversed tiles {reversed}");

    // the rotation ρ about P permutes the tiles; reduce() names the image
    let rho = lattice::triangle_symmetries(&tess.triangle).rho;
    let (k, _) = tess.reduce(&rho.compose(&tess.tiles[5].iso))?;
    println!("rho carries tile 5 to tile {k}");
    println!("tile containing the image of its centre: {:?}", tess.tile_of_center(tess.tiles[k].center));
    Ok(())
}

#[allow(dead_code)]
fn main() -> hplanforms::Result<()> {
    run_example()
}
