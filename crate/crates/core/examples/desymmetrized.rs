// Desymmetrized eigenproblems on τ for the four one-dimensional irreps,
// with boundary conditions read off the character signs. Each solution is
// extended to the octagon and rendered.

use std::path::{Path, PathBuf};

use hplanforms::planforms::{self, TileField};
use hplanforms::{mesh, symgroup};

fn out_dir() -> PathBuf {
    std::env::var_os("HPLANFORM_OUT").map_or_else(|| PathBuf::from("out/examples"), PathBuf::from)
}

pub fn run_with(dir: &Path, nodes: usize, raster: usize) -> hplanforms::Result<Vec<f64>> {
    let group = symgroup::build_group()?;
    let tau = mesh::mesh_triangle(nodes)?;
    std::fs::create_dir_all(dir)?;
    println!("triangle mesh: {} nodes", tau.num_nodes());
    let mut eigs = Vec::new();
    for chi in 0..4 {
        let d = planforms::solve_desymmetrized(&group, chi, &tau)?;
        let r = &d.recipe;
        println!(
            "{}  (PQ, PR, QR) = ({:?}, {:?}, {:?})  λ = {:.6}  continuity {:.1e}  isotropy {}",
            symgroup::irrep_label(chi),
            r.pq,
            r.pr,
            r.qr,
            d.eigenvalue,
            d.continuity_defect,
            d.planform.isotropy
        );
        let field = TileField::new(&group, &d);
        let raster = planforms::sample_octagon(&field, raster);
        let name = format!("desym_{}.png", symgroup::irrep_label(chi));
        planforms::render(&raster, &dir.join(&name), true)?;
        eigs.push(d.eigenvalue);
    }
    println!("images in {}", dir.display());
    Ok(eigs)
}

pub fn run_example() -> hplanforms::Result<()> {
    run_with(&out_dir(), 3000, 256).map(|_| ())
}

#[allow(dead_code)]
fn main() -> hplanforms::Result<()> {
    run_example()
}
