// H-planforms from the periodic spectrum: each listed isotropy type is
// projected out of the first eigenspace carrying its irrep, checked for
// invariance, and rendered on the octagon and over the disc.

use std::path::{Path, PathBuf};

use hplanforms::planforms::{self, MeshField, PeriodicSetup};
use hplanforms::{mesh, symgroup};

fn out_dir() -> PathBuf {
    std::env::var_os("HPLANFORM_OUT").map_or_else(|| PathBuf::from("out/examples"), PathBuf::from)
}

pub fn run_with(dir: &Path, nodes: usize, n: usize, raster: usize) -> hplanforms::Result<usize> {
    let group = symgroup::build_group()?;
    let catalog = symgroup::subgroup_catalog(&group)?;
    let setup = PeriodicSetup::new(&group, mesh::octagon_refinement_for(nodes)?, true)?;
    let spectrum = planforms::solve_periodic(&setup, n)?;
    let classes: Vec<_> = spectrum.spaces.iter().map(|s| planforms::classify_eigenspace(s, &setup, &group)).collect();
    let pairs = planforms::realize_theorem_pairs(&group, &catalog, &setup, &spectrum.spaces, &classes, 7)?;
    std::fs::create_dir_all(dir)?;
    let mut rendered = 0;
    for p in &pairs {
        match (&p.dofs, p.isotropy_defect) {
            (Some(v), Some(defect)) => {
                println!("{:<6} {:<7} λ = {:>9.4}  defect {:.1e}  stabilizer {:?}", p.irrep, p.subgroup, p.eigenvalue, defect, p.stabilizer);
                let values = setup.system.expand(v);
                let field = MeshField::new(&setup.mesh, &values);
                let stem = format!("planform_{}_{}", p.irrep, planforms::file_safe(&p.subgroup));
                planforms::render(&planforms::sample_octagon(&field, raster), &dir.join(format!("{stem}.png")), true)?;
                planforms::render(&planforms::extend_to_disc(&field, raster), &dir.join(format!("{stem}_disc.png")), false)?;
                rendered += 1;
            }
            _ => println!("{:<6} {:<7} fixed space of dimension {}: nothing to project", p.irrep, p.subgroup, p.fixed_dim),
        }
    }
    println!("{rendered} planforms rendered to {}", dir.display());
    Ok(rendered)
}

pub fn run_example() -> hplanforms::Result<()> {
    run_with(&out_dir(), 3641, 100, 256).map(|_| ())
}

#[allow(dead_code)]
fn main() -> hplanforms::Result<()> {
    run_example()
}
