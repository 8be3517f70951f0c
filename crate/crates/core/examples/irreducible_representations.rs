// Explicit orthogonal matrices for every irrep, checked against the
// character table, with the kernel identified in the subgroup catalog.

use hplanforms::symgroup::{self, NUM_CLASSES};

pub fn run_example() -> hplanforms::Result<()> {
    let group = symgroup::build_group()?;
    let catalog = symgroup::subgroup_catalog(&group)?;
    println!("{:<6} {:>3} {:>10} {:>10} {:>10} {:>9}  kernel", "irrep", "dim", "hom", "trace", "orth", "commutant");
    for j in 0..NUM_CLASSES {
        let rep = symgroup::build_irrep(&group, j, 11)?;
        let kernel = symgroup::principal_isotropy(&group, &catalog, &rep).unwrap_or_else(|| "?".into());
        println!(
            "{:<6} {:>3} {:>10.1e} {:>10.1e} {:>10.1e} {:>9}  {}",
            rep.irrep,
            rep.dim,
            rep.homomorphism_defect(&group),
            rep.trace_defect(&group),
            rep.orthogonality_defect(),
            rep.commutant_dimension(&group),
            kernel
        );
    }
    println!("element orders in G/{{±Id}}: {:?}", symgroup::quotient_by_center_statistics(&group));
    Ok(())
}

#[allow(dead_code)]
fn main() -> hplanforms::Result<()> {
    run_example()
}
