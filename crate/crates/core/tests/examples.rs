macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }
    };
}

example!(disc_geometry);
example!(octagon_lattice);
example!(symmetry_group);
example!(irreducible_representations);
example!(meshes);
example!(periodic_spectrum);
example!(isotropy_planforms);
example!(desymmetrized);
example!(neutral_surface);

fn scratch(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("hplanforms-examples-{}-{name}", std::process::id()))
}

#[test]
fn disc_geometry_runs() {
    disc_geometry::run_example().expect("disc geometry example should run");
}

#[test]
fn octagon_lattice_runs() {
    octagon_lattice::run_example().expect("lattice example should run");
}

#[test]
fn symmetry_group_runs() {
    symmetry_group::run_example().expect("group example should run");
}

#[test]
fn irreducible_representations_runs() {
    irreducible_representations::run_example().expect("irrep example should run");
}

#[test]
fn meshes_runs() {
    meshes::run_example().expect("mesh example should run");
}

#[test]
fn neutral_surface_runs() {
    neutral_surface::run_example().expect("neutral example should run");
}

#[test]
fn periodic_spectrum_runs_on_a_coarse_mesh() {
    let spaces = periodic_spectrum::run_with(800, 20).expect("periodic example should run");
    assert_eq!(spaces[0].1, "chi1");
}

#[test]
fn isotropy_planforms_runs_on_a_coarse_mesh() {
    let dir = scratch("isotropy");
    let n = isotropy_planforms::run_with(&dir, 800, 30, 32).expect("isotropy example should run");
    assert!(n > 0);
}

#[test]
fn desymmetrized_runs_on_a_coarse_mesh() {
    let dir = scratch("desym");
    let eigs = desymmetrized::run_with(&dir, 150, 32).expect("desymmetrized example should run");
    assert_eq!(eigs.len(), 4);
    assert!(dir.join("desym_chi4.png").exists());
}
