//! Command-line driver behind the `hplanforms` binary.
//!
//! Every command writes its artifacts to the output directory together with
//! a `manifest.json` holding the run configuration, the crate version, the
//! mesh hash and the SHA-256 of each artifact.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fem::{self, SolverOptions};
use crate::mesh;
use crate::neutral::{self, MexicanHat, NeutralGrid, NeutralStatus};
use crate::planforms::{self, MeshField, PeriodicSetup, TileField};
use crate::symgroup::{self, CharValue, NUM_CLASSES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

pub const OUT_ENV: &str = "HPLANFORM_OUT";

#[derive(Debug, Clone, Parser, Serialize, Deserialize)]
#[command(name = "hplanforms", version, about = "Hyperbolic planforms on the octagonal lattice")]
pub struct Cli {
    /// Output directory.
    #[arg(long, global = true, env = OUT_ENV, default_value = "out")]
    pub out: PathBuf,
    /// Seed for the eigensolver start block and the isotropy projections.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Conjugacy classes, characters, subgroups and the isotropy report.
    Group,
    /// Desymmetrized (`--rep chiK`) or periodic (`--periodic`) eigenproblem.
    Solve(SolveArgs),
    /// Neutral stability surface of the Mexican-hat kernel.
    Neutral(NeutralArgs),
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SolveArgs {
    /// One-dimensional irrep for a desymmetrized run on the triangle.
    #[arg(long, conflicts_with = "periodic", required_unless_present = "periodic")]
    pub rep: Option<String>,
    /// Full periodic problem on the octagon.
    #[arg(long)]
    pub periodic: bool,
    /// Target node count (3000 on the triangle, 3641 on the octagon).
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Number of eigenpairs.
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    /// Raster size of the rendered images.
    #[arg(long, default_value_t = 256)]
    pub raster: usize,
    /// Skip images and raster CSVs.
    #[arg(long)]
    pub no_images: bool,
    /// Also render the Γ-periodic extension over the disc.
    #[arg(long)]
    pub disc: bool,
    /// Keep the raw periodic matrices instead of averaging them over G*.
    #[arg(long)]
    pub no_symmetrize: bool,
    /// Residual tolerance of the eigensolver.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct NeutralArgs {
    #[arg(long, default_value_t = 1.0)]
    pub sigma1: f64,
    #[arg(long, default_value_t = 2.0)]
    pub sigma2: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub theta: f64,
    /// Points per axis of the (ρ, β) grid.
    #[arg(long, default_value_t = 41)]
    pub grid: usize,
    #[arg(long, default_value_t = 4.0)]
    pub rho_max: f64,
    /// The β axis spans `[e^{-L}, e^{L}]`.
    #[arg(long, default_value_t = 2.0)]
    pub log_beta_max: f64,
}

/// A failed run: the pipeline stage and the underlying error.
#[derive(Debug)]
pub struct CliError {
    pub stage: &'static str,
    pub error: Error,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.stage, self.error)
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self.error {
            Error::Invalid(_) | Error::TableMismatch(_) | Error::Inadmissible(_) | Error::OutsideDisc(_) => {
                EXIT_VALIDATION
            }
            Error::Io(_) | Error::Json(_) | Error::Image(_) => EXIT_IO,
            _ => EXIT_NUMERICAL,
        }
    }
}

trait Stage<T> {
    fn stage(self, stage: &'static str) -> std::result::Result<T, CliError>;
}

impl<T> Stage<T> for Result<T> {
    fn stage(self, stage: &'static str) -> std::result::Result<T, CliError> {
        self.map_err(|error| CliError { stage, error })
    }
}

/// Validates the configuration before any work is done.
pub fn validate(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Group => Ok(()),
        Command::Solve(a) => {
            if let Some(r) = &a.rep {
                let chi = symgroup::parse_irrep(r)?;
                if symgroup::CHARACTERS[chi][0].int != 1 {
                    return Err(Error::Invalid(format!("{r} is not one-dimensional; use --periodic")));
                }
            }
            if a.nodes.is_some_and(|n| n < 10) {
                return Err(Error::Invalid("--nodes must be at least 10".into()));
            }
            if a.n == 0 {
                return Err(Error::Invalid("--n must be positive".into()));
            }
            if !(16..=4096).contains(&a.raster) {
                return Err(Error::Invalid("--raster must lie in 16..=4096".into()));
            }
            if !(a.tol > 0.0 && a.tol < 1e-2) {
                return Err(Error::Invalid(format!("--tol {} out of range", a.tol)));
            }
            Ok(())
        }
        Command::Neutral(a) => {
            MexicanHat::new(a.sigma1, a.sigma2, a.theta)?;
            if !(a.rho_max > 0.0 && a.log_beta_max > 0.0) {
                return Err(Error::Invalid("grid extents must be positive".into()));
            }
            NeutralGrid::uniform(a.grid, a.rho_max, a.log_beta_max).map(|_| ())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputFile {
    pub file: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub config: Cli,
    pub version: String,
    pub mesh_hash: Option<String>,
    pub outputs: Vec<OutputFile>,
}

/// Collects written files for the manifest.
struct Outputs {
    dir: PathBuf,
    files: Vec<String>,
}

impl Outputs {
    fn new(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Outputs { dir: dir.to_path_buf(), files: Vec::new() })
    }

    fn path(&mut self, name: &str) -> PathBuf {
        self.files.push(name.to_string());
        self.dir.join(name)
    }

    fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let p = self.path(name);
        fs::write(p, serde_json::to_string_pretty(value)?)?;
        Ok(())
    }

    fn text(&mut self, name: &str, body: &[u8]) -> Result<()> {
        let p = self.path(name);
        fs::write(p, body)?;
        Ok(())
    }

    fn finish(mut self, cli: &Cli, mesh_hash: Option<String>) -> Result<()> {
        let outputs = self
            .files
            .iter()
            .map(|f| {
                let bytes = fs::read(self.dir.join(f))?;
                Ok(OutputFile { file: f.clone(), sha256: hex::encode(Sha256::digest(&bytes)) })
            })
            .collect::<Result<Vec<_>>>()?;
        let m = Manifest { config: cli.clone(), version: env!("CARGO_PKG_VERSION").to_string(), mesh_hash, outputs };
        let p = self.path("manifest.json");
        fs::write(p, serde_json::to_string_pretty(&m)?)?;
        Ok(())
    }
}

/// Runs one command; the returned JSON value is the run summary.
pub fn run(cli: &Cli) -> std::result::Result<serde_json::Value, CliError> {
    validate(cli).stage("validation")?;
    match &cli.command {
        Command::Group => cmd_group(cli),
        Command::Solve(a) if a.periodic => cmd_periodic(cli, a),
        Command::Solve(a) => cmd_desymmetrized(cli, a),
        Command::Neutral(a) => cmd_neutral(cli, a),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassEntry {
    pub label: String,
    pub word: String,
    pub representative: usize,
    pub size: usize,
    pub printed_size: usize,
    pub order: usize,
    pub elements: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TheoremPair {
    pub subgroup: String,
    pub dim: usize,
    pub reproduced: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IsotropyRow {
    pub irrep: String,
    pub dimension: usize,
    /// `dim V^H` in the order of `subgroups`.
    pub dims: Vec<usize>,
    pub axial: Vec<String>,
    pub theorem: Vec<TheoremPair>,
    pub missing: Vec<String>,
    pub maximal: Vec<String>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct TableDiff {
    /// `(class, computed, printed)` where the sizes differ.
    pub class_sizes: Vec<(String, usize, usize)>,
    /// `(irrep, subgroup, dim)` for listed pairs whose fixed space is not 1-D.
    pub theorem_pairs: Vec<(String, String, usize)>,
}

impl TableDiff {
    pub fn is_empty(&self) -> bool {
        self.class_sizes.is_empty() && self.theorem_pairs.is_empty()
    }
}

fn cmd_group(cli: &Cli) -> std::result::Result<serde_json::Value, CliError> {
    let group = symgroup::build_group().stage("group")?;
    let table = symgroup::character_table(&group).stage("characters")?;
    let catalog = symgroup::subgroup_catalog(&group).stage("subgroups")?;
    let iso = symgroup::classify_isotropy(&group, &catalog).stage("isotropy")?;
    let mut out = Outputs::new(&cli.out).stage("output")?;

    let classes: Vec<ClassEntry> = group
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| ClassEntry {
            label: c.label.clone(),
            word: symgroup::CLASS_WORDS[i].to_string(),
            representative: c.representative,
            size: c.size,
            printed_size: symgroup::PRINTED_CLASS_SIZES[i],
            order: c.order,
            elements: c.elements.iter().collect(),
        })
        .collect();
    out.json("classes.json", &serde_json::json!({ "order": group.order(), "classes": classes }))
        .stage("output")?;

    let rows: Vec<serde_json::Value> = (0..NUM_CLASSES)
        .map(|j| {
            let exact: Vec<CharValue> = symgroup::CHARACTERS[j].to_vec();
            serde_json::json!({
                "irrep": symgroup::irrep_label(j),
                "values": (0..NUM_CLASSES).map(|c| table.value(j, c)).collect::<Vec<_>>(),
                "exact": exact,
            })
        })
        .collect();
    out.json(
        "characters.json",
        &serde_json::json!({
            "class_labels": table.class_labels,
            "class_sizes": table.class_sizes,
            "rows": rows,
            "orthogonality_defect": table.orthogonality_defect(),
        }),
    )
    .stage("output")?;

    let subgroups: Vec<serde_json::Value> = catalog
        .iter()
        .map(|s| {
            serde_json::json!({
                "name": s.name,
                "order": s.order(),
                "generators": s.generators,
                "decomposition": s.decomposition,
                "elements": s.elements.iter().collect::<Vec<_>>(),
            })
        })
        .collect();
    out.json("subgroups.json", &subgroups).stage("output")?;

    let names: Vec<String> = catalog.iter().map(|s| s.name.clone()).collect();
    let report: Vec<IsotropyRow> = iso
        .iter()
        .map(|r| IsotropyRow {
            irrep: r.irrep.clone(),
            dimension: r.dimension,
            dims: names.iter().map(|n| r.dims[n]).collect(),
            axial: r.axial.clone(),
            theorem: r
                .theorem
                .iter()
                .map(|t| TheoremPair { subgroup: t.clone(), dim: r.dims[t], reproduced: r.dims[t] == 1 })
                .collect(),
            missing: r.missing.clone(),
            maximal: r.maximal.clone(),
        })
        .collect();
    out.json("isotropy_report.json", &serde_json::json!({ "subgroups": names, "irreps": report }))
        .stage("output")?;

    let mut diff = TableDiff::default();
    for c in &classes {
        if c.size != c.printed_size {
            diff.class_sizes.push((c.label.clone(), c.size, c.printed_size));
        }
    }
    for r in &report {
        for t in r.theorem.iter().filter(|t| !t.reproduced) {
            diff.theorem_pairs.push((r.irrep.clone(), t.subgroup.clone(), t.dim));
        }
    }
    out.json("table_diff.json", &diff).stage("output")?;
    out.finish(cli, None).stage("output")?;

    let summary = serde_json::json!({
        "order": group.order(),
        "classes": group.classes.len(),
        "subgroups": catalog.len(),
        "orthogonality_defect": table.orthogonality_defect(),
        "table_diff": diff,
    });
    if diff.is_empty() {
        Ok(summary)
    } else {
        Err(CliError {
            stage: "table check",
            error: Error::TableMismatch(serde_json::to_string_pretty(&diff).unwrap_or_default()),
        })
    }
}

fn solver_options(cli: &Cli, a: &SolveArgs) -> SolverOptions {
    SolverOptions { seed: cli.seed, tol: a.tol, ..Default::default() }
}

fn render_field(
    out: &mut Outputs,
    stem: &str,
    field: &dyn planforms::OctagonField,
    a: &SolveArgs,
) -> Result<Vec<String>> {
    let mut files = Vec::new();
    let r = planforms::sample_octagon(field, a.raster);
    planforms::render(&r, &out.path(&format!("{stem}.png")), true)?;
    r.write_csv(&out.path(&format!("{stem}.csv")))?;
    files.push(format!("{stem}.png"));
    if a.disc {
        let d = planforms::extend_to_disc(field, a.raster);
        planforms::render(&d, &out.path(&format!("{stem}_disc.png")), false)?;
        d.write_csv(&out.path(&format!("{stem}_disc.csv")))?;
        files.push(format!("{stem}_disc.png"));
    }
    Ok(files)
}

fn cmd_desymmetrized(cli: &Cli, a: &SolveArgs) -> std::result::Result<serde_json::Value, CliError> {
    let rep = a.rep.as_deref().expect("validated");
    let chi = symgroup::parse_irrep(rep).stage("validation")?;
    let group = symgroup::build_group().stage("group")?;
    let catalog = symgroup::subgroup_catalog(&group).stage("subgroups")?;
    let tau = mesh::mesh_triangle(a.nodes.unwrap_or(3000)).stage("mesh")?;
    let d = planforms::solve_desymmetrized_with(&group, chi, &tau, a.n, &solver_options(cli, a)).stage("eigensolver")?;
    let name = d.planform.isotropy.clone();
    let h = symgroup::find_subgroup(&catalog, &name).expect("theorem names are cataloged");
    let isotropy_defect =
        planforms::tile_isotropy_defect(&group, &d.octagon_mesh, &d.planform.values, &h.elements).stage("isotropy")?;

    let mut out = Outputs::new(&cli.out).stage("output")?;
    let mut csv = Vec::new();
    let ids: Vec<usize> = (0..d.spectrum.len()).collect();
    fem::write_eigen_csv(
        &mut csv,
        &fem::EigenResult { eigenvalues: d.spectrum.clone(), eigenvectors: vec![], residuals: d.residuals.clone() },
        &ids,
    )
    .stage("output")?;
    out.text("eigenvalues.csv", &csv).stage("output")?;

    let images = if a.no_images {
        vec![]
    } else {
        let field = TileField::new(&group, &d);
        let stem = format!("planform_{}_{}", symgroup::irrep_label(chi), planforms::file_safe(&name));
        render_field(&mut out, &stem, &field, a).stage("render")?
    };
    let report = serde_json::json!({
        "mode": "desymmetrized",
        "irrep": symgroup::irrep_label(chi),
        "recipe": d.recipe,
        "eigenvalue": d.eigenvalue,
        "residual": d.residual,
        "continuity_defect": d.continuity_defect,
        "periodicity_defect": planforms::periodicity_defect(&d.octagon_mesh, &d.planform.values),
        "isotropy": name,
        "isotropy_defect": isotropy_defect,
        "triangle_nodes": tau.num_nodes(),
        "triangle_level": tau.level,
        "images": images,
    });
    out.json("classification.json", &report).stage("output")?;
    out.json("summary.json", &report).stage("output")?;
    out.finish(cli, Some(tau.hash())).stage("output")?;
    Ok(report)
}

fn cmd_periodic(cli: &Cli, a: &SolveArgs) -> std::result::Result<serde_json::Value, CliError> {
    let group = symgroup::build_group().stage("group")?;
    let catalog = symgroup::subgroup_catalog(&group).stage("subgroups")?;
    let refinement = mesh::octagon_refinement_for(a.nodes.unwrap_or(3641)).stage("mesh")?;
    let setup = PeriodicSetup::new(&group, refinement, !a.no_symmetrize).stage("assembly")?;
    let n = a.n.min(setup.num_dofs());
    let spectrum = planforms::solve_periodic_with(&setup, n, &solver_options(cli, a)).stage("eigensolver")?;
    let classes: Vec<planforms::Classification> =
        spectrum.spaces.iter().map(|s| planforms::classify_eigenspace(s, &setup, &group)).collect();
    let pairs = planforms::realize_theorem_pairs(&group, &catalog, &setup, &spectrum.spaces, &classes, cli.seed)
        .stage("isotropy")?;

    let mut out = Outputs::new(&cli.out).stage("output")?;
    let mut space_of = vec![0usize; n];
    for (k, s) in spectrum.spaces.iter().enumerate() {
        for &i in s.indices.iter().filter(|&&i| i < n) {
            space_of[i] = k;
        }
    }
    let mut csv = String::from("index,lambda,residual,space,irrep\n");
    for i in 0..n {
        let k = space_of[i];
        let label = classes[k].irrep.clone().unwrap_or_else(|| "unclassified".into());
        csv.push_str(&format!("{i},{:.12},{:.3e},{k},{label}\n", spectrum.eigenvalues[i], spectrum.residuals[i]));
    }
    out.text("eigenvalues.csv", csv.as_bytes()).stage("output")?;

    let staircase = if n >= 2 { Some(fem::weyl_staircase(&spectrum.eigenvalues).stage("staircase")?) } else { None };
    if let Some(st) = &staircase {
        let mut buf = Vec::new();
        fem::write_staircase_csv(&mut buf, st).stage("output")?;
        out.text("staircase.csv", &buf).stage("output")?;
    }

    let mut images: BTreeMap<String, Vec<String>> = BTreeMap::new();
    if !a.no_images {
        for p in &pairs {
            if let Some(v) = &p.dofs {
                let values = setup.system.expand(v);
                let field = MeshField::new(&setup.mesh, &values);
                let stem = format!("planform_{}_{}", p.irrep, planforms::file_safe(&p.subgroup));
                let files = render_field(&mut out, &stem, &field, a).stage("render")?;
                images.insert(format!("{}/{}", p.irrep, p.subgroup), files);
            }
        }
    }

    let census = planforms::irrep_census(&classes);
    let unclassified = classes.iter().filter(|c| c.irrep.is_none()).count();
    let ambiguous = spectrum.spaces.iter().filter(|s| s.ambiguous).count();
    let spaces: Vec<serde_json::Value> = spectrum
        .spaces
        .iter()
        .zip(&classes)
        .map(|(s, c)| {
            serde_json::json!({
                "eigenvalue": s.eigenvalue,
                "indices": s.indices,
                "multiplicity": s.multiplicity(),
                "ambiguous": s.ambiguous,
                "irrep": c.irrep,
                "best": c.best,
                "deviation": c.deviation,
                "traces": c.traces,
                "deviations": c.deviations,
            })
        })
        .collect();
    out.json(
        "classification.json",
        &serde_json::json!({
            "mode": "periodic",
            "spaces": spaces,
            "census": census,
            "pairs": pairs,
            "images": images,
        }),
    )
    .stage("output")?;

    let first_nonzero = spectrum.eigenvalues.iter().copied().find(|&l| l > 1e-8);
    let summary = serde_json::json!({
        "mode": "periodic",
        "octagon_nodes": setup.mesh.num_nodes(),
        "dofs": setup.num_dofs(),
        "refinement": refinement,
        "symmetrized": setup.symmetrized,
        "eigenpairs": n,
        "lambda_0": spectrum.eigenvalues[0],
        "first_nonzero": first_nonzero,
        "weyl_slope": staircase.as_ref().map(|s| s.slope),
        "spaces": spectrum.spaces.len(),
        "unclassified": unclassified,
        "ambiguous": ambiguous,
        "max_residual": spectrum.residuals.iter().copied().fold(0.0, f64::max),
    });
    out.json("summary.json", &summary).stage("output")?;
    out.finish(cli, Some(setup.mesh.hash())).stage("output")?;
    Ok(summary)
}

fn cmd_neutral(cli: &Cli, a: &NeutralArgs) -> std::result::Result<serde_json::Value, CliError> {
    let f = MexicanHat::new(a.sigma1, a.sigma2, a.theta).stage("validation")?;
    let grid = NeutralGrid::uniform(a.grid, a.rho_max, a.log_beta_max).stage("validation")?;
    let ns = neutral::neutral_surface(&f, &grid).stage("transform")?;
    let mut out = Outputs::new(&cli.out).stage("output")?;
    let p = out.path("neutral.csv");
    ns.write_csv(&p).stage("output")?;
    let s = ns.summary();
    let status = match s.status {
        NeutralStatus::Unstable => "unstable",
        NeutralStatus::NoInstability => "no instability",
    };
    let mut summary = serde_json::to_value(&s).map_err(Error::from).stage("output")?;
    summary["status"] = serde_json::Value::from(status);
    out.json("neutral_summary.json", &summary).stage("output")?;
    out.finish(cli, None).stage("output")?;
    Ok(summary)
}

/// Parses the process arguments, runs, prints the summary and returns the
/// exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(summary) => {
            println!("{}", serde_json::to_string_pretty(&summary).unwrap_or_default());
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error in {e}");
            e.exit_code()
        }
    }
}
