// Acceptance suite. Runs without the libtest harness so that every criterion
// prints exactly one PASS/FAIL line, also when the run succeeds:
//
//     cargo test --release --test acceptance
//
// The process fails if any criterion fails, except for failures that match
// the documented table discrepancies exactly (see README).

mod common;

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use hplanforms::fem::{self, BoundaryConditions, Condition, SolverKind, SolverOptions};
use hplanforms::hypgeo::{self, C64};
use hplanforms::mesh::{self, EdgeTag};
use hplanforms::neutral::{self, MexicanHat, NeutralGrid, NeutralStatus, QuadratureOptions, Transform};
use hplanforms::planforms::{self, PeriodicSetup};
use hplanforms::symgroup::{self, SymmetryGroup, NUM_CLASSES};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Failures known to be forced by inconsistent printed tables. Each entry is
/// matched against the exact failed sub-checks of its criterion.
const KNOWN_FAILURES: &[(usize, &[&str])] = &[(1, &["class sizes", "pair chi7/C4k'"])];

struct Report {
    id: usize,
    title: &'static str,
    failures: Vec<String>,
    details: Vec<String>,
    notes: Vec<String>,
    elapsed: Duration,
}

impl Report {
    fn new(id: usize, title: &'static str) -> Self {
        Report { id, title, failures: vec![], details: vec![], notes: vec![], elapsed: Duration::ZERO }
    }

    fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        let (name, detail) = (name.into(), detail.into());
        if !ok {
            self.failures.push(name.clone());
        }
        self.details.push(format!("{} {name}: {detail}", if ok { "ok  " } else { "FAIL" }));
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn known(&self) -> bool {
        KNOWN_FAILURES.iter().any(|(id, names)| {
            *id == self.id && {
                let want: BTreeSet<&str> = names.iter().copied().collect();
                let got: BTreeSet<&str> = self.failures.iter().map(String::as_str).collect();
                want == got
            }
        })
    }
}

fn timed(id: usize, title: &'static str, f: impl FnOnce(&mut Report)) -> Report {
    let mut r = Report::new(id, title);
    let t = Instant::now();
    f(&mut r);
    r.elapsed = t.elapsed();
    r
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn group_theory(r: &mut Report) {
    let t = Instant::now();
    let group = symgroup::build_group().expect("group builds");
    r.check("order", group.order() == 96, format!("|G*| = {}", group.order()));
    r.check("class count", group.classes.len() == 13, format!("{} classes", group.classes.len()));

    let sizes: Vec<usize> = group.classes.iter().map(|c| c.size).collect();
    let printed = symgroup::PRINTED_CLASS_SIZES.to_vec();
    r.check("class sizes", sizes == printed, format!("computed {sizes:?}, printed {printed:?}"));
    let derived = symgroup::class_sizes_from_characters().to_vec();
    r.check("sizes from characters", sizes == derived, format!("{derived:?}"));

    let table = symgroup::character_table(&group).expect("character table");
    let orth = table.orthogonality_defect();
    r.check("orthogonality", orth <= 1e-12, format!("defect {orth:.1e}"));

    match symgroup::subgroup_catalog(&group) {
        Ok(cat) => {
            r.check("subgroups", true, format!("{} subgroups with printed orders and class decompositions", cat.len()));
            let iso = symgroup::classify_isotropy(&group, &cat).expect("trace formula");
            let mut total = 0;
            for row in &iso {
                for name in &row.theorem {
                    total += 1;
                    let d = row.dims[name];
                    if d != 1 {
                        r.check(format!("pair {}/{name}", row.irrep), false, format!("dim V^H = {d}"));
                    }
                }
            }
            r.check("theorem pairs", true, format!("{total} listed pairs checked by the trace formula"));
            let q8 = symgroup::find_subgroup(&cat, "Q8").expect("Q8 cataloged");
            let d = symgroup::fixed_dim(&group, 4, q8).expect("trace formula");
            r.check("dim V^Q8 for chi5", d == 2, format!("{d}"));
        }
        Err(e) => r.check("subgroups", false, e.to_string()),
    }
    let secs = t.elapsed().as_secs_f64();
    r.check("runtime", secs < 10.0, format!("{secs:.2} s"));
}

const DESYM_TARGETS: [f64; 4] = [23.0790, 91.4865, 32.6757, 222.5434];

fn desymmetrized(r: &mut Report, group: &SymmetryGroup) -> Vec<(String, String, f64)> {
    let mut defects = Vec::new();
    let cat = symgroup::subgroup_catalog(group).expect("catalog");
    let tau = mesh::mesh_triangle(3000).expect("triangle mesh");
    let fine = mesh::mesh_triangle_level(2 * tau.level).expect("refined mesh");
    r.note(format!("triangle mesh {} nodes, refined {} nodes", tau.num_nodes(), fine.num_nodes()));
    let fine_sys = fem::assemble(&fine).expect("assembly");
    for (chi, &target) in DESYM_TARGETS.iter().enumerate() {
        let label = symgroup::irrep_label(chi);
        let t = Instant::now();
        let d = planforms::solve_desymmetrized(group, chi, &tau).expect("desymmetrized solve");
        let secs = t.elapsed().as_secs_f64();
        let e = d.eigenvalue;
        r.check(
            format!("{label} from above"),
            e >= target && rel(e, target) <= 0.03,
            format!("{e:.5} vs {target} ({:+.3}%), {secs:.1} s", 100.0 * (e - target) / target),
        );
        r.check(format!("{label} runtime"), secs < 120.0, format!("{secs:.1} s"));

        let recipe = planforms::bc_recipe(group, chi).expect("recipe");
        let red = fem::apply_bc(&fine_sys, &fine, &recipe.boundary_conditions()).expect("bc");
        let want = if chi == 0 { 2 } else { 1 };
        let ef = fem::solve_smallest(&red, want).expect("refined solve").eigenvalues[want - 1];
        r.check(
            format!("{label} refinement"),
            ef < e && (ef - target).abs() < (e - target).abs(),
            format!("{ef:.5} ({:+.3}%)", 100.0 * (ef - target) / target),
        );
        // P1 error is O(h²), so halving h removes three quarters of it
        let extrapolated = ef - (e - ef) / 3.0;
        r.note(format!("{label} extrapolated to h → 0: {extrapolated:.4} ({:+.3}%)", 100.0 * (extrapolated - target) / target));

        let h = symgroup::find_subgroup(&cat, &d.planform.isotropy).expect("isotropy cataloged");
        let defect = planforms::tile_isotropy_defect(group, &d.octagon_mesh, &d.planform.values, &h.elements)
            .expect("isotropy defect");
        r.note(format!("{label} planform: isotropy {} defect {defect:.1e}", h.name));
        defects.push((label, h.name.clone(), defect));
    }
    defects
}

struct PeriodicRun {
    eigenvalues: Vec<f64>,
    pairs: Vec<planforms::RealizedPair>,
    secs: f64,
}

/// Reference eigenvalues, each with the irrep of the planform it belongs to.
const PERIODIC_TARGETS: [(f64, usize); 5] = [(3.8432, 7), (8.2501, 5), (15.0518, 9), (28.0888, 8), (73.7323, 4)];

fn periodic(r: &mut Report, group: &SymmetryGroup) -> PeriodicRun {
    let t = Instant::now();
    let refinement = mesh::octagon_refinement_for(3641).expect("refinement");
    let setup = PeriodicSetup::new(group, refinement, true).expect("periodic setup");
    let spectrum = planforms::solve_periodic(&setup, 100).expect("periodic solve");
    let classes: Vec<_> = spectrum.spaces.iter().map(|s| planforms::classify_eigenspace(s, &setup, group)).collect();
    let cat = symgroup::subgroup_catalog(group).expect("catalog");
    let pairs = planforms::realize_theorem_pairs(group, &cat, &setup, &spectrum.spaces, &classes, 7).expect("projection");
    let secs = t.elapsed().as_secs_f64();
    let e = &spectrum.eigenvalues;
    r.note(format!("octagon mesh {} nodes, {} dofs, {} eigenvalues", setup.mesh.num_nodes(), setup.num_dofs(), e.len()));

    r.check("count", e.len() == 100, format!("{}", e.len()));
    r.check(
        "zero mode",
        e[0].abs() < 1e-8 && spectrum.spaces[0].multiplicity() == 1,
        format!("λ1 = {:.1e}, multiplicity {}", e[0], spectrum.spaces[0].multiplicity()),
    );
    let first = spectrum.spaces[1].eigenvalue;
    r.check("first nonzero", rel(first, 3.8432) <= 0.03, format!("{first:.5} vs 3.8432"));
    for &(target, _) in &PERIODIC_TARGETS[1..] {
        let near = e.iter().copied().min_by(|a, b| rel(*a, target).total_cmp(&rel(*b, target))).unwrap();
        r.check(format!("λ ≈ {target}"), rel(near, target) <= 0.03, format!("{near:.5} ({:+.2}%)", 100.0 * (near - target) / target));
    }
    let exceptional: Vec<f64> = e.iter().copied().filter(|&l| l > 1e-8 && l <= 0.25).collect();
    r.check("no exceptional eigenvalues", exceptional.is_empty(), format!("{exceptional:?} in (1e-8, 0.25]"));
    let worst = classes.iter().map(|c| c.deviation).fold(0.0, f64::max);
    let mults_ok = spectrum.spaces.iter().all(|s| (1..=4).contains(&s.multiplicity()));
    let classified = classes.iter().all(|c| c.irrep.is_some());
    r.check(
        "eigenspaces",
        mults_ok && classified && worst <= 0.1,
        format!("{} spaces, multiplicities in 1..=4: {mults_ok}, all classified: {classified}, worst deviation {worst:.1e}", spectrum.spaces.len()),
    );
    r.check("runtime", secs < 600.0, format!("{secs:.1} s"));

    for &(target, chi) in &PERIODIC_TARGETS {
        let label = symgroup::irrep_label(chi);
        let near = spectrum
            .spaces
            .iter()
            .zip(&classes)
            .filter(|(_, c)| c.irrep.as_deref() == Some(label.as_str()))
            .map(|(s, _)| s.eigenvalue)
            .min_by(|a, b| rel(*a, target).total_cmp(&rel(*b, target)));
        match near {
            Some(l) => r.note(format!("{target} as {label}: {l:.5} ({:+.2}%)", 100.0 * (l - target) / target)),
            None => r.note(format!("{target} as {label}: no {label} space among the first 100")),
        }
    }
    PeriodicRun { eigenvalues: spectrum.eigenvalues, pairs, secs }
}

fn weyl(r: &mut Report, run: &PeriodicRun) {
    let st = fem::weyl_staircase(&run.eigenvalues).expect("staircase");
    r.check("slope", (st.slope - 1.0).abs() <= 0.1, format!("{:.4} over {} eigenvalues", st.slope, run.eigenvalues.len()));
    r.note(format!("periodic spectrum computed in {:.1} s", run.secs));
}

fn geometry(r: &mut Report) {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut dist = 0.0f64;
    for _ in 0..1000 {
        let g = common::random_isometry(&mut rng, 4.0);
        let (z, w) = (common::random_point(&mut rng, 0.9), common::random_point(&mut rng, 0.9));
        dist = dist.max((hypgeo::dist_disc(z, w) - hypgeo::dist_disc(g.apply(z), g.apply(w))).abs());
    }
    r.check("distance invariance", dist <= 1e-10, format!("{dist:.1e} over 1000 isometries"));

    let mut theta = 0.0f64;
    let mut eq9 = 0.0f64;
    for _ in 0..1000 {
        let a = common::random_tensor(&mut rng);
        let (x1, x2, x3) = hypgeo::theta_inv(a.z, a.z3).expect("theta inverse");
        let (z, z3) = hypgeo::theta(x1, x2, x3).expect("theta");
        theta = theta.max((z.0 - a.z.0).norm()).max((z3 - a.z3).abs() / a.z3);
        let b = common::random_tensor(&mut rng);
        eq9 = eq9.max((hypgeo::dist_tensor(&a, &b) - 2f64.sqrt() * hypgeo::dist_product(&a, &b)).abs());
    }
    r.check("theta round trip", theta <= 1e-12, format!("{theta:.1e}"));
    r.check("tensor distance", eq9 <= 1e-10, format!("{eq9:.1e}"));

    let b = C64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI));
    let z = C64::new(0.2, 0.1);
    let errs: Vec<f64> = [4e-2, 2e-2, 1e-2, 5e-3].iter().map(|&h| common::eigenwave_fd_error(1.0, b, z, h)).collect();
    let orders: Vec<f64> = errs.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    let ok = orders.iter().all(|o| (o - 2.0).abs() < 0.15);
    r.check("eigenwave order", ok, format!("observed orders {orders:.3?}"));
    let secs = t.elapsed().as_secs_f64();
    r.check("runtime", secs < 30.0, format!("{secs:.2} s"));
}

fn oracles(r: &mut Report) {
    let conditions = [Condition::Neumann, Condition::Dirichlet];
    let mut systems = Vec::new();
    let mut level = 2;
    while mesh::triangle_nodes(level) <= 500 {
        let tau = mesh::mesh_triangle_level(level).expect("mesh");
        let sys = fem::assemble(&tau).expect("assembly");
        for pq in conditions {
            for qr in conditions {
                for rp in conditions {
                    let bc = BoundaryConditions::PerTag(vec![(EdgeTag::PQ, pq), (EdgeTag::QR, qr), (EdgeTag::RP, rp)]);
                    if let Ok(red) = fem::apply_bc(&sys, &tau, &bc) {
                        systems.push(red);
                    }
                }
            }
        }
        level += 1;
    }
    for refinement in 0..3 {
        let oct = mesh::mesh_octagon(refinement).expect("mesh");
        let sys = fem::assemble(&oct).expect("assembly");
        systems.push(fem::apply_bc(&sys, &oct, &BoundaryConditions::Periodic).expect("periodic"));
    }
    let opts = SolverOptions { kind: SolverKind::Sparse, ..Default::default() };
    let mut worst = 0.0f64;
    let mut count = 0;
    for sys in systems.iter().filter(|s| (3..=500).contains(&s.num_dofs)) {
        let n = (sys.num_dofs - 1).min(12);
        let a = fem::solve_smallest_with(sys, n, &opts).expect("sparse");
        let b = fem::solve_dense(sys, n).expect("dense");
        for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
            worst = worst.max((x - y).abs() / y.abs().max(1.0));
        }
        count += 1;
    }
    r.check("sparse vs dense", worst <= 1e-8, format!("{worst:.1e} over {count} systems"));

    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut horo = 0.0f64;
    for _ in 0..100 {
        let z = common::random_point(&mut rng, 0.95);
        let b = C64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI));
        horo = horo.max((hypgeo::horocycle_bracket(z, b) - common::horocycle_length_oracle(z, b)).abs());
    }
    r.check("horocycle bracket", horo <= 1e-9, format!("{horo:.1e} over 100 points"));
}

fn isotropy(r: &mut Report, desym: &[(String, String, f64)], run: &PeriodicRun) {
    for (label, h, d) in desym {
        r.check(format!("{label}/{h}"), *d <= 1e-3, format!("{d:.1e}"));
    }
    for p in &run.pairs {
        match p.isotropy_defect {
            Some(d) => r.check(format!("{}/{}", p.irrep, p.subgroup), d <= 1e-3, format!("{d:.1e} at λ = {:.4}", p.eigenvalue)),
            None => r.note(format!("{}/{} not realized: dim V^H = {}", p.irrep, p.subgroup, p.fixed_dim)),
        }
    }
}

fn neutral_surface(r: &mut Report) {
    let f = MexicanHat::default();
    let grid = NeutralGrid::default();
    let s = neutral::neutral_surface(&f, &grid).expect("neutral surface");
    r.check("real", s.max_imag <= 1e-6, format!("max |Im ŵ| = {:.1e}", s.max_imag));

    let t = Transform::new(f, QuadratureOptions::default()).expect("transform");
    let mut bdev = 0.0f64;
    for (rho, beta) in [(0.0, 1.0), (1.1, 1.0), (2.3, 0.5), (3.7, 4.0)] {
        let base = t.eval(rho, beta).expect("eval").value;
        for b in [C64::new(0.0, 1.0), C64::from_polar(1.0, 2.2), C64::from_polar(1.0, -0.9)] {
            let w = t.eval_at(rho, beta, b).expect("eval");
            bdev = bdev.max((w.value - base).abs()).max(w.imag.abs());
        }
    }
    r.check("b-independent", bdev <= 1e-6, format!("{bdev:.1e}"));

    let mut sym = 0.0f64;
    for row in &s.w {
        for j in 0..row.len() {
            sym = sym.max((row[j] - row[row.len() - 1 - j]).abs());
        }
    }
    r.check("β ↔ 1/β", sym <= 1e-10, format!("{sym:.1e}"));

    let s0 = neutral::neutral_surface(&MexicanHat::new(1.0, 2.0, 0.0).expect("kernel"), &grid).expect("surface");
    match s0.minimizer {
        Some(m) => r.check("θ = 0 minimizer", m.rho == 0.0 && (m.beta - 1.0).abs() < 1e-12, format!("ρ = {}, β = {}", m.rho, m.beta)),
        None => r.check("θ = 0 minimizer", false, "none"),
    }

    let base: serde_json::Value = serde_json::from_str(include_str!("data/neutral_baseline.json")).expect("baseline");
    match (s.status, s.minimizer) {
        (NeutralStatus::Unstable, Some(m)) => {
            let bm = &base["minimizer"];
            let mu = bm["mu"].as_f64().unwrap();
            let same_cell = m.i as u64 == bm["i"].as_u64().unwrap() && m.j as u64 == bm["j"].as_u64().unwrap();
            let tol = base["mu_rel_tol"].as_f64().unwrap();
            r.check(
                "interior minimizer",
                m.interior,
                format!("μc = {:.9}, ρc = {}, βc = {}", m.mu, m.rho, m.beta),
            );
            r.check("baseline", same_cell && rel(m.mu, mu) <= tol, format!("stored μc = {mu}"));
        }
        _ => r.check("interior minimizer", false, "no instability"),
    }
}

fn main() {
    let wall = Instant::now();
    let group = symgroup::build_group().expect("group builds");
    assert_eq!(NUM_CLASSES, 13);

    let (c1, c5, c6, c8, (c2, desym_defects), (c3, run)) = std::thread::scope(|s| {
        let h1 = s.spawn(|| timed(1, "group-theory exactness", group_theory));
        let h5 = s.spawn(|| timed(5, "geometry properties", geometry));
        let h6 = s.spawn(|| timed(6, "oracle equivalence", oracles));
        let h8 = s.spawn(|| timed(8, "neutral surface", neutral_surface));
        let h2 = s.spawn(|| {
            let mut out = Vec::new();
            let r = timed(2, "desymmetrized eigenvalues", |r| out = desymmetrized(r, &group));
            (r, out)
        });
        let h3 = s.spawn(|| {
            let mut out = None;
            let r = timed(3, "periodic spectrum", |r| out = Some(periodic(r, &group)));
            (r, out.expect("periodic run"))
        });
        (
            h1.join().unwrap(),
            h5.join().unwrap(),
            h6.join().unwrap(),
            h8.join().unwrap(),
            h2.join().unwrap(),
            h3.join().unwrap(),
        )
    });
    let c4 = timed(4, "Weyl staircase", |r| weyl(r, &run));
    let c7 = timed(7, "isotropy of computed planforms", |r| isotropy(r, &desym_defects, &run));

    let mut reports = vec![c1, c2, c3, c4, c5, c6, c7, c8];
    reports.sort_by_key(|r| r.id);
    for r in &reports {
        println!("\ncriterion {} ({}), {:.1} s", r.id, r.title, r.elapsed.as_secs_f64());
        for d in &r.details {
            println!("    {d}");
        }
        for n in &r.notes {
            println!("    note: {n}");
        }
    }
    println!();
    let mut unexpected = 0;
    for r in &reports {
        let verdict = if r.passed() { "PASS" } else { "FAIL" };
        let extra = if r.passed() {
            String::new()
        } else if r.known() {
            format!(" (documented table discrepancy: {})", r.failures.join(", "))
        } else {
            unexpected += 1;
            format!(" ({})", r.failures.join(", "))
        };
        println!("criterion {}: {verdict}  {}{extra}", r.id, r.title);
    }
    println!("\ntotal {:.1} s", wall.elapsed().as_secs_f64());
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}
