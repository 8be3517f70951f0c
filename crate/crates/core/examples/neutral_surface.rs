// Hyperbolic Fourier transform of a Mexican-hat kernel and the neutral
// stability surface μ(ρ, β) = 1/ŵ(ρ, β).

use hplanforms::neutral::{self, MexicanHat, NeutralGrid, NeutralStatus};

pub fn run_example() -> hplanforms::Result<()> {
    let grid = NeutralGrid::uniform(41, 4.0, 2.0)?;
    for (s1, s2, theta) in [(1.0, 2.0, 1.0), (1.0, 2.0, 0.0), (1.0, 1.0, 1.0)] {
        let f = MexicanHat::new(s1, s2, theta)?;
        let ns = neutral::neutral_surface(&f, &grid)?;
        print!("σ1 = {s1}, σ2 = {s2}, θ = {theta}: ");
        match (ns.status, ns.minimizer) {
            (NeutralStatus::Unstable, Some(m)) => println!(
                "μc = {:.6} at ρc = {:.2}, βc = {:.4} ({}), tail {:.1e}",
                m.mu,
                m.rho,
                m.beta,
                if m.interior { "interior" } else { "on the grid boundary" },
                ns.tail
            ),
            _ => println!("no instability"),
        }
    }
    let f = MexicanHat::default();
    let w = neutral::w_hat(&f, 1.1, 1.0)?;
    println!("ŵ(1.1, 1) = {:.9}  (imaginary part {:.1e}, truncation radius {})", w.value, w.imag, w.radius);
    Ok(())
}

#[allow(dead_code)]
fn main() -> hplanforms::Result<()> {
    run_example()
}
