// With a flux whose primitive has bounded range the construction only lives
// on a strip: u = ln cos y − ln cos x solves the minimal surface equation on
// (−π/2, π/2)² and blows up at its edge.

use std::f64::consts::FRAC_PI_2;

use entire::equations;
use entire::solution::arctan_solution;
use entire::verify::{blowup_probe, verify_solution, Grid, Ray};

pub fn run_example() -> entire::Result<()> {
    let sol = arctan_solution();
    println!("{}  domain {:?}", sol.descriptor(), sol.domain());

    let grid = Grid::square(-1.5, 1.5, 101)?;
    let r = verify_solution(&sol, &equations::minimal_surface(), &grid, false)?;
    println!("minimal surface residual on [-1.5, 1.5]²: {:.2e}", r.max_abs_residual);

    // approaching the edge: u ≈ −ln(π/2 − x)
    let mut probes = vec![0.0, 0.5, 1.0, 1.5];
    probes.extend([1e-2, 1e-4, 1e-6, 1e-8].map(|d| FRAC_PI_2 - d));
    for (s, u) in blowup_probe(&sol, &Ray::x_axis(), &probes)? {
        println!("  u({s:<18}, 0) = {u:>10.6}   -ln(π/2 - x) = {:>10.6}", -(FRAC_PI_2 - s).ln());
    }
    match sol.eval(2.0, 0.0) {
        Err(e) => println!("outside the strip: {e}"),
        Ok(b) => panic!("unexpected value {b:?}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> entire::Result<()> {
    run_example()
}
