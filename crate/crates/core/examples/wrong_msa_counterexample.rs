// A non-affine entire solution of the uniformly elliptic equation
// (1+p²)uxx + 2pq uxy + (1+q²)uyy = 0, built from the cubic flux.

use entire::equations;
use entire::solution::{cardano_solution, construct};
use entire::verify::{verify_solution, Grid};

pub fn run_example() -> entire::Result<()> {
    let sol = construct(entire::flux::cubic(), entire::flux::cubic(), 1.0);
    let grid = Grid::square(-10.0, 10.0, 201)?;
    let eq = equations::wrong_msa();

    let analytic = verify_solution(&sol, &eq, &grid, false)?;
    let fd = verify_solution(&sol, &eq, &grid, true)?;
    println!("{}", sol.descriptor());
    println!("  analytic max |residual| {:.2e} at {:?}", analytic.max_abs_residual, analytic.argmax);
    println!("  fd       max |residual| {:.2e}", fd.max_abs_residual);
    println!("  min AC - B² {:.3}", analytic.min_ellipticity_margin);
    println!("  affine: {}", sol.is_affine(&grid.nodes()));

    // same function via the closed-form h
    let closed = cardano_solution();
    for (x, y) in [(1.0, 0.0), (3.0, -2.0), (-7.5, 4.0)] {
        println!("  u({x}, {y}) = {:.15}  closed form {:.15}", sol.value(x, y)?, closed.value(x, y)?);
    }

    // the sign-flipped mixed term is satisfied too, since uxy = 0
    let flipped = verify_solution(&sol, &equations::wrong_msa_flipped(), &grid, false)?;
    println!("  flipped equation max |residual| {:.2e}", flipped.max_abs_residual);
    assert!(analytic.passes(1e-10) && fd.passes(1e-5));
    Ok(())
}

#[allow(dead_code)]
fn main() -> entire::Result<()> {
    run_example()
}
