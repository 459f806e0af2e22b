// When f vanishes (f = t²) the construction yields Aronsson's
// u = x^{4/3} − y^{4/3}: it solves the ∞-Laplacian off the axes but is only
// C^{1,1/3} across them.

use entire::equations::{self, Ellipticity};
use entire::solution::aronsson_solution;
use entire::verify::{holder_exponent, verify_solution, Axis, Exclusion, Grid};

pub fn run_example() -> entire::Result<()> {
    let sol = aronsson_solution();
    let eq = equations::aronsson();
    let grid = Grid::square(-2.0, 2.0, 101)?.excluding(Exclusion::AxisMargin(0.1));
    let r = verify_solution(&sol, &eq, &grid, false)?;
    println!("{}", sol.descriptor());
    println!("  off-axis residual {:.2e}, min AC - B² {:.1e}", r.max_abs_residual, r.min_ellipticity_margin);
    let b = sol.eval(1.0, 0.5)?;
    println!("  ellipticity at (1, 0.5): {:?}", eq.classify(&b));
    assert_eq!(eq.classify(&b), Ellipticity::Degenerate);

    let radii: Vec<f64> = (1..=6).map(|k| 10f64.powi(-k)).collect();
    println!("  Hölder exponent of ux across x = 0: {:.6}", holder_exponent(&sol, Axis::X, &radii)?);
    for x in [1e-1, 1e-2, 1e-3] {
        println!("  uxx({x:e}, 1) = {:.3}", sol.eval(x, 1.0)?.uxx);
    }
    println!("  on the axis: {}", sol.eval(0.0, 1.0).unwrap_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> entire::Result<()> {
    run_example()
}
