// Sampling a solution and writing a verification report, the same data the
// `entire sample` / `entire verify` commands emit.

use entire::cli::{format_float, CSV_HEADER};
use entire::equations;
use entire::flux;
use entire::solution::construct;
use entire::verify::{verify_solution, Grid};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let sol = construct(flux::cubic(), flux::arsinh(), -0.75);
    let grid = Grid::new(-2.0, 2.0, -1.0, 1.0, 5, 3)?;

    println!("{CSV_HEADER}");
    for (x, y) in grid.nodes() {
        let row: Vec<String> = sol.eval(x, y)?.as_array().into_iter().map(format_float).collect();
        println!("{}", row.join(","));
    }

    let eq = equations::equation_by_name("theorem_form", sol.pair1(), sol.pair2(), 42)?;
    let report = verify_solution(&sol, &eq, &Grid::square(-5.0, 5.0, 51)?, true)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    assert!(report.passes(1e-5));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
