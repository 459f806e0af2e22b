// Any two full-range fluxes and any c give a solution of
// f₁(p)uxx + 2B uxy + f₂(q)uyy = 0, for every admissible B — here a seeded,
// oscillating B bounded by √(f₁f₂).

use entire::equations::{corollary_bound, corollary_form, random_b_provider, theorem_bound, theorem_form};
use entire::flux;
use entire::solution::construct;
use entire::verify::{verify_solution, Grid};

pub fn run_example() -> entire::Result<()> {
    let grid = Grid::square(-4.0, 4.0, 81)?;
    let pairs = [flux::identity(), flux::cubic(), flux::arsinh()];
    for p1 in &pairs {
        for p2 in &pairs {
            for c in [-1.5, 0.5, 2.0] {
                let sol = construct(p1.clone(), p2.clone(), c);
                let mut worst = (0.0_f64, f64::INFINITY);
                for seed in 0..3 {
                    let eq = theorem_form(p1, p2, random_b_provider(seed, theorem_bound(p1, p2)));
                    let r = verify_solution(&sol, &eq, &grid, false)?;
                    worst.0 = worst.0.max(r.max_abs_residual);
                    worst.1 = worst.1.min(r.min_ellipticity_margin);
                }
                let dual = corollary_form(p1, p2, random_b_provider(7, corollary_bound(p1, p2)));
                let d = verify_solution(&sol, &dual, &grid, false)?;
                println!(
                    "{:<9} {:<9} c={c:>4}  residual {:.1e}  min margin {:.2e}  dual residual {:.1e}",
                    p1.name(),
                    p2.name(),
                    worst.0,
                    worst.1,
                    d.max_abs_residual
                );
                assert!(worst.0 < 1e-10 && worst.1 > 0.0);
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> entire::Result<()> {
    run_example()
}
