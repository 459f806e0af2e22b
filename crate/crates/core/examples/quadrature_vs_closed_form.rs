// H(x) = ∫₀ˣ F⁻¹(s) ds by adaptive Gauss–Legendre, compared with the
// closed forms each catalog pair carries.

use entire::antiderivative::{closed_form_h, integrate_inverse, QuadratureConfig};
use entire::flux::builtin_catalog;
use entire::inversion::InversionConfig;

pub fn run_example() -> entire::Result<()> {
    let (inv, quad) = (InversionConfig::default(), QuadratureConfig::default());
    for pair in builtin_catalog() {
        let closed = pair.analytic_inverse_antiderivative().expect("catalog pairs have closed forms");
        let xs: &[f64] = if pair.is_bijective() { &[-5.0, -0.5, 0.25, 2.0, 20.0] } else { &[-1.5, -0.5, 0.25, 1.0, 1.55] };
        let mut worst = 0.0_f64;
        for &x in xs {
            let q = integrate_inverse(&pair, x, &inv, &quad)?;
            worst = worst.max((q - closed(x)).abs() / closed(x).abs().max(1.0));
        }
        println!("{:<9} worst relative gap {worst:.2e}", pair.name());
    }

    // the Cardano-based closed form differs from H by the constant h(0) = -1/2
    let cubic = entire::flux::cubic();
    for x in [0.0, 4.0 / 3.0, 12.0] {
        let q = integrate_inverse(&cubic, x, &inv, &quad)?;
        println!("h({x:.4}) = {:.15}   H + h(0) = {:.15}", closed_form_h(x), q - 0.5);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> entire::Result<()> {
    run_example()
}
