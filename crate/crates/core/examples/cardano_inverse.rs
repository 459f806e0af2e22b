// Inverting t + t³/3 = x: the stabilized Cardano form against the textbook
// one, and against safeguarded Newton.

use entire::flux;
use entire::inversion::{cardano_inverse, cardano_inverse_naive, invert_numeric, InversionConfig};

pub fn run_example() -> entire::Result<()> {
    let cubic = flux::cubic();
    let cfg = InversionConfig::default();
    println!("{:>10} {:>24} {:>12} {:>12} {:>12}", "x", "t", "stable err", "naive err", "newton diff");
    for x in [1e-8, 1e-3, 0.5, 4.0 / 3.0, 10.0, 1e3, 1e5, 1e6, 1e8] {
        let t = cardano_inverse(x);
        let naive = cardano_inverse_naive(x);
        let newton = invert_numeric(&cubic, x, &cfg)?;
        let rel = |t: f64| (cubic.primitive(t) - x).abs() / x;
        println!(
            "{x:>10.0e} {t:>24.17e} {:>12.2e} {:>12.2e} {:>12.2e}",
            rel(t),
            rel(naive),
            (t - newton).abs() / t
        );
    }
    assert_eq!(cardano_inverse(4.0 / 3.0), 1.0);
    Ok(())
}

#[allow(dead_code)]
fn main() -> entire::Result<()> {
    run_example()
}
