//! Oracles shared by the integration tests. Nothing here calls into the
//! inversion or quadrature code it is used to check.
#![allow(dead_code)]

/// Composite Simpson on `n` panels (`n` even).
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    assert!(n.is_multiple_of(2));
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n)
        .map(|i| if i % 2 == 1 { 4.0 } else { 2.0 } * f(a + h * i as f64))
        .sum();
    h / 3.0 * (f(a) + inner + f(b))
}

/// Simpson with one Richardson step between `n` and `2n` panels.
pub fn simpson_richardson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let coarse = simpson(&f, a, b, n);
    let fine = simpson(&f, a, b, 2 * n);
    fine + (fine - coarse) / 15.0
}

/// `∫₀ᵀ t·f(t) dt`, which equals `∫₀^{F(T)} F⁻¹(s) ds` by substitution.
pub fn substitution_integral<F: Fn(f64) -> f64>(coefficient: F, upper: f64) -> f64 {
    simpson_richardson(|t| t * coefficient(t), 0.0, upper, 2000)
}

/// `2n + 1` points: 0 and `±` log-spaced magnitudes in `[lo, hi]`.
pub fn symmetric_log_points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.log10(), hi.log10());
    let mut pts = vec![0.0];
    for i in 0..n {
        let x = 10f64.powf(a + (b - a) * i as f64 / (n - 1) as f64);
        pts.push(x);
        pts.push(-x);
    }
    pts
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

pub fn square_points(lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
    let axis = linspace(lo, hi, n);
    axis.iter().flat_map(|&y| axis.iter().map(move |&x| (x, y))).collect()
}
