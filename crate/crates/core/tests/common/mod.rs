use std::f64::consts::PI;

/// Composite Simpson rule for `int_0^len prod_k sin(n_k pi x / len) dx`.
pub fn sine_overlap(numbers: [u32; 4], len: f64) -> f64 {
    let panels = 8192;
    let h = len / panels as f64;
    let f = |x: f64| -> f64 { numbers.iter().map(|&n| (n as f64 * PI * x / len).sin()).product() };
    let mut sum = f(0.0) + f(len);
    for k in 1..panels {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(k as f64 * h);
    }
    sum * h / 3.0
}
