use trafficq::optim::{minimize, Bounds, OptimSettings};
fn main() {
    let mut f = |x: &[f64]| 100.0 * (x[1] - x[0] * x[0]).powi(2) + (1.0 - x[0]).powi(2);
    let r = minimize(&mut f, &[-1.2, 1.0], &Bounds::unbounded(2), &OptimSettings { max_iter: 500, ..Default::default() }).unwrap();
    println!("iters={} converged={} x={:?} f={}", r.iterations, r.converged, r.x, r.f);
    println!("trace len={}", r.trace.len());
    for (i, (x, f)) in r.trace.iter().enumerate().take(12) { println!("{i}: {x:?} f={f}"); }
}
