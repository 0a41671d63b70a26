// temporary: replicate minimize loop with diagnostics
use std::collections::VecDeque;
fn dot(a: &[f64], b: &[f64]) -> f64 { a.iter().zip(b).map(|(x, y)| x * y).sum() }
fn grad(f: &dyn Fn(&[f64]) -> f64, x: &[f64], h: f64) -> Vec<f64> {
    let mut g = vec![0.0; x.len()];
    let mut p = x.to_vec();
    for i in 0..x.len() {
        p[i] = x[i] + h; let hi = f(&p);
        p[i] = x[i] - h; let lo = f(&p);
        p[i] = x[i];
        g[i] = (hi - lo) / (2.0 * h);
    }
    g
}
fn lbfgs_dir(hist: &VecDeque<(Vec<f64>, Vec<f64>, f64)>, g: &[f64]) -> Vec<f64> {
    if hist.is_empty() { return g.iter().map(|x| -x).collect(); }
    let mut q = g.to_vec();
    let mut alphas = Vec::new();
    for (s, y, rho) in hist.iter().rev() {
        let a = rho * dot(s, &q);
        for (qi, yi) in q.iter_mut().zip(y) { *qi -= a * yi; }
        alphas.push(a);
    }
    let (sl, yl, _) = hist.back().unwrap();
    let scale = dot(sl, yl) / dot(yl, yl);
    for qi in q.iter_mut() { *qi *= scale; }
    for ((s, y, rho), a) in hist.iter().zip(alphas.into_iter().rev()) {
        let b = rho * dot(y, &q);
        for (qi, si) in q.iter_mut().zip(s) { *qi += (a - b) * si; }
    }
    q.iter_mut().for_each(|x| *x = -*x);
    q
}
fn main() {
    let f = |x: &[f64]| 100.0 * (x[1] - x[0] * x[0]).powi(2) + (1.0 - x[0]).powi(2);
    let mut x = vec![-1.2, 1.0];
    let mut fx = f(&x);
    let mut hist: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::new();
    let mut g = grad(&f, &x, 1e-6);
    for it in 0..20 {
        let mut d = lbfgs_dir(&hist, &g);
        if dot(&d, &g) >= 0.0 { hist.clear(); d = g.iter().map(|v| -v).collect(); }
        let mut alpha = 1.0f64;
        let mut acc = None;
        let mut tries = 0;
        for _ in 0..30 {
            tries += 1;
            let cand: Vec<f64> = x.iter().zip(&d).map(|(xi, di)| xi + alpha * di).collect();
            let fc = f(&cand);
            let slope: f64 = g.iter().zip(cand.iter().zip(&x)).map(|(gi, (ci, xi))| gi * (ci - xi)).sum();
            if fc <= fx + 1e-4 * slope.min(0.0) && fc < fx { acc = Some((cand, fc)); break; }
            alpha *= 0.5;
        }
        let (xn, fn_) = acc.unwrap();
        let gn = grad(&f, &xn, 1e-6);
        let s: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = gn.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        let ok = sy > 1e-10 * dot(&s, &s).sqrt() * dot(&y, &y).sqrt();
        println!("   sy={:.6e} |s|={:.3e} |y|={:.3e}", sy, dot(&s,&s).sqrt(), dot(&y,&y).sqrt());
        println!("it={it} f={fx:.6} alpha={alpha:.2e} tries={tries} |d|={:.3e} sy_ok={ok} hist={}", dot(&d,&d).sqrt(), hist.len());
        if ok { if hist.len() == 10 { hist.pop_front(); } hist.push_back((s, y, 1.0 / sy)); }
        x = xn; fx = fn_; g = gn;
    }
    println!("final x={x:?} f={fx}");
}
