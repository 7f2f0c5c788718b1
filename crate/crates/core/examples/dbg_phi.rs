use magnus_tls::quad::{self, PanelGrid};
use magnus_tls::Complex64;
use std::f64::consts::PI;

fn main() {
    let e = |t: f64| 0.5 * (4.0f64 + 4.0 * t.cos() * t.cos()).sqrt();
    let adaptive = quad::integrate(&e, 0.0, PI, 1e-12).unwrap();
    for n in [64usize, 256, 1024, 6436] {
        let g = PanelGrid::uniform(0.0, PI, n);
        let vals: Vec<Complex64> = g.nodes().iter().map(|&t| Complex64::new(e(t), 0.0)).collect();
        let tot = g.total(&vals).re;
        println!("n={n:6}: panel={tot:.12} adaptive={adaptive:.12} diff={:.3e}", (tot - adaptive).abs());
    }
    let ell = 2.0f64.sqrt() * magnus_tls::specfun::incomplete_elliptic_e(PI, 0.5).unwrap();
    println!("elliptic ref = {ell:.12}");
}
