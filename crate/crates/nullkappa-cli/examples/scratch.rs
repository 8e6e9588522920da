use nullkappa_core::domains::{descriptors, ring_functions, DomainSpec};

fn main() {
    let spec = DomainSpec::ConvexPolygon {
        vertices: vec![[1.0, -0.5], [1.0, 0.5], [-1.0, 0.5], [-1.0, -0.5]],
    };
    let desc = descriptors(&spec).unwrap();
    let rings = ring_functions(&spec).unwrap();
    let r_plus = desc.diameter / 2.0;
    let n = 160;
    let mut vals = Vec::new();
    for k in 0..=n {
        let r = desc.r_minus + (r_plus - desc.r_minus) * k as f64 / n as f64;
        vals.push((r, rings.alpha(r).unwrap()));
    }
    for k in 1..n {
        let d2 = vals[k - 1].1 - 2.0 * vals[k].1 + vals[k + 1].1;
        if d2 > 1e-5 {
            println!(
                "k={k} r={:.6} alpha=({:.8},{:.8},{:.8}) d2={d2:.3e}",
                vals[k].0, vals[k - 1].1, vals[k].1, vals[k + 1].1
            );
        }
    }
}
