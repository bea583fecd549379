use std::f64::consts::PI;

fn main() {
    let mut worst_a = 0.0f64;
    let mut worst_b = 0.0f64;
    let mut worst_spec = 0.0f64;
    for k in 2..=10u32 {
        let target = 2.0 * PI / f64::from(k);
        for m in 1..=6u32 {
            for n in (m + 1)..=12u32 {
                let br = hm_period::bracket_endpoints(n, m, k).unwrap();
                let a = hm_period::a_limit_value(m, br.h_low);
                worst_a = worst_a.max(((a - target) / target).abs());
                let ph = hm_period::Params::new(n, m, br.h_high).unwrap();
                let b = hm_period::limit_at_c0(&ph).unwrap();
                worst_b = worst_b.max(((b - target) / target).abs());
                let nf = f64::from(n);
                let kf = f64::from(k);
                let special = match m {
                    1 => Some((kf * kf - 2.0) * (nf - 1.0).sqrt() / (nf * (kf * kf - 1.0).sqrt())),
                    2 => Some((kf * kf - 2.0) / nf),
                    4 => Some((kf.powi(4) - 4.0) / (nf * (nf - 4.0))),
                    _ => None,
                };
                if let Some(s) = special {
                    worst_spec = worst_spec.max(((br.h_high - s) / s.abs().max(1e-300)).abs());
                }
            }
        }
    }
    println!("worst A residual    = {worst_a:.3e}");
    println!("worst B residual    = {worst_b:.3e}");
    println!("worst specialization = {worst_spec:.3e}");
}
