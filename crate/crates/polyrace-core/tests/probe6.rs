use polyrace_core::asymptotics::pi_fk_asymptotic;
use polyrace_core::characters::{make_context, ModulusContext};
use polyrace_core::counting::{CountEngine, CountFunction};
use polyrace_core::ffcore::make_field;
use polyrace_core::lfunc::{
    compute_quadratic_l_polynomials, extract_zeros, resolve_field_representation,
};
use polyrace_core::parse::{parse_poly, parse_poly_pattern};

fn quartic_f9_ctx() -> ModulusContext {
    let pattern = parse_poly_pattern("t^4+2t^3+2t+a^7").unwrap();
    let (field, _gen, m) = resolve_field_representation(3, 2, &pattern, &[1, -6, 9]).unwrap();
    make_context(&field, &m).unwrap()
}

#[test]
fn probe() {
    let f5 = make_field(5, 1, None).unwrap();
    let f9 = make_field(3, 2, None).unwrap();
    let ctxs = [
        make_context(&f5, &parse_poly("t^5+3t^4+4t^3+2t+2", &f5).unwrap()).unwrap(),
        make_context(&f5, &parse_poly("t^6+t^5+3t^4+3t^3+3t^2+2t+3", &f5).unwrap()).unwrap(),
        quartic_f9_ctx(),
        make_context(&f9, &parse_poly("t^3-t", &f9).unwrap()).unwrap(),
    ];
    for ctx in &ctxs {
        let chars = ctx.quadratic_characters().unwrap();
        let ls = compute_quadratic_l_polynomials(ctx).unwrap();
        let mut engine = CountEngine::new(ctx);
        let q = ctx.field.q;
        for (ci, (chi, l)) in chars.iter().zip(&ls).enumerate() {
            let zd = extract_zeros(l, q).unwrap();
            for f in [CountFunction::BigOmega, CountFunction::SmallOmega] {
                for k in 1..=3u32 {
                    let mut pts: Vec<(f64, f64)> = Vec::new();
                    for n in 4..=24usize {
                        let exact = engine.pi_fk(chi, f, k, n).unwrap().to_complex();
                        let main = pi_fk_asymptotic(&zd, q, true, n as u64, k, f);
                        let r = (exact - main).norm()
                            / ((q as f64).powf(n as f64 / 2.0)
                                * (n as f64).ln().powi(k as i32 - 2)
                                / n as f64);
                        if r > 1e-9 {
                            pts.push(((n as f64).ln(), r.ln()));
                        }
                    }
                    if pts.len() < 3 {
                        continue;
                    }
                    let mm = pts.len() as f64;
                    let sx: f64 = pts.iter().map(|p| p.0).sum();
                    let sy: f64 = pts.iter().map(|p| p.1).sum();
                    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
                    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
                    let slope = (mm * sxy - sx * sy) / (mm * sxx - sx * sx);
                    if slope > 0.1 {
                        println!(
                            "SLOPE deg={} q={} chi#{ci} {} k={k}: slope={slope:.3} pts={}",
                            ctx.modulus.deg(),
                            q,
                            f.label(),
                            pts.len()
                        );
                    }
                }
            }
        }
        println!("done q={q} deg={}", ctx.modulus.deg());
    }
}
