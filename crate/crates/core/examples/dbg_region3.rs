use magnus_tls::floquet::{PictureTag, Span, quasienergy_distance};
use magnus_tls::models::rabi::{rabi_quasienergy, rabi_exact_heun, MagnusMethod, RabiPoint};
use magnus_tls::oracle;
use magnus_tls::pictures::{build_adiabatic, DriveSpec, Shape};
use magnus_tls::magnus::recursive_magnus;

fn main() {
    for dg in [2.0, 5.0] {
        let pt = RabiPoint::new(dg, dg);
        let o = oracle::quasienergy_numeric(&pt.drive_spec(), 1e-12).unwrap();
        let h = rabi_exact_heun(&pt).unwrap();
        for order in [0usize, 1, 2] {
            let r = rabi_quasienergy(&pt, MagnusMethod::new(PictureTag::Adiabatic, order, Span::HalfPeriod)).unwrap();
            println!("dg={dg} order={order}: eps={:+.9} oracle={:+.9} heun={:+.9} dist={:.2e}",
                r.epsilon, o.epsilon, h.epsilon, quasienergy_distance(r.epsilon, o.epsilon));
        }
        // inspect the magnus coefficients
        let spec = DriveSpec::new(dg, dg, Shape::Cos);
        let (ctx, frame) = build_adiabatic(&spec, 0.0, (0.0, std::f64::consts::PI)).unwrap();
        let mc = recursive_magnus(&ctx.drive, 2, ctx.drive.suggested_intervals, 1e-9).unwrap();
        println!("   phi(pi)={:.9} A1={:.6} C2={:.6} suggested={}", (frame.phi)(std::f64::consts::PI), mc.a[0], mc.c[1], ctx.drive.suggested_intervals);
    }
}
