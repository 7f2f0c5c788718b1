use magnus_tls::floquet::{quasienergy_distance, PictureTag, Span};
use magnus_tls::models::rabi::{rabi_quasienergy, MagnusMethod, RabiPoint};
use magnus_tls::oracle;

fn main() {
    let delta = 1.2;
    for k in 0..=16 {
        let g = 4.0 * k as f64 / 16.0;
        let pt = RabiPoint::new(delta, g);
        let o = oracle::quasienergy_numeric(&pt.drive_spec(), 1e-12).unwrap().epsilon;
        let mut line = format!("g={g:5.2}");
        for ord in [3usize, 4, 5] {
            let ad = rabi_quasienergy(&pt, MagnusMethod::new(PictureTag::Adiabatic, ord, Span::HalfPeriod)).unwrap();
            line += &format!(" | ad{ord} {:.2e}", quasienergy_distance(ad.epsilon, o));
        }
        for ord in [3usize] {
            let r2 = rabi_quasienergy(&pt, MagnusMethod::new(PictureTag::RegionII, ord, Span::HalfPeriod)).unwrap();
            line += &format!(" | r2h{ord} {:.2e} (cert {})", quasienergy_distance(r2.epsilon, o), r2.certified.unwrap());
        }
        println!("{line}");
    }
}
