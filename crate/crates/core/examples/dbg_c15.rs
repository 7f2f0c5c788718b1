use magnus_tls::floquet::{quasienergy_distance, PictureTag, Span};
use magnus_tls::models::rabi::{rabi_quasienergy, MagnusMethod, RabiPoint};
use magnus_tls::oracle;

fn main() {
    let delta = 1.2;
    println!("g      oracle     |  r1h3 err  (cert) |  ad2h err  |  r2full1/2/3 err (cert)");
    for k in 0..=16 {
        let g = 4.0 * k as f64 / 16.0;
        let pt = RabiPoint::new(delta, g);
        let o = oracle::quasienergy_numeric(&pt.drive_spec(), 1e-12).unwrap().epsilon;
        let r1 = rabi_quasienergy(&pt, MagnusMethod::new(PictureTag::RegionI, 3, Span::HalfPeriod)).unwrap();
        let ad = rabi_quasienergy(&pt, MagnusMethod::new(PictureTag::Adiabatic, 2, Span::HalfPeriod)).unwrap();
        let mut r2e = vec![];
        for ord in 1..=3 {
            let r2 = rabi_quasienergy(&pt, MagnusMethod::new(PictureTag::RegionII, ord, Span::FullPeriod)).unwrap();
            r2e.push((quasienergy_distance(r2.epsilon, o), r2.certified.unwrap()));
        }
        println!(
            "g={g:5.2} o={o:+.6} | r1h3 {:.2e} ({}) | ad2h {:.2e} | r2f {:.2e}/{:.2e}/{:.2e} cert={}",
            quasienergy_distance(r1.epsilon, o),
            r1.certified.unwrap(),
            quasienergy_distance(ad.epsilon, o),
            r2e[0].0, r2e[1].0, r2e[2].0, r2e[0].1
        );
    }
}
