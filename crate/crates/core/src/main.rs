use sieve_lab::functionals::{compute_jrs, compute_jrs_pieces};
use sieve_lab::params::{Mode, SieveParams, SupportKind};
use sieve_lab::quad::QuadConfig;
use sieve_lab::rat::rat;
use sieve_lab::presets;
use std::time::Instant;

fn main() {
    let f = presets::headline5();
    let p = SieveParams::new(
        5, rat(1, 4), rat(3, 8), SupportKind::Extended,
        Default::default(), Mode::Standard,
    ).unwrap();
    // tighter run to confirm convergence of the adaptive total
    let tight = QuadConfig::with_tols(1e-10, 1e-9);
    let t0 = Instant::now();
    let v = compute_jrs(&f, &p, 4, 1, &tight).unwrap();
    println!("J4,1 tight = {:.9} +- {:.2e} [{:.1?}]", v.value, v.error, t0.elapsed());

    let published = [0.392, 1.538, 0.851, 0.608, 0.093, 0.410, 0.307, 0.073, 0.066, 0.017, 0.010];
    let t0 = Instant::now();
    let pieces = compute_jrs_pieces(&f, &p, 4, 1, 2).unwrap();
    println!("pieces [{:.1?}]:", t0.elapsed());
    let mut sum = 0.0;
    for ((label, raw), pubv) in pieces.iter().zip(published) {
        let scaled = raw / 2.0; // published R4 pieces carry the 1/(k-3)! factor
        sum += scaled;
        println!("  {label}: {scaled:.6}  published {pubv}  delta {:+.6}", scaled - pubv);
    }
    println!("piece sum = {sum:.6} (published sum 4.365)");

    let t0 = Instant::now();
    let p31 = compute_jrs_pieces(&f, &p, 3, 1, 3).unwrap();
    println!("R3 pieces [{:.1?}]:", t0.elapsed());
    for ((label, raw), pubv) in p31.iter().zip([4.968, 12.158, 4.227, 1.831]) {
        println!("  {label}: {raw:.6}  published {pubv}  delta {:+.6}", raw - pubv);
    }
    let p32 = compute_jrs_pieces(&f, &p, 3, 2, 3).unwrap();
    for (label, raw) in &p32 {
        println!("  {label}: {raw:.6}");
    }
    let p21 = compute_jrs_pieces(&f, &p, 2, 1, 3).unwrap();
    for ((label, raw), pubv) in p21.iter().zip([15.2749404974, 16.5050961382]) {
        println!("  {label}: {raw:.9}  published {pubv}  delta {:+.2e}", raw - pubv);
    }
}
