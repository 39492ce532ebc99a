//! Scratch timing harness for the sampled pipeline hot path.

use std::time::Instant;

use niveau_core::construct::{choose_scales, params_with_scales};
use niveau_core::sets::NiveauSampler;
use niveau_core::{RandomStream, Result};
use num_rational::BigRational;

fn main() -> Result<()> {
    let eps = BigRational::new(45.into(), 100.into());
    let k = vec![1u64, 2u64];
    let chosen = choose_scales(&eps, &k, 2, 26)?;
    let scales: Vec<u32> = (1..=2).map(|l| chosen.spec_a_prefix(l).unwrap().scale()).collect();
    println!("scales: {scales:?}");
    let params = params_with_scales(&eps, &k, &scales)?;

    let spec_a = params.spec_a()?;
    println!("spec A = {}", spec_a.encode());

    let t0 = Instant::now();
    let sampler = NiveauSampler::new(&spec_a)?;
    println!("sampler build (A): {:?}", t0.elapsed());

    let mut rng = RandomStream::new(42).substream(1);

    // warm
    let _ = sampler.draw(&mut rng)?;

    let reps = 50u32;
    let t0 = Instant::now();
    for _ in 0..reps {
        let _ = sampler.draw(&mut rng)?;
    }
    println!("draw (A, scale 20): {:?}/draw", t0.elapsed() / reps);

    let g = sampler.draw(&mut rng)?;
    let h = sampler.draw(&mut rng)?;
    let t0 = Instant::now();
    for _ in 0..reps {
        let d = g.sub(&h)?;
        std::hint::black_box(&d);
    }
    println!("sub at scale 20: {:?}/op", t0.elapsed() / reps);

    let s_pred = params.witness_s()?;
    let d = g.sub(&h)?;
    let t0 = Instant::now();
    for _ in 0..reps {
        let v = s_pred.eval(&d)?;
        std::hint::black_box(v);
    }
    println!("S-membership at scale 20: {:?}/op", t0.elapsed() / reps);

    let pushed = params.spec_a_pushed_prefix(2)?;
    let t0 = Instant::now();
    let pushed_sampler = NiveauSampler::new(&pushed)?;
    println!("sampler build (pushed): {:?}", t0.elapsed());
    let t0 = Instant::now();
    for _ in 0..reps {
        let _ = pushed_sampler.draw(&mut rng)?;
    }
    println!("draw (pushed): {:?}/draw", t0.elapsed() / reps);

    let t0 = Instant::now();
    for _ in 0..reps {
        let v = pushed.contains(&d)?;
        std::hint::black_box(v);
    }
    println!("pushed.contains at scale 20: {:?}/op", t0.elapsed() / reps);

    let ball = params.ball(2)?;
    let t0 = Instant::now();
    for _ in 0..reps {
        let _ = ball.sample(&mut rng)?;
    }
    println!("ball(2).sample: {:?}/op", t0.elapsed() / reps);

    let prefix1 = params.spec_a_prefix(1)?;
    let t0 = Instant::now();
    let p1_sampler = NiveauSampler::new(&prefix1)?;
    println!("sampler build (prefix 1): {:?}", t0.elapsed());
    let t0 = Instant::now();
    for _ in 0..reps {
        let _ = p1_sampler.draw(&mut rng)?;
    }
    println!("draw (prefix 1, scale 5): {:?}/draw", t0.elapsed() / reps);


    // fixed-overhead probes
    let t0 = Instant::now();
    let _chosen2 = choose_scales(&eps, &k, 2, 26)?;
    println!("choose_scales: {:?}", t0.elapsed());

    let t0 = Instant::now();
    let c = spec_a.count();
    println!("spec_a.count(): {:?} ({} bits)", t0.elapsed(), c.bits());

    let t0 = Instant::now();
    let dens = spec_a.density();
    println!("spec_a.density(): {:?}", t0.elapsed());

    let t0 = Instant::now();
    let dec = niveau_core::construct::rational_to_decimal(&dens, 9);
    println!("rational_to_decimal: {:?} -> {}", t0.elapsed(), dec);

    let t0 = Instant::now();
    let s = dens.to_string();
    println!("density.to_string(): {:?} ({} chars)", t0.elapsed(), s.len());

    let t0 = Instant::now();
    let iv = spec_a.density_interval()?;
    println!("density_interval: {:?}", t0.elapsed());
    std::hint::black_box(&iv);

    Ok(())
}
