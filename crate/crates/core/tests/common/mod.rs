#![allow(dead_code)]

use gabor_core::ratlin::{rat, Lattice, Rat, RatMatrix};
use gabor_core::signal::SampledSignal;
use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;

/// Random nonsingular rational matrix with entries p/q, |p| ≤ pmax, 1 ≤ q ≤ qmax.
pub fn random_matrix<R: Rng>(rng: &mut R, d: usize, pmax: i64, qmax: i64) -> RatMatrix {
    loop {
        let rows: Vec<Vec<Rat>> = (0..d)
            .map(|_| (0..d).map(|_| rat(rng.gen_range(-pmax..=pmax), rng.gen_range(1..=qmax))).collect())
            .collect();
        let m = RatMatrix::from_rows(rows).unwrap();
        if !m.det().is_zero() {
            return m;
        }
    }
}

pub fn random_lattice<R: Rng>(rng: &mut R, d: usize, pmax: i64, qmax: i64) -> Lattice {
    Lattice::new(&random_matrix(rng, d, pmax, qmax)).unwrap()
}

/// Random complex samples on a random grid box inside [lo, hi)ᵈ (grid units).
pub fn random_signal<R: Rng>(rng: &mut R, d: usize, n: u64, lo: i64, hi: i64) -> SampledSignal {
    let origin: Vec<i64> = (0..d).map(|_| rng.gen_range(lo..hi - 1)).collect();
    let shape: Vec<usize> = origin.iter().map(|&o| rng.gen_range(1..=(hi - o) as usize)).collect();
    let len: usize = shape.iter().product();
    let values = (0..len).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    SampledSignal::new(n, origin, shape, values).unwrap()
}

pub fn ex1() -> RatMatrix {
    RatMatrix::from_rows(vec![vec![rat(2, 3)]]).unwrap()
}

pub fn ex2() -> RatMatrix {
    RatMatrix::from_rows(vec![vec![rat(2, 3), rat(0, 1)], vec![rat(0, 1), rat(3, 2)]]).unwrap()
}

pub fn ex3() -> RatMatrix {
    RatMatrix::from_rows(vec![
        vec![rat(1, 1), rat(0, 1), rat(0, 1)],
        vec![rat(-1, 5), rat(1, 5), rat(0, 1)],
        vec![rat(1, 1), rat(-1, 1), rat(5, 1)],
    ])
    .unwrap()
}
