//! Inputs shared by the benchmarks.

use flatwitness::suite::{heavy_tail_sequence, random_relation, random_sampled, seeded_rng};
use flatwitness::{GridFunction, PointwiseRelation, SampledFunction};
use num_complex::Complex64;

pub const SEED: u64 = 42;

pub fn sequence(len: usize) -> Vec<Complex64> {
    heavy_tail_sequence(&mut seeded_rng(SEED), len)
}

pub fn relation(terms: usize, points: usize) -> PointwiseRelation {
    random_relation(&mut seeded_rng(SEED), terms, points)
}

pub fn bezout_pair(atoms: usize) -> (SampledFunction, SampledFunction) {
    let mut rng = seeded_rng(SEED);
    let f = random_sampled(&mut rng, atoms, 0.1);
    let g = f.with_values(random_sampled(&mut rng, atoms, 0.1).values);
    (f, g)
}

pub fn constant_one(n: usize) -> GridFunction {
    GridFunction::constant(n, Complex64::new(1.0, 0.0)).expect("power-of-two grid")
}

pub fn one_minus_z(n: usize) -> GridFunction {
    GridFunction::from_boundary(n, |z| 1.0 - z).expect("power-of-two grid")
}
