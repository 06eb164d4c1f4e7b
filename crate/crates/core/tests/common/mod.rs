#![allow(dead_code)]

use llspin::geometry::{Chart, Domain};
use llspin::spinor::{SpinorField, QUADRATIC_TERMS};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EXAMPLE: [&str; 4] = ["-u1", "u2-u3", "-u2-u3", "-u1"];
pub const CONE: [&str; 4] = ["u1", "u2", "u3", "sqrt(u1^2+u2^2+u3^2)"];
/// Cone over a circle times a line: lightlike, neither umbilical nor minimal.
pub const CYLINDER: [&str; 4] = ["u1", "u2", "u3", "sqrt(u1^2+u2^2)"];

pub fn chart(coords: [&str; 4], grid: usize) -> Chart {
    let domain = Domain { min: [1.0, -0.5, -0.5], max: [2.0, 0.5, 0.5], grid: [grid; 3] };
    Chart::new(coords, ["u1", "u2", "u3"], domain).unwrap()
}

pub fn example(grid: usize) -> Chart {
    let domain = Domain { min: [-1.0; 3], max: [1.0; 3], grid: [grid; 3] };
    Chart::new(EXAMPLE, ["u1", "u2", "u3"], domain).unwrap()
}

pub fn params() -> [String; 3] {
    ["u1", "u2", "u3"].map(String::from)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_field(rng: &mut impl Rng) -> SpinorField {
    let mut draw = || -> [[f64; QUADRATIC_TERMS]; 4] {
        std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-1.0..=1.0)))
    };
    let re = draw();
    let im = draw();
    SpinorField::quadratic(&re, &im, &params())
}

pub fn random_point(chart: &Chart, rng: &mut impl Rng) -> [f64; 3] {
    let d = chart.domain();
    std::array::from_fn(|i| rng.gen_range(d.min[i]..=d.max[i]))
}

pub fn random_direction(rng: &mut impl Rng) -> [f64; 3] {
    std::array::from_fn(|_| rng.gen_range(-1.0..=1.0))
}
