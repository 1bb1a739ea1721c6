//! Uniformly random instances.
//!
//! Every entry of both matrices — diagonal included — is drawn
//! independently from the integers `{0, ..., max_value}`. These
//! instances carry no structure at all and serve as the baseline the
//! structured generators are contrasted against.

use ndarray::Array2;
use rand::Rng;

use qap_core::Instance;

use crate::error::{GenError, MAX_GENERATED_SIZE};
use crate::rng::{derive_rng, Stream};

/// Generates an instance whose entries are i.i.d. uniform integers in
/// `{0, ..., max_value}`.
///
/// The distance matrix consumes the distance stream of `seed` and the
/// flow matrix the flow stream, each filled row by row. With
/// `symmetric` set, only the upper triangle (diagonal included) is
/// drawn and mirrored below.
pub fn gen_uniform_random(
    n: usize,
    max_value: u32,
    symmetric: bool,
    seed: u64,
) -> Result<Instance, GenError> {
    if n < 2 {
        return Err(GenError::Config {
            reason: format!("uniform generator needs n >= 2, got {n}"),
        });
    }
    if n > MAX_GENERATED_SIZE {
        return Err(GenError::TooLarge { n, max: MAX_GENERATED_SIZE });
    }
    let a = random_matrix(n, max_value, symmetric, &mut derive_rng(seed, Stream::Distance));
    let b = random_matrix(n, max_value, symmetric, &mut derive_rng(seed, Stream::Flow));
    Ok(Instance::new("", a, b)?)
}

fn random_matrix(n: usize, max_value: u32, symmetric: bool, rng: &mut impl Rng) -> Array2<f64> {
    let mut m = Array2::zeros((n, n));
    for i in 0..n {
        let start = if symmetric { i } else { 0 };
        for j in start..n {
            let value = rng.gen_range(0..=max_value) as f64;
            m[[i, j]] = value;
            if symmetric {
                m[[j, i]] = value;
            }
        }
    }
    m
}
