//! Programmatic circuit generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, CircuitError};

/// Textbook QFT: for each qubit `i`, a Hadamard on `i` followed by a
/// controlled phase rotation from every later qubit `j` onto `i`.
///
/// Produces `n + n(n-1)/2` gates; every unordered qubit pair interacts once.
pub fn gen_qft(n: usize) -> Result<Circuit, CircuitError> {
    if n < 1 {
        return Err(CircuitError::GeneratorSize(n));
    }
    let mut c = Circuit::new(format!("qft{n}"), n)?;
    for i in 0..n {
        c.push_single("h", i);
        for j in i + 1..n {
            c.push_two(format!("cr{}", j - i + 1), j, i);
        }
    }
    Ok(c)
}

/// Uniform random circuit: each gate is two-qubit with probability 3/4
/// (when `width >= 2`), otherwise a single-qubit `h`/`x`.
pub fn random_circuit(width: usize, gates: usize, seed: u64) -> Result<Circuit, CircuitError> {
    if width < 1 {
        return Err(CircuitError::GeneratorSize(width));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Circuit::new(format!("random{width}x{gates}s{seed}"), width)?;
    for _ in 0..gates {
        if width >= 2 && rng.gen_bool(0.75) {
            let a = rng.gen_range(0..width);
            let mut b = rng.gen_range(0..width - 1);
            if b >= a {
                b += 1;
            }
            c.push_two("cnot", a, b);
        } else {
            let label = if rng.gen_bool(0.5) { "h" } else { "x" };
            c.push_single(label, rng.gen_range(0..width));
        }
    }
    Ok(c)
}

/// Builds a named generator at the given size (`qft`, `random`).
pub fn generate(name: &str, size: usize) -> Result<Circuit, CircuitError> {
    match name {
        "qft" => gen_qft(size),
        "random" => random_circuit(size, 4 * size, size as u64),
        other => Err(CircuitError::UnknownGenerator(other.to_string())),
    }
}
