//! Reads an algebra from the text format, validates it and runs a short flow.
//!
//! Usage: `cargo run --example algebra_file -- path/to/algebra.alg`

use coadjoint::algebra::{read_algebra_file, write_algebra, DualVector};
use coadjoint::lie_poisson::{flow_exact, killing_casimir, HamiltonianSpec};

fn main() -> coadjoint::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/algebras/sl2r_broken.alg").to_string());
    let alg = read_algebra_file(&path)?;
    let rep = alg.validate();
    println!("{rep}");
    if !rep.passed {
        println!("not a Lie algebra; no flow computed");
        return Ok(());
    }
    print!("{}", write_algebra(&alg));
    let n = alg.dim();
    let h = HamiltonianSpec::new((0..n).map(|i| 1.0 / (i + 1) as f64).collect());
    let z0 = DualVector::new(vec![1.0; n]);
    let z = flow_exact(&alg, &h, &z0, 1.0)?;
    println!("zeta(1) = {:?}", z.coeffs());
    match killing_casimir(&alg) {
        Some(c) => println!("Killing Casimir: {:.6} -> {:.6}", c.value(z0.coeffs()), c.value(z.coeffs())),
        None => println!("Killing form degenerate; no quadratic Casimir from it"),
    }
    Ok(())
}
