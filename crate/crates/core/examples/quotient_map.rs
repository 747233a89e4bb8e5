//! The isomorphism Z^4 / L_k -> Z_n: identities sending e2, e3, e4 to
//! multiples of e1, the generator set, and a few projections.
//!
//! `cargo run --example quotient_map -- 5`

use circulant8::lattice::{build_system, Vec4};
use circulant8::quotient::{combo_identities, generator_set, project, verify_cyclic};

fn main() -> Result<(), circulant8::Error> {
    let k = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let sys = build_system(k)?;
    let gens = generator_set(k)?;
    println!("n={} gens={}", gens.n, gens.joined());

    let basis = sys.basis();
    for id in combo_identities(&sys) {
        println!("{:?} . (v1..v4) = {}  holds={}  ({})", id.coefficients, id.expected, id.holds(&basis), id.label());
    }
    let cyc = verify_cyclic(&sys);
    println!("cyclic={} order={}", cyc.is_cyclic, cyc.order);

    for x in [Vec4::unit(1), Vec4::unit(2), Vec4::new(1, 1, 0, 0), sys.v(1), sys.v(5) - sys.v(3)] {
        println!("project{x} = {}", project(x, &sys, &gens));
    }
    Ok(())
}
