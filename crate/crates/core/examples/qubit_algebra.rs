//! Pauli algebra, spin eigenstates, Bloch vectors and partial traces.

use num_complex::Complex64;
use spinclone::linalg::{
    bloch_from_density, partial_trace, pauli, pauli_dot, spin_eigenstates, tensor, QubitOperator, Subsystem,
    UnitVector3,
};

fn main() {
    let [x, y, z] = pauli();
    let iz = *z.matrix() * Complex64::i();
    println!("|sigma_x sigma_y - i sigma_z| = {:.1e}", (*(x * y).matrix() - iz).norm());
    println!("|sigma_x^2 - 1| = {:.1e}", (x * x).distance(&QubitOperator::identity()));

    let n = UnitVector3::from_angles(1.0, 0.4);
    let (plus, minus) = spin_eigenstates(&n);
    let s = pauli_dot(&n);
    println!("n = {n}");
    println!("<n+|n.sigma|n+> = {:+.15}", s.expectation(&plus).re);
    println!("<n-|n.sigma|n-> = {:+.15}", s.expectation(&minus).re);
    println!("Bloch vector of |n+> = {:?}", plus.bloch().as_slice());

    // A product state traces back to its factors.
    let pair = tensor(&plus, &minus).density();
    let first = partial_trace(&pair, Subsystem::First).unwrap();
    let second = partial_trace(&pair, Subsystem::Second).unwrap();
    println!("Tr_2 |n+ n-><n+ n-| has Bloch vector {:?}", bloch_from_density(&first).as_slice());
    println!("Tr_1 |n+ n-><n+ n-| has Bloch vector {:?}", bloch_from_density(&second).as_slice());
}
