use tfchain_core::entanglement::{dee_oracle, subsystem_entropy, EntropyKind};
use tfchain_core::model::{Boundary, Hamiltonian, ModelSpec};
use tfchain_core::solver::solve_lowest;
use tfchain_core::spin::StateVector;

fn dee(state: &StateVector, a: &[usize], b1: &[usize], b2: &[usize]) -> f64 {
    let kind = EntropyKind::Renyi(2.0);
    let b: Vec<usize> = b1.iter().chain(b2.iter()).cloned().collect();
    let u: Vec<usize> = a.iter().chain(b2.iter()).cloned().collect();
    subsystem_entropy(state, a, kind).unwrap() + subsystem_entropy(state, &b, kind).unwrap()
        - subsystem_entropy(state, &u, kind).unwrap()
        - subsystem_entropy(state, b1, kind).unwrap()
}

fn main() {
    let n = 17usize;
    let (m, l, r) = (8usize, 2usize, 4usize);
    let oracle = dee_oracle(0.5, 0.125).unwrap();
    let a: Vec<usize> = (1..=m).collect();
    let b1: Vec<usize> = (r + 1..=r + l).collect();
    let placements: Vec<(&str, Vec<usize>)> = vec![
        ("centered", { let s = m + (n - m - l) / 2; (s + 1..=s + l).collect() }),
        ("floor",    { let s = r + n / 2;           (s + 1..=s + l).collect() }),
        ("ceil",     { let s = r + n / 2 + 1;       (s + 1..=s + l).collect() }),
    ];
    for h in [0.1, 0.25, 0.5] {
        let spec = ModelSpec::ising(n, 1.0, h, Boundary::Periodic);
        let ham = Hamiltonian::build(spec).unwrap();
        let bundle = solve_lowest(&ham, 1).unwrap();
        let gs = &bundle.states[0];
        print!("h={h:4.2}: ");
        for (name, b2) in &placements {
            let d = dee(gs, &a, &b1, b2);
            print!(" {name}={:.4}(norm {:.3})", d, d / oracle);
        }
        println!();
    }
}
