//! Exact constructors for the analytic states of the frustrated phase —
//! classical kinks, momentum kink superpositions, generalized W states, GHZ
//! and Néel states — plus the explicit Clifford circuit that maps the
//! generalized W states onto the kink superpositions.
//!
//! Kinks and W states are product / few-component states in the σˣ
//! eigenbasis; everything here is emitted as amplitudes over the σᶻ
//! computational basis.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spin::{global_parity_z, momentum, momentum_indices, StateVector};

/// Product state ⊗ⱼ∣±⟩ over the σˣ eigenbasis: bit j-1 of `minus_mask` set
/// means site j carries ∣−⟩. Amplitudes in the σᶻ basis are uniform up to
/// signs.
pub fn x_product_state(n_sites: usize, minus_mask: u64) -> Result<StateVector> {
    let dim = 1usize << n_sites;
    if minus_mask >> n_sites != 0 {
        return Err(Error::domain(format!(
            "minus mask {minus_mask:#x} exceeds {n_sites} sites"
        )));
    }
    let scale = (dim as f64).sqrt().recip();
    let amps = (0..dim)
        .map(|b| {
            let sign = if (b as u64 & minus_mask).count_ones() & 1 == 1 {
                -scale
            } else {
                scale
            };
            Complex64::new(sign, 0.0)
        })
        .collect();
    StateVector::new(n_sites, amps)
}

/// Which σˣ background the kink family is built on.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KinkFamily {
    /// ∣−⟩ background with even sites flipped to ∣+⟩.
    Minus,
    /// ∣+⟩ background with even sites flipped to ∣−⟩.
    Plus,
}

fn kink_minus_mask(n: usize, k: usize, family: KinkFamily) -> u64 {
    // position k = 1: alternating pattern with the defect pair at the
    // boundary seam; higher k translate it forward
    let full = (1u64 << n) - 1;
    let mut base: u64 = 0;
    for site in (1..=n).step_by(2) {
        base |= 1 << (site - 1);
    }
    let base = match family {
        KinkFamily::Minus => base,
        KinkFamily::Plus => !base & full,
    };
    let shift = (k - 1) % n;
    ((base << shift) | (base >> (n - shift))) & full
}

/// Classical kink state: the translated alternating σˣ pattern with exactly
/// one adjacent parallel pair.
pub fn kink_state(n_sites: usize, k: usize, family: KinkFamily) -> Result<StateVector> {
    if n_sites % 2 == 0 {
        return Err(Error::domain("kink states need an odd ring"));
    }
    if k == 0 || k > n_sites {
        return Err(Error::domain(format!(
            "kink position {k} out of range 1..={n_sites}"
        )));
    }
    x_product_state(n_sites, kink_minus_mask(n_sites, k, family))
}

/// Momentum superposition of all 2N kinks with quantized momentum 2πℓ/N;
/// an eigenstate of the lattice translation with eigenvalue exp(-i 2πℓ/N).
pub fn omega_state(n_sites: usize, ell: i64) -> Result<StateVector> {
    if n_sites % 2 == 0 {
        return Err(Error::domain("kink superpositions need an odd ring"));
    }
    check_momentum(n_sites, ell)?;
    let p = momentum(n_sites, ell);
    let dim = 1usize << n_sites;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let scale = (2.0 * n_sites as f64).sqrt().recip() * (dim as f64).sqrt().recip();
    for k in 1..=n_sites {
        let coeff = Complex64::from_polar(scale, p * k as f64);
        for family in [KinkFamily::Minus, KinkFamily::Plus] {
            let mask = kink_minus_mask(n_sites, k, family);
            for (b, amp) in amps.iter_mut().enumerate() {
                if (b as u64 & mask).count_ones() & 1 == 1 {
                    *amp -= coeff;
                } else {
                    *amp += coeff;
                }
            }
        }
    }
    StateVector::new(n_sites, amps)
}

/// Generalized W state: a single σˣ-basis flip delocalized with momentum
/// phase factors over an ∣−⟩ background.
pub fn w_state(n_sites: usize, ell: i64) -> Result<StateVector> {
    check_momentum(n_sites, ell)?;
    let p = momentum(n_sites, ell);
    let full = (1u64 << n_sites) - 1;
    let dim = 1usize << n_sites;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let scale = (n_sites as f64).sqrt().recip() * (dim as f64).sqrt().recip();
    for j in 1..=n_sites {
        let coeff = Complex64::from_polar(scale, p * j as f64);
        let mask = full & !(1u64 << (j - 1));
        for (b, amp) in amps.iter_mut().enumerate() {
            if (b as u64 & mask).count_ones() & 1 == 1 {
                *amp -= coeff;
            } else {
                *amp += coeff;
            }
        }
    }
    StateVector::new(n_sites, amps)
}

/// (∣↑…↑⟩ + ∣↓…↓⟩)/√2.
pub fn ghz_state(n_sites: usize) -> Result<StateVector> {
    if n_sites == 0 {
        return Err(Error::domain("GHZ needs at least one site"));
    }
    let dim = 1usize << n_sites;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    amps[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[dim - 1] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    StateVector::new(n_sites, amps)
}

/// One of the two alternating σˣ product states; the classical ground states
/// of the unfrustrated even ring.
pub fn neel_state_x(n_sites: usize, which: usize) -> Result<StateVector> {
    if which > 1 {
        return Err(Error::domain("Néel index must be 0 or 1"));
    }
    let full = (1u64 << n_sites) - 1;
    let mut mask: u64 = 0;
    for site in (1..=n_sites).step_by(2) {
        mask |= 1 << (site - 1);
    }
    if which == 1 {
        mask = !mask & full;
    }
    x_product_state(n_sites, mask)
}

fn check_momentum(n_sites: usize, ell: i64) -> Result<()> {
    if !momentum_indices(n_sites).contains(&ell) {
        return Err(Error::domain(format!(
            "momentum index {ell} outside the quantized range for N = {n_sites}"
        )));
    }
    Ok(())
}

/// One gate of a Clifford circuit. Sites are 1-based.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Gate {
    Hadamard { site: usize },
    PauliZ { site: usize },
    /// Flips the target site when the control site is ∣↓⟩.
    Cnot { control: usize, target: usize },
    GlobalParityZ,
}

/// An ordered gate list; gates apply in vector order (index 0 first).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordCircuit {
    pub n_sites: usize,
    pub gates: Vec<Gate>,
}

impl CliffordCircuit {
    pub fn new(n_sites: usize, gates: Vec<Gate>) -> Result<Self> {
        let circuit = CliffordCircuit { n_sites, gates };
        circuit.validate()?;
        Ok(circuit)
    }

    fn validate(&self) -> Result<()> {
        for gate in &self.gates {
            let ok = match *gate {
                Gate::Hadamard { site } | Gate::PauliZ { site } => {
                    site >= 1 && site <= self.n_sites
                }
                Gate::Cnot { control, target } => {
                    control >= 1
                        && control <= self.n_sites
                        && target >= 1
                        && target <= self.n_sites
                        && control != target
                }
                Gate::GlobalParityZ => true,
            };
            if !ok {
                return Err(Error::domain(format!(
                    "gate {gate:?} out of range for {} sites",
                    self.n_sites
                )));
            }
        }
        Ok(())
    }

    pub fn cnot_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g, Gate::Cnot { .. }))
            .count()
    }
}

/// The explicit Clifford map taking the generalized W state of momentum ℓ to
/// the kink superposition of the same momentum (up to a global phase), for an
/// odd ring.
///
/// Gate order is the application order: the global parity acts first, then a
/// descending nearest-neighbor CNOT ladder, Z and Hadamard on the last site,
/// Z on the odd sites, and finally a CNOT fan into the last site.
pub fn clifford_map_circuit(n_sites: usize) -> Result<CliffordCircuit> {
    if n_sites % 2 == 0 {
        return Err(Error::domain("the kink map is defined on odd rings"));
    }
    let n = n_sites;
    let mut gates = Vec::new();
    gates.push(Gate::GlobalParityZ);
    // nearest-neighbor ladder: the j-th gate flips site j conditioned on
    // site j+1, applied for j = 1 up to N-1; the fidelity onto the kink
    // superposition fixes this application order
    for j in 1..n {
        gates.push(Gate::Cnot {
            control: j + 1,
            target: j,
        });
    }
    gates.push(Gate::PauliZ { site: n });
    gates.push(Gate::Hadamard { site: n });
    for j in 1..=(n / 2) {
        gates.push(Gate::PauliZ { site: 2 * j - 1 });
    }
    // fan: flip site N conditioned on each earlier site
    for l in 1..n {
        gates.push(Gate::Cnot {
            control: l,
            target: n,
        });
    }
    CliffordCircuit::new(n, gates)
}

/// Apply a Clifford circuit to a state, gate by gate.
pub fn apply_circuit(circuit: &CliffordCircuit, state: &StateVector) -> Result<StateVector> {
    if circuit.n_sites != state.n_sites() {
        return Err(Error::contract(format!(
            "circuit on {} sites applied to a {}-site state",
            circuit.n_sites,
            state.n_sites()
        )));
    }
    let mut out = state.clone();
    for gate in &circuit.gates {
        apply_gate(*gate, &mut out);
    }
    Ok(out)
}

fn apply_gate(gate: Gate, state: &mut StateVector) {
    let dim = state.dim();
    match gate {
        Gate::Hadamard { site } => {
            let stride = 1usize << (site - 1);
            let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
            let amps = state.amps_mut();
            let mut base = 0;
            while base < dim {
                for low in base..base + stride {
                    let up = amps[low];
                    let dn = amps[low + stride];
                    amps[low] = (up + dn) * inv_sqrt2;
                    amps[low + stride] = (up - dn) * inv_sqrt2;
                }
                base += 2 * stride;
            }
        }
        Gate::PauliZ { site } => {
            let bit = 1usize << (site - 1);
            for (s, a) in state.amps_mut().iter_mut().enumerate() {
                if s & bit != 0 {
                    *a = -*a;
                }
            }
        }
        Gate::Cnot { control, target } => {
            let c_bit = 1usize << (control - 1);
            let t_bit = 1usize << (target - 1);
            let amps = state.amps_mut();
            for s in 0..dim {
                if s & c_bit != 0 && s & t_bit == 0 {
                    amps.swap(s, s | t_bit);
                }
            }
        }
        Gate::GlobalParityZ => {
            *state = global_parity_z(state);
        }
    }
}
