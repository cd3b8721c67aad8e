//! Bit-level Hilbert-space foundation: basis indexing, state vectors, Pauli
//! strings, and the per-site / global symmetry operators built on them.
//!
//! Conventions, used everywhere in this crate:
//! - site `j` (1-based) lives in bit `j - 1` of the basis index;
//! - bit value 0 is the σᶻ eigenvalue +1 state ∣↑⟩, bit value 1 is ∣↓⟩;
//! - a Pauli string is the Hermitian operator i^(∣x∧z∣) · X(x) · Z(z), so the
//!   site factor with both mask bits set is exactly σʸ.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for norm preservation under single unitary operations.
pub const UNITARY_TOL: f64 = 1e-12;
/// Norm deviation above which a state is rejected as unnormalized.
pub const NORM_CONTRACT_TOL: f64 = 1e-9;

/// Complex amplitudes over the 2^N computational (σᶻ) basis of an N-qubit chain.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_sites: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Wrap an amplitude vector; the length must be exactly 2^n_sites.
    pub fn new(n_sites: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n_sites == 0 {
            return Err(Error::domain("state needs at least one site"));
        }
        if n_sites > 63 {
            return Err(Error::Resource(format!(
                "{n_sites} sites exceed the 63-bit basis index limit"
            )));
        }
        if amps.len() != 1 << n_sites {
            return Err(Error::contract(format!(
                "amplitude vector has length {}, expected 2^{} = {}",
                amps.len(),
                n_sites,
                1usize << n_sites
            )));
        }
        Ok(StateVector { n_sites, amps })
    }

    /// The computational basis state with the given index.
    pub fn basis_state(n_sites: usize, index: usize) -> Result<Self> {
        let dim = 1usize << n_sites;
        if index >= dim {
            return Err(Error::domain(format!(
                "basis index {index} out of range for {n_sites} sites"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        StateVector::new(n_sites, amps)
    }

    /// ∣↑…↑⟩, the all-zeros basis state.
    pub fn all_up(n_sites: usize) -> Result<Self> {
        StateVector::basis_state(n_sites, 0)
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amps_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn amp(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn into_amps(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Rescale to unit norm. Errors on the zero vector.
    pub fn normalize(&mut self) -> Result<()> {
        let n = self.norm();
        if n < 1e-300 {
            return Err(Error::domain("cannot normalize the zero vector"));
        }
        let inv = 1.0 / n;
        for a in &mut self.amps {
            *a *= inv;
        }
        Ok(())
    }

    /// ⟨self∣other⟩.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub(crate) fn check_normalized(&self) -> Result<()> {
        let dev = (self.norm() - 1.0).abs();
        if dev > NORM_CONTRACT_TOL {
            return Err(Error::contract(format!(
                "state norm deviates from 1 by {dev:.3e}"
            )));
        }
        Ok(())
    }
}

/// An N-site Hermitian Pauli operator encoded as an (x-mask, z-mask) bit pair.
///
/// The represented operator is i^(∣x∧z∣) X(x) Z(z): squares to the identity
/// and has real expectation values on every state.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    pub x_mask: u64,
    pub z_mask: u64,
}

impl PauliString {
    pub fn new(x_mask: u64, z_mask: u64) -> Self {
        PauliString { x_mask, z_mask }
    }

    pub fn identity() -> Self {
        PauliString { x_mask: 0, z_mask: 0 }
    }

    /// Number of sites where the factor is σʸ (both mask bits set).
    pub fn y_weight(&self) -> u32 {
        (self.x_mask & self.z_mask).count_ones()
    }

    fn check_fits(&self, n_sites: usize) -> Result<()> {
        let allowed = if n_sites >= 64 { u64::MAX } else { (1u64 << n_sites) - 1 };
        if self.x_mask & !allowed != 0 || self.z_mask & !allowed != 0 {
            return Err(Error::domain(format!(
                "Pauli masks (x={:#x}, z={:#x}) exceed {n_sites} sites",
                self.x_mask, self.z_mask
            )));
        }
        Ok(())
    }
}

/// i^k for k taken mod 4.
pub(crate) fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Apply a Hermitian Pauli string: returns P∣ψ⟩.
pub fn apply_pauli(state: &StateVector, p: &PauliString) -> Result<StateVector> {
    p.check_fits(state.n_sites())?;
    let phase = i_pow(p.y_weight());
    let dim = state.dim();
    let x = p.x_mask as usize;
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    for s in 0..dim {
        let src = s ^ x;
        let sign = if ((src as u64 & p.z_mask).count_ones() & 1) == 1 {
            -1.0
        } else {
            1.0
        };
        out[s] = phase * sign * state.amp(src);
    }
    StateVector::new(state.n_sites(), out)
}

/// Real expectation value ⟨ψ∣P∣ψ⟩ of a Hermitian Pauli string.
///
/// The state must be normalized; any imaginary residue beyond rounding noise
/// trips an internal assertion before being discarded.
pub fn expect_pauli(state: &StateVector, p: &PauliString) -> Result<f64> {
    state.check_normalized()?;
    p.check_fits(state.n_sites())?;
    let phase = i_pow(p.y_weight());
    let x = p.x_mask as usize;
    let mut acc = Complex64::new(0.0, 0.0);
    for s in 0..state.dim() {
        let src = s ^ x;
        let sign = if ((src as u64 & p.z_mask).count_ones() & 1) == 1 {
            -1.0
        } else {
            1.0
        };
        acc += state.amp(s).conj() * state.amp(src) * sign;
    }
    acc *= phase;
    debug_assert!(
        acc.im.abs() < 1e-10,
        "Pauli expectation picked up imaginary part {:.3e}",
        acc.im
    );
    Ok(acc.re)
}

/// Cyclic lattice translation: site j content moves to site (j + shift - 1 mod N) + 1.
pub fn translate(state: &StateVector, shift: usize) -> Result<StateVector> {
    let n = state.n_sites();
    if shift >= n {
        return Err(Error::domain(format!(
            "shift {shift} out of range 0..{n}"
        )));
    }
    if shift == 0 {
        return Ok(state.clone());
    }
    let dim = state.dim();
    let mask = dim - 1;
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    for s in 0..dim {
        // rotate-left of the N-bit index moves bit (j-1) to bit (j-1+shift).
        let t = ((s << shift) | (s >> (n - shift))) & mask;
        out[t] = state.amp(s);
    }
    StateVector::new(n, out)
}

/// Global σᶻ parity: multiplies each amplitude by (-1)^(number of down spins).
pub fn global_parity_z(state: &StateVector) -> StateVector {
    let mut out = state.clone();
    for (s, a) in out.amps.iter_mut().enumerate() {
        if s.count_ones() & 1 == 1 {
            *a = -*a;
        }
    }
    out
}

/// Hadamard rotation on every site, mapping the σᶻ basis to the σˣ eigenbasis.
/// Involutive.
pub fn rotate_basis_x(state: &StateVector) -> StateVector {
    let n = state.n_sites();
    let mut amps = state.amps.clone();
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    for bit in 0..n {
        let stride = 1usize << bit;
        let mut base = 0;
        while base < amps.len() {
            for low in base..base + stride {
                let up = amps[low];
                let dn = amps[low + stride];
                amps[low] = (up + dn) * inv_sqrt2;
                amps[low + stride] = (up - dn) * inv_sqrt2;
            }
            base += 2 * stride;
        }
    }
    StateVector { n_sites: n, amps }
}

/// Translation / z-parity labels attached to eigenstates of a periodic model.
#[derive(Copy, Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SymmetrySector {
    /// Momentum index ℓ; the physical momentum is p = 2πℓ/N.
    pub momentum_index: i64,
    /// Eigenvalue of the global σᶻ parity, where resolvable.
    pub parity_z: Option<i8>,
}

/// Quantized momentum indices for an N-site ring: symmetric around 0 for odd
/// N, and (-N/2, N/2] for even N.
pub fn momentum_indices(n_sites: usize) -> Vec<i64> {
    let n = n_sites as i64;
    if n % 2 == 1 {
        (-(n - 1) / 2..=(n - 1) / 2).collect()
    } else {
        (-(n / 2 - 1)..=n / 2).collect()
    }
}

/// p = 2πℓ/N.
pub fn momentum(n_sites: usize, ell: i64) -> f64 {
    2.0 * std::f64::consts::PI * ell as f64 / n_sites as f64
}

/// Fold an arbitrary integer momentum index into the quantized range.
pub fn canonical_momentum_index(n_sites: usize, ell: i64) -> i64 {
    let n = n_sites as i64;
    let mut m = ell.rem_euclid(n);
    let top = if n % 2 == 1 { (n - 1) / 2 } else { n / 2 };
    if m > top {
        m -= n;
    }
    m
}
