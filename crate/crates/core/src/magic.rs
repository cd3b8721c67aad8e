//! Non-stabilizerness diagnostics: the full Pauli spectrum of a pure state
//! via a fast sign transform, stabilizer Rényi entropies, the closed forms
//! they take on generalized W states, and the jump of the magic across the
//! field-driven momentum transition.
//!
//! For each x-mask the expectation values over all z-masks come out of one
//! Walsh–Hadamard pass over f(t) = conj(ψ(t))·ψ(t⊕x), so the whole spectrum
//! costs O(N·4^N) instead of O(8^N).

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{Boundary, Hamiltonian, ModelSpec};
use crate::solver::{resolve_momentum, solve_lowest};
use crate::spin::{momentum_indices, StateVector};

/// Largest chain the spectrum computation accepts (time O(N·4^N)).
pub const MAX_SPECTRUM_SITES: usize = 14;

/// Moments ζ_q = 2^-N Σ_P ⟨P⟩^2q of the Pauli spectrum.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSpectrum {
    pub n_sites: usize,
    /// q → ζ_q; always contains q = 1, whose unit value is the purity guard.
    pub moments: BTreeMap<u32, f64>,
}

impl PauliSpectrum {
    pub fn zeta(&self, q: u32) -> Option<f64> {
        self.moments.get(&q).copied()
    }
}

/// How an SRE value was obtained.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SreMethod {
    FastTransform,
    NaiveEnumeration,
    AnalyticOracle,
}

impl std::fmt::Display for SreMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SreMethod::FastTransform => write!(f, "fast_transform"),
            SreMethod::NaiveEnumeration => write!(f, "naive_enumeration"),
            SreMethod::AnalyticOracle => write!(f, "analytic_oracle"),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SreResult {
    pub q: u32,
    /// Stabilizer Rényi entropy in bits; zero exactly on stabilizer states.
    pub value: f64,
    pub method: SreMethod,
}

#[derive(Default, Clone, Copy)]
struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    #[inline]
    fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    fn merge(&mut self, other: &Kahan) {
        self.add(other.sum);
        self.add(-other.carry);
    }
}

fn check_input(state: &StateVector, q_list: &[u32]) -> Result<()> {
    if state.n_sites() > MAX_SPECTRUM_SITES {
        return Err(Error::Resource(format!(
            "Pauli spectrum of {} sites exceeds the cap of {MAX_SPECTRUM_SITES}",
            state.n_sites()
        )));
    }
    state.check_normalized()?;
    for &q in q_list {
        if q == 0 {
            return Err(Error::domain("moment order q must be at least 1"));
        }
    }
    Ok(())
}

/// Moments of the Pauli spectrum via the fast sign transform, parallel over
/// x-masks with a deterministic chunked reduction.
pub fn pauli_spectrum(state: &StateVector, q_list: &[u32]) -> Result<PauliSpectrum> {
    check_input(state, q_list)?;
    let n = state.n_sites();
    let dim = state.dim();
    let mut orders: Vec<u32> = q_list.to_vec();
    orders.push(1);
    orders.sort_unstable();
    orders.dedup();

    let amps = state.amps();
    let chunk = (dim / (8 * rayon::current_num_threads().max(1))).max(1);
    let chunk_starts: Vec<usize> = (0..dim).step_by(chunk).collect();

    let partials: Vec<(Vec<Kahan>, f64)> = chunk_starts
        .par_iter()
        .map(|&start| {
            let mut sums = vec![Kahan::default(); orders.len()];
            let mut worst_residue = 0.0f64;
            let mut f = vec![Complex64::new(0.0, 0.0); dim];
            for x in start..(start + chunk).min(dim) {
                for (t, slot) in f.iter_mut().enumerate() {
                    *slot = amps[t].conj() * amps[t ^ x];
                }
                walsh_hadamard(&mut f);
                for (z, g) in f.iter().enumerate() {
                    let w = (x & z).count_ones();
                    let (val, residue) = match w % 4 {
                        0 => (g.re, g.im),
                        1 => (g.im, g.re),
                        2 => (-g.re, g.im),
                        _ => (-g.im, g.re),
                    };
                    worst_residue = worst_residue.max(residue.abs());
                    let sq = val * val;
                    for (k, &q) in orders.iter().enumerate() {
                        sums[k].add(sq.powi(q as i32));
                    }
                }
            }
            (sums, worst_residue)
        })
        .collect();

    let mut totals = vec![Kahan::default(); orders.len()];
    let mut worst_residue = 0.0f64;
    for (sums, residue) in &partials {
        for (t, s) in totals.iter_mut().zip(sums) {
            t.merge(s);
        }
        worst_residue = worst_residue.max(*residue);
    }
    if worst_residue > 1e-7 {
        return Err(Error::contract(format!(
            "Pauli expectation picked up imaginary residue {worst_residue:.3e}"
        )));
    }

    let scale = (dim as f64).recip();
    let moments: BTreeMap<u32, f64> = orders
        .iter()
        .zip(&totals)
        .map(|(&q, k)| (q, k.sum * scale))
        .collect();
    let zeta1 = moments[&1];
    if (zeta1 - 1.0).abs() > 1e-9 {
        return Err(Error::contract(format!(
            "purity sum rule violated: ζ₁ = {zeta1:.12}"
        )));
    }
    Ok(PauliSpectrum {
        n_sites: n,
        moments,
    })
}

/// In-place transform replacing f(t) with Σ_t (-1)^(popcount(t∧z)) f(t).
fn walsh_hadamard(f: &mut [Complex64]) {
    let dim = f.len();
    let mut stride = 1;
    while stride < dim {
        let mut base = 0;
        while base < dim {
            for low in base..base + stride {
                let a = f[low];
                let b = f[low + stride];
                f[low] = a + b;
                f[low + stride] = a - b;
            }
            base += 2 * stride;
        }
        stride <<= 1;
    }
}

/// Independent O(8^N) oracle: every Pauli string evaluated one by one through
/// the generic expectation kernel. Kept free of the fast-transform path.
pub fn pauli_spectrum_naive(state: &StateVector, q_list: &[u32]) -> Result<PauliSpectrum> {
    check_input(state, q_list)?;
    let n = state.n_sites();
    let dim = state.dim();
    let mut orders: Vec<u32> = q_list.to_vec();
    orders.push(1);
    orders.sort_unstable();
    orders.dedup();
    let amps = state.amps();

    let partials: Vec<Vec<Kahan>> = (0..dim)
        .into_par_iter()
        .map(|x| {
            let mut sums = vec![Kahan::default(); orders.len()];
            for z in 0..dim {
                let w = (x & z).count_ones();
                let mut acc = Complex64::new(0.0, 0.0);
                for s in 0..dim {
                    let src = s ^ x;
                    let sign = if ((src & z) as u64).count_ones() & 1 == 1 {
                        -1.0
                    } else {
                        1.0
                    };
                    acc += amps[s].conj() * amps[src] * sign;
                }
                acc *= crate::spin::i_pow(w);
                let sq = acc.re * acc.re;
                for (k, &q) in orders.iter().enumerate() {
                    sums[k].add(sq.powi(q as i32));
                }
            }
            sums
        })
        .collect();

    let mut totals = vec![Kahan::default(); orders.len()];
    for sums in &partials {
        for (t, s) in totals.iter_mut().zip(sums) {
            t.merge(s);
        }
    }
    let scale = (dim as f64).recip();
    Ok(PauliSpectrum {
        n_sites: n,
        moments: orders
            .iter()
            .zip(&totals)
            .map(|(&q, k)| (q, k.sum * scale))
            .collect(),
    })
}

fn sre_from_zeta(q: u32, zeta: f64) -> f64 {
    (zeta.log2() / (1.0 - q as f64)).max(0.0)
}

/// Stabilizer Rényi entropy M_q in bits, q ≥ 2, via the fast transform.
pub fn sre(state: &StateVector, q: u32) -> Result<SreResult> {
    if q < 2 {
        return Err(Error::domain(format!(
            "stabilizer Rényi entropy is defined for q ≥ 2, got {q}"
        )));
    }
    let spectrum = pauli_spectrum(state, &[q])?;
    Ok(SreResult {
        q,
        value: sre_from_zeta(q, spectrum.zeta(q).unwrap()),
        method: SreMethod::FastTransform,
    })
}

/// Same quantity through the per-string enumeration oracle.
pub fn sre_naive(state: &StateVector, q: u32) -> Result<SreResult> {
    if q < 2 {
        return Err(Error::domain(format!(
            "stabilizer Rényi entropy is defined for q ≥ 2, got {q}"
        )));
    }
    let spectrum = pauli_spectrum_naive(state, &[q])?;
    Ok(SreResult {
        q,
        value: sre_from_zeta(q, spectrum.zeta(q).unwrap()),
        method: SreMethod::NaiveEnumeration,
    })
}

/// Closed-form q = 2 stabilizer entropy of the generalized W state at any
/// (not necessarily quantized) momentum p ≠ 0; singular at sin(2p) = 0.
pub fn w_sre_momentum_formula(p: f64, n_sites: usize) -> f64 {
    let n = n_sites as f64;
    let ratio = ((2.0 - 4.0 * n) * p).sin() / (2.0 * p).sin();
    -(-(11.0 - 12.0 * n + ratio) / (2.0 * n * n * n)).log2()
}

/// The q = 2 stabilizer entropy of the standard (zero-momentum) W state.
pub fn w_sre_zero_momentum(n_sites: usize) -> f64 {
    let n = n_sites as f64;
    3.0 * n.log2() - (7.0 * n - 6.0).log2()
}

/// Extra magic carried by any finite quantized momentum relative to the
/// zero-momentum W state; tends to log₂(7/6) for large rings.
pub fn extra_magic(n_sites: usize) -> Result<f64> {
    if n_sites < 2 {
        return Err(Error::domain("momentum offset needs at least two sites"));
    }
    let n = n_sites as f64;
    Ok(((7.0 * n - 6.0) / (6.0 * n - 6.0)).log2())
}

/// Closed-form q = 2 stabilizer entropy of the generalized W state with
/// quantized momentum index ℓ. The ℓ = 0 case takes the zero-momentum form;
/// every ℓ ≠ 0 collapses to the same value, zero-momentum plus the offset.
pub fn w_sre_oracle(n_sites: usize, ell: i64) -> Result<f64> {
    if n_sites == 0 {
        return Err(Error::domain("need at least one site"));
    }
    if !momentum_indices(n_sites).contains(&ell) {
        return Err(Error::domain(format!(
            "momentum index {ell} outside the quantized range for N = {n_sites}"
        )));
    }
    if ell == 0 {
        Ok(w_sre_zero_momentum(n_sites).max(0.0))
    } else {
        Ok(w_sre_zero_momentum(n_sites) + extra_magic(n_sites)?)
    }
}

/// Relative frustrated SRE correction: the frustrated-minus-unfrustrated
/// magic normalized by the W-state closed form at momentum ℓ.
pub fn relative_sre_correction(m_tf: f64, m_nf: f64, n_sites: usize, ell: i64) -> Result<f64> {
    let denom = w_sre_oracle(n_sites, ell)?;
    if denom <= 0.0 {
        return Err(Error::domain(format!(
            "W-state magic vanishes at N = {n_sites}, ℓ = {ell}; the ratio is undefined"
        )));
    }
    Ok((m_tf - m_nf) / denom)
}

/// The magic jump measured across the momentum transition.
#[derive(Copy, Clone, Debug, Serialize, Deserialize)]
pub struct SreJump {
    pub h_star: f64,
    pub delta: f64,
    /// M₂ of either momentum-resolved doublet state just below the
    /// transition (the pair agree by conjugation symmetry).
    pub below: f64,
    /// M₂ of the unique zero-momentum state just above.
    pub above: f64,
    pub jump: f64,
}

/// Evaluate M₂ on both sides of a previously located transition field.
/// Returns `None` when the ground structure on either side is not the
/// expected doublet/unique pattern.
pub fn sre_jump_at_transition(
    spec: &ModelSpec,
    h_star: f64,
    delta: f64,
) -> Result<Option<SreJump>> {
    if spec.boundary != Boundary::Periodic {
        return Err(Error::domain("the momentum transition needs a periodic ring"));
    }
    if !(delta > 0.0) || h_star - delta < 0.0 {
        return Err(Error::domain("need 0 < delta <= h_star"));
    }

    let mut below_spec = *spec;
    below_spec.h = h_star - delta;
    let ham = Hamiltonian::build(below_spec)?;
    let bundle = solve_lowest(&ham, 4.min(ham.dim()))?;
    if bundle.ground_group().len() != 2 {
        return Ok(None);
    }
    let resolved = resolve_momentum(&bundle, 0)?;
    let members = resolved.degeneracy_groups[0].clone();
    let mut values = Vec::new();
    for &i in &members {
        let label = resolved.sector_labels[i].ok_or_else(|| {
            Error::contract("momentum resolution left a doublet member unlabeled")
        })?;
        if label.momentum_index == 0 {
            return Ok(None);
        }
        values.push(sre(&resolved.states[i], 2)?.value);
    }
    let below = values[0];
    if (values[0] - values[1]).abs() > 1e-6 {
        return Err(Error::contract(format!(
            "conjugate doublet members disagree on M₂: {} vs {}",
            values[0], values[1]
        )));
    }

    let mut above_spec = *spec;
    above_spec.h = h_star + delta;
    let ham = Hamiltonian::build(above_spec)?;
    let bundle = solve_lowest(&ham, 4.min(ham.dim()))?;
    if bundle.ground_group().len() != 1 {
        return Ok(None);
    }
    let resolved = resolve_momentum(&bundle, 0)?;
    if resolved.sector_labels[0].map(|s| s.momentum_index) != Some(0) {
        return Ok(None);
    }
    let above = sre(&resolved.states[0], 2)?.value;

    Ok(Some(SreJump {
        h_star,
        delta,
        below,
        above,
        jump: below - above,
    }))
}
