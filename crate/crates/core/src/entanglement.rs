//! Reduced density matrices over arbitrary site subsets, von Neumann and
//! Rényi entropies, the four-term disconnected entropy, and the closed-form
//! limits both converge to for the kink superposition.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::spin::StateVector;

/// Eigenvalues below this floor are treated as zero dust before logarithms.
pub const EIGENVALUE_FLOOR: f64 = 1e-14;
/// Largest subsystem the dense reduced-density-matrix path accepts.
pub const MAX_SUBSYSTEM_SITES: usize = 14;

/// An ordered subset of sites (1-based) defining one side of a bipartition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSpec {
    sites: Vec<usize>,
}

impl PartitionSpec {
    pub fn new(mut sites: Vec<usize>) -> Result<Self> {
        if sites.is_empty() {
            return Err(Error::domain("partition needs at least one site"));
        }
        sites.sort_unstable();
        sites.dedup();
        if sites[0] == 0 {
            return Err(Error::domain("sites are 1-based"));
        }
        Ok(PartitionSpec { sites })
    }

    /// Contiguous block of `len` sites starting at site `start`.
    pub fn block(start: usize, len: usize) -> Result<Self> {
        PartitionSpec::new((start..start + len).collect())
    }

    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn complement(&self, n_sites: usize) -> Vec<usize> {
        (1..=n_sites).filter(|s| !self.sites.contains(s)).collect()
    }
}

/// Hermitian, unit-trace density matrix of a subsystem, with the spectrum
/// cached after the first spectral call.
#[derive(Debug)]
pub struct ReducedDensityMatrix {
    matrix: DMatrix<Complex64>,
    eigenvalues: OnceLock<Vec<f64>>,
}

impl ReducedDensityMatrix {
    fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        let n = matrix.nrows();
        let mut trace = 0.0;
        for i in 0..n {
            trace += matrix[(i, i)].re;
        }
        if (trace - 1.0).abs() > 1e-10 {
            return Err(Error::contract(format!(
                "reduced density matrix trace {trace} deviates from 1"
            )));
        }
        for i in 0..n {
            for j in 0..=i {
                if (matrix[(i, j)] - matrix[(j, i)].conj()).norm() > 1e-12 {
                    return Err(Error::contract("reduced density matrix is not Hermitian"));
                }
            }
        }
        Ok(ReducedDensityMatrix {
            matrix,
            eigenvalues: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).sum()
    }

    /// Ascending spectrum; computed once and cached.
    pub fn eigenvalues(&self) -> Result<&[f64]> {
        if let Some(v) = self.eigenvalues.get() {
            return Ok(v);
        }
        let buf: Vec<Complex64> = self.matrix.as_slice().to_vec();
        let vals = crate::linalg::eigvalsh_complex(buf, self.dim())?;
        if let Some(&min) = vals.first() {
            if min < -1e-10 {
                return Err(Error::contract(format!(
                    "reduced density matrix has negative eigenvalue {min:.3e}"
                )));
            }
        }
        let _ = self.eigenvalues.set(vals);
        Ok(self.eigenvalues.get().unwrap())
    }

    /// Von Neumann entropy in bits.
    pub fn von_neumann_entropy(&self) -> Result<f64> {
        let s = -self
            .eigenvalues()?
            .iter()
            .filter(|&&l| l > EIGENVALUE_FLOOR)
            .map(|&l| l * l.log2())
            .sum::<f64>();
        Ok(s.max(0.0))
    }

    /// α-Rényi entropy in bits, α > 0, α ≠ 1.
    pub fn renyi_entropy(&self, alpha: f64) -> Result<f64> {
        if !(alpha > 0.0) {
            return Err(Error::domain(format!("Rényi order must be positive, got {alpha}")));
        }
        if (alpha - 1.0).abs() < 1e-12 {
            return Err(Error::domain(
                "Rényi order 1 is the von Neumann limit; call von_neumann_entropy",
            ));
        }
        let sum: f64 = self
            .eigenvalues()?
            .iter()
            .filter(|&&l| l > EIGENVALUE_FLOOR)
            .map(|&l| l.powf(alpha))
            .sum();
        Ok((sum.log2() / (1.0 - alpha)).max(0.0))
    }
}

/// Trace out everything but the given sites: ρ_A as M·M† with M the
/// amplitude tensor reshaped to (subsystem bits) × (environment bits).
pub fn reduce(state: &StateVector, part: &PartitionSpec) -> Result<ReducedDensityMatrix> {
    let n = state.n_sites();
    let sites = part.sites();
    if *sites.last().unwrap() > n {
        return Err(Error::domain(format!(
            "partition site {} exceeds chain length {n}",
            sites.last().unwrap()
        )));
    }
    if sites.len() == n {
        return Err(Error::domain(
            "subsystem equals the full chain; a pure state has entropy 0",
        ));
    }
    if sites.len() > MAX_SUBSYSTEM_SITES {
        return Err(Error::Resource(format!(
            "subsystem of {} sites exceeds the dense cap of {MAX_SUBSYSTEM_SITES}",
            sites.len()
        )));
    }
    let a_bits: Vec<usize> = sites.iter().map(|s| s - 1).collect();
    let e_bits: Vec<usize> = (0..n).filter(|b| !a_bits.contains(b)).collect();
    let na = 1usize << a_bits.len();
    let ne = 1usize << e_bits.len();

    let mut m = DMatrix::<Complex64>::zeros(na, ne);
    for (s, &amp) in state.amps().iter().enumerate() {
        let mut a = 0usize;
        for (i, &b) in a_bits.iter().enumerate() {
            a |= ((s >> b) & 1) << i;
        }
        let mut e = 0usize;
        for (i, &b) in e_bits.iter().enumerate() {
            e |= ((s >> b) & 1) << i;
        }
        m[(a, e)] = amp;
    }
    let rho = &m * m.adjoint();
    ReducedDensityMatrix::new(rho)
}

/// Which entropy to evaluate on a reduced density matrix.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum EntropyKind {
    VonNeumann,
    Renyi(f64),
}

impl EntropyKind {
    /// Interpret an α parameter, folding α = 1 into the von Neumann limit.
    pub fn from_alpha(alpha: f64) -> Self {
        if (alpha - 1.0).abs() < 1e-12 {
            EntropyKind::VonNeumann
        } else {
            EntropyKind::Renyi(alpha)
        }
    }

    fn eval(&self, rdm: &ReducedDensityMatrix) -> Result<f64> {
        match self {
            EntropyKind::VonNeumann => rdm.von_neumann_entropy(),
            EntropyKind::Renyi(alpha) => rdm.renyi_entropy(*alpha),
        }
    }
}

/// Subsystem entropy of a pure state, always reducing over the smaller of the
/// subset and its complement (their spectra agree for pure states).
pub fn subsystem_entropy(state: &StateVector, sites: &[usize], kind: EntropyKind) -> Result<f64> {
    let n = state.n_sites();
    let part = PartitionSpec::new(sites.to_vec())?;
    if part.len() >= n {
        return Err(Error::domain("subsystem must be a proper subset"));
    }
    let use_complement = part.len() > n - part.len();
    let rdm = if use_complement {
        reduce(state, &PartitionSpec::new(part.complement(n))?)?
    } else {
        reduce(state, &part)?
    };
    kind.eval(&rdm)
}

/// Closed-form bipartite entropy of the zero-momentum kink superposition in
/// the large-N limit, as a function of the subsystem fraction.
pub fn tf_entropy_oracle(m_frac: f64) -> Result<f64> {
    if !(m_frac > 0.0 && m_frac < 1.0) {
        return Err(Error::domain(format!(
            "subsystem fraction must lie strictly inside (0,1), got {m_frac}"
        )));
    }
    Ok(1.0 - m_frac * m_frac.log2() - (1.0 - m_frac) * (1.0 - m_frac).log2())
}

/// Entropy of the frustrated phase away from the classical point: the
/// unfrustrated area-law value plus the delocalized-excitation term.
pub fn tf_phase_entropy(s_nf: f64, m_frac: f64) -> f64 {
    let xlx = |x: f64| if x > 0.0 { x * x.log2() } else { 0.0 };
    s_nf - xlx(m_frac) - xlx(1.0 - m_frac)
}

/// The four-subsystem layout for the disconnected entropy: a block A, a block
/// B₁ inside it, and B₂ diametrically opposite in the complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisconnectedGeometry {
    n_sites: usize,
    m_len: usize,
    l_len: usize,
    r_len: usize,
    a: Vec<usize>,
    b1: Vec<usize>,
    b2: Vec<usize>,
}

impl DisconnectedGeometry {
    /// Build from explicit block lengths: A = sites 1..=m, B₁ the l-site
    /// block at offset r inside A, B₂ the l-site block centered in the
    /// complement of A (diametrically opposite).
    ///
    /// The B₂ placement is locked by the calibration test: among the
    /// candidate layouts consistent with the containment topology, centering
    /// in the complement is the one whose classical-point disconnected
    /// entropy converges to the closed-form limit with the expected
    /// power-law rate.
    pub fn from_lengths(n_sites: usize, m_len: usize, l_len: usize, r_len: usize) -> Result<Self> {
        if m_len == 0 || l_len == 0 {
            return Err(Error::domain("blocks must be non-empty"));
        }
        if r_len + l_len > m_len {
            return Err(Error::domain(format!(
                "inner block (offset {r_len}, length {l_len}) does not fit inside the {m_len}-site block"
            )));
        }
        if m_len + l_len >= n_sites {
            return Err(Error::domain(
                "the union must leave a non-empty environment",
            ));
        }
        let b2_start = m_len + (n_sites - m_len - l_len) / 2;
        let a: Vec<usize> = (1..=m_len).collect();
        let b1: Vec<usize> = (r_len + 1..=r_len + l_len).collect();
        let b2: Vec<usize> = (b2_start + 1..=b2_start + l_len).collect();
        Ok(DisconnectedGeometry {
            n_sites,
            m_len,
            l_len,
            r_len,
            a,
            b1,
            b2,
        })
    }

    /// Build from fractions of the ring length, rounding half up.
    pub fn from_fractions(n_sites: usize, m: f64, l: f64, r: f64) -> Result<Self> {
        for (name, v) in [("m", m), ("l", l), ("r", r)] {
            if !(0.0..1.0).contains(&v) {
                return Err(Error::domain(format!("fraction {name} = {v} outside [0,1)")));
            }
        }
        let round = |x: f64| (x * n_sites as f64 + 0.5).floor() as usize;
        DisconnectedGeometry::from_lengths(n_sites, round(m), round(l), round(r))
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn lengths(&self) -> (usize, usize, usize) {
        (self.m_len, self.l_len, self.r_len)
    }

    pub fn a_sites(&self) -> &[usize] {
        &self.a
    }

    /// B = B₁ ∪ B₂.
    pub fn b_sites(&self) -> Vec<usize> {
        let mut b = self.b1.clone();
        b.extend_from_slice(&self.b2);
        b
    }

    /// A ∪ B = A ∪ B₂ (B₁ is inside A).
    pub fn union_sites(&self) -> Vec<usize> {
        let mut u = self.a.clone();
        u.extend_from_slice(&self.b2);
        u
    }

    /// A ∩ B = B₁.
    pub fn intersection_sites(&self) -> &[usize] {
        &self.b1
    }
}

/// Disconnected entropy S(A) + S(B) - S(A∪B) - S(A∩B) at Rényi order α
/// (α = 1 selects the von Neumann entropy).
pub fn disconnected_entropy(
    state: &StateVector,
    geom: &DisconnectedGeometry,
    alpha: f64,
) -> Result<f64> {
    if geom.n_sites() != state.n_sites() {
        return Err(Error::contract(format!(
            "geometry spans {} sites, state has {}",
            geom.n_sites(),
            state.n_sites()
        )));
    }
    let kind = EntropyKind::from_alpha(alpha);
    let s_a = subsystem_entropy(state, geom.a_sites(), kind)?;
    let s_b = subsystem_entropy(state, &geom.b_sites(), kind)?;
    let s_union = subsystem_entropy(state, &geom.union_sites(), kind)?;
    let s_inter = subsystem_entropy(state, geom.intersection_sites(), kind)?;
    Ok(s_a + s_b - s_union - s_inter)
}

/// Thermodynamic-limit closed form of the Rényi-2 disconnected entropy of
/// the kink superposition, as a function of the block fractions m and l.
pub fn dee_oracle(m_frac: f64, l_frac: f64) -> Result<f64> {
    if !(m_frac > 0.0 && m_frac < 1.0 && l_frac > 0.0 && l_frac < 1.0) {
        return Err(Error::domain("block fractions must lie strictly inside (0,1)"));
    }
    if l_frac + 1.5 * m_frac >= 1.0 {
        return Err(Error::domain(format!(
            "need l + 3m/2 < 1 for the closed form, got {}",
            l_frac + 1.5 * m_frac
        )));
    }
    let m = m_frac;
    let l = l_frac;
    let term_a = (m * m + (1.0 - m) * (1.0 - m)).log2();
    let term_u = ((1.0 - 0.5 * m).powi(2) + (0.5 * m).powi(2)).log2();
    let term_b = (l * l + (1.0 - l - m).powi(2) + 0.5 * m * m).log2();
    let term_i = (l * l + (1.0 - l - 1.5 * m).powi(2) + 1.25 * m * m).log2();
    Ok(-(term_a - term_u + term_b - term_i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{ghz_state, w_state, x_product_state};
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_state(n: usize, seed: u64) -> StateVector {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut amps: Vec<Complex64> = (0..1usize << n)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amps {
            *a /= norm;
        }
        StateVector::new(n, amps).unwrap()
    }

    #[test]
    fn product_state_has_rank_one_rdm() {
        let s = x_product_state(6, 0b010110).unwrap();
        let part = PartitionSpec::new(vec![2, 3, 5]).unwrap();
        let rdm = reduce(&s, &part).unwrap();
        assert_abs_diff_eq!(rdm.trace(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rdm.von_neumann_entropy().unwrap(), 0.0, epsilon = 1e-10);
        let eigs = rdm.eigenvalues().unwrap();
        assert_abs_diff_eq!(eigs[eigs.len() - 1], 1.0, epsilon = 1e-10);
    }

    #[test]
    fn ghz_rdm_has_flat_two_point_spectrum() {
        for n in [3usize, 5, 8] {
            let g = ghz_state(n).unwrap();
            for cut in [1usize, n / 2, n - 1] {
                let part = PartitionSpec::block(1, cut).unwrap();
                let rdm = reduce(&g, &part).unwrap();
                let eigs = rdm.eigenvalues().unwrap();
                let top: Vec<f64> = eigs.iter().rev().take(2).cloned().collect();
                assert_abs_diff_eq!(top[0], 0.5, epsilon = 1e-12);
                assert_abs_diff_eq!(top[1], 0.5, epsilon = 1e-12);
                assert_abs_diff_eq!(rdm.von_neumann_entropy().unwrap(), 1.0, epsilon = 1e-10);
                // flat spectrum: every Rényi order gives one bit
                for alpha in [0.5, 2.0, 3.0] {
                    assert_abs_diff_eq!(rdm.renyi_entropy(alpha).unwrap(), 1.0, epsilon = 1e-10);
                }
            }
        }
    }

    #[test]
    fn w_state_block_entropy_matches_binary_entropy() {
        // rank-2 reduced state: eigenvalues M/N and 1-M/N
        let n = 6;
        let w = w_state(n, 0).unwrap();
        let mu = 2.0f64 / 6.0;
        let expected = -mu * mu.log2() - (1.0 - mu) * (1.0 - mu).log2();
        let got = subsystem_entropy(&w, &[1, 2], EntropyKind::VonNeumann).unwrap();
        assert_abs_diff_eq!(got, expected, epsilon = 1e-10);
        assert_abs_diff_eq!(got, 0.9182958340544896, epsilon = 1e-10);

        // half block at Rényi-2: -log2(mu^2 + (1-mu)^2) with mu = 1/2
        let got = subsystem_entropy(&w, &[1, 2, 3], EntropyKind::Renyi(2.0)).unwrap();
        assert_abs_diff_eq!(got, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn renyi_approaches_von_neumann_near_order_one() {
        // one-sided: the flat-spectrum state hits the limit exactly
        let g = ghz_state(6).unwrap();
        let rdm = reduce(&g, &PartitionSpec::block(1, 3).unwrap()).unwrap();
        let vn = rdm.von_neumann_entropy().unwrap();
        for alpha in [1.0 - 1e-4, 1.0 + 1e-4] {
            assert_abs_diff_eq!(rdm.renyi_entropy(alpha).unwrap(), vn, epsilon = 1e-6);
        }

        // generic spectrum: linear-in-(α-1) drift cancels in the symmetric
        // average, which converges quadratically
        let s = random_state(6, 4);
        let rdm = reduce(&s, &PartitionSpec::block(1, 3).unwrap()).unwrap();
        let vn = rdm.von_neumann_entropy().unwrap();
        let lo = rdm.renyi_entropy(1.0 - 1e-4).unwrap();
        let hi = rdm.renyi_entropy(1.0 + 1e-4).unwrap();
        assert_abs_diff_eq!(0.5 * (lo + hi), vn, epsilon = 1e-6);
        assert!((lo - vn).abs() < 1e-3 && (hi - vn).abs() < 1e-3);

        assert!(rdm.renyi_entropy(-0.5).is_err());
        assert!(rdm.renyi_entropy(0.0).is_err());
    }

    #[test]
    fn complement_spectra_agree_for_pure_states() {
        for seed in 0..6 {
            let n = 8;
            let s = random_state(n, 100 + seed);
            let sites = vec![1, 3, 6];
            let a = subsystem_entropy(&s, &sites, EntropyKind::Renyi(2.0)).unwrap();
            let comp: Vec<usize> = (1..=n).filter(|x| !sites.contains(x)).collect();
            let b = subsystem_entropy(&s, &comp, EntropyKind::Renyi(2.0)).unwrap();
            assert_abs_diff_eq!(a, b, epsilon = 1e-10);
            let a = subsystem_entropy(&s, &sites, EntropyKind::VonNeumann).unwrap();
            let b = subsystem_entropy(&s, &comp, EntropyKind::VonNeumann).unwrap();
            assert_abs_diff_eq!(a, b, epsilon = 1e-10);
        }
    }

    #[test]
    fn reduce_rejects_full_chain_and_oversized_blocks() {
        let s = random_state(4, 1);
        let full = PartitionSpec::new(vec![1, 2, 3, 4]).unwrap();
        assert!(reduce(&s, &full).is_err());
        let too_far = PartitionSpec::new(vec![9]).unwrap();
        assert!(reduce(&s, &too_far).is_err());
    }

    #[test]
    fn tf_entropy_oracle_values_and_symmetry() {
        assert_abs_diff_eq!(tf_entropy_oracle(0.5).unwrap(), 2.0, epsilon = 1e-14);
        let quarter = 1.0 + 0.25 * 2.0 + 0.75 * (4.0f64 / 3.0).log2();
        assert_abs_diff_eq!(tf_entropy_oracle(0.25).unwrap(), quarter, epsilon = 1e-12);
        assert!((tf_entropy_oracle(0.25).unwrap() - 1.8112781244591326).abs() < 1e-10);
        for m in [0.1, 0.3, 0.45] {
            assert_abs_diff_eq!(
                tf_entropy_oracle(m).unwrap(),
                tf_entropy_oracle(1.0 - m).unwrap(),
                epsilon = 1e-13
            );
        }
        assert!(tf_entropy_oracle(0.0).is_err());
        assert!(tf_entropy_oracle(1.0).is_err());
    }

    #[test]
    fn tf_phase_entropy_reduces_and_decomposes() {
        assert_abs_diff_eq!(tf_phase_entropy(1.0, 0.5), 2.0, epsilon = 1e-14);
        assert!(tf_phase_entropy(0.0, 1e-9) < 1e-7);
        for (s_nf, m) in [(0.7, 0.3), (1.4, 0.25)] {
            let excitation = tf_phase_entropy(s_nf, m) - s_nf;
            assert_abs_diff_eq!(
                excitation,
                -m * m.log2() - (1.0 - m) * (1.0 - m).log2(),
                epsilon = 1e-13
            );
        }
    }

    #[test]
    fn dee_oracle_reference_values() {
        assert_abs_diff_eq!(dee_oracle(0.5, 0.125).unwrap(), 0.611435, epsilon = 5e-7);
        // vanishing main block carries no excitation weight
        assert!(dee_oracle(1e-6, 0.125).unwrap().abs() < 1e-4);
        assert!(dee_oracle(0.5, 0.3).is_err());
        assert!(dee_oracle(0.0, 0.1).is_err());
    }

    #[test]
    fn geometry_layout_and_validation() {
        // the exact-integer layout used by the scaling runs
        let g = DisconnectedGeometry::from_lengths(17, 8, 2, 4).unwrap();
        assert_eq!(g.a_sites(), &[1, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(g.intersection_sites(), &[5, 6]);
        // B₂ centered in the 9-site complement {9..17}
        assert_eq!(g.b_sites(), vec![5, 6, 12, 13]);
        assert_eq!(g.union_sites(), vec![1, 2, 3, 4, 5, 6, 7, 8, 12, 13]);

        let g = DisconnectedGeometry::from_fractions(17, 0.5, 0.125, 0.25).unwrap();
        assert_eq!(g.lengths(), (9, 2, 4));

        // inner block must fit inside A
        assert!(DisconnectedGeometry::from_lengths(17, 4, 3, 2).is_err());
        // union must leave an environment
        assert!(DisconnectedGeometry::from_lengths(9, 7, 2, 0).is_err());
    }

    #[test]
    fn classical_point_dee_converges_to_the_closed_form() {
        // calibration lock for the B₂ placement: deltas shrink toward the
        // closed form as the ring grows through the exact-geometry sizes
        let oracle = dee_oracle(0.5, 0.125).unwrap();
        let mut deltas = Vec::new();
        for n in [9usize, 17] {
            let geom = DisconnectedGeometry::from_lengths(n, (n - 1) / 2, (n - 1) / 8, (n - 1) / 4)
                .unwrap();
            let w = crate::states::omega_state(n, 0).unwrap();
            let d = disconnected_entropy(&w, &geom, 2.0).unwrap();
            deltas.push((d - oracle).abs());
        }
        assert!(deltas[1] < deltas[0]);
        assert!(deltas[1] < 0.12, "N=17 delta {:.4}", deltas[1]);
    }

    #[test]
    fn disconnected_entropy_vanishes_on_product_and_ghz_states() {
        let geom = DisconnectedGeometry::from_lengths(9, 4, 1, 2).unwrap();
        let product = x_product_state(9, 0b101010101).unwrap();
        assert_abs_diff_eq!(
            disconnected_entropy(&product, &geom, 2.0).unwrap(),
            0.0,
            epsilon = 1e-10
        );
        let g = ghz_state(9).unwrap();
        assert_abs_diff_eq!(
            disconnected_entropy(&g, &geom, 2.0).unwrap(),
            0.0,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            disconnected_entropy(&g, &geom, 1.0).unwrap(),
            0.0,
            epsilon = 1e-10
        );
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(12))]

        #[test]
        fn entropy_bounds_hold(seed in 0u64..200) {
            let s = random_state(7, seed);
            let part = PartitionSpec::block(2, 3).unwrap();
            let rdm = reduce(&s, &part).unwrap();
            let vn = rdm.von_neumann_entropy().unwrap();
            proptest::prop_assert!(vn >= -1e-12 && vn <= 3.0 + 1e-9);
            let r2 = rdm.renyi_entropy(2.0).unwrap();
            proptest::prop_assert!(r2 <= vn + 1e-9);
        }
    }
}
