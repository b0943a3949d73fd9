//! Access structure of the five-party scheme: Holevo information and trace
//! distance per share subset, and reconstruction of classical and quantum
//! secrets from qualified subsets.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::code5::{codeword, Bit, QubitSecret, CODE_QUBITS};
use crate::error::{domain, Error, Result};
use crate::linalg::CMatrix;
use crate::quantum::{
    binary_entropy, partial_trace_outer, reduced_state, trace_distance, trace_norm,
    von_neumann_entropy, DensityMatrix,
};
use crate::subset::ShareSubset;

/// Holevo information and trace distance at or below this count as zero.
pub const ZERO_TOL: f64 = 1e-9;
/// Eigenvalues above this span the support of a reduced code word.
pub const SUPPORT_TOL: f64 = 1e-10;
/// Priors every security check runs over.
pub const TEST_PRIORS: [f64; 3] = [0.5, 0.3, 0.01];

/// Distribution `(q0, q1)` of the classical secret.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecretPrior {
    q0: f64,
    q1: f64,
}

impl SecretPrior {
    pub fn new(q0: f64, q1: f64) -> Result<Self> {
        let ok = q0.is_finite() && q1.is_finite() && q0 >= 0.0 && q1 >= 0.0;
        if !ok || (q0 + q1 - 1.0).abs() > 1e-12 {
            return Err(domain(format!("({q0}, {q1}) is not a probability distribution")));
        }
        Ok(Self { q0, q1 })
    }

    /// `(q0, 1 - q0)`.
    pub fn from_q0(q0: f64) -> Result<Self> {
        Self::new(q0, 1.0 - q0)
    }

    pub fn uniform() -> Self {
        Self { q0: 0.5, q1: 0.5 }
    }

    pub fn q0(&self) -> f64 {
        self.q0
    }

    pub fn q1(&self) -> f64 {
        self.q1
    }

    pub fn weight(&self, s: Bit) -> f64 {
        match s {
            Bit::Zero => self.q0,
            Bit::One => self.q1,
        }
    }

    /// Shannon entropy of the prior in bits.
    pub fn entropy(&self) -> f64 {
        binary_entropy(self.q0)
    }
}

impl Default for SecretPrior {
    fn default() -> Self {
        Self::uniform()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    Qualified,
    Forbidden,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsetVerdict {
    #[serde(rename = "members")]
    pub subset: ShareSubset,
    pub holevo_bits: f64,
    pub trace_dist: f64,
    pub classification: Classification,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AccessReport {
    pub prior: SecretPrior,
    /// One verdict per nonempty subset, ordered by size then members.
    pub verdicts: Vec<SubsetVerdict>,
    /// Whether exactly the subsets of size three or more are qualified.
    pub threshold_3_of_5: bool,
}

impl AccessReport {
    /// True when exactly the subsets of size at least `k` are qualified.
    pub fn is_threshold(&self, k: usize) -> bool {
        self.verdicts.len() == (1 << CODE_QUBITS) - 1
            && self.verdicts.iter().all(|v| {
                (v.classification == Classification::Qualified) == (v.subset.len() >= k)
            })
    }

    pub fn verdict(&self, subset: ShareSubset) -> Option<&SubsetVerdict> {
        self.verdicts.iter().find(|v| v.subset == subset)
    }
}

/// Reduced states `(ρ_0^J, ρ_1^J)` of the two code words.
pub fn codeword_marginals(j: ShareSubset) -> Result<(DensityMatrix, DensityMatrix)> {
    if j.is_empty() {
        return Err(domain("share subset is empty"));
    }
    Ok((
        reduced_state(codeword(Bit::Zero), j)?,
        reduced_state(codeword(Bit::One), j)?,
    ))
}

fn holevo_of(rho0: &DensityMatrix, rho1: &DensityMatrix, prior: SecretPrior) -> Result<f64> {
    let mixture = rho0.mix(prior.q0, rho1)?;
    Ok(von_neumann_entropy(&mixture)
        - (prior.q0 * von_neumann_entropy(rho0) + prior.q1 * von_neumann_entropy(rho1)))
}

/// `I(J) = S(q0 ρ0 + q1 ρ1) − (q0 S(ρ0) + q1 S(ρ1))` in bits.
pub fn holevo_information(j: ShareSubset, prior: SecretPrior) -> Result<f64> {
    let (rho0, rho1) = codeword_marginals(j)?;
    holevo_of(&rho0, &rho1, prior)
}

/// Classifies `j` with the uniform prior.
pub fn classify_subset(j: ShareSubset) -> Result<SubsetVerdict> {
    verdict_with_prior(j, SecretPrior::uniform())
}

/// Classifies `j`, recording the Holevo information under `prior`.
///
/// Qualified sets distinguish the code words perfectly; forbidden sets have
/// zero Holevo information and zero trace distance. Anything else is
/// reported as [`Error::Indeterminate`].
pub fn verdict_with_prior(j: ShareSubset, prior: SecretPrior) -> Result<SubsetVerdict> {
    let (rho0, rho1) = codeword_marginals(j)?;
    let holevo_bits = holevo_of(&rho0, &rho1, prior)?;
    let trace_dist = trace_distance(&rho0, &rho1)?;
    let classification = if trace_dist >= 1.0 - ZERO_TOL {
        Classification::Qualified
    } else if holevo_bits <= ZERO_TOL && trace_dist <= ZERO_TOL {
        Classification::Forbidden
    } else {
        return Err(Error::Indeterminate {
            subset: j,
            holevo_bits,
            trace_dist,
        });
    };
    Ok(SubsetVerdict {
        subset: j,
        holevo_bits,
        trace_dist,
        classification,
    })
}

/// Verdicts for all 31 nonempty subsets.
pub fn access_structure_report(prior: SecretPrior) -> Result<AccessReport> {
    let subsets = ShareSubset::all_nonempty(CODE_QUBITS)?;
    let verdicts = subsets
        .par_iter()
        .map(|&j| verdict_with_prior(j, prior))
        .collect::<Result<Vec<_>>>()?;
    let mut report = AccessReport {
        prior,
        verdicts,
        threshold_3_of_5: false,
    };
    report.threshold_3_of_5 = report.is_threshold(3);
    Ok(report)
}

/// Outcome of measuring shares against the support of `ρ_0^J`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassicalRecovery {
    pub guess: Bit,
    /// Bayes success probability of the support measurement under the prior.
    pub success_probability: f64,
    /// Optimal success probability `½(1 + ‖q0 ρ0 − q1 ρ1‖₁)`.
    pub helstrom_bound: f64,
}

fn support_projector(rho: &DensityMatrix) -> Result<CMatrix> {
    let eig = rho.matrix().eigh()?;
    Ok(eig.map(|v| if v > SUPPORT_TOL { 1.0 } else { 0.0 }))
}

fn expectation(projector: &CMatrix, state: &CMatrix) -> f64 {
    (projector * state).trace().re
}

/// Guesses the classical secret from the shares in `j`.
///
/// The measurement projects onto the support of `ρ_0^J` and its complement.
/// The guess is the Bayes decision for the outcome `state` is most likely to
/// produce.
pub fn reconstruct_classical(
    j: ShareSubset,
    state: &DensityMatrix,
    prior: SecretPrior,
) -> Result<ClassicalRecovery> {
    let (rho0, rho1) = codeword_marginals(j)?;
    if state.dim() != rho0.dim() {
        return Err(domain(format!(
            "state of dimension {} given for a {}-share subset",
            state.dim(),
            j.len()
        )));
    }
    let inside = support_projector(&rho0)?;
    let outside = &CMatrix::identity(rho0.dim()) - &inside;

    let decide = |proj: &CMatrix| {
        let w0 = prior.q0 * expectation(proj, rho0.matrix());
        let w1 = prior.q1 * expectation(proj, rho1.matrix());
        if w0 >= w1 {
            (Bit::Zero, w0)
        } else {
            (Bit::One, w1)
        }
    };
    let (guess_in, win_in) = decide(&inside);
    let (guess_out, win_out) = decide(&outside);

    let guess = if expectation(&inside, state.matrix()) >= 0.5 {
        guess_in
    } else {
        guess_out
    };
    let gamma = &rho0.matrix().scale_real(prior.q0) - &rho1.matrix().scale_real(prior.q1);
    Ok(ClassicalRecovery {
        guess,
        success_probability: win_in + win_out,
        helstrom_bound: 0.5 * (1.0 + trace_norm(&gamma)?),
    })
}

/// Whether erasing the shares outside `j` is correctable: the complement's
/// marginals of `|ψ_a⟩⟨ψ_b|` must not depend on the logical state.
pub fn erasure_correctable(j: ShareSubset) -> Result<bool> {
    let erased = j.complement(CODE_QUBITS)?;
    if erased.is_empty() {
        return Ok(true);
    }
    let zero = codeword(Bit::Zero).amplitudes();
    let one = codeword(Bit::One).amplitudes();
    let m00 = partial_trace_outer(zero, zero, CODE_QUBITS, erased)?;
    let m11 = partial_trace_outer(one, one, CODE_QUBITS, erased)?;
    let m10 = partial_trace_outer(one, zero, CODE_QUBITS, erased)?;
    let zeros = CMatrix::zeros(m10.dim());
    Ok(m00.max_abs_diff(&m11) <= ZERO_TOL && m10.max_abs_diff(&zeros) <= ZERO_TOL)
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumRecovery {
    /// Recovered single-qubit secret.
    pub recovered: DensityMatrix,
    /// `⟨α|recovered|α⟩` when the expected secret was supplied.
    pub fidelity: Option<f64>,
}

/// Recovers the encoded qubit from the shares in `j` with the Petz recovery
/// map of the erasure channel, taken with respect to the maximally mixed
/// logical state.
///
/// Fails with [`Error::Unqualified`] when the erasure of the complement is
/// not correctable.
pub fn reconstruct_quantum(
    j: ShareSubset,
    state: &DensityMatrix,
    expected: Option<&QubitSecret>,
) -> Result<QuantumRecovery> {
    if j.is_empty() {
        return Err(domain("share subset is empty"));
    }
    if state.dim() != 1 << j.len() {
        return Err(domain(format!(
            "state of dimension {} given for a {}-share subset",
            state.dim(),
            j.len()
        )));
    }
    if !erasure_correctable(j)? {
        return Err(Error::Unqualified(j));
    }
    let (rho0, rho1) = codeword_marginals(j)?;
    let average = rho0.mix(0.5, &rho1)?;
    let inv_sqrt = average
        .matrix()
        .eigh()?
        .map(|v| if v > SUPPORT_TOL { 1.0 / v.sqrt() } else { 0.0 });
    let twisted = &(&inv_sqrt * state.matrix()) * &inv_sqrt;

    let words = [codeword(Bit::Zero).amplitudes(), codeword(Bit::One).amplitudes()];
    let mut out = CMatrix::zeros(2);
    for (a, psi_a) in words.iter().enumerate() {
        for (b, psi_b) in words.iter().enumerate() {
            let cross = partial_trace_outer(psi_b, psi_a, CODE_QUBITS, j)?;
            out[(a, b)] = (&twisted * &cross).trace() * 0.5;
        }
    }
    let recovered = DensityMatrix::new(out).map_err(|e| {
        domain(format!("recovered operator is not a state ({e}); input lies outside the code's support on {j}"))
    })?;
    let fidelity = expected
        .map(|s| recovered.fidelity_with_pure(&s.amplitudes()))
        .transpose()?;
    Ok(QuantumRecovery { recovered, fidelity })
}

/// Single-qubit pure state `|α⟩⟨α|` of a secret.
pub fn secret_density(secret: &QubitSecret) -> DensityMatrix {
    let a: [Complex64; 2] = secret.amplitudes();
    DensityMatrix::new(CMatrix::outer(&a, &a)).expect("normalized secret")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code5::{encode_classical, encode_quantum};

    fn subset(m: &[usize]) -> ShareSubset {
        ShareSubset::new(m).unwrap()
    }

    #[test]
    fn prior_validation() {
        assert!(SecretPrior::new(0.3, 0.7).is_ok());
        assert!(SecretPrior::new(0.3, 0.6).is_err());
        assert!(SecretPrior::new(-0.1, 1.1).is_err());
        assert!(SecretPrior::from_q0(f64::NAN).is_err());
    }

    #[test]
    fn holevo_examples() {
        let h = holevo_information(subset(&[1, 2]), SecretPrior::uniform()).unwrap();
        assert!(h.abs() <= 1e-9);
        let h = holevo_information(subset(&[4]), SecretPrior::new(0.3, 0.7).unwrap()).unwrap();
        assert!(h.abs() <= 1e-9);
        let h = holevo_information(subset(&[1, 2, 3]), SecretPrior::uniform()).unwrap();
        assert!((h - 1.0).abs() <= 1e-9);
        assert!(holevo_information(ShareSubset::EMPTY, SecretPrior::uniform()).is_err());
    }

    #[test]
    fn classify_examples() {
        let v = classify_subset(subset(&[5])).unwrap();
        assert_eq!(v.classification, Classification::Forbidden);
        assert!(v.holevo_bits.abs() <= 1e-9 && v.trace_dist <= 1e-9);
        let v = classify_subset(subset(&[1, 2, 3])).unwrap();
        assert_eq!(v.classification, Classification::Qualified);
        assert!((v.trace_dist - 1.0).abs() <= 1e-9);
        let v = classify_subset(subset(&[1, 2, 3, 4, 5])).unwrap();
        assert_eq!(v.classification, Classification::Qualified);
    }

    #[test]
    fn report_uniform() {
        let r = access_structure_report(SecretPrior::uniform()).unwrap();
        assert_eq!(r.verdicts.len(), 31);
        assert!(r.threshold_3_of_5);
        let forbidden = r.verdicts.iter().filter(|v| v.classification == Classification::Forbidden).count();
        assert_eq!(forbidden, 15);
    }

    #[test]
    fn report_skewed_prior_uses_prior_entropy() {
        let prior = SecretPrior::new(0.3, 0.7).unwrap();
        let r = access_structure_report(prior).unwrap();
        assert!(r.threshold_3_of_5);
        for v in r.verdicts.iter().filter(|v| v.subset.len() >= 3) {
            assert!((v.holevo_bits - 0.881_290_899_230_692_4).abs() < 1e-9);
        }
    }

    #[test]
    fn report_degenerate_prior() {
        let r = access_structure_report(SecretPrior::new(1.0, 0.0).unwrap()).unwrap();
        assert!(r.verdicts.iter().all(|v| v.holevo_bits.abs() <= 1e-9));
        assert!(r.threshold_3_of_5);
    }

    #[test]
    fn classical_reconstruction_examples() {
        let j = subset(&[1, 2, 3]);
        let state = reduced_state(&encode_classical(Bit::Zero), j).unwrap();
        let r = reconstruct_classical(j, &state, SecretPrior::uniform()).unwrap();
        assert_eq!(r.guess, Bit::Zero);
        assert!((r.success_probability - 1.0).abs() < 1e-9);

        let j = subset(&[4, 5]);
        for s in Bit::BOTH {
            let state = reduced_state(&encode_classical(s), j).unwrap();
            let r = reconstruct_classical(j, &state, SecretPrior::uniform()).unwrap();
            assert!((r.success_probability - 0.5).abs() < 1e-9);
            assert!((r.helstrom_bound - 0.5).abs() < 1e-9);
        }

        let j = ShareSubset::full(5).unwrap();
        let state = DensityMatrix::from_pure(&encode_classical(Bit::One));
        let r = reconstruct_classical(j, &state, SecretPrior::uniform()).unwrap();
        assert_eq!(r.guess, Bit::One);
        assert!((r.success_probability - 1.0).abs() < 1e-9);
    }

    #[test]
    fn classical_reconstruction_dimension_mismatch() {
        let state = DensityMatrix::maximally_mixed(2);
        let err = reconstruct_classical(subset(&[1, 2, 3]), &state, SecretPrior::uniform());
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn forbidden_skewed_prior_matches_helstrom() {
        let j = subset(&[2, 5]);
        let state = reduced_state(&encode_classical(Bit::Zero), j).unwrap();
        let r = reconstruct_classical(j, &state, SecretPrior::new(0.3, 0.7).unwrap()).unwrap();
        assert_eq!(r.guess, Bit::One);
        assert!((r.success_probability - 0.7).abs() < 1e-9);
        assert!((r.helstrom_bound - 0.7).abs() < 1e-9);
    }

    #[test]
    fn quantum_reconstruction_examples() {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let secret = QubitSecret::new(h, h).unwrap();
        let j = subset(&[2, 4, 5]);
        let state = reduced_state(&encode_quantum(&secret), j).unwrap();
        let r = reconstruct_quantum(j, &state, Some(&secret)).unwrap();
        assert!((r.fidelity.unwrap() - 1.0).abs() <= 1e-9);
        assert!(r.recovered.matrix().max_abs_diff(secret_density(&secret).matrix()) <= 1e-9);

        let j = subset(&[1, 2]);
        let state = reduced_state(&encode_quantum(&secret), j).unwrap();
        assert_eq!(reconstruct_quantum(j, &state, None), Err(Error::Unqualified(j)));

        let secret = QubitSecret::new(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)).unwrap();
        let j = ShareSubset::full(5).unwrap();
        let state = DensityMatrix::from_pure(&encode_quantum(&secret));
        let r = reconstruct_quantum(j, &state, Some(&secret)).unwrap();
        assert!((r.fidelity.unwrap() - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn quantum_reconstruction_rejects_wrong_dimension() {
        let state = DensityMatrix::maximally_mixed(2);
        assert!(matches!(
            reconstruct_quantum(subset(&[1, 2, 3]), &state, None),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn correctability_matches_threshold() {
        for j in ShareSubset::all_nonempty(5).unwrap() {
            assert_eq!(erasure_correctable(j).unwrap(), j.len() >= 3, "{j}");
        }
    }
}
