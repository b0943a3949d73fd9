//! Pure states, density matrices and the quantities computed from them:
//! partial traces, von Neumann entropy and trace distance.
//!
//! Participant `i` holds qubit `i` counted from the left of the ket, so in a
//! computational-basis index the first qubit is the most significant bit.

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::linalg::{eigenvalues_hermitian, CMatrix};
use crate::subset::{ShareSubset, MAX_PARTICIPANTS};

/// Norm tolerance for pure states.
pub const NORM_TOL: f64 = 1e-12;
/// Hermiticity and trace tolerance for density matrices.
pub const DENSITY_TOL: f64 = 1e-12;
/// Most negative eigenvalue tolerated in a density matrix.
pub const PSD_TOL: f64 = -1e-10;
/// Eigenvalues below this contribute nothing to the entropy.
pub const ENTROPY_ZERO: f64 = 1e-12;

/// A unit-norm state vector on up to five qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Validates the qubit count, amplitude count and unit norm.
    pub fn new(num_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_qubits(num_qubits)?;
        if amplitudes.len() != 1 << num_qubits {
            return Err(domain(format!(
                "{num_qubits} qubits need {} amplitudes, got {}",
                1 << num_qubits,
                amplitudes.len()
            )));
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(domain("non-finite amplitude"));
        }
        let norm_sqr = norm_sqr(&amplitudes);
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(domain(format!("state norm squared is {norm_sqr}, expected 1")));
        }
        Ok(Self { num_qubits, amplitudes })
    }

    /// Rescales `amplitudes` to unit norm first.
    pub fn normalized(num_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = norm_sqr(&amplitudes).sqrt();
        if !(n.is_finite() && n > 0.0) {
            return Err(domain("cannot normalize a zero or non-finite vector"));
        }
        Self::new(num_qubits, amplitudes.into_iter().map(|z| z / n).collect())
    }

    /// Computational basis state from a bit string such as `"10010"`.
    pub fn basis(bits: &str) -> Result<Self> {
        let n = bits.len();
        check_qubits(n)?;
        let index = usize::from_str_radix(bits, 2)
            .map_err(|_| domain(format!("{bits:?} is not a bit string")))?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Self::new(n, amps)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Amplitude of the basis ket written as a bit string, first qubit leftmost.
    pub fn amplitude(&self, bits: &str) -> Option<Complex64> {
        if bits.len() != self.num_qubits {
            return None;
        }
        let index = usize::from_str_radix(bits, 2).ok()?;
        self.amplitudes.get(index).copied()
    }

    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    pub(crate) fn from_parts_unchecked(num_qubits: usize, amplitudes: Vec<Complex64>) -> Self {
        Self { num_qubits, amplitudes }
    }
}

fn norm_sqr(amps: &[Complex64]) -> f64 {
    amps.iter().map(|z| z.norm_sqr()).sum()
}

fn check_qubits(n: usize) -> Result<()> {
    if (1..=MAX_PARTICIPANTS).contains(&n) {
        Ok(())
    } else {
        Err(domain(format!("qubit count {n} outside 1..={MAX_PARTICIPANTS}")))
    }
}

/// A Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let dim = matrix.dim();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(domain(format!("density matrix dimension {dim} is not a power of two")));
        }
        let dev = matrix.hermitian_deviation();
        if dev > DENSITY_TOL {
            return Err(domain(format!("density matrix not Hermitian (deviation {dev:e})")));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
            return Err(domain(format!("density matrix trace is {tr}, expected 1")));
        }
        let min = eigenvalues_hermitian(&matrix)?
            .last()
            .copied()
            .unwrap_or(0.0);
        if min < PSD_TOL {
            return Err(domain(format!("density matrix has eigenvalue {min:e}")));
        }
        Ok(Self { matrix })
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn from_pure(psi: &PureState) -> Self {
        Self {
            matrix: CMatrix::outer(psi.amplitudes(), psi.amplitudes()),
        }
    }

    /// The maximally mixed state on `num_qubits` qubits.
    pub fn maximally_mixed(num_qubits: usize) -> Self {
        let dim = 1usize << num_qubits;
        Self {
            matrix: CMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    /// Convex combination `weight * self + (1 - weight) * other`.
    pub fn mix(&self, weight: f64, other: &DensityMatrix) -> Result<DensityMatrix> {
        if self.dim() != other.dim() {
            return Err(domain("cannot mix density matrices of different dimension"));
        }
        if !(0.0..=1.0).contains(&weight) {
            return Err(domain(format!("mixing weight {weight} outside [0, 1]")));
        }
        Ok(Self {
            matrix: &self.matrix.scale_real(weight) + &other.matrix.scale_real(1.0 - weight),
        })
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        Self {
            matrix: self.matrix.kron(&other.matrix),
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn num_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        eigenvalues_hermitian(&self.matrix).expect("density matrices are Hermitian")
    }

    /// `⟨φ|ρ|φ⟩` for a pure state of matching dimension.
    pub fn fidelity_with_pure(&self, phi: &[Complex64]) -> Result<f64> {
        if phi.len() != self.dim() {
            return Err(domain("fidelity between states of different dimension"));
        }
        Ok(self.matrix.sandwich(phi, phi).re)
    }

    pub(crate) fn from_matrix_unchecked(matrix: CMatrix) -> Self {
        Self { matrix }
    }
}

/// `Tr_{not keep} |chi⟩⟨phi|`, with the kept qubits ordered ascending.
///
/// Both vectors must have `num_qubits` qubits' worth of amplitudes.
pub fn partial_trace_outer(
    chi: &[Complex64],
    phi: &[Complex64],
    num_qubits: usize,
    keep: ShareSubset,
) -> Result<CMatrix> {
    check_qubits(num_qubits)?;
    if chi.len() != 1 << num_qubits || phi.len() != 1 << num_qubits {
        return Err(domain("vector length does not match the qubit count"));
    }
    if keep.is_empty() {
        return Err(domain("cannot reduce onto an empty set of qubits"));
    }
    if keep.max_member().unwrap_or(0) > num_qubits {
        return Err(domain(format!(
            "subset {keep} names a qubit beyond {num_qubits}"
        )));
    }
    let kept: Vec<usize> = keep.members().collect();
    let traced: Vec<usize> = (1..=num_qubits).filter(|q| !keep.contains(*q)).collect();
    let dk = 1usize << kept.len();
    let dt = 1usize << traced.len();

    let gather = |index: usize, qubits: &[usize]| {
        qubits
            .iter()
            .fold(0usize, |acc, &q| (acc << 1) | ((index >> (num_qubits - q)) & 1))
    };

    // Reshape both vectors into kept x traced blocks.
    let mut a = vec![Complex64::new(0.0, 0.0); dk * dt];
    let mut b = vec![Complex64::new(0.0, 0.0); dk * dt];
    for index in 0..(1usize << num_qubits) {
        let slot = gather(index, &kept) * dt + gather(index, &traced);
        a[slot] = chi[index];
        b[slot] = phi[index];
    }
    Ok(CMatrix::from_fn(dk, |x, y| {
        (0..dt).map(|c| a[x * dt + c] * b[y * dt + c].conj()).sum()
    }))
}

/// Reduced density matrix of `psi` on the qubits in `keep`.
pub fn reduced_state(psi: &PureState, keep: ShareSubset) -> Result<DensityMatrix> {
    let m = partial_trace_outer(psi.amplitudes(), psi.amplitudes(), psi.num_qubits(), keep)?;
    Ok(DensityMatrix::from_matrix_unchecked(m))
}

/// `-Σ λ log2 λ` over the eigenvalues of `rho`, in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    entropy_of_spectrum(&rho.eigenvalues())
}

/// Shannon entropy in bits of a spectrum, skipping values at or below
/// [`ENTROPY_ZERO`].
pub fn entropy_of_spectrum(values: &[f64]) -> f64 {
    let h: f64 = values
        .iter()
        .filter(|&&l| l > ENTROPY_ZERO)
        .map(|&l| -l * l.log2())
        .sum();
    h.max(0.0)
}

/// Binary entropy `H(p)` in bits.
pub fn binary_entropy(p: f64) -> f64 {
    entropy_of_spectrum(&[p, 1.0 - p])
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm(m: &CMatrix) -> Result<f64> {
    Ok(eigenvalues_hermitian(m)?.iter().map(|v| v.abs()).sum())
}

/// `½ ‖rho − sigma‖₁`.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(domain(format!(
            "trace distance between dimensions {} and {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    Ok(0.5 * trace_norm(&(rho.matrix() - sigma.matrix()))?)
}
