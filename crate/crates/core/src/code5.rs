//! The five-qubit `[[5,1,3]]` code: its two code words, Pauli operators on
//! five qubits, and an exhaustive Knill-Laflamme distance check.

use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::quantum::{PureState, NORM_TOL};

/// Number of physical qubits (and participants).
pub const CODE_QUBITS: usize = 5;

/// Amplitude modulus shared by every term of both code words.
pub const NORMALIZATION: f64 = 0.25;

/// Knill-Laflamme deviations above this count as violations.
pub const KL_TOL: f64 = 1e-9;

/// Terms of the logical `|0⟩`, first qubit leftmost.
const ZERO_TERMS: [(&str, i8); 16] = [
    ("00000", 1),
    ("10010", 1),
    ("01001", 1),
    ("10100", 1),
    ("01010", 1),
    ("11011", -1),
    ("00110", -1),
    ("11000", -1),
    ("11101", -1),
    ("00011", -1),
    ("11110", -1),
    ("01111", -1),
    ("10001", -1),
    ("01100", -1),
    ("10111", -1),
    ("00101", 1),
];

/// Terms of the logical `|1⟩`.
const ONE_TERMS: [(&str, i8); 16] = [
    ("11111", 1),
    ("01101", 1),
    ("10110", 1),
    ("01011", 1),
    ("10101", 1),
    ("00100", -1),
    ("11001", -1),
    ("00111", -1),
    ("00010", -1),
    ("11100", -1),
    ("00001", -1),
    ("10000", -1),
    ("01110", -1),
    ("10011", -1),
    ("01000", -1),
    ("11010", 1),
];

/// The signed basis strings of both code words.
#[derive(Debug, Clone, Copy)]
pub struct CodeTable {
    pub plus_terms_0: &'static [(&'static str, i8); 16],
    pub plus_terms_1: &'static [(&'static str, i8); 16],
    pub normalization: f64,
}

pub const CODE_TABLE: CodeTable = CodeTable {
    plus_terms_0: &ZERO_TERMS,
    plus_terms_1: &ONE_TERMS,
    normalization: NORMALIZATION,
};

impl CodeTable {
    pub fn terms(&self, s: Bit) -> &'static [(&'static str, i8); 16] {
        match s {
            Bit::Zero => self.plus_terms_0,
            Bit::One => self.plus_terms_1,
        }
    }
}

/// A classical secret bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "u8")]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    pub const BOTH: [Bit; 2] = [Bit::Zero, Bit::One];
}

impl From<Bit> for u8 {
    fn from(b: Bit) -> u8 {
        match b {
            Bit::Zero => 0,
            Bit::One => 1,
        }
    }
}

impl TryFrom<u8> for Bit {
    type Error = Error;

    fn try_from(v: u8) -> Result<Bit> {
        match v {
            0 => Ok(Bit::Zero),
            1 => Ok(Bit::One),
            _ => Err(domain(format!("{v} is not a bit"))),
        }
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(*self))
    }
}

static CODEWORDS: LazyLock<[PureState; 2]> =
    LazyLock::new(|| [build_codeword(Bit::Zero), build_codeword(Bit::One)]);

fn build_codeword(s: Bit) -> PureState {
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << CODE_QUBITS];
    for &(bits, sign) in CODE_TABLE.terms(s) {
        let index = usize::from_str_radix(bits, 2).expect("table holds bit strings");
        amps[index] = Complex64::new(f64::from(sign) * CODE_TABLE.normalization, 0.0);
    }
    PureState::new(CODE_QUBITS, amps).expect("code words are unit norm")
}

/// The code word `|ψ(s)⟩`.
pub fn encode_classical(s: Bit) -> PureState {
    codeword(s).clone()
}

pub(crate) fn codeword(s: Bit) -> &'static PureState {
    &CODEWORDS[u8::from(s) as usize]
}

/// A single-qubit secret `α0|0⟩ + α1|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitSecret {
    alpha0: Complex64,
    alpha1: Complex64,
}

impl QubitSecret {
    pub fn new(alpha0: Complex64, alpha1: Complex64) -> Result<Self> {
        let n = alpha0.norm_sqr() + alpha1.norm_sqr();
        if !n.is_finite() || (n - 1.0).abs() > NORM_TOL {
            return Err(domain(format!("qubit secret has norm squared {n}, expected 1")));
        }
        Ok(Self { alpha0, alpha1 })
    }

    pub fn alpha0(&self) -> Complex64 {
        self.alpha0
    }

    pub fn alpha1(&self) -> Complex64 {
        self.alpha1
    }

    pub fn amplitudes(&self) -> [Complex64; 2] {
        [self.alpha0, self.alpha1]
    }
}

/// `α0|ψ(0)⟩ + α1|ψ(1)⟩`.
pub fn encode_quantum(secret: &QubitSecret) -> PureState {
    let zero = codeword(Bit::Zero).amplitudes();
    let one = codeword(Bit::One).amplitudes();
    let amps = zero
        .iter()
        .zip(one)
        .map(|(a, b)| secret.alpha0 * a + secret.alpha1 * b)
        .collect();
    PureState::from_parts_unchecked(CODE_QUBITS, amps)
}

/// A single-qubit Pauli factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    pub const NON_IDENTITY: [PauliLetter; 3] = [PauliLetter::X, PauliLetter::Y, PauliLetter::Z];

    fn as_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }
}

/// A tensor product of Pauli letters, one per qubit, leftmost letter on qubit 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    letters: Vec<PauliLetter>,
}

impl PauliOperator {
    pub fn new(letters: Vec<PauliLetter>) -> Result<Self> {
        if letters.is_empty() || letters.len() > CODE_QUBITS {
            return Err(domain(format!(
                "Pauli operator needs 1..={CODE_QUBITS} letters, got {}",
                letters.len()
            )));
        }
        Ok(Self { letters })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(vec![PauliLetter::I; n])
    }

    pub fn letters(&self) -> &[PauliLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&l| l != PauliLetter::I).count()
    }

    /// Every operator on `n` qubits with exactly `weight` non-identity letters,
    /// in lexicographic order of support then letters.
    pub fn all_of_weight(n: usize, weight: usize) -> Vec<PauliOperator> {
        let mut out = Vec::new();
        for support in 0u32..(1 << n) {
            if support.count_ones() as usize != weight {
                continue;
            }
            let positions: Vec<usize> = (0..n).filter(|&q| support & (1 << (n - 1 - q)) != 0).collect();
            for mut code in 0..3usize.pow(weight as u32) {
                let mut letters = vec![PauliLetter::I; n];
                for &q in positions.iter().rev() {
                    letters[q] = PauliLetter::NON_IDENTITY[code % 3];
                    code /= 3;
                }
                out.push(PauliOperator { letters });
            }
        }
        out
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.letters.iter().try_for_each(|l| write!(f, "{}", l.as_char()))
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOperator({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .trim()
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'I' => Ok(PauliLetter::I),
                'X' => Ok(PauliLetter::X),
                'Y' => Ok(PauliLetter::Y),
                'Z' => Ok(PauliLetter::Z),
                other => Err(Error::Parse(format!("{other:?} is not a Pauli letter"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(letters).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Applies `p` to `psi`. `Y` acts as `iXZ`.
pub fn apply_pauli(p: &PauliOperator, psi: &PureState) -> Result<PureState> {
    let n = psi.num_qubits();
    if p.len() != n {
        return Err(domain(format!(
            "{}-letter Pauli operator applied to a {n}-qubit state",
            p.len()
        )));
    }
    let mut flip = 0usize;
    let mut phase_mask = 0usize;
    let mut y_count = 0u32;
    for (q, &letter) in p.letters().iter().enumerate() {
        let bit = 1 << (n - 1 - q);
        match letter {
            PauliLetter::I => {}
            PauliLetter::X => flip |= bit,
            PauliLetter::Z => phase_mask |= bit,
            PauliLetter::Y => {
                flip |= bit;
                phase_mask |= bit;
                y_count += 1;
            }
        }
    }
    let global = Complex64::i().powu(y_count);
    let mut out = vec![Complex64::new(0.0, 0.0); psi.amplitudes().len()];
    for (index, &amp) in psi.amplitudes().iter().enumerate() {
        let sign = if (index & phase_mask).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
        out[index ^ flip] = amp * global * sign;
    }
    Ok(PureState::from_parts_unchecked(n, out))
}

/// Knill-Laflamme quantities of one operator: `|⟨ψ0|E|ψ1⟩|` and
/// `|⟨ψ0|E|ψ0⟩ − ⟨ψ1|E|ψ1⟩|`.
pub fn kl_deviations(p: &PauliOperator) -> Result<(f64, f64)> {
    let zero = codeword(Bit::Zero);
    let one = codeword(Bit::One);
    let e_zero = apply_pauli(p, zero)?;
    let e_one = apply_pauli(p, one)?;
    let off = zero.inner(&e_one).norm();
    let diag = (zero.inner(&e_zero) - one.inner(&e_one)).norm();
    Ok((off, diag))
}

/// Per-weight summary of the Knill-Laflamme check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightSummary {
    pub weight: usize,
    pub operators: usize,
    pub max_off_diagonal: f64,
    pub max_diagonal_difference: f64,
    pub violations: usize,
    /// First violating operator in enumeration order.
    pub witness: Option<PauliOperator>,
}

impl WeightSummary {
    pub fn passes(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceReport {
    pub max_weight: usize,
    pub tolerance: f64,
    pub weights: Vec<WeightSummary>,
    /// Smallest weight with a violation, if any was found up to `max_weight`.
    pub distance: Option<usize>,
}

/// Checks `⟨ψi|E|ψj⟩ = c_E δij` for every Pauli `E` of weight `1..=max_weight`.
pub fn verify_distance(max_weight: usize) -> Result<DistanceReport> {
    if !(1..=CODE_QUBITS).contains(&max_weight) {
        return Err(domain(format!(
            "max weight {max_weight} outside 1..={CODE_QUBITS}"
        )));
    }
    let weights = (1..=max_weight)
        .map(summarize_weight)
        .collect::<Result<Vec<_>>>()?;
    let distance = weights.iter().find(|s| !s.passes()).map(|s| s.weight);
    Ok(DistanceReport {
        max_weight,
        tolerance: KL_TOL,
        weights,
        distance,
    })
}

fn summarize_weight(weight: usize) -> Result<WeightSummary> {
    let ops = PauliOperator::all_of_weight(CODE_QUBITS, weight);
    let devs = ops
        .par_iter()
        .map(kl_deviations)
        .collect::<Result<Vec<_>>>()?;
    let max_off = devs.iter().map(|d| d.0).fold(0.0, f64::max);
    let max_diag = devs.iter().map(|d| d.1).fold(0.0, f64::max);
    let violating: Vec<usize> = devs
        .iter()
        .enumerate()
        .filter(|(_, (off, diag))| *off > KL_TOL || *diag > KL_TOL)
        .map(|(i, _)| i)
        .collect();
    Ok(WeightSummary {
        weight,
        operators: ops.len(),
        max_off_diagonal: max_off,
        max_diagonal_difference: max_diag,
        violations: violating.len(),
        witness: violating.first().map(|&i| ops[i].clone()),
    })
}
