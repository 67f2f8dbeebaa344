//! Generalized amplitude damping and its application to multi-qubit states.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, lift, pauli, ComplexMatrix, QubitLayout};
use crate::tol::{COMPLETENESS_TOL, PSD_TOL, ZERO_TRACE};

/// Channel strength `p` and damping `gamma`, both in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    p: f64,
    gamma: f64,
}

impl ChannelParams {
    pub fn new(p: f64, gamma: f64) -> Result<Self> {
        for (name, value) in [("p", p), ("gamma", gamma)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::ParameterOutOfRange { name, value });
            }
        }
        Ok(Self { p, gamma })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

#[derive(Debug, Clone)]
pub struct KrausSet {
    elements: Vec<ComplexMatrix>,
    trace_preserving: bool,
}

impl KrausSet {
    pub fn new(elements: Vec<ComplexMatrix>) -> Result<Self> {
        let shape = elements.first().ok_or(Error::InvalidKrausSet)?.shape();
        if shape.0 != shape.1 || elements.iter().any(|e| e.shape() != shape) {
            return Err(Error::InvalidKrausSet);
        }
        let mut set = Self {
            elements,
            trace_preserving: false,
        };
        set.trace_preserving = completeness_defect(&set) < COMPLETENESS_TOL;
        Ok(set)
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn trace_preserving(&self) -> bool {
        self.trace_preserving
    }

    pub fn dim(&self) -> usize {
        self.elements[0].rows()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KrausVariant {
    /// Completely positive, trace-preserving generalized amplitude damping.
    Standard,
    /// The four operators transcribed exactly as published; not trace preserving.
    PaperLiteral,
}

impl KrausVariant {
    pub fn build(self, params: ChannelParams) -> KrausSet {
        match self {
            KrausVariant::Standard => gad_standard(params),
            KrausVariant::PaperLiteral => gad_paper_literal(params),
        }
    }

    /// Whether outputs must be renormalized to stay physical states.
    pub fn needs_renormalization(self) -> bool {
        matches!(self, KrausVariant::PaperLiteral)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ApplicationMode {
    /// Each qubit draws its own Kraus index (4^k terms).
    Independent,
    /// One Kraus index shared by all qubits.
    Correlated,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Standard GAD set; `p` weights the decay towards `|0⟩`.
pub fn gad_standard(params: ChannelParams) -> KrausSet {
    let ChannelParams { p, gamma } = params;
    let (sp, sq) = (p.sqrt(), (1.0 - p).sqrt());
    let keep = (1.0 - gamma).sqrt();
    let decay = gamma.sqrt();
    let z = c(0.0, 0.0);
    let elements = vec![
        ComplexMatrix::diag(&[c(sp, 0.0), c(sp * keep, 0.0)]),
        ComplexMatrix::from_rows(&[&[z, c(sp * decay, 0.0)], &[z, z]]).unwrap(),
        ComplexMatrix::diag(&[c(sq * keep, 0.0), c(sq, 0.0)]),
        ComplexMatrix::from_rows(&[&[z, z], &[c(sq * decay, 0.0), z]]).unwrap(),
    ];
    KrausSet::new(elements).expect("four 2x2 elements")
}

/// The published operators, built literally from Pauli matrices:
///
/// ```text
/// E0 = √p/2 {(1+√(1−γ)) I + (1−√(1−γ)) σz}     E1 = √p (σx + iσy)
/// E2 = √(1−p)/2 {(1+√(1−γ)) I − (1−√(1−γ)) σz}  E3 = √(1−p) √γ (σx − σy)
/// ```
pub fn gad_paper_literal(params: ChannelParams) -> KrausSet {
    let ChannelParams { p, gamma } = params;
    let (sp, sq) = (p.sqrt(), (1.0 - p).sqrt());
    let keep = (1.0 - gamma).sqrt();
    let id = ComplexMatrix::identity(2);
    let (x, y, z) = (pauli::x(), pauli::y(), pauli::z());

    let e0 = id
        .scale_real(1.0 + keep)
        .add(&z.scale_real(1.0 - keep))
        .unwrap()
        .scale_real(sp / 2.0);
    let e1 = x.add(&y.scale(Complex64::i())).unwrap().scale_real(sp);
    let e2 = id
        .scale_real(1.0 + keep)
        .sub(&z.scale_real(1.0 - keep))
        .unwrap()
        .scale_real(sq / 2.0);
    let e3 = x.sub(&y).unwrap().scale_real(sq * gamma.sqrt());
    KrausSet::new(vec![e0, e1, e2, e3]).expect("four 2x2 elements")
}

/// `‖Σ E†E − I‖_F`.
pub fn completeness_defect(kraus: &KrausSet) -> f64 {
    let n = kraus.dim();
    let sum = kraus
        .elements
        .iter()
        .map(|e| e.dagger().matmul(e).unwrap())
        .fold(ComplexMatrix::zeros(n, n), |acc, m| acc.add(&m).unwrap());
    sum.sub(&ComplexMatrix::identity(n)).unwrap().frobenius_norm()
}

/// Joint Kraus operators acting on `k` qubits at once, in the order of `qubits`.
fn joint_elements(kraus: &KrausSet, k: usize, mode: ApplicationMode) -> Vec<ComplexMatrix> {
    let single = kraus.elements();
    match mode {
        ApplicationMode::Correlated => single
            .iter()
            .map(|e| (1..k).fold(e.clone(), |acc, _| acc.tensor(e)))
            .collect(),
        ApplicationMode::Independent => {
            let mut ops = vec![ComplexMatrix::identity(1)];
            for _ in 0..k {
                ops = ops
                    .iter()
                    .flat_map(|acc| single.iter().map(move |e| acc.tensor(e)))
                    .collect();
            }
            ops
        }
    }
}

/// Sends `qubits` of `rho` through the channel.
///
/// `renormalize` divides the result by its trace; it is what makes the
/// non-trace-preserving literal variant produce states.
pub fn apply_channel(
    rho: &ComplexMatrix,
    layout: QubitLayout,
    kraus: &KrausSet,
    qubits: &[usize],
    mode: ApplicationMode,
    renormalize: bool,
) -> Result<ComplexMatrix> {
    layout.check_operator(rho)?;
    layout.check_qubits(qubits)?;
    if kraus.dim() != 2 {
        return Err(Error::InvalidKrausSet);
    }
    let min_eig = hermitian_eigenvalues(rho)?.first().copied().unwrap_or(0.0);
    if min_eig < -PSD_TOL {
        return Err(Error::NotPositive(min_eig));
    }
    if qubits.is_empty() {
        return Ok(rho.clone());
    }

    let d = layout.dim();
    let mut out = ComplexMatrix::zeros(d, d);
    for op in joint_elements(kraus, qubits.len(), mode) {
        let full = lift(&op, layout, qubits)?;
        out = out.add(&full.sandwich(rho)?)?;
    }

    if renormalize {
        let tr = out.trace().re;
        if tr <= ZERO_TRACE {
            return Err(Error::ZeroTrace(tr));
        }
        out = out.scale_real(1.0 / tr);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{density, ghz, GhzParams};

    fn params(p: f64, g: f64) -> ChannelParams {
        ChannelParams::new(p, g).unwrap()
    }

    fn sample_qubit() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[&[c(0.3, 0.0), c(0.2, -0.1)], &[c(0.2, 0.1), c(0.7, 0.0)]]).unwrap()
    }

    #[test]
    fn parameter_range() {
        assert!(ChannelParams::new(-0.1, 0.5).is_err());
        assert!(matches!(
            ChannelParams::new(0.5, 1.5),
            Err(Error::ParameterOutOfRange { name: "gamma", .. })
        ));
    }

    #[test]
    fn standard_no_damping_is_identity() {
        let l = QubitLayout::new(1).unwrap();
        for p in [0.0, 0.3, 1.0] {
            let k = gad_standard(params(p, 0.0));
            assert!(k.trace_preserving());
            assert_eq!(k.elements()[1].frobenius_norm(), 0.0);
            assert_eq!(k.elements()[3].frobenius_norm(), 0.0);
            let out = apply_channel(&sample_qubit(), l, &k, &[0], ApplicationMode::Independent, false).unwrap();
            assert!(out.max_abs_diff(&sample_qubit()).unwrap() < 1e-12);
        }
    }

    #[test]
    fn standard_full_decay_to_ground() {
        let l = QubitLayout::new(1).unwrap();
        let k = gad_standard(params(1.0, 1.0));
        let out = apply_channel(&sample_qubit(), l, &k, &[0], ApplicationMode::Independent, false).unwrap();
        let ground = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]).unwrap();
        assert!(out.max_abs_diff(&ground).unwrap() < 1e-15);
    }

    #[test]
    fn completeness_defects() {
        assert!(completeness_defect(&gad_standard(params(0.3, 0.5))) < 1e-12);
        assert!(completeness_defect(&gad_standard(params(0.7, 0.4))) < 1e-12);
        // E1 = 2|0⟩⟨1| makes ⟨1|ΣE†E|1⟩ = 1 + 4 at p=1, γ=0: defect exactly 4.
        let d = completeness_defect(&gad_paper_literal(params(1.0, 0.0)));
        assert!((d - 4.0).abs() < 1e-12, "{d}");
        assert!(completeness_defect(&gad_paper_literal(params(0.0, 0.0))) < 1e-15);
    }

    #[test]
    fn paper_literal_elements() {
        let k = gad_paper_literal(params(0.0, 0.0));
        assert!(k.trace_preserving());
        let norms: Vec<f64> = k.elements().iter().map(ComplexMatrix::frobenius_norm).collect();
        assert_eq!(norms[0], 0.0);
        assert_eq!(norms[1], 0.0);
        assert_eq!(k.elements()[2], ComplexMatrix::identity(2));
        assert_eq!(norms[3], 0.0);

        let k = gad_paper_literal(params(1.0, 0.0));
        assert!(!k.trace_preserving());
        assert!(k.elements()[0].max_abs_diff(&ComplexMatrix::identity(2)).unwrap() < 1e-15);
        let raise = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]).unwrap();
        assert!(k.elements()[1].max_abs_diff(&raise).unwrap() < 1e-15);

        assert!(!gad_paper_literal(params(0.5, 0.5)).trace_preserving());
    }

    #[test]
    fn independent_full_decay_of_ghz() {
        let l = QubitLayout::new(3).unwrap();
        let rho = density(&ghz(&GhzParams::maximal())).unwrap();
        let k = gad_standard(params(1.0, 1.0));
        let out = apply_channel(&rho, l, &k, &[0, 1, 2], ApplicationMode::Independent, false).unwrap();
        let mut ground = vec![c(0.0, 0.0); 8];
        ground[0] = c(1.0, 0.0);
        assert!(out.max_abs_diff(&ComplexMatrix::diag(&ground)).unwrap() < 1e-14);
    }

    #[test]
    fn independent_equals_sequential() {
        let l = QubitLayout::new(3).unwrap();
        let rho = density(&ghz(&GhzParams::real(0.6, 0.8).unwrap())).unwrap();
        let k = gad_standard(params(0.35, 0.6));
        let joint = apply_channel(&rho, l, &k, &[0, 1, 2], ApplicationMode::Independent, false).unwrap();
        for order in [[0, 1, 2], [2, 0, 1], [1, 2, 0]] {
            let mut seq = rho.clone();
            for q in order {
                seq = apply_channel(&seq, l, &k, &[q], ApplicationMode::Independent, false).unwrap();
            }
            assert!(joint.max_abs_diff(&seq).unwrap() < 1e-12);
        }
    }

    #[test]
    fn correlated_uses_shared_index() {
        let l = QubitLayout::new(2).unwrap();
        let rho = ComplexMatrix::identity(4).scale_real(0.25);
        let k = gad_standard(params(0.5, 0.5));
        let out = apply_channel(&rho, l, &k, &[0, 1], ApplicationMode::Correlated, false).unwrap();
        let expected = k
            .elements()
            .iter()
            .map(|e| e.tensor(e).sandwich(&rho).unwrap())
            .reduce(|a, b| a.add(&b).unwrap())
            .unwrap();
        assert!(out.max_abs_diff(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn renormalization_and_errors() {
        let l = QubitLayout::new(1).unwrap();
        let k = gad_paper_literal(params(0.5, 0.5));
        let out = apply_channel(&sample_qubit(), l, &k, &[0], ApplicationMode::Independent, true).unwrap();
        assert!((out.trace().re - 1.0).abs() < 1e-12);

        let zero = KrausSet::new(vec![ComplexMatrix::zeros(2, 2)]).unwrap();
        assert!(matches!(
            apply_channel(&sample_qubit(), l, &zero, &[0], ApplicationMode::Independent, true),
            Err(Error::ZeroTrace(_))
        ));

        let not_psd = ComplexMatrix::from_real_rows(&[&[1.5, 0.0], &[0.0, -0.5]]).unwrap();
        let std = gad_standard(params(0.5, 0.5));
        assert!(matches!(
            apply_channel(&not_psd, l, &std, &[0], ApplicationMode::Independent, false),
            Err(Error::NotPositive(_))
        ));
        assert!(apply_channel(&sample_qubit(), l, &std, &[1], ApplicationMode::Independent, false).is_err());
    }
}
