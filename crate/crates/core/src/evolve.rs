//! Gate sequences, and replacing negative-time evolution by positive-time evolution.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eigh, expm_i, opnorm, CMatrix, Hermitian};

/// Integer steps scanned by default when looking for a near-recurrence of `e^{iH}`.
pub const DEFAULT_N_MAX: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateStep {
    pub generator: String,
    pub duration: f64,
}

/// `e^{iH_{j₁}t₁} e^{iH_{j₂}t₂} ⋯` with every `tₖ > 0`.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct GateSequence {
    steps: Vec<GateStep>,
    /// Operator-norm distance to the last target evaluated.
    pub achieved_error: Option<f64>,
}

impl GateSequence {
    pub fn new(steps: Vec<GateStep>) -> Result<Self> {
        if let Some(bad) = steps.iter().find(|s| !(s.duration > 0.0 && s.duration.is_finite())) {
            return Err(Error::NonPositiveDuration(bad.duration));
        }
        Ok(Self { steps, achieved_error: None })
    }

    pub fn steps(&self) -> &[GateStep] {
        &self.steps
    }

    /// `‖target − U‖` for the sequence unitary `U`; also stored in `achieved_error`.
    pub fn evaluate(&mut self, gens: &BTreeMap<String, Hermitian>, target: &CMatrix) -> Result<f64> {
        let u = sequence_unitary(self, gens)?;
        crate::error::expect_dim(target.dim(), u.dim())?;
        let err = opnorm(&(target - &u));
        self.achieved_error = Some(err);
        Ok(err)
    }
}

pub fn sequence_unitary(seq: &GateSequence, gens: &BTreeMap<String, Hermitian>) -> Result<CMatrix> {
    let dim = gens
        .values()
        .next()
        .map(|h| h.dim())
        .ok_or_else(|| Error::InvalidArgument("no generators given".into()))?;
    let mut u = CMatrix::identity(dim);
    for step in &seq.steps {
        let h = gens.get(&step.generator).ok_or_else(|| Error::UnknownGenerator(step.generator.clone()))?;
        crate::error::expect_dim(h.dim(), dim)?;
        u = &u * &expm_i(h, step.duration);
    }
    Ok(u)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Replacement {
    /// Positive time with `‖e^{iHτ} − e^{iHt}‖ < ε`.
    pub t: f64,
    /// `t − τ`
    pub n: u64,
    /// `‖I − e^{iHn}‖`, which equals `‖e^{iHτ} − e^{iHt}‖`.
    pub error: f64,
}

/// Finds `t = n + τ > 0`, `n` an integer, with `‖I − e^{iHn}‖ < ε` and `t ≤ t_max`.
///
/// The norm is `maxₖ |1 − e^{iλₖn}| = maxₖ 2|sin(λₖn/2)|`, so the scan only touches
/// eigenphases. It starts at the smallest `n` giving `t > 0`. Returns `None` when no
/// `n` within budget works; a near-recurrence always exists, but may lie far out.
pub fn positive_time_replacement(h: &Hermitian, tau: f64, epsilon: f64, t_max: f64) -> Result<Option<Replacement>> {
    if !(tau < 0.0 && tau.is_finite()) {
        return Err(Error::InvalidArgument(format!("tau must be negative, got {tau}")));
    }
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {epsilon}")));
    }
    if t_max.is_nan() || t_max <= 0.0 {
        return Err(Error::InvalidArgument(format!("t_max must be positive, got {t_max}")));
    }
    let lam = eigh(h).values;
    let n_start = tau.abs().floor() as u64 + 1;
    let n_max = (t_max - tau + 1e-9).floor() as u64;
    for n in n_start..=n_max {
        let err = recurrence_error(&lam, n);
        if err < epsilon {
            return Ok(Some(Replacement { t: n as f64 + tau, n, error: err }));
        }
    }
    Ok(None)
}

/// `maxₖ |1 − e^{iλₖn}|`
pub fn recurrence_error(eigenvalues: &[f64], n: u64) -> f64 {
    eigenvalues
        .iter()
        .map(|&l| 2.0 * ((l * n as f64).rem_euclid(TAU) / 2.0).sin().abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::tests::assert_close;
    use crate::random::{gaussian_hermitian, rng_from_seed};
    use crate::tgate::{random_t_commuting_unitary, swap};
    use std::f64::consts::PI;

    fn gens(pairs: &[(&str, Hermitian)]) -> BTreeMap<String, Hermitian> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn sequence_examples() {
        let h = gaussian_hermitian(4, &mut rng_from_seed(71));
        let g = gens(&[("H", h.clone())]);
        assert_close(&sequence_unitary(&GateSequence::new(vec![]).unwrap(), &g).unwrap(), &CMatrix::identity(4), 0.0);
        let seq = GateSequence::new(vec![GateStep { generator: "H".into(), duration: 0.7 }]).unwrap();
        assert_close(&sequence_unitary(&seq, &g).unwrap(), &expm_i(&h, 0.7), 1e-15);
        let missing = GateSequence::new(vec![GateStep { generator: "K".into(), duration: 1.0 }]).unwrap();
        assert!(matches!(sequence_unitary(&missing, &g), Err(Error::UnknownGenerator(_))));
        assert!(matches!(
            GateSequence::new(vec![GateStep { generator: "H".into(), duration: 0.0 }]),
            Err(Error::NonPositiveDuration(_))
        ));
    }

    #[test]
    fn conjugation_identity() {
        let mut rng = rng_from_seed(72);
        for _ in 0..50 {
            let h = gaussian_hermitian(4, &mut rng);
            let p = random_t_commuting_unitary(&mut rng);
            let tht = h.conjugated_by(&swap());
            let steps = vec![
                GateStep { generator: "A".into(), duration: 0.3 },
                GateStep { generator: "B".into(), duration: 1.1 },
                GateStep { generator: "A".into(), duration: 0.45 },
            ];
            let mut seq = GateSequence::new(steps).unwrap();
            let plain = sequence_unitary(&seq, &gens(&[("A", h.clone()), ("B", tht.clone())])).unwrap();
            let conj = gens(&[("A", h.conjugated_by(&p)), ("B", tht.conjugated_by(&p))]);
            let conjugated = sequence_unitary(&seq, &conj).unwrap();
            assert_close(&conjugated, &p.conjugate(&plain), 1e-10);
            assert!(seq.evaluate(&conj, &p.conjugate(&plain)).unwrap() < 1e-10);
            assert!(seq.achieved_error.is_some());
        }
    }

    #[test]
    fn replacement_examples() {
        let h = Hermitian::from_real_diag(&[0.0, PI]);
        let r = positive_time_replacement(&h, -1.0, 1e-6, 100.0).unwrap().unwrap();
        assert_eq!((r.n, r.t), (2, 1.0));

        let h = Hermitian::identity(4).scale(2.0 * PI);
        let r = positive_time_replacement(&h, -0.5, 1e-9, 100.0).unwrap().unwrap();
        assert_eq!((r.n, r.t), (1, 0.5));

        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        let h = Hermitian::from_real_diag(&[0.0, 2.0 * PI * golden]);
        let r = positive_time_replacement(&h, -1.0, 1e-3, 1e6).unwrap().unwrap();
        let direct = opnorm(&(&expm_i(&h, -1.0) - &expm_i(&h, r.t)));
        assert!(direct < 1e-3);
        assert!((direct - r.error).abs() < 1e-10);
    }

    #[test]
    fn replacement_rejects_bad_arguments() {
        let h = Hermitian::identity(2);
        assert!(positive_time_replacement(&h, 0.5, 1e-3, 10.0).is_err());
        assert!(positive_time_replacement(&h, -0.5, 0.0, 10.0).is_err());
        assert!(positive_time_replacement(&h, -0.5, 1e-3, -1.0).is_err());
    }

    #[test]
    fn scan_norm_matches_direct_norm() {
        let mut rng = rng_from_seed(73);
        for k in 1..40u64 {
            let h = gaussian_hermitian(4, &mut rng);
            let tau = -0.13 * k as f64;
            let n = 3 * k + 7;
            let direct = opnorm(&(&expm_i(&h, tau) - &expm_i(&h, n as f64 + tau)));
            assert!((direct - recurrence_error(&eigh(&h).values, n)).abs() < 1e-10);
        }
    }
}
