//! Monte Carlo estimates of the two top Lyapunov exponents of the cocycle.
//!
//! Each trajectory samples a path, multiplies a vector pair by `ᵗM_{γ_k}`
//! (so that after `n` steps it holds `ᵗA_n` applied to the start pair, whose
//! growth rates are those of `A_n`), and every `renorm_period` steps records
//! the log of the leading norm and of the spanned area before
//! re-orthonormalizing. `θ₁` comes from the first vector, `θ₁ + θ₂` from the
//! area (the second exterior power).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{dot, mat_t_vec, norm2, IntMatrix};

use super::{sample_path, PathMeasure, SAdicGraph};

/// Steps multiplied exactly before switching to floating point.
const WARM_UP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LyapunovParams {
    pub steps: usize,
    pub trajectories: usize,
    pub seed: u64,
    pub renorm_period: usize,
}

impl Default for LyapunovParams {
    fn default() -> Self {
        LyapunovParams {
            steps: 4096,
            trajectories: 64,
            seed: 1,
            renorm_period: 8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryValues {
    pub index: usize,
    pub theta1: f64,
    pub theta2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LyapunovEstimate {
    pub theta1: f64,
    pub theta2: f64,
    pub stderr1: f64,
    pub stderr2: f64,
    pub trajectories: usize,
    pub steps: usize,
    pub renorm_period: usize,
    pub seed: u64,
    /// Finite graph with invertible edge matrices.
    pub log_integrability: bool,
    pub per_trajectory: Vec<TrajectoryValues>,
}

/// Estimates `θ₁ ≥ θ₂` by averaging `trajectories` independent runs.
///
/// Trajectory `i` draws from a ChaCha8 stream `(seed, i)`, so the result is
/// reproducible bit for bit and independent of thread scheduling.
pub fn lyapunov(
    graph: &SAdicGraph,
    measure: &PathMeasure,
    params: LyapunovParams,
) -> Result<LyapunovEstimate> {
    if params.steps == 0 || params.trajectories == 0 || params.renorm_period == 0 {
        return Err(Error::InvalidParameter(
            "steps, trajectories and renorm_period must be positive".into(),
        ));
    }
    let d = graph.alphabet().len();
    if d < 2 {
        return Err(Error::InvalidParameter(
            "two exponents need an alphabet of at least two letters".into(),
        ));
    }
    measure.validate(graph)?;
    let incidences: Vec<IntMatrix> = graph
        .edges()
        .iter()
        .map(|e| e.substitution.incidence())
        .collect();
    for (e, m) in incidences.iter().enumerate() {
        if m.determinant()? == 0.into() {
            return Err(Error::NotInvertible(graph.edges()[e].id.clone()));
        }
    }
    let floats: Vec<Vec<Vec<f64>>> = incidences.iter().map(IntMatrix::to_f64).collect();

    let per_trajectory: Vec<TrajectoryValues> = (0..params.trajectories)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
            rng.set_stream(i as u64);
            trajectory(i, &incidences, &floats, measure, &mut rng, params)
        })
        .collect::<Result<_>>()?;

    let k = per_trajectory.len() as f64;
    let (theta1, stderr1) = mean_stderr(per_trajectory.iter().map(|t| t.theta1), k);
    let (theta2, stderr2) = mean_stderr(per_trajectory.iter().map(|t| t.theta2), k);
    Ok(LyapunovEstimate {
        theta1,
        theta2,
        stderr1,
        stderr2,
        trajectories: params.trajectories,
        steps: params.steps,
        renorm_period: params.renorm_period,
        seed: params.seed,
        log_integrability: true,
        per_trajectory,
    })
}

fn mean_stderr(xs: impl Iterator<Item = f64> + Clone, k: f64) -> (f64, f64) {
    let mean = xs.clone().sum::<f64>() / k;
    if k < 2.0 {
        return (mean, f64::NAN);
    }
    let var = xs.map(|x| (x - mean) * (x - mean)).sum::<f64>() / (k - 1.0);
    (mean, (var / k).sqrt())
}

fn trajectory(
    index: usize,
    incidences: &[IntMatrix],
    floats: &[Vec<Vec<f64>>],
    measure: &PathMeasure,
    rng: &mut ChaCha8Rng,
    params: LyapunovParams,
) -> Result<TrajectoryValues> {
    let d = incidences[0].rows();
    let path = sample_path(measure, rng, params.steps)?;
    let mut u: Vec<f64> = (0..d).map(|_| rng.gen_range(0.5..1.5)).collect();
    let mut v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let (mut log_norm, mut log_area) = (0.0, 0.0);
    renormalize(&mut u, &mut v, &mut log_norm, &mut log_area);
    let (mut log_norm, mut log_area) = (0.0, 0.0);

    // Exact warm-up: W = ᵗ(M_{γ_0} ⋯ M_{γ_{w-1}}).
    let w = WARM_UP.min(params.steps);
    let mut prod = IntMatrix::identity(d);
    for &e in &path[..w] {
        prod = prod.mul(&incidences[e])?;
    }
    let shift = prod.max_bits().saturating_sub(60);
    let wt = prod.to_f64_scaled(shift);
    u = mat_t_vec(&wt, &u);
    v = mat_t_vec(&wt, &v);
    let scale = shift as f64 * std::f64::consts::LN_2;
    renormalize(&mut u, &mut v, &mut log_norm, &mut log_area);
    log_norm += scale;
    log_area += 2.0 * scale;

    for (k, &e) in path[w..].iter().enumerate() {
        u = mat_t_vec(&floats[e], &u);
        v = mat_t_vec(&floats[e], &v);
        if (k + 1) % params.renorm_period == 0 || w + k + 1 == params.steps {
            renormalize(&mut u, &mut v, &mut log_norm, &mut log_area);
        }
    }
    let n = params.steps as f64;
    let theta1 = log_norm / n;
    let theta2 = (log_area - log_norm) / n;
    Ok(TrajectoryValues {
        index,
        theta1,
        theta2,
    })
}

/// Gram-Schmidt on `(u, v)`, accumulating `ln ‖u‖` and `ln area(u, v)`.
fn renormalize(u: &mut Vec<f64>, v: &mut Vec<f64>, log_norm: &mut f64, log_area: &mut f64) {
    let nu = norm2(u);
    u.iter_mut().for_each(|x| *x /= nu);
    let c = dot(u, v);
    v.iter_mut().zip(u.iter()).for_each(|(y, x)| *y -= c * x);
    let nv = norm2(v);
    v.iter_mut().for_each(|x| *x /= nv);
    *log_norm += nu.ln();
    *log_area += nu.ln() + nv.ln();
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PisotVerdict {
    Pisot,
    NotPisot,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PisotReport {
    pub verdict: PisotVerdict,
    /// Half-widths `max(2·stderr, 1e-9)` used for both exponents.
    pub band1: f64,
    pub band2: f64,
    /// `θ₂ / θ₁`.
    pub deviation_exponent: Option<f64>,
    /// `1 - θ₂ / θ₁`.
    pub uniform_approximation_exponent: Option<f64>,
}

const BAND_FLOOR: f64 = 1e-9;

/// Decides `θ₁ > 0 > θ₂` from the estimate's `±2·stderr` bands.
///
/// An inequality is confirmed when its band lies on the right side of zero
/// and refuted when it lies on the wrong side; a band at the floor width
/// (no spread between trajectories) that contains zero also refutes it,
/// since the estimate is then exact up to rounding.
pub fn pisot_report(est: &LyapunovEstimate) -> PisotReport {
    let band = |se: f64| if se.is_nan() { f64::INFINITY } else { (2.0 * se).max(BAND_FLOOR) };
    let b1 = band(est.stderr1);
    let b2 = band(est.stderr2);
    let exact1 = b1 <= BAND_FLOOR;
    let exact2 = b2 <= BAND_FLOOR;
    let pos1 = est.theta1 - b1 > 0.0;
    let neg2 = est.theta2 + b2 < 0.0;
    let not_pos1 = est.theta1 + b1 <= 0.0 || (exact1 && est.theta1.abs() <= b1);
    let not_neg2 = est.theta2 - b2 >= 0.0 || (exact2 && est.theta2.abs() <= b2);
    let verdict = if pos1 && neg2 {
        PisotVerdict::Pisot
    } else if not_pos1 || not_neg2 {
        PisotVerdict::NotPisot
    } else {
        PisotVerdict::Inconclusive
    };
    let ratio = (est.theta1.abs() > BAND_FLOOR).then(|| est.theta2 / est.theta1);
    PisotReport {
        verdict,
        band1: b1,
        band2: b2,
        deviation_exponent: ratio,
        uniform_approximation_exponent: ratio.map(|r| 1.0 - r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::builtin;

    #[test]
    fn fibonacci_exponents() {
        let g = SAdicGraph::fibonacci();
        let m = PathMeasure::uniform(&g);
        let p = LyapunovParams {
            steps: 1024,
            trajectories: 8,
            ..Default::default()
        };
        let est = lyapunov(&g, &m, p).unwrap();
        let lphi = ((1.0 + 5f64.sqrt()) / 2.0).ln();
        assert!((est.theta1 - lphi).abs() < 0.01 * lphi);
        assert!((est.theta1 + est.theta2).abs() < 1e-2);
        assert_eq!(pisot_report(&est).verdict, PisotVerdict::Pisot);
        assert_eq!(est, lyapunov(&g, &m, p).unwrap());
    }

    #[test]
    fn permutations_are_not_pisot() {
        let g = SAdicGraph::single_vertex("perm", vec![builtin("swap").unwrap()]).unwrap();
        let m = PathMeasure::uniform(&g);
        let est = lyapunov(&g, &m, LyapunovParams { steps: 256, trajectories: 4, ..Default::default() }).unwrap();
        assert!(est.theta1.abs() < 1e-9);
        assert_eq!(pisot_report(&est).verdict, PisotVerdict::NotPisot);
    }

    #[test]
    fn singular_edges_are_refused() {
        let g = SAdicGraph::single_vertex("proj", vec![builtin("proj-ab").unwrap()]).unwrap();
        let m = PathMeasure::uniform(&g);
        assert!(matches!(
            lyapunov(&g, &m, LyapunovParams::default()),
            Err(Error::NotInvertible(_))
        ));
    }

    #[test]
    fn overlapping_bands_are_inconclusive() {
        let est = LyapunovEstimate {
            theta1: 0.01,
            theta2: -0.3,
            stderr1: 0.02,
            stderr2: 0.01,
            trajectories: 10,
            steps: 10,
            renorm_period: 8,
            seed: 0,
            log_integrability: true,
            per_trajectory: vec![],
        };
        assert_eq!(pisot_report(&est).verdict, PisotVerdict::Inconclusive);
    }
}
