//! Letter frequencies from nested cones `A_n ℝ₊^d`, convergence profiles and
//! the balance criterion sums `Σ ‖ᵗA_n|_{f⊥}‖ ‖M_n‖`.
//!
//! Quantities that shrink geometrically (distances to the frequency line,
//! the transpose action on `f⊥`) are computed from exact integer products
//! against an exact reference direction `g = A_N (1, …, 1)` taken at a much
//! larger depth `N`, so that no floating-point cancellation occurs.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{
    cholesky, forward_solve, hilbert_diameter, normalize_l1, operator_norm2,
    scaled_f64, sym_psd_max_eigenvalue, IntMatrix,
};

use super::directive::DirectiveSequence;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrequencyResult {
    /// Normalized barycenter of the columns of `A_depth`.
    pub f: Vec<f64>,
    pub depth: usize,
    /// Hilbert diameter of the cone `A_depth ℝ₊^d`.
    pub diameter: f64,
    pub converged: bool,
    /// Some `A_n` was positive.
    pub positive_block: bool,
}

/// Iterates the cones `A_n ℝ₊^d` until their Hilbert diameter is below `tol`
/// or `n_max` steps were taken.
pub fn generalized_eigenvector(
    ds: &DirectiveSequence,
    tol: f64,
    n_max: usize,
) -> Result<FrequencyResult> {
    let d0 = ds.alphabet(0)?.len();
    let limit = ds.len().map_or(n_max, |l| l.min(n_max));
    // Columns of A_n as unit ℓ¹ directions with their log ℓ¹ norms.
    let mut cols: Vec<Vec<f64>> = (0..d0)
        .map(|j| (0..d0).map(|i| (i == j) as u8 as f64).collect())
        .collect();
    let mut log_w = vec![0.0f64; d0];
    let mut diameter = if d0 == 1 { 0.0 } else { f64::INFINITY };
    let mut positive_block = d0 == 1;
    let mut depth = 0;
    let mut prev_domain = None;
    while depth < limit && diameter >= tol {
        let s = ds.substitution(depth)?;
        if s.codomain().len() != cols.len() && depth > 0 {
            return Err(Error::DimensionMismatch {
                index: depth,
                detail: "codomain size differs from the previous domain".into(),
            });
        }
        if let Some(prev) = &prev_domain {
            if prev != s.codomain() {
                return Err(Error::DimensionMismatch {
                    index: depth,
                    detail: format!("codomain {} differs from {prev}", s.codomain()),
                });
            }
        }
        (cols, log_w) = s
            .images()
            .iter()
            .map(|img| {
                let top = img.iter().map(|&y| log_w[y as usize]).fold(f64::MIN, f64::max);
                let mut c = vec![0.0; d0];
                for &y in img {
                    let w = (log_w[y as usize] - top).exp();
                    for (ci, yi) in c.iter_mut().zip(&cols[y as usize]) {
                        *ci += w * yi;
                    }
                }
                let norm: f64 = c.iter().sum();
                (normalize_l1(&c), top + norm.ln())
            })
            .unzip();
        prev_domain = Some(s.domain().clone());
        depth += 1;
        if cols.iter().all(|c| c.iter().all(|&x| x > 0.0)) {
            positive_block = true;
        }
        diameter = hilbert_diameter(&cols);
    }
    let mut bary = vec![0.0; d0];
    for c in &cols {
        for (b, x) in bary.iter_mut().zip(c) {
            *b += x;
        }
    }
    Ok(FrequencyResult {
        f: normalize_l1(&bary),
        depth,
        diameter,
        converged: diameter < tol,
        positive_block,
    })
}

/// `A_n` for `n = 0..=depth`, exact.
pub(crate) fn products(ds: &DirectiveSequence, depth: usize) -> Result<Vec<IntMatrix>> {
    let chain = ds.chain(depth)?;
    let d0 = ds.alphabet(0)?.len();
    let mut out = vec![IntMatrix::identity(d0)];
    for s in &chain {
        let next = out.last().unwrap().mul(&s.incidence())?;
        out.push(next);
    }
    Ok(out)
}

/// `g = A_N (1, …, 1)ᵀ`, the exact reference direction, with `N` capped by
/// the length of a finite sequence.
pub(crate) fn reference_direction(ds: &DirectiveSequence, depth: usize) -> Result<(Vec<BigInt>, usize)> {
    let depth = ds.len().map_or(depth, |l| l.min(depth));
    let chain = ds.chain(depth)?;
    let top = match chain.last() {
        Some(s) => s.domain().len(),
        None => ds.alphabet(0)?.len(),
    };
    let mut v: Vec<BigUint> = vec![BigUint::from(1u8); top];
    for s in chain.iter().rev() {
        let m = s.incidence();
        v = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.get(i, j) * &v[j]).sum())
            .collect();
    }
    Ok((v.into_iter().map(BigInt::from).collect(), depth))
}

/// `a / b` as `f64` for big integers of any size.
fn ratio_f64(a: &BigInt, b: &BigInt) -> f64 {
    if a.is_zero() {
        return 0.0;
    }
    let sa = a.bits().saturating_sub(64);
    let sb = b.bits().saturating_sub(64);
    let x = scaled_f64(a, sa) / scaled_f64(b, sb);
    x * 2f64.powi((sa as i64 - sb as i64).clamp(-2000, 2000) as i32)
}

fn to_f64_vector(v: &[BigInt]) -> Vec<f64> {
    let total: BigInt = v.iter().map(|x| x.abs()).sum();
    v.iter().map(|x| ratio_f64(x, &total)).collect()
}

fn l1_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceProfile {
    pub depth: usize,
    /// `‖A_n e_i / ‖A_n e_i‖₁ - f‖₂` for each letter `i`.
    pub weak: Vec<f64>,
    /// Euclidean distance from `A_n e_i` to the line spanned by the exact
    /// reference direction.
    pub strong: Vec<f64>,
    /// Hilbert diameter of `A_n ℝ₊^d`.
    pub diameter: f64,
    /// `max_{i,j} | |w_j|_i / |w_j| - f_i |` for `w_j = σ_{[0,n)}(j)`.
    pub delta: f64,
    /// Depth of the reference direction used for `strong`.
    pub reference_depth: usize,
}

/// Weak and strong distances of the columns of `A_n` to the frequency line.
pub fn convergence_profile(ds: &DirectiveSequence, f: &[f64], n: usize) -> Result<ConvergenceProfile> {
    let d0 = ds.alphabet(0)?.len();
    if f.len() != d0 {
        return Err(Error::DimensionMismatch {
            index: 0,
            detail: format!("frequency vector has {} entries for {d0} letters", f.len()),
        });
    }
    let a = products(ds, n)?.pop().unwrap();
    let (g, reference_depth) = reference_direction(ds, 2 * n + 40)?;
    let g2: BigInt = g.iter().map(|x| x * x).sum();
    let mut weak = Vec::with_capacity(a.cols());
    let mut strong = Vec::with_capacity(a.cols());
    let mut normalized = Vec::with_capacity(a.cols());
    for j in 0..a.cols() {
        let col: Vec<BigInt> = a.column(j).into_iter().map(BigInt::from).collect();
        let c = to_f64_vector(&col);
        weak.push(euclid(&c, f));
        // |x|²|g|² - (x·g)² = Σ_{k<l} (x_k g_l - x_l g_k)².
        let mut cross = BigInt::zero();
        for k in 0..d0 {
            for l in k + 1..d0 {
                let t = &col[k] * &g[l] - &col[l] * &g[k];
                cross += &t * &t;
            }
        }
        strong.push(ratio_f64(&cross, &g2).sqrt());
        normalized.push(c);
    }
    let delta = normalized
        .iter()
        .flat_map(|c| c.iter().zip(f).map(|(x, y)| (x - y).abs()))
        .fold(0.0, f64::max);
    Ok(ConvergenceProfile {
        depth: n,
        weak,
        strong,
        diameter: if d0 == 1 { 0.0 } else { hilbert_diameter(&normalized) },
        delta,
        reference_depth,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CriterionVerdict {
    /// The terms decay geometrically over the computed range.
    DecayingUpTo { n: usize },
    /// No geometric decay observed over the computed range.
    NoDecayUpTo { n: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    /// `t_n = ‖(ᵗA_n)|_{f⊥}‖₂ ‖M_n‖₂` for `n < N`.
    pub terms: Vec<f64>,
    pub partial_sums: Vec<f64>,
    /// `t_{n+1} / t_n`.
    pub ratios: Vec<f64>,
    /// Geometric mean of the ratios over the second half of the range.
    pub tail_ratio: f64,
    pub verdict: CriterionVerdict,
    pub reference_depth: usize,
}

/// Partial sums of the balance criterion series up to `N` terms.
///
/// Requires a converged frequency vector; the restriction to `f⊥` is taken
/// exactly on the hyperplane orthogonal to the reference direction, which is
/// checked to agree with `f`.
pub fn balance_criterion_partial_sums(
    ds: &DirectiveSequence,
    f: &FrequencyResult,
    n_terms: usize,
) -> Result<CriterionReport> {
    if !f.converged {
        return Err(Error::NotConverged(format!(
            "cone diameter {:.3e} after {} steps; raise n_max or loosen tol before using the criterion",
            f.diameter, f.depth
        )));
    }
    let d0 = ds.alphabet(0)?.len();
    let (g, reference_depth) = reference_direction(ds, 2 * n_terms + 40)?;
    let gf = to_f64_vector(&g);
    if l1_distance(&gf, &f.f) > 1e-6 {
        return Err(Error::NotConverged(format!(
            "frequency vector differs from the deep product direction by {:.3e}",
            l1_distance(&gf, &f.f)
        )));
    }
    let prods = products(ds, n_terms)?;
    // Basis of g⊥: q_j = g_{d-1} e_j - g_j e_{d-1}.
    let last = d0 - 1;
    let q: Vec<Vec<BigInt>> = (0..last)
        .map(|j| {
            let mut v = vec![BigInt::zero(); d0];
            v[j] = g[last].clone();
            v[last] = -g[j].clone();
            v
        })
        .collect();
    let gram: Vec<Vec<BigInt>> = q
        .iter()
        .map(|a| q.iter().map(|b| dot_big(a, b)).collect())
        .collect();
    let mut terms = Vec::with_capacity(n_terms);
    for k in 0..n_terms {
        let a = &prods[k];
        let m = ds.substitution(k)?.incidence();
        let mnorm = operator_norm2(&m.to_f64());
        let restricted = if d0 == 1 {
            0.0
        } else {
            // B = ᵗA_k Q; the squared norm on g⊥ is λ_max(L⁻¹ BᵀB L⁻ᵀ) with
            // G = QᵀQ = L Lᵀ.
            let at = a.transpose();
            let b: Vec<Vec<BigInt>> = q.iter().map(|qj| at.mul_vec(qj)).collect();
            let h: Vec<Vec<BigInt>> = b
                .iter()
                .map(|x| b.iter().map(|y| dot_big(x, y)).collect())
                .collect();
            restricted_norm(&h, &gram)
        };
        terms.push(restricted * mnorm);
    }
    let mut partial_sums = Vec::with_capacity(n_terms);
    let mut acc = 0.0;
    for t in &terms {
        acc += t;
        partial_sums.push(acc);
    }
    let ratios: Vec<f64> = terms
        .windows(2)
        .map(|w| if w[0] > 0.0 { w[1] / w[0] } else { f64::NAN })
        .collect();
    let tail_ratio = if n_terms >= 3 {
        let lo = n_terms / 2;
        let hi = n_terms - 1;
        if terms[lo] > 0.0 && terms[hi] > 0.0 && hi > lo {
            (terms[hi] / terms[lo]).powf(1.0 / (hi - lo) as f64)
        } else if terms[hi] == 0.0 {
            0.0
        } else {
            f64::NAN
        }
    } else {
        f64::NAN
    };
    let verdict = if tail_ratio < 0.999 {
        CriterionVerdict::DecayingUpTo { n: n_terms }
    } else {
        CriterionVerdict::NoDecayUpTo { n: n_terms }
    };
    Ok(CriterionReport {
        terms,
        partial_sums,
        ratios,
        tail_ratio,
        verdict,
        reference_depth,
    })
}

fn dot_big(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `sqrt(max_c cᵀHc / cᵀGc)` for symmetric `H ⪰ 0`, `G ≻ 0`, both exact.
fn restricted_norm(h: &[Vec<BigInt>], g: &[Vec<BigInt>]) -> f64 {
    let bits = h
        .iter()
        .chain(g)
        .flatten()
        .map(|x| x.bits())
        .max()
        .unwrap_or(0);
    let shift = bits.saturating_sub(60);
    let hf: Vec<Vec<f64>> = h
        .iter()
        .map(|r| r.iter().map(|x| scaled_f64(x, shift)).collect())
        .collect();
    let gf: Vec<Vec<f64>> = g
        .iter()
        .map(|r| r.iter().map(|x| scaled_f64(x, shift)).collect())
        .collect();
    let Some(l) = cholesky(&gf) else {
        return f64::NAN;
    };
    let x: Vec<Vec<f64>> = hf.iter().map(|col| forward_solve(&l, col)).collect();
    // x[j] is column j of L⁻¹H; C = L⁻¹ (L⁻¹H)ᵀ.
    let n = hf.len();
    let xt: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| x[j][i]).collect()).collect();
    let c_cols: Vec<Vec<f64>> = xt.iter().map(|col| forward_solve(&l, col)).collect();
    let c: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| 0.5 * (c_cols[j][i] + c_cols[i][j])).collect())
        .collect();
    sym_psd_max_eigenvalue(&c).max(0.0).sqrt()
}
