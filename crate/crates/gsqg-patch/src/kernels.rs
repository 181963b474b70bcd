//! Kernel constants and Fourier multipliers.
//!
//! `β_j(α) = ∫_0^{2π} (1 - cos jy) |sin(y/2)|^{-α} dy` is evaluated through the
//! Gamma-ratio closed form, rewritten as a product so that no Gamma function
//! of large argument is formed:
//!
//! `β_j = 2^{1+α} π Γ(2-α)/Γ(1-α/2)² · (P_j - 1)/(α - 1)`,
//! `P_j = Π_{k<j} (k+α/2)/(k+1-α/2)`,
//!
//! with `P_j - 1` computed as `expm1(Σ ln1p(..))`, which stays accurate at and
//! near `α = 1` where the closed form reduces to `β_j = Σ_{i≤j} 8/(2i-1)`.
//!
//! The linearized multiplier is `γ_j = Γ(α/2)/Γ(1-α/2) · (β_j - β_1)/(4π)`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Real Gamma function (Lanczos, reflection below 1/2).
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        PI / ((PI * x).sin() * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut a = LANCZOS[0];
        let t = x + LANCZOS_G + 0.5;
        for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
            a += c / (x + i as f64);
        }
        (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
    }
}

/// Riemann zeta function for real `s ≠ 1`.
pub fn zeta(s: f64) -> f64 {
    if s < 0.5 {
        // functional equation
        let t = 1.0 - s;
        return 2f64.powf(s) * PI.powf(s - 1.0) * (PI * s / 2.0).sin() * gamma(t) * zeta(t);
    }
    // Euler-Maclaurin with 12 terms and 6 Bernoulli corrections
    const B: [f64; 6] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
    ];
    let n = 12.0f64;
    let mut sum: f64 = (1..12).map(|k| (k as f64).powf(-s)).sum();
    sum += n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    let mut rising = s; // s(s+1)...(s+2k-2)
    let mut fact = 2.0; // (2k)!
    for (k, b) in B.iter().enumerate() {
        let k = k + 1;
        sum += b / fact * rising * n.powf(-s - 2.0 * k as f64 + 1.0);
        rising *= (s + 2.0 * k as f64 - 1.0) * (s + 2.0 * k as f64);
        fact *= (2 * k + 1) as f64 * (2 * k + 2) as f64;
    }
    sum
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 2.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("alpha must lie in (0,2), got {alpha}")))
    }
}

/// `C_α = Γ(α/2) / (2^{1-α} Γ(1-α/2))`.
pub fn riesz_constant(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(gamma(alpha / 2.0) / (2f64.powf(1.0 - alpha) * gamma(1.0 - alpha / 2.0)))
}

/// `β_1..β_jmax` (index 0 holds `β_0 = 0`).
fn beta_table(alpha: f64, jmax: usize) -> Vec<f64> {
    let mut out = vec![0.0; jmax + 1];
    if alpha == 1.0 {
        let mut s = 0.0;
        for (j, o) in out.iter_mut().enumerate().skip(1) {
            s += 8.0 / (2 * j - 1) as f64;
            *o = s;
        }
        return out;
    }
    let a = alpha;
    let pref = 2f64.powf(1.0 + a) * PI * gamma(2.0 - a) / gamma(1.0 - a / 2.0).powi(2);
    let mut s = 0.0;
    for (j, o) in out.iter_mut().enumerate().skip(1) {
        let k = (j - 1) as f64;
        s += ((a - 1.0) / (k + 1.0 - a / 2.0)).ln_1p();
        *o = pref * s.exp_m1() / (a - 1.0);
    }
    out
}

/// `β_j(α)` for `j ≥ 1`.
pub fn beta_multiplier(alpha: f64, j: usize) -> Result<f64> {
    check_alpha(alpha)?;
    if j == 0 {
        return Err(Error::Domain("beta multiplier needs j >= 1".into()));
    }
    Ok(beta_table(alpha, j)[j])
}

/// `μ_j = ⨍ (4 sin²(s/2))^{-α/2} (1 - cos js) ds = 2^{-α} β_j / (2π)` for `j = 0..=jmax`.
pub fn kernel_moments(alpha: f64, jmax: usize) -> Result<Vec<f64>> {
    check_alpha(alpha)?;
    let c = 2f64.powf(-alpha) / (2.0 * PI);
    Ok(beta_table(alpha, jmax).into_iter().map(|b| b * c).collect())
}

fn check_gamma_domain(alpha: f64) -> Result<()> {
    if (1.0..2.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::Domain(format!("gamma multiplier needs alpha in [1,2), got {alpha}")))
    }
}

fn gamma_from_beta(alpha: f64, beta: &[f64], j: usize) -> f64 {
    let r0 = gamma(alpha / 2.0) / gamma(1.0 - alpha / 2.0);
    r0 * (beta[j] - beta[1]) / (4.0 * PI)
}

/// Linearized multiplier `γ_j(α)`, `α ∈ [1,2)`, `j ≥ 2`.
pub fn gamma_multiplier(alpha: f64, j: usize) -> Result<f64> {
    check_gamma_domain(alpha)?;
    if j < 2 {
        return Err(Error::Domain("gamma multiplier needs j >= 2".into()));
    }
    Ok(gamma_from_beta(alpha, &beta_table(alpha, j), j))
}

/// `γ_j / ln j` for `α = 1`, `γ_j / j^{α-1}` otherwise.
pub fn asymptotic_proxy(alpha: f64, j: usize, gamma_j: f64) -> f64 {
    let jf = j as f64;
    if alpha == 1.0 {
        gamma_j / jf.ln()
    } else {
        gamma_j / jf.powf(alpha - 1.0)
    }
}

/// Tabulated `β_j` and `γ_j` for `j = 1..=J`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiplierTable {
    pub alpha: f64,
    /// `β_1..β_J`.
    pub beta: Vec<f64>,
    /// `γ_1..γ_J` (`γ_1 = 0`); empty when `α ∉ [1,2)`.
    pub gamma: Vec<f64>,
    /// Asymptotic proxy per `γ_j`, `j ≥ 2` (slot 0 unused and zero).
    pub proxy: Vec<f64>,
}

impl MultiplierTable {
    pub fn new(alpha: f64, jmax: usize) -> Result<Self> {
        check_alpha(alpha)?;
        if jmax == 0 {
            return Err(Error::Domain("table needs jmax >= 1".into()));
        }
        let b = beta_table(alpha, jmax);
        let (gamma, proxy) = if check_gamma_domain(alpha).is_ok() {
            let g: Vec<f64> = (1..=jmax).map(|j| gamma_from_beta(alpha, &b, j)).collect();
            let p = g
                .iter()
                .enumerate()
                .map(|(i, &gj)| if i == 0 { 0.0 } else { asymptotic_proxy(alpha, i + 1, gj) })
                .collect();
            (g, p)
        } else {
            (Vec::new(), Vec::new())
        };
        Ok(Self { alpha, beta: b[1..].to_vec(), gamma, proxy })
    }

    pub fn jmax(&self) -> usize {
        self.beta.len()
    }

    pub fn beta(&self, j: usize) -> f64 {
        self.beta[j - 1]
    }

    /// `γ_j`; panics if the table has no `γ` column.
    pub fn gamma(&self, j: usize) -> f64 {
        self.gamma[j - 1]
    }

    pub fn has_gamma(&self) -> bool {
        !self.gamma.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_known_values() {
        let cases = [
            (0.25, 3.625_609_908_221_908_3),
            (0.75, 1.225_416_702_465_177_6),
            (1.0 / 3.0, 2.678_938_534_707_747_6),
            (0.5, PI.sqrt()),
            (1.0, 1.0),
            (2.5, 1.329_340_388_179_137),
            (5.0, 24.0),
        ];
        for (x, g) in cases {
            assert!((gamma(x) / g - 1.0).abs() < 1e-14, "Γ({x})");
        }
    }

    #[test]
    fn reflection_identity() {
        for i in 1..100 {
            let x = i as f64 / 100.0;
            let r = gamma(x) * gamma(1.0 - x) * (PI * x).sin() / PI;
            assert!((r - 1.0).abs() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn zeta_values() {
        assert!((zeta(2.0) - PI * PI / 6.0).abs() < 1e-14);
        assert!((zeta(4.0) - PI.powi(4) / 90.0).abs() < 1e-14);
        assert!((zeta(-1.0) + 1.0 / 12.0).abs() < 1e-14);
        assert!((zeta(-0.5) + 0.207_886_224_977_354_57).abs() < 1e-13);
        assert!(zeta(-2.0).abs() < 1e-14);
    }

    #[test]
    fn riesz() {
        assert!((riesz_constant(1.0).unwrap() - 1.0).abs() < 1e-15);
        let c = gamma(0.25) / (2f64.sqrt() * gamma(0.75));
        assert!((riesz_constant(0.5).unwrap() - c).abs() < 1e-14);
        assert!((riesz_constant(0.5).unwrap() - 2.0921).abs() < 1e-4);
        assert!(riesz_constant(0.0).is_err());
        assert!(riesz_constant(2.0).is_err());
    }

    #[test]
    fn beta_alpha_one() {
        assert_eq!(beta_multiplier(1.0, 1).unwrap(), 8.0);
        assert!((beta_multiplier(1.0, 2).unwrap() - 32.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn beta_continuous_at_one() {
        for j in [1, 2, 5, 40] {
            let b1 = beta_multiplier(1.0, j).unwrap();
            for da in [1e-9, -1e-9, 1e-6] {
                let b = beta_multiplier(1.0 + da, j).unwrap();
                assert!((b / b1 - 1.0).abs() < 50.0 * da.abs() + 1e-13, "j={j} da={da}");
            }
        }
    }

    #[test]
    fn gamma_multiplier_values() {
        // (2/π) Σ_{i=2}^{j} 1/(2i-1)
        assert!((gamma_multiplier(1.0, 2).unwrap() - 2.0 / (3.0 * PI)).abs() < 1e-15);
        assert!((gamma_multiplier(1.0, 3).unwrap() - 16.0 / (15.0 * PI)).abs() < 1e-15);
        assert!((gamma_multiplier(1.5, 2).unwrap() - 0.154_682_700_757_828_2).abs() < 1e-14);
        assert!(gamma_multiplier(0.5, 2).is_err());
        assert!(gamma_multiplier(2.0, 2).is_err());
        assert!(gamma_multiplier(1.2, 1).is_err());
    }

    #[test]
    fn table_monotone_and_bounded_proxy() {
        for alpha in [1.0, 1.25, 1.5, 1.9] {
            let t = MultiplierTable::new(alpha, 512).unwrap();
            for j in 1..512 {
                assert!(t.beta(j + 1) > t.beta(j));
                if j >= 2 {
                    assert!(t.gamma(j + 1) > t.gamma(j) && t.gamma(j) > 0.0);
                }
            }
            let p = &t.proxy[7..];
            let (lo, hi) = p.iter().fold((f64::MAX, 0.0f64), |(l, h), &v| (l.min(v), h.max(v)));
            assert!(lo > 0.0 && hi / lo < 3.0, "alpha {alpha}: [{lo}, {hi}]");
        }
        let t = MultiplierTable::new(0.5, 8).unwrap();
        assert!(!t.has_gamma());
    }

    #[test]
    fn moments_match_beta() {
        let m = kernel_moments(1.5, 4).unwrap();
        assert_eq!(m[0], 0.0);
        let b = beta_multiplier(1.5, 3).unwrap();
        assert!((m[3] - b * 2f64.powf(-1.5) / (2.0 * PI)).abs() < 1e-15);
    }
}
