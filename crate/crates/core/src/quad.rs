use std::f64::consts::PI;
use std::sync::OnceLock;

const ORDER: usize = 16;

/// Gauss–Legendre nodes and weights on [-1, 1].
fn rule() -> &'static [(f64, f64); ORDER] {
    static RULE: OnceLock<[(f64, f64); ORDER]> = OnceLock::new();
    RULE.get_or_init(|| {
        let mut out = [(0.0, 0.0); ORDER];
        let n = ORDER as f64;
        for (i, slot) in out.iter_mut().enumerate() {
            let mut x = (PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=ORDER {
                    let k = k as f64;
                    let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            *slot = (x, 2.0 / ((1.0 - x * x) * dp * dp));
        }
        out
    })
}

/// Integrates `f` over `[a, b]` with a single 16-point Gauss–Legendre panel.
pub(crate) fn gauss_legendre<F: FnMut(f64) -> f64>(a: f64, b: f64, mut f: F) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    rule()
        .iter()
        .map(|&(x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        let s: f64 = rule().iter().map(|p| p.1).sum();
        assert!((s - 2.0).abs() < 1e-14);
    }

    #[test]
    fn integrates_high_degree_polynomials_exactly() {
        let v = gauss_legendre(0.0, 2.0, |x| x.powi(31));
        let exact = 2f64.powi(32) / 32.0;
        assert!((v - exact).abs() / exact < 1e-13);
    }

    #[test]
    fn integrates_cosine() {
        let v = gauss_legendre(0.0, 1.0, f64::cos);
        assert!((v - 1f64.sin()).abs() < 1e-15);
    }
}
