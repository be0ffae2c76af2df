/// Generalized Laguerre polynomial L_n^d(x) by the three-term recurrence
/// (k+1) L_{k+1} = (2k+1+d−x) L_k − (k+d) L_{k−1}.
pub fn laguerre(n: u32, d: u32, x: f64) -> f64 {
    let d = d as f64;
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + d - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + d - x) * cur - (kf + d) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Monomial coefficients of L_n^d: the x^k coefficient is
/// (−1)^k C(n+d, n−k) / k!.
pub fn laguerre_coefficients(n: u32, d: u32) -> Vec<f64> {
    let mut out = Vec::with_capacity(n as usize + 1);
    // C(n+d, n) to start, then step k → k+1.
    let mut binom = 1.0;
    for j in 1..=n {
        binom *= (d + j) as f64 / j as f64;
    }
    let mut inv_fact = 1.0;
    for k in 0..=n {
        if k > 0 {
            // C(n+d, n−k) = C(n+d, n−k+1) · (n−k+1) / (d+k)
            binom *= (n - k + 1) as f64 / (d + k) as f64;
            inv_fact /= k as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        out.push(sign * binom * inv_fact);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders() {
        for d in 0..4 {
            for &x in &[-1.0, 0.0, 0.7, 3.0] {
                assert_eq!(laguerre(0, d, x), 1.0);
            }
        }
        assert_eq!(laguerre(1, 3, 1.0), 3.0);
        assert!((laguerre(2, 1, 2.0) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn coefficients_agree_with_recurrence() {
        for n in 0..10 {
            for d in 0..6 {
                let c = laguerre_coefficients(n, d);
                for &x in &[0.0, 0.4, 1.9, 5.5] {
                    let horner = c.iter().rev().fold(0.0, |acc, &ck| acc * x + ck);
                    let rec = laguerre(n, d, x);
                    assert!((horner - rec).abs() <= 1e-11 * (1.0 + rec.abs()), "n={n} d={d} x={x}");
                }
            }
        }
    }
}
