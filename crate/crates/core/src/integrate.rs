//! Classical fourth-order Runge-Kutta on flat state vectors.

/// One RK4 step of `y' = f(y)` in place.
pub fn rk4_step<F>(f: &F, y: &mut [f64], h: f64)
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let n = y.len();
    let k1 = f(y);
    let mut tmp: Vec<f64> = (0..n).map(|i| y[i] + 0.5 * h * k1[i]).collect();
    let k2 = f(&tmp);
    for i in 0..n {
        tmp[i] = y[i] + 0.5 * h * k2[i];
    }
    let k3 = f(&tmp);
    for i in 0..n {
        tmp[i] = y[i] + h * k3[i];
    }
    let k4 = f(&tmp);
    for i in 0..n {
        y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_growth_fourth_order() {
        let f = |y: &[f64]| vec![y[0]];
        let err = |steps: usize| {
            let h = 1.0 / steps as f64;
            let mut y = [1.0];
            for _ in 0..steps {
                rk4_step(&f, &mut y, h);
            }
            (y[0] - std::f64::consts::E).abs()
        };
        let ratio = err(20) / err(40);
        assert!((ratio - 16.0).abs() < 1.0, "ratio {ratio}");
    }
}
