//! Derivative-free local minimisation (Nelder–Mead) and a small Newton solver
//! for square systems.

/// Result of a Nelder–Mead run.
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum<const N: usize> {
    pub x: [f64; N],
    pub value: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMead {
    pub initial_step: f64,
    /// Stop when the spread of simplex values falls below this.
    pub f_tol: f64,
    /// Stop when the simplex diameter falls below this.
    pub x_tol: f64,
    pub max_iter: usize,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self {
            initial_step: 0.05,
            f_tol: 1e-15,
            x_tol: 1e-13,
            max_iter: 5000,
        }
    }
}

fn centroid<const N: usize>(pts: &[[f64; N]]) -> [f64; N] {
    let mut c = [0.0; N];
    for p in pts {
        for i in 0..N {
            c[i] += p[i];
        }
    }
    c.map(|v| v / pts.len() as f64)
}

fn lerp<const N: usize>(a: &[f64; N], b: &[f64; N], t: f64) -> [f64; N] {
    std::array::from_fn(|i| a[i] + t * (b[i] - a[i]))
}

impl NelderMead {
    /// Minimise `f` from `x0` with standard coefficients (1, 2, 1/2, 1/2).
    pub fn minimize<const N: usize>(
        &self,
        f: impl Fn(&[f64; N]) -> f64,
        x0: [f64; N],
    ) -> Minimum<N> {
        let mut simplex: Vec<([f64; N], f64)> = Vec::with_capacity(N + 1);
        simplex.push((x0, f(&x0)));
        for i in 0..N {
            let mut x = x0;
            x[i] += self.initial_step;
            simplex.push((x, f(&x)));
        }
        let mut iterations = 0;
        while iterations < self.max_iter {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let (best, worst) = (simplex[0].1, simplex[N].1);
            let diameter = simplex[1..]
                .iter()
                .map(|(x, _)| {
                    (0..N)
                        .map(|i| (x[i] - simplex[0].0[i]).abs())
                        .fold(0.0, f64::max)
                })
                .fold(0.0, f64::max);
            if (worst - best).abs() <= self.f_tol && diameter <= self.x_tol {
                break;
            }
            if diameter <= self.x_tol * 1e-3 {
                break;
            }
            iterations += 1;

            let pts: Vec<[f64; N]> = simplex[..N].iter().map(|s| s.0).collect();
            let c = centroid(&pts);
            let xw = simplex[N].0;
            let xr = lerp(&c, &xw, -1.0);
            let fr = f(&xr);
            if fr < simplex[0].1 {
                let xe = lerp(&c, &xw, -2.0);
                let fe = f(&xe);
                simplex[N] = if fe < fr { (xe, fe) } else { (xr, fr) };
                continue;
            }
            if fr < simplex[N - 1].1 {
                simplex[N] = (xr, fr);
                continue;
            }
            let (xc, fc) = if fr < simplex[N].1 {
                let x = lerp(&c, &xr, 0.5);
                (x, f(&x))
            } else {
                let x = lerp(&c, &xw, 0.5);
                (x, f(&x))
            };
            if fc < simplex[N].1.min(fr) {
                simplex[N] = (xc, fc);
                continue;
            }
            let x_best = simplex[0].0;
            for s in simplex.iter_mut().skip(1) {
                let x = lerp(&x_best, &s.0, 0.5);
                *s = (x, f(&x));
            }
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        Minimum {
            x: simplex[0].0,
            value: simplex[0].1,
            iterations,
        }
    }
}

/// Solve the 3×3 system `a x = b` by Cramer's rule. `None` when singular.
pub fn solve3(a: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let det = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(a);
    if d == 0.0 || !d.is_finite() {
        return None;
    }
    let mut x = [0.0; 3];
    for (k, xk) in x.iter_mut().enumerate() {
        let mut m = a;
        for i in 0..3 {
            m[i][k] = b[i];
        }
        *xk = det(m) / d;
    }
    Some(x)
}

/// Newton iteration for `F(x) = 0` with an analytic Jacobian. Returns the last
/// iterate, whether or not it converged.
pub fn newton3(
    system: impl Fn(&[f64; 3]) -> ([f64; 3], [[f64; 3]; 3]),
    mut x: [f64; 3],
    max_iter: usize,
) -> [f64; 3] {
    for _ in 0..max_iter {
        let (fx, jac) = system(&x);
        let Some(step) = solve3(jac, fx) else { break };
        for i in 0..3 {
            x[i] -= step[i];
        }
        if step.iter().all(|s| s.abs() < 1e-16) {
            break;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock() {
        let nm = NelderMead {
            initial_step: 0.5,
            max_iter: 20_000,
            ..Default::default()
        };
        let m = nm.minimize(
            |x: &[f64; 2]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2),
            [-1.2, 1.0],
        );
        assert!((m.x[0] - 1.0).abs() < 1e-6, "{m:?}");
        assert!((m.x[1] - 1.0).abs() < 1e-6, "{m:?}");
    }

    #[test]
    fn nonsmooth_max_objective() {
        let m = NelderMead::default().minimize(
            |x: &[f64; 3]| {
                (x[0] - 0.3)
                    .abs()
                    .max((x[1] + 0.2).abs())
                    .max((x[2] - 1.0).abs())
            },
            [0.0, 0.0, 0.0],
        );
        assert!(m.value < 1e-8, "{m:?}");
    }

    #[test]
    fn cramer() {
        let x = solve3(
            [[2.0, 0.0, 0.0], [0.0, 3.0, 1.0], [0.0, 1.0, 1.0]],
            [2.0, 4.0, 2.0],
        )
        .unwrap();
        assert_eq!(x, [1.0, 1.0, 1.0]);
        assert!(solve3(
            [[1.0, 1.0, 0.0], [1.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            [1.0, 1.0, 1.0]
        )
        .is_none());
    }
}
