//! Derivative-free maximizers: golden-section search in one dimension and a
//! Nelder-Mead simplex in several.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineMaximum {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
    /// Final bracket width relative to `|x|`.
    pub tolerance: f64,
}

/// Maximizes a unimodal `f` on `[lo, hi]` until the bracket is narrower than
/// `rel_tol` times its midpoint (absolute `rel_tol` when the midpoint is zero).
pub fn golden_section_max<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    rel_tol: f64,
    max_iter: usize,
) -> LineMaximum
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iterations = 0;
    while iterations < max_iter {
        let mid = 0.5 * (a + b);
        let scale = if mid == 0.0 { 1.0 } else { mid.abs() };
        if (b - a) <= rel_tol * scale {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        iterations += 1;
    }
    let (x, value) = if fc >= fd { (c, fc) } else { (d, fd) };
    LineMaximum {
        x,
        value,
        iterations,
        tolerance: if x == 0.0 { b - a } else { (b - a) / x.abs() },
    }
}

/// Nelder-Mead settings. Standard coefficients: reflection 1, expansion 2,
/// contraction 1/2, shrink 1/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMead {
    /// Stop once the spread of objective values over the simplex is below this.
    pub ftol: f64,
    /// ...and the simplex diameter is below this.
    pub xtol: f64,
    pub max_iter: usize,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self {
            ftol: 1e-12,
            xtol: 1e-10,
            max_iter: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexMaximum {
    pub point: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Objective spread over the final simplex.
    pub f_spread: f64,
    pub diameter: f64,
}

impl NelderMead {
    /// Maximizes `f` starting from an axis-aligned simplex at `start` with
    /// edge lengths `step`. Non-finite objective values count as worst.
    pub fn maximize<F>(&self, mut f: F, start: &[f64], step: &[f64]) -> SimplexMaximum
    where
        F: FnMut(&[f64]) -> f64,
    {
        let n = start.len();
        assert_eq!(n, step.len(), "start and step lengths differ");
        // Internally minimize g = −f.
        let mut g = |x: &[f64]| {
            let v = f(x);
            if v.is_finite() {
                -v
            } else {
                f64::INFINITY
            }
        };
        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        simplex.push((start.to_vec(), g(start)));
        for i in 0..n {
            let mut x = start.to_vec();
            x[i] += step[i];
            let v = g(&x);
            simplex.push((x, v));
        }

        let mut iterations = 0;
        let mut converged = false;
        loop {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let spread = simplex[n].1 - simplex[0].1;
            let diameter = diameter(&simplex);
            if spread.abs() <= self.ftol && diameter <= self.xtol {
                converged = true;
                break;
            }
            if iterations >= self.max_iter {
                break;
            }
            iterations += 1;

            let centroid: Vec<f64> = (0..n)
                .map(|j| simplex[..n].iter().map(|(x, _)| x[j]).sum::<f64>() / n as f64)
                .collect();
            let along = |t: f64| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(&simplex[n].0)
                    .map(|(c, w)| c + t * (c - w))
                    .collect()
            };

            let reflected = along(1.0);
            let fr = g(&reflected);
            if fr < simplex[0].1 {
                let expanded = along(2.0);
                let fe = g(&expanded);
                simplex[n] = if fe < fr {
                    (expanded, fe)
                } else {
                    (reflected, fr)
                };
                continue;
            }
            if fr < simplex[n - 1].1 {
                simplex[n] = (reflected, fr);
                continue;
            }
            let (contracted, fc) = if fr < simplex[n].1 {
                let x = along(0.5);
                let v = g(&x);
                (x, v)
            } else {
                let x = along(-0.5);
                let v = g(&x);
                (x, v)
            };
            if fc < simplex[n].1.min(fr) {
                simplex[n] = (contracted, fc);
                continue;
            }
            let best = simplex[0].0.clone();
            for (x, v) in simplex.iter_mut().skip(1) {
                for (xi, bi) in x.iter_mut().zip(&best) {
                    *xi = bi + 0.5 * (*xi - bi);
                }
                *v = g(x);
            }
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        SimplexMaximum {
            point: simplex[0].0.clone(),
            value: -simplex[0].1,
            iterations,
            converged,
            f_spread: simplex[n].1 - simplex[0].1,
            diameter: diameter(&simplex),
        }
    }
}

fn diameter(simplex: &[(Vec<f64>, f64)]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, (a, _)) in simplex.iter().enumerate() {
        for (b, _) in &simplex[i + 1..] {
            let dist = a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt();
            d = d.max(dist);
        }
    }
    d
}
