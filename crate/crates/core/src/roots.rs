//! All complex roots of a low-degree polynomial: Aberth–Ehrlich simultaneous
//! iteration followed by a Newton polish of each root.

use num_complex::Complex64;

/// Evaluates `p` (lowest degree first) and its derivative by Horner.
pub fn horner(p: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for c in p.iter().rev() {
        d = d * x + v;
        v = v * x + c;
    }
    (v, d)
}

fn trimmed(p: &[Complex64]) -> &[Complex64] {
    let mut n = p.len();
    while n > 0 && p[n - 1].norm() == 0.0 {
        n -= 1;
    }
    &p[..n]
}

/// Roots of `p` with multiplicity, lowest-degree coefficient first.
/// Returns an empty vector for constants.
pub fn poly_roots(p: &[Complex64]) -> Vec<Complex64> {
    let p = trimmed(p);
    if p.len() < 2 {
        return Vec::new();
    }
    let n = p.len() - 1;
    let lead = p[n];
    let monic: Vec<Complex64> = p.iter().map(|c| c / lead).collect();
    if n == 1 {
        return vec![-monic[0]];
    }

    // Cauchy bound for the initial circle.
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();

    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = horner(&monic, z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| 1.0 / (z[i] - z[j]))
                .sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }

    for r in z.iter_mut() {
        for _ in 0..5 {
            let (v, d) = horner(&monic, *r);
            if d.norm() == 0.0 {
                break;
            }
            let step = v / d;
            if !step.is_finite() || step.norm() < 1e-17 * r.norm().max(1.0) {
                break;
            }
            *r -= step;
        }
    }
    z
}
