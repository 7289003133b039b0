//! Numerical confirmation of the kernel facts behind the remainder radii.
//!
//! With `g(u) = 1/2 - 1/u + 1/(eᵘ - 1)`, the three kernels are
//! `f = g/u`, `g` and `h = u g`. The radii use their values at `u = 0` and a
//! uniform bound on their third derivatives over `u > 0`.

use serde::Serialize;

/// `B_{2k} / (2k)!` for `k = 1..=12`: coefficients of `g(u) = Σ c_k u^{2k-1}`.
const G_SERIES: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
    77683.0 / 14101100039391805440000.0,
    -236364091.0 / 1693824136731743669452800000.0,
];

/// Below this the closed forms lose digits to cancellation and the series is used.
const SERIES_CUTOFF: f64 = 1.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BinetKernel {
    F,
    G,
    H,
}

impl BinetKernel {
    /// Power of `u` multiplying `g` in this kernel.
    fn shift(self) -> i32 {
        match self {
            BinetKernel::F => -1,
            BinetKernel::G => 0,
            BinetKernel::H => 1,
        }
    }

    /// The kernel value from its closed form.
    pub fn eval(self, u: f64) -> f64 {
        let g = 0.5 - 1.0 / u + 1.0 / u.exp_m1();
        g * u.powi(self.shift())
    }

    /// `j`-th derivative, `j <= 3`, from the Bernoulli series near zero and
    /// from closed forms elsewhere.
    pub fn derivative(self, j: usize, u: f64) -> f64 {
        if u < SERIES_CUTOFF {
            series_derivative(self.shift(), j, u)
        } else {
            closed_derivative(self, j, u)
        }
    }
}

fn series_derivative(shift: i32, j: usize, u: f64) -> f64 {
    // kernel = Σ c_k u^{2k-1+shift}
    let mut acc = 0.0;
    for (i, &c) in G_SERIES.iter().enumerate() {
        let p = 2 * (i as i32 + 1) - 1 + shift;
        let mut coef = c;
        for m in 0..j as i32 {
            coef *= (p - m) as f64;
        }
        if coef == 0.0 {
            continue;
        }
        acc += coef * u.powi(p - j as i32);
    }
    acc
}

/// Derivatives of `E(u) = 1/(eᵘ - 1)`, orders 0..=3.
fn e_derivatives(u: f64) -> [f64; 4] {
    let e = 1.0 / u.exp_m1();
    let e1 = -e - e * e;
    let e2 = -e1 * (1.0 + 2.0 * e);
    let e3 = -e2 * (1.0 + 2.0 * e) - 2.0 * e1 * e1;
    [e, e1, e2, e3]
}

fn g_derivatives(u: f64) -> [f64; 4] {
    let e = e_derivatives(u);
    [
        0.5 - 1.0 / u + e[0],
        1.0 / (u * u) + e[1],
        -2.0 / u.powi(3) + e[2],
        6.0 / u.powi(4) + e[3],
    ]
}

fn closed_derivative(kernel: BinetKernel, j: usize, u: f64) -> f64 {
    let g = g_derivatives(u);
    match kernel {
        BinetKernel::G => g[j],
        BinetKernel::H => match j {
            0 => u * g[0],
            _ => j as f64 * g[j - 1] + u * g[j],
        },
        BinetKernel::F => {
            // Leibniz on g · u⁻¹
            let inv = [1.0 / u, -1.0 / (u * u), 2.0 / u.powi(3), -6.0 / u.powi(4)];
            let binom = [[1.0, 0.0, 0.0, 0.0], [1.0, 1.0, 0.0, 0.0], [1.0, 2.0, 1.0, 0.0], [1.0, 3.0, 3.0, 1.0]];
            (0..=j).map(|i| binom[j][i] * g[i] * inv[j - i]).sum()
        }
    }
}

/// `Σ_{m>=1} m^j e^{-mu}`, an upper bound for `|E^{(j)}(u)|`; decreasing in `u`.
fn exp_tail(j: i32, u: f64) -> f64 {
    (1..200).map(|m| (m as f64).powi(j) * (-(m as f64) * u).exp()).sum()
}

/// Upper bound of `|kernel'''(u)|` valid for every `u >= big_u` (`big_u >= 4`).
///
/// Every term below is decreasing in `u` on that range, and `0 < g < 1/2`.
fn third_derivative_tail(kernel: BinetKernel, big_u: f64) -> f64 {
    let u = big_u;
    let g0 = 0.5;
    let g1 = 1.0 / (u * u) + exp_tail(1, u);
    let g2 = 2.0 / u.powi(3) + exp_tail(2, u);
    let g3 = 6.0 / u.powi(4) + exp_tail(3, u);
    match kernel {
        BinetKernel::G => g3,
        // u·Σ m³ e^{-mu} decreases once u >= 3
        BinetKernel::H => 3.0 * g2 + 6.0 / u.powi(3) + u * exp_tail(3, u),
        BinetKernel::F => 6.0 * g0 / u.powi(4) + 6.0 * g1 / u.powi(3) + 3.0 * g2 / (u * u) + g3 / u,
    }
}

/// Extrapolate an even function to `u = 0` from samples at `u0 / 2^i`.
///
/// Returns `(value at 0, coefficient of u²)` of the interpolating polynomial
/// in `x = u²`.
fn extrapolate_even(func: impl Fn(f64) -> f64, u0: f64, points: usize) -> (f64, f64) {
    let xs: Vec<f64> = (0..points).map(|i| (u0 / 2f64.powi(i as i32)).powi(2)).collect();
    let mut dd: Vec<f64> = xs.iter().map(|&x| func(x.sqrt())).collect();
    // Newton divided differences in place
    for level in 1..points {
        for i in (level..points).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
        }
    }
    // p(x) = Σ dd[k] Π_{i<k} (x - xs[i]); evaluate p(0) and p'(0) by Horner with derivative
    let (mut p, mut dp) = (dd[points - 1], 0.0);
    for k in (0..points - 1).rev() {
        dp = dp * (0.0 - xs[k]) + p;
        p = p * (0.0 - xs[k]) + dd[k];
    }
    (p, dp)
}

#[derive(Clone, Debug, Serialize)]
pub struct BinetCheck {
    pub kernel: BinetKernel,
    pub quantity: String,
    pub expected: f64,
    pub observed: f64,
    pub tolerance: f64,
    /// Where the worst value was seen, for sup-norm checks.
    pub at_u: Option<f64>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BinetReport {
    pub sample_max_u: f64,
    pub geometric_step: f64,
    pub checks: Vec<BinetCheck>,
}

impl BinetReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_violation(&self) -> Option<&BinetCheck> {
        self.checks.iter().find(|c| !c.pass)
    }
}

/// Confirm the limits at `u = 0` and the sup-norm bounds on the third
/// derivatives, sampling `(0, 50]` geometrically with ratio `1 + 1e-3` and
/// closing `u > 50` with a monotone tail bound.
pub fn binet_kernel_checks() -> BinetReport {
    const U_MAX: f64 = 50.0;
    const STEP: f64 = 1e-3;
    const U_MIN: f64 = 1e-6;

    let mut checks = Vec::new();
    let mut limit = |kernel, quantity: &str, expected: f64, observed: f64, tolerance: f64| {
        checks.push(BinetCheck {
            kernel,
            quantity: quantity.to_string(),
            expected,
            observed,
            tolerance,
            at_u: None,
            pass: (observed - expected).abs() <= tolerance,
        });
    };

    // f is even; g/u = f and h/u² = f, so every limit comes from f's expansion.
    let (f0, f_u2) = extrapolate_even(|u| BinetKernel::F.eval(u), 0.4, 6);
    limit(BinetKernel::F, "f(0)", 1.0 / 12.0, f0, 1e-10);
    limit(BinetKernel::F, "f''(0)", -1.0 / 360.0, 2.0 * f_u2, 1e-8);
    let (g_slope, _) = extrapolate_even(|u| BinetKernel::G.eval(u) / u, 0.4, 6);
    limit(BinetKernel::G, "g'(0)", 1.0 / 12.0, g_slope, 1e-10);
    let (h_curv, _) = extrapolate_even(|u| 2.0 * BinetKernel::H.eval(u) / (u * u), 0.4, 6);
    limit(BinetKernel::H, "h''(0)", 1.0 / 6.0, h_curv, 1e-9);
    let (h0, _) = extrapolate_even(|u| BinetKernel::H.eval(u), 0.4, 6);
    limit(BinetKernel::H, "h(0)", 0.0, h0, 1e-12);

    for (kernel, name, bound) in [
        (BinetKernel::F, "sup|f'''|", 1.0 / 1022.0),
        (BinetKernel::G, "sup|g'''|", 1.0 / 120.0),
        (BinetKernel::H, "sup|h'''|", 1.0 / 23.0),
    ] {
        let mut worst = (0.0f64, U_MIN);
        let mut u = U_MIN;
        while u <= U_MAX {
            let v = kernel.derivative(3, u).abs();
            if v > worst.0 {
                worst = (v, u);
            }
            u *= 1.0 + STEP;
        }
        let tail = third_derivative_tail(kernel, U_MAX);
        let observed = worst.0.max(tail);
        checks.push(BinetCheck {
            kernel,
            quantity: name.to_string(),
            expected: bound,
            observed,
            tolerance: 0.0,
            at_u: Some(if tail > worst.0 { U_MAX } else { worst.1 }),
            pass: crate::real::certified_le(observed, bound),
        });
    }

    BinetReport {
        sample_max_u: U_MAX,
        geometric_step: STEP,
        checks,
    }
}
