use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

/// A 2x2 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix2 {
    pub a: [[Complex64; 2]; 2],
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

impl Matrix2 {
    pub fn new(a11: Complex64, a12: Complex64, a21: Complex64, a22: Complex64) -> Self {
        Self { a: [[a11, a12], [a21, a22]] }
    }

    pub fn real(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Self::new(c(a11), c(a12), c(a21), c(a22))
    }

    pub fn identity() -> Self {
        Self::real(1.0, 0.0, 0.0, 1.0)
    }

    pub fn diag(d1: Complex64, d2: Complex64) -> Self {
        Self::new(d1, c(0.0), c(0.0), d2)
    }

    pub fn det(&self) -> Complex64 {
        self.a[0][0] * self.a[1][1] - self.a[0][1] * self.a[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.a[0][0] + self.a[1][1]
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self { a: self.a.map(|row| row.map(|x| x * k)) }
    }

    pub fn inverse(&self) -> Self {
        let [[a, b], [cc, d]] = self.a;
        Self::new(d, -b, -cc, a).scale(self.det().inv())
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.inverse() } else { *self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.a.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max)
    }

    /// Whether `det = 1` within `tol`.
    pub fn is_group_element(&self, tol: f64) -> bool {
        (self.det() - 1.0).norm() <= tol
    }

    /// Exponential of a traceless matrix: `cosh(mu) I + sinh(mu)/mu W` with
    /// `mu^2 = -det W`.
    pub fn exp_traceless(&self) -> Self {
        let mu2 = -self.det();
        let mu = mu2.sqrt();
        let (ch, sh) = if mu.norm() < 1e-4 {
            (c(1.0) + mu2 / 2.0 + mu2 * mu2 / 24.0, c(1.0) + mu2 / 6.0 + mu2 * mu2 / 120.0)
        } else {
            (mu.cosh(), mu.sinh() / mu)
        };
        Self::identity().scale(ch) + self.scale(sh)
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;
    fn mul(self, o: Matrix2) -> Matrix2 {
        let mut r = [[c(0.0); 2]; 2];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.a[i][0] * o.a[0][j] + self.a[i][1] * o.a[1][j];
            }
        }
        Matrix2 { a: r }
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;
    fn add(self, o: Matrix2) -> Matrix2 {
        Matrix2::new(
            self.a[0][0] + o.a[0][0],
            self.a[0][1] + o.a[0][1],
            self.a[1][0] + o.a[1][0],
            self.a[1][1] + o.a[1][1],
        )
    }
}

impl Sub for Matrix2 {
    type Output = Matrix2;
    fn sub(self, o: Matrix2) -> Matrix2 {
        self + o.scale(c(-1.0))
    }
}

/// Coordinates in the basis `X = [[0,1],[0,0]]`, `H = diag(1,-1)`,
/// `Y = [[0,0],[1,0]]` of sl(2).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LieVector {
    pub x: Complex64,
    pub eta: Complex64,
    pub y: Complex64,
}

impl LieVector {
    pub fn new(x: Complex64, eta: Complex64, y: Complex64) -> Self {
        Self { x, eta, y }
    }

    pub const X: LieVector = LieVector {
        x: Complex64::new(1.0, 0.0),
        eta: Complex64::new(0.0, 0.0),
        y: Complex64::new(0.0, 0.0),
    };
    pub const H: LieVector = LieVector {
        x: Complex64::new(0.0, 0.0),
        eta: Complex64::new(1.0, 0.0),
        y: Complex64::new(0.0, 0.0),
    };
    pub const Y: LieVector = LieVector {
        x: Complex64::new(0.0, 0.0),
        eta: Complex64::new(0.0, 0.0),
        y: Complex64::new(1.0, 0.0),
    };

    pub fn to_matrix(self) -> Matrix2 {
        Matrix2::new(self.eta, self.x, self.y, -self.eta)
    }

    pub fn scale(self, k: Complex64) -> Self {
        Self::new(self.x * k, self.eta * k, self.y * k)
    }
}

/// The bilinear form with Gram matrix `[[0,0,-1],[0,-2,0],[-1,0,0]]` in the
/// `X, H, Y` ordering; a quarter of the Killing form.
pub fn form_b(u: LieVector, v: LieVector) -> Complex64 {
    -(u.x * v.y) - u.y * v.x - 2.0 * u.eta * v.eta
}

/// Gradient of the trace with respect to `form_b`:
/// `-a21 Y - a12 X - (a11 - a22)/2 H`.
pub fn grad_trace(a: &Matrix2) -> LieVector {
    LieVector::new(-a.a[0][1], -(a.a[0][0] - a.a[1][1]) / 2.0, -a.a[1][0])
}

/// Centered difference of `W -> tr(A exp(tW))` at `t = 0`.
pub fn trace_derivative_fd(a: &Matrix2, w: LieVector, step: f64) -> Complex64 {
    let plus = (*a * w.scale(c(step)).to_matrix().exp_traceless()).trace();
    let minus = (*a * w.scale(c(-step)).to_matrix().exp_traceless()).trace();
    (plus - minus) / (2.0 * step)
}

/// Largest residual among `tr(AB) + tr(AB^-1) = tr(A) tr(B)`,
/// `tr(A) = tr(A^-1)` and `tr(AB) = tr(BA)`.
pub fn trace_identities_check(a: &Matrix2, b: &Matrix2) -> f64 {
    let ab = (*a * *b).trace();
    let r1 = (ab + (*a * b.inverse()).trace() - a.trace() * b.trace()).norm();
    let r2 = (a.trace() - a.inverse().trace()).norm();
    let r3 = (ab - (*b * *a).trace()).norm();
    r1.max(r2).max(r3)
}

/// Right-hand side of the gradient pairing identity,
/// `tr(AB^-1)/2 - tr(AB)/2`.
pub fn gradient_pairing_rhs(a: &Matrix2, b: &Matrix2) -> Complex64 {
    ((*a * b.inverse()).trace() - (*a * *b).trace()) / 2.0
}
