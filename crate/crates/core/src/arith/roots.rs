//! Certified isolation of all complex roots of a squarefree rational polynomial.
//!
//! Approximations come from Weierstrass (Durand-Kerner) iteration, first in
//! doubles, then in ball arithmetic at the working precision. Each
//! approximation `z_i` is certified with the inclusion disk of radius
//! `n |W_i|`, `W_i = f(z_i) / prod_{j != i} (z_i - z_j)`: when these disks are
//! pairwise disjoint each holds exactly one root. A disk whose complex
//! conjugate meets no other disk holds a real root.

use num_traits::ToPrimitive;

use super::ball::{BallComplex, BallReal};
use super::dyadic::{Dyadic, Round};
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct RootIsolation {
    /// Real roots in increasing order.
    pub real: Vec<BallReal>,
    /// One representative (positive imaginary part) per conjugate pair, sorted
    /// by real part.
    pub complex: Vec<BallComplex>,
    /// Working precision at which isolation succeeded.
    pub precision: u32,
}

impl RootIsolation {
    pub fn count(&self) -> usize {
        self.real.len() + 2 * self.complex.len()
    }
}

#[derive(Clone, Copy)]
struct C64 {
    re: f64,
    im: f64,
}

impl C64 {
    fn add(self, o: C64) -> C64 {
        C64 { re: self.re + o.re, im: self.im + o.im }
    }
    fn sub(self, o: C64) -> C64 {
        C64 { re: self.re - o.re, im: self.im - o.im }
    }
    fn mul(self, o: C64) -> C64 {
        C64 {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
    fn div(self, o: C64) -> C64 {
        let n = o.re * o.re + o.im * o.im;
        C64 {
            re: (self.re * o.re + self.im * o.im) / n,
            im: (self.im * o.re - self.re * o.im) / n,
        }
    }
    fn norm(self) -> f64 {
        self.re.hypot(self.im)
    }
}

fn initial_guesses(f: &Poly) -> Vec<C64> {
    let n = f.degree().unwrap_or(0);
    let coeffs: Vec<f64> = f
        .monic()
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(0.0))
        .collect();
    // Cauchy bound for the starting circle
    let bound = 1.0 + coeffs[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let eval = |z: C64| {
        coeffs
            .iter()
            .rev()
            .fold(C64 { re: 0.0, im: 0.0 }, |acc, &c| acc.mul(z).add(C64 { re: c, im: 0.0 }))
    };
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            C64 { re: bound * ang.cos(), im: bound * ang.sin() }
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut den = C64 { re: 1.0, im: 0.0 };
            for j in 0..n {
                if j != i {
                    den = den.mul(z[i].sub(z[j]));
                }
            }
            let w = eval(z[i]).div(den);
            if w.re.is_finite() && w.im.is_finite() {
                z[i] = z[i].sub(w);
                moved = moved.max(w.norm());
            }
        }
        if moved < 1e-15 * bound {
            break;
        }
    }
    z
}

fn eval_ball(f: &Poly, z: &BallComplex) -> BallComplex {
    let prec = z.prec();
    f.coeffs().iter().rev().fold(BallComplex::from_int(0, prec), |acc, c| {
        acc.mul(z).add(&BallComplex::real(BallReal::from_rat(c, prec)))
    })
}

/// Weierstrass corrections `W_i` for the current approximations.
fn corrections(f: &Poly, z: &[BallComplex]) -> Option<Vec<BallComplex>> {
    let n = z.len();
    let prec = z[0].prec();
    (0..n)
        .map(|i| {
            let mut den = BallComplex::from_int(1, prec);
            for j in 0..n {
                if j != i {
                    den = den.mul(&z[i].sub(&z[j]));
                }
            }
            eval_ball(f, &z[i]).div(&den)
        })
        .collect()
}

fn disks_disjoint(c1: &BallComplex, r1: &Dyadic, c2: &BallComplex, r2: &Dyadic) -> bool {
    let d = c1.sub(c2).abs();
    let gap = r1.add(r2);
    d.lower() > gap
}

/// Isolates all roots of `f` to at least `precision` bits, doubling the
/// working precision up to `cap` as needed.
pub fn isolate_roots(f: &Poly, precision: u32, cap: u32) -> Result<RootIsolation> {
    let n = f.degree().ok_or(Error::ZeroDegree)?;
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let f = f.monic();
    if n == 1 {
        let root = -f.coeff(0);
        return Ok(RootIsolation {
            real: vec![BallReal::from_rat(&root, precision)],
            complex: Vec::new(),
            precision,
        });
    }
    let seeds = initial_guesses(&f);
    let mut wp = precision + 16;
    let mut z: Vec<BallComplex> = seeds
        .iter()
        .map(|c| BallComplex::new(BallReal::from_f64(c.re, wp), BallReal::from_f64(c.im, wp)))
        .collect();
    loop {
        z = z
            .iter()
            .map(|c| BallComplex::new(c.re.with_prec(wp), c.im.with_prec(wp)).mid_point())
            .collect();
        // Newton-like refinement at this precision: quadratic convergence, so
        // log2(wp) steps plus a margin suffice from a good start.
        let steps = 2 * (32 - wp.leading_zeros()) + 8;
        for _ in 0..steps {
            let Some(w) = corrections(&f, &z) else { break };
            let small = w
                .iter()
                .all(|wi| wi.abs().upper() < Dyadic::pow2(-(wp as i64) + 4));
            z = z.iter().zip(&w).map(|(zi, wi)| zi.sub(wi).mid_point()).collect();
            if small {
                break;
            }
        }
        if let Some(iso) = certify(&f, &z, n, precision) {
            return Ok(iso);
        }
        if wp >= cap {
            return Err(Error::PrecisionExhausted {
                what: format!("root isolation of {f}"),
                cap,
            });
        }
        wp = (wp * 2).min(cap);
    }
}

fn certify(f: &Poly, z: &[BallComplex], n: usize, precision: u32) -> Option<RootIsolation> {
    let w = corrections(f, z)?;
    let radii: Vec<Dyadic> = w
        .iter()
        .map(|wi| wi.abs().upper().mul(&Dyadic::from_int(n as i64)).round(30, Round::Up))
        .collect();
    let target = Dyadic::pow2(-(precision as i64));
    for i in 0..n {
        if radii[i] > target && !radii[i].is_zero() {
            return None;
        }
        for j in (i + 1)..n {
            if !disks_disjoint(&z[i], &radii[i], &z[j], &radii[j]) {
                return None;
            }
        }
    }
    let mut real = Vec::new();
    let mut complex = Vec::new();
    for i in 0..n {
        let conj = z[i].conj();
        let meets: Vec<usize> = (0..n)
            .filter(|&j| !disks_disjoint(&conj, &radii[i], &z[j], &radii[j]))
            .collect();
        let prec = z[i].prec();
        match meets.as_slice() {
            [j] if *j == i => {
                real.push(BallReal::with_radius(z[i].re.mid().clone(), radii[i].clone(), prec));
            }
            [j] => {
                if z[i].im.mid().is_negative() {
                    continue;
                }
                debug_assert!(z[*j].im.mid().is_negative());
                complex.push(BallComplex::new(
                    BallReal::with_radius(z[i].re.mid().clone(), radii[i].clone(), prec),
                    BallReal::with_radius(z[i].im.mid().clone(), radii[i].clone(), prec),
                ));
            }
            _ => return None,
        }
    }
    if real.len() + 2 * complex.len() != n {
        return None;
    }
    real.sort_by(|a, b| a.mid().cmp(b.mid()));
    complex.sort_by(|a, b| a.re.mid().cmp(b.re.mid()));
    Some(RootIsolation {
        real,
        complex,
        precision,
    })
}

/// Reports whether a ball certainly excludes zero, used by callers that need
/// exact sign information.
pub fn sign_certain(b: &BallReal) -> Option<i8> {
    if b.lower() > Dyadic::zero() {
        Some(1)
    } else if b.upper() < Dyadic::zero() {
        Some(-1)
    } else if b.is_exact() && b.mid().is_zero() {
        Some(0)
    } else {
        None
    }
}
