//! Certified enclosures of the complex roots of rational polynomials.
//!
//! Approximations come from an `f64` Aberth iteration and are refined by
//! Weierstrass (Durand-Kerner) steps in dyadic Gaussian rationals. With
//! `W_i = p(z_i) / (lc(p) prod_{j != i} (z_i - z_j))`, the disks
//! `D(z_i, n |W_i|)` cover every root and each connected component of their
//! union holds as many roots as disks; pairwise disjoint disks therefore
//! isolate one root each.

use num_complex::{Complex, Complex64};
use num_traits::{One, Signed, Zero};

use super::rat::{from_f64, mul_pow2, round_dyadic};
use super::real::{sqrt_enclosure, sqrt_upper};
use super::roots::squarefree_decomposition;
use super::{to_f64, ArithError, Rat, UPoly};

pub const DEFAULT_PRECISION_CAP: u32 = 4096;

const DEFAULT_TARGET_BITS: u32 = 40;
const MAX_STEPS: usize = 400;

type Gauss = Complex<Rat>;

/// A closed disk known to contain exactly one distinct root, counted with the
/// given multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBox {
    pub re: Rat,
    pub im: Rat,
    pub radius: Rat,
    pub multiplicity: usize,
}

impl ComplexBox {
    fn exact(re: Rat, multiplicity: usize) -> Self {
        ComplexBox { re, im: Rat::zero(), radius: Rat::zero(), multiplicity }
    }

    /// Enclosure of the modulus of the root.
    pub fn abs_enclosure(&self, bits: u32) -> (Rat, Rat) {
        let n2 = &self.re * &self.re + &self.im * &self.im;
        let (lo, hi) = sqrt_enclosure(&n2, bits);
        let lo = &lo - &self.radius;
        (if lo.is_negative() { Rat::zero() } else { lo }, hi + &self.radius)
    }

    /// Whether the disk meets the real axis (a real root is then possible).
    pub fn meets_real_axis(&self) -> bool {
        self.im.abs() <= self.radius
    }

    pub fn contains(&self, re: &Rat, im: &Rat) -> bool {
        let dr = re - &self.re;
        let di = im - &self.im;
        &dr * &dr + &di * &di <= &self.radius * &self.radius
    }

    pub fn center_f64(&self) -> (f64, f64) {
        (to_f64(&self.re), to_f64(&self.im))
    }
}

/// Root disks with radius at most `2^-40 max(1, |z|)`.
pub fn complex_roots(p: &UPoly<Rat>) -> Result<Vec<ComplexBox>, ArithError> {
    complex_roots_with_cap(p, DEFAULT_TARGET_BITS, DEFAULT_PRECISION_CAP)
}

/// Root disks of relative radius at most `2^-target_bits`, one per distinct
/// root, sorted by center. Working precision never exceeds `cap` bits.
pub fn complex_roots_with_cap(p: &UPoly<Rat>, target_bits: u32, cap: u32) -> Result<Vec<ComplexBox>, ArithError> {
    let mut out = Vec::new();
    for (s, mult) in squarefree_decomposition(p) {
        for (re, im, radius) in squarefree_roots(&s, target_bits, cap)? {
            out.push(ComplexBox { re, im, radius, multiplicity: mult });
        }
    }
    out.sort_by(|a, b| a.re.cmp(&b.re).then(a.im.cmp(&b.im)));
    Ok(out)
}

fn squarefree_roots(s: &UPoly<Rat>, target: u32, cap: u32) -> Result<Vec<(Rat, Rat, Rat)>, ArithError> {
    let n = match s.degree() {
        None | Some(0) => return Ok(Vec::new()),
        Some(n) => n,
    };
    if n == 1 {
        let b = ComplexBox::exact(-s.coeff(0) / s.coeff(1), 1);
        return Ok(vec![(b.re, b.im, b.radius)]);
    }
    let mut bits = 64u32.min(cap);
    let mut z: Vec<Gauss> = aberth_f64(s)
        .into_iter()
        .map(|c| Complex::new(round_dyadic(&from_f64(c.re), bits), round_dyadic(&from_f64(c.im), bits)))
        .collect();
    let nr = Rat::from_integer(n.into());
    for _ in 0..MAX_STEPS {
        separate(&mut z, bits);
        let w = weierstrass(s, &z);
        let radii: Vec<Rat> = w.iter().map(|wi| sqrt_upper(&(&nr * &nr * norm2(wi)), bits + 8)).collect();
        if certified(&z, &radii, target) {
            return Ok(z.into_iter().zip(radii).map(|(c, r)| (c.re, c.im, r)).collect());
        }
        let floor = mul_pow2(&Rat::one(), -(bits as i64) + 8);
        let stalled = w.iter().all(|wi| norm2(wi) <= &floor * &floor);
        if stalled {
            if bits >= cap {
                return Err(ArithError::PrecisionExhausted(cap));
            }
            bits = (bits * 2).min(cap);
        }
        z = z
            .iter()
            .zip(&w)
            .map(|(zi, wi)| Complex::new(round_dyadic(&(&zi.re - &wi.re), bits), round_dyadic(&(&zi.im - &wi.im), bits)))
            .collect();
    }
    Err(ArithError::PrecisionExhausted(bits))
}

fn norm2(z: &Gauss) -> Rat {
    &z.re * &z.re + &z.im * &z.im
}

fn separate(z: &mut [Gauss], bits: u32) {
    let eps = mul_pow2(&Rat::one(), -(bits as i64) + 4);
    for i in 1..z.len() {
        let mut k = 1i64;
        while z[..i].contains(&z[i]) {
            let d = &eps * Rat::from_integer(k.into());
            z[i] = Complex::new(&z[i].re + &d, &z[i].im + &d);
            k += 1;
        }
    }
}

fn eval(p: &UPoly<Rat>, z: &Gauss) -> Gauss {
    let mut acc = Gauss::zero();
    for c in p.coeffs().iter().rev() {
        acc = &acc * z + Gauss::new(c.clone(), Rat::zero());
    }
    acc
}

fn weierstrass(p: &UPoly<Rat>, z: &[Gauss]) -> Vec<Gauss> {
    let lc = Gauss::new(p.lc(), Rat::zero());
    (0..z.len())
        .map(|i| {
            let mut den = lc.clone();
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    den = den * (&z[i] - zj);
                }
            }
            eval(p, &z[i]) / den
        })
        .collect()
}

fn certified(z: &[Gauss], radii: &[Rat], target: u32) -> bool {
    let t2 = mul_pow2(&Rat::one(), -2 * target as i64);
    for (zi, ri) in z.iter().zip(radii) {
        let scale = norm2(zi).max(Rat::one());
        if ri * ri > &t2 * &scale {
            return false;
        }
    }
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            let s = &radii[i] + &radii[j];
            if norm2(&(&z[i] - &z[j])) <= &s * &s {
                return false;
            }
        }
    }
    true
}

/// Floating point starting values for a rational polynomial.
fn aberth_f64(p: &UPoly<Rat>) -> Vec<Complex64> {
    aberth(&p.coeffs().iter().map(|a| Complex64::new(to_f64(a), 0.0)).collect::<Vec<_>>())
}

/// Approximate roots of a polynomial with complex floating point
/// coefficients (lowest degree first) by the Aberth-Ehrlich iteration.
pub(crate) fn aberth(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lc = coeffs[n];
    let c: Vec<Complex64> = coeffs.iter().map(|a| a / lc).collect();
    let finite = c.iter().all(|v| v.is_finite());
    let radius = if finite {
        (0..n)
            .map(|i| c[i].norm().powf(1.0 / (n - i) as f64))
            .fold(0.0f64, f64::max)
            .max(1e-3)
    } else {
        1.0
    };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
        .collect();
    if !finite {
        return z;
    }
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (mut v, mut d) = (Complex64::zero(), Complex64::zero());
            for a in c.iter().rev() {
                d = d * z[i] + v;
                v = v * z[i] + a;
            }
            if v == Complex64::zero() {
                continue;
            }
            let ratio = v / d;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::one() - ratio * s);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}
