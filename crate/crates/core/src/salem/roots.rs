//! Certified isolation of all complex roots of a squarefree integer
//! polynomial.
//!
//! Approximations z_1..z_n come from a floating-point Aberth run and are then
//! improved by Aberth steps in exact Gaussian-rational arithmetic. With the
//! Weierstrass corrections W_i = p(z_i) / (lc * prod_{j != i} (z_i - z_j)),
//! the roots of p are the eigenvalues of diag(z) - W 1^T, so by Gerschgorin
//! every root lies in a disc centred at z_i - W_i of radius (n-1)|W_i|, and
//! a disc disjoint from the others holds exactly one root. Boxes around
//! pairwise disjoint discs are therefore certified isolating regions.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use super::SturmChain;
use crate::numeric::{sqrt_lower, sqrt_upper, ComplexBox, Interval, QComplex};
use crate::poly::{discriminant, IntPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("polynomial has repeated roots")]
    NotSquarefree,
    #[error("a constant polynomial has no roots to isolate")]
    Constant,
    #[error("root isolation did not converge within the precision limit")]
    NoConvergence,
}

/// Certified region containing exactly one root. Real roots have a
/// degenerate imaginary interval [0, 0].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootBox {
    pub re: Interval,
    pub im: Interval,
    /// Index of the complex-conjugate root; `None` for real roots.
    pub conjugate_partner: Option<usize>,
}

impl RootBox {
    pub fn is_real(&self) -> bool {
        self.conjugate_partner.is_none()
    }

    pub fn as_complex(&self) -> ComplexBox {
        ComplexBox::new(self.re.clone(), self.im.clone())
    }

    pub fn width(&self) -> BigRational {
        self.re.width().max(self.im.width())
    }
}

/// All roots of a squarefree polynomial in canonical order: real roots
/// ascending, then conjugate pairs ordered by the upper root's real and
/// imaginary parts, each upper root directly followed by its conjugate.
#[derive(Debug, Clone)]
pub struct RootSet {
    poly: IntPoly,
    reals: Vec<BigRational>,
    uppers: Vec<QComplex>,
    boxes: Vec<RootBox>,
    prec: u32,
}

const START_PREC: u32 = 64;
const MAX_PREC: u32 = 1 << 15;
const STEPS_PER_LEVEL: usize = 8;

pub fn isolate_all_roots(p: &IntPoly) -> Result<RootSet, RootError> {
    if p.is_constant() {
        return Err(RootError::Constant);
    }
    if !p.is_squarefree() {
        return Err(RootError::NotSquarefree);
    }
    let n_real = SturmChain::new(p)
        .map_err(|_| RootError::NotSquarefree)?
        .count_all();
    let approx = aberth_f64(p);
    let (reals, uppers) = split_conjugates(&approx, n_real);
    let mut set = RootSet {
        poly: p.clone(),
        reals: reals.iter().map(|&x| crate::numeric::from_f64(x)).collect(),
        uppers: uppers
            .iter()
            .map(|z| QComplex::new(crate::numeric::from_f64(z.re), crate::numeric::from_f64(z.im)))
            .collect(),
        boxes: Vec::new(),
        prec: START_PREC,
    };
    let mut prec = START_PREC;
    loop {
        set.step(prec);
        if let Some(boxes) = set.certify(prec) {
            set.boxes = boxes;
            set.prec = prec;
            set.canonicalize();
            return Ok(set);
        }
        prec *= 2;
        if prec > MAX_PREC {
            return Err(RootError::NoConvergence);
        }
    }
}

impl RootSet {
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn boxes(&self) -> &[RootBox] {
        &self.boxes
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn real_count(&self) -> usize {
        self.reals.len()
    }

    /// Largest box side.
    pub fn max_width(&self) -> BigRational {
        self.boxes
            .iter()
            .map(RootBox::width)
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    /// Exact approximation used as the centre of box i.
    pub fn approximation(&self, i: usize) -> QComplex {
        self.point(i)
    }

    fn point(&self, i: usize) -> QComplex {
        let r = self.reals.len();
        if i < r {
            QComplex::from_real(self.reals[i].clone())
        } else {
            let z = &self.uppers[(i - r) / 2];
            if (i - r).is_multiple_of(2) {
                z.clone()
            } else {
                z.conj()
            }
        }
    }

    fn points(&self) -> Vec<QComplex> {
        (0..self.poly.deg()).map(|i| self.point(i)).collect()
    }

    /// New set with every box of side at most `width`, each inside the box
    /// of the same index here.
    pub fn refine(&self, width: &BigRational) -> Result<RootSet, RootError> {
        let mut next = self.clone();
        let mut prec = self.prec;
        while &next.max_width() > width {
            prec *= 2;
            if prec > MAX_PREC {
                return Err(RootError::NoConvergence);
            }
            next.step(prec);
            let Some(boxes) = next.certify(prec) else {
                continue;
            };
            if let Some(aligned) = next.align_to(self, boxes) {
                next = aligned;
                next.prec = prec;
            }
        }
        Ok(next)
    }

    /// Reorders freshly certified boxes so that index i lies inside the old
    /// box i, or gives up when some old box contains no new one.
    fn align_to(&self, old: &RootSet, boxes: Vec<RootBox>) -> Option<RootSet> {
        let n = boxes.len();
        let mut perm = vec![usize::MAX; n];
        for (i, ob) in old.boxes.iter().enumerate() {
            let j = (0..n).find(|&j| boxes[j].as_complex().is_subset_of(&ob.as_complex()))?;
            perm[i] = j;
        }
        // new index j is built from point j; permuting points keeps the layout
        // only when reals stay reals and conjugate pairs stay adjacent
        let r = old.reals.len();
        let mut out = self.clone();
        for (slot, &src) in out.reals.iter_mut().zip(&perm[..r]) {
            if src >= r {
                return None;
            }
            *slot = self.reals[src].clone();
        }
        for k in 0..old.uppers.len() {
            let j = perm[r + 2 * k];
            if j < r || !(j - r).is_multiple_of(2) || perm[r + 2 * k + 1] != j + 1 {
                return None;
            }
            out.uppers[k] = self.uppers[(j - r) / 2].clone();
        }
        out.boxes = (0..n)
            .map(|i| {
                let mut b = boxes[perm[i]].clone();
                b.conjugate_partner = old.boxes[i].conjugate_partner;
                b
            })
            .collect();
        Some(out)
    }

    /// Simultaneous Aberth steps in fixed point with `prec` fractional bits.
    /// The steps only steer the approximations; certification is exact.
    fn step(&mut self, prec: u32) {
        let coeffs: Vec<BigInt> = self.poly.coeffs().to_vec();
        let dcoeffs: Vec<BigInt> = self.poly.derivative().coeffs().to_vec();
        let r = self.reals.len();
        for _ in 0..STEPS_PER_LEVEL {
            let pts: Vec<Fixed> = self.points().iter().map(|z| Fixed::from_q(z, prec)).collect();
            let mut moved = BigInt::zero();
            let mut update = |i: usize| -> QComplex {
                let z = &pts[i];
                let Some(w) = aberth_fixed(&coeffs, &dcoeffs, &pts, i, prec) else {
                    return z.to_q(prec);
                };
                let m = w.re.abs().max(w.im.abs());
                if m > moved {
                    moved = m;
                }
                z.sub(&w).to_q(prec)
            };
            let new_reals: Vec<BigRational> = (0..r).map(|i| update(i).re).collect();
            let new_uppers: Vec<QComplex> =
                (0..self.uppers.len()).map(|k| update(r + 2 * k)).collect();
            self.reals = new_reals;
            self.uppers = new_uppers;
            if moved <= BigInt::one() {
                break;
            }
        }
    }

    /// Certified boxes for the current points, if the discs are disjoint and
    /// consistent with the real/non-real split.
    fn certify(&self, prec: u32) -> Option<Vec<RootBox>> {
        // Work in Gaussian integers: z = Z / 2^prec, boxes in units of 2^-pad.
        let pts: Vec<Fixed> = self.points().iter().map(|z| Fixed::from_q(z, prec)).collect();
        let n = pts.len();
        let coeffs = self.poly.coeffs();
        let lc = self.poly.leading()?.clone();
        let pad_bits = prec + 8;
        let shift = (pad_bits - prec) as usize;
        let unit = BigRational::new(BigInt::one(), BigInt::one() << pad_bits as usize);
        let mut discs = Vec::with_capacity(n);
        for i in 0..n {
            let z = &pts[i];
            // P = p(z) 2^(n prec), Q = lc prod (z - z_j) 2^((n-1) prec), w = P / (Q 2^prec)
            let mut big_p = Fixed { re: BigInt::zero(), im: BigInt::zero() };
            for (k, c) in coeffs.iter().enumerate().rev() {
                big_p = gauss_mul(&big_p, z);
                big_p.re += c << (prec as usize * (n - k));
            }
            let mut big_q = Fixed { re: lc.clone(), im: BigInt::zero() };
            for (j, zj) in pts.iter().enumerate() {
                if j != i {
                    big_q = gauss_mul(&big_q, &z.sub(zj));
                }
            }
            let q2 = &big_q.re * &big_q.re + &big_q.im * &big_q.im;
            if q2.is_zero() {
                return None;
            }
            // w 2^pad, truncated: error below one unit per component
            let wr = ((&big_p.re * &big_q.re + &big_p.im * &big_q.im) << shift) / &q2;
            let wi = ((&big_p.im * &big_q.re - &big_p.re * &big_q.im) << shift) / &q2;
            // radius (n-1)|w| in units, rounded up
            let p2 = &big_p.re * &big_p.re + &big_p.im * &big_p.im;
            let num = (p2 * BigInt::from((n - 1) * (n - 1))) << (2 * shift);
            let v = (&num + &q2 - 1u32) / &q2;
            let h = crate::poly::ceil_sqrt(&v) + 2u32;
            let cr = (&z.re << shift) - wr;
            let ci = (&z.im << shift) - wi;
            let at = |x: BigInt| BigRational::from_integer(x) * &unit;
            discs.push(ComplexBox::new(
                Interval::new(at(&cr - &h), at(&cr + &h)),
                Interval::new(at(&ci - &h), at(&ci + &h)),
            ));
        }
        for i in 0..n {
            for j in i + 1..n {
                if discs[i].intersects(&discs[j]) {
                    return None;
                }
            }
        }
        let r = self.reals.len();
        let mut boxes = Vec::with_capacity(n);
        for (i, d) in discs.into_iter().enumerate() {
            if i < r {
                // a disc symmetric about the real axis holding one root holds a real one
                boxes.push(RootBox {
                    re: d.re,
                    im: Interval::point(BigRational::zero()),
                    conjugate_partner: None,
                });
            } else {
                let upper = (i - r).is_multiple_of(2);
                let ok = if upper { d.im.is_positive() } else { d.im.is_negative() };
                if !ok {
                    return None;
                }
                let partner = if upper { i + 1 } else { i - 1 };
                boxes.push(RootBox {
                    re: d.re,
                    im: d.im,
                    conjugate_partner: Some(partner),
                });
            }
        }
        Some(boxes)
    }

    fn canonicalize(&mut self) {
        let r = self.reals.len();
        let mut real_idx: Vec<usize> = (0..r).collect();
        real_idx.sort_by(|&a, &b| self.reals[a].cmp(&self.reals[b]));
        let mut pair_idx: Vec<usize> = (0..self.uppers.len()).collect();
        pair_idx.sort_by(|&a, &b| cmp_complex(&self.uppers[a], &self.uppers[b]));
        let reals = real_idx.iter().map(|&i| self.reals[i].clone()).collect();
        let uppers = pair_idx.iter().map(|&k| self.uppers[k].clone()).collect();
        let mut boxes = Vec::with_capacity(self.boxes.len());
        for &i in &real_idx {
            boxes.push(self.boxes[i].clone());
        }
        for (slot, &k) in pair_idx.iter().enumerate() {
            let at = r + 2 * slot;
            let mut up = self.boxes[r + 2 * k].clone();
            let mut down = self.boxes[r + 2 * k + 1].clone();
            up.conjugate_partner = Some(at + 1);
            down.conjugate_partner = Some(at);
            boxes.push(up);
            boxes.push(down);
        }
        self.reals = reals;
        self.uppers = uppers;
        self.boxes = boxes;
    }
}

fn cmp_complex(a: &QComplex, b: &QComplex) -> Ordering {
    a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im))
}

fn gauss_mul(a: &Fixed, b: &Fixed) -> Fixed {
    Fixed {
        re: &a.re * &b.re - &a.im * &b.im,
        im: &a.re * &b.im + &a.im * &b.re,
    }
}

/// Complex number (re + i im) / 2^prec with integer parts.
#[derive(Debug, Clone)]
struct Fixed {
    re: BigInt,
    im: BigInt,
}

impl Fixed {
    fn from_q(z: &QComplex, prec: u32) -> Fixed {
        let scale = |x: &BigRational| (x.numer() << prec as usize) / x.denom();
        Fixed { re: scale(&z.re), im: scale(&z.im) }
    }

    fn to_q(&self, prec: u32) -> QComplex {
        let den = BigInt::one() << prec as usize;
        QComplex::new(
            BigRational::new(self.re.clone(), den.clone()),
            BigRational::new(self.im.clone(), den),
        )
    }

    fn int(c: &BigInt, prec: u32) -> Fixed {
        Fixed { re: c << prec as usize, im: BigInt::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, o: &Fixed) -> Fixed {
        Fixed { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn sub(&self, o: &Fixed) -> Fixed {
        Fixed { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn mul(&self, o: &Fixed, prec: u32) -> Fixed {
        Fixed {
            re: (&self.re * &o.re - &self.im * &o.im) >> prec as usize,
            im: (&self.re * &o.im + &self.im * &o.re) >> prec as usize,
        }
    }

    fn div(&self, o: &Fixed, prec: u32) -> Option<Fixed> {
        let n2 = &o.re * &o.re + &o.im * &o.im;
        if n2.is_zero() {
            return None;
        }
        let re = (&self.re * &o.re + &self.im * &o.im) << prec as usize;
        let im = (&self.im * &o.re - &self.re * &o.im) << prec as usize;
        Some(Fixed { re: re / &n2, im: im / n2 })
    }

    fn eval(coeffs: &[BigInt], z: &Fixed, prec: u32) -> Fixed {
        coeffs.iter().rev().fold(Fixed::int(&BigInt::zero(), prec), |acc, c| {
            acc.mul(z, prec).add(&Fixed::int(c, prec))
        })
    }
}

/// Aberth correction N / (1 - N * sum_{j != i} 1/(z_i - z_j)), N = p/p'.
fn aberth_fixed(p: &[BigInt], dp: &[BigInt], pts: &[Fixed], i: usize, prec: u32) -> Option<Fixed> {
    let z = &pts[i];
    let newton = Fixed::eval(p, z, prec).div(&Fixed::eval(dp, z, prec), prec)?;
    let one = Fixed::int(&BigInt::one(), prec);
    let mut sum = Fixed::int(&BigInt::zero(), prec);
    for (j, zj) in pts.iter().enumerate() {
        if j != i {
            let diff = z.sub(zj);
            if diff.is_zero() {
                return None;
            }
            sum = sum.add(&one.div(&diff, prec)?);
        }
    }
    let denom = one.sub(&newton.mul(&sum, prec));
    newton.div(&denom, prec)
}

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut dv = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dv = dv * z + v;
        v = v * z + a;
    }
    (v, dv)
}

/// Floating-point Aberth iteration for initial approximations.
fn aberth_f64(p: &IntPoly) -> Vec<Complex64> {
    let n = p.deg();
    let lc = p.leading().unwrap().to_f64().unwrap_or(1.0);
    let c: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|a| a.to_f64().unwrap_or(f64::MAX) / lc)
        .collect();
    let radius = (c[0].abs().max(1e-3)).powf(1.0 / n as f64).max(0.5);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..1000 {
        let mut worst = 0f64;
        for i in 0..n {
            let (v, dv) = horner(&c, z[i]);
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let newton = v / dv;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = newton / (Complex64::new(1.0, 0.0) - newton * s);
            if w.is_finite() {
                z[i] -= w;
                worst = worst.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if worst < 1e-16 {
            break;
        }
    }
    z
}

/// Splits approximations into `n_real` real values and upper-half-plane
/// representatives of the conjugate pairs.
fn split_conjugates(z: &[Complex64], n_real: usize) -> (Vec<f64>, Vec<Complex64>) {
    let mut idx: Vec<usize> = (0..z.len()).collect();
    idx.sort_by(|&a, &b| z[a].im.abs().total_cmp(&z[b].im.abs()));
    let reals = idx[..n_real].iter().map(|&i| z[i].re).collect();
    let mut rest: Vec<Complex64> = idx[n_real..].iter().map(|&i| z[i]).collect();
    rest.sort_by(|a, b| b.im.total_cmp(&a.im));
    let half = rest.len() / 2;
    // average each upper root with the conjugate of its nearest lower root
    let (upper, lower) = rest.split_at(half);
    let mut used = vec![false; lower.len()];
    let uppers = upper
        .iter()
        .map(|&u| {
            let best = (0..lower.len())
                .filter(|&k| !used[k])
                .min_by(|&a, &b| (lower[a].conj() - u).norm().total_cmp(&(lower[b].conj() - u).norm()));
            match best {
                Some(k) => {
                    used[k] = true;
                    let v = (u + lower[k].conj()) / 2.0;
                    Complex64::new(v.re, v.im.abs())
                }
                None => u,
            }
        })
        .collect();
    (reals, uppers)
}

/// Lower bound on the distance between distinct roots:
/// sqrt(3 |disc|) / (n^((n+2)/2) * ||p||_2^(n-1)).
pub fn root_separation_bound(p: &IntPoly) -> Result<BigRational, RootError> {
    let n = p.degree().ok_or(RootError::Constant)?;
    if n == 0 {
        return Err(RootError::Constant);
    }
    let disc = discriminant(p);
    if disc.is_zero() {
        return Err(RootError::NotSquarefree);
    }
    let bits = 32;
    let num = sqrt_lower(&BigRational::from_integer(disc.abs() * 3), bits);
    let n_pow = sqrt_upper(&BigRational::from_integer(num_traits::pow(BigInt::from(n), n + 2)), bits);
    let norm = sqrt_upper(&BigRational::from_integer(p.norm2_squared()), bits);
    let den = n_pow * num_traits::pow(norm, n - 1);
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat, to_f64};

    fn p(desc: &[i64]) -> IntPoly {
        IntPoly::from_desc(desc)
    }

    fn check_disjoint(set: &RootSet) {
        let b = set.boxes();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                assert!(!b[i].as_complex().intersects(&b[j].as_complex()), "{i} {j}");
            }
        }
    }

    #[test]
    fn plus_minus_i() {
        let set = isolate_all_roots(&p(&[1, 0, 1])).unwrap();
        assert_eq!(set.len(), 2);
        let b = set.boxes();
        assert_eq!(b[0].conjugate_partner, Some(1));
        assert_eq!(b[1].conjugate_partner, Some(0));
        assert!(b[0].as_complex().contains(&QComplex::new(int(0), int(1))));
        assert!(b[1].as_complex().contains(&QComplex::new(int(0), int(-1))));
        check_disjoint(&set);
    }

    #[test]
    fn quartic_two_pairs() {
        let set = isolate_all_roots(&p(&[1, 0, 0, 1, 1])).unwrap();
        assert_eq!(set.real_count(), 0);
        assert_eq!(set.len(), 4);
        assert!(set.boxes().iter().all(|b| !b.is_real()));
        check_disjoint(&set);
        for (i, b) in set.boxes().iter().enumerate() {
            let j = b.conjugate_partner.unwrap();
            assert_eq!(set.boxes()[j].conjugate_partner, Some(i));
            assert_eq!(set.boxes()[j].as_complex(), b.as_complex().conj());
        }
    }

    #[test]
    fn real_quadratic() {
        let set = isolate_all_roots(&p(&[1, -3, 1])).unwrap();
        assert_eq!(set.real_count(), 2);
        let fine = set.refine(&rat(1, 1_000_000_000)).unwrap();
        let want = [0.3819660112501051, 2.618033988749895];
        for (b, w) in fine.boxes().iter().zip(want) {
            assert!(b.is_real());
            assert!(to_f64(&b.re.lo) <= w + 1e-12 && w - 1e-12 <= to_f64(&b.re.hi));
            assert!(b.width() <= rat(1, 1_000_000_000));
        }
        for (a, b) in fine.boxes().iter().zip(set.boxes()) {
            assert!(a.as_complex().is_subset_of(&b.as_complex()));
        }
    }

    #[test]
    fn mixed_real_and_complex() {
        // (t^2 - 3t + 1)(t^2 + t + 1)(t - 5)
        let q = &(&p(&[1, -3, 1]) * &p(&[1, 1, 1])) * &p(&[1, -5]);
        let set = isolate_all_roots(&q).unwrap();
        assert_eq!(set.real_count(), 3);
        check_disjoint(&set);
        let reals: Vec<f64> = set.boxes()[..3].iter().map(|b| to_f64(&b.re.midpoint())).collect();
        assert!(reals.windows(2).all(|w| w[0] < w[1]));
        assert!((reals[2] - 5.0).abs() < 1e-9);
        assert!(set.boxes()[3].im.is_positive());
        let fine = set.refine(&rat(1, 1 << 40)).unwrap();
        assert!(fine.max_width() <= rat(1, 1 << 40));
    }

    #[test]
    fn rejects_repeated_roots() {
        let q = &p(&[1, -1]).pow(2) * &p(&[1, 1]);
        assert_eq!(isolate_all_roots(&q).unwrap_err(), RootError::NotSquarefree);
        assert_eq!(isolate_all_roots(&IntPoly::one()).unwrap_err(), RootError::Constant);
    }

    #[test]
    fn clustered_roots() {
        // roots 1/1000 apart: (1000 t - 1)(1000 t - 2)(t^2 + 1)
        let q = &(&p(&[1000, -1]) * &p(&[1000, -2])) * &p(&[1, 0, 1]);
        let set = isolate_all_roots(&q).unwrap();
        assert_eq!(set.real_count(), 2);
        check_disjoint(&set);
    }

    #[test]
    fn separation_bound_is_below_true_gap() {
        let q = p(&[1, -3, 1]);
        let sep = root_separation_bound(&q).unwrap();
        assert!(to_f64(&sep) < 5f64.sqrt());
        assert!(sep.is_positive());
        let q = p(&[1, 0, -1, -1, -1, 0, 1]);
        let sep = to_f64(&root_separation_bound(&q).unwrap());
        assert!(sep > 0.0 && sep < 0.5);
    }
}
