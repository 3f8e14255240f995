//! Real algebraic numbers as residues in `Q[x]/(m)` tagged with an isolating
//! interval selecting which real root of `m` is meant.
//!
//! Arithmetic is exact field arithmetic modulo `m`. Signs and numeric
//! enclosures are obtained by evaluating the representative over the
//! isolating interval with interval arithmetic, refining the interval by
//! bisection until the result is conclusive; every answer is therefore
//! certified, never rounded.

use crate::error::SftError;
use crate::interval::RationalInterval;
use crate::poly::{sturm_chain, sturm_count_halfopen, IntPoly, RatPoly};
use crate::Result;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone)]
pub struct AlgebraicNumber {
    modulus: IntPoly,
    representative: RatPoly,
    root_selector: RationalInterval,
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.representative == other.representative
    }
}
impl Eq for AlgebraicNumber {}

impl AlgebraicNumber {
    /// Wrap a representative in the field `Q[x]/(modulus)`; reduces mod the
    /// modulus. The caller vouches for irreducibility (see
    /// [`perron_data`](crate::spectral::perron_data), which certifies it).
    pub fn new(modulus: IntPoly, representative: RatPoly, root_selector: RationalInterval) -> Self {
        assert!(modulus.is_monic() && modulus.deg() >= 1);
        let representative = if representative.deg() >= modulus.deg() {
            representative.div_rem(&modulus.to_rat()).1
        } else {
            representative
        };
        AlgebraicNumber {
            modulus,
            representative,
            root_selector,
        }
    }

    /// Check that the selector isolates exactly one real root (sign change
    /// plus Sturm count equal to one).
    pub fn verify_selector(&self) -> Result<()> {
        if self.modulus.deg() == 1 {
            let root = -self.modulus.coeff(0);
            let r = BigRational::from(root);
            if self.root_selector.contains(&r) {
                return Ok(());
            }
            return Err(SftError::CertificateFailure(
                "selector misses the rational root".into(),
            ));
        }
        let chain = sturm_chain(&self.modulus);
        let count = sturm_count_halfopen(&chain, &self.root_selector.lo, &self.root_selector.hi);
        let sign_lo = self.modulus.eval_rat(&self.root_selector.lo);
        let sign_hi = self.modulus.eval_rat(&self.root_selector.hi);
        if count == 1 && !sign_lo.is_zero() && !sign_hi.is_zero() {
            Ok(())
        } else {
            Err(SftError::CertificateFailure(format!(
                "selector {} does not isolate one root (count {count})",
                self.root_selector
            )))
        }
    }

    /// The residue class of `x` itself (the selected root).
    pub fn generator(modulus: IntPoly, root_selector: RationalInterval) -> Self {
        AlgebraicNumber::new(modulus, RatPoly::x(), root_selector)
    }

    /// A rational constant inside the same field.
    pub fn constant(&self, c: BigRational) -> Self {
        AlgebraicNumber::new(
            self.modulus.clone(),
            RatPoly::constant(c),
            self.root_selector.clone(),
        )
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }

    pub fn representative(&self) -> &RatPoly {
        &self.representative
    }

    pub fn selector(&self) -> &RationalInterval {
        &self.root_selector
    }

    pub fn is_zero(&self) -> bool {
        self.representative.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.representative == RatPoly::one()
    }

    /// Integer coordinates in the power basis, if all denominators are 1.
    pub fn integer_coordinates(&self) -> Option<Vec<BigInt>> {
        let d = self.modulus.deg() as usize;
        let mut out = Vec::with_capacity(d);
        for i in 0..d {
            let c = self.representative.coeff(i);
            if !c.denom().is_one() {
                return None;
            }
            out.push(c.numer().clone());
        }
        Some(out)
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(
            self.modulus, other.modulus,
            "algebraic numbers from different fields"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_field(other);
        AlgebraicNumber::new(
            self.modulus.clone(),
            self.representative.add(&other.representative),
            self.root_selector.clone(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_field(other);
        AlgebraicNumber::new(
            self.modulus.clone(),
            self.representative.sub(&other.representative),
            self.root_selector.clone(),
        )
    }

    pub fn neg(&self) -> Self {
        AlgebraicNumber::new(
            self.modulus.clone(),
            self.representative.neg(),
            self.root_selector.clone(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_field(other);
        AlgebraicNumber::new(
            self.modulus.clone(),
            self.representative.mul(&other.representative),
            self.root_selector.clone(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        AlgebraicNumber::new(
            self.modulus.clone(),
            self.representative.scale(c),
            self.root_selector.clone(),
        )
    }

    /// Multiplicative inverse (None for zero).
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (g, s, _t) = self.representative.extended_gcd(&self.modulus.to_rat());
        // modulus irreducible => gcd is a nonzero constant
        if g.deg() != 0 {
            return None;
        }
        let inv = s.scale(&(BigRational::one() / g.coeff(0)));
        Some(AlgebraicNumber::new(
            self.modulus.clone(),
            inv,
            self.root_selector.clone(),
        ))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inverse().map(|inv| self.mul(&inv))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.constant(BigRational::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    fn refine_selector(&self, sel: &RationalInterval) -> RationalInterval {
        if self.modulus.deg() == 1 {
            let root = BigRational::from(-self.modulus.coeff(0));
            return RationalInterval::point(root);
        }
        let two = BigRational::from(BigInt::from(2));
        let mid = (&sel.lo + &sel.hi) / two;
        let fm = self.modulus.eval_rat(&mid);
        assert!(
            !fm.is_zero(),
            "irreducible modulus of degree >= 2 has no rational roots"
        );
        let flo = self.modulus.eval_rat(&sel.lo);
        if (flo.is_negative() && fm.is_negative()) || (flo.is_positive() && fm.is_positive()) {
            RationalInterval::new(mid, sel.hi.clone())
        } else {
            RationalInterval::new(sel.lo.clone(), mid)
        }
    }

    fn eval_over(&self, sel: &RationalInterval) -> RationalInterval {
        let mut acc = RationalInterval::zero();
        for c in self.representative.coeffs().iter().rev() {
            acc = acc.mul(sel).add(&RationalInterval::point(c.clone()));
        }
        acc
    }

    /// Certified sign: -1, 0, or 1. Errors with `SignUndecided` only if the
    /// refinement cap (interval width `2^-256`) is reached, which cannot
    /// happen for a nonzero representative over an isolating interval.
    pub fn sign(&self) -> Result<i32> {
        if self.is_zero() {
            return Ok(0);
        }
        if self.modulus.deg() == 1 {
            let root = BigRational::from(-self.modulus.coeff(0));
            let v = self.representative.eval(&root);
            return Ok(if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            });
        }
        let mut sel = self.root_selector.clone();
        let cap = BigRational::new(BigInt::one(), BigInt::from(2).pow(256));
        loop {
            let value = self.eval_over(&sel);
            if value.lo.is_positive() {
                return Ok(1);
            }
            if value.hi.is_negative() {
                return Ok(-1);
            }
            if sel.width() < cap {
                return Err(SftError::SignUndecided);
            }
            sel = self.refine_selector(&sel);
        }
    }

    /// Rational enclosure of the value with width at most `target`.
    pub fn enclosure(&self, target: &BigRational) -> RationalInterval {
        if self.modulus.deg() == 1 {
            let root = BigRational::from(-self.modulus.coeff(0));
            return RationalInterval::point(self.representative.eval(&root));
        }
        let mut sel = self.root_selector.clone();
        loop {
            let value = self.eval_over(&sel);
            if &value.width() <= target {
                return value;
            }
            sel = self.refine_selector(&sel);
        }
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] mod {}", poly_string(&self.representative), self.modulus)
    }
}

fn poly_string(p: &RatPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = match i {
            0 => format!("{c}"),
            1 => format!("{c}*x"),
            _ => format!("{c}*x^{i}"),
        };
        parts.push(term);
    }
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;

    fn golden_field() -> (IntPoly, RationalInterval) {
        // x^2 - x - 1, root phi in [3/2, 2]
        (
            IntPoly::from_i64(&[-1, -1, 1]),
            RationalInterval::new(rat(3, 2), rat(2, 1)),
        )
    }

    #[test]
    fn golden_ratio_satisfies_its_equation() {
        let (m, sel) = golden_field();
        let phi = AlgebraicNumber::generator(m, sel);
        phi.verify_selector().unwrap();
        // phi^2 - phi - 1 = 0
        let expr = phi.pow(2).sub(&phi).sub(&phi.constant(BigRational::one()));
        assert!(expr.is_zero());
        assert_eq!(phi.sign().unwrap(), 1);
        // 1/phi = phi - 1
        let inv = phi.inverse().unwrap();
        let phi_minus_one = phi.sub(&phi.constant(BigRational::one()));
        assert_eq!(inv, phi_minus_one);
    }

    #[test]
    fn signs_are_certified() {
        let (m, sel) = golden_field();
        let phi = AlgebraicNumber::generator(m, sel);
        // phi - 8/5 > 0, phi - 13/8 < 0 (consecutive Fibonacci ratios)
        let a = phi.sub(&phi.constant(rat(8, 5)));
        let b = phi.sub(&phi.constant(rat(13, 8)));
        assert_eq!(a.sign().unwrap(), 1);
        assert_eq!(b.sign().unwrap(), -1);
    }

    #[test]
    fn enclosures_shrink_to_target() {
        let (m, sel) = golden_field();
        let phi = AlgebraicNumber::generator(m, sel);
        let t = rat(1, 1_000_000_000_000);
        let enc = phi.enclosure(&t);
        assert!(enc.width() <= t);
        // phi = 1.618033988749894...
        assert!(enc.lo < rat(16180339888, 10_000_000_000));
        assert!(enc.hi > rat(16180339887, 10_000_000_000));
    }

    #[test]
    fn rational_field_degenerates_exactly() {
        // field Q with lambda = 2
        let m = IntPoly::from_i64(&[-2, 1]);
        let sel = RationalInterval::point(rat(2, 1));
        let lam = AlgebraicNumber::generator(m, sel);
        lam.verify_selector().unwrap();
        assert_eq!(lam.sign().unwrap(), 1);
        let enc = lam.enclosure(&rat(1, 10));
        assert_eq!(enc.lo, rat(2, 1));
        assert_eq!(enc.hi, rat(2, 1));
        let three = lam.constant(rat(3, 1));
        assert_eq!(lam.mul(&three).enclosure(&rat(1, 10)).lo, rat(6, 1));
    }
}
