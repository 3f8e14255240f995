//! Rational intervals and certified enclosures of natural logarithms.
//!
//! All interval endpoints are exact rationals. Logarithms are evaluated by
//! power-of-two argument reduction followed by the atanh series
//! `ln y = 2 * sum t^(2i+1)/(2i+1)` with `t = (y-1)/(y+1)`, whose tail is
//! bounded explicitly, so every returned interval provably contains the true
//! value. Entropies are natural logs (nats).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "IntervalDoc", into = "IntervalDoc")]
pub struct RationalInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

#[derive(Serialize, Deserialize)]
struct IntervalDoc {
    lo: String,
    hi: String,
}

impl From<RationalInterval> for IntervalDoc {
    fn from(iv: RationalInterval) -> Self {
        IntervalDoc {
            lo: rational_to_string(&iv.lo),
            hi: rational_to_string(&iv.hi),
        }
    }
}

impl TryFrom<IntervalDoc> for RationalInterval {
    type Error = String;
    fn try_from(doc: IntervalDoc) -> Result<Self, String> {
        let lo = parse_rational(&doc.lo)?;
        let hi = parse_rational(&doc.hi)?;
        if lo > hi {
            return Err("interval endpoints out of order".into());
        }
        Ok(RationalInterval { lo, hi })
    }
}

/// Serialize a rational as `"p/q"` (or `"p"` when the denominator is 1).
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let mut parts = s.splitn(2, '/');
    let numer: BigInt = parts
        .next()
        .unwrap_or("")
        .trim()
        .parse()
        .map_err(|e| format!("bad numerator in `{s}`: {e}"))?;
    match parts.next() {
        None => Ok(BigRational::from(numer)),
        Some(d) => {
            let denom: BigInt = d
                .trim()
                .parse()
                .map_err(|e| format!("bad denominator in `{s}`: {e}"))?;
            if denom.is_zero() {
                return Err(format!("zero denominator in `{s}`"));
            }
            Ok(BigRational::new(numer, denom))
        }
    }
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RationalInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        RationalInterval { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        Self::point(BigRational::zero())
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        Self::new(lo, hi)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_negative() {
            Self::new(&self.hi * c, &self.lo * c)
        } else {
            Self::new(&self.lo * c, &self.hi * c)
        }
    }

    /// Hull of two intervals.
    pub fn hull(&self, other: &Self) -> Self {
        Self::new(
            self.lo.clone().min(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
        )
    }

    /// Pointwise max (interval of `max(x, y)` over the two intervals).
    pub fn max(&self, other: &Self) -> Self {
        Self::new(
            self.lo.clone().max(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
        )
    }

    /// Approximate midpoint as f64, for display only.
    pub fn approx_f64(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / BigRational::from(BigInt::from(2));
        mid.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            rational_to_string(&self.lo),
            rational_to_string(&self.hi)
        )
    }
}

fn two() -> BigRational {
    BigRational::from(BigInt::from(2))
}

/// Lower and upper bounds for `ln 2` using `ln 2 = 2 atanh(1/3)` with an
/// explicit tail bound.
fn ln2_bounds(terms: usize) -> (BigRational, BigRational) {
    atanh_bounds(&BigRational::new(BigInt::one(), BigInt::from(3)), terms)
}

/// Bounds for `2*atanh(t)` with `0 <= t < 1`: the partial sum is a lower
/// bound (all terms positive), and the geometric tail gives the upper bound.
fn atanh_bounds(t: &BigRational, terms: usize) -> (BigRational, BigRational) {
    assert!(!t.is_negative() && t < &BigRational::one());
    if t.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    let t2 = t * t;
    let mut sum = BigRational::zero();
    let mut power = t.clone(); // t^(2i+1)
    for i in 0..terms {
        sum += &power / BigRational::from(BigInt::from(2 * i as i64 + 1));
        power *= &t2;
    }
    let lower = &sum * two();
    // tail: sum_{i>=terms} t^(2i+1)/(2i+1) <= t^(2*terms+1) / ((2*terms+1)(1-t^2))
    let tail = &power / (BigRational::from(BigInt::from(2 * terms as i64 + 1)) * (BigRational::one() - &t2));
    let upper = (&sum + tail) * two();
    (lower, upper)
}

/// Write `x = y * 2^k` with `y` in `[1, 2)`.
fn reduce_pow2(x: &BigRational) -> (BigRational, i64) {
    assert!(x.is_positive());
    let mut k: i64 = 0;
    let mut y = x.clone();
    let one = BigRational::one();
    let tw = two();
    while y >= tw {
        y /= &tw;
        k += 1;
    }
    while y < one {
        y *= &tw;
        k -= 1;
    }
    (y, k)
}

/// Certified bounds `(lo, hi)` with `lo <= ln x <= hi` for a positive
/// rational `x`.
pub fn ln_bounds(x: &BigRational, terms: usize) -> (BigRational, BigRational) {
    assert!(x.is_positive(), "ln of a nonpositive rational");
    if x.is_one() {
        return (BigRational::zero(), BigRational::zero());
    }
    let (y, k) = reduce_pow2(x);
    // ln y via atanh, t = (y-1)/(y+1) in [0, 1/3)
    let t = (&y - BigRational::one()) / (&y + BigRational::one());
    let (series_lo, series_hi) = atanh_bounds(&t, terms);
    let (l2_lo, l2_hi) = ln2_bounds(terms);
    let kq = BigRational::from(BigInt::from(k));
    if k >= 0 {
        (&kq * &l2_lo + series_lo, &kq * &l2_hi + series_hi)
    } else {
        (&kq * &l2_hi + series_lo, &kq * &l2_lo + series_hi)
    }
}

/// Certified enclosure of `ln` over a positive interval.
pub fn ln_interval(x: &RationalInterval, terms: usize) -> RationalInterval {
    let (lo, _) = ln_bounds(&x.lo, terms);
    let (_, hi) = ln_bounds(&x.hi, terms);
    RationalInterval::new(lo, hi)
}

/// Convenience rational from an f64-free decimal pair, e.g. `rat(1, 100)`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln2_digits() {
        let (lo, hi) = ln_bounds(&BigRational::from(BigInt::from(2)), 30);
        // ln 2 = 0.693147180559945...
        let reference_lo = rat(693147180, 1_000_000_000);
        let reference_hi = rat(693147181, 1_000_000_000);
        assert!(lo <= reference_hi && hi >= reference_lo);
        assert!(&hi - &lo < rat(1, 1_000_000_000_000));
        assert!(lo < hi);
    }

    #[test]
    fn ln_of_one_is_zero_point() {
        let (lo, hi) = ln_bounds(&BigRational::one(), 10);
        assert!(lo.is_zero() && hi.is_zero());
    }

    #[test]
    fn ln_small_argument_is_negative() {
        let (lo, hi) = ln_bounds(&rat(1, 4), 24);
        // ln(1/4) = -1.38629436...
        assert!(lo < rat(-138, 100) && hi > rat(-139, 100));
        assert!(hi < BigRational::zero());
    }

    #[test]
    fn interval_arithmetic_basics() {
        let a = RationalInterval::new(rat(1, 2), rat(3, 4));
        let b = RationalInterval::new(rat(-1, 3), rat(1, 3));
        let s = a.add(&b);
        assert_eq!(s.lo, rat(1, 6));
        assert_eq!(s.hi, rat(13, 12));
        let m = a.mul(&b);
        assert_eq!(m.lo, rat(-1, 4));
        assert_eq!(m.hi, rat(1, 4));
        assert!(b.contains_zero());
        assert!(!a.contains_zero());
    }

    #[test]
    fn rational_string_round_trip() {
        let r = rat(-22, 7);
        let s = rational_to_string(&r);
        assert_eq!(s, "-22/7");
        assert_eq!(parse_rational(&s).unwrap(), r);
        assert_eq!(parse_rational("5").unwrap(), rat(5, 1));
    }
}
