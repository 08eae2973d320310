//! Closed intervals used for certified enclosures.
//!
//! [`RatInterval`] keeps exact rational endpoints and is used wherever a
//! verdict has to be certified. [`FInterval`] is the cheap `f64` variant with
//! outward rounding after every operation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        RatInterval { lo, hi }
    }

    pub fn point(v: BigRational) -> Self {
        RatInterval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::point(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn zero() -> Self {
        Self::point(BigRational::zero())
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn add(&self, o: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> RatInterval {
        RatInterval::new(-&self.hi, -&self.lo)
    }

    pub fn mul(&self, o: &RatInterval) -> RatInterval {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RatInterval::new(lo, hi)
    }

    pub fn scale(&self, k: &BigRational) -> RatInterval {
        if k.is_negative() {
            RatInterval::new(&self.hi * k, &self.lo * k)
        } else {
            RatInterval::new(&self.lo * k, &self.hi * k)
        }
    }

    pub fn sqr(&self) -> RatInterval {
        let a = self.abs();
        RatInterval::new(&a.lo * &a.lo, &a.hi * &a.hi)
    }

    pub fn abs(&self) -> RatInterval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let hi = if -&self.lo > self.hi {
                -&self.lo
            } else {
                self.hi.clone()
            };
            RatInterval::new(BigRational::zero(), hi)
        }
    }

    /// Returns `None` when the divisor interval contains zero.
    pub fn div(&self, o: &RatInterval) -> Option<RatInterval> {
        if o.contains_zero() {
            return None;
        }
        let inv = RatInterval::new(o.hi.recip(), o.lo.recip());
        Some(self.mul(&inv))
    }

    pub fn max(&self, o: &RatInterval) -> RatInterval {
        RatInterval::new(
            (&self.lo).max(&o.lo).clone(),
            (&self.hi).max(&o.hi).clone(),
        )
    }

    pub fn pow(&self, e: u32) -> RatInterval {
        let mut acc = RatInterval::from_int(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        if e % 2 == 0 && e > 0 {
            // even powers are nonnegative
            let lo = if acc.lo.is_negative() {
                BigRational::zero()
            } else {
                acc.lo
            };
            acc = RatInterval::new(lo, acc.hi);
        }
        acc
    }

    /// Widens the endpoints outward to dyadic rationals with `bits`
    /// fractional bits.
    pub fn round_out(&self, bits: u32) -> RatInterval {
        let scale = BigInt::one() << bits;
        let lo = floor_scaled(&self.lo, &scale);
        let hi = ceil_scaled(&self.hi, &scale);
        RatInterval::new(
            BigRational::new(lo, scale.clone()),
            BigRational::new(hi, scale),
        )
    }

    /// Strict ordering when the intervals are disjoint.
    pub fn certain_cmp(&self, o: &RatInterval) -> Option<Ordering> {
        if self.hi < o.lo {
            Some(Ordering::Less)
        } else if o.hi < self.lo {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && o.lo == o.hi && self.lo == o.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn mid_f64(&self) -> f64 {
        rational_to_f64(&self.mid())
    }
}

fn floor_scaled(v: &BigRational, scale: &BigInt) -> BigInt {
    (v.numer() * scale).div_floor(v.denom())
}

fn ceil_scaled(v: &BigRational, scale: &BigInt) -> BigInt {
    let n = v.numer() * scale;
    let (q, r) = n.div_mod_floor(v.denom());
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

/// Nearest-ish `f64` of a rational; not a certified conversion.
pub fn rational_to_f64(v: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    if let Some(f) = v.to_f64() {
        if f.is_finite() && (f != 0.0 || v.is_zero()) {
            return f;
        }
    }
    // Huge numerator/denominator: shift both down first.
    let nb = v.numer().bits() as i64;
    let db = v.denom().bits() as i64;
    let shift = (nb - 60).max(0);
    let dshift = (db - 60).max(0);
    let n = (v.numer() >> shift as usize).to_f64().unwrap_or(0.0);
    let d = (v.denom() >> dshift as usize).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi((shift - dshift) as i32)
}

/// Exact rational value of a finite `f64`.
pub fn f64_to_rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// `f64` interval with outward rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FInterval {
    pub lo: f64,
    pub hi: f64,
}

impl FInterval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi);
        FInterval { lo, hi }
    }

    pub fn point(v: f64) -> Self {
        FInterval { lo: v, hi: v }
    }

    /// Encloses a rational, widening by one ulp on each side.
    pub fn from_rat(r: &RatInterval) -> Self {
        let lo = rational_to_f64(&r.lo).next_down();
        let hi = rational_to_f64(&r.hi).next_up();
        FInterval { lo, hi }
    }

    pub fn add(self, o: FInterval) -> FInterval {
        FInterval::new((self.lo + o.lo).next_down(), (self.hi + o.hi).next_up())
    }

    pub fn sub(self, o: FInterval) -> FInterval {
        FInterval::new((self.lo - o.hi).next_down(), (self.hi - o.lo).next_up())
    }

    pub fn mul(self, o: FInterval) -> FInterval {
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        FInterval::new(lo.next_down(), hi.next_up())
    }

    pub fn abs(self) -> FInterval {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            FInterval::new(-self.hi, -self.lo)
        } else {
            FInterval::new(0.0, self.hi.max(-self.lo))
        }
    }

    pub fn sqr(self) -> FInterval {
        let a = self.abs();
        FInterval::new((a.lo * a.lo).next_down().max(0.0), (a.hi * a.hi).next_up())
    }

    pub fn max(self, o: FInterval) -> FInterval {
        FInterval::new(self.lo.max(o.lo), self.hi.max(o.hi))
    }

    pub fn div(self, o: FInterval) -> Option<FInterval> {
        if o.lo <= 0.0 && o.hi >= 0.0 {
            return None;
        }
        let inv = FInterval::new((1.0 / o.hi).next_down(), (1.0 / o.lo).next_up());
        Some(self.mul(inv))
    }

    pub fn certain_cmp(&self, o: &FInterval) -> Option<Ordering> {
        if self.hi < o.lo {
            Some(Ordering::Less)
        } else if o.hi < self.lo {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn mul_covers_sign_cases() {
        let a = RatInterval::new(r(-1, 1), r(2, 1));
        let b = RatInterval::new(r(-3, 1), r(1, 2));
        let p = a.mul(&b);
        assert_eq!(p.lo, r(-6, 1));
        assert_eq!(p.hi, r(3, 1));
    }

    #[test]
    fn round_out_contains_original() {
        let a = RatInterval::new(r(1, 3), r(2, 3));
        let b = a.round_out(10);
        assert!(b.lo <= a.lo && b.hi >= a.hi);
        assert!(b.width() <= a.width() + r(2, 1024));
    }

    #[test]
    fn even_power_is_nonnegative() {
        let a = RatInterval::new(r(-1, 1), r(1, 2));
        let p = a.pow(2);
        assert!(!p.lo.is_negative());
        assert_eq!(p.hi, r(1, 1));
    }

    #[test]
    fn float_interval_encloses_third() {
        let t = FInterval::from_rat(&RatInterval::point(r(1, 3)));
        let s = t.add(t).add(t);
        assert!(s.lo <= 1.0 && s.hi >= 1.0);
    }

    #[test]
    fn division_by_interval_with_zero_is_refused() {
        let a = RatInterval::from_int(1);
        assert!(a.div(&RatInterval::new(r(-1, 1), r(1, 1))).is_none());
        assert_eq!(a.div(&RatInterval::from_int(4)).unwrap(), RatInterval::point(r(1, 4)));
    }
}
