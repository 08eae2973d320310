use super::ball::Ball;
use crate::interval::RatInterval;
use crate::multipoly::MultiPolynomial;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RangeCertificate {
    #[serde(serialize_with = "crate::ser::rat")]
    pub lo: BigRational,
    #[serde(serialize_with = "crate::ser::rat")]
    pub hi: BigRational,
    /// Lower bound for `|f|` on the ball; 0 when the enclosure contains 0.
    #[serde(serialize_with = "crate::ser::rat")]
    pub min_abs: BigRational,
    #[serde(serialize_with = "crate::ser::rat")]
    pub max_abs: BigRational,
}

impl RangeCertificate {
    pub fn enclosure(&self) -> RatInterval {
        RatInterval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn certifies_nonzero(&self) -> bool {
        self.min_abs.is_positive()
    }
}

/// Upper bound for `sqrt(q)`, `q >= 0`, with about 64 correct bits.
pub(crate) fn sqrt_upper(q: &BigRational) -> BigRational {
    if q.is_zero() {
        return BigRational::zero();
    }
    let (n, d) = (q.numer(), q.denom());
    let shift = 2 * ((d.bits() as i64 - n.bits() as i64).max(0) as u64 / 2 + 64);
    // sqrt(n/d) = sqrt(n d 2^shift) / (d 2^(shift/2))
    let s = (n * d) << shift;
    let root = s.sqrt() + BigInt::one();
    BigRational::new(root, d << (shift / 2))
}

/// Enclosure of `f` over a ball from its Taylor expansion at the center: the
/// linear part is bounded by `radius * |grad f(c)|`, higher parts by
/// `sum |a| radius^k`.
pub fn polynomial_range(f: &MultiPolynomial, ball: &Ball) -> RangeCertificate {
    let g = f.taylor_shift(&ball.center);
    let mut mid = BigRational::zero();
    let mut grad2 = BigRational::zero();
    let mut rest = BigRational::zero();
    for (e, c) in g.terms() {
        let deg: u32 = e.iter().sum();
        match deg {
            0 => mid = c.clone(),
            1 => grad2 += c * c,
            _ => {
                let mut t = c.abs();
                for _ in 0..deg {
                    t *= &ball.radius;
                }
                rest += t;
            }
        }
    }
    let rad = sqrt_upper(&grad2) * &ball.radius + rest;
    let lo = &mid - &rad;
    let hi = &mid + &rad;
    let min_abs = if lo.is_positive() {
        lo.clone()
    } else if hi.is_negative() {
        -hi.clone()
    } else {
        BigRational::zero()
    };
    let max_abs = lo.abs().max(hi.abs());
    RangeCertificate {
        lo,
        hi,
        min_abs,
        max_abs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::ball::{rat, ratio};
    use crate::interval::rational_to_f64;

    fn poly(s: &str, r: usize) -> MultiPolynomial {
        MultiPolynomial::parse(s, Some(r)).unwrap()
    }

    #[test]
    fn sqrt_bound() {
        for (p, q) in [(2, 1), (1, 3), (1, 1_000_000_007), (123456789, 7)] {
            let x = ratio(p, q);
            let s = sqrt_upper(&x);
            assert!(&s * &s >= x);
            let f = rational_to_f64(&s);
            assert!((f - (p as f64 / q as f64).sqrt()).abs() <= 1e-15 * f.max(1e-300) + 1e-300);
        }
    }

    #[test]
    fn small_examples() {
        let unit = Ball::origin(1, rat(1)).unwrap();
        let c = polynomial_range(&poly("z1", 1), &unit);
        assert!(c.lo <= rat(-1) && c.hi >= rat(1));
        assert_eq!(c.min_abs, rat(0));
        let c = polynomial_range(&poly("z1^2 - 2", 1), &unit);
        assert!(c.min_abs >= rat(1));
    }

    #[test]
    fn product_on_offset_ball() {
        let f = poly("z1*z2", 2);
        let ball = Ball::new(vec![rat(2), rat(2)], ratio(1, 2)).unwrap();
        let c = polynomial_range(&f, &ball);
        assert!(c.lo >= ratio(19, 10) && c.hi <= ratio(13, 2), "{c:?}");
        // dense grid oracle over the disc
        let (lo, hi) = (rational_to_f64(&c.lo), rational_to_f64(&c.hi));
        let k = 200;
        for i in 0..=k {
            for j in 0..=k {
                let x = -0.5 + i as f64 / k as f64;
                let y = -0.5 + j as f64 / k as f64;
                if x * x + y * y <= 0.25 {
                    let v = (2.0 + x) * (2.0 + y);
                    assert!(v >= lo - 1e-12 && v <= hi + 1e-12);
                }
            }
        }
    }
}
