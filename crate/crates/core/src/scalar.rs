//! Exact arithmetic in the golden field Q(τ), τ = (1 + √5)/2.
//!
//! A value `a + b·τ` is kept as a pair of rationals and reduced with
//! τ² = τ + 1. Crystallographic root systems only ever have `b = 0`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Element `a + b·τ` of Q(τ).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
}

impl Scalar {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Scalar { a, b }
    }

    pub fn zero() -> Self {
        Scalar::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::new(BigRational::new(BigInt::from(num), BigInt::from(den)), BigRational::zero())
    }

    /// The golden ratio τ.
    pub fn tau() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    /// Rational part `a`.
    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    /// Coefficient `b` of τ.
    pub fn tau_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Integer value when the scalar is a rational integer.
    pub fn to_i64(&self) -> Option<i64> {
        if self.b.is_zero() && self.a.is_integer() {
            self.a.to_integer().to_i64()
        } else {
            None
        }
    }

    /// Galois conjugate `a + b·τ'` with τ' = 1 − τ.
    pub fn conjugate(&self) -> Self {
        Scalar::new(&self.a + &self.b, -&self.b)
    }

    /// Field norm `a² + ab − b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conjugate();
        Some(Scalar::new(&c.a / &n, &c.b / &n))
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inverse().map(|inv| self * &inv)
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: compare |a| with |b|·τ through x = |a/b|.
        // x < τ  ⇔  x² − x − 1 < 0 for x > 0.
        let x = (&self.a / &self.b).abs();
        let q = &x * &x - &x - BigRational::one();
        let b_dominates = q.is_negative();
        if b_dominates {
            sb
        } else {
            sa
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    /// Floating approximation, for display and heuristics only.
    pub fn to_f64(&self) -> f64 {
        let tau = (1.0 + 5f64.sqrt()) / 2.0;
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * tau
    }
}

fn sign_of(q: &BigRational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        // (a + bτ)(c + dτ) = ac + bd + (ad + bc + bd)τ
        let bd = &self.b * &o.b;
        Scalar::new(&self.a * &o.a + &bd, &self.a * &o.b + &self.b * &o.a + bd)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-&self.a, -&self.b)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}t", self.b),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{}-{}t", self.a, -&self.b)
                } else {
                    write!(f, "{}+{}t", self.a, self.b)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(a: (i64, i64), b: (i64, i64)) -> Scalar {
        Scalar::new(BigRational::new(a.0.into(), a.1.into()), BigRational::new(b.0.into(), b.1.into()))
    }

    #[test]
    fn tau_squared_is_tau_plus_one() {
        let t = Scalar::tau();
        assert_eq!(&t * &t, &t + &Scalar::one());
    }

    #[test]
    fn sign_near_zero() {
        // 8τ − 13 < 0 and 13τ − 21 > 0 (Fibonacci convergents alternate).
        assert!(s((-13, 1), (8, 1)).is_negative());
        assert!(s((-21, 1), (13, 1)).is_positive());
        assert_eq!(s((0, 1), (0, 1)).signum(), 0);
    }

    #[test]
    fn inverse_of_tau() {
        let inv = Scalar::tau().inverse().unwrap();
        assert_eq!(inv, s((-1, 1), (1, 1)));
    }

    fn arb() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..9, -50i64..50, 1i64..9).prop_map(|(a, b, c, d)| s((a, b), (c, d)))
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb(), y in arb(), z in arb()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inverse().unwrap(), Scalar::one());
            }
        }

        #[test]
        fn sign_matches_float(x in arb()) {
            let f = x.to_f64();
            if f.abs() > 1e-9 {
                prop_assert_eq!(x.signum(), if f > 0.0 { 1 } else { -1 });
            }
        }

        #[test]
        fn order_is_translation_invariant(x in arb(), y in arb(), z in arb()) {
            prop_assert_eq!(x.cmp(&y), (&x + &z).cmp(&(&y + &z)));
        }
    }
}
