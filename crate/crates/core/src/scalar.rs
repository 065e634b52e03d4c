//! Exact field arithmetic over ℚ and GF(p).
//!
//! A [`Field`] is a small copyable descriptor; a [`Scalar`] is an immutable
//! element that remembers which field it lives in. Every constructor returns
//! the canonical form (lowest terms with positive denominator for ℚ, residue
//! in `[0, p)` for GF(p)), so structural equality is field equality.
//!
//! The `std::ops` impls panic when operands come from different fields; the
//! `checked_*` methods and [`Field::arith`] report that as an error instead.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, the coordinate type of the Albert algebra.
pub type Rational = BigRational;

/// Largest admissible prime modulus (exclusive).
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("zero has no multiplicative inverse")]
    InverseOfZero,
    #[error("operands belong to different fields ({0} and {1})")]
    FieldMismatch(Field, Field),
    #[error("binary operation `{0:?}` needs a second operand")]
    MissingOperand(ArithOp),
}

/// Which kind of field a descriptor names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    PrimeField,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
    Inv,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn rationals() -> Field {
        Field::Rationals
    }

    pub fn prime(p: u64) -> Result<Field, ScalarError> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    /// Builds a field from a kind and (for prime fields) a modulus.
    pub fn make(kind: FieldKind, p: Option<u64>) -> Result<Field, ScalarError> {
        match kind {
            FieldKind::Rationals => Ok(Field::Rationals),
            FieldKind::PrimeField => Field::prime(p.unwrap_or(0)),
        }
    }

    pub fn kind(self) -> FieldKind {
        match self {
            Field::Rationals => FieldKind::Rationals,
            Field::Prime(_) => FieldKind::PrimeField,
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p as u64,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let m = BigInt::from(p);
                let r = ((n % &m) + &m) % &m;
                Scalar::Residue {
                    value: r.to_u32().expect("residue below modulus"),
                    modulus: p,
                }
            }
        }
    }

    /// `num / den` in this field; fails when `den` vanishes in the field.
    pub fn from_ratio(self, num: &BigInt, den: &BigInt) -> Result<Scalar, ScalarError> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(ScalarError::InverseOfZero);
        }
        Ok(&self.from_bigint(num) * &d.inv()?)
    }

    pub fn from_rational(self, q: &Rational) -> Result<Scalar, ScalarError> {
        self.from_ratio(q.numer(), q.denom())
    }

    /// Checked arithmetic dispatch: operands must belong to this field.
    pub fn arith(self, op: ArithOp, a: &Scalar, b: Option<&Scalar>) -> Result<Scalar, ScalarError> {
        if a.field() != self {
            return Err(ScalarError::FieldMismatch(self, a.field()));
        }
        let second = || b.ok_or(ScalarError::MissingOperand(op));
        match op {
            ArithOp::Add => a.checked_add(second()?),
            ArithOp::Sub => a.checked_sub(second()?),
            ArithOp::Mul => a.checked_mul(second()?),
            ArithOp::Neg => Ok(-a),
            ArithOp::Inv => a.inv(),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "q"),
            Field::Prime(p) => write!(f, "gf{p}"),
        }
    }
}

/// An exact field element in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// True for rationals with a leading minus sign; residues are never negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue { .. } => None,
        }
    }

    fn check(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch(self.field(), other.field()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: ((*a as u64 + *b as u64) % *modulus as u64) as u32,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: ((*a as u64 * *b as u64) % *modulus as u64) as u32,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::InverseOfZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => {
                // Fermat: a^(p-2)
                let p = *modulus as u64;
                let mut base = *value as u64;
                let mut exp = p - 2;
                let mut acc = 1u64;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    exp >>= 1;
                }
                Scalar::Residue {
                    value: acc as u32,
                    modulus: *modulus,
                }
            }
        })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (*modulus - *value) % *modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar field mismatch")
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$checked(&rhs).expect("scalar field mismatch")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Field::Rationals
            .from_ratio(&BigInt::from(n), &BigInt::from(d))
            .unwrap()
    }

    #[test]
    fn make_field_descriptors() {
        assert_eq!(
            Field::make(FieldKind::PrimeField, Some(2))
                .unwrap()
                .characteristic(),
            2
        );
        assert_eq!(
            Field::make(FieldKind::Rationals, None)
                .unwrap()
                .characteristic(),
            0
        );
        assert_eq!(Field::prime(4), Err(ScalarError::NotPrime(4)));
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(MAX_PRIME + 11).is_err());
        assert_eq!(
            Field::prime(2_147_483_647).unwrap(),
            Field::Prime(2_147_483_647)
        );
    }

    #[test]
    fn rational_addition() {
        let f = Field::Rationals;
        let sum = f.arith(ArithOp::Add, &q(1, 2), Some(&q(1, 3))).unwrap();
        assert_eq!(sum, q(5, 6));
    }

    #[test]
    fn gf2_one_plus_one() {
        let f = Field::prime(2).unwrap();
        assert!(f
            .arith(ArithOp::Add, &f.one(), Some(&f.one()))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f = Field::prime(2).unwrap();
        assert_eq!(
            f.arith(ArithOp::Inv, &f.zero(), None),
            Err(ScalarError::InverseOfZero)
        );
        assert_eq!(
            Field::Rationals.zero().inv(),
            Err(ScalarError::InverseOfZero)
        );
    }

    #[test]
    fn mixed_fields_rejected() {
        let gf3 = Field::prime(3).unwrap();
        let err = Field::Rationals.arith(ArithOp::Add, &q(1, 1), Some(&gf3.one()));
        assert!(matches!(err, Err(ScalarError::FieldMismatch(_, _))));
        assert!(gf3.arith(ArithOp::Neg, &q(1, 1), None).is_err());
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(q(2, 4), q(-1, -2));
        assert_eq!(format!("{}", q(6, -4)), "-3/2");
        let gf5 = Field::prime(5).unwrap();
        assert_eq!(gf5.from_i64(-1), gf5.from_i64(9));
        assert!(matches!(gf5.from_i64(-1), Scalar::Residue { value: 4, .. }));
        assert_eq!(
            gf5.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap(),
            gf5.from_i64(3)
        );
        assert!(gf5.from_ratio(&BigInt::from(1), &BigInt::from(10)).is_err());
    }

    #[test]
    fn negation_is_identity_in_char_two() {
        let f = Field::prime(2).unwrap();
        for v in 0..2 {
            let a = f.from_i64(v);
            assert_eq!(-&a, a);
        }
    }

    fn arb_scalar(field: Field) -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20).prop_map(move |(n, d)| match field {
            Field::Rationals => q(n, d),
            Field::Prime(_) => field.from_i64(n * 7 + d),
        })
    }

    fn arb_field() -> impl Strategy<Value = Field> {
        prop_oneof![
            Just(Field::Rationals),
            Just(Field::Prime(2)),
            Just(Field::Prime(3)),
            Just(Field::Prime(101)),
        ]
    }

    proptest! {
        #[test]
        fn field_axioms(
            (a, b, c) in arb_field().prop_flat_map(|f| (arb_scalar(f), arb_scalar(f), arb_scalar(f)))
        ) {
            let f = a.field();
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a + &-&a).is_zero());
            prop_assert_eq!(&a - &b, &a + &-&b);
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), f.one());
            }
        }
    }
}
