//! The Albert algebra H₃(O) of Hermitian 3×3 matrices over the split
//! octonions, with exact rational coordinates.
//!
//! Elements are stored as 27 coordinates `[d₁, d₂, d₃, o₁, o₂, o₃]` for the
//! matrix
//!
//! ```text
//!   [ d₁  o₃  ō₂ ]
//!   [ ō₃  d₂  o₁ ]
//!   [ o₂  ō₁  d₃ ]
//! ```
//!
//! with product `a·b = ½(AB + BA)`. Operators act on the right (`x ↦ x·M`,
//! row-vector convention), so the operator product `R_a R_b` means "first
//! `R_a`, then `R_b`", matching `x R_a R_b = (xa)b`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::nullspace;
use crate::scalar::{Field, Rational, Scalar};

/// Number of coordinates of an Albert element.
pub const DIM: usize = 27;

/// Default coordinate range for random elements.
pub const DEFAULT_COORD_RANGE: i64 = 9;

/// Retries before the zero-pair sampler gives up.
pub const MAX_SAMPLER_RETRIES: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlbertError {
    #[error("precondition a·b = 0 violated")]
    NotZeroPair,
    #[error("no usable idempotent found after {0} attempts")]
    SamplerExhausted(usize),
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn half() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2))
}

// ---------------------------------------------------------------------------
// Split octonions

/// Structure constants: `e_i e_j = sign · e_index`.
type OctTable = [[(i8, u8); 8]; 8];

/// Cayley–Dickson doubling `(a,b)(c,d) = (ac + γ d̄b, da + bc̄)` with
/// γ = −1, −1, +1: ℂ, then ℍ, then the split octonions.
fn cayley_dickson_mul(x: &[i64], y: &[i64], gammas: &[i64]) -> Vec<i64> {
    let n = x.len();
    if n == 1 {
        return vec![x[0] * y[0]];
    }
    let h = n / 2;
    let gamma = gammas[gammas.len() - 1];
    let inner = &gammas[..gammas.len() - 1];
    let conj = |v: &[i64]| -> Vec<i64> {
        v.iter()
            .enumerate()
            .map(|(i, &c)| if i == 0 { c } else { -c })
            .collect()
    };
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cayley_dickson_mul(a, c, inner);
    let dbar_b = cayley_dickson_mul(&conj(d), b, inner);
    let da = cayley_dickson_mul(d, a, inner);
    let b_cbar = cayley_dickson_mul(b, &conj(c), inner);
    let mut out: Vec<i64> = ac.iter().zip(&dbar_b).map(|(p, q)| p + gamma * q).collect();
    out.extend(da.iter().zip(&b_cbar).map(|(p, q)| p + q));
    out
}

fn oct_table() -> &'static OctTable {
    static TABLE: OnceLock<OctTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [[(0i8, 0u8); 8]; 8];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let mut x = vec![0i64; 8];
                let mut y = vec![0i64; 8];
                x[i] = 1;
                y[j] = 1;
                let p = cayley_dickson_mul(&x, &y, &[-1, -1, 1]);
                let k = p
                    .iter()
                    .position(|&c| c != 0)
                    .expect("basis product is nonzero");
                *slot = (p[k] as i8, k as u8);
            }
        }
        table
    })
}

/// An element of the split octonions over ℚ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Octonion(pub [Rational; 8]);

impl Octonion {
    pub fn zero() -> Self {
        Octonion(std::array::from_fn(|_| Rational::zero()))
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    pub fn basis(i: usize) -> Self {
        let mut o = Self::zero();
        o.0[i] = Rational::one();
        o
    }

    pub fn from_ints(v: [i64; 8]) -> Self {
        Octonion(v.map(int))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Octonion(std::array::from_fn(|i| &self.0[i] * c))
    }

    pub fn real(&self) -> &Rational {
        &self.0[0]
    }
}

pub fn oct_mul(u: &Octonion, v: &Octonion) -> Octonion {
    let table = oct_table();
    let mut out = Octonion::zero();
    for (i, ui) in u.0.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (j, vj) in v.0.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            let (sign, k) = table[i][j];
            let p = ui * vj;
            if sign > 0 {
                out.0[k as usize] += p;
            } else {
                out.0[k as usize] -= p;
            }
        }
    }
    out
}

pub fn oct_conj(u: &Octonion) -> Octonion {
    Octonion(std::array::from_fn(|i| {
        if i == 0 {
            u.0[0].clone()
        } else {
            -&u.0[i]
        }
    }))
}

/// `n(u)`: scalar part of `u·ū`.
pub fn oct_norm(u: &Octonion) -> Rational {
    oct_mul(u, &oct_conj(u)).0[0].clone()
}

/// `t(u)`: scalar part of `u + ū`.
pub fn oct_trace(u: &Octonion) -> Rational {
    &u.0[0] * int(2)
}

impl Add for &Octonion {
    type Output = Octonion;
    fn add(self, rhs: &Octonion) -> Octonion {
        Octonion(std::array::from_fn(|i| &self.0[i] + &rhs.0[i]))
    }
}

impl Sub for &Octonion {
    type Output = Octonion;
    fn sub(self, rhs: &Octonion) -> Octonion {
        Octonion(std::array::from_fn(|i| &self.0[i] - &rhs.0[i]))
    }
}

impl Mul for &Octonion {
    type Output = Octonion;
    fn mul(self, rhs: &Octonion) -> Octonion {
        oct_mul(self, rhs)
    }
}

// ---------------------------------------------------------------------------
// Albert elements

/// A Hermitian 3×3 split-octonion matrix, as 27 rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlbertElement {
    coords: Vec<Rational>,
}

const DIAG: usize = 0;
const OFF: [usize; 3] = [3, 11, 19];

impl AlbertElement {
    pub fn zero() -> Self {
        AlbertElement {
            coords: vec![Rational::zero(); DIM],
        }
    }

    pub fn unit() -> Self {
        Self::diag(1, 1, 1)
    }

    pub fn diag(d1: i64, d2: i64, d3: i64) -> Self {
        let mut a = Self::zero();
        a.coords[DIAG] = int(d1);
        a.coords[DIAG + 1] = int(d2);
        a.coords[DIAG + 2] = int(d3);
        a
    }

    /// The diagonal matrix unit `e_ii` (`i` in 1..=3).
    pub fn e(i: usize) -> Self {
        let mut a = Self::zero();
        a.coords[DIAG + i - 1] = Rational::one();
        a
    }

    pub fn basis(i: usize) -> Self {
        let mut a = Self::zero();
        a.coords[i] = Rational::one();
        a
    }

    pub fn from_coords(coords: Vec<Rational>) -> Self {
        assert_eq!(coords.len(), DIM, "Albert elements have 27 coordinates");
        AlbertElement { coords }
    }

    pub fn from_parts(d: [Rational; 3], o: [Octonion; 3]) -> Self {
        let mut coords = d.to_vec();
        for oct in o {
            coords.extend(oct.0);
        }
        AlbertElement { coords }
    }

    pub fn random(rng: &mut impl Rng, range: i64) -> Self {
        AlbertElement {
            coords: (0..DIM)
                .map(|_| int(rng.gen_range(-range..=range)))
                .collect(),
        }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn diagonal(&self, i: usize) -> &Rational {
        &self.coords[DIAG + i]
    }

    /// Off-diagonal octonion `o_{i+1}`.
    pub fn off(&self, i: usize) -> Octonion {
        Octonion(std::array::from_fn(|k| self.coords[OFF[i] + k].clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        AlbertElement {
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&int(n))
    }

    /// `self · self`.
    pub fn square(&self) -> Self {
        jordan_mul(self, self)
    }

    fn matrix(&self) -> [[Octonion; 3]; 3] {
        let d = |i: usize| Octonion::one().scale(self.diagonal(i));
        let (o1, o2, o3) = (self.off(0), self.off(1), self.off(2));
        [
            [d(0), o3.clone(), oct_conj(&o2)],
            [oct_conj(&o3), d(1), o1.clone()],
            [o2, oct_conj(&o1), d(2)],
        ]
    }

    fn from_matrix(m: &[[Octonion; 3]; 3]) -> Self {
        Self::from_parts(
            [
                m[0][0].real().clone(),
                m[1][1].real().clone(),
                m[2][2].real().clone(),
            ],
            [m[1][2].clone(), m[2][0].clone(), m[0][1].clone()],
        )
    }
}

impl fmt::Display for AlbertElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Add for &AlbertElement {
    type Output = AlbertElement;
    fn add(self, rhs: &AlbertElement) -> AlbertElement {
        AlbertElement {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &AlbertElement {
    type Output = AlbertElement;
    fn sub(self, rhs: &AlbertElement) -> AlbertElement {
        AlbertElement {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &AlbertElement {
    type Output = AlbertElement;
    fn neg(self) -> AlbertElement {
        self.scale_int(-1)
    }
}

impl Mul for &AlbertElement {
    type Output = AlbertElement;
    fn mul(self, rhs: &AlbertElement) -> AlbertElement {
        jordan_mul(self, rhs)
    }
}

/// `½(AB + BA)` computed through octonion matrix products.
pub fn jordan_mul_via_matrices(a: &AlbertElement, b: &AlbertElement) -> AlbertElement {
    let (ma, mb) = (a.matrix(), b.matrix());
    let prod = |x: &[[Octonion; 3]; 3], y: &[[Octonion; 3]; 3], i: usize, j: usize| {
        (0..3).fold(Octonion::zero(), |acc, k| {
            &acc + &oct_mul(&x[i][k], &y[k][j])
        })
    };
    let h = half();
    let m: [[Octonion; 3]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|j| (&prod(&ma, &mb, i, j) + &prod(&mb, &ma, i, j)).scale(&h))
    });
    AlbertElement::from_matrix(&m)
}

/// Doubled structure constants: `2·(e_i·e_j) = Σ_k c·e_k`, stored per `i` as `(j, k, c)`.
type AlbertTable = Vec<Vec<(usize, usize, i64)>>;

fn albert_table() -> &'static AlbertTable {
    static TABLE: OnceLock<AlbertTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..DIM)
            .map(|i| {
                let ei = AlbertElement::basis(i);
                let mut row = Vec::new();
                for j in 0..DIM {
                    let p = jordan_mul_via_matrices(&ei, &AlbertElement::basis(j));
                    for (k, c) in p.coords.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let doubled = c * int(2);
                        assert!(doubled.is_integer(), "structure constants lie in ½ℤ");
                        let v: i64 = doubled.to_integer().try_into().expect("small constant");
                        row.push((j, k, v));
                    }
                }
                row
            })
            .collect()
    })
}

/// The Jordan product, from stored structure constants.
pub fn jordan_mul(a: &AlbertElement, b: &AlbertElement) -> AlbertElement {
    let table = albert_table();
    let (an, ad) = integer_coords(&a.coords);
    let (bn, bd) = integer_coords(&b.coords);
    let mut out = vec![BigInt::zero(); DIM];
    for (i, ai) in an.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for &(j, k, c) in &table[i] {
            let bj = &bn[j];
            if !bj.is_zero() {
                out[k] += ai * bj * c;
            }
        }
    }
    from_integer_coords(out, &(ad * bd * 2))
}

/// `(x, y, z) = (xy)z − x(yz)`.
pub fn associator(x: &AlbertElement, y: &AlbertElement, z: &AlbertElement) -> AlbertElement {
    &jordan_mul(&jordan_mul(x, y), z) - &jordan_mul(x, &jordan_mul(y, z))
}

// ---------------------------------------------------------------------------
// Operators

fn lcm_of_denominators<'a>(it: impl Iterator<Item = &'a Rational>) -> BigInt {
    it.fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// `coords = num / den` with integer `num`.
fn integer_coords(coords: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = lcm_of_denominators(coords.iter());
    let num = coords
        .iter()
        .map(|q| q.numer() * (&den / q.denom()))
        .collect();
    (num, den)
}

fn from_integer_coords(num: Vec<BigInt>, den: &BigInt) -> AlbertElement {
    AlbertElement {
        coords: num
            .into_iter()
            .map(|n| {
                if n.is_zero() {
                    Rational::zero()
                } else {
                    Rational::new(n, den.clone())
                }
            })
            .collect(),
    }
}

/// An exact 27×27 rational matrix acting on row vectors, stored as an integer
/// matrix over one positive common denominator in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlbertOperator {
    num: Vec<BigInt>,
    den: BigInt,
}

impl AlbertOperator {
    fn normalized(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for x in num.iter_mut() {
                *x = -&*x;
            }
        }
        let g = num
            .iter()
            .fold(den.clone(), |g, x| if x.is_zero() { g } else { g.gcd(x) });
        if !g.is_one() {
            for x in num.iter_mut() {
                *x = &*x / &g;
            }
            den = &den / &g;
        }
        if num.iter().all(Zero::is_zero) {
            den = BigInt::one();
        }
        AlbertOperator { num, den }
    }

    pub fn zero() -> Self {
        AlbertOperator {
            num: vec![BigInt::zero(); DIM * DIM],
            den: BigInt::one(),
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..DIM {
            m.num[i * DIM + i] = BigInt::one();
        }
        m
    }

    /// Operator with row `i` equal to `rows[i]`.
    pub fn from_rows(rows: &[AlbertElement]) -> Self {
        assert_eq!(rows.len(), DIM);
        let den = lcm_of_denominators(rows.iter().flat_map(|r| r.coords.iter()));
        let num = rows
            .iter()
            .flat_map(|r| r.coords.iter())
            .map(|q| q.numer() * (&den / q.denom()))
            .collect();
        Self::normalized(num, den)
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        Rational::new(self.num[i * DIM + j].clone(), self.den.clone())
    }

    /// `x ↦ x·M`.
    pub fn apply(&self, x: &AlbertElement) -> AlbertElement {
        let (xn, xd) = integer_coords(&x.coords);
        let mut out = vec![BigInt::zero(); DIM];
        for (i, xi) in xn.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (k, o) in out.iter_mut().enumerate() {
                let m = &self.num[i * DIM + k];
                if !m.is_zero() {
                    *o += xi * m;
                }
            }
        }
        from_integer_coords(out, &(xd * &self.den))
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn scale_int(&self, n: i64) -> Self {
        let n = BigInt::from(n);
        Self::normalized(self.num.iter().map(|x| x * &n).collect(), self.den.clone())
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    fn combine(&self, other: &Self, sign: i64) -> Self {
        let (l, r) = (&other.den, &self.den);
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| {
                let lhs = a * l;
                if sign > 0 {
                    lhs + b * r
                } else {
                    lhs - b * r
                }
            })
            .collect();
        Self::normalized(num, &self.den * &other.den)
    }
}

impl Add for &AlbertOperator {
    type Output = AlbertOperator;
    fn add(self, rhs: &AlbertOperator) -> AlbertOperator {
        self.combine(rhs, 1)
    }
}

impl Sub for &AlbertOperator {
    type Output = AlbertOperator;
    fn sub(self, rhs: &AlbertOperator) -> AlbertOperator {
        self.combine(rhs, -1)
    }
}

/// Operator composition: `x(MN) = (xM)N`.
impl Mul for &AlbertOperator {
    type Output = AlbertOperator;
    fn mul(self, rhs: &AlbertOperator) -> AlbertOperator {
        let mut num = vec![BigInt::zero(); DIM * DIM];
        for i in 0..DIM {
            for j in 0..DIM {
                let a = &self.num[i * DIM + j];
                if a.is_zero() {
                    continue;
                }
                for k in 0..DIM {
                    let b = &rhs.num[j * DIM + k];
                    if !b.is_zero() {
                        num[i * DIM + k] += a * b;
                    }
                }
            }
        }
        AlbertOperator::normalized(num, &self.den * &rhs.den)
    }
}

/// `R_a : x ↦ x·a`.
pub fn r_op(a: &AlbertElement) -> AlbertOperator {
    let table = albert_table();
    let (ints, d) = integer_coords(&a.coords);
    let mut num = vec![BigInt::zero(); DIM * DIM];
    for (i, entries) in table.iter().enumerate() {
        for &(j, k, c) in entries {
            if !ints[j].is_zero() {
                num[i * DIM + k] += &ints[j] * c;
            }
        }
    }
    AlbertOperator::normalized(num, d * 2)
}

/// `U_a = 2R_a² − R_{a²}`.
pub fn u_op(a: &AlbertElement) -> AlbertOperator {
    let r = r_op(a);
    &(&r * &r).scale_int(2) - &r_op(&a.square())
}

// ---------------------------------------------------------------------------
// Cubic forms

/// `t(a)`, `s(a)`, `n(a)` of one element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicForms {
    pub t: Rational,
    pub s: Rational,
    pub n: Rational,
}

pub fn trace(a: &AlbertElement) -> Rational {
    a.coords[DIAG..DIAG + 3].iter().sum()
}

/// `s(a) = ½(t(a)² − t(a²))`.
pub fn quadratic_form(a: &AlbertElement) -> Rational {
    let t = trace(a);
    (&t * &t - trace(&a.square())) * half()
}

/// The Freudenthal cubic norm `d₁d₂d₃ − Σ dᵢ n(oᵢ) + t((o₁o₂)o₃)`.
pub fn cubic_norm(a: &AlbertElement) -> Rational {
    let d: Vec<&Rational> = (0..3).map(|i| a.diagonal(i)).collect();
    let o: Vec<Octonion> = (0..3).map(|i| a.off(i)).collect();
    let mut n = d[0] * d[1] * d[2];
    for i in 0..3 {
        n -= d[i] * oct_norm(&o[i]);
    }
    n + oct_trace(&oct_mul(&oct_mul(&o[0], &o[1]), &o[2]))
}

pub fn forms(a: &AlbertElement) -> CubicForms {
    CubicForms {
        t: trace(a),
        s: quadratic_form(a),
        n: cubic_norm(a),
    }
}

/// `s(a,b) = s(a+b) − s(a) − s(b)`.
pub fn bilinear_s(a: &AlbertElement, b: &AlbertElement) -> Rational {
    quadratic_form(&(a + b)) - quadratic_form(a) - quadratic_form(b)
}

/// Full polarization of `n`; `n(a,a,a) = 6n(a)`.
pub fn trilinear_n(a: &AlbertElement, b: &AlbertElement, c: &AlbertElement) -> Rational {
    let ab = a + b;
    let ac = a + c;
    let bc = b + c;
    cubic_norm(&(&ab + c)) - cubic_norm(&ab) - cubic_norm(&ac) - cubic_norm(&bc)
        + cubic_norm(a)
        + cubic_norm(b)
        + cubic_norm(c)
}

/// `a³ − t(a)a² + s(a)a − n(a)·1`.
pub fn check_cubic(a: &AlbertElement) -> AlbertElement {
    let f = forms(a);
    let a2 = a.square();
    let a3 = jordan_mul(&a2, a);
    let rhs = &(&a2.scale(&f.t) - &a.scale(&f.s)) + &AlbertElement::unit().scale(&f.n);
    &a3 - &rhs
}

/// LHS − RHS of `a²b + 2(ab)a = t(b)a² + 2t(a)ab − s(a,b)a − s(a)b + ½n(a,a,b)·1`.
pub fn check_eq1(a: &AlbertElement, b: &AlbertElement) -> AlbertElement {
    let a2 = a.square();
    let ab = jordan_mul(a, b);
    let lhs = &jordan_mul(&a2, b) + &jordan_mul(&ab, a).scale_int(2);
    let rhs = &(&(&a2.scale(&trace(b)) + &ab.scale(&(trace(a) * int(2))))
        - &(&a.scale(&bilinear_s(a, b)) + &b.scale(&quadratic_form(a))))
        + &AlbertElement::unit().scale(&(trilinear_n(a, a, b) * half()));
    &lhs - &rhs
}

/// `R_b²R_a + R_aR_b² = −R_{(ba)b} + 2R_{ab}R_b + R_{b²}R_a`.
pub fn check_operator_identity(a: &AlbertElement, b: &AlbertElement) -> bool {
    let (ra, rb) = (r_op(a), r_op(b));
    let rb2 = &rb * &rb;
    let lhs = &(&rb2 * &ra) + &(&ra * &rb2);
    let ab = jordan_mul(a, b);
    let positive = &(&r_op(&ab) * &rb).scale_int(2) + &(&r_op(&b.square()) * &ra);
    let rhs = &positive - &r_op(&jordan_mul(&jordan_mul(b, a), b));
    lhs == rhs
}

// ---------------------------------------------------------------------------
// Zero pairs and the commutation checks

/// A pair with `a·b = 0` drawn from the Peirce spaces of a rank-one idempotent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroPair {
    pub a: AlbertElement,
    pub b: AlbertElement,
    pub idempotent: AlbertElement,
}

fn from_scalars(v: &[Scalar]) -> AlbertElement {
    AlbertElement::from_coords(
        v.iter()
            .map(|s| s.as_rational().expect("rational coordinates").clone())
            .collect(),
    )
}

/// Basis of `{x : x·M = λx}`.
pub fn eigenspace(m: &AlbertOperator, lambda: i64) -> Vec<AlbertElement> {
    let shifted = m - &AlbertOperator::identity().scale_int(lambda);
    // x·M' = 0 ⇔ M'ᵀ xᵀ = 0
    let rows: Vec<Vec<Scalar>> = (0..DIM)
        .map(|k| {
            (0..DIM)
                .map(|i| Scalar::Rational(shifted.entry(i, k)))
                .collect()
        })
        .collect();
    nullspace(Field::Rationals, &rows, DIM)
        .iter()
        .map(|v| from_scalars(v))
        .collect()
}

fn random_combination(rng: &mut impl Rng, basis: &[AlbertElement], range: i64) -> AlbertElement {
    loop {
        let mut acc = AlbertElement::zero();
        for v in basis {
            acc = &acc + &v.scale(&int(rng.gen_range(-range..=range)));
        }
        if !acc.is_zero() {
            return acc;
        }
    }
}

/// Deterministic in `seed`.
pub fn sample_zero_pair(seed: u64) -> Result<ZeroPair, AlbertError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e11 = AlbertElement::e(1);
    for _ in 0..MAX_SAMPLER_RETRIES {
        let w = AlbertElement::random(&mut rng, DEFAULT_COORD_RANGE);
        // e₁₁U_w = 2(e₁₁w)w − e₁₁w²
        let c =
            &jordan_mul(&jordan_mul(&e11, &w), &w).scale_int(2) - &jordan_mul(&e11, &w.square());
        let tc = trace(&c);
        if tc.is_zero() {
            continue;
        }
        let e = c.scale(&tc.recip());
        if e.square() != e {
            continue;
        }
        let re = r_op(&e);
        let zero_space = eigenspace(&re, 0);
        let one_space = eigenspace(&re, 1);
        if zero_space.is_empty() || one_space.is_empty() {
            continue;
        }
        let a = random_combination(&mut rng, &zero_space, DEFAULT_COORD_RANGE);
        let b = random_combination(&mut rng, &one_space, DEFAULT_COORD_RANGE);
        if !jordan_mul(&a, &b).is_zero() {
            return Err(AlbertError::NotZeroPair);
        }
        return Ok(ZeroPair {
            a,
            b,
            idempotent: e,
        });
    }
    Err(AlbertError::SamplerExhausted(MAX_SAMPLER_RETRIES))
}

fn require_zero_pair(a: &AlbertElement, b: &AlbertElement) -> Result<(), AlbertError> {
    if jordan_mul(a, b).is_zero() {
        Ok(())
    } else {
        Err(AlbertError::NotZeroPair)
    }
}

/// `[U_a,U_b] = [R_{a²},R_{b²}]` for `a·b = 0`.
pub fn check_lemma2(a: &AlbertElement, b: &AlbertElement) -> Result<bool, AlbertError> {
    require_zero_pair(a, b)?;
    let (ua, ub) = (u_op(a), u_op(b));
    let (ra2, rb2) = (r_op(&a.square()), r_op(&b.square()));
    Ok(ua.commutator(&ub) == ra2.commutator(&rb2))
}

/// Individual facts established for one zero pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroPairCheck {
    /// `[R_{a²}, R_b] = 0`.
    pub ra2_rb_commute: bool,
    /// `[R_a, R_{b²}] = 0`.
    pub ra_rb2_commute: bool,
    /// `R_b²R_a + R_aR_b² = R_{b²}R_a`.
    pub operator_specialization: bool,
    /// `[U_a,U_b] = [R_{a²},R_{b²}]`.
    pub u_via_squares: bool,
    /// `[U_a,U_b] = 0`.
    pub u_commute: bool,
    pub s_ab_zero: bool,
    pub a2b_zero: bool,
}

impl ZeroPairCheck {
    pub fn passed(&self) -> bool {
        self.ra2_rb_commute
            && self.ra_rb2_commute
            && self.operator_specialization
            && self.u_via_squares
            && self.u_commute
            && (self.s_ab_zero || self.a2b_zero)
    }
}

pub fn check_theorem2(a: &AlbertElement, b: &AlbertElement) -> Result<ZeroPairCheck, AlbertError> {
    require_zero_pair(a, b)?;
    let (ra, rb) = (r_op(a), r_op(b));
    let (a2, b2) = (a.square(), b.square());
    let (ra2, rb2) = (r_op(&a2), r_op(&b2));
    let (ua, ub) = (u_op(a), u_op(b));
    let u_comm = ua.commutator(&ub);
    let rb_sq = &rb * &rb;
    Ok(ZeroPairCheck {
        ra2_rb_commute: ra2.commutator(&rb).is_zero(),
        ra_rb2_commute: ra.commutator(&rb2).is_zero(),
        operator_specialization: &(&rb_sq * &ra) + &(&ra * &rb_sq) == &rb2 * &ra,
        u_via_squares: u_comm == ra2.commutator(&rb2),
        u_commute: u_comm.is_zero(),
        s_ab_zero: bilinear_s(a, b).is_zero(),
        a2b_zero: jordan_mul(&a2, b).is_zero(),
    })
}

/// For a zero pair and probe `c`: `c[R_{a²},R_{b²}] = (a²,c,b²) = −2(a²b,c,b)`
/// and `(a²b,c,b) = −s(a,b)(a,c,b)`.
pub fn check_associator_chain(
    a: &AlbertElement,
    b: &AlbertElement,
    c: &AlbertElement,
) -> Result<bool, AlbertError> {
    require_zero_pair(a, b)?;
    let (a2, b2) = (a.square(), b.square());
    let via_ops = r_op(&a2).commutator(&r_op(&b2)).apply(c);
    let assoc = associator(&a2, c, &b2);
    let a2b = jordan_mul(&a2, b);
    let reduced = associator(&a2b, c, b);
    let last = associator(a, c, b).scale(&-bilinear_s(a, b));
    Ok(via_ops == assoc && assoc == reduced.scale_int(-2) && reduced == last)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn random_oct(r: &mut ChaCha8Rng) -> Octonion {
        Octonion(std::array::from_fn(|_| int(r.gen_range(-5..=5))))
    }

    #[test]
    fn octonion_unit_and_isotropy() {
        let mut r = rng(1);
        let v = random_oct(&mut r);
        assert_eq!(oct_mul(&Octonion::one(), &v), v);
        assert_eq!(oct_mul(&v, &Octonion::one()), v);
        // 1 + e₄ is a null vector of the split norm
        let null = &Octonion::one() + &Octonion::basis(4);
        assert!(!null.is_zero());
        assert!(oct_norm(&null).is_zero());
        assert_eq!(oct_trace(&Octonion::one()), int(2));
    }

    #[test]
    fn octonion_composition_and_alternativity() {
        let mut r = rng(2);
        for _ in 0..100 {
            let (u, v) = (random_oct(&mut r), random_oct(&mut r));
            assert_eq!(oct_norm(&oct_mul(&u, &v)), oct_norm(&u) * oct_norm(&v));
            assert_eq!(oct_mul(&oct_mul(&u, &u), &v), oct_mul(&u, &oct_mul(&u, &v)));
            assert_eq!(oct_mul(&oct_mul(&u, &v), &v), oct_mul(&u, &oct_mul(&v, &v)));
            assert_eq!(
                oct_conj(&oct_mul(&u, &v)),
                oct_mul(&oct_conj(&v), &oct_conj(&u))
            );
        }
    }

    #[test]
    fn octonions_are_not_associative() {
        let (i, j, l) = (Octonion::basis(1), Octonion::basis(2), Octonion::basis(4));
        assert_ne!(oct_mul(&oct_mul(&i, &j), &l), oct_mul(&i, &oct_mul(&j, &l)));
    }

    #[test]
    fn structure_constants_match_matrix_product() {
        let mut r = rng(3);
        for _ in 0..20 {
            let a = AlbertElement::random(&mut r, 9);
            let b = AlbertElement::random(&mut r, 9);
            assert_eq!(jordan_mul(&a, &b), jordan_mul_via_matrices(&a, &b));
        }
    }

    #[test]
    fn idempotents() {
        let (e1, e2) = (AlbertElement::e(1), AlbertElement::e(2));
        assert_eq!(jordan_mul(&e1, &e1), e1);
        assert!(jordan_mul(&e1, &e2).is_zero());
        let mut r = rng(4);
        let (a, b) = (
            AlbertElement::random(&mut r, 9),
            AlbertElement::random(&mut r, 9),
        );
        assert_eq!(jordan_mul(&a, &b), jordan_mul(&b, &a));
    }

    #[test]
    fn operators_basics() {
        assert_eq!(r_op(&AlbertElement::unit()), AlbertOperator::identity());
        assert!(u_op(&AlbertElement::e(1))
            .apply(&AlbertElement::e(2))
            .is_zero());
        let mut r = rng(5);
        let a = AlbertElement::random(&mut r, 9);
        let x = AlbertElement::random(&mut r, 9);
        assert_eq!(u_op(&a).apply(&AlbertElement::unit()), a.square());
        assert_eq!(r_op(&a).apply(&x), jordan_mul(&x, &a));
        // operator product composes left to right
        let b = AlbertElement::random(&mut r, 9);
        assert_eq!(
            (&r_op(&a) * &r_op(&b)).apply(&x),
            jordan_mul(&jordan_mul(&x, &a), &b)
        );
    }

    #[test]
    fn form_values() {
        let one = forms(&AlbertElement::unit());
        assert_eq!((one.t, one.s, one.n), (int(3), int(3), int(1)));
        let e = forms(&AlbertElement::e(1));
        assert_eq!((e.t, e.s, e.n), (int(1), int(0), int(0)));
        let mut r = rng(6);
        for _ in 0..10 {
            let a = AlbertElement::random(&mut r, 9);
            assert_eq!(bilinear_s(&a, &a), quadratic_form(&a) * int(2));
            assert_eq!(trilinear_n(&a, &a, &a), cubic_norm(&a) * int(6));
        }
    }

    #[test]
    fn cubic_identity() {
        assert!(check_cubic(&AlbertElement::unit()).is_zero());
        assert!(check_cubic(&AlbertElement::e(1)).is_zero());
        let mut r = rng(7);
        for _ in 0..20 {
            assert!(check_cubic(&AlbertElement::random(&mut r, 9)).is_zero());
        }
    }

    #[test]
    fn linearized_cubic_identity() {
        let u = AlbertElement::unit();
        assert!(check_eq1(&u, &u).is_zero());
        let (e1, e2) = (AlbertElement::e(1), AlbertElement::e(2));
        // s(e₁₁,e₂₂) = 1 and n(e₁₁,e₁₁,e₂₂) = 0, so RHS = 0 + 0 − e₁₁ − 0 + 0 ... check both sides vanish
        assert_eq!(bilinear_s(&e1, &e2), int(1));
        assert_eq!(trilinear_n(&e1, &e1, &e2), int(0));
        assert!(check_eq1(&e1, &e2).is_zero());
        let mut r = rng(8);
        for _ in 0..20 {
            let (a, b) = (
                AlbertElement::random(&mut r, 9),
                AlbertElement::random(&mut r, 9),
            );
            assert!(check_eq1(&a, &b).is_zero());
        }
    }

    #[test]
    fn operator_identity() {
        let u = AlbertElement::unit();
        assert!(check_operator_identity(&u, &u));
        let mut r = rng(9);
        for _ in 0..5 {
            let (a, b) = (
                AlbertElement::random(&mut r, 9),
                AlbertElement::random(&mut r, 9),
            );
            assert!(check_operator_identity(&a, &b));
        }
    }

    #[test]
    fn jordan_identity_and_trace_associativity() {
        let mut r = rng(10);
        for _ in 0..5 {
            let a = AlbertElement::random(&mut r, 9);
            let b = AlbertElement::random(&mut r, 9);
            let c = AlbertElement::random(&mut r, 9);
            let (ra, ra2) = (r_op(&a), r_op(&a.square()));
            assert!(ra.commutator(&ra2).is_zero());
            let lin = &r_op(&a.square()).commutator(&r_op(&b))
                + &r_op(&jordan_mul(&a, &b)).commutator(&ra).scale_int(2);
            assert!(lin.is_zero());
            assert_eq!(
                trace(&jordan_mul(&jordan_mul(&a, &b), &c)),
                trace(&jordan_mul(&a, &jordan_mul(&b, &c)))
            );
            let bridge = r_op(&a.square()).commutator(&r_op(&b.square())).apply(&c);
            assert_eq!(bridge, associator(&a.square(), &c, &b.square()));
        }
    }

    #[test]
    fn orthogonal_idempotents_commute() {
        let (a, b) = (AlbertElement::e(2), AlbertElement::e(1));
        assert!(check_lemma2(&a, &b).unwrap());
        let t = check_theorem2(&a, &b).unwrap();
        assert!(t.passed() && t.u_commute);
        assert_eq!(
            check_lemma2(&AlbertElement::unit(), &AlbertElement::e(1)),
            Err(AlbertError::NotZeroPair)
        );
    }

    #[test]
    fn sampler_is_deterministic_and_valid() {
        let p = sample_zero_pair(42).unwrap();
        assert_eq!(p, sample_zero_pair(42).unwrap());
        assert!(jordan_mul(&p.a, &p.b).is_zero());
        assert_eq!(p.idempotent.square(), p.idempotent);
        assert!(check_theorem2(&p.a, &p.b).unwrap().passed());
        let c = AlbertElement::random(&mut rng(11), 9);
        assert!(check_associator_chain(&p.a, &p.b, &c).unwrap());
    }

    #[test]
    fn generic_pairs_do_not_commute() {
        let mut r = rng(12);
        let a = AlbertElement::random(&mut r, 9);
        let b = AlbertElement::random(&mut r, 9);
        assert!(!jordan_mul(&a, &b).is_zero());
        assert!(!u_op(&a).commutator(&u_op(&b)).is_zero());
    }
}
