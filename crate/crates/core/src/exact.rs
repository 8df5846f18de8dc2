//! Exact scalar tower: arbitrary-precision rationals, Gaussian rationals
//! (the field ℚ(i)), exact angle extraction, and exact-or-approximate real
//! values carried as rational multiples of π^k.
//!
//! All exact geometry in this crate runs over these types. Floating point
//! enters only through [`Angle::Approx`] / [`RealValue::Approx`] when a
//! quantity is provably outside ℚ(i) (arguments off the axes and diagonals,
//! coordinates involving √3 or cube roots of unity).

use num::bigint::BigInt;
use num::rational::Ratio;
use num::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Arbitrary-precision rational number, always reduced, denominator > 0.
pub type Rational = Ratio<BigInt>;

/// Shorthand for small rational constants.
pub fn rat(num: i64, den: i64) -> Rational {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for small integer constants as rationals.
pub fn int(n: i64) -> Rational {
    Ratio::from_integer(BigInt::from(n))
}

/// Converts a rational to the nearest f64.
pub fn rat_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Ratio::to_f64 only fails on pathological magnitudes; fall back to
        // the quotient of the (possibly saturating) component conversions.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Comparison tolerance for unit-scale floating-point quantities.
pub const EPS_UNIT: f64 = 1e-12;
/// Comparison tolerance where irrational coordinates (√3, ω) enter.
pub const EPS_IRRATIONAL: f64 = 1e-9;

/// Errors from exact scalar operations and literal parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactError {
    DivisionByZero,
    ArgOfZero,
    Parse { pos: usize, msg: String },
}

impl fmt::Display for ExactError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactError::DivisionByZero => write!(f, "division by zero"),
            ExactError::ArgOfZero => write!(f, "argument of zero is undefined"),
            ExactError::Parse { pos, msg } => write!(f, "parse error at byte {pos}: {msg}"),
        }
    }
}

impl std::error::Error for ExactError {}

// ---------------------------------------------------------------------------
// Gaussian rationals
// ---------------------------------------------------------------------------

/// An exact complex scalar a + b·i with rational a, b.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational::new(int(re), int(im))
    }

    pub fn zero() -> Self {
        GaussianRational::from_ints(0, 0)
    }

    pub fn one() -> Self {
        GaussianRational::from_ints(1, 0)
    }

    /// The imaginary unit i.
    pub fn i() -> Self {
        GaussianRational::from_ints(0, 1)
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussianRational::new(re, int(0))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Complex conjugate a − b·i.
    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// z·conj(z) = a² + b², a nonnegative rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(GaussianRational::new(&self.re / &n, -&self.im / &n))
    }

    /// Exact division; errors on zero divisor.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ExactError> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        GaussianRational::new(&self.re * s, &self.im * s)
    }

    /// True for entries of ℤ[i] (both components integers).
    pub fn is_gaussian_integer(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl fmt::Display for GaussianRational {
    /// Prints in the scalar literal grammar: `1`, `-1/2+3/4i`, `i`, `-i`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn write_im(f: &mut fmt::Formatter<'_>, im: &Rational, leading: bool) -> fmt::Result {
            let mag = im.abs();
            let sign = if im.is_negative() {
                "-"
            } else if leading {
                ""
            } else {
                "+"
            };
            if mag.is_one() {
                write!(f, "{sign}i")
            } else {
                write!(f, "{sign}{mag}i")
            }
        }
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.re),
            (true, false) => write_im(f, &self.im, true),
            (false, false) => {
                write!(f, "{}", self.re)?;
                write_im(f, &self.im, false)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Scalar literal parsing
// ---------------------------------------------------------------------------

/// scalar := term (('+'|'-') term)? ; term := rational | rational? 'i' ;
/// rational := integer ('/' positive-integer)?
///
/// Whitespace is permitted around terms and operators. When two terms are
/// present, one must be real and the other imaginary.
pub fn parse_scalar(input: &str) -> Result<GaussianRational, ExactError> {
    let bytes = input.as_bytes();
    let mut pos = 0usize;

    fn skip_ws(bytes: &[u8], pos: &mut usize) {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    }

    fn err(pos: usize, msg: impl Into<String>) -> ExactError {
        ExactError::Parse {
            pos,
            msg: msg.into(),
        }
    }

    fn parse_digits(bytes: &[u8], pos: &mut usize) -> Result<BigInt, ExactError> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if *pos == start {
            return Err(err(start, "expected digits"));
        }
        let s = std::str::from_utf8(&bytes[start..*pos]).expect("digits are ascii");
        Ok(s.parse::<BigInt>().expect("digit string parses"))
    }

    // A term: returns (value, is_imaginary).
    fn parse_term(bytes: &[u8], pos: &mut usize) -> Result<(Rational, bool), ExactError> {
        skip_ws(bytes, pos);
        let mut sign = BigInt::one();
        if *pos < bytes.len() && (bytes[*pos] == b'+' || bytes[*pos] == b'-') {
            if bytes[*pos] == b'-' {
                sign = -sign;
            }
            *pos += 1;
            skip_ws(bytes, pos);
        }
        if *pos < bytes.len() && bytes[*pos] == b'i' {
            *pos += 1;
            return Ok((Ratio::from_integer(sign), true));
        }
        let numer = parse_digits(bytes, pos)?;
        let mut value = Ratio::from_integer(sign * numer);
        if *pos < bytes.len() && bytes[*pos] == b'/' {
            *pos += 1;
            let den_pos = *pos;
            let denom = parse_digits(bytes, pos)?;
            if denom.is_zero() {
                return Err(err(den_pos, "zero denominator"));
            }
            value /= Ratio::from_integer(denom);
        }
        let imaginary = *pos < bytes.len() && bytes[*pos] == b'i';
        if imaginary {
            *pos += 1;
        }
        Ok((value, imaginary))
    }

    skip_ws(bytes, &mut pos);
    if pos == bytes.len() {
        return Err(err(pos, "empty scalar"));
    }
    let (first, first_im) = parse_term(bytes, &mut pos)?;
    let mut re = int(0);
    let mut im = int(0);
    if first_im {
        im = first;
    } else {
        re = first;
    }

    skip_ws(bytes, &mut pos);
    if pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
        let op_pos = pos;
        let negate = bytes[pos] == b'-';
        pos += 1;
        let (second, second_im) = parse_term(bytes, &mut pos)?;
        let second = if negate { -second } else { second };
        if second_im == first_im {
            let which = if first_im { "imaginary" } else { "real" };
            return Err(err(op_pos, format!("duplicate {which} part")));
        }
        if second_im {
            im = second;
        } else {
            re = second;
        }
    }
    skip_ws(bytes, &mut pos);
    if pos != bytes.len() {
        return Err(err(pos, "trailing characters after scalar"));
    }
    Ok(GaussianRational::new(re, im))
}

/// Parses a bare rational in the literal grammar (no imaginary part).
pub fn parse_rational(input: &str) -> Result<Rational, ExactError> {
    let z = parse_scalar(input)?;
    if !z.im.is_zero() {
        return Err(ExactError::Parse {
            pos: 0,
            msg: "expected a rational, found an imaginary part".into(),
        });
    }
    Ok(z.re)
}

// ---------------------------------------------------------------------------
// Angles
// ---------------------------------------------------------------------------

/// An angle mod 2π: an exact rational multiple of π with coefficient in
/// (−1, 1], or an approximate radian value in (−π, π].
#[derive(Debug, Clone, PartialEq)]
pub enum Angle {
    ExactPi(Rational),
    Approx(f64),
}

impl Angle {
    /// Exact angle coefficient·π, normalized into (−1, 1].
    pub fn exact_pi(coefficient: Rational) -> Self {
        Angle::ExactPi(normalize_pi_coefficient(coefficient))
    }

    /// Approximate angle in radians, normalized into (−π, π].
    pub fn approx(radians: f64) -> Self {
        Angle::Approx(normalize_radians(radians))
    }

    pub fn zero() -> Self {
        Angle::ExactPi(int(0))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Angle::ExactPi(_))
    }

    pub fn radians(&self) -> f64 {
        match self {
            Angle::ExactPi(c) => rat_to_f64(c) * std::f64::consts::PI,
            Angle::Approx(r) => *r,
        }
    }

    /// Addition mod 2π. Exact when both summands are exact.
    pub fn add(&self, rhs: &Angle) -> Angle {
        match (self, rhs) {
            (Angle::ExactPi(a), Angle::ExactPi(b)) => Angle::exact_pi(a + b),
            _ => Angle::approx(self.radians() + rhs.radians()),
        }
    }

    /// Negation mod 2π (the branch point π stays at π).
    pub fn negate(&self) -> Angle {
        match self {
            Angle::ExactPi(c) => Angle::exact_pi(-c),
            Angle::Approx(r) => Angle::approx(-r),
        }
    }
}

fn normalize_pi_coefficient(c: Rational) -> Rational {
    // c - 2*ceil((c-1)/2) lies in (-1, 1].
    let k = ((&c - int(1)) / int(2)).ceil();
    c - int(2) * k
}

fn normalize_radians(x: f64) -> f64 {
    // Exact no-op on already-normalized input, so negation and addition of
    // in-range angles introduce no rounding of their own.
    if x > -std::f64::consts::PI && x <= std::f64::consts::PI {
        return x;
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let r = x.rem_euclid(two_pi);
    if r > std::f64::consts::PI {
        r - two_pi
    } else {
        r
    }
}

/// The argument of a nonzero Gaussian rational.
///
/// Exact (a rational multiple of π) precisely when z lies on a coordinate
/// axis or a diagonal, i.e. arg ∈ {0, ±π/4, ±π/2, ±3π/4, π}; otherwise the
/// atan2 value is returned as an approximate angle. The branch is (−π, π].
pub fn exact_arg(z: &GaussianRational) -> Result<Angle, ExactError> {
    if z.is_zero() {
        return Err(ExactError::ArgOfZero);
    }
    let re = &z.re;
    let im = &z.im;
    if im.is_zero() {
        return Ok(Angle::ExactPi(if re.is_positive() {
            int(0)
        } else {
            int(1)
        }));
    }
    if re.is_zero() {
        return Ok(Angle::ExactPi(if im.is_positive() {
            rat(1, 2)
        } else {
            rat(-1, 2)
        }));
    }
    if re == im {
        return Ok(Angle::ExactPi(if re.is_positive() {
            rat(1, 4)
        } else {
            rat(-3, 4)
        }));
    }
    if *re == -im.clone() {
        return Ok(Angle::ExactPi(if re.is_positive() {
            rat(-1, 4)
        } else {
            rat(3, 4)
        }));
    }
    Ok(Angle::Approx(rat_to_f64(im).atan2(rat_to_f64(re))))
}

// ---------------------------------------------------------------------------
// Exact-or-approximate real values
// ---------------------------------------------------------------------------

/// A real value carried exactly as coeff·π^pow, or approximately as an f64.
///
/// Sums of exact values with equal π-powers (or with a zero summand) stay
/// exact; mixing distinct nonzero powers falls back to the approximate
/// representation. Products multiply coefficients and add powers.
#[derive(Debug, Clone)]
pub enum RealValue {
    Exact { coeff: Rational, pi_pow: u32 },
    Approx(f64),
}

impl RealValue {
    pub fn exact(coeff: Rational, pi_pow: u32) -> Self {
        RealValue::Exact { coeff, pi_pow }
    }

    pub fn zero() -> Self {
        RealValue::exact(int(0), 0)
    }

    pub fn rational(coeff: Rational) -> Self {
        RealValue::exact(coeff, 0)
    }

    pub fn approx(x: f64) -> Self {
        RealValue::Approx(x)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, RealValue::Exact { .. })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RealValue::Exact { coeff, .. } => coeff.is_zero(),
            RealValue::Approx(x) => *x == 0.0,
        }
    }

    /// The (coefficient, π-power) pair when exact.
    pub fn exact_parts(&self) -> Option<(&Rational, u32)> {
        match self {
            RealValue::Exact { coeff, pi_pow } => Some((coeff, *pi_pow)),
            RealValue::Approx(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RealValue::Exact { coeff, pi_pow } => {
                rat_to_f64(coeff) * std::f64::consts::PI.powi(*pi_pow as i32)
            }
            RealValue::Approx(x) => *x,
        }
    }

    pub fn add(&self, rhs: &RealValue) -> RealValue {
        match (self, rhs) {
            (
                RealValue::Exact {
                    coeff: a,
                    pi_pow: p,
                },
                RealValue::Exact {
                    coeff: b,
                    pi_pow: q,
                },
            ) => {
                if p == q {
                    RealValue::exact(a + b, *p)
                } else if a.is_zero() {
                    rhs.clone()
                } else if b.is_zero() {
                    self.clone()
                } else {
                    RealValue::approx(self.to_f64() + rhs.to_f64())
                }
            }
            _ => RealValue::approx(self.to_f64() + rhs.to_f64()),
        }
    }

    pub fn sub(&self, rhs: &RealValue) -> RealValue {
        self.add(&rhs.negate())
    }

    pub fn mul(&self, rhs: &RealValue) -> RealValue {
        match (self, rhs) {
            (
                RealValue::Exact {
                    coeff: a,
                    pi_pow: p,
                },
                RealValue::Exact {
                    coeff: b,
                    pi_pow: q,
                },
            ) => RealValue::exact(a * b, p + q),
            _ => RealValue::approx(self.to_f64() * rhs.to_f64()),
        }
    }

    pub fn negate(&self) -> RealValue {
        match self {
            RealValue::Exact { coeff, pi_pow } => RealValue::exact(-coeff.clone(), *pi_pow),
            RealValue::Approx(x) => RealValue::Approx(-x),
        }
    }

    pub fn abs(&self) -> RealValue {
        match self {
            RealValue::Exact { coeff, pi_pow } => RealValue::exact(coeff.abs(), *pi_pow),
            RealValue::Approx(x) => RealValue::Approx(x.abs()),
        }
    }

    pub fn scale(&self, s: &Rational) -> RealValue {
        match self {
            RealValue::Exact { coeff, pi_pow } => RealValue::exact(coeff * s, *pi_pow),
            RealValue::Approx(x) => RealValue::Approx(x * rat_to_f64(s)),
        }
    }
}

impl PartialEq for RealValue {
    /// Exact values compare exactly (all zeros are equal regardless of
    /// π-power); approximate values compare by bit-equal f64.
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (
                RealValue::Exact {
                    coeff: a,
                    pi_pow: p,
                },
                RealValue::Exact {
                    coeff: b,
                    pi_pow: q,
                },
            ) => {
                if a.is_zero() && b.is_zero() {
                    true
                } else {
                    p == q && a == b
                }
            }
            (RealValue::Approx(x), RealValue::Approx(y)) => x == y,
            _ => false,
        }
    }
}

impl fmt::Display for RealValue {
    /// Exact values print as reduced `k/n`, `k/n*pi`, or `k/n*pi^2` (the
    /// denominator is omitted when 1); approximate values as 12-digit
    /// decimals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealValue::Exact { coeff, pi_pow } => {
                write!(f, "{coeff}")?;
                match pi_pow {
                    0 => Ok(()),
                    1 => write!(f, "*pi"),
                    p => write!(f, "*pi^{p}"),
                }
            }
            RealValue::Approx(x) => write!(f, "{x:.12}"),
        }
    }
}

impl From<&Angle> for RealValue {
    /// Reads an angle as a real number (no further mod-2π normalization).
    fn from(a: &Angle) -> RealValue {
        match a {
            Angle::ExactPi(c) => RealValue::exact(c.clone(), 1),
            Angle::Approx(r) => RealValue::Approx(*r),
        }
    }
}
