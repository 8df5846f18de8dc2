//! Vectors of ℂ^{2,1}, the ball and Siegel Hermitian forms, boundary points
//! of the complex hyperbolic plane, isometries, and Heisenberg coordinates.
//!
//! A vector is either exact (Gaussian-rational entries) or inexact (f64
//! complex entries); every operation preserves exactness when its inputs are
//! exact. Boundary points are projective classes of null vectors, validated
//! at construction.

use crate::exact::{
    parse_rational, parse_scalar, ExactError, GaussianRational, Rational, RealValue, EPS_UNIT,
};
use num::complex::Complex64;
use num::{Signed, Zero};
use std::fmt;

/// Errors from geometric constructions and the point file format.
#[derive(Debug, Clone, PartialEq)]
pub enum GeometryError {
    ZeroVector,
    NotNull,
    NotNegative,
    NotPositive,
    NotUnitModulus,
    ModelMismatch,
    DuplicatePoint,
    ExactnessRequired,
    EmptyInput,
    NonPositiveEuler,
    NotAnIsometry { residual: String },
    Scalar(ExactError),
    Parse { line: usize, msg: String },
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::ZeroVector => write!(f, "zero vector has no projective class"),
            GeometryError::NotNull => write!(f, "vector is not null for the stated form"),
            GeometryError::NotNegative => write!(f, "vector does not represent an interior point"),
            GeometryError::NotPositive => {
                write!(
                    f,
                    "vector is not positive (not the polar vector of a complex line)"
                )
            }
            GeometryError::NotUnitModulus => {
                write!(f, "reflection factor must have |\u{3b7}|\u{b2} = 1")
            }
            GeometryError::ModelMismatch => write!(f, "operands use different Hermitian models"),
            GeometryError::DuplicatePoint => {
                write!(f, "point set contains a repeated projective point")
            }
            GeometryError::ExactnessRequired => {
                write!(f, "operation requires exact (Gaussian-rational) points")
            }
            GeometryError::EmptyInput => write!(f, "operation requires at least one point"),
            GeometryError::NonPositiveEuler => {
                write!(f, "Euler characteristic must be positive")
            }
            GeometryError::NotAnIsometry { residual } => {
                write!(f, "matrix does not satisfy M*JM = \u{3bb}J: {residual}")
            }
            GeometryError::Scalar(e) => write!(f, "{e}"),
            GeometryError::Parse { line, msg } => write!(f, "line {line}: {msg}"),
        }
    }
}

impl std::error::Error for GeometryError {}

impl From<ExactError> for GeometryError {
    fn from(e: ExactError) -> Self {
        GeometryError::Scalar(e)
    }
}

// ---------------------------------------------------------------------------
// Models
// ---------------------------------------------------------------------------

/// The two signature-(2,1) Hermitian forms in use.
///
/// Ball: ⟨z,w⟩ = z₁w̄₁ + z₂w̄₂ − z₃w̄₃.  Siegel: ⟨z,w⟩ = z₁w̄₃ + z₂w̄₂ + z₃w̄₁.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HermitianModel {
    Ball,
    Siegel,
}

impl HermitianModel {
    pub fn name(self) -> &'static str {
        match self {
            HermitianModel::Ball => "ball",
            HermitianModel::Siegel => "siegel",
        }
    }

    /// The Gram matrix J of the form, so that ⟨z,w⟩ = w†Jz.
    fn gram(self) -> Matrix3 {
        let o = || GaussianRational::zero();
        let e = |n: i64| GaussianRational::from_ints(n, 0);
        match self {
            HermitianModel::Ball => [[e(1), o(), o()], [o(), e(1), o()], [o(), o(), e(-1)]],
            HermitianModel::Siegel => [[o(), o(), e(1)], [o(), e(1), o()], [e(1), o(), o()]],
        }
    }
}

// ---------------------------------------------------------------------------
// Scalars and vectors
// ---------------------------------------------------------------------------

/// A complex scalar that is exact when every input to it was exact.
#[derive(Debug, Clone, PartialEq)]
pub enum ComplexScalar {
    Exact(GaussianRational),
    Inexact(Complex64),
}

impl ComplexScalar {
    pub fn is_exact(&self) -> bool {
        matches!(self, ComplexScalar::Exact(_))
    }

    pub fn to_complex64(&self) -> Complex64 {
        match self {
            ComplexScalar::Exact(z) => {
                let (re, im) = z.to_f64();
                Complex64::new(re, im)
            }
            ComplexScalar::Inexact(z) => *z,
        }
    }

    pub fn conj(&self) -> ComplexScalar {
        match self {
            ComplexScalar::Exact(z) => ComplexScalar::Exact(z.conj()),
            ComplexScalar::Inexact(z) => ComplexScalar::Inexact(z.conj()),
        }
    }

    pub fn mul(&self, rhs: &ComplexScalar) -> ComplexScalar {
        match (self, rhs) {
            (ComplexScalar::Exact(a), ComplexScalar::Exact(b)) => ComplexScalar::Exact(a * b),
            _ => ComplexScalar::Inexact(self.to_complex64() * rhs.to_complex64()),
        }
    }

    pub fn neg(&self) -> ComplexScalar {
        match self {
            ComplexScalar::Exact(z) => ComplexScalar::Exact(-z),
            ComplexScalar::Inexact(z) => ComplexScalar::Inexact(-z),
        }
    }

    /// Zero test: exact zero, or below the unit-scale tolerance when inexact.
    pub fn is_zero(&self) -> bool {
        match self {
            ComplexScalar::Exact(z) => z.is_zero(),
            ComplexScalar::Inexact(z) => z.norm() <= EPS_UNIT,
        }
    }

    /// The real part, assuming the scalar is real (as ⟨z,z⟩ always is).
    pub fn real_part(&self) -> RealValue {
        match self {
            ComplexScalar::Exact(z) => RealValue::rational(z.re.clone()),
            ComplexScalar::Inexact(z) => RealValue::approx(z.re),
        }
    }
}

/// A vector of ℂ³ with exact or inexact entries.
#[derive(Debug, Clone, PartialEq)]
pub enum CVector {
    Exact([GaussianRational; 3]),
    Inexact([Complex64; 3]),
}

impl CVector {
    pub fn exact(entries: [GaussianRational; 3]) -> Self {
        CVector::Exact(entries)
    }

    /// Convenience constructor from (re, im) integer pairs.
    pub fn from_int_pairs(entries: [(i64, i64); 3]) -> Self {
        CVector::Exact(entries.map(|(re, im)| GaussianRational::from_ints(re, im)))
    }

    pub fn inexact(entries: [Complex64; 3]) -> Self {
        CVector::Inexact(entries)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, CVector::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            CVector::Exact(e) => e.iter().all(GaussianRational::is_zero),
            CVector::Inexact(e) => e.iter().all(|z| z.norm() <= EPS_UNIT),
        }
    }

    pub fn to_complex64(&self) -> [Complex64; 3] {
        match self {
            CVector::Exact(e) => e.clone().map(|z| {
                let (re, im) = z.to_f64();
                Complex64::new(re, im)
            }),
            CVector::Inexact(e) => *e,
        }
    }

    pub fn conj(&self) -> CVector {
        match self {
            CVector::Exact(e) => CVector::Exact([e[0].conj(), e[1].conj(), e[2].conj()]),
            CVector::Inexact(e) => CVector::Inexact([e[0].conj(), e[1].conj(), e[2].conj()]),
        }
    }

    pub fn exact_entries(&self) -> Option<&[GaussianRational; 3]> {
        match self {
            CVector::Exact(e) => Some(e),
            CVector::Inexact(_) => None,
        }
    }

    /// Sum of squared entry magnitudes, for relative tolerances.
    fn norm_sqr_f64(&self) -> f64 {
        self.to_complex64().iter().map(|z| z.norm_sqr()).sum()
    }
}

/// The Hermitian product ⟨z,w⟩ = w†Jz: linear in `z`, conjugate-linear in
/// `w`. Exact whenever both vectors are exact; mixing silently promotes to
/// the inexact result.
pub fn herm(z: &CVector, w: &CVector, model: HermitianModel) -> ComplexScalar {
    match (z, w) {
        (CVector::Exact(a), CVector::Exact(b)) => {
            let pair = |i: usize, j: usize| &a[i] * &b[j].conj();
            ComplexScalar::Exact(match model {
                HermitianModel::Ball => &(&pair(0, 0) + &pair(1, 1)) - &pair(2, 2),
                HermitianModel::Siegel => &(&pair(0, 2) + &pair(1, 1)) + &pair(2, 0),
            })
        }
        _ => {
            let a = z.to_complex64();
            let b = w.to_complex64();
            let pair = |i: usize, j: usize| a[i] * b[j].conj();
            ComplexScalar::Inexact(match model {
                HermitianModel::Ball => pair(0, 0) + pair(1, 1) - pair(2, 2),
                HermitianModel::Siegel => pair(0, 2) + pair(1, 1) + pair(2, 0),
            })
        }
    }
}

/// Sign class of ⟨z,z⟩ for a nonzero vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClass {
    Negative,
    Null,
    Positive,
}

/// Classifies a nonzero vector by the sign of ⟨z,z⟩.
pub fn classify(z: &CVector, model: HermitianModel) -> Result<PointClass, GeometryError> {
    if z.is_zero() {
        return Err(GeometryError::ZeroVector);
    }
    match herm(z, z, model) {
        ComplexScalar::Exact(s) => Ok(if s.re.is_zero() {
            PointClass::Null
        } else if s.re.is_positive() {
            PointClass::Positive
        } else {
            PointClass::Negative
        }),
        ComplexScalar::Inexact(s) => {
            let tol = EPS_UNIT * z.norm_sqr_f64();
            Ok(if s.re.abs() <= tol {
                PointClass::Null
            } else if s.re > 0.0 {
                PointClass::Positive
            } else {
                PointClass::Negative
            })
        }
    }
}

/// cosh²(½·d(z,w)) = ⟨z,w⟩⟨w,z⟩ / (⟨z,z⟩⟨w,w⟩) for two interior
/// (Negative) vectors. Exact rational for exact inputs; always ≥ 1.
pub fn distance_cosh2(
    z: &CVector,
    w: &CVector,
    model: HermitianModel,
) -> Result<RealValue, GeometryError> {
    if classify(z, model)? != PointClass::Negative || classify(w, model)? != PointClass::Negative {
        return Err(GeometryError::NotNegative);
    }
    let zw = herm(z, w, model);
    let num = zw.mul(&zw.conj());
    let den = herm(z, z, model).mul(&herm(w, w, model));
    match (num, den) {
        (ComplexScalar::Exact(n), ComplexScalar::Exact(d)) => {
            Ok(RealValue::rational(&n.re / &d.re))
        }
        (n, d) => Ok(RealValue::approx(n.to_complex64().re / d.to_complex64().re)),
    }
}

/// Projective equality: all 2×2 minors of the stacked 2×3 array vanish
/// (exactly for two exact vectors, within a relative tolerance otherwise).
pub fn proj_equal(z: &CVector, w: &CVector) -> Result<bool, GeometryError> {
    if z.is_zero() || w.is_zero() {
        return Err(GeometryError::ZeroVector);
    }
    match (z, w) {
        (CVector::Exact(a), CVector::Exact(b)) => Ok((0..3).all(|i| {
            let j = (i + 1) % 3;
            (&(&a[i] * &b[j]) - &(&a[j] * &b[i])).is_zero()
        })),
        _ => {
            let a = z.to_complex64();
            let b = w.to_complex64();
            let scale = z.norm_sqr_f64().sqrt() * w.norm_sqr_f64().sqrt();
            Ok((0..3).all(|i| {
                let j = (i + 1) % 3;
                (a[i] * b[j] - a[j] * b[i]).norm() <= EPS_UNIT * scale
            }))
        }
    }
}

// ---------------------------------------------------------------------------
// 3x3 exact matrices
// ---------------------------------------------------------------------------

/// A 3×3 matrix of Gaussian rationals, row-major.
pub type Matrix3 = [[GaussianRational; 3]; 3];

pub fn mat_identity() -> Matrix3 {
    let o = || GaussianRational::zero();
    let l = || GaussianRational::one();
    [[l(), o(), o()], [o(), l(), o()], [o(), o(), l()]]
}

pub fn mat_mul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = GaussianRational::zero();
            for (k, b_row) in b.iter().enumerate() {
                acc = &acc + &(&a[i][k] * &b_row[j]);
            }
            acc
        })
    })
}

pub fn mat_conj(a: &Matrix3) -> Matrix3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j].conj()))
}

/// Conjugate transpose M†.
pub fn mat_adjoint(a: &Matrix3) -> Matrix3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].conj()))
}

pub fn mat_vec(a: &Matrix3, v: &[GaussianRational; 3]) -> [GaussianRational; 3] {
    std::array::from_fn(|i| {
        let mut acc = GaussianRational::zero();
        for (k, vk) in v.iter().enumerate() {
            acc = &acc + &(&a[i][k] * vk);
        }
        acc
    })
}

fn mat_vec_inexact(a: &Matrix3, v: &[Complex64; 3]) -> [Complex64; 3] {
    let af: [[Complex64; 3]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let (re, im) = a[i][j].to_f64();
            Complex64::new(re, im)
        })
    });
    std::array::from_fn(|i| (0..3).map(|k| af[i][k] * v[k]).sum())
}

pub fn mat_det(a: &Matrix3) -> GaussianRational {
    let m = |i: usize, j: usize| &a[i][j];
    let term = |j0: usize, j1: usize, j2: usize| &(m(0, j0) * m(1, j1)) * m(2, j2);
    let pos = &(&term(0, 1, 2) + &term(1, 2, 0)) + &term(2, 0, 1);
    let neg = &(&term(2, 1, 0) + &term(1, 0, 2)) + &term(0, 2, 1);
    &pos - &neg
}

/// Exact inverse via the adjugate; errors when singular.
pub fn mat_inv(a: &Matrix3) -> Result<Matrix3, GeometryError> {
    let det = mat_det(a);
    let inv_det = det.inverse().map_err(|_| GeometryError::NotAnIsometry {
        residual: "matrix is singular".into(),
    })?;
    let cofactor = |i: usize, j: usize| {
        let r = [(i + 1) % 3, (i + 2) % 3];
        let c = [(j + 1) % 3, (j + 2) % 3];
        &(&a[r[0]][c[0]] * &a[r[1]][c[1]]) - &(&a[r[0]][c[1]] * &a[r[1]][c[0]])
    };
    // adjugate[i][j] = cofactor(j, i); the cyclic index form above already
    // bakes in the sign pattern.
    Ok(std::array::from_fn(|i| {
        std::array::from_fn(|j| &cofactor(j, i) * &inv_det)
    }))
}

// ---------------------------------------------------------------------------
// Isometries
// ---------------------------------------------------------------------------

/// An isometry of the complex hyperbolic plane in matrix form: holomorphic
/// elements act by z ↦ M·z, antiholomorphic ones by z ↦ M·z̄. The matrix
/// satisfies M†JM = λJ with λ > 0 rational, exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry {
    pub matrix: Matrix3,
    pub antiholomorphic: bool,
    pub model: HermitianModel,
    pub scale: Rational,
}

/// Validates M†JM = λJ for some rational λ > 0 and packages the isometry.
/// The same matrix equation governs both the holomorphic action z ↦ M·z and
/// the antiholomorphic one z ↦ M·z̄ (the Gram matrices here are real).
pub fn is_isometry(
    matrix: Matrix3,
    antiholomorphic: bool,
    model: HermitianModel,
) -> Result<Isometry, GeometryError> {
    let j = model.gram();
    let a = mat_mul(&mat_adjoint(&matrix), &mat_mul(&j, &matrix));
    // Find lambda from the first entry where J is nonzero.
    let mut lambda: Option<Rational> = None;
    for i in 0..3 {
        for k in 0..3 {
            if !j[i][k].is_zero() {
                let candidate = a[i][k].checked_div(&j[i][k]).expect("J entry nonzero");
                if !candidate.im.is_zero() || !candidate.re.is_positive() {
                    return Err(GeometryError::NotAnIsometry {
                        residual: format!(
                            "M*JM / J has non-positive-real ratio {candidate} at entry ({i},{k})"
                        ),
                    });
                }
                lambda = Some(candidate.re);
                break;
            }
        }
        if lambda.is_some() {
            break;
        }
    }
    let lambda = lambda.expect("Gram matrix is nonzero");
    let lam = GaussianRational::from_rational(lambda.clone());
    for i in 0..3 {
        for k in 0..3 {
            let expected = &j[i][k] * &lam;
            if a[i][k] != expected {
                let residual = &a[i][k] - &expected;
                return Err(GeometryError::NotAnIsometry {
                    residual: format!("entry ({i},{k}) of M*JM - \u{3bb}J is {residual}"),
                });
            }
        }
    }
    Ok(Isometry {
        matrix,
        antiholomorphic,
        model,
        scale: lambda,
    })
}

impl Isometry {
    pub fn identity(model: HermitianModel) -> Self {
        Isometry {
            matrix: mat_identity(),
            antiholomorphic: false,
            model,
            scale: num::One::one(),
        }
    }

    /// Composition acting as self ∘ other (apply `other` first).
    pub fn compose(&self, other: &Isometry) -> Result<Isometry, GeometryError> {
        if self.model != other.model {
            return Err(GeometryError::ModelMismatch);
        }
        let rhs = if self.antiholomorphic {
            mat_conj(&other.matrix)
        } else {
            other.matrix.clone()
        };
        Ok(Isometry {
            matrix: mat_mul(&self.matrix, &rhs),
            antiholomorphic: self.antiholomorphic ^ other.antiholomorphic,
            model: self.model,
            scale: &self.scale * &other.scale,
        })
    }

    pub fn inverse(&self) -> Result<Isometry, GeometryError> {
        let inv = mat_inv(&self.matrix)?;
        let matrix = if self.antiholomorphic {
            mat_conj(&inv)
        } else {
            inv
        };
        Ok(Isometry {
            matrix,
            antiholomorphic: self.antiholomorphic,
            model: self.model,
            scale: Rational::from_integer(1.into()) / &self.scale,
        })
    }

    /// Applies the isometry to a vector (not necessarily null).
    pub fn apply_vector(&self, v: &CVector) -> CVector {
        let input = if self.antiholomorphic {
            v.conj()
        } else {
            v.clone()
        };
        match input {
            CVector::Exact(e) => CVector::Exact(mat_vec(&self.matrix, &e)),
            CVector::Inexact(e) => CVector::Inexact(mat_vec_inexact(&self.matrix, &e)),
        }
    }

    /// Applies the isometry to a boundary point; the image is again null.
    pub fn apply(&self, p: &BoundaryPoint) -> Result<BoundaryPoint, GeometryError> {
        if self.model != p.model {
            return Err(GeometryError::ModelMismatch);
        }
        BoundaryPoint::new(self.apply_vector(&p.rep), self.model)
    }
}

// ---------------------------------------------------------------------------
// Boundary points
// ---------------------------------------------------------------------------

/// A point of the boundary ∂H²_ℂ: the projective class of a null vector.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPoint {
    rep: CVector,
    model: HermitianModel,
}

impl BoundaryPoint {
    /// Validates that `rep` is nonzero and null for the model's form.
    pub fn new(rep: CVector, model: HermitianModel) -> Result<Self, GeometryError> {
        match classify(&rep, model)? {
            PointClass::Null => Ok(BoundaryPoint { rep, model }),
            _ => Err(GeometryError::NotNull),
        }
    }

    pub fn rep(&self) -> &CVector {
        &self.rep
    }

    pub fn model(&self) -> HermitianModel {
        self.model
    }

    pub fn is_exact(&self) -> bool {
        self.rep.is_exact()
    }

    pub fn proj_equal(&self, other: &BoundaryPoint) -> Result<bool, GeometryError> {
        if self.model != other.model {
            return Err(GeometryError::ModelMismatch);
        }
        proj_equal(&self.rep, &other.rep)
    }

    /// Canonical projective representative of an exact point: the scaling
    /// with last nonzero entry 1. None for inexact points.
    pub fn canonical_rep(&self) -> Option<[GaussianRational; 3]> {
        let entries = self.rep.exact_entries()?;
        let pivot = entries.iter().rposition(|z| !z.is_zero())?;
        let inv = entries[pivot].inverse().expect("pivot entry is nonzero");
        Some(std::array::from_fn(|i| &entries[i] * &inv))
    }

    /// Total-order key for exact points: the canonical representative read
    /// as six rationals. Equal keys ⟺ projectively equal points.
    pub fn canonical_key(&self) -> Option<PointKey> {
        let rep = self.canonical_rep()?;
        Some(PointKey(rep.map(|z| (z.re, z.im))))
    }
}

/// Deterministic ordering/hashing key for an exact boundary point.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointKey(pub [(Rational, Rational); 3]);

impl fmt::Display for BoundaryPoint {
    /// Prints in the point file grammar when exact, and with 12-digit
    /// decimal components (display only, not re-parseable) when inexact.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.model.name())?;
        match &self.rep {
            CVector::Exact(e) => write!(f, "{}, {}, {}", e[0], e[1], e[2]),
            CVector::Inexact(e) => {
                let show = |z: &Complex64| format!("({:.12}, {:.12})", z.re, z.im);
                write!(f, "{}, {}, {}", show(&e[0]), show(&e[1]), show(&e[2]))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Heisenberg coordinates
// ---------------------------------------------------------------------------

/// A point of the Heisenberg group compactification ∂H²_ℂ ≅ (ℂ×ℝ) ∪ {∞}.
#[derive(Debug, Clone, PartialEq)]
pub enum HeisenbergPoint {
    Infinity,
    Finite { zeta: GaussianRational, t: Rational },
}

/// Lifts a Heisenberg point to a Siegel-model null vector:
/// ∞ ↦ (1,0,0) and (ζ,t) ↦ ((−|ζ|²+it)/2, ζ, 1). The output is exactly
/// null: ⟨ψ,ψ⟩ = 2·Re(ψ₁) + |ζ|² = 0.
pub fn heisenberg_lift(h: &HeisenbergPoint) -> BoundaryPoint {
    let rep = match h {
        HeisenbergPoint::Infinity => CVector::from_int_pairs([(1, 0), (0, 0), (0, 0)]),
        HeisenbergPoint::Finite { zeta, t } => {
            let half = crate::exact::rat(1, 2);
            let first = GaussianRational::new(-zeta.norm_sqr() * &half, t * &half);
            CVector::Exact([first, zeta.clone(), GaussianRational::one()])
        }
    };
    BoundaryPoint::new(rep, HermitianModel::Siegel).expect("lift output is null by construction")
}

/// Inverts the lift for an exact Siegel boundary point. Points with third
/// coordinate zero are projectively (1,0,0) = ∞; otherwise normalize the
/// third coordinate to 1 and read off ζ and t.
pub fn heisenberg_coords(p: &BoundaryPoint) -> Result<HeisenbergPoint, GeometryError> {
    if p.model() != HermitianModel::Siegel {
        return Err(GeometryError::ModelMismatch);
    }
    let entries = match p.rep().exact_entries() {
        Some(e) => e,
        None => {
            return Err(GeometryError::Parse {
                line: 0,
                msg: "Heisenberg coordinates are only defined here for exact points".into(),
            })
        }
    };
    if entries[2].is_zero() {
        // Null with z3 = 0 forces |z2|² = 0, so the class is (1,0,0).
        return Ok(HeisenbergPoint::Infinity);
    }
    let inv = entries[2].inverse().expect("checked nonzero");
    let z1 = &entries[0] * &inv;
    let zeta = &entries[1] * &inv;
    let t = z1.im * crate::exact::int(2);
    Ok(HeisenbergPoint::Finite { zeta, t })
}

// ---------------------------------------------------------------------------
// Model conversion
// ---------------------------------------------------------------------------

/// Converts a boundary point to the target model. Ball ↔ Siegel uses the
/// involutive Cayley intertwiner (1/√2)·[[1,0,1],[0,√2,0],[1,0,−1]], which
/// leaves ℚ(i) — the converted representative is inexact by design.
pub fn convert_model(p: &BoundaryPoint, target: HermitianModel) -> BoundaryPoint {
    if p.model() == target {
        return p.clone();
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let v = p.rep().to_complex64();
    let rep = CVector::Inexact([(v[0] + v[2]) * s, v[1], (v[0] - v[2]) * s]);
    BoundaryPoint::new(rep, target).expect("Cayley intertwiner maps null vectors to null vectors")
}

// ---------------------------------------------------------------------------
// Point file format
// ---------------------------------------------------------------------------

/// Parses the point file format, one point per line:
/// `ball: s1, s2, s3`, `siegel: s1, s2, s3`, `heis: zr, zi ; t`, or
/// `heis: inf`, with `#` starting a comment. Scalars use the exact literal
/// grammar. Each ball/siegel line must be a null vector.
pub fn parse_point_file(text: &str) -> Result<Vec<BoundaryPoint>, GeometryError> {
    let mut points = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(cut) => &raw[..cut],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        points.push(parse_point_line(line, line_no)?);
    }
    Ok(points)
}

fn parse_point_line(line: &str, line_no: usize) -> Result<BoundaryPoint, GeometryError> {
    let err = |msg: String| GeometryError::Parse { line: line_no, msg };
    let (tag, body) = line
        .split_once(':')
        .ok_or_else(|| err("expected `model: coordinates`".into()))?;
    let body = body.trim();
    match tag.trim() {
        "ball" | "siegel" => {
            let model = if tag.trim() == "ball" {
                HermitianModel::Ball
            } else {
                HermitianModel::Siegel
            };
            let parts: Vec<&str> = body.split(',').collect();
            if parts.len() != 3 {
                return Err(err(format!(
                    "expected 3 comma-separated scalars, found {}",
                    parts.len()
                )));
            }
            let mut entries = Vec::with_capacity(3);
            for part in &parts {
                entries.push(parse_scalar(part).map_err(|e| err(e.to_string()))?);
            }
            let rep = CVector::Exact([entries[0].clone(), entries[1].clone(), entries[2].clone()]);
            BoundaryPoint::new(rep, model).map_err(|e| err(e.to_string()))
        }
        "heis" => {
            if body == "inf" {
                return Ok(heisenberg_lift(&HeisenbergPoint::Infinity));
            }
            let (zeta_part, t_part) = body
                .split_once(';')
                .ok_or_else(|| err("expected `zr, zi ; t` or `inf`".into()))?;
            let coords: Vec<&str> = zeta_part.split(',').collect();
            if coords.len() != 2 {
                return Err(err(format!(
                    "expected 2 comma-separated rationals before `;`, found {}",
                    coords.len()
                )));
            }
            let zr = parse_rational(coords[0]).map_err(|e| err(e.to_string()))?;
            let zi = parse_rational(coords[1]).map_err(|e| err(e.to_string()))?;
            let t = parse_rational(t_part).map_err(|e| err(e.to_string()))?;
            Ok(heisenberg_lift(&HeisenbergPoint::Finite {
                zeta: GaussianRational::new(zr, zi),
                t,
            }))
        }
        other => Err(err(format!(
            "unknown model tag `{other}` (expected ball, siegel, or heis)"
        ))),
    }
}

/// Parses the group file format, one generator per line:
/// `holo: [[s,s,s],[s,s,s],[s,s,s]]` or `anti: [[...]]`, `#` comments.
/// Each matrix must satisfy M†JM = λJ for the given model.
pub fn parse_group_file(text: &str, model: HermitianModel) -> Result<Vec<Isometry>, GeometryError> {
    let mut gens = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(cut) => &raw[..cut],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| GeometryError::Parse { line: line_no, msg };
        let (tag, body) = line
            .split_once(':')
            .ok_or_else(|| err("expected `holo: [[...]]` or `anti: [[...]]`".into()))?;
        let anti = match tag.trim() {
            "holo" => false,
            "anti" => true,
            other => return Err(err(format!("unknown generator tag `{other}`"))),
        };
        let matrix = parse_matrix(body.trim()).map_err(|e| err(e.to_string()))?;
        gens.push(is_isometry(matrix, anti, model).map_err(|e| err(e.to_string()))?);
    }
    Ok(gens)
}

/// Parses `[[s,s,s],[s,s,s],[s,s,s]]` with scalars in the literal grammar.
pub fn parse_matrix(text: &str) -> Result<Matrix3, ExactError> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or(ExactError::Parse {
            pos: 0,
            msg: "matrix must be wrapped in [ ... ]".into(),
        })?;
    // Split the three bracketed rows.
    let mut rows: Vec<Vec<GaussianRational>> = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let start = rest.find('[').ok_or(ExactError::Parse {
            pos: 0,
            msg: "expected `[` starting a row".into(),
        })?;
        let end = rest[start..].find(']').ok_or(ExactError::Parse {
            pos: start,
            msg: "unterminated row".into(),
        })? + start;
        let row_body = &rest[start + 1..end];
        let mut row = Vec::new();
        for part in row_body.split(',') {
            row.push(parse_scalar(part)?);
        }
        if row.len() != 3 {
            return Err(ExactError::Parse {
                pos: start,
                msg: format!("expected 3 entries per row, found {}", row.len()),
            });
        }
        rows.push(row);
        rest = rest[end + 1..].trim_start_matches(|c: char| c.is_whitespace() || c == ',');
    }
    if rows.len() != 3 {
        return Err(ExactError::Parse {
            pos: 0,
            msg: format!("expected 3 rows, found {}", rows.len()),
        });
    }
    Ok(std::array::from_fn(|i| {
        std::array::from_fn(|j| rows[i][j].clone())
    }))
}

/// Prints a matrix in the group file grammar.
pub fn format_matrix(m: &Matrix3) -> String {
    let row = |i: usize| format!("[{},{},{}]", m[i][0], m[i][1], m[i][2]);
    format!("[{},{},{}]", row(0), row(1), row(2))
}
