//! The Cartan angular invariant of boundary triples, the associated bounded
//! 2-cocycle c_Φ = 2𝔸, and complex reflections in complex lines.

use crate::exact::{exact_arg, int, Angle, GaussianRational, RealValue};
use crate::hermitian::{
    classify, herm, is_isometry, mat_identity, BoundaryPoint, CVector, ComplexScalar,
    GeometryError, HermitianModel, Isometry, PointClass,
};
use num::One;

/// The Cartan invariant of a boundary triple, or the degenerate tag for a
/// triple with a repeated point (where arg of the vanishing triple product
/// is undefined but the alternating extension of the cocycle forces 0).
#[derive(Debug, Clone, PartialEq)]
pub enum CartanValue {
    Angle(Angle),
    Degenerate,
}

impl CartanValue {
    pub fn angle(&self) -> Option<&Angle> {
        match self {
            CartanValue::Angle(a) => Some(a),
            CartanValue::Degenerate => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        match self {
            CartanValue::Angle(a) => a.is_exact(),
            CartanValue::Degenerate => true,
        }
    }
}

/// 𝔸(p,q,r) = arg(−⟨p,q⟩⟨q,r⟩⟨r,p⟩).
///
/// The value is independent of the representative scaling (each rescaling
/// multiplies the triple product by a positive real |μ|²) and lands in
/// [−π/2, π/2] for pairwise-distinct triples. Exact whenever the
/// representatives are exact and the triple product lies on an axis or
/// diagonal of ℚ(i) — which covers every rational-π value this crate
/// certifies. A repeated point yields [`CartanValue::Degenerate`].
pub fn cartan(
    p: &BoundaryPoint,
    q: &BoundaryPoint,
    r: &BoundaryPoint,
) -> Result<CartanValue, GeometryError> {
    if p.model() != q.model() || q.model() != r.model() {
        return Err(GeometryError::ModelMismatch);
    }
    if p.proj_equal(q)? || q.proj_equal(r)? || r.proj_equal(p)? {
        return Ok(CartanValue::Degenerate);
    }
    let model = p.model();
    let triple = herm(p.rep(), q.rep(), model)
        .mul(&herm(q.rep(), r.rep(), model))
        .mul(&herm(r.rep(), p.rep(), model))
        .neg();
    let angle = match triple {
        // Distinct boundary points always pair nontrivially (a vanishing
        // product would span a 2-dimensional isotropic subspace, impossible
        // in signature (2,1)), so the argument is well defined.
        ComplexScalar::Exact(z) => exact_arg(&z).map_err(GeometryError::Scalar)?,
        ComplexScalar::Inexact(z) => Angle::approx(z.im.atan2(z.re)),
    };
    Ok(CartanValue::Angle(angle))
}

/// The Kähler cocycle c_Φ(p,q,r) = 2·𝔸(p,q,r), read as a real number in
/// [−π, π] (no reduction mod 2π: −π and π are distinct cochain values).
/// Triples with a repeated point give exactly 0.
pub fn c_phi(
    p: &BoundaryPoint,
    q: &BoundaryPoint,
    r: &BoundaryPoint,
) -> Result<RealValue, GeometryError> {
    match cartan(p, q, r)? {
        CartanValue::Degenerate => Ok(RealValue::zero()),
        CartanValue::Angle(a) => Ok(RealValue::from(&a).scale(&int(2))),
    }
}

/// The complex reflection with polar vector `c` and reflection factor `η`:
/// z ↦ z + (η−1)·(⟨z,c⟩/⟨c,c⟩)·c, as a matrix I + ((η−1)/⟨c,c⟩)·c·(c†J).
///
/// Requires `c` positive (so the orthogonal complement line meets the
/// boundary) and |η|² = 1 exactly. The result is a unitary isometry
/// (λ = 1) fixing every boundary point of the mirror line ⟨z,c⟩ = 0, and
/// the factor map is a homomorphism: M_η·M_μ = M_{ημ} exactly.
pub fn reflection_matrix(
    c: &CVector,
    eta: &GaussianRational,
    model: HermitianModel,
) -> Result<Isometry, GeometryError> {
    let c_entries = match c.exact_entries() {
        Some(e) => e,
        None => {
            return Err(GeometryError::NotAnIsometry {
                residual: "reflection polar vector must be exact".into(),
            })
        }
    };
    if classify(c, model)? != PointClass::Positive {
        return Err(GeometryError::NotPositive);
    }
    if !eta.norm_sqr().is_one() {
        return Err(GeometryError::NotUnitModulus);
    }
    let cc = match herm(c, c, model) {
        ComplexScalar::Exact(z) => z,
        ComplexScalar::Inexact(_) => unreachable!("exact entries give an exact product"),
    };
    let factor = (eta - &GaussianRational::one())
        .checked_div(&cc)
        .expect("positive vector has nonzero self-product");
    // Row of c†J: conjugated entries of c hit the Gram matrix. Both Gram
    // matrices are real permutations of diag(±1), handled by index/sign.
    let cj: [GaussianRational; 3] = match model {
        HermitianModel::Ball => [
            c_entries[0].conj(),
            c_entries[1].conj(),
            -&c_entries[2].conj(),
        ],
        HermitianModel::Siegel => [
            c_entries[2].conj(),
            c_entries[1].conj(),
            c_entries[0].conj(),
        ],
    };
    let mut matrix = mat_identity();
    for (i, row) in matrix.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = &*entry + &(&(&factor * &c_entries[i]) * &cj[j]);
        }
    }
    is_isometry(matrix, false, model)
}
