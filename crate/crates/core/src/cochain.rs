//! Homogeneous cochains on boundary tuples: alternation, cup product, the
//! coboundary operator, and the two independent evaluators for the
//! alternated cup square of the Kähler cocycle.
//!
//! A degree-p cochain is a total function on (p+1)-tuples of boundary
//! points. Values are exact-or-approximate reals ([`RealValue`]); every
//! combinator preserves exactness of exact inputs.

use crate::cartan::c_phi;
use crate::exact::{int, rat, Rational, RealValue};
use crate::hermitian::{BoundaryPoint, GeometryError};
use itertools::Itertools;
use std::sync::Arc;

type Evaluator = dyn Fn(&[BoundaryPoint]) -> Result<RealValue, GeometryError> + Send + Sync;

/// A homogeneous cochain of degree p: a reentrant evaluator on
/// (p+1)-tuples of boundary points.
#[derive(Clone)]
pub struct Cochain {
    degree: usize,
    eval: Arc<Evaluator>,
}

impl Cochain {
    pub fn new<F>(degree: usize, eval: F) -> Self
    where
        F: Fn(&[BoundaryPoint]) -> Result<RealValue, GeometryError> + Send + Sync + 'static,
    {
        Cochain {
            degree,
            eval: Arc::new(eval),
        }
    }

    /// The constant cochain of the given degree.
    pub fn constant(degree: usize, value: RealValue) -> Self {
        Cochain::new(degree, move |_| Ok(value.clone()))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Evaluates on a (degree+1)-tuple.
    pub fn evaluate(&self, points: &[BoundaryPoint]) -> Result<RealValue, GeometryError> {
        assert_eq!(
            points.len(),
            self.degree + 1,
            "degree-{} cochain takes {}-tuples",
            self.degree,
            self.degree + 1
        );
        (self.eval)(points)
    }
}

/// The Kähler cocycle c_Φ = 2𝔸 as a degree-2 cochain.
pub fn c_phi_cochain() -> Cochain {
    Cochain::new(2, |points| c_phi(&points[0], &points[1], &points[2]))
}

/// Sign of a permutation given as an image list, by inversion count.
pub fn permutation_sign(perm: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn factorial(n: usize) -> Rational {
    let mut acc = int(1);
    for k in 2..=n {
        acc *= int(k as i64);
    }
    acc
}

/// Alternation: Alt(f)(x̄) = (1/(p+1)!) Σ_{σ} sign(σ)·f(σ·x̄). The output
/// is alternating and fixes already-alternating cochains pointwise.
pub fn alt(f: &Cochain) -> Cochain {
    let degree = f.degree();
    let f = f.clone();
    Cochain::new(degree, move |points| {
        let n = points.len();
        let mut acc = RealValue::zero();
        for perm in (0..n).permutations(n) {
            let sign = permutation_sign(&perm);
            let permuted: Vec<BoundaryPoint> = perm.iter().map(|&i| points[i].clone()).collect();
            let term = f.evaluate(&permuted)?;
            acc = acc.add(&term.scale(&int(sign)));
        }
        Ok(acc.scale(&(int(1) / factorial(n))))
    })
}

/// Cup product: (f∪g)(x₀,…,x_{p+q}) = f(x₀,…,x_p)·g(x_p,…,x_{p+q})
/// (the middle point is shared).
pub fn cup(f: &Cochain, g: &Cochain) -> Cochain {
    let p = f.degree();
    let degree = p + g.degree();
    let f = f.clone();
    let g = g.clone();
    Cochain::new(degree, move |points| {
        let left = f.evaluate(&points[..=p])?;
        let right = g.evaluate(&points[p..])?;
        Ok(left.mul(&right))
    })
}

/// Homogeneous coboundary: δf(x₀,…,x_{p+1}) = Σᵢ (−1)ⁱ f(…,x̂ᵢ,…).
/// Satisfies δ∘δ = 0 identically.
pub fn coboundary(f: &Cochain) -> Cochain {
    let degree = f.degree() + 1;
    let f = f.clone();
    Cochain::new(degree, move |points| {
        let mut acc = RealValue::zero();
        for omit in 0..points.len() {
            let mut sub: Vec<BoundaryPoint> = Vec::with_capacity(points.len() - 1);
            sub.extend_from_slice(&points[..omit]);
            sub.extend_from_slice(&points[omit + 1..]);
            let sign = if omit % 2 == 0 { 1 } else { -1 };
            acc = acc.add(&f.evaluate(&sub)?.scale(&int(sign)));
        }
        Ok(acc)
    })
}

fn check_same_model(points: &[BoundaryPoint; 5]) -> Result<(), GeometryError> {
    if points.iter().any(|p| p.model() != points[0].model()) {
        return Err(GeometryError::ModelMismatch);
    }
    Ok(())
}

/// The alternated cup square of c_Φ on a boundary 5-tuple, via the 3-term
/// reduction
///   (1/3)·[c(x₀,x₁,x₂)c(x₀,x₃,x₄) − c(x₀,x₁,x₃)c(x₀,x₂,x₄)
///          + c(x₀,x₁,x₄)c(x₀,x₂,x₃)]
/// with c = c_Φ. Exact (a rational multiple of π²) whenever all six cocycle
/// values are exact; antisymmetric in the five arguments.
pub fn cup_sq_reduced(points: &[BoundaryPoint; 5]) -> Result<RealValue, GeometryError> {
    check_same_model(points)?;
    let c = |i: usize, j: usize, k: usize| c_phi(&points[i], &points[j], &points[k]);
    let t1 = c(0, 1, 2)?.mul(&c(0, 3, 4)?);
    let t2 = c(0, 1, 3)?.mul(&c(0, 2, 4)?);
    let t3 = c(0, 1, 4)?.mul(&c(0, 2, 3)?);
    Ok(t1.sub(&t2).add(&t3).scale(&rat(1, 3)))
}

/// Independent oracle for [`cup_sq_reduced`]: the literal 120-term
/// alternation Alt(c_Φ ∪ c_Φ), built from the generic combinators. Roughly
/// 40× the cost of the reduction; intended for cross-checking only.
pub fn cup_sq_full_oracle(points: &[BoundaryPoint; 5]) -> Result<RealValue, GeometryError> {
    check_same_model(points)?;
    let cphi = c_phi_cochain();
    alt(&cup(&cphi, &cphi)).evaluate(points.as_slice())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::GaussianRational;
    use crate::hermitian::{CVector, HermitianModel};

    fn ball(entries: [(i64, i64); 3]) -> BoundaryPoint {
        BoundaryPoint::new(CVector::from_int_pairs(entries), HermitianModel::Ball).unwrap()
    }

    fn reference_five() -> [BoundaryPoint; 5] {
        [
            ball([(1, 0), (0, 0), (1, 0)]),  // x_plus
            ball([(0, 1), (0, 0), (1, 0)]),  // x_i
            ball([(0, 0), (1, 0), (1, 0)]),  // y_plus
            ball([(0, 0), (0, 1), (1, 0)]),  // y_i
            ball([(0, 0), (0, -1), (1, 0)]), // y_minus_i
        ]
    }

    fn v_point() -> BoundaryPoint {
        let half = rat(1, 2);
        BoundaryPoint::new(
            CVector::Exact([
                GaussianRational::new(half.clone(), half.clone()),
                GaussianRational::new(half.clone(), half),
                GaussianRational::one(),
            ]),
            HermitianModel::Ball,
        )
        .unwrap()
    }

    /// Indicator cochain of the ordered pair (a, b).
    fn pair_indicator(a: BoundaryPoint, b: BoundaryPoint) -> Cochain {
        Cochain::new(1, move |points| {
            let hit = points[0].proj_equal(&a)? && points[1].proj_equal(&b)?;
            Ok(if hit {
                RealValue::rational(int(1))
            } else {
                RealValue::zero()
            })
        })
    }

    #[test]
    fn alt_of_pair_indicator_averages() {
        let a = ball([(1, 0), (0, 0), (1, 0)]);
        let b = ball([(0, 0), (1, 0), (1, 0)]);
        let f = alt(&pair_indicator(a.clone(), b.clone()));
        assert_eq!(
            f.evaluate(&[a.clone(), b.clone()]).unwrap(),
            RealValue::rational(rat(1, 2))
        );
        assert_eq!(
            f.evaluate(&[b, a]).unwrap(),
            RealValue::rational(rat(-1, 2))
        );
    }

    #[test]
    fn alt_kills_symmetric_and_fixes_alternating() {
        let sym = Cochain::new(2, |points| {
            // Symmetric in the first two slots.
            let x = points[0].proj_equal(&points[1])?;
            Ok(RealValue::rational(if x { int(2) } else { int(5) }))
        });
        let pts = reference_five();
        let tuple = [pts[0].clone(), pts[1].clone(), pts[2].clone()];
        assert!(alt(&sym).evaluate(&tuple).unwrap().is_zero());

        // c_phi is already alternating: alt fixes it pointwise.
        let cphi = c_phi_cochain();
        let alted = alt(&cphi);
        assert_eq!(
            alted.evaluate(&tuple).unwrap(),
            cphi.evaluate(&tuple).unwrap()
        );
    }

    #[test]
    fn cup_examples() {
        let one = Cochain::constant(0, RealValue::rational(int(1)));
        let product = cup(&one, &one);
        let pts = reference_five();
        assert_eq!(
            product.evaluate(&pts[..1]).unwrap(),
            RealValue::rational(int(1))
        );

        // Shared-middle convention with a repeated point zeroing one factor.
        let cphi = c_phi_cochain();
        let sq = cup(&cphi, &cphi);
        let [x_plus, x_i, y_plus, y_i, _] = pts.clone();
        let with_repeat = [
            x_plus.clone(),
            x_i.clone(),
            y_plus.clone(),
            y_plus.clone(),
            v_point(),
        ];
        assert!(sq.evaluate(&with_repeat).unwrap().is_zero());

        let tuple = [
            x_plus.clone(),
            x_i.clone(),
            y_plus.clone(),
            y_i.clone(),
            v_point(),
        ];
        let expected = c_phi(&x_plus, &x_i, &y_plus)
            .unwrap()
            .mul(&c_phi(&y_plus, &y_i, &v_point()).unwrap());
        assert_eq!(sq.evaluate(&tuple).unwrap(), expected);
    }

    #[test]
    fn coboundary_of_constant() {
        // Four-argument constant cochain: five alternating-sign terms sum to 1.
        let b = Cochain::constant(3, RealValue::rational(int(1)));
        let db = coboundary(&b);
        let pts = reference_five();
        assert_eq!(db.evaluate(&pts).unwrap(), RealValue::rational(int(1)));
    }

    #[test]
    fn c_phi_is_a_cocycle_on_the_reference_tuple() {
        let pts = reference_five();
        let dc = coboundary(&c_phi_cochain());
        let tuple = [
            pts[0].clone(),
            pts[1].clone(),
            pts[2].clone(),
            pts[3].clone(),
        ];
        let val = dc.evaluate(&tuple).unwrap();
        assert!(val.is_exact() && val.is_zero(), "delta c_phi = {val}");
    }

    #[test]
    fn cup_sq_reference_values() {
        let pts = reference_five();
        assert_eq!(
            cup_sq_reduced(&pts).unwrap(),
            RealValue::exact(rat(1, 6), 2)
        );

        let mut with_v = pts.clone();
        with_v[4] = v_point();
        assert_eq!(
            cup_sq_reduced(&with_v).unwrap(),
            RealValue::exact(rat(-1, 4), 2)
        );

        let mut repeated = pts.clone();
        repeated[4] = pts[0].clone();
        assert!(cup_sq_reduced(&repeated).unwrap().is_zero());
    }

    #[test]
    fn cup_sq_oracle_matches_reduction_exactly() {
        let pts = reference_five();
        assert_eq!(
            cup_sq_full_oracle(&pts).unwrap(),
            RealValue::exact(rat(1, 6), 2)
        );

        let mut with_v = pts.clone();
        with_v[4] = v_point();
        assert_eq!(
            cup_sq_full_oracle(&with_v).unwrap(),
            RealValue::exact(rat(-1, 4), 2)
        );

        let mut repeated = pts;
        repeated[4] = repeated[1].clone();
        assert!(cup_sq_full_oracle(&repeated).unwrap().is_zero());
    }

    #[test]
    fn cup_sq_is_antisymmetric() {
        let mut pts = reference_five();
        pts[4] = v_point();
        let base = cup_sq_reduced(&pts).unwrap();
        for swap in 0..4 {
            let mut permuted = pts.clone();
            permuted.swap(swap, swap + 1);
            assert_eq!(
                cup_sq_reduced(&permuted).unwrap(),
                base.negate(),
                "transposition ({swap},{})",
                swap + 1
            );
        }
    }

    #[test]
    fn permutation_sign_matches_inversion_parity() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[2, 0, 1]), 1);
        assert_eq!(permutation_sign(&[4, 3, 2, 1, 0]), 1);
        assert_eq!(permutation_sign(&[1, 0, 3, 2, 4]), 1);
    }
}
