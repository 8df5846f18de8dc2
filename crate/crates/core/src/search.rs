//! Lower-bound certificate discovery.
//!
//! Pipeline: enumerate boundary 5-tuples → quotient their 4-point faces by
//! a finite symmetry set (signed union-find, alternating bookkeeping as pure
//! sign computation) → expand the coboundary of each tuple over free face
//! orbits → exact kernel of the resulting relation system → maximize the
//! certified bound |Σλᵢcᵢ|/Σ|λᵢ| over the kernel by exact rational simplex.

use crate::certificates::{Certificate, FaceEntry, OrbitClass, OrbitLine};
use crate::cochain::{cup_sq_reduced, permutation_sign};
use crate::exact::Rational;
use crate::hermitian::{BoundaryPoint, GeometryError, Isometry, Matrix3, PointKey};
use crate::linalg::left_kernel_basis;
use crate::simplex::{solve, LpOutcome, StandardLp};
use itertools::Itertools;
use num::{One, Signed, Zero};
use std::collections::{HashMap, HashSet};

/// Knobs for the search pipeline. Enumeration order is always deterministic
/// (lexicographic over the canonical point order).
#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Cap on enumerated 5-tuples.
    pub max_tuples: usize,
    /// Word-length cap when closing the generator set under composition
    /// (the alphabet is the generators together with their inverses).
    pub word_length: usize,
    /// Admit antiholomorphic generators for face identification.
    pub include_antiholomorphic: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_tuples: 10_000,
            word_length: 4,
            include_antiholomorphic: false,
        }
    }
}

// ---------------------------------------------------------------------------
// Face orbits
// ---------------------------------------------------------------------------

/// Quotient of the 4-point faces of an exact point set by a symmetry set,
/// with signs: each face resolves to (orbit root, sign) so that for any
/// alternating invariant b, b(face) = sign·b(root face) — or to a
/// forced-zero orbit when the identifications make the value vanish.
#[derive(Debug)]
pub struct FaceOrbitTable {
    faces: Vec<[usize; 4]>,
    index: HashMap<[usize; 4], usize>,
    parent: Vec<usize>,
    sign_to_parent: Vec<i8>,
    forced_zero: Vec<bool>,
}

impl FaceOrbitTable {
    fn new(n_points: usize) -> Self {
        let faces: Vec<[usize; 4]> = (0..n_points)
            .combinations(4)
            .map(|c| [c[0], c[1], c[2], c[3]])
            .collect();
        let index = faces.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let n = faces.len();
        FaceOrbitTable {
            faces,
            index,
            parent: (0..n).collect(),
            sign_to_parent: vec![1; n],
            forced_zero: vec![false; n],
        }
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn faces(&self) -> &[[usize; 4]] {
        &self.faces
    }

    pub fn face_index(&self, face: &[usize; 4]) -> Option<usize> {
        self.index.get(face).copied()
    }

    fn find(&mut self, start: usize) -> (usize, i8) {
        let mut path = Vec::new();
        let mut node = start;
        while self.parent[node] != node {
            path.push(node);
            node = self.parent[node];
        }
        let root = node;
        let mut sign = 1i8;
        for &n in path.iter().rev() {
            sign *= self.sign_to_parent[n];
            self.parent[n] = root;
            self.sign_to_parent[n] = sign;
        }
        // Roots keep sign_to_parent = 1, so this is exact for both cases.
        (root, self.sign_to_parent[start])
    }

    /// Records val(a) = s·val(b); a contradiction forces the orbit to zero.
    fn union(&mut self, a: usize, b: usize, s: i8) {
        let (ra, sa) = self.find(a);
        let (rb, sb) = self.find(b);
        if ra == rb {
            if sa != s * sb {
                self.forced_zero[ra] = true;
            }
            return;
        }
        // Keep the smaller root, so each orbit's root is its minimal face.
        let (keep, drop) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[drop] = keep;
        self.sign_to_parent[drop] = sa * s * sb;
        let zero = self.forced_zero[ra] || self.forced_zero[rb];
        self.forced_zero[keep] = zero;
    }

    fn finalize(&mut self) {
        for i in 0..self.parent.len() {
            self.find(i);
        }
    }

    /// Root face index, sign to the root, and the forced-zero flag.
    /// The root is the lexicographically minimal face of the orbit.
    pub fn resolve(&self, face: usize) -> (usize, i8, bool) {
        let root = self.parent[face];
        debug_assert_eq!(self.parent[root], root, "table not finalized");
        let sign = if face == root {
            1
        } else {
            self.sign_to_parent[face]
        };
        (root, sign, self.forced_zero[root])
    }
}

/// Projective dedupe key for an exact isometry: the matrix scaled so its
/// first nonzero entry is 1, plus the antiholomorphic flag.
fn isometry_key(iso: &Isometry) -> (bool, [[(Rational, Rational); 3]; 3]) {
    let m: &Matrix3 = &iso.matrix;
    let pivot = m
        .iter()
        .flatten()
        .find(|z| !z.is_zero())
        .expect("isometry matrix is nonzero");
    let inv = pivot.inverse().expect("pivot is nonzero");
    let scaled: [[(Rational, Rational); 3]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let z = &m[i][j] * &inv;
            (z.re, z.im)
        })
    });
    (iso.antiholomorphic, scaled)
}

/// Closes a generator set under composition: all words of length at most
/// `word_length` in the generators and their inverses, deduplicated
/// projectively, in deterministic BFS order (identity first).
pub fn close_group(
    generators: &[Isometry],
    word_length: usize,
    include_antiholomorphic: bool,
) -> Result<Vec<Isometry>, GeometryError> {
    let mut letters: Vec<Isometry> = Vec::new();
    for g in generators {
        if g.antiholomorphic && !include_antiholomorphic {
            continue;
        }
        letters.push(g.clone());
        letters.push(g.inverse()?);
    }
    let model = match letters.first() {
        Some(g) => g.model,
        None => return Ok(Vec::new()),
    };
    if letters.iter().any(|g| g.model != model) {
        return Err(GeometryError::ModelMismatch);
    }

    let identity = Isometry::identity(model);
    let mut seen = HashSet::new();
    seen.insert(isometry_key(&identity));
    let mut closure = vec![identity];
    let mut frontier: Vec<usize> = vec![0];
    for _ in 0..word_length {
        let mut next_frontier = Vec::new();
        for &i in &frontier {
            for letter in &letters {
                let composed = closure[i].compose(letter)?;
                if seen.insert(isometry_key(&composed)) {
                    next_frontier.push(closure.len());
                    closure.push(composed);
                }
            }
        }
        if next_frontier.is_empty() {
            break;
        }
        frontier = next_frontier;
    }
    Ok(closure)
}

/// Builds the face-orbit table for an exact, pairwise-distinct point set
/// under the closure of the given generators.
///
/// Group elements may move points outside the set; those images simply
/// produce no identification. Identifications record the sign of the
/// permutation sorting the image face, so alternating bookkeeping reduces
/// to sign algebra; a face identified with itself negatively (or any
/// contradictory cycle) is forced to zero.
pub fn face_orbits(
    points: &[BoundaryPoint],
    group: &[Isometry],
    opts: &SearchOptions,
) -> Result<FaceOrbitTable, GeometryError> {
    let closure = close_group(group, opts.word_length, opts.include_antiholomorphic)?;
    face_orbits_with_closure(points, &closure)
}

/// As [`face_orbits`], but over an explicit, already-closed symmetry list.
pub fn face_orbits_with_closure(
    points: &[BoundaryPoint],
    closure: &[Isometry],
) -> Result<FaceOrbitTable, GeometryError> {
    if points.is_empty() {
        return Err(GeometryError::EmptyInput);
    }
    let keys = point_keys(points)?;
    let lookup: HashMap<&PointKey, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();

    let mut table = FaceOrbitTable::new(points.len());

    // Distinct closure elements often act identically on the finite point
    // set; dedupe by action before doing per-face work.
    let mut seen_actions: HashSet<Vec<Option<usize>>> = HashSet::new();
    for g in closure {
        if g.model != points[0].model() {
            return Err(GeometryError::ModelMismatch);
        }
        let action: Vec<Option<usize>> = points
            .iter()
            .map(|p| {
                let image = g.apply_vector(p.rep());
                BoundaryPoint::new(image, p.model())
                    .ok()
                    .and_then(|q| q.canonical_key())
                    .and_then(|k| lookup.get(&k).copied())
            })
            .collect();
        if !seen_actions.insert(action.clone()) {
            continue;
        }
        for fi in 0..table.face_count() {
            let face = table.faces[fi];
            let mut image = [0usize; 4];
            let mut all_in = true;
            for (slot, &p) in face.iter().enumerate() {
                match action[p] {
                    Some(q) => image[slot] = q,
                    None => {
                        all_in = false;
                        break;
                    }
                }
            }
            if !all_in {
                continue;
            }
            let sign = permutation_sign(&image) as i8;
            let mut sorted = image;
            sorted.sort_unstable();
            let target = table.index[&sorted];
            // b(face) = b(g·face ordered) = sign · b(g·face sorted).
            table.union(fi, target, sign);
        }
    }
    table.finalize();
    Ok(table)
}

/// Canonical keys for an exact, pairwise-distinct point set.
pub fn point_keys(points: &[BoundaryPoint]) -> Result<Vec<PointKey>, GeometryError> {
    let mut keys = Vec::with_capacity(points.len());
    let mut seen = HashSet::new();
    for p in points {
        let key = p.canonical_key().ok_or(GeometryError::ExactnessRequired)?;
        if !seen.insert(key.clone()) {
            return Err(GeometryError::DuplicatePoint);
        }
        if p.model() != points[0].model() {
            return Err(GeometryError::ModelMismatch);
        }
        keys.push(key);
    }
    Ok(keys)
}

// ---------------------------------------------------------------------------
// Relation system
// ---------------------------------------------------------------------------

/// The coboundary incidence system of a tuple list over free face orbits,
/// together with an exact basis of its left kernel — the space of
/// coefficient vectors λ with Σλᵢ·δb(tᵢ) = 0 for every alternating
/// invariant b respecting the orbit table.
#[derive(Debug)]
pub struct RelationSystem {
    /// Free orbit roots serving as formal variables, ascending.
    pub variables: Vec<usize>,
    /// One row per tuple: the δ-expansion over `variables`.
    pub rows: Vec<Vec<Rational>>,
    /// Exact basis of {λ : λᵀ·rows = 0}.
    pub kernel: Vec<Vec<Rational>>,
}

/// The δ-expansion of a sorted 5-tuple over orbit roots: pairs
/// (root, coefficient) with coefficient = Σ over face slots of
/// (−1)^slot · sign(face → root), forced-zero orbits omitted.
pub fn delta_expansion(tuple: &[usize; 5], table: &FaceOrbitTable) -> Vec<(usize, i64)> {
    let mut acc: HashMap<usize, i64> = HashMap::new();
    for slot in 0..5 {
        let mut face = [0usize; 4];
        let mut w = 0;
        for (i, &p) in tuple.iter().enumerate() {
            if i != slot {
                face[w] = p;
                w += 1;
            }
        }
        let fi = table
            .face_index(&face)
            .expect("tuple faces live in the table's point set");
        let (root, sign, zero) = table.resolve(fi);
        if zero {
            continue;
        }
        let delta_sign = if slot % 2 == 0 { 1i64 } else { -1i64 };
        *acc.entry(root).or_insert(0) += delta_sign * i64::from(sign);
    }
    let mut out: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
    out.sort_unstable();
    out
}

/// Builds the incidence rows of the tuples over free orbit variables and
/// computes the exact left-kernel basis by fraction-free elimination.
pub fn relation_kernel(tuples: &[[usize; 5]], table: &FaceOrbitTable) -> RelationSystem {
    let expansions: Vec<Vec<(usize, i64)>> =
        tuples.iter().map(|t| delta_expansion(t, table)).collect();
    let mut variables: Vec<usize> = expansions.iter().flatten().map(|&(root, _)| root).collect();
    variables.sort_unstable();
    variables.dedup();
    let col: HashMap<usize, usize> = variables
        .iter()
        .enumerate()
        .map(|(j, &root)| (root, j))
        .collect();
    let rows: Vec<Vec<Rational>> = expansions
        .iter()
        .map(|exp| {
            let mut row = vec![Rational::zero(); variables.len()];
            for &(root, coeff) in exp {
                row[col[&root]] = Rational::from_integer(coeff.into());
            }
            row
        })
        .collect();
    let kernel = left_kernel_basis(&rows, variables.len());
    RelationSystem {
        variables,
        rows,
        kernel,
    }
}

// ---------------------------------------------------------------------------
// Bound optimization
// ---------------------------------------------------------------------------

/// Maximizes the certified bound |λᵀc| over the kernel span with ‖λ‖₁ ≤ 1
/// by exact simplex on split variables (both signed objectives are solved
/// and the better one kept). Returns the ℓ¹-normalized λ and the bound as
/// a π²-coefficient. A zero kernel yields (0, …, 0) with bound 0.
pub fn optimize_lambda(
    kernel: &[Vec<Rational>],
    cvalues: &[Rational],
) -> (Vec<Rational>, Rational) {
    let m = cvalues.len();
    if kernel.is_empty() || m == 0 {
        return (vec![Rational::zero(); m], Rational::zero());
    }
    let d = kernel.len();
    for k in kernel {
        assert_eq!(k.len(), m, "kernel vector length mismatch");
    }

    // Columns: lambda+ (m), lambda- (m), mu+ (d), mu- (d), slack (1).
    let n = 2 * m + 2 * d + 1;
    let mut constraints = Vec::with_capacity(m + 1);
    for i in 0..m {
        let mut row = vec![Rational::zero(); n];
        row[i] = Rational::one();
        row[m + i] = -Rational::one();
        for (j, k) in kernel.iter().enumerate() {
            row[2 * m + j] = -k[i].clone();
            row[2 * m + d + j] = k[i].clone();
        }
        constraints.push(row);
    }
    let mut norm_row = vec![Rational::zero(); n];
    for x in norm_row.iter_mut().take(2 * m) {
        *x = Rational::one();
    }
    norm_row[n - 1] = Rational::one();
    constraints.push(norm_row);
    let mut rhs = vec![Rational::zero(); m];
    rhs.push(Rational::one());

    let mut best: Option<(Vec<Rational>, Rational)> = None;
    for mirror in [false, true] {
        let mut objective = vec![Rational::zero(); n];
        for i in 0..m {
            let c = if mirror {
                -cvalues[i].clone()
            } else {
                cvalues[i].clone()
            };
            objective[i] = c.clone();
            objective[m + i] = -c;
        }
        let outcome = solve(&StandardLp {
            constraints: constraints.clone(),
            rhs: rhs.clone(),
            objective,
        });
        let (value, solution) = match outcome {
            LpOutcome::Optimal { value, solution } => (value, solution),
            other => unreachable!("bounded feasible program, got {other:?}"),
        };
        let lambda: Vec<Rational> = (0..m).map(|i| &solution[i] - &solution[m + i]).collect();
        if best.as_ref().is_none_or(|(_, b)| value > *b) {
            best = Some((lambda, value));
        }
    }
    let (lambda, _) = best.expect("both mirrored solves returned");

    // ℓ¹-normalize and recompute the bound exactly from the invariant
    // bound·Σ|λᵢ| = |Σλᵢcᵢ|.
    let norm: Rational = lambda.iter().map(|x| x.abs()).sum();
    if norm.is_zero() {
        return (vec![Rational::zero(); m], Rational::zero());
    }
    let lambda: Vec<Rational> = lambda.into_iter().map(|x| x / &norm).collect();
    let dot: Rational = lambda.iter().zip(cvalues).map(|(l, c)| l * c).sum();
    if dot.is_zero() {
        // A zero bound certifies nothing; report it with empty support.
        return (vec![Rational::zero(); m], Rational::zero());
    }
    (lambda, dot.abs())
}

// ---------------------------------------------------------------------------
// The search pipeline
// ---------------------------------------------------------------------------

/// Outcome counters for a search run (the certificate is the product).
#[derive(Debug, Clone, Default)]
pub struct SearchStats {
    pub tuples_enumerated: usize,
    pub tuples_inexact_dropped: usize,
    pub closure_size: usize,
    pub free_orbits: usize,
    pub forced_zero_orbits: usize,
    pub kernel_dimension: usize,
}

/// Runs the full pipeline and assembles a self-consistent certificate.
///
/// Deterministic for fixed inputs and options: points are sorted by their
/// canonical projective form, 5-subsets enumerated lexicographically up to
/// the cap, tuples whose cup-square value is not exact are dropped (only
/// exact values can be certified), and the final certificate keeps exactly
/// the tuples with nonzero λ.
pub fn search(
    points: &[BoundaryPoint],
    group: &[Isometry],
    opts: &SearchOptions,
) -> Result<(Certificate, SearchStats), GeometryError> {
    let mut stats = SearchStats::default();

    let mut sorted: Vec<BoundaryPoint> = points.to_vec();
    {
        let keys = point_keys(&sorted)?;
        let mut order: Vec<usize> = (0..sorted.len()).collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        sorted = order.into_iter().map(|i| sorted[i].clone()).collect();
    }
    let model = sorted
        .first()
        .map(|p| p.model())
        .ok_or(GeometryError::EmptyInput)?;

    let closure = close_group(group, opts.word_length, opts.include_antiholomorphic)?;
    stats.closure_size = closure.len();
    let table = face_orbits_with_closure(&sorted, &closure)?;
    let mut roots: HashSet<usize> = HashSet::new();
    let mut zero_roots: HashSet<usize> = HashSet::new();
    for f in 0..table.face_count() {
        let (root, _, zero) = table.resolve(f);
        if zero {
            zero_roots.insert(root);
        } else {
            roots.insert(root);
        }
    }
    stats.free_orbits = roots.len();
    stats.forced_zero_orbits = zero_roots.len();

    // Enumerate tuples and their exact cup-square values.
    let mut tuples: Vec<[usize; 5]> = Vec::new();
    let mut cvalues: Vec<Rational> = Vec::new();
    if sorted.len() >= 5 {
        for combo in (0..sorted.len()).combinations(5) {
            if tuples.len() == opts.max_tuples {
                break;
            }
            stats.tuples_enumerated += 1;
            let tuple = [combo[0], combo[1], combo[2], combo[3], combo[4]];
            let pts: [BoundaryPoint; 5] = std::array::from_fn(|i| sorted[tuple[i]].clone());
            let value = cup_sq_reduced(&pts)?;
            match value.exact_parts() {
                Some((coeff, pow)) => {
                    debug_assert!(pow == 2 || coeff.is_zero());
                    tuples.push(tuple);
                    cvalues.push(coeff.clone());
                }
                None => stats.tuples_inexact_dropped += 1,
            }
        }
    }

    let system = relation_kernel(&tuples, &table);
    stats.kernel_dimension = system.kernel.len();
    let (lambda, bound) = optimize_lambda(&system.kernel, &cvalues);

    // Keep only the support of lambda.
    let support: Vec<usize> = (0..tuples.len())
        .filter(|&i| !lambda[i].is_zero())
        .collect();
    let kept_tuples: Vec<[usize; 5]> = support.iter().map(|&i| tuples[i]).collect();
    let kept_lambda: Vec<Rational> = support.iter().map(|&i| lambda[i].clone()).collect();
    let kept_cvalues: Vec<Rational> = support.iter().map(|&i| cvalues[i].clone()).collect();

    let certificate = assemble_certificate(
        model,
        &sorted,
        &table,
        &kept_tuples,
        kept_lambda,
        kept_cvalues,
        bound,
    );
    Ok((certificate, stats))
}

/// Builds the certificate structure: witness orbit lines for every face
/// referenced by the kept tuples (free and forced-zero), plus the per-tuple
/// signed incidence rows mapping each δ-face to its orbit line.
pub fn assemble_certificate(
    model: crate::hermitian::HermitianModel,
    points: &[BoundaryPoint],
    table: &FaceOrbitTable,
    tuples: &[[usize; 5]],
    lambda: Vec<Rational>,
    cvalues: Vec<Rational>,
    bound: Rational,
) -> Certificate {
    // Collect referenced orbit roots in deterministic (root index) order.
    let mut referenced: Vec<usize> = Vec::new();
    for tuple in tuples {
        for slot in 0..5 {
            let mut face = [0usize; 4];
            let mut w = 0;
            for (i, &p) in tuple.iter().enumerate() {
                if i != slot {
                    face[w] = p;
                    w += 1;
                }
            }
            let fi = table.face_index(&face).expect("face in table");
            let (root, _, _) = table.resolve(fi);
            referenced.push(root);
        }
    }
    referenced.sort_unstable();
    referenced.dedup();
    let line_of_root: HashMap<usize, usize> = referenced
        .iter()
        .enumerate()
        .map(|(line, &root)| (root, line))
        .collect();

    let orbits: Vec<OrbitLine> = referenced
        .iter()
        .map(|&root| {
            let face = table.faces()[root];
            let rep: [BoundaryPoint; 4] = std::array::from_fn(|i| points[face[i]].clone());
            let (_, _, zero) = table.resolve(root);
            OrbitLine {
                rep,
                class: if zero {
                    OrbitClass::Zero
                } else {
                    OrbitClass::Free
                },
            }
        })
        .collect();

    let incidence: Vec<[FaceEntry; 5]> = tuples
        .iter()
        .map(|tuple| {
            std::array::from_fn(|slot| {
                let mut face = [0usize; 4];
                let mut w = 0;
                for (i, &p) in tuple.iter().enumerate() {
                    if i != slot {
                        face[w] = p;
                        w += 1;
                    }
                }
                let fi = table.face_index(&face).expect("face in table");
                let (root, sign, _) = table.resolve(fi);
                let delta_sign = if slot % 2 == 0 { 1i8 } else { -1i8 };
                FaceEntry {
                    line: line_of_root[&root],
                    sign: delta_sign * sign,
                }
            })
        })
        .collect();

    let tuple_points: Vec<[BoundaryPoint; 5]> = tuples
        .iter()
        .map(|t| std::array::from_fn(|i| points[t[i]].clone()))
        .collect();

    Certificate {
        model,
        tuples: tuple_points,
        lambda,
        cvalues,
        bound,
        orbits,
        incidence,
    }
}

/// Evaluates Σλᵢ·δb(tᵢ) for a concrete assignment of rational values to
/// the free orbit roots (forced-zero orbits read 0). Soundness demands an
/// exactly zero result for every assignment.
pub fn weighted_delta_sum(
    tuples: &[[usize; 5]],
    lambda: &[Rational],
    table: &FaceOrbitTable,
    assignment: &HashMap<usize, Rational>,
) -> Rational {
    let mut acc = Rational::zero();
    for (tuple, l) in tuples.iter().zip(lambda) {
        for (root, coeff) in delta_expansion(tuple, table) {
            let value = assignment
                .get(&root)
                .cloned()
                .unwrap_or_else(Rational::zero);
            acc += l * Rational::from_integer(coeff.into()) * value;
        }
    }
    acc
}
