//! Rational polyhedral cones in double description, with exact arithmetic.
//!
//! The single geometry kernel is an incremental Motzkin-style double
//! description pass over a list of integer inequality covectors. Lineality is
//! tracked explicitly, so half-spaces and lower-dimensional cones are handled
//! exactly. Canonical form: primitive generators, lexicographically sorted,
//! duplicates removed; a cone with lineality lists +-basis vectors among its
//! generators, with the pointed part projected onto the standard orthogonal
//! complement of the lineality space.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::lattice::{bigint_to_json, json_to_bigint};
use crate::linalg::{self, IntMatrix, IntVector, RatMatrix};

pub const DEFAULT_DIM_GUARD: usize = 12;

/// Ambient-dimension guard for double-description runs; combinatorial blowup
/// makes large dimensions infeasible at desk scale. Overridden by the
/// `K3CONE_DIM_GUARD` environment variable.
pub fn dim_guard() -> usize {
    std::env::var("K3CONE_DIM_GUARD")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_DIM_GUARD)
}

fn check_guard(dim: usize) -> Result<()> {
    let guard = dim_guard();
    if dim > guard {
        return Err(Error::DimensionGuard { dim, guard });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Double description kernel
// ---------------------------------------------------------------------------

/// Raw output of the kernel: a lineality basis plus extreme rays of the
/// pointed quotient (representatives, not yet canonical).
struct DdOutput {
    lineality: Vec<IntVector>,
    rays: Vec<IntVector>,
}

/// Tight-inequality index set of a ray, as a bitset.
#[derive(Clone, PartialEq, Eq)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn empty(n: usize) -> Self {
        ZeroSet(vec![0; n.div_ceil(64).max(1)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersection(&self, other: &ZeroSet) -> ZeroSet {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset_of(&self, other: &ZeroSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

struct DdRay {
    vec: IntVector,
    zero: ZeroSet,
}

/// Extreme rays and lineality of `{x : a . x >= 0 for all a in ineqs}`.
fn dd_from_inequalities(dim: usize, ineqs: &[IntVector]) -> DdOutput {
    let n_ineq = ineqs.len();
    let mut lineality: Vec<IntVector> = linalg::identity(dim);
    let mut rays: Vec<DdRay> = Vec::new();

    for (idx, a) in ineqs.iter().enumerate() {
        let pivot = lineality.iter().position(|b| !linalg::dot(a, b).is_zero());
        if let Some(p) = pivot {
            // Reduce lineality along the pivot; the pivot half becomes a ray.
            let mut b = lineality.remove(p);
            if linalg::dot(a, &b).is_negative() {
                b = linalg::neg_vec(&b);
            }
            let ab = linalg::dot(a, &b);
            for other in lineality.iter_mut() {
                let t = linalg::dot(a, other);
                if !t.is_zero() {
                    let combined: IntVector = other
                        .iter()
                        .zip(&b)
                        .map(|(o, bi)| o * &ab - &t * bi)
                        .collect();
                    *other = linalg::primitive(&combined);
                }
            }
            for ray in rays.iter_mut() {
                let t = linalg::dot(a, &ray.vec);
                if !t.is_zero() {
                    let combined: IntVector = ray
                        .vec
                        .iter()
                        .zip(&b)
                        .map(|(r, bi)| r * &ab - &t * bi)
                        .collect();
                    ray.vec = linalg::primitive(&combined);
                }
                ray.zero.insert(idx);
            }
            // The pivot satisfies every earlier inequality with equality.
            let mut zero = ZeroSet::empty(n_ineq);
            for j in 0..idx {
                zero.insert(j);
            }
            rays.push(DdRay { vec: b, zero });
            continue;
        }

        // The inequality vanishes on the lineality space: Motzkin step.
        let mut plus: Vec<DdRay> = Vec::new();
        let mut zero_r: Vec<DdRay> = Vec::new();
        let mut minus: Vec<DdRay> = Vec::new();
        for ray in rays.drain(..) {
            let t = linalg::dot(a, &ray.vec);
            if t.is_zero() {
                let mut r = ray;
                r.zero.insert(idx);
                zero_r.push(r);
            } else if t.is_positive() {
                plus.push(ray);
            } else {
                minus.push(ray);
            }
        }
        let mut new_rays: Vec<DdRay> = Vec::new();
        for p in &plus {
            for m in &minus {
                let common = p.zero.intersection(&m.zero);
                let adjacent = plus
                    .iter()
                    .chain(minus.iter())
                    .chain(zero_r.iter())
                    .all(|other| {
                        std::ptr::eq(other, p)
                            || std::ptr::eq(other, m)
                            || !common.is_subset_of(&other.zero)
                    });
                if !adjacent {
                    continue;
                }
                let ap = linalg::dot(a, &p.vec);
                let am = linalg::dot(a, &m.vec);
                let combined: IntVector = m
                    .vec
                    .iter()
                    .zip(&p.vec)
                    .map(|(mi, pi)| mi * &ap - &am * pi)
                    .collect();
                let mut zero = common;
                zero.insert(idx);
                new_rays.push(DdRay {
                    vec: linalg::primitive(&combined),
                    zero,
                });
            }
        }
        rays = plus;
        rays.append(&mut zero_r);
        rays.append(&mut new_rays);
    }

    DdOutput {
        lineality,
        rays: rays.into_iter().map(|r| r.vec).collect(),
    }
}

/// Projects `v` onto the standard orthogonal complement of `span(basis)` and
/// reduces to a primitive integer vector.
fn project_off_span(v: &IntVector, basis: &[IntVector]) -> IntVector {
    if basis.is_empty() {
        return linalg::primitive(v);
    }
    let k = basis.len();
    let gram: RatMatrix = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| BigRational::from(linalg::dot(&basis[i], &basis[j])))
                .collect()
        })
        .collect();
    let rhs: Vec<BigRational> = basis
        .iter()
        .map(|b| BigRational::from(linalg::dot(b, v)))
        .collect();
    let coeffs = linalg::solve_rational(&gram, &rhs).expect("basis rows are independent");
    let projected: Vec<BigRational> = (0..v.len())
        .map(|i| {
            let mut x = BigRational::from(v[i].clone());
            for (c, b) in coeffs.iter().zip(basis) {
                x -= c * BigRational::from(b[i].clone());
            }
            x
        })
        .collect();
    linalg::primitive_from_rational(&projected)
}

/// Canonical generator list: projected extreme rays plus +-HNF lineality
/// basis, primitive, sorted, deduplicated.
fn canonical_generators(out: &DdOutput) -> Vec<IntVector> {
    let lin = linalg::hermite_normal_form(&out.lineality);
    let mut gens: BTreeSet<IntVector> = BTreeSet::new();
    for b in &lin {
        gens.insert(linalg::primitive(b));
        gens.insert(linalg::primitive(&linalg::neg_vec(b)));
    }
    for r in &out.rays {
        let p = project_off_span(r, &lin);
        if !linalg::is_zero_vec(&p) {
            gens.insert(p);
        }
    }
    gens.into_iter().collect()
}

// ---------------------------------------------------------------------------
// RationalCone
// ---------------------------------------------------------------------------

/// A rational polyhedral cone in canonical double description.
///
/// `rays` generate the cone; `facets` are inequality covectors with
/// `cone = {x : f . x >= 0 for all f in facets}`. Both lists are primitive,
/// lexicographically sorted and duplicate-free, and each is the canonical
/// generator description of the dual of the other, so cone equality is
/// componentwise equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalCone {
    ambient_dim: usize,
    rays: Vec<IntVector>,
    facets: Vec<IntVector>,
}

impl RationalCone {
    /// Builds the cone generated by `rays` (dual cone computation via double
    /// description, then a second pass back for canonical rays).
    pub fn from_rays(ambient_dim: usize, rays: Vec<IntVector>) -> Result<Self> {
        check_guard(ambient_dim)?;
        Self::check_vectors(ambient_dim, &rays)?;
        let facets = canonical_generators(&dd_from_inequalities(ambient_dim, &rays));
        let canon_rays = canonical_generators(&dd_from_inequalities(ambient_dim, &facets));
        Ok(RationalCone {
            ambient_dim,
            rays: canon_rays,
            facets,
        })
    }

    /// Builds `{x : f . x >= 0 for all f in facets}`.
    pub fn from_facets(ambient_dim: usize, facets: Vec<IntVector>) -> Result<Self> {
        check_guard(ambient_dim)?;
        for f in &facets {
            if f.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: f.len(),
                });
            }
        }
        let rays = canonical_generators(&dd_from_inequalities(ambient_dim, &facets));
        let canon_facets = canonical_generators(&dd_from_inequalities(ambient_dim, &rays));
        Ok(RationalCone {
            ambient_dim,
            rays,
            facets: canon_facets,
        })
    }

    fn check_vectors(dim: usize, vecs: &[IntVector]) -> Result<()> {
        for v in vecs {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
            if linalg::is_zero_vec(v) {
                return Err(Error::ZeroRay);
            }
        }
        Ok(())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn facets(&self) -> &[IntVector] {
        &self.facets
    }

    /// The dual cone; exact involution by construction.
    pub fn dual(&self) -> RationalCone {
        RationalCone {
            ambient_dim: self.ambient_dim,
            rays: self.facets.clone(),
            facets: self.rays.clone(),
        }
    }

    /// Dimension of the linear span of the cone.
    pub fn dim(&self) -> usize {
        linalg::rank(&self.rays)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Membership via the facet inequalities.
    pub fn contains(&self, x: &[BigInt]) -> Result<bool> {
        if x.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: x.len(),
            });
        }
        Ok(self.facets.iter().all(|f| !linalg::dot(f, x).is_negative()))
    }

    /// A relative interior point (the sum of all generators); zero for the
    /// trivial cone.
    pub fn relative_interior_point(&self) -> IntVector {
        let mut p = vec![BigInt::zero(); self.ambient_dim];
        for r in &self.rays {
            for (pi, ri) in p.iter_mut().zip(r) {
                *pi += ri;
            }
        }
        p
    }

    /// Image of the cone under an invertible integer matrix.
    pub fn act(&self, m: &IntMatrix) -> Result<RationalCone> {
        if m.len() != self.ambient_dim || m.iter().any(|r| r.len() != self.ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: m.len(),
            });
        }
        if linalg::determinant(m).is_zero() {
            return Err(Error::SingularMatrix);
        }
        let images: Vec<IntVector> = self.rays.iter().map(|r| linalg::mat_vec(m, r)).collect();
        RationalCone::from_rays(self.ambient_dim, images)
    }

    /// The cone `C /\ span(basis)` expressed in the coordinates of `basis`.
    pub fn intersect_with_subspace(&self, basis: &[IntVector]) -> Result<RationalCone> {
        let k = basis.len();
        for b in basis {
            if b.len() != self.ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: self.ambient_dim,
                    got: b.len(),
                });
            }
        }
        if linalg::rank(basis) != k {
            return Err(Error::DependentBasis);
        }
        let facets: Vec<IntVector> = self
            .facets
            .iter()
            .map(|f| basis.iter().map(|b| linalg::dot(f, b)).collect())
            .collect();
        RationalCone::from_facets(k, facets)
    }

    /// All faces of the given codimension (relative to the cone dimension).
    pub fn faces(&self, codim: usize) -> Result<Vec<ConeFace>> {
        let cone_dim = self.dim();
        if codim > cone_dim {
            return Err(Error::CodimTooLarge {
                codim,
                dim: cone_dim,
            });
        }
        let all = self.face_lattice();
        Ok(all
            .into_iter()
            .filter(|f| f.dim + codim == cone_dim)
            .collect())
    }

    /// Every face, via closure of facet intersections; faces are identified
    /// by their incident-ray sets.
    pub fn face_lattice(&self) -> Vec<ConeFace> {
        // tight[f] = set of ray indices on which facet f vanishes
        let tight: Vec<BTreeSet<usize>> = self
            .facets
            .iter()
            .map(|f| {
                self.rays
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| linalg::dot(f, r).is_zero())
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let top: BTreeSet<usize> = (0..self.rays.len()).collect();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut queue = vec![top];
        while let Some(face) = queue.pop() {
            if seen.contains(&face) {
                continue;
            }
            for t in &tight {
                let child: BTreeSet<usize> = face.intersection(t).cloned().collect();
                if child != face && !seen.contains(&child) {
                    queue.push(child);
                }
            }
            seen.insert(face);
        }
        seen.into_iter()
            .map(|incident| {
                let vecs: Vec<IntVector> = incident.iter().map(|&i| self.rays[i].clone()).collect();
                let dim = linalg::rank(&vecs);
                let active_facets: Vec<usize> = tight
                    .iter()
                    .enumerate()
                    .filter(|(_, t)| incident.is_subset(t))
                    .map(|(f, _)| f)
                    .collect();
                ConeFace {
                    incident_rays: incident.into_iter().collect(),
                    active_facets,
                    dim,
                }
            })
            .collect()
    }

    /// Face as a cone in the ambient space.
    pub fn face_cone(&self, face: &ConeFace) -> Result<RationalCone> {
        let rays: Vec<IntVector> = face
            .incident_rays
            .iter()
            .map(|&i| self.rays[i].clone())
            .collect();
        RationalCone::from_rays(self.ambient_dim, rays)
    }

    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        obj.insert(
            "ambient_dim".into(),
            Value::Number(serde_json::Number::from(self.ambient_dim as u64)),
        );
        obj.insert("rays".into(), vectors_to_json(&self.rays));
        obj.insert("facets".into(), vectors_to_json(&self.facets));
        Value::Object(obj)
    }

    /// Parses the interchange format `{ambient_dim, rays, facets?}`. When
    /// both descriptions are present their consistency is verified.
    pub fn from_value(value: &Value) -> Result<RationalCone> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("cone must be a JSON object".into()))?;
        let dim = obj
            .get("ambient_dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("cone needs a positive `ambient_dim`".into()))?
            as usize;
        let rays = obj.get("rays").map(json_to_vectors).transpose()?;
        let facets = obj.get("facets").map(json_to_vectors).transpose()?;
        match (rays, facets) {
            (Some(r), None) => RationalCone::from_rays(dim, r),
            (None, Some(f)) => RationalCone::from_facets(dim, f),
            (Some(r), Some(f)) => {
                let from_r = RationalCone::from_rays(dim, r)?;
                let from_f = RationalCone::from_facets(dim, f)?;
                if from_r != from_f {
                    return Err(Error::Parse(
                        "rays and facets describe different cones".into(),
                    ));
                }
                Ok(from_r)
            }
            (None, None) => Err(Error::Parse("cone needs `rays` or `facets`".into())),
        }
    }
}

/// A face of a cone, recorded by its active facet set; dimension is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeFace {
    pub incident_rays: Vec<usize>,
    pub active_facets: Vec<usize>,
    pub dim: usize,
}

pub fn vectors_to_json(vecs: &[IntVector]) -> Value {
    Value::Array(
        vecs.iter()
            .map(|v| Value::Array(v.iter().map(bigint_to_json).collect()))
            .collect(),
    )
}

pub fn json_to_vectors(value: &Value) -> Result<Vec<IntVector>> {
    value
        .as_array()
        .ok_or_else(|| Error::Parse("expected an array of integer vectors".into()))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Parse("expected an integer vector".into()))?
                .iter()
                .map(json_to_bigint)
                .collect()
        })
        .collect()
}

/// Spec operation: the dual of the cone generated by `rays`.
pub fn dual_cone(ambient_dim: usize, rays: Vec<IntVector>) -> Result<RationalCone> {
    RationalCone::from_rays(ambient_dim, rays).map(|c| c.dual())
}

/// Hermite-reduced integer basis of the common fixed subspace
/// `{x : m x = x}` of the given matrices.
pub fn fixed_subspace(generators: &[IntMatrix]) -> Result<Vec<IntVector>> {
    if generators.is_empty() {
        return Err(Error::EmptyInput("fixed_subspace generators"));
    }
    let n = generators[0].len();
    let mut stacked: Vec<IntVector> = Vec::new();
    for m in generators {
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: m.len(),
            });
        }
        for (i, row) in m.iter().enumerate() {
            let mut r = row.clone();
            r[i] -= 1;
            stacked.push(r);
        }
    }
    Ok(linalg::integer_kernel(&stacked))
}

// ---------------------------------------------------------------------------
// Orbits of cones under matrix groups
// ---------------------------------------------------------------------------

/// One orbit class restricted to the input set.
#[derive(Debug, Clone)]
pub struct OrbitClass {
    /// Indices into the input list, ascending.
    pub input_indices: Vec<usize>,
    /// True when the breadth-first closure of this class stabilised before
    /// the word budget ran out.
    pub complete: bool,
}

#[derive(Debug, Clone)]
pub struct OrbitPartition {
    pub classes: Vec<OrbitClass>,
    /// Total number of distinct cones discovered (inputs plus images).
    pub discovered: usize,
}

/// Breadth-first closure of the generator action on the input cones, up to
/// words of length `word_budget`. Cones are identified by canonical form.
/// Integral inverses of unimodular generators are applied as well, so for
/// integer matrix groups the closure is a genuine group orbit.
pub fn orbit_faces(
    inputs: &[RationalCone],
    generators: &[IntMatrix],
    word_budget: usize,
) -> Result<OrbitPartition> {
    if inputs.is_empty() {
        return Ok(OrbitPartition {
            classes: Vec::new(),
            discovered: 0,
        });
    }
    let dim = inputs[0].ambient_dim();
    for c in inputs {
        if c.ambient_dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: c.ambient_dim(),
            });
        }
    }
    let mut ops: Vec<IntMatrix> = Vec::new();
    for g in generators {
        if g.len() != dim || g.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: g.len(),
            });
        }
        if linalg::determinant(g).is_zero() {
            return Err(Error::SingularMatrix);
        }
        ops.push(g.clone());
        if let Some(inv) = integral_inverse(g) {
            if inv != *g {
                ops.push(inv);
            }
        }
    }

    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }

    // Union-find over discovered canonical cones.
    let mut index: HashMap<RationalCone, usize> = HashMap::new();
    let mut parent: Vec<usize> = Vec::new();
    let mut nodes: Vec<RationalCone> = Vec::new();
    let mut input_node: Vec<usize> = Vec::new();

    for c in inputs {
        let id = match index.get(c) {
            Some(&id) => id,
            None => {
                nodes.push(c.clone());
                parent.push(nodes.len() - 1);
                index.insert(c.clone(), nodes.len() - 1);
                nodes.len() - 1
            }
        };
        input_node.push(id);
    }

    let mut frontier: Vec<usize> = (0..nodes.len()).collect();
    let mut depth = 0;
    let mut unexpanded: Vec<usize> = Vec::new();
    loop {
        if frontier.is_empty() {
            break;
        }
        if depth == word_budget {
            unexpanded = frontier;
            break;
        }
        let mut next = Vec::new();
        for &i in &frontier {
            let cone = nodes[i].clone();
            for op in &ops {
                let image = cone.act(op)?;
                let id = match index.get(&image) {
                    Some(&id) => id,
                    None => {
                        nodes.push(image.clone());
                        parent.push(nodes.len() - 1);
                        index.insert(image, nodes.len() - 1);
                        next.push(nodes.len() - 1);
                        nodes.len() - 1
                    }
                };
                let (ra, rb) = (find(&mut parent, i), find(&mut parent, id));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        frontier = next;
        depth += 1;
    }

    let incomplete_roots: BTreeSet<usize> =
        unexpanded.iter().map(|&i| find(&mut parent, i)).collect();

    let mut class_of: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (input_idx, &node) in input_node.iter().enumerate() {
        let root = find(&mut parent, node);
        class_of.entry(root).or_default().push(input_idx);
    }
    let classes = class_of
        .into_iter()
        .map(|(root, input_indices)| OrbitClass {
            input_indices,
            complete: !incomplete_roots.contains(&root),
        })
        .collect();
    Ok(OrbitPartition {
        classes,
        discovered: nodes.len(),
    })
}

/// Integer inverse of a unimodular matrix, if it exists.
fn integral_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    let n = m.len();
    let det = linalg::determinant(m);
    if !det.is_one() && det != linalg::int(-1) {
        return None;
    }
    let a: RatMatrix = m
        .iter()
        .map(|row| row.iter().map(|x| BigRational::from(x.clone())).collect())
        .collect();
    let mut inv: IntMatrix = vec![vec![BigInt::zero(); n]; n];
    for j in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[j] = BigRational::from(linalg::int(1));
        let col = linalg::solve_rational(&a, &e).ok()?;
        for (i, x) in col.iter().enumerate() {
            if !x.is_integer() {
                return None;
            }
            inv[i][j] = x.to_integer();
        }
    }
    Some(inv)
}

// ---------------------------------------------------------------------------
// Chamber complexes
// ---------------------------------------------------------------------------

/// A finite list of full-dimensional chambers sharing a distinguished ray,
/// with declared wall adjacencies.
#[derive(Debug, Clone)]
pub struct ChamberComplex {
    pub shared_ray: IntVector,
    pub chambers: Vec<RationalCone>,
    pub adjacency: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Default)]
pub struct ComplexReport {
    /// Chambers that do not contain the shared ray.
    pub missing_shared_ray: Vec<usize>,
    /// Chamber pairs whose interiors overlap, with an interior witness point.
    pub interior_overlaps: Vec<(usize, usize, IntVector)>,
    /// Declared adjacencies that do not share a full common facet.
    pub bad_adjacencies: Vec<(usize, usize, String)>,
}

impl ComplexReport {
    pub fn passed(&self) -> bool {
        self.missing_shared_ray.is_empty()
            && self.interior_overlaps.is_empty()
            && self.bad_adjacencies.is_empty()
    }
}

impl ChamberComplex {
    pub fn from_value(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("chamber complex must be a JSON object".into()))?;
        let shared_ray: IntVector = obj
            .get("shared_ray")
            .ok_or_else(|| Error::Parse("missing `shared_ray`".into()))?
            .as_array()
            .ok_or_else(|| Error::Parse("`shared_ray` must be an integer vector".into()))?
            .iter()
            .map(json_to_bigint)
            .collect::<Result<_>>()?;
        let chambers: Vec<RationalCone> = obj
            .get("chambers")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing `chambers` array".into()))?
            .iter()
            .map(RationalCone::from_value)
            .collect::<Result<_>>()?;
        let adjacency: Vec<(usize, usize)> = obj
            .get("adjacency")
            .and_then(Value::as_array)
            .map(|arr| {
                arr.iter()
                    .map(|pair| {
                        let p = pair.as_array().filter(|p| p.len() == 2).ok_or_else(|| {
                            Error::Parse("adjacency entries must be pairs [i, j]".into())
                        })?;
                        let i = p[0]
                            .as_u64()
                            .ok_or_else(|| Error::Parse("adjacency index".into()))?;
                        let j = p[1]
                            .as_u64()
                            .ok_or_else(|| Error::Parse("adjacency index".into()))?;
                        Ok((i as usize, j as usize))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?
            .unwrap_or_default();
        Ok(ChamberComplex {
            shared_ray,
            chambers,
            adjacency,
        })
    }

    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        obj.insert(
            "shared_ray".into(),
            Value::Array(self.shared_ray.iter().map(bigint_to_json).collect()),
        );
        obj.insert(
            "chambers".into(),
            Value::Array(self.chambers.iter().map(|c| c.to_value()).collect()),
        );
        obj.insert(
            "adjacency".into(),
            Value::Array(
                self.adjacency
                    .iter()
                    .map(|(i, j)| {
                        Value::Array(vec![
                            Value::Number(serde_json::Number::from(*i as u64)),
                            Value::Number(serde_json::Number::from(*j as u64)),
                        ])
                    })
                    .collect(),
            ),
        );
        Value::Object(obj)
    }
}

/// Validates a chamber complex: shared-ray membership, pairwise interior
/// disjointness (exact), and declared adjacencies sharing a full common
/// facet.
pub fn validate_chamber_complex(complex: &ChamberComplex) -> Result<ComplexReport> {
    let mut report = ComplexReport::default();
    for (i, chamber) in complex.chambers.iter().enumerate() {
        if !chamber.contains(&complex.shared_ray)? {
            report.missing_shared_ray.push(i);
        }
    }
    let n = complex.chambers.len();
    for i in 0..n {
        for j in i + 1..n {
            let inter = intersection(&complex.chambers[i], &complex.chambers[j])?;
            if inter.is_full_dimensional() {
                report
                    .interior_overlaps
                    .push((i, j, inter.relative_interior_point()));
            }
        }
    }
    for &(i, j) in &complex.adjacency {
        if i >= n || j >= n {
            report
                .bad_adjacencies
                .push((i, j, "chamber index out of range".into()));
            continue;
        }
        let inter = intersection(&complex.chambers[i], &complex.chambers[j])?;
        let dim = complex.chambers[i].ambient_dim();
        if inter.dim() + 1 != dim {
            report.bad_adjacencies.push((
                i,
                j,
                format!(
                    "intersection has dimension {}, expected {}",
                    inter.dim(),
                    dim - 1
                ),
            ));
            continue;
        }
        let fi = facet_face_containing(&complex.chambers[i], &inter)?;
        let fj = facet_face_containing(&complex.chambers[j], &inter)?;
        match (fi, fj) {
            (Some(a), Some(b)) if a == inter && b == inter => {}
            _ => {
                report.bad_adjacencies.push((
                    i,
                    j,
                    "intersection is not a full common facet of both chambers".into(),
                ));
            }
        }
    }
    Ok(report)
}

fn intersection(a: &RationalCone, b: &RationalCone) -> Result<RationalCone> {
    let mut facets = a.facets().to_vec();
    facets.extend_from_slice(b.facets());
    RationalCone::from_facets(a.ambient_dim(), facets)
}

/// The codimension-1 face of `cone` containing `sub`, if any.
fn facet_face_containing(cone: &RationalCone, sub: &RationalCone) -> Result<Option<RationalCone>> {
    for face in cone.faces(1)? {
        let fc = cone.face_cone(&face)?;
        if sub.rays().iter().all(|r| fc.contains(r).unwrap_or(false)) {
            return Ok(Some(fc));
        }
    }
    Ok(None)
}
