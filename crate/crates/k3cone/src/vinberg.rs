//! Vinberg-style chamber construction deciding 2-reflectivity of a
//! hyperbolic lattice.
//!
//! Roots are accepted level by level (level = pairing with the controlling
//! vector v0, priority level^2/2), each new wall being non-obtuse against all
//! previously accepted walls. At level 0 the roots orthogonal to v0 form a
//! finite root system in the negative definite slice; the walls chosen there
//! are the simple roots of the lexicographic ordering (of each +-pair only
//! the lex-positive root is a candidate, processed in ascending lex order).
//!
//! After each acceptance a finite-volume certificate is attempted: the
//! chamber cone cut out by the walls and the v0 half-space must be pointed,
//! full-dimensional, and generated by rays of nonnegative norm once the part
//! outside the light cone is trimmed (exact rank-2 crossing analysis; in
//! rank >= 3 a negative-norm extreme ray always refutes the certificate).
//! A passing certificate is sound: the reflection subgroup generated by the
//! accepted walls already has finite index in the isometry group, hence so
//! does the full Weyl group. Budget exhaustion is reported as NOT_DETECTED
//! and never as a negative answer.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::cone::{self, RationalCone};
use crate::error::{Error, Result};
use crate::lattice::GramLattice;
use crate::linalg::{self, IntVector};
use crate::roots::{NodeBudget, Root, SliceEnumerator};

/// Limits for a Vinberg run. All fields must be positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VinbergBudget {
    pub max_walls: usize,
    pub max_level: u64,
    pub max_candidates: u64,
}

impl Default for VinbergBudget {
    fn default() -> Self {
        VinbergBudget {
            max_walls: 64,
            max_level: 20,
            max_candidates: 1_000_000,
        }
    }
}

impl VinbergBudget {
    fn validate(&self) -> Result<()> {
        if self.max_walls == 0 {
            return Err(Error::ZeroBudget("max_walls"));
        }
        if self.max_level == 0 {
            return Err(Error::ZeroBudget("max_level"));
        }
        if self.max_candidates == 0 {
            return Err(Error::ZeroBudget("max_candidates"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    TwoReflective,
    NotDetected,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::TwoReflective => "TWO_REFLECTIVE",
            Verdict::NotDetected => "NOT_DETECTED",
        }
    }
}

/// Per-level log line of a run.
#[derive(Debug, Clone)]
pub struct LevelLog {
    pub level: BigInt,
    /// Search-tree nodes visited while enumerating this level.
    pub candidates_enumerated: u64,
    pub roots_found: usize,
    pub accepted: usize,
}

#[derive(Debug, Clone, Default)]
pub struct BudgetSpent {
    pub walls_accepted: usize,
    pub levels_processed: u64,
    pub candidates_enumerated: u64,
}

/// Transcript of accepted mirror roots plus a termination verdict.
#[derive(Debug, Clone)]
pub struct VinbergResult {
    pub verdict: Verdict,
    pub walls: Vec<IntVector>,
    /// Canonical rays of the certified chamber, present on TWO_REFLECTIVE.
    pub chamber_rays: Option<Vec<IntVector>>,
    pub transcript: Vec<LevelLog>,
    pub notes: Vec<String>,
    pub budget_spent: BudgetSpent,
    pub v0: IntVector,
    pub(crate) lattice_gram: Vec<IntVector>,
}

impl VinbergResult {
    /// Stable JSON form: verdict, walls, chamber rays, transcript, notes,
    /// the controlling vector, and budget counters.
    pub fn to_value(&self) -> serde_json::Value {
        use serde_json::{Map, Number, Value};
        let mut obj = Map::new();
        let mut spent = Map::new();
        spent.insert(
            "candidates_enumerated".into(),
            Value::Number(self.budget_spent.candidates_enumerated.into()),
        );
        spent.insert(
            "levels_processed".into(),
            Value::Number(self.budget_spent.levels_processed.into()),
        );
        spent.insert(
            "walls_accepted".into(),
            Value::Number(Number::from(self.budget_spent.walls_accepted as u64)),
        );
        obj.insert("budget_spent".into(), Value::Object(spent));
        obj.insert(
            "chamber_rays".into(),
            match &self.chamber_rays {
                Some(rays) => crate::cone::vectors_to_json(rays),
                None => Value::Null,
            },
        );
        obj.insert(
            "notes".into(),
            Value::Array(
                self.notes
                    .iter()
                    .map(|n| Value::String(n.clone()))
                    .collect(),
            ),
        );
        obj.insert(
            "transcript".into(),
            Value::Array(
                self.transcript
                    .iter()
                    .map(|log| {
                        let mut l = Map::new();
                        l.insert(
                            "accepted".into(),
                            Value::Number(Number::from(log.accepted as u64)),
                        );
                        l.insert(
                            "candidates".into(),
                            Value::Number(log.candidates_enumerated.into()),
                        );
                        l.insert("level".into(), crate::lattice::bigint_to_json(&log.level));
                        l.insert(
                            "roots_found".into(),
                            Value::Number(Number::from(log.roots_found as u64)),
                        );
                        Value::Object(l)
                    })
                    .collect(),
            ),
        );
        obj.insert(
            "v0".into(),
            Value::Array(self.v0.iter().map(crate::lattice::bigint_to_json).collect()),
        );
        obj.insert(
            "verdict".into(),
            Value::String(self.verdict.as_str().to_string()),
        );
        obj.insert("walls".into(), crate::cone::vectors_to_json(&self.walls));
        Value::Object(obj)
    }
}

/// Outcome of the finite-volume certificate on a wall set.
#[derive(Debug, Clone)]
pub struct VolumeCheck {
    pub passed: bool,
    /// Canonical generators of the certified chamber when the check passes.
    pub chamber_rays: Vec<IntVector>,
    /// Failure explanation with a witness generator where applicable.
    pub reason: Option<String>,
    pub witness: Option<IntVector>,
}

impl VolumeCheck {
    fn fail(reason: String, witness: Option<IntVector>) -> Self {
        VolumeCheck {
            passed: false,
            chamber_rays: Vec::new(),
            reason: Some(reason),
            witness,
        }
    }
}

/// Finite-volume certificate for the chamber
/// `C = {x : inner(x, wall) >= 0 for all walls} /\ {x : inner(x, v0) >= 0}`.
///
/// Passes iff `C` is pointed, full-dimensional, and its part inside the
/// closed light cone is a full-dimensional cone generated by rational rays
/// of nonnegative norm. Extreme rays of negative norm are admissible only in
/// rank 2, where the light-cone crossings on the unique 2-face are computed
/// exactly; an irrational crossing refutes the certificate.
pub fn finite_volume_check(
    lattice: &GramLattice,
    walls: &[Root],
    v0: &[BigInt],
) -> Result<VolumeCheck> {
    let n = lattice.rank();
    let mut covectors: Vec<IntVector> = Vec::with_capacity(walls.len() + 1);
    for w in walls {
        covectors.push(linalg::primitive(&lattice.covector(w.coords())?));
    }
    covectors.push(linalg::primitive(&lattice.covector(v0)?));
    let chamber = RationalCone::from_facets(n, covectors)?;

    // Pointedness: canonical generators of a cone with lineality come in
    // antipodal pairs.
    let rays = chamber.rays().to_vec();
    let line_pair = rays.iter().find(|r| rays.contains(&linalg::neg_vec(r)));
    if let Some(pair) = line_pair {
        let witness = rays
            .iter()
            .filter(|r| rays.contains(&linalg::neg_vec(r)))
            .find(|r| lattice.norm(r).map(|q| q.is_negative()).unwrap_or(false))
            .unwrap_or(pair);
        return Ok(VolumeCheck::fail(
            format!(
                "chamber is not pointed: it contains the full line through {:?} (norm {})",
                witness,
                lattice.norm(witness)?
            ),
            Some(witness.clone()),
        ));
    }
    if !chamber.is_full_dimensional() {
        return Ok(VolumeCheck::fail(
            format!(
                "chamber is degenerate: walls span a cone of dimension {} < {}",
                chamber.dim(),
                n
            ),
            None,
        ));
    }

    let mut kept: Vec<IntVector> = Vec::new();
    let mut negatives: Vec<IntVector> = Vec::new();
    for r in &rays {
        if lattice.norm(r)?.is_negative() {
            negatives.push(r.clone());
        } else {
            kept.push(r.clone());
        }
    }
    if negatives.is_empty() {
        return Ok(VolumeCheck {
            passed: true,
            chamber_rays: rays,
            reason: None,
            witness: None,
        });
    }
    if n >= 3 {
        let witness = negatives[0].clone();
        return Ok(VolumeCheck::fail(
            format!(
                "extreme ray {:?} has negative norm {}",
                witness,
                lattice.norm(&witness)?
            ),
            Some(witness),
        ));
    }

    // Rank 2: trim the chamber at its light-cone crossings.
    debug_assert_eq!(rays.len(), 2);
    let ra = &rays[0];
    let rb = &rays[1];
    let a = lattice.norm(ra)?;
    let b = lattice.inner(ra, rb)?;
    let c = lattice.norm(rb)?;
    // Null rays s*ra + t*rb solve a*u^2 + 2b*u + c = 0 with u = s/t >= 0,
    // plus the t = 0 direction (ra itself, covered by `kept`).
    let mut crossings: Vec<IntVector> = Vec::new();
    if a.is_zero() {
        // Linear: u = -c / 2b; b != 0 since ra, rb are independent in rank 2.
        let u_num = -&c;
        let u_den = linalg::int(2) * &b;
        if (u_num.sign() == u_den.sign() || u_num.is_zero()) && !u_den.is_zero() {
            crossings.push(combine(ra, rb, &u_num, &u_den));
        }
    } else {
        let disc = &b * &b - &a * &c;
        if disc.is_negative() {
            // No real crossing: the light cone misses the chamber interior.
        } else {
            let s = linalg::isqrt(&disc.abs());
            if &s * &s != disc {
                return Ok(VolumeCheck::fail(
                    format!(
                        "light-cone crossing is irrational (discriminant {} is not a perfect square)",
                        disc
                    ),
                    None,
                ));
            }
            for root_num in [-&b + &s, -&b - &s] {
                let u_num = root_num;
                let u_den = a.clone();
                if u_num.is_zero() || u_num.sign() == u_den.sign() {
                    crossings.push(combine(ra, rb, &u_num, &u_den));
                }
            }
        }
    }
    let mut gens = kept;
    gens.append(&mut crossings);
    gens.sort();
    gens.dedup();
    if gens.is_empty() {
        return Ok(VolumeCheck::fail(
            "chamber meets the closed light cone only at the origin".into(),
            None,
        ));
    }
    let trimmed = RationalCone::from_rays(n, gens)?;
    if !trimmed.is_full_dimensional() {
        return Ok(VolumeCheck::fail(
            "chamber collapses after trimming at the light cone".into(),
            None,
        ));
    }
    debug_assert!(trimmed
        .rays()
        .iter()
        .all(|r| !lattice.norm(r).unwrap().is_negative()));
    Ok(VolumeCheck {
        passed: true,
        chamber_rays: trimmed.rays().to_vec(),
        reason: None,
        witness: None,
    })
}

/// Integer ray `u_num * ra + u_den * rb` with the sign normalised so both
/// coefficients are nonnegative, reduced to primitive form.
fn combine(ra: &IntVector, rb: &IntVector, u_num: &BigInt, u_den: &BigInt) -> IntVector {
    let (s, t) = if u_den.is_negative() {
        (-u_num, -u_den)
    } else {
        (u_num.clone(), u_den.clone())
    };
    let v: IntVector = ra.iter().zip(rb).map(|(x, y)| &s * x + &t * y).collect();
    linalg::primitive(&v)
}

/// Deterministic search for a controlling vector: norms 2, 4, ..., 20 in
/// order, coordinates bounded by 3, trying supports of size 1, 2, then 3,
/// positions and values in ascending lexicographic order.
pub fn find_controlling_vector(lattice: &GramLattice) -> Result<IntVector> {
    let n = lattice.rank();
    for norm in (2..=20).step_by(2) {
        let target = linalg::int(norm);
        for support in 1..=3usize.min(n) {
            if let Some(v) = search_support(lattice, &target, support) {
                return Ok(v);
            }
        }
    }
    Err(Error::NoControllingVectorFound)
}

fn search_support(lattice: &GramLattice, target: &BigInt, support: usize) -> Option<IntVector> {
    let n = lattice.rank();
    let mut positions: Vec<usize> = (0..support).collect();
    loop {
        let mut values = vec![-3i64; support];
        loop {
            if values.iter().all(|&v| v != 0) {
                let mut x = vec![BigInt::zero(); n];
                for (p, &v) in positions.iter().zip(&values) {
                    x[*p] = linalg::int(v);
                }
                if lattice.norm(&x).ok()? == *target {
                    return Some(x);
                }
            }
            if !next_values(&mut values) {
                break;
            }
        }
        if !next_combination(&mut positions, n) {
            return None;
        }
    }
}

/// Odometer over `[-3, 3]^k` in ascending lexicographic order.
fn next_values(values: &mut [i64]) -> bool {
    for v in values.iter_mut().rev() {
        *v += 1;
        if *v <= 3 {
            return true;
        }
        *v = -3;
    }
    false
}

/// Next k-subset of `0..n` in ascending lexicographic order.
fn next_combination(positions: &mut [usize], n: usize) -> bool {
    let k = positions.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if positions[i] < n - k + i {
            positions[i] += 1;
            for j in i + 1..k {
                positions[j] = positions[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn is_lex_positive(v: &[BigInt]) -> bool {
    for x in v {
        if x.is_positive() {
            return true;
        }
        if x.is_negative() {
            return false;
        }
    }
    false
}

/// Runs the chamber construction. `v0` defaults to the deterministic search
/// of [`find_controlling_vector`].
pub fn run_vinberg(
    lattice: &GramLattice,
    v0: Option<&[BigInt]>,
    budget: &VinbergBudget,
) -> Result<VinbergResult> {
    budget.validate()?;
    let sig = lattice.signature();
    if !sig.is_hyperbolic() {
        return Err(Error::NotHyperbolic {
            pos: sig.positive,
            neg: sig.negative,
        });
    }
    let mut notes: Vec<String> = Vec::new();
    let v0: IntVector = match v0 {
        Some(v) => {
            let norm = lattice.norm(v)?;
            if !norm.is_positive() {
                return Err(Error::InvalidControllingVector(norm.to_string()));
            }
            v.to_vec()
        }
        None => {
            let found = find_controlling_vector(lattice)?;
            notes.push(format!(
                "controlling vector {:?} selected by the default norm-2..20 search",
                found
            ));
            found
        }
    };

    let enumerator = SliceEnumerator::new(lattice, &v0)?;
    let mut node_budget = NodeBudget::limited(budget.max_candidates);
    let mut walls: Vec<Root> = Vec::new();
    let mut transcript: Vec<LevelLog> = Vec::new();
    let mut spent = BudgetSpent::default();
    let guard = cone::dim_guard();
    let check_enabled = lattice.rank() <= guard;
    if !check_enabled {
        notes.push(format!(
            "finite-volume checks skipped: rank {} exceeds the dimension guard {}",
            lattice.rank(),
            guard
        ));
    }

    let result = |verdict: Verdict,
                  walls: &[Root],
                  chamber: Option<Vec<IntVector>>,
                  transcript: Vec<LevelLog>,
                  notes: Vec<String>,
                  spent: BudgetSpent| VinbergResult {
        verdict,
        walls: walls.iter().map(|w| w.coords().clone()).collect(),
        chamber_rays: chamber,
        transcript,
        notes,
        budget_spent: spent,
        v0: v0.clone(),
        lattice_gram: lattice.gram().clone(),
    };

    let step = enumerator.level_step().clone();
    let mut level = BigInt::zero();
    while level <= linalg::int(budget.max_level as i64) {
        if !level.is_zero() && !(&level % &step).is_zero() {
            level += 1;
            continue;
        }
        let used_before = node_budget.used;
        let slice = enumerator.roots_at_level(&level, &mut node_budget)?;
        spent.candidates_enumerated = node_budget.used;
        if !slice.complete {
            notes.push(format!(
                "candidate budget exhausted while enumerating level {level}"
            ));
            transcript.push(LevelLog {
                level,
                candidates_enumerated: node_budget.used - used_before,
                roots_found: slice.roots.len(),
                accepted: 0,
            });
            return Ok(result(
                Verdict::NotDetected,
                &walls,
                None,
                transcript,
                notes,
                spent,
            ));
        }
        let candidates: Vec<IntVector> = if level.is_zero() {
            slice
                .roots
                .iter()
                .filter(|v| is_lex_positive(v))
                .cloned()
                .collect()
        } else {
            slice.roots.clone()
        };
        let mut accepted_here = 0usize;
        for cand in candidates {
            let mut non_obtuse = true;
            for w in &walls {
                if lattice.inner(&cand, w.coords())?.is_negative() {
                    non_obtuse = false;
                    break;
                }
            }
            if !non_obtuse {
                continue;
            }
            if walls.len() == budget.max_walls {
                notes.push(format!(
                    "wall budget {} exhausted at level {level}",
                    budget.max_walls
                ));
                transcript.push(LevelLog {
                    level,
                    candidates_enumerated: node_budget.used - used_before,
                    roots_found: slice.roots.len(),
                    accepted: accepted_here,
                });
                return Ok(result(
                    Verdict::NotDetected,
                    &walls,
                    None,
                    transcript,
                    notes,
                    spent,
                ));
            }
            walls.push(Root::new(lattice, cand)?);
            accepted_here += 1;
            spent.walls_accepted = walls.len();
            if check_enabled {
                let check = finite_volume_check(lattice, &walls, &v0)?;
                if check.passed {
                    transcript.push(LevelLog {
                        level,
                        candidates_enumerated: node_budget.used - used_before,
                        roots_found: slice.roots.len(),
                        accepted: accepted_here,
                    });
                    return Ok(result(
                        Verdict::TwoReflective,
                        &walls,
                        Some(check.chamber_rays),
                        transcript,
                        notes,
                        spent,
                    ));
                }
            }
        }
        transcript.push(LevelLog {
            level: level.clone(),
            candidates_enumerated: node_budget.used - used_before,
            roots_found: slice.roots.len(),
            accepted: accepted_here,
        });
        spent.levels_processed += 1;
        // A full level with no acceptances can still certify (e.g. lattices
        // without any roots at all).
        if check_enabled && accepted_here == 0 {
            let check = finite_volume_check(lattice, &walls, &v0)?;
            if check.passed {
                return Ok(result(
                    Verdict::TwoReflective,
                    &walls,
                    Some(check.chamber_rays),
                    transcript,
                    notes,
                    spent,
                ));
            }
        }
        level += 1;
    }
    notes.push(format!("level budget {} exhausted", budget.max_level));
    Ok(result(
        Verdict::NotDetected,
        &walls,
        None,
        transcript,
        notes,
        spent,
    ))
}

/// Finiteness status derivable from a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinitenessStatus {
    Finite,
    NotCertified,
}

#[derive(Debug, Clone)]
pub struct FinitenessReport {
    pub status: FinitenessStatus,
    pub text: String,
}

/// Interprets a Vinberg verdict for the automorphism group of a K3 surface
/// with the given Picard lattice. Budget exhaustion never asserts
/// infiniteness.
pub fn aut_finiteness_report(
    lattice: &GramLattice,
    result: &VinbergResult,
) -> Result<FinitenessReport> {
    if result.lattice_gram != *lattice.gram() {
        return Err(Error::LatticeMismatch);
    }
    let name = lattice.label().unwrap_or("the lattice").to_string();
    Ok(match result.verdict {
        Verdict::TwoReflective => FinitenessReport {
            status: FinitenessStatus::Finite,
            text: format!(
                "{} is 2-reflective: Aut(S) is finite for every K3 surface S with Pic(S) = {} and trivial Galois action",
                name, name
            ),
        },
        Verdict::NotDetected => FinitenessReport {
            status: FinitenessStatus::NotCertified,
            text: format!(
                "finiteness not certified for {} at this budget; no conclusion about infiniteness is drawn",
                name
            ),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::StandardLattice;
    use crate::linalg::{int, int_vec};

    fn u() -> GramLattice {
        GramLattice::standard(&StandardLattice::U).unwrap()
    }

    fn u_plus_minus2() -> GramLattice {
        GramLattice::direct_sum(&[
            u(),
            GramLattice::standard(&StandardLattice::Diag(int(-2))).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn volume_check_u_examples() {
        let l = u();
        let v0 = int_vec(&[1, 1]);
        let wall = Root::new(&l, int_vec(&[1, -1])).unwrap();
        let check = finite_volume_check(&l, &[wall], &v0).unwrap();
        assert!(check.passed);
        assert_eq!(check.chamber_rays, vec![int_vec(&[0, 1]), int_vec(&[1, 1])]);

        let empty = finite_volume_check(&l, &[], &v0).unwrap();
        assert!(!empty.passed);
        let witness = empty.witness.unwrap();
        assert_eq!(l.norm(&witness).unwrap(), int(-2));
    }

    #[test]
    fn volume_check_rank_one() {
        let l = GramLattice::standard(&StandardLattice::Diag(int(2))).unwrap();
        let check = finite_volume_check(&l, &[], &int_vec(&[1])).unwrap();
        assert!(check.passed);
        assert_eq!(check.chamber_rays, vec![int_vec(&[1])]);
    }

    #[test]
    fn vinberg_on_u() {
        let l = u();
        let res = run_vinberg(&l, Some(&int_vec(&[1, 1])), &VinbergBudget::default()).unwrap();
        assert_eq!(res.verdict, Verdict::TwoReflective);
        assert_eq!(res.walls, vec![int_vec(&[1, -1])]);
        assert_eq!(
            res.chamber_rays.unwrap(),
            vec![int_vec(&[0, 1]), int_vec(&[1, 1])]
        );
    }

    #[test]
    fn vinberg_on_rank_one() {
        let l = GramLattice::standard(&StandardLattice::Diag(int(2))).unwrap();
        let res = run_vinberg(&l, Some(&int_vec(&[1])), &VinbergBudget::default()).unwrap();
        assert_eq!(res.verdict, Verdict::TwoReflective);
        assert!(res.walls.is_empty());
    }

    #[test]
    fn vinberg_on_u_plus_minus2() {
        // Hand-worked run: level 0 accepts (0,0,1) and (1,-1,0); level 1
        // accepts (0,1,-1); the chamber cone{(0,1,0),(1,1,0),(2,2,-1)} has
        // generators of norms 0, 2, 6 and certifies.
        let l = u_plus_minus2();
        let res = run_vinberg(&l, Some(&int_vec(&[1, 1, 0])), &VinbergBudget::default()).unwrap();
        assert_eq!(res.verdict, Verdict::TwoReflective);
        assert_eq!(
            res.walls,
            vec![
                int_vec(&[0, 0, 1]),
                int_vec(&[1, -1, 0]),
                int_vec(&[0, 1, -1])
            ]
        );
        assert_eq!(
            res.chamber_rays.unwrap(),
            vec![
                int_vec(&[0, 1, 0]),
                int_vec(&[1, 1, 0]),
                int_vec(&[2, 2, -1])
            ]
        );
    }

    #[test]
    fn walls_are_sound() {
        let l = u_plus_minus2();
        let res = run_vinberg(&l, Some(&int_vec(&[1, 1, 0])), &VinbergBudget::default()).unwrap();
        for w in &res.walls {
            assert_eq!(l.norm(w).unwrap(), int(-2));
            assert!(!l.inner(w, &res.v0).unwrap().is_negative());
        }
        for (i, a) in res.walls.iter().enumerate() {
            for b in res.walls.iter().skip(i + 1) {
                assert!(!l.inner(a, b).unwrap().is_negative());
            }
        }
        // re-running the certificate on the returned walls reproduces true
        let roots: Vec<Root> = res
            .walls
            .iter()
            .map(|w| Root::new(&l, w.clone()).unwrap())
            .collect();
        assert!(finite_volume_check(&l, &roots, &res.v0).unwrap().passed);
    }

    #[test]
    fn vinberg_on_2_minus2() {
        // Hand-worked: the level-0 wall (0,1) leaves the chamber
        // cone{(0,-1),(1,0)}; trimming the hyperideal ray (0,-1) at the
        // light-cone crossing (1,-1) certifies immediately.
        let l = GramLattice::direct_sum(&[
            GramLattice::standard(&StandardLattice::Diag(int(2))).unwrap(),
            GramLattice::standard(&StandardLattice::Diag(int(-2))).unwrap(),
        ])
        .unwrap();
        let res = run_vinberg(&l, Some(&int_vec(&[1, 0])), &VinbergBudget::default()).unwrap();
        assert_eq!(res.verdict, Verdict::TwoReflective);
        assert_eq!(res.walls, vec![int_vec(&[0, 1])]);
        assert_eq!(
            res.chamber_rays.unwrap(),
            vec![int_vec(&[1, -1]), int_vec(&[1, 0])]
        );
    }

    #[test]
    fn vinberg_on_4_minus2() {
        // Hand-worked: after the level-0 wall (0,1) the crossing is
        // irrational (discriminant 8), levels 4 and 8 yield the Pell-type
        // root (2,-3), and the chamber cone{(1,0),(3,-4)} has generator
        // norms 4 and 4.
        let l = GramLattice::direct_sum(&[
            GramLattice::standard(&StandardLattice::Diag(int(4))).unwrap(),
            GramLattice::standard(&StandardLattice::Diag(int(-2))).unwrap(),
        ])
        .unwrap();
        let res = run_vinberg(&l, Some(&int_vec(&[1, 0])), &VinbergBudget::default()).unwrap();
        assert_eq!(res.verdict, Verdict::TwoReflective);
        assert_eq!(res.walls, vec![int_vec(&[0, 1]), int_vec(&[2, -3])]);
        assert_eq!(
            res.chamber_rays.unwrap(),
            vec![int_vec(&[1, 0]), int_vec(&[3, -4])]
        );
    }

    #[test]
    fn vinberg_rootless_pell_lattice_not_detected() {
        // <2> + <-12> has no vectors of norm -2 at all (a^2 + 1 = 6b^2 has
        // no solutions mod 6) and no rational isotropic vector, so nothing
        // can certify; the run must exhaust its level budget.
        let l = GramLattice::direct_sum(&[
            GramLattice::standard(&StandardLattice::Diag(int(2))).unwrap(),
            GramLattice::standard(&StandardLattice::Diag(int(-12))).unwrap(),
        ])
        .unwrap();
        let res = run_vinberg(&l, Some(&int_vec(&[1, 0])), &VinbergBudget::default()).unwrap();
        assert_eq!(res.verdict, Verdict::NotDetected);
        assert!(res.walls.is_empty());
        assert!(res.transcript.iter().all(|log| log.roots_found == 0));
    }

    #[test]
    fn vinberg_on_u_plus_e8() {
        // The even hyperbolic rank-10 lattice: its fundamental chamber is a
        // simplex whose walls realise the rank-10 tree diagram (nine edges,
        // one branch node) built from the eight E8 simple roots, the U-root,
        // and the affine wall carrying the highest-root marks 2,3,4,6,5,4,3,2.
        let l = GramLattice::direct_sum(&[
            GramLattice::standard(&StandardLattice::U).unwrap(),
            GramLattice::standard(&StandardLattice::E8Minus).unwrap(),
        ])
        .unwrap();
        let mut v0 = vec![BigInt::from(0); 10];
        v0[0] = int(1);
        v0[1] = int(1);
        let res = run_vinberg(&l, Some(&v0), &VinbergBudget::default()).unwrap();
        assert_eq!(res.verdict, Verdict::TwoReflective);
        assert_eq!(res.walls.len(), 10);
        let affine = int_vec(&[0, 1, -2, -3, -4, -6, -5, -4, -3, -2]);
        assert!(res.walls.contains(&affine));

        // Structural oracle: pairwise pairings in {0, 1}, exactly nine
        // adjacent pairs forming a connected tree with one degree-3 node.
        let mut degrees = [0usize; 10];
        let mut edges = 0;
        for i in 0..10 {
            for j in i + 1..10 {
                let p = l.inner(&res.walls[i], &res.walls[j]).unwrap();
                assert!(p == int(0) || p == int(1), "pairing {p}");
                if p == int(1) {
                    degrees[i] += 1;
                    degrees[j] += 1;
                    edges += 1;
                }
            }
        }
        assert_eq!(edges, 9);
        assert_eq!(degrees.iter().filter(|&&d| d == 3).count(), 1);
        assert!(degrees.iter().all(|&d| (1..=3).contains(&d)));

        // The chamber is a simplex with a single ideal vertex.
        let rays = res.chamber_rays.unwrap();
        assert_eq!(rays.len(), 10);
        let null_rays = rays.iter().filter(|r| l.norm(r).unwrap() == int(0)).count();
        assert_eq!(null_rays, 1);
        assert!(rays.iter().all(|r| !l.norm(r).unwrap().is_negative()));
    }

    #[test]
    fn budget_monotonicity() {
        let l = u_plus_minus2();
        let small = VinbergBudget {
            max_walls: 8,
            max_level: 5,
            max_candidates: 10_000,
        };
        let big = VinbergBudget::default();
        let a = run_vinberg(&l, Some(&int_vec(&[1, 1, 0])), &small).unwrap();
        let b = run_vinberg(&l, Some(&int_vec(&[1, 1, 0])), &big).unwrap();
        assert_eq!(a.verdict, Verdict::TwoReflective);
        assert_eq!(a.walls, b.walls);
        assert_eq!(a.chamber_rays, b.chamber_rays);
    }

    #[test]
    fn zero_budget_rejected() {
        let l = u();
        let bad = VinbergBudget {
            max_walls: 0,
            ..Default::default()
        };
        assert!(matches!(
            run_vinberg(&l, Some(&int_vec(&[1, 1])), &bad),
            Err(Error::ZeroBudget(_))
        ));
    }

    #[test]
    fn controlling_vector_search() {
        let l = u();
        let v = find_controlling_vector(&l).unwrap();
        assert_eq!(l.norm(&v).unwrap(), int(2));
        let q = crate::lattice::GramLattice::from_blocks(
            &["DIAG(-4)", "U", "E8MINUS", "E8MINUS"]
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>(),
            None,
        )
        .unwrap();
        let v = find_controlling_vector(&q).unwrap();
        assert_eq!(q.norm(&v).unwrap(), int(2));
    }

    #[test]
    fn report_texts() {
        let l = u();
        let res = run_vinberg(&l, Some(&int_vec(&[1, 1])), &VinbergBudget::default()).unwrap();
        let report = aut_finiteness_report(&l, &res).unwrap();
        assert_eq!(report.status, FinitenessStatus::Finite);
        assert!(report.text.contains("finite"));

        let other = GramLattice::standard(&StandardLattice::Diag(int(2))).unwrap();
        assert!(matches!(
            aut_finiteness_report(&other, &res),
            Err(Error::LatticeMismatch)
        ));
    }
}
