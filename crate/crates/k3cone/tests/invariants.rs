//! Randomized invariant checks across the lattice and cone modules, with
//! fixed seeds so failures reproduce.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use k3cone::cone::RationalCone;
use k3cone::lattice::{GramLattice, StandardLattice};
use k3cone::linalg::{self, int, int_vec, IntVector};

fn random_lattice(rng: &mut ChaCha8Rng) -> GramLattice {
    loop {
        let rank = rng.gen_range(1..=4usize);
        let mut gram = vec![vec![BigInt::from(0); rank]; rank];
        for i in 0..rank {
            for j in i..rank {
                let v = int(rng.gen_range(-4..=4i64));
                gram[i][j] = v.clone();
                gram[j][i] = v;
            }
        }
        if let Ok(lattice) = GramLattice::new(gram, None) {
            return lattice;
        }
    }
}

#[test]
fn signature_and_determinant_respect_direct_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..50 {
        let a = random_lattice(&mut rng);
        let b = random_lattice(&mut rng);
        let sum = GramLattice::direct_sum(&[a.clone(), b.clone()]).unwrap();
        let (sa, sb, ss) = (a.signature(), b.signature(), sum.signature());
        assert_eq!(ss.positive, sa.positive + sb.positive);
        assert_eq!(ss.negative, sa.negative + sb.negative);
        assert_eq!(ss.positive + ss.negative, sum.rank());
        assert_eq!(sum.determinant(), a.determinant() * b.determinant());
    }
}

/// Leading principal minors of a square integer matrix.
fn leading_minors(gram: &[IntVector]) -> Vec<BigInt> {
    (1..=gram.len())
        .map(|k| {
            let sub: Vec<IntVector> = gram[..k].iter().map(|row| row[..k].to_vec()).collect();
            linalg::determinant(&sub)
        })
        .collect()
}

#[test]
fn signature_agrees_with_jacobi_minor_signs() {
    // Independent oracle: when every leading principal minor is nonzero,
    // the negative inertia count equals the number of sign changes in the
    // sequence 1, d_1, ..., d_n of leading minors.
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    let mut checked = 0;
    while checked < 60 {
        let lattice = random_lattice(&mut rng);
        let minors = leading_minors(lattice.gram());
        if minors.iter().any(|m| *m == BigInt::from(0)) {
            continue;
        }
        let mut signs = vec![BigInt::from(1)];
        signs.extend(minors);
        let changes = signs
            .windows(2)
            .filter(|w| (w[0] > BigInt::from(0)) != (w[1] > BigInt::from(0)))
            .count();
        let sig = lattice.signature();
        assert_eq!(sig.negative, changes, "gram {:?}", lattice.gram());
        assert_eq!(sig.positive, lattice.rank() - changes);
        checked += 1;
    }
}

#[test]
fn inner_product_symmetry_and_isometry_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let lattice = GramLattice::direct_sum(&[
        GramLattice::standard(&StandardLattice::U).unwrap(),
        GramLattice::standard(&StandardLattice::Diag(int(-2))).unwrap(),
    ])
    .unwrap();
    let n = lattice.rank();
    // isometries: reflections in a few roots, compositions, and -identity
    let root = k3cone::roots::Root::new(&lattice, int_vec(&[1, -1, 0])).unwrap();
    let refl = k3cone::roots::reflection_matrix(&lattice, &root).unwrap();
    let neg: Vec<IntVector> = linalg::identity(n)
        .into_iter()
        .map(|row| row.into_iter().map(|x| -x).collect())
        .collect();
    let isometries = vec![linalg::identity(n), refl.matrix().clone(), neg];
    for _ in 0..200 {
        let x: IntVector = (0..n).map(|_| int(rng.gen_range(-6..=6))).collect();
        let y: IntVector = (0..n).map(|_| int(rng.gen_range(-6..=6))).collect();
        assert_eq!(
            lattice.inner(&x, &y).unwrap(),
            lattice.inner(&y, &x).unwrap()
        );
        for m in &isometries {
            assert!(lattice.is_isometry(m).unwrap());
            let mx = linalg::mat_vec(m, &x);
            let my = linalg::mat_vec(m, &y);
            assert_eq!(
                lattice.inner(&mx, &my).unwrap(),
                lattice.inner(&x, &y).unwrap()
            );
        }
    }
}

fn random_cone(rng: &mut ChaCha8Rng, dim: usize) -> RationalCone {
    loop {
        let k = rng.gen_range(1..=7usize);
        let rays: Vec<IntVector> = (0..k)
            .map(|_| (0..dim).map(|_| int(rng.gen_range(-3..=3))).collect())
            .filter(|r: &IntVector| !linalg::is_zero_vec(r))
            .collect();
        if rays.is_empty() {
            continue;
        }
        return RationalCone::from_rays(dim, rays).unwrap();
    }
}

#[test]
fn subspace_restriction_rays_map_back_into_cone() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let mut checked = 0;
    while checked < 40 {
        let dim = rng.gen_range(2..=4usize);
        let cone = random_cone(&mut rng, dim);
        let k = rng.gen_range(1..dim);
        let basis: Vec<IntVector> = (0..k)
            .map(|_| (0..dim).map(|_| int(rng.gen_range(-2..=2))).collect())
            .collect();
        if linalg::rank(&basis) != k {
            continue;
        }
        let restricted = cone.intersect_with_subspace(&basis).unwrap();
        for t in restricted.rays() {
            // map back to ambient coordinates
            let mut ambient = vec![BigInt::from(0); dim];
            for (c, b) in t.iter().zip(&basis) {
                for (a, bi) in ambient.iter_mut().zip(b) {
                    *a += c * bi;
                }
            }
            assert!(
                cone.contains(&ambient).unwrap(),
                "restricted ray {t:?} maps outside the cone"
            );
        }
        checked += 1;
    }
}

#[test]
fn action_is_compatible_with_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    let mut checked = 0;
    while checked < 40 {
        let dim = rng.gen_range(2..=4usize);
        let cone = random_cone(&mut rng, dim);
        let m: Vec<IntVector> = (0..dim)
            .map(|_| (0..dim).map(|_| int(rng.gen_range(-2..=2))).collect())
            .collect();
        let n: Vec<IntVector> = (0..dim)
            .map(|_| (0..dim).map(|_| int(rng.gen_range(-2..=2))).collect())
            .collect();
        if linalg::determinant(&m).sign() == num_bigint::Sign::NoSign
            || linalg::determinant(&n).sign() == num_bigint::Sign::NoSign
        {
            continue;
        }
        let mn = linalg::mat_mul(&m, &n);
        let lhs = cone.act(&mn).unwrap();
        let rhs = cone.act(&n).unwrap().act(&m).unwrap();
        assert_eq!(lhs, rhs);
        checked += 1;
    }
}

/// Independent extreme-ray oracle for pointed full-dimensional 3-cones:
/// each extreme ray is the intersection line of two facet planes, oriented
/// into the cone and satisfying every other facet.
fn brute_force_rays_dim3(facets: &[IntVector]) -> Vec<IntVector> {
    let mut rays: BTreeSet<IntVector> = BTreeSet::new();
    for i in 0..facets.len() {
        for j in i + 1..facets.len() {
            let kernel = linalg::integer_kernel(&vec![facets[i].clone(), facets[j].clone()]);
            if kernel.len() != 1 {
                continue;
            }
            for candidate in [kernel[0].clone(), linalg::neg_vec(&kernel[0])] {
                let valid = facets
                    .iter()
                    .all(|f| linalg::dot(f, &candidate) >= BigInt::from(0));
                if valid {
                    rays.insert(linalg::primitive(&candidate));
                }
            }
        }
    }
    rays.into_iter().collect()
}

#[test]
fn dim3_rays_match_facet_pair_intersections() {
    let mut rng = ChaCha8Rng::seed_from_u64(48);
    let mut checked = 0;
    while checked < 60 {
        let cone = random_cone(&mut rng, 3);
        if !cone.is_full_dimensional() {
            continue;
        }
        // pointed: no antipodal generator pairs
        if cone
            .rays()
            .iter()
            .any(|r| cone.rays().contains(&linalg::neg_vec(r)))
        {
            continue;
        }
        let brute = brute_force_rays_dim3(cone.facets());
        assert_eq!(cone.rays(), &brute[..], "facets {:?}", cone.facets());
        checked += 1;
    }
}

#[test]
fn vinberg_certificates_are_internally_sound_on_random_rank2() {
    use k3cone::roots::Root;
    use k3cone::vinberg::{finite_volume_check, run_vinberg, Verdict, VinbergBudget};
    let mut rng = ChaCha8Rng::seed_from_u64(49);
    let mut certified = 0usize;
    for _ in 0..40 {
        let a = 2 * rng.gen_range(1..=6i64);
        let b = -2 * rng.gen_range(1..=6i64);
        let lattice = GramLattice::direct_sum(&[
            GramLattice::standard(&StandardLattice::Diag(int(a))).unwrap(),
            GramLattice::standard(&StandardLattice::Diag(int(b))).unwrap(),
        ])
        .unwrap();
        let v0 = int_vec(&[1, 0]);
        let res = run_vinberg(&lattice, Some(&v0), &VinbergBudget::default()).unwrap();
        if res.verdict != Verdict::TwoReflective {
            continue;
        }
        certified += 1;
        // walls are roots, pairwise non-obtuse, on the v0 side
        for (i, w) in res.walls.iter().enumerate() {
            assert_eq!(lattice.norm(w).unwrap(), int(-2));
            assert!(lattice.inner(w, &v0).unwrap() >= int(0));
            for other in res.walls.iter().skip(i + 1) {
                assert!(lattice.inner(w, other).unwrap() >= int(0));
            }
        }
        // certified chamber rays lie in the chamber and in the closed
        // light cone
        let rays = res.chamber_rays.as_ref().unwrap();
        for r in rays {
            assert!(lattice.norm(r).unwrap() >= int(0));
            assert!(lattice.inner(r, &v0).unwrap() >= int(0));
            for w in &res.walls {
                assert!(lattice.inner(r, w).unwrap() >= int(0));
            }
        }
        // the certificate reproduces on the returned walls
        let roots: Vec<Root> = res
            .walls
            .iter()
            .map(|w| Root::new(&lattice, w.clone()).unwrap())
            .collect();
        assert!(finite_volume_check(&lattice, &roots, &v0).unwrap().passed);
    }
    assert!(certified >= 5, "only {certified} lattices certified");
}

/// Brute-force face enumeration over all facet subsets.
fn brute_force_face_counts(cone: &RationalCone) -> Vec<usize> {
    let facets = cone.facets();
    let rays = cone.rays();
    let mut incident_sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    let m = facets.len();
    assert!(m <= 20, "too many facets for subset enumeration");
    for mask in 0u32..(1 << m) {
        let incident: Vec<usize> = (0..rays.len())
            .filter(|&r| {
                (0..m).all(|f| {
                    mask & (1 << f) == 0 || linalg::dot(&facets[f], &rays[r]) == BigInt::from(0)
                })
            })
            .collect();
        incident_sets.insert(incident);
    }
    let mut counts = vec![0usize; cone.ambient_dim() + 1];
    for incident in incident_sets {
        let vecs: Vec<IntVector> = incident.iter().map(|&i| rays[i].clone()).collect();
        counts[linalg::rank(&vecs)] += 1;
    }
    counts
}

#[test]
fn face_lattice_matches_brute_force_subsets() {
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    let mut checked = 0;
    while checked < 10 {
        let cone = random_cone(&mut rng, 4);
        if cone.facets().len() > 16 || cone.dim() < 4 {
            continue;
        }
        // skip cones with lineality: extreme-ray faces are what we compare
        if cone
            .rays()
            .iter()
            .any(|r| cone.rays().contains(&r.iter().map(|x| -x).collect()))
        {
            continue;
        }
        let brute = brute_force_face_counts(&cone);
        let mut ours = vec![0usize; cone.ambient_dim() + 1];
        for face in cone.face_lattice() {
            ours[face.dim] += 1;
        }
        assert_eq!(ours, brute, "face counts for {cone:?}");
        // signed Euler sum over the face lattice of a pointed cone vanishes
        let signed: i64 = ours
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum();
        assert_eq!(signed, 0, "Euler consistency for {cone:?}");
        checked += 1;
    }
}
