mod common;

use jacring_core::coupling::{
    build_tower, coupling_length, coupling_profile, cover_family_length,
    eigenspace_coupling_length, family_length, tangent_subspace_full, theorem65_closed_form,
    theorem65_table, BaseKind, TowerSpec,
};
use jacring_core::{DegreeSubspace, Field, GradedQuotientRing, PrimeField, Rationals};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::fermat_coupling_length;

fn fp() -> PrimeField {
    PrimeField::default()
}

fn random_ring(d: usize, nvars: usize, seed: u64) -> GradedQuotientRing<PrimeField> {
    GradedQuotientRing::random_smooth(d, nvars, fp(), seed, 64).unwrap()
}

/// `k` random combinations of the basis of `v`.
fn random_subspace(v: &DegreeSubspace<PrimeField>, k: usize, rng: &mut ChaCha8Rng) -> DegreeSubspace<PrimeField> {
    let f = v.ring().field().clone();
    let dim = v.ring().dim(v.degree() as i64);
    let vectors: Vec<Vec<u64>> = (0..k)
        .map(|_| {
            let mut out = vec![0u64; dim];
            for b in v.basis() {
                let c = rng.gen_range(0..50u64);
                for (o, x) in out.iter_mut().zip(b) {
                    f.mul_add_assign(o, &c, x);
                }
            }
            out
        })
        .collect();
    DegreeSubspace::span(v.ring(), v.degree(), &vectors).unwrap()
}

/// Carries a subspace of the base's `R_d` into a one-level extension.
fn lift<K: Field>(v: &DegreeSubspace<K>, top: &GradedQuotientRing<K>) -> DegreeSubspace<K> {
    let f = top.field().clone();
    let d = v.degree();
    let images: Vec<Vec<K::Elem>> = v
        .ring()
        .degree_basis(d)
        .iter()
        .map(|m| top.monomial_class(&m.extend(0)).coords().to_vec())
        .collect();
    let vectors: Vec<Vec<K::Elem>> = v
        .basis()
        .iter()
        .map(|b| {
            let mut out = vec![f.zero(); top.dim(d as i64)];
            for (c, img) in b.iter().zip(&images) {
                for (o, x) in out.iter_mut().zip(img) {
                    f.mul_add_assign(o, c, x);
                }
            }
            out
        })
        .collect();
    DegreeSubspace::span(top, d, &vectors).unwrap()
}

fn profile_of<K: Field>(ring: &GradedQuotientRing<K>, v: &DegreeSubspace<K>) -> Vec<usize> {
    coupling_profile(ring, v).unwrap().lengths
}

/// Every unconditional profile law on one `(ring, V)` pair.
fn check_profile_laws<K: Field>(label: &str, ring: &GradedQuotientRing<K>, v: &DegreeSubspace<K>) {
    let p = profile_of(ring, v);
    let d = ring.degree();
    let n = ring.ambient_dim();
    let sigma = ring.socle_degree();
    assert_eq!(p.len(), sigma + 1, "{label}");
    assert_eq!(p[sigma], 0, "{label}: profile at the socle");
    assert!(p.iter().all(|&x| x <= n), "{label}: {p:?}");
    for mu in 0..sigma {
        assert!(p[mu] >= p[mu + 1], "{label}: not weakly decreasing at {mu}: {p:?}");
    }
    for mu in 0..=sigma.saturating_sub(d) {
        assert!(p[mu] <= p[mu + d] + 1, "{label}: step bound fails at {mu}: {p:?}");
    }
    // Constant on [0, sigma - s*d] for s = length at 0, by the pairing.
    let s = p[0];
    if s * d <= sigma {
        assert!(p[..=sigma - s * d].iter().all(|&x| x == s), "{label}: {p:?}");
    }
    if d >= n + 1 {
        let mu0 = d - n - 1;
        if n >= 1 && p[mu0] < n - 1 {
            let end = (2 * mu0).min(sigma);
            assert!(p[..=end].iter().all(|&x| x == s), "{label}: plateau {p:?}");
        }
    }
}

#[test]
fn fermat_profiles_match_combinatorial_oracle() {
    for (d, nvars) in [(3, 3), (4, 3), (4, 4), (5, 3), (5, 4), (6, 4), (5, 5)] {
        let ring = GradedQuotientRing::fermat(d, nvars, Rationals).unwrap();
        let p = profile_of(&ring, &tangent_subspace_full(&ring));
        let expected: Vec<usize> = (0..p.len())
            .map(|mu| fermat_coupling_length(d, nvars, nvars, mu as i64))
            .collect();
        assert_eq!(p, expected, "d={d} nvars={nvars}");
    }
}

#[test]
fn fermat_towers_match_oracle_and_closed_form() {
    for (d, n) in [(4, 3), (5, 3), (5, 4), (6, 4), (8, 4), (6, 5), (7, 5)] {
        for ell in 1..n {
            let spec = TowerSpec {
                d,
                base_nvars: n - ell + 1,
                levels: ell,
                base: BaseKind::Fermat,
            };
            let tower = build_tower(&spec, fp()).unwrap();
            let mu = (d - n - 1) as i64;
            let got = coupling_length(&tower.ring, &tower.v, mu).unwrap();
            assert_eq!(got, fermat_coupling_length(d, n + 1, n - ell + 1, mu), "d={d} n={n} ell={ell}");
            assert_eq!(got, theorem65_closed_form(d, n, ell), "d={d} n={n} ell={ell}");
        }
    }
}

#[test]
fn profile_laws_on_full_tangent_spaces() {
    for (d, nvars) in [(3, 3), (4, 3), (4, 4), (5, 3), (5, 4), (6, 3)] {
        let ring = GradedQuotientRing::fermat(d, nvars, Rationals).unwrap();
        check_profile_laws(&format!("fermat {d},{nvars}"), &ring, &tangent_subspace_full(&ring));
        for seed in [1, 2] {
            let ring = random_ring(d, nvars, seed);
            check_profile_laws(
                &format!("random {d},{nvars} seed {seed}"),
                &ring,
                &tangent_subspace_full(&ring),
            );
        }
    }
}

#[test]
fn profile_laws_on_tower_subspaces() {
    for (d, n) in [(4, 3), (5, 3), (5, 4), (6, 4)] {
        for ell in 1..n {
            for base in [BaseKind::Fermat, BaseKind::Random { seed: 3 }] {
                let spec = TowerSpec {
                    d,
                    base_nvars: n - ell + 1,
                    levels: ell,
                    base: base.clone(),
                };
                let tower = build_tower(&spec, fp()).unwrap();
                check_profile_laws(
                    &format!("{} tower d={d} n={n} ell={ell}", base.describe()),
                    &tower.ring,
                    &tower.v,
                );
            }
        }
    }
}

#[test]
fn restriction_never_lengthens() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (d, nvars, seed) in [(4, 3, 1), (5, 3, 2), (4, 4, 3), (6, 3, 4)] {
        let ring = random_ring(d, nvars, seed);
        let full = tangent_subspace_full(&ring);
        let p_full = profile_of(&ring, &full);
        for k in [1, 2, 4] {
            let v = random_subspace(&full, k, &mut rng);
            assert!(v.is_subspace_of(&full));
            let p_v = profile_of(&ring, &v);
            check_profile_laws(&format!("random sub {d},{nvars} k={k}"), &ring, &v);
            let w = random_subspace(&v, 1, &mut rng);
            assert!(w.is_subspace_of(&v));
            let p_w = profile_of(&ring, &w);
            for mu in 0..p_full.len() {
                assert!(p_w[mu] <= p_v[mu] && p_v[mu] <= p_full[mu], "d={d} nvars={nvars} k={k} mu={mu}");
            }
        }
    }
}

#[test]
fn zero_subspace_and_out_of_range_degrees() {
    let ring = random_ring(4, 3, 1);
    let zero = DegreeSubspace::zero(&ring, 4);
    assert!(profile_of(&ring, &zero).iter().all(|&x| x == 0));
    let full = tangent_subspace_full(&ring);
    let sigma = ring.socle_degree() as i64;
    assert_eq!(coupling_length(&ring, &full, sigma + 1).unwrap(), 0);
    assert_eq!(coupling_length(&ring, &full, -1).unwrap(), 0);
    let wrong_degree = DegreeSubspace::full(&ring, 3);
    assert!(coupling_length(&ring, &wrong_degree, 0).is_err());
}

fn check_y_grading<K: Field>(label: &str, base: &GradedQuotientRing<K>, v: &DegreeSubspace<K>) {
    let top = base.root_extension().unwrap();
    let v_top = lift(v, &top);
    assert_eq!(v_top.dim(), v.dim(), "{label}: lifting is injective");
    let d = base.degree() as i64;
    let top_profile = profile_of(&top, &v_top);
    for (mu, &got) in top_profile.iter().enumerate() {
        let expected = (0..=d - 2)
            .map(|e| coupling_length(base, v, mu as i64 - e).unwrap())
            .max()
            .unwrap();
        assert_eq!(got, expected, "{label}: mu={mu}");
    }
}

#[test]
fn y_grading_decomposition_on_one_level_towers() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (d, nvars) in [(3, 2), (4, 2), (4, 3), (5, 2), (5, 3), (6, 3)] {
        let fermat = GradedQuotientRing::fermat(d, nvars, fp()).unwrap();
        check_y_grading(&format!("fermat {d},{nvars}"), &fermat, &tangent_subspace_full(&fermat));
        let random = random_ring(d, nvars, 7);
        let full = tangent_subspace_full(&random);
        check_y_grading(&format!("random {d},{nvars}"), &random, &full);
        let sub = random_subspace(&full, 2, &mut rng);
        check_y_grading(&format!("random sub {d},{nvars}"), &random, &sub);
    }
    let q = GradedQuotientRing::random_smooth(4, 3, Rationals, 2, 64).unwrap();
    check_y_grading("rational random 4,3", &q, &tangent_subspace_full(&q));
}

#[test]
fn y_grading_decomposition_on_second_level() {
    for (d, nvars) in [(4, 2), (5, 2), (4, 3)] {
        let base = random_ring(d, nvars, 9);
        let mid = base.root_extension().unwrap();
        let v_mid = lift(&tangent_subspace_full(&base), &mid);
        check_y_grading(&format!("two levels {d},{nvars}"), &mid, &v_mid);
    }
}

#[test]
fn family_length_is_n_minus_one() {
    for (d, nvars) in [(3, 3), (4, 3), (4, 4), (5, 3), (5, 4), (6, 3), (6, 4), (5, 5)] {
        let n = nvars - 1;
        let fermat = GradedQuotientRing::fermat(d, nvars, Rationals).unwrap();
        let r = family_length(&fermat).unwrap();
        assert!(r.hypothesis_holds);
        assert_eq!(r.length, n - 1, "fermat d={d} nvars={nvars}");
        if nvars <= 4 {
            for seed in [1, 2] {
                let r = family_length(&random_ring(d, nvars, seed)).unwrap();
                assert_eq!(r.length, n - 1, "random d={d} nvars={nvars} seed={seed}");
            }
        }
    }
    let q = GradedQuotientRing::random_smooth(5, 3, Rationals, 4, 64).unwrap();
    assert_eq!(family_length(&q).unwrap().length, 1);
    let low = GradedQuotientRing::fermat(3, 4, Rationals).unwrap();
    assert!(!family_length(&low).unwrap().hypothesis_holds);
}

#[test]
fn cover_family_lengths_on_random_bases() {
    // (d, base nvars) -> value by the case split on d against n+1 and 2(n+1).
    for (d, nvars, expected) in [(4, 2, 1), (5, 3, 1), (6, 3, 2), (4, 3, 1)] {
        for seed in [1, 2] {
            let base = random_ring(d, nvars, seed);
            let r = cover_family_length(&base).unwrap();
            assert_eq!(r.length, expected, "d={d} nvars={nvars} seed={seed}");
        }
    }
}

#[test]
fn eigenspace_lengths_follow_the_index_split() {
    // For n+1 <= d < 2(n+1): full length n-1 exactly off the middle band.
    let cases: Vec<(GradedQuotientRing<PrimeField>, &str)> = vec![
        (GradedQuotientRing::fermat(6, 5, fp()).unwrap(), "fermat 6,5"),
        (random_ring(5, 4, 1), "random 5,4"),
        (random_ring(6, 4, 2), "random 6,4"),
        (random_ring(4, 3, 3), "random 4,3"),
    ];
    for (base, label) in cases {
        let d = base.degree();
        let n = base.ambient_dim();
        assert!(n + 1 <= d && d < 2 * (n + 1));
        for i in 1..d {
            let got = eigenspace_coupling_length(&base, i).unwrap();
            let outer = i <= d - n - 1 || i >= n + 1;
            if outer {
                assert_eq!(got, n - 1, "{label} i={i}");
            } else {
                assert!(got < n - 1, "{label} i={i}: {got}");
            }
        }
        assert!(eigenspace_coupling_length(&base, 0).is_err());
        assert!(eigenspace_coupling_length(&base, d).is_err());
    }
}

fn assert_invariant<K: Field>(d: usize, n: usize, field: K) {
    let fermat = theorem65_table(d, n, BaseKind::Fermat, field.clone()).unwrap();
    let random = theorem65_table(d, n, BaseKind::Random { seed: 1 }, field).unwrap();
    assert!(fermat.all_match(), "{fermat:?}");
    assert_eq!(random.as_map(), fermat.as_map(), "d={d} n={n}");
    assert_eq!(random.base, "random:1");
}

#[test]
fn tower_table_is_coordinate_invariant_rational() {
    assert_invariant(4, 3, Rationals);
    assert_invariant(5, 3, Rationals);
}

#[test]
fn tower_table_is_coordinate_invariant_prime() {
    for (d, n) in [(4, 3), (5, 3), (5, 4), (6, 4)] {
        assert_invariant(d, n, fp());
    }
}

#[test]
#[ignore = "about 40 s in release mode; exact arithmetic on a 5-variable random tower"]
fn tower_table_is_coordinate_invariant_rational_5_4() {
    assert_invariant(5, 4, Rationals);
}

#[test]
#[ignore = "about 4 minutes in release mode"]
fn tower_table_is_coordinate_invariant_prime_8_4() {
    assert_invariant(8, 4, fp());
}
