//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary so
//! the lines are always printed. Exits non-zero if any criterion fails,
//! except for failures that are explained by a documented deviation.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use jacring_core::coupling::{
    cover_family_length, coupling_length, coupling_profile, eigenspace_coupling_length,
    family_length, tangent_subspace_full, theorem65_closed_form, theorem65_table, BaseKind,
};
use jacring_core::hodge::{
    eigen_hodge, eigen_sum_check, first_bundle_rank_chain, hodge_diamond, prop64_check,
    primitive_hodge,
};
use jacring_core::{DegreeSubspace, GradedQuotientRing, QRing, Rationals};

use common::{fermat_dim, hilbert_series};

struct Outcome {
    pass: bool,
    detail: String,
    /// Set when the only failures are instances where the stated property is
    /// itself false; the reason is printed with the FAIL line.
    deviation: Option<&'static str>,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
        deviation: None,
    }
}

const CUBIC_GROWTH: &str = "for d = 3, n = 2 the dimensions are 1, 3, 3, 1, so dim R_1 = dim R_2 = 3; \
    the step from R_{d-2} to R_{d-1} is binom(n+d-2, n-1) - (n+1), which is 0 here";

fn fermat(d: usize, nvars: usize) -> QRing {
    GradedQuotientRing::fermat(d, nvars, Rationals).expect("fermat ring")
}

fn criterion_1() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (d, n) in [(4, 3), (5, 3), (5, 4), (6, 4), (8, 4)] {
        let start = Instant::now();
        let table = theorem65_table(d, n, BaseKind::Fermat, Rationals).expect("table");
        let elapsed = start.elapsed();
        let expected: Vec<usize> = (1..n).map(|l| theorem65_closed_form(d, n, l)).collect();
        let got: Vec<usize> = table.rows.iter().map(|r| r.computed).collect();
        let ok = table.all_match() && got == expected && elapsed < Duration::from_secs(300);
        pass &= ok;
        parts.push(format!("({d},{n}) {got:?} in {:.2}s", elapsed.as_secs_f64()));
    }
    // Explicit tables for (5,4) and (8,4).
    let t54 = theorem65_table(5, 4, BaseKind::Fermat, Rationals).unwrap();
    let t84 = theorem65_table(8, 4, BaseKind::Fermat, Rationals).unwrap();
    pass &= t54.as_map().into_values().collect::<Vec<_>>() == vec![2, 1, 1];
    pass &= t84.as_map().into_values().collect::<Vec<_>>() == vec![3, 2, 1];
    outcome(pass, parts.join("; "))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let base = fermat(5, 2);
    let got: Vec<Vec<usize>> = (1..5).map(|i| eigen_hodge(&base, i).unwrap().h).collect();
    let elapsed = start.elapsed();
    let expected = vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]];
    outcome(
        got == expected && elapsed < Duration::from_secs(1),
        format!("{got:?} in {:.3}s", elapsed.as_secs_f64()),
    )
}

fn criterion_3() -> Outcome {
    // (d, nvars, expected primitive vector)
    let quintic = primitive_hodge(&fermat(5, 5)).unwrap().h;
    let quartic = hodge_diamond(&fermat(4, 4)).unwrap().middle().h;
    let curve = primitive_hodge(&fermat(4, 3)).unwrap().h;

    // The same numbers from the capped-enumeration oracle alone.
    let oracle_primitive = |d: usize, nvars: usize| -> Vec<usize> {
        let n = nvars as i64 - 1;
        (0..n)
            .map(|p| fermat_dim(d, nvars, (p + 1) * d as i64 - n - 1))
            .collect()
    };
    let oracle_quintic = oracle_primitive(5, 5);
    let mut oracle_quartic = oracle_primitive(4, 4);
    oracle_quartic[1] += 1;
    let oracle_curve = oracle_primitive(4, 3);

    let pass = quintic == vec![1, 101, 101, 1]
        && quartic == vec![1, 20, 1]
        && curve == vec![3, 3]
        && oracle_quintic == quintic
        && oracle_quartic == quartic
        && oracle_curve == curve;
    outcome(
        pass,
        format!(
            "quintic {quintic:?} (oracle {oracle_quintic:?}), quartic surface {quartic:?} \
             (oracle {oracle_quartic:?}), quartic curve {curve:?} (oracle {oracle_curve:?})"
        ),
    )
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for (d, nvars) in [(4, 3), (5, 5), (3, 3)] {
        let r = family_length(&fermat(d, nvars)).unwrap();
        let expected = nvars - 2;
        pass &= r.length == expected && r.hypothesis_holds;
        parts.push(format!("family({d},{nvars})={}", r.length));
    }
    // (d, base nvars, expected): n - 1 for n+1 < d < 2(n+1), n for d >= 2(n+1).
    for (d, nvars, expected) in [(6, 5, 3), (8, 4, 3), (4, 2, 1)] {
        let r = cover_family_length(&fermat(d, nvars)).unwrap();
        pass &= r.length == expected && r.hypothesis_holds;
        parts.push(format!("cover({d},{nvars})={}", r.length));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(600);
    parts.push(format!("{:.2}s", elapsed.as_secs_f64()));
    outcome(pass, parts.join(", "))
}

fn criterion_5() -> Outcome {
    let ring = fermat(6, 5);
    let v = tangent_subspace_full(&ring);
    let sigma = ring.socle_degree();
    let mut cube_nonzero = Vec::new();
    let mut fourth_nonzero = Vec::new();
    for mu in 0..=sigma {
        let mut w = DegreeSubspace::full(&ring, mu);
        for k in 1..=4 {
            w = v.product(&w).unwrap();
            if k == 3 && !w.is_zero() {
                cube_nonzero.push(mu);
            }
            if k == 4 && !w.is_zero() {
                fourth_nonzero.push(mu);
            }
        }
    }
    let profile = coupling_profile(&ring, &v).unwrap();
    let plateau: Vec<usize> = (0..=sigma).filter(|&mu| profile.lengths[mu] == 3).collect();
    let pass = cube_nonzero == vec![0, 1, 2] && fourth_nonzero.is_empty() && plateau == vec![0, 1, 2];
    outcome(
        pass,
        format!("S^3 nonzero at mu in {cube_nonzero:?}; S^4 nonzero at {fourth_nonzero:?}"),
    )
}

/// Runs every property check on one ring; returns the names of failed checks.
fn property_suite(ring: &QRing) -> Vec<String> {
    let d = ring.degree();
    let nvars = ring.nvars();
    let sigma = ring.socle_degree();
    let dims = ring.hilbert_function();
    let mut failed = Vec::new();
    let mut check = |name: String, ok: bool| {
        if !ok {
            failed.push(name);
        }
    };

    let series: Vec<usize> = hilbert_series(d, nvars).into_iter().map(|c| c as usize).collect();
    check(format!("hilbert {dims:?}"), dims == series);
    check(
        "artinian past the socle".into(),
        ring.smoothness_certificate() && ring.dim(sigma as i64 + 1) == 0,
    );
    check(
        "gorenstein symmetry".into(),
        (0..=sigma).all(|mu| dims[mu] == dims[sigma - mu]),
    );
    let bad_pairing: Vec<usize> = (0..=sigma)
        .filter(|&mu| ring.macaulay_pairing_rank(mu as i64).unwrap() != dims[mu])
        .collect();
    check(format!("pairing rank at {bad_pairing:?}"), bad_pairing.is_empty());
    let growth: Vec<usize> = (0..d).map(|mu| ring.dim(mu as i64)).collect();
    check(
        format!("strict growth on [1, d-1]: dims {:?}", &growth[1..]),
        growth[1..].windows(2).all(|w| w[0] < w[1]),
    );
    let mut bad_products = Vec::new();
    for mu in 0..=sigma {
        for nu in 0..=sigma - mu {
            if ring.product_span_rank(mu, nu) != dims[mu + nu] {
                bad_products.push((mu, nu));
            }
        }
    }
    check(format!("surjectivity at {bad_products:?}"), bad_products.is_empty());
    let ext = ring.root_extension().unwrap();
    let bad_tower: Vec<i64> = (0..=(sigma + d - 2) as i64)
        .filter(|&mu| ext.dim(mu) != (0..=d as i64 - 2).map(|e| ring.dim(mu - e)).sum::<usize>())
        .collect();
    check(format!("tower rule at {bad_tower:?}"), bad_tower.is_empty());
    check("eigen sum".into(), eigen_sum_check(ring).unwrap());
    for mu in [d as i64 - 1, sigma as i64, (sigma + d - 1) as i64] {
        let k = ring.koszul_cohomology_dims(mu, nvars);
        check(
            format!("koszul at mu={mu}: {:?}", k.dims),
            (1..=nvars).all(|r| k.at_spot(r) == 0) && k.at_spot(0) == ring.dim(mu),
        );
    }
    failed
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let mut timings = Vec::new();
    for (d, nvars) in [(3, 3), (4, 3), (4, 4), (5, 3), (5, 4)] {
        for kind in ["fermat", "random"] {
            let start = Instant::now();
            let ring = match kind {
                "fermat" => fermat(d, nvars),
                _ => GradedQuotientRing::random_smooth(d, nvars, Rationals, 1, 64).unwrap(),
            };
            for f in property_suite(&ring) {
                failures.push(format!("{kind}({d},{nvars}) {f}"));
            }
            timings.push(format!("{kind}({d},{nvars}) {:.1}s", start.elapsed().as_secs_f64()));
        }
    }
    let documented = !failures.is_empty()
        && failures
            .iter()
            .all(|f| f.contains("(3,3) strict growth on [1, d-1]: dims [3, 3]"));
    let mut out = outcome(
        failures.is_empty(),
        format!("failures {failures:?}; {}", timings.join(", ")),
    );
    if documented {
        out.deviation = Some(CUBIC_GROWTH);
    }
    out
}

fn criterion_7() -> Outcome {
    let even = prop64_check(5, 2, Rationals).unwrap();
    let odd = prop64_check(4, 3, Rationals).unwrap();
    let pass = even.off_center_equal
        && (even.residual_w, even.residual_wprime) == (0, 0)
        && odd.off_center_equal;
    outcome(
        pass,
        format!(
            "(5,2) lhs {:?} rhs {:?} W={} W'={}; (4,3) lhs {:?} rhs {:?} W={} W'={}",
            even.lhs,
            even.rhs,
            even.residual_w,
            even.residual_wprime,
            odd.lhs,
            odd.rhs,
            odd.residual_w,
            odd.residual_wprime
        ),
    )
}

fn criterion_8() -> Outcome {
    let base = fermat(6, 5);
    let lengths: Vec<usize> = (1..6)
        .map(|i| eigenspace_coupling_length(&base, i).unwrap())
        .collect();
    let chain = first_bundle_rank_chain(&base).unwrap();
    let increasing = chain.windows(2).all(|w| w[0] < w[1]);
    let pass = lengths[0] == 3
        && lengths[4] == 3
        && lengths[1..4].iter().all(|&l| l < 3)
        && increasing;
    // The plateau in the family's own ring agrees with the eigenspace reading.
    let v = tangent_subspace_full(&base);
    let at_zero = coupling_length(&base, &v, 0).unwrap();
    outcome(
        pass && at_zero == 3,
        format!("lengths i=1..5 {lengths:?}; rank chain {chain:?}"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("tower length tables match the closed form", criterion_1),
        ("eigenspace ranks of the binary quintic cover", criterion_2),
        ("Hodge numbers of Fermat hypersurfaces", criterion_3),
        ("family and cover lengths", criterion_4),
        ("cubic and quartic powers on the sextic threefold", criterion_5),
        ("ring property suites", criterion_6),
        ("second cover Hodge decomposition", criterion_7),
        ("eigenspace lengths and rank chain for sextics", criterion_8),
    ];
    let mut failed = 0;
    let mut documented = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let status = if result.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {}: {status} — {name} [{:.2}s] {}",
            i + 1,
            start.elapsed().as_secs_f64(),
            result.detail
        );
        match (result.pass, result.deviation) {
            (true, _) => {}
            (false, Some(why)) => {
                documented += 1;
                println!("    documented deviation: {why}");
            }
            (false, None) => failed += 1,
        }
    }
    println!(
        "{} passed, {failed} failed, {documented} failed with a documented deviation",
        criteria.len() - failed - documented
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
