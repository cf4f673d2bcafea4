//! Independent oracles. Nothing here calls into the library's enumeration or
//! elimination code.
#![allow(dead_code)]

/// Number of exponent vectors of total degree `mu` in `nvars` variables with
/// every entry at most `cap`, by brute-force enumeration.
pub fn capped_count(nvars: usize, mu: i64, cap: u32) -> usize {
    fn go(left_vars: usize, left_deg: i64, cap: u32) -> usize {
        if left_vars == 0 {
            return usize::from(left_deg == 0);
        }
        (0..=cap as i64)
            .filter(|&e| e <= left_deg)
            .map(|e| go(left_vars - 1, left_deg - e, cap))
            .sum()
    }
    if mu < 0 {
        return 0;
    }
    go(nvars, mu, cap)
}

/// All capped exponent vectors of degree `mu`, in no particular order.
pub fn capped_vectors(nvars: usize, mu: usize, cap: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn go(i: usize, left: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in 0..=cap.min(left as u32) {
            cur[i] = e;
            go(i + 1, left - e as usize, cap, cur, out);
        }
        cur[i] = 0;
    }
    go(0, mu, cap, &mut cur, &mut out);
    out
}

/// Dimension of the Fermat Jacobian ring in degree `mu`: exponents capped at
/// `d - 2`.
pub fn fermat_dim(d: usize, nvars: usize, mu: i64) -> usize {
    capped_count(nvars, mu, d as u32 - 2)
}

/// Coefficients of `((1 - t^{d-1}) / (1 - t))^nvars` by repeated polynomial
/// multiplication of `(1 - t^{d-1})` and division by `(1 - t)`.
pub fn hilbert_series(d: usize, nvars: usize) -> Vec<i64> {
    let top = nvars * (d - 1);
    let mut num = vec![0i64; top + 1];
    num[0] = 1;
    for _ in 0..nvars {
        for k in (d - 1..=top).rev() {
            num[k] -= num[k - (d - 1)];
        }
    }
    // Divide by (1 - t)^nvars: prefix sums nvars times.
    for _ in 0..nvars {
        for k in 1..=top {
            num[k] += num[k - 1];
        }
    }
    num.truncate(nvars * (d - 2) + 1);
    num
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Coupling length on the Fermat ring of degree `d` in `nvars` variables with
/// `V` spanned by the degree-`d` standard monomials in the first `v_vars`
/// variables. Products of standard monomials are standard or zero, so the
/// iterated spans are plain sets of capped exponent vectors.
pub fn fermat_coupling_length(d: usize, nvars: usize, v_vars: usize, mu: i64) -> usize {
    use std::collections::BTreeSet;
    let cap = d as u32 - 2;
    let sigma = nvars * (d - 2);
    if mu < 0 || mu as usize > sigma {
        return 0;
    }
    let v: Vec<Vec<u32>> = capped_vectors(v_vars, d, cap)
        .into_iter()
        .map(|mut e| {
            e.resize(nvars, 0);
            e
        })
        .collect();
    let mut w: BTreeSet<Vec<u32>> = capped_vectors(nvars, mu as usize, cap).into_iter().collect();
    if w.is_empty() || v.is_empty() {
        return 0;
    }
    let mut deg = mu as usize;
    let mut k = 0;
    while deg + d <= sigma {
        let next: BTreeSet<Vec<u32>> = w
            .iter()
            .flat_map(|a| v.iter().map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<u32>>()))
            .filter(|e| e.iter().all(|&x| x <= cap))
            .collect();
        if next.is_empty() {
            break;
        }
        w = next;
        deg += d;
        k += 1;
    }
    k
}
