//! Small combinatorics helpers shared by the sampler and the exact oracle.

/// C(n, k), saturating at `u128::MAX`.
///
/// Each intermediate step holds C(n, i), so the division is exact and the
/// result is correct whenever it fits.
pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Calls `visit` once per k-subset of `0..n`, in lexicographic order, reusing
/// one buffer so enumeration allocates nothing per subset.
pub(crate) fn for_each_combination(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    if k == 0 {
        visit(&[]);
        return;
    }
    let mut comb: Vec<usize> = (0..k).collect();
    loop {
        visit(&comb);
        // rightmost slot that can still move; comb[i] maxes out at i + n - k
        let Some(i) = (0..k).rfind(|&i| comb[i] < i + n - k) else {
            return;
        };
        comb[i] += 1;
        for j in i + 1..k {
            comb[j] = comb[j - 1] + 1;
        }
    }
}

/// All k-subsets of `0..n` in lexicographic order. Only for counts the caller
/// has already checked to be small.
pub(crate) fn enumerate_combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut all = Vec::new();
    for_each_combination(n, k, |comb| all.push(comb.to_vec()));
    all
}
