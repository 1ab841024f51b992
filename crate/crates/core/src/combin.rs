//! Small combinatorics helpers: binomials, ranking of sorted index triples,
//! and k-subset enumeration.

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as usize
}

/// Colex rank of the sorted triple `i < j < k`.
#[inline]
pub fn triple_rank(i: usize, j: usize, k: usize) -> usize {
    debug_assert!(i < j && j < k);
    k * (k - 1) * (k - 2) / 6 + j * (j - 1) / 2 + i
}

/// Sorts three distinct indices and returns them with the permutation parity
/// (`true` when an odd number of swaps was needed).
#[inline]
pub fn sort3(mut a: usize, mut b: usize, mut c: usize) -> ([usize; 3], bool) {
    let mut odd = false;
    if a > b {
        std::mem::swap(&mut a, &mut b);
        odd = !odd;
    }
    if b > c {
        std::mem::swap(&mut b, &mut c);
        odd = !odd;
    }
    if a > b {
        std::mem::swap(&mut a, &mut b);
        odd = !odd;
    }
    ([a, b, c], odd)
}

/// All sorted triples `i < j < k < n` in colex-rank order.
pub fn triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(binomial(n, 3));
    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                out.push([i, j, k]);
            }
        }
    }
    out
}

/// Calls `f` on every sorted `k`-subset of `0..n` in lexicographic order.
pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
