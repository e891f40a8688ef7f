//! Small combinatorial helpers shared by the enumerators and design checks.

use alloc::vec::Vec;

/// Binomial coefficient as `u64`, saturating on overflow.
pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Table `c[n][k]` of binomial coefficients for `n <= max_n`.
pub(crate) fn binomial_table(max_n: usize) -> Vec<Vec<u64>> {
    let mut c = alloc::vec![alloc::vec![0u64; max_n + 1]; max_n + 1];
    for n in 0..=max_n {
        c[n][0] = 1;
        for k in 1..=n {
            c[n][k] = c[n - 1][k - 1].saturating_add(c[n - 1][k]);
        }
    }
    c
}

/// Colexicographic rank of a strictly increasing index list.
pub(crate) fn colex_rank(subset: &[usize], table: &[Vec<u64>]) -> usize {
    subset
        .iter()
        .enumerate()
        .map(|(j, &x)| table[x][j + 1] as usize)
        .sum()
}

/// Calls `f` for every `k`-subset of `items`, in lexicographic order of positions.
pub(crate) fn for_each_subset<T: Copy>(items: &[T], k: usize, mut f: impl FnMut(&[T])) {
    let n = items.len();
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf: Vec<T> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&buf);
        let mut j = k;
        while j > 0 && idx[j - 1] == n - k + j - 1 {
            j -= 1;
        }
        if j == 0 {
            return;
        }
        j -= 1;
        idx[j] += 1;
        for l in j + 1..k {
            idx[l] = idx[l - 1] + 1;
        }
        for l in j..k {
            buf[l] = items[idx[l]];
        }
    }
}

/// All compositions `(t_1, .., t_l)` of `t` with `0 <= t_i <= caps[i]`, in
/// lexicographic order.
pub(crate) fn compositions(t: usize, caps: &[usize]) -> Vec<Vec<usize>> {
    fn rec(rest: usize, caps: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if caps.is_empty() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let tail: usize = caps[1..].iter().sum();
        for v in 0..=caps[0].min(rest) {
            if rest - v > tail {
                continue;
            }
            cur.push(v);
            rec(rest - v, &caps[1..], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(t, caps, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_in_lex_order() {
        let mut seen = Vec::new();
        for_each_subset(&[1, 2, 3, 4], 2, |s| seen.push(s.to_vec()));
        assert_eq!(
            seen,
            alloc::vec![
                alloc::vec![1, 2],
                alloc::vec![1, 3],
                alloc::vec![1, 4],
                alloc::vec![2, 3],
                alloc::vec![2, 4],
                alloc::vec![3, 4]
            ]
        );
        let mut count = 0;
        for_each_subset(&[0u8; 8], 0, |_| count += 1);
        assert_eq!(count, 1);
        for_each_subset(&[0u8; 3], 4, |_| count += 1);
        assert_eq!(count, 1);
    }

    #[test]
    fn colex_is_a_bijection() {
        let table = binomial_table(10);
        let mut ranks = Vec::new();
        let items: Vec<usize> = (0..7).collect();
        for_each_subset(&items, 3, |s| ranks.push(colex_rank(s, &table)));
        ranks.sort();
        assert_eq!(ranks, (0..35).collect::<Vec<_>>());
    }

    #[test]
    fn compositions_respect_caps() {
        assert_eq!(compositions(2, &[1, 1, 2]).len(), 4);
        assert_eq!(compositions(3, &[1, 1]), Vec::<Vec<usize>>::new());
        assert_eq!(binomial(24, 5), 42504);
    }
}
