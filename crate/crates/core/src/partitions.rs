//! Set partitions as restricted growth strings.
//!
//! A restricted growth string `s` of length `n` has `s[0] = 0` and
//! `s[i] ≤ 1 + max(s[..i])`; these are in bijection with the partitions of
//! `{0, .., n-1}` (`i` and `j` share a block iff `s[i] = s[j]`).

/// Number of partitions of an `n`-set.
pub fn bell(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}

/// Calls `f` on every restricted growth string of length `n`, in
/// lexicographic order. Returns the number visited.
pub fn for_each_rgs(n: usize, mut f: impl FnMut(&[u8])) -> u64 {
    if n == 0 {
        f(&[]);
        return 1;
    }
    let mut s = vec![0u8; n];
    // max_prefix[i] = max(s[..=i])
    let mut max_prefix = vec![0u8; n];
    let mut count = 0;
    loop {
        f(&s);
        count += 1;
        // Find the rightmost position that can be incremented.
        let mut i = n - 1;
        loop {
            if i == 0 {
                return count;
            }
            if s[i] <= max_prefix[i - 1] {
                break;
            }
            i -= 1;
        }
        s[i] += 1;
        max_prefix[i] = max_prefix[i - 1].max(s[i]);
        for j in i + 1..n {
            s[j] = 0;
            max_prefix[j] = max_prefix[i];
        }
    }
}

/// Relabels a class assignment so that classes are numbered by first
/// occurrence.
pub fn canonical_rgs(labels: &[usize]) -> Vec<u8> {
    let mut map: Vec<(usize, u8)> = Vec::new();
    labels
        .iter()
        .map(|&l| match map.iter().find(|(k, _)| *k == l) {
            Some(&(_, v)) => v,
            None => {
                let v = map.len() as u8;
                map.push((l, v));
                v
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let expect = [1u128, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975];
        for (n, &b) in expect.iter().enumerate() {
            assert_eq!(bell(n), b);
        }
    }

    #[test]
    fn rgs_counts_match_bell() {
        for n in 0..=8 {
            assert_eq!(for_each_rgs(n, |_| {}) as u128, bell(n));
        }
    }

    #[test]
    fn rgs_are_valid_distinct_and_ordered() {
        let mut seen: Vec<Vec<u8>> = Vec::new();
        for_each_rgs(5, |s| {
            assert_eq!(s[0], 0);
            for i in 1..s.len() {
                assert!(s[i] <= s[..i].iter().max().unwrap() + 1);
            }
            seen.push(s.to_vec());
        });
        let mut sorted = seen.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, seen);
    }

    #[test]
    fn canonical_relabels_by_first_occurrence() {
        assert_eq!(canonical_rgs(&[7, 3, 7, 9]), vec![0, 1, 0, 2]);
    }
}
