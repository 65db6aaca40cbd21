//! Lexicographic multiset permutations with ranking support.

/// `(sum k_i)! / prod(k_i!)`, or `None` on `u128` overflow.
pub fn multinomial(counts: &[usize]) -> Option<u128> {
    let mut total: u128 = 1;
    let mut placed: u128 = 0;
    for &k in counts {
        // multiply by C(placed + k, k) one factor at a time; each partial
        // product is itself a binomial coefficient, so the division is exact
        for i in 1..=k as u128 {
            placed += 1;
            total = total.checked_mul(placed)? / i;
        }
    }
    Some(total)
}

/// Lexicographically next permutation in place; `false` once the last
/// permutation has been passed (the slice is then left sorted ascending).
pub fn next_permutation<T: Ord>(items: &mut [T]) -> bool {
    if items.len() < 2 {
        return false;
    }
    let Some(pivot) = (0..items.len() - 1)
        .rev()
        .find(|&i| items[i] < items[i + 1])
    else {
        items.reverse();
        return false;
    };
    let successor = (pivot + 1..items.len())
        .rev()
        .find(|&j| items[j] > items[pivot])
        .expect("a larger element exists right of the pivot");
    items.swap(pivot, successor);
    items[pivot + 1..].reverse();
    true
}

/// The permutation of rank `rank` (0-based, lexicographic) of the multiset
/// with `counts[v]` copies of value `v`.
pub fn unrank(counts: &[usize], mut rank: u128) -> Option<Vec<usize>> {
    let mut counts = counts.to_vec();
    let len: usize = counts.iter().sum();
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        let mut chosen = None;
        for v in 0..counts.len() {
            if counts[v] == 0 {
                continue;
            }
            counts[v] -= 1;
            let block = multinomial(&counts)?;
            if rank < block {
                chosen = Some(v);
                break;
            }
            rank -= block;
            counts[v] += 1;
        }
        out.push(chosen?);
    }
    (rank == 0).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(&[]), Some(1));
        assert_eq!(multinomial(&[2, 1, 1]), Some(12));
        assert_eq!(multinomial(&[1; 8]), Some(40320));
        assert_eq!(multinomial(&[4, 3, 2, 2, 2, 1, 1, 1]), Some(18_162_144_000));
        assert_eq!(multinomial(&[1; 40]), None);
    }

    #[test]
    fn next_permutation_walks_multiset() {
        let mut items = vec![0, 0, 1, 2];
        let mut seen = vec![items.clone()];
        while next_permutation(&mut items) {
            seen.push(items.clone());
        }
        assert_eq!(seen.len(), 12);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(items, vec![0, 0, 1, 2]);
    }

    #[test]
    fn unrank_matches_iteration() {
        let counts = [2, 1, 0, 2];
        let mut items = vec![0, 0, 1, 3, 3];
        let mut rank = 0u128;
        loop {
            assert_eq!(unrank(&counts, rank).unwrap(), items);
            rank += 1;
            if !next_permutation(&mut items) {
                break;
            }
        }
        assert_eq!(rank, 30);
        assert_eq!(unrank(&counts, 30), None);
    }
}
