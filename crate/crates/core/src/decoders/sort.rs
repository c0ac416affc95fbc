use std::cmp::Ordering;

/// Indices of the `min(list_size, pms.len())` smallest metrics, ascending.
///
/// Ties keep input order, i.e. `(parent path, candidate)` order when the
/// candidates are laid out path by path.
pub fn sort_select<M: PartialOrd>(pms: &[M], list_size: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pms.len()).collect();
    order.sort_by(|&a, &b| pms[a].partial_cmp(&pms[b]).unwrap_or(Ordering::Equal));
    order.truncate(list_size);
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let pms = [3.0, 1.0, 2.0, 5.0];
        let keep = sort_select(&pms, 2);
        assert_eq!(keep.iter().map(|&i| pms[i]).collect::<Vec<_>>(), vec![1.0, 2.0]);
        assert_eq!(sort_select(&[2, 2, 3], 2), vec![0, 1]);
        assert_eq!(sort_select(&[4, 1], 8), vec![1, 0]);
        assert!(sort_select::<i32>(&[], 2).is_empty());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn selection_is_stable_prefix_of_full_sort(pms in proptest::collection::vec(0i32..8, 1..17), list_size in 1usize..9) {
            let keep = sort_select(&pms, list_size);
            prop_assert_eq!(keep.len(), list_size.min(pms.len()));
            let mut full: Vec<(i32, usize)> = pms.iter().copied().zip(0..).collect();
            full.sort();
            let expected: Vec<usize> = full.iter().take(list_size).map(|&(_, i)| i).collect();
            prop_assert_eq!(keep, expected);
        }
    }
}
