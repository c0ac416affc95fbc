//! Bit-by-bit successive-cancellation list decoding.
//!
//! Each path keeps one LLR vector per tree level (level `s` has `2^s`
//! entries) and the completed left sub-codewords waiting for their right
//! siblings, indexed by bit position in the usual SCL schedule.

use super::arith::Arith;
use super::sort::sort_select;
use super::ListEntry;
use crate::code::PolarCode;
use crate::error::{invalid, Result};

#[derive(Clone)]
struct BitPath<A: Arith> {
    /// `alpha[s]` holds the `2^s` LLRs of the current node at level `s`.
    alpha: Vec<Vec<A::Llr>>,
    /// `left[s]` holds the last completed left child at level `s`.
    left: Vec<Vec<u8>>,
    pm: A::Metric,
    /// Scratch buffer; holds the codeword once the last bit is committed.
    codeword: Vec<u8>,
}

impl<A: Arith> BitPath<A> {
    fn new(arith: &A, log_len: usize) -> Self {
        Self {
            alpha: (0..log_len).map(|s| Vec::with_capacity(1 << s)).collect(),
            left: vec![Vec::new(); log_len],
            pm: arith.zero_metric(),
            codeword: Vec::new(),
        }
    }

    /// Overwrites `self` with `other`, reusing the allocated buffers.
    fn copy_from(&mut self, other: &Self) {
        self.alpha.clone_from(&other.alpha);
        self.left.clone_from(&other.left);
        self.codeword.clone_from(&other.codeword);
        self.pm = other.pm;
    }

    /// Computes the decision LLR of bit `i`.
    fn descend(&mut self, arith: &A, channel: &[A::Llr], i: usize) -> A::Llr {
        let log_len = self.alpha.len();
        if log_len == 0 {
            return channel[0];
        }
        let top = if i == 0 { log_len } else { i.trailing_zeros() as usize + 1 };
        for s in (1..=top).rev() {
            let (lower, upper) = self.alpha.split_at_mut(s);
            let parent: &[A::Llr] = if s == log_len { channel } else { &upper[0] };
            let half = parent.len() / 2;
            let out = &mut lower[s - 1];
            out.clear();
            if s == top && i != 0 {
                let left = &self.left[s - 1];
                out.extend((0..half).map(|j| arith.g(parent[j], parent[j + half], left[j])));
            } else {
                out.extend((0..half).map(|j| arith.f(parent[j], parent[j + half])));
            }
        }
        self.alpha[0][0]
    }

    /// Records decision `bit` for position `i` and propagates partial sums.
    fn commit(&mut self, bit: u8, i: usize) {
        let mut current = std::mem::take(&mut self.codeword);
        current.clear();
        current.push(bit);
        for s in 0..self.left.len() {
            let left = &mut self.left[s];
            if (i >> s) & 1 == 0 {
                std::mem::swap(left, &mut current);
                self.codeword = current;
                return;
            }
            for (l, &r) in left.iter_mut().zip(&current) {
                *l ^= r;
            }
            left.extend_from_slice(&current);
            // `current` becomes the merged word; the old buffer is reused.
            std::mem::swap(left, &mut current);
        }
        self.codeword = current;
    }
}

/// SCL decoding with list size `list_size`.
///
/// At a frozen bit every path decides 0 and pays the penalty of that
/// decision; at an information bit every path forks into both values and the
/// `list_size` best of the `2P` candidates survive. Returns the final list
/// sorted by path metric.
pub fn scl_decode<A: Arith>(
    arith: &A,
    llrs: &[A::Llr],
    code: &PolarCode,
    list_size: usize,
) -> Result<Vec<ListEntry<A::Metric>>> {
    if llrs.len() != code.len() {
        return Err(invalid(format!("got {} LLRs for a length-{} code", llrs.len(), code.len())));
    }
    if list_size == 0 {
        return Err(invalid("list size must be at least 1"));
    }
    let log_len = code.log_len() as usize;
    let mut paths = vec![BitPath::<A>::new(arith, log_len)];
    // Pruned paths, kept so that their buffers can be reused by forks.
    let mut spare: Vec<BitPath<A>> = Vec::new();
    let mut decisions = Vec::with_capacity(list_size);
    let mut forks: Vec<(usize, u8, A::Metric)> = Vec::with_capacity(2 * list_size);
    let mut pms = Vec::with_capacity(2 * list_size);
    for i in 0..code.len() {
        decisions.clear();
        decisions.extend(paths.iter_mut().map(|p| p.descend(arith, llrs, i)));
        if code.is_frozen(i) {
            for (path, &llr) in paths.iter_mut().zip(&decisions) {
                path.pm = arith.add_metric(path.pm, arith.penalty(llr, 0));
                path.commit(0, i);
            }
            continue;
        }
        forks.clear();
        forks.extend(paths.iter().zip(&decisions).enumerate().flat_map(|(p, (path, &llr))| {
            [0u8, 1].map(|bit| (p, bit, arith.add_metric(path.pm, arith.penalty(llr, bit))))
        }));
        pms.clear();
        pms.extend(forks.iter().map(|f| f.2));
        let keep = sort_select(&pms, list_size);
        let mut uses = vec![0usize; paths.len()];
        for &c in &keep {
            uses[forks[c].0] += 1;
        }
        let mut parents: Vec<Option<BitPath<A>>> = paths.drain(..).map(Some).collect();
        for (parent, _) in parents.iter_mut().zip(&uses).filter(|(_, &u)| u == 0) {
            spare.extend(parent.take());
        }
        for &c in &keep {
            let (p, bit, pm) = forks[c];
            uses[p] -= 1;
            let mut path = if uses[p] == 0 {
                parents[p].take().expect("parent consumed once")
            } else {
                let source = parents[p].as_ref().expect("parent alive");
                match spare.pop() {
                    Some(mut path) => {
                        path.copy_from(source);
                        path
                    }
                    None => source.clone(),
                }
            };
            path.pm = pm;
            path.commit(bit, i);
            paths.push(path);
        }
        pms.clear();
        pms.extend(paths.iter().map(|p| p.pm));
        arith.normalize(&mut pms);
        for (path, &pm) in paths.iter_mut().zip(&pms) {
            path.pm = pm;
        }
    }
    let pms: Vec<A::Metric> = paths.iter().map(|p| p.pm).collect();
    let order = sort_select(&pms, paths.len());
    let mut paths: Vec<Option<BitPath<A>>> = paths.into_iter().map(Some).collect();
    Ok(order
        .into_iter()
        .map(|i| {
            let p = paths[i].take().expect("each path listed once");
            ListEntry { codeword: p.codeword, pm: p.pm }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::bpsk_modulate;
    use crate::code::Construction;
    use crate::decoders::{sc_decode_codeword, FixedArith, FloatArith};
    use crate::QuantSpec;

    #[test]
    fn noiseless_best_path_has_zero_metric() {
        let code = PolarCode::new(64, 40, 0, 2.0, Construction::default()).unwrap();
        let info: Vec<u8> = (0..40).map(|i| (i % 3 == 0) as u8).collect();
        let x = code.encode_systematic(&info).unwrap();
        let llrs: Vec<f64> = bpsk_modulate(&x).iter().map(|s| 5.0 * s).collect();
        for list_size in [1, 2, 4, 8] {
            let list = scl_decode(&FloatArith, &llrs, &code, list_size).unwrap();
            assert_eq!(list[0].codeword, x);
            assert_eq!(list[0].pm, 0.0);
            assert!(list.len() <= list_size);
            assert!(list.windows(2).all(|w| w[0].pm <= w[1].pm));
        }
    }

    #[test]
    fn single_path_matches_sc_on_a_hand_frame() {
        let code = PolarCode::from_frozen(
            vec![true, true, true, false, true, false, false, false],
            0,
            0.0,
            Construction::default(),
        )
        .unwrap();
        let llrs = [0.3, -1.2, 2.0, -0.4, 0.9, -2.2, 1.1, 0.5];
        let list = scl_decode(&FloatArith, &llrs, &code, 1).unwrap();
        assert_eq!(list[0].codeword, sc_decode_codeword(&FloatArith, &llrs, &code).unwrap());
    }

    #[test]
    fn final_metric_is_channel_penalty() {
        // Under min-sum the metric of a complete path equals the channel
        // penalty of its codeword.
        let code = PolarCode::new(16, 8, 0, 1.0, Construction::default()).unwrap();
        let llrs: Vec<f64> = (0..16).map(|i| ((i * 37 % 11) as f64 - 5.3) * 0.7).collect();
        for entry in scl_decode(&FloatArith, &llrs, &code, 4).unwrap() {
            let direct: f64 = llrs.iter().zip(&entry.codeword).map(|(&a, &b)| FloatArith.penalty(a, b)).sum();
            assert!((direct - entry.pm).abs() < 1e-9, "{direct} vs {}", entry.pm);
        }
    }

    #[test]
    fn fixed_point_metrics_are_normalized() {
        let code = PolarCode::new(32, 16, 0, 1.0, Construction::default()).unwrap();
        let q = FixedArith::new(QuantSpec::DEFAULT);
        let llrs: Vec<i32> = (0..32).map(|i| (i * 13 % 31) - 15).collect();
        let list = scl_decode(&q, &llrs, &code, 4).unwrap();
        assert!(list.iter().all(|e| (0..64).contains(&e.pm)));
    }

    #[test]
    fn parameter_errors() {
        let code = PolarCode::new(8, 4, 0, 1.0, Construction::default()).unwrap();
        assert!(scl_decode(&FloatArith, &[0.0; 8], &code, 0).is_err());
        assert!(scl_decode(&FloatArith, &[0.0; 4], &code, 2).is_err());
    }
}
