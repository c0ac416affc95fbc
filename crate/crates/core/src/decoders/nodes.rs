//! Constituent-code decoders of Fast-SSC-List decoding.
//!
//! Each decoder turns one path's node LLRs `alpha` and metric `pm` into a
//! short list of candidate bit vectors `beta` (codeword domain) with updated
//! metrics. Rate-0 and Repetition are exact; Rate-1 and SPC enumerate flips
//! among a few least-reliable positions.

use super::arith::Arith;
use super::sort::sort_select;
use crate::code::NodeKind;

/// Positions the SPC decoder may flip.
pub const SPC_FLIP_POSITIONS: usize = 4;

/// One candidate produced by a node decoder for a single path.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeCandidate<M> {
    pub beta: Vec<u8>,
    pub pm: M,
}

/// A candidate tagged with the list index of the path it extends.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate<M> {
    pub parent: usize,
    pub beta: Vec<u8>,
    pub pm: M,
}

pub type CandidateSet<M> = Vec<Candidate<M>>;

/// Number of least-reliable positions a Rate-1 node of `len` bits may flip
/// for list size `list_size`: `ceil(log2 L) + 1`, at most `len`.
pub fn rate1_flip_positions(len: usize, list_size: usize) -> usize {
    let log = list_size.next_power_of_two().trailing_zeros() as usize;
    (log + 1).min(len)
}

/// Candidates a node decoder emits per path; depends only on the node shape.
pub fn candidate_count(kind: NodeKind, len: usize, list_size: usize) -> usize {
    match kind {
        NodeKind::Rate0 => 1,
        NodeKind::Repetition => 2,
        NodeKind::Rate1 => list_size.min(1 << rate1_flip_positions(len, list_size)),
        NodeKind::Spc => list_size.min(1 << (SPC_FLIP_POSITIONS.min(len) - 1)),
    }
}

fn penalty_sum<A: Arith>(arith: &A, alpha: &[A::Llr], bit: u8, pm: A::Metric) -> A::Metric {
    alpha.iter().fold(pm, |acc, &a| arith.add_metric(acc, arith.penalty(a, bit)))
}

/// All-zero candidate; every negative LLR adds its magnitude.
pub fn decode_rate0<A: Arith>(arith: &A, alpha: &[A::Llr], pm: A::Metric) -> Vec<NodeCandidate<A::Metric>> {
    vec![NodeCandidate { beta: vec![0; alpha.len()], pm: penalty_sum(arith, alpha, 0, pm) }]
}

/// All-zero then all-one candidate with their exact penalties.
pub fn decode_repetition<A: Arith>(arith: &A, alpha: &[A::Llr], pm: A::Metric) -> Vec<NodeCandidate<A::Metric>> {
    vec![
        NodeCandidate { beta: vec![0; alpha.len()], pm: penalty_sum(arith, alpha, 0, pm) },
        NodeCandidate { beta: vec![1; alpha.len()], pm: penalty_sum(arith, alpha, 1, pm) },
    ]
}

/// Positions sorted by increasing `|alpha|`, ties by position.
fn least_reliable<A: Arith>(arith: &A, alpha: &[A::Llr], count: usize) -> Vec<usize> {
    let mags: Vec<A::Metric> = alpha.iter().map(|&a| arith.magnitude(a)).collect();
    let mut order = sort_select(&mags, alpha.len());
    order.truncate(count);
    order
}

/// Enumerates flip sets (bitmasks over `positions`) accepted by `allowed`,
/// keeps the `keep` cheapest and applies them to the hard decisions.
fn flip_candidates<A: Arith>(
    arith: &A,
    alpha: &[A::Llr],
    pm: A::Metric,
    positions: &[usize],
    keep: usize,
    allowed: impl Fn(u32) -> bool,
) -> Vec<NodeCandidate<A::Metric>> {
    let hard: Vec<u8> = alpha.iter().map(|&a| arith.hard(a)).collect();
    let masks: Vec<u32> = (0..1u32 << positions.len()).filter(|&m| allowed(m)).collect();
    let costs: Vec<A::Metric> = masks
        .iter()
        .map(|&mask| {
            positions
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask >> bit & 1 == 1)
                .fold(pm, |acc, (_, &pos)| arith.add_metric(acc, arith.magnitude(alpha[pos])))
        })
        .collect();
    sort_select(&costs, keep)
        .into_iter()
        .map(|i| {
            let mut beta = hard.clone();
            for (bit, &pos) in positions.iter().enumerate() {
                if masks[i] >> bit & 1 == 1 {
                    beta[pos] ^= 1;
                }
            }
            NodeCandidate { beta, pm: costs[i] }
        })
        .collect()
}

/// Hard decision first, then flips of the least-reliable positions in order
/// of increasing penalty; up to `list_size` candidates.
pub fn decode_rate1<A: Arith>(
    arith: &A,
    alpha: &[A::Llr],
    pm: A::Metric,
    list_size: usize,
) -> Vec<NodeCandidate<A::Metric>> {
    let positions = least_reliable(arith, alpha, rate1_flip_positions(alpha.len(), list_size));
    let keep = candidate_count(NodeKind::Rate1, alpha.len(), list_size);
    flip_candidates(arith, alpha, pm, &positions, keep, |_| true)
}

/// Even-parity candidates: the hard decision with the least-reliable bit
/// flipped if parity is odd, then other parity-restoring flips among the
/// four least-reliable positions.
pub fn decode_spc<A: Arith>(
    arith: &A,
    alpha: &[A::Llr],
    pm: A::Metric,
    list_size: usize,
) -> Vec<NodeCandidate<A::Metric>> {
    let parity = alpha.iter().fold(0u32, |p, &a| p ^ u32::from(arith.hard(a)));
    let positions = least_reliable(arith, alpha, SPC_FLIP_POSITIONS.min(alpha.len()));
    let keep = candidate_count(NodeKind::Spc, alpha.len(), list_size);
    flip_candidates(arith, alpha, pm, &positions, keep, |mask| mask.count_ones() & 1 == parity)
}

/// Dispatches on the node kind.
pub fn decode_node<A: Arith>(
    arith: &A,
    kind: NodeKind,
    alpha: &[A::Llr],
    pm: A::Metric,
    list_size: usize,
) -> Vec<NodeCandidate<A::Metric>> {
    match kind {
        NodeKind::Rate0 => decode_rate0(arith, alpha, pm),
        NodeKind::Rate1 => decode_rate1(arith, alpha, pm, list_size),
        NodeKind::Repetition => decode_repetition(arith, alpha, pm),
        NodeKind::Spc => decode_spc(arith, alpha, pm, list_size),
    }
}

/// Runs a node decoder on every path. `alphas` holds either one LLR vector
/// per path or a single vector shared by all paths.
pub fn decode_paths<A: Arith, V: AsRef<[A::Llr]>>(
    arith: &A,
    kind: NodeKind,
    alphas: &[V],
    pms: &[A::Metric],
    list_size: usize,
) -> CandidateSet<A::Metric> {
    pms.iter()
        .enumerate()
        .flat_map(|(parent, &pm)| {
            let alpha = alphas[if alphas.len() == 1 { 0 } else { parent }].as_ref();
            decode_node(arith, kind, alpha, pm, list_size).into_iter().map(move |c| Candidate {
                parent,
                beta: c.beta,
                pm: c.pm,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoders::{FixedArith, FloatArith};
    use crate::QuantSpec;
    use proptest::prelude::*;

    fn summary(c: &[NodeCandidate<f64>]) -> Vec<(Vec<u8>, f64)> {
        c.iter().map(|c| (c.beta.clone(), c.pm)).collect()
    }

    #[test]
    fn rate0_examples() {
        let a = FloatArith;
        assert_eq!(summary(&decode_rate0(&a, &[1.0, 2.0], 0.0)), vec![(vec![0, 0], 0.0)]);
        assert_eq!(summary(&decode_rate0(&a, &[-1.0, 2.0, -3.0], 0.0)), vec![(vec![0, 0, 0], 4.0)]);
        assert_eq!(summary(&decode_rate0(&a, &[0.0; 4], 1.5)), vec![(vec![0; 4], 1.5)]);
    }

    #[test]
    fn repetition_examples() {
        let a = FloatArith;
        assert_eq!(
            summary(&decode_repetition(&a, &[1.0, 2.0, -1.0, 3.0], 0.0)),
            vec![(vec![0; 4], 1.0), (vec![1; 4], 6.0)]
        );
        // Symmetric: equal penalties, all-zero listed (and so kept) first.
        let c = decode_repetition(&a, &[1.0, -1.0], 0.0);
        assert_eq!(c[0].pm, c[1].pm);
        assert_eq!(c[0].beta, vec![0, 0]);
        assert_eq!(sort_select(&[c[0].pm, c[1].pm], 1), vec![0]);
    }

    #[test]
    fn rate1_examples() {
        let a = FloatArith;
        assert_eq!(
            summary(&decode_rate1(&a, &[4.0, -1.0, 2.0], 0.0, 2)),
            vec![(vec![0, 1, 0], 0.0), (vec![0, 0, 0], 1.0)]
        );
        assert_eq!(summary(&decode_rate1(&a, &[9.0, -9.0], 0.0, 1)), vec![(vec![0, 1], 0.0)]);
        // L = 4 flips among the three least reliable: {}, {a}, {b}, {c} or {a, b}.
        let c = decode_rate1(&a, &[5.0, 1.0, -2.0, 2.5, 8.0], 0.0, 4);
        assert_eq!(
            summary(&c),
            vec![
                (vec![0, 0, 1, 0, 0], 0.0),
                (vec![0, 1, 1, 0, 0], 1.0),
                (vec![0, 0, 0, 0, 0], 2.0),
                (vec![0, 0, 1, 1, 0], 2.5),
            ]
        );
    }

    #[test]
    fn spc_examples() {
        let a = FloatArith;
        assert_eq!(summary(&decode_spc(&a, &[4.0, 3.0, 2.0, 5.0], 0.0, 1)), vec![(vec![0; 4], 0.0)]);
        assert_eq!(summary(&decode_spc(&a, &[4.0, -1.0, 2.0, 3.0], 0.0, 1)), vec![(vec![0; 4], 1.0)]);
        let c = decode_spc(&a, &[4.0, -1.0, 2.0, 3.0], 0.0, 2);
        assert_eq!(c.len(), 2);
        // Second best odd flip set: flip the 2 (index 2) instead of the 1.
        assert_eq!(c[1].beta, vec![0, 1, 1, 0]);
        assert_eq!(c[1].pm, 2.0);
    }

    #[test]
    fn candidate_counts_are_static() {
        let a = FloatArith;
        for list_size in 1..=8 {
            for (kind, len) in [
                (NodeKind::Rate0, 8),
                (NodeKind::Repetition, 8),
                (NodeKind::Rate1, 1),
                (NodeKind::Rate1, 2),
                (NodeKind::Rate1, 128),
                (NodeKind::Spc, 4),
                (NodeKind::Spc, 16),
            ] {
                let alpha: Vec<f64> = (0..len).map(|i| (i as f64 * 1.7).sin()).collect();
                let got = decode_node(&a, kind, &alpha, 0.0, list_size).len();
                assert_eq!(got, candidate_count(kind, len, list_size), "{kind:?} len {len} L {list_size}");
            }
        }
    }

    #[test]
    fn fixed_point_penalties_saturate() {
        let q = FixedArith::new(QuantSpec::DEFAULT);
        let c = decode_rate0(&q, &[-32, -32, -32], 0);
        assert_eq!(c[0].pm, 63);
        let c = decode_repetition(&q, &[3, -2, 5, 1], 10);
        assert_eq!((c[0].pm, c[1].pm), (12, 19));
    }

    #[test]
    fn paths_share_or_own_alpha() {
        let a = FloatArith;
        let shared = decode_paths(&a, NodeKind::Repetition, &[vec![1.0, -3.0]], &[0.0, 1.0], 2);
        assert_eq!(shared.len(), 4);
        assert_eq!(shared.iter().map(|c| c.parent).collect::<Vec<_>>(), vec![0, 0, 1, 1]);
        assert_eq!(shared[2].pm, 4.0);
        let own = decode_paths(&a, NodeKind::Rate0, &[vec![1.0], vec![-2.0]], &[0.0, 0.0], 2);
        assert_eq!(own.iter().map(|c| c.pm).collect::<Vec<_>>(), vec![0.0, 2.0]);
    }

    /// Exhaustive metric of a word against `alpha`.
    fn word_penalty(alpha: &[f64], word: &[u8]) -> f64 {
        alpha.iter().zip(word).map(|(&a, &b)| FloatArith.penalty(a, b)).sum()
    }

    fn all_words(len: usize) -> impl Iterator<Item = Vec<u8>> {
        (0..1u32 << len).map(move |m| (0..len).map(|i| (m >> i & 1) as u8).collect())
    }

    proptest! {
        #[test]
        fn rate1_contains_two_best_words(alpha in proptest::collection::vec(-8.0f64..8.0, 4)) {
            let mut ranked: Vec<(f64, Vec<u8>)> = all_words(4).map(|w| (word_penalty(&alpha, &w), w)).collect();
            ranked.sort_by(|a, b| a.0.total_cmp(&b.0));
            let cands = decode_rate1(&FloatArith, &alpha, 0.0, 2);
            prop_assert_eq!(cands.len(), 2);
            // The two lowest metrics are achieved (ties may swap words).
            prop_assert!((cands[0].pm - ranked[0].0).abs() < 1e-12);
            prop_assert!((cands[1].pm - ranked[1].0).abs() < 1e-12);
            for c in &cands {
                prop_assert!((word_penalty(&alpha, &c.beta) - c.pm).abs() < 1e-12);
            }
            if ranked[1].0 < ranked[2].0 && ranked[0].0 < ranked[1].0 {
                prop_assert_eq!(&cands[0].beta, &ranked[0].1);
                prop_assert_eq!(&cands[1].beta, &ranked[1].1);
            }
        }

        #[test]
        fn spc_first_candidate_is_parity_ml(alpha in proptest::collection::vec(-8.0f64..8.0, 4..=8)) {
            let len = alpha.len();
            let best = all_words(len)
                .filter(|w| w.iter().map(|&b| b as u32).sum::<u32>() % 2 == 0)
                .map(|w| word_penalty(&alpha, &w))
                .fold(f64::INFINITY, f64::min);
            let cands = decode_spc(&FloatArith, &alpha, 0.0, 4);
            prop_assert!((cands[0].pm - best).abs() < 1e-12);
            for c in &cands {
                prop_assert_eq!(c.beta.iter().map(|&b| b as u32).sum::<u32>() % 2, 0);
                prop_assert!((word_penalty(&alpha, &c.beta) - c.pm).abs() < 1e-12);
            }
            for w in cands.windows(2) {
                prop_assert!(w[0].pm <= w[1].pm);
            }
        }

        #[test]
        fn rate1_l4_is_exact_top4(alpha in proptest::collection::vec(-8.0f64..8.0, 6)) {
            let mut costs: Vec<f64> = all_words(6).map(|w| word_penalty(&alpha, &w)).collect();
            costs.sort_by(f64::total_cmp);
            let cands = decode_rate1(&FloatArith, &alpha, 0.0, 4);
            for (c, want) in cands.iter().zip(&costs) {
                prop_assert!((c.pm - want).abs() < 1e-12);
            }
        }
    }
}
