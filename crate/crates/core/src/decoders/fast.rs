//! Fast-SSC-List decoding over a [`TreeNode`].
//!
//! Branch nodes run F on every path, recurse left, run G on every path,
//! recurse right and combine. Leaves run their constituent decoder on every
//! path and keep the best `L` candidates. LLR vectors kept across a sort are
//! re-indexed by the surviving paths' sources.

use super::arith::Arith;
use super::nodes::decode_paths;
use super::sort::sort_select;
use super::ListEntry;
use crate::code::{combine_in_place, PolarCode, TreeNode};
use crate::error::{invalid, Result};

/// A surviving decoding path.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodingPath<M> {
    pub pm: M,
    /// Partial sums: positions of already-decoded leaves, combined in place
    /// as subtrees complete. Becomes the codeword after the root.
    pub partial_sums: Vec<u8>,
    /// Index of the parent path before the last sort.
    pub source: usize,
}

struct FastDecoder<'a, A: Arith> {
    arith: &'a A,
    list_size: usize,
    paths: Vec<DecodingPath<A::Metric>>,
}

impl<A: Arith> FastDecoder<'_, A> {
    /// Decodes `node` covering positions `start..start + len`. Returns, for
    /// each path alive afterwards, the index it had when the node was entered.
    fn node(&mut self, node: &TreeNode, start: usize, alphas: Vec<Vec<A::Llr>>) -> Vec<usize> {
        match node {
            TreeNode::Leaf { kind, len } => {
                let pms: Vec<A::Metric> = self.paths.iter().map(|p| p.pm).collect();
                let candidates = decode_paths(self.arith, *kind, &alphas, &pms, self.list_size);
                let cand_pms: Vec<A::Metric> = candidates.iter().map(|c| c.pm).collect();
                let keep = sort_select(&cand_pms, self.list_size);
                let mut next: Vec<DecodingPath<A::Metric>> = keep
                    .iter()
                    .map(|&c| {
                        let cand = &candidates[c];
                        let mut partial_sums = self.paths[cand.parent].partial_sums.clone();
                        partial_sums[start..start + len].copy_from_slice(&cand.beta);
                        DecodingPath { pm: cand.pm, partial_sums, source: cand.parent }
                    })
                    .collect();
                let mut pms: Vec<A::Metric> = next.iter().map(|p| p.pm).collect();
                self.arith.normalize(&mut pms);
                for (path, pm) in next.iter_mut().zip(pms) {
                    path.pm = pm;
                }
                self.paths = next;
                self.paths.iter().map(|p| p.source).collect()
            }
            TreeNode::Branch { len, left, right } => {
                let half = len / 2;
                let arith = self.arith;
                let left_alphas =
                    alphas.iter().map(|a| (0..half).map(|i| arith.f(a[i], a[i + half])).collect()).collect();
                let left_map = self.node(left, start, left_alphas);
                let alphas =
                    if alphas.len() == 1 { alphas } else { left_map.iter().map(|&s| alphas[s].clone()).collect() };
                let right_alphas = self
                    .paths
                    .iter()
                    .enumerate()
                    .map(|(j, path)| {
                        let a = &alphas[if alphas.len() == 1 { 0 } else { j }];
                        let beta = &path.partial_sums[start..start + half];
                        (0..half).map(|i| arith.g(a[i], a[i + half], beta[i])).collect()
                    })
                    .collect();
                let right_map = self.node(right, start + half, right_alphas);
                for path in &mut self.paths {
                    combine_in_place(&mut path.partial_sums[start..start + len]);
                }
                right_map.iter().map(|&j| left_map[j]).collect()
            }
        }
    }
}

/// Fast-SSC-List decoding; returns the final list sorted by path metric.
pub fn fast_ssc_list_decode<A: Arith>(
    arith: &A,
    tree: &TreeNode,
    code: &PolarCode,
    llrs: &[A::Llr],
    list_size: usize,
) -> Result<Vec<ListEntry<A::Metric>>> {
    if !tree.matches_mask(code.frozen()) {
        return Err(invalid("decoder tree does not match the code's frozen set"));
    }
    if llrs.len() != code.len() {
        return Err(invalid(format!("got {} LLRs for a length-{} code", llrs.len(), code.len())));
    }
    if list_size == 0 {
        return Err(invalid("list size must be at least 1"));
    }
    let mut decoder = FastDecoder {
        arith,
        list_size,
        paths: vec![DecodingPath { pm: arith.zero_metric(), partial_sums: vec![0; code.len()], source: 0 }],
    };
    decoder.node(tree, 0, vec![llrs.to_vec()]);
    Ok(decoder.paths.into_iter().map(|p| ListEntry { codeword: p.partial_sums, pm: p.pm }).collect())
}
