use super::arith::Arith;
use crate::code::PolarCode;
use crate::error::{invalid, Result};

/// Decodes the node with LLRs `alpha` into `out` (codeword domain).
/// `scratch` holds the child LLRs of every level below this one.
fn sc_node<A: Arith>(arith: &A, alpha: &[A::Llr], frozen: &[bool], scratch: &mut [A::Llr], out: &mut [u8]) {
    if alpha.len() == 1 {
        out[0] = if frozen[0] { 0 } else { arith.hard(alpha[0]) };
        return;
    }
    if frozen.iter().all(|&f| f) {
        out.fill(0);
        return;
    }
    let half = alpha.len() / 2;
    let (a, b) = alpha.split_at(half);
    let (child, rest) = scratch.split_at_mut(half);
    for j in 0..half {
        child[j] = arith.f(a[j], b[j]);
    }
    let (left, right) = out.split_at_mut(half);
    sc_node(arith, child, &frozen[..half], rest, left);
    for j in 0..half {
        child[j] = arith.g(a[j], b[j], left[j]);
    }
    sc_node(arith, child, &frozen[half..], rest, right);
    for j in 0..half {
        left[j] ^= right[j];
    }
}

/// Successive-cancellation decoding; returns the re-encoded codeword.
pub fn sc_decode_codeword<A: Arith>(arith: &A, llrs: &[A::Llr], code: &PolarCode) -> Result<Vec<u8>> {
    if llrs.len() != code.len() {
        return Err(invalid(format!("got {} LLRs for a length-{} code", llrs.len(), code.len())));
    }
    let mut out = vec![0; llrs.len()];
    let mut scratch = llrs.to_vec();
    sc_node(arith, llrs, code.frozen(), &mut scratch, &mut out);
    Ok(out)
}

/// Successive-cancellation decoding with systematic readout of the `k`
/// unfrozen positions.
pub fn sc_decode<A: Arith>(arith: &A, llrs: &[A::Llr], code: &PolarCode) -> Result<Vec<u8>> {
    Ok(code.extract_info(&sc_decode_codeword(arith, llrs, code)?))
}
