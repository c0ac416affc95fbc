use crate::error::{invalid, Result};

/// Applies the natural-order polar transform `x = u F^{⊗n}` in place, where
/// `F = [[1, 0], [1, 1]]`.
///
/// Each 2-block maps `(u0, u1)` to `(u0 ^ u1, u1)`. The transform is its own
/// inverse over GF(2).
///
/// Panics if the length is not a power of two.
pub fn transform_in_place(bits: &mut [u8]) {
    let len = bits.len();
    assert!(len.is_power_of_two(), "polar transform length {len} is not a power of two");
    let mut half = 1;
    while half < len {
        for block in bits.chunks_exact_mut(2 * half) {
            let (left, right) = block.split_at_mut(half);
            for (l, r) in left.iter_mut().zip(right.iter()) {
                *l ^= *r;
            }
        }
        half *= 2;
    }
}

/// Returns the polar transform of `bits`.
pub fn polar_transform(bits: &[u8]) -> Result<Vec<u8>> {
    if !bits.len().is_power_of_two() {
        return Err(invalid(format!("polar transform length {} is not a power of two", bits.len())));
    }
    let mut out = bits.to_vec();
    transform_in_place(&mut out);
    Ok(out)
}

/// One encoder stage: `(left ^ right) ‖ right`.
pub fn combine(left: &[u8], right: &[u8]) -> Result<Vec<u8>> {
    if left.len() != right.len() {
        return Err(invalid(format!("combine length mismatch: {} vs {}", left.len(), right.len())));
    }
    let mut out = Vec::with_capacity(2 * left.len());
    out.extend(left.iter().zip(right).map(|(l, r)| l ^ r));
    out.extend_from_slice(right);
    Ok(out)
}

/// In-place [`combine`] on a slice holding `left ‖ right`.
pub(crate) fn combine_in_place(bits: &mut [u8]) {
    let half = bits.len() / 2;
    let (left, right) = bits.split_at_mut(half);
    for (l, r) in left.iter_mut().zip(right.iter()) {
        *l ^= *r;
    }
}
