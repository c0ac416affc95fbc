mod common;

use common::noisy_frame;
use polar_scl::code::{build_decoder_tree, Construction, NodeCaps, NodeKind, PolarCode};
use polar_scl::decoders::{
    decode_rate0, decode_repetition, fast_ssc_list_decode, sc_decode, sc_decode_codeword, scl_decode, Arith,
    FixedArith, FloatArith,
};
use polar_scl::QuantSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn codes() -> Vec<PolarCode> {
    vec![
        PolarCode::from_frozen(
            vec![true, true, true, false, true, false, false, false],
            0,
            0.0,
            Construction::default(),
        )
        .unwrap(),
        PolarCode::new(64, 32, 0, 2.0, Construction::default()).unwrap(),
        PolarCode::new(512, 427, 0, 4.0, Construction::default()).unwrap(),
    ]
}

#[test]
fn list_of_one_is_successive_cancellation() {
    for code in codes() {
        let tree = build_decoder_tree(&code, &NodeCaps::default());
        for f in 0..1000 {
            let frame = noisy_frame(&code, 2.0, 1, f);
            let sc = sc_decode_codeword(&FloatArith, &frame.llrs, &code).unwrap();
            let scl = scl_decode(&FloatArith, &frame.llrs, &code, 1).unwrap();
            let fast = fast_ssc_list_decode(&FloatArith, &tree, &code, &frame.llrs, 1).unwrap();
            assert_eq!(scl[0].codeword, sc, "N={} frame {f}", code.len());
            assert_eq!(fast[0].codeword, sc, "N={} frame {f}", code.len());
        }
    }
}

#[test]
fn sc_hand_example() {
    let code = PolarCode::from_frozen(vec![true, false], 0, 0.0, Construction::default()).unwrap();
    assert_eq!(sc_decode(&FloatArith, &[1.0, -3.0], &code).unwrap(), vec![1]);
}

/// A code of length `len` built from blocks of 8 that are either fully frozen
/// or repetition codes.
fn rate0_rep_code(len: usize, seed: u64) -> PolarCode {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut frozen = vec![true; len];
    for block in 0..len / 8 {
        if block == len / 8 - 1 || rng.random::<bool>() {
            frozen[block * 8 + 7] = false;
        }
    }
    PolarCode::from_frozen(frozen, 0, 0.0, Construction::default()).unwrap()
}

#[test]
fn exact_nodes_match_bit_level_list_decoding() {
    for seed in 0..4 {
        let code = rate0_rep_code(64, seed);
        for caps in [NodeCaps::default(), NodeCaps::unlimited()] {
            let tree = build_decoder_tree(&code, &caps);
            let census = tree.census();
            assert_eq!(census.count(NodeKind::Rate1) + census.count(NodeKind::Spc), 0);
            for list_size in [2, 4] {
                for f in 0..300 {
                    let frame = noisy_frame(&code, 1.0, seed, f);
                    let scl = scl_decode(&FloatArith, &frame.llrs, &code, list_size).unwrap();
                    let fast = fast_ssc_list_decode(&FloatArith, &tree, &code, &frame.llrs, list_size).unwrap();
                    assert_eq!(scl.len(), fast.len());
                    for (a, b) in scl.iter().zip(&fast) {
                        assert_eq!(a.codeword, b.codeword);
                        assert!((a.pm - b.pm).abs() < 1e-9);
                    }
                }
            }
        }
    }
}

fn penalty<A: Arith>(arith: &A, llrs: &[A::Llr], codeword: &[u8]) -> f64 {
    llrs.iter().zip(codeword).map(|(&l, &b)| arith.metric_to_f64(arith.penalty(l, b))).sum()
}

#[test]
fn full_list_finds_maximum_likelihood_codeword() {
    let code = codes().remove(0);
    let infos: Vec<Vec<u8>> = (0..16u8).map(|w| (0..4).map(|b| (w >> b) & 1).collect()).collect();
    let codewords: Vec<Vec<u8>> = infos.iter().map(|i| code.encode_systematic(i).unwrap()).collect();
    let mut hits = 0;
    for f in 0..1000 {
        let frame = noisy_frame(&code, 2.0, 3, f);
        let best = scl_decode(&FloatArith, &frame.llrs, &code, 8).unwrap().remove(0);
        let ml = codewords.iter().map(|c| penalty(&FloatArith, &frame.llrs, c)).fold(f64::INFINITY, f64::min);
        if (penalty(&FloatArith, &frame.llrs, &best.codeword) - ml).abs() < 1e-9 && codewords.contains(&best.codeword) {
            hits += 1;
        }
    }
    assert!(hits >= 990, "{hits}/1000");
}

#[test]
fn complete_path_metric_is_channel_penalty() {
    let code = PolarCode::new(64, 40, 0, 2.0, Construction::default()).unwrap();
    let tree = build_decoder_tree(&code, &NodeCaps::default());
    for f in 0..200 {
        let frame = noisy_frame(&code, 1.5, 4, f);
        for entry in scl_decode(&FloatArith, &frame.llrs, &code, 4).unwrap() {
            assert!((entry.pm - penalty(&FloatArith, &frame.llrs, &entry.codeword)).abs() < 1e-9);
        }
        // Rate-1 and SPC candidates are exact codewords too, so the same holds.
        for entry in fast_ssc_list_decode(&FloatArith, &tree, &code, &frame.llrs, 4).unwrap() {
            assert!((entry.pm - penalty(&FloatArith, &frame.llrs, &entry.codeword)).abs() < 1e-9);
        }
    }
}

#[test]
fn node_penalties_equal_bit_level_penalties() {
    // Internal headroom so that no bit-level LLR saturates.
    let fixed = FixedArith::new(QuantSpec::new(12, 6, 0).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for len in [2usize, 4, 8, 16] {
        let rate0 = PolarCode::from_frozen(vec![true; len], 0, 0.0, Construction::default()).unwrap();
        let mut rep_mask = vec![true; len];
        rep_mask[len - 1] = false;
        let rep = PolarCode::from_frozen(rep_mask, 0, 0.0, Construction::default()).unwrap();
        for _ in 0..500 {
            let llrs: Vec<f64> = (0..len).map(|_| rng.random_range(-8.0..8.0)).collect();

            let node = decode_rate0(&FloatArith, &llrs, 0.0);
            let bits = scl_decode(&FloatArith, &llrs, &rate0, 1).unwrap();
            assert!((node[0].pm - bits[0].pm).abs() < 1e-9);

            let node = decode_repetition(&FloatArith, &llrs, 0.0);
            let mut bits = scl_decode(&FloatArith, &llrs, &rep, 2).unwrap();
            bits.sort_by_key(|e| e.codeword[0]);
            for (n, b) in node.iter().zip(&bits) {
                assert_eq!(n.beta, b.codeword);
                assert!((n.pm - b.pm).abs() < 1e-9);
            }

            // Fixed point: identical integers, no normalization within a node.
            let q: Vec<i32> = llrs.iter().map(|&x| fixed.channel_llr(x)).collect();
            let node = decode_rate0(&fixed, &q, 0);
            assert_eq!(node[0].pm, scl_decode(&fixed, &q, &rate0, 1).unwrap()[0].pm);
            let node = decode_repetition(&fixed, &q, 0);
            let pms: Vec<i32> = node.iter().map(|n| n.pm).collect();
            let min = *pms.iter().min().unwrap();
            let mut bits = scl_decode(&fixed, &q, &rep, 2).unwrap();
            bits.sort_by_key(|e| e.codeword[0]);
            let bit_pms: Vec<i32> = bits.iter().map(|b| b.pm).collect();
            assert_eq!(bit_pms, pms.iter().map(|p| p - min).collect::<Vec<_>>());
        }
    }
}

#[test]
fn wide_fixed_point_tracks_floating_point() {
    let code = PolarCode::new(512, 427, 0, 4.0, Construction::default()).unwrap();
    let tree = build_decoder_tree(&code, &NodeCaps::default());
    let fixed = FixedArith::new("16.16.8".parse().unwrap());
    let frames = 10_000;
    let mut same = 0;
    for f in 0..frames {
        let frame = noisy_frame(&code, 4.0, 6, f);
        let q: Vec<i32> = frame.llrs.iter().map(|&x| fixed.channel_llr(x)).collect();
        let a = fast_ssc_list_decode(&FloatArith, &tree, &code, &frame.llrs, 2).unwrap();
        let b = fast_ssc_list_decode(&fixed, &tree, &code, &q, 2).unwrap();
        same += usize::from(a[0].codeword == b[0].codeword);
    }
    assert!(same * 1000 >= frames as usize * 999, "{same}/{frames}");
}

#[test]
fn path_metrics_never_decrease_along_a_path() {
    // Without normalization a surviving path's metric only grows, so the
    // best metric of a longer prefix code is never below the shorter one's.
    let code = PolarCode::new(64, 32, 0, 2.0, Construction::default()).unwrap();
    for f in 0..200 {
        let frame = noisy_frame(&code, 1.0, 8, f);
        let list = scl_decode(&FloatArith, &frame.llrs, &code, 4).unwrap();
        for w in list.windows(2) {
            assert!(w[0].pm <= w[1].pm);
        }
        assert!(list.iter().all(|e| e.pm >= 0.0));
    }
}
