#![allow(dead_code)]

use polar_scl::channel::{awgn_add, bpsk_modulate, channel_llr, frame_rng, random_bits};
use polar_scl::PolarCode;

pub struct Frame {
    pub info: Vec<u8>,
    pub codeword: Vec<u8>,
    pub llrs: Vec<f64>,
}

pub fn noisy_frame(code: &PolarCode, ebn0_db: f64, seed: u64, index: u64) -> Frame {
    let mut rng = frame_rng(seed, 0, index);
    let info = random_bits(code.k(), &mut rng);
    let codeword = code.encode_systematic(&info).unwrap();
    let llrs = channel_llr(&awgn_add(&bpsk_modulate(&codeword), ebn0_db, code.rate(), &mut rng));
    Frame { info, codeword, llrs }
}
