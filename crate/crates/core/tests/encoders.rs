use std::collections::HashSet;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vtsynth::channel::{verify_encoder, MessageSource};
use vtsynth::word::aux_syndrome;
use vtsynth::{plan_block_params, Bits, BlockCodec, Codec, DirectCodec, DirectPlan, SpecialCodec};

fn sweep(codec: &dyn Codec, seed: u64) {
    let source = MessageSource::Random { count: 100, seed };
    let report = verify_encoder(codec, &source).unwrap();
    assert!(
        report.passed(),
        "n={}: {:?}",
        codec.length(),
        report.failures.first()
    );
    assert_eq!(report.messages_tested, 100);
}

fn random_messages(bits: usize, count: usize, seed: u64) -> Vec<Bits> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| Bits::new((0..bits).map(|_| rng.random_bool(0.5)).collect()))
        .collect()
}

#[test]
fn block_encoder_lengths() {
    for n in [12, 20, 32] {
        let codec = BlockCodec::new(plan_block_params(n, 3 * n as i64).unwrap()).unwrap();
        sweep(&codec, n as u64);
    }
}

#[test]
fn special_encoder_lengths() {
    for n in [12, 20, 32] {
        let codec = SpecialCodec::new(n).unwrap();
        assert_eq!(codec.synthesis_bound(), 5 * n as u64 / 2);
        sweep(&codec, n as u64);
    }
}

#[test]
fn direct_encoder_lengths() {
    for n in [12, 20, 32] {
        let plan = DirectPlan::new(n, 5 * n as i64 / 2, None).unwrap();
        let codec = DirectCodec::new(plan.clone()).unwrap();
        sweep(&codec, n as u64);
        for msg in random_messages(codec.message_bits(), 200, 3) {
            let c = codec.encode(&msg).unwrap();
            assert_eq!(aux_syndrome(c.symbols()) % n as u64, plan.a as u64);
            assert_eq!(c.sum_mod4(), plan.b);
        }
    }
}

#[test]
fn distinct_messages_give_distinct_codewords() {
    let codecs: Vec<Box<dyn Codec>> = vec![
        Box::new(BlockCodec::new(plan_block_params(20, 60).unwrap()).unwrap()),
        Box::new(SpecialCodec::new(20).unwrap()),
        Box::new(DirectCodec::new(DirectPlan::new(20, 50, None).unwrap()).unwrap()),
    ];
    for codec in &codecs {
        let bits = codec.message_bits();
        let mut msgs = HashSet::new();
        let mut words = HashSet::new();
        for msg in random_messages(bits, 300, 5) {
            let c = codec.encode(&msg).unwrap();
            if msgs.insert(msg.to_string()) {
                assert!(words.insert(c), "two messages share a codeword");
            }
        }
    }
}
