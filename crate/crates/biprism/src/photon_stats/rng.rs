//! Deterministic stream derivation for Monte Carlo runs.
//!
//! Every sampling site (a scan point, a dark run, a blocked run, an HBT
//! block, a campaign width) gets its own counter-indexed ChaCha stream
//! derived from the root seed. Results are therefore a pure function of
//! `(seed, site)` and independent of evaluation order, which is what lets
//! the parallel and sequential execution paths agree bitwise.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent sampling domains. The constants separate the key material
/// of different run kinds so equal indices never collide across kinds.
#[derive(Debug, Clone, Copy)]
pub enum StreamDomain {
    ScanPoint,
    DarkRun,
    BlockedRun,
    HbtBlock,
    CampaignWidth,
}

impl StreamDomain {
    fn tag(self) -> u64 {
        match self {
            StreamDomain::ScanPoint => 0x5343_414e_2d50_544e,
            StreamDomain::DarkRun => 0x4441_524b_2d52_554e,
            StreamDomain::BlockedRun => 0x424c_4f43_4b45_4452,
            StreamDomain::HbtBlock => 0x4842_542d_424c_4f43,
            StreamDomain::CampaignWidth => 0x4341_4d50_2d57_4454,
        }
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// ChaCha generator for stream `index` of `domain` under `root_seed`.
pub fn stream_rng(root_seed: u64, domain: StreamDomain, index: u64) -> ChaCha8Rng {
    let mut state = root_seed ^ domain.tag();
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}

/// Sub-seed for nested runs (one per campaign width).
pub fn derive_seed(root_seed: u64, index: u64) -> u64 {
    let mut state = root_seed ^ StreamDomain::CampaignWidth.tag();
    let mut out = 0;
    for _ in 0..=index {
        out = splitmix64(&mut state);
    }
    out
}
