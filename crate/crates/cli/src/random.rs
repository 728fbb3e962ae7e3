use msq_multiseg::{Multisegment, Segment};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Generator for instance `index` of a sweep keyed by `seed`; independent of
/// how instances are scheduled.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Between 1 and `max_segments` segments with begins in `[0, 8)`, lengths in
/// `1..=5`, resampled until the degree is at most `max_deg`.
pub fn random_multisegment(rng: &mut impl Rng, max_segments: usize, max_deg: usize) -> Multisegment {
    loop {
        let n = rng.gen_range(1..=max_segments.max(1));
        let segs: Vec<Segment> = (0..n)
            .map(|_| {
                let a = rng.gen_range(0..8);
                Segment::new(a, a + rng.gen_range(0..5)).expect("nonempty")
            })
            .collect();
        let m = Multisegment::new(segs);
        if m.deg() <= max_deg {
            return m;
        }
    }
}

/// Cuspidal support with multiplicities.
pub fn support_multiset(m: &Multisegment) -> Vec<i64> {
    let mut out: Vec<i64> = m.segments().iter().flat_map(|s| s.begin()..=s.end()).collect();
    out.sort_unstable();
    out
}
