use rand::Rng;

use super::sets::{Ext, IntervalSet};

/// Random set with 1 to 3 components, finite endpoints in `[-4, 4]` at
/// least `0.05` apart, and each outer end independently infinite with
/// probability 1/4.
pub fn random_interval_set<R: Rng + ?Sized>(rng: &mut R) -> IntervalSet {
    const GAP: f64 = 0.05;
    let k = rng.random_range(1..=3usize);
    let points = loop {
        let mut p: Vec<f64> = (0..2 * k).map(|_| rng.random_range(-4.0..4.0)).collect();
        p.sort_by(f64::total_cmp);
        if p.windows(2).all(|w| w[1] - w[0] >= GAP) {
            break p;
        }
    };
    let mut ends: Vec<Ext> = points.into_iter().map(Ext::Finite).collect();
    if rng.random_bool(0.25) {
        ends[0] = Ext::NegInf;
    }
    if rng.random_bool(0.25) {
        ends[2 * k - 1] = Ext::PosInf;
    }
    let pairs: Vec<(Ext, Ext)> = ends.chunks(2).map(|c| (c[0], c[1])).collect();
    IntervalSet::from_pairs(&pairs).expect("sorted endpoints with positive gaps")
}
