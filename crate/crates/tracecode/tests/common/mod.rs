//! Shared deterministic code battery for the acceptance suite.

use std::sync::Arc;

use rand_chacha::ChaCha12Rng;
use rand_core::SeedableRng;

use tracecode::probability::{sample_multiplier, sample_support};
use tracecode::{FieldTower, LinearCode, Support};

pub const BATTERY_SEED: u64 = 0x7ace_c0de;

/// A labelled battery of small codes over GF(4), GF(8), GF(9) and GF(27):
/// random generators plus the structured families. Deterministic.
pub fn battery() -> Vec<(String, LinearCode)> {
    let mut rng = ChaCha12Rng::seed_from_u64(BATTERY_SEED);
    let mut codes: Vec<(String, LinearCode)> = Vec::new();
    let shapes: [(usize, usize); 10] =
        [(2, 1), (3, 1), (3, 2), (4, 2), (4, 3), (5, 2), (6, 2), (6, 3), (7, 1), (8, 3)];
    for (p, m) in [(2u64, 2u32), (2, 3), (3, 2), (3, 3)] {
        let tower = FieldTower::new(p, 1, m).expect("battery tower");
        for &(n, k) in &shapes {
            let code = LinearCode::random(tower.clone(), n, k, &mut rng).expect("random code");
            codes.push((format!("random q={p} m={m} n={n} k={k}"), code));
        }
        codes.push((
            format!("repetition q={p} m={m}"),
            LinearCode::repetition(tower.clone(), m as usize).expect("repetition"),
        ));
        let rep = LinearCode::repetition(tower.clone(), m as usize).expect("repetition");
        codes.push((
            format!("repetition-sum q={p} m={m}"),
            rep.sum_code(&rep).expect("sum"),
        ));
        let n = (2 * m as usize).min(tower.qm() as usize);
        let support = sample_support(&tower, n, &mut rng).expect("support");
        let multiplier = sample_multiplier(&tower, n, &mut rng).expect("multiplier");
        codes.push((
            format!("grs q={p} m={m} n={n} k=2"),
            LinearCode::generalized_reed_solomon(tower.clone(), 2, &support, &multiplier)
                .expect("grs"),
        ));
    }
    let t = FieldTower::new(2, 1, 3).expect("tower");
    let support = Support::canonical(&t, 6).expect("support");
    codes.push((
        "counterexample q=2 m=3 k=2".into(),
        LinearCode::counterexample(t, 2, &support).expect("counterexample"),
    ));
    codes
}

/// Towers used by the battery, for tests that sweep fields directly.
pub fn battery_towers() -> Vec<Arc<FieldTower>> {
    [(2u64, 2u32), (2, 3), (3, 2), (3, 3)]
        .iter()
        .map(|&(p, m)| FieldTower::new(p, 1, m).expect("battery tower"))
        .collect()
}
