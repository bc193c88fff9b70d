use std::time::Instant;

use qtoric::fixtures;
use qtoric::{CohomologyModel, MirrorEngine, QRat};

fn main() {
    let cutoff = std::env::args()
        .nth(1)
        .and_then(|s| s.parse::<i64>().ok())
        .unwrap_or(6);
    let only = std::env::args().nth(2);
    for (name, fan) in fixtures::gallery() {
        if let Some(ref want) = only {
            if name != want {
                continue;
            }
        }
        let rays = fan.rays().len();
        let model = CohomologyModel::new(fan);
        let start = Instant::now();
        let engine = MirrorEngine::new(model, QRat::from_integer(cutoff.into())).expect("engine");
        let built = start.elapsed();
        let res = engine.factors().residual(engine.frame());
        let tau_count = engine.tau().len();
        let ups_count = engine.upsilon().len();
        eprintln!(
            "{name}: build {built:?}, residual_zero={}, tau_terms={tau_count}, upsilon_terms={ups_count}",
            res.is_zero(),
        );
        let t2 = Instant::now();
        for i in 0..rays {
            let r = engine.seidel_residuals(i);
            assert!(r.is_empty(), "{name} seidel {i}");
        }
        eprintln!("  seidel check {:?}", t2.elapsed());
    }
}
