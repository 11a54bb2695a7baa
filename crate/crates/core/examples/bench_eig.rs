use fegraph::{FieldCtx, QuadraticForm, DistanceGraph};
use std::sync::Arc;
use std::time::Instant;

fn main() {
    for q in [25u64, 31] {
        let ctx = Arc::new(FieldCtx::new(q).unwrap());
        let form = QuadraticForm::euclidean(&ctx);
        let a = ctx.from_index(1);
        let t0 = Instant::now();
        let g = DistanceGraph::build(Arc::clone(&ctx), form, a).unwrap();
        let t1 = Instant::now();
        let dense = g.spectrum_dense().unwrap();
        let t2 = Instant::now();
        let chars = g.spectrum_characters();
        let t3 = Instant::now();
        println!("q={q} n={} build={:?} dense={:?} chars={:?} agree={}",
            g.n(), t1-t0, t2-t1, t3-t2,
            dense.agrees_with(&chars, 1e-6));
    }
}
