//! Moving a small ball of one decision region to another on a Gaussian
//! constellation, and the two loss terms it changes.
//!
//! ```text
//! cargo run --release --example constellation_donation
//! ```

use std::sync::Arc;

use posetloss::constellation::{donation_demo, exact_interval_donation, g_estimates, voronoi_decoder, Constellation};
use posetloss::Result;

fn main() -> Result<()> {
    let line = Arc::new(Constellation::new(vec![vec![-1.0], vec![1.0]], 1.0)?);
    let base = voronoi_decoder(&line);
    for (tau, est) in g_estimates(&base, 200_000, 1)? {
        println!("G({tau:?}) ≈ {:.5} ± {:.5}", est.value, est.stderr);
    }
    // Give (0.2, 0.4) from the region of +1 to the region of -1.
    let demo = donation_demo(&base, 0, 1, vec![0.3], 0.1, 1_000_000, 1)?;
    let (forward, backward) = exact_interval_donation(&line, 0, 1, 0.2, 0.4)?;
    println!(
        "T(τ)  = {:.5} in [{:.5}, {:.5}], exact {forward:.5}",
        demo.forward.estimate, demo.forward.lo, demo.forward.hi
    );
    println!(
        "T(-τ) = {:.5} in [{:.5}, {:.5}], exact {backward:.5}",
        demo.backward.estimate, demo.backward.lo, demo.backward.hi
    );
    println!("signs confirmed: {}", demo.confirms_signs());

    // In the plane; the difference between the two signals must be unique.
    let triangle = Arc::new(Constellation::new(
        vec![vec![0.0, 0.0], vec![2.0, 0.0], vec![1.0, 1.8]],
        0.8,
    )?);
    let demo = donation_demo(&voronoi_decoder(&triangle), 0, 1, vec![1.3, 0.0], 0.2, 1_000_000, 2)?;
    println!(
        "triangle: T(τ) = {:.5} ± {:.5}, T(-τ) = {:.5} ± {:.5}",
        demo.forward.estimate, demo.forward.stderr, demo.backward.estimate, demo.backward.stderr
    );
    Ok(())
}
