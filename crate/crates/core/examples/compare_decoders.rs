//! Two decoders of a [5;2] code: their G tables, the difference table, and a
//! pair of codewords whose entries have opposite signs for every s.
//!
//! ```text
//! cargo run --example compare_decoders
//! ```

use posetloss::decoders::nn_decoder;
use posetloss::fixtures;
use posetloss::loss::{g_table, opposite_sign_witness, sign_profile, t_table, WitnessMode};
use posetloss::{Metric, Poset, Result, TieBreak, ValueFunction};

fn main() -> Result<()> {
    let code = fixtures::five_bit_code();
    let h = nn_decoder(&code, &Metric::Hamming, &TieBreak::Canonical)?;
    let p = nn_decoder(&code, &Metric::Poset(Poset::chain(5)?), &TieBreak::Canonical)?;
    let (gh, gp) = (g_table(&h)?, g_table(&p)?);
    let t = t_table(&gh, &gp)?;
    for c in 0..code.len() {
        println!(
            "{}  G_H = {:<22} G_P = {:<22} T = {} ({:?})",
            code.codeword(c),
            gh.entry(c).to_string(),
            gp.entry(c).to_string(),
            t.entry(c),
            sign_profile(t.entry(c)).uniform_sign()
        );
    }
    match opposite_sign_witness(&t, WitnessMode::Everywhere) {
        Some(w) => println!(
            "\nvalue functions favouring either decoder exist: T({}) < 0 < T({})",
            code.codeword(w.negative),
            code.codeword(w.positive)
        ),
        None => println!("\nno codeword pair with opposite signs on all of (0, 1)"),
    }

    // Positive membership means the chain decoder has the smaller loss.
    for values in [vec![0.0, 1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0, 1.0]] {
        let mu = ValueFunction::new(&code, values.clone())?;
        println!("μ = {values:?}: Σ T(c) μ(c) at s = 0.3 is {:+.4}", t.membership(&mu, 0.3)?);
    }
    Ok(())
}
