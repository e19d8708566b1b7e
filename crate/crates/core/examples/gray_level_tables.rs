//! Loss tables of the 16-level gray code: Hamming and chain nearest-neighbour
//! decoders, the value-weighted difference, and where it changes sign.
//!
//! ```text
//! cargo run --release --example gray_level_tables
//! ```

use posetloss::codes::gray_level_values;
use posetloss::decoders::nn_decoder;
use posetloss::fixtures;
use posetloss::loss::{decoder_match_search, expected_loss_poly, g_table, p_of_s, sign_profile, SearchBudget};
use posetloss::{Metric, Poset, Result, TieBreak, ValueFunction};

fn main() -> Result<()> {
    let code = fixtures::gray_code();
    let hamming = nn_decoder(&code, &Metric::Hamming, &TieBreak::Canonical)?;
    let gh = g_table(&hamming)?;
    println!("Hamming G table (depends only on the weight of τ):");
    for (label, g) in gh.entries().iter().enumerate() {
        println!("  {} {}", code.codeword(label), g);
    }

    // The chain decoder is fixed by its published table; search the tie choices.
    let chain = Metric::Poset(Poset::chain(7)?);
    let target = fixtures::gray_chain_table(&code)?;
    let report = decoder_match_search(&code, &chain, &target, SearchBudget::default())?;
    println!(
        "\nchain table search: {} ({} tied words, {} nodes)",
        report.outcome.kind(),
        report.tied_words,
        report.nodes
    );
    let Some(matched) = report.outcome.decoder() else {
        return Ok(());
    };

    let mu = ValueFunction::new(&code, gray_level_values())?;
    let diff = &expected_loss_poly(&g_table(matched)?, &mu)? - &expected_loss_poly(&gh, &mu)?;
    println!("\nE_chain - E_hamming = {diff}");
    for root in sign_profile(&diff).roots {
        let s = root.midpoint();
        println!("sign change at s = {s:.6} (p = {:.5})", p_of_s(s, 2));
    }
    Ok(())
}
