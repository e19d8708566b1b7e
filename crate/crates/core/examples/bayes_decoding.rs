//! Bayes decoders for a value function, and ranking nearest-neighbour decoders
//! of several posets by expected loss.
//!
//! ```text
//! cargo run --release --example bayes_decoding
//! ```

use posetloss::codes::gray_level_values;
use posetloss::decoders::nn_decoder;
use posetloss::fixtures;
use posetloss::loss::{bayes_decoder, expected_loss_exact, poset_bayes_search, s_of_p};
use posetloss::{Metric, Poset, Result, TieBreak, ValueFunction};

fn main() -> Result<()> {
    let code = fixtures::gray_code();
    let mu = ValueFunction::new(&code, gray_level_values())?;
    let hamming = nn_decoder(&code, &Metric::Hamming, &TieBreak::Canonical)?;
    println!("{:>5} {:>10} {:>10}", "p", "hamming", "bayes");
    for p in [0.05, 0.15, 0.25, 0.35, 0.45] {
        let bayes = bayes_decoder(&code, &mu, p)?;
        println!(
            "{p:>5} {:>10.5} {:>10.5}",
            expected_loss_exact(&hamming, &mu, p)?,
            expected_loss_exact(&bayes, &mu, p)?
        );
    }

    let posets = vec![
        Poset::antichain(7)?,
        Poset::chain(7)?,
        Poset::nrt(1, 7)?.dual(),
        Poset::hierarchical(&[3, 4])?,
    ];
    for p in [0.1, 0.35] {
        let ranking = poset_bayes_search(&code, &posets, &mu, s_of_p(p, 2))?;
        let order: Vec<String> = ranking
            .ranking
            .iter()
            .map(|r| format!("#{} ({:.3})", r.index, r.value))
            .collect();
        println!("p = {p}: posets ranked {}", order.join(", "));
    }
    Ok(())
}
