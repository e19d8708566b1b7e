//! Sampled expected loss over the binary symmetric channel, against the exact
//! value, and a paired comparison of two decoders on the same transmissions.
//!
//! ```text
//! cargo run --release --example channel_simulation
//! ```

use posetloss::channel::{monte_carlo_loss, paired_loss_difference, ChannelSpec, ImageCodebook};
use posetloss::decoders::nn_decoder;
use posetloss::loss::expected_loss_exact;
use posetloss::{Alphabet, Metric, Poset, Result, TieBreak};

fn main() -> Result<()> {
    let (code, book) = ImageCodebook::gray_levels();
    let mu = book.values(&code)?;
    let hamming = nn_decoder(&code, &Metric::Hamming, &TieBreak::Canonical)?;
    let chain = nn_decoder(&code, &Metric::Poset(Poset::chain(7)?), &TieBreak::Canonical)?;
    for p in [0.05, 0.2, 0.35] {
        let channel = ChannelSpec::new(Alphabet::binary(), p, 2024)?;
        let stats = monte_carlo_loss(&hamming, &mu, &channel, 200_000)?;
        println!(
            "p = {p}: sampled {:.5} ± {:.5}, exact {:.5}, {:.1}% decoded correctly",
            stats.mean,
            stats.stderr,
            expected_loss_exact(&hamming, &mu, p)?,
            100.0 * stats.fraction_correct()
        );
        let paired = paired_loss_difference(&chain, &hamming, &mu, &channel, 200_000)?;
        println!(
            "        chain - hamming: {:+.5} ± {:.5} (z = {:+.1})",
            paired.mean_difference,
            paired.stderr_difference,
            paired.z_score()
        );
    }
    Ok(())
}
