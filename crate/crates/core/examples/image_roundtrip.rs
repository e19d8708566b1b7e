//! Sends a synthetic gray ramp through a noisy channel one codeword per pixel
//! and writes the input and both decoded images as PGM files.
//!
//! ```text
//! cargo run --release --example image_roundtrip [output-dir]
//! ```

use std::path::PathBuf;

use image::{GrayImage, Luma};
use posetloss::channel::{image_roundtrip, write_pgm, ChannelSpec, ImageCodebook};
use posetloss::decoders::nn_decoder;
use posetloss::{Alphabet, Metric, Poset, Result, TieBreak};

fn save(dir: &std::path::Path, name: &str, image: &GrayImage) -> Result<()> {
    let path = dir.join(name);
    std::fs::write(&path, write_pgm(image)?)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn main() -> Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let input = GrayImage::from_fn(256, 64, |x, y| Luma([(x as u8).wrapping_add((y / 16) as u8 * 8)]));
    let (code, book) = ImageCodebook::gray_levels();
    let channel = ChannelSpec::new(Alphabet::binary(), 0.3, 7)?;
    save(&dir, "ramp.pgm", &input)?;
    for (name, metric) in [("hamming", Metric::Hamming), ("chain", Metric::Poset(Poset::chain(7)?))] {
        let decoder = nn_decoder(&code, &metric, &TieBreak::Canonical)?;
        let out = image_roundtrip(&input, &book, &decoder, &channel)?;
        println!(
            "{name}: mean value loss {:.4} ± {:.4}, {:.1}% of pixels keep their level",
            out.stats.mean,
            out.stats.stderr,
            100.0 * out.stats.fraction_correct()
        );
        save(&dir, &format!("ramp.{name}.pgm"), &out.image)?;
    }
    Ok(())
}
