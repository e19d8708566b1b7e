//! Distances under chain, NRT and hierarchical posets compared with Hamming.
//!
//! ```text
//! cargo run --example poset_metrics
//! ```

use posetloss::{Alphabet, Coords, Poset, Result, Word};

fn main() -> Result<()> {
    let b = Alphabet::binary();
    let x = Word::parse(b, "0100")?;
    let y = Word::parse(b, "0001")?;
    let posets = [
        ("antichain", Poset::antichain(4)?),
        ("chain", Poset::chain(4)?),
        ("nrt 2x2", Poset::nrt(2, 2)?),
        ("hierarchy 1,3", Poset::hierarchical(&[1, 3])?),
    ];
    println!("d({x}, {y}); Hamming distance {}", x.hamming_distance(&y)?);
    for (name, p) in &posets {
        // The distance counts every coordinate below a differing one.
        let support = x.difference_support(&y)?;
        println!(
            "{name:>14}: distance {}, ideal of the support {}",
            p.distance(&x, &y)?,
            p.ideal_of(support)?
        );
    }

    let chain = Poset::chain(5)?;
    let d = chain.first_decomposition().expect("a chain of length 5 decomposes");
    println!("\nchain(5) splits around I = {}, J = {}: I+ = {}, I- = {}", d.i, d.j, d.i_plus, d.i_minus);
    let i = Coords::from_indices(5, [2, 3, 4, 5])?;
    println!("filter generated by {{2}}: {}", chain.filter_of(Coords::singleton(2))?);
    println!("{{2,3,4,5}} is a filter: {}", chain.is_filter(i));
    Ok(())
}
