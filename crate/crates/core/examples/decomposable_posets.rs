//! Decoder pairs on codes built from a decomposable poset, where the loss
//! difference has a closed form.
//!
//! ```text
//! cargo run --example decomposable_posets
//! ```

use posetloss::decoders::decomposable_pair;
use posetloss::loss::{g_table, t_table};
use posetloss::{Alphabet, Poset, Result, TTable, Word};

fn main() -> Result<()> {
    let b = Alphabet::binary();
    for (name, poset) in [("chain(5)", Poset::chain(5)?), ("nrt 2x4", Poset::nrt(2, 4)?)] {
        let d = poset.first_decomposition().expect("both posets decompose");
        let n = poset.len();
        let c_tilde = Word::unit(b, n, d.i_minus.iter().next().expect("I- is nonempty"))?;
        let pair = decomposable_pair(&poset, None, d.i, d.j, &Word::zero(b, n), &c_tilde)?;
        let t = t_table(&g_table(&pair.reference)?, &g_table(&pair.poset)?)?;
        let closed = TTable::from_entries(pair.code.clone(), pair.closed_form())?;
        println!("{name}: I = {}, J = {}, ỹ = {}", d.i, d.j, pair.y_tilde);
        for c in 0..pair.code.len() {
            println!("  {}  T = {}", pair.code.codeword(c), t.entry(c));
        }
        println!("  closed form agrees: {}\n", closed == t);
    }
    Ok(())
}
