//! Expected-loss analysis: value functions, exact loss polynomials, decoder
//! differences, sign analysis, Bayes decoders and table-matching search.

mod expected;
mod gtable;
mod poly;
mod search;
mod sign;
mod ttable;
mod value;

pub use expected::{
    bayes_decoder, conditional_loss, error_probability, expected_loss_exact,
    expected_loss_from_table, expected_loss_poly, p_of_s, s_of_p, z_of_p,
};
pub use gtable::{expected_total, g_table, sum_invariant_violations, GTable, InvariantViolation};
pub use poly::{LossPolynomial, RealPolynomial};
pub use search::{
    decoder_match_search, poset_bayes_search, MatchOutcome, MatchReport, PosetRanking,
    RankedPoset, SearchBudget,
};
pub use sign::{sign_profile, RootBracket, Sign, SignEval, SignInterval, SignProfile};
pub use ttable::{opposite_sign_witness, t_table, TTable, Witness, WitnessMode};
pub use value::ValueFunction;
