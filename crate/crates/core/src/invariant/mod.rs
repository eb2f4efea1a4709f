//! Formal cup-product algebra, pairings on the center, the answer table and
//! the mechanical computation of the restricted invariant.

mod composition;
mod cup;
mod pairing;
mod theorem;

pub use composition::{
    restriction_composition, restriction_composition_of, tits_expression, torsor_symbols,
    BrauerBasis, ComponentImage, Composition,
};
pub use cup::{render_brauer, BrauerSymbol, FormalCupExpression, Relations, TorsorSymbol};
pub use pairing::{
    classify_f2_form, congruent, cup_pairing, gl2_f2, F2Matrix, FormClass, PairingKind, PairingSpec,
};
pub use theorem::{center_order, theorem_verdict, Subgroup, TheoremVerdict};
