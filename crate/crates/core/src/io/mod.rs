pub mod format;
pub mod quadratic;
pub mod registry;

pub use format::{
    parse_document, parse_hypergroup, to_canonical, write_hypergroup, CharacterAnalysis, Document,
    DualOutcome, StateDocument, StateRecord,
};
pub use quadratic::{recognize, QuadraticLiteral};
