pub mod arith;
pub mod corpus;
pub mod divisors;
pub mod error;
pub mod expr;
pub mod integrality;
pub mod poly;
pub mod projective;
pub mod ratmap;
pub mod report;
pub mod search;

pub use arith::{PlaceSet, Rational};
pub use error::{Error, Result};
pub use expr::parse_map_expression;
pub use projective::{ChordalValue, Place, ProjPoint};
pub use ratmap::{Mobius, RatMap};
pub use search::{PairReport, PairWindow, SearchOptions};
