//! Parametric families of decomposable δ-polynomials of small degree: the
//! enumeration, the bundled fixtures and their cross-check.

pub mod enumerate;
pub mod fixtures;
pub mod param;
pub mod solve;
pub mod verify;

pub use enumerate::{enumerate_families, family_key, table_number, TableEntry, TableError};
pub use fixtures::{bundled_fixtures, load_fixtures, parse_fixtures, Fixture, FixtureError};
pub use param::{parse_param_poly, ParamPolynomial, ParamScalar, Var};
pub use verify::{verify_against, verify_table, Check, EntryReport, TableReport};
