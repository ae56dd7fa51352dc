//! Character tables, the dual action on irreducible characters, and
//! twisted class functions.

mod cyclotomic;
mod dual;
mod rep;
mod table;

pub use cyclotomic::{cyclotomic_polynomial, CyclotomicRing};
pub use dual::{DualMap, RtZeta, Subsystem, TbftReport, TbftRow};
pub use rep::{
    parse_complex, parse_rep, tbft_basis_check, twisted_class_function, BasisReport, RepData, Representation,
    TwistedClassFunction, MAX_REP_DIM, TOLERANCE, TRACE_TOLERANCE,
};
pub use table::{
    compute_character_table, compute_character_table_with_cap, CharacterTable, Multiplicities, PRIME_SEARCH_CAP,
};
