//! Bijections between Cartesian forests, Schröder trees and parentheses
//! words, plus enumeration and counting of forests by node count.

pub mod counting;
pub mod enumerate;
pub mod parens;
pub mod schroder;

pub use counting::{closed_formula, count_forests, growth_ratio, series_coefficients, ForestCount};
pub use enumerate::{enumerate_forests, for_each_forest_word, MAX_ENUMERATION};
pub use parens::{cf_to_parens, parens_to_cf, ParenWord};
pub use schroder::{cf_to_schroder, schroder_to_cf, SchroderTree};
