//! Verification campaigns over small game universes.

pub mod classify;
pub mod examples;
pub mod ideals;
pub mod lemmas;
pub mod probe;
pub mod regularity;
pub mod report;
pub mod ring;

pub use classify::{classify, ClassReport};
pub use examples::example_suite;
pub use ideals::ideal_experiments;
pub use lemmas::{lemma_suite, LemmaConfig};
pub use probe::open_problem_probe;
pub use regularity::{class_swap_check, option_regularity_scan};
pub use report::{Failure, Suite, SuiteReport};
pub use ring::{check_ring_axioms, RingConfig};
