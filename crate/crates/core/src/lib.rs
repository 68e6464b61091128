//! Expansions of real numbers over tuples of bases.
//!
//! A tuple of bases `(β_0, …, β_m)`, each greater than 1, assigns one base
//! per digit of the alphabet `{0, …, m}`. A digit stream `w` represents the
//! value obtained by scaling each digit by the product of the bases chosen
//! by the digits before it:
//!
//! ```text
//! x  =  w_1/β_{w_1}  +  w_2/(β_{w_1}·β_{w_2})  +  w_3/(β_{w_1}·β_{w_2}·β_{w_3})  +  …
//! ```
//!
//! Every `x` in `[0, U]` (with `U = m/(β_m − 1)`) has at least one such
//! expansion, and typically many. This crate computes the distinguished
//! ones (greedy, quasi-greedy, lazy, quasi-lazy), decides which property a
//! given stream has, classifies streams against lexicographic frontier
//! conditions, and enumerates all expansions of a value to a chosen depth.
//!
//! # Modules
//!
//! * [`numerics`] — exact rational and tolerance-aware float scalars.
//! * [`bases`] — base tuples, digit marks, admissibility, frontier
//!   constants.
//! * [`words`] — finite and eventually periodic digit words, projection,
//!   lexicographic order.
//! * [`transforms`] — the expansion transformations and their orbits.
//! * [`criteria`] — per-stream property checks and frontier
//!   classifications.
//! * [`enumerate`] — the tree of all expansions and uniqueness tests.
//!
//! # Example
//!
//! ```
//! use multibeta::{BaseTuple, Mode, Policy, Scalar, Transform};
//!
//! let mode = Mode::Exact;
//! let bases = BaseTuple::parse_list("2,3/2", &mode)?;
//! let x = Scalar::parse("1", &mode)?;
//! let greedy = Transform::canonical(&bases, Policy::Greedy)?;
//! let expansion = greedy.expand(&x, 64)?;
//! // The greedy digits of 1 alternate: (10)^∞.
//! assert_eq!(expansion.as_periodic().unwrap().to_string(), "(10)");
//! # Ok::<(), multibeta::Error>(())
//! ```

pub mod bases;
pub mod criteria;
pub mod enumerate;
pub mod error;
pub mod numerics;
pub mod transforms;
pub mod words;

pub use bases::{BaseTuple, Frontier, Marks, MonotoneOrder, Validation, Violation, ViolationKind};
pub use criteria::{
    classify_frontier, classify_monotone, classify_two_base, entry_indices, is_greedy, is_lazy,
    is_quasi_greedy, is_quasi_lazy, quasi_from_greedy, reflect_greedy, reflect_quasi,
    ConditionRole, EntryIndices, FrontierReport, MonotoneReport, ReflectionPair, TwoBaseReport,
    Verdict,
};
pub use enumerate::{
    admissible_digits, enumerate_expansions, enumerate_expansions_with_budget,
    is_unique_expansion, ExpansionTree, TreeNode, Uniqueness, DEFAULT_NODE_BUDGET,
};
pub use error::{Error, Result};
pub use numerics::{Cmp, Mode, Scalar, DEFAULT_EPSILON, FLOAT_PRECISION_BITS};
pub use transforms::{
    Branch, Expansion, IntervalShape, Orbit, PlotSeries, Policy, Transform,
};
pub use words::{parse_word_literal, EpWord, Parsed, Word};
