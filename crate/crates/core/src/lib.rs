//! Duquenne-Guigues basis computation for formal contexts.
//!
//! The main entry point is [`lincbo`], which enumerates the intents and
//! pseudo-intents of a [`FormalContext`] with Close-by-One and returns the
//! minimal implication basis. NextClosure-based alternatives, closure
//! procedures, generators, file formats and conceptual scaling of tabular
//! data are provided alongside.
//!
//! Attributes and objects are 0-based in the API. Text formats and
//! human-facing output use 1-based numbering.
//!
//! ```
//! use lincbo::{lincbo, FormalContext, AttributeSet};
//!
//! let rows = vec![
//!     AttributeSet::from_indices(4, [0, 1]),
//!     AttributeSet::from_indices(4, [0, 2]),
//!     AttributeSet::from_indices(4, [1, 2, 3]),
//! ];
//! let ctx = FormalContext::from_rows(4, rows).unwrap();
//! let result = lincbo(&ctx);
//! assert_eq!(result.intent_count, 8);
//! assert_eq!(result.basis.len(), 2);
//! ```

pub mod bitset;
pub mod closures;
pub mod context;
pub mod dgbasis;
pub mod enumeration;
pub mod error;
pub mod implications;
pub mod io;
pub mod oracle;
pub mod scaling;

pub use bitset::{AttributeSet, BitSet, ObjectSet};
pub use closures::{
    lin_closure, lin_closure_es, lin_closure_rc, lin_closure_traced, wild_closure, ClosureTrace,
    CounterState,
};
pub use context::{gen_contranominal, gen_random, FormalContext};
pub use dgbasis::{
    compute_basis, lincbo, lincbo1, nextclosure_basis, verify_basis, AlgorithmId, BasisObserver,
    BasisResult, BasisSummary, CheckOutcome, ClosureKind, VerificationReport,
};
pub use enumeration::{
    all_closed_subsets_naive, canonicity, cbo_closed_sets, cbo_collect, lectic_less, next_closure,
    ClosureOperator, NextClosureIter,
};
pub use error::{Error, Result};
pub use implications::{models_bruteforce, naive_closure, Implication, ImplicationRecord, Theory};
pub use io::{read_cxt, read_fimi, write_cxt};
pub use oracle::{dg_basis_bruteforce, pseudo_intents_bruteforce, tilde_closure_naive};
pub use scaling::{read_csv, remove_full_columns, scale, DataTable, ScalingMethod, ScalingSpec};
