//! A kernel for the elementary theory of the category of sets, over finite sets.
//!
//! Every axiom's universal construction is an executable operation
//! ([`universal`], [`nno`]); the constructions built on them live in
//! [`derived`]; [`verifier`] checks existence *and* uniqueness clauses by
//! enumerating every candidate on small instances; [`dsl`] is the script
//! front-end used by the `etcs` binary.

pub mod category;
pub mod derived;
pub mod dsl;
pub mod error;
pub mod nno;
pub mod universal;
pub mod value;
pub mod verifier;

pub use category::{compose, elements, evaluate, fn_equal, identity, is_isomorphism, FnMor, SetObj};
pub use error::{Error, Result};
pub use value::Value;
