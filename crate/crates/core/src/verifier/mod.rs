//! Exhaustive verification of the axioms and derived theorems.
//!
//! Every quantified statement is checked on all instances built from sets of
//! bounded size over a fixed atom pool. Uniqueness clauses are checked by
//! counting: each candidate mediator is enumerated and tested, and a check
//! passes only when exactly one satisfies the defining equations.
//!
//! Passing means "holds at the tested sizes", nothing more. Axiom A9 cannot
//! be fully checked in a finite model and is reported as prefix-verified.

mod checks;
mod kernel;
pub mod oracle;
mod report;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::nno::DEFAULT_BOUND;

pub use kernel::{Kernel, Mutation};
pub use report::{Report, Stats, Verdict, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
    A9,
    A10,
    /// A set is terminal iff it has exactly one element.
    TerminalOne,
    /// The classifier has exactly two elements.
    ClassifierTwo,
    /// Axiomatic and tagged disjoint unions are uniquely isomorphic.
    Coproduct,
    /// Quotient partitions agree with a union-find oracle.
    Quotient,
    /// Indexed products agree with the brute-force fibre product.
    IndexedProduct,
    /// Sections choose the least preimage.
    LeastChoice,
    /// The image is the least subset a function factors through.
    Image,
    /// The truncated integers have the expected classes.
    Integers,
}

impl CheckId {
    pub const AXIOMS: [CheckId; 10] = [
        CheckId::A1,
        CheckId::A2,
        CheckId::A3,
        CheckId::A4,
        CheckId::A5,
        CheckId::A6,
        CheckId::A7,
        CheckId::A8,
        CheckId::A9,
        CheckId::A10,
    ];

    pub const ALL: [CheckId; 18] = [
        CheckId::A1,
        CheckId::A2,
        CheckId::A3,
        CheckId::A4,
        CheckId::A5,
        CheckId::A6,
        CheckId::A7,
        CheckId::A8,
        CheckId::A9,
        CheckId::A10,
        CheckId::TerminalOne,
        CheckId::ClassifierTwo,
        CheckId::Coproduct,
        CheckId::Quotient,
        CheckId::IndexedProduct,
        CheckId::LeastChoice,
        CheckId::Image,
        CheckId::Integers,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CheckId::A1 => "A1",
            CheckId::A2 => "A2",
            CheckId::A3 => "A3",
            CheckId::A4 => "A4",
            CheckId::A5 => "A5",
            CheckId::A6 => "A6",
            CheckId::A7 => "A7",
            CheckId::A8 => "A8",
            CheckId::A9 => "A9",
            CheckId::A10 => "A10",
            CheckId::TerminalOne => "terminal_one",
            CheckId::ClassifierTwo => "classifier_two",
            CheckId::Coproduct => "coproduct",
            CheckId::Quotient => "quotient",
            CheckId::IndexedProduct => "indexed_product",
            CheckId::LeastChoice => "least_choice",
            CheckId::Image => "image",
            CheckId::Integers => "integers",
        }
    }

    fn cap(&self, cfg: &Config) -> usize {
        match self {
            CheckId::A6 | CheckId::Coproduct => cfg.exp_size_cap,
            CheckId::Quotient => cfg.quotient_cap,
            _ => cfg.size_cap,
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<CheckId> {
        CheckId::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Largest base-set size enumerated exhaustively.
    pub size_cap: usize,
    /// The same for checks that enumerate function sets.
    pub exp_size_cap: usize,
    /// The same for the quotient check, which enumerates all relations.
    pub quotient_cap: usize,
    /// Work ceiling: instances plus enumerated candidates per check.
    pub ceiling: u64,
    pub nat_bound: u64,
    /// Enables sampling above the exhaustive caps.
    pub seed: Option<u64>,
    /// Sampling rounds per check when a seed is set.
    pub sample_rounds: usize,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            size_cap: 3,
            exp_size_cap: 2,
            quotient_cap: 4,
            ceiling: 50_000_000,
            nat_bound: DEFAULT_BOUND,
            seed: None,
            sample_rounds: 8,
        }
    }
}

/// Checks one axiom or derived theorem on all instances up to `size_limit`
/// (clamped to the check's cap).
pub fn check_axiom(id: CheckId, size_limit: usize, cfg: &Config) -> Result<Report> {
    run_check(id, size_limit, cfg, Kernel::canonical())
}

/// One report per axiom and per derived theorem, in a fixed order.
/// Independent checks run in parallel; a budget overrun affects only its entry.
pub fn check_all(size_limit: usize, cfg: &Config) -> Vec<Result<Report>> {
    check_all_with(size_limit, cfg, None)
}

/// As [`check_all`], with `mutation` injected into the checks it targets.
pub fn check_all_with(size_limit: usize, cfg: &Config, mutation: Option<Mutation>) -> Vec<Result<Report>> {
    CheckId::ALL
        .par_iter()
        .map(|&id| {
            let kernel = match mutation {
                Some(m) if m.targets().contains(&id) => Kernel::mutated(m),
                _ => Kernel::canonical(),
            };
            run_check(id, size_limit, cfg, kernel)
        })
        .collect()
}

/// Runs `mutation` against its construction and reports on the corresponding axiom.
pub fn mutate_and_check(construction: &str, mutation: Mutation, size_limit: usize, cfg: &Config) -> Result<Report> {
    if mutation.construction() != construction {
        return Err(Error::InapplicableMutation {
            mutation: mutation.name().to_string(),
            construction: construction.to_string(),
        });
    }
    run_check(mutation.targets()[0], size_limit, cfg, Kernel::mutated(mutation))
}

/// Runs `id` with an explicit kernel.
pub fn run_check(id: CheckId, size_limit: usize, cfg: &Config, kernel: Kernel) -> Result<Report> {
    let start = Instant::now();
    let cap = id.cap(cfg);
    let limit = size_limit.min(cap);
    let mut ctx = checks::Ctx::new(cfg, kernel, limit);
    let mut witness = checks::dispatch(id, &mut ctx)?;
    let mut instance = checks::describe(id, limit);
    if size_limit > cap {
        match cfg.seed {
            Some(seed) => {
                ctx.start_sampling(size_limit, seed ^ (id as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
                for _ in 0..cfg.sample_rounds {
                    if witness.is_some() {
                        break;
                    }
                    witness = checks::dispatch(id, &mut ctx)?;
                }
                ctx.stop_sampling();
                instance.push_str(&format!("; sampled up to size {size_limit} (seed {seed})"));
            }
            None => instance.push_str(&format!("; capped from size {size_limit}")),
        }
    }
    if let Some(m) = kernel.mutation() {
        instance.push_str(&format!("; mutation {m}"));
    }
    let verdict = match (&witness, id) {
        (Some(_), _) => Verdict::Fail,
        (None, CheckId::A9) => Verdict::PrefixVerified,
        (None, _) => Verdict::Pass,
    };
    let mut stats = ctx.stats();
    stats.elapsed = start.elapsed();
    Ok(Report { axiom_id: id.name().to_string(), instance, verdict, witness, stats })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in CheckId::ALL {
            assert_eq!(id.name().parse::<CheckId>().unwrap(), id);
        }
        assert!("A11".parse::<CheckId>().is_err());
    }

    #[test]
    fn size_one_suite_passes() {
        for r in check_all(1, &Config::default()) {
            let r = r.unwrap();
            assert!(!r.failed(), "{} failed: {:?}", r.axiom_id, r.witness);
        }
    }

    #[test]
    fn a9_is_never_plain_pass() {
        let r = check_axiom(CheckId::A9, 2, &Config::default()).unwrap();
        assert_eq!(r.verdict, Verdict::PrefixVerified);
    }

    #[test]
    fn budget_overrun_is_reported() {
        let cfg = Config { ceiling: 1_000, ..Config::default() };
        match check_axiom(CheckId::A5, 3, &cfg) {
            Err(Error::BudgetExceeded { count, ceiling }) => {
                assert_eq!(ceiling, 1_000);
                assert!(count > 1_000);
            }
            other => panic!("expected a budget error, got {other:?}"),
        }
        // other entries of the suite are unaffected
        let all = check_all(3, &cfg);
        assert!(all.iter().any(|r| r.is_ok()));
        assert!(all.iter().any(|r| r.is_err()));
    }

    #[test]
    fn inapplicable_mutation() {
        let err = mutate_and_check("product", Mutation::BreakCurry, 2, &Config::default()).unwrap_err();
        assert!(matches!(err, Error::InapplicableMutation { .. }));
    }

    #[test]
    fn swap_projection_names_two_mediators() {
        let r = mutate_and_check("product", Mutation::SwapProjection, 2, &Config::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        match r.witness {
            Some(Witness::Mediators { count, ref mediators, .. }) => {
                assert!(count >= 2);
                assert_eq!(mediators.len(), 2);
            }
            ref w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn non_least_choice_keeps_a10() {
        let r = mutate_and_check("choice", Mutation::NonLeastChoice, 3, &Config::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn sampling_above_cap_is_deterministic() {
        let cfg = Config { seed: Some(7), sample_rounds: 2, ..Config::default() };
        let a = check_axiom(CheckId::A6, 3, &cfg).unwrap();
        let b = check_axiom(CheckId::A6, 3, &cfg).unwrap();
        assert_eq!(a.verdict, Verdict::Pass);
        assert!(a.stats.sampled > 0);
        assert_eq!((a.stats.instances, a.stats.sampled, a.stats.candidates), (b.stats.instances, b.stats.sampled, b.stats.candidates));
        assert!(a.instance.contains("seed 7"));
    }
}
