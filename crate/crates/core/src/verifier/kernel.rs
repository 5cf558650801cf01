//! The constructions under test, with optional deliberate corruption.

use std::fmt;
use std::str::FromStr;

use crate::category::{FnMor, SetObj};
use crate::error::{Error, Result};
use crate::universal::{self, ClassifierObj, FunctionSetObj, InverseImageCone, ProductCone};
use crate::value::Value;
use crate::verifier::CheckId;

/// Negative controls: each one corrupts a single construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mutation {
    /// Exchange the first projection's values at `(x0, y0)` and `(x1, y1)`.
    SwapProjection,
    /// Drop the greatest element of every nonempty fibre.
    DropFibreElement,
    /// Change the evaluation map at `(g0, x0)` to the next value of `Y`.
    BreakCurry,
    /// Classify into `{(), #f, #t}` with truth `#t`.
    WrongTruthElement,
    /// Sections choose the greatest preimage instead of the least.
    NonLeastChoice,
}

impl Mutation {
    pub const ALL: [Mutation; 5] = [
        Mutation::SwapProjection,
        Mutation::DropFibreElement,
        Mutation::BreakCurry,
        Mutation::WrongTruthElement,
        Mutation::NonLeastChoice,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Mutation::SwapProjection => "swap_projection",
            Mutation::DropFibreElement => "drop_fibre_element",
            Mutation::BreakCurry => "break_curry",
            Mutation::WrongTruthElement => "wrong_truth_element",
            Mutation::NonLeastChoice => "non_least_choice",
        }
    }

    /// The construction this mutation corrupts, named as in scripts.
    pub fn construction(&self) -> &'static str {
        match self {
            Mutation::SwapProjection => "product",
            Mutation::DropFibreElement => "fibre",
            Mutation::BreakCurry => "funcset",
            Mutation::WrongTruthElement => "classify",
            Mutation::NonLeastChoice => "choice",
        }
    }

    /// Checks that exercise the corrupted construction. The first is the axiom.
    pub fn targets(&self) -> &'static [CheckId] {
        match self {
            Mutation::SwapProjection => &[CheckId::A5],
            Mutation::DropFibreElement => &[CheckId::A7],
            Mutation::BreakCurry => &[CheckId::A6],
            Mutation::WrongTruthElement => &[CheckId::A8],
            Mutation::NonLeastChoice => &[CheckId::A10, CheckId::LeastChoice],
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mutation> {
        Mutation::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InapplicableMutation { mutation: s.to_string(), construction: "any".into() })
    }
}

/// Source of the constructions a check inspects.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Kernel {
    mutation: Option<Mutation>,
}

impl Kernel {
    pub fn canonical() -> Kernel {
        Kernel { mutation: None }
    }

    pub fn mutated(m: Mutation) -> Kernel {
        Kernel { mutation: Some(m) }
    }

    pub fn mutation(&self) -> Option<Mutation> {
        self.mutation
    }

    pub fn is_canonical(&self) -> bool {
        self.mutation.is_none()
    }

    pub fn product(&self, x: &SetObj, y: &SetObj) -> ProductCone {
        let cone = universal::product(x, y);
        if self.mutation != Some(Mutation::SwapProjection) || x.len() < 2 || y.len() < 2 {
            return cone;
        }
        let mut t1 = cone.pr1().table().to_vec();
        t1.swap(0, y.len() + 1);
        let pr1 = FnMor::from_table(cone.obj().clone(), x.clone(), t1).expect("values stay in X");
        ProductCone::new(cone.obj().clone(), pr1, cone.pr2().clone()).expect("same boundaries")
    }

    pub fn function_set(&self, x: &SetObj, y: &SetObj) -> FunctionSetObj {
        let fs = universal::function_set(x, y);
        if self.mutation != Some(Mutation::BreakCurry) || x.is_empty() || y.len() < 2 {
            return fs;
        }
        let mut table = fs.ev().table().to_vec();
        let k = y.index_of(&table[0]).expect("value in Y");
        table[0] = y.values()[(k + 1) % y.len()].clone();
        let ev = FnMor::from_table(fs.ev().dom().clone(), y.clone(), table).expect("values stay in Y");
        FunctionSetObj::new(fs.obj().clone(), ev, x.clone(), y.clone()).expect("same shape")
    }

    pub fn inverse_image(&self, f: &FnMor, y: &Value) -> Result<InverseImageCone> {
        let cone = universal::inverse_image_at(f, y)?;
        if self.mutation != Some(Mutation::DropFibreElement) || cone.obj().is_empty() {
            return Ok(cone);
        }
        let kept = &cone.obj().values()[..cone.obj().len() - 1];
        let obj = SetObj::new(kept.iter().cloned());
        let incl = FnMor::from_table(obj.clone(), f.dom().clone(), kept.to_vec())?;
        InverseImageCone::new(obj, incl, f.clone(), y.clone())
    }

    pub fn classifier(&self) -> ClassifierObj {
        if self.mutation != Some(Mutation::WrongTruthElement) {
            return universal::classifier();
        }
        let two = SetObj::new([Value::Unit, Value::Bool(false), Value::Bool(true)]);
        let truth = crate::category::element(&two, &Value::Bool(true)).expect("truth is present");
        ClassifierObj::new(two, truth).expect("truth is an element")
    }

    pub fn right_inverse(&self, s: &FnMor) -> Result<FnMor> {
        if self.mutation == Some(Mutation::NonLeastChoice) {
            universal::right_inverse_greatest(s)
        } else {
            universal::right_inverse(s)
        }
    }
}
