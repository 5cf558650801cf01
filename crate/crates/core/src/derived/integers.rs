use crate::category::{FnMor, SetObj};
use crate::derived::quotient::{quotient, EquivRelation, Quotient};
use crate::derived::subset::Subset;
use crate::error::Result;
use crate::nno::{adder, NatSystem};
use crate::universal::{classifier, product};
use crate::value::Value;

/// The integers as pairs of naturals modulo `(m, n) ∼ (m', n')` iff `m + n' = m' + n`,
/// truncated to `m, n ≤ bound`.
#[derive(Clone, Debug)]
pub struct Integers {
    bound: u64,
    relation: EquivRelation,
    quotient: Quotient,
}

impl Integers {
    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// `{0..=bound}²` as `(#m, #n)` pairs.
    pub fn pairs(&self) -> &SetObj {
        self.relation.carrier()
    }

    pub fn relation(&self) -> &EquivRelation {
        &self.relation
    }

    pub fn obj(&self) -> &SetObj {
        self.quotient.obj()
    }

    pub fn proj(&self) -> &FnMor {
        self.quotient.proj()
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    pub fn class_of(&self, m: u64, n: u64) -> Option<&Value> {
        self.proj().apply(&Value::pair(Value::Nat(m), Value::Nat(n)))
    }

    pub fn same_class(&self, (m, n): (u64, u64), (m2, n2): (u64, u64)) -> bool {
        match (self.class_of(m, n), self.class_of(m2, n2)) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }

    /// `m − n` for any representative of the class.
    pub fn difference(&self, class: &Value) -> Option<i64> {
        self.proj().pairs().find(|(_, c)| *c == class).map(|(p, _)| {
            let (m, n) = p.as_pair().expect("pair");
            m.as_nat().expect("nat") as i64 - n.as_nat().expect("nat") as i64
        })
    }
}

/// Builds the truncated integers. Sums are computed with recursion-defined addition.
pub fn build_integers(bound: u64) -> Result<Integers> {
    let bound = bound.max(1);
    let sys = NatSystem::new(2 * bound + 1);
    let naturals = SetObj::from_sorted((0..=bound).map(Value::Nat).collect());
    let pairs = product(&naturals, &naturals).obj().clone();
    let adders = (0..=bound).map(|m| adder(&sys, m)).collect::<Result<Vec<_>>>()?;
    let sum = |m: &Value, n: &Value| -> Result<Value> {
        adders[m.as_nat().expect("nat") as usize].value_at(n.as_nat().expect("nat"))
    };

    let square = product(&pairs, &pairs);
    let table = square
        .obj()
        .values()
        .iter()
        .map(|p| {
            let (l, r) = p.as_pair().expect("pair");
            let (m, n) = l.as_pair().expect("pair");
            let (m2, n2) = r.as_pair().expect("pair");
            Ok(Value::Bool(sum(m, n2)? == sum(m2, n)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let chi = FnMor::from_table(square.obj().clone(), classifier().two().clone(), table)?;
    let relation = EquivRelation::new(pairs, Subset::from_chi(chi)?)?;
    let quotient = quotient(&relation)?;
    Ok(Integers { bound, relation, quotient })
}
