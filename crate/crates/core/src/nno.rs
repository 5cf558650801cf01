//! A bounded natural-number system and definition by recursion.
//!
//! A finite model cannot contain a genuine natural numbers object. What this
//! module guarantees is weaker and stated exactly: on every index below the
//! bound that has been evaluated, `x(0) = a` and `x(n + 1) = r(x(n))` hold,
//! and any sequence satisfying those equations agrees with `x` there.
//! Results built on it are reported as prefix-verified, never as verified.
//!
//! Functions out of ℕ exist only as [`RecFn`]s. They are evaluated by memoized
//! iteration, so evaluating at `n` costs at most `n` steps and never recurses.

use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::category::{FnMor, SetObj};
use crate::error::{Error, Result};
use crate::value::Value;

pub const DEFAULT_BOUND: u64 = 10_000;

/// Zero and successor on the naturals `0..bound`.
#[derive(Clone)]
pub struct NatSystem {
    bound: u64,
    carrier: Arc<OnceLock<SetObj>>,
}

impl NatSystem {
    /// `bound` is clamped to at least 1.
    pub fn new(bound: u64) -> NatSystem {
        NatSystem { bound: bound.max(1), carrier: Arc::new(OnceLock::new()) }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn zero(&self) -> Value {
        Value::Nat(0)
    }

    pub fn succ(&self, n: u64) -> Result<u64> {
        self.check(n + 1)
    }

    fn check(&self, n: u64) -> Result<u64> {
        if n >= self.bound {
            Err(Error::BoundExceeded { index: n, bound: self.bound })
        } else {
            Ok(n)
        }
    }

    /// The truncation `{#0, …, #(bound-1)}` as a finite set, built on first use.
    pub fn carrier(&self) -> &SetObj {
        self.carrier.get_or_init(|| SetObj::from_sorted((0..self.bound).map(Value::Nat).collect()))
    }
}

impl Default for NatSystem {
    fn default() -> NatSystem {
        NatSystem::new(DEFAULT_BOUND)
    }
}

impl fmt::Debug for NatSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NatSystem").field("bound", &self.bound).finish()
    }
}

/// The step `r` of a recursion.
#[derive(Clone)]
pub enum Step {
    /// An endofunction of a finite set.
    Table(FnMor),
    /// The successor of the natural-number system.
    Succ,
    /// A recursively defined function `ℕ → ℕ`.
    Rec(Arc<RecFn>),
}

/// The sequence `x` determined by `x(0) = a`, `x(n + 1) = r(x(n))`.
pub struct RecFn {
    sys: NatSystem,
    target: Option<SetObj>,
    base: Value,
    step: Step,
    memo: Mutex<Vec<Value>>,
}

impl fmt::Debug for RecFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RecFn")
            .field("bound", &self.sys.bound)
            .field("base", &self.base)
            .field("cached", &self.memo.lock().map(|m| m.len()).unwrap_or(0))
            .finish()
    }
}

/// Recursion into a finite set: `a` is an element of `X`, `r : X → X`.
pub fn recurse(sys: &NatSystem, a: &FnMor, r: &FnMor) -> Result<RecFn> {
    if r.dom() != r.cod() {
        return Err(Error::BoundaryMismatch(format!("step {} -> {} is not an endofunction", r.dom(), r.cod())));
    }
    if a.cod() != r.dom() {
        return Err(Error::BoundaryMismatch(format!(
            "base lives in {} but the step acts on {}",
            a.cod(),
            r.dom()
        )));
    }
    let base = crate::category::element_value(a)?.clone();
    Ok(RecFn::build(sys, Some(r.dom().clone()), base, Step::Table(r.clone())))
}

/// Recursion into the naturals themselves, with base `base` and step `step`.
pub fn recurse_nat(sys: &NatSystem, base: u64, step: Step) -> Result<RecFn> {
    if matches!(step, Step::Table(_)) {
        return Err(Error::UnsupportedInfinite("a finite table cannot act on the naturals".into()));
    }
    sys.check(base)?;
    Ok(RecFn::build(sys, None, Value::Nat(base), step))
}

impl RecFn {
    fn build(sys: &NatSystem, target: Option<SetObj>, base: Value, step: Step) -> RecFn {
        RecFn { sys: sys.clone(), target, base: base.clone(), step, memo: Mutex::new(vec![base]) }
    }

    pub fn bound(&self) -> u64 {
        self.sys.bound
    }

    pub fn base(&self) -> &Value {
        &self.base
    }

    /// Whether the sequence takes values in the naturals themselves.
    pub fn is_natural(&self) -> bool {
        self.target.is_none()
    }

    /// The finite target set, or the truncated naturals.
    pub fn target(&self) -> &SetObj {
        self.target.as_ref().unwrap_or_else(|| self.sys.carrier())
    }

    fn apply_step(&self, v: &Value) -> Result<Value> {
        match &self.step {
            Step::Table(r) => Ok(r.apply(v).expect("sequence stays in the target").clone()),
            Step::Succ => {
                let n = v.as_nat().expect("natural-valued sequence");
                self.sys.succ(n).map(Value::Nat)
            }
            Step::Rec(g) => {
                let n = v.as_nat().expect("natural-valued sequence");
                g.value_at(n)
            }
        }
    }

    /// `x(n)`.
    pub fn value_at(&self, n: u64) -> Result<Value> {
        self.sys.check(n)?;
        let mut memo = self.memo.lock().expect("recursion cache poisoned");
        while (memo.len() as u64) <= n {
            let next = self.apply_step(memo.last().expect("base is cached"))?;
            if let Some(k) = next.as_nat() {
                if self.target.is_none() {
                    self.sys.check(k)?;
                }
            }
            memo.push(next);
        }
        Ok(memo[n as usize].clone())
    }

    /// `x(0), …, x(len - 1)`.
    pub fn prefix(&self, len: u64) -> Result<Vec<Value>> {
        if len == 0 {
            return Ok(Vec::new());
        }
        self.value_at(len - 1)?;
        let memo = self.memo.lock().expect("recursion cache poisoned");
        Ok(memo[..len as usize].to_vec())
    }

    /// Number of cached values.
    pub fn cached(&self) -> usize {
        self.memo.lock().map(|m| m.len()).unwrap_or(0)
    }

    /// Agreement with `other` on indices `0..upto`. Equality of two sequences
    /// is only semi-decidable, so this never claims more than the prefix.
    pub fn agrees_up_to(&self, other: &RecFn, upto: u64) -> Result<bool> {
        for n in 0..upto {
            if self.value_at(n)? != other.value_at(n)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `x(n)` as an element `1 → target`.
pub fn rec_eval(f: &RecFn, n: u64) -> Result<FnMor> {
    let v = f.value_at(n)?;
    Ok(FnMor::from_parts_unchecked(SetObj::terminal(), f.target().clone(), vec![v]))
}

/// Whether `candidate` satisfies the defining equations along its whole length.
/// Sequences longer than the bound are rejected.
pub fn prefix_unique(sys: &NatSystem, a: &FnMor, r: &FnMor, candidate: &[Value]) -> bool {
    if candidate.len() as u64 > sys.bound() {
        return false;
    }
    let Ok(base) = crate::category::element_value(a) else {
        return false;
    };
    match candidate.first() {
        None => true,
        Some(first) if first != base => false,
        Some(_) => candidate.windows(2).all(|w| r.apply(&w[0]) == Some(&w[1])),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArithOp {
    Add,
    Mul,
    Pow,
}

impl fmt::Display for ArithOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArithOp::Add => "add",
            ArithOp::Mul => "mul",
            ArithOp::Pow => "pow",
        })
    }
}

/// `n ↦ m + n`: base `m`, step successor.
pub fn adder(sys: &NatSystem, m: u64) -> Result<RecFn> {
    recurse_nat(sys, m, Step::Succ)
}

/// `n ↦ m · n`: base 0, step `adder(m)`.
pub fn multiplier(sys: &NatSystem, m: u64) -> Result<RecFn> {
    recurse_nat(sys, 0, Step::Rec(Arc::new(adder(sys, m)?)))
}

/// `n ↦ m ^ n`: base 1, step `multiplier(m)`.
pub fn exponentiator(sys: &NatSystem, m: u64) -> Result<RecFn> {
    recurse_nat(sys, 1, Step::Rec(Arc::new(multiplier(sys, m)?)))
}

/// Arithmetic computed only through the recursion operator.
pub fn nat_arith(sys: &NatSystem, op: ArithOp, m: u64, n: u64) -> Result<u64> {
    sys.check(m)?;
    sys.check(n)?;
    let f = match op {
        ArithOp::Add => adder(sys, m)?,
        ArithOp::Mul => multiplier(sys, m)?,
        ArithOp::Pow => exponentiator(sys, m)?,
    };
    Ok(f.value_at(n)?.as_nat().expect("natural-valued sequence"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{element, hom, identity, Odometer};

    fn a(n: &str) -> Value {
        Value::atom(n)
    }

    #[test]
    fn identity_recursion() {
        let sys = NatSystem::new(100);
        let x = recurse_nat(&sys, 0, Step::Succ).unwrap();
        for n in 0..100 {
            assert_eq!(x.value_at(n).unwrap(), Value::Nat(n));
        }
        assert_eq!(rec_eval(&x, 5).unwrap().table(), &[Value::Nat(5)]);
    }

    #[test]
    fn period_two() {
        let pq = SetObj::atoms(["p", "q"]);
        let r = FnMor::new(pq.clone(), pq.clone(), [(a("p"), a("q")), (a("q"), a("p"))]).unwrap();
        let sys = NatSystem::new(10);
        let x = recurse(&sys, &element(&pq, &a("p")).unwrap(), &r).unwrap();
        // oracle: iterate the table by hand
        let mut cur = a("p");
        for n in 0..10 {
            assert_eq!(x.value_at(n).unwrap(), cur);
            cur = r.apply(&cur).unwrap().clone();
        }
        assert_eq!(rec_eval(&x, 3).unwrap().table(), &[a("q")]);
        assert_eq!(rec_eval(&x, 10).unwrap_err(), Error::BoundExceeded { index: 10, bound: 10 });
    }

    #[test]
    fn fixed_point() {
        let c = SetObj::atoms(["c"]);
        let x = recurse(&NatSystem::new(8), &element(&c, &a("c")).unwrap(), &identity(&c)).unwrap();
        assert!(x.prefix(8).unwrap().iter().all(|v| *v == a("c")));
    }

    #[test]
    fn recurse_rejects_mismatched_base() {
        let c = SetObj::atoms(["c"]);
        let d = SetObj::atoms(["d"]);
        let err = recurse(&NatSystem::new(8), &element(&d, &a("d")).unwrap(), &identity(&c)).unwrap_err();
        assert!(matches!(err, Error::BoundaryMismatch(_)));
        assert!(matches!(recurse_nat(&NatSystem::new(8), 0, Step::Table(identity(&c))), Err(Error::UnsupportedInfinite(_))));
    }

    #[test]
    fn prefix_unique_cases() {
        let pq = SetObj::atoms(["p", "q"]);
        let r = FnMor::new(pq.clone(), pq.clone(), [(a("p"), a("q")), (a("q"), a("p"))]).unwrap();
        let sys = NatSystem::new(10);
        let base = element(&pq, &a("p")).unwrap();
        let x = recurse(&sys, &base, &r).unwrap();
        let mut prefix = x.prefix(6).unwrap();
        assert!(prefix_unique(&sys, &base, &r, &prefix));
        prefix[3] = a("p");
        assert!(!prefix_unique(&sys, &base, &r, &prefix));
        assert!(prefix_unique(&sys, &base, &r, &[]));
        assert!(!prefix_unique(&NatSystem::new(2), &base, &r, &x.prefix(3).unwrap()));
    }

    #[test]
    fn prefix_uniqueness_exhaustive() {
        let pool = ["a", "b", "c"];
        let sys = NatSystem::new(64);
        for k in 1..=3 {
            let x = SetObj::atoms(&pool[..k]);
            for r in hom(&x, &x) {
                for base in crate::category::elements(&x) {
                    let rec = recurse(&sys, &base, &r).unwrap();
                    for len in 0..=5usize {
                        let mut od = Odometer::new(len, k);
                        let mut satisfying = Vec::new();
                        while let Some(digits) = od.next_table() {
                            let seq: Vec<Value> = digits.iter().map(|&d| x.values()[d].clone()).collect();
                            if prefix_unique(&sys, &base, &r, &seq) {
                                satisfying.push(seq);
                            }
                        }
                        assert_eq!(satisfying, vec![rec.prefix(len as u64).unwrap()]);
                    }
                }
            }
        }
    }

    #[test]
    fn arithmetic_examples() {
        let sys = NatSystem::default();
        assert_eq!(nat_arith(&sys, ArithOp::Add, 2, 3).unwrap(), 5);
        assert_eq!(nat_arith(&sys, ArithOp::Mul, 3, 0).unwrap(), 0);
        assert_eq!(nat_arith(&sys, ArithOp::Pow, 2, 10).unwrap(), 2u64.pow(10));
        assert_eq!(nat_arith(&sys, ArithOp::Pow, 0, 0).unwrap(), 1);
    }

    #[test]
    fn arithmetic_overflow_is_reported() {
        let sys = NatSystem::new(50);
        assert!(matches!(nat_arith(&sys, ArithOp::Add, 30, 20), Err(Error::BoundExceeded { .. })));
        assert!(matches!(nat_arith(&sys, ArithOp::Pow, 2, 6), Err(Error::BoundExceeded { .. })));
        assert!(matches!(nat_arith(&sys, ArithOp::Add, 50, 0), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn arithmetic_matches_native_below_fifty() {
        let sys = NatSystem::new(50);
        for m in 0..50u64 {
            for n in 0..50u64 {
                for (op, native) in [
                    (ArithOp::Add, Some(m + n)),
                    (ArithOp::Mul, Some(m * n)),
                    (ArithOp::Pow, m.checked_pow(n as u32)),
                ] {
                    match native {
                        Some(v) if v < 50 => assert_eq!(nat_arith(&sys, op, m, n).unwrap(), v, "{op}({m},{n})"),
                        _ => assert!(nat_arith(&sys, op, m, n).is_err(), "{op}({m},{n})"),
                    }
                }
            }
        }
    }

    #[test]
    fn concurrent_evaluation_is_consistent() {
        let sys = NatSystem::new(5_000);
        let f = Arc::new(multiplier(&sys, 3).unwrap());
        let handles: Vec<_> = (0..8)
            .map(|t| {
                let f = Arc::clone(&f);
                std::thread::spawn(move || {
                    (0..1_600u64).rev().step_by(t + 1).map(|n| (n, f.value_at(n).unwrap())).collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (n, v) in h.join().unwrap() {
                assert_eq!(v, Value::Nat(3 * n));
            }
        }
        assert!(f.cached() >= 1_600);
    }

    #[test]
    fn defining_equations_hold() {
        let sys = NatSystem::new(200);
        let f = exponentiator(&sys, 1).unwrap();
        assert_eq!(f.value_at(0).unwrap(), Value::Nat(1));
        let g = adder(&sys, 7).unwrap();
        for n in 0..150 {
            assert_eq!(g.value_at(n + 1).unwrap(), Value::Nat(g.value_at(n).unwrap().as_nat().unwrap() + 1));
        }
        assert!(g.agrees_up_to(&adder(&sys, 7).unwrap(), 150).unwrap());
        assert!(!g.agrees_up_to(&adder(&sys, 6).unwrap(), 1).unwrap());
    }
}
