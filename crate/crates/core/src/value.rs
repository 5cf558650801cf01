//! The element universe.
//!
//! Every set the kernel builds is a finite, sorted collection of [`Value`]s.
//! User-declared elements are atoms; everything produced by a construction
//! (products, function sets, the classifier, tagged unions, naturals) uses the
//! structured constructors, so the two namespaces never overlap.

use std::fmt;
use std::sync::Arc;

use crate::error::Error;

/// An element of some finite set.
///
/// The derived ordering is the canonical total order: constructors compare in
/// declaration order, and values built with the same constructor compare
/// field by field (graphs lexicographically by their sorted entries).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Atom(Arc<str>),
    Nat(u64),
    Unit,
    Bool(bool),
    Pair(Arc<Value>, Arc<Value>),
    TagL(Arc<Value>),
    TagR(Arc<Value>),
    /// The graph of a total function, sorted by argument with distinct arguments.
    Graph(Arc<[(Value, Value)]>),
}

impl Value {
    pub fn atom(name: &str) -> Value {
        Value::Atom(Arc::from(name))
    }

    pub fn pair(left: Value, right: Value) -> Value {
        Value::Pair(Arc::new(left), Arc::new(right))
    }

    pub fn tag_l(v: Value) -> Value {
        Value::TagL(Arc::new(v))
    }

    pub fn tag_r(v: Value) -> Value {
        Value::TagR(Arc::new(v))
    }

    /// Builds a graph value, sorting the entries. Fails on a repeated argument.
    pub fn graph(entries: impl IntoIterator<Item = (Value, Value)>) -> Result<Value, Error> {
        let mut entries: Vec<(Value, Value)> = entries.into_iter().collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateEntry { key: w[0].0.clone() });
        }
        Ok(Value::Graph(entries.into()))
    }

    /// Entries must already be strictly ascending by argument.
    pub(crate) fn graph_sorted(entries: Vec<(Value, Value)>) -> Value {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        Value::Graph(entries.into())
    }

    pub fn as_pair(&self) -> Option<(&Value, &Value)> {
        match self {
            Value::Pair(l, r) => Some((l, r)),
            _ => None,
        }
    }

    pub fn as_graph(&self) -> Option<&[(Value, Value)]> {
        match self {
            Value::Graph(entries) => Some(entries),
            _ => None,
        }
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self {
            Value::Nat(k) => Some(*k),
            _ => None,
        }
    }

    /// Looks up `arg` in a graph value.
    pub fn graph_apply(&self, arg: &Value) -> Option<&Value> {
        let entries = self.as_graph()?;
        entries
            .binary_search_by(|(k, _)| k.cmp(arg))
            .ok()
            .map(|i| &entries[i].1)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Atom(name) => f.write_str(name),
            Value::Nat(k) => write!(f, "#{k}"),
            Value::Unit => f.write_str("()"),
            Value::Bool(true) => f.write_str("#t"),
            Value::Bool(false) => f.write_str("#f"),
            Value::Pair(l, r) => write!(f, "({l}, {r})"),
            Value::TagL(v) => write!(f, "inl({v})"),
            Value::TagR(v) => write!(f, "inr({v})"),
            Value::Graph(entries) => {
                f.write_str("[")?;
                for (i, (k, v)) in entries.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{k} -> {v}")?;
                }
                f.write_str("]")
            }
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_value() -> impl Strategy<Value = Value> {
        let leaf = prop_oneof![
            "[a-d]".prop_map(|s| Value::atom(&s)),
            (0u64..4).prop_map(Value::Nat),
            Just(Value::Unit),
            any::<bool>().prop_map(Value::Bool),
        ];
        leaf.prop_recursive(3, 16, 3, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Value::pair(l, r)),
                inner.clone().prop_map(Value::tag_l),
                inner.clone().prop_map(Value::tag_r),
                proptest::collection::btree_map(inner.clone(), inner, 0..3)
                    .prop_map(|m| Value::graph(m).unwrap()),
            ]
        })
    }

    #[test]
    fn constructor_order() {
        let ordered = [
            Value::atom("z"),
            Value::Nat(0),
            Value::Unit,
            Value::Bool(false),
            Value::Bool(true),
            Value::pair(Value::Unit, Value::Unit),
            Value::tag_l(Value::Unit),
            Value::tag_r(Value::Unit),
            Value::graph([]).unwrap(),
        ];
        assert!(ordered.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn graph_rejects_repeated_argument() {
        let a = Value::atom("a");
        let err = Value::graph([(a.clone(), Value::Unit), (a.clone(), Value::Nat(1))]).unwrap_err();
        assert_eq!(err, Error::DuplicateEntry { key: a });
    }

    #[test]
    fn graph_sorts_and_looks_up() {
        let g = Value::graph([
            (Value::atom("b"), Value::Nat(1)),
            (Value::atom("a"), Value::Nat(0)),
        ])
        .unwrap();
        assert_eq!(g.to_string(), "[a -> #0, b -> #1]");
        assert_eq!(g.graph_apply(&Value::atom("b")), Some(&Value::Nat(1)));
        assert_eq!(g.graph_apply(&Value::atom("c")), None);
    }

    proptest! {
        #[test]
        fn order_is_total_and_antisymmetric(a in arb_value(), b in arb_value()) {
            let ab = a.cmp(&b);
            prop_assert_eq!(ab.reverse(), b.cmp(&a));
            prop_assert_eq!(ab == std::cmp::Ordering::Equal, a == b);
        }

        #[test]
        fn order_is_transitive(a in arb_value(), b in arb_value(), c in arb_value()) {
            let mut v = [a, b, c];
            v.sort();
            prop_assert!(v[0] <= v[2]);
        }
    }
}
