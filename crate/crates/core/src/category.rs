//! Sets, functions, composition and identities.
//!
//! Sets are compared literally: two sets are equal exactly when they hold the
//! same canonically ordered elements. "Unique up to unique isomorphism" is a
//! property the verifier checks, never an equality the kernel assumes.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::value::Value;

/// A finite set: a strictly ascending list of values.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetObj {
    elems: Arc<[Value]>,
}

impl SetObj {
    /// Sorts and deduplicates.
    pub fn new(values: impl IntoIterator<Item = Value>) -> SetObj {
        let mut v: Vec<Value> = values.into_iter().collect();
        v.sort();
        v.dedup();
        SetObj { elems: v.into() }
    }

    pub(crate) fn from_sorted(values: Vec<Value>) -> SetObj {
        debug_assert!(values.windows(2).all(|w| w[0] < w[1]), "set elements out of order");
        SetObj { elems: values.into() }
    }

    pub fn atoms<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> SetObj {
        SetObj::new(names.into_iter().map(|n| Value::atom(n.as_ref())))
    }

    /// The canonical empty set.
    pub fn empty() -> SetObj {
        SetObj { elems: Arc::from([]) }
    }

    /// The canonical terminal set `{()}`.
    pub fn terminal() -> SetObj {
        SetObj { elems: Arc::from([Value::Unit]) }
    }

    pub fn values(&self) -> &[Value] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn index_of(&self, v: &Value) -> Option<usize> {
        self.elems.binary_search(v).ok()
    }

    pub fn contains(&self, v: &Value) -> bool {
        self.index_of(v).is_some()
    }

    pub fn is_terminal_set(&self) -> bool {
        self.elems.len() == 1 && self.elems[0] == Value::Unit
    }
}

impl fmt::Display for SetObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.elems.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for SetObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A function between finite sets, stored as a total table.
///
/// `table[i]` is the image of `dom.values()[i]`; every image lies in `cod`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FnMor {
    dom: SetObj,
    cod: SetObj,
    table: Arc<[Value]>,
}

impl FnMor {
    /// Builds a function from explicit `(argument, image)` pairs, which must
    /// cover the domain exactly once and land in the codomain.
    pub fn new(
        dom: SetObj,
        cod: SetObj,
        pairs: impl IntoIterator<Item = (Value, Value)>,
    ) -> Result<FnMor> {
        let mut slots: Vec<Option<Value>> = vec![None; dom.len()];
        for (x, y) in pairs {
            let i = dom.index_of(&x).ok_or_else(|| Error::NotInDomain { value: x.clone() })?;
            if !cod.contains(&y) {
                return Err(Error::NotInCodomain { value: y, cod });
            }
            if slots[i].replace(y).is_some() {
                return Err(Error::DuplicateEntry { key: x });
            }
        }
        let table = slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| Error::NotTotal { missing: dom.values()[i].clone() }))
            .collect::<Result<Vec<_>>>()?;
        Ok(FnMor { dom, cod, table: table.into() })
    }

    /// Builds a function from a rule, checking every image against `cod`.
    pub fn from_fn(dom: SetObj, cod: SetObj, rule: impl Fn(&Value) -> Value) -> Result<FnMor> {
        let table: Vec<Value> = dom.values().iter().map(rule).collect();
        FnMor::from_table(dom, cod, table)
    }

    /// `table` is aligned with the domain's canonical order.
    pub fn from_table(dom: SetObj, cod: SetObj, table: Vec<Value>) -> Result<FnMor> {
        if table.len() != dom.len() {
            return Err(Error::ShapeMismatch(format!(
                "table has {} entries for a domain of {} elements",
                table.len(),
                dom.len()
            )));
        }
        if let Some(bad) = table.iter().find(|v| !cod.contains(v)) {
            return Err(Error::NotInCodomain { value: bad.clone(), cod });
        }
        Ok(FnMor { dom, cod, table: table.into() })
    }

    /// `indices[i]` is the codomain position of the image of the i-th domain element.
    pub fn from_indices(dom: SetObj, cod: SetObj, indices: &[usize]) -> FnMor {
        assert_eq!(indices.len(), dom.len());
        let table: Vec<Value> = indices.iter().map(|&k| cod.values()[k].clone()).collect();
        FnMor { dom, cod, table: table.into() }
    }

    pub(crate) fn from_parts_unchecked(dom: SetObj, cod: SetObj, table: Vec<Value>) -> FnMor {
        debug_assert_eq!(table.len(), dom.len());
        FnMor { dom, cod, table: table.into() }
    }

    pub fn dom(&self) -> &SetObj {
        &self.dom
    }

    pub fn cod(&self) -> &SetObj {
        &self.cod
    }

    pub fn table(&self) -> &[Value] {
        &self.table
    }

    /// Image of the i-th domain element.
    pub fn at(&self, i: usize) -> &Value {
        &self.table[i]
    }

    pub fn apply(&self, x: &Value) -> Option<&Value> {
        self.dom.index_of(x).map(|i| &self.table[i])
    }

    /// Codomain positions of the table entries.
    pub fn image_indices(&self) -> Vec<usize> {
        self.table
            .iter()
            .map(|v| self.cod.index_of(v).expect("table value lies in codomain"))
            .collect()
    }

    /// `(argument, image)` pairs in domain order.
    pub fn pairs(&self) -> impl Iterator<Item = (&Value, &Value)> {
        self.dom.values().iter().zip(self.table.iter())
    }

    /// The graph of this function as a single value.
    pub fn graph(&self) -> Value {
        Value::graph_sorted(self.pairs().map(|(x, y)| (x.clone(), y.clone())).collect())
    }

    /// First pair of distinct arguments with the same image, in canonical order.
    pub fn injectivity_witness(&self) -> Option<(Value, Value)> {
        let mut seen: Vec<(usize, &Value)> = self.table.iter().enumerate().collect();
        seen.sort_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)));
        seen.windows(2)
            .filter(|w| w[0].1 == w[1].1)
            .map(|w| (w[0].0, w[1].0))
            .min()
            .map(|(i, j)| (self.dom.values()[i].clone(), self.dom.values()[j].clone()))
    }

    pub fn is_injective(&self) -> bool {
        self.injectivity_witness().is_none()
    }

    /// Least codomain element outside the image.
    pub fn surjectivity_witness(&self) -> Option<Value> {
        let mut hit = vec![false; self.cod.len()];
        for k in self.image_indices() {
            hit[k] = true;
        }
        hit.iter().position(|h| !h).map(|k| self.cod.values()[k].clone())
    }

    pub fn is_surjective(&self) -> bool {
        self.surjectivity_witness().is_none()
    }
}

impl fmt::Display for FnMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (x, y)) in self.pairs().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x} -> {y}")?;
        }
        write!(f, "] : {} -> {}", self.dom, self.cod)
    }
}

impl fmt::Debug for FnMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `g ∘ f`.
pub fn compose(g: &FnMor, f: &FnMor) -> Result<FnMor> {
    if f.cod != g.dom {
        return Err(Error::CompositionMismatch { expected: g.dom.clone(), found: f.cod.clone() });
    }
    let table = f
        .table
        .iter()
        .map(|y| {
            let k = g.dom.index_of(y).expect("image of f lies in dom g");
            g.table[k].clone()
        })
        .collect::<Vec<_>>();
    Ok(FnMor::from_parts_unchecked(f.dom.clone(), g.cod.clone(), table))
}

pub fn identity(x: &SetObj) -> FnMor {
    FnMor::from_parts_unchecked(x.clone(), x.clone(), x.values().to_vec())
}

/// The element `1 → x` picking `v`.
pub fn element(x: &SetObj, v: &Value) -> Result<FnMor> {
    if !x.contains(v) {
        return Err(Error::NotAnElement(format!("{v} is not an element of {x}")));
    }
    Ok(FnMor::from_parts_unchecked(SetObj::terminal(), x.clone(), vec![v.clone()]))
}

/// One function `1 → x` per element of `x`, in canonical order.
pub fn elements(x: &SetObj) -> Vec<FnMor> {
    x.values()
        .iter()
        .map(|v| FnMor::from_parts_unchecked(SetObj::terminal(), x.clone(), vec![v.clone()]))
        .collect()
}

/// The value picked out by an element `1 → X`.
pub fn element_value(x: &FnMor) -> Result<&Value> {
    if !x.dom.is_terminal_set() {
        return Err(Error::NotAnElement(format!("domain {} is not the terminal set", x.dom)));
    }
    Ok(&x.table[0])
}

/// `f(x) = f ∘ x`.
pub fn evaluate(f: &FnMor, x: &FnMor) -> Result<FnMor> {
    element_value(x)?;
    compose(f, x)
}

/// Extensional equality: `f = g` iff `f(x) = g(x)` for every element `x`.
pub fn fn_equal(f: &FnMor, g: &FnMor) -> Result<bool> {
    if f.dom != g.dom || f.cod != g.cod {
        return Err(Error::BoundaryMismatch(format!(
            "cannot compare {} -> {} with {} -> {}",
            f.dom, f.cod, g.dom, g.cod
        )));
    }
    let mut pointwise = true;
    for x in elements(&f.dom) {
        if evaluate(f, &x)? != evaluate(g, &x)? {
            pointwise = false;
            break;
        }
    }
    assert_eq!(pointwise, f.table == g.table, "pointwise and table equality disagree");
    Ok(pointwise)
}

/// First element at which two parallel functions differ.
pub fn distinguishing_element(f: &FnMor, g: &FnMor) -> Option<Value> {
    f.pairs()
        .zip(g.table.iter())
        .find(|((_, fy), gy)| fy != gy)
        .map(|((x, _), _)| x.clone())
}

/// The two-sided inverse of `f`, if `f` is a bijection.
pub fn is_isomorphism(f: &FnMor) -> Option<FnMor> {
    if f.dom.len() != f.cod.len() || !f.is_injective() {
        return None;
    }
    let mut table = vec![Value::Unit; f.cod.len()];
    for (x, k) in f.dom.values().iter().zip(f.image_indices()) {
        table[k] = x.clone();
    }
    let inv = FnMor::from_parts_unchecked(f.cod.clone(), f.dom.clone(), table);
    debug_assert_eq!(compose(&inv, f).ok(), Some(identity(&f.dom)));
    debug_assert_eq!(compose(f, &inv).ok(), Some(identity(&f.cod)));
    Some(inv)
}

/// Mixed-radix counter over `len` digits in `0..base`, most significant first.
///
/// Walking it visits every table `{0..len} → {0..base}` in lexicographic
/// order, which matches the canonical order of the corresponding graphs.
#[derive(Debug, Clone)]
pub struct Odometer {
    digits: Vec<usize>,
    base: usize,
    started: bool,
    done: bool,
}

impl Odometer {
    pub fn new(len: usize, base: usize) -> Odometer {
        Odometer { digits: vec![0; len], base, started: false, done: base == 0 && len > 0 }
    }

    /// Advances to the next table; `None` once exhausted.
    pub fn next_table(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.digits);
        }
        for i in (0..self.digits.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < self.base {
                return Some(&self.digits);
            }
            self.digits[i] = 0;
        }
        self.done = true;
        None
    }
}

/// Number of functions `x → y`, saturating.
pub fn hom_count(x: &SetObj, y: &SetObj) -> u64 {
    (y.len() as u64).saturating_pow(x.len() as u32)
}

/// All functions `x → y` in canonical order.
pub fn hom(x: &SetObj, y: &SetObj) -> Hom {
    Hom { dom: x.clone(), cod: y.clone(), odometer: Odometer::new(x.len(), y.len()) }
}

pub struct Hom {
    dom: SetObj,
    cod: SetObj,
    odometer: Odometer,
}

impl Iterator for Hom {
    type Item = FnMor;

    fn next(&mut self) -> Option<FnMor> {
        let digits = self.odometer.next_table()?;
        Some(FnMor::from_indices(self.dom.clone(), self.cod.clone(), digits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(names: &[&str]) -> SetObj {
        SetObj::atoms(names)
    }

    fn f_of(dom: &SetObj, cod: &SetObj, pairs: &[(&str, &str)]) -> FnMor {
        FnMor::new(
            dom.clone(),
            cod.clone(),
            pairs.iter().map(|(a, b)| (Value::atom(a), Value::atom(b))),
        )
        .unwrap()
    }

    /// Sets of size 0..=n over a fixed pool.
    fn small_sets(n: usize) -> Vec<SetObj> {
        let pool = ["a", "b", "c", "d"];
        (0..=n).map(|k| set(&pool[..k])).collect()
    }

    #[test]
    fn compose_by_table_lookup() {
        let ab = set(&["a", "b"]);
        let zo = set(&["0", "1"]);
        let f = f_of(&ab, &zo, &[("a", "0"), ("b", "1")]);
        let g = f_of(&zo, &ab, &[("0", "b"), ("1", "a")]);
        assert_eq!(compose(&g, &f).unwrap(), f_of(&ab, &ab, &[("a", "b"), ("b", "a")]));
        assert_eq!(compose(&identity(&zo), &f).unwrap(), f);
        assert_eq!(compose(&f, &identity(&ab)).unwrap(), f);
    }

    #[test]
    fn compose_mismatch_carries_boundaries() {
        let f = f_of(&set(&["a"]), &set(&["0"]), &[("a", "0")]);
        let g = f_of(&set(&["1"]), &set(&["2"]), &[("1", "2")]);
        assert_eq!(
            compose(&g, &f).unwrap_err(),
            Error::CompositionMismatch { expected: set(&["1"]), found: set(&["0"]) }
        );
    }

    #[test]
    fn identity_cases() {
        let e = identity(&SetObj::empty());
        assert!(e.table().is_empty() && e.dom().is_empty() && e.cod().is_empty());
        let ab = set(&["a", "b"]);
        assert_eq!(identity(&ab), f_of(&ab, &ab, &[("a", "a"), ("b", "b")]));
    }

    #[test]
    fn elements_cases() {
        assert!(elements(&SetObj::empty()).is_empty());
        assert_eq!(elements(&SetObj::terminal()).len(), 1);
        let abc = set(&["a", "b", "c"]);
        let els = elements(&abc);
        assert_eq!(els.len(), 3);
        assert!(els.iter().all(|e| e.dom().is_terminal_set() && e.cod() == &abc));
    }

    #[test]
    fn evaluate_cases() {
        let ab = set(&["a", "b"]);
        let zo = set(&["0", "1"]);
        let f = f_of(&ab, &zo, &[("a", "0"), ("b", "1")]);
        let a = element(&ab, &Value::atom("a")).unwrap();
        assert_eq!(evaluate(&f, &a).unwrap(), element(&zo, &Value::atom("0")).unwrap());
        assert_eq!(evaluate(&identity(&ab), &a).unwrap(), a);
        let g = f_of(&zo, &ab, &[("0", "b"), ("1", "a")]);
        let gf = compose(&g, &f).unwrap();
        assert_eq!(evaluate(&gf, &a).unwrap(), evaluate(&g, &evaluate(&f, &a).unwrap()).unwrap());
        // an element must come out of the terminal set
        assert!(matches!(evaluate(&f, &identity(&ab)), Err(Error::NotAnElement(_))));
    }

    #[test]
    fn fn_equal_cases() {
        let ab = set(&["a", "b"]);
        let zo = set(&["0", "1"]);
        let built_from_pairs = f_of(&ab, &zo, &[("b", "0"), ("a", "0")]);
        let built_from_rule = FnMor::from_fn(ab.clone(), zo.clone(), |_| Value::atom("0")).unwrap();
        assert!(fn_equal(&built_from_pairs, &built_from_rule).unwrap());
        let other = f_of(&ab, &zo, &[("a", "0"), ("b", "1")]);
        assert!(!fn_equal(&other, &built_from_pairs).unwrap());
        let e1 = FnMor::new(SetObj::empty(), zo.clone(), []).unwrap();
        let e2 = FnMor::from_fn(SetObj::empty(), zo.clone(), |_| unreachable!()).unwrap();
        assert!(fn_equal(&e1, &e2).unwrap());
        assert!(matches!(fn_equal(&other, &identity(&ab)), Err(Error::BoundaryMismatch(_))));
    }

    #[test]
    fn isomorphism_cases() {
        let ab = set(&["a", "b"]);
        let zo = set(&["0", "1"]);
        let swap = f_of(&ab, &zo, &[("a", "1"), ("b", "0")]);
        assert_eq!(is_isomorphism(&swap), Some(f_of(&zo, &ab, &[("0", "b"), ("1", "a")])));
        assert_eq!(is_isomorphism(&f_of(&ab, &zo, &[("a", "0"), ("b", "0")])), None);
        assert_eq!(is_isomorphism(&identity(&ab)), Some(identity(&ab)));
    }

    #[test]
    fn fn_new_rejects_bad_tables() {
        let ab = set(&["a", "b"]);
        let zo = set(&["0", "1"]);
        assert_eq!(
            FnMor::new(ab.clone(), zo.clone(), [(Value::atom("a"), Value::atom("0"))]).unwrap_err(),
            Error::NotTotal { missing: Value::atom("b") }
        );
        assert!(matches!(
            FnMor::new(ab.clone(), zo.clone(), [(Value::atom("a"), Value::atom("z"))]),
            Err(Error::NotInCodomain { .. })
        ));
        assert!(matches!(
            FnMor::new(ab, zo, [(Value::atom("q"), Value::atom("0"))]),
            Err(Error::NotInDomain { .. })
        ));
    }

    #[test]
    fn associativity_and_identity_exhaustive() {
        let sets = small_sets(3);
        for w in &sets {
            for x in &sets {
                let fs: Vec<_> = hom(w, x).collect();
                assert_eq!(fs.len() as u64, hom_count(w, x));
                for f in &fs {
                    assert_eq!(&compose(f, &identity(w)).unwrap(), f);
                    assert_eq!(&compose(&identity(x), f).unwrap(), f);
                }
                for y in &sets {
                    for z in &sets {
                        for f in &fs {
                            for g in hom(x, y) {
                                for h in hom(y, z) {
                                    let left = compose(&h, &compose(&g, f).unwrap()).unwrap();
                                    let right = compose(&compose(&h, &g).unwrap(), f).unwrap();
                                    assert_eq!(left, right);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn extensionality_matches_table_equality_exhaustive() {
        let sets = small_sets(3);
        for x in &sets {
            for y in &sets {
                let fs: Vec<_> = hom(x, y).collect();
                for f in &fs {
                    for g in &fs {
                        assert_eq!(fn_equal(f, g).unwrap(), f.table() == g.table());
                    }
                }
            }
        }
    }

    #[test]
    fn isomorphism_iff_bijective_exhaustive() {
        let sets = small_sets(3);
        for x in &sets {
            for y in &sets {
                for f in hom(x, y) {
                    let bijective = x.len() == y.len() && f.is_injective();
                    match is_isomorphism(&f) {
                        Some(inv) => {
                            assert!(bijective);
                            assert_eq!(compose(&inv, &f).unwrap(), identity(x));
                            assert_eq!(compose(&f, &inv).unwrap(), identity(y));
                        }
                        None => assert!(!bijective),
                    }
                }
            }
        }
    }

    #[test]
    fn hom_order_matches_graph_order() {
        let ab = set(&["a", "b"]);
        let graphs: Vec<Value> = hom(&ab, &ab).map(|f| f.graph()).collect();
        assert!(graphs.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(hom(&SetObj::empty(), &SetObj::empty()).count(), 1);
        assert_eq!(hom(&ab, &SetObj::empty()).count(), 0);
    }
}
