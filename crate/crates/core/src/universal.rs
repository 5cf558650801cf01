//! Universal constructions: terminal and empty sets, products, function sets,
//! inverse images, the subset classifier and right inverses of surjections.
//!
//! Each construction returns a canonical choice of object together with its
//! structure maps. Mediators are computed by the functions here; whether they
//! are the *only* mediators is decided separately by the verifier, which
//! enumerates every candidate.

use std::collections::HashMap;

use crate::category::{element_value, hom_count, FnMor, SetObj};
use crate::error::{Error, Result};
use crate::value::Value;

pub fn terminal() -> SetObj {
    SetObj::terminal()
}

/// The unique function `x → 1`.
pub fn to_terminal(x: &SetObj) -> FnMor {
    FnMor::from_parts_unchecked(x.clone(), terminal(), vec![Value::Unit; x.len()])
}

/// Probe sets of size 0 through 3.
pub fn probe_sets() -> Vec<SetObj> {
    let pool = ["a", "b", "c"];
    (0..=pool.len()).map(|k| SetObj::atoms(&pool[..k])).collect()
}

/// The quantified definition, restricted to `probes`: every probe has exactly
/// one function into `t`. Counts by enumeration.
pub fn is_terminal_by_probe(t: &SetObj, probes: &[SetObj]) -> bool {
    probes.iter().all(|x| crate::category::hom(x, t).take(2).count() == 1)
}

/// A set is terminal exactly when it has one element.
pub fn is_terminal(t: &SetObj) -> bool {
    let by_size = t.len() == 1;
    let mut probes = probe_sets();
    probes.push(terminal());
    assert_eq!(by_size, is_terminal_by_probe(t, &probes), "terminal tests disagree on {t}");
    by_size
}

pub fn empty() -> SetObj {
    SetObj::empty()
}

/// The unique function `{} → y`.
pub fn from_empty(y: &SetObj) -> FnMor {
    FnMor::from_parts_unchecked(empty(), y.clone(), Vec::new())
}

/// A set with two projections. Only [`product`] is guaranteed to be a product;
/// arbitrary cones can be built to test that claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductCone {
    obj: SetObj,
    pr1: FnMor,
    pr2: FnMor,
}

impl ProductCone {
    pub fn new(obj: SetObj, pr1: FnMor, pr2: FnMor) -> Result<ProductCone> {
        if pr1.dom() != &obj || pr2.dom() != &obj {
            return Err(Error::BoundaryMismatch("projections must start at the cone object".into()));
        }
        Ok(ProductCone { obj, pr1, pr2 })
    }

    pub fn obj(&self) -> &SetObj {
        &self.obj
    }

    pub fn pr1(&self) -> &FnMor {
        &self.pr1
    }

    pub fn pr2(&self) -> &FnMor {
        &self.pr2
    }

    pub fn left(&self) -> &SetObj {
        self.pr1.cod()
    }

    pub fn right(&self) -> &SetObj {
        self.pr2.cod()
    }
}

/// The canonical product: pairs `(x, y)` with the two coordinate projections.
pub fn product(x: &SetObj, y: &SetObj) -> ProductCone {
    let mut obj = Vec::with_capacity(x.len() * y.len());
    let mut t1 = Vec::with_capacity(obj.capacity());
    let mut t2 = Vec::with_capacity(obj.capacity());
    for a in x.values() {
        for b in y.values() {
            obj.push(Value::pair(a.clone(), b.clone()));
            t1.push(a.clone());
            t2.push(b.clone());
        }
    }
    let obj = SetObj::from_sorted(obj);
    ProductCone {
        pr1: FnMor::from_parts_unchecked(obj.clone(), x.clone(), t1),
        pr2: FnMor::from_parts_unchecked(obj.clone(), y.clone(), t2),
        obj,
    }
}

/// The pairing `(f1, f2) : I → P` with `pr1 ∘ (f1, f2) = f1` and `pr2 ∘ (f1, f2) = f2`.
pub fn mediate_product(cone: &ProductCone, f1: &FnMor, f2: &FnMor) -> Result<FnMor> {
    if f1.dom() != f2.dom() {
        return Err(Error::BoundaryMismatch(format!(
            "legs start at different sets {} and {}",
            f1.dom(),
            f2.dom()
        )));
    }
    if f1.cod() != cone.left() || f2.cod() != cone.right() {
        return Err(Error::BoundaryMismatch(format!(
            "legs land in {} and {}, cone factors are {} and {}",
            f1.cod(),
            f2.cod(),
            cone.left(),
            cone.right()
        )));
    }
    // First cone element over each pair of coordinates.
    let mut over: HashMap<(&Value, &Value), &Value> = HashMap::new();
    for (i, p) in cone.obj.values().iter().enumerate().rev() {
        over.insert((cone.pr1.at(i), cone.pr2.at(i)), p);
    }
    let table = f1
        .table()
        .iter()
        .zip(f2.table())
        .map(|(a, b)| {
            over.get(&(a, b))
                .map(|p| (*p).clone())
                .ok_or_else(|| Error::NoMediator(format!("no cone element over ({a}, {b})")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FnMor::from_parts_unchecked(f1.dom().clone(), cone.obj.clone(), table))
}

/// A set `F` with an evaluation map `F × X → Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionSetObj {
    obj: SetObj,
    ev: FnMor,
    exponent: SetObj,
    base: SetObj,
}

impl FunctionSetObj {
    /// `ev` must be a function `product(obj, exponent) → base`.
    pub fn new(obj: SetObj, ev: FnMor, exponent: SetObj, base: SetObj) -> Result<FunctionSetObj> {
        if ev.dom() != product(&obj, &exponent).obj() || ev.cod() != &base {
            return Err(Error::ShapeMismatch("evaluation map must go from F × X to Y".into()));
        }
        Ok(FunctionSetObj { obj, ev, exponent, base })
    }

    pub fn obj(&self) -> &SetObj {
        &self.obj
    }

    pub fn ev(&self) -> &FnMor {
        &self.ev
    }

    /// The set `X` in `Y^X`.
    pub fn exponent(&self) -> &SetObj {
        &self.exponent
    }

    /// The set `Y` in `Y^X`.
    pub fn base(&self) -> &SetObj {
        &self.base
    }

    pub fn eval(&self, g: &Value, x: &Value) -> Option<&Value> {
        self.ev.apply(&Value::pair(g.clone(), x.clone()))
    }

    /// The element of `F` naming `f`, i.e. `curry` at `I = 1`.
    pub fn name_of(&self, f: &FnMor) -> Result<Value> {
        if f.dom() != &self.exponent || f.cod() != &self.base {
            return Err(Error::BoundaryMismatch(format!(
                "{} -> {} is not a function {} -> {}",
                f.dom(),
                f.cod(),
                self.exponent,
                self.base
            )));
        }
        let g = f.graph();
        if self.obj.contains(&g) && self.agrees(&g, f.table()) {
            return Ok(g);
        }
        self.obj
            .values()
            .iter()
            .find(|g| self.agrees(g, f.table()))
            .cloned()
            .ok_or_else(|| Error::NoMediator(format!("no element of the function set evaluates like {f}")))
    }

    /// The function `X → Y` an element of `F` evaluates to.
    pub fn function_of(&self, g: &Value) -> Result<FnMor> {
        if !self.obj.contains(g) {
            return Err(Error::NotAnElement(format!("{g} is not in the function set")));
        }
        let table = self
            .exponent
            .values()
            .iter()
            .map(|x| self.eval(g, x).cloned().expect("ev is total"))
            .collect();
        Ok(FnMor::from_parts_unchecked(self.exponent.clone(), self.base.clone(), table))
    }

    fn agrees(&self, g: &Value, images: &[Value]) -> bool {
        self.exponent
            .values()
            .iter()
            .zip(images)
            .all(|(x, y)| self.eval(g, x) == Some(y))
    }
}

/// The canonical function set: graphs of all total functions `x → y`.
pub fn function_set(x: &SetObj, y: &SetObj) -> FunctionSetObj {
    let graphs: Vec<Value> = crate::category::hom(x, y).map(|f| f.graph()).collect();
    debug_assert_eq!(graphs.len() as u64, hom_count(x, y));
    let obj = SetObj::from_sorted(graphs);
    let domain = product(&obj, x);
    let table = domain
        .obj()
        .values()
        .iter()
        .map(|p| {
            let (g, a) = p.as_pair().expect("product element");
            g.graph_apply(a).expect("graph is total").clone()
        })
        .collect();
    let ev = FnMor::from_parts_unchecked(domain.obj().clone(), y.clone(), table);
    FunctionSetObj { obj, ev, exponent: x.clone(), base: y.clone() }
}

/// Graphs of `t ↦ (x ↦ q(t, x))` for each `t ∈ index`, without enumerating `Y^X`.
pub fn curry_graphs(q: &FnMor, index: &SetObj, exponent: &SetObj) -> Result<Vec<Value>> {
    if q.dom() != product(index, exponent).obj() {
        return Err(Error::ShapeMismatch(format!(
            "domain {} is not the product of {} and {}",
            q.dom(),
            index,
            exponent
        )));
    }
    // q's domain is (t, x) in lexicographic order, so each t owns a contiguous block.
    let width = exponent.len();
    Ok((0..index.len())
        .map(|ti| {
            let entries = (0..width)
                .map(|xi| (exponent.values()[xi].clone(), q.at(ti * width + xi).clone()))
                .collect();
            Value::graph_sorted(entries)
        })
        .collect())
}

/// The transpose `q̄ : I → F` with `q(t, x) = ε(q̄(t), x)`.
///
/// `index` is `I`; it cannot be recovered from `q` when `X` is empty.
pub fn curry(q: &FnMor, index: &SetObj, fs: &FunctionSetObj) -> Result<FnMor> {
    if q.cod() != fs.base() {
        return Err(Error::ShapeMismatch(format!("codomain {} is not {}", q.cod(), fs.base())));
    }
    let graphs = curry_graphs(q, index, fs.exponent())?;
    let width = fs.exponent().len();
    let table = graphs
        .into_iter()
        .enumerate()
        .map(|(ti, g)| {
            let images = &q.table()[ti * width..(ti + 1) * width];
            if fs.obj().contains(&g) && fs.agrees(&g, images) {
                return Ok(g);
            }
            fs.obj()
                .values()
                .iter()
                .find(|g| fs.agrees(g, images))
                .cloned()
                .ok_or_else(|| Error::NoMediator(format!("no element of the function set transposes {q}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FnMor::from_parts_unchecked(index.clone(), fs.obj().clone(), table))
}

/// `q(t, x) = ε(q̄(t), x)`.
pub fn uncurry(qbar: &FnMor, fs: &FunctionSetObj) -> Result<FnMor> {
    if qbar.cod() != fs.obj() {
        return Err(Error::ShapeMismatch(format!(
            "codomain {} is not the function set",
            qbar.cod()
        )));
    }
    let dom = product(qbar.dom(), fs.exponent());
    let mut table = Vec::with_capacity(dom.obj().len());
    for g in qbar.table() {
        for x in fs.exponent().values() {
            table.push(fs.eval(g, x).cloned().expect("ev is total"));
        }
    }
    Ok(FnMor::from_parts_unchecked(dom.obj().clone(), fs.base().clone(), table))
}

/// A set `A` with a map `j : A → X`, claimed to be the fibre of `f` over `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseImageCone {
    obj: SetObj,
    incl: FnMor,
    map: FnMor,
    point: Value,
}

impl InverseImageCone {
    pub fn new(obj: SetObj, incl: FnMor, map: FnMor, point: Value) -> Result<InverseImageCone> {
        if incl.dom() != &obj || incl.cod() != map.dom() || !map.cod().contains(&point) {
            return Err(Error::BoundaryMismatch("ill-typed inverse image cone".into()));
        }
        Ok(InverseImageCone { obj, incl, map, point })
    }

    pub fn obj(&self) -> &SetObj {
        &self.obj
    }

    pub fn incl(&self) -> &FnMor {
        &self.incl
    }

    /// The function `f` whose fibre this is.
    pub fn map(&self) -> &FnMor {
        &self.map
    }

    /// The point `y` of the codomain.
    pub fn point(&self) -> &Value {
        &self.point
    }
}

/// The fibre of `f` over the element `y`, as a literal subset of `dom f`.
pub fn inverse_image(f: &FnMor, y: &FnMor) -> Result<InverseImageCone> {
    if y.cod() != f.cod() {
        return Err(Error::NotAnElement(format!("{y} is not an element of {}", f.cod())));
    }
    let point = element_value(y)?;
    inverse_image_at(f, point)
}

/// [`inverse_image`] with the point given as a value.
pub fn inverse_image_at(f: &FnMor, point: &Value) -> Result<InverseImageCone> {
    if !f.cod().contains(point) {
        return Err(Error::NotAnElement(format!("{point} is not an element of {}", f.cod())));
    }
    let members: Vec<Value> = f.pairs().filter(|(_, v)| *v == point).map(|(x, _)| x.clone()).collect();
    let obj = SetObj::from_sorted(members);
    let incl = FnMor::from_parts_unchecked(obj.clone(), f.dom().clone(), obj.values().to_vec());
    Ok(InverseImageCone { obj, incl, map: f.clone(), point: point.clone() })
}

/// The unique `q̄` with `q = j ∘ q̄`, for `q` landing in the fibre.
pub fn factor_through(cone: &InverseImageCone, q: &FnMor) -> Result<FnMor> {
    if q.cod() != cone.incl.cod() {
        return Err(Error::BoundaryMismatch(format!(
            "{} does not land in {}",
            q.dom(),
            cone.incl.cod()
        )));
    }
    let table = q
        .pairs()
        .map(|(t, x)| {
            if cone.map.apply(x) != Some(&cone.point) {
                return Err(Error::NotInFibre { witness: t.clone() });
            }
            cone.incl
                .pairs()
                .find(|(_, jx)| *jx == x)
                .map(|(a, _)| a.clone())
                .ok_or_else(|| Error::NoMediator(format!("{x} is missing from the cone")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FnMor::from_parts_unchecked(q.dom().clone(), cone.obj.clone(), table))
}

/// A truth-value set with a distinguished truth element `1 → two`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifierObj {
    two: SetObj,
    truth: FnMor,
}

impl ClassifierObj {
    pub fn new(two: SetObj, truth: FnMor) -> Result<ClassifierObj> {
        if !truth.dom().is_terminal_set() || truth.cod() != &two {
            return Err(Error::NotAnElement("truth must be an element of the classifier".into()));
        }
        Ok(ClassifierObj { two, truth })
    }

    pub fn two(&self) -> &SetObj {
        &self.two
    }

    pub fn truth(&self) -> &FnMor {
        &self.truth
    }

    pub fn truth_value(&self) -> &Value {
        self.truth.at(0)
    }
}

/// `({#f, #t}, #t)`.
pub fn classifier() -> ClassifierObj {
    let two = SetObj::from_sorted(vec![Value::Bool(false), Value::Bool(true)]);
    let truth = FnMor::from_parts_unchecked(terminal(), two.clone(), vec![Value::Bool(true)]);
    ClassifierObj { two, truth }
}

/// The characteristic function of an injection: true exactly on its image.
pub fn characteristic(j: &FnMor) -> Result<FnMor> {
    if let Some((first, second)) = j.injectivity_witness() {
        return Err(Error::NotInjective { first, second });
    }
    let mut hit = vec![false; j.cod().len()];
    for k in j.image_indices() {
        hit[k] = true;
    }
    let table = hit.into_iter().map(Value::Bool).collect();
    Ok(FnMor::from_parts_unchecked(j.cod().clone(), classifier().two, table))
}

/// A section of a surjection, choosing the least preimage in each fibre.
pub fn right_inverse(s: &FnMor) -> Result<FnMor> {
    section(s, false)
}

/// As [`right_inverse`] but choosing the greatest preimage.
pub(crate) fn right_inverse_greatest(s: &FnMor) -> Result<FnMor> {
    section(s, true)
}

fn section(s: &FnMor, greatest: bool) -> Result<FnMor> {
    let mut chosen: Vec<Option<Value>> = vec![None; s.cod().len()];
    for (x, k) in s.dom().values().iter().zip(s.image_indices()) {
        if chosen[k].is_none() || greatest {
            chosen[k] = Some(x.clone());
        }
    }
    let table = chosen
        .into_iter()
        .enumerate()
        .map(|(k, c)| c.ok_or_else(|| Error::NotSurjective { missing: s.cod().values()[k].clone() }))
        .collect::<Result<Vec<_>>>()?;
    Ok(FnMor::from_parts_unchecked(s.cod().clone(), s.dom().clone(), table))
}
