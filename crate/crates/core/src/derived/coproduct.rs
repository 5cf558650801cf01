use crate::category::{compose, element, identity, is_isomorphism, FnMor, SetObj};
use crate::error::{Error, Result};
use crate::universal::{
    characteristic, classifier, curry, factor_through, from_empty, function_set, inverse_image, mediate_product,
    product, to_terminal, FunctionSetObj,
};
use crate::value::Value;

/// A set with two maps into it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoproductCone {
    obj: SetObj,
    inl: FnMor,
    inr: FnMor,
}

impl CoproductCone {
    pub fn new(obj: SetObj, inl: FnMor, inr: FnMor) -> Result<CoproductCone> {
        if inl.cod() != &obj || inr.cod() != &obj {
            return Err(Error::BoundaryMismatch("injections must land in the cone object".into()));
        }
        Ok(CoproductCone { obj, inl, inr })
    }

    pub fn obj(&self) -> &SetObj {
        &self.obj
    }

    pub fn inl(&self) -> &FnMor {
        &self.inl
    }

    pub fn inr(&self) -> &FnMor {
        &self.inr
    }

    /// The map `h` with `h ∘ inl = f` and `h ∘ inr = g`.
    pub fn copair(&self, f: &FnMor, g: &FnMor) -> Result<FnMor> {
        if f.dom() != self.inl.dom() || g.dom() != self.inr.dom() || f.cod() != g.cod() {
            return Err(Error::BoundaryMismatch("copairing legs do not match the cone".into()));
        }
        let table = self
            .obj
            .values()
            .iter()
            .map(|e| {
                let left = self.inl.pairs().find(|(_, v)| *v == e).map(|(x, _)| f.apply(x));
                let right = self.inr.pairs().find(|(_, v)| *v == e).map(|(y, _)| g.apply(y));
                match (left, right) {
                    (Some(Some(z)), None) | (None, Some(Some(z))) => Ok(z.clone()),
                    _ => Err(Error::NoMediator(format!("{e} is not hit by exactly one injection"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        FnMor::from_table(self.obj.clone(), f.cod().clone(), table)
    }
}

/// The disjoint union with both of its builds and the isomorphism between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coproduct {
    tagged: CoproductCone,
    axiomatic: CoproductCone,
    iso: FnMor,
}

impl Coproduct {
    /// The tagged build: `inl(x)` and `inr(y)`.
    pub fn tagged(&self) -> &CoproductCone {
        &self.tagged
    }

    /// The build inside `2^X × 2^Y`.
    pub fn axiomatic(&self) -> &CoproductCone {
        &self.axiomatic
    }

    /// Isomorphism from the tagged build to the axiomatic one, commuting with the injections.
    pub fn iso(&self) -> &FnMor {
        &self.iso
    }

    pub fn obj(&self) -> &SetObj {
        self.tagged.obj()
    }

    pub fn inl(&self) -> &FnMor {
        self.tagged.inl()
    }

    pub fn inr(&self) -> &FnMor {
        self.tagged.inr()
    }
}

/// The tagged-union build.
pub fn tagged_union(x: &SetObj, y: &SetObj) -> CoproductCone {
    let obj = SetObj::new(x.values().iter().cloned().map(Value::tag_l).chain(y.values().iter().cloned().map(Value::tag_r)));
    let inl = FnMor::from_fn(x.clone(), obj.clone(), |v| Value::tag_l(v.clone())).expect("tags lie in the union");
    let inr = FnMor::from_fn(y.clone(), obj.clone(), |v| Value::tag_r(v.clone())).expect("tags lie in the union");
    CoproductCone { obj, inl, inr }
}

/// The subset of `2^X × 2^Y` of pairs `({x}, ∅)` and `(∅, {y})`, built only from
/// function sets, products, characteristic functions and inverse images.
pub fn axiomatic_union(x: &SetObj, y: &SetObj) -> Result<CoproductCone> {
    let cl = classifier();
    let px = function_set(x, cl.two());
    let py = function_set(y, cl.two());
    let square = product(px.obj(), py.obj());

    let count_true = |fs: &FunctionSetObj, s: &Value| {
        fs.exponent()
            .values()
            .iter()
            .filter(|v| fs.eval(s, v) == Some(cl.truth_value()))
            .count()
    };
    let selector = FnMor::from_fn(square.obj().clone(), cl.two().clone(), |p| {
        let (s, e) = p.as_pair().expect("pair");
        let (ns, ne) = (count_true(&px, s), count_true(&py, e));
        Value::Bool((ns, ne) == (1, 0) || (ns, ne) == (0, 1))
    })?;
    let fibre = inverse_image(&selector, cl.truth())?;

    let inl = factor_through(&fibre, &mediate_product(&square, &singletons(x, &px)?, &constant_empty(x, &py)?)?)?;
    let inr = factor_through(&fibre, &mediate_product(&square, &constant_empty(y, &px)?, &singletons(y, &py)?)?)?;
    Ok(CoproductCone { obj: fibre.obj().clone(), inl, inr })
}

/// `x ↦ {x}`: the transpose of the diagonal's characteristic function.
fn singletons(x: &SetObj, px: &FunctionSetObj) -> Result<FnMor> {
    let diagonal = mediate_product(&product(x, x), &identity(x), &identity(x))?;
    curry(&characteristic(&diagonal)?, x, px)
}

/// The constant map `src → 2^Z` at the empty subset of `Z`.
fn constant_empty(src: &SetObj, pz: &FunctionSetObj) -> Result<FnMor> {
    let empty_chi = characteristic(&from_empty(pz.exponent()))?;
    let point = element(pz.obj(), &pz.name_of(&empty_chi)?)?;
    compose(&point, &to_terminal(src))
}

/// Both builds of `x ⊔ y` and the isomorphism between them.
pub fn coproduct(x: &SetObj, y: &SetObj) -> Result<Coproduct> {
    let tagged = tagged_union(x, y);
    let axiomatic = axiomatic_union(x, y)?;
    let iso = tagged.copair(axiomatic.inl(), axiomatic.inr())?;
    if is_isomorphism(&iso).is_none() {
        return Err(Error::NoMediator("the two disjoint-union builds are not isomorphic".into()));
    }
    Ok(Coproduct { tagged, axiomatic, iso })
}
