use std::fmt;

use crate::category::{FnMor, SetObj};
use crate::derived::subset::{image, Subset};
use crate::error::{Error, Result};
use crate::universal::{classifier, curry_graphs, product};
use crate::value::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EquivLaw {
    Reflexivity,
    Symmetry,
    Transitivity,
}

impl fmt::Display for EquivLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquivLaw::Reflexivity => "reflexivity",
            EquivLaw::Symmetry => "symmetry",
            EquivLaw::Transitivity => "transitivity",
        })
    }
}

/// An equivalence relation: a subset of `carrier × carrier` obeying the three laws.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivRelation {
    carrier: SetObj,
    rel: Subset,
}

impl EquivRelation {
    /// `rel` must be a subset of the canonical `carrier × carrier`.
    pub fn new(carrier: SetObj, rel: Subset) -> Result<EquivRelation> {
        let square = product(&carrier, &carrier);
        if rel.ambient() != square.obj() {
            return Err(Error::ShapeMismatch(format!("relation is not a subset of {carrier} × {carrier}")));
        }
        let n = carrier.len();
        // rel's ambient is (x, y) in lexicographic order: index x * n + y.
        let m: Vec<bool> = rel.chi().table().iter().map(|v| *v == Value::Bool(true)).collect();
        let name = |i: usize| carrier.values()[i].to_string();
        if let Some(i) = (0..n).find(|&i| !m[i * n + i]) {
            return Err(Error::NotEquivalence { law: EquivLaw::Reflexivity, witness: format!("({}, {})", name(i), name(i)) });
        }
        for i in 0..n {
            for j in 0..n {
                if m[i * n + j] && !m[j * n + i] {
                    return Err(Error::NotEquivalence {
                        law: EquivLaw::Symmetry,
                        witness: format!("({}, {})", name(i), name(j)),
                    });
                }
            }
        }
        for i in 0..n {
            for j in (0..n).filter(|&j| m[i * n + j]) {
                if let Some(k) = (0..n).find(|&k| m[j * n + k] && !m[i * n + k]) {
                    return Err(Error::NotEquivalence {
                        law: EquivLaw::Transitivity,
                        witness: format!("({}, {}), ({}, {})", name(i), name(j), name(j), name(k)),
                    });
                }
            }
        }
        Ok(EquivRelation { carrier, rel })
    }

    /// The relation containing exactly the listed pairs.
    pub fn from_pairs(carrier: SetObj, pairs: &[(Value, Value)]) -> Result<EquivRelation> {
        let members: Vec<Value> = pairs.iter().map(|(x, y)| Value::pair(x.clone(), y.clone())).collect();
        let square = product(&carrier, &carrier);
        let rel = Subset::from_members(square.obj(), &members)?;
        EquivRelation::new(carrier, rel)
    }

    /// The kernel of `f`: `x ∼ y` iff `f(x) = f(y)`.
    pub fn kernel_of(f: &FnMor) -> EquivRelation {
        let carrier = f.dom().clone();
        let square = product(&carrier, &carrier);
        let chi = FnMor::from_fn(square.obj().clone(), classifier().two().clone(), |p| {
            let (x, y) = p.as_pair().expect("pair");
            Value::Bool(f.apply(x) == f.apply(y))
        })
        .expect("booleans lie in two");
        EquivRelation { carrier, rel: Subset::from_chi(chi).expect("classifier codomain") }
    }

    pub fn carrier(&self) -> &SetObj {
        &self.carrier
    }

    pub fn rel(&self) -> &Subset {
        &self.rel
    }

    pub fn related(&self, x: &Value, y: &Value) -> bool {
        self.rel.contains(&Value::pair(x.clone(), y.clone()))
    }
}

/// A quotient set with its projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    obj: SetObj,
    proj: FnMor,
}

impl Quotient {
    /// Elements are graphs `carrier → two`: the indicator of each class.
    pub fn obj(&self) -> &SetObj {
        &self.obj
    }

    pub fn proj(&self) -> &FnMor {
        &self.proj
    }

    /// Equivalence classes, ordered like the quotient's elements.
    pub fn classes(&self) -> Vec<SetObj> {
        let mut classes = vec![Vec::new(); self.obj.len()];
        for (x, k) in self.proj.dom().values().iter().zip(self.proj.image_indices()) {
            classes[k].push(x.clone());
        }
        classes.into_iter().map(SetObj::from_sorted).collect()
    }
}

/// `X/∼`: transpose the relation's characteristic function to `X → 2^X`
/// and take its image; the projection is the corestriction onto that image.
pub fn quotient(rel: &EquivRelation) -> Result<Quotient> {
    let x = rel.carrier();
    let classes = curry_graphs(rel.rel().chi(), x, x)?;
    let transpose = FnMor::from_parts_unchecked(x.clone(), SetObj::new(classes.iter().cloned()), classes);
    let obj = image(&transpose).members();
    let proj = FnMor::from_table(x.clone(), obj.clone(), transpose.table().to_vec())?;
    Ok(Quotient { obj, proj })
}
