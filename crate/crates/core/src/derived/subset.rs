use crate::category::{compose, is_isomorphism, FnMor, SetObj};
use crate::error::{Error, Result};
use crate::universal::{characteristic, classifier, inverse_image, InverseImageCone};
use crate::value::Value;

/// A subset of `ambient`, given as a function `ambient → two`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subset {
    chi: FnMor,
}

impl Subset {
    pub fn from_chi(chi: FnMor) -> Result<Subset> {
        if chi.cod() != classifier().two() {
            return Err(Error::BoundaryMismatch(format!("{} is not the classifier", chi.cod())));
        }
        Ok(Subset { chi })
    }

    /// Subset of `ambient` with the given members. Non-members of `ambient` are rejected.
    pub fn from_members(ambient: &SetObj, members: &[Value]) -> Result<Subset> {
        if let Some(m) = members.iter().find(|m| !ambient.contains(m)) {
            return Err(Error::NotInDomain { value: m.clone() });
        }
        let chi = FnMor::from_fn(ambient.clone(), classifier().two().clone(), |x| {
            Value::Bool(members.contains(x))
        })?;
        Ok(Subset { chi })
    }

    pub fn ambient(&self) -> &SetObj {
        self.chi.dom()
    }

    pub fn chi(&self) -> &FnMor {
        &self.chi
    }

    pub fn contains(&self, x: &Value) -> bool {
        self.chi.apply(x) == Some(&Value::Bool(true))
    }

    /// Members in canonical order: the fibre of truth under `chi`.
    pub fn members(&self) -> SetObj {
        self.fibre().obj().clone()
    }

    /// The inclusion `members → ambient`.
    pub fn fibre(&self) -> InverseImageCone {
        inverse_image(&self.chi, classifier().truth()).expect("truth is an element of two")
    }

    pub fn len(&self) -> usize {
        self.chi.table().iter().filter(|v| **v == Value::Bool(true)).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.ambient() == other.ambient()
            && self.chi.table().iter().zip(other.chi.table()).all(|(a, b)| a <= b)
    }
}

/// The subset an injection picks out.
pub fn subset_from_injection(j: &FnMor) -> Result<Subset> {
    Ok(Subset { chi: characteristic(j)? })
}

/// Whether two injections into the same set differ by an isomorphism
/// `i` with `j2 = j1 ∘ i`. Decided by search over all bijections.
pub fn same_image(j1: &FnMor, j2: &FnMor) -> bool {
    if j1.cod() != j2.cod() || j1.dom().len() != j2.dom().len() {
        return false;
    }
    crate::category::hom(j2.dom(), j1.dom())
        .any(|i| is_isomorphism(&i).is_some() && compose(j1, &i).ok().as_ref() == Some(j2))
}

/// The image of `f` as a subset of its codomain.
pub fn image(f: &FnMor) -> Subset {
    let mut hit = vec![false; f.cod().len()];
    for k in f.image_indices() {
        hit[k] = true;
    }
    let chi = FnMor::from_parts_unchecked(
        f.cod().clone(),
        classifier().two().clone(),
        hit.into_iter().map(Value::Bool).collect(),
    );
    Subset { chi }
}

/// Whether `f` lands inside `s`, i.e. factors through its inclusion.
pub fn factors_through(f: &FnMor, s: &Subset) -> bool {
    f.cod() == s.ambient() && f.table().iter().all(|y| s.contains(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{hom, identity};

    fn set(names: &[&str]) -> SetObj {
        SetObj::atoms(names)
    }

    fn a(n: &str) -> Value {
        Value::atom(n)
    }

    fn t(b: bool) -> Value {
        Value::Bool(b)
    }

    #[test]
    fn from_injection_cases() {
        let ab = set(&["a", "b"]);
        let incl = FnMor::new(set(&["a"]), ab.clone(), [(a("a"), a("a"))]).unwrap();
        assert_eq!(subset_from_injection(&incl).unwrap().chi().table(), &[t(true), t(false)]);
        let other = FnMor::new(set(&["z"]), ab.clone(), [(a("z"), a("a"))]).unwrap();
        assert!(same_image(&incl, &other));
        assert_eq!(subset_from_injection(&incl).unwrap(), subset_from_injection(&other).unwrap());
        let none = crate::universal::from_empty(&ab);
        assert!(subset_from_injection(&none).unwrap().is_empty());
    }

    #[test]
    fn image_cases() {
        let xy = set(&["x", "y"]);
        let f = FnMor::new(set(&["1", "2"]), xy.clone(), [(a("1"), a("x")), (a("2"), a("x"))]).unwrap();
        assert_eq!(image(&f).members(), set(&["x"]));
        assert_eq!(image(&identity(&xy)).len(), 2);
        assert!(image(&crate::universal::from_empty(&xy)).is_empty());
    }

    #[test]
    fn image_is_least_subset_through_which_f_factors() {
        let pool = ["a", "b", "c"];
        for k in 0..=3 {
            for m in 0..=3 {
                let x = set(&pool[..k]);
                let y = set(&pool[..m]);
                for f in hom(&x, &y) {
                    let im = image(&f);
                    for chi in hom(&y, classifier().two()) {
                        let s = Subset::from_chi(chi).unwrap();
                        assert_eq!(factors_through(&f, &s), im.is_subset_of(&s));
                    }
                }
            }
        }
    }

    #[test]
    fn round_trip_through_fibre_of_truth() {
        let pool = ["a", "b", "c"];
        for k in 0..=3 {
            for m in 0..=3 {
                let src = set(&pool[..k]);
                let x = set(&pool[..m]);
                for j in hom(&src, &x).filter(FnMor::is_injective) {
                    let s = subset_from_injection(&j).unwrap();
                    assert!(same_image(&j, s.fibre().incl()));
                }
            }
        }
    }
}
