use crate::category::{compose, identity, FnMor, SetObj};
use crate::error::Result;
use crate::universal::{function_set, inverse_image_at};
use crate::value::Value;

/// The fibres of `p : X → I`, one per element of `I`, in canonical order.
pub fn family_from_map(p: &FnMor) -> Result<Vec<(Value, SetObj)>> {
    p.cod()
        .values()
        .iter()
        .map(|i| Ok((i.clone(), inverse_image_at(p, i)?.obj().clone())))
        .collect()
}

/// `∏ p⁻¹(i)`, realised inside `X^I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedProduct {
    obj: SetObj,
    incl: FnMor,
}

impl IndexedProduct {
    /// Elements are graphs `I → X` choosing a point of each fibre.
    pub fn obj(&self) -> &SetObj {
        &self.obj
    }

    /// The inclusion into `X^I`.
    pub fn incl(&self) -> &FnMor {
        &self.incl
    }
}

/// The fibre of `p^I : X^I → I^I` over the name of `1_I`.
pub fn indexed_product(p: &FnMor) -> Result<IndexedProduct> {
    let (x, i) = (p.dom(), p.cod());
    let x_i = function_set(i, x);
    let i_i = function_set(i, i);
    // p^I is post-composition with p.
    let table = x_i
        .obj()
        .values()
        .iter()
        .map(|g| i_i.name_of(&compose(p, &x_i.function_of(g)?)?))
        .collect::<Result<Vec<_>>>()?;
    let p_i = FnMor::from_table(x_i.obj().clone(), i_i.obj().clone(), table)?;
    let fibre = inverse_image_at(&p_i, &i_i.name_of(&identity(i))?)?;
    Ok(IndexedProduct { obj: fibre.obj().clone(), incl: fibre.incl().clone() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: &str) -> Value {
        Value::atom(n)
    }

    fn map(dom: &[&str], cod: &[&str], pairs: &[(&str, &str)]) -> FnMor {
        FnMor::new(SetObj::atoms(dom), SetObj::atoms(cod), pairs.iter().map(|(x, y)| (a(x), a(y)))).unwrap()
    }

    #[test]
    fn fibres_partition() {
        let p = map(&["1", "2", "3"], &["i", "j"], &[("1", "i"), ("2", "i"), ("3", "j")]);
        let fam = family_from_map(&p).unwrap();
        assert_eq!(fam, vec![(a("i"), SetObj::atoms(["1", "2"])), (a("j"), SetObj::atoms(["3"]))]);
        let p2 = map(&["1"], &["i", "j"], &[("1", "i")]);
        assert!(family_from_map(&p2).unwrap()[1].1.is_empty());
        let ident = identity(&SetObj::atoms(["x", "y"]));
        assert!(family_from_map(&ident).unwrap().iter().all(|(_, f)| f.len() == 1));
    }

    #[test]
    fn sizes() {
        let p = map(&["1", "2", "3", "4", "5"], &["i", "j"], &[("1", "i"), ("2", "i"), ("3", "j"), ("4", "j"), ("5", "j")]);
        assert_eq!(indexed_product(&p).unwrap().obj().len(), 6);
        let p2 = map(&["1"], &["i", "j"], &[("1", "i")]);
        assert!(indexed_product(&p2).unwrap().obj().is_empty());
        let p3 = map(&[], &[], &[]);
        let e = indexed_product(&p3).unwrap();
        assert_eq!(e.obj().values(), &[Value::graph([]).unwrap()]);
    }

    #[test]
    fn elements_are_sections() {
        let p = map(&["1", "2", "3"], &["i", "j"], &[("1", "i"), ("2", "i"), ("3", "j")]);
        for g in indexed_product(&p).unwrap().obj().values() {
            for (i, x) in g.as_graph().unwrap() {
                assert_eq!(p.apply(x), Some(i));
            }
        }
    }
}
