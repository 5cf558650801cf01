//! Constructions built from the universal ones: subsets, images, quotients,
//! disjoint unions, the integers and indexed products.

mod coproduct;
mod indexed;
mod integers;
mod quotient;
mod subset;

pub use coproduct::{axiomatic_union, coproduct, tagged_union, Coproduct, CoproductCone};
pub use indexed::{family_from_map, indexed_product, IndexedProduct};
pub use integers::{build_integers, Integers};
pub use quotient::{quotient, EquivLaw, EquivRelation, Quotient};
pub use subset::{factors_through, image, same_image, subset_from_injection, Subset};
