use std::fmt::Debug;

use num_traits::{FromPrimitive, Num, Signed};

/// Ordered field the predicates are written against.
pub trait Field: Num + Signed + FromPrimitive + Clone + PartialOrd + Debug {
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("integer fits") / Self::from_i64(den).expect("integer fits")
    }
}

impl<T> Field for T where T: Num + Signed + FromPrimitive + Clone + PartialOrd + Debug {}
