//! Serde helpers: exact rationals are written as strings like `"1/2"`.

use num_rational::BigRational;
use serde::Serializer;

pub(crate) fn ratio<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}
