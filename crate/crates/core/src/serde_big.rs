//! Large integers travel as decimal strings in JSON and CSV.

use num_bigint::BigUint;
use serde::Serializer;

pub fn decimal<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}
