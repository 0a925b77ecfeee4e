//! Serde helpers for extended nonnegative reals.
//!
//! JSON has no infinity, so `+inf` is written as the string `"inf"`.

use serde::ser::SerializeSeq;
use serde::Serializer;

pub const INFINITY_TOKEN: &str = "inf";

pub fn serialize<S: Serializer>(x: &f64, serializer: S) -> Result<S::Ok, S::Error> {
    if x.is_infinite() && *x > 0.0 {
        serializer.serialize_str(INFINITY_TOKEN)
    } else {
        serializer.serialize_f64(*x)
    }
}

pub fn serialize_vec<S: Serializer>(xs: &[f64], serializer: S) -> Result<S::Ok, S::Error> {
    struct Ext(f64);
    impl serde::Serialize for Ext {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            serialize(&self.0, s)
        }
    }
    let mut seq = serializer.serialize_seq(Some(xs.len()))?;
    for &x in xs {
        seq.serialize_element(&Ext(x))?;
    }
    seq.end()
}
