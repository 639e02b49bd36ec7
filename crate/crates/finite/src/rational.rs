//! Exact rationals and their `"p/q"` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn int(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

pub fn frac(p: i64, q: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(q))
}

/// `"p/q"`, or `"p"` for integers.
pub fn to_text(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse(s: &str) -> Option<Q> {
    match s.split_once('/') {
        Some((p, q)) => {
            let (p, q): (BigInt, BigInt) = (p.trim().parse().ok()?, q.trim().parse().ok()?);
            (!q.is_zero()).then(|| Q::new(p, q))
        }
        None => Some(Q::from_integer(s.trim().parse().ok()?)),
    }
}

pub fn abs(q: &Q) -> Q {
    q.abs()
}

pub fn texts(v: &[Q]) -> Vec<String> {
    v.iter().map(to_text).collect()
}
