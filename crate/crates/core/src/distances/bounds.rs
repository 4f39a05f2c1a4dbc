use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structure::ConvCode;

/// Upper bounds on the window index after which `d_j^r` no longer grows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationBound {
    /// `[n(δ₁+1)+1] · q^{δ₁kr}`
    #[serde(with = "decimal")]
    pub crude: BigUint,
    /// `⌊[n(δ₁+1)+1] · (q^{δ₁kr} − 1) / Π_{i<r} (q^r − q^i)⌋`
    #[serde(with = "decimal")]
    pub sharp: BigUint,
}

pub fn stabilization_bound(code: &ConvCode, r: usize) -> Result<StabilizationBound> {
    check_order(code, r)?;
    Ok(bound_for(
        code.n(),
        code.k(),
        code.delta1(),
        u64::from(code.field().order()),
        r,
    ))
}

pub(crate) fn bound_for(n: usize, k: usize, delta1: usize, q: u64, r: usize) -> StabilizationBound {
    if delta1 == 0 {
        return StabilizationBound {
            crude: BigUint::from(1u32),
            sharp: BigUint::from(1u32),
        };
    }
    let q = BigUint::from(q);
    let factor = BigUint::from(n * (delta1 + 1) + 1);
    let spaces = q.pow((delta1 * k * r) as u32);
    let crude = &factor * &spaces;
    let qr = q.pow(r as u32);
    let group: BigUint = (0..r).map(|i| &qr - q.pow(i as u32)).product();
    let sharp = factor * (spaces - 1u32) / group;
    StabilizationBound { crude, sharp }
}

pub(crate) fn check_order(code: &ConvCode, r: usize) -> Result<()> {
    if r == 0 || r > code.k() {
        return Err(Error::OrderOutOfRange { r, max: code.k() });
    }
    Ok(())
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substituted_values() {
        let b = bound_for(2, 2, 1, 2, 1);
        assert_eq!(b.crude, BigUint::from(20u32));
        let b = bound_for(2, 2, 1, 2, 2);
        assert_eq!(b.crude, BigUint::from(80u32));
        assert_eq!(b.sharp, BigUint::from(12u32));
    }

    #[test]
    fn memoryless_is_one() {
        let b = bound_for(5, 2, 0, 3, 2);
        assert_eq!(b.crude, BigUint::from(1u32));
        assert_eq!(b.sharp, BigUint::from(1u32));
    }

    #[test]
    fn sharp_never_exceeds_crude() {
        for q in [2u64, 3, 4, 5] {
            for k in 1..=3 {
                for r in 1..=k {
                    for d in 1..=3 {
                        let b = bound_for(4, k, d, q, r);
                        assert!(b.sharp <= b.crude && b.sharp >= BigUint::from(1u32));
                    }
                }
            }
        }
    }
}
