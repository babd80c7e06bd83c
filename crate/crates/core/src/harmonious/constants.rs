//! The constants `C1`, `C2` of the harmonious sandwich.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::zassenhaus_terms;
use crate::rational::lcm_all;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ProvenSmallStep,
    ZassenhausLcm,
    UserOverride,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstantTable {
    pub step: usize,
    pub c1: u64,
    pub c2: u64,
    pub provenance: Provenance,
}

impl ConstantTable {
    /// Default constants for step `s`.
    ///
    /// Steps 1 and 2 use `(1, 1)` and `(2, 2)`. Steps 3 and 4 take `C1` to be
    /// the lcm of the denominators of the Zassenhaus factors and
    /// `C2 = C1^{3(s-1)}`; larger steps need explicit values.
    pub fn for_step(step: usize) -> Result<Self> {
        let (c1, c2, provenance) = match step {
            0 => return Err(Error::usage("step must be at least 1")),
            1 => (1, 1, Provenance::ProvenSmallStep),
            2 => (2, 2, Provenance::ProvenSmallStep),
            3 | 4 => {
                let terms = zassenhaus_terms(step)?;
                let dens: Vec<BigInt> = terms.iter().flatten().map(|t| t.coefficient.denom().clone()).collect();
                let c1 = lcm_all(&dens).to_u64().expect("small lcm");
                let c2 = c1.checked_pow(3 * (step as u32 - 1)).ok_or_else(|| Error::resource("C2", u64::MAX))?;
                (c1, c2, Provenance::ZassenhausLcm)
            }
            _ => {
                return Err(Error::usage(format!(
                    "no default constants for step {step}; pass C1 and C2 explicitly"
                )))
            }
        };
        Ok(ConstantTable { step, c1, c2, provenance })
    }

    pub fn user(step: usize, c1: u64, c2: u64) -> Result<Self> {
        if step == 0 || c1 == 0 || c2 == 0 {
            return Err(Error::usage("step, C1 and C2 must be positive"));
        }
        Ok(ConstantTable {
            step,
            c1,
            c2,
            provenance: Provenance::UserOverride,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let t = ConstantTable::for_step(1).unwrap();
        assert_eq!((t.c1, t.c2), (1, 1));
        let t = ConstantTable::for_step(2).unwrap();
        assert_eq!((t.c1, t.c2, t.provenance), (2, 2, Provenance::ProvenSmallStep));
        let t = ConstantTable::for_step(3).unwrap();
        assert_eq!((t.c1, t.c2, t.provenance), (6, 6u64.pow(6), Provenance::ZassenhausLcm));
        let t = ConstantTable::for_step(4).unwrap();
        assert_eq!((t.c1, t.c2), (24, 24u64.pow(9)));
        assert!(matches!(ConstantTable::for_step(5), Err(Error::Usage(_))));
        assert!(ConstantTable::user(5, 120, 7).is_ok());
    }
}
