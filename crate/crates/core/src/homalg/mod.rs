//! Exact linear algebra over ℤ and prime fields.

mod complex;
mod fp;
mod matrix;
mod snf;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use complex::{cone_acyclic, CochainComplex, CochainMap, CohomologyBasis, ConeReport};
pub use fp::FpMatrix;
pub use matrix::IntMatrix;
pub use snf::{invariant_factors, smith_normal_form, SmithForm};

/// Coefficient ring: the integers or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Ring {
    Integers,
    Prime(u64),
}

impl Ring {
    pub fn fp(p: u64) -> Result<Self> {
        if is_prime(p) && p < (1 << 31) {
            Ok(Ring::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Ring::Prime(_))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::Integers => 0,
            Ring::Prime(p) => *p,
        }
    }

    /// Canonical representative: identity over ℤ, reduction into `[0, p)`
    /// over 𝔽_p.
    pub fn normalize(&self, x: &BigInt) -> BigInt {
        match self {
            Ring::Integers => x.clone(),
            Ring::Prime(p) => {
                let p = BigInt::from(*p);
                ((x % &p) + &p) % p
            }
        }
    }

    pub fn is_zero(&self, x: &BigInt) -> bool {
        self.normalize(x).is_zero()
    }

    pub fn is_unit(&self, x: &BigInt) -> bool {
        match self {
            Ring::Integers => x.abs().is_one(),
            Ring::Prime(_) => !self.is_zero(x),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "zz"),
            Ring::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "zz" | "Z" | "ZZ" => Ok(Ring::Integers),
            other => {
                let p = other
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown ring '{other}', expected zz or fp:<p>")))?;
                Ring::fp(p)
            }
        }
    }
}

impl TryFrom<String> for Ring {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Ring> for String {
    fn from(r: Ring) -> String {
        r.to_string()
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Isomorphism class of a finitely generated abelian group: `ℤ^free_rank ⊕
/// ⨁ ℤ/d_i` with `d_1 | d_2 | ⋯`, every `d_i ≥ 2`. Over 𝔽_p the torsion list
/// is empty and `free_rank` is the dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbInvariants {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbInvariants { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: u64) -> Self {
        AbInvariants { free_rank: 0, torsion: vec![BigInt::from(order)] }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of torsion coefficients divisible by `p`.
    pub fn p_torsion_count(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.torsion.iter().filter(|d| (*d % &p).is_zero()).count()
    }
}

impl fmt::Display for AbInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}
