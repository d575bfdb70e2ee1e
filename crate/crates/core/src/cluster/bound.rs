use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest exponent of two for which [`ClusterBound`] is expanded exactly.
pub const EXACT_EXPONENT_LIMIT: u64 = 1 << 20;

/// The profile size bound `N_ℓ = (d+1)(h-1)(k+1)^(d-1-ℓ)`.
pub fn profile_bound(d: usize, h: usize, k: usize, level: usize) -> Result<BigUint> {
    if level >= d {
        return Err(Error::Invalid(format!("level {level} outside [0, {}]", d.saturating_sub(1))));
    }
    let base = BigUint::from(d + 1) * BigUint::from(h.saturating_sub(1));
    Ok(base * BigUint::from(k + 1).pow((d - 1 - level) as u32))
}

/// `min(N_ℓ, cap)` as a machine integer.
pub fn effective_profile_bound(d: usize, h: usize, k: usize, level: usize, cap: usize) -> usize {
    profile_bound(d, h, k, level)
        .ok()
        .and_then(|n| n.to_usize())
        .map_or(cap, |n| n.min(cap))
}

/// Exponent of two in `M_ℓ = 2^(2^C(N,2) d^N 3^C(N,2))` for `N = N_ℓ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerTerm {
    pub n: BigUint,
}

impl TowerTerm {
    fn exponent(&self, d: usize) -> Option<BigUint> {
        let n = self.n.to_u64().filter(|&n| n <= 64)?;
        let pairs = (n * n.saturating_sub(1) / 2) as u32;
        Some(BigUint::from(2u32).pow(pairs) * BigUint::from(d).pow(n as u32) * BigUint::from(3u32).pow(pairs))
    }
}

/// The group-size bound `s(ℓ) = (k-1)^(d-1-ℓ) · Π_{m>ℓ} M_m`, exact when
/// representable and otherwise kept as a tower of exact exponent terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClusterBound {
    Exact(BigUint),
    Tower { d: usize, k_minus_one: usize, power: usize, terms: Vec<TowerTerm> },
}

impl ClusterBound {
    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            ClusterBound::Exact(v) => Some(v),
            ClusterBound::Tower { .. } => None,
        }
    }
}

impl fmt::Display for ClusterBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClusterBound::Exact(v) => write!(f, "{v}"),
            ClusterBound::Tower { d, k_minus_one, power, terms } => {
                write!(f, "{k_minus_one}^{power} * 2^(")?;
                for (i, t) in terms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "2^C({n},2) * {d}^{n} * 3^C({n},2)", n = t.n)?;
                }
                f.write_str(")")
            }
        }
    }
}

pub fn theoretical_cluster_bound(d: usize, h: usize, k: usize, level: usize) -> Result<ClusterBound> {
    if level >= d {
        return Err(Error::Invalid(format!("level {level} outside [0, {}]", d.saturating_sub(1))));
    }
    let power = d - 1 - level;
    if power == 0 {
        return Ok(ClusterBound::Exact(BigUint::one()));
    }
    if k <= 1 {
        return Ok(ClusterBound::Exact(BigUint::zero()));
    }
    let terms = ((level + 1)..d)
        .map(|m| profile_bound(d, h, k, m).map(|n| TowerTerm { n }))
        .collect::<Result<Vec<_>>>()?;
    let exponent: Option<BigUint> = terms.iter().map(|t| t.exponent(d)).sum();
    let factor = BigUint::from(k - 1).pow(power as u32);
    match exponent.and_then(|e| e.to_u64()).filter(|&e| e <= EXACT_EXPONENT_LIMIT) {
        Some(e) => Ok(ClusterBound::Exact(factor << e)),
        None => Ok(ClusterBound::Tower { d, k_minus_one: k - 1, power, terms }),
    }
}
