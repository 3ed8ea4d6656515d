//! Congruences between elliptic newforms and Siegel eigenvalues modulo large primes.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::cohomology::motive::{AlSign, HeckeTraces, Symbol, TraceSource};
use crate::cohomology::report::genuine_trace;
use crate::cohomology::trace::{CensusData, Isotype, TraceOptions};
use crate::error::CohomologyError;
use crate::partition::Partition;

/// An expected congruence `lambda(p) = p^{k_f - s} + a(p) + p^{s-1} (mod ell)`
/// with `s = j + k`, for `F` in `S_{j,k}` and `f` of weight `j + 2k - 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarderCase {
    pub id: String,
    pub elliptic: Symbol,
    pub j: u32,
    pub k: u32,
    pub ell: u64,
    pub isotype: Isotype,
}

impl HarderCase {
    pub fn s(&self) -> u32 {
        self.j + self.k
    }

    pub fn elliptic_weight(&self) -> u32 {
        self.j + 2 * self.k - 2
    }

    /// The local system `V_{l,m}` whose cohomology carries `S_{j,k}`.
    pub fn local_system(&self) -> (u32, u32) {
        (self.j + self.k - 3, self.k - 3)
    }
}

/// The tabulated congruences, identified by modulus (and isotype for 37).
pub fn harder_cases() -> Vec<HarderCase> {
    let w1 = Isotype::YoungInvariants(1);
    let signed = |sign, weight| Symbol::Signed { sign, weight };
    let case = |id: &str, elliptic, j, k, ell, isotype: &Isotype| HarderCase {
        id: id.to_string(),
        elliptic,
        j,
        k,
        ell,
        isotype: isotype.clone(),
    };
    let new4 = Symbol::New { level: 4, weight: 16 };
    vec![
        case("61", signed(AlSign::Plus, 20), 2, 10, 61, &w1),
        case("109", signed(AlSign::Plus, 20), 10, 6, 109, &w1),
        case("29", signed(AlSign::Minus, 18), 6, 7, 29, &w1),
        case("79", signed(AlSign::Minus, 20), 12, 5, 79, &w1),
        case("37", signed(AlSign::Plus, 22), 16, 4, 37, &w1),
        case("37-level4-a", new4, 8, 5, 37, &Isotype::Irrep(Partition::new(vec![4, 1, 1]))),
        case("37-level4-b", new4, 8, 5, 37, &Isotype::Irrep(Partition::new(vec![3, 3]))),
    ]
}

pub fn harder_case(id: &str) -> Option<HarderCase> {
    harder_cases().into_iter().find(|c| c.id == id)
}

/// Outcome at one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarderLine {
    pub p: u64,
    pub lambda: BigInt,
    pub a: BigInt,
    /// `p^{k_f - s} + a(p) + p^{s-1}`.
    pub predicted: BigInt,
    pub holds: bool,
}

/// Checks the congruence at every prime in `data` (one census per prime field).
pub fn harder_check(
    case: &HarderCase,
    data: &[&CensusData],
    options: &TraceOptions,
    source: &HeckeTraces,
) -> Result<Vec<HarderLine>, CohomologyError> {
    if data.is_empty() {
        return Err(CohomologyError::MissingData(format!("no census data for case {}", case.id)));
    }
    let (l, m) = case.local_system();
    let mut out = Vec::new();
    for d in data {
        if d.r != 1 {
            return Err(CohomologyError::MissingData(format!("case {} needs prime fields, got q = {}", case.id, d.q())));
        }
        let p = d.q();
        let lambda = genuine_trace(d, l, m, &case.isotype, options, source)?;
        let a = source.trace(&case.elliptic, p)?;
        let pb = BigInt::from(p);
        let predicted = pb.pow(case.elliptic_weight() - case.s()) + &a + pb.pow(case.s() - 1);
        let ell = BigInt::from(case.ell);
        let holds = (&lambda - &predicted).mod_floor(&ell) == BigInt::from(0);
        out.push(HarderLine { p, lambda, a, predicted, holds });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_geometry() {
        let c = harder_case("61").unwrap();
        assert_eq!(c.local_system(), (9, 7));
        assert_eq!((c.elliptic_weight(), c.s()), (20, 12));
        for c in harder_cases() {
            let (l, m) = c.local_system();
            assert_eq!(l + m + 4, c.elliptic_weight());
        }
    }

    #[test]
    fn tabulated_example_modulo_61() {
        // 3^8 - 13092 + 3^11 and 18360 agree modulo 61
        let rhs: BigInt = BigInt::from(3).pow(8) - 13092 + BigInt::from(3).pow(11);
        assert_eq!(rhs.mod_floor(&BigInt::from(61)), BigInt::from(18360).mod_floor(&BigInt::from(61)));
    }
}
