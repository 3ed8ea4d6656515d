//! Eisenstein, endoscopic and lifted contributions to `e_c(A2[2], V_{l,m})`
//! as motive expressions.

use crate::cohomology::motive::{symbol_dim, AlSign, Coefficient, Expr, MotiveExpr, ScalarExpr, Symbol};
use crate::error::CohomologyError;
use crate::modforms::spaces::{dim_cusp, dim_new, dim_sign};
use crate::symfunc::constants::{a, a_prime, b, b_prime, c, c_prime};
use crate::symfunc::Rep;

fn check(l: u32, m: u32) -> Result<(), CohomologyError> {
    if (l + m) % 2 == 1 {
        return Err(CohomologyError::OddWeight(l + m));
    }
    if l < m {
        return Err(CohomologyError::NotDominant { l, m });
    }
    Ok(())
}

/// Newform dimensions of one weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Taus {
    pub t1: i64,
    pub t2: i64,
    pub t4: i64,
    pub plus: i64,
    pub minus: i64,
}

impl Taus {
    pub fn of(weight: u32) -> Result<Self, CohomologyError> {
        Ok(Taus {
            t1: dim_new(1, weight)? as i64,
            t2: dim_new(2, weight)? as i64,
            t4: dim_new(4, weight)? as i64,
            plus: dim_sign(weight, 1)? as i64,
            minus: dim_sign(weight, -1)? as i64,
        })
    }
}

fn s(parts: &[u8]) -> Rep {
    Rep::s(parts)
}

fn cusp(level: u32, weight: u32) -> Symbol {
    Symbol::Cusp { level, weight }
}

fn new(level: u32, weight: u32) -> Symbol {
    Symbol::New { level, weight }
}

fn signed(sign: AlSign, weight: u32) -> Symbol {
    Symbol::Signed { sign, weight }
}

/// `-L - 1`, the value given to weight-2 cusp motives.
pub fn weight_two<C: Coefficient>(c: C) -> Expr<C> {
    let mut e = Expr::zero();
    e.push(c.times(-1), 1, Symbol::Unit);
    e.push(c.times(-1), 0, Symbol::Unit);
    e
}

/// Eisenstein cohomology of `V_{l,m}` on `A2[2]`, without the `S6`-action.
pub fn eisenstein_total(l: u32, m: u32) -> Result<ScalarExpr, CohomologyError> {
    check(l, m)?;
    let low = if l == m { -1 } else { dim_cusp(4, l - m + 2)? as i64 };
    let high = dim_cusp(4, l + m + 4)? as i64;
    let mut e = ScalarExpr::tate(15 * low, 0) + ScalarExpr::tate(-15 * high, m + 1);
    if m % 2 == 0 {
        e = e + ScalarExpr::tate(45, 0);
        e = e + if m == 0 { weight_two(15) } else { ScalarExpr::term(15, 0, cusp(4, m + 2)) };
    } else {
        e = e + ScalarExpr::term(-15, 0, cusp(4, l + 3));
    }
    Ok(e)
}

fn dim_term(k: u32) -> Result<Rep, CohomologyError> {
    let t = Taus::of(k)?;
    Ok(t.t4 * a_prime() + (t.t2 + t.t1) * b_prime() + t.t1 * c_prime())
}

fn motive_term(k: u32) -> MotiveExpr {
    MotiveExpr::term(a(), 0, new(4, k)) + MotiveExpr::term(b(), 0, new(2, k)) + MotiveExpr::term(b() + c(), 0, new(1, k))
}

/// Eisenstein cohomology with its `S6`-action.
pub fn eisenstein_equivariant(l: u32, m: u32) -> Result<MotiveExpr, CohomologyError> {
    check(l, m)?;
    let low = if l == m { -c_prime() } else { dim_term(l - m + 2)? };
    let mut e = MotiveExpr::tate(low, 0) + MotiveExpr::tate(-dim_term(l + m + 4)?, m + 1);
    if m % 2 == 0 {
        e = e + MotiveExpr::tate(b() + c(), 0);
        e = e + if m == 0 { weight_two(c()) } else { motive_term(m + 2) };
    } else {
        e = e - motive_term(l + 3);
    }
    Ok(e)
}

/// Expanded endoscopic part: strict endoscopy plus the trailing terms of lifts.
pub fn endoscopy(l: u32, m: u32) -> Result<MotiveExpr, CohomologyError> {
    check(l, m)?;
    let k = l + m + 4;
    let t = Taus::of(k)?;
    if l == m {
        let r = if m % 2 == 1 {
            t.plus * s(&[1, 1, 1, 1, 1, 1]) + t.t4 * s(&[3, 3]) + t.minus * s(&[5, 1])
        } else {
            (t.minus + t.t1) * s(&[2, 2, 2]) + (t.plus + t.t1) * s(&[4, 2]) + t.t1 * s(&[6])
        };
        return Ok(MotiveExpr::tate(r, m + 1) + MotiveExpr::tate(r, m + 2));
    }
    let kp = l - m + 2;
    let r4 = t.t4 * s(&[3, 1, 1, 1]) + t.t1 * s(&[3, 3]) + (t.t1 + t.t2) * s(&[4, 1, 1]);
    let r2 = (t.t1 + t.t2) * s(&[3, 2, 1]) + t.t4 * s(&[4, 1, 1]) + t.t1 * s(&[4, 2]) + t.t1 * s(&[5, 1]);
    let rp = t.plus * s(&[4, 2]) + t.minus * s(&[5, 1]);
    let rm = t.minus * s(&[4, 2]) + t.plus * s(&[5, 1]);
    let r1 = t.t1 * s(&[2, 2, 2])
        + (t.t1 + t.t2) * s(&[3, 2, 1])
        + t.t4 * s(&[3, 3])
        + t.t4 * s(&[4, 1, 1])
        + (t.t2 + 2 * t.t1) * s(&[4, 2])
        + (t.t1 + t.t2) * s(&[5, 1])
        + t.t1 * s(&[6]);
    let inner = MotiveExpr::term(r4, 0, new(4, kp))
        + MotiveExpr::term(r2, 0, new(2, kp))
        + MotiveExpr::term(rp, 0, signed(AlSign::Plus, kp))
        + MotiveExpr::term(rm, 0, signed(AlSign::Minus, kp))
        + MotiveExpr::term(r1, 0, new(1, kp));
    Ok(-inner.twist(m + 1))
}

/// Strict endoscopy `-5 L^{m+1} dim S_k(G0(4)) S[G0(4),k']`, without the `S6`-action.
pub fn strict_endoscopy(l: u32, m: u32) -> Result<ScalarExpr, CohomologyError> {
    check(l, m)?;
    let d = dim_cusp(4, l + m + 4)? as i64;
    let kp = l - m + 2;
    let inner = if kp == 2 { weight_two(-5 * d) } else { ScalarExpr::term(-5 * d, 0, cusp(4, kp)) };
    Ok(inner.twist(m + 1))
}

/// One line of a lift decomposition: a representation times the space of
/// forms `f` of weight `k` paired with forms `g` of weight `k'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftFamily {
    pub rep: Rep,
    pub leading: Symbol,
    /// `None` for Saito–Kurokawa lifts.
    pub trailing: Option<Symbol>,
}

/// The lift families occupying `S^lift_{l-m,m+3}(Gamma_2[2])`.
pub fn lift_families(l: u32, m: u32) -> Result<Vec<LiftFamily>, CohomologyError> {
    check(l, m)?;
    let k = l + m + 4;
    let (p, n) = (AlSign::Plus, AlSign::Minus);
    let sk = |rep: Rep, leading: Symbol| LiftFamily { rep, leading, trailing: None };
    let yo = |rep: Rep, f: Symbol, g: Symbol| LiftFamily { rep, leading: f, trailing: Some(g) };
    if l == m {
        return Ok(if m % 2 == 1 {
            vec![
                sk(s(&[4, 2]), signed(p, k)),
                sk(s(&[2, 2, 2]), signed(n, k)),
                sk(s(&[6]) + s(&[4, 2]) + s(&[2, 2, 2]), new(1, k)),
            ]
        } else {
            vec![
                sk(s(&[3, 3]), new(4, k)),
                sk(s(&[5, 1]), signed(n, k)),
                sk(s(&[1, 1, 1, 1, 1, 1]), signed(p, k)),
            ]
        });
    }
    let kp = l - m + 2;
    let two = s(&[2, 2, 2]);
    let one = s(&[1, 1, 1, 1, 1, 1]);
    Ok(vec![
        yo(s(&[2, 1, 1, 1, 1]), new(4, k), new(4, kp)),
        yo(two, signed(p, k), signed(p, kp)),
        yo(one, signed(p, k), signed(n, kp)),
        yo(two, signed(n, k), signed(n, kp)),
        yo(one, signed(n, k), signed(p, kp)),
    ])
}

fn dim_of(sym: &Symbol) -> Result<i64, CohomologyError> {
    Ok(symbol_dim(sym)?.expect("elliptic symbol") as i64)
}

/// Motive of the lift subspace: `M_f + L^{m+1} M_g` summed over pairs, or
/// `M_f + L^{m+1} + L^{m+2}` per Saito–Kurokawa lift.
pub fn lift_decomposition(l: u32, m: u32) -> Result<MotiveExpr, CohomologyError> {
    let mut e = MotiveExpr::zero();
    for fam in lift_families(l, m)? {
        let nf = dim_of(&fam.leading)?;
        match fam.trailing {
            Some(g) => {
                let ng = dim_of(&g)?;
                e.push(fam.rep.scale(ng), 0, fam.leading);
                e.push(fam.rep.scale(nf), m + 1, g);
            }
            None => {
                e.push(fam.rep, 0, fam.leading);
                e.push(fam.rep.scale(nf), m + 1, Symbol::Unit);
                e.push(fam.rep.scale(nf), m + 2, Symbol::Unit);
            }
        }
    }
    Ok(e)
}

/// The leading parts `M_f` of all lifts, which the expanded endoscopy leaves in `-S[Gamma_2[2]]`.
pub fn lift_leading(l: u32, m: u32) -> Result<MotiveExpr, CohomologyError> {
    let mut e = MotiveExpr::zero();
    for fam in lift_families(l, m)? {
        let mult = match fam.trailing {
            Some(g) => dim_of(&g)?,
            None => 1,
        };
        e.push(fam.rep.scale(mult), 0, fam.leading);
    }
    Ok(e)
}

/// Everything except the genuine Siegel part: `Eis + End - sum M_f`.
pub fn predicted(l: u32, m: u32) -> Result<MotiveExpr, CohomologyError> {
    Ok(eisenstein_equivariant(l, m)? + endoscopy(l, m)? - lift_leading(l, m)?)
}

/// Eisenstein cohomology on `A2(w^1)`, as stated for regular weights.
pub fn eisenstein_w1(l: u32, m: u32) -> Result<ScalarExpr, CohomologyError> {
    check(l, m)?;
    let mut e = ScalarExpr::tate(dim_cusp(2, l - m + 2)? as i64, 0)
        + ScalarExpr::tate(-(dim_cusp(2, l + m + 4)? as i64), m + 1);
    e = e + if m % 2 == 0 {
        ScalarExpr::term(2, 0, cusp(1, m + 2)) + ScalarExpr::tate(2, 0)
    } else {
        ScalarExpr::term(-2, 0, cusp(1, l + 3))
    };
    Ok(e)
}

/// Eisenstein cohomology on `A2(w^3)`, as stated for regular weights.
pub fn eisenstein_w3(l: u32, m: u32) -> Result<ScalarExpr, CohomologyError> {
    check(l, m)?;
    let mut e = ScalarExpr::tate(4 * dim_cusp(4, l - m + 2)? as i64, 0)
        + ScalarExpr::tate(-4 * dim_cusp(4, l + m + 4)? as i64, m + 1);
    let triple = |k: u32, sign: i64| {
        ScalarExpr::term(3 * sign, 0, cusp(1, k))
            + ScalarExpr::term(3 * sign, 0, cusp(2, k))
            + ScalarExpr::term(sign, 0, cusp(4, k))
    };
    e = e + if m % 2 == 0 { triple(m + 2, 1) + ScalarExpr::tate(12, 0) } else { triple(l + 3, -1) };
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::motive::{evaluate, HeckeTraces};
    use num_bigint::BigInt;

    #[test]
    fn eisenstein_three_one() {
        let e = eisenstein_total(3, 1).unwrap();
        let expect = ScalarExpr::tate(-30, 2) + ScalarExpr::term(-15, 0, cusp(4, 6));
        assert_eq!(e, expect);
        assert_eq!(evaluate(&e, 3, &HeckeTraces::default()).unwrap(), BigInt::from(-90));
    }

    #[test]
    fn dimension_contraction_small() {
        for (l, m) in [(0, 0), (2, 0), (3, 1), (4, 2), (5, 1), (3, 3), (8, 2)] {
            let eq = eisenstein_equivariant(l, m).unwrap().dimension();
            assert!(eq.equivalent(&eisenstein_total(l, m).unwrap()).unwrap(), "({l},{m})");
        }
    }

    #[test]
    fn endoscopy_vanishes_at_four_two() {
        assert!(endoscopy(4, 2).unwrap().expand().unwrap().is_zero());
        assert!(lift_decomposition(4, 2).unwrap().expand().unwrap().is_zero());
    }

    #[test]
    fn odd_weight_rejected() {
        assert!(matches!(eisenstein_total(1, 0), Err(CohomologyError::OddWeight(1))));
        assert!(matches!(endoscopy(3, 0), Err(CohomologyError::OddWeight(3))));
    }
}
