//! Formal sums of Tate-twisted motive symbols with integer or
//! representation-valued coefficients, and their Frobenius traces.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cohomology::trace::Isotype;
use crate::error::CohomologyError;
use crate::modforms::hecke::NewformSystem;
use crate::modforms::spaces::{
    dim_cusp, dim_new, dim_sign, full_trace_with, new_trace_with, prime_power, sign_trace_with, TraceRule,
};
use crate::symfunc::Rep;

/// Atkin–Lehner eigenvalue at 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AlSign {
    Plus,
    Minus,
}

impl AlSign {
    pub fn value(self) -> i8 {
        match self {
            AlSign::Plus => 1,
            AlSign::Minus => -1,
        }
    }
}

/// A motive whose Frobenius trace is known (or, for Siegel symbols, sought).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Symbol {
    /// The unit motive; with a Tate power `e` it is `L^e`.
    Unit,
    /// `S[Gamma_0(N), k]`.
    Cusp { level: u32, weight: u32 },
    /// `S[Gamma_0(N), k]^new`.
    New { level: u32, weight: u32 },
    /// `S^{+-}[Gamma_0(2), k]^new`.
    Signed { sign: AlSign, weight: u32 },
    /// `S[Gamma_2[2], (j, k)]`.
    Siegel { j: u32, k: u32 },
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Unit => f.write_str("1"),
            Symbol::Cusp { level, weight } => write!(f, "S[G0({level}),{weight}]"),
            Symbol::New { level, weight } => write!(f, "S[G0({level}),{weight}]new"),
            Symbol::Signed { sign, weight } => {
                let s = if *sign == AlSign::Plus { '+' } else { '-' };
                write!(f, "S{s}[G0(2),{weight}]new")
            }
            Symbol::Siegel { j, k } => write!(f, "S[G2[2],({j},{k})]"),
        }
    }
}

/// Coefficient ring of an expression.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn times(&self, k: i64) -> Self;
}

impl Coefficient for i64 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, k: i64) -> Self {
        self * k
    }
}

impl Coefficient for Rep {
    fn zero() -> Self {
        Rep::ZERO
    }
    fn is_zero(&self) -> bool {
        Rep::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        *self + *o
    }
    fn times(&self, k: i64) -> Self {
        self.scale(k)
    }
}

/// `sum c * L^e * symbol`, keyed by `(e, symbol)` in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr<C: Coefficient> {
    terms: BTreeMap<(u32, Symbol), C>,
}

/// Representation-valued expression.
pub type MotiveExpr = Expr<Rep>;
/// Integer-valued expression.
pub type ScalarExpr = Expr<i64>;

impl<C: Coefficient> Default for Expr<C> {
    fn default() -> Self {
        Expr { terms: BTreeMap::new() }
    }
}

impl<C: Coefficient> Expr<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(coeff: C, tate: u32, symbol: Symbol) -> Self {
        let mut e = Self::zero();
        e.push(coeff, tate, symbol);
        e
    }

    /// `c * L^e`.
    pub fn tate(coeff: C, e: u32) -> Self {
        Self::term(coeff, e, Symbol::Unit)
    }

    pub fn push(&mut self, coeff: C, tate: u32, symbol: Symbol) {
        if coeff.is_zero() {
            return;
        }
        let key = (tate, symbol);
        let sum = match self.terms.get(&key) {
            Some(c) => c.plus(&coeff),
            None => coeff,
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Symbol, &C)> {
        self.terms.iter().map(|((e, s), c)| (*e, s, c))
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (e, s, c) in self.terms() {
            out.push(c.times(k), e, *s);
        }
        out
    }

    /// Multiplication by `L^d`.
    pub fn twist(&self, d: u32) -> Self {
        let mut out = Self::zero();
        for (e, s, c) in self.terms() {
            out.push(c.clone(), e + d, *s);
        }
        out
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Expr<D> {
        let mut out = Expr::zero();
        for (e, s, c) in self.terms() {
            out.push(f(c), e, *s);
        }
        out
    }

    /// Only the terms whose symbol satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(u32, &Symbol) -> bool) -> Self {
        let mut out = Self::zero();
        for (e, s, c) in self.terms() {
            if keep(e, s) {
                out.push(c.clone(), e, *s);
            }
        }
        out
    }

    /// Rewrites every elliptic symbol in the basis of newform symbols
    /// `S[G0(1),k]`, `S+-[G0(2),k]new`, `S[G0(4),k]new`, dropping zero spaces.
    pub fn expand(&self) -> Result<Self, CohomologyError> {
        let mut out = Self::zero();
        for (e, s, c) in self.terms() {
            for (mult, sym) in expand_symbol(s)? {
                out.push(c.times(mult), e, sym);
            }
        }
        Ok(out)
    }

    /// Equality after expansion into newform symbols.
    pub fn equivalent(&self, other: &Self) -> Result<bool, CohomologyError> {
        Ok(self.expand()? == other.expand()?)
    }
}

impl MotiveExpr {
    /// Replaces each representation by its weight against `isotype`.
    pub fn contract(&self, isotype: &Isotype) -> ScalarExpr {
        self.map(|r| isotype.contract(r))
    }

    /// Replaces each representation by its dimension.
    pub fn dimension(&self) -> ScalarExpr {
        self.contract(&Isotype::Full)
    }
}

fn expand_symbol(s: &Symbol) -> Result<Vec<(i64, Symbol)>, CohomologyError> {
    let new1 = |k: u32| Symbol::New { level: 1, weight: k };
    let new4 = |k: u32| Symbol::New { level: 4, weight: k };
    let plus = |k: u32| Symbol::Signed { sign: AlSign::Plus, weight: k };
    let minus = |k: u32| Symbol::Signed { sign: AlSign::Minus, weight: k };
    let raw: Vec<(i64, Symbol)> = match *s {
        Symbol::Cusp { level: 1, weight } | Symbol::New { level: 1, weight } => vec![(1, new1(weight))],
        Symbol::Cusp { level: 2, weight } => vec![(1, plus(weight)), (1, minus(weight)), (2, new1(weight))],
        Symbol::New { level: 2, weight } => vec![(1, plus(weight)), (1, minus(weight))],
        Symbol::Cusp { level: 4, weight } => vec![
            (1, new4(weight)),
            (2, plus(weight)),
            (2, minus(weight)),
            (3, new1(weight)),
        ],
        Symbol::New { level: 4, weight } => vec![(1, new4(weight))],
        Symbol::Cusp { level, .. } | Symbol::New { level, .. } => {
            return Err(crate::error::ModformError::UnsupportedLevel(level).into())
        }
        other => vec![(1, other)],
    };
    let mut out = Vec::new();
    for (m, sym) in raw {
        if symbol_dim(&sym)? != Some(0) {
            out.push((m, sym));
        }
    }
    Ok(out)
}

/// Dimension of the underlying space of modular forms, when known.
pub fn symbol_dim(s: &Symbol) -> Result<Option<usize>, CohomologyError> {
    Ok(match *s {
        Symbol::Unit => Some(1),
        Symbol::Cusp { level, weight } => Some(dim_cusp(level, weight)?),
        Symbol::New { level, weight } => Some(dim_new(level, weight)?),
        Symbol::Signed { sign, weight } => Some(dim_sign(weight, sign.value())?),
        Symbol::Siegel { .. } => None,
    })
}

impl<C: Coefficient> Add for Expr<C> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for ((e, s), c) in o.terms {
            self.push(c, e, s);
        }
        self
    }
}

impl<C: Coefficient> Sub for Expr<C> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + o.scale(-1)
    }
}

impl<C: Coefficient> Neg for Expr<C> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1)
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, e: u32, s: &Symbol) -> fmt::Result {
    match (e, s) {
        (0, Symbol::Unit) => Ok(()),
        (1, _) => write!(f, "L{}", if *s == Symbol::Unit { String::new() } else { format!("*{s}") }),
        (_, Symbol::Unit) => write!(f, "L^{e}"),
        (0, _) => write!(f, "{s}"),
        _ => write!(f, "L^{e}*{s}"),
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // highest Tate power first, constants last
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by_key(|(e, s, _)| (**s != Symbol::Unit, **s, std::cmp::Reverse(*e)));
        for (i, (e, s, &c)) in terms.into_iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            let bare = e == 0 && *s == Symbol::Unit;
            if c.abs() != 1 || bare {
                write!(f, "{}", c.abs())?;
            }
            fmt_monomial(f, e, s)?;
        }
        Ok(())
    }
}

impl fmt::Display for MotiveExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, s, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            if e > 0 || *s != Symbol::Unit {
                f.write_str("*")?;
                fmt_monomial(f, e, s)?;
            }
        }
        Ok(())
    }
}

/// Frobenius traces of symbols at prime powers.
pub trait TraceSource {
    fn trace(&self, symbol: &Symbol, q: u64) -> Result<BigInt, CohomologyError>;
}

/// Traces computed from Hecke matrices on spaces of cusp forms.
#[derive(Debug, Clone, Copy, Default)]
pub struct HeckeTraces {
    pub rule: TraceRule,
}

impl HeckeTraces {
    pub fn new(rule: TraceRule) -> Self {
        HeckeTraces { rule }
    }
}

impl TraceSource for HeckeTraces {
    fn trace(&self, symbol: &Symbol, q: u64) -> Result<BigInt, CohomologyError> {
        let rule = self.rule;
        Ok(match *symbol {
            Symbol::Unit => BigInt::from(1),
            Symbol::Cusp { level, weight } => full_trace_with(level, weight, q, rule)?,
            Symbol::New { level, weight } => new_trace_with(level, weight, q, rule)?,
            Symbol::Signed { sign, weight } => sign_trace_with(weight, sign.value(), q, rule)?,
            Symbol::Siegel { j, k } => {
                return Err(CohomologyError::MissingData(format!("no trace for S[G2[2],({j},{k})]")))
            }
        })
    }
}

/// Traces computed from explicit newform eigensystems, keyed by `(level, weight)`.
#[derive(Debug, Clone, Default)]
pub struct EigenData {
    pub newforms: BTreeMap<(u32, u32), Vec<NewformSystem>>,
    pub rule: TraceRule,
}

impl EigenData {
    pub fn insert(&mut self, level: u32, weight: u32, forms: Vec<NewformSystem>) {
        self.newforms.insert((level, weight), forms);
    }

    fn forms(&self, level: u32, weight: u32) -> Result<&[NewformSystem], CohomologyError> {
        if dim_new(level, weight)? == 0 {
            return Ok(&[]);
        }
        self.newforms
            .get(&(level, weight))
            .map(Vec::as_slice)
            .ok_or_else(|| CohomologyError::MissingData(format!("eigen data for level {level} weight {weight}")))
    }

    fn sum(
        &self,
        level: u32,
        weight: u32,
        q: u64,
        keep: impl Fn(&NewformSystem) -> bool,
    ) -> Result<BigInt, CohomologyError> {
        let (p, r) = prime_power(q)?;
        let mut s = BigInt::zero();
        for f in self.forms(level, weight)?.iter().filter(|f| keep(f)) {
            s += match self.rule {
                TraceRule::Frobenius => f.frobenius_trace(p, r)?,
                TraceRule::HeckeEigenvalue => f.a_prime_power(p, r)?,
            };
        }
        Ok(s)
    }
}

impl TraceSource for EigenData {
    fn trace(&self, symbol: &Symbol, q: u64) -> Result<BigInt, CohomologyError> {
        match *symbol {
            Symbol::Unit => Ok(BigInt::from(1)),
            Symbol::New { level, weight } => self.sum(level, weight, q, |_| true),
            Symbol::Signed { sign, weight } => self.sum(2, weight, q, |f| f.w2 == Some(sign.value())),
            Symbol::Cusp { .. } => {
                let mut s = BigInt::zero();
                for (m, sym) in expand_symbol(symbol)? {
                    s += BigInt::from(m) * self.trace(&sym, q)?;
                }
                Ok(s)
            }
            Symbol::Siegel { j, k } => Err(CohomologyError::MissingData(format!("no trace for S[G2[2],({j},{k})]"))),
        }
    }
}

/// `sum c * q^e * Tr(F_q | symbol)`.
pub fn evaluate(expr: &ScalarExpr, q: u64, source: &dyn TraceSource) -> Result<BigInt, CohomologyError> {
    let mut total = BigInt::zero();
    for (e, s, &c) in expr.terms() {
        total += BigInt::from(c) * BigInt::from(q).pow(e) * source.trace(s, q)?;
    }
    Ok(total)
}

/// Frobenius trace of a representation-valued expression on one isotypic part.
pub fn motive_trace(
    expr: &MotiveExpr,
    q: u64,
    isotype: &Isotype,
    source: &dyn TraceSource,
) -> Result<BigInt, CohomologyError> {
    evaluate(&expr.contract(isotype), q, source)
}
