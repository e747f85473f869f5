//! Real-root isolation for rational polynomials via Sturm sequences.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat, simplest_between, to_decimal, to_f64, Rational};

use super::Polynomial;

/// Default isolating-interval width: `10^-12`.
pub fn default_width() -> Rational {
    Rational::new(1.into(), num::pow(num::BigInt::from(10), 12))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootLocation {
    Exact(Rational),
    /// Open interval `(lo, hi)` containing exactly one root of the factor.
    Interval { lo: Rational, hi: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealRoot {
    pub location: RootLocation,
    pub multiplicity: usize,
}

impl RealRoot {
    pub fn lower(&self) -> &Rational {
        match &self.location {
            RootLocation::Exact(q) => q,
            RootLocation::Interval { lo, .. } => lo,
        }
    }

    pub fn upper(&self) -> &Rational {
        match &self.location {
            RootLocation::Exact(q) => q,
            RootLocation::Interval { hi, .. } => hi,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match &self.location {
            RootLocation::Exact(q) => Some(q),
            RootLocation::Interval { .. } => None,
        }
    }

    pub fn midpoint(&self) -> Rational {
        (self.lower() + self.upper()) / Rational::from_integer(2.into())
    }

    pub fn width(&self) -> Rational {
        self.upper() - self.lower()
    }

    pub fn approx(&self) -> f64 {
        to_f64(&self.midpoint())
    }

    /// 12 significant digits.
    pub fn decimal(&self) -> String {
        to_decimal(&self.midpoint(), 12)
    }
}

/// Sturm chain of a square-free polynomial.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<Polynomial>,
}

impl SturmChain {
    pub fn new(p: &Polynomial) -> Self {
        let mut chain = vec![p.clone()];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(d);
        }
        loop {
            let n = chain.len();
            if n < 2 {
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            // positive rescaling keeps signs intact and coefficients small
            let lc = r.leading().expect("nonzero").abs();
            chain.push((-&r).scale(&lc.recip()));
        }
        Self { chain }
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        count_variations(self.chain.iter().map(|p| p.eval(x)))
    }

    /// Sign variations as `x -> +inf` (`positive`) or `x -> -inf`.
    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        count_variations(self.chain.iter().map(|p| {
            let lc = p.leading().cloned().unwrap_or_else(Rational::zero);
            let deg = p.degree().unwrap_or(0);
            if !positive && deg % 2 == 1 {
                -lc
            } else {
                lc
            }
        }))
    }

    /// Number of distinct roots in `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false)
            .saturating_sub(self.variations_at_infinity(true))
    }
}

fn count_variations(values: impl Iterator<Item = Rational>) -> usize {
    let mut last: Option<bool> = None;
    let mut n = 0;
    for v in values {
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if last.is_some_and(|l| l != pos) {
            n += 1;
        }
        last = Some(pos);
    }
    n
}

/// Cauchy bound: every real root lies in `(-B, B)`.
pub fn root_bound(p: &Polynomial) -> Rational {
    let lc = p.leading().expect("nonzero polynomial").abs();
    let max = p
        .coeffs()
        .iter()
        .map(|c| c.abs() / &lc)
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    max + Rational::one()
}

/// Real roots in `(lo, hi]` with multiplicities, isolated to width at most `10^-12`.
pub fn real_roots(p: &Polynomial, lo: &Rational, hi: &Rational) -> Result<Vec<RealRoot>> {
    real_roots_with_width(p, lo, hi, &default_width())
}

pub fn real_roots_with_width(
    p: &Polynomial,
    lo: &Rational,
    hi: &Rational,
    width: &Rational,
) -> Result<Vec<RealRoot>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if lo >= hi {
        return Ok(out);
    }
    for (factor, multiplicity) in p.square_free_decomposition() {
        let sturm = SturmChain::new(&factor);
        let mut isolated = Vec::new();
        isolate(&sturm, lo.clone(), hi.clone(), &mut isolated);
        for (a, b) in isolated {
            let location = refine(&factor, &sturm, a, b, width);
            out.push(RealRoot {
                location,
                multiplicity,
            });
        }
    }
    out.sort_by(|x, y| x.lower().cmp(y.lower()));
    Ok(out)
}

/// All real roots of `p`.
pub fn all_real_roots(p: &Polynomial) -> Result<Vec<RealRoot>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let b = root_bound(p);
    real_roots(p, &-b.clone(), &b)
}

/// Roots in the open interval `(lo, hi)`.
pub fn roots_in_open(p: &Polynomial, lo: &Rational, hi: &Rational) -> Result<Vec<RealRoot>> {
    let mut roots = real_roots(p, lo, hi)?;
    roots.retain(|r| r.exact() != Some(hi));
    Ok(roots)
}

/// Smallest root in `(lo, hi)`, if any.
pub fn smallest_root_in(p: &Polynomial, lo: &Rational, hi: &Rational) -> Result<Option<RealRoot>> {
    Ok(roots_in_open(p, lo, hi)?.into_iter().next())
}

fn isolate(sturm: &SturmChain, a: Rational, b: Rational, out: &mut Vec<(Rational, Rational)>) {
    match sturm.count(&a, &b) {
        0 => {}
        1 => out.push((a, b)),
        _ => {
            let mid = (&a + &b) / Rational::from_integer(2.into());
            isolate(sturm, a, mid.clone(), out);
            isolate(sturm, mid, b, out);
        }
    }
}

fn refine(f: &Polynomial, sturm: &SturmChain, mut a: Rational, mut b: Rational, width: &Rational) -> RootLocation {
    if f.eval(&b).is_zero() {
        return RootLocation::Exact(b);
    }
    let half = rat(1, 2);
    while &(&b - &a) > width {
        let mid = (&a + &b) * &half;
        if f.eval(&mid).is_zero() {
            return RootLocation::Exact(mid);
        }
        if sturm.count(&a, &mid) == 1 {
            b = mid;
        } else {
            a = mid;
        }
    }
    // small-denominator rational roots are never hit by dyadic midpoints
    let s = simplest_between(&a, &b);
    if s > a && s < b && f.eval(&s).is_zero() {
        return RootLocation::Exact(s);
    }
    RootLocation::Interval { lo: a, hi: b }
}
