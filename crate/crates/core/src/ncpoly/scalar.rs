//! Commutative polynomials in the spectral symbols `mu1..mud` with
//! Gaussian-rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact complex rational `a + b i`.
pub type GaussRat = Complex<BigRational>;

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn gauss(re: BigRational, im: BigRational) -> GaussRat {
    Complex::new(re, im)
}

pub fn gauss_int(k: i64) -> GaussRat {
    Complex::new(rat(k, 1), BigRational::zero())
}

pub fn imag_unit() -> GaussRat {
    Complex::new(BigRational::zero(), BigRational::one())
}

/// Monomial `mu_{k1}^{e1} mu_{k2}^{e2} ...` stored sparsely with strictly
/// increasing symbol indices and positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(u8, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn symbol(k: u8) -> Self {
        Monomial(vec![(k, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn factors(&self) -> &[(u8, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: BTreeMap<u8, u32> = self.0.iter().copied().collect();
        for &(k, e) in &other.0 {
            *out.entry(k).or_insert(0) += e;
        }
        Monomial(out.into_iter().collect())
    }

    pub fn pow(&self, e: u32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(k, x)| (k, x * e)).collect())
    }
}

/// Graded order: total degree first, then the sparse representation.
fn graded_cmp(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    a.degree().cmp(&b.degree()).then_with(|| b.0.cmp(&a.0))
}

/// Polynomial in the `mu` symbols. Zero has empty support; no stored
/// coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ScalarPoly {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl ScalarPoly {
    pub fn zero() -> Self {
        ScalarPoly::default()
    }

    pub fn one() -> Self {
        ScalarPoly::constant(gauss_int(1))
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut p = ScalarPoly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn int(k: i64) -> Self {
        ScalarPoly::constant(gauss_int(k))
    }

    /// The symbol `mu_k` (1-based).
    pub fn mu(k: u8) -> Self {
        let mut p = ScalarPoly::zero();
        p.add_term(Monomial::symbol(k), gauss_int(1));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    /// Highest symbol index appearing, or 0.
    pub fn max_symbol(&self) -> u8 {
        self.terms.keys().flat_map(|m| m.0.iter().map(|&(k, _)| k)).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &GaussRat) -> ScalarPoly {
        if c.is_zero() {
            return ScalarPoly::zero();
        }
        ScalarPoly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> ScalarPoly {
        let mut out = ScalarPoly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// The constant coefficient if the polynomial is constant.
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(gauss_int(0)),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Numerical evaluation at complex values of `mu` (index k-1 holds mu_k).
    pub fn eval(&self, mu: &[num_complex::Complex64]) -> num_complex::Complex64 {
        use num_traits::ToPrimitive;
        self.terms
            .iter()
            .map(|(m, c)| {
                let coeff = num_complex::Complex64::new(c.re.to_f64().unwrap_or(f64::NAN), c.im.to_f64().unwrap_or(f64::NAN));
                m.0.iter().fold(coeff, |acc, &(k, e)| acc * mu[(k - 1) as usize].powu(e))
            })
            .sum()
    }

    fn sorted_terms(&self) -> Vec<(&Monomial, &GaussRat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| graded_cmp(b.0, a.0));
        v
    }
}

impl Add for &ScalarPoly {
    type Output = ScalarPoly;
    fn add(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ScalarPoly {
    type Output = ScalarPoly;
    fn sub(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &ScalarPoly {
    type Output = ScalarPoly;
    fn mul(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = ScalarPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        ScalarPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

/// Writes a rational without redundant denominators: `3`, `-3/2`.
fn fmt_rat(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text of a Gaussian rational, parseable by the expression
/// parser: `2`, `-3/2`, `i`, `-2 i`, `1/2 + 3/2 i`.
pub struct GaussDisplay<'a>(pub &'a GaussRat);

impl fmt::Display for GaussDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = self.0;
        let imag = |f: &mut fmt::Formatter<'_>, im: &BigRational| -> fmt::Result {
            if im.is_one() {
                write!(f, "i")
            } else if (-im).is_one() {
                write!(f, "-i")
            } else {
                fmt_rat(f, im)?;
                write!(f, " i")
            }
        };
        match (z.re.is_zero(), z.im.is_zero()) {
            (_, true) => fmt_rat(f, &z.re),
            (true, false) => imag(f, &z.im),
            (false, false) => {
                fmt_rat(f, &z.re)?;
                if z.im.is_negative() {
                    write!(f, " - ")?;
                    imag(f, &-z.im.clone())
                } else {
                    write!(f, " + ")?;
                    imag(f, &z.im)
                }
            }
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(k, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "mu{k}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sign-separated term list: returns (is_negative, magnitude text).
pub(crate) fn term_parts(c: &GaussRat, m: &Monomial) -> (bool, String) {
    let negative_real = c.im.is_zero() && c.re.is_negative();
    let negative_imag = c.re.is_zero() && c.im.is_negative();
    let (neg, mag) = if negative_real || negative_imag { (true, -c.clone()) } else { (false, c.clone()) };
    let coeff_txt = if mag.re.is_zero() || mag.im.is_zero() {
        format!("{}", GaussDisplay(&mag))
    } else {
        format!("({})", GaussDisplay(&mag))
    };
    let txt = if m.is_one() {
        coeff_txt
    } else if mag.is_one() {
        format!("{m}")
    } else {
        format!("{coeff_txt} {m}")
    };
    (neg, txt)
}

impl fmt::Display for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let (neg, txt) = term_parts(c, m);
            match (i, neg) {
                (0, false) => write!(f, "{txt}")?,
                (0, true) => write!(f, "-{txt}")?,
                (_, false) => write!(f, " + {txt}")?,
                (_, true) => write!(f, " - {txt}")?,
            }
        }
        Ok(())
    }
}
