use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::{term_parts, GaussRat, ScalarPoly};
use super::word::Word;

/// Element of the free associative algebra over the scalar ring
/// [`ScalarPoly`]. Stored coefficients are never zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, ScalarPoly>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn scalar(c: ScalarPoly) -> Self {
        NCPoly::monomial(Word::unit(), c)
    }

    pub fn monomial(w: Word, c: ScalarPoly) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(w, c);
        p
    }

    /// Generator `x_k`.
    pub fn x(k: u8) -> Self {
        NCPoly::monomial(Word::letter(k), ScalarPoly::one())
    }

    pub fn word(letters: &[u8]) -> Self {
        NCPoly::monomial(Word::new(letters.to_vec()), ScalarPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> ScalarPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Terms in ascending deglex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &ScalarPoly)> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next_back()
    }

    pub fn max_letter(&self) -> u8 {
        self.terms.keys().map(Word::max_letter).max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: ScalarPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub(crate) fn remove(&mut self, w: &Word) -> Option<ScalarPoly> {
        self.terms.remove(w)
    }

    pub(crate) fn pop_last(&mut self) -> Option<(Word, ScalarPoly)> {
        self.terms.pop_last()
    }

    pub fn scale(&self, c: &ScalarPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    pub fn scale_gauss(&self, c: &GaussRat) -> NCPoly {
        self.scale(&ScalarPoly::constant(c.clone()))
    }

    /// `left * self * right` for words `left`, `right`.
    pub fn sandwich(&self, left: &Word, right: &Word) -> NCPoly {
        NCPoly { terms: self.terms.iter().map(|(w, c)| (left.concat(w).concat(right), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> NCPoly {
        let mut out = NCPoly::scalar(ScalarPoly::one());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn commutator(a: &NCPoly, b: &NCPoly) -> NCPoly {
        &(a * b) - &(b * a)
    }

    /// `[[a, b], b]`.
    pub fn double_commutator(a: &NCPoly, b: &NCPoly) -> NCPoly {
        NCPoly::commutator(&NCPoly::commutator(a, b), b)
    }

    /// Numerical evaluation with `x_k -> mats[k-1]` and `mu_k -> mu[k-1]`.
    pub fn eval_matrices(&self, mats: &[crate::matkernel::CMatrix], mu: &[crate::matkernel::C64]) -> crate::matkernel::CMatrix {
        let n = mats.first().map_or(1, |m| m.nrows());
        let mut acc = crate::matkernel::CMatrix::zeros(n, n);
        for (w, c) in &self.terms {
            let mut m = crate::matkernel::CMatrix::identity(n, n);
            for &k in w.letters() {
                m = m * &mats[(k - 1) as usize];
            }
            acc += m * c.eval(mu);
        }
        acc
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        NCPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

/// Canonical text: terms in descending deglex order, e.g.
/// `2 x4 x1 x4 - x1 x4 x4 + mu1 x1 + (mu2 + 1/2) x3`. Accepted by
/// [`super::parse_expr`].
impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let single: Vec<_> = c.terms().collect();
            let (neg, coeff) = if single.len() == 1 {
                let (neg, txt) = term_parts(single[0].1, single[0].0);
                (neg, txt)
            } else {
                (false, format!("({c})"))
            };
            let body = match (w.is_empty(), coeff.as_str()) {
                (true, _) => coeff,
                (false, "1") => format!("{w}"),
                (false, _) => format!("{coeff} {w}"),
            };
            match (i, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}
