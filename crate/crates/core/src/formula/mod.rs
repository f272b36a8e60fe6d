//! Machin-like formulas `Σ A_j·arctan(x_j) = π/4`.

mod check;
mod measure;
pub mod registry;

pub use check::{check_relation, product_check, ValidationReport, RESIDUAL_DIGITS};
pub use measure::{format_significant, lehmer_measure, reduced_lehmer_measure};
pub use registry::{registry_get, registry_list, registry_names, RegistryEntry};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// `coeff · arctan(arg)` with `coeff ≠ 0` and `0 < |arg| < 1`.
///
/// The argument is stored as a signed rational rather than as `1/B`, so
/// quotient arguments such as `2/2513489` need no special casing.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ArctanTerm {
    coeff: Rational,
    arg: Rational,
}

impl ArctanTerm {
    pub fn new(coeff: Rational, arg: Rational) -> Result<Self> {
        if coeff.is_zero() {
            return Err(Error::InvalidTerm(format!(
                "zero coefficient on arctan({arg})"
            )));
        }
        if arg.is_zero() || arg.abs() >= Rational::one() {
            return Err(Error::InvalidTerm(format!(
                "argument {arg} must satisfy 0 < |x| < 1"
            )));
        }
        Ok(Self { coeff, arg })
    }

    /// `coeff·arctan(1/reciprocal)`.
    pub fn reciprocal(coeff: Rational, reciprocal: &Rational) -> Result<Self> {
        Self::new(coeff, reciprocal.recip()?)
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn arg(&self) -> &Rational {
        &self.arg
    }

    /// `1/arg`, the `B_j` of the textbook form.
    pub fn reciprocal_arg(&self) -> Rational {
        self.arg.recip().expect("term argument is nonzero")
    }

    /// Whether the argument is `±1/B` with integer `B`.
    pub fn is_integer_reciprocal(&self) -> bool {
        self.arg.numer().abs().is_one()
    }

    /// The same angle written with a positive argument.
    pub fn normalized(&self) -> Self {
        if self.arg.is_negative() {
            Self {
                coeff: -&self.coeff,
                arg: -&self.arg,
            }
        } else {
            self.clone()
        }
    }

    pub fn scaled(&self, factor: &Rational) -> Result<Self> {
        Self::new(&self.coeff * factor, self.arg.clone())
    }
}

impl fmt::Display for ArctanTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·arctan({})", self.coeff, self.arg)
    }
}

impl fmt::Debug for ArctanTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A nonempty list of terms asserted to sum to π/4, with no repeated argument.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MachinFormula {
    terms: Vec<ArctanTerm>,
}

impl MachinFormula {
    /// Builds a formula, merging terms that share an argument.
    pub fn new(terms: Vec<ArctanTerm>) -> Result<Self> {
        combine_like_terms(terms)
    }

    /// Convenience constructor from `(coeff, arg)` pairs.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let terms = pairs
            .into_iter()
            .map(|(c, a)| ArctanTerm::new(c, a))
            .collect::<Result<Vec<_>>>()?;
        Self::new(terms)
    }

    pub fn terms(&self) -> &[ArctanTerm] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<ArctanTerm> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every term rewritten with a positive argument.
    pub fn normalized(&self) -> Self {
        let terms = self.terms.iter().map(ArctanTerm::normalized).collect();
        combine_like_terms(terms).expect("normalizing keeps a valid formula valid")
    }

    /// Same terms up to order and up to the sign convention of each argument.
    pub fn same_identity(&self, other: &Self) -> bool {
        let key = |f: &Self| {
            let mut v: Vec<_> = f
                .normalized()
                .terms
                .into_iter()
                .map(|t| (t.arg, t.coeff))
                .collect();
            v.sort();
            v
        };
        key(self) == key(other)
    }
}

impl fmt::Display for MachinFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("π/4 =")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" +")?;
            }
            write!(f, " {t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MachinFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sums coefficients of terms with equal arguments, keeping first-occurrence
/// order and dropping terms whose coefficients cancel.
pub fn combine_like_terms(terms: Vec<ArctanTerm>) -> Result<MachinFormula> {
    let mut index: BTreeMap<Rational, usize> = BTreeMap::new();
    let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(terms.len());
    for t in terms {
        match index.get(&t.arg) {
            Some(&i) => out[i].0 = &out[i].0 + &t.coeff,
            None => {
                index.insert(t.arg.clone(), out.len());
                out.push((t.coeff, t.arg));
            }
        }
    }
    let terms: Vec<ArctanTerm> = out
        .into_iter()
        .filter(|(c, _)| !c.is_zero())
        .map(|(coeff, arg)| ArctanTerm { coeff, arg })
        .collect();
    if terms.is_empty() {
        return Err(Error::EmptyFormula);
    }
    Ok(MachinFormula { terms })
}

#[cfg(test)]
pub(crate) mod test_util {
    use super::*;

    pub fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    /// Terms from `(coeff, arg)` strings without combining.
    pub fn terms(spec: &[(&str, &str)]) -> Vec<ArctanTerm> {
        spec.iter()
            .map(|(c, a)| ArctanTerm::new(q(c), q(a)).unwrap())
            .collect()
    }

    pub fn formula(spec: &[(&str, &str)]) -> MachinFormula {
        MachinFormula::new(terms(spec)).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::test_util::*;
    use super::*;

    #[test]
    fn term_invariants() {
        assert!(ArctanTerm::new(q("0"), q("1/5")).is_err());
        assert!(ArctanTerm::new(q("1"), q("1")).is_err());
        assert!(ArctanTerm::new(q("1"), q("-3/2")).is_err());
        assert!(ArctanTerm::new(q("1"), q("0")).is_err());
        assert!(ArctanTerm::new(q("-12"), q("2/2513489")).is_ok());
    }

    #[test]
    fn combine_merges_equal_arguments() {
        let f = combine_like_terms(terms(&[("-1", "1/1000"), ("-1", "1/1000")])).unwrap();
        assert_eq!(f, formula(&[("-2", "1/1000")]));
        let f = combine_like_terms(terms(&[("3", "1/5"), ("-3", "1/5"), ("1", "1/2")])).unwrap();
        assert_eq!(f.terms(), terms(&[("1", "1/2")]).as_slice());
        let m = formula(&[("4", "1/5"), ("-1", "1/239")]);
        assert_eq!(combine_like_terms(m.terms().to_vec()).unwrap(), m);
        assert_eq!(
            combine_like_terms(terms(&[("1", "1/5"), ("-1", "1/5")])),
            Err(Error::EmptyFormula)
        );
    }

    #[test]
    fn same_identity_ignores_order_and_sign_convention() {
        let a = formula(&[("4", "1/5"), ("-1", "1/239")]);
        let b = formula(&[("1", "-1/239"), ("4", "1/5")]);
        assert!(a.same_identity(&b));
        assert_ne!(a, b);
        assert!(!a.same_identity(&formula(&[("4", "1/5"), ("1", "1/239")])));
    }
}
