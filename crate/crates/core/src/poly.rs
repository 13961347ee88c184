//! Laurent polynomials in one variable with integer-like coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{Num, Signed};

/// Coefficient ring for [`Laurent`]; any signed number type from num-traits.
pub trait Coeff: Num + Signed + Clone + fmt::Display + FromStr {}

impl<T: Num + Signed + Clone + fmt::Display + FromStr> Coeff for T {}

/// A Laurent polynomial `Σ c_e x^e`, stored as its nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Laurent<T> {
    terms: BTreeMap<i32, T>,
}

impl<T: Coeff> Laurent<T> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(T::one(), 0)
    }

    /// The variable itself, `x`.
    pub fn var() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn monomial(c: T, e: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(c, e);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, T)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(c, e);
        }
        p
    }

    pub fn add_term(&mut self, c: T, e: i32) {
        let entry = self.terms.entry(e).or_insert_with(T::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: i32) -> T {
        self.terms.get(&e).cloned().unwrap_or_else(T::zero)
    }

    /// Nonzero terms as `(exponent, coefficient)`, increasing exponent.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &T)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Substitutes `x -> x^k`.
    pub fn scale_exponents(&self, k: i32) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    /// Keeps only even exponents and halves them; `None` if an odd exponent
    /// is present.
    pub fn halve_exponents(&self) -> Option<Self> {
        self.terms
            .iter()
            .map(|(e, c)| (e % 2 == 0).then(|| (e / 2, c.clone())))
            .collect::<Option<Vec<_>>>()
            .map(Self::from_terms)
    }

    /// Composition `p(s(x))` for a polynomial `p` with nonnegative exponents.
    pub fn compose(&self, s: &Self) -> Self {
        assert!(
            self.min_degree().is_none_or(|d| d >= 0),
            "compose needs nonnegative exponents"
        );
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            out = &out + &(&s.pow(e as u32) * &Self::monomial(c.clone(), 0));
        }
        out
    }

    pub fn eval(&self, x: T) -> Option<T> {
        let mut acc = T::zero();
        for (e, c) in self.terms() {
            let xe = if e >= 0 {
                num_traits::pow::pow(x.clone(), e as usize)
            } else {
                if x.is_zero() {
                    return None;
                }
                let inv = num_traits::pow::pow(x.clone(), (-e) as usize);
                if !(T::one() % inv.clone()).is_zero() {
                    return None;
                }
                T::one() / inv
            };
            acc = acc + c.clone() * xe;
        }
        Some(acc)
    }

    /// Formats with the given variable name: decreasing exponents, unit
    /// coefficients omitted, e.g. `-q^9+q^5+q^3+q`.
    pub fn format_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            let unit = mag.is_one();
            if e == 0 {
                out.push_str(&mag.to_string());
                continue;
            }
            if !unit {
                out.push_str(&mag.to_string());
            }
            out.push_str(var);
            if e != 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
        out
    }

    /// Inverse of [`Laurent::format_with`].
    pub fn parse_with(s: &str, var: &str) -> Result<Self, String> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        let bytes = s.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let start = i;
            i += 1;
            // A term ends at the next sign that is not an exponent sign.
            while i < bytes.len() && !((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
                i += 1;
            }
            let term = &s[start..i];
            let (neg, body) = match term.as_bytes()[0] {
                b'-' => (true, &term[1..]),
                b'+' => (false, &term[1..]),
                _ => (false, term),
            };
            let (coeff, exp) = match body.find(var) {
                None => (body, 0),
                Some(pos) => {
                    let rest = &body[pos + var.len()..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(|| format!("bad term {term:?}"))?
                            .parse::<i32>()
                            .map_err(|e| format!("bad exponent in {term:?}: {e}"))?
                    };
                    (&body[..pos], e)
                }
            };
            let c = if coeff.is_empty() {
                T::one()
            } else {
                coeff.parse::<T>().map_err(|_| format!("bad coefficient in {term:?}"))?
            };
            out.add_term(if neg { -c } else { c }, exp);
        }
        Ok(out)
    }
}

impl<T: Coeff> fmt::Display for Laurent<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("q"))
    }
}

impl<T: Coeff> FromStr for Laurent<T> {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Self::parse_with(s, "q")
    }
}

impl<T: Coeff> Add for &Laurent<T> {
    type Output = Laurent<T>;

    fn add(self, rhs: &Laurent<T>) -> Laurent<T> {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(c.clone(), e);
        }
        out
    }
}

impl<T: Coeff> Sub for &Laurent<T> {
    type Output = Laurent<T>;

    fn sub(self, rhs: &Laurent<T>) -> Laurent<T> {
        self + &(-rhs)
    }
}

impl<T: Coeff> Neg for &Laurent<T> {
    type Output = Laurent<T>;

    fn neg(self) -> Laurent<T> {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl<T: Coeff> Mul for &Laurent<T> {
    type Output = Laurent<T>;

    fn mul(self, rhs: &Laurent<T>) -> Laurent<T> {
        let mut out = Laurent::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(c1.clone() * c2.clone(), e1 + e2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<T: Coeff> $tr for Laurent<T> {
            type Output = Laurent<T>;
            fn $m(self, rhs: Laurent<T>) -> Laurent<T> {
                (&self).$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl<T: Coeff> Neg for Laurent<T> {
    type Output = Laurent<T>;

    fn neg(self) -> Laurent<T> {
        -&self
    }
}

impl<T: Coeff> std::iter::Sum for Laurent<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| &a + &b)
    }
}
