//! Monomials in a polynomial ring with globally numbered variables.
//!
//! Variables are positive integers; no coefficients are ever stored.
//! Every invariant computed by this crate is characteristic-free
//! combinatorics on exponent vectors.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A variable index. Variables are numbered from 1.
pub type Var = u32;

/// A monomial, stored as its sparse exponent vector.
/// Only nonzero exponents are kept; the empty map is the monomial 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: BTreeMap<Var, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        Monomial::from_pairs([(v, 1)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Self {
        let mut exps = BTreeMap::new();
        for (v, e) in pairs {
            assert!(v >= 1, "variable indices start at 1");
            if e > 0 {
                *exps.entry(v).or_insert(0) += e;
            }
        }
        Monomial { exps }
    }

    /// Square-free monomial with the given support.
    pub fn squarefree<I: IntoIterator<Item = Var>>(vars: I) -> Self {
        Monomial::from_pairs(vars.into_iter().map(|v| (v, 1)))
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.values().sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.exps.get(&v).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.exps.iter().map(|(&v, &e)| (v, e))
    }

    pub fn support(&self) -> impl Iterator<Item = Var> + '_ {
        self.exps.keys().copied()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.values().all(|&e| e == 1)
    }

    /// true iff `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|(v, e)| other.exponent(*v) >= *e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (&v, &e) in &other.exps {
            *exps.entry(v).or_insert(0) += e;
        }
        Monomial { exps }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        let exps = self.exps.iter().map(|(&v, &e)| (v, e * k)).collect();
        Monomial { exps }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .filter_map(|(&v, &e)| {
                let m = e.min(other.exponent(v));
                (m > 0).then_some((v, m))
            })
            .collect();
        Monomial { exps }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (&v, &e) in &other.exps {
            let cur = exps.entry(v).or_insert(0);
            *cur = (*cur).max(e);
        }
        Monomial { exps }
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div_exact(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        let exps = self
            .exps
            .iter()
            .filter_map(|(&v, &e)| {
                let q = e - other.exponent(v);
                (q > 0).then_some((v, q))
            })
            .collect();
        Monomial { exps }
    }

    /// `self / gcd(self, other)`.
    pub fn div_gcd(&self, other: &Monomial) -> Monomial {
        self.div_exact(&self.gcd(other))
    }

    /// Lexicographic comparison under x_1 > x_2 > ... > x_n:
    /// at the smallest variable index where the exponents differ, the
    /// monomial with the larger exponent is the greater one.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let mut a = self.exps.iter().peekable();
        let mut b = other.exps.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((&va, &ea)), Some((&vb, &eb))) => {
                    if va < vb {
                        return Ordering::Greater;
                    }
                    if va > vb {
                        return Ordering::Less;
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    a.next();
                    b.next();
                }
            }
        }
    }
}

impl fmt::Display for Monomial {
    /// Canonical text form: `x1*x5*x8`, with `^e` for exponents > 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&v, &e) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A square-free monomial given by its support, kept strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SqfMonomial {
    support: Vec<Var>,
}

impl SqfMonomial {
    pub fn new(mut support: Vec<Var>) -> Self {
        support.sort_unstable();
        support.dedup();
        SqfMonomial { support }
    }

    pub fn support(&self) -> &[Var] {
        &self.support
    }

    pub fn degree(&self) -> usize {
        self.support.len()
    }

    pub fn to_monomial(&self) -> Monomial {
        Monomial::squarefree(self.support.iter().copied())
    }

    pub fn from_monomial(m: &Monomial) -> Option<Self> {
        m.is_squarefree()
            .then(|| SqfMonomial::new(m.support().collect()))
    }
}

impl fmt::Display for SqfMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_monomial().fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqf(vs: &[Var]) -> Monomial {
        Monomial::squarefree(vs.iter().copied())
    }

    #[test]
    fn lex_leading_variable_wins() {
        // x1x5 > x2x3 because x1 beats x2
        assert_eq!(sqf(&[1, 5]).lex_cmp(&sqf(&[2, 3])), Ordering::Greater);
    }

    #[test]
    fn lex_reflexive() {
        let u = sqf(&[2, 5, 9, 13]);
        assert_eq!(u.lex_cmp(&u), Ordering::Equal);
    }

    #[test]
    fn lex_first_difference_decides() {
        // from the 9-generator example: x1x5x8x12 > x1x5x9x13
        let u = sqf(&[1, 5, 8, 12]);
        let v = sqf(&[1, 5, 9, 13]);
        assert_eq!(u.lex_cmp(&v), Ordering::Greater);
    }

    #[test]
    fn lex_is_total_on_sample() {
        // pairwise-comparison oracle: compare via padded dense exponent rows
        let sample = [sqf(&[1, 5]), sqf(&[2, 3]), sqf(&[1, 2]), Monomial::var(1)];
        for a in &sample {
            for b in &sample {
                let dense = |m: &Monomial| (1..=6).map(|v| m.exponent(v)).collect::<Vec<_>>();
                // lex under x1 > x2 > ...: compare dense vectors left to right,
                // bigger exponent first
                let expect = dense(a).cmp(&dense(b));
                assert_eq!(a.lex_cmp(b), expect, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn divides_basic() {
        assert!(Monomial::var(1).divides(&sqf(&[1, 3])));
        assert!(!sqf(&[1, 3]).divides(&sqf(&[1, 4])));
        let x4sq = Monomial::from_pairs([(4, 2)]);
        let x4sq_x9 = Monomial::from_pairs([(4, 2), (9, 1)]);
        assert!(x4sq.divides(&x4sq_x9));
    }

    #[test]
    fn mul_gcd_div_roundtrip() {
        let u = Monomial::from_pairs([(1, 2), (3, 1)]);
        let v = Monomial::from_pairs([(1, 1), (4, 2)]);
        let p = u.mul(&v);
        assert_eq!(p.degree(), u.degree() + v.degree());
        assert_eq!(p.div_exact(&v), u);
        assert_eq!(u.gcd(&v), Monomial::var(1));
        assert_eq!(u.div_gcd(&v), Monomial::from_pairs([(1, 1), (3, 1)]));
    }

    #[test]
    fn display_canonical() {
        assert_eq!(sqf(&[1, 5, 8]).to_string(), "x1*x5*x8");
        assert_eq!(Monomial::from_pairs([(4, 2), (9, 1)]).to_string(), "x4^2*x9");
        assert_eq!(Monomial::one().to_string(), "1");
    }
}
