//! Monomial ideals with a canonical generating set.
//!
//! Generators are kept minimal (no generator divides another) and sorted
//! lex-descending under x_1 > x_2 > ... > x_n. All equality tests are on
//! this canonical form. The zero ideal has no generators; the unit ideal
//! has the single generator 1.

use crate::error::{Budget, Error, Result};
use crate::monomial::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MonomialIdeal {
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Minimalize the given generators: drop anything divisible by another
    /// generator, sort lex-descending.
    pub fn new(mut gens: Vec<Monomial>) -> Self {
        // ascending degree: a divisor is never processed after its multiple,
        // and equal-degree monomials can only divide each other when equal
        gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.lex_cmp(a)));
        gens.dedup();
        let mut kept: Vec<Monomial> = Vec::new();
        let mut block_start = 0; // first index of the current degree block
        let mut block_degree = None;
        for g in gens {
            if block_degree != Some(g.degree()) {
                block_start = kept.len();
                block_degree = Some(g.degree());
            }
            if kept[..block_start].iter().any(|h| h.divides(&g)) {
                continue;
            }
            kept.push(g);
        }
        kept.sort_by(|a, b| b.lex_cmp(a));
        MonomialIdeal { gens: kept }
    }

    pub fn zero() -> Self {
        MonomialIdeal { gens: Vec::new() }
    }

    pub fn unit() -> Self {
        MonomialIdeal {
            gens: vec![Monomial::one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// The common degree of the generators, if they share one.
    pub fn single_degree(&self) -> Option<u32> {
        let d = self.gens.first()?.degree();
        self.gens.iter().all(|g| g.degree() == d).then_some(d)
    }

    pub fn support(&self) -> Vec<u32> {
        let mut vars: Vec<u32> = self.gens.iter().flat_map(|g| g.support()).collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    /// Membership: m lies in the ideal iff some generator divides it.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// (I : m), computed as the minimalization of { g / gcd(g, m) }.
    pub fn colon_monomial(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal::new(self.gens.iter().map(|g| g.div_gcd(m)).collect())
    }

    /// (I : J) = intersection of (I : g) over g in G(J). J must be nonzero.
    pub fn colon_ideal(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert!(!other.is_zero(), "colon by the zero ideal");
        let mut acc: Option<MonomialIdeal> = None;
        for g in &other.gens {
            let q = self.colon_monomial(g);
            acc = Some(match acc {
                None => q,
                Some(prev) => prev.intersect(&q),
            });
        }
        acc.unwrap()
    }

    /// Intersection via pairwise lcms of generators.
    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        MonomialIdeal::new(gens)
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b));
            }
        }
        MonomialIdeal::new(gens)
    }

    /// Multiply every generator by a fixed monomial.
    pub fn scale(&self, h: &Monomial) -> MonomialIdeal {
        MonomialIdeal::new(self.gens.iter().map(|g| g.mul(h)).collect())
    }

    /// I^k as the minimalized set of all degree-k products of generators.
    pub fn power(&self, k: usize, budget: &Budget) -> Result<MonomialIdeal> {
        assert!(k >= 1, "power exponent must be >= 1");
        if self.is_zero() {
            return Ok(MonomialIdeal::zero());
        }
        // Multiset enumeration: factor indices never decrease, so each
        // multiset of k generators is produced exactly once.
        let mut layer: Vec<(Monomial, usize)> = vec![(Monomial::one(), 0)];
        for _ in 0..k {
            let mut next = Vec::new();
            for (m, start) in &layer {
                for (i, g) in self.gens.iter().enumerate().skip(*start) {
                    next.push((m.mul(g), i));
                    if next.len() > budget.max_generators {
                        return Err(Error::Budget(format!(
                            "power enumeration exceeded {} products",
                            budget.max_generators
                        )));
                    }
                }
            }
            layer = next;
        }
        Ok(MonomialIdeal::new(layer.into_iter().map(|(m, _)| m).collect()))
    }
}

impl std::fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Var;
    use proptest::prelude::*;

    fn sqf(vs: &[Var]) -> Monomial {
        Monomial::squarefree(vs.iter().copied())
    }

    fn ideal(gens: &[&[Var]]) -> MonomialIdeal {
        MonomialIdeal::new(gens.iter().map(|g| sqf(g)).collect())
    }

    #[test]
    fn minimalize_divisibility() {
        let i = ideal(&[&[1, 3], &[1]]);
        assert_eq!(i.gens(), &[Monomial::var(1)]);
    }

    #[test]
    fn minimalize_keeps_incomparable() {
        let i = ideal(&[&[1, 3], &[2, 4]]);
        assert_eq!(i.num_gens(), 2);
    }

    #[test]
    fn square_of_three_generator_ideal() {
        // oracle: enumerate all 6 pairwise products by hand, remove divisible
        let i = ideal(&[&[1, 3], &[1, 4], &[2, 4]]);
        let sq = i.power(2, &Budget::default()).unwrap();
        let expect = MonomialIdeal::new(vec![
            Monomial::from_pairs([(1, 2), (3, 2)]),
            Monomial::from_pairs([(1, 2), (3, 1), (4, 1)]),
            Monomial::from_pairs([(1, 2), (4, 2)]),
            Monomial::from_pairs([(1, 1), (2, 1), (4, 2)]),
            Monomial::from_pairs([(1, 1), (2, 1), (3, 1), (4, 1)]),
            Monomial::from_pairs([(2, 2), (4, 2)]),
        ]);
        assert_eq!(sq, expect);
        assert_eq!(sq.num_gens(), 6);
    }

    #[test]
    fn colon_by_variable() {
        let i = ideal(&[&[1, 3]]);
        assert_eq!(i.colon_monomial(&Monomial::var(1)), ideal(&[&[3]]));
    }

    #[test]
    fn colon_by_monomial_hand_checked() {
        // (x1x3, x1x4):(x2x4) = (x1x3, x1) = (x1), confirmed by the
        // membership oracle below on all square-free monomials of degree <= 3
        let i = ideal(&[&[1, 3], &[1, 4]]);
        let m = sqf(&[2, 4]);
        let q = i.colon_monomial(&m);
        assert_eq!(q, ideal(&[&[1]]));
        for w in all_sqf_monomials(5) {
            assert_eq!(q.contains(&w), i.contains(&w.mul(&m)), "w={w}");
        }
    }

    #[test]
    fn colon_of_linear_quotient_pair() {
        // (x1x5x8x12):(x1x5x8x13) = (x12)
        let i = ideal(&[&[1, 5, 8, 12]]);
        let q = i.colon_monomial(&sqf(&[1, 5, 8, 13]));
        assert_eq!(q, ideal(&[&[12]]));
    }

    #[test]
    fn colon_ideal_principal() {
        let i = ideal(&[&[1, 3]]);
        let sq = i.power(2, &Budget::default()).unwrap();
        assert_eq!(sq.colon_ideal(&i), i);
    }

    #[test]
    fn colon_ideal_strong_persistence_base() {
        let i = ideal(&[&[1, 3], &[1, 4], &[2, 4]]);
        let sq = i.power(2, &Budget::default()).unwrap();
        assert_eq!(sq.colon_ideal(&i), i);
    }

    #[test]
    fn colon_self_is_unit() {
        let i = ideal(&[&[1, 3], &[2, 4]]);
        assert!(i.colon_ideal(&i).is_unit());
    }

    #[test]
    fn power_one_is_identity() {
        let i = ideal(&[&[1, 3], &[1, 4], &[2, 4]]);
        assert_eq!(i.power(1, &Budget::default()).unwrap(), i);
    }

    #[test]
    fn power_generator_count_bound() {
        let i = ideal(&[&[1, 3], &[1, 4], &[2, 4]]);
        let sq = i.power(2, &Budget::default()).unwrap();
        // multiset bound C(r+1, 2) with r = 3
        assert!(sq.num_gens() <= 6);
    }

    fn all_sqf_monomials(max_var: Var) -> Vec<Monomial> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << max_var) {
            let vars: Vec<Var> = (0..max_var).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
            out.push(Monomial::squarefree(vars));
        }
        out
    }

    fn arb_monomial() -> impl Strategy<Value = Monomial> {
        proptest::collection::btree_map(1u32..6, 1u32..3, 0..3)
            .prop_map(Monomial::from_pairs)
    }

    proptest! {
        #[test]
        fn minimalize_idempotent_and_order_independent(
            gens in proptest::collection::vec(arb_monomial(), 0..8),
            perm in proptest::sample::Index::arbitrary(),
        ) {
            let i = MonomialIdeal::new(gens.clone());
            prop_assert_eq!(MonomialIdeal::new(i.gens().to_vec()), i.clone());
            let mut shuffled = gens.clone();
            if !shuffled.is_empty() {
                let k = perm.index(shuffled.len());
                shuffled.rotate_left(k);
            }
            prop_assert_eq!(MonomialIdeal::new(shuffled), i);
        }

        #[test]
        fn colon_matches_membership_oracle(
            gens in proptest::collection::vec(arb_monomial(), 1..5),
            m in arb_monomial(),
        ) {
            let i = MonomialIdeal::new(gens);
            prop_assume!(!i.is_zero());
            let q = i.colon_monomial(&m);
            // w in (I : m) iff w*m in I, on a bounded sweep of monomials
            for w in all_sqf_monomials(5) {
                prop_assert_eq!(q.contains(&w), i.contains(&w.mul(&m)));
            }
        }
    }
}
