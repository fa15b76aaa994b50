//! Orders, normal forms, spreads, substitution and exact division.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::PolyError;
use crate::poly::{ExpPair, LaurentPoly2, Var, VarTag};

impl LaurentPoly2 {
    /// Unit equality: true iff `other` = ±v1^a·v2^b · `self` for some
    /// integers a, b.  Zero is unit-equal only to zero.
    ///
    /// Both operands must carry the same variable tag.
    pub fn unit_eq(&self, other: &Self) -> bool {
        assert_eq!(self.tag(), other.tag(), "unit_eq requires matching tags");
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return true,
            (true, false) | (false, true) => return false,
            _ => {}
        }
        if self.term_count() != other.term_count() {
            return false;
        }
        // Align the minimal-exponent corner of both Newton polytopes at the
        // origin, then the polynomials must agree exactly up to one global
        // sign.
        let a = self.corner_normalized();
        let b = other.corner_normalized();
        a == b || a == b.neg()
    }

    /// Translates so the minimal exponent of each variable is exactly 0.
    fn corner_normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let m1 = self.min_exp(Var::First).expect("nonzero");
        let m2 = self.min_exp(Var::Second).expect("nonzero");
        self.mul_monomial(-m1, -m2, 1)
    }

    /// The graded-lexicographic strict order on plain polynomials: lower
    /// total degree wins; ties are broken by lexicographic comparison of
    /// the full coefficient tuples indexed in graded-lex order (zeros
    /// included), with integer comparison at the first differing index.
    ///
    /// Both polynomials must have non-negative exponents throughout.
    pub fn graded_lex_less(&self, other: &Self) -> Result<bool, PolyError> {
        if self.tag() != other.tag() {
            return Err(PolyError::TagMismatch(self.tag(), other.tag()));
        }
        for p in [self, other] {
            if let Some((e, _)) = p.terms().find(|(e, _)| e.e1 < 0 || e.e2 < 0) {
                return Err(PolyError::NegativeExponent(e));
            }
        }
        // deg(0) is taken as -1, below every plain polynomial's degree.
        let da = self.total_degree().unwrap_or(-1);
        let db = other.total_degree().unwrap_or(-1);
        if da != db {
            return Ok(da < db);
        }
        // Merge-walk both term maps; they iterate in the same graded-lex
        // order, and indices absent from both contribute equal zeros.
        let mut ia = self.terms().peekable();
        let mut ib = other.terms().peekable();
        let zero = BigInt::zero();
        loop {
            match (ia.peek().copied(), ib.peek().copied()) {
                (None, None) => return Ok(false),
                (Some((ea, ca)), Some((eb, cb))) => {
                    if ea == eb {
                        if ca != cb {
                            return Ok(ca < cb);
                        }
                        ia.next();
                        ib.next();
                    } else if ea < eb {
                        // `other` has coefficient 0 at index ea.
                        return Ok(ca < &zero);
                    } else {
                        return Ok(&zero < cb);
                    }
                }
                (Some((_, ca)), None) => return Ok(ca < &zero),
                (None, Some((_, cb))) => return Ok(&zero < cb),
            }
        }
    }

    /// The normal form: the minimal element of { ±v1^a·v2^b·p with all
    /// exponents non-negative } under [`Self::graded_lex_less`].
    ///
    /// The total degree of a shifted copy grows with the shift, so the
    /// minimum is attained at the unique translation putting the minimal
    /// exponent of each variable at 0; only the two global signs of that
    /// translation are compared.  The winner is the one whose first
    /// nonzero coefficient in graded-lex index order is negative.
    pub fn normal_form(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let p = self.corner_normalized();
        let first_coeff = p.terms().next().expect("nonzero").1;
        if first_coeff.is_positive() {
            p.neg()
        } else {
            p
        }
    }

    /// Difference between the maximal and minimal exponent of the chosen
    /// variable.
    pub fn spread(&self, var: Var) -> Result<i64, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial("spread"));
        }
        Ok(self.max_exp(var).unwrap() - self.min_exp(var).unwrap())
    }

    /// The x-capped spread: (largest first-variable exponent among terms
    /// whose x-exponent equals deg_x) − (smallest first-variable exponent
    /// over all terms).
    pub fn x_capped_spread(&self) -> Result<i64, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial("x-capped spread"));
        }
        let xmax = self.max_exp(Var::Second).unwrap();
        let capped_max = self
            .terms()
            .filter(|(e, _)| e.e2 == xmax)
            .map(|(e, _)| e.e1)
            .max()
            .expect("some term attains deg_x");
        Ok(capped_max - self.min_exp(Var::First).unwrap())
    }

    /// The twist substitution x ↦ x·t^m: every term (a, b) maps to
    /// (a + m·b, b).  A ring automorphism of the (t,x) Laurent ring.
    pub fn twist_substitute(&self, m: i64) -> Self {
        assert_eq!(
            self.tag(),
            VarTag::Tx,
            "twist substitution lives in the (t,x) context"
        );
        let mut out = Self::zero(self.tag());
        for (e, c) in self.terms() {
            out.add_term(ExpPair::new(e.e1 + m * e.e2, e.e2), c.clone());
        }
        out
    }

    /// Collapses the first variable at 1, leaving a polynomial in x only.
    pub fn evaluate_first_at_one(&self) -> Self {
        let mut out = Self::zero(self.tag());
        for (e, c) in self.terms() {
            out.add_term(ExpPair::new(0, e.e2), c.clone());
        }
        out
    }

    /// Exact division in the Laurent ring: returns r with self = other·r,
    /// or [`PolyError::NotDivisible`].
    ///
    /// Both operands are corner-normalized to plain polynomials (corners of
    /// a product add, so the monomial offset is recovered afterwards) and
    /// divided by multivariate long division against the graded-lex leading
    /// term; an exact quotient cancels the leading term at every step.
    pub fn exact_div(&self, other: &Self) -> Result<Self, PolyError> {
        if self.tag() != other.tag() {
            return Err(PolyError::TagMismatch(self.tag(), other.tag()));
        }
        if other.is_zero() {
            return Err(PolyError::ZeroPolynomial("division by zero"));
        }
        if self.is_zero() {
            return Ok(Self::zero(self.tag()));
        }
        let off1 = self.min_exp(Var::First).unwrap() - other.min_exp(Var::First).unwrap();
        let off2 = self.min_exp(Var::Second).unwrap() - other.min_exp(Var::Second).unwrap();
        let mut rem = self.corner_normalized();
        let q = other.corner_normalized();
        let (q_lead, q_lead_coeff) = {
            let (e, c) = q.terms().next_back().expect("nonzero");
            (e, c.clone())
        };
        let mut quot = Self::zero(self.tag());
        while !rem.is_zero() {
            let (lead, lead_coeff) = {
                let (e, c) = rem.terms().next_back().expect("nonzero");
                (e, c.clone())
            };
            let e1 = lead.e1 - q_lead.e1;
            let e2 = lead.e2 - q_lead.e2;
            if e1 < 0 || e2 < 0 || !(&lead_coeff % &q_lead_coeff).is_zero() {
                return Err(PolyError::NotDivisible);
            }
            let c = &lead_coeff / &q_lead_coeff;
            quot.add_term(ExpPair::new(e1, e2), c.clone());
            rem = rem.sub(&q.mul_monomial(e1, e2, c)).expect("same tag");
        }
        Ok(quot.mul_monomial(off1, off2, 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarTag::{Ax, Tx};

    fn p(triples: &[(i64, i64, i64)]) -> LaurentPoly2 {
        LaurentPoly2::from_triples(Tx, triples)
    }

    fn pa(triples: &[(i64, i64, i64)]) -> LaurentPoly2 {
        LaurentPoly2::from_triples(Ax, triples)
    }

    #[test]
    fn add_cancels_to_zero() {
        let x = p(&[(0, 1, 1)]);
        let sum = x.add(&x.neg()).unwrap();
        assert!(sum.is_zero());
        assert_eq!(sum.term_count(), 0);
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = pa(&[(1, 0, 1), (-1, 0, 1)]);
        let b = pa(&[(1, 0, 1), (-1, 0, -1)]);
        assert_eq!(a.mul(&b).unwrap(), pa(&[(2, 0, 1), (-2, 0, -1)]));
    }

    #[test]
    fn mul_in_x() {
        let a = p(&[(0, 1, 1), (0, 0, -1)]);
        let b = p(&[(0, 1, 1), (0, 0, 1)]);
        assert_eq!(a.mul(&b).unwrap(), p(&[(0, 2, 1), (0, 0, -1)]));
    }

    #[test]
    fn arith_rejects_mixed_tags() {
        let a = p(&[(0, 1, 1)]);
        let b = pa(&[(0, 1, 1)]);
        assert_eq!(a.add(&b), Err(PolyError::TagMismatch(Tx, Ax)));
    }

    #[test]
    fn unit_eq_up_to_monomial_sign() {
        // x−1 against −t³x + t³ (factor −t³).
        let a = p(&[(0, 1, 1), (0, 0, -1)]);
        let b = p(&[(3, 1, -1), (3, 0, 1)]);
        assert!(a.unit_eq(&b));
        // 2 is not a unit.
        let c = p(&[(0, 1, 2), (0, 0, -2)]);
        assert!(!a.unit_eq(&c));
        // Zero only matches zero.
        let zero = LaurentPoly2::zero(Tx);
        let x = p(&[(0, 1, 1)]);
        assert!(!zero.unit_eq(&x));
        assert!(zero.unit_eq(&LaurentPoly2::zero(Tx)));
    }

    #[test]
    fn graded_lex_tuple_comparison() {
        // t−x vs x−t: tuples (0,−1,1) vs (0,1,−1); t−x is smaller.
        let tmx = p(&[(1, 0, 1), (0, 1, -1)]);
        let xmt = p(&[(0, 1, 1), (1, 0, -1)]);
        assert!(tmx.graded_lex_less(&xmt).unwrap());
        assert!(!xmt.graded_lex_less(&tmx).unwrap());
    }

    #[test]
    fn graded_lex_degree_first() {
        let x = p(&[(0, 1, 1)]);
        let x2 = p(&[(0, 2, 1)]);
        assert!(x.graded_lex_less(&x2).unwrap());
        assert!(!x.graded_lex_less(&x).unwrap(), "irreflexive");
    }

    #[test]
    fn graded_lex_rejects_laurent_input() {
        let a = p(&[(-1, 0, 1)]);
        let b = p(&[(0, 0, 1)]);
        assert!(matches!(
            a.graded_lex_less(&b),
            Err(PolyError::NegativeExponent(_))
        ));
    }

    #[test]
    fn normal_form_translates_to_corner() {
        // t⁻¹x − 1 → t − x.
        let a = p(&[(-1, 1, 1), (0, 0, -1)]);
        assert_eq!(a.normal_form(), p(&[(1, 0, 1), (0, 1, -1)]));
    }

    #[test]
    fn normal_form_sign_rule() {
        // xt³ + 1 → −xt³ − 1: the sign making the first nonzero tuple
        // entry negative wins.
        let a = p(&[(3, 1, 1), (0, 0, 1)]);
        assert_eq!(a.normal_form(), p(&[(3, 1, -1), (0, 0, -1)]));
    }

    #[test]
    fn normal_form_of_zero() {
        let zero = LaurentPoly2::zero(Tx);
        assert_eq!(zero.normal_form(), zero);
    }

    #[test]
    fn normal_form_beats_sign_flip_under_order() {
        // The chosen representative is graded-lex-least among both signs.
        let cases = [
            p(&[(3, 1, 1), (0, 0, 1)]),
            p(&[(-1, 1, 1), (0, 0, -1)]),
            p(&[(0, 2, 5), (1, 1, -2), (2, 0, 7)]),
        ];
        for c in cases {
            let nf = c.normal_form();
            let flipped = nf.neg();
            assert!(nf.graded_lex_less(&flipped).unwrap());
        }
    }

    #[test]
    fn spread_examples() {
        assert_eq!(pa(&[(2, 0, 1), (-2, 0, -1)]).spread(Var::First), Ok(4));
        assert_eq!(pa(&[(0, 1, 1)]).spread(Var::First), Ok(0));
        assert_eq!(
            LaurentPoly2::zero(Ax).spread(Var::First),
            Err(PolyError::ZeroPolynomial("spread"))
        );
    }

    /// The Kauffman polynomial of the 4-crossing wrap-4 knot whose table
    /// entry is printed in full: (A¹⁰−A⁶)x⁴ + (−3A¹⁰+3A⁶−A²+A⁻²)x² − A⁶ − A⁻⁶.
    fn nabla_k1() -> LaurentPoly2 {
        pa(&[
            (10, 4, 1),
            (6, 4, -1),
            (10, 2, -3),
            (6, 2, 3),
            (2, 2, -1),
            (-2, 2, 1),
            (6, 0, -1),
            (-6, 0, -1),
        ])
    }

    #[test]
    fn spread_of_printed_table_polynomial() {
        // A-exponents run from 10 down to −6.
        assert_eq!(nabla_k1().spread(Var::First), Ok(16));
    }

    #[test]
    fn x_capped_spread_examples() {
        assert_eq!(pa(&[(2, 2, 1), (-6, 0, 1)]).x_capped_spread(), Ok(8));
        assert_eq!(pa(&[(0, 1, 1)]).x_capped_spread(), Ok(0));
        // Same printed polynomial: top x-power terms reach A¹⁰, minimum is A⁻⁶.
        assert_eq!(nabla_k1().x_capped_spread(), Ok(16));
    }

    #[test]
    fn twist_substitute_shifts() {
        let a = p(&[(1, 1, 1), (0, 0, 1)]);
        assert_eq!(a.twist_substitute(2), p(&[(3, 1, 1), (0, 0, 1)]));
        assert_eq!(a.twist_substitute(0), a);
        assert_eq!(a.twist_substitute(1).twist_substitute(-1), a);
    }

    #[test]
    fn exact_div_examples() {
        let num = p(&[(0, 2, 1), (0, 0, -1)]);
        let den = p(&[(0, 1, 1), (0, 0, -1)]);
        assert_eq!(num.exact_div(&den).unwrap(), p(&[(0, 1, 1), (0, 0, 1)]));

        let num = p(&[(2, 2, 1), (0, 0, -1)]);
        let den = p(&[(1, 1, 1), (0, 0, 1)]);
        assert_eq!(num.exact_div(&den).unwrap(), p(&[(1, 1, 1), (0, 0, -1)]));

        let num = p(&[(0, 2, 1), (0, 0, 1)]);
        assert_eq!(num.exact_div(&den), Err(PolyError::NotDivisible));
    }

    #[test]
    fn exact_div_laurent_operands() {
        let num = pa(&[(2, 0, 1), (-2, 0, -1)]);
        let den = pa(&[(1, 0, 1), (-1, 0, -1)]);
        assert_eq!(
            num.exact_div(&den).unwrap(),
            pa(&[(1, 0, 1), (-1, 0, 1)])
        );
    }

    #[test]
    fn evaluate_first_at_one_examples() {
        assert_eq!(
            pa(&[(2, 0, -1), (-2, 0, -1)]).evaluate_first_at_one(),
            pa(&[(0, 0, -2)])
        );
        // The bracket of the 1-crossing wrap-2 diagram: Ax² − A − A⁻³.
        assert_eq!(
            pa(&[(1, 2, 1), (1, 0, -1), (-3, 0, -1)]).evaluate_first_at_one(),
            pa(&[(0, 2, 1), (0, 0, -2)])
        );
        assert!(LaurentPoly2::zero(Ax).evaluate_first_at_one().is_zero());
    }

    #[test]
    fn canonical_text_and_json_round_trip() {
        let a = p(&[(1, 0, 1), (0, 1, -1)]);
        assert_eq!(a.to_string(), "-1*t^0*x^1+1*t^1*x^0");
        let json = a.to_json();
        assert_eq!(LaurentPoly2::from_json(Tx, &json).unwrap(), a);
        assert_eq!(LaurentPoly2::zero(Tx).to_string(), "0");
    }
}
