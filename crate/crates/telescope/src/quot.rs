//! Quotient fields F[z]/(u) for irreducible u.
//!
//! Used by the logarithmic part of rational integration: the algebraic
//! numbers alpha with u(alpha) = 0 are never expanded; arithmetic happens
//! on polynomial representatives modulo u. Elements created by `zero`,
//! `one` or `from_i64` carry no modulus yet and acquire one on first
//! contact with a bound element.

use crate::field::{Field, Rat, SpecCtx};
use crate::poly::{poly_xgcd, Poly};
use std::fmt;
use std::rc::Rc;

#[derive(Clone)]
pub struct QuotElem<F: Field> {
    rep: Poly<F>,
    modulus: Option<Rc<Poly<F>>>,
}

impl<F: Field> QuotElem<F> {
    pub fn new(rep: Poly<F>, modulus: Rc<Poly<F>>) -> Self {
        QuotElem {
            rep: rep.rem(&modulus),
            modulus: Some(modulus),
        }
    }

    /// The class of the quotient variable z.
    pub fn generator(modulus: Rc<Poly<F>>) -> Self {
        QuotElem::new(Poly::var(), modulus)
    }

    pub fn rep(&self) -> &Poly<F> {
        &self.rep
    }

    pub fn modulus(&self) -> Option<&Rc<Poly<F>>> {
        self.modulus.as_ref()
    }

    fn unify(&self, rhs: &Self) -> Option<Rc<Poly<F>>> {
        match (&self.modulus, &rhs.modulus) {
            (Some(m), _) => Some(m.clone()),
            (None, Some(m)) => Some(m.clone()),
            (None, None) => None,
        }
    }
}

impl<F: Field> PartialEq for QuotElem<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep
    }
}

impl<F: Field> Field for QuotElem<F> {
    fn zero() -> Self {
        QuotElem {
            rep: Poly::zero(),
            modulus: None,
        }
    }
    fn one() -> Self {
        QuotElem {
            rep: Poly::one(),
            modulus: None,
        }
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        QuotElem {
            rep: self.rep.add(&rhs.rep),
            modulus: self.unify(rhs),
        }
    }
    fn neg(&self) -> Self {
        QuotElem {
            rep: self.rep.neg(),
            modulus: self.modulus.clone(),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        let modulus = self.unify(rhs);
        let prod = self.rep.mul(&rhs.rep);
        let rep = match &modulus {
            Some(m) => prod.rem(m),
            None => prod,
        };
        QuotElem { rep, modulus }
    }
    fn inv(&self) -> Self {
        assert!(!self.rep.is_zero(), "inverse of zero in quotient field");
        match &self.modulus {
            None => QuotElem {
                rep: Poly::constant(self.rep.coeff(0).inv()),
                modulus: None,
            },
            Some(m) => {
                let (g, s, _) = poly_xgcd(&self.rep, m).expect("nonzero representative");
                assert!(
                    g.is_constant(),
                    "modulus is reducible: gcd with representative is nonconstant"
                );
                QuotElem {
                    rep: s.rem(m),
                    modulus: Some(m.clone()),
                }
            }
        }
    }
    fn from_i64(v: i64) -> Self {
        QuotElem {
            rep: Poly::constant(F::from_i64(v)),
            modulus: None,
        }
    }
    fn from_rat(v: &Rat) -> Self {
        QuotElem {
            rep: Poly::constant(F::from_rat(v)),
            modulus: None,
        }
    }
    fn as_rat(&self) -> Option<Rat> {
        if self.rep.degree() > 0 {
            return None;
        }
        self.rep.coeff(0).as_rat()
    }
    fn specialize(&self, ctx: &SpecCtx, level: usize) -> Option<Rat> {
        // only constants survive specialization: there is no rational
        // point standing in for a root of the modulus
        if self.rep.degree() > 0 {
            return None;
        }
        self.rep.coeff(0).specialize(ctx, level)
    }
    fn content_hint(&self) -> Rat {
        let mut c = <Rat as Field>::zero();
        for q in self.rep.coeffs() {
            c = crate::field::rat_gcd(&c, &q.content_hint());
        }
        c
    }
    fn lead_sign(&self) -> i32 {
        self.rep.leading().lead_sign()
    }
}

impl<F: Field> fmt::Debug for QuotElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep.display("z"))
    }
}

impl<F: Field> fmt::Display for QuotElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rep.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
            write!(f, "({})", self.rep.display("z"))
        } else {
            write!(f, "{}", self.rep.display("z"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_mod_z2_minus_2() {
        // Q[z]/(z^2 - 2): (1 + z)(1 - z) = 1 - z^2 = -1
        let m = Rc::new(Poly::<Rat>::from_i64s(&[-2, 0, 1]));
        let z = QuotElem::generator(m.clone());
        let one = <QuotElem<Rat> as Field>::one();
        let a = one.add(&z);
        let b = one.sub(&z);
        assert_eq!(a.mul(&b), QuotElem::from_i64(-1));
        // inverse: z * (z/2) = 1
        let zi = z.inv();
        assert_eq!(z.mul(&zi), QuotElem::from_i64(1));
    }
}
