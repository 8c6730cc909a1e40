//! The maps g0(x) = βx on [0,t] and g1(x) = βx + 1 - β on [1-t,1], t = 1/β, over Q(β).

use std::cmp::Ordering;

use crate::algebraics::{AlgebraicNumber, Field, FieldElement};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Bernoulli {
    field: Field,
    beta: FieldElement,
    t: FieldElement,
    one_minus_t: FieldElement,
    one_minus_beta: FieldElement,
}

impl Bernoulli {
    /// Requires 1 < β ≤ 2.
    pub fn new(beta: &AlgebraicNumber) -> Result<Bernoulli> {
        if beta.cmp_rational(&crate::algebraics::roots::rat(1, 1)) != Ordering::Greater
            || beta.cmp_rational(&crate::algebraics::roots::rat(2, 1)) == Ordering::Greater
        {
            return Err(Error::Domain(format!("β = {:.6} is not in (1,2]", beta.to_f64())));
        }
        let field = Field::new(beta);
        Ok(Bernoulli::from_field(field))
    }

    pub fn from_field(field: Field) -> Bernoulli {
        let beta = field.generator();
        let t = beta.inverse().expect("β ≠ 0");
        let one = field.one();
        Bernoulli {
            one_minus_t: &one - &t,
            one_minus_beta: &one - &beta,
            field,
            beta,
            t,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn beta(&self) -> &FieldElement {
        &self.beta
    }

    pub fn t(&self) -> &FieldElement {
        &self.t
    }

    pub fn one_minus_t(&self) -> &FieldElement {
        &self.one_minus_t
    }

    pub fn in_unit(&self, x: &FieldElement) -> bool {
        x.sign() != Ordering::Less && *x <= self.field.one()
    }

    /// g0 needs x ≤ t, g1 needs x ≥ 1 - t; D is closed.
    pub fn applicable(&self, letter: u8, x: &FieldElement) -> bool {
        if letter == 0 {
            x.sign() != Ordering::Less && *x <= self.t
        } else {
            *x >= self.one_minus_t && *x <= self.field.one()
        }
    }

    pub fn in_overlap(&self, x: &FieldElement) -> bool {
        *x >= self.one_minus_t && *x <= self.t
    }

    pub fn in_open_overlap(&self, x: &FieldElement) -> bool {
        *x > self.one_minus_t && *x < self.t
    }

    /// g_letter without domain check.
    pub fn g(&self, letter: u8, x: &FieldElement) -> FieldElement {
        let y = x.mul_beta();
        if letter == 0 {
            y
        } else {
            &y + &self.one_minus_beta
        }
    }

    /// f_letter, inverse of g_letter.
    pub fn f(&self, letter: u8, x: &FieldElement) -> FieldElement {
        let y = x * &self.t;
        if letter == 0 {
            y
        } else {
            &y + &self.one_minus_t
        }
    }

    /// `g_w = g_{w_n} ∘ ... ∘ g_{w_1}`, checking applicability at every step.
    pub fn apply_word(&self, w: &[u8], x: &FieldElement) -> Option<FieldElement> {
        let mut cur = x.clone();
        for &a in w {
            if !self.applicable(a, &cur) {
                return None;
            }
            cur = self.g(a, &cur);
        }
        Some(cur)
    }

    /// Same as `apply_word` but returns every intermediate point (starting with `x`).
    pub fn trace_word(&self, w: &[u8], x: &FieldElement) -> Option<Vec<FieldElement>> {
        let mut out = vec![x.clone()];
        for &a in w {
            let cur = out.last().unwrap();
            if !self.applicable(a, cur) {
                return None;
            }
            out.push(self.g(a, cur));
        }
        Some(out)
    }

    /// Unique fixed point of g_w: (β-1) Σ β^{n-i} w_i / (β^n - 1).
    pub fn cycle_fixed_point(&self, w: &[u8]) -> FieldElement {
        assert!(!w.is_empty(), "empty cycle word");
        let mut s = self.field.zero();
        for &a in w {
            s = s.mul_beta();
            if a == 1 {
                s = &s + &self.field.one();
            }
        }
        let bn = self.beta.pow(w.len() as u32);
        let num = &(&self.beta - &self.field.one()) * &s;
        num.checked_div(&(&bn - &self.field.one())).expect("β^n ≠ 1")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraics::{named_parameter, NamedKind};

    #[test]
    fn golden_three_cycles() {
        let sys = Bernoulli::new(&named_parameter(NamedKind::Multinacci, 2).unwrap()).unwrap();
        let half = sys.field().parse("1/2").unwrap();
        assert_eq!(sys.cycle_fixed_point(&[1, 0, 0]), half);
        assert_eq!(sys.cycle_fixed_point(&[0, 1, 1]), half);
        assert_eq!(sys.apply_word(&[1, 0, 0], &half), Some(half.clone()));
        assert_eq!(sys.apply_word(&[0, 1, 1], &half), Some(half.clone()));
        assert_eq!(sys.apply_word(&[0, 0], &half), None);
        let x = sys.field().parse("3/10").unwrap();
        assert_eq!(sys.f(0, &sys.g(0, &x)), x);
        assert_eq!(sys.f(1, &sys.g(1, &x)), x);
        assert!(sys.cycle_fixed_point(&[0, 0, 0]).is_zero());
    }
}
