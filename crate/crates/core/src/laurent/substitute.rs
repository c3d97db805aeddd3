use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{LaurentError, LaurentPoly, Monomial, Sign};

/// A ring homomorphism `Z[t^{±1}] -> Z[s_1^{±1}, ..., s_n^{±1}]` sending each
/// assigned variable to a signed monomial and every other variable to itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    target_arity: usize,
    images: BTreeMap<usize, (Sign, Monomial)>,
}

impl Substitution {
    pub fn new(target_arity: usize) -> Self {
        Self {
            target_arity,
            images: BTreeMap::new(),
        }
    }

    pub fn target_arity(&self) -> usize {
        self.target_arity
    }

    /// Assign `t_var ↦ image`; `image` must be `±` a monomial.
    pub fn assign(&mut self, var: usize, image: &LaurentPoly) -> Result<&mut Self, LaurentError> {
        let (c, m) = image
            .as_term()
            .filter(|(c, _)| c.abs().is_one())
            .ok_or_else(|| LaurentError::NotSignedMonomial(image.to_string()))?;
        let sign = if c.is_negative() { Sign::Minus } else { Sign::Plus };
        self.assign_monomial(var, sign, m.clone())
    }

    pub fn assign_monomial(
        &mut self,
        var: usize,
        sign: Sign,
        image: Monomial,
    ) -> Result<&mut Self, LaurentError> {
        if image.max_var() > self.target_arity {
            return Err(LaurentError::VariableOutOfRange {
                var: image.max_var(),
                arity: self.target_arity,
            });
        }
        self.images.insert(var, (sign, image));
        Ok(self)
    }

    /// `t_var ↦ 1`.
    pub fn set_one(mut self, var: usize) -> Self {
        self.images.insert(var, (Sign::Plus, Monomial::one()));
        self
    }

    /// `t_var ↦ t_target^exp`.
    pub fn set_power(mut self, var: usize, target: usize, exp: i64) -> Self {
        assert!(target <= self.target_arity);
        self.images.insert(var, (Sign::Plus, Monomial::var_pow(target, exp)));
        self
    }

    /// `t_i ↦ t_i^{-1}` for all `i ≤ arity`.
    pub fn inversion(arity: usize) -> Self {
        (1..=arity).fold(Self::new(arity), |s, v| s.set_power(v, v, -1))
    }

    fn image_of(&self, m: &Monomial) -> Result<(bool, Monomial), LaurentError> {
        let mut negative = false;
        let mut parts = Vec::new();
        for (v, e) in m.iter() {
            match self.images.get(&v) {
                Some((sign, img)) => {
                    if *sign == Sign::Minus && e % 2 != 0 {
                        negative = !negative;
                    }
                    parts.extend(img.pow(e).iter());
                }
                None => {
                    if v > self.target_arity {
                        return Err(LaurentError::VariableOutOfRange {
                            var: v,
                            arity: self.target_arity,
                        });
                    }
                    parts.push((v, e));
                }
            }
        }
        Ok((negative, Monomial::from_exponents(parts)))
    }
}

/// Apply `sigma` to `p` as a ring homomorphism.
pub fn substitute(p: &LaurentPoly, sigma: &Substitution) -> Result<LaurentPoly, LaurentError> {
    let mut out = LaurentPoly::zero(sigma.target_arity);
    for (m, c) in p.terms() {
        let (negative, img) = sigma.image_of(m)?;
        let c: BigInt = if negative { -c } else { c.clone() };
        out.add_term(img, c);
    }
    Ok(out)
}
