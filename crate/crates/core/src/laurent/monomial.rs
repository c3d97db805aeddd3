use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A unit monomial `t_1^{a_1} ... t_r^{a_r}` with integer exponents.
///
/// Exponents are keyed by the 1-based variable index; zero exponents are
/// never stored, so structural equality is equality of monomials.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial(BTreeMap<usize, i64>);

impl Monomial {
    pub fn one() -> Self {
        Self(BTreeMap::new())
    }

    /// The monomial `t_var`.
    pub fn var(var: usize) -> Self {
        Self::var_pow(var, 1)
    }

    pub fn var_pow(var: usize, exp: i64) -> Self {
        assert!(var >= 1, "variable indices are 1-based");
        let mut map = BTreeMap::new();
        if exp != 0 {
            map.insert(var, exp);
        }
        Self(map)
    }

    pub fn from_exponents<I: IntoIterator<Item = (usize, i64)>>(iter: I) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in iter {
            assert!(v >= 1, "variable indices are 1-based");
            *map.entry(v).or_insert(0) += e;
        }
        map.retain(|_, e| *e != 0);
        Self(map)
    }

    /// Exponents of `t_1..t_arity` as a dense vector.
    pub fn dense(&self, arity: usize) -> Vec<i64> {
        (1..=arity).map(|v| self.exponent(v)).collect()
    }

    pub fn exponent(&self, var: usize) -> i64 {
        self.0.get(&var).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_var(&self) -> usize {
        self.0.keys().next_back().copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.0.iter().map(|(&v, &e)| (v, e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(self.iter().chain(other.iter()))
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|(&v, &e)| (v, -e)).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i64) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(&v, &e)| (v, e * k)).collect())
    }

    /// Whether every exponent is even.
    pub fn is_square(&self) -> bool {
        self.0.values().all(|e| e % 2 == 0)
    }

    /// Square root of a monomial with even exponents.
    pub fn sqrt(&self) -> Option<Monomial> {
        self.is_square()
            .then(|| Monomial(self.0.iter().map(|(&v, &e)| (v, e / 2)).collect()))
    }
}

/// Lexicographic order on exponent vectors with `t_1 > t_2 > ...`.
///
/// Compatible with multiplication, so multiplying by a unit monomial keeps
/// the leading term leading.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.0.iter().peekable();
        let mut b = other.0.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, &x)), None) => return x.cmp(&0),
                (None, Some(&(_, &y))) => return 0.cmp(&y),
                (Some(&(&i, &x)), Some(&(&j, &y))) => {
                    if i == j {
                        if x != y {
                            return x.cmp(&y);
                        }
                        a.next();
                        b.next();
                    } else if i < j {
                        return x.cmp(&0);
                    } else {
                        return 0.cmp(&y);
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in self.iter() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "t{v}")?;
            } else {
                write!(f, "t{v}^{e}")?;
            }
        }
        Ok(())
    }
}
