use std::cmp::Ordering;

/// Exponent vector with its cached total degree. Ordered by
/// degree-reverse-lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u32,
    exps: Vec<u32>,
}

pub const MAX_VARS: usize = 64;

impl Monomial {
    pub fn one(n_vars: usize) -> Self {
        Monomial {
            deg: 0,
            exps: vec![0; n_vars],
        }
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        let mut m = Self::one(n_vars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial {
            deg: exps.iter().sum(),
            exps,
        }
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn n_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial {
            deg: self.deg + other.deg,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            deg: other.deg - self.deg,
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Self::from_exps(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&i| self.exps[i] > 0).collect()
    }

    /// Square-free part: every occurring variable with exponent 1.
    pub fn radical(&self) -> Self {
        Self::from_exps(self.exps.iter().map(|&e| u32::from(e > 0)).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| {
            // the last differing variable decides: smaller exponent is bigger
            for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e.to_vec())
    }

    #[test]
    fn degrevlex_examples() {
        // x0 > x1 > x2
        assert!(m(&[1, 0, 0]) > m(&[0, 1, 0]));
        assert!(m(&[0, 1, 0]) > m(&[0, 0, 1]));
        // x1^2 > x0*x2 in degrevlex (differs from lex)
        assert!(m(&[0, 2, 0]) > m(&[1, 0, 1]));
        assert!(m(&[0, 0, 2]) > m(&[1, 0, 0]));
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert_eq!(a.quotient_of(&b), Some(m(&[1, 0, 1])));
        assert_eq!(b.quotient_of(&a), None);
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[1, 3, 1]));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 4, 1])));
    }
}
