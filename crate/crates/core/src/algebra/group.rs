use crate::error::{Error, Result};
use crate::IntMatrix;

/// A finite group given by its Cayley table on elements `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, identity, inverses and associativity.
    pub fn from_cayley_table(order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 || table.len() != order * order || table.iter().any(|&x| x >= order) {
            return Err(Error::InvalidParameters("malformed Cayley table".into()));
        }
        let mul = |a: usize, b: usize| table[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or_else(|| Error::InvalidParameters("Cayley table has no identity".into()))?;
        let mut inverses = Vec::with_capacity(order);
        for x in 0..order {
            let inv = (0..order)
                .find(|&y| mul(x, y) == identity)
                .ok_or_else(|| Error::InvalidParameters(format!("element {x} has no inverse")))?;
            inverses.push(inv);
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::InvalidParameters("Cayley table is not associative".into()));
                    }
                }
            }
        }
        Ok(Self {
            order,
            table,
            identity,
            inverses,
        })
    }

    /// Z_g written additively: element `t` stands for `generator^t`.
    pub fn cyclic(order: usize) -> Self {
        let table = (0..order * order).map(|i| (i / order + i % order) % order).collect();
        Self {
            order,
            table,
            identity: 0,
            inverses: (0..order).map(|x| (order - x) % order).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Right regular representation: `φ(x)[a][b] = 1` iff `b = a·x`, so that
    /// `φ(x)·φ(y)ᵀ = φ(x·y⁻¹)`.
    pub fn regular_representation(&self, x: usize) -> IntMatrix {
        IntMatrix::from_fn(self.order, self.order, |a, b| {
            if self.mul(a, x) == b {
                1.into()
            } else {
                0.into()
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_representation_is_multiplicative() {
        let g = FiniteGroup::cyclic(5);
        for x in 0..5 {
            for y in 0..5 {
                let lhs = &g.regular_representation(x) * &g.regular_representation(y).transpose();
                assert_eq!(lhs, g.regular_representation(g.mul(x, g.inv(y))));
            }
        }
    }

    #[test]
    fn cayley_table_validation() {
        let klein: Vec<usize> = (0..16).map(|i| (i / 4) ^ (i % 4)).collect();
        let g = FiniteGroup::from_cayley_table(4, klein).unwrap();
        assert_eq!(g.identity(), 0);
        assert!(FiniteGroup::from_cayley_table(2, vec![0, 0, 0, 0]).is_err());
    }
}
