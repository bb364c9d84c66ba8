use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;

use super::params::{LinkedParams, Triple};
use super::system::{verify_linked_system, LinkedSystemII};
use crate::designs::{GddParams, IncidenceMatrix};
use crate::error::{precondition, Error, Result};
use crate::hadamard::{is_bush_type, is_hadamard};
use crate::IntMatrix;

/// Mutually unbiased Bush-type Hadamard matrices `H_1..H_f` of order `4n²`
/// give a system on indices `0..=f`: `H_{i,0} = H_{0,i}ᵀ = H_i`,
/// `H_{i,j} = H_iH_jᵀ/(2n)` and `A_{i,j} = (J + H_{i,j})/2 − K`, with
/// parameters `(4n², 2n²−n, 2n, 2n, n²−n, n²−n)` and
/// `(σ,τ,ρ) = (n²−n/2, n²−3n/2, n²−n/2)`. Certified before return.
///
/// The blocks are the partial complements of `(J − H_{i,j})/2`. Those
/// satisfy `A_{i,j}A_{j,l} = (n² − n/2)J − nA_{i,l}` since
/// `H_{i,j}H_{j,l} = 2nH_{i,l}`, which has no `K` term.
pub fn build_from_mub_bush(hs: &[IntMatrix]) -> Result<LinkedSystemII> {
    let Some(first) = hs.first() else {
        return precondition("need at least one Bush-type Hadamard matrix");
    };
    let order = first.rows();
    let block = (1..=order).find(|b| b * b >= order).unwrap_or(0);
    if block * block != order || block % 2 != 0 {
        return precondition(format!("order {order} is not 4n^2"));
    }
    let n = block / 2;
    if n % 2 != 0 {
        return Err(Error::InvalidParameters(format!(
            "tau = n^2 - 3n/2 is not an integer for n = {n}"
        )));
    }
    for (i, h) in hs.iter().enumerate() {
        if h.shape() != (order, order) || !is_hadamard(h) {
            return precondition(format!("H_{} is not a Hadamard matrix of order {order}", i + 1));
        }
        if !is_bush_type(h, block) {
            return precondition(format!("H_{} is not of Bush type", i + 1));
        }
    }
    let two_n = BigInt::from(2 * n);
    let mut h_pairs: BTreeMap<(usize, usize), IntMatrix> = BTreeMap::new();
    for (i, hi) in hs.iter().enumerate() {
        h_pairs.insert((i + 1, 0), hi.clone());
        h_pairs.insert((0, i + 1), hi.transpose());
        for (j, hj) in hs.iter().enumerate().filter(|&(j, _)| j != i) {
            let prod = hi * &hj.transpose();
            if !prod.entries().iter().all(|e| e.abs() == two_n) {
                return precondition(format!("H_{} and H_{} are not unbiased", i + 1, j + 1));
            }
            h_pairs.insert((i + 1, j + 1), prod.map(|e| e / &two_n));
        }
    }
    let ones = IntMatrix::ones(order);
    let k_mat = IntMatrix::group_indicator(block, block);
    let blocks = h_pairs
        .into_iter()
        .map(|(key, h)| {
            let a = &(&ones + &h).map(|e| e / 2) - &k_mat;
            Ok((key, IncidenceMatrix::new(a, block, block)?))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    let n64 = n as u64;
    let b64 = block as u64;
    let base = GddParams::new(
        b64 * b64,
        2 * n64 * n64 - n64,
        b64,
        b64,
        n64 * n64 - n64,
        n64 * n64 - n64,
    )?;
    let f = hs.len() + 1;
    let triple = (f >= 3).then_some(Triple {
        sigma: n64 * n64 - n64 / 2,
        tau: n64 * n64 - 3 * n64 / 2,
        rho: n64 * n64 - n64 / 2,
    });
    let sys = LinkedSystemII::new(LinkedParams::new(base, f, triple)?, blocks)?;
    verify_linked_system(&sys).into_result()?;
    Ok(sys)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BushOutcome {
    Found(Vec<IntMatrix>),
    Exhausted { nodes: u64 },
}

/// Backtracking search for `f` mutually unbiased Bush-type Hadamard
/// matrices of order `4n²` (`n = 2` only). Rows are chosen block row by
/// block row from the vectors that are all ones on their own block and
/// balanced on every other block, in increasing candidate order within a
/// block row. Each later matrix only draws rows whose inner product with
/// every row of the earlier ones is `±2n`.
pub fn bush_search(n: usize, f: usize, budget: u64) -> Result<BushOutcome> {
    if n < 2 {
        return precondition(format!("n = {n} is degenerate: tau = n^2 - 3n/2 is not an integer"));
    }
    if 4 * n * n > 16 {
        return precondition(format!("order 4n^2 = {} exceeds the search limit 16", 4 * n * n));
    }
    if f == 0 {
        return precondition("need f >= 1");
    }
    let mut s = BushSearch {
        b: 2 * n,
        budget,
        nodes: 0,
        found: Vec::new(),
    };
    let cands = s.candidates();
    if s.search(f, &cands)? {
        let mats = s.found.iter().map(|rows| to_matrix(rows)).collect();
        Ok(BushOutcome::Found(mats))
    } else {
        Ok(BushOutcome::Exhausted { nodes: s.nodes })
    }
}

type Row = Vec<i8>;

fn to_matrix(rows: &[Row]) -> IntMatrix {
    let n = rows.len();
    IntMatrix::from_fn(n, n, |i, j| BigInt::from(rows[i][j]))
}

fn dot(a: &[i8], b: &[i8]) -> i32 {
    a.iter().zip(b).map(|(&x, &y)| x as i32 * y as i32).sum()
}

struct BushSearch {
    b: usize,
    budget: u64,
    nodes: u64,
    found: Vec<Vec<Row>>,
}

impl BushSearch {
    /// Per block row, every row vector that is all ones on its own block and
    /// has zero sum on each other block.
    fn candidates(&self) -> Vec<Vec<Row>> {
        let b = self.b;
        let balanced: Vec<Vec<i8>> = (0u32..1 << b)
            .filter(|m| m.count_ones() as usize == b / 2)
            .map(|m| (0..b).map(|i| if m >> i & 1 == 1 { -1 } else { 1 }).collect())
            .collect();
        (0..b)
            .map(|a| {
                let mut rows: Vec<Row> = vec![Vec::new()];
                for blk in 0..b {
                    let parts: Vec<Vec<i8>> = if blk == a { vec![vec![1; b]] } else { balanced.clone() };
                    rows = rows
                        .iter()
                        .flat_map(|r| parts.iter().map(move |p| [r.as_slice(), p].concat()))
                        .collect();
                }
                rows
            })
            .collect()
    }

    fn search(&mut self, remaining: usize, cands: &[Vec<Row>]) -> Result<bool> {
        if remaining == 0 {
            return Ok(true);
        }
        let mut rows = Vec::with_capacity(self.b * self.b);
        self.extend(&mut rows, 0, remaining, cands)
    }

    fn extend(&mut self, rows: &mut Vec<Row>, lo: usize, remaining: usize, cands: &[Vec<Row>]) -> Result<bool> {
        let b = self.b;
        let order = b * b;
        if rows.len() == order {
            if !self.column_balanced(rows) {
                return Ok(false);
            }
            let unbiased = b as i32;
            let next: Vec<Vec<Row>> = cands
                .iter()
                .map(|c| {
                    c.iter()
                        .filter(|r| rows.iter().all(|h| dot(h, r).abs() == unbiased))
                        .cloned()
                        .collect()
                })
                .collect();
            self.found.push(rows.clone());
            if self.search(remaining - 1, &next)? {
                return Ok(true);
            }
            self.found.pop();
            return Ok(false);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let a = rows.len() / b;
        let at_block_start = rows.len().is_multiple_of(b);
        let start = if at_block_start { 0 } else { lo };
        for idx in start..cands[a].len() {
            let r = &cands[a][idx];
            if rows.iter().all(|h| dot(h, r) == 0) {
                rows.push(r.clone());
                let done = rows.len().is_multiple_of(b) && !self.block_row_balanced(rows, a);
                if !done && self.extend(rows, idx + 1, remaining, cands)? {
                    return Ok(true);
                }
                rows.pop();
            }
        }
        Ok(false)
    }

    // Column sums of the off-diagonal blocks in block row `a` vanish.
    fn block_row_balanced(&self, rows: &[Row], a: usize) -> bool {
        let b = self.b;
        (0..b * b).all(|c| c / b == a || (a * b..(a + 1) * b).map(|r| rows[r][c] as i32).sum::<i32>() == 0)
    }

    fn column_balanced(&self, rows: &[Row]) -> bool {
        (0..self.b).all(|a| self.block_row_balanced(rows, a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::sylvester;

    #[test]
    fn search_two_unbiased() {
        let BushOutcome::Found(hs) = bush_search(2, 2, 10_000_000).unwrap() else {
            panic!("not found")
        };
        assert_eq!(hs.len(), 2);
        for h in &hs {
            assert!(is_hadamard(h) && is_bush_type(h, 4));
        }
        let sys = build_from_mub_bush(&hs).unwrap();
        assert_eq!(sys.f(), 3);
        assert_eq!(sys.params().base, GddParams::new(16, 6, 4, 4, 2, 2).unwrap());
        assert_eq!(
            sys.params().triple,
            Some(Triple {
                sigma: 3,
                tau: 1,
                rho: 3
            })
        );
    }

    #[test]
    fn single_bush_matrix() {
        let BushOutcome::Found(hs) = bush_search(2, 1, 1_000_000).unwrap() else {
            panic!("not found")
        };
        let sys = build_from_mub_bush(&hs).unwrap();
        assert_eq!(sys.f(), 2);
    }

    #[test]
    fn guards() {
        assert!(bush_search(1, 2, 100).is_err());
        assert!(bush_search(3, 2, 100).is_err());
        let h = sylvester(16).unwrap();
        assert!(build_from_mub_bush(&[h]).is_err());
    }

    #[test]
    fn literal_blocks_miss_k_term() {
        let BushOutcome::Found(hs) = bush_search(2, 2, 10_000_000).unwrap() else {
            panic!("not found")
        };
        let half = |h: &IntMatrix| (&IntMatrix::ones(16) - h).map(|e| e / 2);
        let h12 = (&hs[0] * &hs[1].transpose()).map(|e| e / 4);
        let (a01, a12, a02) = (half(&hs[0].transpose()), half(&h12), half(&hs[1].transpose()));
        let want = &IntMatrix::ones(16).scale(&3.into()) - &a02.scale(&2.into());
        assert_eq!(&a01 * &a12, want);
    }

    #[test]
    fn biased_pair_rejected() {
        let BushOutcome::Found(hs) = bush_search(2, 1, 1_000_000).unwrap() else {
            panic!("not found")
        };
        assert!(build_from_mub_bush(&[hs[0].clone(), hs[0].clone()]).is_err());
    }
}
