//! Latin squares under row-pair orthogonality, their composition, and linked
//! families.
//!
//! Two squares `L1`, `L2` of order `n` are orthogonal here when every row of
//! `L1` agrees with every row of `L2` in exactly one column. This is the
//! classical notion applied after reading each square as a set of `n`
//! permutations (its rows): `L1` and `L2` are orthogonal in this sense iff
//! for all rows `i`, `j` the permutation `L2_j⁻¹ ∘ L1_i` has a unique fixed
//! point. Composing two orthogonal squares records that common value.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{precondition, Error, Result};
use crate::report::Certificate;
use crate::GfContext;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatinSquare {
    order: usize,
    grid: Vec<usize>,
}

impl fmt::Debug for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatinSquare({:?})", self.rows().collect::<Vec<_>>())
    }
}

impl LatinSquare {
    /// Validates that every row and column is a permutation of `0..n`.
    pub fn new(order: usize, grid: Vec<usize>) -> Result<Self> {
        if order == 0 || grid.len() != order * order {
            return Err(Error::InvalidParameters(format!(
                "latin square of order {order} needs {} cells, got {}",
                order * order,
                grid.len()
            )));
        }
        let sq = Self { order, grid };
        for i in 0..order {
            if !is_permutation(order, (0..order).map(|j| sq.get(i, j))) {
                return Err(Error::InvalidParameters(format!(
                    "row {i} is not a permutation of 0..{order}"
                )));
            }
            if !is_permutation(order, (0..order).map(|j| sq.get(j, i))) {
                return Err(Error::InvalidParameters(format!(
                    "column {i} is not a permutation of 0..{order}"
                )));
            }
        }
        Ok(sq)
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        Self::new(rows.len(), rows.concat())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.grid[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.grid[i * self.order..(i + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.grid.chunks(self.order)
    }

    pub fn transpose(&self) -> Self {
        let n = self.order;
        Self {
            order: n,
            grid: (0..n * n).map(|x| self.get(x % n, x / n)).collect(),
        }
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.order).all(|i| self.get(i, i) == 0)
    }
}

impl fmt::Display for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.order)?;
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(usize::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

fn is_permutation(n: usize, xs: impl Iterator<Item = usize>) -> bool {
    let mut seen = vec![false; n];
    for x in xs {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    seen.into_iter().all(|b| b)
}

fn check_orders(l1: &LatinSquare, l2: &LatinSquare) -> Result<()> {
    if l1.order != l2.order {
        return Err(Error::DimensionMismatch {
            op: "latin",
            left: (l1.order, l1.order),
            right: (l2.order, l2.order),
        });
    }
    Ok(())
}

/// For every row `i` of `l1` and `j` of `l2`, the number of columns where
/// they agree must be exactly one.
pub fn is_orthogonal(l1: &LatinSquare, l2: &LatinSquare) -> Result<bool> {
    check_orders(l1, l2)?;
    let n = l1.order;
    Ok((0..n).all(|i| (0..n).all(|j| l1.row(i).iter().zip(l2.row(j)).filter(|(a, b)| a == b).count() == 1)))
}

/// `(i,j)` entry is the value shared by row `i` of `l1` and row `j` of `l2`.
pub fn compose(l1: &LatinSquare, l2: &LatinSquare) -> Result<LatinSquare> {
    check_orders(l1, l2)?;
    let n = l1.order;
    let mut grid = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut common = l1.row(i).iter().zip(l2.row(j)).filter(|(a, b)| a == b);
            match (common.next(), common.next()) {
                (Some((&b, _)), None) => grid.push(b),
                _ => {
                    return precondition(format!(
                        "squares are not orthogonal: rows {i} and {j} do not share exactly one entry"
                    ))
                }
            }
        }
    }
    LatinSquare::new(n, grid)
}

/// `S_k = (α_k(α_i − α_j))` for the non-zero elements `α_k`, in enumeration
/// order. Symbol `t` is the `t`-th enumerated field element.
pub fn mols_from_gf(ctx: &GfContext) -> Vec<LatinSquare> {
    let q = ctx.order();
    ctx.enumerate()
        .skip(1)
        .map(|ak| {
            let grid = (0..q * q)
                .map(|x| {
                    let (ai, aj) = (crate::GfElement(x / q), crate::GfElement(x % q));
                    ctx.mul(ak, ctx.sub(ai, aj)).0
                })
                .collect();
            LatinSquare { order: q, grid }
        })
        .collect()
}

/// Squares `L_{i,j}` for ordered pairs of distinct indices in `0..f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkedMolsFamily {
    f: usize,
    order: usize,
    squares: BTreeMap<(usize, usize), LatinSquare>,
}

impl LinkedMolsFamily {
    /// Requires every ordered pair of distinct indices in `0..f` exactly once.
    pub fn new(f: usize, squares: BTreeMap<(usize, usize), LatinSquare>) -> Result<Self> {
        let order = squares
            .values()
            .next()
            .map(LatinSquare::order)
            .ok_or_else(|| Error::InvalidParameters("empty family".into()))?;
        let expected: Vec<(usize, usize)> = pair_order(f);
        let mut keys: Vec<_> = squares.keys().copied().collect();
        let mut want = expected.clone();
        keys.sort();
        want.sort();
        if keys != want {
            return Err(Error::InvalidParameters(format!(
                "family needs one square per ordered pair of distinct indices below {f}"
            )));
        }
        if squares.values().any(|s| s.order() != order) {
            return Err(Error::InvalidParameters("squares of different orders".into()));
        }
        Ok(Self { f, order, squares })
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `L_{i,j}`, 0-based. Panics if `i == j` or out of range.
    pub fn get(&self, i: usize, j: usize) -> &LatinSquare {
        &self.squares[&(i, j)]
    }

    pub fn squares(&self) -> &BTreeMap<(usize, usize), LatinSquare> {
        &self.squares
    }

    pub fn has_zero_diagonals(&self) -> bool {
        self.squares.values().all(LatinSquare::has_zero_diagonal)
    }
}

/// Upper pairs `(i,j)`, `i<j`, lexicographically, then lower pairs.
pub fn pair_order(f: usize) -> Vec<(usize, usize)> {
    let upper = (0..f).flat_map(|i| (i + 1..f).map(move |j| (i, j)));
    let lower = (0..f).flat_map(|i| (0..i).map(move |j| (i, j)));
    upper.chain(lower).collect()
}

/// `L_{i,j} = compose(B_i, B_j)` for pairwise orthogonal bases.
pub fn linked_from_mols(bases: &[LatinSquare]) -> Result<LinkedMolsFamily> {
    let f = bases.len();
    if f < 3 {
        return precondition(format!("a linked family needs f >= 3, got {f}"));
    }
    let mut squares = BTreeMap::new();
    for i in 0..f {
        for j in 0..f {
            if i != j {
                squares.insert((i, j), compose(&bases[i], &bases[j])?);
            }
        }
    }
    LinkedMolsFamily::new(f, squares)
}

/// A family on `bases.len() + 1` indices: the last index `t` has
/// `L_{i,t} = B_i`, `L_{t,i} = B_iᵀ`, and the rest are compositions.
/// Every linked family arises this way from its squares `L_{i,f}`.
pub fn linked_from_bases_extended(bases: &[LatinSquare]) -> Result<LinkedMolsFamily> {
    let f = bases.len() + 1;
    if f < 3 {
        return precondition(format!("a linked family needs f >= 3, got {f}"));
    }
    let t = f - 1;
    let mut squares = BTreeMap::new();
    for (i, b) in bases.iter().enumerate() {
        for (j, c) in bases.iter().enumerate() {
            if i != j {
                squares.insert((i, j), compose(b, c)?);
            }
        }
        squares.insert((i, t), b.clone());
        squares.insert((t, i), b.transpose());
    }
    LinkedMolsFamily::new(f, squares)
}

/// `L_{k,k'} = S_{k,k'}` over `GF(2^n)`: `f = q − 1`, zero diagonals.
pub fn linked_mols_from_gf2n(ctx: &GfContext) -> Result<LinkedMolsFamily> {
    if ctx.characteristic() != 2 {
        return precondition(format!(
            "characteristic must be 2, field has characteristic {}",
            ctx.characteristic()
        ));
    }
    let fam = linked_from_mols(&mols_from_gf(ctx))?;
    verify_linked(&fam).into_result()?;
    Ok(fam)
}

/// All ordered triples of distinct indices: `L_{i,k}`, `L_{j,k}` orthogonal
/// and composing to `L_{i,j}`.
pub fn verify_linked(fam: &LinkedMolsFamily) -> Certificate {
    let mut cert = Certificate::new(format!("linked MOLS family f={} order={}", fam.f, fam.order));
    cert.check("f >= 3", fam.f >= 3, || format!("f = {}", fam.f));
    let mut bad_orth = None;
    let mut bad_comp = None;
    let mut triples = 0usize;
    let f = fam.f;
    for i in 0..f {
        for j in (0..f).filter(|&j| j != i) {
            for k in (0..f).filter(|&k| k != i && k != j) {
                triples += 1;
                let (lik, ljk) = (fam.get(i, k), fam.get(j, k));
                match compose(lik, ljk) {
                    Err(_) => {
                        bad_orth.get_or_insert((i, j, k));
                    }
                    Ok(c) if &c != fam.get(i, j) => {
                        bad_comp.get_or_insert((i, j, k));
                    }
                    Ok(_) => {}
                }
            }
        }
    }
    cert.check(
        format!("L_ik, L_jk orthogonal ({triples} triples)"),
        bad_orth.is_none(),
        || {
            let (i, j, k) = bad_orth.unwrap();
            format!("fails at (i,j,k)=({},{},{})", i + 1, j + 1, k + 1)
        },
    );
    cert.check(
        format!("compose(L_ik, L_jk) = L_ij ({triples} triples)"),
        bad_comp.is_none(),
        || {
            let (i, j, k) = bad_comp.unwrap();
            format!("fails at (i,j,k)=({},{},{})", i + 1, j + 1, k + 1)
        },
    );
    cert
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(LinkedMolsFamily),
    /// The whole space was explored without a witness.
    Exhausted {
        nodes: u64,
    },
}

/// Depth-first search for a linked family on `f` indices and `order`
/// symbols, within `budget` search nodes.
///
/// The unknowns are the `f − 1` squares `B_i = L_{i,f}`; every other square
/// is forced by composition. Cells are filled row by row, interleaving the
/// squares so that row-pair orthogonality prunes early. Symbols are
/// relabelled so that the first row of `B_1` is `0 1 .. n−1`. Candidates
/// passing all local constraints are assembled and gated by
/// [`verify_linked`]; the first one to pass is returned, which is the
/// lexicographically least in exploration order.
pub fn search_linked_mols(order: usize, f: usize, zero_diagonal: bool, budget: u64) -> Result<SearchOutcome> {
    if f < 3 {
        return precondition(format!("a linked family needs f >= 3, got {f}"));
    }
    if order == 0 || order > 8 {
        return precondition(format!("search order must be in 1..=8, got {order}"));
    }
    let mut s = Search::new(order, f - 1, zero_diagonal, budget);
    match s.run() {
        Ok(Some(fam)) => Ok(SearchOutcome::Found(fam)),
        Ok(None) => Ok(SearchOutcome::Exhausted { nodes: s.nodes }),
        Err(e) => Err(e),
    }
}

const EMPTY: usize = usize::MAX;

struct Search {
    n: usize,
    squares: usize,
    zero_diagonal: bool,
    budget: u64,
    nodes: u64,
    // grids[s][i*n + j]
    grids: Vec<Vec<usize>>,
    row_used: Vec<Vec<u64>>,
    col_used: Vec<Vec<u64>>,
    // agree[(s,t)][i*n + j] counts columns where row i of B_s equals row j of B_t, s < t
    agree: Vec<Vec<u8>>,
}

impl Search {
    fn new(n: usize, squares: usize, zero_diagonal: bool, budget: u64) -> Self {
        let pairs = squares * squares;
        Self {
            n,
            squares,
            zero_diagonal,
            budget,
            nodes: 0,
            grids: vec![vec![EMPTY; n * n]; squares],
            row_used: vec![vec![0; n]; squares],
            col_used: vec![vec![0; n]; squares],
            agree: vec![vec![0; n * n]; pairs],
        }
    }

    fn cell(&self, pos: usize) -> (usize, usize, usize) {
        // position -> (square, row, col), rows outermost
        let n = self.n;
        let per_row = self.squares * n;
        let row = pos / per_row;
        let rest = pos % per_row;
        (rest / n, row, rest % n)
    }

    fn run(&mut self) -> Result<Option<LinkedMolsFamily>> {
        let n = self.n;
        for j in 0..n {
            self.place(0, 0, j, j);
        }
        self.dfs(n)
    }

    fn place(&mut self, s: usize, i: usize, j: usize, x: usize) {
        let n = self.n;
        self.grids[s][i * n + j] = x;
        self.row_used[s][i] |= 1 << x;
        self.col_used[s][j] |= 1 << x;
        for t in 0..self.squares {
            if t == s {
                continue;
            }
            for r in 0..n {
                if self.grids[t][r * n + j] == x {
                    let (a, b, ri, rj) = if s < t { (s, t, i, r) } else { (t, s, r, i) };
                    self.agree[a * self.squares + b][ri * n + rj] += 1;
                }
            }
        }
    }

    fn unplace(&mut self, s: usize, i: usize, j: usize) {
        let n = self.n;
        let x = self.grids[s][i * n + j];
        for t in 0..self.squares {
            if t == s {
                continue;
            }
            for r in 0..n {
                if self.grids[t][r * n + j] == x {
                    let (a, b, ri, rj) = if s < t { (s, t, i, r) } else { (t, s, r, i) };
                    self.agree[a * self.squares + b][ri * n + rj] -= 1;
                }
            }
        }
        self.grids[s][i * n + j] = EMPTY;
        self.row_used[s][i] &= !(1 << x);
        self.col_used[s][j] &= !(1 << x);
    }

    // No agreement count exceeds one, and completed row pairs agree exactly once.
    fn consistent(&self, s: usize, i: usize, j: usize) -> bool {
        let n = self.n;
        for t in 0..self.squares {
            if t == s {
                continue;
            }
            for r in 0..n {
                let (a, b, ri, rj) = if s < t { (s, t, i, r) } else { (t, s, r, i) };
                let c = self.agree[a * self.squares + b][ri * n + rj];
                if c > 1 {
                    return false;
                }
                let complete = j == n - 1 && self.grids[t][r * n + n - 1] != EMPTY;
                if complete && c != 1 {
                    return false;
                }
            }
        }
        true
    }

    fn dfs(&mut self, pos: usize) -> Result<Option<LinkedMolsFamily>> {
        let n = self.n;
        if pos == self.squares * n * n {
            return self.assemble();
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let (s, i, j) = self.cell(pos);
        let forced = self.zero_diagonal && i == j;
        for x in 0..n {
            if forced && x != 0 {
                continue;
            }
            if self.row_used[s][i] >> x & 1 == 1 || self.col_used[s][j] >> x & 1 == 1 {
                continue;
            }
            if self.zero_diagonal && x == 0 && i != j {
                continue;
            }
            self.place(s, i, j, x);
            if self.consistent(s, i, j) {
                if let Some(found) = self.dfs(pos + 1)? {
                    self.unplace(s, i, j);
                    return Ok(Some(found));
                }
            }
            self.unplace(s, i, j);
        }
        Ok(None)
    }

    fn assemble(&self) -> Result<Option<LinkedMolsFamily>> {
        let bases: Vec<LatinSquare> = self
            .grids
            .iter()
            .map(|g| LatinSquare::new(self.n, g.clone()))
            .collect::<Result<_>>()?;
        let fam = match linked_from_bases_extended(&bases) {
            Ok(fam) => fam,
            Err(Error::Precondition(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        Ok(verify_linked(&fam).holds().then_some(fam))
    }
}
