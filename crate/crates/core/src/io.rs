//! Plain-text file formats. Every writer's output reads back to an equal
//! object, and writing that object again gives the same bytes.
//!
//! * matrix v1: `rows cols`, then one line of space-separated integers per row.
//! * auxiliary set: `v r`, then `r` matrices.
//! * matrix list: `count`, then `count` matrices.
//! * Latin square: `n`, then `n` rows of symbols `0..n`.
//! * square list: `count n`, then the squares as bare rows.
//! * linked MOLS family: `f n`, then the squares as bare rows in
//!   [`crate::latin::pair_order`].
//! * linked system: `f v m n k l1 l2 sigma tau rho` (`-` for the triple of a
//!   pair), then the blocks `A_{i,j}` in lexicographic order of `(i, j)`.
//! * scheme: `d |X|`, then `A_0..A_d`.
//! * GCM: `size g`, then the `g` rows of the group's Cayley table, then `size`
//!   rows with `-` for zero entries.
//!
//! Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::designs::{GddParams, IncidenceMatrix};
use crate::error::{Error, Result};
use crate::latin::{pair_order, LatinSquare, LinkedMolsFamily};
use crate::linked::{Gcm, LinkedParams, LinkedSystemII, Triple};
use crate::resolvable::AuxiliarySet;
use crate::schemes::AssociationScheme;
use crate::{FiniteGroup, IntMatrix};

struct Tokens<'a> {
    lines: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#')),
        );
        Self {
            lines: it.peekable(),
            last: 0,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.last,
            msg: msg.into(),
        }
    }

    fn line(&mut self, want: usize) -> Result<Vec<&'a str>> {
        let (no, l) = self.lines.next().ok_or_else(|| Error::Parse {
            line: self.last + 1,
            msg: "unexpected end of input".into(),
        })?;
        self.last = no;
        let t: Vec<&str> = l.split_whitespace().collect();
        if t.len() != want {
            return Err(self.err(format!("expected {want} fields, got {}", t.len())));
        }
        Ok(t)
    }

    fn parse<T: FromStr>(&self, t: &str) -> Result<T> {
        t.parse().map_err(|_| self.err(format!("bad value {t:?}")))
    }

    fn usizes(&mut self, want: usize) -> Result<Vec<usize>> {
        let t = self.line(want)?;
        t.iter().map(|x| self.parse(x)).collect()
    }

    fn matrix(&mut self) -> Result<IntMatrix> {
        let h = self.usizes(2)?;
        let (r, c) = (h[0], h[1]);
        let mut entries = Vec::with_capacity(r * c);
        for _ in 0..r {
            let t = self.line(c)?;
            for x in t {
                entries.push(self.parse::<BigInt>(x)?);
            }
        }
        IntMatrix::new(r, c, entries)
    }

    fn finish(mut self) -> Result<()> {
        match self.lines.next() {
            None => Ok(()),
            Some((no, _)) => Err(Error::Parse {
                line: no,
                msg: "trailing content".into(),
            }),
        }
    }
}

pub fn write_matrix(a: &IntMatrix) -> String {
    a.to_string()
}

pub fn read_matrix(text: &str) -> Result<IntMatrix> {
    let mut t = Tokens::new(text);
    let a = t.matrix()?;
    t.finish()?;
    Ok(a)
}

pub fn write_matrices(mats: &[IntMatrix]) -> String {
    let mut out = format!("{}\n", mats.len());
    mats.iter().for_each(|a| out.push_str(&a.to_string()));
    out
}

pub fn read_matrices(text: &str) -> Result<Vec<IntMatrix>> {
    let mut t = Tokens::new(text);
    let count = t.usizes(1)?[0];
    let mats = (0..count).map(|_| t.matrix()).collect::<Result<Vec<_>>>()?;
    t.finish()?;
    Ok(mats)
}

pub fn write_aux(set: &AuxiliarySet) -> String {
    let mut out = format!("{} {}\n", set.params().v, set.matrices().len());
    set.matrices().iter().for_each(|c| out.push_str(&c.to_string()));
    out
}

pub fn read_aux(text: &str) -> Result<AuxiliarySet> {
    let mut t = Tokens::new(text);
    let h = t.usizes(2)?;
    let mats = (0..h[1]).map(|_| t.matrix()).collect::<Result<Vec<_>>>()?;
    t.finish()?;
    if mats.iter().any(|c| c.shape() != (h[0], h[0])) {
        return Err(Error::Parse {
            line: 1,
            msg: format!("matrices must be {0}x{0}", h[0]),
        });
    }
    AuxiliarySet::from_matrices(mats)
}

pub fn write_latin(l: &LatinSquare) -> String {
    l.to_string()
}

fn square_rows(t: &mut Tokens<'_>, n: usize) -> Result<LatinSquare> {
    let rows = (0..n).map(|_| t.usizes(n)).collect::<Result<Vec<_>>>()?;
    LatinSquare::from_rows(&rows)
}

pub fn read_latin(text: &str) -> Result<LatinSquare> {
    let mut t = Tokens::new(text);
    let n = t.usizes(1)?[0];
    let l = square_rows(&mut t, n)?;
    t.finish()?;
    Ok(l)
}

pub fn write_squares(squares: &[LatinSquare]) -> String {
    let n = squares.first().map_or(0, LatinSquare::order);
    let mut out = format!("{} {n}\n", squares.len());
    for l in squares {
        push_rows(&mut out, l);
    }
    out
}

pub fn read_squares(text: &str) -> Result<Vec<LatinSquare>> {
    let mut t = Tokens::new(text);
    let h = t.usizes(2)?;
    let squares = (0..h[0])
        .map(|_| square_rows(&mut t, h[1]))
        .collect::<Result<Vec<_>>>()?;
    t.finish()?;
    Ok(squares)
}

fn push_rows(out: &mut String, l: &LatinSquare) {
    for row in l.rows() {
        let line: Vec<String> = row.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
}

pub fn write_family(fam: &LinkedMolsFamily) -> String {
    let mut out = format!("{} {}\n", fam.f(), fam.order());
    for (i, j) in pair_order(fam.f()) {
        push_rows(&mut out, fam.get(i, j));
    }
    out
}

pub fn read_family(text: &str) -> Result<LinkedMolsFamily> {
    let mut t = Tokens::new(text);
    let h = t.usizes(2)?;
    let (f, n) = (h[0], h[1]);
    let mut squares = BTreeMap::new();
    for key in pair_order(f) {
        squares.insert(key, square_rows(&mut t, n)?);
    }
    t.finish()?;
    LinkedMolsFamily::new(f, squares)
}

pub fn write_linked_system(sys: &LinkedSystemII) -> String {
    let p = sys.params();
    let b = p.base;
    let triple = match p.triple {
        Some(t) => format!("{} {} {}", t.sigma, t.tau, t.rho),
        None => "- - -".into(),
    };
    let mut out = format!(
        "{} {} {} {} {} {} {} {triple}\n",
        p.f, b.v, b.m, b.n, b.k, b.lambda1, b.lambda2
    );
    sys.blocks()
        .values()
        .for_each(|a| out.push_str(&a.matrix().to_string()));
    out
}

pub fn read_linked_system(text: &str) -> Result<LinkedSystemII> {
    let mut t = Tokens::new(text);
    let h = t.line(10)?;
    let nums = h[..7].iter().map(|x| t.parse::<u64>(x)).collect::<Result<Vec<_>>>()?;
    let triple = if h[7..] == ["-", "-", "-"] {
        None
    } else {
        let x = h[7..].iter().map(|x| t.parse::<u64>(x)).collect::<Result<Vec<_>>>()?;
        Some(Triple {
            sigma: x[0],
            tau: x[1],
            rho: x[2],
        })
    };
    let f = nums[0] as usize;
    let base = GddParams::new(nums[1], nums[4], nums[2], nums[3], nums[5], nums[6])?;
    let params = LinkedParams::new(base, f, triple)?;
    let mut blocks = BTreeMap::new();
    for i in 0..f {
        for j in (0..f).filter(|&j| j != i) {
            let a = IncidenceMatrix::new(t.matrix()?, base.m as usize, base.n as usize)?;
            blocks.insert((i, j), a);
        }
    }
    t.finish()?;
    LinkedSystemII::new(params, blocks)
}

pub fn write_scheme(s: &AssociationScheme) -> String {
    let mut out = format!("{} {}\n", s.d(), s.order());
    s.classes().iter().for_each(|a| out.push_str(&a.to_string()));
    out
}

/// Adjacency matrices of a scheme file; certification is left to the caller.
pub fn read_scheme(text: &str) -> Result<Vec<IntMatrix>> {
    let mut t = Tokens::new(text);
    let h = t.usizes(2)?;
    let mats = (0..=h[0]).map(|_| t.matrix()).collect::<Result<Vec<_>>>()?;
    t.finish()?;
    if mats.iter().any(|a| a.shape() != (h[1], h[1])) {
        return Err(Error::Parse {
            line: 1,
            msg: format!("adjacency matrices must be {0}x{0}", h[1]),
        });
    }
    Ok(mats)
}

pub fn write_gcm(c: &Gcm) -> String {
    let g = c.group();
    let mut out = format!("{} {}\n", c.size(), g.order());
    for a in 0..g.order() {
        let row: Vec<String> = (0..g.order()).map(|b| g.mul(a, b).to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    for i in 0..c.size() {
        let row: Vec<String> = (0..c.size())
            .map(|j| c.get(i, j).map_or("-".into(), |x| x.to_string()))
            .collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn read_gcm(text: &str) -> Result<Gcm> {
    let mut t = Tokens::new(text);
    let h = t.usizes(2)?;
    let (size, g) = (h[0], h[1]);
    let table = (0..g).map(|_| t.usizes(g)).collect::<Result<Vec<_>>>()?.concat();
    let group = FiniteGroup::from_cayley_table(g, table)?;
    let mut entries = Vec::with_capacity(size * size);
    for _ in 0..size {
        let row = t.line(size)?;
        for x in row {
            entries.push(if x == "-" { None } else { Some(t.parse::<usize>(x)?) });
        }
    }
    t.finish()?;
    Gcm::new(group, size, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::sylvester;
    use crate::latin::linked_mols_from_gf2n;
    use crate::linked::{bgw_generate, build_tilde_l};
    use crate::resolvable::aux_from_hadamard;
    use crate::schemes::assemble_scheme;
    use crate::GfContext;

    fn system() -> LinkedSystemII {
        let aux = aux_from_hadamard(&sylvester(4).unwrap()).unwrap();
        let fam = linked_mols_from_gf2n(&GfContext::with_order(4).unwrap()).unwrap();
        build_tilde_l(&aux, &fam).unwrap()
    }

    #[test]
    fn matrix_round_trip() {
        let a = IntMatrix::from_rows(&[vec![1, -1], vec![0, 12]]).unwrap();
        let s = write_matrix(&a);
        assert_eq!(s, "2 2\n1 -1\n0 12\n");
        assert_eq!(read_matrix(&s).unwrap(), a);
        assert!(read_matrix("2 2\n1 0\n").is_err());
        assert!(read_matrix("2 2\n1 0\n0 x\n").is_err());
        assert!(read_matrix("# comment\n\n1 1\n5\n").is_ok());

        let list = vec![a.clone(), a.transpose()];
        let s = write_matrices(&list);
        assert!(s.starts_with("2\n2 2\n"));
        assert_eq!(read_matrices(&s).unwrap(), list);
        assert_eq!(read_matrices("0\n").unwrap(), vec![]);
    }

    #[test]
    fn square_list_round_trip() {
        let sq = crate::latin::mols_from_gf(&GfContext::with_order(5).unwrap());
        let s = write_squares(&sq);
        assert!(s.starts_with("4 5\n"));
        assert_eq!(read_squares(&s).unwrap(), sq);
        assert_eq!(write_squares(&read_squares(&s).unwrap()), s);
        assert!(read_squares("1 2\n0 1\n0 1\n").is_err());
    }

    #[test]
    fn aux_family_system_round_trips() {
        let aux = aux_from_hadamard(&sylvester(4).unwrap()).unwrap();
        let s = write_aux(&aux);
        assert_eq!(write_aux(&read_aux(&s).unwrap()), s);

        let fam = linked_mols_from_gf2n(&GfContext::with_order(4).unwrap()).unwrap();
        let s = write_family(&fam);
        assert_eq!(read_family(&s).unwrap(), fam);
        assert_eq!(
            write_latin(&read_latin(&write_latin(fam.get(0, 1))).unwrap()),
            write_latin(fam.get(0, 1))
        );

        let sys = system();
        let s = write_linked_system(&sys);
        assert!(s.starts_with("3 16 4 4 6 2 2 3 1 3\n"));
        assert_eq!(read_linked_system(&s).unwrap(), sys);
    }

    #[test]
    fn scheme_and_gcm_round_trips() {
        let scheme = assemble_scheme(&system()).unwrap();
        let s = write_scheme(&scheme);
        let back = AssociationScheme::new(read_scheme(&s).unwrap()).unwrap();
        assert_eq!(write_scheme(&back), s);

        let c = bgw_generate(5).unwrap();
        let s = write_gcm(&c);
        assert_eq!(read_gcm(&s).unwrap(), c);
    }
}
