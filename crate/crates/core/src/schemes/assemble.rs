use num_bigint::BigInt;

use super::scheme::AssociationScheme;
use crate::error::{precondition, Result};
use crate::linked::LinkedSystemII;
use crate::IntMatrix;

/// Builds `A_0..A_5` on `f` fibers of size `mn`:
/// `A_1 = I_f⊗I_m⊗(J_n−I_n)`, `A_2 = I_f⊗(J_m−I_m)⊗J_n`, `A_3` with
/// off-diagonal blocks `A_{i,j}`, `A_5 = (J_f−I_f)⊗I_m⊗J_n` and
/// `A_4 = (J_f−I_f)⊗J_{mn} − A_3 − A_5`, then certifies the axioms.
pub fn assemble_scheme(sys: &LinkedSystemII) -> Result<AssociationScheme> {
    let base = sys.params().base;
    let (k, m, n) = (base.k, base.m, base.n);
    if !(base.lambda1 < k && k < (m - 1) * n) {
        return precondition(format!(
            "need lambda1 < k < (m-1)n for five non-empty classes, got k = {k}, lambda1 = {}, (m-1)n = {}",
            base.lambda1,
            (m - 1) * n
        ));
    }
    let f = sys.f();
    let (m, n) = (m as usize, n as usize);
    let v = m * n;
    let size = f * v;
    let fiber = |x: usize| x / v;
    let group = |x: usize| (x % v) / n;
    let cell = |c: bool| BigInt::from(c as u8);

    let a0 = IntMatrix::identity(size);
    let a1 = IntMatrix::from_fn(size, size, |x, y| {
        cell(x != y && fiber(x) == fiber(y) && group(x) == group(y))
    });
    let a2 = IntMatrix::from_fn(size, size, |x, y| cell(fiber(x) == fiber(y) && group(x) != group(y)));
    let a3 = IntMatrix::from_fn(size, size, |x, y| {
        let (a, b) = (fiber(x), fiber(y));
        if a == b {
            BigInt::from(0)
        } else {
            sys.block(a, b).matrix()[(x % v, y % v)].clone()
        }
    });
    let a5 = IntMatrix::from_fn(size, size, |x, y| cell(fiber(x) != fiber(y) && group(x) == group(y)));
    let cross = IntMatrix::from_fn(size, size, |x, y| cell(fiber(x) != fiber(y)));
    let a4 = &(&cross - &a3) - &a5;
    AssociationScheme::new(vec![a0, a1, a2, a3, a4, a5])
}
