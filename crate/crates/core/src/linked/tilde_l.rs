use std::collections::BTreeMap;

use super::params::{LinkedParams, Triple};
use super::system::{verify_linked_system, LinkedSystemII};
use crate::designs::{GddParams, IncidenceMatrix};
use crate::error::{precondition, Result};
use crate::latin::{LatinSquare, LinkedMolsFamily};
use crate::resolvable::AuxiliarySet;
use crate::IntMatrix;

/// `L̃ = (C_{l(a,b)})_{a,b}` with `C_0 = O`: a symmetric
/// 2-`((r+1)v, kr, kλ)` design with `r+1` groups of size `v`.
pub fn tilde_l_block(aux: &AuxiliarySet, square: &LatinSquare) -> Result<IncidenceMatrix> {
    let p = aux.params();
    let size = p.r as usize + 1;
    if square.order() != size {
        return precondition(format!(
            "latin square of order {} does not match r+1 = {size}",
            square.order()
        ));
    }
    let cs: Vec<IntMatrix> = (0..size).map(|i| aux.get(i)).collect();
    let blocks: Vec<IntMatrix> = (0..size * size)
        .map(|x| cs[square.get(x / size, x % size)].clone())
        .collect();
    IncidenceMatrix::new(IntMatrix::from_blocks(size, &blocks)?, size, p.v as usize)
}

/// `A_{i,j} = L̃_{i,j}`. The result is certified before it is returned, with
/// parameters `((r+1)v, kr, r+1, v, kλ, kλ)` and
/// `(σ, τ, ρ) = (k + (r−2)μ, (r−2)μ, rμ)`.
pub fn build_tilde_l(aux: &AuxiliarySet, fam: &LinkedMolsFamily) -> Result<LinkedSystemII> {
    let p = aux.params();
    if fam.order() as u64 != p.r + 1 {
        return precondition(format!(
            "family has {} symbols, auxiliary set needs r+1 = {}",
            fam.order(),
            p.r + 1
        ));
    }
    if !fam.has_zero_diagonals() {
        return precondition("every square of the family must have an all-zero diagonal");
    }
    if p.r < 2 {
        return precondition("tilde-L systems need r >= 2");
    }
    let base = GddParams::new((p.r + 1) * p.v, p.k * p.r, p.r + 1, p.v, p.k * p.lambda, p.k * p.lambda)?;
    let triple = Triple {
        sigma: p.k + (p.r - 2) * p.mu,
        tau: (p.r - 2) * p.mu,
        rho: p.r * p.mu,
    };
    let params = LinkedParams::new(base, fam.f(), Some(triple))?;
    let blocks = fam
        .squares()
        .iter()
        .map(|(&key, sq)| Ok((key, tilde_l_block(aux, sq)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let sys = LinkedSystemII::new(params, blocks)?;
    verify_linked_system(&sys).into_result()?;
    Ok(sys)
}
