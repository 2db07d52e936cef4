//! Effective epimorphisms of groupoids, detected on components.

use serde::Serialize;

use crate::category::Functor;
use crate::groupoid::{pi0, FiniteGroupoid};

/// Outcome of [`is_effective_epi`]. `block_map[b]` is the component of the
/// codomain hit by component `b` of the domain; `unhit` lists the codomain
/// components missed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EffectiveEpiVerdict {
    pub effective: bool,
    pub block_map: Vec<usize>,
    pub unhit: Vec<usize>,
}

/// A functor of groupoids is an effective epimorphism when it is surjective
/// on connected components.
pub fn is_effective_epi(x: &FiniteGroupoid, y: &FiniteGroupoid, f: &Functor) -> EffectiveEpiVerdict {
    let (px, py) = (pi0(x), pi0(y));
    let block_map: Vec<usize> = px.blocks.iter().map(|b| py.block(f.obj(b[0]))).collect();
    let mut hit = vec![false; py.count()];
    for &b in &block_map {
        hit[b] = true;
    }
    let unhit: Vec<usize> = (0..py.count()).filter(|&b| !hit[b]).collect();
    EffectiveEpiVerdict {
        effective: unhit.is_empty(),
        block_map,
        unhit,
    }
}
