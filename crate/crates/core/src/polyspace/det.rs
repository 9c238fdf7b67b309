use std::sync::Arc;

use super::isolation::restriction_chain;
use super::roots::find_unique_root;
use super::PolyspaceError;
use crate::multilinear::{MonomialIndex, PolySpace};
use crate::rm::ErrorSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetFindRootsOutcome {
    pub errors: ErrorSet,
    /// Restrictions computed.
    pub restrictions: usize,
}

/// Deterministic common-zero search: fix `X_m` to each constant, keep the
/// branches whose restricted space still has positive codimension, and read
/// the point off once the codimension is 1.
pub fn det_find_roots(v: &PolySpace) -> Result<DetFindRootsOutcome, PolyspaceError> {
    let index = v.index();
    let (m, p) = (index.m(), index.p());
    let chain = restriction_chain(index, m)?;
    let mut out = Vec::new();
    let mut restrictions = 0;
    let mut suffix = Vec::new();
    descend(v, &chain, 0, &mut suffix, &mut out, &mut restrictions)?;
    if out.len() != v.codim() {
        return Err(PolyspaceError::Inconsistent {
            vars: m,
            codim: v.codim(),
            found: out.len(),
        });
    }
    for x in &out {
        if !v.vanishes_at(x)? {
            return Err(PolyspaceError::Inconsistent {
                vars: m,
                codim: v.codim(),
                found: out.len(),
            });
        }
    }
    Ok(DetFindRootsOutcome {
        errors: ErrorSet::new(m, p, out)?,
        restrictions,
    })
}

/// `suffix` holds the fixed trailing coordinates, outermost last.
fn descend(
    v: &PolySpace,
    chain: &[Arc<MonomialIndex>],
    depth: usize,
    suffix: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
    restrictions: &mut usize,
) -> Result<(), PolyspaceError> {
    let t = v.codim();
    let vars = v.index().m();
    if t == 0 {
        return Ok(());
    }
    if t == 1 {
        let mut x = find_unique_root(v).ok_or(PolyspaceError::Inconsistent {
            vars,
            codim: 1,
            found: 0,
        })?;
        x.extend(suffix.iter().rev());
        out.push(x);
        return Ok(());
    }
    if vars == 0 {
        return Err(PolyspaceError::Inconsistent {
            vars,
            codim: t,
            found: 1,
        });
    }
    let p = v.index().p();
    let mut branches = Vec::with_capacity(p as usize);
    for c in 0..p {
        branches.push(v.restrict_last_into(chain[depth].clone(), c)?);
        *restrictions += 1;
    }
    let total: usize = branches.iter().map(PolySpace::codim).sum();
    if total != t {
        return Err(PolyspaceError::Inconsistent {
            vars,
            codim: t,
            found: total,
        });
    }
    for (c, branch) in branches.iter().enumerate() {
        suffix.push(c as u64);
        descend(branch, chain, depth + 1, suffix, out, restrictions)?;
        suffix.pop();
    }
    Ok(())
}
