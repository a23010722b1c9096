use super::certify::{certify, direct_list, first_unresolved, Prior};
use super::{laplacian, Graph, GraphError, GraphHalt, GraphOptions};
use crate::enclosure::EnclosureList;

/// Enclosures for `A = A₀, A₁, …, A_n`, where `Aᵢ` is the Laplacian of `g`
/// without the edges `e₁ … eᵢ` (given by endpoints).
///
/// Removing one edge is a rank-one decrease, so
/// `λⱼ(Aᵢ₊₁) ≤ λⱼ(Aᵢ) ≤ λⱼ₊₁(Aᵢ₊₁)`. The list for `A` comes from a direct
/// verified eigensolve; each later list takes its lower bounds from the
/// interlacing and is tightened by Rayleigh–Ritz and Temple–Lehmann.
/// Every list has `opts.count` entries.
pub fn edge_chain_enclose(
    g: &Graph,
    removed_edges: &[(usize, usize)],
    opts: &GraphOptions,
) -> Result<Vec<EnclosureList>, GraphError> {
    let n = g.len();
    if n == 0 {
        return Err(GraphError::InvalidGraph("graph has no vertices".into()));
    }
    let count = opts.count.unwrap_or(n).min(n);
    // One spare entry per step absorbs the loss of accuracy at the top.
    let keep = (count + removed_edges.len() + 1).min(n);
    let mut current = g.clone();
    let mut lists = vec![head(direct_list(&laplacian(g))?, keep)];
    for (step, &(a, b)) in removed_edges.iter().enumerate() {
        current = current.without_edges(&[(a, b)])?;
        let prev = lists.last().expect("nonempty");
        let k = prev.len();
        // With the whole spectrum carried there is no eigenvalue above the
        // last one to shift against.
        let lower = (0..=k)
            .map(|j| match j {
                0 => 0.0,
                j if j == n => f64::INFINITY,
                j => prev.lower(j - 1),
            })
            .collect();
        let upper = (0..k).map(|j| prev.upper(j)).collect();
        let entries = certify(&laplacian(&current), &Prior { lower, upper }, opts.tolerance)?;
        let next = prev.lower(k - 1).max(entries[k - 1].lo());
        let list = EnclosureList::new(entries, next, next);
        if let Some(index) = first_unresolved(&list.entries, count, f64::INFINITY, opts.tolerance) {
            let bounds = list.entries[index];
            lists.push(list);
            return Err(GraphError::Halted(Box::new(GraphHalt {
                step: step + 1,
                index,
                bounds,
                partial: lists.iter().map(|l| head(l.clone(), count)).collect(),
            })));
        }
        lists.push(list);
    }
    Ok(lists.into_iter().map(|l| head(l, count)).collect())
}

fn head(l: EnclosureList, k: usize) -> EnclosureList {
    if l.len() <= k {
        return l;
    }
    let next = l.entries[k].lo();
    EnclosureList::new(l.entries[..k].to_vec(), next, next)
}
