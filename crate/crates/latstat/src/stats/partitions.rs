//! Set partitions of {1..r}, the index set of the moment-cumulant inversion.

use crate::error::{Error, Result};

/// Largest supported order; Bell(8) = 4140 partitions is plenty for the
/// cumulant diagnostics and keeps the recursion trivially cheap.
pub const MAX_ORDER: usize = 8;

/// All partitions of {1, .., r} into disjoint nonempty blocks, each
/// partition a list of sorted blocks ordered by smallest element.
pub fn set_partitions(r: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    if r < 1 || r > MAX_ORDER {
        return Err(Error::InvalidParameter(format!(
            "partition order must lie in 1..={MAX_ORDER}, got {r}"
        )));
    }
    // grow element by element: r joins an existing block or opens a new one
    let mut parts: Vec<Vec<Vec<usize>>> = vec![vec![vec![1]]];
    for element in 2..=r {
        let mut next = Vec::new();
        for p in &parts {
            for i in 0..p.len() {
                let mut q = p.clone();
                q[i].push(element);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![element]);
            next.push(q);
        }
        parts = next;
    }
    Ok(parts)
}
