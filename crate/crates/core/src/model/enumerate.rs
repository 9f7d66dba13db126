//! Exhaustive search for small left or right adequate monoids.
//!
//! Tables are filled cell by cell with element 0 as the identity; a partial
//! table is abandoned as soon as a fully defined triple breaks associativity.
//! A completed table is kept only if it is the lexicographically least among
//! its relabellings by permutations fixing 0, which keeps one table per
//! isomorphism class.

use crate::error::OpError;
use crate::model::{Element, FiniteUnaryAlgebra};
use crate::ops::Sidedness;

/// Largest order [`enumerate_small_models`] accepts.
pub const MODEL_ORDER_BOUND: usize = 5;

const UNSET: Element = usize::MAX;

/// All left, right or two-sided adequate monoids of order `1..=max_order`, one per
/// isomorphism class, with the matching unary tables filled in.
pub fn enumerate_small_models(
    max_order: usize,
    sidedness: Sidedness,
) -> Result<Vec<FiniteUnaryAlgebra>, OpError> {
    if max_order > MODEL_ORDER_BOUND {
        return Err(OpError::BoundExceeded {
            size: max_order,
            bound: MODEL_ORDER_BOUND,
        });
    }
    let mut out = Vec::new();
    for n in 1..=max_order {
        let perms = permutations_fixing_zero(n);
        let mut table = vec![UNSET; n * n];
        for x in 0..n {
            table[x] = x;
            table[x * n] = x;
        }
        let cells: Vec<usize> = (1..n)
            .flat_map(|x| (1..n).map(move |y| x * n + y))
            .collect();
        fill(n, &mut table, &cells, 0, &mut |t| {
            if !is_least_relabelling(n, t, &perms) {
                return;
            }
            let rows = t.chunks(n).map(<[Element]>::to_vec).collect();
            let m = FiniteUnaryAlgebra::new(rows, Some(0), None, None).expect("well-shaped");
            let plus = m.derived_plus().ok();
            let star = m.derived_star().ok();
            let m = match (sidedness, plus, star) {
                (Sidedness::Left, Some(p), _) => m.with_plus(p),
                (Sidedness::Right, _, Some(s)) => m.with_star(s),
                (Sidedness::TwoSided, Some(p), Some(s)) => m.with_plus(p).with_star(s),
                _ => return,
            };
            out.push(m);
        });
    }
    Ok(out)
}

fn fill(
    n: usize,
    table: &mut [Element],
    cells: &[usize],
    depth: usize,
    emit: &mut impl FnMut(&[Element]),
) {
    let Some(&cell) = cells.get(depth) else {
        emit(table);
        return;
    };
    for value in 0..n {
        table[cell] = value;
        if consistent(n, table) {
            fill(n, table, cells, depth + 1, emit);
        }
    }
    table[cell] = UNSET;
}

fn consistent(n: usize, t: &[Element]) -> bool {
    for x in 0..n {
        for y in 0..n {
            let xy = t[x * n + y];
            if xy == UNSET {
                continue;
            }
            for z in 0..n {
                let yz = t[y * n + z];
                if yz == UNSET {
                    continue;
                }
                let (l, r) = (t[xy * n + z], t[x * n + yz]);
                if l != UNSET && r != UNSET && l != r {
                    return false;
                }
            }
        }
    }
    true
}

fn permutations_fixing_zero(n: usize) -> Vec<Vec<Element>> {
    let mut out = vec![vec![0]];
    for next in 1..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (1..=p.len()).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, next);
                    q
                })
            })
            .collect();
    }
    out
}

fn is_least_relabelling(n: usize, t: &[Element], perms: &[Vec<Element>]) -> bool {
    let mut inverse = vec![0; n];
    for p in perms {
        for (i, &v) in p.iter().enumerate() {
            inverse[v] = i;
        }
        // relabelled table: cell (x, y) holds p[t[inv x][inv y]]
        let relabelled = (0..n * n).map(|c| p[t[inverse[c / n] * n + inverse[c % n]]]);
        for (a, b) in relabelled.zip(t.iter().copied()) {
            if a != b {
                if a < b {
                    return false;
                }
                break;
            }
        }
    }
    true
}
