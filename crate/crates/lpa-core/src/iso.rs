//! Exact isomorphism search for small multigraphs, used by the quotient
//! cross-check. Candidates are pruned by degree signatures and the search
//! backtracks over vertex assignments in name order, so the witness it
//! returns is deterministic.

use std::collections::BTreeMap;

use crate::graph::{Graph, Mult};

type Signature = (Vec<Mult>, Vec<Mult>, Option<Mult>);

fn signature(g: &Graph, v: usize) -> Signature {
    let mut out: Vec<Mult> = g.out_bundles(v).filter(|b| b.dst != v).map(|b| b.mult).collect();
    let mut inc: Vec<Mult> = g.in_bundles(v).filter(|b| b.src != v).map(|b| b.mult).collect();
    out.sort();
    inc.sort();
    let loop_mult = g.out_bundles(v).find(|b| b.dst == v).map(|b| b.mult);
    (out, inc, loop_mult)
}

/// Finds a multiplicity-preserving vertex bijection, if one exists, returned
/// as `(g1 vertex, g2 vertex)` pairs in `g1` name order.
pub fn find_isomorphism(g1: &Graph, g2: &Graph) -> Option<Vec<(String, String)>> {
    let n = g1.vertex_count();
    if n != g2.vertex_count() || g1.bundles().len() != g2.bundles().len() {
        return None;
    }
    if n == 0 {
        return Some(Vec::new());
    }
    let sig1: Vec<Signature> = (0..n).map(|v| signature(g1, v)).collect();
    let sig2: Vec<Signature> = (0..n).map(|v| signature(g2, v)).collect();
    {
        let mut m1 = sig1.clone();
        let mut m2 = sig2.clone();
        m1.sort();
        m2.sort();
        if m1 != m2 {
            return None;
        }
    }
    // adjacency with multiplicities for O(1) consistency checks
    let adj = |g: &Graph| -> BTreeMap<(usize, usize), Mult> {
        g.bundles().iter().map(|b| ((b.src, b.dst), b.mult)).collect()
    };
    let (a1, a2) = (adj(g1), adj(g2));
    let mut assign: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    fn backtrack(
        v: usize,
        n: usize,
        sig1: &[Signature],
        sig2: &[Signature],
        a1: &BTreeMap<(usize, usize), Mult>,
        a2: &BTreeMap<(usize, usize), Mult>,
        assign: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || sig1[v] != sig2[w] {
                continue;
            }
            let ok = a1.get(&(v, v)) == a2.get(&(w, w))
                && (0..v).all(|x| {
                    let y = assign[x].expect("assigned");
                    a1.get(&(v, x)) == a2.get(&(w, y)) && a1.get(&(x, v)) == a2.get(&(y, w))
                });
            if !ok {
                continue;
            }
            assign[v] = Some(w);
            used[w] = true;
            if backtrack(v + 1, n, sig1, sig2, a1, a2, assign, used) {
                return true;
            }
            assign[v] = None;
            used[w] = false;
        }
        false
    }
    if !backtrack(0, n, &sig1, &sig2, &a1, &a2, &mut assign, &mut used) {
        return None;
    }
    Some(
        assign
            .iter()
            .enumerate()
            .map(|(v, w)| (g1.name(v).to_string(), g2.name(w.expect("complete")).to_string()))
            .collect(),
    )
}
