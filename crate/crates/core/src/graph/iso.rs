use super::Graph;
use crate::error::{Error, Result};

/// True iff `map` is a bijection `V(a) -> V(b)` preserving adjacency and
/// non-adjacency.
pub fn is_isomorphism(a: &Graph, b: &Graph, map: &[usize]) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() || map.len() != a.n() {
        return false;
    }
    let mut hit = vec![false; b.n()];
    for &x in map {
        if x >= b.n() || std::mem::replace(&mut hit[x], true) {
            return false;
        }
    }
    let mut inverse = vec![0; b.n()];
    for (v, &x) in map.iter().enumerate() {
        inverse[x] = v;
    }
    a.edges().iter().all(|&(u, v)| b.has_edge(map[u], map[v]))
        && b.edges().iter().all(|&(x, y)| a.has_edge(inverse[x], inverse[y]))
}

fn check_pin(a: &Graph, b: &Graph, pin: &[(usize, usize)]) -> Result<Vec<Option<usize>>> {
    let mut fixed = vec![None; a.n()];
    let mut used = vec![false; b.n()];
    for &(u, x) in pin {
        if u >= a.n() || x >= b.n() {
            return Err(Error::BadPin(format!("({u} -> {x}) out of range")));
        }
        if fixed[u].is_some() || used[x] {
            return Err(Error::BadPin(format!("({u} -> {x}) breaks injectivity")));
        }
        fixed[u] = Some(x);
        used[x] = true;
    }
    Ok(fixed)
}

/// Visits every isomorphism `a -> b` that extends `pin` and maps each `v` to
/// some `x` with `compatible(v, x)`, in lexicographic order. The visitor
/// returns `false` to stop the search.
pub fn for_each_isomorphism(
    a: &Graph,
    b: &Graph,
    pin: &[(usize, usize)],
    compatible: impl Fn(usize, usize) -> bool,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Result<()> {
    let fixed = check_pin(a, b, pin)?;
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(());
    }
    let mut da: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return Ok(());
    }
    let mut state = Search {
        a,
        b,
        fixed: &fixed,
        compatible: &compatible,
        map: vec![usize::MAX; a.n()],
        used: vec![false; b.n()],
    };
    state.extend(0, &mut visit);
    Ok(())
}

struct Search<'g, C> {
    a: &'g Graph,
    b: &'g Graph,
    fixed: &'g [Option<usize>],
    compatible: &'g C,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl<C: Fn(usize, usize) -> bool> Search<'_, C> {
    fn feasible(&self, v: usize, x: usize) -> bool {
        if self.used[x] || self.a.degree(v) != self.b.degree(x) || !(self.compatible)(v, x) {
            return false;
        }
        (0..v).all(|u| self.a.has_edge(u, v) == self.b.has_edge(self.map[u], x))
    }

    fn extend(&mut self, v: usize, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if v == self.a.n() {
            debug_assert!(is_isomorphism(self.a, self.b, &self.map));
            return visit(&self.map);
        }
        let range = match self.fixed[v] {
            Some(x) => x..x + 1,
            None => 0..self.b.n(),
        };
        for x in range {
            if self.fixed[v].is_none() && self.fixed.contains(&Some(x)) {
                continue;
            }
            if !self.feasible(v, x) {
                continue;
            }
            self.map[v] = x;
            self.used[x] = true;
            let go_on = self.extend(v + 1, visit);
            self.used[x] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// First isomorphism `a -> b` extending `pin` in lexicographic backtracking
/// order, or `None`. The result is re-verified before it is returned.
pub fn find_isomorphism_pinned(a: &Graph, b: &Graph, pin: &[(usize, usize)]) -> Result<Option<Vec<usize>>> {
    let mut found = None;
    for_each_isomorphism(
        a,
        b,
        pin,
        |_, _| true,
        |m| {
            found = Some(m.to_vec());
            false
        },
    )?;
    if let Some(m) = &found {
        assert!(is_isomorphism(a, b, m), "search produced a non-isomorphism");
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths_pinned_at_endpoints() {
        // 0-1-2 against a relabelled copy where 3 is the middle: 2-3-0 on {0,2,3}
        let a = Graph::path(3);
        let b = Graph::new(3, [(0, 2), (1, 2)]).unwrap(); // local order of {0,2,3}
        let m = find_isomorphism_pinned(&a, &b, &[(0, 0), (2, 1)]).unwrap().unwrap();
        assert_eq!(m, vec![0, 2, 1]);
    }

    #[test]
    fn different_orders_have_no_isomorphism() {
        assert_eq!(
            find_isomorphism_pinned(&Graph::complete(3), &Graph::cycle(4), &[]).unwrap(),
            None
        );
    }

    #[test]
    fn identity_pin() {
        let g = Graph::cycle(5);
        let pin: Vec<_> = (0..5).map(|v| (v, v)).collect();
        assert_eq!(
            find_isomorphism_pinned(&g, &g, &pin).unwrap(),
            Some(vec![0, 1, 2, 3, 4])
        );
    }

    #[test]
    fn pin_can_rule_out_isomorphism() {
        // a leaf cannot be sent to the centre of a path
        assert_eq!(
            find_isomorphism_pinned(&Graph::path(3), &Graph::path(3), &[(0, 1)]).unwrap(),
            None
        );
    }

    #[test]
    fn bad_pin_is_rejected() {
        let g = Graph::path(3);
        assert!(matches!(
            find_isomorphism_pinned(&g, &g, &[(0, 0), (1, 0)]),
            Err(Error::BadPin(_))
        ));
        assert!(matches!(
            find_isomorphism_pinned(&g, &g, &[(5, 0)]),
            Err(Error::BadPin(_))
        ));
    }

    #[test]
    fn counts_automorphisms() {
        let mut count = 0;
        for_each_isomorphism(
            &Graph::cycle(4),
            &Graph::cycle(4),
            &[],
            |_, _| true,
            |_| {
                count += 1;
                true
            },
        )
        .unwrap();
        assert_eq!(count, 8);
        let mut star = 0;
        for_each_isomorphism(
            &Graph::star(3),
            &Graph::star(3),
            &[],
            |_, _| true,
            |_| {
                star += 1;
                true
            },
        )
        .unwrap();
        assert_eq!(star, 6);
    }

    #[test]
    fn agrees_with_permutation_brute_force() {
        let graphs = [
            Graph::path(4),
            Graph::star(3),
            Graph::cycle(4),
            Graph::new(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap(),
        ];
        let perms = permutations(4);
        for a in &graphs {
            for b in &graphs {
                let brute = perms.iter().any(|p| is_isomorphism(a, b, p));
                assert_eq!(
                    find_isomorphism_pinned(a, b, &[]).unwrap().is_some(),
                    brute,
                    "{a} vs {b}"
                );
            }
        }
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
}
