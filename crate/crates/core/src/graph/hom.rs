use super::Graph;
use crate::error::{Error, Result};

/// Default refusal bound on `|V(g)|^|V(h)|`.
pub const DEFAULT_HOM_CAP: u128 = 100_000_000;

/// An adjacency-preserving map `V(h) -> V(g)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Homomorphism {
    map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(h: &Graph, g: &Graph, map: Vec<usize>) -> Result<Self> {
        if !is_homomorphism(h, g, &map) {
            return Err(Error::NotAHomomorphism(map));
        }
        Ok(Homomorphism { map })
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn into_map(self) -> Vec<usize> {
        self.map
    }
}

/// Checks totality, range and adjacency preservation.
pub fn is_homomorphism(h: &Graph, g: &Graph, map: &[usize]) -> bool {
    map.len() == h.n() && map.iter().all(|&x| x < g.n()) && h.edges().iter().all(|&(u, v)| g.has_edge(map[u], map[v]))
}

/// Backtracking search over `Hom(h, g)` in ascending vertex order of `h`,
/// which yields maps in lexicographic order.
#[derive(Debug, Clone, Copy)]
pub struct HomSearch {
    cap: u128,
}

impl Default for HomSearch {
    fn default() -> Self {
        HomSearch { cap: DEFAULT_HOM_CAP }
    }
}

impl HomSearch {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cap(cap: u128) -> Self {
        HomSearch { cap }
    }

    fn guard(&self, h: &Graph, g: &Graph) -> Result<()> {
        if h.n() == 0 {
            return Err(Error::EmptySource);
        }
        let bound = u32::try_from(h.n()).ok().and_then(|e| (g.n() as u128).checked_pow(e));
        match bound {
            Some(b) if b <= self.cap => Ok(()),
            _ => Err(Error::SizeCap {
                source_n: h.n(),
                target: g.n(),
                cap: self.cap,
            }),
        }
    }

    /// Visits every homomorphism; the visitor returns `false` to stop early.
    pub fn for_each(&self, h: &Graph, g: &Graph, mut visit: impl FnMut(&[usize]) -> bool) -> Result<()> {
        self.guard(h, g)?;
        // for each vertex, its neighbours that come earlier in the order
        let back: Vec<Vec<usize>> = (0..h.n())
            .map(|v| h.neighbors(v).iter().copied().filter(|&w| w < v).collect())
            .collect();
        let mut map = vec![0usize; h.n()];
        extend(0, &back, g, &mut map, &mut visit);
        Ok(())
    }

    pub fn enumerate(&self, h: &Graph, g: &Graph) -> Result<Vec<Homomorphism>> {
        let mut out = Vec::new();
        self.for_each(h, g, |m| {
            out.push(Homomorphism { map: m.to_vec() });
            true
        })?;
        Ok(out)
    }

    pub fn count(&self, h: &Graph, g: &Graph) -> Result<u128> {
        self.guard(h, g)?;
        let back: Vec<Vec<usize>> = (0..h.n())
            .map(|v| h.neighbors(v).iter().copied().filter(|&w| w < v).collect())
            .collect();
        let mut map = vec![0usize; h.n()];
        Ok(count_from(0, &back, g, &mut map))
    }
}

fn candidates<'a>(v: usize, back: &[Vec<usize>], g: &'a Graph, map: &[usize]) -> Box<dyn Iterator<Item = usize> + 'a> {
    match back[v].first() {
        Some(&w) => Box::new(g.neighbors(map[w]).to_vec().into_iter()),
        None => Box::new(0..g.n()),
    }
}

fn fits(v: usize, x: usize, back: &[Vec<usize>], g: &Graph, map: &[usize]) -> bool {
    back[v].iter().all(|&w| g.has_edge(map[w], x))
}

fn extend(
    v: usize,
    back: &[Vec<usize>],
    g: &Graph,
    map: &mut [usize],
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if v == map.len() {
        return visit(map);
    }
    for x in candidates(v, back, g, map) {
        if fits(v, x, back, g, map) {
            map[v] = x;
            if !extend(v + 1, back, g, map, visit) {
                return false;
            }
        }
    }
    true
}

fn count_from(v: usize, back: &[Vec<usize>], g: &Graph, map: &mut [usize]) -> u128 {
    if v == map.len() {
        return 1;
    }
    let mut total = 0;
    for x in candidates(v, back, g, map) {
        if fits(v, x, back, g, map) {
            map[v] = x;
            total += count_from(v + 1, back, g, map);
        }
    }
    total
}

/// All homomorphisms `h -> g` in lexicographic order, under the default cap.
pub fn enumerate_homs(h: &Graph, g: &Graph) -> Result<Vec<Homomorphism>> {
    HomSearch::new().enumerate(h, g)
}

/// `|Hom(h, g)|` under the default cap.
pub fn hom_count(h: &Graph, g: &Graph) -> Result<u128> {
    HomSearch::new().count(h, g)
}
