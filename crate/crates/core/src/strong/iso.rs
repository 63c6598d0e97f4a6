use super::StrongDecomposition;
use crate::error::{Error, Result};
use crate::graph::{for_each_isomorphism, is_isomorphism, VertexSet};
use serde::{Deserialize, Serialize};

/// A vertex bijection between hosts together with the bag bijection it
/// carries at the top level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongIsomorphism {
    pub vertex_map: Vec<usize>,
    pub bag_map: Vec<usize>,
}

/// An isomorphism `sd1 -> sd2` extending the partial vertex map `pin`, if one
/// exists.
///
/// At level 0 this is an isomorphism of the host trees. At higher levels it is
/// a host isomorphism `φ` together with a decomposition-tree isomorphism `ψ`
/// sending each bag `X` onto `ψ(X) = φ(X)`, such that the child of `X` is
/// isomorphic to the child of `ψ(X)` by the restriction of `φ`.
pub fn strong_isomorphism(
    sd1: &StrongDecomposition,
    sd2: &StrongDecomposition,
    pin: &[(usize, usize)],
) -> Result<Option<StrongIsomorphism>> {
    if sd1.level() != sd2.level() {
        return Err(Error::LevelMismatch(sd1.level(), sd2.level()));
    }
    let found = if sd1.level() == 0 {
        base_isomorphism(sd1, sd2, pin)?
    } else {
        composite_isomorphism(sd1, sd2, pin)?
    };
    if let Some(iso) = &found {
        assert!(
            is_isomorphism(sd1.host(), sd2.host(), &iso.vertex_map),
            "strong isomorphism search produced a non-isomorphism"
        );
    }
    Ok(found)
}

fn bag_image(bags1: &[VertexSet], bags2: &[VertexSet], phi: &[usize]) -> Option<Vec<usize>> {
    bags1
        .iter()
        .map(|bag| {
            let image = bag.map(phi);
            bags2.iter().position(|b| *b == image)
        })
        .collect()
}

fn base_isomorphism(
    sd1: &StrongDecomposition,
    sd2: &StrongDecomposition,
    pin: &[(usize, usize)],
) -> Result<Option<StrongIsomorphism>> {
    let (b1, b2) = (sd1.markov().bags(), sd2.markov().bags());
    let mut found = None;
    for_each_isomorphism(
        sd1.host(),
        sd2.host(),
        pin,
        |_, _| true,
        |phi| {
            if let Some(bag_map) = bag_image(b1, b2, phi) {
                found = Some(StrongIsomorphism {
                    vertex_map: phi.to_vec(),
                    bag_map,
                });
                return false;
            }
            true
        },
    )?;
    Ok(found)
}

/// For each vertex, the sorted list of bags containing it.
fn signatures(sd: &StrongDecomposition) -> Vec<Vec<usize>> {
    let mut sig = vec![Vec::new(); sd.host().n()];
    for (i, bag) in sd.markov().bags().iter().enumerate() {
        for v in bag.iter() {
            if let Some(s) = sig.get_mut(v) {
                s.push(i);
            }
        }
    }
    sig
}

fn composite_isomorphism(
    sd1: &StrongDecomposition,
    sd2: &StrongDecomposition,
    pin: &[(usize, usize)],
) -> Result<Option<StrongIsomorphism>> {
    let (m1, m2) = (sd1.markov(), sd2.markov());
    let (c1, c2) = (sd1.children(), sd2.children());
    if m1.bag_count() != m2.bag_count() || c1.len() != m1.bag_count() || c2.len() != m2.bag_count() {
        return Ok(None);
    }
    let (t1, t2) = match (m1.tree_graph(), m2.tree_graph()) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return Ok(None),
    };
    let (sig1, sig2) = (signatures(sd1), signatures(sd2));
    // surfaces pin errors before any search
    for_each_isomorphism(sd1.host(), sd2.host(), pin, |_, _| true, |_| false)?;

    let mut found = None;
    let mut failure = None;
    for_each_isomorphism(
        &t1,
        &t2,
        &[],
        |x, y| m1.bag(x).len() == m2.bag(y).len(),
        |psi| {
            let image: Vec<Vec<usize>> = sig1
                .iter()
                .map(|s| {
                    let mut t: Vec<usize> = s.iter().map(|&b| psi[b]).collect();
                    t.sort_unstable();
                    t
                })
                .collect();
            let search = for_each_isomorphism(
                sd1.host(),
                sd2.host(),
                pin,
                |v, w| image[v] == sig2[w],
                |phi| match children_match(sd1, sd2, psi, phi) {
                    Ok(true) => {
                        found = Some(StrongIsomorphism {
                            vertex_map: phi.to_vec(),
                            bag_map: psi.to_vec(),
                        });
                        false
                    }
                    Ok(false) => true,
                    Err(e) => {
                        failure = Some(e);
                        false
                    }
                },
            );
            if let Err(e) = search {
                failure = Some(e);
            }
            found.is_none() && failure.is_none()
        },
    )?;
    match failure {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

fn children_match(sd1: &StrongDecomposition, sd2: &StrongDecomposition, psi: &[usize], phi: &[usize]) -> Result<bool> {
    let (m1, m2) = (sd1.markov(), sd2.markov());
    for (x, child) in sd1.children().iter().enumerate() {
        let y = psi[x];
        let (bx, by) = (m1.bag(x), m2.bag(y));
        if child.host().n() != bx.len() || sd2.children()[y].host().n() != by.len() {
            return Ok(false);
        }
        let mut local_pin = Vec::with_capacity(bx.len());
        for (i, v) in bx.iter().enumerate() {
            match by.position(phi[v]) {
                Some(j) => local_pin.push((i, j)),
                None => return Ok(false),
            }
        }
        if child.level() != sd2.children()[y].level() {
            return Ok(false);
        }
        if strong_isomorphism(child, &sd2.children()[y], &local_pin)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}
