//! Combinatorics of the prism P³(m), the product of an interval and an m-gon.

use std::fmt;

use crate::error::Error;

/// A facet of the prism. Side indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Facet {
    Ceiling,
    Floor,
    Side(usize),
}

impl fmt::Display for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Facet::Ceiling => write!(f, "c"),
            Facet::Floor => write!(f, "f"),
            Facet::Side(i) => write!(f, "s{i}"),
        }
    }
}

/// Reduces a possibly out-of-range 1-based side index into `1..=m`.
#[inline]
pub fn cyclic(i: isize, m: usize) -> usize {
    (i - 1).rem_euclid(m as isize) as usize + 1
}

/// Facet incidence data for P³(m).
///
/// Facets are numbered `0` (ceiling), `1` (floor), `2..m+2` (sides 1..m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrismCombinatorics {
    m: usize,
    facets: Vec<Facet>,
    meets: Vec<Vec<bool>>,
    vertices: Vec<[usize; 3]>,
}

impl PrismCombinatorics {
    pub fn build(m: usize) -> Result<Self, Error> {
        if m < 3 {
            return Err(Error::Domain(format!("prism needs at least 3 sides, got m={m}")));
        }
        let mut facets = vec![Facet::Ceiling, Facet::Floor];
        facets.extend((1..=m).map(Facet::Side));
        let n = m + 2;
        let mut meets = vec![vec![false; n]; n];
        for (i, row) in meets.iter_mut().enumerate() {
            row[i] = true;
        }
        for i in 1..=m {
            let j = cyclic(i as isize + 1, m);
            let (a, b) = (Self::side_index(i), Self::side_index(j));
            meets[a][b] = true;
            meets[b][a] = true;
            for cap in [0, 1] {
                meets[cap][a] = true;
                meets[a][cap] = true;
            }
        }
        let mut vertices = Vec::with_capacity(2 * m);
        for cap in [0, 1] {
            for i in 1..=m {
                let j = cyclic(i as isize + 1, m);
                vertices.push([cap, Self::side_index(i), Self::side_index(j)]);
            }
        }
        Ok(PrismCombinatorics { m, facets, meets, vertices })
    }

    /// Facet index of side `i` (1-based).
    #[inline]
    pub fn side_index(i: usize) -> usize {
        i + 1
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// Whether two facets share at least one point.
    pub fn intersects(&self, a: usize, b: usize) -> bool {
        self.meets[a][b]
    }

    /// Vertices as triples of facet indices.
    pub fn vertices(&self) -> &[[usize; 3]] {
        &self.vertices
    }

    /// Pairs of distinct facets with empty intersection, `a < b`.
    pub fn missing_edges(&self) -> Vec<(usize, usize)> {
        let n = self.facet_count();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if !self.meets[a][b] {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Minimal sets of facets with empty common intersection (generators of the
    /// Stanley-Reisner ideal). Besides the missing edges this includes the three
    /// sides when m = 3, which pairwise meet but share no vertex.
    pub fn minimal_non_faces(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.missing_edges().into_iter().map(|(a, b)| vec![a, b]).collect();
        let n = self.facet_count();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let pairwise = self.meets[a][b] && self.meets[a][c] && self.meets[b][c];
                    let is_vertex = self.vertices.iter().any(|v| [a, b, c].iter().all(|x| v.contains(x)));
                    if pairwise && !is_vertex {
                        out.push(vec![a, b, c]);
                    }
                }
            }
        }
        out
    }

    /// Face counts of the dual boundary complex, computed from the incidence table.
    pub fn f_vector(&self) -> (usize, usize, usize) {
        let n = self.facet_count();
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| self.meets[a][b]).count();
        (n, edges, self.vertices.len())
    }

    /// Coefficients of (t-1)³ + f₀(t-1)² + f₁(t-1) + f₂, highest power first.
    pub fn h_vector(&self) -> (i64, i64, i64, i64) {
        let (f0, f1, f2) = self.f_vector();
        let (f0, f1, f2) = (f0 as i64, f1 as i64, f2 as i64);
        (1, f0 - 3, 3 - 2 * f0 + f1, -1 + f0 - f1 + f2)
    }
}
