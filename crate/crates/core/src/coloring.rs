//! Z₂³-colorings of P³(m): validity, enumeration, DJ orbits and the
//! combinatorial predicates used by the classification.
//!
//! Colors are nonzero 3-bit integers with e₁ ↦ 1, e₂ ↦ 2, e₃ ↦ 4; addition is XOR.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::gl3::{self, Gl3};
use crate::prism::cyclic;

/// A nonzero element of Z₂³ encoded in `1..=7`.
pub type Color = u8;

pub const E1: Color = 1;
pub const E2: Color = 2;
pub const E3: Color = 4;

/// Whether `{a, b, x}` is a basis of Z₂³.
#[inline]
pub fn independent(a: Color, b: Color, x: Color) -> bool {
    a != 0 && b != 0 && a != b && x != 0 && x != a && x != b && x != a ^ b
}

/// Dimension of the span of a set of colors.
pub fn span_dim(colors: impl IntoIterator<Item = Color>) -> usize {
    let mut span: u8 = 1; // bitmask over the 8 elements, starting with {0}
    for x in colors {
        let mut next = span;
        for y in 0..8u8 {
            if span >> y & 1 == 1 {
                next |= 1 << (y ^ x);
            }
        }
        span = next;
    }
    span.count_ones().trailing_zeros() as usize
}

/// `u(x)` for the functional `u` encoded as a 3-bit mask.
#[inline]
pub fn pair(u: u8, x: Color) -> bool {
    (u & x).count_ones() % 2 == 1
}

/// A characteristic function on P³(m).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Coloring {
    pub ceiling: Color,
    pub floor: Color,
    pub sides: Vec<Color>,
}

impl PartialOrd for Coloring {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coloring {
    /// Lexicographic order of the digit string (ceiling, floor, sides...).
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ceiling, self.floor, &self.sides).cmp(&(other.ceiling, other.floor, &other.sides))
    }
}

impl Coloring {
    pub fn new(ceiling: Color, floor: Color, sides: Vec<Color>) -> Self {
        Coloring { ceiling, floor, sides }
    }

    /// Builds a coloring and rejects it if invalid.
    pub fn checked(ceiling: Color, floor: Color, sides: Vec<Color>) -> Result<Self, Error> {
        let c = Coloring::new(ceiling, floor, sides);
        c.validate()?;
        Ok(c)
    }

    pub fn m(&self) -> usize {
        self.sides.len()
    }

    /// Color of side `i`, 1-based, cyclic.
    #[inline]
    pub fn side(&self, i: isize) -> Color {
        self.sides[cyclic(i, self.m()) - 1]
    }

    /// All facet colors in facet-index order: ceiling, floor, sides.
    pub fn facet_colors(&self) -> Vec<Color> {
        let mut v = Vec::with_capacity(self.m() + 2);
        v.push(self.ceiling);
        v.push(self.floor);
        v.extend_from_slice(&self.sides);
        v
    }

    /// Reports the first vertex whose three colors are dependent.
    pub fn validate(&self) -> Result<(), Error> {
        let m = self.m();
        if m < 3 {
            return Err(Error::Domain(format!("prism needs at least 3 sides, got m={m}")));
        }
        for (name, x) in
            [("c", self.ceiling), ("f", self.floor)].into_iter().chain(self.sides.iter().map(|&x| ("s", x)))
        {
            if x == 0 || x > 7 {
                return Err(Error::InvalidColoring(format!("color {x} on facet {name} is not in 1..7")));
            }
        }
        for i in 1..=m {
            let j = cyclic(i as isize + 1, m);
            let (a, b) = (self.sides[i - 1], self.sides[j - 1]);
            for (cap, x) in [("c", self.ceiling), ("f", self.floor)] {
                if !independent(a, b, x) {
                    return Err(Error::InvalidColoring(format!(
                        "vertex ({cap}, s{i}, s{j}) has dependent colors ({x}, {a}, {b})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.ceiling == self.floor
    }

    /// λ₀ = λ(c) + λ(f).
    pub fn lambda0(&self) -> Color {
        self.ceiling ^ self.floor
    }

    pub fn side_span_dim(&self) -> usize {
        span_dim(self.sides.iter().copied())
    }

    pub fn is_2_independent(&self) -> bool {
        self.side_span_dim() == 2
    }

    /// All three cosets of ⟨λ(c)⟩ occur among the side colors.
    pub fn has_property_star(&self) -> Result<bool, Error> {
        if !self.is_trivial() {
            return Err(Error::Precondition("property (*) is defined for trivial colorings only".into()));
        }
        let c = self.ceiling;
        let mut cosets = self.sides.iter().map(|&x| x.min(x ^ c)).collect::<Vec<_>>();
        cosets.sort_unstable();
        cosets.dedup();
        Ok(cosets.len() == 3)
    }

    /// Applies a linear map to every color.
    pub fn transform(&self, g: &Gl3) -> Coloring {
        Coloring {
            ceiling: g.apply(self.ceiling),
            floor: g.apply(self.floor),
            sides: self.sides.iter().map(|&x| g.apply(x)).collect(),
        }
    }

    /// Relabels sides so that old side `k+1` becomes side 1.
    pub fn rotate(&self, k: usize) -> Coloring {
        let m = self.m();
        let mut sides = self.sides.clone();
        sides.rotate_left(k % m);
        Coloring { ceiling: self.ceiling, floor: self.floor, sides }
    }

    /// Reverses the cyclic order of sides, keeping side 1 in place.
    pub fn reflect(&self) -> Coloring {
        let m = self.m();
        let sides = (0..m).map(|i| self.sides[(m - i) % m]).collect();
        Coloring { ceiling: self.ceiling, floor: self.floor, sides }
    }

    /// Lexicographically smallest image under GL(3, Z₂).
    pub fn dj_orbit_representative(&self) -> Coloring {
        self.dj_representative_with_map().0
    }

    /// The representative together with the map producing it.
    pub fn dj_representative_with_map(&self) -> (Coloring, Gl3) {
        let mut best = (self.clone(), Gl3::IDENTITY);
        for g in gl3::all() {
            let t = self.transform(g);
            if t < best.0 {
                best = (t, *g);
            }
        }
        best
    }

    /// The nonzero-functional criterion: some `u` takes value 1 on every facet color.
    pub fn is_orientable(&self) -> bool {
        let colors = self.facet_colors();
        (1..8u8).any(|u| colors.iter().all(|&x| pair(u, x)))
    }

    /// The literal criterion: some σ in GL(3, Z₂) makes every transformed color
    /// have an odd number of nonzero coordinates.
    pub fn is_orientable_by_gl_search(&self) -> bool {
        let colors = self.facet_colors();
        gl3::all().iter().any(|g| colors.iter().all(|&x| g.apply(x).count_ones() % 2 == 1))
    }

    pub fn nontrivial_stats(&self) -> Result<NontrivialStats, Error> {
        if self.is_trivial() {
            return Err(Error::Precondition("nontrivial statistics need λ(c) ≠ λ(f)".into()));
        }
        let m = self.m();
        let lambda0 = self.lambda0();
        let n_indices: Vec<usize> = (1..=m).filter(|&i| self.sides[i - 1] == lambda0).collect();
        let m_indices: Vec<usize> = (1..=m)
            .filter(|&i| {
                let i = i as isize;
                independent(self.side(i - 1), self.side(i), self.side(i + 1))
            })
            .collect();
        let stats = NontrivialStats { lambda0, n: n_indices.len(), mm: m_indices.len(), n_indices, m_indices };
        if m > 3 {
            stats.check_bounds(m)?;
        }
        Ok(stats)
    }

    /// Digit string in facet order, used for lexicographic comparison.
    pub fn digits(&self) -> Vec<u8> {
        self.facet_colors()
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={};c={};f={};s=", self.m(), self.ceiling, self.floor)?;
        for (i, x) in self.sides.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for Coloring {
    type Err = Error;

    /// Parses `m=<int>;c=<digit>;f=<digit>;s=<d>,<d>,...` and validates the result.
    fn from_str(s: &str) -> Result<Self, Error> {
        let parts: Vec<&str> = s.trim().split(';').collect();
        let [pm, pc, pf, ps] = parts.as_slice() else {
            return Err(Error::Parse(format!("expected 4 ';'-separated fields in {s:?}")));
        };
        let field = |part: &str, key: &str| -> Result<String, Error> {
            part.strip_prefix(key)
                .and_then(|r| r.strip_prefix('='))
                .map(str::to_string)
                .ok_or_else(|| Error::Parse(format!("expected field '{key}=' but found {part:?}")))
        };
        let digit = |t: &str| -> Result<Color, Error> {
            match t.as_bytes() {
                [d @ b'1'..=b'7'] => Ok(d - b'0'),
                _ => Err(Error::Parse(format!("color {t:?} is not a digit in 1..7"))),
            }
        };
        let m: usize = field(pm, "m")?.parse().map_err(|_| Error::Parse(format!("bad side count in {pm:?}")))?;
        let ceiling = digit(&field(pc, "c")?)?;
        let floor = digit(&field(pf, "f")?)?;
        let sides = field(ps, "s")?.split(',').map(digit).collect::<Result<Vec<_>, _>>()?;
        if sides.len() != m {
            return Err(Error::Parse(format!("m={m} but {} side colors given", sides.len())));
        }
        Coloring::checked(ceiling, floor, sides)
    }
}

/// λ₀, N_λ and M_λ of a nontrivial coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NontrivialStats {
    pub lambda0: Color,
    pub n: usize,
    pub mm: usize,
    pub n_indices: Vec<usize>,
    pub m_indices: Vec<usize>,
}

impl NontrivialStats {
    fn check_bounds(&self, m: usize) -> Result<(), Error> {
        let subset = self.m_indices.iter().all(|i| self.n_indices.contains(i));
        let ok = subset
            && self.mm.is_multiple_of(2)
            && self.mm <= self.n
            && 2 * self.n <= m
            && (m.is_multiple_of(2) || self.n > 0);
        if ok {
            Ok(())
        } else {
            Err(Error::Integrity(format!("bounds violated for (n, mm) = ({}, {}) at m={m}", self.n, self.mm)))
        }
    }
}

fn side_ok(c: Color, f: Color, prev: Color, x: Color) -> bool {
    independent(prev, x, c) && independent(prev, x, f)
}

/// Backtracking enumerator over valid colorings, in lexicographic digit order.
pub struct Enumerator {
    m: usize,
    frames: Vec<(Color, Color)>,
    frame: usize,
    vals: Vec<Color>,
    depth: usize,
}

impl Enumerator {
    fn with_frames(m: usize, frames: Vec<(Color, Color)>) -> Self {
        Enumerator { m, frames, frame: 0, vals: vec![0; m], depth: 0 }
    }

    fn admissible(&self, d: usize, x: Color) -> bool {
        let (c, f) = self.frames[self.frame];
        if x == c || x == f {
            return false;
        }
        if d > 0 && !side_ok(c, f, self.vals[d - 1], x) {
            return false;
        }
        if d + 1 == self.m && !side_ok(c, f, x, self.vals[0]) {
            return false;
        }
        true
    }
}

impl Iterator for Enumerator {
    type Item = Coloring;

    fn next(&mut self) -> Option<Coloring> {
        while self.frame < self.frames.len() {
            let d = self.depth;
            let start = self.vals[d] + 1;
            match (start..8).find(|&x| self.admissible(d, x)) {
                Some(x) => {
                    self.vals[d] = x;
                    if d + 1 == self.m {
                        let (c, f) = self.frames[self.frame];
                        return Some(Coloring::new(c, f, self.vals.clone()));
                    }
                    self.depth += 1;
                    self.vals[self.depth] = 0;
                }
                None => {
                    self.vals[d] = 0;
                    if d == 0 {
                        self.frame += 1;
                    } else {
                        self.depth -= 1;
                    }
                }
            }
        }
        None
    }
}

/// Every valid coloring of P³(m), each once, in lexicographic digit order.
pub fn enumerate(m: usize) -> Result<Enumerator, Error> {
    if m < 3 {
        return Err(Error::Domain(format!("prism needs at least 3 sides, got m={m}")));
    }
    let frames = (1..8).flat_map(|c| (1..8).map(move |f| (c, f))).collect();
    Ok(Enumerator::with_frames(m, frames))
}

/// Valid colorings with the given ceiling and floor colors.
pub fn enumerate_with_caps(m: usize, ceiling: Color, floor: Color) -> Result<Enumerator, Error> {
    if m < 3 {
        return Err(Error::Domain(format!("prism needs at least 3 sides, got m={m}")));
    }
    Ok(Enumerator::with_frames(m, vec![(ceiling, floor)]))
}

/// Whether `sides` is lexicographically minimal under the given maps.
fn sides_minimal_under(sides: &[Color], maps: &[Gl3]) -> bool {
    maps.iter().all(|g| {
        for &x in sides {
            match g.apply(x).cmp(&x) {
                Ordering::Less => return false,
                Ordering::Greater => return true,
                Ordering::Equal => {}
            }
        }
        true
    })
}

/// One lexicographically minimal representative of every DJ class, in order.
///
/// Representatives have ceiling e₁ and floor e₁ or e₂; minimality among the
/// remaining freedom is checked against the stabilizer of (ceiling, floor).
pub fn dj_representatives(m: usize) -> Result<Vec<Coloring>, Error> {
    let mut out = Vec::new();
    for (c, f) in [(E1, E1), (E1, E2)] {
        let stab = gl3::stabilizer(&[c, f]);
        out.extend(enumerate_with_caps(m, c, f)?.filter(|col| sides_minimal_under(&col.sides, &stab)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(m: usize) -> Vec<Coloring> {
        let n = m + 2;
        let total = 7usize.pow(n as u32);
        let mut out = Vec::new();
        for mut code in 0..total {
            let mut digits = vec![0u8; n];
            for d in digits.iter_mut().rev() {
                *d = (code % 7) as u8 + 1;
                code /= 7;
            }
            let c = Coloring::new(digits[0], digits[1], digits[2..].to_vec());
            if c.is_valid() {
                out.push(c);
            }
        }
        out
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for m in [3, 4] {
            let fast: Vec<_> = enumerate(m).unwrap().collect();
            assert_eq!(fast, brute_force(m), "m={m}");
            assert_eq!(fast.len() % 168, 0);
        }
    }

    #[test]
    fn representatives_match_full_orbit_sweep() {
        for m in 3..=6 {
            let mut reps: Vec<_> = enumerate(m).unwrap().map(|c| c.dj_orbit_representative()).collect();
            reps.sort();
            reps.dedup();
            assert_eq!(dj_representatives(m).unwrap(), reps, "m={m}");
        }
    }

    #[test]
    fn examples() {
        assert!(Coloring::new(1, 1, vec![7, 2, 4]).is_valid());
        assert!(!Coloring::new(1, 1, vec![2, 4, 2, 2]).is_valid());
        assert!(Coloring::new(1, 1, vec![2, 4, 2, 4]).is_2_independent());
        assert!(!Coloring::new(1, 1, vec![3, 4, 2, 4]).is_2_independent());
        assert!(!Coloring::new(1, 1, vec![2, 4, 2, 4]).has_property_star().unwrap());
        assert!(Coloring::new(1, 1, vec![2, 6, 2, 4]).has_property_star().unwrap());
        assert!(Coloring::new(1, 1, vec![7, 2, 4]).has_property_star().unwrap());
        assert!(Coloring::new(1, 3, vec![2, 4]).has_property_star().is_err());
    }

    #[test]
    fn nontrivial_stats_examples() {
        let a = Coloring::checked(1, 3, vec![2, 4, 6, 4, 6, 4]).unwrap().nontrivial_stats().unwrap();
        assert_eq!((a.n, a.mm), (1, 0));
        let b = Coloring::checked(1, 3, vec![6, 4, 6, 4]).unwrap().nontrivial_stats().unwrap();
        assert_eq!((b.n, b.mm), (0, 0));
        assert!(Coloring::new(1, 1, vec![2, 4, 2, 4]).nontrivial_stats().is_err());
    }

    #[test]
    fn text_round_trip_and_errors() {
        let c: Coloring = "m=3;c=1;f=1;s=7,2,4".parse().unwrap();
        assert_eq!(c.to_string(), "m=3;c=1;f=1;s=7,2,4");
        assert!("m=3;c=1;f=1;s=7,2".parse::<Coloring>().is_err());
        assert!("m=3;c=1;f=1;s=7,2,8".parse::<Coloring>().is_err());
        let err = "m=4;c=1;f=1;s=2,4,2,2".parse::<Coloring>().unwrap_err();
        assert!(err.to_string().contains("vertex (c, s3, s4)"), "{err}");
    }

    #[test]
    fn span_dimensions() {
        assert_eq!(span_dim([]), 0);
        assert_eq!(span_dim([3]), 1);
        assert_eq!(span_dim([1, 2, 3]), 2);
        assert_eq!(span_dim([1, 2, 4]), 3);
    }

    #[test]
    fn rotation_and_reflection() {
        let c = Coloring::new(1, 1, vec![2, 4, 6, 4]);
        assert_eq!(c.rotate(1).sides, vec![4, 6, 4, 2]);
        assert_eq!(c.reflect().sides, vec![2, 4, 6, 4]);
        let d = Coloring::new(1, 1, vec![2, 6, 4, 3, 5]);
        assert_eq!(d.reflect().sides, vec![2, 5, 3, 4, 6]);
    }
}
