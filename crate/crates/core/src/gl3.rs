//! The group GL(3, Z₂) acting on colors.
//!
//! A matrix is stored by the images of e₁, e₂, e₃ (its columns) as 3-bit colors.

use std::fmt;
use std::sync::OnceLock;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gl3 {
    cols: [u8; 3],
}

impl Gl3 {
    pub const IDENTITY: Gl3 = Gl3 { cols: [1, 2, 4] };

    /// Builds the map sending e₁, e₂, e₃ to the given colors; `None` if singular.
    pub fn from_images(a: u8, b: u8, c: u8) -> Option<Gl3> {
        let ok = a & 7 == a
            && b & 7 == b
            && c & 7 == c
            && a != 0
            && b != 0
            && a != b
            && c != 0
            && c != a
            && c != b
            && c != a ^ b;
        ok.then_some(Gl3 { cols: [a, b, c] })
    }

    pub fn images(&self) -> [u8; 3] {
        self.cols
    }

    #[inline]
    pub fn apply(&self, x: u8) -> u8 {
        let mut out = 0;
        for (j, &col) in self.cols.iter().enumerate() {
            if x >> j & 1 == 1 {
                out ^= col;
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Gl3) -> Gl3 {
        Gl3 { cols: other.cols.map(|c| self.apply(c)) }
    }

    pub fn inverse(&self) -> Gl3 {
        let mut inv = [0u8; 3];
        for x in 1..8u8 {
            let y = self.apply(x);
            for (j, slot) in inv.iter_mut().enumerate() {
                if y == 1 << j {
                    *slot = x;
                }
            }
        }
        Gl3 { cols: inv }
    }

    /// The unique map with e₁,e₂,e₃ ↦ a,b,c is `from_images`; this returns the
    /// map sending `a,b,c` to e₁,e₂,e₃.
    pub fn sending_to_standard(a: u8, b: u8, c: u8) -> Option<Gl3> {
        Gl3::from_images(a, b, c).map(|g| g.inverse())
    }

    /// Rows as 3-character binary strings; entry (r, j) is bit r of column j.
    pub fn rows(&self) -> [String; 3] {
        [0, 1, 2].map(|r| self.cols.iter().map(|c| if c >> r & 1 == 1 { '1' } else { '0' }).collect())
    }

    pub fn parse_rows(rows: &[&str]) -> Result<Gl3, Error> {
        if rows.len() != 3 {
            return Err(Error::Parse(format!("expected 3 matrix rows, got {}", rows.len())));
        }
        let mut cols = [0u8; 3];
        for (r, row) in rows.iter().enumerate() {
            let bytes = row.as_bytes();
            if bytes.len() != 3 {
                return Err(Error::Parse(format!("matrix row {row:?} must have 3 binary digits")));
            }
            for (j, &ch) in bytes.iter().enumerate() {
                match ch {
                    b'0' => {}
                    b'1' => cols[j] |= 1 << r,
                    _ => return Err(Error::Parse(format!("matrix row {row:?} must be binary"))),
                }
            }
        }
        Gl3::from_images(cols[0], cols[1], cols[2]).ok_or_else(|| Error::Parse("singular matrix".into()))
    }
}

impl fmt::Display for Gl3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.rows();
        write!(f, "{a} {b} {c}")
    }
}

/// All 168 elements, sorted.
pub fn all() -> &'static [Gl3] {
    static ALL: OnceLock<Vec<Gl3>> = OnceLock::new();
    ALL.get_or_init(|| {
        let mut v = Vec::with_capacity(168);
        for a in 1..8 {
            for b in 1..8 {
                for c in 1..8 {
                    if let Some(g) = Gl3::from_images(a, b, c) {
                        v.push(g);
                    }
                }
            }
        }
        v
    })
}

/// Elements fixing each color in `fixed`.
pub fn stabilizer(fixed: &[u8]) -> Vec<Gl3> {
    all().iter().copied().filter(|g| fixed.iter().all(|&x| g.apply(x) == x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_168() {
        assert_eq!(all().len(), 168);
    }

    #[test]
    fn group_laws() {
        for g in all() {
            assert_eq!(g.compose(&g.inverse()), Gl3::IDENTITY);
            for x in 1..8 {
                assert_ne!(g.apply(x), 0);
                assert_eq!(g.inverse().apply(g.apply(x)), x);
            }
            for x in 0..8u8 {
                for y in 0..8u8 {
                    assert_eq!(g.apply(x ^ y), g.apply(x) ^ g.apply(y));
                }
            }
        }
    }

    #[test]
    fn row_text_round_trip() {
        for g in all() {
            let rows = g.rows();
            let parsed = Gl3::parse_rows(&[&rows[0], &rows[1], &rows[2]]).unwrap();
            assert_eq!(parsed, *g);
        }
        assert_eq!(Gl3::IDENTITY.to_string(), "100 010 001");
        assert!(Gl3::parse_rows(&["100", "100", "001"]).is_err());
    }

    #[test]
    fn stabilizer_sizes() {
        assert_eq!(stabilizer(&[1]).len(), 24);
        assert_eq!(stabilizer(&[1, 3]).len(), 4);
        assert_eq!(stabilizer(&[1, 2, 4]).len(), 1);
    }
}
