//! Canonical coloring sequences.
//!
//! Trivial forms use λ(c) = λ(f) = e₁ with α = e₂, β = e₃, γ = e₂+e₃ and a bar
//! meaning "+ e₁". The nontrivial form uses λ(c) = e₁, λ(f) = e₁+e₂, λ₀ = e₂.

use std::fmt;
use std::str::FromStr;

use crate::coloring::{Coloring, E1, E2, E3};
use crate::error::Error;

const A: u8 = E2;
const B: u8 = E3;
const G: u8 = E2 ^ E3;
const ABAR: u8 = A ^ E1;
const GBAR: u8 = G ^ E1;

/// Label of a canonical form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CanonicalClass {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
    C10,
    /// The m = 3 form (γ̄, α, β).
    C3Prism,
    /// The m = 4 form (α, γ, ᾱ, β).
    C4_1,
    /// The m = 4 form (α, γ̄, α, β).
    C4_2,
    /// The nontrivial form with parameters (n_λ, m_λ).
    CStar(usize, usize),
}

use CanonicalClass::*;

/// The ten trivial families, in numbering order.
pub const TRIVIAL_FAMILIES: [CanonicalClass; 10] = [C1, C2, C3, C4, C5, C6, C7, C8, C9, C10];

impl CanonicalClass {
    pub fn is_trivial(&self) -> bool {
        !matches!(self, CStar(..))
    }

    /// Whether the form is defined for this m.
    pub fn exists_for(&self, m: usize) -> bool {
        let even = m.is_multiple_of(2);
        match *self {
            C1 | C2 | C4 => m >= 4 && even,
            C8 | C9 | C10 => m >= 6 && even,
            C3 => m >= 3 && !even,
            C5 | C6 | C7 => m >= 5 && !even,
            C3Prism => m == 3,
            C4_1 | C4_2 => m == 4,
            CStar(n, mm) => m > 3 && mm % 2 == 0 && mm <= n && 2 * n <= m && (even || n > 0),
        }
    }

    /// The canonical coloring for this m.
    pub fn coloring(&self, m: usize) -> Result<Coloring, Error> {
        if !self.exists_for(m) {
            return Err(Error::Domain(format!("{self} is not defined for m={m}")));
        }
        let tail = |prefix: &[u8]| -> Vec<u8> {
            let mut v = prefix.to_vec();
            while v.len() < m {
                v.push(if (m - v.len()).is_multiple_of(2) { A } else { B });
            }
            v
        };
        let sides = match *self {
            C1 => tail(&[]),
            C2 => tail(&[A, G]),
            C3 => tail(&[A, G, B]),
            C4 => tail(&[ABAR, B]),
            C5 => tail(&[GBAR]),
            C6 => tail(&[GBAR, ABAR, B]),
            C7 => tail(&[G, ABAR, B]),
            C8 => tail(&[ABAR, G, ABAR, B]),
            C9 | C4_1 => tail(&[A, G, ABAR, B]),
            C10 | C4_2 => tail(&[A, GBAR, A, B]),
            C3Prism => vec![GBAR, A, B],
            CStar(n, mm) => return Ok(c_star(m, n, mm)),
        };
        Coloring::checked(E1, E1, sides)
    }

    /// Families that exist for m, trivial then nontrivial, in label order.
    pub fn all_for(m: usize) -> Vec<CanonicalClass> {
        let mut out: Vec<CanonicalClass> = match m {
            3 => vec![C3, C3Prism],
            4 => vec![C1, C2, C4, C4_1, C4_2],
            _ => TRIVIAL_FAMILIES.iter().copied().filter(|c| c.exists_for(m)).collect(),
        };
        if m > 3 {
            for n in 0..=m / 2 {
                for mm in (0..=n).step_by(2) {
                    if CStar(n, mm).exists_for(m) {
                        out.push(CStar(n, mm));
                    }
                }
            }
        }
        out
    }
}

/// (e₂, x₁, e₂, …, e₂, x_mm, e₂, y₁, …, e₂, y_{n−mm}, z₁, …, z_{m−2n}).
fn c_star(m: usize, n: usize, mm: usize) -> Coloring {
    let mut sides = Vec::with_capacity(m);
    for i in 1..=mm {
        sides.push(E2);
        sides.push(if i % 2 == 1 { E1 ^ E3 } else { E3 });
    }
    for _ in mm..n {
        sides.push(E2);
        sides.push(E3);
    }
    for i in 1..=m - 2 * n {
        sides.push(if i % 2 == 1 { E2 ^ E3 } else { E3 });
    }
    Coloring::new(E1, E1 ^ E2, sides)
}

impl fmt::Display for CanonicalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            C3Prism => write!(f, "C3_prism"),
            C4_1 => write!(f, "C4_1"),
            C4_2 => write!(f, "C4_2"),
            CStar(n, mm) => write!(f, "CStar({n},{mm})"),
            other => write!(f, "{other:?}"),
        }
    }
}

impl FromStr for CanonicalClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let simple = [
            ("C1", C1),
            ("C2", C2),
            ("C3", C3),
            ("C4", C4),
            ("C5", C5),
            ("C6", C6),
            ("C7", C7),
            ("C8", C8),
            ("C9", C9),
            ("C10", C10),
            ("C3_prism", C3Prism),
            ("C4_1", C4_1),
            ("C4_2", C4_2),
        ];
        if let Some((_, c)) = simple.iter().find(|(name, _)| *name == s) {
            return Ok(*c);
        }
        let inner = s
            .strip_prefix("CStar(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("unknown canonical class {s:?}")))?;
        let (a, b) = inner.split_once(',').ok_or_else(|| Error::Parse(format!("bad CStar parameters in {s:?}")))?;
        let parse =
            |t: &str| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad CStar parameters in {s:?}")));
        Ok(CStar(parse(a)?, parse(b)?))
    }
}
