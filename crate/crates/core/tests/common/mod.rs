//! Reference values transcribed for comparison, and brute-force oracles that
//! share no code with the library.

#![allow(dead_code)]

use smallcover::canonical::CanonicalClass::{self, *};
use smallcover::Coloring;

pub fn pow2m1(k: usize) -> u64 {
    (1u64 << k) - 1
}

/// Δ together with B̄.
pub type Expected = (usize, (u64, u64));

/// Reference (Δ, B̄) for a trivial family at m ≥ 5.
pub fn reference_trivial(class: CanonicalClass, m: usize) -> Expected {
    let delta = match class {
        C1 => m - 1,
        C2 | C3 | C4 => m - 2,
        _ => m - 3,
    };
    let b = match class {
        C1 => (0, pow2m1(m - 2)),
        C2 => (1, pow2m1(m - 2) - 1),
        C3 => (0, pow2m1(m - 3)),
        C4 => (pow2m1(m - 2), 0),
        C5 | C7 | C9 => (pow2m1(m - 3), 0),
        C6 | C8 | C10 => (pow2m1(m - 4), 0),
        other => panic!("no reference value for {other}"),
    };
    (delta, b)
}

fn choose2(n: usize) -> u64 {
    (n * n.saturating_sub(1) / 2) as u64
}

/// Reference (Δ, B̄) for the nontrivial form with parameters (n, mm).
pub fn reference_nontrivial(n: usize, mm: usize) -> Expected {
    let delta = if n == 0 {
        1
    } else if mm == 0 {
        n
    } else {
        n - 1
    };
    let b = match (n, mm) {
        (0, 0) => (0, 0),
        (1, 0) | (2, 2) => (1, 0),
        (2, 0) => (1, 3),
        (_, 0) => (0, n as u64),
        _ => ((n - mm) as u64, (mm - 1) as u64 + choose2(mm - 1) + choose2(n - mm)),
    };
    (delta, b)
}

/// One reference row of the m = 5 or m = 6 class table.
pub struct TableRow {
    pub label: &'static str,
    pub delta: usize,
    pub b_bar: (u64, u64),
    pub nm: Option<(usize, usize)>,
    /// Some(true) when w₁ is listed as zero.
    pub orientable: Option<bool>,
    pub k_cap_h2: Option<usize>,
}

const fn row(
    label: &'static str,
    delta: usize,
    b_bar: (u64, u64),
    nm: Option<(usize, usize)>,
    orientable: Option<bool>,
    k_cap_h2: Option<usize>,
) -> TableRow {
    TableRow { label, delta, b_bar, nm, orientable, k_cap_h2 }
}

pub const TABLE_M5: [TableRow; 7] = [
    row("NT(1,0)", 1, (1, 0), Some((1, 0)), None, None),
    row("NT(2,0)", 2, (1, 3), Some((2, 0)), None, None),
    row("NT(2,2)", 1, (1, 0), Some((2, 2)), None, None),
    row("T(C3)", 3, (0, 3), None, None, None),
    row("T(C5)", 2, (3, 0), None, Some(true), None),
    row("T(C6)", 2, (1, 0), None, None, None),
    row("T(C7)", 2, (3, 0), None, Some(false), None),
];

pub const TABLE_M6: [TableRow; 12] = [
    row("NT(0,0)", 1, (1, 0), Some((0, 0)), None, None),
    row("NT(1,0)", 1, (1, 0), Some((1, 0)), None, None),
    row("NT(2,0)", 2, (1, 3), Some((2, 0)), None, None),
    row("NT(3,0)", 3, (0, 3), Some((3, 0)), None, None),
    row("NT(2,2)", 1, (1, 0), Some((2, 2)), None, None),
    row("NT(3,2)", 2, (1, 1), Some((3, 2)), None, None),
    row("T(C1)", 5, (0, 15), None, None, None),
    row("T(C2)", 4, (1, 14), None, None, None),
    row("T(C4)", 4, (15, 0), None, None, None),
    row("T(C8)", 3, (3, 0), None, None, Some(2)),
    row("T(C9)", 3, (7, 0), None, None, None),
    row("T(C10)", 3, (3, 0), None, None, Some(1)),
];

/// Reference entries known to disagree with the ring computation, as
/// "m=<m> <label> <field>".
pub const KNOWN_CLOSED_FORM_ERRATA: &[&str] = &[
    "m=5 C3 b_bar",
    "m=5 NT(2,0) b_bar",
    "m=6 C4 b_bar",
    "m=6 NT(2,0) b_bar",
    "m=6 NT(3,0) b_bar",
    "m=6 NT(3,2) b_bar",
    "m=7 C3 b_bar",
    "m=7 NT(2,0) b_bar",
    "m=7 NT(3,2) b_bar",
    "m=8 C4 b_bar",
    "m=8 NT(2,0) b_bar",
    "m=8 NT(3,2) b_bar",
];

pub const KNOWN_TABLE_ERRATA: &[&str] = &[
    "m=5 NT(2,0) b_bar",
    "m=5 T(C3) b_bar",
    "m=6 NT(0,0) b_bar",
    "m=6 NT(2,0) b_bar",
    "m=6 NT(3,0) b_bar",
    "m=6 NT(3,2) b_bar",
    "m=6 T(C4) b_bar",
    "m=6 T(C10) k_cap_h2",
];

fn dependent(a: u8, b: u8, c: u8) -> bool {
    a == 0 || b == 0 || c == 0 || a == b || a == c || b == c || a ^ b == c
}

/// Every valid coloring, by filtering all 7^(m+2) tuples, in lexicographic order.
pub fn brute_force_colorings(m: usize) -> Vec<Coloring> {
    let total = 7usize.pow(m as u32 + 2);
    let mut out = Vec::new();
    let mut digits = vec![0u8; m + 2];
    for mut code in 0..total {
        for d in digits.iter_mut().rev() {
            *d = (code % 7) as u8 + 1;
            code /= 7;
        }
        let (c, f, s) = (digits[0], digits[1], &digits[2..]);
        let ok = (0..m).all(|i| {
            let (a, b) = (s[i], s[(i + 1) % m]);
            !dependent(a, b, c) && !dependent(a, b, f)
        });
        if ok {
            out.push(Coloring::new(c, f, s.to_vec()));
        }
    }
    out
}

/// All 168 invertible 3×3 matrices over GF(2), as column images of e1, e2, e3.
pub fn brute_force_gl3() -> Vec<[u8; 3]> {
    let mut out = Vec::new();
    for a in 1..8u8 {
        for b in 1..8u8 {
            for c in 1..8u8 {
                if !dependent(a, b, c) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

pub fn apply_cols(g: [u8; 3], x: u8) -> u8 {
    (0..3).filter(|i| x >> i & 1 == 1).fold(0, |acc, i| acc ^ g[i])
}

pub fn transform(g: [u8; 3], c: &Coloring) -> Coloring {
    Coloring::new(apply_cols(g, c.ceiling), apply_cols(g, c.floor), c.sides.iter().map(|&x| apply_cols(g, x)).collect())
}
