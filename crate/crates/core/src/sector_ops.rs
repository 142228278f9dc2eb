//! Sequence rewrites induced by rectangular sectors with a good twist, the
//! free relabeling moves, and a breadth-first oracle for sector equivalence.
//!
//! Every operation acts on a span `s_k, …, s_l` with `1 ≤ k < l ≤ m` in the
//! current labeling. It optionally reverses the span and applies a linear
//! substitution `T` to the colors in it. `T` fixes λ(c) and λ(f) and maps the
//! old endpoint colors onto the new ones, so the result is again a coloring.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::coloring::{independent, Color, Coloring};
use crate::error::Error;
use crate::gl3::{self, Gl3};

pub use crate::reduction::{
    canonical_form, canonical_form_nontrivial, canonical_form_trivial, verify_reduction, Reduction,
};

/// The eight operations. The first four act on trivial colorings, the rest on
/// nontrivial ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpKind {
    O1,
    O21,
    O22,
    O32,
    NO21,
    O31,
    O4,
    O5,
}

/// One row of the good-twist table, kept for audit. Entries are the table's
/// own notation; `v0` has no combinatorial effect.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GoodTwist {
    pub sector: &'static str,
    pub derived_coloring: &'static str,
    pub psi: &'static str,
    pub rho: [&'static str; 3],
    pub v0: &'static str,
}

const S1: GoodTwist = GoodTwist {
    sector: "S(1)",
    derived_coloring: "(e1,e2,e1,e2)",
    psi: "diag(1,-1)",
    rho: ["e1", "e2", "e3"],
    v0: "e1",
};
const S21: GoodTwist = GoodTwist {
    sector: "S(2_1)",
    derived_coloring: "(e1,e2,e1+e2,e2)",
    psi: "diag(1,1)",
    rho: ["e1", "e2", "e3+e2"],
    v0: "0",
};
const S22: GoodTwist = GoodTwist {
    sector: "S(2_2)",
    derived_coloring: "(e1,e2,e1+e2,e2)",
    psi: "diag(1,-1)",
    rho: ["e1+e2", "e2", "e3"],
    v0: "e1",
};
const S31: GoodTwist = GoodTwist {
    sector: "S(3_1)",
    derived_coloring: "(e1,e2,e3,e2)",
    psi: "diag(-1,1)",
    rho: ["e1", "e2", "e3"],
    v0: "e2",
};
const S32: GoodTwist = GoodTwist {
    sector: "S(3_2)",
    derived_coloring: "(e1,e2,e3,e2)",
    psi: "diag(1,-1)",
    rho: ["e3", "e2", "e1"],
    v0: "e1",
};
const S4: GoodTwist = GoodTwist {
    sector: "S(4)",
    derived_coloring: "(e3,e1,e1+e3,e2)",
    psi: "diag(1,-1)",
    rho: ["e1", "e2", "e3+e1"],
    v0: "e3",
};
const S5: GoodTwist = GoodTwist {
    sector: "S(5)",
    derived_coloring: "(e3,e1,e1+e2+e3,e2)",
    psi: "diag(-1,1)",
    rho: ["e2", "e1", "e3"],
    v0: "e1",
};

impl OpKind {
    pub const ALL: [OpKind; 8] =
        [OpKind::O1, OpKind::O21, OpKind::O22, OpKind::O32, OpKind::NO21, OpKind::O31, OpKind::O4, OpKind::O5];

    pub fn name(&self) -> &'static str {
        match self {
            OpKind::O1 => "O1",
            OpKind::O21 => "O21",
            OpKind::O22 => "O22",
            OpKind::O32 => "O32",
            OpKind::NO21 => "NO21",
            OpKind::O31 => "O31",
            OpKind::O4 => "O4",
            OpKind::O5 => "O5",
        }
    }

    /// Whether the kind applies to trivial colorings (otherwise nontrivial).
    pub fn for_trivial(&self) -> bool {
        matches!(self, OpKind::O1 | OpKind::O21 | OpKind::O22 | OpKind::O32)
    }

    /// Whether the span is reversed.
    pub fn reflects(&self) -> bool {
        !matches!(self, OpKind::O21 | OpKind::NO21)
    }

    /// The sector whose twist induces this operation.
    pub fn twist(&self) -> &'static GoodTwist {
        match self {
            OpKind::O1 => &S1,
            OpKind::O21 | OpKind::NO21 => &S21,
            OpKind::O22 => &S22,
            OpKind::O31 => &S31,
            OpKind::O32 => &S32,
            OpKind::O4 => &S4,
            OpKind::O5 => &S5,
        }
    }
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OpKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        OpKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| Error::Parse(format!("unknown operation {s:?}")))
    }
}

/// An operation with its span.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SequenceOp {
    pub kind: OpKind,
    pub k: usize,
    pub l: usize,
}

impl SequenceOp {
    pub fn new(kind: OpKind, k: usize, l: usize) -> Self {
        SequenceOp { kind, k, l }
    }

    /// Checks legality on `c` and returns the substitution `T`.
    pub fn linear_map(&self, c: &Coloring) -> Result<Gl3, Error> {
        let m = c.m();
        let SequenceOp { kind, k, l } = *self;
        if !(1 <= k && k < l && l <= m) {
            return Err(Error::IllegalOp(format!("{kind} needs 1 <= k < l <= {m}, got k={k} l={l}")));
        }
        if kind.for_trivial() != c.is_trivial() {
            let want = if kind.for_trivial() { "a trivial" } else { "a nontrivial" };
            return Err(Error::IllegalOp(format!("{kind} needs {want} coloring")));
        }
        let (a, b) = (c.sides[k - 1], c.sides[l - 1]);
        let (cc, lam0) = (c.ceiling, c.lambda0());
        let fail = |why: &str| Err(Error::IllegalOp(format!("{kind} at k={k} l={l}: {why}")));
        match kind {
            OpKind::O1 | OpKind::O31 => {
                if a != b {
                    return fail("λ(s_k) ≠ λ(s_l)");
                }
                if kind == OpKind::O31 && a == lam0 {
                    return fail("λ(s_k) = λ₀");
                }
                Ok(Gl3::IDENTITY)
            }
            OpKind::O21 => {
                if a ^ b != cc {
                    return fail("λ(s_k) − λ(s_l) ≠ λ(c)");
                }
                // Fix λ(c) and λ(s_k), add λ(c) to a vector outside their span.
                let third = complement(cc, a);
                Ok(basis_map([cc, a, third], [cc, a, third ^ cc]))
            }
            OpKind::O22 => {
                if a ^ b != cc {
                    return fail("λ(s_k) − λ(s_l) ≠ λ(c)");
                }
                // Fix λ(c) and λ(s_{l−1}); swap λ(s_l) and λ(s_k) = λ(s_l) + λ(c).
                let fixed = c.sides[l - 2];
                Ok(basis_map([cc, b, fixed], [cc, a, fixed]))
            }
            OpKind::O32 => {
                if !independent(a, b, cc) {
                    return fail("λ(s_k), λ(s_l), λ(c) are dependent");
                }
                Ok(basis_map([cc, a, b], [cc, b, a]))
            }
            OpKind::NO21 => {
                if a != lam0 || b != lam0 {
                    return fail("s_k or s_l is not colored λ₀");
                }
                let third = complement(cc, lam0);
                Ok(basis_map([cc, lam0, third], [cc, lam0, third ^ lam0]))
            }
            OpKind::O4 => {
                if a ^ b != c.ceiling && a ^ b != c.floor {
                    return fail("λ(s_k) − λ(s_l) is neither λ(c) nor λ(f)");
                }
                Ok(basis_map([lam0, a, b], [lam0, b, a]))
            }
            OpKind::O5 => {
                if a ^ b != lam0 {
                    return fail("λ(s_k) − λ(s_l) ≠ λ₀");
                }
                Ok(basis_map([cc, a, b], [cc, b, a]))
            }
        }
    }

    /// Whether the operation is legal on `c`.
    pub fn is_legal(&self, c: &Coloring) -> bool {
        self.linear_map(c).is_ok()
    }
}

impl fmt::Display for SequenceOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} k={} l={}", self.kind, self.k, self.l)
    }
}

/// Smallest color outside span{x, y}.
fn complement(x: Color, y: Color) -> Color {
    (1..8).find(|&z| independent(x, y, z)).expect("x and y are independent")
}

/// The linear map sending basis `from` to `to` entrywise.
fn basis_map(from: [Color; 3], to: [Color; 3]) -> Gl3 {
    let p = Gl3::from_images(from[0], from[1], from[2]).expect("source is a basis");
    let q = Gl3::from_images(to[0], to[1], to[2]).expect("target is a basis");
    q.compose(&p.inverse())
}

/// Applies a legal operation.
pub fn apply(c: &Coloring, op: SequenceOp) -> Result<Coloring, Error> {
    let t = op.linear_map(c)?;
    let SequenceOp { kind, k, l } = op;
    let mut out = c.clone();
    for r in k..=l {
        let src = if kind.reflects() { k + l - r } else { r };
        out.sides[r - 1] = t.apply(c.sides[src - 1]);
    }
    debug_assert!(out.is_valid(), "{op} produced an invalid coloring from {c}");
    Ok(out)
}

/// All legal operations on `c`, ordered by kind then span.
pub fn legal_ops(c: &Coloring) -> Vec<SequenceOp> {
    let m = c.m();
    let mut out = Vec::new();
    for kind in OpKind::ALL.into_iter().filter(|k| k.for_trivial() == c.is_trivial()) {
        for k in 1..m {
            for l in k + 1..=m {
                let op = SequenceOp::new(kind, k, l);
                if op.is_legal(c) {
                    out.push(op);
                }
            }
        }
    }
    out
}

/// A step of a reduction trace: an operation or one of the free relabelings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Op(SequenceOp),
    /// Old side `r+1` becomes side 1.
    Rotate(usize),
    /// Global change of basis.
    Dj(Gl3),
}

impl Move {
    pub fn apply(&self, c: &Coloring) -> Result<Coloring, Error> {
        match self {
            Move::Op(op) => apply(c, *op),
            Move::Rotate(r) => Ok(c.rotate(*r)),
            Move::Dj(g) => Ok(c.transform(g)),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Op(op) => write!(f, "{op}"),
            Move::Rotate(r) => write!(f, "rot {r}"),
            Move::Dj(g) => write!(f, "dj {g}"),
        }
    }
}

impl FromStr for Move {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let bad = || Error::Parse(format!("bad trace line {s:?}"));
        match words.as_slice() {
            ["rot", r] => Ok(Move::Rotate(r.parse().map_err(|_| bad())?)),
            ["dj", a, b, c] => Ok(Move::Dj(Gl3::parse_rows(&[a, b, c])?)),
            [kind, k, l] => {
                let kind: OpKind = kind.parse()?;
                let num = |w: &str, key: &str| w.strip_prefix(key).and_then(|v| v.parse().ok()).ok_or_else(bad);
                Ok(Move::Op(SequenceOp::new(kind, num(k, "k=")?, num(l, "l=")?)))
            }
            _ => Err(bad()),
        }
    }
}

/// Applies a trace move by move.
pub fn replay(c: &Coloring, trace: &[Move]) -> Result<Coloring, Error> {
    trace.iter().try_fold(c.clone(), |acc, mv| mv.apply(&acc))
}

/// One line per move.
pub fn format_trace(trace: &[Move]) -> String {
    trace.iter().map(|m| format!("{m}\n")).collect()
}

pub fn parse_trace(text: &str) -> Result<Vec<Move>, Error> {
    text.lines().map(str::trim).filter(|l| !l.is_empty()).map(str::parse).collect()
}

/// Key identifying a coloring up to DJ equivalence and rotation.
pub fn relabel_key(c: &Coloring) -> Coloring {
    (0..c.m()).map(|r| c.rotate(r).dj_orbit_representative()).min().expect("m >= 1")
}

/// Outcome of the breadth-first oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reachability {
    /// Reached after exploring this many states.
    Reached { explored: usize },
    /// The whole component was explored without meeting the target.
    Unreachable { component: usize },
    /// Budget ran out first; the answer is unknown.
    Exhausted { explored: usize },
}

impl Reachability {
    pub fn is_reached(&self) -> bool {
        matches!(self, Reachability::Reached { .. })
    }
}

/// Breadth-first search from `a` over legal operations, with DJ moves and
/// rotations free, until `b` is met or `budget` states have been expanded.
pub fn bfs_equivalence_oracle(a: &Coloring, b: &Coloring, budget: usize) -> Result<Reachability, Error> {
    for c in [a, b] {
        c.validate()?;
    }
    if a.m() != b.m() || a.is_trivial() != b.is_trivial() {
        return Err(Error::Precondition("oracle needs colorings with equal m and equal triviality".into()));
    }
    let target = relabel_key(b);
    let start = relabel_key(a);
    if start == target {
        return Ok(Reachability::Reached { explored: 0 });
    }
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut explored = 0;
    while let Some(state) = queue.pop_front() {
        if explored >= budget {
            return Ok(Reachability::Exhausted { explored });
        }
        explored += 1;
        for r in 0..state.m() {
            let rotated = state.rotate(r);
            for op in legal_ops(&rotated) {
                let next = relabel_key(&apply(&rotated, op)?);
                if next == target {
                    return Ok(Reachability::Reached { explored });
                }
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(Reachability::Unreachable { component: seen.len() })
}

/// Every state reachable from `a`, keyed by [`relabel_key`].
pub fn sector_component(a: &Coloring) -> Result<Vec<Coloring>, Error> {
    a.validate()?;
    let start = relabel_key(a);
    let mut seen = vec![start.clone()];
    let mut index = HashSet::from([start]);
    let mut i = 0;
    while i < seen.len() {
        let state = seen[i].clone();
        i += 1;
        for r in 0..state.m() {
            let rotated = state.rotate(r);
            for op in legal_ops(&rotated) {
                let next = relabel_key(&apply(&rotated, op)?);
                if index.insert(next.clone()) {
                    seen.push(next);
                }
            }
        }
    }
    seen.sort();
    Ok(seen)
}

/// A map sending λ(c) to `c` and λ(f) to `f`; the smallest such in sorted order.
pub(crate) fn frame_map(col: &Coloring, c: Color, f: Color) -> Option<Gl3> {
    gl3::all().iter().copied().find(|g| g.apply(col.ceiling) == c && g.apply(col.floor) == f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::CanonicalClass;

    fn col(s: &str) -> Coloring {
        s.parse().unwrap()
    }

    #[test]
    fn legality_messages() {
        let c = col("m=4;c=1;f=1;s=2,4,2,4");
        assert!(SequenceOp::new(OpKind::O1, 1, 3).is_legal(&c));
        let err = apply(&c, SequenceOp::new(OpKind::O1, 1, 2)).unwrap_err();
        assert!(err.to_string().contains("λ(s_k) ≠ λ(s_l)"), "{err}");
        assert!(apply(&c, SequenceOp::new(OpKind::O4, 1, 3)).is_err());
        assert!(apply(&c, SequenceOp::new(OpKind::O1, 3, 3)).is_err());
    }

    #[test]
    fn o32_twice_is_identity() {
        let c = col("m=6;c=1;f=1;s=3,4,2,4,2,4");
        for op in legal_ops(&c).into_iter().filter(|o| o.kind == OpKind::O32) {
            let once = apply(&c, op).unwrap();
            assert_eq!(apply(&once, op).unwrap(), c, "{op}");
        }
    }

    #[test]
    fn ops_keep_colorings_valid() {
        for s in ["m=6;c=1;f=1;s=3,6,3,4,2,4", "m=6;c=1;f=3;s=2,5,2,4,6,4", "m=5;c=1;f=3;s=2,4,2,4,6"] {
            let c = col(s);
            let ops = legal_ops(&c);
            assert!(!ops.is_empty());
            for op in ops {
                assert!(apply(&c, op).unwrap().is_valid(), "{op} on {c}");
            }
        }
    }

    #[test]
    fn trace_text_round_trip() {
        let trace = vec![
            Move::Rotate(2),
            Move::Dj(Gl3::from_images(2, 1, 4).unwrap()),
            Move::Op(SequenceOp::new(OpKind::NO21, 1, 3)),
        ];
        assert_eq!(parse_trace(&format_trace(&trace)).unwrap(), trace);
        assert!(parse_trace("O1 k=1").is_err());
        assert!(parse_trace("O9 k=1 l=2").is_err());
    }

    #[test]
    fn oracle_outcomes() {
        let a = CanonicalClass::C4.coloring(6).unwrap();
        assert_eq!(bfs_equivalence_oracle(&a, &a, 10).unwrap(), Reachability::Reached { explored: 0 });
        let b = col("m=6;c=1;f=1;s=3,5,3,4,2,4");
        assert!(bfs_equivalence_oracle(&b, &a, 100_000).unwrap().is_reached());
        let x = CanonicalClass::CStar(1, 0).coloring(6).unwrap();
        let y = CanonicalClass::CStar(2, 0).coloring(6).unwrap();
        assert!(matches!(bfs_equivalence_oracle(&x, &y, 100_000).unwrap(), Reachability::Unreachable { .. }));
        assert!(bfs_equivalence_oracle(&a, &x, 10).is_err());
    }
}
