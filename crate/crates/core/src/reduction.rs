//! Constructive reduction of a coloring to its canonical form.
//!
//! The trivial pipeline works with λ(c) = e₁, where a side color is a coset of
//! ⟨e₁⟩ (its "letter") plus a bar bit. It gathers the rarest letter, removes
//! all but one copy of it, and then normalizes bars on the two-letter
//! remainder. The nontrivial pipeline works with (λ(c), λ(f)) = (e₁, e₁+e₂):
//! it gathers the λ₀-colored sides, compacts the pair pattern of the runs
//! between them, and fixes bits with Ō₂₁.

use crate::canonical::CanonicalClass;
use crate::coloring::{Color, Coloring, E1, E2, E3};
use crate::error::Error;
use crate::gl3::{self, Gl3};
use crate::sector_ops::{apply, frame_map, replay, Move, OpKind, SequenceOp};

/// Result of a reduction: the class, the trace, and the final coloring, which
/// equals the class's canonical coloring exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub class: CanonicalClass,
    pub trace: Vec<Move>,
    pub result: Coloring,
}

struct Reducer {
    cur: Coloring,
    trace: Vec<Move>,
}

impl Reducer {
    fn new(c: &Coloring) -> Self {
        Reducer { cur: c.clone(), trace: Vec::new() }
    }

    fn s(&self, i: usize) -> Color {
        self.cur.sides[i - 1]
    }

    fn op(&mut self, kind: OpKind, k: usize, l: usize) -> Result<(), Error> {
        let op = SequenceOp::new(kind, k, l);
        self.cur = apply(&self.cur, op)?;
        self.trace.push(Move::Op(op));
        Ok(())
    }

    fn rot(&mut self, r: usize) {
        let r = r % self.cur.m();
        if r != 0 {
            self.cur = self.cur.rotate(r);
            self.trace.push(Move::Rotate(r));
        }
    }

    fn dj(&mut self, g: Gl3) {
        if g != Gl3::IDENTITY {
            self.cur = self.cur.transform(&g);
            self.trace.push(Move::Dj(g));
        }
    }

    /// Ends with a rotation and DJ move landing exactly on a canonical coloring.
    fn finish(mut self, candidates: &[CanonicalClass]) -> Result<Reduction, Error> {
        let m = self.cur.m();
        for &class in candidates {
            let target = class.coloring(m)?;
            for r in 0..m {
                let rotated = self.cur.rotate(r);
                if let Some(g) = gl3::all().iter().find(|g| rotated.transform(g) == target) {
                    self.rot(r);
                    self.dj(*g);
                    return Ok(Reduction { class, trace: self.trace, result: target });
                }
            }
        }
        Err(Error::Integrity(format!("reduction ended at {} which matches no canonical form", self.cur)))
    }

    /// O21 spans between letters of one coset with different bars flip the
    /// bars of the other letters in between. Given such a pair among the
    /// consecutive same-letter positions `xs`, this sets the bar of every
    /// letter at `xs[i] + 1` to `want[i]` when that entry is `Some`.
    fn set_between(&mut self, xs: &[usize], want: &[Option<bool>]) -> Result<(), Error> {
        debug_assert_eq!(want.len() + 1, xs.len());
        let bit = |r: &Reducer, p: usize| r.s(p) & E1 == 1;
        let c = (0..xs.len() - 1)
            .find(|&i| bit(self, xs[i]) != bit(self, xs[i + 1]))
            .ok_or_else(|| Error::Integrity("no bar boundary to work from".into()))?;
        let wrong = |r: &Reducer, i: usize| want[i].is_some_and(|w| bit(r, xs[i] + 1) != w);
        for i in (c + 1..want.len()).rev() {
            if wrong(self, i) {
                let s = if bit(self, xs[c]) != bit(self, xs[i + 1]) { c } else { c + 1 };
                self.op(OpKind::O21, xs[s], xs[i + 1])?;
            }
        }
        for i in 0..c {
            if wrong(self, i) {
                let e = if bit(self, xs[i]) != bit(self, xs[c]) { c } else { c + 1 };
                self.op(OpKind::O21, xs[i], xs[e])?;
            }
        }
        if wrong(self, c) {
            self.op(OpKind::O21, xs[c], xs[c + 1])?;
        }
        Ok(())
    }

    /// Flips the bar of the letter after `xs[0]` and nothing else.
    fn flip_first_between(&mut self, xs: &[usize]) -> Result<(), Error> {
        let want: Vec<Option<bool>> =
            (0..xs.len() - 1).map(|i| Some((self.s(xs[i] + 1) & E1 == 1) != (i == 0))).collect();
        self.set_between(xs, &want)
    }

    fn has_boundary(&self, xs: &[usize]) -> bool {
        xs.windows(2).any(|w| (self.s(w[0]) ^ self.s(w[1])) & E1 == 1)
    }
}

fn letter(x: Color) -> Color {
    x >> 1
}

fn positions(from: usize, to: usize) -> Vec<usize> {
    (from..=to).step_by(2).collect()
}

/// Reduces a trivial coloring to one of the trivial canonical forms.
pub fn canonical_form_trivial(c: &Coloring) -> Result<Reduction, Error> {
    c.validate()?;
    if !c.is_trivial() {
        return Err(Error::Precondition("canonical_form_trivial needs λ(c) = λ(f)".into()));
    }
    let m = c.m();
    let mut r = Reducer::new(c);
    r.dj(frame_map(c, E1, E1).expect("some map sends λ(c) to e1"));

    let mut counts = [0usize; 4];
    for &x in &r.cur.sides {
        counts[letter(x) as usize] += 1;
    }
    let star = counts[1..].iter().all(|&n| n > 0);
    if star {
        let g = (1..4u8).min_by_key(|&l| (counts[l as usize], l)).expect("three letters");
        gather_rare_letter(&mut r, g)?;
        normalize_after_single_letter(&mut r)?;
    } else {
        normalize_two_letters(&mut r)?;
    }
    r.finish(&CanonicalClass::all_for(m).into_iter().filter(|k| k.is_trivial()).collect::<Vec<_>>())
}

/// Leaves exactly one side with letter `g`, at position 1.
fn gather_rare_letter(r: &mut Reducer, g: Color) -> Result<(), Error> {
    let m = r.cur.m();
    let first = (1..=m).find(|&i| letter(r.s(i)) == g).expect("letter occurs");
    r.rot(first - 1);
    // Pack the copies at positions 1, 3, 5, …
    loop {
        let ps: Vec<usize> = (1..=m).filter(|&i| letter(r.s(i)) == g).collect();
        let Some(t) = (0..ps.len()).find(|&t| ps[t] != 2 * t + 1) else { break };
        let (a, p) = (ps[t - 1], ps[t]);
        let (k, l) = (a + 1, p + 1);
        let (x1, y) = (r.s(k), r.s(l));
        let kind = if x1 == y {
            OpKind::O1
        } else if x1 ^ y == E1 {
            OpKind::O22
        } else {
            OpKind::O32
        };
        r.op(kind, k, l)?;
        if letter(r.s(a + 2)) != g {
            return Err(Error::Integrity(format!("gathering step {kind} k={k} l={l} did not advance")));
        }
    }
    let mut ell = r.cur.sides.iter().filter(|&&x| letter(x) == g).count();
    while ell >= 2 {
        let (y_prev, y_last) = (r.s(2 * ell - 2), r.s(2 * ell));
        let l = if letter(y_prev) != letter(y_last) { 2 * ell } else { 2 * ell + 1 };
        r.op(OpKind::O32, 2 * ell - 3, l)?;
        ell -= 1;
    }
    Ok(())
}

/// Bar normalization once the rare letter sits alone at position 1.
fn normalize_after_single_letter(r: &mut Reducer) -> Result<(), Error> {
    let m = r.cur.m();
    let bit = |r: &Reducer, i: usize| r.s(i) & E1 == 1;
    let (p_last, q_last) = if m % 2 == 1 { (m - 1, m) } else { (m, m - 1) };
    let pxs = positions(2, p_last);
    let qxs = positions(3, q_last);
    if !r.has_boundary(&pxs) && !r.has_boundary(&qxs) {
        return Ok(());
    }
    if !r.has_boundary(&qxs) && qxs.len() >= 2 {
        r.flip_first_between(&pxs)?;
    }
    // P letters lying between two Q letters take the bar opposite to s₂.
    if qxs.len() >= 2 {
        let target = !bit(r, 2);
        r.set_between(&qxs, &vec![Some(target); qxs.len() - 1])?;
    }
    let target = bit(r, q_last);
    r.set_between(&pxs, &vec![Some(target); pxs.len() - 1])?;
    if m.is_multiple_of(2) {
        // Make the single letter the sum of the majority colors.
        let (alpha, beta) = (r.s(4), r.s(3));
        if r.s(1) != alpha ^ beta {
            r.rot(m - 1);
            if r.s(1) != r.s(3) {
                r.op(OpKind::O21, 1, 3)?;
            } else {
                r.op(OpKind::O21, 1, 5)?;
                r.op(OpKind::O21, 3, 5)?;
            }
            r.rot(1);
        }
    }
    Ok(())
}

/// Two letters alternate around the whole cycle.
fn normalize_two_letters(r: &mut Reducer) -> Result<(), Error> {
    let m = r.cur.m();
    let axs = positions(1, m - 1);
    let bxs = positions(2, m);
    if !r.has_boundary(&axs) && !r.has_boundary(&bxs) {
        return Ok(());
    }
    let bit = |r: &Reducer, i: usize| r.s(i) & E1 == 1;
    if !r.has_boundary(&bxs) {
        r.flip_first_between(&axs)?;
    }
    let target = !bit(r, 1);
    r.set_between(&bxs, &vec![Some(target); bxs.len() - 1])?;
    let target = bit(r, m);
    r.set_between(&axs, &vec![Some(target); axs.len() - 1])?;
    Ok(())
}

const LAMBDA0: Color = E2;

fn pair_of(x: Color) -> Color {
    x & E1
}

fn bit_of(x: Color) -> Color {
    (x >> 1) & 1
}

/// The DJ moves fixing e₁ and e₂: `e₃ ↦ e₃ + v`.
fn shear(v: Color) -> Gl3 {
    Gl3::from_images(E1, E2, E3 ^ v).expect("shear is invertible")
}

/// Reverses the span between two non-λ₀ sides with whichever of O31, O4, O5
/// is legal there.
fn reverse_between(r: &mut Reducer, k: usize, l: usize) -> Result<(), Error> {
    let d = r.s(k) ^ r.s(l);
    let kind = match d {
        0 => OpKind::O31,
        LAMBDA0 => OpKind::O5,
        _ => OpKind::O4,
    };
    r.op(kind, k, l)
}

/// Reduces a nontrivial coloring (m > 3) to its form CStar(n, mm).
pub fn canonical_form_nontrivial(c: &Coloring) -> Result<Reduction, Error> {
    c.validate()?;
    if c.is_trivial() {
        return Err(Error::Precondition("canonical_form_nontrivial needs λ(c) ≠ λ(f)".into()));
    }
    let m = c.m();
    if m <= 3 {
        return Err(Error::Precondition("the nontrivial canonical form needs m > 3".into()));
    }
    let stats = c.nontrivial_stats()?;
    let mut r = Reducer::new(c);
    r.dj(frame_map(c, E1, E1 ^ E2).expect("some map sends the caps to e1, e1+e2"));
    let n = stats.n;
    if n == 0 {
        if pair_of(r.s(1)) != 0 {
            r.dj(shear(E1));
        }
        if bit_of(r.s(1)) != 1 {
            r.dj(shear(E2));
        }
        return r.finish(&[CanonicalClass::CStar(0, 0)]);
    }

    // Start at a λ₀ side, preferring one whose neighbors span everything.
    let ns: Vec<usize> = (1..=m).filter(|&i| r.s(i) == LAMBDA0).collect();
    let m_member = |r: &Reducer, i: usize| {
        let prev = r.s(if i == 1 { m } else { i - 1 });
        let next = r.s(if i == m { 1 } else { i + 1 });
        pair_of(prev) != pair_of(next)
    };
    let start = ns.iter().copied().find(|&i| m_member(&r, i)).unwrap_or(ns[0]);
    r.rot(start - 1);

    // Gather: the runs between consecutive λ₀ sides shrink to single sides.
    for i in 1..n {
        let run_start = 2 * i;
        if r.s(run_start + 1) != LAMBDA0 {
            let next = (run_start + 1..=m).find(|&j| r.s(j) == LAMBDA0).expect("another λ₀ side") + 1;
            reverse_between(&mut r, run_start, next)?;
        }
    }
    // Pair pattern over the runs: tail run gets pair 0.
    if pair_of(r.s(2 * n)) != 0 {
        r.dj(shear(E1));
    }
    let mm = stats.mm;
    let pair = |r: &Reducer, i: usize| pair_of(r.s(2 * i));
    for i in 2..=n {
        let want = if i <= mm { (i % 2) as Color } else { 0 };
        if pair(&r, i) == want {
            continue;
        }
        let j = (i + 1..=n)
            .find(|&j| pair(&r, j) != pair(&r, i))
            .ok_or_else(|| Error::Integrity(format!("no pair change left to move at run {i}")))?;
        reverse_between(&mut r, 2 * (i - 1), 2 * j)?;
    }
    // Bits: the tail starts with e₃ and every single side carries bit 0.
    if bit_of(r.s(2 * n)) != 0 {
        r.dj(shear(E2));
    }
    for i in 1..n {
        if bit_of(r.s(2 * i)) != 0 {
            r.op(OpKind::NO21, 2 * i - 1, 2 * i + 1)?;
        }
    }
    r.finish(&[CanonicalClass::CStar(n, mm)])
}

/// Dispatches on triviality.
pub fn canonical_form(c: &Coloring) -> Result<Reduction, Error> {
    if c.is_trivial() {
        canonical_form_trivial(c)
    } else {
        canonical_form_nontrivial(c)
    }
}

/// Replays a reduction and checks it lands on the canonical coloring.
pub fn verify_reduction(c: &Coloring, red: &Reduction) -> Result<(), Error> {
    let end = replay(c, &red.trace)?;
    let target = red.class.coloring(c.m())?;
    if end == target && end == red.result {
        Ok(())
    } else {
        Err(Error::Integrity(format!("replaying the trace from {c} gives {end}, expected {target}")))
    }
}
