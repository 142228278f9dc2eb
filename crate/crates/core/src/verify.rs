//! Self-check suites behind the `verify` command.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::canonical::{CanonicalClass, TRIVIAL_FAMILIES};
use crate::classifier::{classify, count_classes, invariant_tuple, n_formula, trivial_fingerprint, ClassLabel};
use crate::cohomology::build_ring;
use crate::coloring::{dj_representatives, enumerate, independent, Coloring};
use crate::error::Error;
use crate::gl3;
use crate::sector_ops::{apply, bfs_equivalence_oracle, canonical_form, legal_ops, relabel_key, verify_reduction};

/// Largest m the suites accept.
pub const M_MAX_LIMIT: usize = 8;

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

type Suite = fn(usize) -> Result<Vec<String>, Error>;

const SUITES: [(&str, Suite); 8] = [
    ("enumeration", enumeration),
    ("betti", betti),
    ("counting", counting),
    ("nm-bounds", nm_bounds),
    ("reduction", reduction),
    ("op-invariance", op_invariance),
    ("rigidity", rigidity),
    ("orientability", orientability),
];

/// Runs every suite for 3 ≤ m ≤ `m_max`.
pub fn run_all(m_max: usize) -> Result<Vec<SuiteReport>, Error> {
    if !(3..=M_MAX_LIMIT).contains(&m_max) {
        return Err(Error::Domain(format!("m_max must lie in 3..={M_MAX_LIMIT}, got {m_max}")));
    }
    SUITES
        .iter()
        .map(|&(name, suite)| {
            let t = Instant::now();
            let problems = suite(m_max)?;
            let detail = match problems.first() {
                None => "ok".to_string(),
                Some(p) => format!("{} problems, first: {p}", problems.len()),
            };
            Ok(SuiteReport { name, passed: problems.is_empty(), detail, elapsed: t.elapsed() })
        })
        .collect()
}

fn filter_all_tuples(m: usize) -> usize {
    let mut count = 0;
    let mut digits = vec![1u8; m + 2];
    loop {
        let (c, f, s) = (digits[0], digits[1], &digits[2..]);
        if (0..m).all(|i| independent(s[i], s[(i + 1) % m], c) && independent(s[i], s[(i + 1) % m], f)) {
            count += 1;
        }
        let Some(pos) = digits.iter().rposition(|&d| d < 7) else { return count };
        digits[pos] += 1;
        digits[pos + 1..].fill(1);
    }
}

fn enumeration(m_max: usize) -> Result<Vec<String>, Error> {
    let mut out = Vec::new();
    for m in 3..=m_max {
        let raw = enumerate(m)?.count();
        let reps = dj_representatives(m)?;
        if m <= 4 && filter_all_tuples(m) != raw {
            out.push(format!("m={m}: enumerator and tuple filter disagree"));
        }
        if raw != 168 * reps.len() {
            out.push(format!("m={m}: {raw} colorings, {} orbits", reps.len()));
        }
        for c in &reps {
            let orbit: BTreeSet<Coloring> = gl3::all().iter().map(|g| c.transform(g)).collect();
            if orbit.len() != 168 {
                out.push(format!("{c}: orbit of size {}", orbit.len()));
            }
        }
    }
    Ok(out)
}

fn betti(m_max: usize) -> Result<Vec<String>, Error> {
    let mut out = Vec::new();
    for m in 3..=m_max {
        let reps = dj_representatives(m)?;
        let bad: Vec<String> = reps
            .par_iter()
            .map(|c| Ok((c, build_ring(c)?.betti())))
            .collect::<Result<Vec<_>, Error>>()?
            .into_iter()
            .filter(|(_, b)| *b != [1, m - 1, m - 1, 1])
            .map(|(c, b)| format!("{c}: {b:?}"))
            .collect();
        out.extend(bad);
    }
    Ok(out)
}

fn counting(m_max: usize) -> Result<Vec<String>, Error> {
    let mut out = Vec::new();
    for m in 3..=m_max {
        let (got, want) = (count_classes(m)?, n_formula(m)?);
        if got != want {
            out.push(format!("m={m}: {got} classes, formula {want}"));
        }
    }
    Ok(out)
}

fn nm_bounds(m_max: usize) -> Result<Vec<String>, Error> {
    let mut out = Vec::new();
    for m in 4..=m_max {
        for c in dj_representatives(m)?.iter().filter(|c| !c.is_trivial()) {
            let s = c.nontrivial_stats()?;
            if s.mm % 2 != 0 || s.mm > s.n || 2 * s.n > m || (m % 2 == 1 && s.n == 0) {
                out.push(format!("{c}: (n, mm) = ({}, {})", s.n, s.mm));
            }
            for op in legal_ops(c) {
                let t = apply(c, op)?.nontrivial_stats()?;
                if (t.n, t.mm) != (s.n, s.mm) {
                    out.push(format!("{op} on {c} moves (n, mm)"));
                }
            }
        }
    }
    Ok(out)
}

fn reduction(m_max: usize) -> Result<Vec<String>, Error> {
    let mut out = Vec::new();
    for m in 3..=m_max {
        let mut confirmed = HashMap::new();
        for c in dj_representatives(m)? {
            if m == 3 && !c.is_trivial() {
                continue;
            }
            let red = canonical_form(&c)?;
            if let Err(e) = verify_reduction(&c, &red) {
                out.push(format!("{c}: {e}"));
                continue;
            }
            let label = classify(&c)?;
            if classify(&red.result)? != label {
                out.push(format!("{c}: label {label} but form {}", red.class));
            }
            if m <= 6 && !confirmed.contains_key(&relabel_key(&c)) {
                if bfs_equivalence_oracle(&c, &red.result, 1_000_000)?.is_reached() {
                    confirmed.insert(relabel_key(&c), ());
                } else {
                    out.push(format!("{c}: search does not reach {}", red.class));
                }
            }
        }
    }
    Ok(out)
}

fn op_invariance(m_max: usize) -> Result<Vec<String>, Error> {
    let mut out = Vec::new();
    for m in 3..=m_max.min(6) {
        for c in dj_representatives(m)? {
            let before = invariant_tuple(&c)?;
            for op in legal_ops(&c) {
                if invariant_tuple(&apply(&c, op)?)? != before {
                    out.push(format!("{op} on {c} changes the tuple"));
                }
            }
        }
    }
    Ok(out)
}

fn rigidity(m_max: usize) -> Result<Vec<String>, Error> {
    let mut out = Vec::new();
    for m in 5..=m_max {
        let pairs: Vec<_> = dj_representatives(m)?
            .par_iter()
            .map(|c| Ok((invariant_tuple(c)?, classify(c)?)))
            .collect::<Result<_, Error>>()?;
        let mut labels = BTreeMap::new();
        let mut tuples = BTreeMap::new();
        for (t, l) in pairs {
            labels.entry(t.clone()).or_insert_with(BTreeSet::new).insert(l);
            tuples.entry(l).or_insert_with(BTreeSet::new).insert(t);
        }
        out.extend(labels.values().filter(|s| s.len() > 1).map(|s| format!("m={m}: one tuple, labels {s:?}")));
        out.extend(tuples.iter().filter(|(_, s)| s.len() > 1).map(|(l, _)| format!("m={m}: {l} has several tuples")));
        for k in TRIVIAL_FAMILIES.iter().filter(|k| k.exists_for(m)) {
            let got = invariant_tuple(&k.coloring(m)?)?.fingerprint();
            if trivial_fingerprint(*k, m) != Some(got) {
                out.push(format!("m={m} {k}: fingerprint table disagrees with the ring"));
            }
        }
    }
    Ok(out)
}

fn orientability(m_max: usize) -> Result<Vec<String>, Error> {
    use CanonicalClass::*;
    let mut out = Vec::new();
    for m in 3..=m_max {
        for c in dj_representatives(m)? {
            if m <= 5 && c.is_orientable() != c.is_orientable_by_gl_search() {
                out.push(format!("{c}: criteria disagree"));
            }
            if m >= 4 && !c.is_trivial() && c.is_orientable() != (c.nontrivial_stats()?.n == 0) {
                out.push(format!("{c}: orientability does not match n = 0"));
            }
            if m >= 5 && c.is_trivial() {
                if let ClassLabel::Trivial(k) = classify(&c)? {
                    if c.is_orientable() != matches!(k, C1 | C5 | C10) {
                        out.push(format!("{c} in {k}: wrong orientability"));
                    }
                }
            }
        }
    }
    Ok(out)
}
