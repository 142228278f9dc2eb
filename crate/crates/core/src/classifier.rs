//! Invariant tuples, class labels and the counting formulas.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::canonical::{CanonicalClass, TRIVIAL_FAMILIES};
use crate::cohomology::build_ring_to_degree;
use crate::coloring::{dj_representatives, Coloring};
use crate::error::Error;

/// The classifying fingerprint of a coloring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantTuple {
    pub trivial: bool,
    pub delta: usize,
    pub b_bar: (u64, u64),
    /// (n_λ, m_λ), present for nontrivial colorings with m > 3.
    pub nm: Option<(usize, usize)>,
    pub orientable: bool,
    pub k_cap_h2: usize,
}

impl InvariantTuple {
    /// The part that does not depend on the marked ceiling and floor.
    pub fn fingerprint(&self) -> Fingerprint {
        Fingerprint { delta: self.delta, b_bar: self.b_bar, orientable: self.orientable, k_cap_h2: self.k_cap_h2 }
    }
}

/// Cohomological part of an [`InvariantTuple`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub delta: usize,
    pub b_bar: (u64, u64),
    pub orientable: bool,
    pub k_cap_h2: usize,
}

pub fn invariant_tuple(c: &Coloring) -> Result<InvariantTuple, Error> {
    c.validate()?;
    let report = build_ring_to_degree(c, 2)?.invariant_report()?;
    let trivial = c.is_trivial();
    let nm = if !trivial && c.m() > 3 {
        let s = c.nontrivial_stats()?;
        Some((s.n, s.mm))
    } else {
        None
    };
    Ok(InvariantTuple {
        trivial,
        delta: report.delta,
        b_bar: report.b_bar,
        nm,
        orientable: c.is_orientable(),
        k_cap_h2: report.k_cap_h2_dim,
    })
}

/// Homeomorphism class label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassLabel {
    /// Named manifold for m = 3 or m = 4.
    SmallM(usize, &'static str),
    Trivial(CanonicalClass),
    Nontrivial(usize, usize),
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::SmallM(m, name) => write!(f, "M{m}({name})"),
            ClassLabel::Trivial(c) => write!(f, "T({c})"),
            ClassLabel::Nontrivial(n, mm) => write!(f, "NT({n},{mm})"),
        }
    }
}

impl ClassLabel {
    /// A readable coloring carrying this label.
    pub fn representative(&self, m: usize) -> Result<Coloring, Error> {
        match *self {
            ClassLabel::Trivial(c) => c.coloring(m),
            ClassLabel::Nontrivial(n, mm) => CanonicalClass::CStar(n, mm).coloring(m),
            ClassLabel::SmallM(lm, name) => small_m_inventory(lm)?
                .into_iter()
                .find(|e| e.name == name)
                .map(|e| e.class.coloring(lm))
                .unwrap_or_else(|| Err(Error::Domain(format!("no class {self} for m={m}")))),
        }
    }
}

/// Fingerprint of a trivial family at m ≥ 5, in closed form.
pub fn trivial_fingerprint(class: CanonicalClass, m: usize) -> Option<Fingerprint> {
    use CanonicalClass::*;
    if m < 5 || !class.exists_for(m) {
        return None;
    }
    let p = |k: usize| (1u64 << k) - 1;
    let fp = |delta, b_bar, orientable, k_cap_h2| Some(Fingerprint { delta, b_bar, orientable, k_cap_h2 });
    match class {
        C1 => fp(m - 1, (0, p(m - 2)), true, 0),
        C2 | C3 => fp(m - 2, (1, p(m - 2) - 1), false, 1),
        C4 => fp(m - 2, (p(m - 3), 0), false, 1),
        C5 => fp(m - 3, (p(m - 3), 0), true, 1),
        C7 | C9 => fp(m - 3, (p(m - 3), 0), false, 1),
        C6 | C8 => fp(m - 3, (p(m - 4), 0), false, 2),
        C10 => fp(m - 3, (p(m - 4), 0), true, 2),
        _ => None,
    }
}

/// One named manifold in the m = 3 or m = 4 inventory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallMEntry {
    pub name: &'static str,
    /// The canonical form the fingerprint was computed from.
    pub class: CanonicalClass,
    pub fingerprint: Fingerprint,
}

/// Fingerprints of the named manifolds, computed from canonical forms.
pub fn small_m_inventory(m: usize) -> Result<Vec<SmallMEntry>, Error> {
    use CanonicalClass::*;
    let named: &[(&'static str, CanonicalClass)] = match m {
        3 => &[("RP3#RP3", C3Prism), ("S1xRP2", C3)],
        4 => &[("T3", C1), ("S1xK", C2), ("T2-bundle", C4_2), ("K-bundle", C4_1)],
        _ => return Err(Error::Domain(format!("no named inventory for m={m}"))),
    };
    named
        .iter()
        .map(|&(name, class)| {
            let fingerprint = invariant_tuple(&class.coloring(m)?)?.fingerprint();
            Ok(SmallMEntry { name, class, fingerprint })
        })
        .collect()
}

fn classify_small(c: &Coloring, inventory: &[SmallMEntry]) -> Result<ClassLabel, Error> {
    let fp = invariant_tuple(c)?.fingerprint();
    inventory
        .iter()
        .find(|e| e.fingerprint == fp)
        .map(|e| ClassLabel::SmallM(c.m(), e.name))
        .ok_or_else(|| Error::Integrity(format!("fingerprint {fp:?} of {c} matches no known manifold")))
}

fn classify_trivial(c: &Coloring) -> Result<ClassLabel, Error> {
    let m = c.m();
    let fp = invariant_tuple(c)?.fingerprint();
    let hits: Vec<CanonicalClass> =
        TRIVIAL_FAMILIES.iter().copied().filter(|&k| trivial_fingerprint(k, m) == Some(fp)).collect();
    match hits.as_slice() {
        [k] => Ok(ClassLabel::Trivial(*k)),
        [] => Err(Error::Integrity(format!("fingerprint {fp:?} of {c} matches no trivial family"))),
        _ => Err(Error::Integrity(format!("fingerprint {fp:?} of {c} matches several families: {hits:?}"))),
    }
}

pub fn classify(c: &Coloring) -> Result<ClassLabel, Error> {
    c.validate()?;
    match c.m() {
        3 | 4 => classify_small(c, &small_m_inventory(c.m())?),
        _ if c.is_trivial() => classify_trivial(c),
        _ => {
            let s = c.nontrivial_stats()?;
            Ok(ClassLabel::Nontrivial(s.n, s.mm))
        }
    }
}

fn classify_many(reps: &[Coloring]) -> Result<Vec<ClassLabel>, Error> {
    let m = reps.first().map_or(0, Coloring::m);
    if m == 3 || m == 4 {
        let inv = small_m_inventory(m)?;
        return reps.par_iter().map(|c| classify_small(c, &inv)).collect();
    }
    reps.par_iter().map(classify).collect()
}

/// Number of distinct labels over all DJ representatives.
pub fn count_classes(m: usize) -> Result<usize, Error> {
    let reps = dj_representatives(m)?;
    Ok(classify_many(&reps)?.into_iter().collect::<BTreeSet<_>>().len())
}

/// One row of the class table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRow {
    pub label: ClassLabel,
    pub representative: Coloring,
    pub tuple: InvariantTuple,
    /// Number of DJ orbits carrying this label.
    pub orbit_count: usize,
}

/// The class table for m, in label order.
pub fn classify_all(m: usize) -> Result<Vec<ClassRow>, Error> {
    let reps = dj_representatives(m)?;
    let mut counts: BTreeMap<ClassLabel, usize> = BTreeMap::new();
    for l in classify_many(&reps)? {
        *counts.entry(l).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|(label, orbit_count)| {
            let representative = label.representative(m)?;
            let tuple = invariant_tuple(&representative)?;
            Ok(ClassRow { label, representative, tuple, orbit_count })
        })
        .collect()
}

fn half_sum(m: usize, from: usize) -> usize {
    (from..=m / 2).map(|k| k / 2 + 1).sum()
}

/// N(m), the number of homeomorphism classes.
pub fn n_formula(m: usize) -> Result<usize, Error> {
    match m {
        0..=2 => Err(Error::Domain(format!("m={m} is below 3"))),
        3 => Ok(2),
        4 => Ok(4),
        _ => {
            let (t, nt) = nt_nnt_formulas(m)?;
            Ok(t + nt)
        }
    }
}

/// (trivial, nontrivial) class counts for m > 4.
pub fn nt_nnt_formulas(m: usize) -> Result<(usize, usize), Error> {
    if m <= 4 {
        return Err(Error::Domain(format!("the trivial/nontrivial split needs m > 4, got {m}")));
    }
    Ok(if m.is_multiple_of(2) { (6, half_sum(m, 0)) } else { (4, half_sum(m, 1)) })
}

/// All (n_λ, m_λ) values that occur for m.
pub fn realizable_nm_pairs(m: usize) -> Result<BTreeSet<(usize, usize)>, Error> {
    if m <= 3 {
        return Err(Error::Domain(format!("(n, m) pairs need m > 3, got {m}")));
    }
    let lo = if m.is_multiple_of(2) { 0 } else { 1 };
    Ok((lo..=m / 2).flat_map(|n| (0..=n).step_by(2).map(move |mm| (n, mm))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use CanonicalClass::*;

    #[test]
    fn formulas() {
        let got: Vec<usize> = (3..=10).map(|m| n_formula(m).unwrap()).collect();
        assert_eq!(got, vec![2, 4, 7, 12, 9, 15, 12, 18]);
        assert_eq!(nt_nnt_formulas(5).unwrap(), (4, 3));
        assert_eq!(nt_nnt_formulas(6).unwrap(), (6, 6));
        assert!(nt_nnt_formulas(4).is_err());
        assert!(n_formula(2).is_err());
    }

    #[test]
    fn nm_pairs() {
        let s = |v: &[(usize, usize)]| v.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(realizable_nm_pairs(5).unwrap(), s(&[(1, 0), (2, 0), (2, 2)]));
        assert_eq!(realizable_nm_pairs(6).unwrap(), s(&[(0, 0), (1, 0), (2, 0), (3, 0), (2, 2), (3, 2)]));
        assert!(realizable_nm_pairs(3).is_err());
    }

    #[test]
    fn tuple_examples() {
        let t = invariant_tuple(&C3.coloring(5).unwrap()).unwrap();
        assert!(t.trivial);
        // The reference closed form says (0, 3); the ring itself gives (1, 2^{m-2} - 2).
        assert_eq!((t.delta, t.b_bar), (3, (1, 6)));
        let t = invariant_tuple(&CStar(2, 2).coloring(5).unwrap()).unwrap();
        assert_eq!((t.trivial, t.delta, t.b_bar, t.nm), (false, 1, (1, 0), Some((2, 2))));
        let a = invariant_tuple(&C5.coloring(5).unwrap()).unwrap();
        let b = invariant_tuple(&C7.coloring(5).unwrap()).unwrap();
        assert_ne!(a.orientable, b.orientable);
        assert_eq!(InvariantTuple { orientable: b.orientable, ..a }, b);
    }

    #[test]
    fn labels_display() {
        assert_eq!(ClassLabel::Nontrivial(2, 2).to_string(), "NT(2,2)");
        assert_eq!(ClassLabel::Trivial(C8).to_string(), "T(C8)");
        assert_eq!(ClassLabel::SmallM(3, "S1xRP2").to_string(), "M3(S1xRP2)");
    }

    #[test]
    fn small_inventories_are_distinct() {
        for m in [3, 4] {
            let inv = small_m_inventory(m).unwrap();
            let fps: BTreeSet<_> = inv.iter().map(|e| e.fingerprint).collect();
            assert_eq!(fps.len(), inv.len());
        }
    }

    #[test]
    fn counts_small() {
        for m in 3..=7 {
            assert_eq!(count_classes(m).unwrap(), n_formula(m).unwrap(), "m={m}");
        }
    }

    #[test]
    fn table_rows() {
        assert_eq!(classify_all(4).unwrap().len(), 4);
        let rows = classify_all(5).unwrap();
        assert_eq!(rows.len(), 7);
        let total: usize = rows.iter().map(|r| r.orbit_count).sum();
        assert_eq!(total, dj_representatives(5).unwrap().len());
        for r in &rows {
            assert_eq!(classify(&r.representative).unwrap(), r.label);
        }
    }
}
