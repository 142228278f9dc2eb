//! Mod-2 cohomology of the small cover M(λ) as the graded quotient
//! Z₂[F₁,…,F_ℓ]/(I + J_λ), with the square-zero invariants Δ, B̄ and dim(K∩H²).

use crate::coloring::Coloring;
use crate::error::Error;
use crate::gf2::{build_quotient, kernel_basis, Gf2Matrix, Gf2Vec, QuotientSpace, RowEchelon};
use crate::prism::PrismCombinatorics;

/// Largest dim K/(K∩H²) for which functionals are enumerated.
pub const MAX_FUNCTIONAL_DIM: usize = 24;

/// Monomials of one degree as sorted facet-index tuples, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    degree: usize,
    monomials: Vec<Vec<usize>>,
}

impl MonomialBasis {
    pub fn new(facets: usize, degree: usize) -> Self {
        fn rec(start: usize, facets: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for a in start..facets {
                cur.push(a);
                rec(a, facets, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut monomials = Vec::new();
        rec(0, facets, degree, &mut Vec::with_capacity(degree), &mut monomials);
        MonomialBasis { degree, monomials }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Vec<usize>] {
        &self.monomials
    }

    /// Position of a sorted monomial.
    pub fn index_of(&self, mono: &[usize]) -> usize {
        debug_assert_eq!(mono.len(), self.degree);
        self.monomials
            .binary_search_by(|probe| probe.as_slice().cmp(mono))
            .expect("monomial of the right degree over the right facets")
    }

    fn product_index(&self, a: &[usize], b: &[usize]) -> usize {
        let mut mono: Vec<usize> = a.iter().chain(b).copied().collect();
        mono.sort_unstable();
        self.index_of(&mono)
    }
}

/// Relations spanning (I + J_λ) in degree `d`, or I alone when `linear_forms` is empty.
fn relations(p: &PrismCombinatorics, linear_forms: &[Vec<usize>], basis: &[MonomialBasis], d: usize) -> Vec<Gf2Vec> {
    let target = &basis[d];
    let mut rels = Vec::new();
    for gen in p.minimal_non_faces() {
        if gen.len() <= d {
            for mono in basis[d - gen.len()].monomials() {
                rels.push(Gf2Vec::unit(target.len(), target.product_index(&gen, mono)));
            }
        }
    }
    if d >= 1 {
        for form in linear_forms {
            for mono in basis[d - 1].monomials() {
                let mut v = Gf2Vec::zeros(target.len());
                for &j in form {
                    v.flip(target.product_index(&[j], mono));
                }
                rels.push(v);
            }
        }
    }
    rels
}

fn monomial_bases(facets: usize, top: usize) -> Vec<MonomialBasis> {
    (0..=top).map(|d| MonomialBasis::new(facets, d)).collect()
}

/// The three linear forms λ_t = Σ_j λ_tj F_j as facet-index supports.
fn linear_forms(c: &Coloring) -> Vec<Vec<usize>> {
    let colors = c.facet_colors();
    (0..3).map(|t| (0..colors.len()).filter(|&j| colors[j] >> t & 1 == 1).collect()).collect()
}

/// H*(M(λ); Z₂) in degrees 0 to `top_degree` (at most 3).
#[derive(Clone, Debug)]
pub struct CohomologyRing {
    m: usize,
    top_degree: usize,
    bases: Vec<MonomialBasis>,
    quotients: Vec<QuotientSpace>,
    /// `mul11[i][j]`: product of degree-1 basis classes i and j, in degree-2 coordinates.
    mul11: Vec<Vec<Gf2Vec>>,
    /// `mul12[i][j]`: degree-1 class i times degree-2 class j, in degree-3 coordinates.
    mul12: Vec<Vec<Gf2Vec>>,
}

/// Builds the ring through degree 3.
pub fn build_ring(c: &Coloring) -> Result<CohomologyRing, Error> {
    build_ring_to_degree(c, 3)
}

/// Builds the ring through `top_degree` ∈ {1, 2, 3}.
pub fn build_ring_to_degree(c: &Coloring, top_degree: usize) -> Result<CohomologyRing, Error> {
    c.validate()?;
    if !(1..=3).contains(&top_degree) {
        return Err(Error::Unsupported(format!("ring degree {top_degree} (supported: 1 to 3)")));
    }
    let p = PrismCombinatorics::build(c.m())?;
    let forms = linear_forms(c);
    let bases = monomial_bases(p.facet_count(), top_degree);
    let mut quotients = Vec::with_capacity(top_degree + 1);
    for d in 0..=top_degree {
        quotients.push(build_quotient(bases[d].len(), &relations(&p, &forms, &bases, d))?);
    }
    let mul = |da: usize, db: usize| -> Vec<Vec<Gf2Vec>> {
        let (qa, qb, qt) = (&quotients[da], &quotients[db], &quotients[da + db]);
        qa.basis_columns()
            .iter()
            .map(|&ia| {
                qb.basis_columns()
                    .iter()
                    .map(|&ib| {
                        let idx = bases[da + db].product_index(&bases[da].monomials()[ia], &bases[db].monomials()[ib]);
                        qt.project_unit(idx)
                    })
                    .collect()
            })
            .collect()
    };
    let mul11 = if top_degree >= 2 { mul(1, 1) } else { Vec::new() };
    let mul12 = if top_degree >= 3 { mul(1, 2) } else { Vec::new() };
    Ok(CohomologyRing { m: c.m(), top_degree, bases, quotients, mul11, mul12 })
}

fn bilinear(table: &[Vec<Gf2Vec>], out_dim: usize, x: &Gf2Vec, y: &Gf2Vec) -> Gf2Vec {
    let mut out = Gf2Vec::zeros(out_dim);
    for i in x.support() {
        for j in y.support() {
            out.add_assign(&table[i][j]);
        }
    }
    out
}

impl CohomologyRing {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn top_degree(&self) -> usize {
        self.top_degree
    }

    pub fn dim(&self, d: usize) -> usize {
        self.quotients.get(d).map_or(0, |q| q.quotient_dim())
    }

    /// Graded dimensions in degrees 0 to 3 (unbuilt degrees report 0).
    pub fn betti(&self) -> [usize; 4] {
        [self.dim(0), self.dim(1), self.dim(2), self.dim(3)]
    }

    pub fn quotient(&self, d: usize) -> &QuotientSpace {
        &self.quotients[d]
    }

    pub fn monomials(&self, d: usize) -> &MonomialBasis {
        &self.bases[d]
    }

    /// Quotient coordinates of the generator of facet `facet` (0 = c, 1 = f, 1+i = s_i).
    pub fn facet_class(&self, facet: usize) -> Gf2Vec {
        self.quotients[1].project_unit(facet)
    }

    /// Product of two degree-1 classes.
    pub fn mul11(&self, x: &Gf2Vec, y: &Gf2Vec) -> Gf2Vec {
        assert!(self.top_degree >= 2, "degree 2 not built");
        bilinear(&self.mul11, self.dim(2), x, y)
    }

    /// Product of a degree-1 class and a degree-2 class.
    pub fn mul12(&self, x: &Gf2Vec, y: &Gf2Vec) -> Gf2Vec {
        assert!(self.top_degree >= 3, "degree 3 not built");
        bilinear(&self.mul12, self.dim(3), x, y)
    }

    /// The matrix of x ↦ x² from degree 1 to degree 2 (linear in characteristic 2).
    pub fn squaring_map(&self) -> Gf2Matrix {
        let cols: Vec<Gf2Vec> = (0..self.dim(1)).map(|i| self.mul11[i][i].clone()).collect();
        Gf2Matrix::from_columns(self.dim(2), &cols).expect("square columns live in degree 2")
    }

    /// Matrix of y ↦ y·z from degree 1 to degree 2.
    pub fn multiplication_map(&self, z: &Gf2Vec) -> Gf2Matrix {
        let n1 = self.dim(1);
        let cols: Vec<Gf2Vec> = (0..n1).map(|i| self.mul11(&Gf2Vec::unit(n1, i), z)).collect();
        Gf2Matrix::from_columns(self.dim(2), &cols).expect("products live in degree 2")
    }

    /// Basis of ℋ¹ = {x : x² = 0}.
    pub fn square_zero_basis(&self) -> Vec<Gf2Vec> {
        kernel_basis(&self.squaring_map())
    }

    /// ℋ² = {x² : x ∈ H¹}.
    pub fn squares(&self) -> RowEchelon {
        self.squaring_map().transpose().echelon()
    }

    /// 𝒦 = span{x·y : x ∈ H¹, y ∈ ℋ¹}.
    pub fn k_space(&self) -> RowEchelon {
        let h1 = self.square_zero_basis();
        let n1 = self.dim(1);
        let mut k = RowEchelon::empty(self.dim(2));
        for i in 0..n1 {
            for v in &h1 {
                k.insert(&self.mul11(&Gf2Vec::unit(n1, i), v));
            }
        }
        k
    }

    pub fn k_cap_h2_dim(&self) -> usize {
        self.k_space().intersection_dim(&self.squares())
    }

    pub fn invariant_report(&self) -> Result<InvariantReport, Error> {
        invariant_report(self)
    }
}

/// Δ, ℋ¹, the dimensions around 𝒦 and the rank histogram of θ∘ω.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub delta: usize,
    pub h1_basis: Vec<Gf2Vec>,
    pub h2_dim: usize,
    pub k_dim: usize,
    pub k_mod_h2_dim: usize,
    pub k_cap_h2_dim: usize,
    /// `b_histogram[r]` counts functionals θ with rank θ∘ω = r, for r in 0..=Δ.
    pub b_histogram: Vec<u64>,
    pub b_bar: (u64, u64),
}

fn rank_of_rows(rows: &[u64]) -> usize {
    let mut by_top = [0u64; 64];
    let mut rank = 0;
    for &r in rows {
        let mut x = r;
        while x != 0 {
            let top = 63 - x.leading_zeros() as usize;
            if by_top[top] == 0 {
                by_top[top] = x;
                rank += 1;
                break;
            }
            x ^= by_top[top];
        }
    }
    rank
}

pub fn invariant_report(r: &CohomologyRing) -> Result<InvariantReport, Error> {
    if r.top_degree < 2 {
        return Err(Error::Precondition("invariants need the ring through degree 2".into()));
    }
    let n1 = r.dim(1);
    let n2 = r.dim(2);
    let h1 = r.square_zero_basis();
    let delta = h1.len();
    let h2 = r.squares();
    let products: Vec<Vec<Gf2Vec>> =
        (0..n1).map(|i| h1.iter().map(|v| r.mul11(&Gf2Vec::unit(n1, i), v)).collect()).collect();
    let mut k = RowEchelon::empty(n2);
    for p in products.iter().flatten() {
        k.insert(p);
    }
    let k_cap_h2_dim = k.intersection_dim(&h2);
    let k_mod_h2_dim = k.rank() - k_cap_h2_dim;
    if k_mod_h2_dim > MAX_FUNCTIONAL_DIM {
        return Err(Error::Unsupported(format!(
            "dim K/(K∩H²) = {k_mod_h2_dim} exceeds the functional enumeration limit {MAX_FUNCTIONAL_DIM}"
        )));
    }
    // Coordinates of each product in a basis of (K + H²)/H² ≅ K/(K∩H²).
    let mod_h2 = build_quotient(n2, h2.basis())?;
    let projected: Vec<Vec<Gf2Vec>> =
        products.iter().map(|row| row.iter().map(|p| mod_h2.project(p)).collect()).collect();
    let mut image = RowEchelon::empty(mod_h2.quotient_dim());
    for p in projected.iter().flatten() {
        image.insert(p);
    }
    debug_assert_eq!(image.rank(), k_mod_h2_dim);
    let coords: Vec<Vec<u32>> = projected
        .iter()
        .map(|row| {
            row.iter()
                .map(|p| {
                    let c = image.coordinates(p).expect("product lies in K");
                    c.support().iter().fold(0u32, |acc, &b| acc | 1 << b)
                })
                .collect()
        })
        .collect();
    let mut hist = vec![0u64; delta + 1];
    let mut rows = vec![0u64; n1];
    for theta in 0u32..(1u32 << k_mod_h2_dim) {
        for (row, cs) in rows.iter_mut().zip(&coords) {
            *row = cs.iter().enumerate().fold(0u64, |acc, (j, &c)| acc | (((theta & c).count_ones() as u64 & 1) << j));
        }
        hist[rank_of_rows(&rows)] += 1;
    }
    let b1 = hist.get(1).copied().unwrap_or(0);
    let b2 = hist.get(2).copied().unwrap_or(0);
    Ok(InvariantReport {
        delta,
        h1_basis: h1,
        h2_dim: h2.rank(),
        k_dim: k.rank(),
        k_mod_h2_dim,
        k_cap_h2_dim,
        b_histogram: hist,
        b_bar: (b1, b2),
    })
}

/// Dimension of the degree-`d` piece of the face ring Z₂(P³(m)) = Z₂[F]/I.
pub fn face_ring_hilbert(p: &PrismCombinatorics, d: usize) -> Result<usize, Error> {
    if d > 3 {
        return Err(Error::Unsupported(format!("face ring degree {d} (supported: 0 to 3)")));
    }
    let bases = monomial_bases(p.facet_count(), d);
    let q = build_quotient(bases[d].len(), &relations(p, &[], &bases, d))?;
    Ok(q.quotient_dim())
}
