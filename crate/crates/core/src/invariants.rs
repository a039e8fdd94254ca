//! Algebraic invariants: Smith normal form, homology, homotopy data,
//! boundary structure, and the equivalence verdict.
//!
//! The handle chain complex of a diagram is concentrated in degrees 0, k-1
//! and k: C_0 = Z, C_{k-1} = Z^a (dotted components), C_k = Z^m (framed
//! components), with the only interesting boundary map C_k -> C_{k-1} given
//! by the transpose of the linking matrix. Everything here reduces to Smith
//! normal form over Z.

use std::collections::BTreeMap;
use std::fmt;

use crate::diagram::{ComponentId, Diagram, SourceDiagram, Word};
use crate::error::{Error, Result};
use crate::moves::Certificate;
use crate::reduce::{reduce, NormalForm};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc: i64 = 0;
                for t in 0..self.cols {
                    acc = acc
                        .checked_add(self.get(r, t).checked_mul(other.get(t, c)).expect("overflow"))
                        .expect("overflow");
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn row_add(&mut self, dst: usize, src: usize, factor: i64) {
        for c in 0..self.cols {
            let v = self.get(dst, c) + factor * self.get(src, c);
            self.set(dst, c, v);
        }
    }

    fn col_add(&mut self, dst: usize, src: usize, factor: i64) {
        for r in 0..self.rows {
            let v = self.get(r, dst) + factor * self.get(r, src);
            self.set(r, dst, v);
        }
    }

    fn row_swap(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            let (x, y) = (self.get(a, c), self.get(b, c));
            self.set(a, c, y);
            self.set(b, c, x);
        }
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        for r in 0..self.rows {
            let (x, y) = (self.get(r, a), self.get(r, b));
            self.set(r, a, y);
            self.set(r, b, x);
        }
    }

    fn row_negate(&mut self, r: usize) {
        for c in 0..self.cols {
            self.set(r, c, -self.get(r, c));
        }
    }
}

/// Smith normal form D = U * M * V with U, V unimodular, D diagonal with
/// nonnegative invariant factors in a divisibility chain.
#[derive(Debug, Clone)]
pub struct SmithNormalForm {
    pub matrix: IntMatrix,
    pub invariant_factors: Vec<i64>,
    pub rank: usize,
    pub left: Option<IntMatrix>,
    pub right: Option<IntMatrix>,
}

pub fn smith_normal_form(m: &IntMatrix, with_transforms: bool) -> SmithNormalForm {
    let mut a = m.clone();
    let mut u = with_transforms.then(|| IntMatrix::identity(m.rows()));
    let mut v = with_transforms.then(|| IntMatrix::identity(m.cols()));
    let steps = m.rows().min(m.cols());

    let mut t = 0;
    while t < steps {
        let Some((pr, pc)) = pivot_position(&a, t) else {
            break;
        };
        if pr != t {
            a.row_swap(t, pr);
            if let Some(u) = u.as_mut() {
                u.row_swap(t, pr);
            }
        }
        if pc != t {
            a.col_swap(t, pc);
            if let Some(v) = v.as_mut() {
                v.col_swap(t, pc);
            }
        }
        loop {
            clear_pivot_cross(&mut a, &mut u, &mut v, t);
            // Divisibility sweep: fold any non-divisible entry into the
            // pivot row and re-clear.
            let pivot = a.get(t, t);
            let mut fixed = true;
            'scan: for r in (t + 1)..a.rows() {
                for c in (t + 1)..a.cols() {
                    if a.get(r, c) % pivot != 0 {
                        a.row_add(t, r, 1);
                        if let Some(u) = u.as_mut() {
                            u.row_add(t, r, 1);
                        }
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if a.get(t, t) < 0 {
            a.row_negate(t);
            if let Some(u) = u.as_mut() {
                u.row_negate(t);
            }
        }
        t += 1;
    }

    let rank = (0..steps).take_while(|&i| a.get(i, i) != 0).count();
    let invariant_factors = (0..rank).map(|i| a.get(i, i)).collect();
    SmithNormalForm {
        matrix: a,
        invariant_factors,
        rank,
        left: u,
        right: v,
    }
}

fn pivot_position(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in t..a.rows() {
        for c in t..a.cols() {
            let v = a.get(r, c);
            if v != 0 && best.map_or(true, |(br, bc)| v.abs() < a.get(br, bc).abs()) {
                best = Some((r, c));
            }
        }
    }
    best
}

/// Eliminate everything in the pivot's row and column. Swapping in a smaller
/// remainder as the new pivot strictly shrinks |pivot|, so this terminates.
fn clear_pivot_cross(
    a: &mut IntMatrix,
    u: &mut Option<IntMatrix>,
    v: &mut Option<IntMatrix>,
    t: usize,
) {
    loop {
        let mut dirty = false;
        for r in (t + 1)..a.rows() {
            let val = a.get(r, t);
            if val == 0 {
                continue;
            }
            let q = val / a.get(t, t);
            if q != 0 {
                a.row_add(r, t, -q);
                if let Some(u) = u.as_mut() {
                    u.row_add(r, t, -q);
                }
            }
            if a.get(r, t) != 0 {
                a.row_swap(t, r);
                if let Some(u) = u.as_mut() {
                    u.row_swap(t, r);
                }
                dirty = true;
            }
        }
        for c in (t + 1)..a.cols() {
            let val = a.get(t, c);
            if val == 0 {
                continue;
            }
            let q = val / a.get(t, t);
            if q != 0 {
                a.col_add(c, t, -q);
                if let Some(v) = v.as_mut() {
                    v.col_add(c, t, -q);
                }
            }
            if a.get(t, c) != 0 {
                a.col_swap(t, c);
                if let Some(v) = v.as_mut() {
                    v.col_swap(t, c);
                }
                dirty = true;
            }
        }
        let col_clear = ((t + 1)..a.rows()).all(|r| a.get(r, t) == 0);
        let row_clear = ((t + 1)..a.cols()).all(|c| a.get(t, c) == 0);
        if !dirty && col_clear && row_clear {
            return;
        }
    }
}

/// Finitely generated abelian group Z^rank + sum of Z/d_i with d_i >= 2 in a
/// divisibility chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    rank: usize,
    torsion: Vec<i64>,
}

impl AbelianGroup {
    pub fn trivial() -> AbelianGroup {
        AbelianGroup {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> AbelianGroup {
        AbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: i64) -> AbelianGroup {
        match order.abs() {
            0 => AbelianGroup::free(1),
            1 => AbelianGroup::trivial(),
            d => AbelianGroup {
                rank: 0,
                torsion: vec![d],
            },
        }
    }

    /// Z^rows modulo the column span of `m`.
    pub fn cokernel(m: &IntMatrix) -> AbelianGroup {
        let snf = smith_normal_form(m, false);
        AbelianGroup {
            rank: m.rows() - snf.rank,
            torsion: snf
                .invariant_factors
                .iter()
                .copied()
                .filter(|&d| d > 1)
                .collect(),
        }
    }

    /// Kernel of `m` as a subgroup of Z^cols (always free).
    pub fn kernel(m: &IntMatrix) -> AbelianGroup {
        let snf = smith_normal_form(m, false);
        AbelianGroup::free(m.cols() - snf.rank)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        f.write_str(&parts.join("+"))
    }
}

/// The boundary map C_k -> C_{k-1}: transpose of the linking matrix. Built
/// entrywise so that zero-component diagrams keep their shape.
pub fn boundary_matrix(d: &Diagram) -> IntMatrix {
    let mut del = IntMatrix::zeros(d.dotted().len(), d.framed().len());
    for (j, f) in d.framed().iter().enumerate() {
        for (i, dot) in d.dotted().iter().enumerate() {
            del.set(i, j, f.word.exponent_sum(dot));
        }
    }
    del
}

/// Homology of the handlebody in the only degrees where it can be nonzero:
/// H_0 = Z, H_{k-1} = coker of the boundary map, H_k = its kernel. All other
/// degrees vanish and are omitted.
pub fn homology(d: &Diagram) -> BTreeMap<u32, AbelianGroup> {
    let k = d.dim().k();
    let del = boundary_matrix(d);
    let mut h = BTreeMap::new();
    h.insert(0, AbelianGroup::free(1));
    h.insert(k - 1, AbelianGroup::cokernel(&del));
    h.insert(k, AbelianGroup::kernel(&del));
    h
}

/// pi_{k-1} of the handlebody. For k >= 3 the handlebody is simply connected
/// and pi_{k-1} agrees with H_{k-1} by the Hurewicz map; for k = 2 the group
/// is nonabelian in general and only the presentation is available.
pub fn pi_km1(d: &Diagram) -> Result<AbelianGroup> {
    if d.dim().k() < 3 {
        return Err(Error::RequiresK3(d.dim().k()));
    }
    Ok(AbelianGroup::cokernel(&boundary_matrix(d)))
}

/// Presentation of pi_1 for a k = 2 diagram: dotted components generate,
/// framed words are the relators. Simplification is limited to the free and
/// cyclic reduction already stored plus dropping empty relators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<ComponentId>,
    pub relators: Vec<Word>,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self
            .generators
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        let rels = self
            .relators
            .iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        write!(f, "<{gens} | {rels}>")
    }
}

impl Presentation {
    /// Cokernel of the exponent matrix: the abelianization of the presented
    /// group. Computed from the relators, independently of `homology`.
    pub fn abelianization(&self) -> AbelianGroup {
        let rows: Vec<Vec<i64>> = self
            .generators
            .iter()
            .map(|g| self.relators.iter().map(|w| w.exponent_sum(g)).collect())
            .collect();
        let m = if self.generators.is_empty() {
            IntMatrix::zeros(0, self.relators.len())
        } else {
            IntMatrix::from_rows(&rows)
        };
        AbelianGroup::cokernel(&m)
    }
}

pub fn pi_1_presentation(d: &Diagram) -> Result<Presentation> {
    if d.dim().k() != 2 {
        return Err(Error::RequiresK2(d.dim().k()));
    }
    Ok(Presentation {
        generators: d.dotted().to_vec(),
        relators: d
            .framed()
            .iter()
            .map(|f| f.word.clone())
            .filter(|w| !w.is_empty())
            .collect(),
    })
}

/// Homology of an arbitrary finite chain complex of free Z-modules.
/// `boundaries[d]` is the map C_{d+1} -> C_d (rows = rank C_d, cols =
/// rank C_{d+1}); the complex has top degree boundaries.len().
pub fn chain_homology(boundaries: &[IntMatrix]) -> Result<BTreeMap<usize, AbelianGroup>> {
    if boundaries.is_empty() {
        return Ok(BTreeMap::new());
    }
    for d in 0..boundaries.len() - 1 {
        if boundaries[d].cols() != boundaries[d + 1].rows() {
            return Err(Error::NotAComplex(format!(
                "boundary shapes disagree between degrees {} and {}",
                d + 1,
                d + 2
            )));
        }
        if !boundaries[d].mul(&boundaries[d + 1]).is_zero() {
            return Err(Error::NotAComplex(format!(
                "composite of boundaries {} and {} is nonzero",
                d + 2,
                d + 1
            )));
        }
    }
    let top = boundaries.len();
    let rank_c = |deg: usize| -> usize {
        if deg < top {
            boundaries[deg].rows()
        } else {
            boundaries[top - 1].cols()
        }
    };
    let snfs: Vec<SmithNormalForm> = boundaries
        .iter()
        .map(|b| smith_normal_form(b, false))
        .collect();
    let rank_d = |deg: usize| -> usize {
        // rank of the boundary map leaving degree `deg`
        if deg == 0 || deg > top {
            0
        } else {
            snfs[deg - 1].rank
        }
    };
    let mut h = BTreeMap::new();
    for deg in 0..=top {
        let free = rank_c(deg) - rank_d(deg) - rank_d(deg + 1);
        let torsion: Vec<i64> = if deg < top {
            snfs[deg]
                .invariant_factors
                .iter()
                .copied()
                .filter(|&x| x > 1)
                .collect()
        } else {
            Vec::new()
        };
        h.insert(
            deg,
            AbelianGroup {
                rank: free,
                torsion,
            },
        );
    }
    Ok(h)
}

/// The handle chain complex of a diagram, for cross-checking `homology`
/// through the generic `chain_homology` path.
pub fn handle_complex(d: &Diagram) -> Vec<IntMatrix> {
    let k = d.dim().k() as usize;
    let a = d.dotted().len();
    let m = d.framed().len();
    let rank = |deg: usize| -> usize {
        if deg == 0 {
            1
        } else if deg == k - 1 {
            a
        } else if deg == k {
            m
        } else {
            0
        }
    };
    let mut out = Vec::new();
    for deg in 1..=k {
        if deg == k {
            out.push(boundary_matrix(d));
        } else {
            out.push(IntMatrix::zeros(rank(deg - 1), rank(deg)));
        }
    }
    out
}

/// Structure of the boundary (n-1)-manifold.
#[derive(Debug, Clone)]
pub struct BoundaryDescription {
    /// The boundary is the double of this (n-1)-dimensional handlebody,
    /// when n-1 is still in the stable range for k.
    pub double_of: Option<Diagram>,
    /// Whether the boundary carries an open book (n >= 2k + 2).
    pub has_open_book: bool,
    /// Page of the open book as an (n-2)-dimensional diagram, when in range.
    pub open_book_page: Option<Diagram>,
    /// The diagram reduces to the empty diagram, so the boundary is S^{n-1}.
    pub reduces_to_ball: bool,
    pub text: Vec<String>,
}

pub fn boundary_description(d: &Diagram) -> BoundaryDescription {
    let n = d.dim().n();
    let k = d.dim().k();
    let double_of = d.transport(n - 1).ok();
    let has_open_book = n >= 2 * k + 2;
    let open_book_page = if has_open_book {
        d.transport(n - 2).ok()
    } else {
        None
    };
    let (nf, _) = reduce(d);
    let reduces_to_ball = matches!(nf, NormalForm::Simple { m: 0, .. });

    let mut text = Vec::new();
    let mut line = format!(
        "boundary is the double of an ({})-dimensional handlebody",
        n - 1
    );
    if double_of.is_some() {
        line.push_str(" (same diagram transported down one dimension)");
    } else {
        line.push_str(" (below the stable range for a diagram)");
    }
    text.push(line);
    if has_open_book {
        let mut line = format!(
            "boundary is an open book with page an ({})-dimensional handlebody and trivial monodromy",
            n - 2
        );
        if open_book_page.is_some() {
            line.push_str(" (page diagram transported down two dimensions)");
        } else {
            line.push_str(" (page below the stable range for a diagram)");
        }
        text.push(line);
    }
    if reduces_to_ball {
        text.push(format!(
            "diagram reduces to B^{n}, so the boundary is S^{}",
            n - 1
        ));
    }
    BoundaryDescription {
        double_of,
        has_open_book,
        open_book_page,
        reduces_to_ball,
        text,
    }
}

/// Weak equivalence of source-4d diagrams: same component structure, words
/// equal as classes, framings congruent mod 2.
pub fn weak_equiv(a: &SourceDiagram, b: &SourceDiagram) -> Result<bool> {
    if a.dotted().len() != b.dotted().len() || a.framed().len() != b.framed().len() {
        return Err(Error::StructureMismatch(format!(
            "component counts differ: {}+{} vs {}+{}",
            a.dotted().len(),
            a.framed().len(),
            b.dotted().len(),
            b.framed().len()
        )));
    }
    Ok(a.weak_canonical_key() == b.weak_canonical_key())
}

/// Outcome of comparing two diagrams.
#[derive(Debug, Clone)]
pub enum Verdict {
    /// Both reduce to the same canonical form; the certificates replay each
    /// input to it.
    Diffeomorphic {
        normal_form: NormalForm,
        left: Certificate,
        right: Certificate,
    },
    /// A computable invariant differs; the manifolds are not diffeomorphic.
    Distinguished {
        invariant: String,
        left: String,
        right: String,
    },
    /// Normal forms differ but no computed invariant separates them. Normal
    /// forms carry no uniqueness claim, so nothing stronger can be said.
    Unknown {
        left: NormalForm,
        right: NormalForm,
        left_pi1: Option<Presentation>,
        right_pi1: Option<Presentation>,
    },
}

pub fn equivalent(a: &Diagram, b: &Diagram) -> Result<Verdict> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch);
    }
    let (nf_a, cert_a) = reduce(a);
    let (nf_b, cert_b) = reduce(b);
    if nf_a == nf_b {
        return Ok(Verdict::Diffeomorphic {
            normal_form: nf_a,
            left: cert_a,
            right: cert_b,
        });
    }
    let h_a = homology(a);
    let h_b = homology(b);
    for (deg, ga) in &h_a {
        let gb = &h_b[deg];
        if ga != gb {
            return Ok(Verdict::Distinguished {
                invariant: format!("H_{deg}"),
                left: ga.to_string(),
                right: gb.to_string(),
            });
        }
    }
    let (left_pi1, right_pi1) = if a.dim().k() == 2 {
        (Some(pi_1_presentation(a)?), Some(pi_1_presentation(b)?))
    } else {
        (None, None)
    };
    Ok(Verdict::Unknown {
        left: nf_a,
        right: nf_b,
        left_pi1,
        right_pi1,
    })
}
