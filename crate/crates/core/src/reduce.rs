//! Reduction to normal forms and recognition of standard manifolds.
//!
//! Every reducer works by applying moves to the diagram and recording them,
//! so the returned certificate replays the input diagram to the normal form
//! exactly; nothing is rewritten behind the calculus' back. Framing signs are
//! normalized through an auxiliary cancelling pair (create, three slides,
//! cancel), which realizes (word, framing) -> (word^-1, -framing) on a single
//! component purely by moves.
//!
//! For k >= 3 the words are abelian and `reduce_general` realizes the Smith
//! normal form of the linking matrix: framed slides are row operations,
//! dotted slides are column operations, and unit diagonal entries cancel.
//! For k = 2 only a best-effort simplification is sound: cancellations plus
//! greedy framed slides that strictly shrink (total word length, total
//! framing magnitude), with a bounded number of candidate slides per step.

use std::fmt;

use crate::diagram::{ComponentId, Diagram, Letter, Sign};
use crate::error::{Error, Result};
use crate::framing::{DimSpec, Framing, FramingGroup};
use crate::moves::{apply_move, Certificate, Move};

/// Candidate slides examined per greedy step at k = 2.
pub const DEFAULT_SLIDE_BUDGET: usize = 64;

/// Normal forms of the reduction.
#[derive(Debug, Clone, PartialEq)]
pub enum NormalForm {
    /// No dotted components, framings (t, 0, ..., 0) with t canonical.
    Simple { m: usize, t: Framing },
    /// One dotted component; one framed passing p >= 2 times with framing a
    /// (or none when p = 0), the rest unlinked with framings (b, 0, ..., 0).
    /// p = 1 never occurs: the pair cancels into a simple family. p = 0
    /// forces b = 0 and folds every framing into a.
    Dotted {
        p: i64,
        a: Framing,
        b: Framing,
        m: usize,
    },
    /// Anything else: for k >= 3 a diagram with diagonal linking matrix,
    /// nonnegative diagonal in a divisibility chain and units cancelled; for
    /// k = 2 a local minimum of the greedy simplifier.
    General { diagram: Diagram },
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalForm::Simple { m, t } => write!(f, "K(t={t},m={m})"),
            NormalForm::Dotted { p, a, b, m } => write!(f, "K(p={p},a={a},b={b},m={m})"),
            NormalForm::General { diagram } => write!(
                f,
                "general(dotted={},framed={})",
                diagram.dotted().len(),
                diagram.framed().len()
            ),
        }
    }
}

/// Applies moves to a working diagram while recording the certificate.
struct Recorder {
    d: Diagram,
    cert: Certificate,
    fresh: usize,
}

impl Recorder {
    fn new(d: &Diagram) -> Recorder {
        Recorder {
            d: d.clone(),
            cert: Certificate::default(),
            fresh: 0,
        }
    }

    fn mv(&mut self, m: Move) {
        self.d = apply_move(&self.d, &m).expect("reducer emits only valid moves");
        self.cert.push(m);
    }

    fn slide_framed(&mut self, i: &ComponentId, j: &ComponentId, sign: Sign) {
        self.mv(Move::SlideFramed {
            i: i.clone(),
            j: j.clone(),
            sign,
            conjugator: Vec::new(),
        });
    }

    fn slide_framed_times(&mut self, i: &ComponentId, j: &ComponentId, sign: Sign, times: u64) {
        for _ in 0..times {
            self.slide_framed(i, j, sign);
        }
    }

    fn slide_dotted(&mut self, a: &ComponentId, b: &ComponentId, sign: Sign) {
        self.mv(Move::SlideDotted {
            a: a.clone(),
            b: b.clone(),
            sign,
        });
    }

    fn slide_dotted_times(&mut self, a: &ComponentId, b: &ComponentId, sign: Sign, times: u64) {
        for _ in 0..times {
            self.slide_dotted(a, b, sign);
        }
    }

    fn cancel(&mut self, e: &ComponentId, f: &ComponentId) {
        self.mv(Move::CancelPair {
            e: e.clone(),
            f: f.clone(),
        });
    }

    fn create(&mut self) -> (ComponentId, ComponentId) {
        loop {
            let e = format!("aux{}", self.fresh);
            let f = format!("auxf{}", self.fresh);
            self.fresh += 1;
            if !self.d.has_id(&e) && !self.d.has_id(&f) {
                let e = ComponentId::new(&e).unwrap();
                let f = ComponentId::new(&f).unwrap();
                self.mv(Move::CreatePair {
                    e: e.clone(),
                    f: f.clone(),
                });
                return (e, f);
            }
        }
    }

    /// (word, framing) -> (word^-1, -framing) on `target`, realized by an
    /// auxiliary pair; returns the id now carrying the negated component.
    /// Sound whenever words are abelian (k >= 3) or involve at most one
    /// generator (the simple and one-dotted contexts at k = 2).
    fn negate_framed(&mut self, target: &ComponentId) -> ComponentId {
        let (e, f) = self.create();
        self.slide_framed(&f, target, Sign::Minus);
        self.slide_framed(target, &f, Sign::Plus);
        self.slide_framed(&f, target, Sign::Minus);
        self.cancel(&e, target);
        f
    }

    fn framing_of(&self, id: &ComponentId) -> Framing {
        let idx = self.d.framed_index(id).expect("known framed component");
        self.d.framed()[idx].framing
    }

    fn framed_ids(&self) -> Vec<ComponentId> {
        self.d.framed().iter().map(|f| f.id.clone()).collect()
    }
}

/// Concentrate the framings of `ids` into a single canonical value by slides
/// within the family and return it. All words in `ids` must be empty, so the
/// slides only touch framings.
fn fold_framings(rec: &mut Recorder, mut ids: Vec<ComponentId>) -> Framing {
    let group = rec.d.framing_group();
    match group {
        FramingGroup::Trivial => group.zero(),
        FramingGroup::Z2 => {
            let ones: Vec<ComponentId> = ids
                .iter()
                .filter(|id| !rec.framing_of(id).is_zero())
                .cloned()
                .collect();
            for extra in ones.iter().skip(1) {
                rec.slide_framed(extra, &ones[0], Sign::Plus);
            }
            if ones.is_empty() {
                group.zero()
            } else {
                group.normalize(1)
            }
        }
        FramingGroup::Z => loop {
            let nonzero: Vec<(ComponentId, i64)> = ids
                .iter()
                .map(|id| (id.clone(), rec.framing_of(id).value()))
                .filter(|(_, v)| *v != 0)
                .collect();
            match nonzero.len() {
                0 => return group.zero(),
                1 => {
                    let (c, v) = nonzero[0].clone();
                    if v > 0 {
                        return group.normalize(v);
                    }
                    if let Some(z) = ids.iter().find(|id| **id != c).cloned() {
                        // Transfer with negation through a zero component.
                        rec.slide_framed(&z, &c, Sign::Minus);
                        rec.slide_framed(&c, &z, Sign::Plus);
                    } else {
                        let new_id = rec.negate_framed(&c);
                        ids = vec![new_id];
                    }
                }
                _ => {
                    let (pivot, pv) = nonzero
                        .iter()
                        .min_by_key(|(_, v)| v.abs())
                        .cloned()
                        .unwrap();
                    for (other, ov) in &nonzero {
                        if *other == pivot {
                            continue;
                        }
                        let q = ov / pv;
                        let sign = if q > 0 { Sign::Minus } else { Sign::Plus };
                        rec.slide_framed_times(other, &pivot, sign, q.unsigned_abs());
                    }
                }
            }
        },
    }
}

fn simple_core(rec: &mut Recorder) -> NormalForm {
    let ids = rec.framed_ids();
    let t = fold_framings(rec, ids);
    NormalForm::Simple {
        m: rec.d.framed().len(),
        t,
    }
}

fn one_dotted_core(rec: &mut Recorder) -> NormalForm {
    let x = rec.d.dotted()[0].clone();
    loop {
        let passes: Vec<(ComponentId, i64)> = rec
            .d
            .framed()
            .iter()
            .map(|f| (f.id.clone(), f.word.exponent_sum(&x)))
            .collect();
        let nonzero: Vec<(ComponentId, i64)> =
            passes.iter().filter(|(_, p)| *p != 0).cloned().collect();
        match nonzero.len() {
            0 => {
                // No component links the dotted sphere: fold every framing
                // into a single value a; b degenerates to 0.
                let ids = rec.framed_ids();
                let a = fold_framings(rec, ids);
                return NormalForm::Dotted {
                    p: 0,
                    a,
                    b: rec.d.framing_group().zero(),
                    m: rec.d.framed().len(),
                };
            }
            1 => {
                let (c, p) = nonzero[0].clone();
                if p < 0 {
                    if let Some((z, _)) = passes.iter().find(|(id, _)| *id != c) {
                        let z = z.clone();
                        rec.slide_framed(&z, &c, Sign::Minus);
                        rec.slide_framed(&c, &z, Sign::Plus);
                    } else {
                        rec.negate_framed(&c);
                    }
                    continue;
                }
                if p == 1 {
                    rec.cancel(&x, &c);
                    return simple_core(rec);
                }
                let others: Vec<ComponentId> = passes
                    .iter()
                    .filter(|(id, _)| *id != c)
                    .map(|(id, _)| id.clone())
                    .collect();
                let b = if others.is_empty() {
                    rec.d.framing_group().zero()
                } else {
                    fold_framings(rec, others)
                };
                return NormalForm::Dotted {
                    p,
                    a: rec.framing_of(&c),
                    b,
                    m: rec.d.framed().len(),
                };
            }
            _ => {
                // One Euclid sweep on the pass counts; framings ride along.
                let (pivot, pv) = nonzero
                    .iter()
                    .min_by_key(|(_, p)| p.abs())
                    .cloned()
                    .unwrap();
                for (other, ov) in &nonzero {
                    if *other == pivot {
                        continue;
                    }
                    let q = ov / pv;
                    let sign = if q > 0 { Sign::Minus } else { Sign::Plus };
                    rec.slide_framed_times(other, &pivot, sign, q.unsigned_abs());
                }
            }
        }
    }
}

/// Snapshot of the linking data by component id.
struct Snapshot {
    framed: Vec<ComponentId>,
    dotted: Vec<ComponentId>,
    entries: Vec<Vec<i64>>,
}

fn snapshot(d: &Diagram) -> Snapshot {
    let m = d.linking_matrix();
    Snapshot {
        framed: m.framed,
        dotted: m.dotted,
        entries: m.entries,
    }
}

fn general_core_k3(rec: &mut Recorder) -> NormalForm {
    loop {
        let s = snapshot(&rec.d);
        let rows = s.entries.len();
        let cols = s.dotted.len();
        let row_count = |r: usize| s.entries[r].iter().filter(|v| **v != 0).count();
        let col_count = |c: usize| (0..rows).filter(|&r| s.entries[r][c] != 0).count();

        // 1. Reduce a conflict: a nonzero entry sharing its row or column
        // with another nonzero. Pivot on the smallest magnitude.
        let mut pivot: Option<(usize, usize, i64)> = None;
        for r in 0..rows {
            for c in 0..cols {
                let v = s.entries[r][c];
                if v != 0
                    && (row_count(r) > 1 || col_count(c) > 1)
                    && pivot.map_or(true, |(_, _, pv)| v.abs() < pv.abs())
                {
                    pivot = Some((r, c, v));
                }
            }
        }
        if let Some((r, c, v)) = pivot {
            if let Some(r2) = (0..rows).find(|&r2| r2 != r && s.entries[r2][c] != 0) {
                let q = s.entries[r2][c] / v;
                let sign = if q > 0 { Sign::Minus } else { Sign::Plus };
                rec.slide_framed_times(&s.framed[r2], &s.framed[r], sign, q.unsigned_abs());
            } else {
                let c2 = (0..cols)
                    .find(|&c2| c2 != c && s.entries[r][c2] != 0)
                    .expect("conflicted pivot has a partner");
                let q = s.entries[r][c2] / v;
                let sign = if q > 0 { Sign::Minus } else { Sign::Plus };
                rec.slide_dotted_times(&s.dotted[c2], &s.dotted[c], sign, q.unsigned_abs());
            }
            continue;
        }

        // Diagonal up to permutation from here on.
        let diag: Vec<(usize, usize, i64)> = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| s.entries[r][c] != 0)
            .map(|(r, c)| (r, c, s.entries[r][c]))
            .collect();

        // 2. Make diagonal entries positive.
        if let Some((r, _, _)) = diag.iter().find(|(_, _, v)| *v < 0) {
            rec.negate_framed(&s.framed[*r]);
            continue;
        }
        // 3. Cancel unit pairs.
        if let Some((r, c, _)) = diag.iter().find(|(_, _, v)| *v == 1) {
            let (e, f) = (s.dotted[*c].clone(), s.framed[*r].clone());
            rec.cancel(&e, &f);
            continue;
        }
        // 4. Enforce the divisibility chain: fold a violator's column into
        // the column of the smallest entry and rediagonalize.
        if let Some(&(_, c_min, v_min)) = diag.iter().min_by_key(|(_, _, v)| *v) {
            if let Some((_, c_bad, _)) = diag.iter().find(|(_, _, v)| v % v_min != 0) {
                rec.slide_dotted(&s.dotted[c_min], &s.dotted[*c_bad], Sign::Plus);
                continue;
            }
        }
        break;
    }

    // Fold framings of the unlinked framed components.
    let unlinked: Vec<ComponentId> = rec
        .d
        .framed()
        .iter()
        .filter(|f| f.word.is_empty())
        .map(|f| f.id.clone())
        .collect();
    let g = fold_framings(rec, unlinked);

    classify_residue(rec, g)
}

fn classify_residue(rec: &mut Recorder, unlinked_gcd: Framing) -> NormalForm {
    let d = &rec.d;
    match d.dotted().len() {
        0 => NormalForm::Simple {
            m: d.framed().len(),
            t: unlinked_gcd,
        },
        1 => {
            let x = d.dotted()[0].clone();
            let linked = d
                .framed()
                .iter()
                .find(|f| f.word.exponent_sum(&x) != 0)
                .map(|f| (f.id.clone(), f.word.exponent_sum(&x)));
            match linked {
                None => NormalForm::Dotted {
                    p: 0,
                    a: unlinked_gcd,
                    b: d.framing_group().zero(),
                    m: d.framed().len(),
                },
                Some((c, p)) => NormalForm::Dotted {
                    p,
                    a: rec.framing_of(&c),
                    b: unlinked_gcd,
                    m: rec.d.framed().len(),
                },
            }
        }
        _ => NormalForm::General {
            diagram: rec.d.clone(),
        },
    }
}

fn measure(d: &Diagram) -> (usize, i64) {
    let words: usize = d.framed().iter().map(|f| f.word.len()).sum();
    let framings: i64 = d.framed().iter().map(|f| f.framing.value().abs()).sum();
    (words, framings)
}

fn find_cancelling_pair(d: &Diagram) -> Option<(ComponentId, ComponentId)> {
    for f in d.framed() {
        let Some(l) = f.word.single_letter() else {
            continue;
        };
        let e = l.id.clone();
        let blocked = d
            .framed()
            .iter()
            .any(|other| other.id != f.id && other.word.contains(&e));
        if !blocked {
            return Some((e, f.id.clone()));
        }
    }
    None
}

fn general_core_k2(rec: &mut Recorder, budget: usize) -> NormalForm {
    loop {
        if let Some((e, f)) = find_cancelling_pair(&rec.d) {
            rec.cancel(&e, &f);
            continue;
        }
        let current = measure(&rec.d);
        let ids = rec.framed_ids();
        let mut improved = false;
        let mut examined = 0;
        'search: for i in &ids {
            for j in &ids {
                if i == j {
                    continue;
                }
                for sign in [Sign::Plus, Sign::Minus] {
                    if examined >= budget {
                        break 'search;
                    }
                    examined += 1;
                    let mv = Move::SlideFramed {
                        i: i.clone(),
                        j: j.clone(),
                        sign,
                        conjugator: Vec::new(),
                    };
                    let next = apply_move(&rec.d, &mv).expect("slide of known components");
                    if measure(&next) < current {
                        rec.mv(mv);
                        improved = true;
                        break 'search;
                    }
                }
            }
        }
        if !improved {
            break;
        }
    }
    match rec.d.dotted().len() {
        0 => simple_core(rec),
        1 => one_dotted_core(rec),
        _ => {
            let zero = rec.d.framing_group().zero();
            classify_residue(rec, zero)
        }
    }
}

/// Reduce a family with no dotted components: framings gcd to (t, 0, ..., 0).
pub fn reduce_simple(d: &Diagram) -> Result<(NormalForm, Certificate)> {
    if !d.dotted().is_empty() {
        return Err(Error::NotSimpleFamily(format!(
            "diagram has {} dotted components",
            d.dotted().len()
        )));
    }
    let mut rec = Recorder::new(d);
    let nf = simple_core(&mut rec);
    Ok((nf, rec.cert))
}

/// Reduce a family with exactly one dotted component. All words are powers
/// of the single generator, so the pass counts gcd down by slides.
pub fn reduce_one_dotted(d: &Diagram) -> Result<(NormalForm, Certificate)> {
    if d.dotted().len() != 1 {
        return Err(Error::NotOneDottedFamily(format!(
            "diagram has {} dotted components",
            d.dotted().len()
        )));
    }
    let mut rec = Recorder::new(d);
    let nf = one_dotted_core(&mut rec);
    Ok((nf, rec.cert))
}

/// Reduce an arbitrary diagram. Complete for k >= 3 (Smith normal form by
/// moves); best-effort for k = 2.
pub fn reduce_general(d: &Diagram) -> (NormalForm, Certificate) {
    reduce_general_with_budget(d, DEFAULT_SLIDE_BUDGET)
}

pub fn reduce_general_with_budget(d: &Diagram, budget: usize) -> (NormalForm, Certificate) {
    let mut rec = Recorder::new(d);
    let nf = if d.dim().k() >= 3 {
        general_core_k3(&mut rec)
    } else {
        general_core_k2(&mut rec, budget)
    };
    (nf, rec.cert)
}

/// Dispatch on the shape of the diagram.
pub fn reduce(d: &Diagram) -> (NormalForm, Certificate) {
    match d.dotted().len() {
        0 => reduce_simple(d).expect("no dotted components"),
        1 => reduce_one_dotted(d).expect("exactly one dotted component"),
        _ => reduce_general(d),
    }
}

/// Realize a normal form as a concrete diagram in the given dimensions.
pub fn normal_form_diagram(nf: &NormalForm, dim: DimSpec) -> Result<Diagram> {
    let group = FramingGroup::for_dim(dim);
    match nf {
        NormalForm::Simple { m, t } => {
            if t.group() != group {
                return Err(Error::GroupMismatch);
            }
            let mut d = Diagram::new(dim);
            for i in 1..=*m {
                let fr = if i == 1 { t.value() } else { 0 };
                d = d.with_framed(&format!("n{i}"), &[], fr)?;
            }
            Ok(d)
        }
        NormalForm::Dotted { p, a, b, m } => {
            if a.group() != group || b.group() != group {
                return Err(Error::GroupMismatch);
            }
            let mut d = Diagram::new(dim).with_dotted("l1")?;
            let x = ComponentId::new("l1").unwrap();
            if *p == 0 {
                for i in 1..=*m {
                    let fr = if i == 1 { a.value() } else { 0 };
                    d = d.with_framed(&format!("n{i}"), &[], fr)?;
                }
            } else {
                let sign = if *p > 0 { Sign::Plus } else { Sign::Minus };
                let word = vec![Letter::new(x, sign); p.unsigned_abs() as usize];
                d = d.with_framed("n1", &word, a.value())?;
                for i in 2..=*m {
                    let fr = if i == 2 { b.value() } else { 0 };
                    d = d.with_framed(&format!("e{i}"), &[], fr)?;
                }
            }
            Ok(d)
        }
        NormalForm::General { diagram } => {
            if diagram.dim() != dim {
                return Err(Error::DimMismatch);
            }
            Ok(diagram.clone())
        }
    }
}

/// One boundary-connected-sum factor of a recognized manifold.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Factor {
    /// S^sphere x B^ball, the trivial bundle.
    SphereProduct { sphere: u32, ball: u32 },
    /// The twisted B^ball-bundle over S^sphere with clutching `twist`.
    TwistedProduct { sphere: u32, ball: u32, twist: i64 },
    /// Punctured lens space product L(p,1) x B^ball, k = 2 only.
    PuncturedLens { p: i64, ball: u32 },
    /// An unnamed one-dotted block: pass count p with framing a.
    Residual { p: i64, a: i64 },
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::SphereProduct { sphere, ball } => write!(f, "S^{sphere} × B^{ball}"),
            Factor::TwistedProduct {
                sphere,
                ball,
                twist,
            } => {
                if *twist == 1 {
                    write!(f, "S^{sphere} ×~ B^{ball}")
                } else {
                    write!(f, "S^{sphere} ×~({twist}) B^{ball}")
                }
            }
            Factor::PuncturedLens { p, ball } => write!(f, "L({p},1)° × B^{ball}"),
            Factor::Residual { p, a } => write!(f, "K(p={p},a={a})"),
        }
    }
}

/// Recognized manifold: a ball, a boundary connected sum of standard
/// factors, or an explicit refusal to name the thing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ManifoldName {
    Ball { n: u32 },
    BoundarySum { factors: Vec<Factor> },
    Unrecognized { description: String },
}

impl fmt::Display for ManifoldName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldName::Ball { n } => write!(f, "B^{n}"),
            ManifoldName::Unrecognized { description } => {
                write!(f, "unrecognized: {description}")
            }
            ManifoldName::BoundarySum { factors } => {
                if factors.len() == 1 {
                    return write!(f, "{}", factors[0]);
                }
                let mut parts: Vec<String> = Vec::new();
                let mut idx = 0;
                while idx < factors.len() {
                    let mut run = 1;
                    while idx + run < factors.len() && factors[idx + run] == factors[idx] {
                        run += 1;
                    }
                    if run == 1 {
                        parts.push(format!("({})", factors[idx]));
                    } else {
                        parts.push(format!("♮^{run}({})", factors[idx]));
                    }
                    idx += run;
                }
                f.write_str(&parts.join(" ♮ "))
            }
        }
    }
}

/// Bundle factors contributed by `count` unlinked framed components whose
/// framings are (t, 0, ..., 0).
fn bundle_family(t: Framing, count: usize, k: u32, n: u32) -> Vec<Factor> {
    let mut out = Vec::new();
    if count == 0 {
        return out;
    }
    if t.is_zero() {
        out.extend(vec![
            Factor::SphereProduct {
                sphere: k,
                ball: n - k,
            };
            count
        ]);
    } else {
        out.push(Factor::TwistedProduct {
            sphere: k,
            ball: n - k,
            twist: t.value(),
        });
        out.extend(vec![
            Factor::SphereProduct {
                sphere: k,
                ball: n - k,
            };
            count - 1
        ]);
    }
    out
}

/// Name the manifold of a normal form where a standard name exists.
pub fn recognize(nf: &NormalForm, dim: DimSpec) -> ManifoldName {
    let (n, k) = (dim.n(), dim.k());
    let from_factors = |factors: Vec<Factor>| {
        if factors.is_empty() {
            ManifoldName::Ball { n }
        } else {
            let mut factors = factors;
            factors.sort();
            ManifoldName::BoundarySum { factors }
        }
    };
    match nf {
        NormalForm::Simple { m, t } => from_factors(bundle_family(*t, *m, k, n)),
        NormalForm::Dotted { p: 0, a, m, .. } => {
            let mut factors = vec![Factor::SphereProduct {
                sphere: k - 1,
                ball: n - k + 1,
            }];
            factors.extend(bundle_family(*a, *m, k, n));
            from_factors(factors)
        }
        NormalForm::Dotted { p, a, b, m } => {
            let mut factors = Vec::new();
            if k == 2 && a.is_zero() && *p >= 2 {
                factors.push(Factor::PuncturedLens { p: *p, ball: n - 3 });
            } else {
                factors.push(Factor::Residual {
                    p: *p,
                    a: a.value(),
                });
            }
            factors.extend(bundle_family(*b, m.saturating_sub(1), k, n));
            from_factors(factors)
        }
        NormalForm::General { diagram } => recognize_general(diagram),
    }
}

fn recognize_general(d: &Diagram) -> ManifoldName {
    let (n, k) = (d.dim().n(), d.dim().k());
    let fallback = || ManifoldName::Unrecognized {
        description: format!(
            "general(dotted={},framed={})",
            d.dotted().len(),
            d.framed().len()
        ),
    };

    // Decomposable iff every word is a power of at most one generator and
    // every dotted component meets at most one framed component.
    let mut factors: Vec<Factor> = Vec::new();
    let mut partner: Vec<Option<(i64, Framing)>> = vec![None; d.dotted().len()];
    for f in d.framed() {
        let ids: Vec<&ComponentId> = {
            let mut ids: Vec<&ComponentId> = f.word.letters().iter().map(|l| &l.id).collect();
            ids.sort();
            ids.dedup();
            ids
        };
        match ids.as_slice() {
            [] => factors.extend(bundle_family(f.framing, 1, k, n)),
            [x] => {
                let q = f.word.exponent_sum(x);
                debug_assert_eq!(q.unsigned_abs() as usize, f.word.len());
                let slot = d.dotted_index(x).expect("word letters reference dotted");
                if partner[slot].is_some() {
                    return fallback();
                }
                partner[slot] = Some((q, f.framing));
            }
            _ => return fallback(),
        }
    }
    for link in &partner {
        match link {
            None => factors.push(Factor::SphereProduct {
                sphere: k - 1,
                ball: n - k + 1,
            }),
            Some((q, _)) if q.abs() == 1 => {} // cancelling pair: a B^n factor
            Some((q, fr)) => {
                if k == 2 && fr.is_zero() && *q >= 2 {
                    factors.push(Factor::PuncturedLens { p: *q, ball: n - 3 });
                } else {
                    factors.push(Factor::Residual {
                        p: *q,
                        a: fr.value(),
                    });
                }
            }
        }
    }
    if factors.is_empty() {
        return ManifoldName::Ball { n };
    }
    factors.sort();
    ManifoldName::BoundarySum { factors }
}
