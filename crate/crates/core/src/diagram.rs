//! Diagram data model: dotted and framed components and their words.
//!
//! A diagram holds dotted components (the (k-1)-handles, each contributing a
//! free generator) and framed components (the k-handles). The attaching data
//! of a framed component is a word in the dotted generators, recording how it
//! passes through the dotted spheres. Words are kept in a normal form that
//! depends on k:
//!
//! * k >= 3: attaching spheres have codimension large enough that crossings
//!   and passage order can always be exchanged, so only the exponent vector
//!   matters. Words are stored fully abelianized: free reduction, then letters
//!   sorted by generator.
//! * k = 2: passage order matters but the attaching circle has no basepoint,
//!   so a word is a conjugacy class. Words are stored cyclically reduced with
//!   the lexicographically minimal rotation.
//!
//! Equality of diagrams is canonical: component ids and listed order carry no
//! meaning, so `==` compares dimension, the dotted count, and the multiset of
//! framed (word, framing) pairs under the best relabeling of dotted ids.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::framing::{project_4d, DimSpec, Framing, FramingGroup};

/// Component identifier: `[A-Za-z][A-Za-z0-9_]*`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentId(String);

impl ComponentId {
    pub fn new(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic());
        let tail_ok = chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if head_ok && tail_ok {
            Ok(ComponentId(s.to_string()))
        } else {
            Err(Error::InvalidId(s.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Sign of a letter or of a slide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// One letter of an attaching word: a dotted generator or its inverse.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub id: ComponentId,
    pub sign: Sign,
}

impl Letter {
    pub fn new(id: ComponentId, sign: Sign) -> Letter {
        Letter { id, sign }
    }

    pub fn inverse(&self) -> Letter {
        Letter {
            id: self.id.clone(),
            sign: self.sign.flip(),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Plus => write!(f, "{}", self.id),
            Sign::Minus => write!(f, "{}^-1", self.id),
        }
    }
}

/// Attaching word, normalized for the k it was built with.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    /// Normalize raw letters for handle index k.
    pub fn normalize(k: u32, letters: &[Letter]) -> Word {
        let reduced = free_reduce(letters);
        let letters = if k >= 3 {
            abelianize(&reduced)
        } else {
            minimal_rotation(&cyclic_reduce(reduced))
        };
        Word { letters }
    }

    pub fn empty() -> Word {
        Word { letters: Vec::new() }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Exponent sum of one generator: the linking number with that dotted
    /// component.
    pub fn exponent_sum(&self, id: &ComponentId) -> i64 {
        self.letters
            .iter()
            .filter(|l| &l.id == id)
            .map(|l| l.sign.as_i64())
            .sum()
    }

    /// Exponent vector over all generators that occur.
    pub fn exponents(&self) -> BTreeMap<ComponentId, i64> {
        let mut m = BTreeMap::new();
        for l in &self.letters {
            *m.entry(l.id.clone()).or_insert(0) += l.sign.as_i64();
        }
        m.retain(|_, v| *v != 0);
        m
    }

    pub fn contains(&self, id: &ComponentId) -> bool {
        self.letters.iter().any(|l| &l.id == id)
    }

    /// The single letter, if the word consists of exactly one.
    pub fn single_letter(&self) -> Option<&Letter> {
        match self.letters.as_slice() {
            [l] => Some(l),
            _ => None,
        }
    }

    pub fn inverse_letters(&self) -> Vec<Letter> {
        self.letters.iter().rev().map(Letter::inverse).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

fn free_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for l in letters {
        if out.last().is_some_and(|t| t.id == l.id && t.sign == l.sign.flip()) {
            out.pop();
        } else {
            out.push(l.clone());
        }
    }
    out
}

fn cyclic_reduce(mut letters: Vec<Letter>) -> Vec<Letter> {
    while letters.len() >= 2 {
        let first = &letters[0];
        let last = &letters[letters.len() - 1];
        if first.id == last.id && first.sign == last.sign.flip() {
            letters.pop();
            letters.remove(0);
        } else {
            break;
        }
    }
    letters
}

fn minimal_rotation(letters: &[Letter]) -> Vec<Letter> {
    if letters.len() < 2 {
        return letters.to_vec();
    }
    let mut best: Option<Vec<Letter>> = None;
    for start in 0..letters.len() {
        let rot: Vec<Letter> = letters[start..]
            .iter()
            .chain(&letters[..start])
            .cloned()
            .collect();
        if best.as_ref().map_or(true, |b| rot < *b) {
            best = Some(rot);
        }
    }
    best.unwrap()
}

fn abelianize(letters: &[Letter]) -> Vec<Letter> {
    let mut counts: BTreeMap<ComponentId, i64> = BTreeMap::new();
    for l in letters {
        *counts.entry(l.id.clone()).or_insert(0) += l.sign.as_i64();
    }
    let mut out = Vec::new();
    for (id, c) in counts {
        let sign = if c > 0 { Sign::Plus } else { Sign::Minus };
        for _ in 0..c.unsigned_abs() {
            out.push(Letter::new(id.clone(), sign));
        }
    }
    out
}

/// A framed component: id, attaching word, framing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedComponent {
    pub id: ComponentId,
    pub word: Word,
    pub framing: Framing,
}

/// An (n, k) diagram: dotted components plus framed components.
#[derive(Debug, Clone)]
pub struct Diagram {
    dim: DimSpec,
    dotted: Vec<ComponentId>,
    framed: Vec<FramedComponent>,
}

impl Diagram {
    pub fn new(dim: DimSpec) -> Diagram {
        Diagram {
            dim,
            dotted: Vec::new(),
            framed: Vec::new(),
        }
    }

    pub fn dim(&self) -> DimSpec {
        self.dim
    }

    pub fn framing_group(&self) -> FramingGroup {
        FramingGroup::for_dim(self.dim)
    }

    pub fn dotted(&self) -> &[ComponentId] {
        &self.dotted
    }

    pub fn framed(&self) -> &[FramedComponent] {
        &self.framed
    }

    pub fn has_id(&self, id: &str) -> bool {
        self.dotted.iter().any(|d| d.as_str() == id)
            || self.framed.iter().any(|f| f.id.as_str() == id)
    }

    pub fn dotted_index(&self, id: &ComponentId) -> Option<usize> {
        self.dotted.iter().position(|d| d == id)
    }

    pub fn framed_index(&self, id: &ComponentId) -> Option<usize> {
        self.framed.iter().position(|f| &f.id == id)
    }

    pub fn with_dotted(&self, id: &str) -> Result<Diagram> {
        let id = ComponentId::new(id)?;
        if self.has_id(id.as_str()) {
            return Err(Error::DuplicateId(id.0));
        }
        let mut d = self.clone();
        d.dotted.push(id);
        Ok(d)
    }

    /// Add a framed component. The word is normalized for this k and the
    /// framing is normalized in the diagram's group.
    pub fn with_framed(&self, id: &str, letters: &[Letter], framing: i64) -> Result<Diagram> {
        let id = ComponentId::new(id)?;
        if self.has_id(id.as_str()) {
            return Err(Error::DuplicateId(id.0));
        }
        for l in letters {
            if self.dotted_index(&l.id).is_none() {
                return Err(Error::UnknownGenerator(l.id.0.clone()));
            }
        }
        let mut d = self.clone();
        d.framed.push(FramedComponent {
            id,
            word: Word::normalize(self.dim.k(), letters),
            framing: self.framing_group().normalize(framing),
        });
        Ok(d)
    }

    /// Same diagram in a new ambient dimension. Framing group, words and
    /// coefficients are unchanged: everything is stable for n >= 2k + 1.
    pub fn transport(&self, n_new: u32) -> Result<Diagram> {
        let dim = self.dim.transport(n_new)?;
        Ok(Diagram {
            dim,
            dotted: self.dotted.clone(),
            framed: self.framed.clone(),
        })
    }

    /// Rows indexed by framed components, columns by dotted components, entry
    /// = exponent sum of the column's generator in the row's word.
    pub fn linking_matrix(&self) -> LinkingMatrix {
        let entries = self
            .framed
            .iter()
            .map(|f| self.dotted.iter().map(|d| f.word.exponent_sum(d)).collect())
            .collect();
        LinkingMatrix {
            dotted: self.dotted.clone(),
            framed: self.framed.iter().map(|f| f.id.clone()).collect(),
            entries,
        }
    }

    /// Internal to move application: overwrite word and framing in place.
    pub(crate) fn set_framed(&mut self, idx: usize, word: Word, framing: Framing) {
        self.framed[idx].word = word;
        self.framed[idx].framing = framing;
    }

    /// Internal to move application: drop a cancelling pair.
    pub(crate) fn remove_pair(&mut self, dotted_idx: usize, framed_idx: usize) {
        self.dotted.remove(dotted_idx);
        self.framed.remove(framed_idx);
    }

    pub(crate) fn canonical_key(&self) -> CanonicalKey {
        let words: Vec<(Vec<(usize, Sign)>, i64)> = self
            .framed
            .iter()
            .map(|f| {
                let letters = f
                    .word
                    .letters()
                    .iter()
                    .map(|l| (self.dotted_index(&l.id).expect("letters reference dotted"), l.sign))
                    .collect();
                (letters, f.framing.value())
            })
            .collect();
        CanonicalKey {
            n: self.dim.n(),
            k: self.dim.k(),
            dotted: self.dotted.len(),
            framed: canonical_framed_key(self.dim.k(), self.dotted.len(), &words),
        }
    }
}

/// Canonical equality: dimension, dotted count, and the multiset of framed
/// (word, framing) pairs under the best relabeling of dotted generators.
impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_key() == other.canonical_key()
    }
}

impl Eq for Diagram {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct CanonicalKey {
    n: u32,
    k: u32,
    dotted: usize,
    framed: Vec<(Vec<(usize, Sign)>, i64)>,
}

/// Minimize the sorted framed list over relabelings of the dotted indices.
/// Dotted components are first grouped by a relabeling-invariant signature so
/// that only permutations within a group are tried.
fn canonical_framed_key(
    k: u32,
    dotted: usize,
    words: &[(Vec<(usize, Sign)>, i64)],
) -> Vec<(Vec<(usize, Sign)>, i64)> {
    if dotted == 0 {
        let mut framed = words.to_vec();
        framed.sort();
        return framed;
    }

    // Signature of a dotted index: multiset of (exponent here, word length,
    // framing) over the framed components. Invariant under relabeling.
    let signature = |j: usize| -> Vec<(i64, usize, i64)> {
        let mut sig: Vec<(i64, usize, i64)> = words
            .iter()
            .map(|(w, fr)| {
                let e = w
                    .iter()
                    .filter(|(i, _)| *i == j)
                    .map(|(_, s)| s.as_i64())
                    .sum();
                (e, w.len(), *fr)
            })
            .collect();
        sig.sort();
        sig
    };

    let mut groups: BTreeMap<Vec<(i64, usize, i64)>, Vec<usize>> = BTreeMap::new();
    for j in 0..dotted {
        groups.entry(signature(j)).or_default().push(j);
    }
    let groups: Vec<Vec<usize>> = groups.into_values().collect();

    // Canonical target positions: group g gets the next |g| indices.
    let mut base = Vec::new();
    let mut offset = 0;
    for g in &groups {
        base.push((g.clone(), offset));
        offset += g.len();
    }

    let mut best: Option<Vec<(Vec<(usize, Sign)>, i64)>> = None;
    let mut relabel = vec![0usize; dotted];
    permute_groups(&base, 0, &mut relabel, &mut |relabel| {
        let mut framed: Vec<(Vec<(usize, Sign)>, i64)> = words
            .iter()
            .map(|(w, fr)| {
                let mapped: Vec<(usize, Sign)> =
                    w.iter().map(|(i, s)| (relabel[*i], *s)).collect();
                let mapped = if k >= 3 {
                    let mut m = mapped;
                    m.sort();
                    m
                } else {
                    minimal_rotation_indexed(&mapped)
                };
                (mapped, *fr)
            })
            .collect();
        framed.sort();
        if best.as_ref().map_or(true, |b| framed < *b) {
            best = Some(framed);
        }
    });
    best.unwrap()
}

fn minimal_rotation_indexed(letters: &[(usize, Sign)]) -> Vec<(usize, Sign)> {
    if letters.len() < 2 {
        return letters.to_vec();
    }
    (0..letters.len())
        .map(|start| {
            letters[start..]
                .iter()
                .chain(&letters[..start])
                .copied()
                .collect::<Vec<_>>()
        })
        .min()
        .unwrap()
}

fn permute_groups(
    groups: &[(Vec<usize>, usize)],
    g: usize,
    relabel: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if g == groups.len() {
        visit(relabel);
        return;
    }
    let (members, offset) = &groups[g];
    let mut perm: Vec<usize> = (0..members.len()).collect();
    loop {
        for (slot, &p) in perm.iter().enumerate() {
            relabel[members[p]] = offset + slot;
        }
        permute_groups(groups, g + 1, relabel, visit);
        if !next_permutation(&mut perm) {
            break;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Exponent-sum matrix of a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingMatrix {
    pub dotted: Vec<ComponentId>,
    pub framed: Vec<ComponentId>,
    pub entries: Vec<Vec<i64>>,
}

impl LinkingMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.dotted.len()
    }
}

/// A 4-dimensional source diagram: the (4, 2) case used only as import data.
/// Framings are plain integers (no stable group exists there) and words are
/// k = 2 conjugacy classes. The ambient pair is fixed to (4, 2).
#[derive(Debug, Clone)]
pub struct SourceDiagram {
    dotted: Vec<ComponentId>,
    framed: Vec<SourceFramed>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFramed {
    pub id: ComponentId,
    pub word: Word,
    pub framing: i64,
}

impl SourceDiagram {
    pub fn new() -> SourceDiagram {
        SourceDiagram {
            dotted: Vec::new(),
            framed: Vec::new(),
        }
    }

    pub fn dotted(&self) -> &[ComponentId] {
        &self.dotted
    }

    pub fn framed(&self) -> &[SourceFramed] {
        &self.framed
    }

    pub fn has_id(&self, id: &str) -> bool {
        self.dotted.iter().any(|d| d.as_str() == id)
            || self.framed.iter().any(|f| f.id.as_str() == id)
    }

    pub fn with_dotted(&self, id: &str) -> Result<SourceDiagram> {
        let id = ComponentId::new(id)?;
        if self.has_id(id.as_str()) {
            return Err(Error::DuplicateId(id.0));
        }
        let mut d = self.clone();
        d.dotted.push(id);
        Ok(d)
    }

    pub fn with_framed(&self, id: &str, letters: &[Letter], framing: i64) -> Result<SourceDiagram> {
        let id = ComponentId::new(id)?;
        if self.has_id(id.as_str()) {
            return Err(Error::DuplicateId(id.0));
        }
        for l in letters {
            if !self.dotted.contains(&l.id) {
                return Err(Error::UnknownGenerator(l.id.as_str().to_string()));
            }
        }
        let mut d = self.clone();
        d.framed.push(SourceFramed {
            id,
            word: Word::normalize(2, letters),
            framing,
        });
        Ok(d)
    }

    /// Induce an (n, k) diagram: words renormalized for the target k,
    /// framings projected into the target group.
    pub fn induce(&self, n: u32, k: u32) -> Result<Diagram> {
        let dim = DimSpec::new(n, k)?;
        let group = FramingGroup::for_dim(dim);
        let mut out = Diagram::new(dim);
        for d in &self.dotted {
            out = out.with_dotted(d.as_str())?;
        }
        for f in &self.framed {
            out = out.with_framed(
                f.id.as_str(),
                f.word.letters(),
                project_4d(f.framing, group).value(),
            )?;
        }
        Ok(out)
    }

    pub(crate) fn weak_canonical_key(&self) -> CanonicalKey {
        let words: Vec<(Vec<(usize, Sign)>, i64)> = self
            .framed
            .iter()
            .map(|f| {
                let letters = f
                    .word
                    .letters()
                    .iter()
                    .map(|l| {
                        (
                            self.dotted.iter().position(|d| d == &l.id).unwrap(),
                            l.sign,
                        )
                    })
                    .collect();
                (letters, f.framing.rem_euclid(2))
            })
            .collect();
        CanonicalKey {
            n: 4,
            k: 2,
            dotted: self.dotted.len(),
            framed: canonical_framed_key(2, self.dotted.len(), &words),
        }
    }
}

impl Default for SourceDiagram {
    fn default() -> Self {
        SourceDiagram::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn letters(spec: &[(&str, Sign)]) -> Vec<Letter> {
        spec.iter()
            .map(|(id, s)| Letter::new(ComponentId::new(id).unwrap(), *s))
            .collect()
    }

    fn word_str(w: &Word) -> String {
        w.to_string()
    }

    #[test]
    fn ids_validated() {
        assert!(ComponentId::new("x1").is_ok());
        assert!(ComponentId::new("A_b9").is_ok());
        assert!(ComponentId::new("1x").is_err());
        assert!(ComponentId::new("").is_err());
        assert!(ComponentId::new("x-y").is_err());
    }

    #[test]
    fn free_and_cyclic_reduction_k2() {
        let w = Word::normalize(2, &letters(&[("e1", Sign::Plus), ("e2", Sign::Plus), ("e1", Sign::Minus)]));
        assert_eq!(word_str(&w), "e2");
    }

    #[test]
    fn canonical_rotation_k2() {
        // A class is stored at its minimal rotation.
        let w = Word::normalize(2, &letters(&[("e2", Sign::Plus), ("e1", Sign::Plus)]));
        assert_eq!(word_str(&w), "e1 e2");
        let commutator_like = letters(&[
            ("x1", Sign::Plus),
            ("x2", Sign::Plus),
            ("x1", Sign::Plus),
            ("x2", Sign::Minus),
            ("x1", Sign::Minus),
            ("x2", Sign::Minus),
        ]);
        let w = Word::normalize(2, &commutator_like);
        assert_eq!(word_str(&w), "x1 x2 x1 x2^-1 x1^-1 x2^-1");
    }

    #[test]
    fn abelianization_k3() {
        let w = Word::normalize(
            3,
            &letters(&[("e2", Sign::Plus), ("e1", Sign::Plus), ("e2", Sign::Minus), ("e1", Sign::Plus)]),
        );
        assert_eq!(word_str(&w), "e1 e1");
        assert_eq!(w.exponent_sum(&ComponentId::new("e1").unwrap()), 2);
        assert_eq!(w.exponent_sum(&ComponentId::new("e2").unwrap()), 0);
    }

    #[test]
    fn normalization_is_idempotent() {
        for k in [2, 3] {
            let raw = letters(&[
                ("a", Sign::Plus),
                ("b", Sign::Minus),
                ("a", Sign::Plus),
                ("a", Sign::Minus),
                ("c", Sign::Plus),
            ]);
            let once = Word::normalize(k, &raw);
            let twice = Word::normalize(k, once.letters());
            assert_eq!(once, twice);
        }
    }

    fn sample(k: u32) -> Diagram {
        let n = 2 * k + 1;
        let d = Diagram::new(DimSpec::new(n, k).unwrap());
        let d = d.with_dotted("e1").unwrap().with_dotted("e2").unwrap();
        d.with_framed(
            "f1",
            &letters(&[("e1", Sign::Plus), ("e2", Sign::Minus), ("e1", Sign::Plus)]),
            1,
        )
        .unwrap()
    }

    #[test]
    fn builder_errors() {
        let d = sample(3);
        assert_eq!(
            d.with_dotted("e1").unwrap_err(),
            Error::DuplicateId("e1".into())
        );
        assert_eq!(
            d.with_framed("f1", &[], 0).unwrap_err(),
            Error::DuplicateId("f1".into())
        );
        assert_eq!(
            d.with_framed("f2", &letters(&[("zz", Sign::Plus)]), 0)
                .unwrap_err(),
            Error::UnknownGenerator("zz".into())
        );
    }

    #[test]
    fn linking_matrix_counts_exponents() {
        for k in [2, 3] {
            let d = sample(k);
            let m = d.linking_matrix();
            assert_eq!(m.entries, vec![vec![2, -1]]);
        }
    }

    #[test]
    fn transport_preserves_data() {
        let d = sample(3);
        let t = d.transport(9).unwrap();
        assert_eq!(t.dim().n(), 9);
        assert_eq!(t.linking_matrix().entries, d.linking_matrix().entries);
        assert_eq!(d.transport(6).unwrap_err(), Error::InvalidDim { n: 6, k: 3 });
    }

    #[test]
    fn canonical_equality_ignores_names_and_order() {
        let dim = DimSpec::new(7, 3).unwrap();
        let a = Diagram::new(dim)
            .with_dotted("e1")
            .unwrap()
            .with_dotted("e2")
            .unwrap()
            .with_framed("f1", &letters(&[("e1", Sign::Plus)]), 0)
            .unwrap()
            .with_framed("f2", &letters(&[("e2", Sign::Plus), ("e2", Sign::Plus)]), 0)
            .unwrap();
        let b = Diagram::new(dim)
            .with_dotted("u")
            .unwrap()
            .with_dotted("v")
            .unwrap()
            .with_framed("g2", &letters(&[("u", Sign::Plus), ("u", Sign::Plus)]), 0)
            .unwrap()
            .with_framed("g1", &letters(&[("v", Sign::Plus)]), 0)
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn canonical_equality_sees_framings() {
        let dim = DimSpec::new(5, 2).unwrap();
        let mk = |fr: i64| {
            Diagram::new(dim)
                .with_framed("f", &[], fr)
                .unwrap()
        };
        assert_ne!(mk(0), mk(1));
        assert_eq!(mk(1), mk(3)); // both are 1 in Z/2
    }

    #[test]
    fn induced_diagrams_project_framings() {
        let s = SourceDiagram::new()
            .with_dotted("x")
            .unwrap()
            .with_framed("f", &letters(&[("x", Sign::Plus)]), 3)
            .unwrap();
        let d = s.induce(5, 2).unwrap();
        assert_eq!(d.framed()[0].framing.value(), 1);
        let d = s.induce(9, 4).unwrap();
        assert_eq!(d.framed()[0].framing.value(), 3);
        assert!(s.induce(4, 2).is_err());
    }

    #[test]
    fn induced_words_renormalize_for_target_k() {
        let s = SourceDiagram::new()
            .with_dotted("x")
            .unwrap()
            .with_dotted("y")
            .unwrap()
            .with_framed(
                "f",
                &letters(&[("y", Sign::Plus), ("x", Sign::Plus), ("y", Sign::Plus)]),
                0,
            )
            .unwrap();
        // k = 2 keeps the class (minimal rotation), k >= 3 abelianizes.
        assert_eq!(word_str(&s.induce(5, 2).unwrap().framed()[0].word), "x y y");
        assert_eq!(word_str(&s.induce(7, 3).unwrap().framed()[0].word), "x y y");
        let s2 = SourceDiagram::new()
            .with_dotted("x")
            .unwrap()
            .with_dotted("y")
            .unwrap()
            .with_framed(
                "f",
                &letters(&[("y", Sign::Plus), ("x", Sign::Plus), ("y", Sign::Minus)]),
                0,
            )
            .unwrap();
        assert_eq!(word_str(&s2.induce(5, 2).unwrap().framed()[0].word), "x");
        assert_eq!(word_str(&s2.induce(7, 3).unwrap().framed()[0].word), "x");
    }
}

#[cfg(test)]
mod prop_tests {
    use proptest::prelude::*;

    use super::*;

    fn arb_letters(max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec((0usize..3, any::<bool>()), 0..=max_len).prop_map(|v| {
            v.into_iter()
                .map(|(i, plus)| {
                    let id = ComponentId::new(["a", "b", "c"][i]).unwrap();
                    Letter::new(id, if plus { Sign::Plus } else { Sign::Minus })
                })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn normalization_is_idempotent_for_all_k(raw in arb_letters(12), k in 2u32..=5) {
            let once = Word::normalize(k, &raw);
            prop_assert_eq!(Word::normalize(k, once.letters()), once);
        }

        #[test]
        fn normalization_conserves_exponent_sums(raw in arb_letters(12), k in 2u32..=5) {
            let w = Word::normalize(k, &raw);
            for id in ["a", "b", "c"] {
                let id = ComponentId::new(id).unwrap();
                let raw_sum: i64 = raw
                    .iter()
                    .filter(|l| l.id == id)
                    .map(|l| l.sign.as_i64())
                    .sum();
                prop_assert_eq!(w.exponent_sum(&id), raw_sum);
            }
        }

        #[test]
        fn word_followed_by_its_inverse_vanishes(raw in arb_letters(10), k in 2u32..=5) {
            let mut doubled = raw.clone();
            doubled.extend(raw.iter().rev().map(Letter::inverse));
            prop_assert!(Word::normalize(k, &doubled).is_empty());
        }

        #[test]
        fn cyclic_rotations_share_a_representative_at_k2(
            raw in arb_letters(10),
            cut in 0usize..10,
        ) {
            let w = Word::normalize(2, &raw);
            if !w.is_empty() {
                let cut = cut % w.len();
                let mut rotated: Vec<Letter> = w.letters()[cut..].to_vec();
                rotated.extend_from_slice(&w.letters()[..cut]);
                prop_assert_eq!(Word::normalize(2, &rotated), w);
            }
        }
    }
}
