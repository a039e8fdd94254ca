//! Handle moves and replayable certificates.
//!
//! Four moves generate the calculus:
//!
//! * `SlideFramed`: slide framed component i over framed component j. The
//!   word of i becomes word_i * c * word_j^(+-1) * c^-1 (c the conjugator,
//!   meaningful only at k = 2; at k >= 3 abelianization voids it) and the
//!   framing of i gains +-framing_j. With the reversed orientation the
//!   framing contribution is subtracted, hence the sign.
//! * `SlideDotted`: slide dotted component a over dotted component b. Every
//!   passage through b now also passes through the new a, so words transform
//!   under the free-group automorphism generated by b -> b * a^(+-1).
//! * `CancelPair` / `CreatePair`: a dotted component e and a framed component
//!   f whose word is the single letter e^(+-1), with no other word meeting e,
//!   form a cancelling pair. The framing of f is irrelevant to cancellation.
//!
//! A `Certificate` is a list of moves; `apply` replays one against a diagram
//! and either returns the final diagram or fails atomically, reporting the
//! index of the offending move.

use std::fmt;

use crate::diagram::{ComponentId, Diagram, FramedComponent, Letter, Sign, Word};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    SlideFramed {
        i: ComponentId,
        j: ComponentId,
        sign: Sign,
        conjugator: Vec<Letter>,
    },
    SlideDotted {
        a: ComponentId,
        b: ComponentId,
        sign: Sign,
    },
    CancelPair {
        e: ComponentId,
        f: ComponentId,
    },
    CreatePair {
        e: ComponentId,
        f: ComponentId,
    },
}

/// A replayable sequence of moves.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Certificate {
    moves: Vec<Move>,
}

impl Certificate {
    pub fn new(moves: Vec<Move>) -> Certificate {
        Certificate { moves }
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn push(&mut self, m: Move) {
        self.moves.push(m);
    }

    pub fn extend(&mut self, other: Certificate) {
        self.moves.extend(other.moves);
    }
}

pub fn apply_move(d: &Diagram, m: &Move) -> Result<Diagram> {
    match m {
        Move::SlideFramed {
            i,
            j,
            sign,
            conjugator,
        } => slide_framed(d, i, j, *sign, conjugator),
        Move::SlideDotted { a, b, sign } => slide_dotted(d, a, b, *sign),
        Move::CancelPair { e, f } => cancel_pair(d, e, f),
        Move::CreatePair { e, f } => create_pair(d, e, f),
    }
}

/// Replay a certificate. Fails atomically: the diagram is unchanged unless
/// every move applies, and the error carries the index of the first failure.
pub fn apply(d: &Diagram, cert: &Certificate) -> Result<Diagram> {
    let mut cur = d.clone();
    for (index, m) in cert.moves().iter().enumerate() {
        cur = apply_move(&cur, m).map_err(|cause| Error::Replay {
            index,
            cause: Box::new(cause),
        })?;
    }
    Ok(cur)
}

fn slide_framed(
    d: &Diagram,
    i: &ComponentId,
    j: &ComponentId,
    sign: Sign,
    conjugator: &[Letter],
) -> Result<Diagram> {
    if i == j {
        return Err(Error::SelfSlide(i.as_str().to_string()));
    }
    let ii = d
        .framed_index(i)
        .ok_or_else(|| Error::UnknownComponent(i.as_str().to_string()))?;
    let jj = d
        .framed_index(j)
        .ok_or_else(|| Error::UnknownComponent(j.as_str().to_string()))?;
    for l in conjugator {
        if d.dotted_index(&l.id).is_none() {
            return Err(Error::UnknownGenerator(l.id.as_str().to_string()));
        }
    }

    let over: &FramedComponent = &d.framed()[jj];
    let mut raw: Vec<Letter> = d.framed()[ii].word.letters().to_vec();
    raw.extend_from_slice(conjugator);
    match sign {
        Sign::Plus => raw.extend_from_slice(over.word.letters()),
        Sign::Minus => raw.extend(over.word.inverse_letters()),
    }
    raw.extend(conjugator.iter().rev().map(Letter::inverse));

    let delta = match sign {
        Sign::Plus => over.framing,
        Sign::Minus => over.framing.neg(),
    };
    let framing = d.framed()[ii].framing.add(delta)?;

    let mut out = d.clone();
    out.set_framed(ii, Word::normalize(d.dim().k(), &raw), framing);
    Ok(out)
}

fn slide_dotted(d: &Diagram, a: &ComponentId, b: &ComponentId, sign: Sign) -> Result<Diagram> {
    if a == b {
        return Err(Error::SelfSlide(a.as_str().to_string()));
    }
    for id in [a, b] {
        if d.dotted_index(id).is_none() {
            return Err(Error::UnknownComponent(id.as_str().to_string()));
        }
    }
    // Automorphism generated by b -> b a^sign; on inverse letters this
    // prepends the inverse: b^-1 -> a^-sign b^-1.
    let subst = |letters: &[Letter]| -> Vec<Letter> {
        let mut out = Vec::with_capacity(letters.len() * 2);
        for l in letters {
            if &l.id == b {
                match l.sign {
                    Sign::Plus => {
                        out.push(l.clone());
                        out.push(Letter::new(a.clone(), sign));
                    }
                    Sign::Minus => {
                        out.push(Letter::new(a.clone(), sign.flip()));
                        out.push(l.clone());
                    }
                }
            } else {
                out.push(l.clone());
            }
        }
        out
    };

    let k = d.dim().k();
    let mut out = d.clone();
    for idx in 0..d.framed().len() {
        let new_word = Word::normalize(k, &subst(d.framed()[idx].word.letters()));
        let framing = d.framed()[idx].framing;
        out.set_framed(idx, new_word, framing);
    }
    Ok(out)
}

fn cancel_pair(d: &Diagram, e: &ComponentId, f: &ComponentId) -> Result<Diagram> {
    let ei = d
        .dotted_index(e)
        .ok_or_else(|| Error::UnknownComponent(e.as_str().to_string()))?;
    let fi = d
        .framed_index(f)
        .ok_or_else(|| Error::UnknownComponent(f.as_str().to_string()))?;
    match d.framed()[fi].word.single_letter() {
        Some(l) if &l.id == e => {}
        _ => {
            return Err(Error::NotCancelling(format!(
                "word of `{f}` is not the single letter `{e}` or its inverse"
            )))
        }
    }
    for (idx, other) in d.framed().iter().enumerate() {
        if idx != fi && other.word.contains(e) {
            return Err(Error::NotCancelling(format!(
                "component `{}` still passes through `{e}`",
                other.id
            )));
        }
    }
    let mut out = d.clone();
    out.remove_pair(ei, fi);
    Ok(out)
}

fn create_pair(d: &Diagram, e: &ComponentId, f: &ComponentId) -> Result<Diagram> {
    if e == f {
        return Err(Error::DuplicateId(e.as_str().to_string()));
    }
    let out = d.with_dotted(e.as_str())?;
    out.with_framed(f.as_str(), &[Letter::new(e.clone(), Sign::Plus)], 0)
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::SlideFramed {
                i,
                j,
                sign,
                conjugator,
            } => {
                let s = if *sign == Sign::Plus { "+" } else { "-" };
                write!(f, "slide-framed {i} {j} {s}")?;
                if !conjugator.is_empty() {
                    write!(f, " conj")?;
                    for l in conjugator {
                        write!(f, " {l}")?;
                    }
                }
                Ok(())
            }
            Move::SlideDotted { a, b, sign } => {
                let s = if *sign == Sign::Plus { "+" } else { "-" };
                write!(f, "slide-dotted {a} {b} {s}")
            }
            Move::CancelPair { e, f: fr } => write!(f, "cancel {e} {fr}"),
            Move::CreatePair { e, f: fr } => write!(f, "create {e} {fr}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framing::DimSpec;

    fn cid(s: &str) -> ComponentId {
        ComponentId::new(s).unwrap()
    }

    fn letters(spec: &[(&str, Sign)]) -> Vec<Letter> {
        spec.iter()
            .map(|(id, s)| Letter::new(cid(id), *s))
            .collect()
    }

    /// k = 4, n = 9: framing group Z; one dotted, two framed with passes 3
    /// and 5, framings 0 and 1.
    fn z_sample() -> Diagram {
        Diagram::new(DimSpec::new(9, 4).unwrap())
            .with_dotted("e1")
            .unwrap()
            .with_framed("f1", &vec![Letter::new(cid("e1"), Sign::Plus); 3], 0)
            .unwrap()
            .with_framed("f2", &vec![Letter::new(cid("e1"), Sign::Plus); 5], 1)
            .unwrap()
    }

    #[test]
    fn framed_slide_adds_row_and_framing() {
        let d = z_sample();
        let plus = apply_move(
            &d,
            &Move::SlideFramed {
                i: cid("f1"),
                j: cid("f2"),
                sign: Sign::Plus,
                conjugator: vec![],
            },
        )
        .unwrap();
        assert_eq!(plus.linking_matrix().entries, vec![vec![8], vec![5]]);
        assert_eq!(plus.framed()[0].framing.value(), 1);

        let minus = apply_move(
            &d,
            &Move::SlideFramed {
                i: cid("f1"),
                j: cid("f2"),
                sign: Sign::Minus,
                conjugator: vec![],
            },
        )
        .unwrap();
        assert_eq!(minus.linking_matrix().entries, vec![vec![-2], vec![5]]);
        assert_eq!(minus.framed()[0].framing.value(), -1);
    }

    #[test]
    fn framed_slide_with_conjugator_k2() {
        let d = Diagram::new(DimSpec::new(5, 2).unwrap())
            .with_dotted("e1")
            .unwrap()
            .with_dotted("e2")
            .unwrap()
            .with_framed("f1", &letters(&[("e1", Sign::Plus)]), 0)
            .unwrap()
            .with_framed("f2", &letters(&[("e2", Sign::Plus)]), 0)
            .unwrap();
        let slid = apply_move(
            &d,
            &Move::SlideFramed {
                i: cid("f1"),
                j: cid("f2"),
                sign: Sign::Plus,
                conjugator: letters(&[("e1", Sign::Plus)]),
            },
        )
        .unwrap();
        // e1 * e1 e2 e1^-1 cyclically reduces to e1 e2.
        assert_eq!(slid.framed()[0].word.to_string(), "e1 e2");
    }

    #[test]
    fn framed_slide_undo_is_identity_for_k3() {
        let d = Diagram::new(DimSpec::new(7, 3).unwrap())
            .with_dotted("e1")
            .unwrap()
            .with_dotted("e2")
            .unwrap()
            .with_framed("f1", &letters(&[("e1", Sign::Plus), ("e2", Sign::Minus)]), 0)
            .unwrap()
            .with_framed("f2", &letters(&[("e2", Sign::Plus), ("e1", Sign::Plus)]), 0)
            .unwrap();
        let fwd = Move::SlideFramed {
            i: cid("f1"),
            j: cid("f2"),
            sign: Sign::Plus,
            conjugator: vec![],
        };
        let bwd = Move::SlideFramed {
            i: cid("f1"),
            j: cid("f2"),
            sign: Sign::Minus,
            conjugator: vec![],
        };
        let back = apply_move(&apply_move(&d, &fwd).unwrap(), &bwd).unwrap();
        assert_eq!(back.framed()[0].word, d.framed()[0].word);
        assert_eq!(back, d);
    }

    /// At k = 2 the stored class can shift its basepoint between the two
    /// slides, so word-level undo can fail; the additive data always returns.
    #[test]
    fn framed_slide_undo_restores_linking_and_framings_for_k2() {
        let d = Diagram::new(DimSpec::new(5, 2).unwrap())
            .with_dotted("a")
            .unwrap()
            .with_dotted("b")
            .unwrap()
            .with_dotted("c")
            .unwrap()
            .with_framed(
                "f1",
                &letters(&[("a", Sign::Plus), ("c", Sign::Plus), ("b", Sign::Plus)]),
                1,
            )
            .unwrap()
            .with_framed("f2", &letters(&[("a", Sign::Minus)]), 1)
            .unwrap();
        let fwd = Move::SlideFramed {
            i: cid("f1"),
            j: cid("f2"),
            sign: Sign::Plus,
            conjugator: vec![],
        };
        let bwd = Move::SlideFramed {
            i: cid("f1"),
            j: cid("f2"),
            sign: Sign::Minus,
            conjugator: vec![],
        };
        let back = apply_move(&apply_move(&d, &fwd).unwrap(), &bwd).unwrap();
        assert_eq!(back.linking_matrix(), d.linking_matrix());
        let framings: Vec<i64> = back.framed().iter().map(|f| f.framing.value()).collect();
        assert_eq!(framings, vec![1, 1]);
    }

    #[test]
    fn dotted_slide_composes_words() {
        // Spec of the move on a positive letter: b -> b a^sign.
        let d = Diagram::new(DimSpec::new(5, 2).unwrap())
            .with_dotted("e1")
            .unwrap()
            .with_dotted("e2")
            .unwrap()
            .with_framed("f1", &letters(&[("e2", Sign::Plus)]), 0)
            .unwrap();
        let slid = apply_move(
            &d,
            &Move::SlideDotted {
                a: cid("e1"),
                b: cid("e2"),
                sign: Sign::Plus,
            },
        )
        .unwrap();
        // Class of e2 e1, stored at its minimal rotation.
        assert_eq!(slid.framed()[0].word.to_string(), "e1 e2");
        assert_eq!(slid.linking_matrix().entries, vec![vec![1, 1]]);
    }

    #[test]
    fn dotted_slide_is_a_column_operation() {
        for k in [2u32, 3] {
            let d = Diagram::new(DimSpec::new(2 * k + 1, k).unwrap())
                .with_dotted("e1")
                .unwrap()
                .with_dotted("e2")
                .unwrap()
                .with_framed(
                    "f1",
                    &letters(&[("e1", Sign::Plus), ("e2", Sign::Minus), ("e2", Sign::Minus)]),
                    0,
                )
                .unwrap()
                .with_framed("f2", &letters(&[("e2", Sign::Plus), ("e1", Sign::Plus)]), 0)
                .unwrap();
            let before = d.linking_matrix().entries;
            let slid = apply_move(
                &d,
                &Move::SlideDotted {
                    a: cid("e1"),
                    b: cid("e2"),
                    sign: Sign::Minus,
                },
            )
            .unwrap();
            let after = slid.linking_matrix().entries;
            for (row_b, row_a) in before.iter().zip(&after) {
                assert_eq!(row_a[0], row_b[0] - row_b[1]);
                assert_eq!(row_a[1], row_b[1]);
            }
        }
    }

    #[test]
    fn dotted_slide_preserves_the_group_at_k2() {
        // The substitution is an automorphism: applying it with sign - and
        // then sign + returns every word to its class.
        let d = Diagram::new(DimSpec::new(5, 2).unwrap())
            .with_dotted("x1")
            .unwrap()
            .with_dotted("x2")
            .unwrap()
            .with_framed(
                "f1",
                &letters(&[
                    ("x1", Sign::Plus),
                    ("x2", Sign::Plus),
                    ("x1", Sign::Plus),
                    ("x2", Sign::Minus),
                    ("x1", Sign::Minus),
                    ("x2", Sign::Minus),
                ]),
                0,
            )
            .unwrap();
        let fwd = Move::SlideDotted {
            a: cid("x2"),
            b: cid("x1"),
            sign: Sign::Minus,
        };
        let bwd = Move::SlideDotted {
            a: cid("x2"),
            b: cid("x1"),
            sign: Sign::Plus,
        };
        let back = apply_move(&apply_move(&d, &fwd).unwrap(), &bwd).unwrap();
        assert_eq!(back.framed()[0].word, d.framed()[0].word);
    }

    #[test]
    fn cancelling_pair() {
        let d = Diagram::new(DimSpec::new(7, 3).unwrap())
            .with_dotted("e1")
            .unwrap()
            .with_dotted("e2")
            .unwrap()
            .with_framed("f1", &letters(&[("e1", Sign::Minus)]), 0)
            .unwrap()
            .with_framed("f2", &letters(&[("e2", Sign::Plus), ("e2", Sign::Plus)]), 0)
            .unwrap();
        let out = apply_move(
            &d,
            &Move::CancelPair {
                e: cid("e1"),
                f: cid("f1"),
            },
        )
        .unwrap();
        assert_eq!(out.dotted().len(), 1);
        assert_eq!(out.framed().len(), 1);
        assert_eq!(out.framed()[0].id.as_str(), "f2");
    }

    #[test]
    fn cancel_rejections() {
        let d = Diagram::new(DimSpec::new(7, 3).unwrap())
            .with_dotted("e1")
            .unwrap()
            .with_framed("f1", &letters(&[("e1", Sign::Plus), ("e1", Sign::Plus)]), 0)
            .unwrap();
        let err = apply_move(
            &d,
            &Move::CancelPair {
                e: cid("e1"),
                f: cid("f1"),
            },
        )
        .unwrap_err();
        assert_eq!(err.name(), "NotCancelling");

        let d2 = Diagram::new(DimSpec::new(7, 3).unwrap())
            .with_dotted("e1")
            .unwrap()
            .with_framed("f1", &letters(&[("e1", Sign::Plus)]), 0)
            .unwrap()
            .with_framed("f2", &letters(&[("e1", Sign::Plus)]), 0)
            .unwrap();
        let err = apply_move(
            &d2,
            &Move::CancelPair {
                e: cid("e1"),
                f: cid("f1"),
            },
        )
        .unwrap_err();
        assert_eq!(err.name(), "NotCancelling");
    }

    #[test]
    fn create_then_cancel_is_identity() {
        let d = z_sample();
        let created = apply_move(
            &d,
            &Move::CreatePair {
                e: cid("g"),
                f: cid("h"),
            },
        )
        .unwrap();
        assert_eq!(created.dotted().len(), 2);
        assert_eq!(created.framed()[2].word.to_string(), "g");
        assert!(created.framed()[2].framing.is_zero());
        let back = apply_move(
            &created,
            &Move::CancelPair {
                e: cid("g"),
                f: cid("h"),
            },
        )
        .unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn move_errors() {
        let d = z_sample();
        assert_eq!(
            apply_move(
                &d,
                &Move::SlideFramed {
                    i: cid("f1"),
                    j: cid("f1"),
                    sign: Sign::Plus,
                    conjugator: vec![]
                }
            )
            .unwrap_err()
            .name(),
            "SelfSlide"
        );
        assert_eq!(
            apply_move(
                &d,
                &Move::SlideFramed {
                    i: cid("f1"),
                    j: cid("nope"),
                    sign: Sign::Plus,
                    conjugator: vec![]
                }
            )
            .unwrap_err()
            .name(),
            "UnknownComponent"
        );
        assert_eq!(
            apply_move(
                &d,
                &Move::CreatePair {
                    e: cid("e1"),
                    f: cid("zz")
                }
            )
            .unwrap_err()
            .name(),
            "DuplicateId"
        );
    }

    #[test]
    fn replay_reports_failing_index() {
        let d = z_sample();
        let cert = Certificate::new(vec![
            Move::SlideFramed {
                i: cid("f1"),
                j: cid("f2"),
                sign: Sign::Plus,
                conjugator: vec![],
            },
            Move::CancelPair {
                e: cid("e1"),
                f: cid("f1"),
            },
        ]);
        match apply(&d, &cert).unwrap_err() {
            Error::Replay { index, cause } => {
                assert_eq!(index, 1);
                assert_eq!(cause.name(), "NotCancelling");
            }
            other => panic!("expected ReplayError, got {other:?}"),
        }
    }
}
