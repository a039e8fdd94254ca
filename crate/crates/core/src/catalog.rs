//! Bundled example diagrams.
//!
//! Each entry renders to diagram-file text with a comment header describing
//! what the diagram is and which manifold it represents. Some entries take
//! `key=value` parameters (dimensions, pass counts, framings); defaults are
//! chosen so every example is valid as shipped.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::format::parse_diagram;

/// Names accepted by [`example`], in listing order.
pub const EXAMPLE_NAMES: &[&str] = &[
    "K1", "K2", "K3", "K4", "K5", "K6", "Kt", "Kpab", "A6-s1xb", "A6-s2xb", "A6-s2xtb", "A6-bn",
    "A6-lens", "A6-sum01", "A6-sum11",
];

struct Params<'a> {
    given: BTreeMap<&'a str, i64>,
}

impl<'a> Params<'a> {
    fn new(pairs: &'a [(String, i64)]) -> Params<'a> {
        Params {
            given: pairs.iter().map(|(k, v)| (k.as_str(), *v)).collect(),
        }
    }

    fn take(&mut self, key: &str, default: i64) -> i64 {
        self.given.remove(key).unwrap_or(default)
    }

    fn finish(self, name: &str) -> Result<()> {
        if let Some(key) = self.given.keys().next() {
            return Err(Error::Semantic(format!(
                "example `{name}` takes no parameter `{key}`"
            )));
        }
        Ok(())
    }
}

fn repeat_word(id: &str, p: i64) -> String {
    if p == 0 {
        String::new()
    } else {
        let letter = if p > 0 {
            id.to_string()
        } else {
            format!("{id}^-1")
        };
        format!(" word {}", vec![letter; p.unsigned_abs() as usize].join(" "))
    }
}

/// Render the named example with the given `key=value` overrides.
pub fn example(name: &str, params: &[(String, i64)]) -> Result<String> {
    let mut p = Params::new(params);
    let text = match name {
        "K1" => {
            let (n, k) = (p.take("n", 7), p.take("k", 3));
            p.finish(name)?;
            format!(
                "# K1: the framed sphere passes through the dotted sphere, doubles back,\n\
                 # and returns. The word free-reduces to a single pass, so the pair\n\
                 # cancels and the diagram represents B^{n}. (The flat word model cannot\n\
                 # see the clasp that distinguishes this pattern in dimension 4.)\n\
                 dim {n} {k}\n\
                 dotted x1\n\
                 framed f1 framing 0 word x1 x1 x1^-1\n"
            )
        }
        "K2" => {
            let (n, k) = (p.take("n", 7), p.take("k", 3));
            p.finish(name)?;
            format!(
                "# K2: a cancelling pair, one straight pass; represents B^{n}.\n\
                 dim {n} {k}\n\
                 dotted x1\n\
                 framed f1 framing 0 word x1\n"
            )
        }
        "K3" => {
            let (n, k) = (p.take("n", 5), p.take("k", 2));
            p.finish(name)?;
            format!(
                "# K3: two dotted spheres and one framed sphere with a tangled word.\n\
                 # At k = 2 the fundamental group <x1, x2 | x1 x2 x1 x2^-1 x1^-1 x2^-1>\n\
                 # is not Z, which separates this diagram from K4.\n\
                 dim {n} {k}\n\
                 dotted x1\n\
                 dotted x2\n\
                 framed f1 framing 0 word x1 x2 x1 x2^-1 x1^-1 x2^-1\n"
            )
        }
        "K4" => {
            let (n, k) = (p.take("n", 5), p.take("k", 2));
            p.finish(name)?;
            format!(
                "# K4: two dotted spheres, one framed sphere reading x1 x2^-1; the\n\
                 # fundamental group is Z and one cancelling pair removes, leaving\n\
                 # S^{skm1} x B^{nkp1}.\n\
                 dim {n} {k}\n\
                 dotted x1\n\
                 dotted x2\n\
                 framed f1 framing 0 word x1 x2^-1\n",
                skm1 = k - 1,
                nkp1 = n - k + 1,
            )
        }
        "K5" => {
            let (n, k) = (p.take("n", 7), p.take("k", 3));
            p.finish(name)?;
            format!(
                "# K5: one framed sphere reading the commutator of the two dotted\n\
                 # generators. For k >= 3 the word abelianizes away and the diagram\n\
                 # matches K6; at k = 2 the fundamental group is Z x Z.\n\
                 dim {n} {k}\n\
                 dotted x1\n\
                 dotted x2\n\
                 framed f1 framing 0 word x1 x2 x1^-1 x2^-1\n"
            )
        }
        "K6" => {
            let (n, k) = (p.take("n", 7), p.take("k", 3));
            p.finish(name)?;
            format!(
                "# K6: two dotted spheres and one unlinked 0-framed sphere; the split\n\
                 # union of two S^{km1} x B^{nkp1} factors and one S^{k} x B^{nk} factor.\n\
                 dim {n} {k}\n\
                 dotted x1\n\
                 dotted x2\n\
                 framed f1 framing 0\n",
                km1 = k - 1,
                nkp1 = n - k + 1,
                nk = n - k,
            )
        }
        "Kt" => {
            let (n, k, t) = (p.take("n", 6), p.take("k", 2), p.take("t", 1));
            p.finish(name)?;
            format!(
                "# Kt: a single framed sphere with framing t; the B^{nk}-bundle over\n\
                 # S^{k}, twisted when t is nonzero in the framing group.\n\
                 dim {n} {k}\n\
                 framed n1 framing {t}\n",
                nk = n - k,
            )
        }
        "Kpab" => {
            let n = p.take("n", 9);
            let k = p.take("k", 4);
            let pp = p.take("p", 4);
            let a = p.take("a", 0);
            let b = p.take("b", 0);
            let m = p.take("m", 1);
            p.finish(name)?;
            if pp < 0 {
                return Err(Error::Semantic(format!(
                    "example `Kpab` needs p >= 0, got {pp}"
                )));
            }
            if m < 1 {
                return Err(Error::Semantic(format!(
                    "example `Kpab` needs m >= 1, got {m}"
                )));
            }
            let mut text = format!(
                "# Kpab: the one-dotted normal form K(p;a,b): one dotted sphere, one\n\
                 # framed sphere passing p times with framing a, and m-1 unlinked\n\
                 # framed spheres with framings (b, 0, ...).\n\
                 dim {n} {k}\n\
                 dotted l1\n\
                 framed n1 framing {a}{}\n",
                repeat_word("l1", pp),
            );
            for i in 2..=m {
                let fr = if i == 2 { b } else { 0 };
                text.push_str(&format!("framed e{i} framing {fr}\n"));
            }
            text
        }
        "A6-s1xb" => {
            let n = p.take("n", 6);
            p.finish(name)?;
            format!(
                "# A6-s1xb: a single dotted sphere; represents S^1 x B^{nm1}.\n\
                 dim {n} 2\n\
                 dotted x1\n",
                nm1 = n - 1,
            )
        }
        "A6-s2xb" => {
            let n = p.take("n", 6);
            p.finish(name)?;
            format!(
                "# A6-s2xb: a single 0-framed sphere; represents S^2 x B^{nm2}.\n\
                 dim {n} 2\n\
                 framed n1 framing 0\n",
                nm2 = n - 2,
            )
        }
        "A6-s2xtb" => {
            let n = p.take("n", 6);
            p.finish(name)?;
            format!(
                "# A6-s2xtb: a single 1-framed sphere; the twisted B^{nm2}-bundle\n\
                 # over S^2.\n\
                 dim {n} 2\n\
                 framed n1 framing 1\n",
                nm2 = n - 2,
            )
        }
        "A6-bn" => {
            let (n, t) = (p.take("n", 6), p.take("t", 0));
            p.finish(name)?;
            format!(
                "# A6-bn: a cancelling pair with framing t in {{0,1}}; the framing is\n\
                 # irrelevant to the cancellation, so this represents B^{n}.\n\
                 dim {n} 2\n\
                 dotted x1\n\
                 framed n1 framing {t} word x1\n"
            )
        }
        "A6-lens" => {
            let (n, pp) = (p.take("n", 6), p.take("p", 4));
            p.finish(name)?;
            if pp < 0 {
                return Err(Error::Semantic(format!(
                    "example `A6-lens` needs p >= 0, got {pp}"
                )));
            }
            format!(
                "# A6-lens: one dotted sphere and one 0-framed sphere passing p times;\n\
                 # represents the punctured lens space product L({pp},1) x B^{nm3}.\n\
                 dim {n} 2\n\
                 dotted x1\n\
                 framed n1 framing 0{}\n",
                repeat_word("x1", pp),
                nm3 = n - 3,
            )
        }
        "A6-sum01" => {
            let n = p.take("n", 6);
            p.finish(name)?;
            format!(
                "# A6-sum01: two unlinked framed spheres with framings 0 and 1; the\n\
                 # boundary connected sum of the trivial and the twisted bundle.\n\
                 dim {n} 2\n\
                 framed n1 framing 0\n\
                 framed n2 framing 1\n"
            )
        }
        "A6-sum11" => {
            let n = p.take("n", 6);
            p.finish(name)?;
            format!(
                "# A6-sum11: two unlinked framed spheres, both framing 1; sliding one\n\
                 # over the other shows this equals A6-sum01.\n\
                 dim {n} 2\n\
                 framed n1 framing 1\n\
                 framed n2 framing 1\n"
            )
        }
        _ => return Err(Error::UnknownExample(name.to_string())),
    };
    // Every rendered example must itself be a valid diagram file; parameter
    // combinations that break that (e.g. n too small) surface here.
    parse_diagram(&text)?;
    Ok(text)
}
