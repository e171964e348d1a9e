//! Plain-text formats for instances and matchings.
//!
//! Instances:
//!
//! ```text
//! # comments run to the end of the line
//! men 3
//! women 3
//! m1: w2 w1
//! m2: w2 w3
//! m3:
//! w1: m1
//! w2: (m1 m2)
//! w3: m2
//! ```
//!
//! Every declared person needs a line, possibly empty after the colon.
//! Parentheses may stand alone or stick to the neighbouring token.
//!
//! Matchings are one `m<i> w<j>` pair per line. A `size K` line is checked
//! against the number of pairs and a `stable ...` line is ignored, so the
//! text output of `smti solve` reads back as a matching.

use std::fmt::Write as _;

use thiserror::Error;

use crate::model::{Instance, Matching, PersonId, PreferenceList, Side, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid instance: {0}")]
    Invalid(ValidationReport),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

#[derive(Debug, PartialEq, Eq)]
enum Token<'a> {
    Open,
    Close,
    Word(&'a str),
}

/// Splits a line into tokens with 1-based columns; stops at `#`.
fn tokenize(line: &str) -> Vec<(usize, Token<'_>)> {
    let line = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut word_start: Option<(usize, usize)> = None;
    let mut end = 0;
    for (column, (i, c)) in line.char_indices().enumerate() {
        let column = column + 1;
        end = i + c.len_utf8();
        if c.is_whitespace() || c == '(' || c == ')' {
            if let Some((col, s)) = word_start.take() {
                out.push((col, Token::Word(&line[s..i])));
            }
            match c {
                '(' => out.push((column, Token::Open)),
                ')' => out.push((column, Token::Close)),
                _ => {}
            }
        } else if word_start.is_none() {
            word_start = Some((column, i));
        }
    }
    if let Some((col, s)) = word_start {
        out.push((col, Token::Word(&line[s..end])));
    }
    out
}

fn parse_person(tok: &str, line: usize, column: usize) -> Result<PersonId, ParseError> {
    let side = match tok.chars().next() {
        Some('m') => Side::Man,
        Some('w') => Side::Woman,
        _ => {
            return Err(syntax(
                line,
                column,
                format!("expected m<i> or w<j>, found {tok:?}"),
            ))
        }
    };
    let index = tok[1..]
        .parse::<usize>()
        .map_err(|_| syntax(line, column, format!("bad index in {tok:?}")))?;
    Ok(PersonId { side, index })
}

fn parse_count(
    tokens: &[(usize, Token<'_>)],
    keyword: &str,
    line: usize,
) -> Result<usize, ParseError> {
    match tokens {
        [(_, Token::Word(k)), (col, Token::Word(n))] if *k == keyword => n
            .parse()
            .map_err(|_| syntax(line, *col, format!("bad count {n:?}"))),
        [(col, _), ..] => Err(syntax(line, *col, format!("expected \"{keyword} N\""))),
        [] => Err(syntax(line, 1, format!("expected \"{keyword} N\""))),
    }
}

/// Parses the instance text format and validates the result.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, tokenize(l)))
        .filter(|(_, toks)| !toks.is_empty());

    let (ln, toks) = lines
        .next()
        .ok_or_else(|| syntax(1, 1, "expected \"men N\""))?;
    let num_men = parse_count(&toks, "men", ln)?;
    let last_line = text.lines().count().max(1);
    let (ln, toks) = lines
        .next()
        .ok_or_else(|| syntax(last_line, 1, "expected \"women N\""))?;
    let num_women = parse_count(&toks, "women", ln)?;

    let mut men: Vec<Option<PreferenceList>> = vec![None; num_men];
    let mut women: Vec<Option<PreferenceList>> = vec![None; num_women];

    for (ln, toks) in lines {
        let (col, head) = match &toks[0] {
            (col, Token::Word(w)) => (*col, *w),
            (col, _) => return Err(syntax(ln, *col, "expected a person label")),
        };
        let Some(label) = head.strip_suffix(':') else {
            return Err(syntax(ln, col, format!("expected \"{head}:\"")));
        };
        let owner = parse_person(label, ln, col)?;
        let slot = match owner.side {
            Side::Man => men.get_mut(owner.index.wrapping_sub(1)),
            Side::Woman => women.get_mut(owner.index.wrapping_sub(1)),
        };
        let Some(slot) = slot else {
            return Err(syntax(ln, col, format!("{owner} is not declared")));
        };
        if slot.is_some() {
            return Err(syntax(ln, col, format!("second line for {owner}")));
        }

        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut open: Option<(usize, Vec<usize>)> = None;
        for (col, tok) in &toks[1..] {
            match tok {
                Token::Open => {
                    if open.is_some() {
                        return Err(syntax(ln, *col, "nested parenthesis"));
                    }
                    open = Some((*col, Vec::new()));
                }
                Token::Close => match open.take() {
                    None => return Err(syntax(ln, *col, "unbalanced parenthesis: unexpected ')'")),
                    Some((_, g)) if g.is_empty() => return Err(syntax(ln, *col, "empty tie")),
                    Some((_, g)) => groups.push(g),
                },
                Token::Word(w) => {
                    let p = parse_person(w, ln, *col)?;
                    if p.side == owner.side {
                        return Err(syntax(ln, *col, format!("{owner} cannot list {p}")));
                    }
                    match &mut open {
                        Some((_, g)) => g.push(p.index),
                        None => groups.push(vec![p.index]),
                    }
                }
            }
        }
        if let Some((col, _)) = open {
            return Err(syntax(ln, col, "unbalanced parenthesis: missing ')'"));
        }
        *slot = Some(PreferenceList::new(groups));
    }

    let collect = |lists: Vec<Option<PreferenceList>>, side: Side| {
        lists
            .into_iter()
            .enumerate()
            .map(|(i, l)| {
                l.ok_or_else(|| {
                    syntax(
                        last_line,
                        1,
                        format!("missing line for {}", PersonId { side, index: i + 1 }),
                    )
                })
            })
            .collect::<Result<Vec<_>, _>>()
    };
    let men = collect(men, Side::Man)?;
    let women = collect(women, Side::Woman)?;
    Instance::new(num_men, num_women, men, women).map_err(ParseError::Invalid)
}

fn write_list(out: &mut String, side: Side, list: &PreferenceList) {
    let letter = side.opposite().letter();
    for group in list.groups() {
        out.push(' ');
        if group.len() == 1 {
            let _ = write!(out, "{letter}{}", group[0]);
        } else {
            out.push('(');
            for (k, x) in group.iter().enumerate() {
                if k > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{letter}{x}");
            }
            out.push(')');
        }
    }
}

/// Canonical text: persons ascending, single spaces, ties as `(w1 w4)`,
/// trailing newline. Tie members keep their stored order.
pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = format!("men {}\nwomen {}\n", inst.num_men(), inst.num_women());
    for side in [Side::Man, Side::Woman] {
        for (i, list) in inst.lists(side).iter().enumerate() {
            let _ = write!(out, "{}{}:", side.letter(), i + 1);
            write_list(&mut out, side, list);
            out.push('\n');
        }
    }
    out
}

/// One preference list in the instance format, without the owner label.
pub fn format_list(side: Side, list: &PreferenceList) -> String {
    let mut out = String::new();
    write_list(&mut out, side, list);
    out.trim_start().to_string()
}

pub fn parse_matching(text: &str) -> Result<Matching, ParseError> {
    let mut pairs = Vec::new();
    let mut declared_size = None;
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let words: Vec<(usize, &str)> = tokenize(line)
            .into_iter()
            .map(|(col, t)| match t {
                Token::Word(w) => Ok((col, w)),
                _ => Err(syntax(ln, col, "unexpected parenthesis")),
            })
            .collect::<Result<_, _>>()?;
        match words.as_slice() {
            [] => {}
            [(_, "size"), (col, k)] => {
                declared_size = Some((
                    ln,
                    k.parse::<usize>()
                        .map_err(|_| syntax(ln, *col, format!("bad size {k:?}")))?,
                ));
            }
            [(_, "stable"), ..] => {}
            [(c1, a), (c2, b)] => {
                let m = parse_person(a, ln, *c1)?;
                let w = parse_person(b, ln, *c2)?;
                if m.side != Side::Man || w.side != Side::Woman {
                    return Err(syntax(ln, *c1, "expected \"m<i> w<j>\""));
                }
                if pairs.iter().any(|&(pm, _)| pm == m.index) {
                    return Err(syntax(ln, *c1, format!("{m} appears twice")));
                }
                if pairs.iter().any(|&(_, pw)| pw == w.index) {
                    return Err(syntax(ln, *c2, format!("{w} appears twice")));
                }
                pairs.push((m.index, w.index));
            }
            [(col, _), ..] => return Err(syntax(ln, *col, "expected \"m<i> w<j>\"")),
        }
    }
    let matching = Matching::from_pairs(pairs).expect("duplicates rejected above");
    if let Some((ln, k)) = declared_size {
        if k != matching.len() {
            return Err(syntax(
                ln,
                1,
                format!("size {k} but {} pairs", matching.len()),
            ));
        }
    }
    Ok(matching)
}

pub fn serialize_matching(m: &Matching) -> String {
    m.pairs()
        .iter()
        .map(|(man, woman)| format!("m{man} w{woman}\n"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{builtin_instance, gen_instance, Builtin, GenParams};
    use proptest::prelude::*;

    const I1_TEXT: &str = "\
# two stable matchings of size 2
men 3
women 3
m1: w2 w1
m2: w2   w3
m3:
w1: m1
w2: (m1 m2)
w3: m2
";

    #[test]
    fn i1_text() {
        assert_eq!(
            parse_instance(I1_TEXT).unwrap(),
            builtin_instance(Builtin::I1)
        );
    }

    #[test]
    fn attached_and_detached_parentheses() {
        let a = parse_instance("men 1\nwomen 3\nm1: w3 (w1 w2)\nw1:\nw2:\nw3:\n").unwrap();
        let b = parse_instance("men 1\nwomen 3\nm1: w3 ( w1 w2 )\nw1:\nw2:\nw3:\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.list(PersonId::man(1)).groups(), &[vec![3], vec![1, 2]]);
    }

    #[test]
    fn empty_lists() {
        let inst = parse_instance("men 1\nwomen 1\nm1:\nw1:\n").unwrap();
        assert_eq!(inst, Instance::empty(1, 1));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_instance("men 1\nwomen 2\nm1: w1 (w2\nw1:\nw2:\n").unwrap_err();
        assert!(
            matches!(&err, ParseError::Syntax { line: 3, column: 8, message } if message.contains("unbalanced")),
            "{err}"
        );
        let err = parse_instance("men 1\nwomen 1\nm1: w1)\nw1:\n").unwrap_err();
        assert!(
            matches!(
                err,
                ParseError::Syntax {
                    line: 3,
                    column: 7,
                    ..
                }
            ),
            "{err}"
        );
        let err = parse_instance("men 1\nwomen 1\nm1: m1\nw1:\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 3, .. }));
        let err = parse_instance("men 1\nwomen 1\nm1:\n").unwrap_err();
        assert!(err.to_string().contains("missing line for w1"), "{err}");
        let err = parse_instance("men 1\nwomen 1\nm1:\nm1:\nw1:\n").unwrap_err();
        assert!(err.to_string().contains("second line"), "{err}");
        assert!(parse_instance("women 1\nmen 1\n").is_err());
    }

    #[test]
    fn semantic_errors_come_from_validation() {
        let err = parse_instance("men 1\nwomen 2\nm1: w3\nw1:\nw2:\n").unwrap_err();
        assert!(matches!(err, ParseError::Invalid(r) if r.violations.len() == 1));
        let err = parse_instance("men 1\nwomen 1\nm1: w1 w1\nw1:\n").unwrap_err();
        assert!(matches!(err, ParseError::Invalid(_)));
    }

    #[test]
    fn serialization_examples() {
        let i3 = serialize_instance(&builtin_instance(Builtin::I3));
        assert!(i3.contains("m2: (w2 w3)\n"));
        assert!(i3.contains("m4:\n"));
        assert!(i3.ends_with("w4: m3\n"));
        let messy = "men 1\n\n women 2 # two\nw2:   m1\nm1:( w2 w1 )\nw1:\n";
        let canonical = serialize_instance(&parse_instance(messy).unwrap());
        assert_eq!(canonical, "men 1\nwomen 2\nm1: (w2 w1)\nw1:\nw2: m1\n");
        assert_eq!(
            serialize_instance(&parse_instance(&canonical).unwrap()),
            canonical
        );
    }

    #[test]
    fn matching_format() {
        let m = Matching::from_pairs([(2, 3), (1, 2)]).unwrap();
        let text = serialize_matching(&m);
        assert_eq!(text, "m1 w2\nm2 w3\n");
        assert_eq!(parse_matching(&text).unwrap(), m);
        assert_eq!(
            parse_matching("# solve output\nm1 w2\nm2 w3\nsize 2\nstable true\n").unwrap(),
            m
        );
        assert!(parse_matching("m1 w2\nsize 3\n").is_err());
        assert!(parse_matching("m1 w2\nm1 w3\n").is_err());
        assert!(parse_matching("w1 m2\n").is_err());
    }

    proptest! {
        #[test]
        fn random_instances_round_trip(
            seed in any::<u64>(),
            men in 0usize..6,
            women in 0usize..6,
            accept in 0.0f64..=1.0,
            ties in 0.0f64..=1.0,
        ) {
            let p = GenParams { num_men: men, num_women: women, ..GenParams::new(0, accept, seed).with_ties(ties, ties) };
            let inst = gen_instance(&p);
            let text = serialize_instance(&inst);
            let back = parse_instance(&text).unwrap();
            prop_assert_eq!(&back, &inst);
            prop_assert_eq!(serialize_instance(&back), text);
        }
    }
}
