//! Line-oriented text format for strategy trees.
//!
//! ```text
//! # puzzle 3
//! ask A builtin:p3.q1
//!   on boom:
//!     ask C would(first,and(is(self,true),self_would(second)))
//!       on boom:
//!         guess A=false,B=random,C=true
//!       on opaque:
//!         guess A=true,B=random,C=false
//!   on opaque:
//!     ...
//! ```
//!
//! * `ask <god> <question>`: the question is DSL text or `builtin:<name>` and
//!   runs to the end of the line. It is followed by one or more `on` blocks
//!   indented deeper than the `ask`.
//! * `on <label>[, <label>...]:` introduces the subtree for those labels,
//!   which must be exactly one `ask` or `guess` indented deeper than the `on`.
//!   Labels are `opaque`, `same`, `first`, `second`, `boom`.
//! * `guess A=<role>,B=<role>,C=<role>` is a leaf.
//! * Blank lines and lines starting with `#` are ignored. Indent with spaces.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::tree::{AskNode, StrategyTree};
use crate::question::question_from_ref;
use crate::world::{GodId, GodOrder, ObservationLabel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

struct Line<'a> {
    number: usize,
    indent: usize,
    text: &'a str,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError {
        line,
        message: message.into(),
    })
}

pub fn parse_strategy(text: &str) -> Result<StrategyTree, FormatError> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let trimmed = raw.trim_end();
        let body = trimmed.trim_start();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        if trimmed.starts_with('\t') {
            return err(i + 1, "indent with spaces, not tabs");
        }
        lines.push(Line {
            number: i + 1,
            indent: trimmed.len() - body.len(),
            text: body,
        });
    }
    let Some(first) = lines.first() else {
        return err(1, "empty strategy");
    };
    let (tree, next) = parse_tree(&lines, 0, first.indent)?;
    if let Some(extra) = lines.get(next) {
        return err(extra.number, "unexpected line after the root tree");
    }
    Ok(tree)
}

fn parse_tree(lines: &[Line<'_>], at: usize, indent: usize) -> Result<(StrategyTree, usize), FormatError> {
    let line = &lines[at];
    if line.indent != indent {
        return err(line.number, "inconsistent indentation");
    }
    let (keyword, rest) = line.text.split_once(char::is_whitespace).unwrap_or((line.text, ""));
    match keyword {
        "guess" => {
            let order: GodOrder = rest
                .trim()
                .parse()
                .or_else(|e| err(line.number, format!("bad guess: {e}")))?;
            Ok((StrategyTree::Guess(order), at + 1))
        }
        "ask" => {
            let rest = rest.trim_start();
            let (god, question) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            let target: GodId = god.parse().or_else(|e| err(line.number, format!("{e}")))?;
            if question.trim().is_empty() {
                return err(line.number, "missing question");
            }
            let question = question_from_ref(question).or_else(|e| err(line.number, format!("{e}")))?;
            let mut branches = BTreeMap::new();
            let mut next = at + 1;
            let mut on_indent = None;
            while let Some(on) = lines.get(next) {
                if on.indent <= indent {
                    break;
                }
                if *on_indent.get_or_insert(on.indent) != on.indent {
                    return err(on.number, "inconsistent indentation");
                }
                let Some(spec) = on.text.strip_prefix("on ").and_then(|s| s.strip_suffix(':')) else {
                    return err(on.number, "expected `on <label>:`");
                };
                let labels = spec
                    .split(',')
                    .map(|l| l.trim().parse::<ObservationLabel>())
                    .collect::<Result<Vec<_>, _>>()
                    .or_else(|e| err(on.number, format!("bad label: {e}")))?;
                let Some(child) = lines.get(next + 1).filter(|c| c.indent > on.indent) else {
                    return err(on.number, "`on` block has no subtree");
                };
                let (subtree, after) = parse_tree(lines, next + 1, child.indent)?;
                for label in labels {
                    if branches.insert(label, subtree.clone()).is_some() {
                        return err(on.number, format!("duplicate branch `{label}`"));
                    }
                }
                next = after;
            }
            if branches.is_empty() {
                return err(line.number, "`ask` has no `on` blocks");
            }
            Ok((
                StrategyTree::Ask(AskNode {
                    target,
                    question,
                    branches,
                }),
                next,
            ))
        }
        other => err(line.number, format!("expected `ask` or `guess`, found `{other}`")),
    }
}

/// Renders a tree so that [`parse_strategy`] reads it back unchanged.
/// Adjacent labels with identical subtrees share one `on` line.
pub fn render_strategy(tree: &StrategyTree) -> String {
    let mut out = String::new();
    render_into(tree, 0, &mut out);
    out
}

fn render_into(tree: &StrategyTree, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match tree {
        StrategyTree::Guess(order) => {
            let _ = writeln!(out, "{pad}guess {}", order.spec());
        }
        StrategyTree::Ask(node) => {
            let _ = writeln!(out, "{pad}ask {} {}", node.target, node.question);
            let mut groups: Vec<(Vec<ObservationLabel>, &StrategyTree)> = Vec::new();
            for (label, child) in &node.branches {
                match groups.last_mut() {
                    Some((labels, prev)) if *prev == child => labels.push(*label),
                    _ => groups.push((vec![*label], child)),
                }
            }
            for (labels, child) in groups {
                let names: Vec<&str> = labels.iter().map(|l| l.keyword()).collect();
                let _ = writeln!(out, "{pad}  on {}:", names.join(", "));
                render_into(child, indent + 4, out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategy::builtin_strategy;

    #[test]
    fn builtins_round_trip() {
        for name in ["puzzle1", "puzzle3"] {
            let tree = builtin_strategy(name).unwrap();
            let text = render_strategy(&tree);
            assert_eq!(parse_strategy(&text).unwrap(), tree, "{text}");
        }
    }

    #[test]
    fn shared_branches_and_builtin_refs() {
        let text = "\
# A is asked twice
ask A builtin:p1.q1
  on opaque:
    ask A   is(self, true)
      on same:
        guess A=true,B=false,C=random
      on first, second:
        guess RTF
";
        let tree = parse_strategy(text).unwrap();
        assert_eq!(tree.depth(), 2);
        use ObservationLabel::*;
        assert_eq!(tree.subtree(&[Opaque, First]), tree.subtree(&[Opaque, Second]));
        assert_eq!(
            tree.subtree(&[Opaque, Same]),
            Some(&StrategyTree::Guess("TFR".parse().unwrap()))
        );
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad_god = "ask D is(A,true)\n  on opaque:\n    guess TFR\n";
        assert_eq!(parse_strategy(bad_god).unwrap_err().line, 1);
        let no_subtree = "ask A is(A,true)\n  on opaque:\n";
        assert_eq!(parse_strategy(no_subtree).unwrap_err().line, 2);
        let dup = "ask A is(A,true)\n  on opaque:\n    guess TFR\n  on opaque:\n    guess TFR\n";
        assert!(parse_strategy(dup).unwrap_err().message.contains("duplicate"));
        let bad_label = "ask A is(A,true)\n  on maybe:\n    guess TFR\n";
        assert_eq!(parse_strategy(bad_label).unwrap_err().line, 2);
        assert!(parse_strategy("").is_err());
        assert!(parse_strategy("guess TFR\nguess TFR\n").is_err());
        assert!(parse_strategy("guess A=true,B=true,C=false").is_err());
    }
}
