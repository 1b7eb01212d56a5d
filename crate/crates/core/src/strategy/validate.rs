use std::fmt;

use super::tree::{StrategyTree, MAX_DEPTH};
use crate::world::{render_labels, GodId, ObservationLabel, ParadoxPolicy, RunConfig};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FindingKind {
    /// The path asks a god whose head already exploded.
    AsksExplodedGod(GodId),
    /// A label that can occur here has no branch.
    MissingBranch(ObservationLabel),
    /// The path asks more than [`MAX_DEPTH`] questions.
    TooDeep(usize),
    /// A branch for a label that can never occur here. Harmless.
    UnreachableBranch(ObservationLabel),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    /// Labels leading to the offending node.
    pub path: Vec<ObservationLabel>,
    pub kind: FindingKind,
}

impl Finding {
    pub fn is_violation(&self) -> bool {
        !matches!(self.kind, FindingKind::UnreachableBranch(_))
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = if self.path.is_empty() {
            "root".to_string()
        } else {
            render_labels(&self.path)
        };
        match &self.kind {
            FindingKind::AsksExplodedGod(g) => write!(f, "{at}: asks exploded god {g}"),
            FindingKind::MissingBranch(l) => write!(f, "{at}: missing branch for `{l}`"),
            FindingKind::TooDeep(d) => write!(f, "{at}: depth > {MAX_DEPTH} (question {d})"),
            FindingKind::UnreachableBranch(l) => write!(f, "{at}: warning: branch `{l}` is unreachable"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.findings.iter().all(|f| !f.is_violation())
    }

    pub fn violations(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.is_violation())
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.findings.is_empty() {
            return f.write_str("valid");
        }
        for (i, finding) in self.findings.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{finding}")?;
        }
        Ok(())
    }
}

/// Labels the next answer can receive after `prefix`, from the channel rules
/// alone. `may_explode` adds `Boom`.
pub fn possible_next_labels(prefix: &[ObservationLabel], may_explode: bool) -> Vec<ObservationLabel> {
    use ObservationLabel::*;
    let heard = prefix.iter().any(|l| *l != Boom);
    let ranks_known = prefix.iter().any(|l| matches!(l, First | Second));
    let mut out = match (heard, ranks_known) {
        (false, _) => vec![Opaque],
        (true, false) => vec![Same, First, Second],
        (true, true) => vec![First, Second],
    };
    if may_explode {
        out.push(Boom);
    }
    out
}

/// Checks structural constraints, assuming any self-referential question may
/// make its target explode.
pub fn validate_strategy(tree: &StrategyTree) -> ValidationReport {
    validate_with(tree, true)
}

/// As [`validate_strategy`], but explosions are only reachable under
/// [`ParadoxPolicy::Explode`].
pub fn validate_strategy_for(tree: &StrategyTree, config: RunConfig) -> ValidationReport {
    validate_with(tree, config.paradox_policy == ParadoxPolicy::Explode)
}

fn validate_with(tree: &StrategyTree, explosions: bool) -> ValidationReport {
    let mut report = ValidationReport::default();
    walk(tree, &mut Vec::new(), &mut Vec::new(), explosions, &mut report);
    report
}

fn walk(
    tree: &StrategyTree,
    path: &mut Vec<ObservationLabel>,
    exploded: &mut Vec<GodId>,
    explosions: bool,
    report: &mut ValidationReport,
) {
    let StrategyTree::Ask(node) = tree else {
        return;
    };
    let mut finding = |kind| {
        report.findings.push(Finding {
            path: path.clone(),
            kind,
        })
    };
    if path.len() + 1 > MAX_DEPTH {
        finding(FindingKind::TooDeep(path.len() + 1));
    }
    if exploded.contains(&node.target) {
        finding(FindingKind::AsksExplodedGod(node.target));
    }
    let possible = possible_next_labels(path, explosions && node.question.is_self_referential());
    for label in &possible {
        if !node.branches.contains_key(label) {
            finding(FindingKind::MissingBranch(*label));
        }
    }
    for label in node.branches.keys() {
        if !possible.contains(label) {
            finding(FindingKind::UnreachableBranch(*label));
        }
    }
    for (label, child) in &node.branches {
        path.push(*label);
        let newly_exploded = *label == ObservationLabel::Boom;
        if newly_exploded {
            exploded.push(node.target);
        }
        walk(child, path, exploded, explosions, report);
        if newly_exploded {
            exploded.pop();
        }
        path.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::question::parse_question;
    use crate::strategy::builtin_strategy;
    use crate::world::GodOrder;
    use ObservationLabel::*;

    fn leaf() -> StrategyTree {
        StrategyTree::guess("TFR".parse::<GodOrder>().unwrap())
    }

    #[test]
    fn builtins_are_valid() {
        for name in ["puzzle1", "puzzle3"] {
            let report = validate_strategy(&builtin_strategy(name).unwrap());
            assert!(report.findings.is_empty(), "{name}: {report}");
        }
    }

    #[test]
    fn reasking_exploded_god() {
        let q = parse_question("would(first, self_would(second))").unwrap();
        let inner = StrategyTree::ask(GodId::A, q.clone(), [(Opaque, leaf()), (Boom, leaf())]);
        let tree = StrategyTree::ask(GodId::A, q, [(Opaque, leaf()), (Boom, inner)]);
        let report = validate_strategy(&tree);
        assert!(!report.is_valid());
        assert_eq!(
            report.violations().next().unwrap().kind,
            FindingKind::AsksExplodedGod(GodId::A)
        );
        assert!(report.to_string().contains("asks exploded god A"));
    }

    #[test]
    fn depth_four_chain() {
        let q = parse_question("is(A,true)").unwrap();
        let mut tree = leaf();
        for depth in (0..4).rev() {
            let labels = possible_next_labels(&vec![Opaque; depth.min(1)][..], false);
            tree = StrategyTree::ask(GodId::A, q.clone(), labels.into_iter().map(|l| (l, tree.clone())));
        }
        assert_eq!(tree.depth(), 4);
        let report = validate_strategy(&tree);
        assert!(report.violations().any(|f| f.kind == FindingKind::TooDeep(4)));
        assert!(report.to_string().contains("depth > 3"));
    }

    #[test]
    fn missing_and_unreachable() {
        let q = parse_question("is(A,true)").unwrap();
        let tree = StrategyTree::ask(
            GodId::A,
            q.clone(),
            [(
                Opaque,
                StrategyTree::ask(GodId::B, q, [(Same, leaf()), (First, leaf()), (Boom, leaf())]),
            )],
        );
        let report = validate_strategy(&tree);
        let kinds: Vec<_> = report.findings.iter().map(|f| f.kind.clone()).collect();
        assert_eq!(
            kinds,
            vec![FindingKind::MissingBranch(Second), FindingKind::UnreachableBranch(Boom)]
        );
        assert!(!report.is_valid());
    }

    #[test]
    fn explosions_depend_on_policy() {
        use crate::world::{RandomMode, RunConfig};
        let q = parse_question("would(first, self_would(second))").unwrap();
        let tree = StrategyTree::ask(GodId::A, q, [(Opaque, leaf())]);
        assert!(!validate_strategy(&tree).is_valid());
        let cfg = RunConfig::new(RandomMode::TokenCoin, ParadoxPolicy::AnswerNo);
        assert!(validate_strategy_for(&tree, cfg).is_valid());
    }
}
