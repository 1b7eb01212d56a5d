use std::fmt;

use serde::{Deserialize, Serialize};

use super::cases::enumerate_cases;
use super::channel::ChannelModel;
use super::search::{
    forced_prefixes, order_class_options, search_adaptive_solution, search_restricted, ClassIndex, ClassSet,
    SearchSpace, SearchStats, TargetPlan, QUESTIONS,
};
use crate::world::{render_labels, GodId, GodOrder, ObservationLabel};

/// Scope of the unsolvability claim: it holds for the rank channel only.
pub const SCOPE_QUOTE: &str = "using only the sorting rule";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemandRow {
    pub order: GodOrder,
    pub cases: usize,
    /// Fewest classes this order can be confined to.
    pub demand: usize,
    pub shares_symmetric_class: bool,
}

/// Counting bound for a pattern where Q1 and Q2 go to different gods.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PigeonholeSummary {
    pub q1: GodId,
    pub q2: GodId,
    /// Full-depth outcome classes available.
    pub classes: usize,
    pub cases: usize,
    pub symmetric_classes: Vec<Vec<ObservationLabel>>,
    /// Least total number of classes any strategy needs.
    pub demand: usize,
    pub feasible: bool,
    /// Per-order demand for a target plan attaining the minimum.
    pub decomposition: Vec<DemandRow>,
    pub plan: TargetPlan,
}

/// Counting bound for a pattern where Q1 and Q2 go to the same god.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeficitSummary {
    pub q1: GodId,
    pub q2: GodId,
    pub classes: usize,
    pub cases: usize,
    /// For each two-answer prefix: classes extending it, and the orders
    /// that reach it whatever the answers.
    pub prefixes: Vec<PrefixOccupancy>,
    /// Classes the forced orders must take.
    pub occupied: usize,
    pub available: usize,
    /// Orders not forced anywhere, each needing a class of its own.
    pub needed: usize,
    pub feasible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixOccupancy {
    pub prefix: Vec<ObservationLabel>,
    pub capacity: usize,
    pub forced_orders: Vec<GodOrder>,
}

fn space_with(first: GodId, second: GodId) -> SearchSpace {
    let mut space = SearchSpace::new(ChannelModel::SortRank, Some(second));
    space.first = first;
    space
}

fn min_size(options: &[ClassSet], avoid: ClassSet) -> Option<usize> {
    options
        .iter()
        .filter(|s| *s & avoid == 0)
        .map(|s| s.count_ones() as usize)
        .min()
}

/// Lower bound on the classes a strategy needs when Q1 goes to `q1_target`
/// and Q2 to a different `q2_target`, minimised over every Q3 plan.
///
/// An order's cases have pairwise different raw answers, so two of them can
/// share a class only if that class is swap-symmetric; and each class serves
/// at most one order.
pub fn pigeonhole_summary(q1_target: GodId, q2_target: GodId) -> PigeonholeSummary {
    assert_ne!(q1_target, q2_target, "pigeonhole bound is for distinct targets");
    let index = ClassIndex::new(ChannelModel::SortRank);
    let symmetric = index.symmetric();
    let orders = GodOrder::all();
    let cases = enumerate_cases(q1_target, q2_target);

    let mut best: Option<(usize, Vec<DemandRow>, TargetPlan)> = None;
    for plan in space_with(q1_target, q2_target).plans() {
        let mut full = Vec::with_capacity(orders.len());
        let mut plain = Vec::with_capacity(orders.len());
        for &order in &orders {
            let options = order_class_options(order, &plan, &index);
            full.push(min_size(&options, 0).expect("every order has an option"));
            plain.push(min_size(&options, symmetric).unwrap_or(usize::MAX / 8));
        }
        let base: usize = plain.iter().sum();
        // At most one order may hold the symmetric class.
        let mut total = base;
        let mut sharer = None;
        if symmetric != 0 {
            for i in 0..orders.len() {
                let with = base - plain[i] + full[i];
                if with < total {
                    total = with;
                    sharer = Some(i);
                }
            }
        }
        if best.as_ref().is_none_or(|(d, _, _)| total < *d) {
            let rows = orders
                .iter()
                .enumerate()
                .map(|(i, &order)| DemandRow {
                    order,
                    cases: cases.iter().filter(|c| c.order == order).count(),
                    demand: if sharer == Some(i) { full[i] } else { plain[i] },
                    shares_symmetric_class: sharer == Some(i),
                })
                .collect();
            best = Some((total, rows, plan));
        }
    }
    let (demand, decomposition, plan) = best.expect("plan space is non-empty");
    PigeonholeSummary {
        q1: q1_target,
        q2: q2_target,
        classes: index.len(),
        cases: cases.len(),
        symmetric_classes: index.decode(symmetric),
        demand,
        feasible: demand <= index.len(),
        decomposition,
        plan,
    }
}

/// Counting bound when both of the first two questions go to `target`.
///
/// Orders in which `target` is Random reach every two-answer prefix whatever
/// the questions, and each needs a class under each; what is left must hold
/// every other order.
pub fn same_target_deficit(target: GodId) -> DeficitSummary {
    let channel = ChannelModel::SortRank;
    let full = channel.classes(QUESTIONS);
    let forced: Vec<(GodOrder, Vec<Vec<ObservationLabel>>)> = GodOrder::all()
        .into_iter()
        .map(|o| (o, forced_prefixes(o, &[target, target], channel)))
        .collect();
    let prefixes: Vec<PrefixOccupancy> = channel
        .classes(QUESTIONS - 1)
        .into_iter()
        .map(|prefix| PrefixOccupancy {
            capacity: full.iter().filter(|c| c.starts_with(&prefix)).count(),
            forced_orders: forced
                .iter()
                .filter(|(_, ps)| ps.contains(&prefix))
                .map(|(o, _)| *o)
                .collect(),
            prefix,
        })
        .collect();
    let occupied: usize = prefixes.iter().map(|p| p.forced_orders.len().min(p.capacity)).sum();
    let available = full.len() - occupied;
    let needed = forced.iter().filter(|(_, ps)| ps.is_empty()).count();
    let overfull = prefixes.iter().any(|p| p.forced_orders.len() > p.capacity);
    DeficitSummary {
        q1: target,
        q2: target,
        classes: full.len(),
        cases: enumerate_cases(target, target).len(),
        prefixes,
        occupied,
        available,
        needed,
        feasible: !overfull && needed <= available,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternCertificate {
    pub name: String,
    pub q1: GodId,
    pub q2: GodId,
    pub solvable: bool,
    pub cases: usize,
    pub search: SearchStats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pigeonhole: Option<PigeonholeSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deficit: Option<DeficitSummary>,
}

impl PatternCertificate {
    fn counting_infeasible(&self) -> bool {
        self.pigeonhole.as_ref().is_none_or(|p| !p.feasible) && self.deficit.as_ref().is_none_or(|d| !d.feasible)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ControlExperiment {
    pub channel: ChannelModel,
    pub solvable: bool,
    pub search: SearchStats,
}

/// Unsolvability of the three-question, token-coin, paradox-free puzzle
/// within the sorting-rule channel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCertificate {
    pub puzzle: u8,
    pub channel: ChannelModel,
    pub solvable: bool,
    /// Full-depth outcome classes.
    pub classes: usize,
    /// Cases for the distinct-target pattern.
    pub cases: usize,
    /// Least class demand for the distinct-target pattern.
    pub demand: usize,
    pub observation_classes: Vec<Vec<ObservationLabel>>,
    pub depth_one_prefixes: Vec<Vec<ObservationLabel>>,
    pub distinct_target_cases: Vec<String>,
    pub patterns: Vec<PatternCertificate>,
    pub search: SearchStats,
    pub control: ControlExperiment,
    pub scope_quote: String,
    pub assumptions: Vec<String>,
}

impl TheoremCertificate {
    /// Every route agrees that no strategy exists.
    pub fn confirms_unsolvable(&self) -> bool {
        !self.solvable && self.patterns.iter().all(|p| !p.solvable && p.counting_infeasible()) && self.control.solvable
    }
}

pub fn prove_puzzle2_unsolvable() -> TheoremCertificate {
    let channel = ChannelModel::SortRank;
    let overall = search_adaptive_solution(channel);
    let patterns: Vec<PatternCertificate> = GodId::ALL
        .into_iter()
        .map(|second| {
            let result = search_restricted(channel, second);
            let same = second == GodId::A;
            PatternCertificate {
                name: if same { "same-target" } else { "distinct-targets" }.to_string(),
                q1: GodId::A,
                q2: second,
                solvable: result.solvable,
                cases: enumerate_cases(GodId::A, second).len(),
                search: result.stats,
                pigeonhole: (!same).then(|| pigeonhole_summary(GodId::A, second)),
                deficit: same.then(|| same_target_deficit(GodId::A)),
            }
        })
        .collect();
    let control = search_adaptive_solution(ChannelModel::AbsoluteToken);
    let distinct = patterns
        .iter()
        .find_map(|p| p.pigeonhole.as_ref())
        .expect("a distinct-target pattern");
    TheoremCertificate {
        puzzle: 2,
        channel,
        solvable: overall.solvable,
        classes: distinct.classes,
        cases: distinct.cases,
        demand: distinct.demand,
        observation_classes: channel.classes(QUESTIONS),
        depth_one_prefixes: channel.classes(1),
        distinct_target_cases: enumerate_cases(GodId::A, GodId::B)
            .iter()
            .map(|c| c.to_string())
            .collect(),
        patterns,
        search: overall.stats,
        control: ControlExperiment {
            channel: control.channel,
            solvable: control.solvable,
            search: control.stats,
        },
        scope_quote: SCOPE_QUOTE.to_string(),
        assumptions: vec![
            "Random utters a coin-chosen word and never explodes; no question may be paradoxical.".into(),
            "A non-Random god's word may be any function of the god order and the raw transcript.".into(),
            "Cases are indexed by god order, not world: lexicon-dependent answers only add classes to an order.".into(),
            "Q1 is put to A without loss of generality (renaming gods).".into(),
            "Forced coins are words, not meanings: First means yes in one lexicon and no in the other.".into(),
        ],
    }
}

fn orders(list: &[GodOrder]) -> String {
    if list.is_empty() {
        return "-".into();
    }
    list.iter().map(|o| o.code()).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for TheoremCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Puzzle {}: three questions, token-coin Random, no paradoxical questions ({} channel)",
            self.puzzle, self.channel
        )?;
        writeln!(f)?;
        writeln!(f, "1. {} canonical outcome classes after three answers:", self.classes)?;
        for class in &self.observation_classes {
            writeln!(f, "     {}", render_labels(class))?;
        }
        let prefixes: Vec<String> = self.depth_one_prefixes.iter().map(|p| render_labels(p)).collect();
        writeln!(
            f,
            "2. After one answer the observer sees only {{{}}}: Q2's target cannot depend on it.",
            prefixes.join(", ")
        )?;
        for p in self.patterns.iter().filter(|p| p.deficit.is_some()) {
            let d = p.deficit.as_ref().expect("filtered");
            writeln!(f, "3. Q1 and Q2 both to {} ({} cases):", d.q1, d.cases)?;
            for occ in &d.prefixes {
                writeln!(
                    f,
                    "     {:<16} capacity {}  forced: {}",
                    render_labels(&occ.prefix),
                    occ.capacity,
                    orders(&occ.forced_orders)
                )?;
            }
            writeln!(
                f,
                "   forced orders take {} of {} classes; {} needed vs {} available => {}",
                d.occupied,
                d.classes,
                d.needed,
                d.available,
                if d.feasible { "not excluded" } else { "impossible" }
            )?;
        }
        writeln!(f, "4. Q1 to A, Q2 to B: {} cases", self.cases)?;
        writeln!(f, "     {}", self.distinct_target_cases.join(" "))?;
        if let Some(ph) = self.patterns.iter().find_map(|p| p.pigeonhole.as_ref()) {
            let sym: Vec<String> = ph.symmetric_classes.iter().map(|c| render_labels(c)).collect();
            writeln!(
                f,
                "5. Cases of one order differ in some answer; only {} can hold two of them.",
                sym.join(", ")
            )?;
            writeln!(f, "6. Least class demand per order (Q1 to {}, Q2 to {}):", ph.q1, ph.q2)?;
            for row in &ph.decomposition {
                writeln!(
                    f,
                    "     {}  cases {}  demand {}{}",
                    row.order,
                    row.cases,
                    row.demand,
                    if row.shares_symmetric_class {
                        "  (uses the shared class)"
                    } else {
                        ""
                    }
                )?;
            }
            writeln!(
                f,
                "   demand {} vs {} classes => {}",
                ph.demand,
                ph.classes,
                if ph.feasible { "not excluded" } else { "impossible" }
            )?;
        }
        writeln!(f)?;
        writeln!(f, "Exhaustive search over adaptive strategies:")?;
        for p in &self.patterns {
            writeln!(
                f,
                "  Q1->{} Q2->{} ({}): {} of {} target plans examined, {} class options, {} prunes => {}",
                p.q1,
                p.q2,
                p.name,
                p.search.plans_examined,
                p.search.plans_total,
                p.search.class_options,
                p.search.prunes,
                if p.solvable { "SOLVABLE" } else { "no solution" }
            )?;
        }
        writeln!(
            f,
            "  control ({} channel): {} after {} target plans",
            self.control.channel,
            if self.control.solvable {
                "solvable"
            } else {
                "no solution"
            },
            self.control.search.plans_examined
        )?;
        writeln!(f)?;
        writeln!(
            f,
            "Verdict: {}",
            if self.confirms_unsolvable() {
                "no three-question strategy exists"
            } else if self.solvable {
                "a strategy was found"
            } else {
                "inconclusive"
            }
        )?;
        writeln!(f, "Scope: \"{}\"", self.scope_quote)?;
        writeln!(f, "Assumptions:")?;
        for a in &self.assumptions {
            writeln!(f, "  - {a}")?;
        }
        Ok(())
    }
}
