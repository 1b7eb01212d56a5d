//! Exhaustive search for a three-question adaptive strategy with a
//! token-coin Random and no paradoxical questions.
//!
//! Question contents are abstracted away. A non-Random respondent may give
//! any word as a function of the god order and the raw transcript so far,
//! which is the most an interrogator could ever extract with embedded
//! questions. Random utters both words (two sub-runs). What remains for the
//! interrogator to choose is whom to ask, as a function of the observable
//! label prefix. A choice solves the puzzle iff the map from full-depth
//! class to god order is single-valued over every run.
//!
//! Cases are indexed by god order rather than by world: answers are chosen
//! per order, and a lexicon-dependent choice can only add classes to an
//! order, never merge two orders.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::channel::ChannelModel;
use crate::world::{GodId, GodOrder, ObservationLabel, Role, Token};

/// Questions per interrogation.
pub const QUESTIONS: usize = 3;

/// Bit set over the channel's full-depth classes.
pub type ClassSet = u32;

/// Whom to ask next, for every observable label prefix shorter than
/// [`QUESTIONS`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetPlan {
    pub first: GodId,
    #[serde(with = "prefix_keys")]
    pub later: BTreeMap<Vec<ObservationLabel>, GodId>,
}

/// Prefix maps keyed by dash-joined labels, since JSON keys are strings.
mod prefix_keys {
    use std::collections::BTreeMap;

    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::world::{render_labels, GodId, ObservationLabel};

    pub fn serialize<S: Serializer>(map: &BTreeMap<Vec<ObservationLabel>, GodId>, s: S) -> Result<S::Ok, S::Error> {
        let keyed: BTreeMap<String, GodId> = map.iter().map(|(k, v)| (render_labels(k), *v)).collect();
        keyed.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Vec<ObservationLabel>, GodId>, D::Error> {
        let keyed = BTreeMap::<String, GodId>::deserialize(d)?;
        keyed
            .into_iter()
            .map(|(k, v)| {
                let prefix = k
                    .split('-')
                    .map(|l| l.parse().map_err(D::Error::custom))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((prefix, v))
            })
            .collect()
    }
}

impl TargetPlan {
    pub fn target(&self, prefix: &[ObservationLabel]) -> GodId {
        if prefix.is_empty() {
            self.first
        } else {
            self.later[prefix]
        }
    }
}

/// Per-prefix freedom the search ranges over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpace {
    pub channel: ChannelModel,
    pub first: GodId,
    /// Target options for each non-empty prefix.
    pub options: Vec<(Vec<ObservationLabel>, Vec<GodId>)>,
}

impl SearchSpace {
    /// Q1 is put to A; every later prefix may go to any god, or only to
    /// `second` at depth one when given.
    pub fn new(channel: ChannelModel, second: Option<GodId>) -> SearchSpace {
        let mut options = Vec::new();
        for depth in 1..QUESTIONS {
            for prefix in channel.classes(depth) {
                let gods = match (depth, second) {
                    (1, Some(g)) => vec![g],
                    _ => GodId::ALL.to_vec(),
                };
                options.push((prefix, gods));
            }
        }
        SearchSpace {
            channel,
            first: GodId::A,
            options,
        }
    }

    /// Number of distinct target plans.
    pub fn plan_count(&self) -> usize {
        self.options.iter().map(|(_, g)| g.len()).product()
    }

    /// All target plans in mixed-radix order.
    pub fn plans(&self) -> impl Iterator<Item = TargetPlan> + '_ {
        (0..self.plan_count()).map(move |mut n| {
            let mut later = BTreeMap::new();
            for (prefix, gods) in self.options.iter().rev() {
                later.insert(prefix.clone(), gods[n % gods.len()]);
                n /= gods.len();
            }
            TargetPlan {
                first: self.first,
                later,
            }
        })
    }
}

/// Indexes the channel's full-depth classes for [`ClassSet`] bits.
#[derive(Clone, Debug)]
pub struct ClassIndex {
    channel: ChannelModel,
    classes: Vec<Vec<ObservationLabel>>,
}

impl ClassIndex {
    pub fn new(channel: ChannelModel) -> ClassIndex {
        ClassIndex {
            channel,
            classes: channel.classes(QUESTIONS),
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn bit(&self, tokens: &[Token]) -> ClassSet {
        let labels = self.channel.labels(tokens);
        let i = self
            .classes
            .binary_search(&labels)
            .expect("labels of a full run are a class");
        1 << i
    }

    pub fn classes(&self) -> &[Vec<ObservationLabel>] {
        &self.classes
    }

    pub fn decode(&self, set: ClassSet) -> Vec<Vec<ObservationLabel>> {
        (0..self.classes.len())
            .filter(|i| set >> i & 1 == 1)
            .map(|i| self.classes[i].clone())
            .collect()
    }

    /// Bits of the swap-symmetric classes.
    pub fn symmetric(&self) -> ClassSet {
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, c)| self.channel.swap_symmetric(c))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }
}

/// Drops every set that is a superset of another. Sorted by size, then value.
pub fn minimal_sets(mut sets: Vec<ClassSet>) -> Vec<ClassSet> {
    sets.sort_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    let mut kept: Vec<ClassSet> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| k & s == *k) {
            kept.push(s);
        }
    }
    kept
}

/// The inclusion-minimal class sets an order can be confined to under `plan`,
/// over all free answer choices.
pub fn order_class_options(order: GodOrder, plan: &TargetPlan, index: &ClassIndex) -> Vec<ClassSet> {
    explore(order, plan, index, &mut Vec::with_capacity(QUESTIONS), QUESTIONS)
}

fn explore(
    order: GodOrder,
    plan: &TargetPlan,
    index: &ClassIndex,
    raw: &mut Vec<Token>,
    depth: usize,
) -> Vec<ClassSet> {
    if raw.len() == depth {
        return vec![index.bit(raw)];
    }
    let prefix = index.channel.labels(raw);
    let target = plan.target(&prefix);
    let mut branch = |t: Token| {
        raw.push(t);
        let sets = explore(order, plan, index, raw, depth);
        raw.pop();
        sets
    };
    let first = branch(Token::First);
    let second = branch(Token::Second);
    if order.role_of(target) == Role::RandomGod {
        // Both words occur: the order must cover both sub-runs.
        let mut joined = Vec::with_capacity(first.len() * second.len());
        for a in &first {
            for b in &second {
                joined.push(a | b);
            }
        }
        minimal_sets(joined)
    } else {
        // The respondent's word is ours to choose.
        let mut either = first;
        either.extend(second);
        minimal_sets(either)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Target plans in the search space.
    pub plans_total: usize,
    /// Target plans whose allocation problem was decided.
    pub plans_examined: usize,
    /// Minimal class sets generated, summed over plans and orders.
    pub class_options: usize,
    /// Partial allocations visited by the backtracking step.
    pub allocation_nodes: usize,
    /// Candidate class sets rejected for overlapping an earlier order's.
    pub prunes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub plan: TargetPlan,
    /// The classes each god order occupies.
    pub allocation: Vec<(GodOrder, Vec<Vec<ObservationLabel>>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityResult {
    pub channel: ChannelModel,
    pub solvable: bool,
    pub witness: Option<Witness>,
    pub stats: SearchStats,
}

/// Picks one class set per order, pairwise disjoint.
fn allocate(options: &[Vec<ClassSet>], stats: &mut SearchStats) -> Option<Vec<ClassSet>> {
    fn go(options: &[Vec<ClassSet>], used: ClassSet, chosen: &mut Vec<ClassSet>, stats: &mut SearchStats) -> bool {
        stats.allocation_nodes += 1;
        let Some(here) = options.get(chosen.len()) else {
            return true;
        };
        for &set in here {
            if set & used != 0 {
                stats.prunes += 1;
                continue;
            }
            chosen.push(set);
            if go(options, used | set, chosen, stats) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::with_capacity(options.len());
    go(options, 0, &mut chosen, stats).then_some(chosen)
}

/// Decides one target plan.
pub fn solve_plan(plan: &TargetPlan, index: &ClassIndex, stats: &mut SearchStats) -> Option<Witness> {
    let orders = GodOrder::all();
    let options: Vec<Vec<ClassSet>> = orders.iter().map(|&o| order_class_options(o, plan, index)).collect();
    stats.plans_examined += 1;
    stats.class_options += options.iter().map(Vec::len).sum::<usize>();
    let chosen = allocate(&options, stats)?;
    Some(Witness {
        plan: plan.clone(),
        allocation: orders
            .iter()
            .zip(chosen)
            .map(|(&o, set)| (o, index.decode(set)))
            .collect(),
    })
}

/// Searches a space of target plans, stopping at the first solution.
pub fn search_space(space: &SearchSpace) -> FeasibilityResult {
    let index = ClassIndex::new(space.channel);
    let mut stats = SearchStats {
        plans_total: space.plan_count(),
        ..SearchStats::default()
    };
    let witness = space.plans().find_map(|plan| solve_plan(&plan, &index, &mut stats));
    FeasibilityResult {
        channel: space.channel,
        solvable: witness.is_some(),
        witness,
        stats,
    }
}

/// Is there any three-question strategy that identifies the god order?
///
/// Q1 goes to A (the task is symmetric under renaming gods). Every later
/// target is a function of the prefix the channel has shown so far.
pub fn search_adaptive_solution(channel: ChannelModel) -> FeasibilityResult {
    search_space(&SearchSpace::new(channel, None))
}

/// As [`search_adaptive_solution`] with every second question put to `second`.
pub fn search_restricted(channel: ChannelModel, second: GodId) -> FeasibilityResult {
    search_space(&SearchSpace::new(channel, Some(second)))
}

/// Prefixes of length `depth` each order reaches under every answer choice,
/// given fixed targets for the questions before.
pub fn forced_prefixes(order: GodOrder, targets: &[GodId], channel: ChannelModel) -> Vec<Vec<ObservationLabel>> {
    // Enumerate the two-stage tree explicitly: the prefix sets reachable per
    // answer choice, then intersect.
    fn reach(
        order: GodOrder,
        targets: &[GodId],
        channel: ChannelModel,
        raw: &mut Vec<Token>,
    ) -> Vec<Vec<Vec<ObservationLabel>>> {
        if raw.len() == targets.len() {
            return vec![vec![channel.labels(raw)]];
        }
        let mut branch = |t: Token| {
            raw.push(t);
            let r = reach(order, targets, channel, raw);
            raw.pop();
            r
        };
        let a = branch(Token::First);
        let b = branch(Token::Second);
        if order.role_of(targets[raw.len()]) == Role::RandomGod {
            let mut out = Vec::new();
            for x in &a {
                for y in &b {
                    let mut z = x.clone();
                    z.extend(y.iter().cloned());
                    z.sort();
                    z.dedup();
                    out.push(z);
                }
            }
            out
        } else {
            a.into_iter().chain(b).collect()
        }
    }
    let choices = reach(order, targets, channel, &mut Vec::new());
    let mut forced = choices[0].clone();
    forced.retain(|p| choices.iter().all(|c| c.contains(p)));
    forced
}

#[cfg(test)]
mod tests {
    use super::*;
    use ObservationLabel::*;

    #[test]
    fn plans_survive_json() {
        let space = SearchSpace::new(ChannelModel::SortRank, None);
        let plan = space.plans().nth(40).unwrap();
        let json = serde_json::to_string(&plan).unwrap();
        assert!(json.contains("\"opaque-same\""));
        assert_eq!(serde_json::from_str::<TargetPlan>(&json).unwrap(), plan);
    }

    #[test]
    fn minimal_sets_drop_supersets() {
        assert_eq!(minimal_sets(vec![0b11, 0b1, 0b10, 0b1]), vec![0b1, 0b10]);
        assert_eq!(minimal_sets(vec![0b110, 0b011]), vec![0b011, 0b110]);
    }

    #[test]
    fn sort_rank_space_has_one_depth_one_prefix() {
        let space = SearchSpace::new(ChannelModel::SortRank, None);
        let depth_one: Vec<_> = space.options.iter().filter(|(p, _)| p.len() == 1).collect();
        assert_eq!(depth_one.len(), 1);
        assert_eq!(depth_one[0].0, vec![Opaque]);
        assert_eq!(space.plan_count(), 81);
        assert_eq!(SearchSpace::new(ChannelModel::AbsoluteToken, None).plan_count(), 729);
        assert_eq!(
            SearchSpace::new(ChannelModel::SortRank, Some(GodId::B)).plan_count(),
            27
        );
    }

    #[test]
    fn plans_are_distinct() {
        let space = SearchSpace::new(ChannelModel::SortRank, Some(GodId::A));
        let plans: Vec<_> = space.plans().collect();
        for (i, p) in plans.iter().enumerate() {
            assert!(plans[i + 1..].iter().all(|q| q != p));
            assert_eq!(p.target(&[Opaque]), GodId::A);
        }
    }

    #[test]
    fn random_at_both_first_questions_reaches_every_prefix() {
        let rtf: GodOrder = "RTF".parse().unwrap();
        let forced = forced_prefixes(rtf, &[GodId::A, GodId::A], ChannelModel::SortRank);
        assert_eq!(forced.len(), 3);
        let tfr: GodOrder = "TFR".parse().unwrap();
        assert!(forced_prefixes(tfr, &[GodId::A, GodId::A], ChannelModel::SortRank).is_empty());
        let trf: GodOrder = "TRF".parse().unwrap();
        let forced = forced_prefixes(trf, &[GodId::A, GodId::B], ChannelModel::SortRank);
        assert_eq!(forced, vec![vec![Opaque, Same]]);
    }
}
