//! The search engine checked against a brute-force oracle that enumerates
//! every answer function explicitly.

use std::collections::BTreeMap;
use std::time::Instant;

use threegods_core::impossibility::{
    class_swap_symmetric, enumerate_cases, minimal_sets, order_class_options, pigeonhole_summary,
    prove_puzzle2_unsolvable, same_target_deficit, search_adaptive_solution, search_restricted, ChannelModel,
    ClassIndex, ClassSet, SearchSpace, TargetPlan,
};
use threegods_core::world::{all_token_sequences, GodId, GodOrder, ObservationLabel, Role, Token};

/// Every raw prefix shorter than three answers, in a fixed order.
fn raw_prefixes() -> Vec<Vec<Token>> {
    (0..3).flat_map(all_token_sequences).collect()
}

/// Class set reached by `order` when non-Random gods answer per `choice`.
fn runs_for(
    order: GodOrder,
    plan: &TargetPlan,
    channel: ChannelModel,
    choice: &BTreeMap<Vec<Token>, Token>,
    index: &ClassIndex,
) -> ClassSet {
    let mut frontier = vec![Vec::new()];
    for _ in 0..3 {
        frontier = frontier
            .into_iter()
            .flat_map(|raw: Vec<Token>| {
                let target = plan.target(&channel.labels(&raw));
                let words: Vec<Token> = if order.role_of(target) == Role::RandomGod {
                    Token::ALL.to_vec()
                } else {
                    vec![choice[&raw]]
                };
                words.into_iter().map(move |w| {
                    let mut next = raw.clone();
                    next.push(w);
                    next
                })
            })
            .collect();
    }
    frontier.iter().fold(0, |acc, raw| acc | index.bit(raw))
}

fn oracle_options(order: GodOrder, plan: &TargetPlan, channel: ChannelModel, index: &ClassIndex) -> Vec<ClassSet> {
    let prefixes = raw_prefixes();
    let mut sets = Vec::new();
    for bits in 0..1u32 << prefixes.len() {
        let choice: BTreeMap<Vec<Token>, Token> = prefixes
            .iter()
            .enumerate()
            .map(|(i, p)| {
                (
                    p.clone(),
                    if bits >> i & 1 == 0 {
                        Token::First
                    } else {
                        Token::Second
                    },
                )
            })
            .collect();
        sets.push(runs_for(order, plan, channel, &choice, index));
    }
    minimal_sets(sets)
}

fn oracle_solvable(options: &[Vec<ClassSet>]) -> bool {
    fn go(options: &[Vec<ClassSet>], used: ClassSet) -> bool {
        match options.split_first() {
            None => true,
            Some((here, rest)) => here.iter().any(|s| s & used == 0 && go(rest, used | s)),
        }
    }
    go(options, 0)
}

#[test]
fn engine_options_match_oracle_for_every_sort_rank_plan() {
    let channel = ChannelModel::SortRank;
    let index = ClassIndex::new(channel);
    let space = SearchSpace::new(channel, None);
    let mut plans = 0;
    for plan in space.plans() {
        let mut all = Vec::new();
        for order in GodOrder::all() {
            let oracle = oracle_options(order, &plan, channel, &index);
            assert_eq!(order_class_options(order, &plan, &index), oracle, "{order}");
            all.push(oracle);
        }
        assert!(!oracle_solvable(&all), "oracle found a solution for {plan:?}");
        plans += 1;
    }
    assert_eq!(plans, 81);
}

#[test]
fn sort_rank_is_unsolvable() {
    let start = Instant::now();
    let result = search_adaptive_solution(ChannelModel::SortRank);
    assert!(!result.solvable);
    assert!(result.witness.is_none());
    // One depth-one prefix and three depth-two prefixes, three gods each.
    assert_eq!(result.stats.plans_total, 81);
    assert_eq!(result.stats.plans_examined, 81);
    assert!(result.stats.class_options > 0);
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn same_target_restriction_is_unsolvable() {
    let result = search_restricted(ChannelModel::SortRank, GodId::A);
    assert!(!result.solvable);
    assert_eq!(result.stats.plans_examined, 27);
    let deficit = same_target_deficit(GodId::A);
    assert_eq!((deficit.needed, deficit.available), (4, 1));
}

#[test]
fn absolute_token_control_is_solvable_and_witness_checks_out() {
    let channel = ChannelModel::AbsoluteToken;
    let result = search_adaptive_solution(channel);
    assert!(result.solvable);
    let witness = result.witness.unwrap();
    let index = ClassIndex::new(channel);
    let mut used: ClassSet = 0;
    for (order, classes) in &witness.allocation {
        let mask = classes.iter().fold(0, |acc, c| {
            let i = index.classes().iter().position(|k| k == c).unwrap();
            acc | 1 << i
        });
        assert_eq!(mask & used, 0, "classes shared by two orders");
        used |= mask;
        let oracle = oracle_options(*order, &witness.plan, channel, &index);
        assert!(
            oracle.iter().any(|s| s & mask == *s),
            "{order} cannot be confined to its classes"
        );
    }
}

#[test]
fn more_information_never_hurts() {
    let sort = search_adaptive_solution(ChannelModel::SortRank).solvable;
    let absolute = search_adaptive_solution(ChannelModel::AbsoluteToken).solvable;
    assert!(!sort || absolute);
}

#[test]
fn pigeonhole_agrees_with_search() {
    for second in [GodId::B, GodId::C] {
        let ph = pigeonhole_summary(GodId::A, second);
        let search = search_restricted(ChannelModel::SortRank, second);
        assert!(!ph.feasible);
        assert!(!search.solvable);
        assert_eq!((ph.classes, ph.cases, ph.demand), (7, 10, 9));
    }
}

#[test]
fn demand_unchanged_when_the_other_split_order_takes_the_shared_class() {
    let ph = pigeonhole_summary(GodId::A, GodId::B);
    let sharer = ph.decomposition.iter().position(|r| r.shares_symmetric_class).unwrap();
    let other = ph
        .decomposition
        .iter()
        .position(|r| r.order != ph.decomposition[sharer].order && r.order.random_god() == GodId::A)
        .unwrap();
    let mut swapped: Vec<usize> = ph.decomposition.iter().map(|r| r.demand).collect();
    swapped.swap(sharer, other);
    assert_eq!(swapped.iter().sum::<usize>(), ph.demand);
}

#[test]
fn exactly_one_symmetric_class_at_depth_three() {
    use ObservationLabel::*;
    let symmetric: Vec<_> = ChannelModel::SortRank
        .classes(3)
        .into_iter()
        .filter(|c| class_swap_symmetric(c))
        .collect();
    assert_eq!(symmetric, vec![vec![Opaque, Same, Same]]);
}

#[test]
fn case_projections() {
    let cases = enumerate_cases(GodId::A, GodId::B);
    for order in GodOrder::all() {
        let n = cases.iter().filter(|c| c.order == order).count();
        let expected = if order.random_god() == GodId::C { 1 } else { 2 };
        assert_eq!(n, expected, "{order}");
    }
}

#[test]
fn theorem_certificate() {
    let cert = prove_puzzle2_unsolvable();
    assert!(cert.confirms_unsolvable());
    assert_eq!((cert.classes, cert.cases, cert.demand), (7, 10, 9));
    assert_eq!(cert.patterns.len(), 3);
    assert!(cert.patterns.iter().all(|p| !p.solvable));
    assert_eq!(cert.scope_quote, "using only the sorting rule");
    assert!(cert.search.plans_examined > 0);
    let text = cert.to_string();
    for step in ["1. ", "2. ", "3. ", "4. ", "5. ", "6. "] {
        assert!(text.contains(step), "missing step {step}");
    }
    assert!(text.contains("R(first)TF"));
}
