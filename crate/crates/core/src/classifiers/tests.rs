use super::*;
use crate::game::{complete_game, cycle_game, directed_cycle_game, path_game, GameBuilder};
use crate::oracle::{decide_winnable, verify_strategy};
use crate::outcome::SearchBudget;

fn check(out: &Outcome, game: &Game) -> Verdict {
    if let Some(f) = &out.certificate {
        assert!(
            verify_strategy(game, f).unwrap().wins(),
            "certificate loses on {game}"
        );
    }
    out.verdict
}

#[test]
fn clique_examples() {
    let g = complete_game(&[7; 7], &[1; 7]).unwrap();
    assert_eq!(check(&classify_clique(&g).unwrap(), &g), Verdict::Winnable);
    let g = complete_game(&[2, 3, 6], &[1, 1, 1]).unwrap();
    assert_eq!(check(&classify_clique(&g).unwrap(), &g), Verdict::Winnable);
    let g = complete_game(&[4, 4, 4], &[1, 1, 1]).unwrap();
    assert_eq!(
        check(&classify_clique(&g).unwrap(), &g),
        Verdict::Unwinnable
    );
}

#[test]
fn directed_cycle_examples() {
    let g = directed_cycle_game(&[2; 5], &[1; 5]).unwrap();
    assert_eq!(
        check(&classify_directed_cycle(&g).unwrap(), &g),
        Verdict::Winnable
    );
    let g = directed_cycle_game(&[2, 2, 2, 3], &[1; 4]).unwrap();
    assert_eq!(
        check(&classify_directed_cycle(&g).unwrap(), &g),
        Verdict::Unwinnable
    );
    let g = directed_cycle_game(&[6; 3], &[4, 4, 2]).unwrap();
    assert_eq!(
        check(&classify_directed_cycle(&g).unwrap(), &g),
        Verdict::Winnable
    );
    let g = directed_cycle_game(&[5, 7, 4], &[3, 4, 2]).unwrap();
    assert_eq!(
        check(&classify_directed_cycle(&g).unwrap(), &g),
        Verdict::Winnable
    );
}

#[test]
fn tree_examples() {
    let g = path_game(&[2, 4, 4, 2]).unwrap();
    assert_eq!(
        check(&classify_latvian_tree(&g).unwrap(), &g),
        Verdict::Winnable
    );
    let g = path_game(&[2, 3, 3, 5, 3, 3, 2]).unwrap();
    assert_eq!(
        check(&classify_latvian_tree(&g).unwrap(), &g),
        Verdict::Unwinnable
    );
    let g = GameBuilder::new()
        .vertex("c", 8, 1)
        .vertex("a", 2, 1)
        .vertex("b", 2, 1)
        .vertex("d", 2, 1)
        .edge("c", "a")
        .edge("c", "b")
        .edge("c", "d")
        .build()
        .unwrap();
    assert_eq!(
        check(&classify_latvian_tree(&g).unwrap(), &g),
        Verdict::Winnable
    );
}

#[test]
fn cycle_examples() {
    for (hats, want) in [
        (vec![3; 6], Verdict::Winnable),
        (vec![3; 5], Verdict::Unwinnable),
        (vec![4, 2, 4, 3, 3], Verdict::Unwinnable),
        (vec![2, 3, 4, 5, 2, 3], Verdict::Winnable),
        (vec![3, 3, 3, 3], Verdict::Winnable),
        (vec![2, 3, 3, 4], Verdict::Winnable),
        (vec![3, 2, 3, 4], Verdict::Winnable),
        (vec![3, 2, 3, 4, 4], Verdict::Winnable),
        (vec![2, 3, 3, 4, 4, 4], Verdict::Winnable),
        (vec![3; 9], Verdict::Winnable),
    ] {
        let g = cycle_game(&hats).unwrap();
        assert_eq!(
            check(&classify_latvian_cycle(&g).unwrap(), &g),
            want,
            "{hats:?}"
        );
    }
}

#[test]
fn reduction_examples() {
    let g = GameBuilder::new()
        .vertex("a", 5, 1)
        .vertex("b", 2, 1)
        .arc("a", "b")
        .build()
        .unwrap();
    let (res, trace) = reduce_game(&g);
    assert!(res.is_empty());
    assert_eq!(trace.steps[0].rule, Rule::RedundantVision);

    let g = GameBuilder::new()
        .vertex("c", 5, 1)
        .vertex("a", 2, 1)
        .vertex("b", 2, 1)
        .vertex("d", 2, 1)
        .edge("c", "a")
        .edge("c", "b")
        .edge("c", "d")
        .build()
        .unwrap();
    let (res, trace) = reduce_game(&g);
    assert_eq!(trace.steps[0].rule, Rule::Latvian2Leaf);
    assert_eq!(trace.steps[0].rewrite.as_deref(), Some("h(c) <- 3"));
    assert_eq!(trace.steps.last().unwrap().rule, Rule::HatnessOneWin);
    assert_eq!(trace.replay(&g).unwrap(), res);
    let f = decide_winnable(&res, &SearchBudget::default())
        .certificate
        .unwrap();
    assert!(verify_strategy(&g, &trace.lift(&f).unwrap())
        .unwrap()
        .wins());

    let g = path_game(&[2, 3, 3, 2]).unwrap();
    let (_, trace) = reduce_game(&g);
    assert!(trace
        .steps
        .iter()
        .any(|s| s.rule == Rule::CzechLeaf || s.rule == Rule::Latvian2Leaf));
}

#[test]
fn auto_examples() {
    let g = GameBuilder::new()
        .vertex("a", 3, 1)
        .vertex("b", 3, 1)
        .vertex("c", 3, 1)
        .vertex("d", 3, 1)
        .vertex("l", 3, 1)
        .edge("a", "b")
        .edge("b", "c")
        .edge("c", "d")
        .edge("d", "a")
        .edge("a", "l")
        .build()
        .unwrap();
    assert_eq!(check(&classify_auto(&g), &g), Verdict::Winnable);
    let g = GameBuilder::new()
        .vertex("a", 2, 1)
        .vertex("b", 2, 1)
        .vertex("c", 2, 1)
        .arc("a", "b")
        .arc("b", "c")
        .build()
        .unwrap();
    assert_eq!(classify_auto(&g).verdict, Verdict::Unwinnable);
}

#[test]
fn auto_agrees_with_oracle_on_unicyclic() {
    let g = GameBuilder::new()
        .vertex("a", 2, 1)
        .vertex("b", 4, 1)
        .vertex("c", 3, 1)
        .vertex("d", 3, 1)
        .vertex("l", 2, 1)
        .edge("a", "b")
        .edge("b", "c")
        .edge("c", "d")
        .edge("d", "a")
        .edge("c", "l")
        .build()
        .unwrap();
    let want = decide_winnable(&g, &SearchBudget::default()).verdict;
    assert_eq!(check(&classify_auto(&g), &g), want);
}
