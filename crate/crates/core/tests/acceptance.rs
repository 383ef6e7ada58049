//! End-to-end checks of the solver, classifiers, constructors and bounds against each other.
//! Prints one line per check and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use hatgame::classifiers::{
    classify_directed_cycle, classify_latvian_cycle, classify_latvian_tree,
};
use hatgame::constructors::{
    attach_hatness2, clique_product, product_single_point, replace_vertex_with_arcs, Factor,
};
use hatgame::game::{complete_game, cycle_game, directed_cycle_game, rational};
use hatgame::hints::exists_winning_hint;
use hatgame::lll::{
    acyclicity_poly, lll_unwinnable_test, shearer_counterexample, shearer_unwinnable_test,
    BoundVerdict,
};
use hatgame::prisms::{box_points, min_sprawl, star_outcome};
use hatgame::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

fn oracle(g: &Game) -> Verdict {
    decide_winnable(g, &SearchBudget::default()).verdict
}

fn certified(g: &Game, out: &Outcome) -> bool {
    out.certificate
        .as_ref()
        .is_none_or(|f| verify_strategy(g, f).map(|v| v.wins()).unwrap_or(false))
}

fn expect(cond: bool, what: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn hat_guess_options(max_h: u32) -> Vec<(u32, u32)> {
    (2..=max_h)
        .flat_map(|h| (1..h).map(move |g| (h, g)))
        .collect()
}

fn clique_formula() -> Check {
    let opts = hat_guess_options(4);
    let mut games = 0;
    for n in 1..=3u32 {
        for idx in 0..opts.len().pow(n) {
            let par: Vec<(u32, u32)> = (0..n)
                .map(|i| opts[idx / opts.len().pow(i) % opts.len()])
                .collect();
            let hats: Vec<u32> = par.iter().map(|p| p.0).collect();
            let guesses: Vec<u32> = par.iter().map(|p| p.1).collect();
            let g = complete_game(&hats, &guesses).unwrap();
            let sum = par.iter().fold(rational(0, 1), |s, &(h, gg)| {
                s + rational(gg as i64, h as i64)
            });
            let want = if sum >= rational(1, 1) {
                Verdict::Winnable
            } else {
                Verdict::Unwinnable
            };
            expect(oracle(&g) == want, || {
                format!("K{n} h={hats:?} g={guesses:?}")
            })?;
            games += 1;
        }
    }
    Ok(format!("{games} complete-graph games agree"))
}

fn directed_cycles() -> Check {
    let mut games = 0;
    for k in 3..=5usize {
        for mask in 0..1u32 << k {
            let hats: Vec<u32> = (0..k).map(|i| 2 + (mask >> i & 1)).collect();
            let g = directed_cycle_game(&hats, &vec![1; k]).unwrap();
            let want = if mask == 0 {
                Verdict::Winnable
            } else {
                Verdict::Unwinnable
            };
            let got = oracle(&g);
            let classified = classify_directed_cycle(&g).unwrap();
            expect(
                got == want && classified.verdict == want && certified(&g, &classified),
                || format!("C{k} hats {hats:?}: oracle {got}"),
            )?;
            games += 1;
        }
    }
    for k in 2..=6u32 {
        for l in 1..k {
            let g = directed_cycle_game(&[k; 3], &[k - l, k - l, l]).unwrap();
            let want = if k % l == 0 {
                Verdict::Winnable
            } else {
                Verdict::Unwinnable
            };
            let got = oracle(&g);
            let classified = classify_directed_cycle(&g).unwrap();
            expect(
                got == want && classified.verdict == want && certified(&g, &classified),
                || format!("triangle k={k} l={l}: oracle {got}"),
            )?;
            games += 1;
        }
    }
    Ok(format!("{games} directed-cycle games agree"))
}

/// Random labeled tree on `n` vertices from a Prüfer-like attachment.
fn random_tree(rng: &mut ChaCha8Rng, n: usize, hats: &[u32]) -> Game {
    let mut d = Digraph::new((0..n).map(|i| format!("t{i}"))).unwrap();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        d.add_edge(u, v).unwrap();
    }
    Game::latvian(d, hats.to_vec()).unwrap()
}

fn latvian_trees() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut winnable = 0;
    let total = 240;
    for i in 0..total {
        let n = 2 + i % 4;
        let hats: Vec<u32> = (0..n).map(|_| rng.gen_range(2..=5)).collect();
        let g = random_tree(&mut rng, n, &hats);
        let got = oracle(&g);
        let classified = classify_latvian_tree(&g).unwrap();
        expect(
            got != Verdict::Unknown && got == classified.verdict && certified(&g, &classified),
            || format!("tree {g}: oracle {got}, classifier {}", classified.verdict),
        )?;
        winnable += (got == Verdict::Winnable) as usize;
    }
    Ok(format!("{total} random trees agree ({winnable} winnable)"))
}

fn latvian_cycles() -> Check {
    let mut games = 0;
    for idx in 0..81 {
        let hats: Vec<u32> = (0..4).map(|i| 2 + idx / 3usize.pow(i) as u32 % 3).collect();
        let g = cycle_game(&hats).unwrap();
        let got = oracle(&g);
        let classified = classify_latvian_cycle(&g).unwrap();
        expect(
            got != Verdict::Unknown && got == classified.verdict && certified(&g, &classified),
            || {
                format!(
                    "C4 {hats:?}: oracle {got}, classifier {}",
                    classified.verdict
                )
            },
        )?;
        games += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let hats: Vec<u32> = (0..5).map(|_| rng.gen_range(2..=5)).collect();
        let g = cycle_game(&hats).unwrap();
        let got = oracle(&g);
        let classified = classify_latvian_cycle(&g).unwrap();
        expect(
            got != Verdict::Unknown && got == classified.verdict && certified(&g, &classified),
            || {
                format!(
                    "C5 {hats:?}: oracle {got}, classifier {}",
                    classified.verdict
                )
            },
        )?;
        games += 1;
    }
    Ok(format!("{games} cycle games agree"))
}

fn pair(u: &str, w: &str) -> (Game, Strategy) {
    let g = GameBuilder::new()
        .vertex(u, 2, 1)
        .vertex(w, 2, 1)
        .edge(u, w)
        .build()
        .unwrap();
    let f = Strategy::from_fn(&g, |v, inp| {
        ColorSet::single(if v == 0 { inp[0] } else { 1 - inp[0] })
    })
    .unwrap();
    (g, f)
}

/// Glues hatness-2 edges one at a time; each new edge shares its first endpoint.
fn glued_tree(edges: &[(&str, &str)]) -> hatgame::Result<(Game, Strategy, usize)> {
    let (mut g, mut f) = pair(edges[0].0, edges[0].1);
    let mut built = 0;
    for &(u, w) in &edges[1..] {
        let (pg, pf) = pair(u, w);
        let c = product_single_point(&g, &f, &pg, &pf, u)?;
        built += (c.verified == Some(true)) as usize;
        (g, f) = c.into_parts();
    }
    Ok((g, f, built))
}

fn constructor_soundness() -> Check {
    let fail = |e: hatgame::Error| e.to_string();
    let mut checked = 0;
    let (path, pf, n) = glued_tree(&[("a", "b"), ("b", "c"), ("c", "d")]).map_err(fail)?;
    checked += n;
    let wins = verify_strategy(&path, &pf)
        .map(|v| v.wins())
        .unwrap_or(false);
    expect(wins && path.hats() == [2, 4, 4, 2], || {
        format!("path hats {:?}", path.hats())
    })?;

    let (p3, f3, n) = glued_tree(&[("a", "b"), ("b", "c")]).map_err(fail)?;
    checked += n;
    let ends = [p3.vertex("a").unwrap(), p3.vertex("c").unwrap()];
    let c4 = attach_hatness2(&p3, &f3, &ends).map_err(fail)?;
    expect(c4.verified == Some(true), || {
        "C4 (2,3,4,3) not verified".into()
    })?;
    let mut hats = c4.game.hats().to_vec();
    hats.sort_unstable();
    expect(hats == [2, 3, 3, 4], || format!("C4 hats {hats:?}"))?;
    checked += 1;

    for edges in [
        vec![("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")],
        vec![("a", "b"), ("a", "c"), ("a", "d"), ("a", "e")],
        vec![("a", "b"), ("b", "c"), ("c", "d"), ("b", "e")],
    ] {
        let (t, f, n) = glued_tree(&edges).map_err(fail)?;
        checked += n;
        let ok = (0..t.len()).all(|v| t.hat(v) == 1 << t.out_neighbors(v).len());
        expect(ok && verify_strategy(&t, &f).unwrap().wins(), || {
            format!("tree {t}")
        })?;
    }

    let k3 = complete_game(&[2, 3, 6], &[1, 1, 1]).unwrap();
    let fk3 = hatgame::classifiers::interval_strategy(&k3).map_err(fail)?;
    let (k2, fk2) = pair("p", "q");
    let prod = clique_product(&[
        Factor {
            game: &k3,
            strategy: &fk3,
            hub: &[0, 1],
        },
        Factor {
            game: &k2,
            strategy: &fk2,
            hub: &[0],
        },
    ])
    .map_err(fail)?;
    expect(prod.verified == Some(true), || {
        "clique product not verified".into()
    })?;
    checked += 1;

    let c5 = cycle_game(&[2, 2, 5, 2, 2]).unwrap();
    let f5 = decide_winnable(&c5, &SearchBudget::default())
        .certificate
        .unwrap();
    let rep = replace_vertex_with_arcs(&c5, &f5, 2).map_err(fail)?;
    expect(rep.verified == Some(true), || {
        "replacement not verified".into()
    })?;
    checked += 1;
    Ok(format!(
        "{checked} constructed strategies verified by enumeration"
    ))
}

fn random_game(rng: &mut ChaCha8Rng, n: usize, max_h: u32, density: f64) -> Game {
    let mut d = Digraph::new((0..n).map(|i| format!("r{i}"))).unwrap();
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.gen_bool(density) {
                d.add_arc(a, b).unwrap();
            }
        }
    }
    let hats: Vec<u32> = (0..n).map(|_| rng.gen_range(2..=max_h)).collect();
    let guesses: Vec<u32> = hats.iter().map(|&h| rng.gen_range(1..h)).collect();
    Game::new(d, hats, guesses).unwrap()
}

fn win_frequency() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut pairs = 0;
    while pairs < 25 {
        let n = rng.gen_range(2..=5);
        let g = random_game(&mut rng, n, 6, 0.5);
        if g.total_space().is_none_or(|s| s > 1_000_000) {
            continue;
        }
        let f = Strategy::from_fn(&g, |v, _| {
            let mut s = ColorSet::EMPTY;
            while s.len() < g.guess(v) {
                s.insert(rng.gen_range(0..g.hat(v)));
            }
            s
        })
        .unwrap();
        let space = g.total_space().unwrap();
        let counts = win_counts(&g, &f).unwrap();
        for (v, &c) in counts.iter().enumerate() {
            expect(c * g.hat(v) as u64 == g.guess(v) as u64 * space, || {
                format!("{g}: vertex {v} right {c} times")
            })?;
        }
        pairs += 1;
    }
    Ok(format!(
        "{pairs} random strategies have exact per-vertex counts"
    ))
}

fn shearer() -> Check {
    for k in [3usize, 5, 7] {
        let rep = shearer_counterexample(k).map_err(|e| e.to_string())?;
        expect(rep.all_wrong == 0 && rep.colorings == 1 << k, || {
            format!("k={k}: {} all-wrong", rep.all_wrong)
        })?;
        let g = directed_cycle_game(&vec![2; k], &vec![1; k]).unwrap();
        let w = vec![rational(1, 2); k];
        for s in 0..1usize << k {
            let set: Vec<usize> = (0..k).filter(|v| s >> v & 1 == 1).collect();
            let want = if set.len() == k {
                rational(1, 1 << (k - 1))
            } else {
                rational(1, 1 << set.len())
            };
            let q = acyclicity_poly(g.digraph(), &w, &set).unwrap();
            expect(q == want && rep.q[s] == want, || {
                format!("k={k} S={set:?}: {q}")
            })?;
        }
    }
    Ok("k = 3, 5, 7: no all-wrong coloring, polynomial values exact".into())
}

fn alon_tightness() -> Check {
    for a in [vec![1u32, 1], vec![1, 2], vec![2, 2]] {
        let dims: Vec<u32> = a.iter().map(|x| x + 1).collect();
        let (size, witness) =
            min_sprawl(&dims, &a).ok_or_else(|| format!("no sprawl for {a:?}"))?;
        let mut w = witness.clone();
        w.sort();
        let want = box_points(&dims);
        expect(size == want.len() && w == want, || {
            format!("A={a:?}: size {size}")
        })?;
    }
    Ok("minimum sprawls equal the product sets for (1,1), (1,2), (2,2)".into())
}

fn star_packing() -> Check {
    let opts = hat_guess_options(4);
    let mut games = 0;
    for leaves in 1..=3usize {
        let mut idx = vec![0usize; leaves];
        loop {
            for &(ch, cg) in &opts {
                let mut b = GameBuilder::new().vertex("c", ch, cg);
                let names: Vec<String> = (0..leaves).map(|i| format!("l{i}")).collect();
                for (i, name) in names.iter().enumerate() {
                    b = b
                        .vertex(name, opts[idx[i]].0, opts[idx[i]].1)
                        .edge("c", name);
                }
                let g = b.build().unwrap();
                let out = star_outcome(&g).map_err(|e| e.to_string())?;
                let got = oracle(&g);
                expect(out.verdict == got && certified(&g, &out), || {
                    format!("star {g}: oracle {got}")
                })?;
                games += 1;
            }
            // nondecreasing leaf parameters
            let mut i = leaves;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if idx[i] + 1 < opts.len() {
                    idx[i] += 1;
                    for j in i + 1..leaves {
                        idx[j] = idx[i];
                    }
                    break;
                }
                if i == 0 {
                    idx[0] = opts.len();
                }
            }
            if idx[0] >= opts.len() {
                break;
            }
        }
    }
    for n in 1..=3usize {
        for (center, want) in [
            (1u32 << n, Verdict::Winnable),
            ((1 << n) + 1, Verdict::Unwinnable),
        ] {
            let mut b = GameBuilder::new().vertex("c", center, 1);
            for i in 0..n {
                let name = format!("l{i}");
                b = b.vertex(&name, 2, 1).edge("c", &name);
            }
            let g = b.build().unwrap();
            let out = star_outcome(&g).map_err(|e| e.to_string())?;
            expect(
                out.verdict == want && oracle(&g) == want && certified(&g, &out),
                || format!("Latvian star n={n} center {center}"),
            )?;
            games += 1;
        }
    }
    Ok(format!("{games} stars agree"))
}

fn probabilistic_soundness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut flagged, mut tried) = (0, 0);
    while flagged < 60 {
        tried += 1;
        if tried > 20_000 {
            return Err(format!("only {flagged} games flagged"));
        }
        let n = rng.gen_range(2..=4);
        let mut g = random_game(&mut rng, n, 9, 0.6);
        if rng.gen_bool(0.5) {
            // make it a graph so the Shearer test applies
            let arcs: Vec<(usize, usize)> = g.digraph().arcs().collect();
            for (a, b) in arcs {
                g.digraph_mut().add_arc(b, a).unwrap();
            }
        }
        let lll = lll_unwinnable_test(&g, None).unwrap().verdict == BoundVerdict::Unwinnable;
        let shearer = g.digraph().is_symmetric()
            && shearer_unwinnable_test(&g).unwrap().0 == BoundVerdict::Unwinnable;
        if !(lll || shearer) {
            continue;
        }
        let got = oracle(&g);
        expect(got == Verdict::Unwinnable, || {
            format!("{g} flagged but oracle says {got}")
        })?;
        flagged += 1;
    }
    Ok(format!(
        "{flagged} flagged games all unwinnable ({tried} sampled)"
    ))
}

fn hint_equivalence() -> Check {
    let opts = [(2u32, 1u32), (3, 1), (3, 2)];
    let mut games = 0;
    for n in 1..=3usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        for mask in 0..1u32 << pairs.len() {
            for p in 0..3usize.pow(n as u32) {
                let mut d = Digraph::new((0..n).map(|i| format!("v{i}"))).unwrap();
                for (k, &(a, b)) in pairs.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        d.add_arc(a, b).unwrap();
                    }
                }
                let par: Vec<(u32, u32)> =
                    (0..n).map(|i| opts[p / 3usize.pow(i as u32) % 3]).collect();
                let g = Game::new(
                    d,
                    par.iter().map(|x| x.0).collect(),
                    par.iter().map(|x| x.1).collect(),
                )
                .unwrap();
                let base = oracle(&g);
                for v in 0..n {
                    let r = exists_winning_hint(&g, v, &SearchBudget::default())
                        .map_err(|e| e.to_string())?;
                    expect(r.verdict == base && base != Verdict::Unknown, || {
                        format!("{g} at {v}: {}", r.verdict)
                    })?;
                }
                games += 1;
            }
        }
    }
    Ok(format!("{games} games, every vertex agrees"))
}

fn main() -> ExitCode {
    let checks: [(&str, fn() -> Check); 11] = [
        ("clique formula", clique_formula),
        ("directed cycles", directed_cycles),
        ("Latvian trees", latvian_trees),
        ("Latvian cycles", latvian_cycles),
        ("constructor soundness", constructor_soundness),
        ("exact win frequency", win_frequency),
        ("directed Shearer counterexample", shearer),
        ("covering tightness", alon_tightness),
        ("star packing", star_packing),
        ("probabilistic soundness", probabilistic_soundness),
        ("hint equivalence", hint_equivalence),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
