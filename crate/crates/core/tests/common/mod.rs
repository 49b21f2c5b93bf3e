#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cubical::axioms::{classify, enumerate_messages, MessageFilter, SystemKind};
use cubical::content::{message_content, state_content_oracle, ContentSet, StateContents};
use cubical::format::{parse_family, parse_system, SystemDocument};
use cubical::gsystem::{build_gsystem, random_cube_graph, GSystem};
use cubical::system::{ClassKind, Message, StateId, TokenId, TokenSystem};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture(name: &str) -> SystemDocument {
    let path = fixture_dir().join(name);
    let text = std::fs::read_to_string(&path).unwrap();
    if name.ends_with(".fam") {
        let g = build_gsystem(parse_family(&text).unwrap()).unwrap();
        SystemDocument {
            system: g.into_system(),
            theta: None,
            xi: None,
        }
    } else {
        parse_system(&text).unwrap()
    }
}

/// Every fixture, sorted by file name.
pub fn fixtures() -> Vec<(String, SystemDocument)> {
    let mut names: Vec<String> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".tks") || n.ends_with(".fam"))
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), fixture(&n))).collect()
}

pub fn cubical_fixtures() -> Vec<(String, SystemDocument)> {
    fixtures()
        .into_iter()
        .filter(|(_, d)| classify(&d.system).kind != SystemKind::NotCubical)
        .collect()
}

/// A random connected cube subgraph G-system with at most `max_ground`
/// elements and at most `max_members` members.
pub fn random_gsystem(seed: u64, max_ground: usize, max_members: usize) -> GSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_ground);
    let members = rng.gen_range(2..=max_members.min(1 << n));
    build_gsystem(random_cube_graph(&mut rng, n, members, 0.5)).unwrap()
}

/// Strictly positive random token probabilities.
pub fn random_theta(seed: u64, tokens: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<f64> = (0..tokens).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

/// A random token system on 2..=`max_states` states, not necessarily
/// cubical. Returns `None` when the draw is not a valid token system.
pub fn random_token_system(seed: u64, max_states: usize, max_tokens: usize) -> Option<TokenSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_states);
    let k = rng.gen_range(1..=max_tokens);
    let states: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let mut tokens = Vec::new();
    for t in 0..k {
        let image: Vec<StateId> = (0..n)
            .map(|s| {
                if rng.gen_bool(0.4) {
                    StateId(rng.gen_range(0..n))
                } else {
                    StateId(s)
                }
            })
            .collect();
        tokens.push((format!("t{t}"), image));
    }
    // Close some tokens under reversal so the exact paths get exercised.
    if rng.gen_bool(0.7) {
        let mut extra = Vec::new();
        for (name, image) in &tokens {
            let mut rev: Vec<StateId> = (0..n).map(StateId).collect();
            let mut ok = true;
            for (s, v) in image.iter().enumerate() {
                if v.0 != s {
                    if rev[v.0].0 != v.0 {
                        ok = false;
                    }
                    rev[v.0] = StateId(s);
                }
            }
            if ok && rng.gen_bool(0.8) {
                extra.push((format!("{name}~"), rev));
            }
        }
        tokens.extend(extra);
    }
    TokenSystem::from_images(states, tokens).ok()
}

/// Brute-force strict partial orders: every relation on `n` elements,
/// kept when irreflexive and transitive. Relations are sets of pairs.
pub fn brute_force_orders(n: usize) -> Vec<BTreeSet<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let rel: BTreeSet<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let transitive = rel
            .iter()
            .all(|&(x, y)| rel.iter().filter(|p| p.0 == y).all(|&(_, z)| rel.contains(&(x, z))));
        if transitive {
            out.push(rel);
        }
    }
    out
}

fn count(m: &Message, t: TokenId) -> i64 {
    m.count(t) as i64
}

/// Checks the content laws on a cubical system, over every
/// stepwise-effective message of length at most `max_len`. Returns the
/// number of messages examined.
pub fn check_content_laws(sys: &TokenSystem, max_len: usize) -> Result<usize, String> {
    let contents = StateContents::new(sys).map_err(|e| e.to_string())?;
    let table = sys.reverse_table();
    let name = |s: StateId| sys.state_name(s).to_string();

    // One orientation of each pair per state, never both.
    for (s, c) in contents.iter() {
        for t in sys.tokens() {
            let r = sys.reverse_of(t).ok_or("token without reverse")?;
            if c.contains(t) == c.contains(r) {
                return Err(format!("state {} holds {} and its reverse equally", name(s), sys.token_name(t)));
            }
        }
    }
    // Contents separate states.
    let distinct: BTreeSet<&ContentSet> = contents.iter().map(|(_, c)| c).collect();
    if distinct.len() != sys.state_count() {
        return Err("two states share a content".into());
    }
    // Effective domains.
    for t in sys.tokens() {
        let r = sys.reverse_of(t).unwrap();
        let u: BTreeSet<StateId> = sys.effective_domain(t).into_iter().collect();
        let ur: BTreeSet<StateId> = sys.effective_domain(r).into_iter().collect();
        let image: BTreeSet<StateId> = u.iter().map(|&s| sys.image(s, t)).collect();
        if image != ur || !u.is_disjoint(&ur) || image.len() != u.len() {
            return Err(format!("effective domain law fails for {}", sys.token_name(t)));
        }
        if u.iter().any(|&s| sys.image(sys.image(s, t), r) != s) {
            return Err(format!("{} does not invert {}", sys.token_name(r), sys.token_name(t)));
        }
        // After S tau = T, tau is idle at T and tau~ leads back.
        for &s in &u {
            let v = sys.image(s, t);
            if sys.image(v, t) != v {
                return Err(format!("{} effective twice in a row", sys.token_name(t)));
            }
        }
        // Not injective: S and S tau share an image.
        if let Some(&s) = u.iter().next() {
            if sys.image(s, t) != sys.image(sys.image(s, t), t) {
                return Err(format!("{} is injective", sys.token_name(t)));
            }
        }
    }
    // Unique token per adjacent ordered pair.
    for s in sys.states() {
        let mut seen = HashMap::new();
        for t in sys.effective_tokens(s) {
            if seen.insert(sys.image(s, t), t).is_some() {
                return Err(format!("two tokens lead out of {} to the same state", name(s)));
            }
        }
    }

    let mut examined = 0;
    for start in sys.states() {
        let mut by_end: HashMap<StateId, ContentSet> = HashMap::new();
        let mut by_content: HashMap<ContentSet, StateId> = HashMap::new();
        for m in enumerate_messages(sys, start, max_len, MessageFilter::All) {
            let m = m.map_err(|e| e.to_string())?;
            examined += 1;
            let c = message_content(sys, &m).map_err(|e| e.to_string())?;
            let rm = sys.reverse_message(&m).ok_or("no reverse message")?;
            let rc = message_content(sys, &rm).map_err(|e| e.to_string())?;
            for t in sys.tokens() {
                let r = sys.reverse_of(t).unwrap();
                let diff = count(&m, t) - count(&m, r);
                if !(-1..=1).contains(&diff) {
                    return Err(format!("count difference {diff} in {}", sys.render(&m)));
                }
                if c.contains(t) != (diff == 1) {
                    return Err(format!("content/count mismatch in {}", sys.render(&m)));
                }
                if count(&rm, r) != count(&m, t) || c.contains(t) != rc.contains(r) {
                    return Err(format!("reversal law fails on {}", sys.render(&m)));
                }
            }
            let end = sys.apply(start, &m);
            if sys.is_closed(start, &m) != c.is_empty() {
                return Err(format!("closed iff empty content fails on {}", sys.render(&m)));
            }
            let (gained, lost) = contents.delta(start, end);
            if gained != c || lost != rc {
                return Err(format!("content delta differs from C(m) on {}", sys.render(&m)));
            }
            let sym = contents.get(start).symmetric_difference(contents.get(end));
            if sym != c.union(&rc) || !c.is_disjoint(&rc) {
                return Err(format!("symmetric difference law fails on {}", sys.render(&m)));
            }
            if *by_end.entry(end).or_insert_with(|| c.clone()) != c {
                return Err(format!("same end, different content from {}", name(start)));
            }
            if *by_content.entry(c).or_insert(end) != end {
                return Err(format!("same content, different end from {}", name(start)));
            }
        }
    }

    if sys.state_count() <= 8 {
        for s in sys.states() {
            let oracle = state_content_oracle(sys, s, 2 * sys.state_count()).map_err(|e| e.to_string())?;
            if &oracle != contents.get(s) {
                return Err(format!("oracle disagrees at {}", name(s)));
            }
        }
    }

    if classify(sys).kind == SystemKind::Medium {
        let classes = (0..table.class_count())
            .filter(|&c| table.kind(c) == ClassKind::Pair)
            .count();
        let mut letters_union: Vec<ContentSet> = vec![ContentSet::new(); sys.state_count()];
        for start in sys.states() {
            for m in enumerate_messages(sys, start, classes, MessageFilter::Concise) {
                let m = m.map_err(|e| e.to_string())?;
                let letters: ContentSet = m.tokens().iter().copied().collect();
                if message_content(sys, &m).map_err(|e| e.to_string())? != letters {
                    return Err(format!("concise message {} has other content", sys.render(&m)));
                }
                let end = sys.apply(start, &m);
                letters_union[end.0] = letters_union[end.0].union(&letters);
            }
        }
        for s in sys.states() {
            if &letters_union[s.0] != contents.get(s) {
                return Err(format!("concise letters differ from content at {}", name(s)));
            }
        }
    }
    Ok(examined)
}
