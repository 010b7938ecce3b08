#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rasum_core::optimizer::{check, Exclusion, IlpModel, IlpSolution, Instance, PhraseVar, RewriteSlot, VarKind};
use rasum_core::treebank::PhraseKind;

/// A random selection problem with at most `max_phrases` phrase variables.
pub fn random_instance(rng: &mut ChaCha8Rng, max_phrases: usize) -> Instance {
    let mut phrases = Vec::new();
    let mut nested = Vec::new();
    let num_sentences = rng.random_range(1..=5);
    for k in 0..num_sentences {
        let n_np = rng.random_range(1..=2);
        let n_vp = rng.random_range(1..=2);
        if phrases.len() + n_np + n_vp > max_phrases {
            break;
        }
        let first = phrases.len();
        for i in 0..n_np + n_vp {
            let kind = if i < n_np { PhraseKind::NP } else { PhraseKind::VP };
            let excluded = rng.random_bool(0.08).then_some(if kind == PhraseKind::NP { Exclusion::Pronoun } else { Exclusion::ShortSentence });
            phrases.push(PhraseVar {
                sentence: k,
                kind,
                words: rng.random_range(1..=9),
                salience: rng.random_range(0.0..1.0),
                excluded,
            });
        }
        // The second VP of a sentence may sit inside the first.
        if n_vp == 2 && rng.random_bool(0.5) {
            nested.push((first + n_np, first + n_np + 1));
        }
    }
    let num_sentences = phrases.iter().map(|p| p.sentence + 1).max().unwrap_or(0);
    let n = phrases.len();

    let mut similar = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if phrases[i].sentence != phrases[j].sentence && rng.random_bool(0.3) {
                similar.push((i, j, rng.random_range(0.05..1.0)));
            }
        }
    }

    let mut slots = Vec::new();
    for cluster in 0..rng.random_range(0..=3) {
        for phrase in 0..n {
            if rng.random_bool(0.3) {
                slots.push(RewriteSlot { phrase, cluster, full_delta: rng.random_range(0..=3), short_delta: rng.random_range(-1..=0) });
            }
        }
    }
    let budget = rng.random_range(0..=40);
    Instance { phrases, num_sentences, nested, similar, slots, budget }
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Best objective over all phrase selections, judged directly from the
/// problem definition. Returns the objective and the winning selection.
pub fn brute_force(inst: &Instance) -> (f64, Vec<bool>) {
    let n = inst.phrases.len();
    let mut best = (0.0, vec![false; n]);
    for mask in 0u32..(1 << n) {
        let on = |i: usize| mask >> i & 1 == 1;
        if (0..n).any(|i| on(i) && inst.phrases[i].excluded.is_some()) {
            continue;
        }
        if inst.nested.iter().any(|&(a, b)| on(a) && on(b)) {
            continue;
        }
        let sentence_ok = (0..inst.num_sentences).all(|k| {
            let count = |kind| (0..n).filter(|&i| on(i) && inst.phrases[i].sentence == k && inst.phrases[i].kind == kind).count();
            let (np, vp) = (count(PhraseKind::NP), count(PhraseKind::VP));
            (np == 0 && vp == 0) || (np > 0 && vp > 0)
        });
        if !sentence_ok {
            continue;
        }
        let mut words: i64 = (0..n).filter(|&i| on(i)).map(|i| inst.phrases[i].words as i64).sum();
        let mut per_cluster: BTreeMap<usize, Vec<&RewriteSlot>> = BTreeMap::new();
        for s in inst.slots.iter().filter(|s| on(s.phrase)) {
            per_cluster.entry(s.cluster).or_default().push(s);
        }
        for slots in per_cluster.values() {
            words += slots.iter().map(|s| s.short_delta).sum::<i64>();
            words += slots.iter().map(|s| s.full_delta - s.short_delta).min().unwrap();
        }
        if words > inst.budget as i64 {
            continue;
        }
        let mut value: f64 = (0..n).filter(|&i| on(i)).map(|i| inst.phrases[i].salience).sum();
        for &(i, j, r) in &inst.similar {
            if on(i) && on(j) {
                value -= (inst.phrases[i].salience + inst.phrases[j].salience) * r;
            }
        }
        if value > best.0 {
            best = (value, (0..n).map(on).collect());
        }
    }
    best
}

/// Structural invariants of a returned solution beyond row feasibility.
pub fn solution_invariants(model: &IlpModel, sol: &IlpSolution) -> Result<(), String> {
    let v = check::violations(model, &sol.assignment);
    if !v.is_empty() {
        return Err(format!("violated rows: {v:?}"));
    }
    let value = |kind| model.var_index(kind).map(|j| sol.assignment[j]);
    for (idx, kind) in model.vars.iter().enumerate() {
        if let VarKind::AlphaPair(i, j) = *kind {
            let both = value(VarKind::Alpha(i)).unwrap() && value(VarKind::Alpha(j)).unwrap();
            if sol.assignment[idx] != both {
                return Err(format!("pair ({i},{j}) inconsistent"));
            }
        }
    }
    let inst = &model.instance;
    let mut fulls: BTreeMap<usize, usize> = BTreeMap::new();
    let mut any_selected: BTreeMap<usize, bool> = BTreeMap::new();
    for (s, slot) in inst.slots.iter().enumerate() {
        let a = value(VarKind::Alpha(slot.phrase)).unwrap();
        let f = value(VarKind::GammaFull(s)).unwrap();
        let sh = value(VarKind::GammaShort(s)).unwrap();
        if (f as u8 + sh as u8) != a as u8 {
            return Err(format!("slot {s}: full + short != alpha"));
        }
        *fulls.entry(slot.cluster).or_default() += f as usize;
        *any_selected.entry(slot.cluster).or_default() |= a;
    }
    for (c, sel) in any_selected {
        let f = fulls[&c];
        if (sel && f != 1) || (!sel && f != 0) {
            return Err(format!("cluster {c} has {f} full forms"));
        }
    }
    Ok(())
}
