//! Greedy selection, available only on explicit request. Adds whole
//! compressed sentences (best NP + best VP) by objective gain per word.

use std::collections::BTreeMap;

use super::{check, IlpModel, IlpSolution, SolveStatus, VarKind};
use crate::treebank::PhraseKind;

/// Completes a phrase selection to a full assignment: sentence and pair
/// variables follow the phrases, and the lowest-index selected phrase of
/// each cluster carries the full form.
pub fn complete_assignment(model: &IlpModel, selected: &[bool]) -> Vec<bool> {
    let inst = &model.instance;
    let mut sentence_on = vec![false; inst.num_sentences];
    for (i, p) in inst.phrases.iter().enumerate() {
        sentence_on[p.sentence] |= selected[i];
    }
    let mut full_slot: BTreeMap<usize, usize> = BTreeMap::new();
    for (s, slot) in inst.slots.iter().enumerate() {
        if selected[slot.phrase] {
            full_slot.entry(slot.cluster).or_insert(s);
        }
    }
    model
        .vars
        .iter()
        .map(|v| match *v {
            VarKind::Alpha(i) => selected[i],
            VarKind::AlphaPair(i, j) => selected[i] && selected[j],
            VarKind::Beta(k) => sentence_on[k],
            VarKind::GammaFull(s) => full_slot.get(&inst.slots[s].cluster) == Some(&s),
            VarKind::GammaShort(s) => selected[inst.slots[s].phrase] && full_slot.get(&inst.slots[s].cluster) != Some(&s),
        })
        .collect()
}

pub fn solve_greedy(model: &IlpModel) -> IlpSolution {
    let inst = &model.instance;
    let best = |k: usize, kind: PhraseKind| {
        (0..inst.phrases.len())
            .filter(|&i| inst.phrases[i].sentence == k && inst.phrases[i].kind == kind && inst.phrases[i].excluded.is_none())
            .max_by(|&a, &b| inst.phrases[a].salience.total_cmp(&inst.phrases[b].salience).then(b.cmp(&a)))
    };
    let mut units: Vec<(usize, usize)> =
        (0..inst.num_sentences).filter_map(|k| Some((best(k, PhraseKind::NP)?, best(k, PhraseKind::VP)?))).collect();

    let mut selected = vec![false; inst.phrases.len()];
    let mut assignment = complete_assignment(model, &selected);
    let mut value = 0.0;
    loop {
        let mut choice: Option<(usize, f64, Vec<bool>, f64)> = None;
        for (u, &(np, vp)) in units.iter().enumerate() {
            let mut trial = selected.clone();
            trial[np] = true;
            trial[vp] = true;
            let full = complete_assignment(model, &trial);
            if !check::is_feasible(model, &full) {
                continue;
            }
            let v = model.objective_value(&full);
            let words = (inst.phrases[np].words + inst.phrases[vp].words).max(1) as f64;
            let rate = (v - value) / words;
            if v > value && choice.as_ref().is_none_or(|c| rate > c.1) {
                choice = Some((u, rate, full, v));
            }
        }
        let Some((u, _, full, v)) = choice else { break };
        let (np, vp) = units.remove(u);
        selected[np] = true;
        selected[vp] = true;
        assignment = full;
        value = v;
    }
    IlpSolution { assignment, objective_value: value, status: SolveStatus::FeasibleWithGap(f64::INFINITY), nodes_explored: 0 }
}
