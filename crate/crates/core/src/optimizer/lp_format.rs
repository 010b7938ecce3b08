//! CPLEX LP text format, for cross-checking a model with external solvers.

use std::fmt::Write;

use super::{IlpModel, Sense};

fn linear(out: &mut String, model: &IlpModel, terms: impl IntoIterator<Item = (usize, f64)>) {
    let mut first = true;
    for (j, a) in terms {
        if a == 0.0 {
            continue;
        }
        let sign = if a < 0.0 { "-" } else { "+" };
        if first && a > 0.0 {
            write!(out, " {} {}", a, model.vars[j].name()).unwrap();
        } else {
            write!(out, " {sign} {} {}", a.abs(), model.vars[j].name()).unwrap();
        }
        first = false;
    }
    if first {
        out.push_str(" 0");
    }
}

pub fn to_lp_string(model: &IlpModel) -> String {
    let mut out = String::from("Maximize\n obj:");
    linear(&mut out, model, model.objective.iter().copied().enumerate());
    out.push_str("\nSubject To\n");
    for (r, c) in model.constraints.iter().enumerate() {
        write!(out, " c{r}_{:?}:", c.family).unwrap();
        linear(&mut out, model, c.terms.iter().copied());
        let op = match c.sense {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        };
        writeln!(out, " {op} {}", c.rhs).unwrap();
    }
    out.push_str("Binary\n");
    for v in &model.vars {
        writeln!(out, " {}", v.name()).unwrap();
    }
    out.push_str("End\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimizer::{Instance, PhraseVar};
    use crate::treebank::PhraseKind;

    #[test]
    fn small_model_dump() {
        let inst = Instance {
            phrases: vec![
                PhraseVar { sentence: 0, kind: PhraseKind::NP, words: 2, salience: 0.5, excluded: None },
                PhraseVar { sentence: 0, kind: PhraseKind::VP, words: 3, salience: 0.25, excluded: None },
            ],
            num_sentences: 1,
            nested: vec![],
            similar: vec![],
            slots: vec![],
            budget: 4,
        };
        let lp = to_lp_string(&IlpModel::from_instance(&inst));
        assert!(lp.starts_with("Maximize\n obj: 0.5 a0 + 0.25 a1\n"));
        assert!(lp.contains(" c0_Compression: 1 a0 - 1 b0 <= 0\n"));
        assert!(lp.contains("_Length: 2 a0 + 3 a1 <= 4\n"));
        assert!(lp.ends_with("Binary\n a0\n a1\n b0\nEnd\n"));
    }
}
