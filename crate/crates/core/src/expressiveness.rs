//! Sentence expressiveness by sparse reconstruction of the topic's news and
//! comment vectors from the news sentences themselves.
//!
//! The loss over non-negative coefficients `A` is
//!
//! ```text
//! J(A) = 1/(2m) Σ ρ_i ‖x_i − x̄‖² + 1/(2n) Σ τ_i ‖z_i − x̄‖² + λ‖A‖₁,   x̄ = Σ a_j x_j
//! ```
//!
//! and is minimized by greedy coordinate descent: each iteration updates the
//! coordinate with the largest partial derivative magnitude through a
//! soft-thresholded, non-negative step.
//!
//! Inner products are cached once. With `G = XᵀX`,
//! `b_k = 1/m Σ ρ_i x_iᵀx_k + 1/n Σ τ_i z_iᵀx_k` and `c = 1/m Σ ρ_i + 1/n Σ τ_i`
//! the smooth part is `const − aᵀb + c/2 aᵀGa`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{self, TermVector, Topic};

#[derive(Debug, Error, PartialEq)]
pub enum ExpressivenessError {
    #[error("comment vector is zero")]
    ZeroVector,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("loss became non-finite at iteration {iteration}; the learning rate is too large")]
    NonFiniteLoss { iteration: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no news sentences")]
    NoNewsSentences,
}

/// How raw term counts become the vectors being reconstructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TermWeighting {
    /// Counts as they are.
    Raw,
    /// Counts divided by the sentence's total count.
    #[default]
    Relative,
    /// Counts divided by their Euclidean norm.
    Unit,
}

/// How `epsilon` is compared with the change of the loss.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopRule {
    /// `|ΔJ| ≤ ε`.
    Absolute,
    /// `|ΔJ| ≤ ε·J(0)`, independent of the scale of the vectors.
    #[default]
    ScaledByInitialLoss,
}

impl TermWeighting {
    pub fn apply(self, v: TermVector) -> TermVector {
        match self {
            TermWeighting::Raw => v,
            TermWeighting::Relative => v.relative(),
            TermWeighting::Unit => v.normalized(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScParams {
    pub lambda: f64,
    pub eta: f64,
    pub max_iter: usize,
    pub epsilon: f64,
    /// Position base `C`, in (0, 1).
    pub c: f64,
    /// Paragraph cap `p̄`.
    pub p_bar: usize,
    pub weighting: TermWeighting,
    pub stop_rule: StopRule,
}

impl Default for ScParams {
    fn default() -> Self {
        ScParams { lambda: 0.005, eta: 1.0, max_iter: 300, epsilon: 1e-4, c: 0.8, p_bar: 4, weighting: TermWeighting::Relative, stop_rule: StopRule::ScaledByInitialLoss }
    }
}

impl ScParams {
    pub fn validate(&self) -> Result<(), ExpressivenessError> {
        let bad = |m: &str| Err(ExpressivenessError::InvalidParameter(m.to_string()));
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return bad("lambda must be finite and non-negative");
        }
        if !(self.eta > 0.0 && self.eta.is_finite()) {
            return bad("eta must be positive");
        }
        if !(self.c > 0.0 && self.c < 1.0) {
            return bad("C must lie in (0, 1)");
        }
        if !(self.epsilon >= 0.0) {
            return bad("epsilon must be non-negative");
        }
        Ok(())
    }
}

/// `C^p` below the cap, `C^p̄` from the cap on.
pub fn position_weight(p: usize, c: f64, p_bar: usize) -> f64 {
    c.powi(p.min(p_bar) as i32)
}

/// Mean cosine similarity between a comment vector and every news vector.
pub fn comment_weight(z: &TermVector, news: &[TermVector]) -> Result<f64, ExpressivenessError> {
    if z.is_zero() {
        return Err(ExpressivenessError::ZeroVector);
    }
    if news.is_empty() {
        return Err(ExpressivenessError::NoNewsSentences);
    }
    Ok(news.iter().map(|x| z.cosine(x)).sum::<f64>() / news.len() as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScModel {
    pub news: Vec<TermVector>,
    pub comments: Vec<TermVector>,
    pub rho: Vec<f64>,
    pub tau: Vec<f64>,
    pub params: ScParams,
    gram: Vec<Vec<f64>>,
    target: Vec<f64>,
    curvature_scale: f64,
    constant: f64,
}

impl ScModel {
    pub fn new(
        news: Vec<TermVector>,
        comments: Vec<TermVector>,
        rho: Vec<f64>,
        tau: Vec<f64>,
        params: ScParams,
    ) -> Result<Self, ExpressivenessError> {
        params.validate()?;
        let (m, n) = (news.len(), comments.len());
        if m == 0 {
            return Err(ExpressivenessError::NoNewsSentences);
        }
        if rho.len() != m || tau.len() != n {
            return Err(ExpressivenessError::DimensionMismatch(format!(
                "{m} news / {} rho, {n} comments / {} tau",
                rho.len(),
                tau.len()
            )));
        }
        let gram: Vec<Vec<f64>> = news.iter().map(|a| news.iter().map(|b| a.dot(b)).collect()).collect();
        let news_scale = 1.0 / m as f64;
        let comment_scale = if n == 0 { 0.0 } else { 1.0 / n as f64 };
        let target = news
            .iter()
            .map(|xk| {
                news_scale * news.iter().zip(&rho).map(|(xi, r)| r * xi.dot(xk)).sum::<f64>()
                    + comment_scale * comments.iter().zip(&tau).map(|(zi, t)| t * zi.dot(xk)).sum::<f64>()
            })
            .collect();
        let curvature_scale = news_scale * rho.iter().sum::<f64>() + comment_scale * tau.iter().sum::<f64>();
        let constant = 0.5 * news_scale * news.iter().zip(&rho).map(|(x, r)| r * x.norm2().powi(2)).sum::<f64>()
            + 0.5 * comment_scale * comments.iter().zip(&tau).map(|(z, t)| t * z.norm2().powi(2)).sum::<f64>();
        Ok(ScModel { news, comments, rho, tau, params, gram, target, curvature_scale, constant })
    }

    /// News vectors weighted by paragraph position, nonzero comment vectors
    /// weighted by their mean cosine to the news. `use_comments = false`
    /// gives the news-only model.
    pub fn from_topic(topic: &Topic, params: ScParams, use_comments: bool) -> Result<Self, ExpressivenessError> {
        let weigh = |s| params.weighting.apply(corpus::vectorize(s, &topic.dictionary));
        let news: Vec<TermVector> = topic.news_sentences().map(weigh).collect();
        let rho = topic
            .news_sentences()
            .map(|s| position_weight(s.paragraph_index, params.c, params.p_bar))
            .collect();
        let comments: Vec<TermVector> = if use_comments {
            topic
                .comment_sentences
                .iter()
                .map(weigh)
                .filter(|v| !v.is_zero())
                .collect()
        } else {
            Vec::new()
        };
        let tau = comments.iter().map(|z| comment_weight(z, &news)).collect::<Result<_, _>>()?;
        ScModel::new(news, comments, rho, tau, params)
    }

    pub fn num_news(&self) -> usize {
        self.news.len()
    }

    fn check_dim(&self, a: &[f64]) -> Result<(), ExpressivenessError> {
        if a.len() != self.news.len() {
            return Err(ExpressivenessError::DimensionMismatch(format!(
                "coefficient vector has length {}, expected {}",
                a.len(),
                self.news.len()
            )));
        }
        Ok(())
    }

    fn gram_times(&self, a: &[f64]) -> Vec<f64> {
        self.gram
            .iter()
            .map(|row| row.iter().zip(a).map(|(g, x)| g * x).sum())
            .collect()
    }

    fn loss_with(&self, a: &[f64], ga: &[f64]) -> f64 {
        let linear: f64 = a.iter().zip(&self.target).map(|(x, b)| x * b).sum();
        let quad: f64 = a.iter().zip(ga).map(|(x, g)| x * g).sum();
        let l1: f64 = a.iter().map(|x| x.abs()).sum();
        self.constant - linear + 0.5 * self.curvature_scale * quad + self.params.lambda * l1
    }

    pub fn loss(&self, a: &[f64]) -> Result<f64, ExpressivenessError> {
        self.check_dim(a)?;
        Ok(self.loss_with(a, &self.gram_times(a)))
    }

    /// Partial derivative of the smooth part of the loss; the L1 term is left
    /// to the thresholding step.
    pub fn gradient_coordinate(&self, a: &[f64], k: usize) -> Result<f64, ExpressivenessError> {
        self.check_dim(a)?;
        if k >= a.len() {
            return Err(ExpressivenessError::DimensionMismatch(format!("coordinate {k} out of range")));
        }
        let gk: f64 = self.gram[k].iter().zip(a).map(|(g, x)| g * x).sum();
        Ok(self.curvature_scale * gk - self.target[k])
    }

    /// Curvature of the smooth loss along coordinate `k`.
    fn curvature(&self, k: usize) -> f64 {
        self.curvature_scale * self.gram[k][k]
    }

    /// Thresholded, non-negative coordinate step. The rate is `eta`, capped at
    /// the inverse coordinate curvature where the plain step would overshoot
    /// the minimizer along that coordinate.
    fn step(&self, a_k: f64, grad: f64, k: usize) -> f64 {
        let curv = self.curvature(k);
        if curv <= 0.0 {
            return a_k;
        }
        let rate = self.params.eta.min(1.0 / curv);
        soft_threshold(a_k - rate * grad, rate * self.params.lambda).max(0.0)
    }

    pub fn solve(&self) -> Result<ExpressivenessResult, ExpressivenessError> {
        let m = self.news.len();
        let mut a = vec![0.0; m];
        let mut ga = vec![0.0; m];
        let mut loss = self.loss_with(&a, &ga);
        let mut loss_trace = vec![loss];
        let tolerance = match self.params.stop_rule {
            StopRule::Absolute => self.params.epsilon,
            StopRule::ScaledByInitialLoss => self.params.epsilon * loss,
        };
        let mut converged = false;
        let mut t = 0;
        while t < self.params.max_iter {
            let mut best = 0;
            let mut best_abs = f64::NEG_INFINITY;
            for k in 0..m {
                let g = self.curvature_scale * ga[k] - self.target[k];
                if g.abs() > best_abs {
                    best_abs = g.abs();
                    best = k;
                }
            }
            let grad = self.curvature_scale * ga[best] - self.target[best];
            let updated = self.step(a[best], grad, best);
            let delta = updated - a[best];
            if delta != 0.0 {
                a[best] = updated;
                for (gi, row) in ga.iter_mut().zip(&self.gram) {
                    *gi += delta * row[best];
                }
            }
            let next = self.loss_with(&a, &ga);
            t += 1;
            if !next.is_finite() {
                return Err(ExpressivenessError::NonFiniteLoss { iteration: t });
            }
            loss_trace.push(next);
            let change = next - loss;
            loss = next;
            if change.abs() <= tolerance {
                converged = true;
                break;
            }
        }
        Ok(ExpressivenessResult { scores: a, loss_trace, iterations_run: t, converged })
    }
}

/// `sign(v) · max(|v| − threshold, 0)`.
pub fn soft_threshold(v: f64, threshold: f64) -> f64 {
    v.signum() * (v.abs() - threshold).max(0.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpressivenessResult {
    /// One non-negative score per news sentence, in topic order.
    pub scores: Vec<f64>,
    /// Loss before the first iteration followed by the loss after each one.
    pub loss_trace: Vec<f64>,
    pub iterations_run: usize,
    /// True when the loop stopped on `|ΔJ| ≤ ε` rather than the iteration cap.
    pub converged: bool,
}

impl ExpressivenessResult {
    pub fn nonzero_count(&self) -> usize {
        self.scores.iter().filter(|a| **a > 0.0).count()
    }
}
