//! Block scores used as test statistics and neoSBM objectives.
//!
//! Entropies are reported in bits, log-likelihoods in nats. Every formula
//! uses the ordered-pair convention of [`BlockStats`] and `0·log 0 = 0`.
//!
//! Additive terms that cannot change under a label permutation (functions of
//! the degree sequence or of the group-size multiset alone) are dropped
//! where noted; permutation p-values and argmax comparisons do not see them.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::math::{self, LN_2};
use crate::partition::Partition;
use crate::stats::BlockStats;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScoreKind {
    EntropyBits,
    LogLikNats,
    Modularity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    LowerBetter,
    HigherBetter,
}

impl ScoreKind {
    pub fn orientation(self) -> Orientation {
        match self {
            ScoreKind::EntropyBits => Orientation::LowerBetter,
            ScoreKind::LogLikNats | ScoreKind::Modularity => Orientation::HigherBetter,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ScoreKind::EntropyBits => "entropy_bits",
            ScoreKind::LogLikNats => "loglik_nats",
            ScoreKind::Modularity => "modularity",
        }
    }

    /// `"2"`, `"e"`, or `None` for unitless quality functions.
    pub fn log_base(self) -> Option<&'static str> {
        match self {
            ScoreKind::EntropyBits => Some("2"),
            ScoreKind::LogLikNats => Some("e"),
            ScoreKind::Modularity => None,
        }
    }
}

/// Models accepted by the significance test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    /// Bernoulli SBM entropy, `O(K²)` form.
    Sbm,
    /// Bernoulli SBM entropy summed over node pairs.
    SbmExact,
    /// First-order sparse approximation of the Bernoulli SBM entropy.
    SbmSparse,
    PoissonSbm,
    PoissonDcsbm,
    MultinomialDcsbm,
    Modularity,
}

impl Model {
    pub const ALL: [Model; 7] = [
        Model::Sbm,
        Model::SbmExact,
        Model::SbmSparse,
        Model::PoissonSbm,
        Model::PoissonDcsbm,
        Model::MultinomialDcsbm,
        Model::Modularity,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Model::Sbm => "sbm",
            Model::SbmExact => "sbm-exact",
            Model::SbmSparse => "sbm-sparse",
            Model::PoissonSbm => "poisson-sbm",
            Model::PoissonDcsbm => "poisson-dcsbm",
            Model::MultinomialDcsbm => "multinomial-dcsbm",
            Model::Modularity => "modularity",
        }
    }

    pub fn kind(self) -> ScoreKind {
        match self {
            Model::Sbm | Model::SbmExact | Model::SbmSparse | Model::MultinomialDcsbm => ScoreKind::EntropyBits,
            Model::PoissonSbm | Model::PoissonDcsbm => ScoreKind::LogLikNats,
            Model::Modularity => ScoreKind::Modularity,
        }
    }

    pub fn orientation(self) -> Orientation {
        self.kind().orientation()
    }

    /// Whether the score is a function of [`BlockStats`] alone.
    pub fn uses_block_stats_only(self) -> bool {
        !matches!(self, Model::SbmExact | Model::MultinomialDcsbm)
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Model::ALL
            .into_iter()
            .find(|m| m.id() == s)
            .ok_or_else(|| Error::UnknownModel(String::from(s)))
    }
}

/// A model score tagged with its unit and orientation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoreValue {
    pub value: f64,
    pub kind: ScoreKind,
    pub model: Model,
}

impl ScoreValue {
    pub fn new(model: Model, value: f64) -> Self {
        ScoreValue {
            value,
            kind: model.kind(),
            model,
        }
    }

    pub fn orientation(&self) -> Orientation {
        self.kind.orientation()
    }

    /// True when `other` is at least as good as `self` under this score's
    /// orientation (near-ties count).
    pub fn is_matched_or_beaten_by(&self, other: f64) -> bool {
        match self.orientation() {
            Orientation::LowerBetter => math::approx_le(other, self.value),
            Orientation::HigherBetter => math::approx_le(-other, -self.value),
        }
    }
}

/// Maximum-likelihood Bernoulli SBM parameters `ω̂_rs = m_rs / (n_r n_s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliParams {
    k: usize,
    omega: Vec<f64>,
}

impl BernoulliParams {
    pub fn fit(stats: &BlockStats) -> Self {
        let k = stats.k();
        let omega = (0..k * k)
            .map(|idx| {
                let (r, s) = (idx / k, idx % k);
                let pairs = stats.size(r) * stats.size(s);
                if pairs == 0 {
                    0.0
                } else {
                    stats.m(r, s) as f64 / pairs as f64
                }
            })
            .collect();
        BernoulliParams { k, omega }
    }

    pub fn omega(&self, r: usize, s: usize) -> f64 {
        self.omega[r * self.k + s]
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// Maximum-likelihood degree-corrected parameters: `ê_rs = m_rs` and per-node
/// propensities `θ̂_i = k_i / κ_{π_i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeCorrectedParams {
    pub e: Vec<u64>,
    pub propensity: Vec<f64>,
}

impl DegreeCorrectedParams {
    pub fn fit(graph: &Graph, partition: &Partition) -> Result<Self> {
        let stats = BlockStats::compute(graph, partition)?;
        let propensity = (0..graph.n_nodes())
            .map(|i| {
                let kappa = stats.kappa(partition.group_of(i));
                if kappa == 0 {
                    0.0
                } else {
                    graph.degree(i) as f64 / kappa as f64
                }
            })
            .collect();
        Ok(DegreeCorrectedParams {
            e: stats.m_matrix().to_vec(),
            propensity,
        })
    }
}

fn block_pairs(stats: &BlockStats) -> impl Iterator<Item = (usize, usize, f64, f64)> + '_ {
    let k = stats.k();
    (0..k * k).filter_map(move |idx| {
        let (r, s) = (idx / k, idx % k);
        let pairs = (stats.size(r) * stats.size(s)) as f64;
        (pairs > 0.0).then(|| (r, s, stats.m(r, s) as f64, pairs))
    })
}

/// Bernoulli SBM entropy in bits via the `O(K²)` block form
/// `−½ Σ_rs [m_rs log ω̂_rs + (n_r n_s − m_rs) log(1 − ω̂_rs)]`.
///
/// Diagonal blocks use `n_r²` possible pairs, self-pairs included.
pub fn bernoulli_entropy_rapid(stats: &BlockStats) -> Result<f64> {
    let mut acc = 0.0;
    for (r, s, m, pairs) in block_pairs(stats) {
        let omega = m / pairs;
        if omega > 1.0 {
            return Err(Error::DegenerateBlock { r, s, omega });
        }
        acc += xlog2y(m, omega) + xlog2y(pairs - m, 1.0 - omega);
    }
    Ok(-0.5 * acc)
}

fn xlog2y(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * math::log2(y)
    }
}

/// Sparse first-order entropy `|E| − ½ Σ_rs m_rs ln(m_rs / n_r n_s)`,
/// converted from nats to bits.
pub fn bernoulli_entropy_sparse(stats: &BlockStats) -> Result<f64> {
    let mut acc = 0.0;
    for (r, s, m, pairs) in block_pairs(stats) {
        if m > pairs {
            return Err(Error::DegenerateBlock { r, s, omega: m / pairs });
        }
        acc += math::xlny(m, m / pairs);
    }
    Ok((stats.total_edges() as f64 - 0.5 * acc) / LN_2)
}

/// Bernoulli SBM entropy in bits summed node pair by node pair:
/// `Σ_{i<j} h(ω̂_{π_i π_j}) + Σ_i h(ω̂_{π_i π_i})`.
///
/// This is the `O(N²)` reference form. It exceeds the rapid form by
/// `½ Σ_r n_r h(ω̂_rr)`.
pub fn bernoulli_entropy_exact(graph: &Graph, partition: &Partition) -> Result<f64> {
    let stats = BlockStats::compute(graph, partition)?;
    let params = BernoulliParams::fit(&stats);
    let n = graph.n_nodes();
    let a = partition.assignment();
    let mut nats = 0.0;
    for i in 0..n {
        for j in i..n {
            nats += math::bernoulli_entropy_nats(params.omega(a[i], a[j]));
        }
    }
    Ok(nats / LN_2)
}

/// Bernoulli SBM log-likelihood in nats from block statistics; equals
/// `−ln 2 ×` [`bernoulli_entropy_rapid`]. Used as the neoSBM base objective.
pub fn sbm_loglik(stats: &BlockStats) -> f64 {
    let mut acc = 0.0;
    for (_, _, m, pairs) in block_pairs(stats) {
        let omega = m / pairs;
        acc += math::xlny(m, omega) + math::xlny(pairs - m, 1.0 - omega);
    }
    0.5 * acc
}

/// Bernoulli log-likelihood in nats evaluated term by term over all ordered
/// node pairs (self-pairs included, `A_ii = 0`) at the fitted `ω̂`.
pub fn bernoulli_loglik_pairwise(graph: &Graph, partition: &Partition) -> Result<f64> {
    let stats = BlockStats::compute(graph, partition)?;
    let params = BernoulliParams::fit(&stats);
    let n = graph.n_nodes();
    let a = partition.assignment();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            let w = params.omega(a[i], a[j]);
            acc += if i != j && graph.has_edge(i, j) {
                math::ln(w)
            } else {
                math::xlny(1.0, 1.0 - w)
            };
        }
    }
    Ok(0.5 * acc)
}

/// Poisson SBM log-likelihood `½ Σ_rs m_rs ln(m_rs / n_r n_s)` in nats.
/// The dropped term is `−|E|`.
pub fn poisson_sbm_loglik(stats: &BlockStats) -> f64 {
    0.5 * block_pairs(stats)
        .map(|(_, _, m, pairs)| math::xlny(m, m / pairs))
        .sum::<f64>()
}

/// Poisson DCSBM log-likelihood `½ Σ_rs m_rs ln(m_rs / κ_r κ_s)` in nats.
/// Dropped terms: `Σ_i k_i ln k_i − |E|`, fixed by the degree sequence.
pub fn poisson_dcsbm_loglik(stats: &BlockStats) -> f64 {
    let k = stats.k();
    let mut acc = 0.0;
    for r in 0..k {
        for s in 0..k {
            let m = stats.m(r, s) as f64;
            if m > 0.0 {
                let denom = stats.kappa(r) as f64 * stats.kappa(s) as f64;
                acc += m * math::ln(m / denom);
            }
        }
    }
    0.5 * acc
}

/// Modularity `Σ_r [m_rr / 2|E| − (κ_r / 2|E|)²]`.
pub fn modularity(stats: &BlockStats) -> Result<f64> {
    if stats.total_edges() == 0 {
        return Err(Error::EmptyGraph("modularity"));
    }
    let two_m = 2.0 * stats.total_edges() as f64;
    Ok((0..stats.k())
        .map(|r| {
            let a = stats.kappa(r) as f64 / two_m;
            stats.m(r, r) as f64 / two_m - a * a
        })
        .sum())
}

/// Asymptotic entropy (bits) of a multinomial with `draws` trials over the
/// bins with non-zero probability in `probs`:
/// `½ ln[(2π m e)^{b−1} Π p] + (3b − 2 − Σ 1/p) / 12m`, evaluated in nats.
pub fn multinomial_entropy_approx(draws: u64, probs: &[f64]) -> f64 {
    let m = draws as f64;
    let mut b = 0usize;
    let mut log_prod = 0.0;
    let mut inv_sum = 0.0;
    for &p in probs.iter().filter(|&&p| p > 0.0) {
        b += 1;
        log_prod += math::ln(p);
        inv_sum += 1.0 / p;
    }
    if b == 0 {
        return 0.0;
    }
    let b_f = b as f64;
    let two_pi_me = 2.0 * core::f64::consts::PI * m * core::f64::consts::E;
    let nats = 0.5 * ((b_f - 1.0) * math::ln(two_pi_me) + log_prod) + (3.0 * b_f - 2.0 - inv_sum) / (12.0 * m);
    nats / LN_2
}

/// Bin probabilities of the multinomial DCSBM over unordered node pairs.
///
/// The ordered-pair weights `p_ij = k_i k_j m_rs / (2|E| κ_r κ_s)` sum to 1.
/// A simple graph can never occupy a self-pair, so each unordered pair gets
/// `2 p_ij`, renormalized by `1 − Σ_i p_ii`. Zero-probability pairs are
/// omitted.
pub fn multinomial_dcsbm_bins(graph: &Graph, partition: &Partition) -> Result<Vec<f64>> {
    let stats = BlockStats::compute(graph, partition)?;
    let two_m = 2.0 * stats.total_edges() as f64;
    let a = partition.assignment();
    let weight = |i: usize, j: usize| -> f64 {
        let (r, s) = (a[i], a[j]);
        let m = stats.m(r, s) as f64;
        if m == 0.0 {
            return 0.0;
        }
        let (ki, kj) = (graph.degree(i) as f64, graph.degree(j) as f64);
        ki * kj * m / (two_m * stats.kappa(r) as f64 * stats.kappa(s) as f64)
    };
    let n = graph.n_nodes();
    let self_mass: f64 = (0..n).map(|i| weight(i, i)).sum();
    let norm = 1.0 - self_mass;
    let mut bins = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let p = 2.0 * weight(i, j);
            if p > 0.0 {
                bins.push(p / norm);
            }
        }
    }
    Ok(bins)
}

/// Multinomial DCSBM entropy in bits: [`multinomial_entropy_approx`] with
/// `|E|` draws over [`multinomial_dcsbm_bins`].
pub fn multinomial_dcsbm_entropy(graph: &Graph, partition: &Partition) -> Result<f64> {
    if graph.n_edges() == 0 {
        return Err(Error::EmptyGraph("multinomial DCSBM entropy"));
    }
    let bins = multinomial_dcsbm_bins(graph, partition)?;
    Ok(multinomial_entropy_approx(graph.n_edges() as u64, &bins))
}

/// Scores `partition` on `graph` under `model`.
pub fn score(model: Model, graph: &Graph, partition: &Partition) -> Result<ScoreValue> {
    let value = match model {
        Model::SbmExact => bernoulli_entropy_exact(graph, partition)?,
        Model::MultinomialDcsbm => multinomial_dcsbm_entropy(graph, partition)?,
        _ => return score_stats(model, &BlockStats::compute(graph, partition)?),
    };
    Ok(ScoreValue::new(model, value))
}

/// Scores from block statistics alone. Fails with
/// [`Error::InvalidParameter`] for models that need the node-level graph.
pub fn score_stats(model: Model, stats: &BlockStats) -> Result<ScoreValue> {
    let value = match model {
        Model::Sbm => bernoulli_entropy_rapid(stats)?,
        Model::SbmSparse => bernoulli_entropy_sparse(stats)?,
        Model::PoissonSbm => poisson_sbm_loglik(stats),
        Model::PoissonDcsbm => poisson_dcsbm_loglik(stats),
        Model::Modularity => modularity(stats)?,
        Model::SbmExact | Model::MultinomialDcsbm => {
            return Err(Error::invalid("model", "needs the graph, not only block statistics"))
        }
    };
    Ok(ScoreValue::new(model, value))
}

/// Which Bernoulli entropy form to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BernoulliVariant {
    Exact,
    Rapid,
    Sparse,
}

/// Bernoulli SBM entropy in any of its three forms. `Exact` needs the graph
/// and partition; the others read only `stats`.
pub fn bernoulli_entropy(
    stats: &BlockStats,
    variant: BernoulliVariant,
    nodes: Option<(&Graph, &Partition)>,
) -> Result<ScoreValue> {
    match variant {
        BernoulliVariant::Rapid => Ok(ScoreValue::new(Model::Sbm, bernoulli_entropy_rapid(stats)?)),
        BernoulliVariant::Sparse => Ok(ScoreValue::new(Model::SbmSparse, bernoulli_entropy_sparse(stats)?)),
        BernoulliVariant::Exact => {
            let (graph, partition) =
                nodes.ok_or_else(|| Error::invalid("variant", "exact entropy needs graph and partition"))?;
            Ok(ScoreValue::new(
                Model::SbmExact,
                bernoulli_entropy_exact(graph, partition)?,
            ))
        }
    }
}
