#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specprop/approx.hpp"
#include "specprop/dense.hpp"
#include "specprop/filters.hpp"
#include "specprop/graph.hpp"
#include "specprop/rng.hpp"

namespace specprop {

/// Two-layer MLP weights plus the K+1 propagation coefficients gamma.
struct ModelParams {
    DenseMatrix w1;          // m x h
    std::vector<double> b1;  // h
    DenseMatrix w2;          // h x c
    std::vector<double> b2;  // c
    std::vector<double> gamma;  // K+1
};

enum class PropagationMode { MonomialPowers, BasisRecurrence };

[[nodiscard]] std::string to_string(PropagationMode mode);
[[nodiscard]] PropagationMode propagation_mode_from_string(const std::string& name);

/// How the predicted class scores are propagated: MonomialPowers applies
/// H^(k) = M H^(k-1) and sums gamma_k H^(k); BasisRecurrence replays the
/// fit's h-table with the operator in place of diag(omega), evaluating the
/// fitted polynomial of the operator exactly.
struct PropagationPlan {
    PropagationOperator op;
    PropagationMode mode = PropagationMode::BasisRecurrence;
    PolynomialApproximant approximant;
    std::size_t depth = 0;  // K: gamma has depth+1 entries
};

/// Validates mode/approximant compatibility and the operator-domain pairing
/// (adjacency-domain filters on NormalizedAdjacency, Laplacian-domain filters
/// on Laplacian). Pass nullptr for the filter to skip the pairing check.
[[nodiscard]] PropagationPlan make_plan(PropagationOperator op, PropagationMode mode,
                                        PolynomialApproximant approximant,
                                        const FilterSpec* filter);

/// Initial gamma for the plan: basis coefficients under BasisRecurrence,
/// monomial coefficients under MonomialPowers.
[[nodiscard]] std::vector<double> initial_gamma(const PropagationPlan& plan);

struct TrainConfig {
    double learning_rate = 0.002;
    double weight_decay = 0.0005;
    double dropout = 0.5;
    std::size_t epochs = 1000;
    std::size_t patience = 100;
    std::uint64_t seed = 1;
    bool learn_gamma = true;
    std::optional<double> propagation_learning_rate;
    std::optional<double> propagation_dropout;
    std::size_t hidden_units = 64;
};

struct SplitSpec {
    double train_fraction = 0.6;
    double val_fraction = 0.2;
    double test_fraction = 0.2;
    std::uint64_t seed = 1;
};

struct Split {
    std::vector<std::uint32_t> train;
    std::vector<std::uint32_t> val;
    std::vector<std::uint32_t> test;
};

/// Seeded uniform permutation partitioned by the fractions (train and val
/// counts rounded to nearest, remainder to test). Throws if any set is empty.
[[nodiscard]] Split make_split(std::size_t n, const SplitSpec& spec);

/// Retained intermediates of one forward pass, consumed by backward().
struct ForwardState {
    const DenseMatrix* input = nullptr;
    DenseMatrix hidden_pre;        // X w1 + b1
    DenseMatrix hidden;            // relu + inverted dropout
    std::vector<char> hidden_keep;
    double hidden_keep_scale = 1.0;
    DenseMatrix h0;                // hidden w2 + b2
    DenseMatrix h0_dropped;        // propagation dropout applied
    std::vector<char> h0_keep;
    double h0_keep_scale = 1.0;
    std::vector<DenseMatrix> chain;  // H^(k) or W^(k), k = 0..K
    DenseMatrix z;
};

/// H0 = relu(X w1 + b1) [dropout] w2 + b2. Dropout is inverted (kept units
/// scaled by 1/(1-p)) and active only when rng is non-null and p > 0.
[[nodiscard]] DenseMatrix mlp_forward(const ModelParams& params, const DenseMatrix& x,
                                      double dropout, Rng* rng, ForwardState* state = nullptr);

/// Z from H0 under the plan's mode; intermediates land in state->chain.
[[nodiscard]] DenseMatrix propagate(const PropagationPlan& plan, const DenseMatrix& h0,
                                    const std::vector<double>& gamma,
                                    ForwardState* state = nullptr);

/// Full forward pass: MLP, optional propagation dropout on H0, propagation.
[[nodiscard]] DenseMatrix model_forward(const ModelParams& params, const PropagationPlan& plan,
                                        const DenseMatrix& x, const TrainConfig& config,
                                        Rng* dropout_rng, ForwardState* state = nullptr);

/// Mean masked softmax cross-entropy plus (weight_decay/2)(|w1|^2 + |w2|^2).
[[nodiscard]] double loss_value(const DenseMatrix& z, const std::vector<std::uint32_t>& labels,
                                const std::vector<std::uint32_t>& mask, const ModelParams& params,
                                double weight_decay);

struct Gradients {
    DenseMatrix w1;
    std::vector<double> b1;
    DenseMatrix w2;
    std::vector<double> b2;
    std::vector<double> gamma;
};

/// Exact reverse-mode gradients through loss -> propagate -> MLP, replaying
/// the forward pass's dropout masks. gamma gradients are zero when
/// learn_gamma is false.
[[nodiscard]] Gradients backward(const ForwardState& state, const ModelParams& params,
                                 const PropagationPlan& plan,
                                 const std::vector<std::uint32_t>& labels,
                                 const std::vector<std::uint32_t>& mask, double weight_decay,
                                 bool learn_gamma);

struct TraceRow {
    std::size_t epoch = 0;
    double train_loss = 0.0;
    double val_accuracy = 0.0;
};

struct Metrics {
    double accuracy = 0.0;
    std::optional<double> auroc;
};

struct TrainResult {
    ModelParams params;
    std::vector<TraceRow> trace;
    Metrics test;
    std::size_t best_epoch = 0;
};

/// Adam (beta1 0.9, beta2 0.999, eps 1e-8); gamma initialized from the plan's
/// approximant and stepped with propagation_learning_rate (defaults to the
/// main rate); early stopping restores the best-validation-accuracy
/// parameters. Deterministic given config.seed.
[[nodiscard]] TrainResult train(const DenseMatrix& features,
                                const std::vector<std::uint32_t>& labels,
                                const PropagationPlan& plan, const TrainConfig& config,
                                const Split& split);

/// Accuracy over the mask; AUROC by the tie-averaged rank-sum on the
/// positive-class probability, only for two-class problems.
[[nodiscard]] Metrics predict_and_score(const ModelParams& params, const PropagationPlan& plan,
                                        const DenseMatrix& features,
                                        const std::vector<std::uint32_t>& labels,
                                        const std::vector<std::uint32_t>& mask);

/// Row-stable softmax of z.
[[nodiscard]] DenseMatrix softmax_rows(const DenseMatrix& z);

/// Rank-sum AUROC with ties counted as half; labels are 0/1. Empty when only
/// one class is present.
[[nodiscard]] std::optional<double> auroc_binary(std::span<const double> scores,
                                                 std::span<const std::uint32_t> labels);

[[nodiscard]] std::size_t class_count(const std::vector<std::uint32_t>& labels);

}  // namespace specprop
