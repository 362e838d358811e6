#include "specprop/gcn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specprop {
namespace {

void apply_inverted_dropout(DenseMatrix& m, double p, Rng& rng, std::vector<char>& keep,
                            double& scale) {
    keep.assign(m.values.size(), 1);
    scale = 1.0 / (1.0 - p);
    for (std::size_t i = 0; i < m.values.size(); ++i) {
        if (rng.next_double() < p) {
            keep[i] = 0;
            m.values[i] = 0.0;
        } else {
            m.values[i] *= scale;
        }
    }
}

DenseMatrix masked_softmax_grad(const DenseMatrix& z, const std::vector<std::uint32_t>& labels,
                                const std::vector<std::uint32_t>& mask) {
    DenseMatrix grad(z.rows, z.cols);
    const DenseMatrix probs = softmax_rows(z);
    const double inv = 1.0 / static_cast<double>(mask.size());
    for (std::uint32_t i : mask) {
        for (std::size_t c = 0; c < z.cols; ++c) grad(i, c) = probs(i, c) * inv;
        grad(i, labels[i]) -= inv;
    }
    return grad;
}

struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
};

void adam_step(std::vector<double>& param, const std::vector<double>& grad, AdamState& state,
               double lr, long t) {
    constexpr double beta1 = 0.9;
    constexpr double beta2 = 0.999;
    constexpr double eps = 1e-8;
    if (state.m.empty()) {
        state.m.assign(param.size(), 0.0);
        state.v.assign(param.size(), 0.0);
    }
    const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(t));
    const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(t));
    for (std::size_t i = 0; i < param.size(); ++i) {
        state.m[i] = beta1 * state.m[i] + (1.0 - beta1) * grad[i];
        state.v[i] = beta2 * state.v[i] + (1.0 - beta2) * grad[i] * grad[i];
        param[i] -= lr * (state.m[i] / bc1) / (std::sqrt(state.v[i] / bc2) + eps);
    }
}

}  // namespace

std::string to_string(PropagationMode mode) {
    return mode == PropagationMode::BasisRecurrence ? "recurrence" : "monomial";
}

PropagationMode propagation_mode_from_string(const std::string& name) {
    if (name == "recurrence") return PropagationMode::BasisRecurrence;
    if (name == "monomial") return PropagationMode::MonomialPowers;
    throw std::invalid_argument("unknown propagation mode: " + name);
}

PropagationPlan make_plan(PropagationOperator op, PropagationMode mode,
                          PolynomialApproximant approximant, const FilterSpec* filter) {
    if (mode == PropagationMode::BasisRecurrence && !approximant.basis.has_value())
        throw std::invalid_argument("make_plan: BasisRecurrence requires an Arnoldi basis");
    if (mode == PropagationMode::MonomialPowers && !approximant.monomial_coefficients.has_value())
        throw std::invalid_argument("make_plan: MonomialPowers requires monomial coefficients");
    if (filter != nullptr) {
        const bool wants_adjacency = filter->is_adjacency_domain();
        const bool is_adjacency = op.kind == OperatorKind::NormalizedAdjacency;
        if (wants_adjacency != is_adjacency)
            throw std::invalid_argument("make_plan: filter domain does not match operator kind");
    }
    PropagationPlan plan;
    plan.op = std::move(op);
    plan.mode = mode;
    plan.depth = mode == PropagationMode::BasisRecurrence
                     ? approximant.basis->effective_degree
                     : approximant.monomial_coefficients->size() - 1;
    plan.approximant = std::move(approximant);
    return plan;
}

std::vector<double> initial_gamma(const PropagationPlan& plan) {
    if (plan.mode == PropagationMode::BasisRecurrence) return plan.approximant.basis_coefficients;
    return plan.approximant.monomial_coefficients.value();
}

Split make_split(std::size_t n, const SplitSpec& spec) {
    if (spec.train_fraction <= 0.0 || spec.val_fraction <= 0.0 || spec.test_fraction <= 0.0)
        throw std::invalid_argument("make_split: fractions must be positive");
    const double sum = spec.train_fraction + spec.val_fraction + spec.test_fraction;
    if (std::fabs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("make_split: fractions must sum to 1");

    std::vector<std::uint32_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
    Rng rng(spec.seed);
    rng.shuffle(order);

    const auto n_train = static_cast<std::size_t>(
        std::llround(spec.train_fraction * static_cast<double>(n)));
    const auto n_val = static_cast<std::size_t>(
        std::llround(spec.val_fraction * static_cast<double>(n)));
    if (n_train == 0 || n_val == 0 || n_train + n_val >= n)
        throw std::invalid_argument("make_split: a split set is empty after rounding");

    Split split;
    split.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    split.val.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train),
                     order.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
    split.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), order.end());
    return split;
}

DenseMatrix mlp_forward(const ModelParams& params, const DenseMatrix& x, double dropout,
                        Rng* rng, ForwardState* state) {
    if (x.cols != params.w1.rows) throw std::invalid_argument("mlp_forward: feature dim mismatch");
    DenseMatrix hidden_pre = matmul(x, params.w1);
    for (std::size_t i = 0; i < hidden_pre.rows; ++i)
        for (std::size_t j = 0; j < hidden_pre.cols; ++j) hidden_pre(i, j) += params.b1[j];

    DenseMatrix hidden = hidden_pre;
    for (double& v : hidden.values) v = v > 0.0 ? v : 0.0;

    std::vector<char> keep;
    double keep_scale = 1.0;
    if (rng != nullptr && dropout > 0.0) apply_inverted_dropout(hidden, dropout, *rng, keep, keep_scale);

    DenseMatrix h0 = matmul(hidden, params.w2);
    for (std::size_t i = 0; i < h0.rows; ++i)
        for (std::size_t j = 0; j < h0.cols; ++j) h0(i, j) += params.b2[j];

    if (state != nullptr) {
        state->input = &x;
        state->hidden_pre = std::move(hidden_pre);
        state->hidden = std::move(hidden);
        state->hidden_keep = std::move(keep);
        state->hidden_keep_scale = keep_scale;
        state->h0 = h0;
    }
    return h0;
}

DenseMatrix propagate(const PropagationPlan& plan, const DenseMatrix& h0,
                      const std::vector<double>& gamma, ForwardState* state) {
    if (gamma.size() != plan.depth + 1)
        throw std::invalid_argument("propagate: gamma length must be K+1");
    std::vector<DenseMatrix> chain;
    chain.reserve(plan.depth + 1);
    chain.push_back(h0);

    if (plan.mode == PropagationMode::MonomialPowers) {
        for (std::size_t k = 1; k <= plan.depth; ++k) chain.push_back(spmm(plan.op, chain[k - 1]));
    } else {
        const DenseMatrix& h = plan.approximant.basis->h;
        for (std::size_t m = 1; m <= plan.depth; ++m) {
            DenseMatrix w = spmm(plan.op, chain[m - 1]);
            for (std::size_t l = 0; l < m; ++l) add_inplace(w, chain[l], -h(l, m - 1));
            scale_inplace(w, 1.0 / h(m, m - 1));
            chain.push_back(std::move(w));
        }
    }

    DenseMatrix z(h0.rows, h0.cols);
    for (std::size_t k = 0; k <= plan.depth; ++k) add_inplace(z, chain[k], gamma[k]);
    if (state != nullptr) state->chain = std::move(chain);
    return z;
}

DenseMatrix model_forward(const ModelParams& params, const PropagationPlan& plan,
                          const DenseMatrix& x, const TrainConfig& config, Rng* dropout_rng,
                          ForwardState* state) {
    ForwardState local;
    ForwardState& fs = state != nullptr ? *state : local;
    DenseMatrix h0 = mlp_forward(params, x, config.dropout, dropout_rng, &fs);

    const double prop_p = config.propagation_dropout.value_or(0.0);
    fs.h0_keep.clear();
    fs.h0_keep_scale = 1.0;
    DenseMatrix h0_dropped = h0;
    if (dropout_rng != nullptr && prop_p > 0.0)
        apply_inverted_dropout(h0_dropped, prop_p, *dropout_rng, fs.h0_keep, fs.h0_keep_scale);
    fs.h0_dropped = h0_dropped;

    DenseMatrix z = propagate(plan, h0_dropped, params.gamma, &fs);
    fs.z = z;
    return z;
}

DenseMatrix softmax_rows(const DenseMatrix& z) {
    DenseMatrix probs(z.rows, z.cols);
    for (std::size_t i = 0; i < z.rows; ++i) {
        double row_max = z(i, 0);
        for (std::size_t c = 1; c < z.cols; ++c) row_max = std::max(row_max, z(i, c));
        double sum = 0.0;
        for (std::size_t c = 0; c < z.cols; ++c) {
            probs(i, c) = std::exp(z(i, c) - row_max);
            sum += probs(i, c);
        }
        for (std::size_t c = 0; c < z.cols; ++c) probs(i, c) /= sum;
    }
    return probs;
}

double loss_value(const DenseMatrix& z, const std::vector<std::uint32_t>& labels,
                  const std::vector<std::uint32_t>& mask, const ModelParams& params,
                  double weight_decay) {
    if (mask.empty()) throw std::invalid_argument("loss_value: empty mask");
    double total = 0.0;
    for (std::uint32_t i : mask) {
        double row_max = z(i, 0);
        for (std::size_t c = 1; c < z.cols; ++c) row_max = std::max(row_max, z(i, c));
        double sum = 0.0;
        for (std::size_t c = 0; c < z.cols; ++c) sum += std::exp(z(i, c) - row_max);
        total += std::log(sum) - (z(i, labels[i]) - row_max);
    }
    total /= static_cast<double>(mask.size());
    double reg = 0.0;
    for (double v : params.w1.values) reg += v * v;
    for (double v : params.w2.values) reg += v * v;
    return total + 0.5 * weight_decay * reg;
}

Gradients backward(const ForwardState& state, const ModelParams& params,
                   const PropagationPlan& plan, const std::vector<std::uint32_t>& labels,
                   const std::vector<std::uint32_t>& mask, double weight_decay,
                   bool learn_gamma) {
    if (state.chain.empty() || state.input == nullptr)
        throw std::invalid_argument("backward: missing forward state");
    const std::size_t depth = plan.depth;
    const DenseMatrix dz = masked_softmax_grad(state.z, labels, mask);

    Gradients grads;
    grads.gamma.assign(depth + 1, 0.0);
    if (learn_gamma)
        for (std::size_t k = 0; k <= depth; ++k) grads.gamma[k] = dot(dz, state.chain[k]);

    // Gradient with respect to the propagation input H0 (after prop dropout).
    DenseMatrix dh0(dz.rows, dz.cols);
    if (plan.mode == PropagationMode::MonomialPowers) {
        DenseMatrix g = dz;
        scale_inplace(g, params.gamma[depth]);
        for (std::size_t k = depth; k-- > 0;) {
            g = spmm(plan.op, g);  // operator is symmetric
            add_inplace(g, dz, params.gamma[k]);
        }
        dh0 = std::move(g);
    } else {
        const DenseMatrix& h = plan.approximant.basis->h;
        std::vector<DenseMatrix> g(depth + 1, DenseMatrix(dz.rows, dz.cols));
        for (std::size_t k = 0; k <= depth; ++k) {
            g[k] = dz;
            scale_inplace(g[k], params.gamma[k]);
        }
        for (std::size_t m = depth; m >= 1; --m) {
            DenseMatrix gm = g[m];
            scale_inplace(gm, 1.0 / h(m, m - 1));
            DenseMatrix propagated = spmm(plan.op, gm);
            add_inplace(g[m - 1], propagated, 1.0);
            for (std::size_t l = 0; l < m; ++l) add_inplace(g[l], gm, -h(l, m - 1));
        }
        dh0 = std::move(g[0]);
    }

    // Back through propagation dropout.
    if (!state.h0_keep.empty()) {
        for (std::size_t i = 0; i < dh0.values.size(); ++i)
            dh0.values[i] = state.h0_keep[i] ? dh0.values[i] * state.h0_keep_scale : 0.0;
    }

    // MLP output layer.
    grads.w2 = matmul_tn(state.hidden, dh0);
    grads.b2.assign(params.b2.size(), 0.0);
    for (std::size_t i = 0; i < dh0.rows; ++i)
        for (std::size_t c = 0; c < dh0.cols; ++c) grads.b2[c] += dh0(i, c);

    DenseMatrix dhidden = matmul_nt(dh0, params.w2);
    if (!state.hidden_keep.empty()) {
        for (std::size_t i = 0; i < dhidden.values.size(); ++i)
            dhidden.values[i] =
                state.hidden_keep[i] ? dhidden.values[i] * state.hidden_keep_scale : 0.0;
    }
    for (std::size_t i = 0; i < dhidden.values.size(); ++i)
        if (state.hidden_pre.values[i] <= 0.0) dhidden.values[i] = 0.0;

    grads.w1 = matmul_tn(*state.input, dhidden);
    grads.b1.assign(params.b1.size(), 0.0);
    for (std::size_t i = 0; i < dhidden.rows; ++i)
        for (std::size_t j = 0; j < dhidden.cols; ++j) grads.b1[j] += dhidden(i, j);

    add_inplace(grads.w1, params.w1, weight_decay);
    add_inplace(grads.w2, params.w2, weight_decay);
    return grads;
}

Metrics predict_and_score(const ModelParams& params, const PropagationPlan& plan,
                          const DenseMatrix& features, const std::vector<std::uint32_t>& labels,
                          const std::vector<std::uint32_t>& mask) {
    if (mask.empty()) throw std::invalid_argument("predict_and_score: empty mask");
    TrainConfig eval_config;
    eval_config.dropout = 0.0;
    eval_config.propagation_dropout = 0.0;
    DenseMatrix z = model_forward(params, plan, features, eval_config, nullptr);
    const DenseMatrix probs = softmax_rows(z);

    std::size_t correct = 0;
    for (std::uint32_t i : mask) {
        std::size_t arg = 0;
        for (std::size_t c = 1; c < probs.cols; ++c)
            if (probs(i, c) > probs(i, arg)) arg = c;
        if (arg == labels[i]) ++correct;
    }
    Metrics metrics;
    metrics.accuracy = static_cast<double>(correct) / static_cast<double>(mask.size());

    if (probs.cols == 2) {
        std::vector<double> scores;
        std::vector<std::uint32_t> mask_labels;
        scores.reserve(mask.size());
        mask_labels.reserve(mask.size());
        for (std::uint32_t i : mask) {
            scores.push_back(probs(i, 1));
            mask_labels.push_back(labels[i]);
        }
        metrics.auroc = auroc_binary(scores, mask_labels);
    }
    return metrics;
}

std::optional<double> auroc_binary(std::span<const double> scores,
                                   std::span<const std::uint32_t> labels) {
    if (scores.size() != labels.size())
        throw std::invalid_argument("auroc_binary: size mismatch");
    std::vector<std::size_t> order(scores.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    double rank_sum_pos = 0.0;
    std::size_t n_pos = 0;
    std::size_t idx = 0;
    while (idx < order.size()) {
        std::size_t end = idx;
        while (end < order.size() && scores[order[end]] == scores[order[idx]]) ++end;
        const double avg_rank = 0.5 * static_cast<double>(idx + 1 + end);  // 1-based average
        for (std::size_t j = idx; j < end; ++j) {
            if (labels[order[j]] == 1) {
                rank_sum_pos += avg_rank;
                ++n_pos;
            }
        }
        idx = end;
    }
    const std::size_t n_neg = scores.size() - n_pos;
    if (n_pos == 0 || n_neg == 0) return std::nullopt;
    const double u =
        rank_sum_pos - static_cast<double>(n_pos) * (static_cast<double>(n_pos) + 1.0) / 2.0;
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

std::size_t class_count(const std::vector<std::uint32_t>& labels) {
    std::uint32_t max_label = 0;
    for (std::uint32_t l : labels) max_label = std::max(max_label, l);
    return static_cast<std::size_t>(max_label) + 1;
}

TrainResult train(const DenseMatrix& features, const std::vector<std::uint32_t>& labels,
                  const PropagationPlan& plan, const TrainConfig& config, const Split& split) {
    if (split.train.empty() || split.val.empty())
        throw std::invalid_argument("train: degenerate split (empty train or val set)");
    if (config.epochs == 0) throw std::invalid_argument("train: epochs must be >= 1");
    if (config.learning_rate < 0.0) throw std::invalid_argument("train: negative learning rate");

    const std::size_t m = features.cols;
    const std::size_t h = config.hidden_units;
    const std::size_t c = class_count(labels);

    Rng root(config.seed);
    Rng init_rng = root.stream(10);
    Rng dropout_rng = root.stream(11);

    ModelParams params;
    params.w1 = DenseMatrix(m, h);
    params.b1.assign(h, 0.0);
    params.w2 = DenseMatrix(h, c);
    params.b2.assign(c, 0.0);
    const double limit1 = std::sqrt(6.0 / static_cast<double>(m + h));
    for (double& v : params.w1.values) v = (2.0 * init_rng.next_double() - 1.0) * limit1;
    const double limit2 = std::sqrt(6.0 / static_cast<double>(h + c));
    for (double& v : params.w2.values) v = (2.0 * init_rng.next_double() - 1.0) * limit2;
    params.gamma = initial_gamma(plan);

    AdamState adam_w1, adam_b1, adam_w2, adam_b2, adam_gamma;
    const double prop_lr = config.propagation_learning_rate.value_or(config.learning_rate);

    TrainResult result;
    ModelParams best_params = params;
    double best_val = -1.0;
    std::size_t best_epoch = 0;
    std::size_t bad_epochs = 0;
    long step = 0;

    for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
        ForwardState state;
        DenseMatrix z = model_forward(params, plan, features, config, &dropout_rng, &state);
        const double train_loss =
            loss_value(z, labels, split.train, params, config.weight_decay);
        Gradients grads = backward(state, params, plan, labels, split.train, config.weight_decay,
                                   config.learn_gamma);
        ++step;
        adam_step(params.w1.values, grads.w1.values, adam_w1, config.learning_rate, step);
        adam_step(params.b1, grads.b1, adam_b1, config.learning_rate, step);
        adam_step(params.w2.values, grads.w2.values, adam_w2, config.learning_rate, step);
        adam_step(params.b2, grads.b2, adam_b2, config.learning_rate, step);
        if (config.learn_gamma) adam_step(params.gamma, grads.gamma, adam_gamma, prop_lr, step);

        const Metrics val = predict_and_score(params, plan, features, labels, split.val);
        result.trace.push_back({epoch, train_loss, val.accuracy});

        if (val.accuracy > best_val) {
            best_val = val.accuracy;
            best_params = params;
            best_epoch = epoch;
            bad_epochs = 0;
        } else {
            ++bad_epochs;
            if (bad_epochs >= config.patience) break;
        }
    }

    result.params = std::move(best_params);
    result.best_epoch = best_epoch;
    result.test = predict_and_score(result.params, plan, features, labels, split.test);
    return result;
}

}  // namespace specprop
