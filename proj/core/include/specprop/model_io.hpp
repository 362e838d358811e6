#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "specprop/gcn.hpp"

namespace specprop {

/// Everything needed to re-run a trained model on a dataset: weights, gamma,
/// the fit's recurrence table (for BasisRecurrence propagation), and the
/// metadata that reproduces the split and the summary line.
struct TrainedModel {
    ModelParams params;
    PropagationMode mode = PropagationMode::BasisRecurrence;
    OperatorKind op_kind = OperatorKind::NormalizedAdjacency;
    DenseMatrix recurrence;  // (K+2) x (K+1); empty for MonomialPowers
    std::string filter_name;
    std::optional<double> alpha;
    std::string scheme;
    std::size_t samples_r = 0;
    std::size_t requested_degree = 0;
    SplitSpec split;
    std::size_t hidden_units = 64;
};

/// Plain-text serialization: a tagged header (dimensions, K, mode, operator,
/// filter, sampling, split) followed by rows of reals printed with 17
/// significant digits, so doubles round-trip bit-exactly.
void save_model(std::ostream& out, const TrainedModel& model);
[[nodiscard]] TrainedModel load_model(std::istream& in);

/// Propagation plan for running the stored model on a graph.
[[nodiscard]] PropagationPlan make_eval_plan(const TrainedModel& model, const SparseGraph& graph);

}  // namespace specprop
