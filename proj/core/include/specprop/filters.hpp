#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specprop/interval.hpp"
#include "specprop/sampling.hpp"

namespace specprop {

/// A named scalar filter g(omega) bound to the interval it may be evaluated on.
/// alpha is present only for filters whose definition uses it (g0 among the
/// built-ins).
struct FilterSpec {
    std::string name;
    std::function<double(double)> evaluate;
    Interval domain;
    std::optional<double> alpha;

    /// Simple filters (domain inside (-1,1)) pair with the normalized
    /// adjacency; complex filters (domain inside (0,2]) with the Laplacian.
    [[nodiscard]] bool is_adjacency_domain() const { return domain.lower < 0.0; }
};

/// The built-in filters:
///   g0 (1-a)/(1-w)   g1 1/(1-w)      g2 w/(1-w)        g3 w^2/(1-w)
///   g4 e^{-10 w^2}   g5 1-e^{-10w^2} g6 e^{-10(w-1)^2} g7 1-e^{-10(w-1)^2}
/// g0-g3 default to the domain [-0.9, 0.9], g4-g7 to [1e-5, 2].
/// alpha must be supplied in (0,1) iff name is "g0".
[[nodiscard]] FilterSpec builtin_filter(const std::string& name,
                                        std::optional<double> alpha = std::nullopt);

[[nodiscard]] const std::vector<std::string>& builtin_filter_names();

/// Pointwise values g(omega_1)..g(omega_r) in input order. Throws with the
/// offending index if any point lies outside the filter's domain.
[[nodiscard]] std::vector<double> eval_filter(const FilterSpec& filter,
                                              std::span<const double> points);

[[nodiscard]] std::vector<double> eval_filter(const FilterSpec& filter, const SampleSet& samples);

}  // namespace specprop
