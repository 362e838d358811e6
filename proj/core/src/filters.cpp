#include "specprop/filters.hpp"

#include <cmath>
#include <stdexcept>

namespace specprop {
namespace {

const Interval kSimpleDomain{-0.9, 0.9};   // g0-g3; open interval (-1,1) narrowed
const Interval kComplexDomain{1e-5, 2.0};  // g4-g7; (0,2] narrowed at the left end

}  // namespace

FilterSpec builtin_filter(const std::string& name, std::optional<double> alpha) {
    if (name == "g0") {
        if (!alpha.has_value())
            throw std::invalid_argument("filter g0 requires alpha in (0,1)");
        const double a = *alpha;
        if (!(a > 0.0 && a < 1.0))
            throw std::invalid_argument("filter g0: alpha must lie in (0,1)");
        return {name, [a](double w) { return (1.0 - a) / (1.0 - w); }, kSimpleDomain, a};
    }
    if (alpha.has_value())
        throw std::invalid_argument("filter " + name + " does not take alpha");
    if (name == "g1")
        return {name, [](double w) { return 1.0 / (1.0 - w); }, kSimpleDomain, std::nullopt};
    if (name == "g2")
        return {name, [](double w) { return w / (1.0 - w); }, kSimpleDomain, std::nullopt};
    if (name == "g3")
        return {name, [](double w) { return w * w / (1.0 - w); }, kSimpleDomain, std::nullopt};
    if (name == "g4")
        return {name, [](double w) { return std::exp(-10.0 * w * w); }, kComplexDomain,
                std::nullopt};
    if (name == "g5")
        return {name, [](double w) { return 1.0 - std::exp(-10.0 * w * w); }, kComplexDomain,
                std::nullopt};
    if (name == "g6")
        return {name, [](double w) { return std::exp(-10.0 * (w - 1.0) * (w - 1.0)); },
                kComplexDomain, std::nullopt};
    if (name == "g7")
        return {name, [](double w) { return 1.0 - std::exp(-10.0 * (w - 1.0) * (w - 1.0)); },
                kComplexDomain, std::nullopt};
    throw std::invalid_argument("unknown filter: " + name);
}

const std::vector<std::string>& builtin_filter_names() {
    static const std::vector<std::string> names = {"g0", "g1", "g2", "g3",
                                                   "g4", "g5", "g6", "g7"};
    return names;
}

std::vector<double> eval_filter(const FilterSpec& filter, std::span<const double> points) {
    std::vector<double> values;
    values.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!filter.domain.contains(points[i]))
            throw std::domain_error("eval_filter: point at index " + std::to_string(i) +
                                    " lies outside the domain of " + filter.name);
        values.push_back(filter.evaluate(points[i]));
    }
    return values;
}

std::vector<double> eval_filter(const FilterSpec& filter, const SampleSet& samples) {
    return eval_filter(filter, std::span<const double>(samples.points));
}

}  // namespace specprop
