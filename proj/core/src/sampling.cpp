#include "specprop/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specprop {
namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double hypot2(double a, double b) {
    const double absa = std::fabs(a);
    const double absb = std::fabs(b);
    if (absa > absb) {
        const double t = absb / absa;
        return absa * std::sqrt(1.0 + t * t);
    }
    if (absb == 0.0) return 0.0;
    const double t = absa / absb;
    return absb * std::sqrt(1.0 + t * t);
}

/// Implicit-shift QL on a symmetric tridiagonal matrix. Eigenvalues land in
/// `d` (unsorted); if `first_row` is non-null it must start as e1 and on exit
/// holds the first component of each (normalized) eigenvector, tracked under
/// the same plane rotations. Returns false if the sweep budget is exhausted.
bool ql_implicit(std::vector<double>& d, std::vector<double>& e, std::vector<double>* first_row,
                 long max_total_iters) {
    const std::size_t n = d.size();
    if (n == 0) return true;
    e.push_back(0.0);  // e[n-1] sentinel slot; e holds subdiagonals e[0..n-2]
    long iters = 0;
    for (std::size_t l = 0; l < n; ++l) {
        for (;;) {
            std::size_t m = l;
            for (; m + 1 < n; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= 1e-300 || std::fabs(e[m]) <= 2.3e-16 * dd) break;
            }
            if (m == l) break;
            if (++iters > max_total_iters) return false;
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = hypot2(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::fabs(r) : -std::fabs(r)));
            double s = 1.0;
            double c = 1.0;
            double p = 0.0;
            bool deflated_early = false;
            for (std::size_t i = m; i-- > l;) {
                double f = s * e[i];
                const double b = c * e[i];
                r = hypot2(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated_early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if (first_row != nullptr) {
                    f = (*first_row)[i + 1];
                    (*first_row)[i + 1] = s * (*first_row)[i] + c * f;
                    (*first_row)[i] = c * (*first_row)[i] - s * f;
                }
            }
            if (deflated_early) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    return true;
}

/// Number of eigenvalues strictly less than x (Sturm sequence count).
std::size_t sturm_count(std::span<const double> d, std::span<const double> e, double x) {
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double off2 = (i == 0) ? 0.0 : e[i - 1] * e[i - 1];
        q = d[i] - x - (q == 0.0 ? std::fabs(e[i - 1]) / 2.3e-16 : off2 / q);
        if (q < 0.0) ++count;
    }
    return count;
}

std::vector<double> bisection_eigenvalues(std::span<const double> d, std::span<const double> e) {
    const std::size_t n = d.size();
    double lo = d[0], hi = d[0];
    for (std::size_t i = 0; i < n; ++i) {
        const double radius =
            (i > 0 ? std::fabs(e[i - 1]) : 0.0) + (i + 1 < n ? std::fabs(e[i]) : 0.0);
        lo = std::min(lo, d[i] - radius);
        hi = std::max(hi, d[i] + radius);
    }
    const double span = std::max(hi - lo, 1e-300);
    std::vector<double> values(n);
    for (std::size_t k = 0; k < n; ++k) {
        double a = lo, b = hi;
        while (b - a > 1e-15 * span) {
            const double mid = 0.5 * (a + b);
            if (sturm_count(d, e, mid) > k)
                b = mid;
            else
                a = mid;
        }
        values[k] = 0.5 * (a + b);
    }
    return values;
}

void require_count(std::size_t r) {
    if (r == 0) throw std::invalid_argument("sample count r must be >= 1");
}

SampleSet mapped_from_unit(const QuadratureRule& rule, const Interval& interval,
                           SampleScheme scheme) {
    SampleSet set;
    set.interval = interval;
    set.scheme = scheme;
    set.points.reserve(rule.nodes.size());
    for (double x : rule.nodes) set.points.push_back(interval.from_unit(x));
    std::sort(set.points.begin(), set.points.end());
    return set;
}

}  // namespace

std::string to_string(SampleScheme scheme) {
    switch (scheme) {
        case SampleScheme::Equispaced: return "equispaced";
        case SampleScheme::Chebyshev: return "chebyshev";
        case SampleScheme::Legendre: return "legendre";
        case SampleScheme::Jacobi: return "jacobi";
    }
    return "unknown";
}

SampleScheme sample_scheme_from_string(const std::string& name) {
    if (name == "equispaced") return SampleScheme::Equispaced;
    if (name == "chebyshev") return SampleScheme::Chebyshev;
    if (name == "legendre") return SampleScheme::Legendre;
    if (name == "jacobi") return SampleScheme::Jacobi;
    throw std::invalid_argument("unknown sampling scheme: " + name);
}

SampleSet equispaced_nodes(const Interval& interval, std::size_t r) {
    require_count(r);
    SampleSet set;
    set.interval = interval;
    set.scheme = SampleScheme::Equispaced;
    set.points.resize(r);
    const double step = interval.width() / static_cast<double>(r + 1);
    for (std::size_t k = 1; k <= r; ++k)
        set.points[k - 1] = interval.lower + static_cast<double>(k) * step;
    return set;
}

SampleSet chebyshev_nodes(const Interval& interval, std::size_t r) {
    require_count(r);
    SampleSet set;
    set.interval = interval;
    set.scheme = SampleScheme::Chebyshev;
    set.points.resize(r);
    for (std::size_t k = 1; k <= r; ++k) {
        const double angle = (2.0 * static_cast<double>(k) - 1.0) * kPi /
                             (2.0 * static_cast<double>(r));
        // k ascending gives descending nodes; store reversed so the set is ascending.
        set.points[r - k] = interval.from_unit(std::cos(angle));
    }
    std::sort(set.points.begin(), set.points.end());
    return set;
}

std::vector<double> tridiag_eigenvalues(std::span<const double> diagonal,
                                        std::span<const double> offdiagonal) {
    if (diagonal.empty()) throw std::invalid_argument("tridiag_eigenvalues: empty diagonal");
    if (offdiagonal.size() + 1 != diagonal.size())
        throw std::invalid_argument("tridiag_eigenvalues: offdiagonal length must be n-1");
    std::vector<double> d(diagonal.begin(), diagonal.end());
    std::vector<double> e(offdiagonal.begin(), offdiagonal.end());
    const long budget = 50 * static_cast<long>(d.size());
    if (!ql_implicit(d, e, nullptr, budget))
        d = bisection_eigenvalues(diagonal, offdiagonal);
    std::sort(d.begin(), d.end());
    return d;
}

QuadratureRule golub_welsch(std::span<const double> diagonal, std::span<const double> offdiagonal,
                            double mass) {
    if (diagonal.empty()) throw std::invalid_argument("golub_welsch: empty diagonal");
    if (offdiagonal.size() + 1 != diagonal.size())
        throw std::invalid_argument("golub_welsch: offdiagonal length must be n-1");
    std::vector<double> d(diagonal.begin(), diagonal.end());
    std::vector<double> e(offdiagonal.begin(), offdiagonal.end());
    std::vector<double> first_row(d.size(), 0.0);
    first_row[0] = 1.0;
    if (!ql_implicit(d, e, &first_row, 50 * static_cast<long>(d.size())))
        throw std::runtime_error("golub_welsch: QL iteration failed to converge");
    std::vector<std::size_t> order(d.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    QuadratureRule rule;
    rule.nodes.resize(d.size());
    rule.weights.resize(d.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        rule.nodes[i] = d[order[i]];
        rule.weights[i] = mass * first_row[order[i]] * first_row[order[i]];
    }
    return rule;
}

QuadratureRule gauss_legendre_rule(std::size_t r) {
    require_count(r);
    std::vector<double> diag(r, 0.0);
    std::vector<double> off(r > 0 ? r - 1 : 0);
    for (std::size_t k = 1; k < r; ++k) {
        const double kk = static_cast<double>(k);
        off[k - 1] = kk / std::sqrt(4.0 * kk * kk - 1.0);
    }
    return golub_welsch(diag, off, 2.0);
}

QuadratureRule gauss_jacobi_rule(std::size_t r) {
    require_count(r);
    // Monic recurrence for the weight (1-x)^0 (1+x)^1:
    //   alpha_n = 1 / ((2n+1)(2n+3)),  beta_n = n(n+1) / (2n+1)^2.
    std::vector<double> diag(r);
    std::vector<double> off(r > 0 ? r - 1 : 0);
    for (std::size_t n = 0; n < r; ++n) {
        const double nn = static_cast<double>(n);
        diag[n] = 1.0 / ((2.0 * nn + 1.0) * (2.0 * nn + 3.0));
    }
    for (std::size_t n = 1; n < r; ++n) {
        const double nn = static_cast<double>(n);
        off[n - 1] = std::sqrt(nn * (nn + 1.0)) / (2.0 * nn + 1.0);
    }
    return golub_welsch(diag, off, 2.0);
}

SampleSet gauss_legendre_nodes(const Interval& interval, std::size_t r) {
    require_count(r);
    return mapped_from_unit(gauss_legendre_rule(r), interval, SampleScheme::Legendre);
}

SampleSet gauss_jacobi_nodes(const Interval& interval, std::size_t r) {
    require_count(r);
    return mapped_from_unit(gauss_jacobi_rule(r), interval, SampleScheme::Jacobi);
}

SampleSet sample_nodes(SampleScheme scheme, const Interval& interval, std::size_t r) {
    switch (scheme) {
        case SampleScheme::Equispaced: return equispaced_nodes(interval, r);
        case SampleScheme::Chebyshev: return chebyshev_nodes(interval, r);
        case SampleScheme::Legendre: return gauss_legendre_nodes(interval, r);
        case SampleScheme::Jacobi: return gauss_jacobi_nodes(interval, r);
    }
    throw std::invalid_argument("sample_nodes: unknown scheme");
}

}  // namespace specprop
