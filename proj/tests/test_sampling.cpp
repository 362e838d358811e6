#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "specprop/sampling.hpp"

using namespace specprop;

namespace {

// Legendre P3(x) = (5x^3 - 3x)/2; oracle for the r=3 Jacobi-matrix eigenvalues.
double legendre_p3(double x) { return 0.5 * (5.0 * x * x * x - 3.0 * x); }

// Monic orthogonal polynomial for weight (1+x), degree 2, via its recurrence:
// p0 = 1, p1 = x - 1/3, p2 = (x - 1/15) p1 - (2/9) p0.
double jacobi_monic_p2(double x) {
    const double p1 = x - 1.0 / 3.0;
    return (x - 1.0 / 15.0) * p1 - (2.0 / 9.0) * 1.0;
}

}  // namespace

TEST_CASE("equispaced nodes match the closed form") {
    const auto set = equispaced_nodes(Interval(0.0, 2.0), 3);
    REQUIRE(set.points.size() == 3);
    CHECK(set.points[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(set.points[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(set.points[2] == doctest::Approx(1.5).epsilon(1e-15));

    const auto mid = equispaced_nodes(Interval(-1.0, 1.0), 1);
    CHECK(mid.points[0] == doctest::Approx(0.0).epsilon(1e-15));

    const auto nine = equispaced_nodes(Interval(-0.9, 0.9), 9);
    for (std::size_t k = 0; k < 9; ++k)
        CHECK(nine.points[k] ==
              doctest::Approx(-0.72 + 0.18 * static_cast<double>(k)).epsilon(1e-14));
    CHECK(nine.points.front() > -0.9);
    CHECK(nine.points.back() < 0.9);
}

TEST_CASE("chebyshev nodes match the closed form") {
    const auto one = chebyshev_nodes(Interval(-1.0, 1.0), 1);
    CHECK(std::fabs(one.points[0]) < 1e-15);

    const auto two = chebyshev_nodes(Interval(-1.0, 1.0), 2);
    const double root_half = std::sqrt(2.0) / 2.0;
    CHECK(two.points[0] == doctest::Approx(-root_half).epsilon(1e-15));
    CHECK(two.points[1] == doctest::Approx(root_half).epsilon(1e-15));

    const auto shifted = chebyshev_nodes(Interval(0.0, 2.0), 2);
    CHECK(shifted.points[0] == doctest::Approx(1.0 - root_half).epsilon(1e-15));
    CHECK(shifted.points[1] == doctest::Approx(1.0 + root_half).epsilon(1e-15));
}

TEST_CASE("r = 0 is rejected for every scheme") {
    const Interval iv(-1.0, 1.0);
    CHECK_THROWS_AS((void)equispaced_nodes(iv, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)chebyshev_nodes(iv, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)gauss_legendre_nodes(iv, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)gauss_jacobi_nodes(iv, 0), std::invalid_argument);
}

TEST_CASE("tridiagonal eigenvalues: direct cases") {
    SUBCASE("already diagonal") {
        const std::vector<double> d{3.0, 7.0}, e{0.0};
        const auto values = tridiag_eigenvalues(d, e);
        CHECK(values[0] == doctest::Approx(3.0).epsilon(1e-14));
        CHECK(values[1] == doctest::Approx(7.0).epsilon(1e-14));
    }
    SUBCASE("2x2 exchange matrix") {
        const std::vector<double> d{0.0, 0.0}, e{1.0};
        const auto values = tridiag_eigenvalues(d, e);
        CHECK(values[0] == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(values[1] == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("legendre r=3 matrix gives the P3 roots") {
        const std::vector<double> d{0.0, 0.0, 0.0};
        const std::vector<double> e{1.0 / std::sqrt(3.0), 2.0 / std::sqrt(15.0)};
        const auto values = tridiag_eigenvalues(d, e);
        const double root = std::sqrt(3.0 / 5.0);
        CHECK(values[0] == doctest::Approx(-root).epsilon(1e-13));
        CHECK(std::fabs(values[1]) < 1e-13);
        CHECK(values[2] == doctest::Approx(root).epsilon(1e-13));
        for (double v : values) CHECK(std::fabs(legendre_p3(v)) < 1e-12);
    }
    SUBCASE("mismatched lengths rejected") {
        const std::vector<double> d{1.0, 2.0}, e{0.5, 0.5};
        CHECK_THROWS_AS((void)tridiag_eigenvalues(d, e), std::invalid_argument);
    }
}

TEST_CASE("tridiagonal eigenvalues preserve trace and Frobenius norm") {
    const std::vector<double> d{1.5, -0.25, 0.75, 2.0, -1.0};
    const std::vector<double> e{0.5, 1.25, -0.75, 0.3};
    const auto values = tridiag_eigenvalues(d, e);
    REQUIRE(values.size() == 5);
    double trace = 0.0;
    for (double v : d) trace += v;
    double sum = 0.0;
    for (double v : values) sum += v;
    CHECK(sum == doctest::Approx(trace).epsilon(1e-12));
    double frob2 = 0.0;
    for (double v : d) frob2 += v * v;
    for (double v : e) frob2 += 2.0 * v * v;
    double eig2 = 0.0;
    for (double v : values) eig2 += v * v;
    CHECK(eig2 == doctest::Approx(frob2).epsilon(1e-12));
}

TEST_CASE("gauss-legendre nodes") {
    const auto one = gauss_legendre_nodes(Interval(-1.0, 1.0), 1);
    CHECK(std::fabs(one.points[0]) < 1e-15);

    const auto two = gauss_legendre_nodes(Interval(-1.0, 1.0), 2);
    const double root = 1.0 / std::sqrt(3.0);
    CHECK(two.points[0] == doctest::Approx(-root).epsilon(1e-14));
    CHECK(two.points[1] == doctest::Approx(root).epsilon(1e-14));

    const auto mapped = gauss_legendre_nodes(Interval(1e-5, 2.0), 2);
    CHECK(mapped.points[0] == doctest::Approx(1.000005 - 0.999995 * root).epsilon(1e-14));
    CHECK(mapped.points[1] == doctest::Approx(1.000005 + 0.999995 * root).epsilon(1e-14));
}

TEST_CASE("gauss-jacobi nodes for weight (1+omega)") {
    const auto one = gauss_jacobi_nodes(Interval(-1.0, 1.0), 1);
    CHECK(one.points[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

    const auto two = gauss_jacobi_nodes(Interval(-1.0, 1.0), 2);
    REQUIRE(two.points.size() == 2);
    CHECK(two.points[0] > -1.0);
    CHECK(two.points[1] < 1.0);
    CHECK(two.points[0] != two.points[1]);
    for (double v : two.points) CHECK(std::fabs(jacobi_monic_p2(v)) < 1e-12);

    const auto mapped = gauss_jacobi_nodes(Interval(-0.9, 0.9), 1);
    CHECK(mapped.points[0] == doctest::Approx(0.3).epsilon(1e-13));
}

TEST_CASE("quadrature rules integrate monomials exactly up to degree 2r-1") {
    for (std::size_t r : {2, 5, 10}) {
        const auto rule = gauss_legendre_rule(r);
        for (std::size_t j = 0; j <= 2 * r - 1; ++j) {
            double estimate = 0.0;
            for (std::size_t k = 0; k < r; ++k)
                estimate += rule.weights[k] * std::pow(rule.nodes[k], static_cast<double>(j));
            const double exact = (j % 2 == 1) ? 0.0 : 2.0 / (static_cast<double>(j) + 1.0);
            CHECK(std::fabs(estimate - exact) < 1e-10);
        }
    }
    // Jacobi weight: integral of x^j (1+x) over [-1,1] is the sum of the
    // even-power pieces of x^j and x^{j+1}.
    for (std::size_t r : {2, 5}) {
        const auto rule = gauss_jacobi_rule(r);
        for (std::size_t j = 0; j <= 2 * r - 1; ++j) {
            double estimate = 0.0;
            for (std::size_t k = 0; k < r; ++k) {
                const double x = rule.nodes[k];
                estimate += rule.weights[k] * std::pow(x, static_cast<double>(j));
            }
            const double term_j = (j % 2 == 0) ? 2.0 / (static_cast<double>(j) + 1.0) : 0.0;
            const double term_j1 = ((j + 1) % 2 == 0) ? 2.0 / (static_cast<double>(j) + 2.0) : 0.0;
            CHECK(std::fabs(estimate - (term_j + term_j1)) < 1e-10);
        }
    }
}

TEST_CASE("all schemes give pairwise-distinct in-range points for r <= 64") {
    const Interval simple(-0.9, 0.9);
    const Interval complex_domain(1e-5, 2.0);
    for (auto scheme : {SampleScheme::Equispaced, SampleScheme::Chebyshev, SampleScheme::Legendre,
                        SampleScheme::Jacobi}) {
        for (const Interval& iv : {simple, complex_domain}) {
            for (std::size_t r = 1; r <= 64; r += 7) {
                const auto set = sample_nodes(scheme, iv, r);
                REQUIRE(set.points.size() == r);
                for (std::size_t i = 0; i + 1 < r; ++i)
                    CHECK(set.points[i + 1] - set.points[i] > 1e-14 * iv.width());
                for (double p : set.points) {
                    CHECK(p >= iv.lower - 1e-12);
                    CHECK(p <= iv.upper + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("symmetric-weight schemes reflect with the interval") {
    const Interval iv(0.1, 1.7);
    const Interval mirrored = iv.reflected();
    for (auto scheme :
         {SampleScheme::Equispaced, SampleScheme::Chebyshev, SampleScheme::Legendre}) {
        for (std::size_t r : {1, 4, 9, 16}) {
            const auto forward = sample_nodes(scheme, iv, r);
            const auto backward = sample_nodes(scheme, mirrored, r);
            for (std::size_t i = 0; i < r; ++i)
                CHECK(backward.points[i] ==
                      doctest::Approx(-forward.points[r - 1 - i]).epsilon(1e-14));
        }
    }
}
