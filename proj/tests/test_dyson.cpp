#include "qsc/dyson.hpp"
#include "qsc/error.hpp"
#include "qsc/io.hpp"

#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

using namespace qsc;
using qsc::test::gauss_legendre;
using qsc::test::simplex_integral;

namespace {

const cplx I(0.0, 1.0);

// Integrand of a vacuum diagram at given times (times[k] = t_{k+1}).
cplx diagram_integrand(const GoldstoneDiagram &d, const std::function<cplx(double)> &g, const std::vector<double> &times) {
    cplx p = 1.0;
    for (const auto &e : d.edges())
        p *= g(times[static_cast<std::size_t>(e.later - 1)] - times[static_cast<std::size_t>(e.earlier - 1)]);
    return p;
}

cplx reference_integral(const GoldstoneDiagram &d, const ScaledKernel &k, double t, int panels) {
    return simplex_integral(d.size(), t, panels,
                            [&](const std::vector<double> &times) { return diagram_integrand(d, k, times); });
}

double pair_closed_form(double lambda, double t) {
    const double l2 = lambda * lambda;
    return t / 2 - l2 / 2 * (1 - std::exp(-t / l2));
}

}  // namespace

TEST_CASE("kernel moments") {
    const auto plain = kernel_moments(KernelSpec::exponential(0.5, 1.0));
    CHECK(plain.gamma == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(plain.kappa - 0.5) < 1e-15);
    const auto zero_omega = kernel_moments(KernelSpec::exponential(0.5, 1.0, 0.0));
    CHECK(std::abs(zero_omega.kappa - plain.kappa) == 0.0);
    const auto modulated = kernel_moments(KernelSpec::exponential(0.5, 1.0, 1.0));
    CHECK(std::abs(modulated.kappa - cplx(0.25, 0.25)) < 1e-15);
    CHECK(modulated.gamma == doctest::Approx(0.5).epsilon(1e-15));

    // Direct quadrature of the defining integrals.
    const auto k = KernelSpec::exponential(0.8, 0.6, 2.3);
    const auto m = kernel_moments(k);
    const cplx kappa = gauss_legendre(k, 0.0, 40.0, 200);
    const cplx gamma = gauss_legendre(k, -40.0, 40.0, 400);
    CHECK(std::abs(m.kappa - kappa) < 1e-12);
    CHECK(std::abs(m.gamma - gamma) < 1e-12);
    CHECK(std::abs(m.gamma - 2 * m.kappa.real()) < 1e-12);
    CHECK(std::abs(k(-0.7) - std::conj(k(0.7))) < 1e-15);

    CHECK_THROWS_AS(KernelSpec::exponential(0.5, 0.0), DomainError);
    CHECK_THROWS_AS(KernelSpec::exponential(0.5, -1.0), DomainError);
    CHECK_THROWS_AS(KernelSpec::exponential(-0.5, 1.0), DomainError);
}

TEST_CASE("tabulated kernel moments equal the exact integral of the interpolant") {
    std::vector<cplx> samples;
    const double h = 0.05;
    for (int k = 0; k <= 200; ++k) samples.push_back(0.5 * std::exp(-k * h) * std::exp(I * (0.7 * k * h)));
    // Piecewise linear: the trapezoid rule is exact.
    cplx trapezoid = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k)
        trapezoid += (k == 0 || k + 1 == samples.size() ? 0.5 : 1.0) * samples[k];
    trapezoid *= h;
    const auto spec = KernelSpec::tabulated(h, samples);
    const auto m = kernel_moments(spec);
    CHECK(std::abs(m.kappa - trapezoid) < 1e-10);
    CHECK(std::abs(m.gamma - 2 * trapezoid.real()) < 1e-10);
    CHECK(std::abs(spec(-0.123) - std::conj(spec(0.123))) < 1e-15);
    CHECK(spec(10.01) == cplx(0.0));
    CHECK_THROWS_AS(KernelSpec::tabulated(0.0, samples), DomainError);
    CHECK_THROWS_AS(KernelSpec::tabulated(0.1, {cplx(0, 1), 0.0}), InputError);
}

TEST_CASE("scaled kernels keep their total integral") {
    const auto k = KernelSpec::exponential(0.5, 1.0, 1.0);
    const double gamma = kernel_moments(k).gamma;
    for (double lambda : {1.0, 0.5, 0.3, 0.1, 0.03}) {
        const ScaledKernel s(k, lambda);
        const double l2 = lambda * lambda;
        const cplx total = gauss_legendre(s, -60 * l2, 0.0, 200) + gauss_legendre(s, 0.0, 60 * l2, 200);
        CHECK(std::abs(total - gamma) < 1e-8);
        CHECK(std::abs(s(0.3 * l2) - k(0.3) / l2) < 1e-12 / l2);
    }
    CHECK_THROWS_AS(ScaledKernel(k, 0.0), InputError);
}

TEST_CASE("gap weights") {
    CHECK(gap_weights(GoldstoneDiagram(4, {{4, 1}, {3, 2}})) == std::vector<int>{0, 1, 2, 1});
    CHECK(gap_weights(GoldstoneDiagram(4, {{2, 1}, {4, 3}})) == std::vector<int>{0, 1, 0, 1});
    CHECK(gap_weights(GoldstoneDiagram(3, {})) == std::vector<int>{0, 0, 0});
}

TEST_CASE("divided-difference methods agree") {
    // Oracle: for the upper bidiagonal J with the nodes on the diagonal and ones
    // above it, the corner entry of exp(t J) is the divided difference of e^{t x}.
    auto oracle = [](const std::vector<int> &w, cplx a, double t) {
        const int n = static_cast<int>(w.size());
        Matrix j = Matrix::Zero(n + 1, n + 1);
        for (int k = 0; k < n; ++k) {
            j(k, k) = a * static_cast<double>(w[static_cast<std::size_t>(k)]);
            j(k, k + 1) = 1.0;
        }
        return expm(t * j)(0, n);
    };
    for (const std::vector<int> &w : {std::vector<int>{0, 1, 2, 1}, {1, 1, 1}, {0, 2, 3, 3, 1}, {0}, {}}) {
        const int w_max = w.empty() ? 0 : *std::max_element(w.begin(), w.end());
        for (cplx a : {cplx(-1.0, 0.5), cplx(-4.0, 2.0), cplx(-0.01, 0.0), cplx(-30.0, 8.0)}) {
            for (double t : {0.1, 1.0, 2.0}) {
                const cplx expect = oracle(w, a, t);
                const double scale = std::abs(expect);
                const double reach = std::abs(a) * t * w_max;
                CAPTURE(w.size());
                CAPTURE(a);
                CAPTURE(t);
                CHECK(std::abs(simplex_exponential_integral(w, a, t) - expect) <= 1e-10 * scale);
                if (reach <= 4.0)
                    CHECK(std::abs(simplex_exponential_integral(w, a, t, DividedDifferenceMethod::taylor) - expect) <=
                          1e-12 * scale);
                // The difference-quotient recursion cancels badly for clustered nodes.
                if (reach >= 1.0)
                    CHECK(std::abs(simplex_exponential_integral(w, a, t, DividedDifferenceMethod::recursion) - expect) <=
                          1e-9 * scale);
            }
        }
    }
    // Cross-check the oracle itself by nested quadrature in gap coordinates.
    const std::vector<int> w{0, 1, 2};
    const cplx a(-1.5, 0.7);
    const cplx direct = simplex_integral(3, 1.2, 4, [&](const std::vector<double> &x) {
        return std::exp(a * (1.0 * (x[1] - x[0]) + 2.0 * (x[2] - x[1])));
    });
    CHECK(std::abs(simplex_exponential_integral(w, a, 1.2) - direct) < 1e-12);
}

TEST_CASE("pair diagram closed form") {
    const auto k = KernelSpec::exponential(0.5, 1.0);
    const GoldstoneDiagram pair(2, {{2, 1}});
    for (double lambda : {1.0, 0.5, 0.1, 0.03}) {
        for (double t : {0.2, 1.0, 3.0}) {
            const cplx v = diagram_integral(pair, ScaledKernel(k, lambda), t);
            CHECK(std::abs(v - pair_closed_form(lambda, t)) < 1e-12);
        }
    }
    CHECK(diagram_integral(pair, ScaledKernel(k, 0.5), 0.0) == cplx(0.0));
    // At lambda^2 = t / 100 the deviation is 1% times (1 - e^{-100}): equal to 1% in
    // double precision, so the comparison carries a few ulps of slack.
    const double t = 1.0, lambda = std::sqrt(t / 100);
    const double deviation = std::abs(diagram_integral(pair, ScaledKernel(k, lambda), t) - 0.5 * t);
    CHECK(deviation <= 0.01 * 0.5 * t * (1 + 1e-13));
}

TEST_CASE("exact diagram integrals against nested Gauss-Legendre") {
    const auto k = KernelSpec::exponential(0.7, 0.8, 1.3);
    for (int n = 1; n <= 5; ++n) {
        for (const auto &p : enumerate_set_partitions(n)) {
            const auto d = diagram_from_partition(p);
            for (double lambda : {1.0, 0.6}) {
                const ScaledKernel s(k, lambda);
                const double t = 1.3;
                const cplx exact = diagram_integral(d, s, t);
                const cplx ref = reference_integral(d, s, t, n <= 4 ? 3 : 1);
                CAPTURE(to_compact_string(d));
                CAPTURE(lambda);
                CHECK(std::abs(exact - ref) <= 1e-9 * std::max(1.0, std::abs(ref)));
            }
        }
    }
    CHECK_THROWS_AS(diagram_integral(GoldstoneDiagram(7, {}), ScaledKernel(k, 1.0), 1.0), EnumerationBoundError);
}

TEST_CASE("tabulated kernels take the quadrature path") {
    // A kernel that is exactly piecewise linear has an exact tabulated form.
    std::vector<cplx> samples{1.0, cplx(0.5, 0.2), cplx(0.1, 0.1), 0.0};
    const auto tab = KernelSpec::tabulated(0.4, samples);
    for (const char *text : {"2;(2,1)", "3;(3,1)", "3;(2,1),(3,2)", "4;(2,1),(4,3)"}) {
        const auto d = parse_diagram(text);
        const ScaledKernel s(tab, 0.9);
        const cplx v = diagram_integral(d, s, 1.1);
        // Kinks at multiples of 0.4 * 0.81: use many panels.
        const cplx ref = reference_integral(d, s, 1.1, d.size() <= 2 ? 40 : (d.size() == 3 ? 12 : 4));
        CAPTURE(text);
        CHECK(std::abs(v - ref) <= 1e-5 * std::abs(ref));
    }
    // Same kernel through both paths.
    const auto k = KernelSpec::exponential(0.5, 1.0, 0.4);
    const GoldstoneDiagram nested(4, {{4, 1}, {3, 2}});
    const ScaledKernel s(k, 0.7);
    const cplx q = diagram_integral_quadrature(nested, s, 1.0, 1e-8);
    CHECK(std::abs(q - diagram_integral(nested, s, 1.0)) <= 1e-7 * std::abs(q));
}

TEST_CASE("nested diagram decays like lambda^2") {
    const auto k = KernelSpec::exponential(0.5, 1.0);
    const GoldstoneDiagram nested(4, {{4, 1}, {3, 2}});
    const double t = 1.0, lambda = 0.1;
    const double a = std::abs(diagram_integral(nested, ScaledKernel(k, lambda), t));
    const double b = std::abs(diagram_integral(nested, ScaledKernel(k, lambda / 2), t));
    CHECK(b / a == doctest::Approx(0.25).epsilon(0.1));
}

TEST_CASE("Markov limit prediction") {
    const cplx kappa(0.5, 0.25);
    CHECK(std::abs(markov_limit_prediction(parse_diagram("4;(2,1),(4,3)"), kappa, 2.0) - kappa * kappa * 2.0) < 1e-15);
    CHECK(std::abs(markov_limit_prediction(parse_diagram("3;(2,1),(3,2)"), kappa, 2.0) - kappa * kappa * 2.0) < 1e-15);
    CHECK(markov_limit_prediction(parse_diagram("4;(4,1),(3,2)"), kappa, 2.0) == cplx(0.0));
    CHECK(std::abs(markov_limit_prediction(parse_diagram("3;"), kappa, 2.0) - 8.0 / 6.0) < 1e-15);
}

TEST_CASE("Markov limit of every interval-block diagram on n <= 5") {
    // Leading correction: every contracted edge uses up a mean gap of lambda^2 tau out
    // of each of the m block times, so I / limit - 1 = -m E lambda^2 tau / t + O(lambda^4).
    // At t = 1 and lambda = 1/16 that is 2.3% for the four-vertex chain plus a
    // singleton, so the 2% check runs at t = 2; the correction itself is checked at t = 1.
    const auto k = KernelSpec::exponential(0.5, 1.0);
    const cplx kappa = kernel_moments(k).kappa;
    const double lambda = 0.0625;
    for (int n = 1; n <= 5; ++n) {
        for (const auto &p : enumerate_set_partitions(n)) {
            const auto d = diagram_from_partition(p);
            if (!is_time_consecutive(d)) continue;
            CAPTURE(to_compact_string(d));
            {
                const double t = 2.0;
                const cplx limit = markov_limit_prediction(d, kappa, t);
                const cplx v = diagram_integral(d, ScaledKernel(k, lambda), t);
                CHECK(std::abs(v - limit) <= 0.02 * std::abs(limit));
            }
            const double t = 1.0;
            const cplx limit = markov_limit_prediction(d, kappa, t);
            const cplx v = diagram_integral(d, ScaledKernel(k, lambda), t);
            const double first_order = static_cast<double>(p.block_count() * d.edges().size()) * lambda * lambda / t;
            const double measured = (v / limit - 1.0).real();
            CHECK(std::abs(measured + first_order) <= 0.1 * first_order + 1e-12);
        }
    }
}

TEST_CASE("markov scan rows") {
    const auto k = KernelSpec::exponential(0.5, 1.0);
    const std::vector<GoldstoneDiagram> diagrams{parse_diagram("2;(2,1)"), parse_diagram("4;(4,1),(3,2)")};
    const auto rows = markov_scan(k, diagrams, kDefaultLambdaGrid, 1.0);
    REQUIRE(rows.size() == 10);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        CHECK(rows[r].diagram == r / 5);
        CHECK(rows[r].lambda == kDefaultLambdaGrid[r % 5]);
        CHECK(std::isnan(rows[r].slope) == (r % 5 == 0));
        CHECK(rows[r].integral == diagram_integral(diagrams[r / 5], ScaledKernel(k, rows[r].lambda), 1.0));
    }
    CHECK(rows[0].limit_prediction == doctest::Approx(0.5));
    CHECK(rows[5].limit_prediction == 0.0);
    CHECK(rows[7].slope == doctest::Approx(std::log(std::abs(rows[7].integral) / std::abs(rows[6].integral)) /
                                           std::log(0.5)));
    // Deterministic regardless of thread scheduling.
    CHECK(io::markov_scan_csv(rows) == io::markov_scan_csv(markov_scan(k, diagrams, kDefaultLambdaGrid, 1.0)));

    const auto zero = markov_scan(k, std::vector<GoldstoneDiagram>{parse_diagram("2;(2,1)")}, kDefaultLambdaGrid, 0.0);
    for (const auto &r : zero) CHECK(r.integral == cplx(0.0));
    CHECK_THROWS_AS(markov_scan(k, std::vector<GoldstoneDiagram>{GoldstoneDiagram(6, {})}, kDefaultLambdaGrid, 1.0),
                    EnumerationBoundError);
}

TEST_CASE("log-log slope") {
    const std::vector<double> x{1, 2, 4, 8}, y{3, 12, 48, 192};
    CHECK(loglog_slope(x, y) == doctest::Approx(2.0));
    CHECK_THROWS_AS(loglog_slope(std::vector<double>{1}, std::vector<double>{1}), InputError);
}

TEST_CASE("Pule bound") {
    CHECK(pule_bound_gaussian(0, 0.7, 3.0) == 1.0);
    CHECK(pule_bound_gaussian(2, 0.5, 1.0) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(pule_bound_gaussian(3, 0.5, 2.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(pule_bound_gaussian(2, 0.5, 0.3) == pule_bound_gaussian(2, 0.5, 1.0));
    CHECK_THROWS_AS(pule_bound_gaussian(-1, 0.5, 1.0), InputError);

    const auto k = KernelSpec::exponential(0.5, 1.0, 2.0);
    CHECK(k.abs_half_integral() == doctest::Approx(0.5));
    for (double lambda : {1.0, 0.3, 0.1})
        for (double t : {0.5, 1.0, 2.0}) {
            const auto c = pule_check(k, 4, lambda, t);
            CHECK(c.holds());
            // Independent sum over the three matchings.
            double sum = 0.0;
            const ScaledKernel abs_kernel(k.absolute(), lambda);
            for (const char *s : {"4;(2,1),(4,3)", "4;(3,1),(4,2)", "4;(4,1),(3,2)"})
                sum += std::abs(diagram_integral(parse_diagram(s), abs_kernel, t));
            CHECK(c.measured == doctest::Approx(sum).epsilon(1e-14));
        }
}

TEST_CASE("Xi bound") {
    CHECK(xi_bound(-50.0, 0.3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(xi_bound(std::log(0.5), 0.0) - std::numbers::e) < 1e-12);
    CHECK_THROWS_AS(xi_bound(0.0, 0.0), DomainError);
    try {
        xi_bound(0.2, 0.0);
    } catch (const DomainError &e) {
        CHECK(std::string(e.what()).find("||kappa E11|| < 1") != std::string::npos);
    }

    // Restricted sums by an independent enumeration: integer partitions of n
    // as non-increasing part lists, multiplicities counted afterwards.
    auto restricted = [](double a, double b, int n) {
        double total = 0.0;
        std::vector<int> parts;
        std::function<void(int, int)> rec = [&](int remaining, int max_part) {
            if (remaining == 0) {
                std::map<int, int> mult;
                for (int p : parts) ++mult[p];
                double w = std::exp(a * n + b * static_cast<double>(parts.size()));
                for (auto [j, c] : mult) w /= std::tgamma(c + 1.0);
                total += w;
                return;
            }
            for (int p = std::min(remaining, max_part); p >= 1; --p) {
                parts.push_back(p);
                rec(remaining - p, p);
                parts.pop_back();
            }
        };
        rec(n, n);
        return total;
    };
    for (double q : {0.1, 0.5, 0.9})
        for (double c : {0.3, 1.0, 2.5}) {
            const double a = std::log(q), b = std::log(c);
            double partial = 0.0;
            for (int n = 0; n <= 6; ++n) {
                CHECK(xi_restricted_sum(a, b, n) == doctest::Approx(restricted(a, b, n)).epsilon(1e-13));
                partial += xi_restricted_sum(a, b, n);
                CHECK(partial <= xi_bound(a, b));
            }
        }
}
