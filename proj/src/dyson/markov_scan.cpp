#include "qsc/dyson.hpp"
#include "qsc/error.hpp"

#include <cmath>
#include <future>
#include <limits>

namespace qsc {

namespace {

constexpr int kMaxScanVertices = 5;

std::vector<MarkovRow> scan_one(const KernelSpec &k, cplx kappa, std::size_t id, const GoldstoneDiagram &d,
                                std::span<const double> lambdas, double t) {
    std::vector<MarkovRow> rows;
    const double prediction = std::abs(markov_limit_prediction(d, kappa, t));
    const auto label = to_compact_string(d);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        MarkovRow row{id, label, lambdas[i], diagram_integral(d, ScaledKernel(k, lambdas[i]), t), prediction,
                      std::numeric_limits<double>::quiet_NaN()};
        if (i > 0) {
            const double now = std::abs(row.integral);
            const double before = std::abs(rows.back().integral);
            if (now > 0.0 && before > 0.0) {
                row.slope = std::log(now / before) / std::log(lambdas[i] / lambdas[i - 1]);
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::vector<MarkovRow> markov_scan(const KernelSpec &k, std::span<const GoldstoneDiagram> diagrams,
                                   std::span<const double> lambdas, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw InputError("markov scan needs a finite t >= 0");
    for (double l : lambdas) {
        if (!(l > 0.0)) throw InputError("markov scan lambdas must be positive");
    }
    for (const auto &d : diagrams) {
        if (d.size() > kMaxScanVertices) {
            throw EnumerationBoundError("markov scan diagrams are limited to " + std::to_string(kMaxScanVertices) +
                                        " vertices");
        }
    }
    const cplx kappa = kernel_moments(k).kappa;

    std::vector<std::future<std::vector<MarkovRow>>> pending;
    pending.reserve(diagrams.size());
    for (std::size_t id = 0; id < diagrams.size(); ++id) {
        pending.push_back(std::async(std::launch::async, scan_one, std::cref(k), kappa, id, std::cref(diagrams[id]),
                                     lambdas, t));
    }
    std::vector<MarkovRow> rows;
    for (auto &p : pending) {
        auto part = p.get();
        rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return rows;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw InputError("loglog_slope needs two or more matching points");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const auto n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace qsc
