#include "pipeflow/series_sums.hpp"

#include <cmath>
#include <string>

namespace pipeflow::series {

namespace {

constexpr double kPi2 = kPi * kPi;
constexpr double kPi4 = kPi2 * kPi2;

// Sum magnitudes are O(1); tail_tol is applied on that scale.
double exp_cos_sum(double u, double A, double tau, int k, const SeriesConfig& cfg) {
    cfg.check();
    if (tau < 0) throw BoundsError("negative elapsed time in modal sum");
    if (tau == 0.0) return k == 2 ? cos_over_n2(u) : cos_over_n4(u);
    if (A * tau > 745.0) return 0.0;  // every term underflows

    double sum = 0.0;
    for (int n = 1; n <= cfg.n_max; ++n) {
        const double nd = n;
        const double e = std::exp(-A * nd * nd * tau);
        const double w = k == 2 ? nd * nd : nd * nd * nd * nd;
        sum += std::cos(nd * kPi * u) * e / w;
        // Geometric tail bound: term ratios are below e^{-A tau (2n+3)}.
        const double m = nd + 1;
        const double head = std::exp(-A * m * m * tau) / (k == 2 ? m * m : m * m * m * m);
        const double ratio = std::exp(-A * tau * (2 * m + 1));
        if (head / (1.0 - ratio) <= cfg.tail_tol) return sum;
    }
    const double m = cfg.n_max + 1;
    const double head = std::exp(-A * m * m * tau) / (k == 2 ? m * m : m * m * m * m);
    const double ratio = std::exp(-A * tau * (2 * m + 1));
    throw TruncationError("modal tail bound " + std::to_string(head / (1.0 - ratio)) +
                          " above tolerance at n_max=" + std::to_string(cfg.n_max));
}

}  // namespace

double cos_over_n2(double u) {
    if (u < 0 || u > 2) throw BoundsError("cos_over_n2 argument outside [0, 2]");
    return kPi2 * (1.0 / 6.0 - u / 2.0 + u * u / 4.0);
}

double cos_over_n4(double u) {
    if (u < 0 || u > 2) throw BoundsError("cos_over_n4 argument outside [0, 2]");
    const double u2 = u * u;
    return kPi4 * (1.0 / 90.0 - u2 / 12.0 + u2 * u / 12.0 - u2 * u2 / 48.0);
}

double exp_cos_over_n2(double u, double A, double tau, const SeriesConfig& cfg) {
    return exp_cos_sum(u, A, tau, 2, cfg);
}

double exp_cos_over_n4(double u, double A, double tau, const SeriesConfig& cfg) {
    return exp_cos_sum(u, A, tau, 4, cfg);
}

double pair_over_n2(double u, double u_src, double A, double tau, const SeriesConfig& cfg) {
    return 0.5 * (exp_cos_over_n2(std::abs(u - u_src), A, tau, cfg) +
                  exp_cos_over_n2(u + u_src, A, tau, cfg));
}

double pair_over_n4(double u, double u_src, double A, double tau, const SeriesConfig& cfg) {
    return 0.5 * (exp_cos_over_n4(std::abs(u - u_src), A, tau, cfg) +
                  exp_cos_over_n4(u + u_src, A, tau, cfg));
}

}  // namespace pipeflow::series
