// Modal sums for the closed-form section fields. The non-decaying parts of
// every series are folded into Bernoulli-polynomial closed forms so that the
// summed remainders decay like e^{-A n^2 tau}; the geometric tail bound makes
// the truncation level explicit.
#pragma once

#include "pipeflow/domain.hpp"

namespace pipeflow::series {

// Sum_{n>=1} cos(n pi u) / n^2, valid for u in [0, 2].
double cos_over_n2(double u);

// Sum_{n>=1} cos(n pi u) / n^4, valid for u in [0, 2].
double cos_over_n4(double u);

// Sum_{n>=1} cos(n pi u) e^{-A n^2 tau} / n^2. tau == 0 uses the closed form.
double exp_cos_over_n2(double u, double A, double tau, const SeriesConfig& cfg);

// Same with n^4 weight.
double exp_cos_over_n4(double u, double A, double tau, const SeriesConfig& cfg);

// Product kernel Sum_n cos(n pi u) cos(n pi u_src) e^{-A n^2 tau} / n^k via
// product-to-sum; u, u_src in [0, 1].
double pair_over_n2(double u, double u_src, double A, double tau, const SeriesConfig& cfg);
double pair_over_n4(double u, double u_src, double A, double tau, const SeriesConfig& cfg);

}  // namespace pipeflow::series
