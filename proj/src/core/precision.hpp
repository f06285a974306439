#pragma once

#include <span>

#include "types.hpp"

namespace reprometry {

struct CvOptions {
    double confidence_level = 0.95;
    bool report_as_percent = true;
};

// Normal-theory bias correction factor for the sample standard deviation:
// c4(n) = sqrt(2/(n-1)) * Gamma(n/2) / Gamma((n-1)/2). Strictly increasing,
// in (0, 1). Throws DomainError for n < 2.
double c4(int n);

struct StdPair {
    double s;       // Bessel-corrected sample standard deviation
    double s_star;  // s / c4(n), unbiased under normality
};

StdPair unbiased_std(std::span<const double> values);

struct CiBounds {
    double low;
    double high;
    bool degenerate;  // zero-variance interval (0, 0)
};

// t-distribution interval for s*; the standard error of s* is approximated
// from se(s^2) as se(s*) = s*/sqrt(2(n-1)), with sigma estimated by s*.
// The lower bound is clipped at 0.
CiBounds ci_for_s_star(double s_star, int n, double confidence_level);

// Small-sample unbiased coefficient of variation over scores already shifted
// to a zero-based scale: (1 + 1/(4n)) * s*/|mean|, times 100 when reporting
// as a percentage. Throws DomainError for n < 2 or a zero mean.
PrecisionStats cv_star(std::span<const double> shifted_values, const CvOptions& opts = {});

}  // namespace reprometry
