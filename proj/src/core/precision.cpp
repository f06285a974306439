#include "precision.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>

#include "errors.hpp"

namespace reprometry {

double c4(int n) {
    if (n < 2) throw DomainError("sample too small: c4 requires n >= 2");
    // Gamma-ratio via lgamma keeps this finite for large n.
    const double ratio = std::exp(std::lgamma(n / 2.0) - std::lgamma((n - 1) / 2.0));
    return std::sqrt(2.0 / (n - 1)) * ratio;
}

StdPair unbiased_std(std::span<const double> values) {
    const int n = static_cast<int>(values.size());
    if (n < 2) throw DomainError("sample too small: standard deviation requires n >= 2");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double s = std::sqrt(ss / (n - 1));
    return {s, s / c4(n)};
}

CiBounds ci_for_s_star(double s_star, int n, double confidence_level) {
    if (n < 2) throw DomainError("sample too small: confidence interval requires n >= 2");
    if (s_star < 0) throw DomainError("negative standard deviation");
    if (!(confidence_level > 0.0 && confidence_level < 1.0))
        throw DomainError("confidence level must be in (0, 1)");
    if (s_star == 0.0) return {0.0, 0.0, true};
    const double se = s_star / std::sqrt(2.0 * (n - 1));
    boost::math::students_t dist(n - 1);
    const double t = boost::math::quantile(dist, (1.0 + confidence_level) / 2.0);
    return {std::max(0.0, s_star - t * se), s_star + t * se, false};
}

PrecisionStats cv_star(std::span<const double> shifted_values, const CvOptions& opts) {
    const int n = static_cast<int>(shifted_values.size());
    if (n < 2) throw DomainError("sample too small: CV* requires n >= 2");
    double mean = 0.0;
    for (double v : shifted_values) mean += v;
    mean /= n;
    if (mean == 0.0) throw DomainError("CV undefined at zero mean");

    const StdPair sd = unbiased_std(shifted_values);
    PrecisionStats st;
    st.n = n;
    st.mean = mean;
    st.s = sd.s;
    st.s_star = sd.s_star;
    st.cv_star = (1.0 + 1.0 / (4.0 * n)) * sd.s_star / std::fabs(mean);
    if (opts.report_as_percent) st.cv_star *= 100.0;
    st.confidence_level = opts.confidence_level;
    const CiBounds ci = ci_for_s_star(sd.s_star, n, opts.confidence_level);
    st.ci_low = ci.low;
    st.ci_high = ci.high;
    st.degenerate_ci = ci.degenerate;
    return st;
}

}  // namespace reprometry
