#pragma once

// Distribution kernels shared by the estimators and the coverage engine:
// log-space Poisson pmf/cdf/quantile, normal and chi-square(1) quantiles,
// binomial tail solving on the regularized incomplete beta, and the
// log-normal grid discretization used for unconditional risk mixing.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "ratecover/errors.hpp"

namespace ratecover::num {

using Probability = double;

inline void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error(std::string(what) + " must be in [0,1]");
}

inline void check_open_probability(double p, const char* what) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error(std::string(what) + " must be in (0,1)");
}

// Neumaier-compensated accumulator. Used wherever many pmf terms are summed
// so that results do not depend on accumulation noise at the 1e-12 scale.
struct NeumaierSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

// ---------------------------------------------------------------------------
// Normal and chi-square quantiles
// ---------------------------------------------------------------------------

/// Standard normal inverse CDF (Wichura's PPND16 rational approximations),
/// absolute error below 1e-12 over (0,1).
inline double normal_quantile(double p) {
    check_open_probability(p, "p");
    const double q = p - 0.5;
    double r, val;
    if (std::abs(q) <= 0.425) {
        r = 0.180625 - q * q;
        val = q *
              (((((((r * 2509.0809287301226727 + 33430.575583588128105) * r +
                    67265.770927008700853) * r + 45921.953931549871457) * r +
                  13731.693765509461125) * r + 1971.5909503065514427) * r +
                133.14166789178437745) * r + 3.387132872796366608) /
              (((((((r * 5226.495278852545610 + 28729.085735721942674) * r +
                    39307.89580009271061) * r + 21213.794301586595867) * r +
                  5394.1960214247511077) * r + 687.1870074920579083) * r +
                42.313330701600911252) * r + 1.0);
        return val;
    }
    r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((r * 7.7454501427834140764e-4 + 0.0227238449892691845833) * r +
                    0.24178072517745061177) * r + 1.27045825245236838258) * r +
                  3.64784832476320460504) * r + 5.7694972214606914055) * r +
                4.6303378461565452959) * r + 1.42343711074968357734) /
              (((((((r * 1.05075007164441684324e-9 + 5.475938084995344946e-4) * r +
                    0.0151986665636164571966) * r + 0.14810397642748007459) * r +
                  0.68976733498510000455) * r + 1.6763848301838038494) * r +
                2.05319162663775882187) * r + 1.0);
    } else {
        r -= 5.0;
        val = (((((((r * 2.01033439929228813265e-7 + 2.71155556874348757815e-5) * r +
                    0.0012426609473880784386) * r + 0.026532189526576123093) * r +
                  0.29656057182850489123) * r + 1.7848265399172913358) * r +
                5.4637849111641143699) * r + 6.6579046435011037772) /
              (((((((r * 2.04426310338993978564e-15 + 1.4215117583164458887e-7) * r +
                    1.8463183175100546818e-5) * r + 7.868691311456132591e-4) * r +
                  0.0148753612908506148525) * r + 0.13692988092273580531) * r +
                0.59983220655588793769) * r + 1.0);
    }
    return (q < 0.0) ? -val : val;
}

/// Chi-square(1 df) quantile via the normal-quantile identity.
inline double chisq1_quantile(double p) {
    check_open_probability(p, "p");
    const double z = normal_quantile((1.0 + p) / 2.0);
    return z * z;
}

// ---------------------------------------------------------------------------
// Poisson pmf / cdf / quantile
// ---------------------------------------------------------------------------

/// Poisson pmf computed in log space; safe for k up to at least 1e6.
inline double pois_pmf(double lambda, std::int64_t k) {
    if (!(lambda > 0.0)) throw std::domain_error("lambda must be positive");
    if (k < 0) throw std::domain_error("k must be nonnegative");
    const double dk = static_cast<double>(k);
    return std::exp(dk * std::log(lambda) - lambda - std::lgamma(dk + 1.0));
}

namespace detail {

// Regularized upper incomplete gamma Q(a,x); Poisson CDF(k) = Q(k+1, lambda).
inline double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::domain_error("gamma_q domain");
    if (x == 0.0) return 1.0;
    const double lpre = a * std::log(x) - x - std::lgamma(a);
    if (x < a + 1.0) {
        // lower series
        double ap = a, del = 1.0 / a, sum = del;
        for (int n = 0; n < 1000; ++n) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-16)
                return 1.0 - sum * std::exp(lpre);
        }
        throw numeric_error("incomplete gamma series did not converge");
    }
    // upper continued fraction (modified Lentz)
    const double fpmin = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / fpmin, d = 1.0 / b, h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) return std::exp(lpre) * h;
    }
    throw numeric_error("incomplete gamma continued fraction did not converge");
}

inline constexpr double pois_scan_limit = 1e4;

inline std::int64_t pois_scan_cap(double lambda) {
    return static_cast<std::int64_t>(lambda + 18.0 * std::sqrt(lambda) + 120.0);
}

} // namespace detail

/// Poisson CDF. Compensated cumulative scan for lambda <= 1e4, regularized
/// incomplete gamma beyond.
inline double pois_cdf(double lambda, std::int64_t k) {
    if (!(lambda > 0.0)) throw std::domain_error("lambda must be positive");
    if (k < 0) return 0.0;
    if (lambda <= detail::pois_scan_limit && k <= detail::pois_scan_cap(lambda)) {
        NeumaierSum cum;
        for (std::int64_t i = 0; i <= k; ++i) cum.add(pois_pmf(lambda, i));
        return std::min(1.0, cum.value());
    }
    return detail::gamma_q(static_cast<double>(k) + 1.0, lambda);
}

/// Smallest k with Poisson CDF(k) >= q.
inline std::int64_t pois_quantile(double lambda, double q) {
    if (!(lambda > 0.0)) throw std::domain_error("lambda must be positive");
    check_open_probability(q, "q");
    if (lambda <= detail::pois_scan_limit) {
        const std::int64_t cap = detail::pois_scan_cap(lambda);
        NeumaierSum cum;
        for (std::int64_t k = 0; k <= cap; ++k) {
            cum.add(pois_pmf(lambda, k));
            if (cum.value() >= q) return k;
        }
        throw numeric_error("pois_quantile: q too close to 1 for scan");
    }
    // Normal-approximation bracket, then integer bisection on the gamma CDF.
    const double z = normal_quantile(q);
    const double guess = lambda + z * std::sqrt(lambda) + (z * z - 1.0) / 6.0;
    std::int64_t lo = std::max<std::int64_t>(-1, static_cast<std::int64_t>(guess - 8.0 * std::sqrt(lambda)) - 8);
    std::int64_t hi = static_cast<std::int64_t>(guess + 8.0 * std::sqrt(lambda)) + 8;
    while (lo >= 0 && pois_cdf(lambda, lo) >= q) {
        hi = lo;
        lo -= static_cast<std::int64_t>(8.0 * std::sqrt(lambda)) + 8;
    }
    if (lo < -1) lo = -1;
    while (pois_cdf(lambda, hi) < q) {
        lo = hi;
        hi += static_cast<std::int64_t>(8.0 * std::sqrt(lambda)) + 8;
    }
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (pois_cdf(lambda, mid) >= q)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

// ---------------------------------------------------------------------------
// Binomial tails on the regularized incomplete beta
// ---------------------------------------------------------------------------

namespace detail {

inline double betacf(double a, double b, double x) {
    const int maxit = 400;
    const double eps = 3e-16, fpmin = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::abs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= maxit; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) return h;
    }
    throw numeric_error("incomplete beta continued fraction did not converge");
}

} // namespace detail

/// Regularized incomplete beta I_x(a,b).
inline double inc_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0) throw std::domain_error("inc_beta parameters must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double lbt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log1p(-x);
    const double bt = std::exp(lbt);
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * detail::betacf(a, b, x) / a;
    return 1.0 - bt * detail::betacf(b, a, 1.0 - x) / b;
}

inline double binom_pmf(double n, double k, double p) {
    if (p <= 0.0) return (k == 0.0) ? 1.0 : 0.0;
    if (p >= 1.0) return (k == n) ? 1.0 : 0.0;
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                    k * std::log(p) + (n - k) * std::log1p(-p));
}

/// Pr(Bin(n,p) >= k) for k >= 1.
inline double binom_tail_ge(double n, double k, double p) {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    return inc_beta(k, n - k + 1.0, p);
}

/// Pr(Bin(n,p) <= k) for k <= n-1.
inline double binom_tail_le(double n, double k, double p) {
    if (p <= 0.0) return 1.0;
    if (p >= 1.0) return 0.0;
    return 1.0 - inc_beta(k + 1.0, n - k, p);
}

enum class TailSide { lower, upper };

namespace detail {

// Safeguarded Newton on a monotone-increasing f over a bracket [lo, hi] with
// f(lo) < 0 < f(hi). Converges on p to ~1e-14.
inline double solve_increasing(const std::function<double(double)>& f,
                               const std::function<double(double)>& fprime,
                               double lo, double hi, double start) {
    double p = std::clamp(start, lo + (hi - lo) * 1e-12, hi - (hi - lo) * 1e-12);
    for (int it = 0; it < 200; ++it) {
        const double v = f(p);
        if (v == 0.0) return p;
        if (v > 0.0)
            hi = p;
        else
            lo = p;
        const double dv = fprime(p);
        double pn = (dv > 0.0 && std::isfinite(dv)) ? p - v / dv : p;
        if (!(pn > lo && pn < hi)) pn = 0.5 * (lo + hi);
        if (std::abs(pn - p) < 1e-14 * std::max(1.0, std::abs(p)) || hi - lo < 1e-15)
            return pn;
        p = pn;
    }
    throw numeric_error("bracketed root search did not converge");
}

} // namespace detail

/// Solve the Clopper-Pearson tail equation for a binomial proportion:
/// lower side returns p with Pr(Bin(n,p) >= k) = alpha, upper side returns p
/// with Pr(Bin(n,p) <= k) = alpha. Bracketed Newton on the incomplete beta
/// relation, accurate to ~1e-12 on p.
inline double cp_tail_solve(std::int64_t n, std::int64_t k, double alpha, TailSide side) {
    if (n < 1 || k < 0 || k > n) throw std::domain_error("cp_tail_solve: bad counts");
    check_open_probability(alpha, "alpha");
    const double dn = static_cast<double>(n), dk = static_cast<double>(k);
    if (side == TailSide::lower) {
        if (k < 1) throw std::domain_error("cp_tail_solve lower side needs k >= 1");
        const double lcoef = std::lgamma(dn + 1.0) - std::lgamma(dk) - std::lgamma(dn - dk + 1.0);
        auto f = [&](double p) { return inc_beta(dk, dn - dk + 1.0, p) - alpha; };
        auto fp = [&](double p) {
            return std::exp(lcoef + (dk - 1.0) * std::log(p) + (dn - dk) * std::log1p(-p));
        };
        return detail::solve_increasing(f, fp, 0.0, 1.0, dk / dn);
    }
    if (k > n - 1) throw std::domain_error("cp_tail_solve upper side needs k <= n-1");
    const double lcoef = std::lgamma(dn + 1.0) - std::lgamma(dk + 1.0) - std::lgamma(dn - dk);
    auto f = [&](double p) { return inc_beta(dk + 1.0, dn - dk, p) - (1.0 - alpha); };
    auto fp = [&](double p) {
        return std::exp(lcoef + dk * std::log(p) + (dn - dk - 1.0) * std::log1p(-p));
    };
    return detail::solve_increasing(f, fp, 0.0, 1.0, std::min(0.9999, dk / dn + 0.2));
}

// ---------------------------------------------------------------------------
// Log-normal discretization for unconditional mixing
// ---------------------------------------------------------------------------

// One axis of the bivariate mixing grid: a discrete approximation of a
// log-normal law, support snapped onto multiples of the grid precision.
struct DiscretizedMixture {
    std::vector<double> support;
    std::vector<double> weights;
};

/// Discretize a log-normal with arithmetic mean `lambda` and geometric
/// standard deviation `gsd` into `n_points` equal-probability quantile
/// midpoints, each snapped to the nearest multiple of `grid_precision`
/// (duplicate snapped values merged by weight addition).
inline DiscretizedMixture lognormal_discretize(double lambda, double gsd,
                                               int n_points, double grid_precision) {
    if (!(lambda > 0.0)) throw std::domain_error("lambda must be positive");
    if (!(gsd > 1.0)) throw std::domain_error("gsd must be > 1");
    if (n_points < 1) throw std::domain_error("n_points must be positive");
    if (!(grid_precision > 0.0)) throw std::domain_error("grid_precision must be positive");

    const double sigma = std::log(gsd);
    const double mu = std::log(lambda) - 0.5 * sigma * sigma; // mean = lambda
    std::map<std::int64_t, double> cells;
    for (int j = 0; j < n_points; ++j) {
        const double u = (j + 0.5) / n_points;
        const double v = std::exp(mu + sigma * normal_quantile(u));
        std::int64_t idx = std::llround(v / grid_precision);
        if (idx < 1) idx = 1;
        cells[idx] += 1.0;
    }
    DiscretizedMixture m;
    double total = 0.0;
    for (const auto& [idx, w] : cells) total += w;
    for (const auto& [idx, w] : cells) {
        m.support.push_back(static_cast<double>(idx) * grid_precision);
        m.weights.push_back(w / total);
    }
    return m;
}

} // namespace ratecover::num
