#pragma once

// The nine confidence-interval estimators for the ratio of two Poisson
// rates. All conditional constructions reduce to a binomial problem in
// p = lambda2/(lambda1+lambda2) through the odds map p -> p/(1-p); the
// penalized fits (Firth, Kenne) solve adjusted score equations for the
// two-parameter log-linear model by Newton-Raphson.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "ratecover/errors.hpp"
#include "ratecover/numerics.hpp"

namespace ratecover::est {

// Observed event pair. Group 1 is the denominator of the ratio, group 2 the
// numerator. Fractional values are accepted internally (half-count
// equivalences); the public contract is integer counts.
struct Counts {
    double y1 = 0.0;
    double y2 = 0.0;
};

// Two-sided confidence level with the one-sided risk alpha = (1-level)/2
// shared by both tails.
struct ConfidenceSpec {
    double two_sided_level;

    explicit ConfidenceSpec(double level) : two_sided_level(level) {
        num::check_open_probability(level, "two_sided_level");
    }
    double alpha() const { return (1.0 - two_sided_level) / 2.0; }
};

enum class EstimatorKind {
    score,
    wald,
    ml_lr,
    wald_firth,
    lr1_firth,
    lr2_firth,
    wald_kenne,
    hirji,
    hirji_midp,
};

inline constexpr std::array<EstimatorKind, 9> all_kinds = {
    EstimatorKind::score,      EstimatorKind::wald,      EstimatorKind::ml_lr,
    EstimatorKind::wald_firth, EstimatorKind::lr1_firth, EstimatorKind::lr2_firth,
    EstimatorKind::wald_kenne, EstimatorKind::hirji,     EstimatorKind::hirji_midp,
};

inline const char* kind_name(EstimatorKind k) {
    switch (k) {
        case EstimatorKind::score: return "score";
        case EstimatorKind::wald: return "wald";
        case EstimatorKind::ml_lr: return "ml_lr";
        case EstimatorKind::wald_firth: return "wald_firth";
        case EstimatorKind::lr1_firth: return "lr1_firth";
        case EstimatorKind::lr2_firth: return "lr2_firth";
        case EstimatorKind::wald_kenne: return "wald_kenne";
        case EstimatorKind::hirji: return "hirji";
        case EstimatorKind::hirji_midp: return "hirji_midp";
    }
    return "?";
}

inline std::optional<EstimatorKind> kind_from_name(const std::string& s) {
    for (EstimatorKind k : all_kinds)
        if (s == kind_name(k)) return k;
    return std::nullopt;
}

// Interval on the rate-ratio scale plus the ML point estimate y2/y1 (the
// point is ML for every kind, including the penalized ones).
struct RatioInterval {
    double lower = 0.0;
    double upper = 0.0;
    double point_ml = 0.0;
};

struct FitResult {
    double beta0 = 0.0;     // log baseline rate
    double beta1 = 0.0;     // log rate ratio
    bool converged = false;
    int iterations = 0;
};

struct OffsetPair {
    double r1 = 1.0;
    double r2 = 1.0;
};

namespace detail {

inline void require_positive_counts(const Counts& c) {
    if (!(c.y1 > 0.0) || !(c.y2 > 0.0))
        throw separation_error("no CI is computed when either count is zero");
}

inline double softplus(double w) {
    return (w > 0.0) ? w + std::log1p(std::exp(-w)) : std::log1p(std::exp(w));
}

inline double logistic(double w) {
    return (w >= 0.0) ? 1.0 / (1.0 + std::exp(-w)) : std::exp(w) / (1.0 + std::exp(w));
}

// --- two-parameter log-linear model -------------------------------------
// Design rows x1 = (1,0), x2 = (1,1); mu1 = exp(b0), mu2 = exp(b0+b1).

struct Beta {
    double b0, b1;
};

inline std::array<double, 2> model_mus(Beta b) {
    return {std::exp(b.b0), std::exp(b.b0 + b.b1)};
}

inline std::array<double, 2> model_score(Beta b, const Counts& c) {
    const auto mu = model_mus(b);
    return {(c.y1 - mu[0]) + (c.y2 - mu[1]), c.y2 - mu[1]};
}

using Mat2 = std::array<std::array<double, 2>, 2>;

inline Mat2 model_info(Beta b) {
    const auto mu = model_mus(b);
    return {{{mu[0] + mu[1], mu[1]}, {mu[1], mu[1]}}};
}

inline Mat2 inv2(const Mat2& m) {
    const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (!(std::abs(det) > 0.0) || !std::isfinite(det))
        throw numeric_error("singular information matrix");
    return {{{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}}};
}

inline constexpr std::array<std::array<double, 2>, 2> design = {{{1.0, 0.0}, {1.0, 1.0}}};

// Jeffreys-penalty gradient 0.5 * tr(i^-1 dI/db_r). The third-cumulant
// tensor of this canonical model is sum_obs mu_obs x x x, so the trace
// contracts to sum_obs mu_obs x_r (x' i^-1 x).
inline std::array<double, 2> firth_adjustment(Beta b) {
    const auto mu = model_mus(b);
    const Mat2 ii = inv2(model_info(b));
    std::array<double, 2> adj = {0.0, 0.0};
    for (int obs = 0; obs < 2; ++obs) {
        const auto& x = design[obs];
        double quad = 0.0;
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 2; ++t) quad += ii[s][t] * x[s] * x[t];
        for (int r = 0; r < 2; ++r) adj[r] += 0.5 * mu[obs] * x[r] * quad;
    }
    return adj;
}

// Median-bias-reducing adjustment: the Jeffreys term minus i * btilde, where
// btilde_s = (1/3) / i^ss * sum_tuv i^st i^su i^sv kappa_tuv. With
// kappa = sum_obs mu x x x the contraction is sum_obs mu (i^-1_s . x)^3.
inline std::array<double, 2> kenne_adjustment(Beta b) {
    const auto mu = model_mus(b);
    const Mat2 info = model_info(b);
    const Mat2 ii = inv2(info);
    std::array<double, 2> adj = firth_adjustment(b);
    std::array<double, 2> btilde = {0.0, 0.0};
    for (int s = 0; s < 2; ++s) {
        double contraction = 0.0;
        for (int obs = 0; obs < 2; ++obs) {
            const double proj = ii[s][0] * design[obs][0] + ii[s][1] * design[obs][1];
            contraction += mu[obs] * proj * proj * proj;
        }
        btilde[s] = contraction / (3.0 * ii[s][s]);
    }
    for (int r = 0; r < 2; ++r) adj[r] -= info[r][0] * btilde[0] + info[r][1] * btilde[1];
    return adj;
}

inline double diff_step(double x) { return 1e-6 * std::max(1.0, std::abs(x)); }

// Newton-Raphson on a 2-d score with a central-difference Jacobian.
template <typename ScoreFn>
FitResult newton2(ScoreFn&& score, Beta start, const char* what) {
    Beta b = start;
    FitResult out;
    double best = std::numeric_limits<double>::infinity();
    int stall = 0;
    for (int it = 1; it <= 50; ++it) {
        const auto s = score(b);
        const double norm = std::max(std::abs(s[0]), std::abs(s[1]));
        if (!std::isfinite(norm)) throw numeric_error(std::string(what) + ": non-finite score");
        out.iterations = it;
        if (norm < 1e-13) {
            out.beta0 = b.b0;
            out.beta1 = b.b1;
            out.converged = true;
            return out;
        }
        if (norm < best * 0.5) {
            best = norm;
            stall = 0;
        } else if (++stall >= 3 && norm < 1e-10) {
            out.beta0 = b.b0;
            out.beta1 = b.b1;
            out.converged = true;
            return out;
        }
        Mat2 jac;
        for (int c = 0; c < 2; ++c) {
            const double h = diff_step(c == 0 ? b.b0 : b.b1);
            Beta hi = b, lo = b;
            (c == 0 ? hi.b0 : hi.b1) += h;
            (c == 0 ? lo.b0 : lo.b1) -= h;
            const auto shi = score(hi), slo = score(lo);
            for (int r = 0; r < 2; ++r) jac[r][c] = (shi[r] - slo[r]) / (2.0 * h);
        }
        const Mat2 ji = inv2(jac);
        const double d0 = ji[0][0] * s[0] + ji[0][1] * s[1];
        const double d1 = ji[1][0] * s[0] + ji[1][1] * s[1];
        b.b0 -= d0;
        b.b1 -= d1;
    }
    throw numeric_error(std::string(what) + ": Newton-Raphson did not converge");
}

// 1-d variant for intercept-only solves at a fixed slope.
template <typename ScoreFn>
FitResult newton1(ScoreFn&& score, double b0_start, double b1_fixed, const char* what) {
    double b0 = b0_start;
    FitResult out;
    out.beta1 = b1_fixed;
    double best = std::numeric_limits<double>::infinity();
    int stall = 0;
    for (int it = 1; it <= 50; ++it) {
        const double s = score(b0);
        if (!std::isfinite(s)) throw numeric_error(std::string(what) + ": non-finite score");
        out.iterations = it;
        const double norm = std::abs(s);
        if (norm < 1e-13) {
            out.beta0 = b0;
            out.converged = true;
            return out;
        }
        if (norm < best * 0.5) {
            best = norm;
            stall = 0;
        } else if (++stall >= 3 && norm < 1e-10) {
            out.beta0 = b0;
            out.converged = true;
            return out;
        }
        const double h = diff_step(b0);
        const double d = (score(b0 + h) - score(b0 - h)) / (2.0 * h);
        if (!(std::abs(d) > 0.0)) throw numeric_error(std::string(what) + ": flat score");
        b0 -= s / d;
    }
    throw numeric_error(std::string(what) + ": Newton-Raphson did not converge");
}

inline RatioInterval finish_interval(double lower, double upper, const Counts& c) {
    RatioInterval iv{lower, upper, c.y2 / c.y1};
    if (!std::isfinite(iv.lower) || !std::isfinite(iv.upper) || iv.lower < 0.0 ||
        iv.lower > iv.upper)
        throw numeric_error("estimator produced an invalid interval");
    return iv;
}

inline double odds(double p) { return p / (1.0 - p); }

} // namespace detail

/// Maximum-likelihood point estimate of the ratio.
inline double point_ml(const Counts& c) {
    detail::require_positive_counts(c);
    return c.y2 / c.y1;
}

/// Wald interval: exp(log(y2/y1) +- z sqrt(1/y1 + 1/y2)).
inline RatioInterval ci_wald(const Counts& c, const ConfidenceSpec& spec) {
    detail::require_positive_counts(c);
    const double z = num::normal_quantile(1.0 - spec.alpha());
    const double se = std::sqrt(1.0 / c.y1 + 1.0 / c.y2);
    const double lp = std::log(c.y2 / c.y1);
    return detail::finish_interval(std::exp(lp - z * se), std::exp(lp + z * se), c);
}

/// Score interval: Wilson bounds for p = y2/(y1+y2) mapped through the odds.
inline RatioInterval ci_score(const Counts& c, const ConfidenceSpec& spec) {
    detail::require_positive_counts(c);
    const double z = num::normal_quantile(1.0 - spec.alpha());
    const double n = c.y1 + c.y2;
    const double phat = c.y2 / n;
    const double zz = z * z;
    const double denom = 1.0 + zz / n;
    const double center = (phat + zz / (2.0 * n)) / denom;
    const double half =
        (z / denom) * std::sqrt(phat * (1.0 - phat) / n + zz / (4.0 * n * n));
    return detail::finish_interval(detail::odds(center - half), detail::odds(center + half), c);
}

namespace detail {

// Conditional log-likelihood in the odds w = log(x): y2 w - n log(1+e^w).
inline double cond_loglik(double w, double y2, double n) {
    return y2 * w - n * softplus(w);
}

// One root of the deviance equation 2[l(what) - l(w)] = qchi, on the side
// s = -1 (lower) or +1 (upper) of the maximizer. Newton in w with bracket
// safeguards; the deviance is strictly convex in w.
inline double lr_root(double y2, double n, double what, double qchi, int s,
                      double start_offset, const char* what_name) {
    const double lhat = cond_loglik(what, y2, n);
    auto f = [&](double w) { return 2.0 * (lhat - cond_loglik(w, y2, n)) - qchi; };
    auto fp = [&](double w) { return 2.0 * (n * logistic(w) - y2); };

    double inner = what;           // f(inner) = -qchi < 0
    double outer = what + s * std::max(start_offset, 1e-3);
    for (int i = 0; i < 200 && f(outer) <= 0.0; ++i) {
        inner = outer;
        outer = what + 2.0 * (outer - what);
    }
    if (f(outer) <= 0.0) throw numeric_error(std::string(what_name) + ": no bracket");

    double w = outer;
    for (int it = 0; it < 50; ++it) {
        const double v = f(w);
        if (std::abs(v) < 1e-10) return w;
        if (v > 0.0)
            outer = w;
        else
            inner = w;
        double wn = w - v / fp(w);
        if (!std::isfinite(wn) || (wn - inner) * (wn - outer) >= 0.0)
            wn = 0.5 * (inner + outer);
        if (std::abs(wn - w) < 1e-14 * std::max(1.0, std::abs(w))) return wn;
        w = wn;
    }
    throw numeric_error(std::string(what_name) + ": likelihood-ratio inversion did not converge");
}

} // namespace detail

/// Profile-likelihood-ratio interval, by Newton inversion of the conditional
/// deviance after the change of variable w = log(x).
inline RatioInterval ci_ml_lr(const Counts& c, const ConfidenceSpec& spec) {
    detail::require_positive_counts(c);
    const double n = c.y1 + c.y2;
    const double what = std::log(c.y2 / c.y1);
    const double qchi = num::chisq1_quantile(spec.two_sided_level);
    const double z = num::normal_quantile(1.0 - spec.alpha());
    const double wald_off = z * std::sqrt(1.0 / c.y1 + 1.0 / c.y2);
    const double wl = detail::lr_root(c.y2, n, what, qchi, -1, wald_off, "ci_ml_lr");
    const double wu = detail::lr_root(c.y2, n, what, qchi, +1, wald_off, "ci_ml_lr");
    return detail::finish_interval(std::exp(wl), std::exp(wu), c);
}

/// Firth penalized-likelihood fit of the two-parameter model. The penalized
/// score is solved by Newton-Raphson with a numerically differentiated
/// Jacobian; at the optimum mu_i = y_i + 1/2.
inline FitResult fit_firth(const Counts& c) {
    if (!(c.y1 > 0.0) && !(c.y2 > 0.0))
        throw separation_error("fit_firth requires at least one positive count");
    auto score = [&](detail::Beta b) {
        auto s = detail::model_score(b, c);
        const auto adj = detail::firth_adjustment(b);
        s[0] += adj[0];
        s[1] += adj[1];
        return s;
    };
    const double a1 = std::max(c.y1, 0.25), a2 = std::max(c.y2, 0.25);
    return detail::newton2(score, detail::Beta{std::log(a1), std::log(a2 / a1)}, "fit_firth");
}

/// Firth fit with the slope held fixed: maximizes the same penalized
/// likelihood over the intercept alone.
inline FitResult fit_firth_constrained(const Counts& c, double beta1_fixed) {
    if (!(c.y1 > 0.0) && !(c.y2 > 0.0))
        throw separation_error("fit_firth_constrained requires at least one positive count");
    auto score = [&](double b0) {
        const detail::Beta b{b0, beta1_fixed};
        return detail::model_score(b, c)[0] + detail::firth_adjustment(b)[0];
    };
    const double start =
        std::log(std::max(c.y1 + c.y2, 0.5)) - detail::softplus(beta1_fixed);
    auto fit = detail::newton1(score, start, beta1_fixed, "fit_firth_constrained");
    return fit;
}

/// Wald interval around the Firth slope with half-count standard error.
inline RatioInterval ci_wald_firth(const Counts& c, const ConfidenceSpec& spec) {
    detail::require_positive_counts(c);
    const auto fit = fit_firth(c);
    const double z = num::normal_quantile(1.0 - spec.alpha());
    const double se = std::sqrt(1.0 / (c.y1 + 0.5) + 1.0 / (c.y2 + 0.5));
    return detail::finish_interval(std::exp(fit.beta1 - z * se), std::exp(fit.beta1 + z * se), c);
}

namespace detail {

inline double poisson_loglik(Beta b, const Counts& c) {
    const auto mu = model_mus(b);
    return c.y1 * b.b0 - mu[0] + c.y2 * (b.b0 + b.b1) - mu[1];
}

inline double jeffreys_penalty(Beta b) {
    const Mat2 i = model_info(b);
    const double det = i[0][0] * i[1][1] - i[0][1] * i[1][0];
    return 0.5 * std::log(det);
}

// Inverts 2[obj(free fit) - obj(constrained fit at b)] = qchi on each side,
// where obj is the plain or penalized log-likelihood evaluated at Firth
// fits. Bracketed Newton on b with a central-difference derivative.
template <typename Objective>
RatioInterval lr_firth_interval(const Counts& c, const ConfidenceSpec& spec,
                                Objective&& obj, const char* what_name) {
    const auto free_fit = fit_firth(c);
    const double obj_free = obj(Beta{free_fit.beta0, free_fit.beta1});
    const double qchi = num::chisq1_quantile(spec.two_sided_level);
    auto stat = [&](double b1) {
        const auto con = fit_firth_constrained(c, b1);
        return 2.0 * (obj_free - obj(Beta{con.beta0, con.beta1}));
    };
    const double b_ml = std::log(c.y2 / c.y1);
    const double z = num::normal_quantile(1.0 - spec.alpha());
    const double off = z * std::sqrt(1.0 / (c.y1 + 0.5) + 1.0 / (c.y2 + 0.5));

    auto solve_side = [&](int s) {
        double inner = (s > 0) ? std::max(free_fit.beta1, b_ml) : std::min(free_fit.beta1, b_ml);
        double outer = inner + s * std::max(off, 1e-3);
        auto f = [&](double b1) { return stat(b1) - qchi; };
        for (int i = 0; i < 200 && f(outer) <= 0.0; ++i) {
            inner = outer;
            outer = inner + s * std::max(off, 1e-3) * std::pow(2.0, i + 1);
        }
        if (f(outer) <= 0.0) throw numeric_error(std::string(what_name) + ": no bracket");
        double b = outer;
        for (int it = 0; it < 60; ++it) {
            const double v = f(b);
            if (std::abs(v) < 1e-10) return b;
            if (v > 0.0)
                outer = b;
            else
                inner = b;
            const double h = diff_step(b);
            const double d = (f(b + h) - f(b - h)) / (2.0 * h);
            double bn = (std::isfinite(d) && d != 0.0) ? b - v / d : 0.5 * (inner + outer);
            if ((bn - inner) * (bn - outer) >= 0.0) bn = 0.5 * (inner + outer);
            if (std::abs(bn - b) < 1e-13 * std::max(1.0, std::abs(b))) return bn;
            b = bn;
        }
        throw numeric_error(std::string(what_name) + ": inversion did not converge");
    };
    const double lo = solve_side(-1);
    const double hi = solve_side(+1);
    return finish_interval(std::exp(lo), std::exp(hi), c);
}

} // namespace detail

/// LR interval from the unpenalized log-likelihood evaluated at Firth fits.
inline RatioInterval ci_lr1_firth(const Counts& c, const ConfidenceSpec& spec) {
    detail::require_positive_counts(c);
    return detail::lr_firth_interval(
        c, spec, [&](detail::Beta b) { return detail::poisson_loglik(b, c); }, "ci_lr1_firth");
}

/// LR interval from the penalized log-likelihood evaluated at Firth fits.
inline RatioInterval ci_lr2_firth(const Counts& c, const ConfidenceSpec& spec) {
    detail::require_positive_counts(c);
    return detail::lr_firth_interval(
        c, spec,
        [&](detail::Beta b) { return detail::poisson_loglik(b, c) + detail::jeffreys_penalty(b); },
        "ci_lr2_firth");
}

/// Median-bias-reducing fit: solves the adjusted score equations whose
/// solution makes each coefficient median-unbiased to third order. For this
/// model the fitted means come out at mu_i = y_i + 1/6.
inline FitResult fit_kenne(const Counts& c) {
    if (!(c.y1 > 0.0) && !(c.y2 > 0.0))
        throw separation_error("fit_kenne requires at least one positive count");
    auto score = [&](detail::Beta b) {
        auto s = detail::model_score(b, c);
        const auto adj = detail::kenne_adjustment(b);
        s[0] += adj[0];
        s[1] += adj[1];
        return s;
    };
    const double a1 = std::max(c.y1, 0.25), a2 = std::max(c.y2, 0.25);
    return detail::newton2(score, detail::Beta{std::log(a1), std::log(a2 / a1)}, "fit_kenne");
}

/// Wald interval around the Kenne slope, standard error from the inverse
/// expected information at the fit.
inline RatioInterval ci_wald_kenne(const Counts& c, const ConfidenceSpec& spec) {
    detail::require_positive_counts(c);
    const auto fit = fit_kenne(c);
    const double z = num::normal_quantile(1.0 - spec.alpha());
    const auto ii = detail::inv2(detail::model_info(detail::Beta{fit.beta0, fit.beta1}));
    const double se = std::sqrt(ii[1][1]);
    return detail::finish_interval(std::exp(fit.beta1 - z * se), std::exp(fit.beta1 + z * se), c);
}

namespace detail {

inline std::int64_t as_count(double y, const char* what) {
    const double r = std::round(y);
    if (std::abs(y - r) > 1e-9)
        throw std::domain_error(std::string(what) + " requires integer counts");
    return static_cast<std::int64_t>(r);
}

} // namespace detail

/// Exact (Clopper-Pearson) interval mapped through the odds.
inline RatioInterval ci_hirji(const Counts& c, const ConfidenceSpec& spec) {
    detail::require_positive_counts(c);
    const std::int64_t y1 = detail::as_count(c.y1, "ci_hirji");
    const std::int64_t y2 = detail::as_count(c.y2, "ci_hirji");
    const std::int64_t n = y1 + y2;
    const double pl = num::cp_tail_solve(n, y2, spec.alpha(), num::TailSide::lower);
    const double pu = num::cp_tail_solve(n, y2, spec.alpha(), num::TailSide::upper);
    return detail::finish_interval(detail::odds(pl), detail::odds(pu), c);
}

/// Exact interval with the mid-P tail convention. Both bounds solve
/// M(p) = 0.5 [Pr(Bin >= k) + Pr(Bin >= k+1)] = alpha resp. 1 - alpha;
/// M is strictly increasing in p, so a bracketed Newton applies directly.
inline RatioInterval ci_hirji_midp(const Counts& c, const ConfidenceSpec& spec) {
    detail::require_positive_counts(c);
    const std::int64_t y1 = detail::as_count(c.y1, "ci_hirji_midp");
    const std::int64_t y2 = detail::as_count(c.y2, "ci_hirji_midp");
    const double n = static_cast<double>(y1 + y2);
    const double k = static_cast<double>(y2);
    const double lc1 = std::lgamma(n + 1.0) - std::lgamma(k) - std::lgamma(n - k + 1.0);
    const double lc2 = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k);
    auto m = [&](double p) {
        return 0.5 * (num::inc_beta(k, n - k + 1.0, p) + num::inc_beta(k + 1.0, n - k, p));
    };
    auto mp = [&](double p) {
        return 0.5 * (std::exp(lc1 + (k - 1.0) * std::log(p) + (n - k) * std::log1p(-p)) +
                      std::exp(lc2 + k * std::log(p) + (n - k - 1.0) * std::log1p(-p)));
    };
    const double alpha = spec.alpha();
    const double pl = num::detail::solve_increasing([&](double p) { return m(p) - alpha; }, mp,
                                                    0.0, 1.0, k / n);
    const double pu = num::detail::solve_increasing(
        [&](double p) { return m(p) - (1.0 - alpha); }, mp, 0.0, 1.0,
        std::min(0.9999, k / n + 0.2));
    return detail::finish_interval(detail::odds(pl), detail::odds(pu), c);
}

/// Dispatch over the nine kinds. A zero count is a separation error for
/// every kind: no CI is computed when either observed count is zero.
inline RatioInterval compute_ci(EstimatorKind kind, const Counts& c, const ConfidenceSpec& spec) {
    detail::require_positive_counts(c);
    switch (kind) {
        case EstimatorKind::score: return ci_score(c, spec);
        case EstimatorKind::wald: return ci_wald(c, spec);
        case EstimatorKind::ml_lr: return ci_ml_lr(c, spec);
        case EstimatorKind::wald_firth: return ci_wald_firth(c, spec);
        case EstimatorKind::lr1_firth: return ci_lr1_firth(c, spec);
        case EstimatorKind::lr2_firth: return ci_lr2_firth(c, spec);
        case EstimatorKind::wald_kenne: return ci_wald_kenne(c, spec);
        case EstimatorKind::hirji: return ci_hirji(c, spec);
        case EstimatorKind::hirji_midp: return ci_hirji_midp(c, spec);
    }
    throw std::domain_error("unknown estimator kind");
}

/// Rescale a count-ratio interval to the rate-ratio scale by r1/r2.
inline RatioInterval apply_offsets(const RatioInterval& iv, const OffsetPair& off) {
    if (!(off.r1 > 0.0) || !(off.r2 > 0.0))
        throw std::domain_error("offsets must be strictly positive");
    const double f = off.r1 / off.r2;
    return {iv.lower * f, iv.upper * f, iv.point_ml * f};
}

} // namespace ratecover::est
