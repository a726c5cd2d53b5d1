#include "relab/frontier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "relab/error.hpp"
#include "relab/parallel.hpp"
#include "relab/random.hpp"

namespace relab {

namespace {

// Expectations of phi(X), phi(X+1)-phi(X) and the second difference for
// X ~ Poisson(lambda), where phi(m) = (k m / N) ln(N / (k m)).
struct ClassMoments {
    double f = 0.0;
    double df = 0.0;
    double d2f = 0.0;
};

class PoissonClass {
public:
    PoissonClass(std::int64_t N, std::int64_t k) : N_(static_cast<double>(N)), k_(static_cast<double>(k)) {}

    double phi(double m) const {
        if (m <= 0.0) return 0.0;
        const double x = k_ * m / N_;
        return -x * std::log(x);
    }

    ClassMoments moments(double lambda) const {
        ClassMoments out;
        if (lambda <= 0.0) {
            out.df = phi(1.0);
            out.d2f = phi(2.0) - 2.0 * phi(1.0);
            return out;
        }
        const double spread = 12.0 * std::sqrt(lambda) + 10.0;
        const double lo = std::max(0.0, std::floor(lambda - spread));
        const double hi = std::ceil(lambda + spread);
        double p = std::exp(-lambda + lo * std::log(lambda) - std::lgamma(lo + 1.0));
        for (double m = lo; m <= hi; m += 1.0) {
            const double p0 = phi(m), p1 = phi(m + 1.0), p2 = phi(m + 2.0);
            out.f += p * p0;
            out.df += p * (p1 - p0);
            out.d2f += p * (p2 - 2.0 * p1 + p0);
            p *= lambda / (m + 1.0);
        }
        return out;
    }

    double slope0() const { return phi(1.0); }  // s_k = (k/N) ln(N/k)

private:
    double N_;
    double k_;
};

// Maximises f(lambda) + (mu s_k - nu k) lambda over [0, cap]; f is concave.
double solve_class(const PoissonClass& cls, std::int64_t N, std::int64_t k, double mu, double nu,
                   double warm) {
    const double s = cls.slope0();
    const double target = nu * static_cast<double>(k) - mu * s;  // root of f'(lambda) = target
    if (cls.slope0() <= target) return 0.0;
    const double cap = static_cast<double>(N) / static_cast<double>(k) + 1.0;
    if (cls.moments(cap).df >= target) return cap;
    double a = 0.0, b = cap;
    double x = (warm > 0.0 && warm < cap) ? warm : 0.5 * cap;
    for (int it = 0; it < 200; ++it) {
        const ClassMoments m = cls.moments(x);
        const double g = m.df - target;
        if (g > 0.0) a = x; else b = x;
        double next = (m.d2f < 0.0) ? x - g / m.d2f : 0.5 * (a + b);
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        if (std::fabs(next - x) <= 1e-14 * std::max(1.0, x) || b - a <= 1e-14 * std::max(1.0, b)) return next;
        x = next;
    }
    return x;
}

}  // namespace

std::vector<double> default_mu_grid() {
    std::vector<double> grid(60);
    const double lo = std::log(0.05), hi = std::log(20.0);
    for (int i = 0; i < 60; ++i) grid[i] = std::exp(lo + (hi - lo) * i / 59.0);
    return grid;
}

double expected_resolution(std::int64_t N, const std::vector<double>& mbar) {
    double acc = 0.0;
    for (std::size_t i = 0; i < mbar.size(); ++i)
        acc += mbar[i] * PoissonClass(N, static_cast<std::int64_t>(i) + 1).slope0();
    return acc;
}

double expected_relevance(std::int64_t N, const std::vector<double>& mbar) {
    double acc = 0.0;
    for (std::size_t i = 0; i < mbar.size(); ++i)
        if (mbar[i] > 0.0) acc += PoissonClass(N, static_cast<std::int64_t>(i) + 1).moments(mbar[i]).f;
    return acc;
}

FrontierSolution frontier_solve(std::int64_t N, double mu) {
    if (N < 2) fail(Errc::BadArgument, "frontier needs N >= 2");
    if (!(mu > -1.0) || !std::isfinite(mu)) fail(Errc::BadArgument, "mu must be finite and > -1");

    std::vector<PoissonClass> classes;
    classes.reserve(static_cast<std::size_t>(N));
    for (std::int64_t k = 1; k <= N; ++k) classes.emplace_back(N, k);

    std::vector<double> lam(static_cast<std::size_t>(N), 0.0);
    auto fill = [&](double nu) {
        double mass = 0.0;
        for (std::int64_t k = 1; k <= N; ++k) {
            auto& l = lam[static_cast<std::size_t>(k - 1)];
            l = solve_class(classes[static_cast<std::size_t>(k - 1)], N, k, mu, nu, l);
            mass += static_cast<double>(k) * l;
        }
        return mass - static_cast<double>(N);
    };

    // Above nu_hi no class is active, so the residual is exactly -N.
    const double nu_hi0 = (1.0 + mu) * std::log(static_cast<double>(N)) / static_cast<double>(N) * (1.0 + 1e-9);
    double hi = nu_hi0;
    double lo = hi * 1e-2;
    int expand = 0;
    bool geometric = true;
    while (fill(lo) < 0.0) {
        lo *= 1e-2;
        if (++expand > 20) {
            // Small N with mu < 0 can need a non-positive multiplier; move
            // to a linear bracket on the negative side.
            geometric = false;
            hi = lo;
            lo = -nu_hi0;
            int grow = 0;
            while (fill(lo) < 0.0) {
                lo *= 2.0;
                if (++grow > 60) {
                    std::ostringstream msg;
                    msg << "frontier multiplier bracket failed for mu=" << mu << " below " << hi;
                    fail(Errc::NumericalFailure, msg.str());
                }
            }
            break;
        }
    }
    double nu = lo;
    for (int it = 0; it < 400; ++it) {
        nu = geometric ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
        const double r = fill(nu);
        if (std::fabs(r) <= 1e-11 * static_cast<double>(N)) break;
        if (r > 0.0) lo = nu; else hi = nu;
        if (geometric ? hi / lo - 1.0 < 1e-15 : hi - lo <= 1e-15 * std::max(std::fabs(lo), std::fabs(hi))) break;
    }
    const double resid = fill(nu);
    if (std::fabs(resid) > 1e-7 * static_cast<double>(N)) {
        std::ostringstream msg;
        msg << "frontier normalisation did not converge for mu=" << mu << " on [" << lo << ", " << hi
            << "], residual " << resid;
        fail(Errc::NumericalFailure, msg.str());
    }

    FrontierSolution sol;
    sol.mbar = lam;
    sol.nu = nu;
    sol.resolution = expected_resolution(N, lam);
    sol.relevance = expected_relevance(N, lam);
    return sol;
}

FrontierCurve max_relevance_frontier(std::int64_t N, const std::vector<double>& mu_grid) {
    if (N < 2) fail(Errc::BadArgument, "frontier needs N >= 2");
    if (mu_grid.empty()) fail(Errc::BadArgument, "empty mu grid");
    for (double mu : mu_grid)
        if (!(mu > -1.0) || !std::isfinite(mu)) fail(Errc::BadArgument, "mu grid values must be finite and > -1");
    FrontierCurve curve;
    curve.N = N;
    curve.points.resize(mu_grid.size());
    parallel_for(mu_grid.size(), [&](std::size_t i) {
        const FrontierSolution s = frontier_solve(N, mu_grid[i]);
        curve.points[i] = FrontierPoint{mu_grid[i], s.resolution, s.relevance, s.mbar.front()};
    });
    // Resolution grows monotonically with mu and saturates at ln N, where
    // rounding would scramble a sort on resolution itself.
    std::stable_sort(curve.points.begin(), curve.points.end(),
                     [](const FrontierPoint& a, const FrontierPoint& b) { return a.mu < b.mu; });
    return curve;
}

double frontier_relevance_at(const FrontierCurve& curve, double resolution) {
    // The frontier's exact extremes, (0,0) for a single state and
    // (ln N, 0) for all singletons, bracket the computed points.
    std::vector<RRPoint> pts;
    pts.push_back({0.0, 0.0});
    for (const auto& p : curve.points) pts.push_back({p.resolution, p.relevance});
    pts.push_back({std::log(static_cast<double>(curve.N)), 0.0});
    std::stable_sort(pts.begin(), pts.end(), [](const RRPoint& a, const RRPoint& b) { return a.resolution < b.resolution; });
    if (resolution <= pts.front().resolution) return pts.front().relevance;
    if (resolution >= pts.back().resolution) return pts.back().relevance;
    auto it = std::upper_bound(pts.begin(), pts.end(), resolution,
                               [](double r, const RRPoint& p) { return r < p.resolution; });
    const RRPoint& b = *it;
    const RRPoint& a = *(it - 1);
    if (b.resolution == a.resolution) return std::max(a.relevance, b.relevance);
    const double t = (resolution - a.resolution) / (b.resolution - a.resolution);
    return a.relevance + t * (b.relevance - a.relevance);
}

BaselineCurve random_baseline(std::int64_t N, const std::vector<std::int64_t>& alphabet_sizes, int replicas,
                              std::uint64_t seed) {
    if (N < 1) fail(Errc::BadArgument, "N must be positive");
    if (replicas < 1) fail(Errc::BadArgument, "replicas must be >= 1");
    for (auto s : alphabet_sizes)
        if (s < 1) fail(Errc::BadArgument, "alphabet sizes must be positive");
    BaselineCurve out;
    out.N = N;
    out.points.resize(alphabet_sizes.size());
    parallel_for(alphabet_sizes.size(), [&](std::size_t i) {
        const std::int64_t S = alphabet_sizes[i];
        Rng rng(derive_seed(seed, i));
        double sr = 0, sr2 = 0, sk = 0, sk2 = 0;
        std::vector<std::int64_t> counts;
        for (int r = 0; r < replicas; ++r) {
            counts.assign(static_cast<std::size_t>(std::min<std::int64_t>(S, N * 64 + 1)), 0);
            std::vector<std::uint64_t> draws;
            if (static_cast<std::int64_t>(counts.size()) == S) {
                for (std::int64_t n = 0; n < N; ++n) ++counts[uniform_index(rng, static_cast<std::uint64_t>(S))];
            } else {
                // Huge alphabets: tally draws by sorting instead of a dense array.
                draws.resize(static_cast<std::size_t>(N));
                for (auto& d : draws) d = uniform_index(rng, static_cast<std::uint64_t>(S));
                std::sort(draws.begin(), draws.end());
                counts.clear();
                for (std::size_t j = 0; j < draws.size();) {
                    std::size_t e = j;
                    while (e < draws.size() && draws[e] == draws[j]) ++e;
                    counts.push_back(static_cast<std::int64_t>(e - j));
                    j = e;
                }
            }
            const auto e = entropy_summary(degeneracy_from_counts(counts));
            sr += e.resolution;
            sr2 += e.resolution * e.resolution;
            sk += e.relevance;
            sk2 += e.relevance * e.relevance;
        }
        const double n = replicas;
        BaselinePoint p;
        p.alphabet = S;
        p.resolution = sr / n;
        p.relevance = sk / n;
        if (replicas > 1) {
            p.resolution_se = std::sqrt(std::max(0.0, (sr2 / n - p.resolution * p.resolution) / (n - 1.0)));
            p.relevance_se = std::sqrt(std::max(0.0, (sk2 / n - p.relevance * p.relevance) / (n - 1.0)));
        }
        out.points[i] = p;
    });
    return out;
}

ExponentFit fit_exponent(const DegeneracyProfile& deg, const FitOptions& opts) {
    validate(deg);
    const double N = static_cast<double>(deg.N);
    std::vector<double> x, y, w;
    for (const auto& [k, mk] : deg.m) {
        const double mass = static_cast<double>(k * mk);
        if (opts.min_mass && mass < 2.0) continue;
        x.push_back(std::log(static_cast<double>(k) / N));
        y.push_back(std::log(mass));
        w.push_back(mass);
    }
    if (x.size() < 2) fail(Errc::Degenerate, "exponent fit needs at least two occupied frequency classes");

    double sw = 0, sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sw += w[i];
        sx += w[i] * x[i];
        sy += w[i] * y[i];
    }
    const double mx = sx / sw, my = sy / sw;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += w[i] * (x[i] - mx) * (x[i] - mx);
        sxy += w[i] * (x[i] - mx) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    ExponentFit fit;
    fit.mu = -slope;
    fit.intercept = my - slope * mx;
    fit.points_used = static_cast<int>(x.size());
    if (x.size() > 2) {
        // Weights are normalised to the number of points so that the residual
        // variance keeps the scale of an unweighted fit.
        const double scale = static_cast<double>(x.size()) / sw;
        double rss = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = y[i] - (fit.intercept + slope * x[i]);
            rss += scale * w[i] * r * r;
        }
        const double sigma2 = rss / static_cast<double>(x.size() - 2);
        fit.stderr_mu = std::sqrt(sigma2 / (scale * sxx));
    } else {
        fit.stderr_mu = std::numeric_limits<double>::quiet_NaN();
    }
    return fit;
}

double slope_exponent(const std::vector<RRPoint>& curve, double at_resolution) {
    if (curve.size() < 3) fail(Errc::BadArgument, "slope needs at least 3 curve points");
    std::vector<RRPoint> pts = curve;
    std::stable_sort(pts.begin(), pts.end(), [](const RRPoint& a, const RRPoint& b) { return a.resolution < b.resolution; });
    if (!(at_resolution >= pts.front().resolution && at_resolution <= pts.back().resolution))
        fail(Errc::BadArgument, "resolution outside the curve range");

    // Least-squares slope over the two nearest points on each side (plus any
    // point sitting exactly at the requested resolution).
    std::vector<RRPoint> use;
    std::vector<RRPoint> left, right;
    for (const auto& p : pts) {
        if (p.resolution < at_resolution) left.push_back(p);
        else if (p.resolution > at_resolution) right.push_back(p);
        else use.push_back(p);
    }
    for (std::size_t i = 0; i < 2 && i < left.size(); ++i) use.push_back(left[left.size() - 1 - i]);
    for (std::size_t i = 0; i < 2 && i < right.size(); ++i) use.push_back(right[i]);
    double mx = 0, my = 0;
    for (const auto& p : use) {
        mx += p.resolution;
        my += p.relevance;
    }
    mx /= static_cast<double>(use.size());
    my /= static_cast<double>(use.size());
    double sxx = 0, sxy = 0;
    for (const auto& p : use) {
        sxx += (p.resolution - mx) * (p.resolution - mx);
        sxy += (p.resolution - mx) * (p.relevance - my);
    }
    if (!(sxx > 0.0)) fail(Errc::Degenerate, "curve points share one resolution value");
    return -sxy / sxx;
}

ZipfGap zipf_gap(const DegeneracyProfile& deg, const FitOptions& opts) {
    validate(deg);
    if (deg.N < 2) fail(Errc::BadArgument, "zipf gap needs N >= 2");
    const ExponentFit fit = fit_exponent(deg, opts);
    std::vector<double> grid;
    for (double mu = -0.9; mu < -0.05; mu += 0.1) grid.push_back(mu);
    for (double mu : default_mu_grid()) grid.push_back(mu);
    const FrontierCurve curve = max_relevance_frontier(deg.N, grid);
    const EntropySummary e = entropy_summary(deg);
    ZipfGap g;
    g.mu_hat = fit.mu;
    g.mu_deviation = std::fabs(fit.mu - 1.0);
    g.resolution = e.resolution;
    g.relevance = e.relevance;
    g.frontier_relevance = frontier_relevance_at(curve, e.resolution);
    g.frontier_deficit = g.frontier_relevance - e.relevance;
    return g;
}

ZipfGap zipf_gap(const Sample& sample, const FitOptions& opts) {
    return zipf_gap(build_degeneracy(build_frequency(sample)), opts);
}

}  // namespace relab
