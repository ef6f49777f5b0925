#include "pact/best_response.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace pact {

namespace {

std::vector<double> wage_utilities(const WageSchedule& w, const UtilityFn& u) {
    std::vector<double> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!u.in_domain(w[i]))
            throw DomainError("best response: wage outside the domain of u", static_cast<std::ptrdiff_t>(i));
        out[i] = u.value(w[i]);
    }
    return out;
}

BestResponse vertex_scan(std::span<const double> scores, std::span<const double> z_values,
                         const OutputGrid& grid, bool fill_ties) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i)
        if (scores[i] >= scores[best]) best = i;  // >= keeps the largest maximizer
    const double max_score = scores[best];

    BestResponse br{make_dirac(grid, best), max_score, z_values[best], {}};
    if (fill_ties) {
        for (std::size_t i = 0; i < scores.size(); ++i)
            if (scores[i] >= max_score - kTieTolerance) br.tie_set.push_back(i);
        best = br.tie_set.back();
        br.argmax_dist = make_dirac(grid, best);
        br.mean_kernel = z_values[best];
    }
    return br;
}

}  // namespace

BestResponse best_response_linear(const WageSchedule& w, double theta, const CostModel& model,
                                  const UtilityFn& u) {
    if (model.family() != CostFamily::linear) throw Error("best_response_linear: linear cost family required");
    const auto util = wage_utilities(w, u);
    const auto z = model.z_values();
    const double c = 1.0 - theta;
    std::vector<double> scores(util.size());
    for (std::size_t i = 0; i < util.size(); ++i) scores[i] = util[i] - c * z[i];
    return vertex_scan(scores, z, model.grid(), /*fill_ties=*/true);
}

std::vector<std::size_t> upper_concave_envelope(std::span<const double> m, std::span<const double> h) {
    if (m.size() != h.size() || m.empty()) throw Error("upper_concave_envelope: bad input lengths");
    std::vector<std::size_t> hull;
    hull.reserve(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        // Pop the last vertex while it lies strictly below the chord from its
        // predecessor to point i; collinear vertices stay.
        while (hull.size() >= 2) {
            const std::size_t a = hull[hull.size() - 2];
            const std::size_t b = hull[hull.size() - 1];
            const double cross = (m[b] - m[a]) * (h[i] - h[a]) - (h[b] - h[a]) * (m[i] - m[a]);
            if (cross > 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }
    return hull;
}

BestResponse best_response_composite(const WageSchedule& w, double theta, const CostModel& model,
                                     const UtilityFn& u) {
    const auto util = wage_utilities(w, u);
    const auto z = model.z_values();
    const OutputGrid& grid = model.grid();
    const double c = 1.0 - theta;
    const OuterFn& K = model.outer();

    if (z.back() - z.front() < 1e-15) {
        // Degenerate kernel range: cost is action-independent.
        std::vector<double> scores(util.begin(), util.end());
        BestResponse br = vertex_scan(scores, z, grid, /*fill_ties=*/false);
        br.value -= c * K.value(z.front());
        return br;
    }

    const auto hull = upper_concave_envelope(z, util);

    const auto hull_value = [&](double m) {
        // Interpolated envelope height minus cost at mean kernel value m.
        auto it = std::upper_bound(hull.begin(), hull.end(), m,
                                   [&](double mv, std::size_t idx) { return mv < z[idx]; });
        std::size_t seg_hi = (it == hull.end()) ? hull.size() - 1 : static_cast<std::size_t>(it - hull.begin());
        if (seg_hi == 0) seg_hi = 1;
        const std::size_t a = hull[seg_hi - 1];
        const std::size_t b = hull[seg_hi];
        const double t = (m - z[a]) / (z[b] - z[a]);
        const double H = util[a] + t * (util[b] - util[a]);
        return H - c * K.value(m);
    };

    double lo = z.front(), hi = z.back();
    for (int iter = 0; iter < 300 && hi - lo > kTernaryTolerance; ++iter) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (hull_value(m1) < hull_value(m2))
            lo = m1;
        else
            hi = m2;
    }
    const double m_search = 0.5 * (lo + hi);
    const double search_value = hull_value(m_search);

    // Vertex sweep: deterministic reconstruction of exact ties and a hard
    // guarantee against degenerate-distribution values.
    std::size_t best_vertex = hull.front();
    double best_vertex_value = util[hull.front()] - c * K.value(z[hull.front()]);
    for (std::size_t k = 1; k < hull.size(); ++k) {
        const std::size_t idx = hull[k];
        const double v = util[idx] - c * K.value(z[idx]);
        if (v >= best_vertex_value - kTieTolerance) {
            if (v > best_vertex_value) best_vertex_value = v;
            best_vertex = idx;  // largest output among near-ties
        }
    }

    if (best_vertex_value >= search_value - kTieTolerance) {
        return BestResponse{make_dirac(grid, best_vertex), best_vertex_value, z[best_vertex], {}};
    }

    // Two-point mixture on the hull segment containing m_search.
    std::size_t seg = 1;
    while (seg + 1 < hull.size() && z[hull[seg]] < m_search) ++seg;
    const std::size_t a = hull[seg - 1];
    const std::size_t b = hull[seg];
    const double t = std::clamp((m_search - z[a]) / (z[b] - z[a]), 0.0, 1.0);
    std::vector<double> mass(grid.size(), 0.0);
    mass[a] = 1.0 - t;
    mass[b] = t;
    return BestResponse{Dist(std::move(mass)), search_value, m_search, {}};
}

BestResponse best_response(const WageSchedule& w, double theta, const CostModel& model,
                           const UtilityFn& u) {
    return model.family() == CostFamily::linear ? best_response_linear(w, theta, model, u)
                                                : best_response_composite(w, theta, model, u);
}

std::vector<double> project_to_simplex(std::vector<double> v) {
    const std::size_t n = v.size();
    std::vector<double> sorted(v);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumsum = 0.0, tau = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        cumsum += sorted[k];
        const double t = (cumsum - 1.0) / static_cast<double>(k + 1);
        if (sorted[k] - t > 0.0) tau = t;
    }
    for (double& x : v) x = std::max(0.0, x - tau);
    // Exact renormalization guards against accumulated rounding.
    double s = std::accumulate(v.begin(), v.end(), 0.0);
    if (s > 0.0)
        for (double& x : v) x /= s;
    return v;
}

namespace detail {

BestResponse simplex_ascent_oracle(std::span<const double> utilities, std::span<const double> z_values,
                                   double one_minus_theta, const OuterFn& outer,
                                   std::size_t grid_steps, std::uint64_t seed, std::size_t restarts) {
    const std::size_t n = utilities.size();
    if (n == 0 || n != z_values.size()) throw Error("simplex_ascent_oracle: bad input lengths");
    const double c = one_minus_theta;

    const auto objective = [&](std::span<const double> mu) {
        double eu = 0.0, m = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            eu += mu[i] * utilities[i];
            m += mu[i] * z_values[i];
        }
        return eu - c * outer.value(m);
    };

    if (n == 1) {
        std::vector<double> mass{1.0};
        return BestResponse{Dist(mass), objective(mass), z_values[0], {}};
    }

    if (n == 2) {
        // One-dimensional scan over the top-output probability.
        const std::size_t steps = std::max<std::size_t>(grid_steps, 3);
        double best_p = 0.0, best_val = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < steps; ++k) {
            const double p = static_cast<double>(k) / static_cast<double>(steps - 1);
            const std::vector<double> mu{1.0 - p, p};
            const double val = objective(mu);
            if (val > best_val || (val >= best_val && p > best_p)) {
                best_val = val;
                best_p = p;
            }
        }
        std::vector<double> mass{1.0 - best_p, best_p};
        const double m = z_values[0] + best_p * (z_values[1] - z_values[0]);
        return BestResponse{Dist(std::move(mass)), best_val, m, {}};
    }

    // Accelerated projected-gradient ascent with backtracking and restart.
    const auto gradient = [&](std::span<const double> mu, std::vector<double>& g) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m += mu[i] * z_values[i];
        const double kp = outer.d1(m);
        for (std::size_t i = 0; i < n; ++i) g[i] = utilities[i] - c * kp * z_values[i];
    };

    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> expo(1.0);

    std::vector<double> best_mu;
    double best_val = -std::numeric_limits<double>::infinity();

    for (std::size_t start = 0; start < std::max<std::size_t>(restarts, 1); ++start) {
        std::vector<double> mu(n, 1.0 / static_cast<double>(n));
        if (start > 0) {
            double s = 0.0;
            for (double& x : mu) s += (x = expo(rng));
            for (double& x : mu) x /= s;
        }
        std::vector<double> mu_prev = mu, y(n), g(n), cand(n);
        double L = 1.0, t_mom = 1.0;
        double f_mu = objective(mu);
        double stall_ref = f_mu;
        int stall = 0;

        for (int iter = 0; iter < 20000; ++iter) {
            const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_mom * t_mom));
            const double omega = (t_mom - 1.0) / t_next;
            for (std::size_t i = 0; i < n; ++i) y[i] = mu[i] + omega * (mu[i] - mu_prev[i]);
            // Momentum can leave the simplex; project back first.
            y = project_to_simplex(std::move(y));
            gradient(y, g);
            const double f_y = objective(y);

            double f_cand = 0.0;
            for (int bt = 0; bt < 60; ++bt) {
                for (std::size_t i = 0; i < n; ++i) cand[i] = y[i] + g[i] / L;
                cand = project_to_simplex(std::move(cand));
                double lin = 0.0, sq = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double d = cand[i] - y[i];
                    lin += g[i] * d;
                    sq += d * d;
                }
                f_cand = objective(cand);
                if (f_cand >= f_y + lin - 0.5 * L * sq - 1e-15) break;
                L *= 2.0;
            }

            mu_prev = mu;
            if (f_cand >= f_mu) {
                mu.swap(cand);
                f_mu = f_cand;
                t_mom = t_next;
            } else {
                // Restart momentum from the best iterate.
                t_mom = 1.0;
            }
            L = std::max(L * 0.7, 1e-8);

            if (f_mu > stall_ref + 1e-15 * (1.0 + std::fabs(stall_ref))) {
                stall_ref = f_mu;
                stall = 0;
            } else if (++stall > 300) {
                break;
            }
        }
        if (f_mu > best_val) {
            best_val = f_mu;
            best_mu = mu;
        }
    }

    // Drop floating-point dust so the support is clean, then renormalize.
    double s = 0.0;
    for (double& x : best_mu) {
        if (x < 1e-15) x = 0.0;
        s += x;
    }
    for (double& x : best_mu) x /= s;
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m += best_mu[i] * z_values[i];
    const double val = objective(best_mu);
    return BestResponse{Dist(std::move(best_mu)), val, m, {}};
}

}  // namespace detail

BestResponse best_response_oracle(const WageSchedule& w, double theta, const CostModel& model,
                                  const UtilityFn& u, std::size_t grid_steps, std::uint64_t seed,
                                  std::size_t restarts) {
    const auto util = wage_utilities(w, u);
    return detail::simplex_ascent_oracle(util, model.z_values(), 1.0 - theta, model.outer(), grid_steps,
                                         seed, restarts);
}

}  // namespace pact
