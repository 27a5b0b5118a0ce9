#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "histarith/binning.hpp"
#include "histarith/detail/rng.hpp"
#include "histarith/sample.hpp"

// Shared fixtures: hand-built histograms and deterministic synthetic samples.
namespace th {

inline histarith::ReliableHistogram make_hist(const std::vector<double>& edges,
                                              const std::vector<std::int64_t>& counts,
                                              double gamma_per_bin = 0.999) {
    histarith::ReliableHistogram h;
    double gamma = 1.0;
    for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
        histarith::Bin b;
        b.lo = edges[j];
        b.hi = edges[j + 1];
        b.count = counts[j];
        b.gamma = gamma_per_bin;
        h.bins.push_back(b);
        h.n += counts[j];
        gamma *= gamma_per_bin;
    }
    h.gamma = gamma;
    return h;
}

inline histarith::Sample uniform_sample(std::size_t n, std::uint64_t seed,
                                        double lo, double hi) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * histarith::detail::DrawRng(seed, i).uniform01();
    return histarith::Sample::from_values(std::move(v));
}

inline histarith::Sample normal_sample(std::size_t n, std::uint64_t seed,
                                       double mu = 0.0, double sigma = 1.0) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        histarith::detail::DrawRng rng(seed, i);
        double u1 = rng.uniform01();
        const double u2 = rng.uniform01();
        if (u1 < 1e-300) u1 = 1e-300;
        v[i] = mu + sigma * std::sqrt(-2.0 * std::log(u1)) *
                        std::cos(6.283185307179586 * u2);
    }
    return histarith::Sample::from_values(std::move(v));
}

inline histarith::Sample bimodal_sample(std::size_t n, std::uint64_t seed) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        histarith::detail::DrawRng rng(seed, i);
        const double pick = rng.uniform01();
        double u1 = rng.uniform01();
        const double u2 = rng.uniform01();
        if (u1 < 1e-300) u1 = 1e-300;
        const double g =
            std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
        v[i] = pick < 0.5 ? -2.0 + 0.5 * g : 2.0 + 0.8 * g;
    }
    return histarith::Sample::from_values(std::move(v));
}

// Piecewise-uniform generator with bounded density contrast: 1-3 pieces,
// piece width >= 0.7, density ratio <= 2.5, strictly positive support.
struct PiecewiseUniform {
    std::vector<double> edges;  // k+1, increasing
    std::vector<double> masses; // k, sums to 1

    histarith::Sample draw(std::size_t n, std::uint64_t seed) const {
        std::vector<double> prefix(masses.size());
        double cum = 0;
        for (std::size_t j = 0; j < masses.size(); ++j) {
            cum += masses[j];
            prefix[j] = cum;
        }
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            histarith::detail::DrawRng rng(seed, i);
            const double u = rng.uniform01() * prefix.back();
            std::size_t k = 0;
            while (k + 1 < prefix.size() && prefix[k] <= u) ++k;
            v[i] = edges[k] + (edges[k + 1] - edges[k]) * rng.uniform01();
        }
        return histarith::Sample::from_values(std::move(v));
    }
};

inline PiecewiseUniform random_generator(std::uint64_t seed) {
    histarith::detail::DrawRng rng(seed, 0);
    const std::size_t k = 1 + static_cast<std::size_t>(rng.next() % 3);
    PiecewiseUniform g;
    g.edges.push_back(0.5 + 0.5 * rng.uniform01());
    std::vector<double> density(k);
    for (std::size_t j = 0; j < k; ++j) {
        const double width = 0.7 + 0.9 * rng.uniform01();
        g.edges.push_back(g.edges.back() + width);
        density[j] = 1.0 + 1.5 * rng.uniform01(); // contrast <= 2.5
    }
    double total = 0;
    for (std::size_t j = 0; j < k; ++j) {
        g.masses.push_back(density[j] * (g.edges[j + 1] - g.edges[j]));
        total += g.masses.back();
    }
    for (double& m : g.masses) m /= total;
    return g;
}

} // namespace th
