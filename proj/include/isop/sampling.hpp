#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "isop/common.hpp"
#include "isop/norms.hpp"
#include "isop/rng.hpp"
#include "isop/special.hpp"
#include "isop/transport.hpp"

namespace isop {

/// Column-major sample batch with its generation metadata.
struct SampleBatch {
    int n = 0;
    int count = 0;
    std::uint64_t seed = 0;
    int streams = kDefaultStreams;
    double p = 2.0;
    std::vector<double> data;  // column-major: data[j * count + i]

    double at(int i, int j) const { return data[static_cast<std::size_t>(j) * count + i]; }
    Vec row(int i) const {
        Vec r(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) r[static_cast<std::size_t>(j)] = at(i, j);
        return r;
    }
};

/// Run fn(stream_index) for every logical stream, spread over worker
/// threads.  Results must be written to disjoint slices, which keeps the
/// output bit-identical for any thread count.
template <class F>
void parallel_streams(int streams, int threads, const F& fn) {
    if (threads <= 1 || streams <= 1) {
        for (int s = 0; s < streams; ++s) fn(s);
        return;
    }
    std::vector<std::thread> pool;
    const int workers = std::min(threads, streams);
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int s = w; s < streams; s += workers) fn(s);
        });
    }
    for (auto& t : pool) t.join();
}

/// One coordinate draw with density ~ exp(-|t|^p): |t|^p is Gamma(1/p), so
/// the inverse regularized incomplete gamma gives an exact, seedable sampler
/// with no rejection step.
inline double sample_exp_power_coordinate(RngStream& rng, double p) {
    const double g = gamma_p_inverse(1.0 / p, rng.uniform01());
    const double mag = std::pow(g, 1.0 / p);
    return rng.coin() ? mag : -mag;
}

/// i.i.d. draws from the density ~ exp(-|x|_p^p) (independent coordinates).
inline SampleBatch sample_mu_lp(int n, double p, int count, std::uint64_t seed,
                                int streams = kDefaultStreams, int threads = 1) {
    if (n < 1 || count < 1) throw PreconditionError("sample_mu_lp: bad shape");
    if (!(p >= 1.0)) throw PreconditionError("sample_mu_lp: p must be >= 1");
    SampleBatch b;
    b.n = n;
    b.count = count;
    b.seed = seed;
    b.streams = streams;
    b.p = p;
    b.data.assign(static_cast<std::size_t>(n) * count, 0.0);
    parallel_streams(streams, threads, [&](int s) {
        RngStream rng(seed, static_cast<std::uint64_t>(s));
        const int lo = static_cast<int>(static_cast<long long>(count) * s / streams);
        const int hi = static_cast<int>(static_cast<long long>(count) * (s + 1) / streams);
        for (int i = lo; i < hi; ++i)
            for (int j = 0; j < n; ++j)
                b.data[static_cast<std::size_t>(j) * count + i] = sample_exp_power_coordinate(rng, p);
    });
    return b;
}

/// Batch of draws from a radial density (cone direction x radial quantile).
inline SampleBatch sample_radial_density(const RadialDensity& f, int count, std::uint64_t seed,
                                         int streams = kDefaultStreams, int threads = 1) {
    SampleBatch b;
    b.n = f.dim();
    b.count = count;
    b.seed = seed;
    b.streams = streams;
    b.p = f.norm().cone_exponent();
    b.data.assign(static_cast<std::size_t>(b.n) * count, 0.0);
    parallel_streams(streams, threads, [&](int s) {
        RngStream rng(seed, static_cast<std::uint64_t>(s));
        const int lo = static_cast<int>(static_cast<long long>(count) * s / streams);
        const int hi = static_cast<int>(static_cast<long long>(count) * (s + 1) / streams);
        for (int i = lo; i < hi; ++i) {
            const Vec x = f.sample(rng);
            for (int j = 0; j < b.n; ++j)
                b.data[static_cast<std::size_t>(j) * count + i] = x[static_cast<std::size_t>(j)];
        }
    });
    return b;
}

/// Uniform draws on the unit ball of the norm.
inline SampleBatch sample_uniform_ball(const NormSpec& norm, int count, std::uint64_t seed,
                                       int streams = kDefaultStreams, int threads = 1) {
    const auto body = RadialDensity::make(norm.dim(), norm, RadialProfile::indicator());
    return sample_radial_density(body, count, seed, streams, threads);
}

/// Kolmogorov-Smirnov statistic of a sample against Uniform[0,1].
inline double ks_statistic_uniform(std::vector<double> values) {
    if (values.empty()) throw PreconditionError("ks_statistic_uniform: empty sample");
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double f = std::clamp(values[i], 0.0, 1.0);
        d = std::max(d, std::fabs(f - static_cast<double>(i + 1) / n));
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    }
    return d;
}

/// 1% critical value of the KS statistic at sample size n.
inline double ks_critical_1pct(int n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

struct PushforwardStats {
    double ks = 0.0;
    double ks_critical = 0.0;
    bool ks_ok = false;
    double direction_balance = 0.0;  // |mean of x/|x|| (Euclidean length)
    int count = 0;
    std::uint64_t seed = 0;
    int streams = 0;
};

/// Verify the pushforward law: |T(x)|_{K_f}^n must be Uniform[0,1] under the
/// density.  |T(x)|_{K_f} equals the radial factor u(x), so the test statistic
/// is the radial mass fraction itself.
inline PushforwardStats pushforward_uniformity(const RadialDensity& f, int count,
                                               std::uint64_t seed, int streams = kDefaultStreams,
                                               int threads = 1) {
    PushforwardStats st;
    st.count = count;
    st.seed = seed;
    st.streams = streams;
    std::vector<double> v(static_cast<std::size_t>(count));
    Vec dir_sum(static_cast<std::size_t>(f.dim()), 0.0);
    std::vector<Vec> dir_partial(static_cast<std::size_t>(streams),
                                 Vec(static_cast<std::size_t>(f.dim()), 0.0));
    parallel_streams(streams, threads, [&](int s) {
        RngStream rng(seed, static_cast<std::uint64_t>(s));
        const int lo = static_cast<int>(static_cast<long long>(count) * s / streams);
        const int hi = static_cast<int>(static_cast<long long>(count) * (s + 1) / streams);
        for (int i = lo; i < hi; ++i) {
            const Vec x = f.sample(rng);
            v[static_cast<std::size_t>(i)] = f.radial_cdf(f.norm()(x));
            const double nx = norm2(x);
            for (std::size_t j = 0; j < x.size(); ++j)
                dir_partial[static_cast<std::size_t>(s)][j] += x[j] / nx;
        }
    });
    for (int s = 0; s < streams; ++s)  // fixed order, independent of threads
        for (std::size_t j = 0; j < dir_sum.size(); ++j) dir_sum[j] += dir_partial[s][j];
    st.ks = ks_statistic_uniform(v);
    st.ks_critical = ks_critical_1pct(count);
    st.ks_ok = st.ks < st.ks_critical;
    st.direction_balance = norm2(dir_sum) / count;
    return st;
}

}  // namespace isop
