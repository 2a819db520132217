#include "flatsys/deform.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "flatsys/delaunay.hpp"
#include "flatsys/error.hpp"
#include "flatsys/geodesics.hpp"

namespace flatsys {

PeriodChart period_chart(const TriangulatedSurface& s)
{
    PeriodChart chart{s, relative_homology(s), {}};
    for (int h : chart.homology.basis) chart.coordinates.push_back(s.vec(h));
    return chart;
}

TriangulatedSurface perturb(const PeriodChart& chart, const std::vector<Vec2>& delta)
{
    const auto& s = chart.surface;
    const int dim = chart.dimension();
    if (static_cast<int>(delta.size()) != dim)
        throw Error(Errc::Precondition, "delta has " + std::to_string(delta.size()) + " entries, chart dimension is " +
                                            std::to_string(dim));
    std::vector<Vec2> vecs(s.vecs().begin(), s.vecs().end());
    for (int h = 0; h < s.num_half_edges(); ++h) {
        const auto& e = chart.homology.expansion[h];
        for (int k = 0; k < dim; ++k)
            if (e[k] != 0) vecs[h] += static_cast<double>(e[k]) * delta[k];
    }
    for (int t = 0; t < s.num_triangles(); ++t) {
        const double area2 = cross(vecs[3 * t], vecs[3 * t + 1]);
        const double scale = std::max(vecs[3 * t].norm2(), vecs[3 * t + 1].norm2());
        if (!(area2 > 1e-12 * scale))
            throw Error(Errc::DegenerateTriangle, "triangle " + std::to_string(t) + " lost positive area");
    }
    for (int h = 0; h < s.num_half_edges(); ++h)
        if (h > s.twin(h)) vecs[h] = -vecs[s.twin(h)];
    TriangulatedSurface out(std::move(vecs), std::vector<int>(s.twins().begin(), s.twins().end()),
                            std::vector<int>(s.tags().begin(), s.tags().end()));
    return delaunayize(out).surface;
}

TriangulatedSurface perturb(const TriangulatedSurface& s, const std::vector<Vec2>& delta)
{
    return perturb(period_chart(s), delta);
}

namespace {

struct TrialOutcome {
    bool skipped = false;
    double systole = 0.0;
    std::vector<Vec2> delta;
};

TrialOutcome run_trial(const PeriodChart& chart, const LocalMaxOptions& opts, int k)
{
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                      static_cast<std::uint32_t>(k)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss;
    const int dim = chart.dimension();
    TrialOutcome out;
    out.delta.resize(dim);
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (auto& v : out.delta) {
            v = {gauss(rng), gauss(rng)};
            norm2 += v.norm2();
        }
    } while (norm2 == 0.0);
    const double f = opts.epsilon / std::sqrt(norm2);
    for (auto& v : out.delta) v = f * v;
    try {
        out.systole = systole(normalize_area(perturb(chart, out.delta))).value;
    } catch (const Error& e) {
        if (e.code() != Errc::DegenerateTriangle) throw;
        out.skipped = true;
    }
    return out;
}

} // namespace

LocalMaxReport verify_local_max(const TriangulatedSurface& s, const LocalMaxOptions& opts)
{
    if (opts.trials < 0 || !(opts.epsilon > 0.0)) throw Error(Errc::Precondition, "trials >= 0 and epsilon > 0 required");
    const PeriodChart chart = period_chart(s);
    LocalMaxReport rep;
    rep.base_systole = systole(s).value;
    rep.trials = opts.trials;
    rep.epsilon = opts.epsilon;
    rep.seed = opts.seed;
    rep.max_observed = -1.0;

    std::vector<TrialOutcome> outcomes(opts.trials);
    unsigned nthreads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min<unsigned>(nthreads, std::max(1, opts.trials));
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(nthreads);
    auto worker = [&](unsigned w) {
        try {
            for (int k = next++; k < opts.trials; k = next++) outcomes[k] = run_trial(chart, opts, k);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nthreads; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    for (int k = 0; k < opts.trials; ++k) {
        const auto& o = outcomes[k];
        if (o.skipped) {
            ++rep.skipped;
            rep.skipped_trials.push_back(k);
            continue;
        }
        rep.max_observed = std::max(rep.max_observed, o.systole);
        if (o.systole > rep.base_systole + 1e-9 && !rep.counterexample_trial) {
            rep.counterexample_trial = k;
            rep.counterexample_delta = o.delta;
            rep.counterexample_systole = o.systole;
        }
    }
    rep.certified = !rep.counterexample_trial.has_value();
    return rep;
}

} // namespace flatsys
