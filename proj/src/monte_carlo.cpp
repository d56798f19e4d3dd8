// SPDX-License-Identifier: Apache-2.0
//
// star-thz-perf: performance analysis of STAR-RIS assisted NOMA THz links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "star_thz/monte_carlo.hpp"

#include "star_thz/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace star_thz
{

namespace
{

// Per-element fading draws with all constants resolved once. The mixture laws are
// drawn the same way as mog_sample / gm_sample, without their per-call setup.
class ElementSampler
{
  public:
    ElementSampler(const ChannelModel &model, Side user) : user_(user)
    {
        if (user == Side::indoor)
        {
            const AlphaMuParams &p = model.indoor_fading;
            p.validate();
            scale_ = p.root_mean() / std::pow(p.mu, 1.0 / p.alpha);
            inv_alpha_ = 1.0 / p.alpha;
            gamma_.push_back(std::gamma_distribution<double>(p.mu, 1.0));
            return;
        }
        std::visit([this](const auto &t) { prepare(t); }, model.outdoor_fading);
    }

    double operator()(RngStream &rng)
    {
        if (user_ == Side::indoor)
        {
            const double g = gamma_[0](rng);
            return scale_ * (inv_alpha_ == 0.5 ? std::sqrt(g) : std::pow(g, inv_alpha_));
        }
        switch (kind_)
        {
        case Kind::mog:
            return gamma_[pick(rng)](rng);
        case Kind::gm:
            for (int attempt = 0; attempt < 1000000; ++attempt)
            {
                const double x = normal_[pick(rng)](rng);
                if (x >= 0.0)
                    return x;
            }
            throw NumericalError("sample_e2e: mixture carries (almost) no mass on x >= 0");
        case Kind::rician:
            break;
        }
        const double re = los_ + normal_[0](rng), im = normal_[0](rng);
        return std::hypot(re, im);
    }

  private:
    enum class Kind
    {
        mog,
        gm,
        rician
    };

    void prepare(const GammaMixture &g)
    {
        kind_ = Kind::mog;
        g.validate();
        std::vector<double> w;
        for (const GammaComponent &c : g.components)
        {
            w.push_back(c.mass());
            gamma_.push_back(std::gamma_distribution<double>(c.b, 1.0 / c.c));
        }
        set_weights(w);
    }

    void prepare(const GaussianMixture &g)
    {
        kind_ = Kind::gm;
        g.validate();
        std::vector<double> w;
        for (const GaussianComponent &c : g.components)
        {
            w.push_back(c.weight);
            normal_.push_back(std::normal_distribution<double>(c.mean, c.std));
        }
        set_weights(w);
    }

    void prepare(const RicianTruth &r)
    {
        kind_ = Kind::rician;
        if (!(r.k_factor >= 0.0) || !std::isfinite(r.k_factor))
            throw ConfigError("fading.outdoor.k_factor must be nonnegative");
        los_ = std::sqrt(r.k_factor / (r.k_factor + 1.0));
        normal_.push_back(std::normal_distribution<double>(0.0, std::sqrt(0.5 / (r.k_factor + 1.0))));
    }

    void set_weights(const std::vector<double> &w)
    {
        double total = 0.0;
        for (double v : w)
            total += v;
        weights_ = w;
        total_ = total;
    }

    std::size_t pick(RngStream &rng)
    {
        if (weights_.size() == 1)
            return 0;
        double r = std::uniform_real_distribution<double>(0.0, total_)(rng);
        for (std::size_t k = 0; k + 1 < weights_.size(); ++k)
        {
            r -= weights_[k];
            if (r < 0.0)
                return k;
        }
        return weights_.size() - 1;
    }

    Side user_;
    Kind kind_ = Kind::mog;
    double scale_ = 1.0, inv_alpha_ = 0.5, los_ = 0.0, total_ = 1.0;
    std::vector<double> weights_;
    std::vector<std::gamma_distribution<double>> gamma_;
    std::vector<std::normal_distribution<double>> normal_;
};

double draw_sum(const std::vector<double> &a, ElementSampler &element, RngStream &rng)
{
    double sum = 0.0;
    for (double w : a)
        if (w != 0.0)
            sum += w * element(rng);
    return sum;
}

// Runs job(item) for item in [0, n_items) on the given number of threads.
void run_parallel(std::size_t n_items, unsigned workers, const std::function<void(std::size_t)> &job)
{
    workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), n_items));
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n_items; ++i)
            job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n_items; i = next.fetch_add(1))
            {
                try
                {
                    job(i);
                }
                catch (...)
                {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next.store(n_items);
                }
            }
        });
    for (std::thread &t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

std::uint64_t user_tag(Side user)
{
    return user == Side::indoor ? 0 : (std::uint64_t{1} << 32);
}

} // namespace

double sample_e2e(const ChannelModel &model, Side user, RngStream &rng)
{
    ElementSampler element(model, user);
    return draw_sum(model.weights.side(user), element, rng);
}

void SimulationPlan::validate() const
{
    if (trials == 0)
        throw ConfigError("mc.trials must be positive");
}

unsigned SimulationPlan::effective_workers() const
{
    unsigned n = workers ? workers : std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("STAR_THZ_THREADS"))
    {
        char *end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap > 0)
            n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return n;
}

bool EmpiricalResult::unreliable(std::size_t i) const
{
    return metric == Metric::op && estimates[i] * static_cast<double>(trials[i]) < 50.0;
}

EmpiricalResult estimate_metric(const ChannelModel &model, const SimulationPlan &plan, Side user,
                                std::size_t n_points, const std::function<double(std::size_t, double)> &value,
                                Metric metric)
{
    plan.validate();
    const std::uint64_t n_blocks = (plan.trials + mc_block_size - 1) / mc_block_size;
    struct Partial
    {
        double sum = 0.0;
        double sum2 = 0.0;
    };
    std::vector<Partial> partial(n_points * n_blocks);
    const ElementSampler prepared(model, user);
    const std::vector<double> &a = model.weights.side(user);

    run_parallel(partial.size(), plan.effective_workers(), [&](std::size_t item) {
        const std::size_t p = item / n_blocks;
        const std::uint64_t b = item % n_blocks;
        const std::uint64_t n = std::min(mc_block_size, plan.trials - b * mc_block_size);
        RngStream rng = derive_stream(plan.seed, p, b + user_tag(user));
        ElementSampler element = prepared;
        Partial acc;
        for (std::uint64_t t = 0; t < n; ++t)
        {
            const double v = value(p, draw_sum(a, element, rng));
            acc.sum += v;
            acc.sum2 += v * v;
        }
        partial[item] = acc;
    });

    EmpiricalResult r;
    r.metric = metric;
    const double n = static_cast<double>(plan.trials);
    for (std::size_t p = 0; p < n_points; ++p)
    {
        double s = 0.0, s2 = 0.0;
        for (std::uint64_t b = 0; b < n_blocks; ++b)
        {
            s += partial[p * n_blocks + b].sum;
            s2 += partial[p * n_blocks + b].sum2;
        }
        const double mean = s / n;
        const double var = plan.trials > 1 ? std::max(0.0, (s2 - s * mean) / (n - 1.0)) : 0.0;
        r.estimates.push_back(mean);
        r.std_errors.push_back(std::sqrt(var / n));
        r.trials.push_back(plan.trials);
    }
    return r;
}

EmpiricalResult estimate_op(const ChannelModel &model, const SimulationPlan &plan, Side user,
                            const std::vector<PowerConfig> &grid, const OutageThresholds &th, Access access)
{
    th.validate();
    for (const PowerConfig &pc : grid)
        pc.validate();
    auto value = [&](std::size_t p, double h) -> double {
        const PowerConfig &pc = grid[p];
        const double h2 = h * h;
        if (access == Access::oma)
        {
            const SidnrKind k = user == Side::indoor ? SidnrKind::oma_indoor : SidnrKind::oma_outdoor;
            const double g = user == Side::indoor ? th.indoor : th.outdoor;
            return sidnr(k, h2, pc) > g ? 0.0 : 1.0;
        }
        if (user == Side::indoor)
        {
            const bool ok = sidnr(SidnrKind::indoor_own, h2, pc) > th.indoor &&
                            sidnr(SidnrKind::indoor_sic, h2, pc) > th.outdoor;
            return ok ? 0.0 : 1.0;
        }
        return sidnr(SidnrKind::outdoor, h2, pc) > th.outdoor ? 0.0 : 1.0;
    };
    return estimate_metric(model, plan, user, grid.size(), value, Metric::op);
}

EmpiricalResult estimate_ec(const ChannelModel &model, const SimulationPlan &plan, Side user,
                            const std::vector<PowerConfig> &grid, Access access)
{
    for (const PowerConfig &pc : grid)
        pc.validate();
    SidnrKind kind;
    if (access == Access::oma)
        kind = user == Side::indoor ? SidnrKind::oma_indoor : SidnrKind::oma_outdoor;
    else
        kind = user == Side::indoor ? SidnrKind::indoor_own : SidnrKind::outdoor;
    const double scale = access == Access::oma ? 0.5 : 1.0;
    auto value = [&](std::size_t p, double h) { return scale * std::log2(1.0 + sidnr(kind, h * h, grid[p])); };
    return estimate_metric(model, plan, user, grid.size(), value, Metric::ec);
}

std::vector<double> draw_e2e(const ChannelModel &model, Side user, std::uint64_t n, std::uint64_t seed,
                             unsigned workers)
{
    SimulationPlan plan{n, seed, workers};
    plan.validate();
    const std::uint64_t n_blocks = (n + mc_block_size - 1) / mc_block_size;
    std::vector<double> out(n);
    const ElementSampler prepared(model, user);
    const std::vector<double> &a = model.weights.side(user);
    run_parallel(n_blocks, plan.effective_workers(), [&](std::size_t b) {
        RngStream rng = derive_stream(seed, 0, b + user_tag(user));
        ElementSampler element = prepared;
        const std::uint64_t lo = b * mc_block_size, hi = std::min(n, lo + mc_block_size);
        for (std::uint64_t t = lo; t < hi; ++t)
            out[t] = draw_sum(a, element, rng);
    });
    return out;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)> &cdf, std::size_t max_evals)
{
    const std::size_t n = samples.size();
    if (n == 0)
        throw DomainError("ks_distance: no samples");
    std::sort(samples.begin(), samples.end());
    const double dn = static_cast<double>(n);
    double d = 0.0;
    if (max_evals == 0 || n <= max_evals)
    {
        for (std::size_t i = 0; i < n; ++i)
        {
            const double f = cdf(samples[i]);
            d = std::max({d, (i + 1) / dn - f, f - i / dn});
        }
        return std::clamp(d, 0.0, 1.0);
    }

    // Order-statistic indices 0 = j_0 < ... < j_K = n - 1. Between two of them the
    // cdf is bracketed by its values at the ends.
    const std::size_t k = std::max<std::size_t>(max_evals, 2) - 1;
    std::size_t prev = 0;
    double f_prev = cdf(samples[0]);
    d = std::max(1.0 / dn - f_prev, f_prev);
    for (std::size_t e = 1; e <= k; ++e)
    {
        const std::size_t j = static_cast<std::size_t>((static_cast<unsigned long long>(n - 1) * e) / k);
        if (j == prev)
            continue;
        const double f = cdf(samples[j]);
        d = std::max({d, (j + 1) / dn - f, f - j / dn});
        if (j > prev + 1)
            d = std::max({d, j / dn - f_prev, f - (prev + 1) / dn});
        prev = j;
        f_prev = f;
    }
    return std::clamp(d, 0.0, 1.0);
}

} // namespace star_thz
