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

#ifndef STAR_THZ_MONTE_CARLO_HPP
#define STAR_THZ_MONTE_CARLO_HPP

#include "star_thz/channel_geometry.hpp"
#include "star_thz/dist_alpha_mu.hpp"
#include "star_thz/dist_mixture.hpp"
#include "star_thz/performance.hpp"
#include "star_thz/rng.hpp"

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

namespace star_thz
{

// Per-element Rician envelope with E[X^2] = 1.
struct RicianTruth
{
    double k_factor = 1.0;
};

using OutdoorTruth = std::variant<GammaMixture, GaussianMixture, RicianTruth>;

// Everything needed to draw |H_I| and |H_O|.
struct ChannelModel
{
    E2EWeights weights;
    AlphaMuParams indoor_fading;
    OutdoorTruth outdoor_fading;
};

// One draw of sum_m A_m |h_m| for the given user.
double sample_e2e(const ChannelModel &model, Side user, RngStream &rng);

struct SimulationPlan
{
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 1;
    // 0 picks the hardware concurrency. STAR_THZ_THREADS caps either choice.
    unsigned workers = 0;

    void validate() const;
    unsigned effective_workers() const;
};

enum class Access
{
    noma,
    oma
};

enum class Metric
{
    op,
    ec
};

struct EmpiricalResult
{
    Metric metric = Metric::op;
    std::vector<double> estimates;
    std::vector<double> std_errors;
    std::vector<std::uint64_t> trials;

    // OP estimates resting on fewer than 50 outage events.
    bool unreliable(std::size_t i) const;
};

// Trials are split into fixed blocks; block (p, b) of user u always draws from
// derive_stream(seed, p, b + u * 2^32), and partial sums merge in block order, so
// results do not depend on the worker count.
inline constexpr std::uint64_t mc_block_size = 1u << 16;

// Generic driver: value(point, |H|) is averaged over the trials at every grid point.
EmpiricalResult estimate_metric(const ChannelModel &model, const SimulationPlan &plan, Side user,
                                std::size_t n_points, const std::function<double(std::size_t, double)> &value,
                                Metric metric);

// Indoor outage is the complement of decoding both signals; outdoor is a single event.
EmpiricalResult estimate_op(const ChannelModel &model, const SimulationPlan &plan, Side user,
                            const std::vector<PowerConfig> &grid, const OutageThresholds &th,
                            Access access = Access::noma);

// Mean of log2(1 + SIDNR); OMA capacity is halved.
EmpiricalResult estimate_ec(const ChannelModel &model, const SimulationPlan &plan, Side user,
                            const std::vector<PowerConfig> &grid, Access access = Access::noma);

// n draws of |H| for user, in deterministic block order.
std::vector<double> draw_e2e(const ChannelModel &model, Side user, std::uint64_t n, std::uint64_t seed,
                             unsigned workers = 0);

// Kolmogorov-Smirnov sup distance between the empirical law of samples and cdf.
// With max_evals > 0 and more samples than that, cdf is evaluated only at
// max_evals order statistics and the returned value is an upper bound obtained
// from monotonicity between them.
double ks_distance(std::vector<double> samples, const std::function<double(double)> &cdf,
                   std::size_t max_evals = 0);

} // namespace star_thz

#endif
