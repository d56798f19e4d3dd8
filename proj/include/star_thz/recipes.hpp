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

#ifndef STAR_THZ_RECIPES_HPP
#define STAR_THZ_RECIPES_HPP

#include "star_thz/csv.hpp"
#include "star_thz/scenario.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace star_thz
{

struct RecipeOptions
{
    std::optional<std::uint64_t> seed;   // overrides mc.seed
    std::optional<std::uint64_t> trials; // overrides mc.trials
    bool monte_carlo = true;             // false leaves the mc columns empty
};

// Weights of the four weighted-sum test rows, A = [1, 0.7, 2.5, 1.4, 0.8][0..M),
// cycled for M > 5.
std::vector<double> table1_weights(std::size_t m);
// alpha = 0.5, mu = 1.5, alpha-root mean 1
AlphaMuParams table1_fading();
// Illustrative three-component Gaussian mixture used by the fig4 recipe.
GaussianMixture example_gm3();

// Shared by every OP / EC recipe and by run_sweep:
//   sweep_var, sweep_value, metric (op|ec), user (indoor|outdoor|sum), access (noma|oma),
//   protocol (es|ms), m, p_dbm, kappa2, rho_i, analytic, asymptotic,
//   asymptotic_kind (high_snr|low_snr), trust_ratio, mc, mc_se, flags
// flags is a ';'-separated subset of mc_unreliable, beyond_series_reach, low_snr_untrusted.
const std::vector<std::string> &sweep_columns();

const std::vector<std::string> &recipe_names();

struct RecipeOutput
{
    std::string name; // file stem
    CsvTable table;
};

// UsageError for an unknown recipe; ConfigError when the scenario is invalid.
std::vector<RecipeOutput> build_recipe(const std::string &name, const StarRisScenario &scenario,
                                       const RecipeOptions &opts = {});
// Writes <out_dir>/<stem>.csv for every table and returns the paths.
std::vector<std::string> run_recipe(const std::string &name, const StarRisScenario &scenario,
                                    const std::string &out_dir, const RecipeOptions &opts = {});

enum class SweepVariable
{
    p,
    kappa2,
    m,
    rho_i
};

enum class SweepMetric
{
    op,
    ec,
    op_oma,
    ec_oma,
    ec_low_snr,
    sum_rate
};

// "P", "kappa2", "M", "rho_I" (case-insensitive); UsageError otherwise.
SweepVariable parse_sweep_variable(const std::string &s);
// Comma-separated op, ec, op_oma, ec_oma, ec_low_snr, sum_rate; UsageError otherwise.
std::vector<SweepMetric> parse_sweep_metrics(const std::string &s);

struct SweepRequest
{
    SweepVariable variable = SweepVariable::p;
    std::vector<double> grid;
    std::vector<SweepMetric> metrics{SweepMetric::op, SweepMetric::ec};
    // Values of P and kappa^2 held fixed when they are not swept; empty takes the
    // scenario grids.
    std::vector<double> p_dbm;
    std::vector<double> kappa2;
};

// M sweeps use a near-square panel: ceil(sqrt(M)) columns, filled row by row, with
// the even-numbered elements reflecting under MS. A K-component gamma mixture needs
// K^M <= 1e7 collapsed terms, so M <= 14 for the bundled three-component fit.
// ConfigError on an empty grid or a grid value that breaks a scenario invariant.
CsvTable run_sweep(const StarRisScenario &scenario, const SweepRequest &req, const RecipeOptions &opts = {});

} // namespace star_thz

#endif
