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
//
// Command line front end: scenario validation, named recipes and generic sweeps.
// Exit codes: 0 ok, 2 configuration or usage error, 3 numerical error.

#include "star_thz/errors.hpp"
#include "star_thz/recipes.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

using namespace star_thz;

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_numerical = 3;

StarRisScenario scenario_from(const std::string &path)
{
    return path.empty() ? default_scenario() : load_scenario(path);
}

RecipeOptions options(const std::optional<std::uint64_t> &seed, const std::optional<std::uint64_t> &trials,
                      bool no_mc)
{
    RecipeOptions o;
    o.seed = seed;
    o.trials = trials;
    o.monte_carlo = !no_mc;
    return o;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"STAR-RIS NOMA THz link analysis: exact statistics, asymptotics and Monte Carlo checks"};
    app.require_subcommand(1);

    std::string file;
    auto *validate = app.add_subcommand("validate", "Check a scenario file and report every violation");
    validate->add_option("file", file, "Scenario file (.toml or .json)")->required();

    std::string recipe_name, scenario_path, out_dir;
    std::optional<std::uint64_t> seed, trials;
    bool no_mc = false;
    auto *recipe = app.add_subcommand("recipe", "Run a named experiment and write its CSV");
    recipe->add_option("name", recipe_name, "Recipe name, or 'all'")->required();
    recipe->add_option("--scenario", scenario_path, "Scenario file (default: built-in reference scenario)");
    recipe->add_option("--out", out_dir, "Output directory")->required();
    recipe->add_option("--seed", seed, "Monte Carlo seed");
    recipe->add_option("--trials", trials, "Monte Carlo trials per point");
    recipe->add_flag("--no-mc", no_mc, "Skip the Monte Carlo columns");

    auto *list = app.add_subcommand("list", "Print the recipe names");

    std::string var = "P", grid, metrics = "op,ec", p_dbm, kappa2, out_file;
    auto *sweep = app.add_subcommand("sweep", "Evaluate metrics over a grid of one variable");
    sweep->add_option("--var", var, "P, kappa2, M or rho_I")->capture_default_str();
    sweep->add_option("--grid", grid, "start:stop:step or a,b,c")->required();
    sweep->add_option("--metrics", metrics, "Comma list of op, ec, op_oma, ec_oma, ec_low_snr, sum_rate")
        ->capture_default_str();
    sweep->add_option("--p-dbm", p_dbm, "Fixed transmit powers when P is not swept");
    sweep->add_option("--kappa2", kappa2, "Fixed HWI levels when kappa2 is not swept");
    sweep->add_option("--scenario", scenario_path, "Scenario file (default: built-in reference scenario)");
    sweep->add_option("--out", out_file, "Output CSV file (default: stdout)");
    sweep->add_option("--seed", seed, "Monte Carlo seed");
    sweep->add_option("--trials", trials, "Monte Carlo trials per point");
    sweep->add_flag("--no-mc", no_mc, "Skip the Monte Carlo columns");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return exit_config;
    }

    try
    {
        if (*validate)
        {
            const StarRisScenario s = load_scenario(file);
            const std::vector<std::string> v = s.violations();
            if (!v.empty())
            {
                std::cerr << file << ": " << v.size() << " violation(s)\n";
                for (const std::string &line : v)
                    std::cerr << "  " << line << "\n";
                return exit_config;
            }
            std::cout << file << ": ok\n";
        }
        else if (*list)
        {
            for (const std::string &n : recipe_names())
                std::cout << n << "\n";
        }
        else if (*recipe)
        {
            const StarRisScenario s = scenario_from(scenario_path);
            const RecipeOptions o = options(seed, trials, no_mc);
            const std::vector<std::string> names =
                recipe_name == "all" ? recipe_names() : std::vector<std::string>{recipe_name};
            for (const std::string &n : names)
                for (const std::string &path : run_recipe(n, s, out_dir, o))
                    std::cout << path << "\n";
        }
        else if (*sweep)
        {
            const StarRisScenario s = scenario_from(scenario_path);
            SweepRequest req;
            req.variable = parse_sweep_variable(var);
            req.grid = parse_grid(grid);
            req.metrics = parse_sweep_metrics(metrics);
            if (!p_dbm.empty())
                req.p_dbm = parse_grid(p_dbm);
            if (!kappa2.empty())
                req.kappa2 = parse_grid(kappa2);
            const CsvTable t = run_sweep(s, req, options(seed, trials, no_mc));
            if (out_file.empty())
                std::cout << t.str();
            else
                t.write(out_file);
        }
    }
    catch (const ConfigError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    }
    catch (const DomainError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    }
    catch (const NumericalError &e)
    {
        std::cerr << "numerical error: " << e.what() << "\n";
        return exit_numerical;
    }
    return exit_ok;
}
