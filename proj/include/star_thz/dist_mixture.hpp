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

#ifndef STAR_THZ_DIST_MIXTURE_HPP
#define STAR_THZ_DIST_MIXTURE_HPP

#include "star_thz/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace star_thz
{

// Component a x^{b-1} e^{-c x}.
struct GammaComponent
{
    double a = 1.0;
    double b = 1.0;
    double c = 1.0;

    // Probability mass a Gamma(b) / c^b carried by the component.
    double mass() const;
};

struct GammaMixture
{
    std::vector<GammaComponent> components;

    std::size_t size() const { return components.size(); }
    // ConfigError when a parameter is non-positive or the masses do not sum to 1 within tol.
    void validate(double tol = 1e-8) const;
};

struct GaussianComponent
{
    double weight = 1.0;
    double mean = 0.0;
    double std = 1.0;
};

struct GaussianMixture
{
    std::vector<GaussianComponent> components;

    std::size_t size() const { return components.size(); }
    void validate(double tol = 1e-10) const;
};

/// One term of the collapsed gamma approximation of sum_m A_m X_m.
///
/// Stored as (mass Phi_3, shape b~, rate c~); the coefficient a~ = Phi_3 c~^b~ / Gamma(b~)
/// leaves the double range for physically sized weights, so evaluation works with the
/// mass and a() is only a convenience.
struct CollapsedGammaTerm
{
    double weight = 0.0; // Phi_3 after pruning renormalization
    double b = 1.0;
    double c = 1.0;

    double a() const;
    double log_a() const;
};

struct CollapsedGammaMixture
{
    std::vector<CollapsedGammaTerm> terms;
    double dropped_weight = 0.0;  // mass removed by pruning before renormalization
    std::size_t multi_indices = 0; // N^M
};

struct CollapsedGaussianTerm
{
    double weight = 0.0;
    double mean = 0.0;
    double var = 0.0;
};

struct CollapsedGaussianMixture
{
    std::vector<CollapsedGaussianTerm> terms;
    double dropped_weight = 0.0;
    std::size_t multi_indices = 0;
};

double mog_pdf(const GammaMixture &g, double x);
double mog_cdf(const GammaMixture &g, double x);
double mog_moment(const GammaMixture &g, double nu);
double mog_pdf(const CollapsedGammaMixture &g, double x);
double mog_cdf(const CollapsedGammaMixture &g, double x);
double mog_moment(const CollapsedGammaMixture &g, double nu);

double gm_pdf(const GaussianMixture &g, double x);
double gm_cdf(const GaussianMixture &g, double x);
// Raw moment E[X^nu], nu >= 1 an integer, through the confluent hypergeometric forms.
double gm_moment(const GaussianMixture &g, int nu);
double gm_pdf(const CollapsedGaussianMixture &g, double x);
double gm_cdf(const CollapsedGaussianMixture &g, double x);

// Multi-index collapse of sum_m weights[m] X_m. Terms whose mass drops below
// prune_below are skipped (whole subtrees, since masses only shrink along an index)
// and the rest renormalized. ConfigError when N^M exceeds 1e7.
CollapsedGammaMixture collapse_mog_sum(const std::vector<double> &weights, const GammaMixture &g,
                                       double prune_below = 1e-12);
CollapsedGaussianMixture collapse_gm_sum(const std::vector<double> &weights, const GaussianMixture &g,
                                         double prune_below = 1e-12);

// Closed forms for nu = 2 and 4; other orders use the 1F1 expression.
double gm_sum_moment(const CollapsedGaussianMixture &c, int nu);
double gm_sum_moment_hypergeometric(const CollapsedGaussianMixture &c, int nu);

double mog_sample(const GammaMixture &g, RngStream &rng);
// Negative draws are rejected: the mixture models a nonnegative envelope.
double gm_sample(const GaussianMixture &g, RngStream &rng);
// Envelope |v + n| with LoS power K/(K+1) and unit total power.
double rician_sample(double k_factor, RngStream &rng);
double rician_pdf(double k_factor, double x);

struct MogFitReport
{
    std::vector<double> log_likelihood; // per EM iteration of the accepted run
    int restarts = 0;
    int iterations = 0;
};

// EM fit of an N-component gamma mixture (N <= 8, at least 1e4 positive samples).
// Degenerate runs restart from a jittered initialisation (at most 10 restarts).
GammaMixture fit_mog_from_samples(const std::vector<double> &samples, int n_components, std::uint64_t seed = 1,
                                  MogFitReport *report = nullptr);

// Mixture parameter files: {"type": "mog"|"gm", "components": [...]}, where each
// component is {"a","b","c"} or {"weight","mean","std"}.
using MixtureModel = std::variant<GammaMixture, GaussianMixture>;
MixtureModel parse_mixture_json(const std::string &text);
MixtureModel load_mixture_file(const std::string &path);
std::string mixture_to_json(const MixtureModel &m);

} // namespace star_thz

#endif
