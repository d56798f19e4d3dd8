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

#ifndef STAR_THZ_ERRORS_HPP
#define STAR_THZ_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace star_thz
{

// Argument outside the mathematical domain of a function (x <= 0 for a pdf, ...)
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Invalid configuration: bad parameters, violated invariants, unparsable files.
// The CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Unknown recipe, sweep variable or metric. Also exit code 2.
class UsageError : public ConfigError
{
public:
    using ConfigError::ConfigError;
};

// A numerical procedure did not reach its tolerance. Carries the residuals
// observed at the point of failure. The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error
{
public:
    explicit NumericalError(const std::string &what, std::vector<double> residuals = {})
        : std::runtime_error(what), residuals_(std::move(residuals)) {}

    const std::vector<double> &residuals() const noexcept { return residuals_; }

private:
    std::vector<double> residuals_;
};

} // namespace star_thz

#endif
