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

#ifndef STAR_THZ_RNG_HPP
#define STAR_THZ_RNG_HPP

#include <cstdint>
#include <random>

namespace star_thz
{

// All samplers draw from an explicit stream so callers control determinism.
using RngStream = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t z) noexcept
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Independent stream for (seed, a, b), e.g. (seed, grid point, trial block).
// The mapping is a pure function of its arguments, so the stream a worker gets
// does not depend on how work was scheduled.
inline RngStream derive_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) noexcept
{
    const std::uint64_t h = splitmix64(splitmix64(splitmix64(seed) ^ a) ^ (b * 0xd1342543de82ef95ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                      static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
    return RngStream(seq);
}

} // namespace star_thz

#endif
