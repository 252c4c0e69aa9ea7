// SPDX-License-Identifier: Apache-2.0
//
// rckit - K-factor and envelope statistics for reverberation chamber OTA measurements
// Copyright (C) 2026 The rckit authors
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

#ifndef RCKIT_RANDOM_HPP
#define RCKIT_RANDOM_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace rckit
{

// Independent generator for one replicate / frequency row. The stream depends only on
// (seed, stream), so work can be split or reordered without changing results.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream);

// Stable 64-bit key derived from a seed and a text label (FNV-1a mixed with the seed)
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);

} // namespace rckit

#endif
