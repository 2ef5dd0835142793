// Copyright 2026 The qnnlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace qnnlab {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Derives an independent stream seed from a master seed and a list of
/// coordinates. The result depends only on the inputs, so any subset of a
/// sweep can be regenerated without replaying the rest.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> coords) noexcept;

/// Stable 64-bit FNV-1a hash of a byte string.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

}  // namespace qnnlab
