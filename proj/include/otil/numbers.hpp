// Copyright 2026 The otil Authors.
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


#ifndef OTIL_NUMBERS_HPP_
#define OTIL_NUMBERS_HPP_

#include <optional>
#include <string>
#include <string_view>

namespace otil {

// Shortest representation that parses back to the identical double.
std::string format_double(double value);

// Strict: the whole of `text` (after trimming spaces) must be a number.
std::optional<double> parse_double(std::string_view text);

std::string_view trim(std::string_view text);

}  // namespace otil

#endif  // OTIL_NUMBERS_HPP_
