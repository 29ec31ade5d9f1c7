// Copyright 2026 The emunet Authors
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

#ifndef EMUNET_COUNTRY_HPP_
#define EMUNET_COUNTRY_HPP_

#include <compare>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace emunet {

// Short uppercase alphanumeric country label ("DE", "BLX").
class CountryCode {
 public:
  // Throws ValidationError unless `code` is 2-3 uppercase letters or digits.
  explicit CountryCode(std::string_view code);

  const std::string& str() const noexcept { return code_; }

  friend auto operator<=>(const CountryCode&, const CountryCode&) = default;
  friend bool operator==(const CountryCode&, const CountryCode&) = default;

 private:
  std::string code_;
};

// Non-throwing check for the CountryCode invariant.
bool is_valid_country_code(std::string_view code) noexcept;

inline const CountryCode kBelgium{"BE"};
inline const CountryCode kLuxembourg{"LU"};
// Belgium + Luxembourg as reported jointly before 1999.
inline const CountryCode kBelgiumLuxembourg{"BLX"};

// The 19 euro-area members in the order of the published trade matrix.
const std::vector<CountryCode>& emu_countries();

// Parses a comma-separated code list ("DE,FR,IT").
std::vector<CountryCode> parse_country_list(std::string_view list);

// Position of `code` in `countries`, if present.
std::optional<std::size_t> index_of(std::span<const CountryCode> countries,
                                    const CountryCode& code) noexcept;

// Throws ValidationError if `countries` contains a duplicate.
void require_unique(std::span<const CountryCode> countries);

}  // namespace emunet

template <>
struct std::hash<emunet::CountryCode> {
  std::size_t operator()(const emunet::CountryCode& c) const noexcept {
    return std::hash<std::string>{}(c.str());
  }
};

#endif  // EMUNET_COUNTRY_HPP_
