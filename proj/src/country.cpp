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

#include "emunet/country.hpp"

#include <algorithm>
#include <unordered_set>

#include "emunet/error.hpp"

namespace emunet {

bool is_valid_country_code(std::string_view code) noexcept {
  if (code.size() < 2 || code.size() > 3) return false;
  return std::all_of(code.begin(), code.end(),
                     [](char c) { return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'); });
}

CountryCode::CountryCode(std::string_view code) : code_(code) {
  if (!is_valid_country_code(code))
    throw ValidationError("invalid country code '" + code_ + "' (expected 2-3 uppercase characters)");
}

const std::vector<CountryCode>& emu_countries() {
  static const std::vector<CountryCode> codes = [] {
    std::vector<CountryCode> v;
    for (auto c : {"AT", "BE", "CY", "EE", "FI", "FR", "DE", "EL", "IE", "IT", "LV", "LT", "LU",
                   "MT", "NL", "PT", "SK", "SL", "ES"})
      v.emplace_back(c);
    return v;
  }();
  return codes;
}

std::vector<CountryCode> parse_country_list(std::string_view list) {
  std::vector<CountryCode> out;
  while (!list.empty()) {
    auto comma = list.find(',');
    auto item = list.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  require_unique(out);
  return out;
}

std::optional<std::size_t> index_of(std::span<const CountryCode> countries,
                                    const CountryCode& code) noexcept {
  auto it = std::find(countries.begin(), countries.end(), code);
  if (it == countries.end()) return std::nullopt;
  return static_cast<std::size_t>(it - countries.begin());
}

void require_unique(std::span<const CountryCode> countries) {
  std::unordered_set<CountryCode> seen;
  for (const auto& c : countries) {
    if (!seen.insert(c).second) throw ValidationError("duplicate country code " + c.str());
  }
}

}  // namespace emunet
