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

#ifndef EMUNET_TESTS_SUPPORT_HPP_
#define EMUNET_TESTS_SUPPORT_HPP_

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "emunet/trade_data.hpp"
#include "emunet/trade_matrix.hpp"

namespace emunet::test {

inline std::filesystem::path data_dir() { return EMUNET_DATA_DIR; }

inline std::filesystem::path fixture_path(int year) {
  return data_dir() / ("table1_" + std::to_string(year) + ".csv");
}

inline std::vector<TradeFlowRecord> load_records(int year) {
  std::ifstream in(fixture_path(year));
  return parse_flows(in);
}

inline TradeMatrix load_fixture(int year) {
  return build_matrix(load_records(year), year, emu_countries());
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Fresh directory under the system temp dir, removed on destruction.
class ScratchDir {
 public:
  explicit ScratchDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("emunet_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

inline TradeMatrix as_trade_matrix(const Eigen::MatrixXd& w, int year = 2000) {
  std::vector<CountryCode> codes;
  for (Eigen::Index i = 0; i < w.rows(); ++i) codes.emplace_back("C" + std::to_string(i));
  return {year, codes, w};
}

}  // namespace emunet::test

#endif  // EMUNET_TESTS_SUPPORT_HPP_
