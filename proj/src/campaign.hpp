// Copyright 2026 The dbp Authors.
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

// Seeded falsification campaigns: random instances, criterion and solver
// runs compared against the brute-force oracles.

#ifndef DBP_CAMPAIGN_HPP_
#define DBP_CAMPAIGN_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "instance.hpp"
#include "io.hpp"

namespace dbp {

struct Range {
  std::size_t lo = 1;
  std::size_t hi = 1;
};

struct CampaignConfig {
  std::uint64_t seed = 1;
  std::size_t count = 10;
  std::vector<std::string> families = {"cube"};
  Range n{1, 2};
  Range m{1, 2};
  Range q{1, 2};
  std::int64_t coefficient_bound = 3;
  std::size_t random_probes = 2;
  bool solve = true;
  std::size_t workers = 1;
  std::size_t subset_guard = 10'000;
};

// Unknown keys are rejected with Error(kParse).
CampaignConfig ParseCampaignConfig(std::string_view text);
Json CampaignConfigToJson(const CampaignConfig& cfg);

// Deterministic generator over std::mt19937_64. Integer draws use
// rejection sampling so the stream does not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::int64_t Uniform(std::int64_t lo, std::int64_t hi);
  std::size_t Index(std::size_t n) {
    return static_cast<std::size_t>(Uniform(0, static_cast<std::int64_t>(n) - 1));
  }

 private:
  std::mt19937_64 engine_;
};

struct GeneratedInstance {
  std::string family;
  DbpInstance instance;
};

GeneratedInstance GenerateInstance(const CampaignConfig& cfg, std::size_t index);

struct CampaignResult {
  Json report;
  std::size_t disagreements = 0;
  std::size_t soundness_violations = 0;
  std::vector<std::string> files;  // reproducer files written under out_dir
};

// With an empty `out_dir` reproducers are embedded in the report.
CampaignResult RunCampaign(const CampaignConfig& cfg, const std::string& out_dir);

}  // namespace dbp

#endif  // DBP_CAMPAIGN_HPP_
