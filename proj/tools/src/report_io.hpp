// Copyright (c) 2026 The voxsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VOXSEL_TOOLS_REPORT_IO_HPP_
#define VOXSEL_TOOLS_REPORT_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "voxsel/metrics.hpp"
#include "voxsel/selection.hpp"

namespace voxsel::cli {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSelectionFormatVersion = "voxsel.selection/1";
inline constexpr std::string_view kEvalFormatVersion = "voxsel.eval/1";
inline constexpr std::string_view kPqmfFormatVersion = "voxsel.pqmf/1";
inline constexpr std::string_view kStftLossFormatVersion = "voxsel.stftloss/1";
inline constexpr std::string_view kStatsFormatVersion = "voxsel.stats/1";
inline constexpr std::string_view kHistFormatVersion = "voxsel.hist/1";

// Writes via a temp file in the same directory plus a rename, so readers
// never observe a partial artifact.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

Json scored_utterance_to_json(const ScoredUtterance& s);
ScoredUtterance scored_utterance_from_json(const Json& j);

Json selection_stats_to_json(const SelectionStats& stats);

Json selection_report_to_json(const SelectionReport& report, Json config_echo);

// Reads the "selected" (or "ranked") array of a previously written
// selection report.
std::vector<ScoredUtterance> read_report_utterances(const std::filesystem::path& path,
                                                    std::string_view key);

Json eval_report_to_json(const EvalReport& report, Json config_echo);

}  // namespace voxsel::cli

#endif  // VOXSEL_TOOLS_REPORT_IO_HPP_
