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

#include "report_io.hpp"

#include <fstream>

#include <unistd.h>

namespace voxsel::cli {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

}  // namespace

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  fs::path dir = path.parent_path();
  if (!dir.empty()) fs::create_directories(dir);
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) fail("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail("cannot move " + tmp.string() + " into place: " + ec.message());
  }
}

Json scored_utterance_to_json(const ScoredUtterance& s) {
  Json j;
  j["speaker"] = s.speaker_id;
  j["utterance"] = s.utterance_id;
  j["plda_raw"] = s.plda_raw;
  j["plda_sigmoid"] = s.plda_sigmoid;
  j["sigma_n"] = s.sigma_n;
  j["utt_distance"] = s.utt_distance;
  j["final_score"] = s.final_score;
  if (s.tag) j["tag"] = *s.tag;
  return j;
}

ScoredUtterance scored_utterance_from_json(const Json& j) {
  ScoredUtterance s;
  try {
    s.speaker_id = j.at("speaker").get<std::string>();
    s.utterance_id = j.at("utterance").get<std::string>();
    s.plda_raw = j.at("plda_raw").get<double>();
    s.plda_sigmoid = j.at("plda_sigmoid").get<double>();
    s.sigma_n = j.at("sigma_n").get<double>();
    s.utt_distance = j.at("utt_distance").get<double>();
    s.final_score = j.at("final_score").get<double>();
    if (j.contains("tag")) s.tag = j.at("tag").get<std::string>();
  } catch (const Json::exception& e) {
    fail("malformed scored utterance in report: " + std::string(e.what()));
  }
  return s;
}

Json selection_stats_to_json(const SelectionStats& stats) {
  Json j;
  j["num_speakers"] = stats.num_speakers;
  j["num_suspected"] = stats.num_suspected;
  j["utterance_overlap_pct"] =
      stats.utterance_overlap_pct ? Json(*stats.utterance_overlap_pct) : Json(nullptr);
  j["speaker_overlap_pct"] =
      stats.speaker_overlap_pct ? Json(*stats.speaker_overlap_pct) : Json(nullptr);
  return j;
}

Json selection_report_to_json(const SelectionReport& report, Json config_echo) {
  Json j;
  j["format_version"] = kSelectionFormatVersion;
  j["config"] = std::move(config_echo);
  j["threshold_score"] = report.threshold_score;
  j["stats"] = selection_stats_to_json(report.stats);
  Json selected = Json::array();
  for (const auto& s : report.selected) selected.push_back(scored_utterance_to_json(s));
  j["selected"] = std::move(selected);
  Json ranked = Json::array();
  for (const auto& s : report.ranked) ranked.push_back(scored_utterance_to_json(s));
  j["ranked"] = std::move(ranked);
  return j;
}

std::vector<ScoredUtterance> read_report_utterances(const std::filesystem::path& path,
                                                    std::string_view key) {
  std::ifstream in(path);
  if (!in) fail("cannot open report: " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::exception& e) {
    fail("malformed report json " + path.string() + ": " + e.what());
  }
  std::string key_name(key);
  if (!doc.contains(key_name))
    fail("report " + path.string() + " has no \"" + key_name + "\" array");
  std::vector<ScoredUtterance> out;
  for (const auto& item : doc.at(key_name)) out.push_back(scored_utterance_from_json(item));
  return out;
}

Json eval_report_to_json(const EvalReport& report, Json config_echo) {
  auto opt = [](const std::optional<double>& v) {
    return v ? Json(*v) : Json(nullptr);
  };
  Json j;
  j["format_version"] = kEvalFormatVersion;
  j["config"] = std::move(config_echo);
  Json agg;
  agg["lsd_db"] = opt(report.lsd_db);
  agg["mcd_db"] = opt(report.mcd_db);
  agg["f0_rmse_hz"] = opt(report.f0_rmse_hz);
  agg["uv_error_pct"] = opt(report.uv_error_pct);
  agg["plda"] = opt(report.plda);
  agg["cos_sim"] = opt(report.cos_sim);
  j["aggregates"] = std::move(agg);
  Json per = Json::array();
  for (const auto& e : report.per_utterance) {
    Json item;
    item["id"] = e.id;
    if (e.lsd_db) item["lsd_db"] = *e.lsd_db;
    if (e.mcd_db) item["mcd_db"] = *e.mcd_db;
    if (e.f0_rmse_hz) item["f0_rmse_hz"] = *e.f0_rmse_hz;
    if (e.uv_error_pct) item["uv_error_pct"] = *e.uv_error_pct;
    if (e.plda) item["plda"] = *e.plda;
    if (e.cos_sim) item["cos_sim"] = *e.cos_sim;
    per.push_back(std::move(item));
  }
  j["per_utterance"] = std::move(per);
  return j;
}

}  // namespace voxsel::cli
