/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "lbforge/lb/record.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lbforge::lb {

using nlohmann::json;

const char* to_string(LbIterationStatus status) {
  switch (status) {
    case LbIterationStatus::optimal: return "optimal";
    case LbIterationStatus::infeasible: return "infeasible";
    case LbIterationStatus::improved: return "improved";
    case LbIterationStatus::not_improved: return "not_improved";
  }
  return "unknown";
}

static LbIterationStatus status_from_string(const std::string& s) {
  if (s == "optimal") return LbIterationStatus::optimal;
  if (s == "infeasible") return LbIterationStatus::infeasible;
  if (s == "improved") return LbIterationStatus::improved;
  if (s == "not_improved") return LbIterationStatus::not_improved;
  throw std::invalid_argument("unknown iteration status '" + s + "'");
}

void LbConfig::validate() const {
  if (k0_default < 1.0) throw std::invalid_argument("lb config: k0_default must be >= 1");
  if (node_time_limit_default <= 0.0 || global_time_limit <= 0.0 || t_min <= 0.0) {
    throw std::invalid_argument("lb config: limits must be positive");
  }
  if (!(k_step > 0.0 && k_step < 1.0)) throw std::invalid_argument("lb config: k_step in (0,1)");
  if (!(t_step > 1.0)) throw std::invalid_argument("lb config: t_step > 1");
}

std::string record_to_jsonl(const LbRunRecord& record) {
  std::ostringstream os;
  json meta = {
      {"type", "meta"},
      {"algorithm", record.algorithm},
      {"t_max", record.t_max},
      {"initial_obj", record.initial_obj},
      {"final_obj", record.final_obj},
      {"elapsed_total", record.elapsed_total},
      {"iterations", record.iterations.size()},
  };
  os << meta.dump() << "\n";
  int index = 0;
  for (const auto& it : record.iterations) {
    json line = {
        {"iter", index++},
        {"k", it.k},
        {"t", it.t},
        {"status", to_string(it.outcome.status)},
        {"objective", it.incumbent_obj},
        {"elapsed", it.outcome.elapsed},
        {"elapsed_total", it.elapsed_total},
        {"nodes", it.outcome.nodes},
        {"improvement", it.outcome.obj_improvement},
        {"error", it.outcome.error},
    };
    os << line.dump() << "\n";
  }
  return os.str();
}

LbRunRecord record_from_jsonl(const std::string& text) {
  LbRunRecord record;
  std::istringstream is(text);
  std::string line;
  bool have_meta = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    if (j.value("type", "") == "meta") {
      record.algorithm = j.value("algorithm", "lb-base");
      record.t_max = j.at("t_max").get<double>();
      record.initial_obj = j.at("initial_obj").get<double>();
      record.final_obj = j.at("final_obj").get<double>();
      record.elapsed_total = j.at("elapsed_total").get<double>();
      have_meta = true;
      continue;
    }
    LbIterationRecord it;
    it.k = j.at("k").get<double>();
    it.t = j.at("t").get<double>();
    it.outcome.status = status_from_string(j.at("status").get<std::string>());
    it.incumbent_obj = j.at("objective").get<double>();
    it.outcome.elapsed = j.at("elapsed").get<double>();
    it.elapsed_total = j.at("elapsed_total").get<double>();
    it.outcome.nodes = j.value("nodes", 0LL);
    it.outcome.obj_improvement = j.value("improvement", 0.0);
    it.outcome.error = j.value("error", false);
    record.iterations.push_back(std::move(it));
  }
  if (!have_meta) throw std::invalid_argument("run record: missing meta line");
  return record;
}

void write_record(const LbRunRecord& record, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  os << record_to_jsonl(record);
}

LbRunRecord read_record(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << is.rdbuf();
  return record_from_jsonl(buf.str());
}

}  // namespace lbforge::lb
