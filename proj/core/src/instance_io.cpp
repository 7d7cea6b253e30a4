// Copyright 2026 The sparseldr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sparseldr/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "sparseldr/error.hpp"

namespace sparseldr {

using nlohmann::json;

std::string instance_to_json(const ROInstance& instance, int indent) {
  json doc;
  doc["horizon"] = instance.horizon();
  doc["n"] = instance.n();
  doc["m"] = instance.m();
  doc["box"] = {{"lower", instance.box().lower()},
                {"upper", instance.box().upper()}};
  json rows = json::array();
  for (int i = 0; i <= instance.m(); ++i) {
    const Row& row = instance.row(i);
    json r;
    r["i"] = i;
    if (i > 0) r["c"] = row.c;
    json a = json::array();
    for (const DecisionCoef& e : row.a) a.push_back({e.t, e.j, e.value});
    json b = json::array();
    for (const UncertaintyCoef& e : row.b) b.push_back({e.s, e.value});
    r["a"] = std::move(a);
    r["b"] = std::move(b);
    r["label"] = ToString(row.label);
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  const InstanceMeta& meta = instance.meta();
  json params = json::parse(meta.params_json.empty() ? "{}" : meta.params_json);
  doc["meta"] = {{"generator", meta.generator},
                 {"T", meta.T},
                 {"E", meta.E},
                 {"params", std::move(params)}};
  return doc.dump(indent);
}

ROInstance instance_from_json(const std::string& text) {
  try {
    json doc = json::parse(text);
    const int H = doc.at("horizon").get<int>();
    const int n = doc.at("n").get<int>();
    const int m = doc.at("m").get<int>();
    BoxUncertainty box(doc.at("box").at("lower").get<std::vector<double>>(),
                       doc.at("box").at("upper").get<std::vector<double>>());
    const json& jrows = doc.at("rows");
    if (static_cast<int>(jrows.size()) != m + 1) {
      throw Error(ErrorCode::kParse, "expected m + 1 rows");
    }
    std::vector<Row> rows(m + 1);
    std::vector<bool> seen(m + 1, false);
    for (const json& r : jrows) {
      const int i = r.at("i").get<int>();
      if (i < 0 || i > m || seen[i]) {
        throw Error(ErrorCode::kParse, "bad or repeated row index");
      }
      seen[i] = true;
      Row& row = rows[i];
      row.c = r.contains("c") ? r.at("c").get<double>() : 0.0;
      for (const json& e : r.at("a")) {
        row.a.push_back({e.at(0).get<int>(), e.at(1).get<int>(),
                         e.at(2).get<double>()});
      }
      for (const json& e : r.at("b")) {
        row.b.push_back({e.at(0).get<int>(), e.at(1).get<double>()});
      }
      const std::string label = r.value("label", std::string("generic"));
      auto parsed = ParseRowLabel(label);
      if (!parsed) throw Error(ErrorCode::kParse, "unknown row label " + label);
      row.label = *parsed;
    }
    InstanceMeta meta;
    if (doc.contains("meta")) {
      const json& jm = doc.at("meta");
      meta.generator = jm.value("generator", std::string());
      meta.T = jm.value("T", 0);
      meta.E = jm.value("E", 0);
      meta.params_json = jm.contains("params") ? jm.at("params").dump() : "{}";
    }
    return ROInstance(H, n, std::move(box), std::move(rows), std::move(meta));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("instance JSON: ") + e.what());
  }
}

ROInstance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return instance_from_json(buffer.str());
}

void write_instance_file(const ROInstance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  out << instance_to_json(instance, 1) << '\n';
}

std::string ldr_to_json(const LinearDecisionRule& ldr) {
  json doc;
  json entries = json::array();
  for (const auto& [key, y] : ldr.entries()) {
    entries.push_back({key.t, key.s, key.j, y});
  }
  doc["y"] = std::move(entries);
  if (ldr.c0) doc["c0"] = *ldr.c0;
  return doc.dump();
}

}  // namespace sparseldr
