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

#include "sparseldr/mps.hpp"

#include <cctype>
#include <cstdio>
#include <string>
#include <unordered_set>
#include <vector>

#include "sparseldr/error.hpp"

namespace sparseldr {
namespace {

constexpr const char* kObjectiveRow = "OBJ";

std::string Number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string Pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

// Data line: 4 blanks, field 2 at column 5, field 3 at 15, field 4 at 25.
std::string Line(const std::string& f2, const std::string& f3,
                 const std::string& f4) {
  return "    " + Pad(f2, 10) + Pad(f3, 10) + f4 + "\n";
}

}  // namespace

std::string sanitize_mps_name(const std::string& name) {
  std::string out = name;
  for (char& ch : out) {
    const unsigned char u = static_cast<unsigned char>(ch);
    if (!std::isalnum(u) && ch != '_' && ch != '.') ch = '_';
  }
  if (out.empty()) out = "_";
  return out;
}

std::string write_mps(const LPModel& model, const std::string& name) {
  const int n = model.num_columns();
  const int m = model.num_rows();
  std::vector<std::string> cols(n);
  std::vector<std::string> rows(m);
  std::unordered_set<std::string> seen{kObjectiveRow};
  for (int i = 0; i < m; ++i) {
    rows[i] = sanitize_mps_name(model.row_name(i));
    if (!seen.insert(rows[i]).second) {
      throw Error(ErrorCode::kNameCollision,
                  "row name " + model.row_name(i) + " collides after sanitizing");
    }
  }
  seen.clear();
  for (int j = 0; j < n; ++j) {
    cols[j] = sanitize_mps_name(model.column_name(j));
    if (!seen.insert(cols[j]).second) {
      throw Error(ErrorCode::kNameCollision, "column name " +
                                                 model.column_name(j) +
                                                 " collides after sanitizing");
    }
  }

  // Column-major view of the row-wise model.
  std::vector<std::int64_t> start(n + 1, 0);
  for (int i = 0; i < m; ++i) {
    for (int j : model.row_columns(i)) ++start[j + 1];
  }
  for (int j = 0; j < n; ++j) start[j + 1] += start[j];
  std::vector<int> entry_row(start[n]);
  std::vector<double> entry_val(start[n]);
  std::vector<std::int64_t> fill(start.begin(), start.end() - 1);
  for (int i = 0; i < m; ++i) {
    auto c = model.row_columns(i);
    auto v = model.row_values(i);
    for (std::size_t k = 0; k < c.size(); ++k) {
      entry_row[fill[c[k]]] = i;
      entry_val[fill[c[k]]++] = v[k];
    }
  }

  std::string out;
  out += "NAME          " + sanitize_mps_name(name) + "\n";
  if (model.sense() == ObjectiveSense::kMaximize) out += "OBJSENSE\n    MAX\n";
  out += "ROWS\n";
  out += std::string(" N  ") + kObjectiveRow + "\n";
  for (int i = 0; i < m; ++i) {
    out += std::string(model.row_sense(i) == RowSense::kEqual ? " E  " : " L  ") +
           rows[i] + "\n";
  }
  out += "COLUMNS\n";
  for (int j = 0; j < n; ++j) {
    const double c = model.column_cost(j);
    if (c != 0.0 || start[j] == start[j + 1]) {
      out += Line(cols[j], kObjectiveRow, Number(c));
    }
    for (std::int64_t e = start[j]; e < start[j + 1]; ++e) {
      out += Line(cols[j], rows[entry_row[e]], Number(entry_val[e]));
    }
  }
  out += "RHS\n";
  for (int i = 0; i < m; ++i) {
    if (model.row_rhs(i) != 0.0) {
      out += Line("RHS", rows[i], Number(model.row_rhs(i)));
    }
  }
  out += "BOUNDS\n";
  auto bound = [&out](const char* type, const std::string& col, double v) {
    out += std::string(" ") + type + " " + Pad("BND", 10) + Pad(col, 10) + Number(v) + "\n";
  };
  auto bound_novalue = [&out](const char* type, const std::string& col) {
    out += std::string(" ") + type + " " + Pad("BND", 10) + col + "\n";
  };
  for (int j = 0; j < n; ++j) {
    const double lo = model.column_lower(j);
    const double up = model.column_upper(j);
    if (lo == -kInfinity && up == kInfinity) {
      bound_novalue("FR", cols[j]);
    } else if (lo == up) {
      bound("FX", cols[j], lo);
    } else {
      if (lo == -kInfinity) {
        bound_novalue("MI", cols[j]);
      } else if (lo != 0.0) {
        bound("LO", cols[j], lo);
      }
      if (up != kInfinity) bound("UP", cols[j], up);
    }
  }
  out += "ENDATA\n";
  return out;
}

}  // namespace sparseldr
