/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "lbforge/milp/mps.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace lbforge::milp {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

double parse_number(const std::string& tok, int line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw MpsError("bad numeric literal '" + tok + "'", line_no);
    return v;
  } catch (const MpsError&) {
    throw;
  } catch (const std::exception&) {
    throw MpsError("bad numeric literal '" + tok + "'", line_no);
  }
}

struct ColumnData {
  VarKind kind = VarKind::continuous;
  double obj = 0.0;
  std::vector<std::pair<int, double>> entries;  // (row, coef)
  double lb = 0.0;
  double ub = kInfinity;
  bool lb_set = false;
  bool ub_set = false;
};

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

MilpInstance read_mps(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw MpsError("cannot open '" + path + "'", 0);

  enum Section { none, objsense, rows, columns, rhs_sec, ranges, bounds, done };
  Section section = none;
  int line_no = 0;
  bool in_integer_block = false;
  bool maximize = false;

  std::string problem_name = "milp";
  std::string objective_row;
  std::vector<std::string> row_names;
  std::vector<RowSense> row_senses;
  std::map<std::string, int> row_index;
  std::vector<std::string> col_order;
  std::map<std::string, ColumnData> cols;
  std::vector<double> row_rhs;
  std::vector<double> row_range;
  std::vector<bool> row_has_range;

  std::string line;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '*') continue;

    const bool header = !std::isspace(static_cast<unsigned char>(line[0]));
    auto toks = tokenize(line);
    if (toks.empty()) continue;

    if (header) {
      std::string key = toks[0];
      std::transform(key.begin(), key.end(), key.begin(),
                     [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
      if (key == "NAME") {
        if (toks.size() > 1) problem_name = toks[1];
      } else if (key == "OBJSENSE") {
        section = objsense;
        if (toks.size() > 1) {
          std::string v = toks[1];
          std::transform(v.begin(), v.end(), v.begin(),
                         [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
          maximize = v.rfind("MAX", 0) == 0;
          section = none;
        }
      } else if (key == "ROWS") {
        section = rows;
      } else if (key == "COLUMNS") {
        section = columns;
      } else if (key == "RHS") {
        section = rhs_sec;
      } else if (key == "RANGES") {
        section = ranges;
      } else if (key == "BOUNDS") {
        section = bounds;
      } else if (key == "ENDATA") {
        section = done;
        break;
      } else {
        throw MpsError("unsupported section '" + toks[0] + "'", line_no);
      }
      continue;
    }

    switch (section) {
      case objsense: {
        std::string v = toks[0];
        std::transform(v.begin(), v.end(), v.begin(),
                       [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
        maximize = v.rfind("MAX", 0) == 0;
        section = none;
        break;
      }
      case rows: {
        if (toks.size() < 2) throw MpsError("ROWS entry needs a type and a name", line_no);
        const char type = static_cast<char>(std::toupper(static_cast<unsigned char>(toks[0][0])));
        const std::string& name = toks[1];
        if (type == 'N') {
          if (objective_row.empty()) objective_row = name;  // extra N rows ignored
        } else {
          RowSense s;
          if (type == 'L') s = RowSense::le;
          else if (type == 'G') s = RowSense::ge;
          else if (type == 'E') s = RowSense::eq;
          else throw MpsError(std::string("unknown row type '") + toks[0] + "'", line_no);
          if (row_index.count(name) != 0) throw MpsError("duplicate row '" + name + "'", line_no);
          row_index[name] = static_cast<int>(row_names.size());
          row_names.push_back(name);
          row_senses.push_back(s);
        }
        break;
      }
      case columns: {
        if (toks.size() >= 3 && toks[1] == "'MARKER'") {
          if (toks[2] == "'INTORG'") in_integer_block = true;
          else if (toks[2] == "'INTEND'") in_integer_block = false;
          else throw MpsError("unknown marker '" + toks[2] + "'", line_no);
          break;
        }
        if (toks.size() < 3 || toks.size() % 2 == 0) {
          throw MpsError("COLUMNS entry needs name + (row, value) pairs", line_no);
        }
        const std::string& cname = toks[0];
        auto it = cols.find(cname);
        if (it == cols.end()) {
          it = cols.emplace(cname, ColumnData{}).first;
          col_order.push_back(cname);
          if (in_integer_block) it->second.kind = VarKind::general_integer;
        }
        for (std::size_t k = 1; k + 1 < toks.size(); k += 2) {
          const double v = parse_number(toks[k + 1], line_no);
          if (toks[k] == objective_row) {
            it->second.obj = v;
          } else {
            auto rit = row_index.find(toks[k]);
            if (rit == row_index.end()) throw MpsError("unknown row '" + toks[k] + "'", line_no);
            it->second.entries.emplace_back(rit->second, v);
          }
        }
        break;
      }
      case rhs_sec: {
        if (row_rhs.empty()) {
          row_rhs.assign(row_names.size(), 0.0);
          row_range.assign(row_names.size(), 0.0);
          row_has_range.assign(row_names.size(), false);
        }
        if (toks.size() < 3 || toks.size() % 2 == 0) {
          throw MpsError("RHS entry needs set name + (row, value) pairs", line_no);
        }
        for (std::size_t k = 1; k + 1 < toks.size(); k += 2) {
          if (toks[k] == objective_row) continue;  // objective offset unsupported, ignored
          auto rit = row_index.find(toks[k]);
          if (rit == row_index.end()) throw MpsError("unknown row '" + toks[k] + "'", line_no);
          row_rhs[rit->second] = parse_number(toks[k + 1], line_no);
        }
        break;
      }
      case ranges: {
        if (row_rhs.empty()) {
          row_rhs.assign(row_names.size(), 0.0);
          row_range.assign(row_names.size(), 0.0);
          row_has_range.assign(row_names.size(), false);
        }
        if (toks.size() < 3 || toks.size() % 2 == 0) {
          throw MpsError("RANGES entry needs set name + (row, value) pairs", line_no);
        }
        for (std::size_t k = 1; k + 1 < toks.size(); k += 2) {
          auto rit = row_index.find(toks[k]);
          if (rit == row_index.end()) throw MpsError("unknown row '" + toks[k] + "'", line_no);
          row_range[rit->second] = parse_number(toks[k + 1], line_no);
          row_has_range[rit->second] = true;
        }
        break;
      }
      case bounds: {
        if (toks.size() < 3) throw MpsError("BOUNDS entry too short", line_no);
        std::string type = toks[0];
        std::transform(type.begin(), type.end(), type.begin(),
                       [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
        const std::string& cname = toks[2];
        auto it = cols.find(cname);
        if (it == cols.end()) throw MpsError("bound on unknown column '" + cname + "'", line_no);
        ColumnData& cd = it->second;
        const bool has_value = toks.size() >= 4;
        const double v = has_value ? parse_number(toks[3], line_no) : 0.0;
        if (type == "UP") { cd.ub = v; cd.ub_set = true; }
        else if (type == "LO") { cd.lb = v; cd.lb_set = true; }
        else if (type == "FX") { cd.lb = cd.ub = v; cd.lb_set = cd.ub_set = true; }
        else if (type == "FR") { cd.lb = -kInfinity; cd.ub = kInfinity; cd.lb_set = cd.ub_set = true; }
        else if (type == "MI") { cd.lb = -kInfinity; cd.lb_set = true; }
        else if (type == "PL") { cd.ub = kInfinity; cd.ub_set = true; }
        else if (type == "BV") { cd.kind = VarKind::binary; cd.lb = 0.0; cd.ub = 1.0; cd.lb_set = cd.ub_set = true; }
        else if (type == "UI") { cd.kind = VarKind::general_integer; cd.ub = v; cd.ub_set = true; }
        else if (type == "LI") { cd.kind = VarKind::general_integer; cd.lb = v; cd.lb_set = true; }
        else throw MpsError("unsupported bound type '" + toks[0] + "'", line_no);
        break;
      }
      case none:
      case done:
        throw MpsError("data outside of any section", line_no);
    }
  }
  if (section != done) throw MpsError("missing ENDATA", line_no);
  if (objective_row.empty()) throw MpsError("no objective (N) row", line_no);
  if (row_rhs.empty()) {
    row_rhs.assign(row_names.size(), 0.0);
    row_range.assign(row_names.size(), 0.0);
    row_has_range.assign(row_names.size(), false);
  }

  MilpInstance inst = MilpInstance::create(static_cast<int>(col_order.size()), problem_name);
  for (int j = 0; j < inst.num_vars; ++j) {
    ColumnData& cd = cols[col_order[static_cast<std::size_t>(j)]];
    // integer column in an INTORG block without explicit bounds is binary
    if (cd.kind == VarKind::general_integer && !cd.lb_set && !cd.ub_set) {
      cd.kind = VarKind::binary;
      cd.lb = 0.0;
      cd.ub = 1.0;
    }
    if (cd.kind == VarKind::general_integer && cd.lb == 0.0 && cd.ub == 1.0) {
      cd.kind = VarKind::binary;
    }
    inst.objective[j] = maximize ? -cd.obj : cd.obj;
    inst.kind[j] = cd.kind;
    inst.lower[j] = cd.lb;
    inst.upper[j] = cd.ub;
  }

  // rows, expanding ranged rows into two inequalities
  std::vector<std::vector<std::pair<int, double>>> row_entries(row_names.size());
  for (int j = 0; j < inst.num_vars; ++j) {
    const ColumnData& cd = cols[col_order[static_cast<std::size_t>(j)]];
    for (const auto& [r, v] : cd.entries) row_entries[static_cast<std::size_t>(r)].emplace_back(j, v);
  }
  for (std::size_t r = 0; r < row_names.size(); ++r) {
    const RowSense s = row_senses[r];
    const double b = row_rhs[r];
    if (!row_has_range[r]) {
      inst.add_constraint(row_entries[r], s, b);
      continue;
    }
    const double rg = row_range[r];
    double lo = 0.0;
    double hi = 0.0;
    switch (s) {
      case RowSense::le: hi = b; lo = b - std::abs(rg); break;
      case RowSense::ge: lo = b; hi = b + std::abs(rg); break;
      case RowSense::eq:
        if (rg >= 0) { lo = b; hi = b + rg; }
        else { lo = b + rg; hi = b; }
        break;
    }
    inst.add_constraint(row_entries[r], RowSense::ge, lo);
    inst.add_constraint(row_entries[r], RowSense::le, hi);
  }
  inst.validate();
  return inst;
}

void write_mps(const MilpInstance& inst, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw MpsError("cannot open '" + path + "' for writing", 0);

  os << "NAME " << inst.name << "\n";
  os << "ROWS\n";
  os << " N  OBJ\n";
  for (int i = 0; i < inst.num_cons; ++i) {
    const char t = inst.sense[i] == RowSense::le ? 'L' : inst.sense[i] == RowSense::ge ? 'G' : 'E';
    os << " " << t << "  R" << i << "\n";
  }

  // column-major view of the row-major storage
  std::vector<std::vector<std::pair<int, double>>> by_col(static_cast<std::size_t>(inst.num_vars));
  for (int i = 0; i < inst.num_cons; ++i) {
    for (int p = inst.matrix.row_start[i]; p < inst.matrix.row_start[i + 1]; ++p) {
      by_col[static_cast<std::size_t>(inst.matrix.col[p])].emplace_back(i, inst.matrix.val[p]);
    }
  }

  os << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (int j = 0; j < inst.num_vars; ++j) {
    const bool is_int = inst.kind[j] != VarKind::continuous;
    if (is_int && !in_int) {
      os << "    MARKER" << marker++ << " 'MARKER' 'INTORG'\n";
      in_int = true;
    } else if (!is_int && in_int) {
      os << "    MARKER" << marker++ << " 'MARKER' 'INTEND'\n";
      in_int = false;
    }
    if (inst.objective[j] != 0.0) {
      os << "    C" << j << " OBJ " << format_value(inst.objective[j]) << "\n";
    }
    for (const auto& [i, v] : by_col[static_cast<std::size_t>(j)]) {
      os << "    C" << j << " R" << i << " " << format_value(v) << "\n";
    }
    if (inst.objective[j] == 0.0 && by_col[static_cast<std::size_t>(j)].empty()) {
      os << "    C" << j << " OBJ 0\n";  // keep empty columns representable
    }
  }
  if (in_int) os << "    MARKER" << marker++ << " 'MARKER' 'INTEND'\n";

  os << "RHS\n";
  for (int i = 0; i < inst.num_cons; ++i) {
    if (inst.rhs[i] != 0.0) os << "    RHS R" << i << " " << format_value(inst.rhs[i]) << "\n";
  }

  os << "BOUNDS\n";
  for (int j = 0; j < inst.num_vars; ++j) {
    const double lb = inst.lower[j];
    const double ub = inst.upper[j];
    if (inst.kind[j] == VarKind::binary && lb == 0.0 && ub == 1.0) {
      os << " BV BND C" << j << "\n";
      continue;
    }
    if (lb <= -kInfinity) os << " MI BND C" << j << "\n";
    else if (lb != 0.0) os << " LO BND C" << j << " " << format_value(lb) << "\n";
    if (ub >= kInfinity) {
      if (inst.kind[j] != VarKind::continuous) os << " PL BND C" << j << "\n";
    } else {
      os << " UP BND C" << j << " " << format_value(ub) << "\n";
    }
  }
  os << "ENDATA\n";
  if (!os) throw MpsError("write failed for '" + path + "'", 0);
}

}  // namespace lbforge::milp
