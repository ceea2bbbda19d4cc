#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "spcp/error.hpp"
#include "spcp/milp.hpp"

namespace spcp {

namespace {

constexpr int kSaltRetries = 64;

std::string hashed_name(const std::string& name, int salt, char prefix) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](unsigned char c) {
    h ^= c;
    h *= 1099511628211ULL;
  };
  for (char c : name) mix(static_cast<unsigned char>(c));
  mix(static_cast<unsigned char>(salt));
  mix(static_cast<unsigned char>(salt >> 8));
  static const char* digits = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";
  std::string out(8, '0');
  out[0] = prefix;
  for (int k = 7; k >= 1; --k) {
    out[static_cast<std::size_t>(k)] = digits[h % 36];
    h /= 36;
  }
  return out;
}

bool plain(const std::string& name) {
  if (name.empty() || name.size() > 8) return false;
  for (char c : name)
    if (c <= ' ' || c > '~' || c == '$' || c == '*') return false;
  return true;
}

// Assign MPS-safe names in model order; short names are kept verbatim.
std::vector<std::string> mps_names(const std::vector<std::string>& names, char prefix,
                                   std::set<std::string> taken) {
  std::vector<std::string> out(names.size());
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (plain(names[k]) && taken.insert(names[k]).second) out[k] = names[k];
  }
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (!out[k].empty()) continue;
    const std::string base = names[k].empty() ? std::to_string(k) : names[k];
    for (int salt = 0; salt < kSaltRetries && out[k].empty(); ++salt) {
      std::string h = hashed_name(base, salt, prefix);
      if (taken.insert(h).second) out[k] = h;
    }
    if (out[k].empty()) throw Error(ErrorCode::NameTooLong, "cannot shorten name " + names[k]);
  }
  return out;
}

std::string number(double v) {
  char buf[32];
  for (int prec = 12; prec >= 1; --prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::string(buf).size() <= 12) return buf;
  }
  throw Error(ErrorCode::InvalidModel, "value does not fit an MPS field");
}

void field_line(std::ostream& out, const char* code, const std::string& f1, const std::string& f2,
                const std::string& f3 = {}) {
  char buf[96];
  if (f3.empty()) {
    std::snprintf(buf, sizeof buf, " %-2s %-8s  %-8s", code, f1.c_str(), f2.c_str());
  } else {
    std::snprintf(buf, sizeof buf, " %-2s %-8s  %-8s  %12s", code, f1.c_str(), f2.c_str(), f3.c_str());
  }
  std::string line = buf;
  while (!line.empty() && line.back() == ' ') line.pop_back();
  out << line << '\n';
}

void marker_line(std::ostream& out, int marker, bool open) {
  char name[16];
  std::snprintf(name, sizeof name, "MARKER%02d", marker % 100);
  out << "    " << name << "  'MARKER'" << std::string(17, ' ') << (open ? "'INTORG'" : "'INTEND'") << '\n';
}

}  // namespace

void export_mps(std::ostream& out, const MilpModel& m, const std::string& model_name) {
  m.validate();
  std::vector<std::string> row_src, col_src;
  for (const auto& r : m.constraints()) row_src.push_back(r.name);
  for (const auto& v : m.variables()) col_src.push_back(v.name);
  const auto rows = mps_names(row_src, 'R', {"OBJ"});
  const auto cols = mps_names(col_src, 'C', {});

  // column-major view of the rows
  std::vector<std::vector<std::pair<int, double>>> by_col(static_cast<std::size_t>(m.num_vars()));
  for (int k = 0; k < m.num_rows(); ++k) {
    for (const auto& t : m.constraints()[static_cast<std::size_t>(k)].terms)
      by_col[static_cast<std::size_t>(t.col)].emplace_back(k, t.coef);
  }

  out << "NAME          " << model_name.substr(0, 8) << '\n';
  for (std::size_t k = 0; k < rows.size(); ++k)
    if (rows[k] != row_src[k]) out << "* row " << rows[k] << " = " << row_src[k] << '\n';
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (cols[j] != col_src[j]) out << "* col " << cols[j] << " = " << col_src[j] << '\n';

  out << "ROWS\n";
  out << " N  OBJ\n";
  for (int k = 0; k < m.num_rows(); ++k) {
    const char* code = "L";
    switch (m.constraints()[static_cast<std::size_t>(k)].sense) {
      case Sense::LessEqual: code = "L"; break;
      case Sense::GreaterEqual: code = "G"; break;
      case Sense::Equal: code = "E"; break;
    }
    out << ' ' << code << "  " << rows[static_cast<std::size_t>(k)] << '\n';
  }

  out << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (int j = 0; j < m.num_vars(); ++j) {
    const auto uj = static_cast<std::size_t>(j);
    const bool integer = m.variable(j).integer;
    if (integer != in_int) {
      marker_line(out, marker++, integer);
      in_int = integer;
    }
    const double c = m.costs()[uj];
    if (c != 0 || by_col[uj].empty()) field_line(out, "", cols[uj], "OBJ", number(c));
    for (auto [k, a] : by_col[uj]) field_line(out, "", cols[uj], rows[static_cast<std::size_t>(k)], number(a));
  }
  if (in_int) {
    marker_line(out, marker++, false);
  }

  out << "RHS\n";
  if (m.objective_constant() != 0) field_line(out, "", "RHS", "OBJ", number(-m.objective_constant()));
  for (int k = 0; k < m.num_rows(); ++k) {
    const double b = m.constraints()[static_cast<std::size_t>(k)].rhs;
    if (b != 0) field_line(out, "", "RHS", rows[static_cast<std::size_t>(k)], number(b));
  }

  out << "BOUNDS\n";
  for (int j = 0; j < m.num_vars(); ++j) {
    const auto& v = m.variable(j);
    const auto& name = cols[static_cast<std::size_t>(j)];
    if (v.lb == v.ub) {
      field_line(out, "FX", "BND", name, number(v.lb));
    } else if (v.integer && v.lb == 0 && v.ub == 1) {
      field_line(out, "BV", "BND", name);
    } else if (v.lb == -kInfinity && v.ub == kInfinity) {
      field_line(out, "FR", "BND", name);
    } else {
      if (v.lb == -kInfinity) field_line(out, "MI", "BND", name);
      else if (v.lb != 0) field_line(out, "LO", "BND", name, number(v.lb));
      if (v.ub != kInfinity) field_line(out, "UP", "BND", name, number(v.ub));
    }
  }
  out << "ENDATA\n";
}

std::string export_mps(const MilpModel& m, const std::string& model_name) {
  std::ostringstream os;
  export_mps(os, m, model_name);
  return os.str();
}

}  // namespace spcp
