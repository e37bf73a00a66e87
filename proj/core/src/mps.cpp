#include "mipdoor/mps.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <spdlog/spdlog.h>

#include "mipdoor/errors.hpp"

namespace mipdoor {
namespace {

// Coefficients at or beyond this magnitude are read as infinite, following
// the usual MPS convention.
constexpr double kMpsInfinity = 1e30;

enum class Section { kNone, kName, kObjSense, kRows, kColumns, kRhs, kRanges, kBounds, kEnd };

std::string upper_case(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_free(std::string_view line) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.emplace_back(line.substr(start, i - start));
  }
  return tokens;
}

// Fixed MPS field columns (1-based, inclusive): 2-3, 5-12, 15-22, 25-36, 40-47, 50-61.
std::vector<std::string> split_fixed(std::string_view line) {
  static constexpr std::pair<std::size_t, std::size_t> kFields[] = {
      {2, 3}, {5, 12}, {15, 22}, {25, 36}, {40, 47}, {50, 61}};
  std::vector<std::string> tokens;
  for (const auto& [from, to] : kFields) {
    if (line.size() < from) break;
    const std::size_t begin = from - 1;
    const std::size_t len = std::min(to, line.size()) - begin;
    const std::string_view field = trim(line.substr(begin, len));
    if (!field.empty()) tokens.emplace_back(field);
  }
  return tokens;
}

std::optional<double> to_number(std::string_view token) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    const std::string u = upper_case(std::string(token));
    if (u == "INF" || u == "INFINITY" || u == "+INF") return kInfinity;
    if (u == "-INF" || u == "-INFINITY") return -kInfinity;
    return std::nullopt;
  }
  if (value >= kMpsInfinity) return kInfinity;
  if (value <= -kMpsInfinity) return -kInfinity;
  return value;
}

struct RowData {
  std::string name;
  char type = 'L';
  double rhs = 0.0;
  std::optional<double> range;
  std::vector<std::pair<int, double>> entries;
};

class MpsReader {
 public:
  explicit MpsReader(bool fixed) : fixed_(fixed) {}

  MipInstance parse(std::string_view text) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++line_no_;
      handle_line(text.substr(pos, end - pos));
      if (section_ == Section::kEnd) break;
      pos = end + 1;
    }
    if (section_ != Section::kEnd) fail("missing ENDATA");
    return assemble();
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw MalformedMps(line_no_, what); }

  double number(std::string_view token) const {
    const auto value = to_number(token);
    if (!value) fail("expected a number, got '" + std::string(token) + "'");
    return *value;
  }

  void handle_line(std::string_view raw) {
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (trim(raw).empty() || raw.front() == '*') return;
    if (!std::isspace(static_cast<unsigned char>(raw.front()))) {
      handle_header(raw);
      return;
    }
    std::vector<std::string> tokens = fixed_ ? split_fixed(raw) : split_free(raw);
    if (tokens.empty()) return;
    switch (section_) {
      case Section::kObjSense: handle_objsense(tokens.front()); break;
      case Section::kRows: handle_row(tokens); break;
      case Section::kColumns: handle_column(tokens); break;
      case Section::kRhs: handle_rhs(tokens, /*ranges=*/false); break;
      case Section::kRanges: handle_rhs(tokens, /*ranges=*/true); break;
      case Section::kBounds: handle_bound(tokens); break;
      case Section::kName: fail("unexpected data after NAME");
      default: fail("data line outside of any section");
    }
  }

  void handle_header(std::string_view raw) {
    const std::vector<std::string> tokens = split_free(raw);
    const std::string keyword = upper_case(tokens.front());
    if (section_ == Section::kColumns && in_integer_block_) {
      fail("INTORG marker without matching INTEND");
    }
    if (keyword == "NAME") {
      section_ = Section::kName;
      name_ = std::string(trim(trim(raw).substr(4)));
    } else if (keyword == "OBJSENSE" || keyword == "OBJSENS") {
      section_ = Section::kObjSense;
      if (tokens.size() > 1) handle_objsense(tokens[1]);
    } else if (keyword == "ROWS") {
      section_ = Section::kRows;
    } else if (keyword == "COLUMNS") {
      section_ = Section::kColumns;
    } else if (keyword == "RHS") {
      section_ = Section::kRhs;
    } else if (keyword == "RANGES") {
      section_ = Section::kRanges;
    } else if (keyword == "BOUNDS") {
      section_ = Section::kBounds;
    } else if (keyword == "ENDATA") {
      section_ = Section::kEnd;
    } else {
      fail("unknown section '" + tokens.front() + "'");
    }
  }

  void handle_objsense(const std::string& token) {
    const std::string sense = upper_case(token);
    if (sense == "MAX" || sense == "MAXIMIZE") {
      maximize_ = true;
    } else if (sense == "MIN" || sense == "MINIMIZE") {
      maximize_ = false;
    } else {
      fail("unknown objective sense '" + token + "'");
    }
  }

  void handle_row(const std::vector<std::string>& t) {
    if (t.size() != 2) fail("ROWS entry needs a type and a name");
    const std::string type = upper_case(t[0]);
    if (type.size() != 1 || std::string_view("NLGE").find(type[0]) == std::string_view::npos) {
      fail("unknown row type '" + t[0] + "'");
    }
    if (row_index_.contains(t[1]) || t[1] == objective_name_ || ignored_rows_.contains(t[1])) {
      fail("duplicate row '" + t[1] + "'");
    }
    if (type[0] == 'N') {
      if (objective_name_.empty()) {
        objective_name_ = t[1];
      } else {
        spdlog::warn("MPS: ignoring additional free row '{}'", t[1]);
        ignored_rows_.insert(t[1]);
      }
      return;
    }
    row_index_.emplace(t[1], static_cast<int>(rows_.size()));
    rows_.push_back(RowData{t[1], type[0], 0.0, std::nullopt, {}});
  }

  void handle_column(const std::vector<std::string>& t) {
    if (t.size() >= 3 && upper_case(t[1]) == "'MARKER'") {
      const std::string kind = upper_case(t[2]);
      if (kind == "'INTORG'") {
        if (in_integer_block_) fail("nested INTORG marker");
        in_integer_block_ = true;
      } else if (kind == "'INTEND'") {
        if (!in_integer_block_) fail("INTEND marker without INTORG");
        in_integer_block_ = false;
      } else {
        fail("unknown marker " + t[2]);
      }
      return;
    }
    if (t.size() != 3 && t.size() != 5) fail("COLUMNS entry needs 3 or 5 fields");
    auto it = col_index_.find(t[0]);
    int col;
    if (it == col_index_.end()) {
      col = static_cast<int>(col_names_.size());
      col_index_.emplace(t[0], col);
      col_names_.push_back(t[0]);
      objective_.push_back(0.0);
      integer_.push_back(in_integer_block_ ? 1 : 0);
      lower_.push_back(0.0);
      upper_.push_back(in_integer_block_ ? 1.0 : kInfinity);
    } else {
      col = it->second;
    }
    for (std::size_t k = 1; k + 1 < t.size(); k += 2) add_coefficient(col, t[k], number(t[k + 1]));
  }

  void add_coefficient(int col, const std::string& row, double value) {
    if (!std::isfinite(value)) fail("infinite coefficient in column " + col_names_[col]);
    if (row == objective_name_) {
      if (!objective_seen_.insert(col).second) fail("duplicate objective entry for " + col_names_[col]);
      objective_[col] = value;
      return;
    }
    if (ignored_rows_.contains(row)) return;
    const auto it = row_index_.find(row);
    if (it == row_index_.end()) fail("unknown row '" + row + "'");
    const auto key = (static_cast<std::uint64_t>(it->second) << 32) | static_cast<std::uint32_t>(col);
    if (!entry_seen_.insert(key).second) {
      fail("duplicate entry for column " + col_names_[col] + " in row " + row);
    }
    rows_[it->second].entries.emplace_back(col, value);
  }

  void handle_rhs(const std::vector<std::string>& t, bool ranges) {
    if (t.size() < 2 || t.size() > 5) fail("RHS/RANGES entry has a bad field count");
    const std::size_t first = (t.size() % 2 == 0) ? 0 : 1;
    for (std::size_t k = first; k + 1 < t.size(); k += 2) {
      const std::string& row = t[k];
      const double value = number(t[k + 1]);
      if (!std::isfinite(value)) fail("infinite RHS/RANGES value for row " + row);
      if (row == objective_name_) {
        if (ranges) fail("RANGES entry on the objective row");
        objective_rhs_ = value;
        continue;
      }
      if (ignored_rows_.contains(row)) continue;
      const auto it = row_index_.find(row);
      if (it == row_index_.end()) fail("unknown row '" + row + "'");
      if (ranges) {
        rows_[it->second].range = value;
      } else {
        rows_[it->second].rhs = value;
      }
    }
  }

  void handle_bound(const std::vector<std::string>& t) {
    const std::string type = upper_case(t[0]);
    const bool needs_value =
        type == "UP" || type == "LO" || type == "FX" || type == "LI" || type == "UI";
    const bool no_value = type == "FR" || type == "MI" || type == "PL" || type == "BV";
    if (!needs_value && !no_value) fail("unsupported bound type '" + t[0] + "'");

    std::string col_name;
    std::optional<double> value;
    if (needs_value) {
      if (t.size() == 4) {
        col_name = t[2];
        value = number(t[3]);
      } else if (t.size() == 3) {
        col_name = t[1];
        value = number(t[2]);
      } else {
        fail("bound " + type + " needs a column and a value");
      }
    } else if (t.size() == 2) {
      col_name = t[1];
    } else if (t.size() == 3) {
      col_name = (col_index_.contains(t[1]) && to_number(t[2])) ? t[1] : t[2];
    } else if (t.size() == 4) {
      col_name = t[2];
    } else {
      fail("bad field count for bound " + type);
    }
    const auto it = col_index_.find(col_name);
    if (it == col_index_.end()) fail("bound on unknown column '" + col_name + "'");
    const int j = it->second;

    if (type == "UP" || type == "UI") {
      upper_[j] = *value;
      if (*value < 0.0 && lower_[j] == 0.0) {
        spdlog::warn("MPS: negative upper bound on {} with zero lower bound; lower set to -inf",
                     col_name);
        lower_[j] = -kInfinity;
      }
      if (type == "UI") integer_[j] = 1;
    } else if (type == "LO" || type == "LI") {
      lower_[j] = *value;
      if (type == "LI") integer_[j] = 1;
    } else if (type == "FX") {
      lower_[j] = upper_[j] = *value;
    } else if (type == "FR") {
      lower_[j] = -kInfinity;
      upper_[j] = kInfinity;
    } else if (type == "MI") {
      lower_[j] = -kInfinity;
    } else if (type == "PL") {
      upper_[j] = kInfinity;
    } else if (type == "BV") {
      integer_[j] = 1;
      lower_[j] = 0.0;
      upper_[j] = 1.0;
    }
  }

  MipInstance assemble() {
    if (objective_name_.empty() && rows_.empty() && col_names_.empty()) {
      throw EmptyInstance("MPS model '" + name_ + "' is empty");
    }
    MipInstance inst;
    inst.name = name_;
    if (!objective_name_.empty()) inst.objective_name = objective_name_;
    inst.var_names = col_names_;
    inst.objective = objective_;
    inst.objective_offset = -objective_rhs_;
    inst.lower = lower_;
    inst.upper = upper_;
    for (int j = 0; j < static_cast<int>(integer_.size()); ++j) {
      if (integer_[j]) inst.integer_vars.push_back(j);
    }
    for (RowData& row : rows_) {
      std::sort(row.entries.begin(), row.entries.end());
      Constraint c;
      c.name = row.name;
      for (const auto& [j, v] : row.entries) {
        c.index.push_back(j);
        c.value.push_back(v);
      }
      c.rhs = row.rhs;
      c.sense = static_cast<RowSense>(row.type);
      if (!row.range) {
        inst.constraints.push_back(std::move(c));
        continue;
      }
      // A ranged row becomes lo <= a x <= hi, stored as two inequalities.
      const double r = *row.range;
      double lo = 0.0;
      double hi = 0.0;
      switch (row.type) {
        case 'L': lo = row.rhs - std::abs(r); hi = row.rhs; break;
        case 'G': lo = row.rhs; hi = row.rhs + std::abs(r); break;
        default:
          lo = r >= 0.0 ? row.rhs : row.rhs + r;
          hi = r >= 0.0 ? row.rhs + r : row.rhs;
          break;
      }
      Constraint second = c;
      second.name = c.name + "#range";
      if (row.type == 'L') {
        second.sense = RowSense::kGreaterEqual;
        second.rhs = lo;
      } else {
        c.sense = RowSense::kGreaterEqual;
        c.rhs = lo;
        second.sense = RowSense::kLessEqual;
        second.rhs = hi;
      }
      inst.constraints.push_back(std::move(c));
      inst.constraints.push_back(std::move(second));
    }
    if (maximize_) {
      inst.objective_negated = true;
      for (double& c : inst.objective) c = -c;
      inst.objective_offset = -inst.objective_offset;
    }
    try {
      validate(inst);
    } catch (const std::invalid_argument& e) {
      throw MalformedMps(line_no_, e.what());
    }
    return inst;
  }

  bool fixed_;
  int line_no_ = 0;
  Section section_ = Section::kNone;
  bool in_integer_block_ = false;
  bool maximize_ = false;
  std::string name_;
  std::string objective_name_;
  double objective_rhs_ = 0.0;
  std::unordered_set<std::string> ignored_rows_;
  std::unordered_map<std::string, int> row_index_;
  std::vector<RowData> rows_;
  std::unordered_map<std::string, int> col_index_;
  std::vector<std::string> col_names_;
  std::vector<double> objective_;
  std::vector<char> integer_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::unordered_set<int> objective_seen_;
  std::unordered_set<std::uint64_t> entry_seen_;
};

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

MipInstance parse_mps(std::string_view text, MpsFormat format) {
  switch (format) {
    case MpsFormat::kFree: return MpsReader(false).parse(text);
    case MpsFormat::kFixed: return MpsReader(true).parse(text);
    case MpsFormat::kAuto: break;
  }
  try {
    return MpsReader(false).parse(text);
  } catch (const MalformedMps& free_error) {
    try {
      return MpsReader(true).parse(text);
    } catch (const MalformedMps&) {
      throw free_error;
    }
  }
}

MipInstance read_mps_file(const std::filesystem::path& path, MpsFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  MipInstance inst = parse_mps(buffer.str(), format);
  if (inst.name.empty()) inst.name = path.stem().string();
  return inst;
}

std::string write_mps(const MipInstance& inst) {
  std::ostringstream out;
  out << "NAME " << inst.name << "\n";
  if (inst.objective_negated) out << "OBJSENSE\n    MAX\n";
  out << "ROWS\n N  " << inst.objective_name << "\n";
  for (const Constraint& c : inst.constraints) {
    out << ' ' << static_cast<char>(c.sense) << "  " << c.name << "\n";
  }

  const double sign = inst.objective_negated ? -1.0 : 1.0;
  std::vector<std::vector<std::pair<int, double>>> by_column(inst.num_vars());
  for (int i = 0; i < inst.num_cons(); ++i) {
    const Constraint& c = inst.constraints[i];
    for (std::size_t k = 0; k < c.index.size(); ++k) by_column[c.index[k]].emplace_back(i, c.value[k]);
  }
  out << "COLUMNS\n";
  bool in_block = false;
  int marker = 0;
  for (int j = 0; j < inst.num_vars(); ++j) {
    const bool integer = inst.is_integer(j);
    if (integer != in_block) {
      out << "    MARKER" << marker++ << "  'MARKER'  " << (integer ? "'INTORG'" : "'INTEND'") << "\n";
      in_block = integer;
    }
    const std::string& name = inst.var_names[j];
    if (inst.objective[j] != 0.0 || by_column[j].empty()) {
      out << "    " << name << "  " << inst.objective_name << "  "
          << format_number(sign * inst.objective[j]) << "\n";
    }
    for (const auto& [i, v] : by_column[j]) {
      out << "    " << name << "  " << inst.constraints[i].name << "  " << format_number(v) << "\n";
    }
  }
  if (in_block) out << "    MARKER" << marker << "  'MARKER'  'INTEND'\n";

  out << "RHS\n";
  for (const Constraint& c : inst.constraints) {
    if (c.rhs != 0.0) out << "    RHS  " << c.name << "  " << format_number(c.rhs) << "\n";
  }
  if (inst.objective_offset != 0.0) {
    out << "    RHS  " << inst.objective_name << "  "
        << format_number(-sign * inst.objective_offset) << "\n";
  }

  out << "BOUNDS\n";
  for (int j = 0; j < inst.num_vars(); ++j) {
    const double lo = inst.lower[j];
    const double up = inst.upper[j];
    const std::string& name = inst.var_names[j];
    const double default_up = inst.is_integer(j) ? 1.0 : kInfinity;
    if (lo == 0.0 && up == default_up) continue;
    if (lo == up) {
      out << " FX BND  " << name << "  " << format_number(lo) << "\n";
      continue;
    }
    if (lo == -kInfinity && up == kInfinity) {
      out << " FR BND  " << name << "\n";
      continue;
    }
    if (lo == -kInfinity) {
      out << " MI BND  " << name << "\n";
    } else if (lo != 0.0) {
      out << " LO BND  " << name << "  " << format_number(lo) << "\n";
    }
    if (up == kInfinity) {
      if (default_up != kInfinity) out << " PL BND  " << name << "\n";
    } else if (up != default_up || lo == -kInfinity) {
      out << " UP BND  " << name << "  " << format_number(up) << "\n";
    }
  }
  out << "ENDATA\n";
  return out.str();
}

}  // namespace mipdoor
