#include "tdac/market_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "tdac/errors.hpp"

namespace tdac {
namespace {

std::string trim(std::string_view s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string_view::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(a, b - a + 1));
}

// Splits one CSV record; handles double-quoted fields with "" escapes.
std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

bool parse_double(std::string_view s, double& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

PriceTable parse_price_csv(std::string_view text, std::string symbol,
                           const CsvColumns& columns) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError(symbol + ": empty file");
  }
  auto header = split_csv_line(line);
  int date_col = -1, close_col = -1;
  for (size_t i = 0; i < header.size(); ++i) {
    std::string name = trim(header[i]);
    if (name == columns.date) date_col = static_cast<int>(i);
    if (name == columns.close) close_col = static_cast<int>(i);
  }
  if (date_col < 0 || close_col < 0) {
    throw ParseError(symbol + ": header must contain '" + columns.date +
                     "' and '" + columns.close + "' columns");
  }

  PriceTable table;
  table.symbol = std::move(symbol);
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    size_t need = static_cast<size_t>(std::max(date_col, close_col)) + 1;
    if (fields.size() < need) {
      throw ParseError(table.symbol + ": line " + std::to_string(line_no) +
                       ": expected at least " + std::to_string(need) + " fields");
    }
    auto date = Date::try_parse(trim(fields[date_col]));
    if (!date) {
      throw ParseError(table.symbol + ": line " + std::to_string(line_no) +
                       ": bad date '" + trim(fields[date_col]) + "'");
    }
    double close = 0.0;
    std::string close_text = trim(fields[close_col]);
    if (!parse_double(close_text, close) || !std::isfinite(close)) {
      throw ParseError(table.symbol + ": line " + std::to_string(line_no) +
                       ": bad close '" + close_text + "'");
    }
    if (close <= 0.0) {
      throw ValidationError(table.symbol + ": line " + std::to_string(line_no) +
                            ": close must be positive, got " + close_text);
    }
    table.rows.push_back({*date, close});
  }

  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const PriceRow& a, const PriceRow& b) { return a.date < b.date; });
  for (size_t i = 1; i < table.rows.size(); ++i) {
    if (table.rows[i].date == table.rows[i - 1].date) {
      throw ValidationError(table.symbol + ": duplicate date " +
                            table.rows[i].date.iso());
    }
  }
  return table;
}

PriceTable load_price_csv(const std::filesystem::path& path,
                          const CsvColumns& columns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_price_csv(buf.str(), path.stem().string(), columns);
}

PriceMatrix align(const std::vector<PriceTable>& tables) {
  if (tables.empty()) throw ValidationError("align: need at least one table");
  for (const auto& t : tables) {
    if (t.rows.empty()) throw ValidationError("align: table '" + t.symbol + "' is empty");
  }

  // Intersection of all date sets; rows are already sorted per table.
  std::vector<Date> common;
  for (const auto& row : tables.front().rows) common.push_back(row.date);
  for (size_t k = 1; k < tables.size(); ++k) {
    std::set<Date> have;
    for (const auto& row : tables[k].rows) have.insert(row.date);
    std::erase_if(common, [&](const Date& d) { return !have.count(d); });
  }
  if (common.empty()) {
    throw AlignmentError("align: no common trading days across " +
                         std::to_string(tables.size()) + " tables");
  }

  PriceMatrix m;
  m.dates = common;
  m.values.assign(common.size(), std::vector<double>(tables.size(), 0.0));
  for (size_t k = 0; k < tables.size(); ++k) {
    m.symbols.push_back(tables[k].symbol);
    std::map<Date, double> by_date;
    for (const auto& row : tables[k].rows) by_date[row.date] = row.close;
    for (size_t j = 0; j < common.size(); ++j) {
      m.values[j][k] = by_date.at(common[j]);
    }
  }
  return m;
}

ReturnMatrix log_returns(const PriceMatrix& m) {
  if (m.days() < 2) {
    throw InsufficientDataError("log_returns: need at least 2 days, got " +
                                std::to_string(m.days()));
  }
  ReturnMatrix r;
  r.symbols = m.symbols;
  r.dates.assign(m.dates.begin() + 1, m.dates.end());
  r.values.assign(m.days() - 1, std::vector<double>(m.instruments(), 0.0));
  for (size_t j = 0; j + 1 < m.days(); ++j) {
    for (size_t i = 0; i < m.instruments(); ++i) {
      r.values[j][i] = std::log(m.values[j + 1][i] / m.values[j][i]);
    }
  }
  return r;
}

PointCloud point_cloud(const ReturnMatrix& r) {
  PointCloud cloud;
  cloud.dates = r.dates;
  cloud.points = r.values;
  return cloud;
}

}  // namespace tdac
