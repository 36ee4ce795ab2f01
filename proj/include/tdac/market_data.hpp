// Price ingestion, date alignment, log returns, and point-cloud construction.
//
// All types are immutable value types once built; every operation here is a
// pure function and safe to call concurrently.
#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tdac/dates.hpp"

namespace tdac {

struct PriceRow {
  Date date;
  double close = 0.0;  // strictly positive
};

/// One instrument's closing-price history, rows strictly increasing in date.
struct PriceTable {
  std::string symbol;
  std::vector<PriceRow> rows;
};

struct CsvColumns {
  std::string date = "Date";
  std::string close = "Close";
};

/// Parses CSV text with a header row into a validated PriceTable.
/// Rows are sorted by date; duplicate dates, non-positive closes and
/// malformed rows are rejected with the offending line number.
PriceTable parse_price_csv(std::string_view text, std::string symbol,
                           const CsvColumns& columns = {});

PriceTable load_price_csv(const std::filesystem::path& path,
                          const CsvColumns& columns = {});

/// Date-aligned closing prices: values[row][col] for dates[row], symbols[col].
struct PriceMatrix {
  std::vector<std::string> symbols;
  std::vector<Date> dates;
  std::vector<std::vector<double>> values;

  std::size_t days() const { return dates.size(); }
  std::size_t instruments() const { return symbols.size(); }
};

/// Inner join on dates across all tables; column order = input order.
/// Throws AlignmentError when the date intersection is empty.
PriceMatrix align(const std::vector<PriceTable>& tables);

/// Log returns, one row per consecutive date pair, dated at the later day.
struct ReturnMatrix {
  std::vector<std::string> symbols;
  std::vector<Date> dates;
  std::vector<std::vector<double>> values;

  std::size_t days() const { return dates.size(); }
  std::size_t instruments() const { return symbols.size(); }
};

ReturnMatrix log_returns(const PriceMatrix& m);

/// Daily return vectors as points in R^n, one point per return date.
struct PointCloud {
  std::vector<Date> dates;
  std::vector<std::vector<double>> points;

  std::size_t size() const { return points.size(); }
  std::size_t dimension() const { return points.empty() ? 0 : points.front().size(); }
};

PointCloud point_cloud(const ReturnMatrix& r);

// --- Remote fetch -----------------------------------------------------------
//
// Optional and isolated: nothing else in the library touches the network.
// The endpoint is a URL template; {symbol}, {start} and {end} are substituted
// per request and the response body must be CSV in the same shape as local
// files.

struct FetchSpec {
  std::vector<std::string> symbols;
  Date start;
  Date end;
  std::string endpoint;  // e.g. "http://host:port/csv?s={symbol}&a={start}&b={end}"
  CsvColumns columns;
};

struct FetchOutcome {
  std::string symbol;
  std::optional<PriceTable> table;
  std::string error;  // empty on success

  bool ok() const { return table.has_value(); }
};

/// Fetches each symbol independently; failures are reported per symbol and
/// never abort the batch. Results keep the input symbol order.
std::vector<FetchOutcome> fetch_prices(const FetchSpec& spec);

}  // namespace tdac
