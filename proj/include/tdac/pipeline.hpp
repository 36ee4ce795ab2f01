// Sliding-window engine producing Wasserstein-distance time series.
//
// Self mode compares each window's diagram against the diagonal; cross mode
// compares same-dated windows of two clouds. Windows are independent work
// units and are evaluated with a deterministic parallel map.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tdac/market_data.hpp"

namespace tdac {

struct WindowSpec {
  std::size_t size = 30;  // days per window
  std::size_t stride = 1;
};

/// Half-open row range [begin, end) of a point cloud, labeled by the date of
/// its last row.
struct CloudWindow {
  std::size_t begin = 0;
  std::size_t end = 0;
  Date end_date;
};

/// Window count is floor((l - w) / stride) + 1; throws InsufficientDataError
/// when the cloud is shorter than one window.
std::vector<CloudWindow> sliding_windows(const PointCloud& cloud,
                                         const WindowSpec& spec);

enum class SeriesMode { self_diagonal, cross };

struct WDSeries {
  std::vector<Date> dates;  // window end dates
  std::vector<double> values;
  double degree = 2.0;
  SeriesMode mode = SeriesMode::self_diagonal;
  std::string label;

  std::size_t size() const { return values.size(); }
};

WDSeries wd_series_self(const PointCloud& cloud, const WindowSpec& spec,
                        double p, std::string label = "");

/// Requires both clouds on an identical date axis (align upstream).
WDSeries wd_series_cross(const PointCloud& a, const PointCloud& b,
                         const WindowSpec& spec, double p,
                         std::string label = "");

/// Divides every value by reference_mean (> 0).
WDSeries normalize_series(const WDSeries& s, double reference_mean);

struct CrashSummary {
  double mean = 0.0;
  double max = 0.0;
  Date max_date;
};

CrashSummary crash_summary(const WDSeries& s);

double series_mean(const WDSeries& s);

/// CSV with header "date,value", ISO dates, '.' decimal point, LF endings.
/// A nonempty comment becomes a leading "# ..." line (run metadata); the
/// reader skips any such lines.
void write_series_csv(const WDSeries& s, const std::filesystem::path& path,
                      const std::string& comment = {});
WDSeries read_series_csv(const std::filesystem::path& path);

/// Presentation-only line plot; excluded from numerical checks. An optional
/// shaded band marks a date range of interest.
struct SvgOptions {
  int width = 900;
  int height = 300;
  bool has_band = false;
  Date band_start;
  Date band_end;
  std::string comment;  // embedded as an XML comment when nonempty
};

void write_series_svg(const WDSeries& s, const std::filesystem::path& path,
                      const SvgOptions& options = {});

}  // namespace tdac
