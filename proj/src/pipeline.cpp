#include "tdac/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tdac/errors.hpp"
#include "tdac/parallel.hpp"
#include "tdac/persistence.hpp"
#include "tdac/wasserstein.hpp"

namespace tdac {
namespace {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

PersistenceDiagram window_diagram(const PointCloud& cloud, const CloudWindow& w) {
  std::span<const std::vector<double>> pts(cloud.points.data() + w.begin,
                                           w.end - w.begin);
  return h0_persistence(pairwise_distances(pts));
}

}  // namespace

std::vector<CloudWindow> sliding_windows(const PointCloud& cloud,
                                         const WindowSpec& spec) {
  if (spec.size < 1) throw ValidationError("sliding_windows: window size must be >= 1");
  if (spec.stride < 1) throw ValidationError("sliding_windows: stride must be >= 1");
  const std::size_t l = cloud.size();
  if (l < spec.size) {
    throw InsufficientDataError("sliding_windows: cloud has " + std::to_string(l) +
                                " points, window needs " + std::to_string(spec.size));
  }
  std::vector<CloudWindow> windows;
  windows.reserve((l - spec.size) / spec.stride + 1);
  for (std::size_t j = 0; j + spec.size <= l; j += spec.stride) {
    windows.push_back({j, j + spec.size, cloud.dates[j + spec.size - 1]});
  }
  return windows;
}

WDSeries wd_series_self(const PointCloud& cloud, const WindowSpec& spec,
                        double p, std::string label) {
  const auto windows = sliding_windows(cloud, spec);
  WDSeries s;
  s.degree = p;
  s.mode = SeriesMode::self_diagonal;
  s.label = std::move(label);
  s.values = parallel_map(windows.size(), [&](std::size_t k) {
    return wd_to_diagonal(window_diagram(cloud, windows[k]), p);
  });
  s.dates.reserve(windows.size());
  for (const auto& w : windows) s.dates.push_back(w.end_date);
  return s;
}

WDSeries wd_series_cross(const PointCloud& a, const PointCloud& b,
                         const WindowSpec& spec, double p, std::string label) {
  if (a.dates != b.dates) {
    throw AlignmentError("wd_series_cross: clouds must share one date axis");
  }
  const auto windows = sliding_windows(a, spec);
  WDSeries s;
  s.degree = p;
  s.mode = SeriesMode::cross;
  s.label = std::move(label);
  s.values = parallel_map(windows.size(), [&](std::size_t k) {
    return wd_between(window_diagram(a, windows[k]), window_diagram(b, windows[k]), p);
  });
  s.dates.reserve(windows.size());
  for (const auto& w : windows) s.dates.push_back(w.end_date);
  return s;
}

WDSeries normalize_series(const WDSeries& s, double reference_mean) {
  if (!(reference_mean > 0.0)) {
    throw ValidationError("normalize_series: reference mean must be positive");
  }
  WDSeries out = s;
  for (auto& v : out.values) v /= reference_mean;
  return out;
}

double series_mean(const WDSeries& s) {
  if (s.values.empty()) throw ValidationError("series_mean: empty series");
  double sum = 0.0;
  for (double v : s.values) sum += v;
  return sum / static_cast<double>(s.values.size());
}

CrashSummary crash_summary(const WDSeries& s) {
  if (s.values.empty()) throw ValidationError("crash_summary: empty series");
  CrashSummary cs;
  cs.mean = series_mean(s);
  std::size_t arg = 0;
  for (std::size_t i = 1; i < s.values.size(); ++i) {
    if (s.values[i] > s.values[arg]) arg = i;
  }
  cs.max = s.values[arg];
  cs.max_date = s.dates[arg];
  return cs;
}

void write_series_csv(const WDSeries& s, const std::filesystem::path& path,
                      const std::string& comment) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  if (!comment.empty()) out << "# " << comment << '\n';
  out << "date,value\n";
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    out << s.dates[i].iso() << ',' << format_double(s.values[i]) << '\n';
  }
}

WDSeries read_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  WDSeries s;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      header_seen = true;  // "date,value" header row
      continue;
    }
    auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError(path.string() + ": line " + std::to_string(line_no) +
                       ": expected date,value");
    }
    s.dates.push_back(Date::parse(line.substr(0, comma)));
    double v = 0.0;
    const char* first = line.data() + comma + 1;
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
      throw ParseError(path.string() + ": line " + std::to_string(line_no) +
                       ": bad value");
    }
    s.values.push_back(v);
  }
  if (!header_seen) throw ParseError(path.string() + ": empty file");
  return s;
}

void write_series_svg(const WDSeries& s, const std::filesystem::path& path,
                      const SvgOptions& options) {
  if (s.values.empty()) throw ValidationError("write_series_svg: empty series");
  const int w = options.width, h = options.height;
  const int ml = 56, mr = 16, mt = 16, mb = 36;  // margins
  const double x0 = s.dates.front().serial();
  const double x1 = s.dates.back().serial();
  const double xspan = std::max(1.0, x1 - x0);
  double vmax = *std::max_element(s.values.begin(), s.values.end());
  if (vmax <= 0.0) vmax = 1.0;

  auto sx = [&](const Date& d) {
    return ml + (d.serial() - x0) / xspan * (w - ml - mr);
  };
  auto sy = [&](double v) { return h - mb - v / vmax * (h - mt - mb); };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  if (!options.comment.empty()) out << "<!-- " << options.comment << " -->\n";
  out << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";

  if (options.has_band) {
    const double bx0 = std::max<double>(ml, sx(options.band_start));
    const double bx1 = std::min<double>(w - mr, sx(options.band_end));
    if (bx1 > bx0) {
      out << "<rect x=\"" << bx0 << "\" y=\"" << mt << "\" width=\"" << bx1 - bx0
          << "\" height=\"" << h - mt - mb
          << "\" fill=\"#d62728\" fill-opacity=\"0.12\" stroke=\"#d62728\""
          << " stroke-dasharray=\"4 3\"/>\n";
    }
  }

  // axes
  out << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr
      << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";

  // x labels: roughly 6 evenly spaced, mm-yyyy
  const std::size_t n = s.dates.size();
  const std::size_t step = std::max<std::size_t>(1, n / 6);
  for (std::size_t i = 0; i < n; i += step) {
    out << "<text x=\"" << sx(s.dates[i]) << "\" y=\"" << h - mb + 16
        << "\" font-size=\"11\" text-anchor=\"middle\">"
        << s.dates[i].month_year() << "</text>\n";
  }
  // y labels
  for (int k = 0; k <= 4; ++k) {
    const double v = vmax * k / 4.0;
    out << "<text x=\"" << ml - 6 << "\" y=\"" << sy(v) + 4
        << "\" font-size=\"11\" text-anchor=\"end\">" << format_double(v)
        << "</text>\n";
  }

  out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.2\" points=\"";
  for (std::size_t i = 0; i < n; ++i) {
    out << sx(s.dates[i]) << ',' << sy(s.values[i]);
    if (i + 1 < n) out << ' ';
  }
  out << "\"/>\n";
  if (!s.label.empty()) {
    out << "<text x=\"" << ml + 8 << "\" y=\"" << mt + 14
        << "\" font-size=\"12\">" << s.label << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace tdac
