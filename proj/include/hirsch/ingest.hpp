#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hirsch/errors.hpp"
#include "hirsch/function.hpp"
#include "hirsch/transform.hpp"

#include "json.hpp"

namespace hirsch {

/// How a discrete citation vector becomes a continuous curve: straight
/// interpolation through the rank knots, or right-continuous steps with
/// steep linear ramps at each jump.
enum class InterpolationPolicy { KnotLinear, StepRamp };

struct CitationDataset {
  std::vector<double> counts;  // sorted descending
  std::string source_label;
  InterpolationPolicy interpolation = InterpolationPolicy::KnotLinear;
  double ramp_width = 1e-6;  // StepRamp only
};

enum class DataFormat { Csv, Json };

namespace detail {

inline std::optional<double> parse_field(std::string_view field) {
  // trim
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t' || field.front() == '\r'))
    field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r'))
    field.remove_suffix(1);
  if (field.empty()) return std::nullopt;
  double v = 0.0;
  auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || p != field.data() + field.size()) return std::nullopt;
  return v;
}

}  // namespace detail

/// Parse citation counts. CSV accepts one number per line or two columns
/// rank,citations (optional header, detected by a non-numeric first line);
/// JSON accepts a flat array of numbers. Values are sorted descending
/// regardless of input order.
inline CitationDataset load_dataset(std::string_view bytes, DataFormat format,
                                    std::string source_label = {}) {
  CitationDataset ds;
  ds.source_label = std::move(source_label);

  if (format == DataFormat::Json) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::ParseError, std::string("JSON: ") + e.what());
    }
    if (!j.is_array()) throw Error(ErrorKind::ParseError, "JSON input must be a flat array");
    for (const auto& el : j) {
      if (!el.is_number())
        throw Error(ErrorKind::ParseError, "JSON array must contain only numbers");
      double v = el.get<double>();
      if (v < 0.0) throw Error(ErrorKind::NegativeValue, "citation counts must be >= 0");
      ds.counts.push_back(v);
    }
  } else {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool first_content_line = true;
    while (pos <= bytes.size()) {
      std::size_t eol = bytes.find('\n', pos);
      std::string_view line =
          bytes.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
      pos = eol == std::string_view::npos ? bytes.size() + 1 : eol + 1;
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      bool blank = line.find_first_not_of(" \t") == std::string_view::npos;
      if (blank) continue;

      std::vector<std::string_view> fields;
      std::size_t start = 0;
      while (true) {
        std::size_t comma = line.find(',', start);
        fields.push_back(line.substr(start, comma == std::string_view::npos
                                                ? std::string_view::npos
                                                : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      std::string_view value_field = fields.size() >= 2 ? fields[1] : fields[0];
      auto v = detail::parse_field(value_field);
      if (!v) {
        if (first_content_line) {  // header row
          first_content_line = false;
          continue;
        }
        throw Error(ErrorKind::ParseError,
                    "CSV: cannot parse a number on line " + std::to_string(line_no));
      }
      first_content_line = false;
      if (*v < 0.0)
        throw Error(ErrorKind::NegativeValue,
                    "citation counts must be >= 0 (line " + std::to_string(line_no) + ")");
      ds.counts.push_back(*v);
    }
  }

  std::sort(ds.counts.begin(), ds.counts.end(), std::greater<double>());
  return ds;
}

/// Continuous curve through the dataset: rank i (0-based) carries counts[i].
inline FunctionSpec to_function(const CitationDataset& ds) {
  if (ds.counts.empty()) throw Error(ErrorKind::EmptyDataset, "dataset has no entries");
  const std::size_t n = ds.counts.size();
  std::vector<std::pair<double, double>> knots;
  if (ds.interpolation == InterpolationPolicy::KnotLinear) {
    knots.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      knots.emplace_back(static_cast<double>(i), ds.counts[i]);
  } else {
    double w = ds.ramp_width;
    if (!(w > 0.0) || !(w < 1.0))
      throw Error(ErrorKind::InvalidArgument, "ramp_width must be in (0, 1)");
    knots.emplace_back(0.0, ds.counts[0]);
    for (std::size_t i = 1; i < n; ++i) {
      knots.emplace_back(static_cast<double>(i) - w, ds.counts[i - 1]);
      knots.emplace_back(static_cast<double>(i), ds.counts[i]);
    }
    knots.emplace_back(static_cast<double>(n), ds.counts[n - 1]);
  }
  return make_piecewise_linear(std::move(knots));
}

/// h_f(theta) on the interpolated citation curve. The empty dataset follows
/// the null-function convention h = 0; a single entry has no positive-width
/// domain and is rejected.
inline HirschResult generalized_h(const CitationDataset& ds, double theta,
                                  const SolverConfig& cfg = {}) {
  if (ds.counts.empty()) return {theta, 0.0, CaseTag::NullFunction, 0.0, 1, false};
  if (ds.counts.size() < 2)
    throw Error(ErrorKind::DegenerateDomain,
                "a single-entry dataset has a zero-width domain; h is undefined");
  return hirsch_eval(to_function(ds), theta, cfg);
}

/// Classical discrete h-index: the largest k with counts[k-1] >= k.
inline int discrete_h(const CitationDataset& ds) {
  int h = 0;
  for (std::size_t i = 0; i < ds.counts.size(); ++i) {
    if (ds.counts[i] >= static_cast<double>(i + 1))
      h = static_cast<int>(i + 1);
    else
      break;
  }
  return h;
}

}  // namespace hirsch
