#include "edgesift/discretize.hpp"

#include <algorithm>
#include <cmath>

#include "edgesift/csv.hpp"

namespace edgesift {

std::string_view to_string(BinKind kind) {
  switch (kind) {
    case BinKind::categorical: return "categorical";
    case BinKind::linear: return "linear";
    case BinKind::logarithmic: return "logarithmic";
  }
  throw InternalError("unknown bin kind");
}

std::size_t BinSpec::index_of(double value) const {
  if (kind == BinKind::categorical) {
    auto idx = static_cast<std::size_t>(value);
    if (value < 0.0 || idx >= categories.size())
      throw UsageError("bin index " + csv::format_double(value) +
                       " outside the categorical domain");
    return idx;
  }
  if (bins == 1) return 0;
  // upper_bound: first edge strictly above the value; the bin below it.
  auto it = std::upper_bound(boundaries.begin(), boundaries.end(), value);
  if (it == boundaries.begin()) return 0;
  auto bin = static_cast<std::size_t>(it - boundaries.begin()) - 1;
  return bin >= bins ? bins - 1 : bin;
}

std::string BinSpec::bin_label(std::size_t bin) const {
  if (bin >= size()) throw UsageError("bin_label: bin out of range");
  if (kind == BinKind::categorical) return categories[bin];
  const bool last = bin + 1 == bins;
  return "[" + csv::format_double(boundaries[bin]) + ", " +
         csv::format_double(boundaries[bin + 1]) + (last ? "]" : ")");
}

namespace {

BinSpec degenerate_spec(double value) {
  BinSpec spec;
  spec.kind = BinKind::linear;
  spec.bins = 1;
  spec.boundaries = {value, value};
  spec.degenerate = true;
  return spec;
}

}  // namespace

BinSpec choose_binning(const AttributeSpec& attr,
                       const AttributeRangeStats& stats,
                       std::size_t default_bins) {
  if (attr.kind == AttributeKind::categorical) {
    BinSpec spec;
    spec.kind = BinKind::categorical;
    spec.bins = attr.domain.size();
    spec.categories = attr.domain;
    return spec;
  }
  if (default_bins == 0) throw UsageError("choose_binning: zero bins");
  if (stats.empty() || stats.min == stats.max)
    return degenerate_spec(stats.empty() ? 0.0 : stats.min);

  BinSpec spec;
  spec.bins = default_bins;
  spec.boundaries.resize(default_bins + 1);
  const auto d = static_cast<double>(default_bins);
  if (log_binning_applies(stats.min, stats.max)) {
    spec.kind = BinKind::logarithmic;
    const double lo = std::max(stats.min, kPositiveFloor);
    const double ratio = stats.max / lo;
    for (std::size_t i = 1; i < default_bins; ++i)
      spec.boundaries[i] =
          lo * std::pow(ratio, static_cast<double>(i) / d);
    spec.boundaries[0] = lo;
    spec.boundaries[default_bins] = stats.max;
  } else {
    spec.kind = BinKind::linear;
    const double width = stats.max - stats.min;
    for (std::size_t i = 1; i < default_bins; ++i)
      spec.boundaries[i] =
          stats.min + width * static_cast<double>(i) / d;
    spec.boundaries[0] = stats.min;
    spec.boundaries[default_bins] = stats.max;
  }
  for (std::size_t i = 0; i < default_bins; ++i)
    if (!(spec.boundaries[i] < spec.boundaries[i + 1]))
      return degenerate_spec(stats.min);  // range too narrow to split
  return spec;
}

DiscreteDistribution bin_and_normalize(std::span<const double> values,
                                       const BinSpec& spec) {
  DiscreteDistribution dist;
  dist.masses.assign(spec.size(), 0.0);
  dist.n = values.size();
  if (values.empty()) return dist;
  for (double v : values) dist.masses[spec.index_of(v)] += 1.0;
  const auto n = static_cast<double>(values.size());
  for (auto& m : dist.masses) m /= n;
  return dist;
}

}  // namespace edgesift
