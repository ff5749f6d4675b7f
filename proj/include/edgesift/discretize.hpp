#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "edgesift/aggregate.hpp"
#include "edgesift/schema.hpp"

namespace edgesift {

enum class BinKind { categorical, linear, logarithmic };

std::string_view to_string(BinKind kind);

// Log binning needs a positive lower edge; observed values below this floor
// fall into the first bin.
inline constexpr double kPositiveFloor = 1.0;

// Spacing is logarithmic when the observed maximum is at least ten times the
// (floored) minimum, linear otherwise.
inline bool log_binning_applies(double min_value, double max_value) {
  return max_value >= 10.0 * std::max(min_value, kPositiveFloor);
}

struct BinSpec {
  BinKind kind = BinKind::linear;
  std::size_t bins = 1;
  // Numeric kinds: bins+1 ascending edges. Bin i is [b_i, b_{i+1}); the last
  // bin also contains its upper edge. Out-of-range values clamp to the
  // nearest end bin.
  std::vector<double> boundaries;
  // Categorical: one label per bin, in domain order.
  std::vector<std::string> categories;
  // All observed values were equal (or there were none): one bin holds
  // everything.
  bool degenerate = false;

  std::size_t size() const {
    return kind == BinKind::categorical ? categories.size() : bins;
  }
  std::size_t index_of(double value) const;
  std::string bin_label(std::size_t bin) const;

  bool operator==(const BinSpec&) const = default;
};

struct DiscreteDistribution {
  std::vector<double> masses;
  std::size_t n = 0;  // sample count behind the distribution
};

// Builds the bin layout for one attribute from its pooled range stats, so
// every node's distribution for that attribute lives on the same bins.
BinSpec choose_binning(const AttributeSpec& attr,
                       const AttributeRangeStats& stats,
                       std::size_t default_bins);

// Histograms the values over the spec's bins and normalizes to mass 1.
// An empty input yields the all-zero vector with n = 0.
DiscreteDistribution bin_and_normalize(std::span<const double> values,
                                       const BinSpec& spec);

}  // namespace edgesift
