#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kanon/dataset.hpp"
#include "kanon/hierarchy.hpp"

namespace kanon {

/// Maximal group of rows sharing one quasi-identifier tuple.
struct EquivalenceClass {
  std::vector<Cell> key;
  std::vector<std::size_t> rows;  // ascending row indices

  std::size_t size() const noexcept { return rows.size(); }
};

/// How group sizes are counted when checking a k target.
///   strict:        rows grouped by the full tuple of checked attributes;
///                  suppressed compares equal only to suppressed.
///   per_attribute: each checked attribute's value frequencies are counted
///                  independently; suppressed cells are excluded.
/// strict implies per_attribute at the same k; the converse does not hold.
enum class CheckMode { strict, per_attribute };

struct PrivacyParams {
  int k = 2;
  std::optional<int> l;
  CheckMode mode = CheckMode::strict;
  /// Extra attributes checked alongside the quasi-identifiers, for columns
  /// that stay published but could still single out a record by linkage.
  std::vector<std::string> linkage_attrs;
};

struct UtilityReport {
  double precision = 1.0;
  double suppression_ratio = 0.0;
  std::size_t records_suppressed = 0;
  double avg_class_size = 0.0;
  std::size_t min_class_size = 0;
  std::map<std::string, int> per_attribute_level;
};

/// Groups rows by their tuple over `qid`. Classes are ordered
/// lexicographically by key (suppressed first), row indices ascending.
/// Empty qid yields a single class holding every row.
std::vector<EquivalenceClass> partition_by_qid(
    const Dataset& d, const std::vector<std::string>& qid);

/// Smallest equivalence-class size; d is k-anonymous over qid iff the
/// result is >= k. Requires at least one row.
std::size_t k_anonymity_level(const Dataset& d,
                              const std::vector<std::string>& qid);

/// Per-attribute value frequencies: for each listed attribute, the
/// non-suppressed values occurring fewer than k times. Attributes without
/// violations are omitted; an empty map means the per-attribute check
/// passes at k.
std::map<std::string, std::set<std::string>> attribute_frequency_violations(
    const Dataset& d, const std::vector<std::string>& attrs, int k);

/// Distinct diversity: minimum over equivalence classes of the number of
/// distinct non-suppressed values of `sensitive`. The table is l-diverse
/// iff the result is >= l.
std::size_t l_diversity_level(const Dataset& d,
                              const std::vector<std::string>& qid,
                              const std::string& sensitive);

/// Utility of `published` relative to `original`.
///
/// precision = 1 - (sum over published cells of hierarchical qid attrs of
/// level/height, suppressed cells counting 1) / (rows x attr count); 1.0
/// when no cells participate. suppression_ratio counts suppressed cells
/// plus all cells of removed records against original rows x published
/// columns. Class statistics come from partitioning `published` by `qid`.
UtilityReport compute_utility(
    const Dataset& original, const Dataset& published,
    const std::map<std::string, GeneralizationHierarchy>& hierarchies,
    const std::map<std::string, int>& levels,
    const std::vector<std::string>& qid);

}  // namespace kanon
