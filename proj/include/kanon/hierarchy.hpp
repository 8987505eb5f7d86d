#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "kanon/dataset.hpp"

namespace kanon {

/// Domain generalization hierarchy for one attribute: an ordered chain of
/// value domains D0..Dh with a total child-to-parent map between adjacent
/// levels. Level 0 is the ground domain; generalizing replaces a value with
/// its ancestor at the requested level. The suppressed sentinel acts as an
/// implicit root above every hierarchy: it maps to itself at all levels.
class GeneralizationHierarchy {
 public:
  /// Raw constructor; performs no consistency checks so that
  /// validate_hierarchy can report violations on arbitrary instances.
  GeneralizationHierarchy(std::string attribute,
                          std::vector<std::vector<std::string>> level_domains,
                          std::vector<std::map<std::string, std::string>> maps,
                          bool rooted = false);

  const std::string& attribute() const noexcept { return attribute_; }
  int height() const noexcept {
    return static_cast<int>(level_domains_.size()) - 1;
  }
  bool rooted() const noexcept { return rooted_; }

  const std::vector<std::vector<std::string>>& level_domains() const noexcept {
    return level_domains_;
  }
  const std::vector<std::map<std::string, std::string>>& maps()
      const noexcept {
    return maps_;
  }

  bool covers(const std::string& ground_value) const noexcept;

  /// Ancestor of `value` lifted from `from_level` to `to_level`.
  /// Requires from_level <= to_level and value in the from_level domain.
  std::string ancestor(const std::string& value, int from_level,
                       int to_level) const;

 private:
  std::string attribute_;
  std::vector<std::vector<std::string>> level_domains_;
  std::vector<std::map<std::string, std::string>> maps_;  // maps_[i]: Di -> Di+1
  std::vector<std::set<std::string>> domain_sets_;
  bool rooted_;
};

/// Declarative hierarchy source, resolvable to a GeneralizationHierarchy.
struct HierarchySpec {
  enum class Kind {
    /// Explicit per-value ancestor chains (one row per ground value).
    level_table,
    /// Built-in day/month/two-digit-year date chain:
    /// dd/mm/yy -> 19yy -> 19y* -> *
    date_pattern,
  };

  Kind kind = Kind::level_table;

  /// date_pattern only; the single supported pattern is "dd/mm/yy".
  std::string pattern;

  /// level_table only: ancestor chains, one per ground value, each of
  /// length height+1 (ground value first).
  std::vector<std::vector<std::string>> rows;

  /// level_table only: optional default ancestor chain (one value per level
  /// 1..h) applied to observed ground values missing from the table.
  std::vector<std::string> catch_all;

  /// When true the top level must be a single value.
  bool rooted = false;
};

struct HierarchyViolation {
  ErrorCode code;
  std::string message;
};

struct HierarchyValidation {
  std::vector<HierarchyViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Resolves a spec to a validated hierarchy. Every observed ground value
/// must be covered by level 0 (or by the catch-all); violations are hard
/// errors, never silent coarsening.
GeneralizationHierarchy load_hierarchy(
    const HierarchySpec& spec, const std::string& attribute,
    const std::set<std::string>& observed_ground_values);

/// Structural check: totality and functionality of every level map, level
/// ordering, and the rooted-top constraint. Returns all violations rather
/// than stopping at the first; never throws.
HierarchyValidation validate_hierarchy(const GeneralizationHierarchy& h);

/// Level-`level` ancestor of a ground value. Suppressed cells map to
/// suppressed at every level.
Cell generalize_value(const GeneralizationHierarchy& h, const Cell& value,
                      int level);

/// Replaces every cell of `attr` with its level-`level` ancestor; all other
/// columns and the row order are unchanged.
Dataset generalize_column(const Dataset& dataset, const std::string& attr,
                          const GeneralizationHierarchy& h, int level);

}  // namespace kanon
