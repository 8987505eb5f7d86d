#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kanon/dataset.hpp"
#include "kanon/hierarchy.hpp"
#include "kanon/metrics.hpp"

namespace kanon {

/// One manual suppression step, applied before enforcement.
struct SuppressionDirective {
  enum class Kind {
    cell_value,  // blank every cell of `attribute` equal to `value`
    cell_at,     // blank `attribute` in the listed rows
    record,      // remove the listed rows
  };

  Kind kind = Kind::cell_value;
  std::string attribute;
  std::string value;
  std::vector<std::size_t> rows;
};

/// Generalization level per hierarchical attribute; identifies one node of
/// the full-domain generalization lattice.
using LevelVector = std::map<std::string, int>;

/// Coordinate of a blanked cell, in the row frame of the de-identified
/// input (before any record removal).
struct CellRef {
  std::size_t row = 0;
  std::string attribute;
};

/// Audit trail of a run. final_levels, suppressed_cells and
/// suppressed_records describe the full transformation of the de-identified
/// input: generalizing every listed attribute to its final level, blanking
/// the listed cells, then removing the listed records reproduces the
/// published dataset exactly.
struct AnonymizationReport {
  LevelVector final_levels;
  std::vector<SuppressionDirective> directives;
  std::vector<CellRef> suppressed_cells;
  std::vector<std::size_t> suppressed_records;
  std::size_t achieved_k = 0;
  std::optional<std::size_t> achieved_l;  // nullopt: no sensitive attributes
  CheckMode mode = CheckMode::strict;
  std::size_t iterations = 0;
  UtilityReport utility;
  std::vector<std::string> retained_pii;
  std::vector<std::string> warnings;
};

struct AnonymizationResult {
  Dataset data;
  AnonymizationReport report;
};

/// Complete declarative run configuration.
struct Policy {
  std::map<std::string, AttributeCategory> classification;
  std::vector<std::string> retain;
  std::map<std::string, std::string> hierarchy_refs;     // attribute -> spec
  std::map<std::string, HierarchySpec> hierarchy_specs;  // name -> spec
  LevelVector base_levels;
  PrivacyParams params;
  double suppression_budget = 1.0;
  std::vector<SuppressionDirective> directives;
  std::string suppressed_marker = "*";
};

/// Outcome of a read-only audit of an existing table against a policy.
struct CheckResult {
  std::size_t achieved_k = 0;
  std::size_t min_class_size = 0;
  std::map<std::string, std::set<std::string>> frequency_violations;
  std::optional<std::size_t> achieved_l;
  CheckMode mode = CheckMode::strict;
  bool k_satisfied = false;
  bool l_satisfied = true;
  bool target_met = false;
};

/// Applies one cell-kind directive; every untouched cell is unchanged.
Dataset suppress_cells(const Dataset& d, const SuppressionDirective& directive);

/// Removes the listed rows, preserving the relative order of survivors.
Dataset suppress_records(const Dataset& d,
                         const std::vector<std::size_t>& indices);

/// Greedy full-domain lattice ascent. Starting from `initial_levels`
/// (absolute levels the data already sits at, defaulting to zero), each
/// round either suppresses the remaining violating records when they fit
/// within `budget` (max suppressed-record fraction of the input) or raises
/// by one level the attribute whose increment most reduces the count of
/// rows failing the mode's k-check over qid plus params.linkage_attrs; ties
/// fall to the smaller precision loss, then schema order. Throws
/// infeasible_within_budget when violators remain with every level maxed.
///
/// The report carries final_levels (absolute), suppressed record indices
/// (into d), iteration count, mode and achieved k; callers fill the rest.
AnonymizationResult enforce_k_anonymity(
    const Dataset& d, const std::vector<std::string>& qid,
    const std::map<std::string, GeneralizationHierarchy>& hierarchies,
    const PrivacyParams& params, double budget,
    const LevelVector& initial_levels = {});

/// Full run: classify, remove direct identifiers, load hierarchies from the
/// values actually present, apply declared base generalization levels, apply
/// the policy's suppression directives in order, enforce the k target,
/// report diversity of any sensitive attributes, and measure utility.
/// Deterministic: identical inputs produce identical outputs. Errors are
/// annotated with the pipeline step that raised them.
AnonymizationResult run_pipeline(const Dataset& raw, const Policy& policy);

/// Read-only checks of `d` against the policy's targets. Attributes the
/// policy classifies as direct identifiers or non-sensitive may be absent
/// from d (the usual shape of a published table); quasi-identifier,
/// sensitive and linkage attributes must be present.
CheckResult run_check(const Dataset& d, const Policy& policy);

}  // namespace kanon
