#include "kanon/metrics.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "kanon/error.hpp"

namespace kanon {
namespace {

std::vector<std::size_t> resolve_columns(const Dataset& d,
                                         const std::vector<std::string>& attrs) {
  std::set<std::string> seen;
  std::vector<std::size_t> cols;
  cols.reserve(attrs.size());
  for (const auto& name : attrs) {
    if (!seen.insert(name).second) {
      fail(ErrorCode::duplicate_attribute,
           "attribute '" + name + "' listed twice");
    }
    cols.push_back(d.column_index(name));
  }
  return cols;
}

}  // namespace

std::vector<EquivalenceClass> partition_by_qid(
    const Dataset& d, const std::vector<std::string>& qid) {
  const std::vector<std::size_t> cols = resolve_columns(d, qid);
  std::map<std::vector<Cell>, std::vector<std::size_t>> groups;
  for (std::size_t r = 0; r < d.row_count(); ++r) {
    std::vector<Cell> key;
    key.reserve(cols.size());
    for (std::size_t c : cols) key.push_back(d.cell(r, c));
    groups[std::move(key)].push_back(r);
  }
  std::vector<EquivalenceClass> classes;
  classes.reserve(groups.size());
  for (auto& [key, rows] : groups) {
    classes.push_back({key, std::move(rows)});
  }
  return classes;
}

std::size_t k_anonymity_level(const Dataset& d,
                              const std::vector<std::string>& qid) {
  if (d.row_count() == 0) {
    fail(ErrorCode::empty_dataset, "k-anonymity level needs at least one row");
  }
  std::size_t min_size = d.row_count();
  for (const auto& cls : partition_by_qid(d, qid)) {
    min_size = std::min(min_size, cls.size());
  }
  return min_size;
}

std::map<std::string, std::set<std::string>> attribute_frequency_violations(
    const Dataset& d, const std::vector<std::string>& attrs, int k) {
  if (k < 2) {
    fail(ErrorCode::invalid_param,
         "frequency check needs k >= 2, got " + std::to_string(k));
  }
  const std::vector<std::size_t> cols = resolve_columns(d, attrs);
  std::map<std::string, std::set<std::string>> violations;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    std::map<std::string, std::size_t> freq;
    for (std::size_t r = 0; r < d.row_count(); ++r) {
      const Cell& cell = d.cell(r, cols[i]);
      if (cell.has_value()) ++freq[*cell];
    }
    std::set<std::string> rare;
    for (const auto& [value, count] : freq) {
      if (count < static_cast<std::size_t>(k)) rare.insert(value);
    }
    if (!rare.empty()) violations.emplace(attrs[i], std::move(rare));
  }
  return violations;
}

std::size_t l_diversity_level(const Dataset& d,
                              const std::vector<std::string>& qid,
                              const std::string& sensitive) {
  if (d.row_count() == 0) {
    fail(ErrorCode::empty_dataset, "diversity level needs at least one row");
  }
  for (const auto& attr : qid) {
    if (attr == sensitive) {
      fail(ErrorCode::invalid_argument,
           "sensitive attribute '" + sensitive +
               "' may not be part of the quasi-identifier set");
    }
  }
  const std::size_t sensitive_col = d.column_index(sensitive);
  std::size_t min_distinct = d.row_count();
  for (const auto& cls : partition_by_qid(d, qid)) {
    std::set<std::string> distinct;
    for (std::size_t r : cls.rows) {
      const Cell& cell = d.cell(r, sensitive_col);
      if (cell.has_value()) distinct.insert(*cell);
    }
    min_distinct = std::min(min_distinct, distinct.size());
  }
  return min_distinct;
}

UtilityReport compute_utility(
    const Dataset& original, const Dataset& published,
    const std::map<std::string, GeneralizationHierarchy>& hierarchies,
    const std::map<std::string, int>& levels,
    const std::vector<std::string>& qid) {
  for (const auto& attr : published.schema()) {
    if (!original.has_attribute(attr)) {
      fail(ErrorCode::incompatible_schema,
           "published attribute '" + attr + "' is not in the original schema");
    }
  }
  if (published.row_count() > original.row_count()) {
    fail(ErrorCode::incompatible_schema,
         "published table has more rows than the original");
  }

  UtilityReport report;
  report.records_suppressed = original.row_count() - published.row_count();

  // Precision over the hierarchical quasi-identifier columns.
  double generalization_sum = 0.0;
  std::size_t considered_attrs = 0;
  for (const auto& attr : qid) {
    auto hit = hierarchies.find(attr);
    if (hit == hierarchies.end()) continue;
    const GeneralizationHierarchy& h = hit->second;
    auto lit = levels.find(attr);
    const int level = lit == levels.end() ? 0 : lit->second;
    if (level < 0 || level > h.height()) {
      fail(ErrorCode::level_out_of_range,
           "level " + std::to_string(level) + " for '" + attr +
               "' outside 0.." + std::to_string(h.height()));
    }
    report.per_attribute_level[attr] = level;
    ++considered_attrs;
    const std::size_t col = published.column_index(attr);
    for (std::size_t r = 0; r < published.row_count(); ++r) {
      if (!published.cell(r, col).has_value()) {
        generalization_sum += 1.0;
      } else if (h.height() > 0) {
        generalization_sum += static_cast<double>(level) / h.height();
      }
    }
  }
  const std::size_t precision_cells = published.row_count() * considered_attrs;
  report.precision =
      precision_cells == 0 ? 1.0 : 1.0 - generalization_sum / precision_cells;

  // Suppression ratio: blanked cells plus every cell of a removed record,
  // against the full original extent at the published width.
  std::size_t suppressed_cells = 0;
  for (std::size_t r = 0; r < published.row_count(); ++r) {
    for (std::size_t c = 0; c < published.column_count(); ++c) {
      if (!published.cell(r, c).has_value()) ++suppressed_cells;
    }
  }
  const std::size_t total_cells =
      original.row_count() * published.column_count();
  const std::size_t removed_cells =
      report.records_suppressed * published.column_count();
  report.suppression_ratio =
      total_cells == 0
          ? 0.0
          : static_cast<double>(suppressed_cells + removed_cells) /
                static_cast<double>(total_cells);

  const std::vector<EquivalenceClass> classes = partition_by_qid(published, qid);
  if (!classes.empty()) {
    std::size_t min_size = published.row_count();
    for (const auto& cls : classes) min_size = std::min(min_size, cls.size());
    report.min_class_size = min_size;
    report.avg_class_size = static_cast<double>(published.row_count()) /
                            static_cast<double>(classes.size());
  }
  return report;
}

}  // namespace kanon
