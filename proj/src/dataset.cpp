#include "kanon/dataset.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace kanon {

Dataset::Dataset(std::vector<std::string> schema, std::vector<Row> rows)
    : schema_(std::move(schema)), rows_(std::move(rows)) {
  if (schema_.empty())
    fail(ErrorCode::invalid_argument, "schema must not be empty");
  std::set<std::string> seen;
  for (const auto& name : schema_) {
    if (name.empty())
      fail(ErrorCode::invalid_argument, "attribute names must be non-empty");
    if (!seen.insert(name).second)
      fail(ErrorCode::duplicate_attribute, "'" + name + "'");
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].size() != schema_.size())
      fail(ErrorCode::arity_mismatch,
           "row " + std::to_string(i) + " has " +
               std::to_string(rows_[i].size()) + " cells, expected " +
               std::to_string(schema_.size()));
  }
}

const Row& Dataset::row(std::size_t i) const {
  if (i >= rows_.size())
    fail(ErrorCode::row_out_of_range, "row " + std::to_string(i));
  return rows_[i];
}

const Cell& Dataset::cell(std::size_t row, std::size_t col) const {
  if (row >= rows_.size())
    fail(ErrorCode::row_out_of_range, "row " + std::to_string(row));
  if (col >= schema_.size())
    fail(ErrorCode::unknown_attribute, "column index " + std::to_string(col));
  return rows_[row][col];
}

bool Dataset::has_attribute(const std::string& name) const noexcept {
  return std::find(schema_.begin(), schema_.end(), name) != schema_.end();
}

std::size_t Dataset::column_index(const std::string& name) const {
  auto it = std::find(schema_.begin(), schema_.end(), name);
  if (it == schema_.end())
    fail(ErrorCode::unknown_attribute, "'" + name + "'");
  return static_cast<std::size_t>(it - schema_.begin());
}

const char* to_string(AttributeCategory category) noexcept {
  switch (category) {
    case AttributeCategory::pii:           return "pii";
    case AttributeCategory::quasi:         return "quasi";
    case AttributeCategory::sensitive:     return "sensitive";
    case AttributeCategory::non_sensitive: return "non_sensitive";
  }
  return "?";
}

AttributeCategory ClassifiedSchema::category_of(
    const std::string& attribute) const {
  auto it = by_name_.find(attribute);
  if (it == by_name_.end())
    fail(ErrorCode::unclassified_attribute, "'" + attribute + "'");
  return it->second;
}

bool ClassifiedSchema::covers(const std::string& attribute) const noexcept {
  return by_name_.count(attribute) != 0;
}

std::vector<std::string> ClassifiedSchema::attributes_in(
    AttributeCategory category) const {
  std::vector<std::string> out;
  for (const auto& [name, cat] : entries_)
    if (cat == category) out.push_back(name);
  return out;
}

Dataset build_dataset(std::vector<std::string> schema, std::vector<Row> rows) {
  return Dataset(std::move(schema), std::move(rows));
}

ClassifiedSchema classify_attributes(
    const Dataset& dataset,
    const std::map<std::string, AttributeCategory>& assignments) {
  for (const auto& [name, category] : assignments) {
    (void)category;
    if (!dataset.has_attribute(name))
      fail(ErrorCode::unknown_attribute,
           "assignment names '" + name + "' which is not in the schema");
  }
  ClassifiedSchema out;
  for (const auto& name : dataset.schema()) {
    auto it = assignments.find(name);
    if (it == assignments.end())
      fail(ErrorCode::unclassified_attribute, "'" + name + "'");
    out.entries_.emplace_back(name, it->second);
    out.by_name_.emplace(name, it->second);
  }
  return out;
}

Dataset deidentify(const Dataset& dataset, const ClassifiedSchema& classified,
                   const RetainList& retain) {
  for (const auto& name : retain.attributes) {
    if (!classified.covers(name))
      fail(ErrorCode::unknown_attribute, "retain list names '" + name + "'");
    if (classified.category_of(name) != AttributeCategory::pii)
      fail(ErrorCode::retain_not_pii, "'" + name + "'");
  }
  std::vector<std::string> kept;
  for (const auto& name : dataset.schema()) {
    bool retained = std::find(retain.attributes.begin(),
                              retain.attributes.end(),
                              name) != retain.attributes.end();
    if (classified.category_of(name) != AttributeCategory::pii || retained)
      kept.push_back(name);
  }
  return project(dataset, kept);
}

Dataset project(const Dataset& dataset,
                const std::vector<std::string>& attrs) {
  std::vector<std::size_t> indices;
  std::set<std::string> seen;
  indices.reserve(attrs.size());
  for (const auto& name : attrs) {
    if (!seen.insert(name).second)
      fail(ErrorCode::duplicate_attribute,
           "'" + name + "' requested twice in projection");
    indices.push_back(dataset.column_index(name));
  }
  std::vector<Row> rows;
  rows.reserve(dataset.row_count());
  for (const auto& source : dataset.rows()) {
    Row row;
    row.reserve(indices.size());
    for (auto idx : indices) row.push_back(source[idx]);
    rows.push_back(std::move(row));
  }
  return Dataset(attrs, std::move(rows));
}

}  // namespace kanon
