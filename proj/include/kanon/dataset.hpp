#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kanon/error.hpp"

namespace kanon {

/// A cell is either a concrete string value or the suppressed sentinel
/// (std::nullopt). Suppressed compares equal only to suppressed, and
/// sorts before every concrete value.
using Cell = std::optional<std::string>;

inline constexpr std::nullopt_t kSuppressed = std::nullopt;

using Row = std::vector<Cell>;

/// Immutable rectangular table of string-valued cells with a named schema.
/// Every operation on a Dataset returns a new Dataset; instances are safe
/// to share across threads.
class Dataset {
 public:
  /// Validates schema (non-empty unique names) and row arity.
  Dataset(std::vector<std::string> schema, std::vector<Row> rows);

  const std::vector<std::string>& schema() const noexcept { return schema_; }
  const std::vector<Row>& rows() const noexcept { return rows_; }

  std::size_t row_count() const noexcept { return rows_.size(); }
  std::size_t column_count() const noexcept { return schema_.size(); }

  const Row& row(std::size_t i) const;
  const Cell& cell(std::size_t row, std::size_t col) const;

  bool has_attribute(const std::string& name) const noexcept;
  /// Throws ErrorCode::unknown_attribute when the name is not in the schema.
  std::size_t column_index(const std::string& name) const;

  bool operator==(const Dataset& other) const = default;

 private:
  std::vector<std::string> schema_;
  std::vector<Row> rows_;
};

enum class AttributeCategory { pii, quasi, sensitive, non_sensitive };

const char* to_string(AttributeCategory category) noexcept;

/// Total assignment of one category per schema attribute. The four category
/// sets are pairwise disjoint by construction and cover the schema.
class ClassifiedSchema {
 public:
  ClassifiedSchema() = default;

  AttributeCategory category_of(const std::string& attribute) const;
  bool covers(const std::string& attribute) const noexcept;

  /// Attributes of the given category, in schema order.
  std::vector<std::string> attributes_in(AttributeCategory category) const;

  /// (attribute, category) pairs in schema order.
  const std::vector<std::pair<std::string, AttributeCategory>>& entries()
      const noexcept {
    return entries_;
  }

 private:
  friend ClassifiedSchema classify_attributes(
      const Dataset& dataset,
      const std::map<std::string, AttributeCategory>& assignments);

  std::vector<std::pair<std::string, AttributeCategory>> entries_;
  std::map<std::string, AttributeCategory> by_name_;
};

/// PII attributes explicitly kept in the published output for utility.
struct RetainList {
  std::vector<std::string> attributes;
};

/// Builds an immutable dataset, validating schema names and row arity.
Dataset build_dataset(std::vector<std::string> schema, std::vector<Row> rows);

/// Assigns exactly one category to every schema attribute. Attributes left
/// unassigned are rejected; there is no default category.
ClassifiedSchema classify_attributes(
    const Dataset& dataset,
    const std::map<std::string, AttributeCategory>& assignments);

/// Removes PII columns by projection: output schema is (schema - PII) plus
/// any retained PII attributes, preserving the original column order. Rows
/// and cell values are unchanged.
Dataset deidentify(const Dataset& dataset, const ClassifiedSchema& classified,
                   const RetainList& retain);

/// Column projection with bag semantics: rows are never deduplicated.
Dataset project(const Dataset& dataset, const std::vector<std::string>& attrs);

}  // namespace kanon
