#include "kanon/kanon.h"

#include <exception>
#include <optional>
#include <string>

#include "kanon/anonymizer.hpp"
#include "kanon/csv.hpp"
#include "kanon/error.hpp"
#include "kanon/hierarchy.hpp"
#include "kanon/policy.hpp"

struct kanon_dataset {
  kanon::Dataset value;
};

struct kanon_policy {
  kanon::Policy value;
};

struct kanon_result {
  std::optional<kanon_dataset> data;
  std::string report_json;
  bool target_met = false;
};

namespace {

thread_local std::string g_last_error;

kanon_status status_of(kanon::ErrorCode code) {
  switch (code) {
    case kanon::ErrorCode::infeasible_within_budget:
      return KANON_ERROR_INFEASIBLE;
    case kanon::ErrorCode::io_error:
      return KANON_ERROR_IO;
    case kanon::ErrorCode::parse_error:
    case kanon::ErrorCode::ragged_row:
      return KANON_ERROR_PARSE;
    default:
      return KANON_ERROR_INVALID;
  }
}

template <typename Fn>
kanon_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return KANON_OK;
  } catch (const kanon::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return KANON_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return KANON_ERROR_INTERNAL;
  }
}

kanon_status invalid_call(const char* message) {
  g_last_error = message;
  return KANON_ERROR_INVALID;
}

kanon::CsvOptions csv_options(char delimiter, const char* marker) {
  kanon::CsvOptions options;
  if (delimiter != 0) options.delimiter = delimiter;
  if (marker != nullptr) options.marker = marker;
  return options;
}

}  // namespace

extern "C" {

const char* kanon_version(void) { return "0.1.0"; }

const char* kanon_last_error(void) { return g_last_error.c_str(); }

kanon_status kanon_dataset_read_csv(const char* path, char delimiter,
                                    const char* marker, kanon_dataset** out) {
  if (path == nullptr || out == nullptr) {
    return invalid_call("kanon_dataset_read_csv: path and out required");
  }
  *out = nullptr;
  return guarded([&] {
    *out = new kanon_dataset{
        kanon::read_table_csv(path, csv_options(delimiter, marker))};
  });
}

kanon_status kanon_dataset_write_csv(const kanon_dataset* dataset,
                                     const char* path, char delimiter,
                                     const char* marker) {
  if (dataset == nullptr || path == nullptr) {
    return invalid_call("kanon_dataset_write_csv: dataset and path required");
  }
  return guarded([&] {
    kanon::write_table_csv(dataset->value, path,
                           csv_options(delimiter, marker));
  });
}

size_t kanon_dataset_rows(const kanon_dataset* dataset) {
  return dataset == nullptr ? 0 : dataset->value.row_count();
}

size_t kanon_dataset_columns(const kanon_dataset* dataset) {
  return dataset == nullptr ? 0 : dataset->value.column_count();
}

const char* kanon_dataset_attribute(const kanon_dataset* dataset,
                                    size_t column) {
  if (dataset == nullptr || column >= dataset->value.column_count()) {
    return nullptr;
  }
  return dataset->value.schema()[column].c_str();
}

const char* kanon_dataset_cell(const kanon_dataset* dataset, size_t row,
                               size_t column) {
  if (dataset == nullptr || row >= dataset->value.row_count() ||
      column >= dataset->value.column_count()) {
    return nullptr;
  }
  const kanon::Cell& cell = dataset->value.cell(row, column);
  return cell.has_value() ? cell->c_str() : nullptr;
}

void kanon_dataset_free(kanon_dataset* dataset) { delete dataset; }

kanon_status kanon_policy_parse(const char* path, kanon_policy** out) {
  if (path == nullptr || out == nullptr) {
    return invalid_call("kanon_policy_parse: path and out required");
  }
  *out = nullptr;
  return guarded([&] {
    *out = new kanon_policy{kanon::parse_policy_file(path)};
  });
}

const char* kanon_policy_marker(const kanon_policy* policy) {
  return policy == nullptr ? nullptr
                           : policy->value.suppressed_marker.c_str();
}

void kanon_policy_free(kanon_policy* policy) { delete policy; }

kanon_status kanon_hierarchy_validate(const kanon_policy* policy) {
  if (policy == nullptr) {
    return invalid_call("kanon_hierarchy_validate: policy required");
  }
  return guarded([&] {
    for (const auto& [name, spec] : policy->value.hierarchy_specs) {
      const kanon::GeneralizationHierarchy hierarchy =
          kanon::load_hierarchy(spec, name, {});
      const kanon::HierarchyValidation validation =
          kanon::validate_hierarchy(hierarchy);
      if (!validation.ok()) {
        kanon::fail(validation.violations[0].code,
                    "hierarchy '" + name + "': " +
                        validation.violations[0].message);
      }
    }
  });
}

kanon_status kanon_anonymize(const kanon_dataset* dataset,
                             const kanon_policy* policy, kanon_result** out) {
  if (dataset == nullptr || policy == nullptr || out == nullptr) {
    return invalid_call("kanon_anonymize: dataset, policy, out required");
  }
  *out = nullptr;
  return guarded([&] {
    kanon::AnonymizationResult run =
        kanon::run_pipeline(dataset->value, policy->value);
    auto* result = new kanon_result;
    result->data.emplace(kanon_dataset{std::move(run.data)});
    result->report_json = kanon::report_to_json(run.report);
    result->target_met = true;
    *out = result;
  });
}

kanon_status kanon_check(const kanon_dataset* dataset,
                         const kanon_policy* policy, kanon_result** out) {
  if (dataset == nullptr || policy == nullptr || out == nullptr) {
    return invalid_call("kanon_check: dataset, policy, out required");
  }
  *out = nullptr;
  return guarded([&] {
    const kanon::CheckResult check =
        kanon::run_check(dataset->value, policy->value);
    auto* result = new kanon_result;
    result->report_json = kanon::check_to_json(check, policy->value);
    result->target_met = check.target_met;
    *out = result;
  });
}

kanon_status kanon_result_dataset(const kanon_result* result,
                                  const kanon_dataset** out) {
  if (result == nullptr || out == nullptr) {
    return invalid_call("kanon_result_dataset: result and out required");
  }
  *out = result->data.has_value() ? &*result->data : nullptr;
  return KANON_OK;
}

const char* kanon_result_report_json(const kanon_result* result) {
  return result == nullptr ? nullptr : result->report_json.c_str();
}

int kanon_result_target_met(const kanon_result* result) {
  return result != nullptr && result->target_met ? 1 : 0;
}

void kanon_result_free(kanon_result* result) { delete result; }

}  // extern "C"
