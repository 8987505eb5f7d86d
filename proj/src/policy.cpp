#include "kanon/policy.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"
#include "kanon/csv.hpp"
#include "kanon/error.hpp"

namespace kanon {
namespace {

using json = nlohmann::ordered_json;

void expect_object(const json& value, const std::string& what) {
  if (!value.is_object()) {
    fail(ErrorCode::parse_error, what + " must be an object");
  }
}

void expect_keys(const json& obj, const std::string& what,
                 std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const bool known =
        std::any_of(allowed.begin(), allowed.end(),
                    [&it](const char* key) { return it.key() == key; });
    if (!known) {
      fail(ErrorCode::parse_error, what + ": unknown key '" + it.key() + "'");
    }
  }
}

std::string get_string(const json& obj, const char* key,
                       const std::string& what) {
  if (!obj.contains(key) || !obj[key].is_string()) {
    fail(ErrorCode::parse_error, what + " needs a string '" + key + "'");
  }
  return obj[key].get<std::string>();
}

int get_int(const json& obj, const char* key, const std::string& what) {
  if (!obj.contains(key) || !obj[key].is_number_integer()) {
    fail(ErrorCode::parse_error, what + " needs an integer '" + key + "'");
  }
  return obj[key].get<int>();
}

std::vector<std::string> get_string_array(const json& value,
                                          const std::string& what) {
  if (!value.is_array()) {
    fail(ErrorCode::parse_error, what + " must be an array of strings");
  }
  std::vector<std::string> out;
  out.reserve(value.size());
  for (const auto& item : value) {
    if (!item.is_string()) {
      fail(ErrorCode::parse_error, what + " must be an array of strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<std::size_t> get_row_array(const json& value,
                                       const std::string& what) {
  if (!value.is_array()) {
    fail(ErrorCode::parse_error,
         what + " must be an array of row indices");
  }
  std::vector<std::size_t> out;
  out.reserve(value.size());
  for (const auto& item : value) {
    if (!item.is_number_integer() || item.get<long long>() < 0) {
      fail(ErrorCode::parse_error,
           what + " must list non-negative row indices");
    }
    out.push_back(item.get<std::size_t>());
  }
  return out;
}

AttributeCategory parse_category(const std::string& text,
                                 const std::string& what) {
  if (text == "pii") return AttributeCategory::pii;
  if (text == "quasi") return AttributeCategory::quasi;
  if (text == "sensitive") return AttributeCategory::sensitive;
  if (text == "non_sensitive") return AttributeCategory::non_sensitive;
  fail(ErrorCode::parse_error,
       what + ": category must be one of pii, quasi, sensitive, "
       "non_sensitive; got '" + text + "'");
}

std::vector<std::vector<std::string>> load_level_table(
    const std::string& file, const std::string& base_dir,
    const std::string& what) {
  std::filesystem::path path(file);
  if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
  CsvOptions options;
  options.marker = "";
  const Dataset table = read_table_csv(path.string(), options);
  for (std::size_t c = 0; c < table.column_count(); ++c) {
    const std::string expected = "level_" + std::to_string(c);
    if (table.schema()[c] != expected) {
      fail(ErrorCode::malformed_spec,
           what + ": table header must be level_0..level_" +
               std::to_string(table.column_count() - 1) + "; column " +
               std::to_string(c) + " is '" + table.schema()[c] + "'");
    }
  }
  std::vector<std::vector<std::string>> rows;
  rows.reserve(table.row_count());
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    std::vector<std::string> chain;
    chain.reserve(table.column_count());
    for (std::size_t c = 0; c < table.column_count(); ++c) {
      const Cell& cell = table.cell(r, c);
      if (!cell.has_value() || cell->empty()) {
        fail(ErrorCode::malformed_spec,
             what + ": empty value at table row " + std::to_string(r));
      }
      chain.push_back(*cell);
    }
    rows.push_back(std::move(chain));
  }
  return rows;
}

HierarchySpec parse_hierarchy_spec(const json& obj, const std::string& name,
                                   const std::string& base_dir) {
  const std::string what = "hierarchy '" + name + "'";
  expect_object(obj, what);
  const std::string kind = get_string(obj, "kind", what);
  HierarchySpec spec;
  if (kind == "date_pattern") {
    expect_keys(obj, what, {"kind", "pattern"});
    spec.kind = HierarchySpec::Kind::date_pattern;
    spec.pattern = get_string(obj, "pattern", what);
    return spec;
  }
  if (kind != "level_table") {
    fail(ErrorCode::parse_error,
         what + ": kind must be 'level_table' or 'date_pattern'");
  }
  expect_keys(obj, what, {"kind", "file", "rows", "rooted", "catch_all"});
  spec.kind = HierarchySpec::Kind::level_table;
  const bool has_file = obj.contains("file");
  const bool has_rows = obj.contains("rows");
  if (has_file == has_rows) {
    fail(ErrorCode::parse_error,
         what + " needs exactly one of 'file' or 'rows'");
  }
  if (has_file) {
    spec.rows = load_level_table(get_string(obj, "file", what), base_dir, what);
  } else {
    if (!obj["rows"].is_array()) {
      fail(ErrorCode::parse_error, what + ": 'rows' must be an array");
    }
    for (const auto& row : obj["rows"]) {
      spec.rows.push_back(get_string_array(row, what + " row"));
    }
  }
  if (obj.contains("rooted")) {
    if (!obj["rooted"].is_boolean()) {
      fail(ErrorCode::parse_error, what + ": 'rooted' must be a boolean");
    }
    spec.rooted = obj["rooted"].get<bool>();
  }
  if (obj.contains("catch_all")) {
    spec.catch_all = get_string_array(obj["catch_all"], what + " catch_all");
  }
  return spec;
}

SuppressionDirective parse_directive(const json& obj, std::size_t index) {
  const std::string what = "directive at index " + std::to_string(index);
  expect_object(obj, what);
  const std::string kind = get_string(obj, "kind", what);
  SuppressionDirective directive;
  if (kind == "cell_value") {
    expect_keys(obj, what, {"kind", "attribute", "value"});
    directive.kind = SuppressionDirective::Kind::cell_value;
    directive.attribute = get_string(obj, "attribute", what);
    directive.value = get_string(obj, "value", what);
  } else if (kind == "cell_at") {
    expect_keys(obj, what, {"kind", "attribute", "rows"});
    directive.kind = SuppressionDirective::Kind::cell_at;
    directive.attribute = get_string(obj, "attribute", what);
    if (!obj.contains("rows")) {
      fail(ErrorCode::parse_error, what + " needs 'rows'");
    }
    directive.rows = get_row_array(obj["rows"], what + " rows");
  } else if (kind == "record") {
    expect_keys(obj, what, {"kind", "rows"});
    directive.kind = SuppressionDirective::Kind::record;
    if (!obj.contains("rows")) {
      fail(ErrorCode::parse_error, what + " needs 'rows'");
    }
    directive.rows = get_row_array(obj["rows"], what + " rows");
  } else {
    fail(ErrorCode::parse_error,
         what + ": kind must be cell_value, cell_at, or record");
  }
  return directive;
}

void parse_params(const json& obj, Policy& policy) {
  expect_object(obj, "params");
  expect_keys(obj, "params",
              {"k", "l", "mode", "linkage_attrs", "budget",
               "suppressed_marker"});
  if (obj.contains("k")) {
    const int k = get_int(obj, "k", "params");
    if (k < 2) {
      fail(ErrorCode::invalid_param,
           "params: k must be >= 2, got " + std::to_string(k));
    }
    policy.params.k = k;
  }
  if (obj.contains("l")) {
    const int l = get_int(obj, "l", "params");
    if (l < 2) {
      fail(ErrorCode::invalid_param,
           "params: l must be >= 2, got " + std::to_string(l));
    }
    policy.params.l = l;
  }
  if (obj.contains("mode")) {
    const std::string mode = get_string(obj, "mode", "params");
    if (mode == "strict") {
      policy.params.mode = CheckMode::strict;
    } else if (mode == "per_attribute") {
      policy.params.mode = CheckMode::per_attribute;
    } else {
      fail(ErrorCode::parse_error,
           "params: mode must be 'strict' or 'per_attribute', got '" + mode +
               "'");
    }
  }
  if (obj.contains("linkage_attrs")) {
    policy.params.linkage_attrs =
        get_string_array(obj["linkage_attrs"], "params linkage_attrs");
  }
  if (obj.contains("budget")) {
    if (!obj["budget"].is_number()) {
      fail(ErrorCode::parse_error, "params: budget must be a number");
    }
    const double budget = obj["budget"].get<double>();
    if (!(budget >= 0.0 && budget <= 1.0)) {
      fail(ErrorCode::invalid_param,
           "params: budget must lie in [0, 1]");
    }
    policy.suppression_budget = budget;
  }
  if (obj.contains("suppressed_marker")) {
    policy.suppressed_marker =
        get_string(obj, "suppressed_marker", "params");
  }
}

const char* mode_name(CheckMode mode) {
  return mode == CheckMode::strict ? "strict" : "per_attribute";
}

json directive_to_json(const SuppressionDirective& directive) {
  json obj;
  switch (directive.kind) {
    case SuppressionDirective::Kind::cell_value:
      obj["kind"] = "cell_value";
      obj["attribute"] = directive.attribute;
      obj["value"] = directive.value;
      break;
    case SuppressionDirective::Kind::cell_at:
      obj["kind"] = "cell_at";
      obj["attribute"] = directive.attribute;
      obj["rows"] = directive.rows;
      break;
    case SuppressionDirective::Kind::record:
      obj["kind"] = "record";
      obj["rows"] = directive.rows;
      break;
  }
  return obj;
}

json utility_to_json(const UtilityReport& utility) {
  json obj;
  obj["precision"] = utility.precision;
  obj["suppression_ratio"] = utility.suppression_ratio;
  obj["records_suppressed"] = utility.records_suppressed;
  obj["avg_class_size"] = utility.avg_class_size;
  obj["min_class_size"] = utility.min_class_size;
  obj["per_attribute_level"] = json::object();
  for (const auto& [attr, level] : utility.per_attribute_level) {
    obj["per_attribute_level"][attr] = level;
  }
  return obj;
}

}  // namespace

Policy parse_policy_text(const std::string& text,
                         const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::parse_error, e.what());
  }
  expect_object(doc, "policy root");
  expect_keys(doc, "policy",
              {"attributes", "hierarchies", "params", "retain", "directives"});

  Policy policy;
  if (!doc.contains("attributes") || !doc["attributes"].is_array()) {
    fail(ErrorCode::parse_error, "policy needs an 'attributes' array");
  }
  for (const auto& entry : doc["attributes"]) {
    expect_object(entry, "attribute entry");
    expect_keys(entry, "attribute entry",
                {"name", "category", "hierarchy", "level"});
    const std::string name = get_string(entry, "name", "attribute entry");
    const std::string what = "attribute '" + name + "'";
    const AttributeCategory category =
        parse_category(get_string(entry, "category", what), what);
    if (!policy.classification.emplace(name, category).second) {
      fail(ErrorCode::duplicate_attribute, what + " listed twice");
    }
    if (entry.contains("hierarchy")) {
      if (category != AttributeCategory::quasi) {
        fail(ErrorCode::parse_error,
             what + ": only quasi-identifier attributes may bind a "
             "hierarchy");
      }
      policy.hierarchy_refs[name] = get_string(entry, "hierarchy", what);
    }
    if (entry.contains("level")) {
      if (!entry.contains("hierarchy")) {
        fail(ErrorCode::parse_error,
             what + ": 'level' needs a 'hierarchy' binding");
      }
      const int level = get_int(entry, "level", what);
      if (level < 0) {
        fail(ErrorCode::level_out_of_range,
             what + ": level must be non-negative");
      }
      policy.base_levels[name] = level;
    }
  }

  if (doc.contains("hierarchies")) {
    expect_object(doc["hierarchies"], "'hierarchies'");
    for (const auto& [name, spec] : doc["hierarchies"].items()) {
      policy.hierarchy_specs.emplace(
          name, parse_hierarchy_spec(spec, name, base_dir));
    }
  }
  for (const auto& [attr, ref] : policy.hierarchy_refs) {
    if (policy.hierarchy_specs.find(ref) == policy.hierarchy_specs.end()) {
      fail(ErrorCode::unknown_hierarchy_ref,
           "attribute '" + attr + "' references hierarchy '" + ref +
               "' which is not defined");
    }
  }

  if (doc.contains("params")) parse_params(doc["params"], policy);
  if (doc.contains("retain")) {
    policy.retain = get_string_array(doc["retain"], "'retain'");
  }
  if (doc.contains("directives")) {
    if (!doc["directives"].is_array()) {
      fail(ErrorCode::parse_error, "'directives' must be an array");
    }
    std::size_t index = 0;
    for (const auto& entry : doc["directives"]) {
      policy.directives.push_back(parse_directive(entry, index));
      ++index;
    }
  }
  return policy;
}

Policy parse_policy_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::io_error, "cannot open '" + path + "' for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    fail(ErrorCode::io_error, "cannot read '" + path + "'");
  }
  const std::string base_dir =
      std::filesystem::path(path).parent_path().string();
  try {
    return parse_policy_text(buffer.str(), base_dir.empty() ? "." : base_dir);
  } catch (const Error& e) {
    fail(e.code(), "'" + path + "': " + e.message());
  }
}

std::string report_to_json(const AnonymizationReport& report) {
  json doc;
  doc["mode"] = mode_name(report.mode);
  doc["achieved_k"] = report.achieved_k;
  if (report.achieved_l.has_value()) {
    doc["achieved_l"] = *report.achieved_l;
  } else {
    doc["achieved_l"] = nullptr;
  }
  doc["iterations"] = report.iterations;
  doc["final_levels"] = json::object();
  for (const auto& [attr, level] : report.final_levels) {
    doc["final_levels"][attr] = level;
  }
  doc["suppressed_cells"] = json::array();
  for (const auto& cell : report.suppressed_cells) {
    doc["suppressed_cells"].push_back(
        {{"row", cell.row}, {"attribute", cell.attribute}});
  }
  doc["suppressed_records"] = report.suppressed_records;
  doc["directives"] = json::array();
  for (const auto& directive : report.directives) {
    doc["directives"].push_back(directive_to_json(directive));
  }
  doc["retained_pii"] = report.retained_pii;
  doc["utility"] = utility_to_json(report.utility);
  doc["warnings"] = report.warnings;
  return doc.dump(2) + "\n";
}

std::string check_to_json(const CheckResult& result, const Policy& policy) {
  json doc;
  doc["mode"] = mode_name(result.mode);
  doc["k_target"] = policy.params.k;
  doc["achieved_k"] = result.achieved_k;
  doc["min_class_size"] = result.min_class_size;
  doc["frequency_violations"] = json::object();
  for (const auto& [attr, values] : result.frequency_violations) {
    doc["frequency_violations"][attr] = values;
  }
  if (policy.params.l.has_value()) {
    doc["l_target"] = *policy.params.l;
  } else {
    doc["l_target"] = nullptr;
  }
  if (result.achieved_l.has_value()) {
    doc["achieved_l"] = *result.achieved_l;
  } else {
    doc["achieved_l"] = nullptr;
  }
  doc["k_satisfied"] = result.k_satisfied;
  doc["l_satisfied"] = result.l_satisfied;
  doc["target_met"] = result.target_met;
  return doc.dump(2) + "\n";
}

}  // namespace kanon
