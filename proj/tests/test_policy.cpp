#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "kanon/policy.hpp"
#include "test_support.hpp"

using namespace kanon;
using namespace kanon::test;

namespace {

/// Self-deleting file for loader error cases.
struct TempFile {
  std::filesystem::path path;

  TempFile(const std::string& name, const std::string& content) {
    path = std::filesystem::temp_directory_path() /
           ("kanon_policy_" + name);
    std::ofstream out(path, std::ios::binary);
    out << content;
  }
  ~TempFile() { std::error_code ec; std::filesystem::remove(path, ec); }
};

Policy parse(const std::string& text) { return parse_policy_text(text, "."); }

const char* kMinimal = R"({"attributes": [{"name": "a", "category": "quasi"}]})";

std::string with_params(const std::string& params) {
  return std::string(R"({"attributes": [{"name": "a", "category": "quasi"}],)") +
         R"( "params": )" + params + "}";
}

}  // namespace

TEST_CASE("the generalization policy fixture parses fully") {
  const Policy p = parse_policy_file(data_path("policy_generalize.json"));

  CHECK(p.classification.size() == 12);
  CHECK(p.classification.at("RegNo") == AttributeCategory::pii);
  CHECK(p.classification.at("IndexNo") == AttributeCategory::pii);
  CHECK(p.classification.at("Sex") == AttributeCategory::quasi);
  CHECK(p.classification.at("BirthDate") == AttributeCategory::quasi);
  CHECK(p.classification.at("Nationality") == AttributeCategory::quasi);
  CHECK(p.classification.at("Hall") == AttributeCategory::non_sensitive);
  CHECK(p.classification.at("Year") == AttributeCategory::non_sensitive);

  CHECK(p.hierarchy_refs ==
        std::map<std::string, std::string>{{"BirthDate", "birth_decades"}});
  REQUIRE(p.hierarchy_specs.count("birth_decades") == 1);
  const HierarchySpec& spec = p.hierarchy_specs.at("birth_decades");
  CHECK(spec.kind == HierarchySpec::Kind::level_table);
  CHECK(spec.rooted);
  REQUIRE(spec.rows.size() == 10);
  CHECK(spec.rows.front() ==
        std::vector<std::string>{"01/01/67", "196*"});
  CHECK(spec.rows.back() == std::vector<std::string>{"01/01/90", "196*"});

  CHECK(p.base_levels == LevelVector{{"BirthDate", 1}});
  CHECK(p.params.k == 2);
  CHECK(p.params.mode == CheckMode::per_attribute);
  CHECK_FALSE(p.params.l.has_value());
  CHECK(p.params.linkage_attrs.empty());
  CHECK(p.suppression_budget == 1.0);
  CHECK(p.suppressed_marker == "");
  CHECK(p.retain.empty());
  CHECK(p.directives.empty());
}

TEST_CASE("the suppression policy fixture parses fully") {
  const Policy p = parse_policy_file(data_path("policy_suppress.json"));

  CHECK(p.classification.size() == 6);
  CHECK(p.params.linkage_attrs ==
        std::vector<std::string>{"Hall", "Program", "Year"});
  CHECK(p.suppressed_marker == "");
  REQUIRE(p.directives.size() == 2);
  CHECK(p.directives[0].kind == SuppressionDirective::Kind::cell_value);
  CHECK(p.directives[0].attribute == "Hall");
  CHECK(p.directives[0].value == "COMPLEX");
  CHECK(p.directives[1].kind == SuppressionDirective::Kind::cell_at);
  CHECK(p.directives[1].attribute == "Year");
  CHECK(p.directives[1].rows == std::vector<std::size_t>{2, 3, 6});
}

TEST_CASE("omitted sections fall back to defaults") {
  const Policy p = parse(kMinimal);
  CHECK(p.params.k == 2);
  CHECK(p.params.mode == CheckMode::strict);
  CHECK_FALSE(p.params.l.has_value());
  CHECK(p.params.linkage_attrs.empty());
  CHECK(p.suppression_budget == 1.0);
  CHECK(p.suppressed_marker == "*");
  CHECK(p.retain.empty());
  CHECK(p.directives.empty());
  CHECK(p.hierarchy_specs.empty());
  CHECK(p.base_levels.empty());
}

TEST_CASE("inline hierarchy rows and all params parse") {
  const Policy p = parse(R"({
    "attributes": [
      {"name": "q", "category": "quasi", "hierarchy": "h", "level": 2},
      {"name": "s", "category": "sensitive"}
    ],
    "hierarchies": {
      "h": {"kind": "level_table",
            "rows": [["a", "m", "top"], ["b", "m", "top"]],
            "rooted": true,
            "catch_all": ["m", "top"]},
      "dates": {"kind": "date_pattern", "pattern": "dd/mm/yy"}
    },
    "params": {"k": 3, "l": 2, "mode": "strict",
               "linkage_attrs": ["s2"], "budget": 0.25,
               "suppressed_marker": "?"},
    "retain": ["keep_me"],
    "directives": [{"kind": "record", "rows": [0, 4]}]
  })");

  CHECK(p.base_levels == LevelVector{{"q", 2}});
  const HierarchySpec& h = p.hierarchy_specs.at("h");
  REQUIRE(h.rows.size() == 2);
  CHECK(h.rows[0] == std::vector<std::string>{"a", "m", "top"});
  CHECK(h.catch_all == std::vector<std::string>{"m", "top"});
  CHECK(h.rooted);
  CHECK(p.hierarchy_specs.at("dates").kind ==
        HierarchySpec::Kind::date_pattern);
  CHECK(p.hierarchy_specs.at("dates").pattern == "dd/mm/yy");
  CHECK(p.params.k == 3);
  CHECK(p.params.l == 2);
  CHECK(p.params.mode == CheckMode::strict);
  CHECK(p.suppression_budget == 0.25);
  CHECK(p.suppressed_marker == "?");
  CHECK(p.retain == std::vector<std::string>{"keep_me"});
  REQUIRE(p.directives.size() == 1);
  CHECK(p.directives[0].kind == SuppressionDirective::Kind::record);
  CHECK(p.directives[0].rows == std::vector<std::size_t>{0, 4});
}

TEST_CASE("structural mistakes are rejected with parse errors") {
  CHECK(thrown_code([] { parse("{"); }) == ErrorCode::parse_error);
  CHECK(thrown_code([] { parse("[]"); }) == ErrorCode::parse_error);
  CHECK(thrown_code([] { parse("{}"); }) == ErrorCode::parse_error);
  CHECK(thrown_message([] {
          parse(R"({"attributes": [], "extra": 1})");
        }).find("unknown key 'extra'") != std::string::npos);
  CHECK(thrown_code([] {
          parse(R"({"attributes": {"name": "a"}})");
        }) == ErrorCode::parse_error);
  CHECK(thrown_code([] {
          parse(R"({"attributes": [{"category": "quasi"}]})");
        }) == ErrorCode::parse_error);
  CHECK(thrown_code([] {
          parse(R"({"attributes": [{"name": "a", "category": "quasi",
                                    "nope": 1}]})");
        }) == ErrorCode::parse_error);
}

TEST_CASE("attribute entries are validated") {
  CHECK(thrown_message([] {
          parse(R"({"attributes": [{"name": "a", "category": "secret"}]})");
        }).find("category must be one of") != std::string::npos);
  CHECK(thrown_code([] {
          parse(R"({"attributes": [{"name": "a", "category": "quasi"},
                                   {"name": "a", "category": "pii"}]})");
        }) == ErrorCode::duplicate_attribute);
  // A hierarchy binding is only meaningful on quasi-identifiers.
  CHECK(thrown_code([] {
          parse(R"({"attributes": [{"name": "a", "category": "pii",
                                    "hierarchy": "h"}],
                    "hierarchies": {"h": {"kind": "level_table",
                                          "rows": [["x", "y"]]}}})");
        }) == ErrorCode::parse_error);
  CHECK(thrown_code([] {
          parse(R"({"attributes": [{"name": "a", "category": "quasi",
                                    "level": 1}]})");
        }) == ErrorCode::parse_error);
  CHECK(thrown_code([] {
          parse(R"({"attributes": [{"name": "a", "category": "quasi",
                                    "hierarchy": "h", "level": -1}],
                    "hierarchies": {"h": {"kind": "level_table",
                                          "rows": [["x", "y"]]}}})");
        }) == ErrorCode::level_out_of_range);
  CHECK(thrown_code([] {
          parse(R"({"attributes": [{"name": "a", "category": "quasi",
                                    "hierarchy": "ghost"}]})");
        }) == ErrorCode::unknown_hierarchy_ref);
}

TEST_CASE("hierarchy specs are validated") {
  CHECK(thrown_message([] {
          parse(R"({"attributes": [],
                    "hierarchies": {"h": {"kind": "tree"}}})");
        }).find("kind must be 'level_table' or 'date_pattern'") !=
        std::string::npos);
  CHECK(thrown_code([] {
          parse(R"({"attributes": [],
                    "hierarchies": {"h": {"kind": "level_table"}}})");
        }) == ErrorCode::parse_error);
  CHECK(thrown_message([] {
          parse(R"({"attributes": [],
                    "hierarchies": {"h": {"kind": "level_table",
                                          "file": "x.csv",
                                          "rows": [["a", "b"]]}}})");
        }).find("exactly one of 'file' or 'rows'") != std::string::npos);
  CHECK(thrown_code([] {
          parse(R"({"attributes": [],
                    "hierarchies": {"h": {"kind": "level_table",
                                          "rows": [["a", "b"]],
                                          "rooted": "yes"}}})");
        }) == ErrorCode::parse_error);
  CHECK(thrown_code([] {
          parse(R"({"attributes": [],
                    "hierarchies": {"h": {"kind": "level_table",
                                          "rows": [["a", 3]]}}})");
        }) == ErrorCode::parse_error);
  CHECK(thrown_code([] {
          parse(R"({"attributes": [],
                    "hierarchies": {"h": {"kind": "date_pattern",
                                          "pattern": "dd/mm/yy",
                                          "rows": []}}})");
        }) == ErrorCode::parse_error);
}

TEST_CASE("directive entries are validated") {
  CHECK(thrown_message([] {
          parse(R"({"attributes": [],
                    "directives": [{"kind": "blank_all"}]})");
        }).find("kind must be cell_value, cell_at, or record") !=
        std::string::npos);
  CHECK(thrown_code([] {
          parse(R"({"attributes": [], "directives": {}})");
        }) == ErrorCode::parse_error);
  CHECK(thrown_code([] {
          parse(R"({"attributes": [],
                    "directives": [{"kind": "cell_value",
                                    "attribute": "a"}]})");
        }) == ErrorCode::parse_error);
  CHECK(thrown_message([] {
          parse(R"({"attributes": [],
                    "directives": [{"kind": "cell_at", "attribute": "a",
                                    "rows": [-1]}]})");
        }).find("non-negative row indices") != std::string::npos);
  CHECK(thrown_code([] {
          parse(R"({"attributes": [],
                    "directives": [{"kind": "record", "rows": [0],
                                    "attribute": "a"}]})");
        }) == ErrorCode::parse_error);
}

TEST_CASE("privacy params are validated") {
  CHECK(thrown_code([] { parse(with_params(R"({"k": 1})")); }) ==
        ErrorCode::invalid_param);
  CHECK(thrown_code([] { parse(with_params(R"({"k": 2.5})")); }) ==
        ErrorCode::parse_error);
  CHECK(thrown_code([] { parse(with_params(R"({"l": 1})")); }) ==
        ErrorCode::invalid_param);
  CHECK(thrown_message([] { parse(with_params(R"({"mode": "loose"})")); })
            .find("mode must be 'strict' or 'per_attribute'") !=
        std::string::npos);
  CHECK(thrown_code([] { parse(with_params(R"({"budget": 1.5})")); }) ==
        ErrorCode::invalid_param);
  CHECK(thrown_code([] { parse(with_params(R"({"budget": -0.1})")); }) ==
        ErrorCode::invalid_param);
  CHECK(thrown_code([] { parse(with_params(R"({"budget": "half"})")); }) ==
        ErrorCode::parse_error);
  CHECK(thrown_code([] { parse(with_params(R"({"k": 2, "seed": 7})")); }) ==
        ErrorCode::parse_error);
}

TEST_CASE("referenced level tables are loaded and validated") {
  // Relative paths anchor at the policy file's directory, so loading the
  // fixture text from a different base directory must fail.
  const std::string text = slurp(data_path("policy_generalize.json"));
  const Policy anchored =
      parse_policy_text(text, data_path(""));
  CHECK(anchored.hierarchy_specs.at("birth_decades").rows.size() == 10);
  CHECK(thrown_code([&] { parse_policy_text(text, "/nonexistent_base"); }) ==
        ErrorCode::io_error);

  const std::string use =
      R"({"attributes": [], "hierarchies": {"h": {"kind": "level_table",
        "file": "FILE"}}})";
  auto with_file = [&](const std::string& file) {
    std::string text2 = use;
    text2.replace(text2.find("FILE"), 4, file);
    return parse_policy_text(
        text2, std::filesystem::temp_directory_path().string());
  };

  const TempFile bad_header("bad_header.csv", "level_0,parent\na,b\n");
  CHECK(thrown_code([&] { with_file(bad_header.path.filename().string()); }) ==
        ErrorCode::malformed_spec);
  const TempFile blank_cell("blank_cell.csv", "level_0,level_1\na,\n");
  CHECK(thrown_message([&] {
          with_file(blank_cell.path.filename().string());
        }).find("empty value at table row 0") != std::string::npos);
  const TempFile good("good.csv", "level_0,level_1\na,top\nb,top\n");
  const Policy loaded = with_file(good.path.filename().string());
  CHECK(loaded.hierarchy_specs.at("h").rows ==
        std::vector<std::vector<std::string>>{{"a", "top"}, {"b", "top"}});
}

TEST_CASE("file level errors carry the policy path") {
  const std::string missing = data_path("no_such_policy.json");
  CHECK(thrown_code([&] { parse_policy_file(missing); }) ==
        ErrorCode::io_error);
  CHECK(thrown_message([&] { parse_policy_file(missing); }).find(missing) !=
        std::string::npos);

  const TempFile bad("bad_k.json", with_params(R"({"k": 1})"));
  CHECK(thrown_code([&] { parse_policy_file(bad.path.string()); }) ==
        ErrorCode::invalid_param);
  CHECK(thrown_message([&] {
          parse_policy_file(bad.path.string());
        }).find("'" + bad.path.string() + "':") != std::string::npos);
}

TEST_CASE("run reports serialize to stable json") {
  AnonymizationReport report;
  report.mode = CheckMode::per_attribute;
  report.achieved_k = 2;
  report.iterations = 1;
  report.final_levels = {{"BirthDate", 1}};
  report.suppressed_cells = {{8, "Hall"}};
  report.suppressed_records = {6, 9};
  SuppressionDirective directive;
  directive.kind = SuppressionDirective::Kind::cell_value;
  directive.attribute = "Hall";
  directive.value = "COMPLEX";
  report.directives = {directive};
  report.utility.precision = 0.25;
  report.utility.suppression_ratio = 0.1;
  report.utility.records_suppressed = 2;
  report.utility.avg_class_size = 2.0;
  report.utility.min_class_size = 2;
  report.utility.per_attribute_level = {{"BirthDate", 1}};
  report.warnings = {"w1"};

  CHECK(report_to_json(report) == R"({
  "mode": "per_attribute",
  "achieved_k": 2,
  "achieved_l": null,
  "iterations": 1,
  "final_levels": {
    "BirthDate": 1
  },
  "suppressed_cells": [
    {
      "row": 8,
      "attribute": "Hall"
    }
  ],
  "suppressed_records": [
    6,
    9
  ],
  "directives": [
    {
      "kind": "cell_value",
      "attribute": "Hall",
      "value": "COMPLEX"
    }
  ],
  "retained_pii": [],
  "utility": {
    "precision": 0.25,
    "suppression_ratio": 0.1,
    "records_suppressed": 2,
    "avg_class_size": 2.0,
    "min_class_size": 2,
    "per_attribute_level": {
      "BirthDate": 1
    }
  },
  "warnings": [
    "w1"
  ]
}
)");
}

TEST_CASE("check results serialize to stable json") {
  CheckResult result;
  result.mode = CheckMode::strict;
  result.achieved_k = 1;
  result.min_class_size = 1;
  result.frequency_violations = {{"Hall", {"COMPLEX"}}};
  result.k_satisfied = false;
  result.l_satisfied = true;
  result.target_met = false;

  Policy policy;
  policy.params.k = 2;

  CHECK(check_to_json(result, policy) == R"({
  "mode": "strict",
  "k_target": 2,
  "achieved_k": 1,
  "min_class_size": 1,
  "frequency_violations": {
    "Hall": [
      "COMPLEX"
    ]
  },
  "l_target": null,
  "achieved_l": null,
  "k_satisfied": false,
  "l_satisfied": true,
  "target_met": false
}
)");

  result.achieved_l = 2;
  policy.params.l = 2;
  result.l_satisfied = true;
  const std::string with_l = check_to_json(result, policy);
  CHECK(with_l.find("\"l_target\": 2") != std::string::npos);
  CHECK(with_l.find("\"achieved_l\": 2") != std::string::npos);
}
