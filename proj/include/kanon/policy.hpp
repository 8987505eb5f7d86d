#pragma once

#include <string>

#include "kanon/anonymizer.hpp"

namespace kanon {

/// Parses a JSON policy file. Hierarchy tables referenced by relative path
/// resolve against the policy file's directory and are inlined into the
/// returned specs. Unknown keys are rejected.
Policy parse_policy_file(const std::string& path);

/// Same, from already-loaded text; `base_dir` anchors relative table paths.
Policy parse_policy_text(const std::string& text, const std::string& base_dir);

/// Deterministic JSON renderings (two-space indent, trailing newline).
std::string report_to_json(const AnonymizationReport& report);
std::string check_to_json(const CheckResult& result, const Policy& policy);

}  // namespace kanon
