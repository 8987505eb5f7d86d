#include <cstdio>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "kanon/kanon.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTargetUnmet = 1;
constexpr int kExitInputError = 2;

int exit_code_of(kanon_status status) {
  switch (status) {
    case KANON_OK:
      return kExitOk;
    case KANON_ERROR_INFEASIBLE:
      return kExitTargetUnmet;
    default:
      return kExitInputError;
  }
}

int report_failure(const char* action, kanon_status status) {
  std::fprintf(stderr, "kanon: %s: %s\n", action, kanon_last_error());
  return exit_code_of(status);
}

struct PolicyHandle {
  kanon_policy* ptr = nullptr;
  ~PolicyHandle() { kanon_policy_free(ptr); }
};

struct DatasetHandle {
  kanon_dataset* ptr = nullptr;
  ~DatasetHandle() { kanon_dataset_free(ptr); }
};

struct ResultHandle {
  kanon_result* ptr = nullptr;
  ~ResultHandle() { kanon_result_free(ptr); }
};

struct CommonArgs {
  std::string input;
  std::string policy;
  std::string delimiter = ",";
  std::string marker;  // empty string means "use the policy's marker"
  bool marker_set = false;
};

int load_policy(const CommonArgs& args, PolicyHandle& policy) {
  const kanon_status status = kanon_policy_parse(args.policy.c_str(),
                                                 &policy.ptr);
  if (status != KANON_OK) return report_failure("policy", status);
  return kExitOk;
}

int load_input(const CommonArgs& args, const PolicyHandle& policy,
               DatasetHandle& dataset, std::string& marker) {
  marker = args.marker_set ? args.marker : kanon_policy_marker(policy.ptr);
  const kanon_status status = kanon_dataset_read_csv(
      args.input.c_str(), args.delimiter[0], marker.c_str(), &dataset.ptr);
  if (status != KANON_OK) return report_failure("input", status);
  return kExitOk;
}

void add_common_options(CLI::App* cmd, CommonArgs& args, bool with_input) {
  if (with_input) {
    cmd->add_option("--input", args.input, "Input CSV table")->required();
  }
  cmd->add_option("--policy", args.policy, "Policy JSON file")->required();
  if (with_input) {
    cmd->add_option("--delimiter", args.delimiter, "Field delimiter")
        ->check(CLI::Validator(
            [](std::string& value) -> std::string {
              return value.size() == 1 ? "" : "must be a single character";
            },
            "CHAR"));
    cmd->add_option("--marker", args.marker,
                    "Suppressed-cell marker (overrides the policy)")
        ->each([&args](const std::string&) { args.marker_set = true; });
  }
}

int run_anonymize(const CommonArgs& args, const std::string& output,
                  const std::string& report_path) {
  PolicyHandle policy;
  if (int rc = load_policy(args, policy); rc != kExitOk) return rc;
  DatasetHandle dataset;
  std::string marker;
  if (int rc = load_input(args, policy, dataset, marker); rc != kExitOk) {
    return rc;
  }

  ResultHandle result;
  kanon_status status = kanon_anonymize(dataset.ptr, policy.ptr, &result.ptr);
  if (status != KANON_OK) return report_failure("anonymize", status);

  const kanon_dataset* published = nullptr;
  kanon_result_dataset(result.ptr, &published);
  status = kanon_dataset_write_csv(published, output.c_str(),
                                   args.delimiter[0], marker.c_str());
  if (status != KANON_OK) return report_failure("output", status);

  const char* report = kanon_result_report_json(result.ptr);
  if (report_path.empty()) {
    std::fputs(report, stdout);
  } else {
    std::FILE* file = std::fopen(report_path.c_str(), "wb");
    if (file == nullptr) {
      std::fprintf(stderr, "kanon: report: cannot open '%s' for writing\n",
                   report_path.c_str());
      return kExitInputError;
    }
    std::fputs(report, file);
    std::fclose(file);
  }
  return kExitOk;
}

int run_check(const CommonArgs& args) {
  PolicyHandle policy;
  if (int rc = load_policy(args, policy); rc != kExitOk) return rc;
  DatasetHandle dataset;
  std::string marker;
  if (int rc = load_input(args, policy, dataset, marker); rc != kExitOk) {
    return rc;
  }

  ResultHandle result;
  const kanon_status status = kanon_check(dataset.ptr, policy.ptr,
                                          &result.ptr);
  if (status != KANON_OK) return report_failure("check", status);
  std::fputs(kanon_result_report_json(result.ptr), stdout);
  return kanon_result_target_met(result.ptr) ? kExitOk : kExitTargetUnmet;
}

int run_hierarchy_validate(const CommonArgs& args) {
  PolicyHandle policy;
  if (int rc = load_policy(args, policy); rc != kExitOk) return rc;
  const kanon_status status = kanon_hierarchy_validate(policy.ptr);
  if (status != KANON_OK) return report_failure("hierarchy", status);
  std::puts("all hierarchies are well-formed");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tabular anonymization: generalization, suppression, and "
               "privacy checks for CSV microdata"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kanon_version()));

  CommonArgs anonymize_args;
  std::string output;
  std::string report_path;
  CLI::App* anonymize =
      app.add_subcommand("anonymize", "Run the anonymization pipeline");
  add_common_options(anonymize, anonymize_args, true);
  anonymize->add_option("--output", output, "Published CSV path")->required();
  anonymize->add_option("--report", report_path,
                        "Write the JSON report here instead of stdout");

  CommonArgs check_args;
  CLI::App* check = app.add_subcommand(
      "check", "Audit an existing table against the policy targets");
  add_common_options(check, check_args, true);

  CommonArgs validate_args;
  CLI::App* validate = app.add_subcommand(
      "hierarchy-validate", "Check every hierarchy declared by the policy");
  add_common_options(validate, validate_args, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  if (anonymize->parsed()) {
    return run_anonymize(anonymize_args, output, report_path);
  }
  if (check->parsed()) {
    return run_check(check_args);
  }
  if (validate->parsed()) {
    return run_hierarchy_validate(validate_args);
  }
  return kExitInputError;
}
