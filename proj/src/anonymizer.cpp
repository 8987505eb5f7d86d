#include "kanon/anonymizer.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <set>
#include <unordered_map>

#include "kanon/error.hpp"

namespace kanon {
namespace {

Dataset lift_column(const Dataset& d, const std::string& attr,
                    const GeneralizationHierarchy& h, int from_level,
                    int to_level) {
  const std::size_t col = d.column_index(attr);
  std::map<std::string, std::string> memo;
  std::vector<Row> rows = d.rows();
  for (auto& row : rows) {
    Cell& cell = row[col];
    if (!cell.has_value()) continue;
    auto it = memo.find(*cell);
    if (it == memo.end()) {
      it = memo.emplace(*cell, h.ancestor(*cell, from_level, to_level)).first;
    }
    cell = it->second;
  }
  return Dataset(d.schema(), std::move(rows));
}

std::size_t min_value_frequency(const Dataset& d,
                                const std::vector<std::string>& attrs,
                                std::size_t fallback) {
  bool any = false;
  std::size_t minimum = 0;
  for (const auto& attr : attrs) {
    const std::size_t col = d.column_index(attr);
    std::map<std::string, std::size_t> freq;
    for (std::size_t r = 0; r < d.row_count(); ++r) {
      const Cell& cell = d.cell(r, col);
      if (cell.has_value()) ++freq[*cell];
    }
    for (const auto& [value, count] : freq) {
      if (!any || count < minimum) {
        any = true;
        minimum = count;
      }
    }
  }
  return any ? minimum : fallback;
}

/// Dictionary-encoded column of the enforcement input. Code 0 is the
/// suppressed cell; lift[l - init_level] maps base codes to dense codes of
/// the generalized values at level l.
struct EncodedAttr {
  std::string name;
  std::size_t col = 0;
  const GeneralizationHierarchy* hierarchy = nullptr;
  int height = 0;
  int init_level = 0;
  std::size_t non_suppressed = 0;
  std::vector<int> base_codes;
  std::vector<std::vector<int>> lift;
  std::vector<std::size_t> code_counts;  // codes per lift entry, incl. 0

  const std::vector<int>& table_at(int level) const {
    return lift[static_cast<std::size_t>(level - init_level)];
  }
  std::size_t codes_at(int level) const {
    return code_counts[static_cast<std::size_t>(level - init_level)];
  }
};

EncodedAttr encode_attribute(const Dataset& d, const std::string& name,
                             const GeneralizationHierarchy* h,
                             int init_level) {
  EncodedAttr e;
  e.name = name;
  e.col = d.column_index(name);
  e.hierarchy = h;
  e.height = h ? h->height() : 0;
  e.init_level = init_level;
  std::map<std::string, int> dict;
  std::vector<std::string> values;
  e.base_codes.assign(d.row_count(), 0);
  for (std::size_t r = 0; r < d.row_count(); ++r) {
    const Cell& cell = d.cell(r, e.col);
    if (!cell.has_value()) continue;
    auto [it, inserted] =
        dict.emplace(*cell, static_cast<int>(values.size()) + 1);
    if (inserted) values.push_back(*cell);
    e.base_codes[r] = it->second;
    ++e.non_suppressed;
  }
  const int top = h ? h->height() : init_level;
  for (int lvl = init_level; lvl <= top; ++lvl) {
    std::map<std::string, int> level_dict;
    std::vector<int> table(values.size() + 1, 0);
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::string ancestor =
          h ? h->ancestor(values[i], init_level, lvl) : values[i];
      auto [it, inserted] =
          level_dict.emplace(ancestor, static_cast<int>(level_dict.size()) + 1);
      table[i + 1] = it->second;
    }
    e.lift.push_back(std::move(table));
    e.code_counts.push_back(level_dict.size() + 1);
  }
  return e;
}

struct GroupInfo {
  std::vector<int> group;          // dense group id per row
  std::vector<std::size_t> sizes;  // rows per group id
};

GroupInfo strict_groups(const std::vector<EncodedAttr>& attrs,
                        const std::vector<int>& levels, std::size_t n) {
  GroupInfo info;
  info.group.assign(n, 0);
  std::size_t group_count = 1;
  std::unordered_map<std::uint64_t, int> pairs;
  for (std::size_t a = 0; a < attrs.size(); ++a) {
    const std::vector<int>& table = attrs[a].table_at(levels[a]);
    const std::uint64_t stride = attrs[a].codes_at(levels[a]);
    pairs.clear();
    pairs.reserve(n);
    int next = 0;
    for (std::size_t r = 0; r < n; ++r) {
      const std::uint64_t key =
          static_cast<std::uint64_t>(info.group[r]) * stride +
          static_cast<std::uint64_t>(table[attrs[a].base_codes[r]]);
      auto [it, inserted] = pairs.emplace(key, next);
      if (inserted) ++next;
      info.group[r] = it->second;
    }
    group_count = static_cast<std::size_t>(next);
  }
  info.sizes.assign(std::max<std::size_t>(group_count, 1), 0);
  for (std::size_t r = 0; r < n; ++r) ++info.sizes[info.group[r]];
  return info;
}

std::vector<std::vector<std::size_t>> value_frequencies(
    const std::vector<EncodedAttr>& attrs, const std::vector<int>& levels,
    std::size_t n) {
  std::vector<std::vector<std::size_t>> freq(attrs.size());
  for (std::size_t a = 0; a < attrs.size(); ++a) {
    const std::vector<int>& table = attrs[a].table_at(levels[a]);
    freq[a].assign(attrs[a].codes_at(levels[a]), 0);
    for (std::size_t r = 0; r < n; ++r) {
      const int code = table[attrs[a].base_codes[r]];
      if (code != 0) ++freq[a][static_cast<std::size_t>(code)];
    }
  }
  return freq;
}

std::size_t count_violators(CheckMode mode,
                            const std::vector<EncodedAttr>& attrs,
                            const std::vector<int>& levels, std::size_t n,
                            int k) {
  const auto kk = static_cast<std::size_t>(k);
  std::size_t count = 0;
  if (mode == CheckMode::strict) {
    const GroupInfo info = strict_groups(attrs, levels, n);
    for (std::size_t r = 0; r < n; ++r) {
      if (info.sizes[static_cast<std::size_t>(info.group[r])] < kk) ++count;
    }
    return count;
  }
  const auto freq = value_frequencies(attrs, levels, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t a = 0; a < attrs.size(); ++a) {
      const int code = attrs[a].table_at(levels[a])[attrs[a].base_codes[r]];
      if (code != 0 && freq[a][static_cast<std::size_t>(code)] < kk) {
        ++count;
        break;
      }
    }
  }
  return count;
}

/// Rows that must be removed so the survivors pass the mode's check. Under
/// the per-attribute mode removals can expose new rare values, so the set
/// is closed by cascading until a fixpoint; under strict grouping one pass
/// suffices because surviving groups keep their sizes.
std::vector<std::size_t> violator_closure(CheckMode mode,
                                          const std::vector<EncodedAttr>& attrs,
                                          const std::vector<int>& levels,
                                          std::size_t n, int k) {
  const auto kk = static_cast<std::size_t>(k);
  std::vector<std::size_t> result;
  if (mode == CheckMode::strict) {
    const GroupInfo info = strict_groups(attrs, levels, n);
    for (std::size_t r = 0; r < n; ++r) {
      if (info.sizes[static_cast<std::size_t>(info.group[r])] < kk) {
        result.push_back(r);
      }
    }
    return result;
  }
  const std::size_t m = attrs.size();
  std::vector<const std::vector<int>*> tables(m);
  std::vector<std::vector<std::size_t>> freq(m);
  std::vector<std::vector<std::vector<std::size_t>>> rows_of(m);
  for (std::size_t a = 0; a < m; ++a) {
    tables[a] = &attrs[a].table_at(levels[a]);
    const std::size_t codes = attrs[a].codes_at(levels[a]);
    freq[a].assign(codes, 0);
    rows_of[a].assign(codes, {});
    for (std::size_t r = 0; r < n; ++r) {
      const int code = (*tables[a])[attrs[a].base_codes[r]];
      if (code == 0) continue;
      ++freq[a][static_cast<std::size_t>(code)];
      rows_of[a][static_cast<std::size_t>(code)].push_back(r);
    }
  }
  std::vector<char> removed(n, 0);
  std::vector<std::size_t> pending;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t code = 1; code < freq[a].size(); ++code) {
      if (freq[a][code] > 0 && freq[a][code] < kk) {
        pending.insert(pending.end(), rows_of[a][code].begin(),
                       rows_of[a][code].end());
      }
    }
  }
  while (!pending.empty()) {
    const std::size_t r = pending.back();
    pending.pop_back();
    if (removed[r]) continue;
    removed[r] = 1;
    for (std::size_t a = 0; a < m; ++a) {
      const int code = (*tables[a])[attrs[a].base_codes[r]];
      if (code == 0) continue;
      std::size_t& count = freq[a][static_cast<std::size_t>(code)];
      --count;
      if (count > 0 && count < kk) {
        for (std::size_t other : rows_of[a][static_cast<std::size_t>(code)]) {
          if (!removed[other]) pending.push_back(other);
        }
      }
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (removed[r]) result.push_back(r);
  }
  return result;
}

/// One lattice raise costs (non-suppressed cells) / height in normalized
/// precision; exact comparison by cross multiplication.
bool smaller_precision_loss(const EncodedAttr& a, const EncodedAttr& b) {
  const auto lhs = static_cast<std::uint64_t>(a.non_suppressed) *
                   static_cast<std::uint64_t>(b.height);
  const auto rhs = static_cast<std::uint64_t>(b.non_suppressed) *
                   static_cast<std::uint64_t>(a.height);
  return lhs < rhs;
}

template <typename Fn>
auto pipeline_step(const char* stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    fail(e.code(), std::string(stage) + ": " + e.message());
  }
}

std::string format_ratio(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return buf;
}

}  // namespace

Dataset suppress_cells(const Dataset& d,
                       const SuppressionDirective& directive) {
  if (directive.kind == SuppressionDirective::Kind::record) {
    fail(ErrorCode::invalid_argument,
         "record directives remove rows; use suppress_records");
  }
  const std::size_t col = d.column_index(directive.attribute);
  std::vector<Row> rows = d.rows();
  if (directive.kind == SuppressionDirective::Kind::cell_value) {
    for (auto& row : rows) {
      if (row[col].has_value() && *row[col] == directive.value) {
        row[col] = kSuppressed;
      }
    }
  } else {
    for (std::size_t idx : directive.rows) {
      if (idx >= rows.size()) {
        fail(ErrorCode::row_out_of_range,
             "row " + std::to_string(idx) + " outside 0.." +
                 std::to_string(rows.size()) + " exclusive");
      }
      rows[idx][col] = kSuppressed;
    }
  }
  return Dataset(d.schema(), std::move(rows));
}

Dataset suppress_records(const Dataset& d,
                         const std::vector<std::size_t>& indices) {
  std::set<std::size_t> drop;
  for (std::size_t idx : indices) {
    if (idx >= d.row_count()) {
      fail(ErrorCode::row_out_of_range,
           "row " + std::to_string(idx) + " outside 0.." +
               std::to_string(d.row_count()) + " exclusive");
    }
    drop.insert(idx);
  }
  std::vector<Row> rows;
  rows.reserve(d.row_count() - drop.size());
  for (std::size_t r = 0; r < d.row_count(); ++r) {
    if (drop.count(r) == 0) rows.push_back(d.row(r));
  }
  return Dataset(d.schema(), std::move(rows));
}

AnonymizationResult enforce_k_anonymity(
    const Dataset& d, const std::vector<std::string>& qid,
    const std::map<std::string, GeneralizationHierarchy>& hierarchies,
    const PrivacyParams& params, double budget,
    const LevelVector& initial_levels) {
  if (d.row_count() == 0) {
    fail(ErrorCode::empty_dataset, "enforcement needs at least one row");
  }
  if (params.k < 2) {
    fail(ErrorCode::invalid_param,
         "k must be >= 2, got " + std::to_string(params.k));
  }
  if (params.l.has_value() && *params.l < 2) {
    fail(ErrorCode::invalid_param,
         "l must be >= 2, got " + std::to_string(*params.l));
  }
  if (!(budget >= 0.0 && budget <= 1.0)) {
    fail(ErrorCode::invalid_param, "suppression budget must lie in [0, 1]");
  }
  for (const auto& [attr, level] : initial_levels) {
    auto it = hierarchies.find(attr);
    if (it == hierarchies.end()) {
      fail(ErrorCode::invalid_argument,
           "initial level given for '" + attr + "' which has no hierarchy");
    }
    if (level < 0 || level > it->second.height()) {
      fail(ErrorCode::level_out_of_range,
           "initial level " + std::to_string(level) + " for '" + attr +
               "' outside 0.." + std::to_string(it->second.height()));
    }
  }

  std::vector<std::string> checked;
  std::set<std::string> seen;
  for (const auto& attr : qid) {
    if (!seen.insert(attr).second) {
      fail(ErrorCode::duplicate_attribute,
           "attribute '" + attr + "' listed twice");
    }
    checked.push_back(attr);
  }
  for (const auto& attr : params.linkage_attrs) {
    if (seen.insert(attr).second) checked.push_back(attr);
  }

  const std::size_t n = d.row_count();
  std::vector<EncodedAttr> attrs;
  std::vector<int> levels;
  attrs.reserve(checked.size());
  for (const auto& name : checked) {
    auto hit = hierarchies.find(name);
    const GeneralizationHierarchy* h =
        hit == hierarchies.end() ? nullptr : &hit->second;
    int init = 0;
    if (h != nullptr) {
      auto lit = initial_levels.find(name);
      if (lit != initial_levels.end()) init = lit->second;
    }
    attrs.push_back(encode_attribute(d, name, h, init));
    levels.push_back(init);
  }
  std::vector<std::size_t> candidate_order(attrs.size());
  std::iota(candidate_order.begin(), candidate_order.end(), 0);
  std::sort(candidate_order.begin(), candidate_order.end(),
            [&attrs](std::size_t a, std::size_t b) {
              return attrs[a].col < attrs[b].col;
            });

  const auto allowance =
      static_cast<std::size_t>(budget * static_cast<double>(n) + 1e-9);
  std::size_t iterations = 0;
  std::vector<std::size_t> to_remove;
  while (true) {
    to_remove = violator_closure(params.mode, attrs, levels, n, params.k);
    if (to_remove.size() <= allowance) break;

    std::size_t best = attrs.size();
    std::size_t best_count = 0;
    for (std::size_t idx : candidate_order) {
      const EncodedAttr& e = attrs[idx];
      if (e.hierarchy == nullptr || levels[idx] >= e.height) continue;
      ++levels[idx];
      const std::size_t count =
          count_violators(params.mode, attrs, levels, n, params.k);
      --levels[idx];
      if (best == attrs.size() || count < best_count ||
          (count == best_count && smaller_precision_loss(e, attrs[best]))) {
        best = idx;
        best_count = count;
      }
    }
    if (best == attrs.size()) {
      fail(ErrorCode::infeasible_within_budget,
           std::to_string(to_remove.size()) +
               " violating rows exceed the allowed " +
               std::to_string(allowance) +
               " record suppressions and every hierarchy is at its top "
               "level");
    }
    ++levels[best];
    ++iterations;
  }

  Dataset out = d;
  LevelVector final_levels = initial_levels;
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    if (attrs[i].hierarchy == nullptr) continue;
    final_levels[attrs[i].name] = levels[i];
    if (levels[i] > attrs[i].init_level) {
      out = lift_column(out, attrs[i].name, *attrs[i].hierarchy,
                        attrs[i].init_level, levels[i]);
    }
  }
  out = suppress_records(out, to_remove);

  AnonymizationReport report;
  report.final_levels = std::move(final_levels);
  report.suppressed_records = std::move(to_remove);
  report.mode = params.mode;
  report.iterations = iterations;
  if (out.row_count() == 0) {
    report.achieved_k = static_cast<std::size_t>(params.k);
  } else if (params.mode == CheckMode::strict) {
    report.achieved_k = k_anonymity_level(out, checked);
  } else {
    report.achieved_k =
        min_value_frequency(out, checked, static_cast<std::size_t>(params.k));
  }
  return {std::move(out), std::move(report)};
}

AnonymizationResult run_pipeline(const Dataset& raw, const Policy& policy) {
  const ClassifiedSchema classified = pipeline_step("classify", [&] {
    return classify_attributes(raw, policy.classification);
  });
  for (const auto& attr : policy.params.linkage_attrs) {
    if (!classified.covers(attr)) {
      fail(ErrorCode::unknown_attribute,
           "classify: linkage attribute '" + attr + "' is not in the table");
    }
    const AttributeCategory category = classified.category_of(attr);
    if (category == AttributeCategory::pii) {
      fail(ErrorCode::invalid_argument,
           "classify: linkage attribute '" + attr +
               "' is removed by de-identification");
    }
    if (category == AttributeCategory::sensitive) {
      fail(ErrorCode::invalid_argument,
           "classify: sensitive attribute '" + attr +
               "' cannot serve as a linkage attribute");
    }
  }

  const Dataset deid = pipeline_step("deidentify", [&] {
    return deidentify(raw, classified, RetainList{policy.retain});
  });
  const std::vector<std::string> qid =
      classified.attributes_in(AttributeCategory::quasi);
  const std::vector<std::string> sensitive =
      classified.attributes_in(AttributeCategory::sensitive);

  std::map<std::string, GeneralizationHierarchy> hierarchies;
  for (const auto& [attr, ref] : policy.hierarchy_refs) {
    const std::string stage = "hierarchy '" + ref + "' for '" + attr + "'";
    pipeline_step(stage.c_str(), [&] {
      if (classified.category_of(attr) != AttributeCategory::quasi) {
        fail(ErrorCode::invalid_argument,
             "only quasi-identifier attributes can be generalized");
      }
      auto spec_it = policy.hierarchy_specs.find(ref);
      if (spec_it == policy.hierarchy_specs.end()) {
        fail(ErrorCode::unknown_hierarchy_ref,
             "no hierarchy named '" + ref + "'");
      }
      const std::size_t col = deid.column_index(attr);
      std::set<std::string> observed;
      for (std::size_t r = 0; r < deid.row_count(); ++r) {
        const Cell& cell = deid.cell(r, col);
        if (cell.has_value()) observed.insert(*cell);
      }
      hierarchies.emplace(attr, load_hierarchy(spec_it->second, attr, observed));
    });
  }

  Dataset current = pipeline_step("base generalization", [&] {
    Dataset stage = deid;
    for (const auto& [attr, level] : policy.base_levels) {
      auto it = hierarchies.find(attr);
      if (it == hierarchies.end()) {
        fail(ErrorCode::unknown_hierarchy_ref,
             "level declared for '" + attr + "' which has no hierarchy");
      }
      stage = generalize_column(stage, attr, it->second, level);
    }
    return stage;
  });

  // Row frame: current row index -> row index in the de-identified input.
  std::vector<std::size_t> frame(current.row_count());
  std::iota(frame.begin(), frame.end(), 0);
  std::set<std::pair<std::size_t, std::string>> blanked;
  std::vector<std::size_t> removed_records;
  for (std::size_t i = 0; i < policy.directives.size(); ++i) {
    const SuppressionDirective& dir = policy.directives[i];
    const std::string stage = "directive at index " + std::to_string(i);
    current = pipeline_step(stage.c_str(), [&]() -> Dataset {
      switch (dir.kind) {
        case SuppressionDirective::Kind::cell_value: {
          const std::size_t col = current.column_index(dir.attribute);
          for (std::size_t r = 0; r < current.row_count(); ++r) {
            const Cell& cell = current.cell(r, col);
            if (cell.has_value() && *cell == dir.value) {
              blanked.emplace(frame[r], dir.attribute);
            }
          }
          return suppress_cells(current, dir);
        }
        case SuppressionDirective::Kind::cell_at: {
          Dataset next = suppress_cells(current, dir);
          for (std::size_t idx : dir.rows) {
            blanked.emplace(frame[idx], dir.attribute);
          }
          return next;
        }
        case SuppressionDirective::Kind::record: {
          Dataset next = suppress_records(current, dir.rows);
          const std::set<std::size_t> drop(dir.rows.begin(), dir.rows.end());
          std::vector<std::size_t> kept;
          kept.reserve(frame.size() - drop.size());
          for (std::size_t r = 0; r < frame.size(); ++r) {
            if (drop.count(r) == 0) {
              kept.push_back(frame[r]);
            } else {
              removed_records.push_back(frame[r]);
            }
          }
          frame = std::move(kept);
          return next;
        }
      }
      fail(ErrorCode::invalid_argument, "unknown directive kind");
    });
  }

  Dataset published = current;
  AnonymizationReport report;
  if (current.row_count() == 0) {
    report.mode = policy.params.mode;
    report.achieved_k = static_cast<std::size_t>(policy.params.k);
    report.final_levels = policy.base_levels;
    for (const auto& [attr, h] : hierarchies) {
      report.final_levels.emplace(attr, 0);
    }
    report.warnings.push_back(
        "all records were suppressed or removed; the published table is "
        "empty");
  } else {
    AnonymizationResult enforced = pipeline_step("enforcement", [&] {
      return enforce_k_anonymity(current, qid, hierarchies, policy.params,
                                 policy.suppression_budget,
                                 policy.base_levels);
    });
    published = std::move(enforced.data);
    report = std::move(enforced.report);
    for (std::size_t idx : report.suppressed_records) {
      removed_records.push_back(frame[idx]);
    }
  }
  std::sort(removed_records.begin(), removed_records.end());
  report.suppressed_records = std::move(removed_records);
  report.directives = policy.directives;
  report.suppressed_cells.reserve(blanked.size());
  for (const auto& [row, attr] : blanked) {
    report.suppressed_cells.push_back({row, attr});
  }
  report.retained_pii = policy.retain;

  pipeline_step("diversity check", [&] {
    if (sensitive.empty()) {
      if (policy.params.l.has_value()) {
        report.warnings.push_back(
            "diversity target set but the dataset has no sensitive "
            "attributes; check skipped");
      }
      return;
    }
    if (published.row_count() == 0) return;
    std::size_t minimum = published.row_count();
    for (const auto& attr : sensitive) {
      minimum = std::min(minimum, l_diversity_level(published, qid, attr));
    }
    report.achieved_l = minimum;
    if (policy.params.l.has_value() &&
        minimum < static_cast<std::size_t>(*policy.params.l)) {
      report.warnings.push_back(
          "diversity target l=" + std::to_string(*policy.params.l) +
          " not met: achieved " + std::to_string(minimum));
    }
  });

  report.utility = pipeline_step("utility", [&] {
    return compute_utility(deid, published, hierarchies, report.final_levels,
                           qid);
  });
  if (report.utility.suppression_ratio > 0.20) {
    report.warnings.push_back(
        "suppression ratio " + format_ratio(report.utility.suppression_ratio) +
        " exceeds 20% of cells");
  }
  return {std::move(published), std::move(report)};
}

CheckResult run_check(const Dataset& d, const Policy& policy) {
  std::map<std::string, AttributeCategory> assignment;
  for (const auto& [name, category] : policy.classification) {
    if (d.has_attribute(name)) {
      assignment.emplace(name, category);
      continue;
    }
    if (category == AttributeCategory::quasi ||
        category == AttributeCategory::sensitive) {
      fail(ErrorCode::unknown_attribute,
           "attribute '" + name + "' required by the check is missing from "
           "the table");
    }
  }
  const ClassifiedSchema classified = classify_attributes(d, assignment);
  const std::vector<std::string> qid =
      classified.attributes_in(AttributeCategory::quasi);
  std::vector<std::string> checked = qid;
  std::set<std::string> seen(qid.begin(), qid.end());
  for (const auto& attr : policy.params.linkage_attrs) {
    if (seen.insert(attr).second) checked.push_back(attr);
  }

  CheckResult result;
  result.mode = policy.params.mode;
  result.min_class_size = k_anonymity_level(d, checked);
  result.frequency_violations =
      attribute_frequency_violations(d, checked, policy.params.k);
  if (policy.params.mode == CheckMode::strict) {
    result.achieved_k = result.min_class_size;
    result.k_satisfied =
        result.min_class_size >= static_cast<std::size_t>(policy.params.k);
  } else {
    result.achieved_k = min_value_frequency(
        d, checked, static_cast<std::size_t>(policy.params.k));
    result.k_satisfied = result.frequency_violations.empty();
  }
  const std::vector<std::string> sensitive =
      classified.attributes_in(AttributeCategory::sensitive);
  if (!sensitive.empty()) {
    std::size_t minimum = d.row_count();
    for (const auto& attr : sensitive) {
      minimum = std::min(minimum, l_diversity_level(d, qid, attr));
    }
    result.achieved_l = minimum;
    if (policy.params.l.has_value()) {
      result.l_satisfied =
          minimum >= static_cast<std::size_t>(*policy.params.l);
    }
  }
  result.target_met = result.k_satisfied && result.l_satisfied;
  return result;
}

}  // namespace kanon
