#include "kanon/hierarchy.hpp"

#include <algorithm>
#include <cctype>

#include "kanon/error.hpp"

namespace kanon {
namespace {

bool matches_date_pattern(const std::string& v) {
  if (v.size() != 8 || v[2] != '/' || v[5] != '/') return false;
  for (std::size_t i : {0u, 1u, 3u, 4u, 6u, 7u}) {
    if (!std::isdigit(static_cast<unsigned char>(v[i]))) return false;
  }
  return true;
}

void append_unique(std::vector<std::string>& domain,
                   std::set<std::string>& seen, const std::string& value) {
  if (seen.insert(value).second) domain.push_back(value);
}

}  // namespace

GeneralizationHierarchy::GeneralizationHierarchy(
    std::string attribute, std::vector<std::vector<std::string>> level_domains,
    std::vector<std::map<std::string, std::string>> maps, bool rooted)
    : attribute_(std::move(attribute)),
      level_domains_(std::move(level_domains)),
      maps_(std::move(maps)),
      rooted_(rooted) {
  domain_sets_.reserve(level_domains_.size());
  for (const auto& domain : level_domains_) {
    domain_sets_.emplace_back(domain.begin(), domain.end());
  }
}

bool GeneralizationHierarchy::covers(
    const std::string& ground_value) const noexcept {
  return !domain_sets_.empty() && domain_sets_[0].count(ground_value) > 0;
}

std::string GeneralizationHierarchy::ancestor(const std::string& value,
                                              int from_level,
                                              int to_level) const {
  if (from_level < 0 || to_level > height() || from_level > to_level) {
    fail(ErrorCode::level_out_of_range,
         "hierarchy for '" + attribute_ + "': levels " +
             std::to_string(from_level) + ".." + std::to_string(to_level) +
             " outside 0.." + std::to_string(height()));
  }
  if (domain_sets_[static_cast<std::size_t>(from_level)].count(value) == 0) {
    fail(ErrorCode::unknown_value,
         "hierarchy for '" + attribute_ + "': value '" + value +
             "' not in level " + std::to_string(from_level) + " domain");
  }
  std::string current = value;
  for (int lvl = from_level; lvl < to_level; ++lvl) {
    const auto& map = maps_[static_cast<std::size_t>(lvl)];
    auto it = map.find(current);
    if (it == map.end()) {
      fail(ErrorCode::malformed_spec,
           "hierarchy for '" + attribute_ + "': value '" + current +
               "' has no ancestor at level " + std::to_string(lvl + 1));
    }
    current = it->second;
  }
  return current;
}

GeneralizationHierarchy load_hierarchy(
    const HierarchySpec& spec, const std::string& attribute,
    const std::set<std::string>& observed_ground_values) {
  std::vector<std::vector<std::string>> chains;

  if (spec.kind == HierarchySpec::Kind::date_pattern) {
    if (spec.pattern != "dd/mm/yy") {
      fail(ErrorCode::malformed_spec,
           "hierarchy for '" + attribute + "': unsupported date pattern '" +
               spec.pattern + "'");
    }
    for (const auto& v : observed_ground_values) {
      if (!matches_date_pattern(v)) {
        fail(ErrorCode::uncovered_ground_value,
             "hierarchy for '" + attribute + "': value '" + v +
                 "' does not match pattern dd/mm/yy");
      }
      std::string year = std::string("19") + v.substr(6, 2);
      std::string decade = year.substr(0, 3) + "*";
      chains.push_back({v, year, decade, "*"});
    }
  } else {
    if (spec.rows.empty()) {
      fail(ErrorCode::malformed_spec,
           "hierarchy for '" + attribute + "': no rows");
    }
    const std::size_t width = spec.rows[0].size();
    if (width < 2) {
      fail(ErrorCode::malformed_spec,
           "hierarchy for '" + attribute + "': rows need a ground value and "
           "at least one ancestor");
    }
    std::set<std::string> ground_seen;
    for (const auto& row : spec.rows) {
      if (row.size() != width) {
        fail(ErrorCode::malformed_spec,
             "hierarchy for '" + attribute + "': row for '" +
                 (row.empty() ? std::string() : row[0]) +
                 "' has " + std::to_string(row.size()) +
                 " columns, expected " + std::to_string(width));
      }
      if (!ground_seen.insert(row[0]).second) {
        fail(ErrorCode::malformed_spec,
             "hierarchy for '" + attribute + "': duplicate ground value '" +
                 row[0] + "'");
      }
      chains.push_back(row);
    }
    if (!spec.catch_all.empty() && spec.catch_all.size() != width - 1) {
      fail(ErrorCode::malformed_spec,
           "hierarchy for '" + attribute + "': catch-all has " +
               std::to_string(spec.catch_all.size()) + " levels, expected " +
               std::to_string(width - 1));
    }
    for (const auto& v : observed_ground_values) {
      if (ground_seen.count(v) > 0) continue;
      if (spec.catch_all.empty()) {
        fail(ErrorCode::uncovered_ground_value,
             "hierarchy for '" + attribute + "': observed value '" + v +
                 "' has no generalization");
      }
      std::vector<std::string> chain;
      chain.push_back(v);
      chain.insert(chain.end(), spec.catch_all.begin(), spec.catch_all.end());
      chains.push_back(std::move(chain));
    }
  }

  const std::size_t width = chains.empty() ? 2 : chains[0].size();
  std::vector<std::vector<std::string>> domains(width);
  std::vector<std::set<std::string>> seen(width);
  std::vector<std::map<std::string, std::string>> maps(width - 1);
  for (const auto& chain : chains) {
    for (std::size_t lvl = 0; lvl < width; ++lvl) {
      append_unique(domains[lvl], seen[lvl], chain[lvl]);
      if (lvl + 1 == width) continue;
      auto [it, inserted] = maps[lvl].emplace(chain[lvl], chain[lvl + 1]);
      if (!inserted && it->second != chain[lvl + 1]) {
        fail(ErrorCode::malformed_spec,
             "hierarchy for '" + attribute + "': value '" + chain[lvl] +
                 "' at level " + std::to_string(lvl) +
                 " has two ancestors ('" + it->second + "' and '" +
                 chain[lvl + 1] + "')");
      }
    }
  }
  if (spec.kind == HierarchySpec::Kind::date_pattern) {
    // The chain always tops out at "*" even when no values were observed.
    if (domains.back().empty()) domains.back().push_back("*");
  }

  bool rooted = spec.rooted || spec.kind == HierarchySpec::Kind::date_pattern;
  if (rooted && domains.back().size() > 1) {
    fail(ErrorCode::malformed_spec,
         "hierarchy for '" + attribute + "': top level has " +
             std::to_string(domains.back().size()) +
             " values, expected a single root");
  }
  GeneralizationHierarchy h(attribute, std::move(domains), std::move(maps),
                            rooted);
  HierarchyValidation check = validate_hierarchy(h);
  if (!check.ok()) {
    fail(check.violations[0].code,
         "hierarchy for '" + attribute + "': " + check.violations[0].message);
  }
  return h;
}

HierarchyValidation validate_hierarchy(const GeneralizationHierarchy& h) {
  HierarchyValidation result;
  auto add = [&result](ErrorCode code, std::string message) {
    result.violations.push_back({code, std::move(message)});
  };

  const auto& domains = h.level_domains();
  const auto& maps = h.maps();
  if (domains.empty()) {
    add(ErrorCode::malformed_spec, "no levels");
    return result;
  }
  if (maps.size() + 1 != domains.size()) {
    add(ErrorCode::malformed_spec,
        std::to_string(maps.size()) + " level maps for " +
            std::to_string(domains.size()) + " levels");
    return result;
  }
  std::vector<std::set<std::string>> sets;
  sets.reserve(domains.size());
  for (std::size_t lvl = 0; lvl < domains.size(); ++lvl) {
    std::set<std::string> s(domains[lvl].begin(), domains[lvl].end());
    if (s.size() != domains[lvl].size()) {
      add(ErrorCode::malformed_spec,
          "level " + std::to_string(lvl) + " domain has duplicate values");
    }
    sets.push_back(std::move(s));
  }
  for (std::size_t lvl = 0; lvl + 1 < domains.size(); ++lvl) {
    for (const auto& value : domains[lvl]) {
      if (maps[lvl].find(value) == maps[lvl].end()) {
        add(ErrorCode::uncovered_ground_value,
            "value '" + value + "' at level " + std::to_string(lvl) +
                " has no ancestor");
      }
    }
    for (const auto& [child, parent] : maps[lvl]) {
      if (sets[lvl].count(child) == 0) {
        add(ErrorCode::malformed_spec,
            "map at level " + std::to_string(lvl) + " covers '" + child +
                "' which is not in the level domain");
      }
      if (sets[lvl + 1].count(parent) == 0) {
        add(ErrorCode::malformed_spec,
            "ancestor '" + parent + "' of '" + child + "' is not in the level " +
                std::to_string(lvl + 1) + " domain");
      }
    }
  }
  if (h.rooted() && domains.back().size() != 1) {
    add(ErrorCode::malformed_spec,
        "top level has " + std::to_string(domains.back().size()) +
            " values, expected a single root");
  }
  return result;
}

Cell generalize_value(const GeneralizationHierarchy& h, const Cell& value,
                      int level) {
  if (level < 0 || level > h.height()) {
    fail(ErrorCode::level_out_of_range,
         "hierarchy for '" + h.attribute() + "': level " +
             std::to_string(level) + " outside 0.." +
             std::to_string(h.height()));
  }
  if (!value.has_value()) return kSuppressed;
  return h.ancestor(*value, 0, level);
}

Dataset generalize_column(const Dataset& dataset, const std::string& attr,
                          const GeneralizationHierarchy& h, int level) {
  const std::size_t col = dataset.column_index(attr);
  if (level < 0 || level > h.height()) {
    fail(ErrorCode::level_out_of_range,
         "hierarchy for '" + attr + "': level " + std::to_string(level) +
             " outside 0.." + std::to_string(h.height()));
  }
  std::map<std::string, std::string> memo;
  std::vector<Row> rows = dataset.rows();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Cell& cell = rows[r][col];
    if (!cell.has_value()) continue;
    auto it = memo.find(*cell);
    if (it == memo.end()) {
      try {
        it = memo.emplace(*cell, h.ancestor(*cell, 0, level)).first;
      } catch (const Error& e) {
        fail(e.code(), e.message() + " (row " + std::to_string(r) + ")");
      }
    }
    cell = it->second;
  }
  return Dataset(dataset.schema(), std::move(rows));
}

}  // namespace kanon
