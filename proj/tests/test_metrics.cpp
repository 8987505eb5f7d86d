#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "kanon/metrics.hpp"
#include "test_support.hpp"

using namespace kanon;
using namespace kanon::test;

namespace {

const std::vector<std::string> kQid = {"Sex", "BirthDate", "Nationality"};

Dataset random_table(std::mt19937& rng, std::size_t max_rows,
                     std::size_t max_cols, int alphabet) {
  const std::size_t cols = 1 + rng() % max_cols;
  const std::size_t rows = rng() % (max_rows + 1);
  std::vector<std::string> schema;
  for (std::size_t c = 0; c < cols; ++c) {
    schema.push_back("a" + std::to_string(c));
  }
  std::vector<Row> data;
  for (std::size_t r = 0; r < rows; ++r) {
    Row row;
    for (std::size_t c = 0; c < cols; ++c) {
      const int pick = static_cast<int>(rng() % (alphabet + 1));
      if (pick == alphabet) {
        row.push_back(gap());
      } else {
        row.push_back(std::string(1, static_cast<char>('a' + pick)));
      }
    }
    data.push_back(std::move(row));
  }
  return Dataset(std::move(schema), std::move(data));
}

/// Quadratic reference partition: first occurrence order, then sorted to the
/// library's ordering contract for comparison.
std::vector<EquivalenceClass> brute_force_partition(
    const Dataset& d, const std::vector<std::string>& qid) {
  std::vector<std::size_t> cols;
  for (const auto& name : qid) cols.push_back(d.column_index(name));
  std::vector<EquivalenceClass> classes;
  for (std::size_t r = 0; r < d.row_count(); ++r) {
    std::vector<Cell> key;
    for (std::size_t c : cols) key.push_back(d.cell(r, c));
    bool placed = false;
    for (auto& cls : classes) {
      if (cls.key == key) {
        cls.rows.push_back(r);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({std::move(key), {r}});
  }
  std::sort(classes.begin(), classes.end(),
            [](const EquivalenceClass& a, const EquivalenceClass& b) {
              return a.key < b.key;
            });
  return classes;
}

bool same_classes(const std::vector<EquivalenceClass>& a,
                  const std::vector<EquivalenceClass>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].key != b[i].key || a[i].rows != b[i].rows) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("partition of the generalized fixture matches the hand count") {
  const Dataset d = load_fixture("admission_generalized_expected.csv");
  const auto classes = partition_by_qid(d, kQid);
  REQUIRE(classes.size() == 5);

  CHECK(classes[0].key == std::vector<Cell>{val("F"), val("196*"), val("KENYAN")});
  CHECK(classes[0].rows == std::vector<std::size_t>{2, 5});
  CHECK(classes[1].key ==
        std::vector<Cell>{val("F"), val("196*"), val("TANZANIA")});
  CHECK(classes[1].rows == std::vector<std::size_t>{6});
  CHECK(classes[2].key ==
        std::vector<Cell>{val("F"), val("196*"), val("UGANDAN")});
  CHECK(classes[2].rows == std::vector<std::size_t>{0, 1, 3, 8});
  CHECK(classes[3].key ==
        std::vector<Cell>{val("M"), val("196*"), val("TANZANIA")});
  CHECK(classes[3].rows == std::vector<std::size_t>{9});
  CHECK(classes[4].key ==
        std::vector<Cell>{val("M"), val("196*"), val("UGANDAN")});
  CHECK(classes[4].rows == std::vector<std::size_t>{4, 7});

  CHECK(k_anonymity_level(d, kQid) == 1);
}

TEST_CASE("partition orders suppressed keys first and handles empty qid") {
  const Dataset d = build_dataset(
      {"q"}, {{val("b")}, {gap()}, {val("a")}, {gap()}});
  const auto classes = partition_by_qid(d, {"q"});
  REQUIRE(classes.size() == 3);
  CHECK(classes[0].key == std::vector<Cell>{gap()});
  CHECK(classes[0].rows == std::vector<std::size_t>{1, 3});
  CHECK(classes[1].key == std::vector<Cell>{val("a")});
  CHECK(classes[2].key == std::vector<Cell>{val("b")});

  const auto everything = partition_by_qid(d, {});
  REQUIRE(everything.size() == 1);
  CHECK(everything[0].rows == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(everything[0].key.empty());

  CHECK(thrown_code([&] { partition_by_qid(d, {"q", "q"}); }) ==
        ErrorCode::duplicate_attribute);
  CHECK(thrown_code([&] { partition_by_qid(d, {"ghost"}); }) ==
        ErrorCode::unknown_attribute);
}

TEST_CASE("identical rows form a single class of full size") {
  std::vector<Row> rows(10, Row{val("F"), val("196*")});
  const Dataset d = build_dataset({"s", "b"}, std::move(rows));
  const auto classes = partition_by_qid(d, {"s", "b"});
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].size() == 10);
  CHECK(k_anonymity_level(d, {"s", "b"}) == 10);
}

TEST_CASE("k level requires a non-empty table") {
  const Dataset d = build_dataset({"q"}, {});
  CHECK(thrown_code([&] { k_anonymity_level(d, {"q"}); }) ==
        ErrorCode::empty_dataset);
}

TEST_CASE("partition and k level match a brute-force reference") {
  std::mt19937 rng(411);
  for (int trial = 0; trial < 1000; ++trial) {
    const Dataset d = random_table(rng, 30, 3, 3);
    std::vector<std::string> qid;
    for (const auto& name : d.schema()) {
      if (rng() % 2 == 0) qid.push_back(name);
    }
    const auto expected = brute_force_partition(d, qid);
    const auto actual = partition_by_qid(d, qid);
    REQUIRE(same_classes(actual, expected));

    std::size_t covered = 0;
    for (const auto& cls : actual) covered += cls.size();
    CHECK(covered == d.row_count());

    if (d.row_count() > 0) {
      std::size_t min_size = d.row_count();
      for (const auto& cls : expected) {
        min_size = std::min(min_size, cls.rows.size());
      }
      CHECK(k_anonymity_level(d, qid) == min_size);
    }
  }
}

TEST_CASE("frequency violations single out rare values per attribute") {
  const Dataset d = load_fixture("admission_pregeneralized.csv");
  const auto violations = attribute_frequency_violations(
      d, {"Sex", "BirthDate", "Nationality", "Hall", "Program", "Year"}, 2);
  REQUIRE(violations.size() == 1);
  REQUIRE(violations.count("Hall") == 1);
  CHECK(violations.at("Hall") == std::set<std::string>{"COMPLEX"});
}

TEST_CASE("frequency violations skip suppressed cells and validate k") {
  const Dataset d =
      build_dataset({"q"}, {{val("a")}, {gap()}, {gap()}});
  const auto violations = attribute_frequency_violations(d, {"q"}, 2);
  REQUIRE(violations.size() == 1);
  CHECK(violations.at("q") == std::set<std::string>{"a"});

  const Dataset paired = build_dataset({"q"}, {{val("a")}, {val("a")}});
  CHECK(attribute_frequency_violations(paired, {"q"}, 2).empty());

  const Dataset distinct =
      build_dataset({"q"}, {{val("a")}, {val("b")}, {val("c")}});
  CHECK(attribute_frequency_violations(distinct, {"q"}, 2).at("q") ==
        std::set<std::string>{"a", "b", "c"});

  CHECK(thrown_code([&] { attribute_frequency_violations(d, {"q"}, 1); }) ==
        ErrorCode::invalid_param);
}

TEST_CASE("strict pass implies per-attribute pass on random tables") {
  std::mt19937 rng(77);
  int strict_passes = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const Dataset d = random_table(rng, 20, 3, 2);
    if (d.row_count() == 0) continue;
    const std::vector<std::string> attrs = d.schema();
    if (k_anonymity_level(d, attrs) >= 2) {
      ++strict_passes;
      CHECK(attribute_frequency_violations(d, attrs, 2).empty());
    }
  }
  CHECK(strict_passes > 0);
}

TEST_CASE("distinct diversity takes the minimum over classes") {
  const Dataset d = build_dataset(
      {"q", "s"},
      {{val("x"), val("A")}, {val("x"), val("A")}, {val("x"), val("B")},
       {val("y"), val("C")}, {val("y"), val("C")}, {val("y"), val("C")}});
  CHECK(l_diversity_level(d, {"q"}, "s") == 1);

  const Dataset two = build_dataset(
      {"q", "s"},
      {{val("x"), val("A")}, {val("x"), val("B")},
       {val("y"), val("B")}, {val("y"), val("C")}});
  CHECK(l_diversity_level(two, {"q"}, "s") == 2);

  const Dataset uniform =
      build_dataset({"q", "s"}, {{val("x"), val("HIV+")},
                                 {val("x"), val("HIV+")},
                                 {val("x"), val("HIV+")}});
  CHECK(l_diversity_level(uniform, {"q"}, "s") == 1);

  const Dataset blanked =
      build_dataset({"q", "s"}, {{val("x"), gap()}, {val("x"), gap()}});
  CHECK(l_diversity_level(blanked, {"q"}, "s") == 0);

  CHECK(thrown_code([&] { l_diversity_level(d, {"s"}, "s"); }) ==
        ErrorCode::invalid_argument);
  const Dataset empty = build_dataset({"q", "s"}, {});
  CHECK(thrown_code([&] { l_diversity_level(empty, {"q"}, "s"); }) ==
        ErrorCode::empty_dataset);

  // Distinct counts can never exceed the class size.
  CHECK(l_diversity_level(d, {"q"}, "s") <= k_anonymity_level(d, {"q"}));
}

TEST_CASE("utility of an identity publication is perfect") {
  const Dataset d = build_dataset(
      {"q", "n"}, {{val("a"), val("1")}, {val("b"), val("2")}});
  const auto report = compute_utility(d, d, {}, {}, {"q"});
  CHECK(report.precision == doctest::Approx(1.0));
  CHECK(report.suppression_ratio == doctest::Approx(0.0));
  CHECK(report.records_suppressed == 0);
  CHECK(report.min_class_size == 1);
  CHECK(report.avg_class_size == doctest::Approx(1.0));
  CHECK(report.per_attribute_level.empty());
}

TEST_CASE("precision counts generalized and suppressed cells") {
  HierarchySpec spec;
  spec.kind = HierarchySpec::Kind::level_table;
  spec.rows = {{"a1", "a", "*"}, {"a2", "a", "*"}};
  const auto h = load_hierarchy(spec, "q", {"a1", "a2"});
  std::map<std::string, GeneralizationHierarchy> hierarchies;
  hierarchies.emplace("q", h);

  const Dataset original = build_dataset(
      {"q", "n"}, {{val("a1"), val("1")},
                   {val("a2"), val("2")},
                   {val("a1"), val("3")},
                   {val("a2"), val("4")}});
  // One record removed, one remaining q cell suppressed, rest at level 1.
  const Dataset published = build_dataset(
      {"q", "n"}, {{val("a"), val("1")},
                   {val("a"), val("2")},
                   {gap(), val("3")}});
  const auto report =
      compute_utility(original, published, hierarchies, {{"q", 1}}, {"q"});
  // Two cells at level 1 of height 2 plus one suppressed cell over 3 rows.
  CHECK(report.precision == doctest::Approx((1.0 - (0.5 + 0.5 + 1.0) / 3.0)));
  CHECK(report.records_suppressed == 1);
  // One blanked cell plus the two cells of the removed record, over 4x2.
  CHECK(report.suppression_ratio == doctest::Approx(3.0 / 8.0));
  CHECK(report.per_attribute_level.at("q") == 1);
  CHECK(report.min_class_size == 1);
  CHECK(report.avg_class_size == doctest::Approx(1.5));
}

TEST_CASE("two hierarchical attributes average their level ratios") {
  HierarchySpec first;
  first.kind = HierarchySpec::Kind::level_table;
  first.rows = {{"u1", "u", "*"}};
  HierarchySpec second;
  second.kind = HierarchySpec::Kind::level_table;
  second.rows = {{"v1", "v", "vv", "vvv", "*"}};
  std::map<std::string, GeneralizationHierarchy> hierarchies;
  hierarchies.emplace("p", load_hierarchy(first, "p", {"u1"}));
  hierarchies.emplace("r", load_hierarchy(second, "r", {"v1"}));

  const Dataset original =
      build_dataset({"p", "r"}, {{val("u1"), val("v1")},
                                 {val("u1"), val("v1")}});
  const Dataset published =
      build_dataset({"p", "r"}, {{val("u"), val("v1")},
                                 {val("u"), val("v1")}});
  const auto report = compute_utility(original, published, hierarchies,
                                      {{"p", 1}, {"r", 0}}, {"p", "r"});
  CHECK(report.precision == doctest::Approx(0.75));
}

TEST_CASE("published tables with all records removed score zero utility") {
  const Dataset original =
      build_dataset({"q"}, {{val("a")}, {val("b")}});
  const Dataset published = build_dataset({"q"}, {});
  const auto report = compute_utility(original, published, {}, {}, {"q"});
  CHECK(report.records_suppressed == 2);
  CHECK(report.suppression_ratio == doctest::Approx(1.0));
  CHECK(report.precision == doctest::Approx(1.0));
  CHECK(report.min_class_size == 0);
  CHECK(report.avg_class_size == doctest::Approx(0.0));
}

TEST_CASE("utility validates schema compatibility and level ranges") {
  const Dataset original = build_dataset({"q"}, {{val("a")}});
  const Dataset stranger = build_dataset({"z"}, {{val("a")}});
  CHECK(thrown_code([&] {
          compute_utility(original, stranger, {}, {}, {});
        }) == ErrorCode::incompatible_schema);

  const Dataset bigger =
      build_dataset({"q"}, {{val("a")}, {val("b")}});
  CHECK(thrown_code([&] {
          compute_utility(original, bigger, {}, {}, {});
        }) == ErrorCode::incompatible_schema);

  HierarchySpec spec;
  spec.kind = HierarchySpec::Kind::level_table;
  spec.rows = {{"a", "*"}};
  std::map<std::string, GeneralizationHierarchy> hierarchies;
  hierarchies.emplace("q", load_hierarchy(spec, "q", {"a"}));
  CHECK(thrown_code([&] {
          compute_utility(original, original, hierarchies, {{"q", 7}}, {"q"});
        }) == ErrorCode::level_out_of_range);
}

TEST_CASE("coarsening never decreases the minimum class size") {
  std::mt19937 rng(90210);
  HierarchySpec spec;
  spec.kind = HierarchySpec::Kind::level_table;
  for (int g = 0; g < 6; ++g) {
    spec.rows.push_back({"g" + std::to_string(g),
                         "m" + std::to_string(g / 2),
                         "t" + std::to_string(g / 4), "*"});
  }
  const auto h = load_hierarchy(spec, "q", {});
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = 1 + rng() % 24;
    std::vector<Row> data;
    for (std::size_t r = 0; r < rows; ++r) {
      data.push_back({val(("g" + std::to_string(rng() % 6)).c_str()),
                      val(std::string(1, static_cast<char>('a' + rng() % 2))
                              .c_str())});
    }
    Dataset d = build_dataset({"q", "w"}, std::move(data));
    std::size_t previous = 0;
    for (int lvl = 0; lvl <= h.height(); ++lvl) {
      const Dataset lifted = generalize_column(d, "q", h, lvl);
      const std::size_t level_min = k_anonymity_level(lifted, {"q", "w"});
      CHECK(level_min >= previous);
      previous = level_min;

      // Every coarser class is a union of finer classes.
      if (lvl > 0) {
        const Dataset finer = generalize_column(d, "q", h, lvl - 1);
        const auto fine = partition_by_qid(finer, {"q", "w"});
        const auto coarse = partition_by_qid(lifted, {"q", "w"});
        for (const auto& big : coarse) {
          std::set<std::size_t> members(big.rows.begin(), big.rows.end());
          for (const auto& small : fine) {
            const bool inside = members.count(small.rows.front()) > 0;
            for (std::size_t row : small.rows) {
              CHECK(members.count(row) == (inside ? 1u : 0u));
            }
          }
        }
      }
    }
  }
}
