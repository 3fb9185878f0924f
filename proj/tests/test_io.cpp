#include <fstream>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "asylum/examples.hpp"
#include "asylum/io.hpp"

using namespace asylum;

namespace {

std::string slurp(const std::string& relative) {
  std::ifstream in(std::string(ASYLUM_SOURCE_DIR) + "/" + relative);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("bundled instance files round-trip byte for byte") {
  for (const auto& name : bundled_example_names()) {
    CAPTURE(name);
    std::string text = slurp("data/instances/" + name + ".json");
    Instance inst = parse_instance(text, Validation::lenient);
    CHECK(serialize_instance(inst) == text);
    // and the file content is exactly the canonical form of the bundled data
    CHECK(serialize_instance(bundled_example(name).instance) == text);
  }
}

TEST_CASE("strict parsing rejects the out-of-model menus, lenient admits them") {
  std::string text = slurp("data/instances/example3.json");
  CHECK_THROWS_AS(parse_instance(text), ValidationError);
  CHECK_NOTHROW(parse_instance(text, Validation::lenient));
}

TEST_CASE("empty and malformed documents are syntax errors") {
  CHECK_THROWS_AS(parse_instance(""), ParseError);
  CHECK_THROWS_AS(parse_instance("[]"), ParseError);
  CHECK_THROWS_AS(parse_instance("{\"seekers\": []}"), ParseError);  // missing fields
}

TEST_CASE("unknown fields are rejected everywhere") {
  std::string text = slurp("data/instances/example1.json");
  Instance inst = parse_instance(text);

  auto corrupt = [&](const std::string& needle, const std::string& replacement) {
    std::string copy = text;
    auto at = copy.find(needle);
    REQUIRE(at != std::string::npos);
    copy.replace(at, needle.size(), replacement);
    return copy;
  };

  CHECK_THROWS_AS(parse_instance(corrupt("\"seekers\"", "\"people\"")), ParseError);
  CHECK_THROWS_AS(parse_instance(corrupt("\"burden\"", "\"weight\"")), ParseError);
  CHECK_THROWS_AS(parse_instance(corrupt("\"quota\"", "\"target\"")), ParseError);
  CHECK_THROWS_AS(parse_instance(corrupt("\"slots\"", "\"count\"")), ParseError);
  (void)inst;
}

TEST_CASE("type and value errors carry the field path") {
  std::string bad_wait = R"({"seekers":[],"states":[],"waits":["1/x"],"preferences":[]})";
  try {
    parse_instance(bad_wait);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("waits[0]") != std::string::npos);
  }

  std::string bad_burden =
      R"({"seekers":[{"id":"a1","burden":"x"}],"states":[],"waits":[],"preferences":[]})";
  CHECK_THROWS_AS(parse_instance(bad_burden), ParseError);
}

TEST_CASE("binding rejects dangling references and duplicate ids") {
  InstanceData data;
  data.seekers = {{"a1", 1}, {"a1", 1}};
  data.waits = {Rational(1)};
  data.states = {{"m1", 1, {{Rational(1), 2}}, {"a1", "a1"}}};
  data.preferences = {{"a1", {}}, {"a1", {}}};
  CHECK_THROWS_AS(bind_instance(data), ValidationError);

  InstanceData dangling;
  dangling.seekers = {{"a1", 1}};
  dangling.waits = {Rational(1)};
  dangling.states = {{"m1", 1, {{Rational(2), 1}}, {"a1"}}};  // capacity at unknown wait
  dangling.preferences = {{"a1", {}}};
  CHECK_THROWS_AS(bind_instance(dangling), ValidationError);
}

TEST_CASE("duplicate ranking entries are a validation issue") {
  InstanceData data;
  data.seekers = {{"a1", 1}};
  data.waits = {Rational(1)};
  data.states = {{"m1", 1, {{Rational(1), 1}}, {"a1"}}};
  data.preferences = {{"a1", {{"m1", Rational(1)}, {"m1", Rational(1)}}}};
  Instance inst = bind_instance(data);
  bool duplicate = false;
  for (const auto& issue : validate_instance(inst))
    duplicate |= issue.code == ValidationIssue::Code::duplicate_preference_entry;
  CHECK(duplicate);
}

TEST_CASE("parse accepts unsorted input and serializes canonically") {
  std::string shuffled = R"({
  "seekers": [{"id": "a2", "burden": 1}, {"id": "a1", "burden": 1}],
  "states": [{"id": "m1", "quota": 2,
              "capacities": [{"wait": "2", "slots": 1}, {"wait": "1", "slots": 1}],
              "priority": ["a1", "a2"]}],
  "waits": ["2", "1"],
  "preferences": [{"seeker": "a2", "ranking": []}, {"seeker": "a1", "ranking": []}]
})";
  Instance inst = parse_instance(shuffled);
  CHECK(inst.seekers[0].id == "a1");
  CHECK(inst.waits[0] == Rational(1));
  std::string canonical = serialize_instance(inst);
  CHECK(serialize_instance(parse_instance(canonical)) == canonical);
}
