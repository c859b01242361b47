#include "verify.hpp"

#include <cstdio>
#include <exception>
#include <functional>

#include "checks.hpp"
#include "lieflow/errors.hpp"

namespace lieflow::cli {

namespace {

struct Suite {
  const char* name;
  std::vector<std::function<std::vector<Check>()>> parts;
};

const std::vector<Suite>& suites() {
  static const std::vector<Suite> table = {
      {"rigid-conservation", {checks_rigid_conservation, checks_classical_oracle}},
      {"manakov", {checks_manakov}},
      {"involution", {checks_involution}},
      {"circle-conservation", {checks_circle_conservation}},
      {"burgers-oracle", {checks_burgers_oracle, checks_b0_closed_form}},
      {"expmap", {checks_exponential_map}},
  };
  return table;
}

void print_check(const Check& c) {
  std::printf("%s  %-55s  value %.3e  tol %.0e\n", c.pass() ? "  ok" : "FAIL", c.label.c_str(),
              c.value, c.tol);
}

}  // namespace

std::vector<std::string> verify_suite_names() {
  std::vector<std::string> names;
  for (const auto& s : suites()) names.emplace_back(s.name);
  return names;
}

int verify_suite(const std::string& name) {
  const Suite* suite = nullptr;
  for (const auto& s : suites())
    if (name == s.name) suite = &s;
  if (suite == nullptr) {
    std::string known;
    for (const auto& s : suites()) known += std::string(known.empty() ? "" : ", ") + s.name;
    throw ConfigError("verify: unknown suite \"" + name + "\" (known: " + known + ")");
  }

  int failures = 0;
  for (const auto& part : suite->parts) {
    try {
      for (const Check& c : part()) {
        print_check(c);
        if (!c.pass()) ++failures;
      }
    } catch (const std::exception& e) {
      std::printf("FAIL  %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%s: %s\n", name.c_str(), failures == 0 ? "all checks passed" : "checks failed");
  return failures == 0 ? 0 : 1;
}

}  // namespace lieflow::cli
