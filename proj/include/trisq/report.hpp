#pragma once

#include <cstddef>
#include <deque>
#include <string>
#include <utility>
#include <vector>

namespace trisq {

/// Counts for one verification check. `vacuous` counts samples whose
/// premise did not apply; they are neither passes nor failures.
struct CheckTally {
  std::string name;
  bool exact = false;  // combinatorial, not sampled
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t unknown = 0;
  std::size_t vacuous = 0;
  std::vector<std::string> witnesses;  // first failures, capped

  static constexpr std::size_t kMaxWitnesses = 5;

  void add_pass(std::size_t n = 1) { pass += n; }
  void add_unknown(std::size_t n = 1) { unknown += n; }
  void add_vacuous(std::size_t n = 1) { vacuous += n; }
  template <class Fn>
  void add_fail(Fn&& witness) {
    ++fail;
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(witness());
  }
  std::size_t decided() const noexcept { return pass + fail; }
  std::size_t total() const noexcept { return pass + fail + unknown + vacuous; }
  /// unknown / (pass + fail + unknown), 0 when nothing was checked.
  double unknown_fraction() const noexcept;
};

/// Ordered list of tallies plus informational key/value lines.
struct Report {
  std::string title;
  std::vector<std::pair<std::string, std::string>> info;
  std::deque<CheckTally> checks;  // stable references while checks are added

  bool ok() const noexcept;
  std::size_t failures() const noexcept;
  CheckTally& add(std::string name, bool exact = false);
  const CheckTally* find(const std::string& name) const;
  void note(std::string key, std::string value) { info.emplace_back(std::move(key), std::move(value)); }
  /// Appends the checks and notes of `other`, prefixing names with `prefix`.
  void merge(const Report& other, const std::string& prefix);

  /// Deterministic plain text, one line per check.
  std::string to_text() const;
};

/// Fixed-precision rendering used in reports ("%.12g").
std::string format_number(double x);

}  // namespace trisq
