#include "trisq/report.hpp"

#include <cstdio>
#include <sstream>

namespace trisq {

double CheckTally::unknown_fraction() const noexcept {
  const std::size_t n = pass + fail + unknown;
  return n == 0 ? 0.0 : static_cast<double>(unknown) / static_cast<double>(n);
}

bool Report::ok() const noexcept { return failures() == 0; }

std::size_t Report::failures() const noexcept {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.fail;
  return n;
}

CheckTally& Report::add(std::string name, bool exact) {
  checks.push_back(CheckTally{});
  checks.back().name = std::move(name);
  checks.back().exact = exact;
  return checks.back();
}

const CheckTally* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& [k, v] : other.info) info.emplace_back(prefix + k, v);
  for (auto c : other.checks) {
    c.name = prefix + c.name;
    checks.push_back(std::move(c));
  }
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string Report::to_text() const {
  std::ostringstream out;
  if (!title.empty()) out << "# " << title << "\n";
  for (const auto& [k, v] : info) out << k << ": " << v << "\n";
  for (const auto& c : checks) {
    out << (c.fail == 0 ? "ok   " : "FAIL ") << c.name << (c.exact ? " [exact]" : " [sampled]") << " pass=" << c.pass
        << " fail=" << c.fail << " unknown=" << c.unknown << " vacuous=" << c.vacuous << "\n";
    for (const auto& w : c.witnesses) out << "    witness: " << w << "\n";
  }
  out << (ok() ? "result: pass" : "result: FAIL") << "\n";
  return out.str();
}

}  // namespace trisq
