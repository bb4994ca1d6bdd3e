// Seeded property suites behind `verify`.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tailwave {

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string detail;
  std::vector<std::string> header;  // optional per-member CSV
  std::vector<std::vector<double>> rows;
};

// 200 random compactly supported functions per (alpha, p) pair.
SuiteResult verify_hardy(std::uint64_t seed, int members = 200, int n = 4096);
// Identities and inequalities on 100 random band-limited functions per ell0 in {0, 1, 2}.
SuiteResult verify_poincare(std::uint64_t seed, int members = 100, int L = 8);
// Estimate ratios and their drift between n and 2n.
SuiteResult verify_elliptic(std::uint64_t seed, int members = 32, int n = 512);
// Discrete energy of the Cauchy solver and phase equivariance.
SuiteResult verify_energy(std::uint64_t seed, int n = 512);

std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

}  // namespace tailwave
