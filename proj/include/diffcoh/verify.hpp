#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "diffcoh/serialize.hpp"

namespace diffcoh::verify {

/// Malformed job or command line (exit status 2).
class JobError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NamedPair {
  std::string name;
  PairPtr pair;
};

struct Fixture {
  std::string name;
  Json triple;
};

struct JobSpec {
  std::vector<NamedPair> complexes;
  CoeffPtr coeffs;
  std::vector<std::string> suites;
  std::uint64_t seed = 0;
  FormDegreeBudget budget;
  int samples = 3;
  std::vector<int> degrees;  // empty: every degree the complex supports, up to 2
  int threads = 1;
  std::vector<Fixture> fixtures;
};

const std::vector<std::string>& suite_names();
/// Relative paths (complex and coefficient files) resolve against `dir`.
JobSpec parse_job(const Json& j, const std::filesystem::path& dir = {});
JobSpec load_job(const std::filesystem::path& file);
/// A named built-in, a presentation file, or an inline {"presentation"} / {"pair"} object.
NamedPair resolve_complex(const Json& j, const std::filesystem::path& dir = {});
CoeffPtr resolve_coefficients(const Json& j, const std::filesystem::path& dir = {});

struct Certificate {
  std::string claim;
  std::string complex;
  int degree = 0;
  bool verified = false;
  Json payload;  // witness when verified, counterexample when failed
  double millis = 0;
};

/// claim identifier -> statement it certifies.
const std::vector<std::pair<std::string, std::string>>& claim_anchors();
std::string anchor_of(const std::string& claim);

/// Runs every suite on every complex; sorted by (claim, complex, degree).
std::vector<Certificate> run(const JobSpec& job);
/// Deterministic payload: timing excluded.
Json to_json(const Certificate& c);
Json certificates_to_json(const std::vector<Certificate>& certs);
/// Plain text: one line per certificate with timing, then totals.
std::string summary(const std::vector<Certificate>& certs);

/// "cohomology": H^n(P; Λ) per coefficient degree. "diffcoh-invariants": the pieces of Ê^n
/// (flat part H^{n−1}(R/Z) as free rank plus torsion of H^n, and the rank of im R on closed periods).
Json compute(const PairPtr& P, const CoeffPtr& coeffs, int n, const std::string& what);

/// Digest of everything that determines the certificates: resolved complexes, coefficients,
/// suites, seed, budgets, samples, degrees and fixtures. Thread count is excluded.
std::string cache_key(const JobSpec& job);

/// Stable 64-bit FNV-1a digest as 16 hex digits.
std::string digest(const std::string& text);

}  // namespace diffcoh::verify
