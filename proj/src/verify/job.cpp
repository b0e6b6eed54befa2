#include <algorithm>
#include <fstream>
#include <sstream>

#include "diffcoh/verify.hpp"

namespace diffcoh::verify {

namespace {

Json read_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw JobError("cannot open " + file.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw JobError(file.string() + ": " + e.what());
  }
}

std::filesystem::path resolve(const std::filesystem::path& dir, const std::string& file) {
  const std::filesystem::path p(file);
  return p.is_absolute() || dir.empty() ? p : dir / p;
}

void require_keys(const Json& j, const std::vector<std::string>& allowed, const std::string& what) {
  for (const auto& [key, unused] : j.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw JobError(what + ": unexpected key \"" + key + "\"");
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"axioms", "group", "ring", "integration", "pairs", "products-odd"};
  return names;
}

NamedPair resolve_complex(const Json& j, const std::filesystem::path& dir) {
  try {
    if (j.is_string()) {
      const std::string name = j.get<std::string>();
      return {name, builtins::pair_by_name(name)};
    }
    if (!j.is_object()) throw JobError("complex: expected a name or an object");
    require_keys(j, {"name", "file", "presentation", "pair"}, "complex");
    const std::string name = j.value("name", std::string());
    if (name.empty()) throw JobError("complex: missing \"name\"");
    if (j.contains("file")) return {name, from_pair_presentation(read_json(resolve(dir, j["file"].get<std::string>())), name)};
    if (j.contains("presentation")) return {name, from_pair_presentation(j["presentation"], name)};
    if (j.contains("pair")) return {name, from_pair_presentation(j["pair"], name)};
    throw JobError("complex " + name + ": needs one of \"file\", \"presentation\", \"pair\"");
  } catch (const SimplicialError& e) {
    throw JobError(std::string("complex: ") + e.what());
  } catch (const Json::exception& e) {
    throw JobError(std::string("complex: ") + e.what());
  }
}

CoeffPtr resolve_coefficients(const Json& j, const std::filesystem::path& dir) {
  try {
    if (j.is_object() && j.contains("file")) return GradedCoefficients::from_json(read_json(resolve(dir, j["file"].get<std::string>())));
    return GradedCoefficients::from_json(j);
  } catch (const JobError&) {
    throw;
  } catch (const std::exception& e) {
    throw JobError(std::string("coefficients: ") + e.what());
  }
}

JobSpec parse_job(const Json& j, const std::filesystem::path& dir) {
  if (!j.is_object()) throw JobError("job: expected an object");
  require_keys(j, {"complexes", "coefficients", "suites", "seed", "budgets", "samples", "degrees", "threads", "fixtures"},
               "job");
  JobSpec job;
  try {
    if (!j.contains("complexes") || !j["complexes"].is_array() || j["complexes"].empty())
      throw JobError("job: \"complexes\" must be a non-empty array");
    for (const auto& c : j["complexes"]) job.complexes.push_back(resolve_complex(c, dir));
    job.coeffs = resolve_coefficients(j.value("coefficients", Json("Z")), dir);
    if (!j.contains("suites") || !j["suites"].is_array()) throw JobError("job: \"suites\" must be an array");
    for (const auto& s : j["suites"]) {
      const std::string name = s.get<std::string>();
      if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
        throw JobError("job: unknown suite \"" + name + "\"");
      if (std::find(job.suites.begin(), job.suites.end(), name) == job.suites.end()) job.suites.push_back(name);
    }
    job.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("budgets")) {
      const Json& b = j["budgets"];
      require_keys(b, {"cap", "limit"}, "budgets");
      job.budget.cap = b.value("cap", job.budget.cap);
      job.budget.limit = b.value("limit", job.budget.limit);
      if (job.budget.cap < 1 || job.budget.limit < job.budget.cap) throw JobError("budgets: need 1 <= cap <= limit");
    }
    job.samples = j.value("samples", job.samples);
    if (job.samples < 1) throw JobError("job: \"samples\" must be at least 1");
    if (j.contains("degrees"))
      for (const auto& d : j["degrees"]) {
        const int n = d.get<int>();
        if (n < 0) throw JobError("job: degrees must be non-negative");
        job.degrees.push_back(n);
      }
    job.threads = j.value("threads", job.threads);
    if (job.threads < 1) throw JobError("job: \"threads\" must be at least 1");
    if (j.contains("fixtures"))
      for (const auto& f : j["fixtures"]) {
        require_keys(f, {"name", "triple"}, "fixture");
        job.fixtures.push_back({f.at("name").get<std::string>(), f.at("triple")});
      }
  } catch (const Json::exception& e) {
    throw JobError(std::string("job: ") + e.what());
  }
  return job;
}

JobSpec load_job(const std::filesystem::path& file) { return parse_job(read_json(file), file.parent_path()); }

std::string cache_key(const JobSpec& job) {
  Json j = Json::object();
  j["format"] = 1;
  Json complexes = Json::array();
  for (const auto& X : job.complexes) complexes.push_back({{"name", X.name}, {"pair", to_pair_presentation(*X.pair)}});
  j["complexes"] = complexes;
  j["coefficients"] = job.coeffs->to_json();
  j["suites"] = job.suites;
  j["seed"] = job.seed;
  j["budgets"] = {{"cap", job.budget.cap}, {"limit", job.budget.limit}};
  j["samples"] = job.samples;
  j["degrees"] = job.degrees;
  Json fixtures = Json::array();
  for (const auto& f : job.fixtures) fixtures.push_back({{"name", f.name}, {"triple", f.triple}});
  j["fixtures"] = fixtures;
  return digest(j.dump());
}

std::string digest(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

}  // namespace diffcoh::verify
