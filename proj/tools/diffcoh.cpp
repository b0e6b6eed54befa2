#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "diffcoh/verify.hpp"

namespace fs = std::filesystem;
using namespace diffcoh;

namespace {

constexpr int kOk = 0;
constexpr int kClaimFailed = 1;
constexpr int kUsage = 2;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw verify::JobError("cannot write " + path);
  out << text;
}

std::optional<fs::path> cache_dir(bool disabled) {
  const char* env = std::getenv("DIFFCOH_CACHE_DIR");
  if (disabled || !env || !*env) return std::nullopt;
  fs::create_directories(env);
  return fs::path(env);
}

int run_job(const std::string& file, const std::string& out, bool summary, int threads, bool no_cache) {
  verify::JobSpec job = verify::load_job(file);
  if (threads > 0) job.threads = threads;
  const auto cache = cache_dir(no_cache);
  const fs::path entry = cache ? *cache / (verify::cache_key(job) + ".json") : fs::path();

  std::string text;
  bool failed = false;
  if (cache && fs::exists(entry)) {
    std::ifstream in(entry, std::ios::binary);
    text.assign(std::istreambuf_iterator<char>(in), {});
    const Json certs = Json::parse(text);
    for (const auto& c : certs) failed |= c.at("status") != "verified";
    if (summary) std::cerr << certs.size() << " certificates read from cache " << entry.string() << "\n";
  } else {
    const auto certs = verify::run(job);
    text = verify::certificates_to_json(certs).dump(2) + "\n";
    for (const auto& c : certs) failed |= !c.verified;
    if (summary) std::cerr << verify::summary(certs);
    if (cache) {
      const fs::path tmp = entry.string() + ".tmp";
      std::ofstream(tmp, std::ios::binary) << text;
      fs::rename(tmp, entry);
    }
  }
  write_text(out, text);
  return failed ? kClaimFailed : kOk;
}

int compute(const std::string& complex, int n, const std::string& coeff, const std::string& what, bool json) {
  const verify::NamedPair X = verify::resolve_complex(Json(complex));
  const CoeffPtr L = coeff == "Z" ? GradedCoefficients::integers()
                                  : verify::resolve_coefficients(Json{{"file", coeff}});
  Json report = verify::compute(X.pair, L, n, what);
  report["complex"] = X.name;
  if (json) {
    std::cout << report.dump(2) << "\n";
    return kOk;
  }
  for (const auto& part : report["components"]) {
    std::cout << part["basis"].get<std::string>() << " (cell degree " << part["cell_degree"].get<int>() << "): ";
    if (what == "cohomology") {
      std::cout << part["H"]["group"].get<std::string>() << "\n";
    } else {
      std::cout << "I-image " << part["I_image"]["group"].get<std::string>() << ", flat circle rank "
                << part["flat"]["circle_rank"].get<int>() << ", curvature period rank "
                << part["curvature_period_rank"].get<int>() << "\n";
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differential cohomology triples on finite simplicial sets"};
  app.require_subcommand(1);

  std::string job_file, out, complex, coeff = "Z", what = "cohomology";
  bool summary = false, no_cache = false, json = false;
  int threads = 0, n = 0;

  auto* run = app.add_subcommand("run", "Run a verification job and print certificates");
  run->add_option("job", job_file, "Job file (JSON)")->required();
  run->add_option("--out,-o", out, "Certificate output file (default stdout)");
  run->add_flag("--summary", summary, "Plain-text summary on stderr");
  run->add_option("--threads,-j", threads, "Worker threads (overrides the job)")->check(CLI::PositiveNumber);
  run->add_flag("--no-cache", no_cache, "Ignore DIFFCOH_CACHE_DIR");

  auto* comp = app.add_subcommand("compute", "Report cohomology or differential cohomology invariants");
  comp->add_option("complex", complex, "Built-in complex or pair name")->required();
  comp->add_option("--n", n, "Degree")->required()->check(CLI::NonNegativeNumber);
  comp->add_option("--coeff", coeff, "Coefficient file (JSON) or Z");
  comp->add_option("--what", what, "cohomology or diffcoh-invariants")
      ->check(CLI::IsMember({"cohomology", "diffcoh-invariants"}));
  comp->add_flag("--json", json, "JSON report");

  auto* pres = app.add_subcommand("presentation", "Print the pair presentation of a built-in complex");
  pres->add_option("complex", complex, "Built-in complex or pair name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return run_job(job_file, out, summary, threads, no_cache);
    if (*pres) {
      std::cout << to_pair_presentation(*verify::resolve_complex(Json(complex)).pair).dump(2) << "\n";
      return kOk;
    }
    return compute(complex, n, coeff, what, json);
  } catch (const verify::JobError& e) {
    std::cerr << "diffcoh: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "diffcoh: " << e.what() << "\n";
    return kUsage;
  }
}
