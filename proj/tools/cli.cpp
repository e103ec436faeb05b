#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "commitlearn/commitlearn.hpp"

namespace fs = std::filesystem;
using namespace commitlearn;

namespace {

constexpr int exit_mismatch = 2;

std::string out_dir() {
  const char* dir = std::getenv("COMMITLEARN_OUT_DIR");
  return dir && *dir ? dir : ".";
}

std::string default_path(const std::string& given, const std::string& name) {
  if (!given.empty()) return given;
  fs::create_directories(out_dir());
  return (fs::path(out_dir()) / name).string();
}

// "3", "3:5" (inclusive) or "3,5,6".
std::vector<std::size_t> parse_range(const std::string& text) {
  std::vector<std::size_t> out;
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    const std::size_t lo = std::stoul(text.substr(0, colon));
    const std::size_t hi = std::stoul(text.substr(colon + 1));
    if (lo > hi) throw domain_error("empty range '" + text + "'");
    for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    out.push_back(std::stoul(text.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Precision parse_precision(const std::string& s) {
  if (s == "certified") return Precision::certified;
  if (s == "worst-case") return Precision::worst_case;
  throw domain_error("unknown precision '" + s + "'");
}

Rational parse_zeta(const std::string& s) {
  const Rational z = Rational::parse(s);
  if (z.sign() <= 0 || z >= Rational(1)) throw domain_error("zeta must lie in (0,1)");
  return z;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learn optimal leader commitments from follower best-response queries"};
  app.require_subcommand(1);

  std::size_t m = 3, n = 3, bits = 8;
  std::uint64_t seed = 0;
  std::string out, instance, report_path, transcript_path, zeta_text = "0.1", precision_text = "certified";
  std::string eps_text = "10,20,40", m_range = "3", n_range = "3";
  std::size_t runs = 10;
  unsigned jobs = 1;
  bool equivalent = false;

  auto* gen = app.add_subcommand("gen", "Write a random game instance");
  gen->add_option("--m", m, "leader actions")->check(CLI::PositiveNumber);
  gen->add_option("--n", n, "follower actions")->check(CLI::PositiveNumber);
  gen->add_option("--bits", bits, "payoff bit budget (>= 2)");
  gen->add_option("--seed", seed);
  gen->add_option("--out", out, "instance path (default $COMMITLEARN_OUT_DIR/instance.json)");
  gen->add_flag("--equivalent-actions", equivalent, "copy one follower column onto another");

  auto* lrn = app.add_subcommand("learn", "Run the learner against a simulated follower");
  lrn->add_option("--instance", instance)->required();
  lrn->add_option("--zeta", zeta_text, "failure probability, e.g. 0.1 or 1/10");
  lrn->add_option("--seed", seed);
  lrn->add_option("--out-report", report_path, "report path (default $COMMITLEARN_OUT_DIR/report.json)");
  lrn->add_option("--out-transcript", transcript_path, "query transcript (JSONL); omitted when not given");
  lrn->add_flag("--equivalent-actions", equivalent);
  lrn->add_option("--precision", precision_text, "certified or worst-case");

  auto* ver = app.add_subcommand("verify", "Compare a report against the brute-force optimum");
  ver->add_option("--instance", instance)->required();
  ver->add_option("--report", report_path)->required();

  auto* bench = app.add_subcommand("bench-exp-binary", "Naive vs bit-bounded search on the counterexample segment");
  bench->add_option("--instance", instance)->required();
  bench->add_option("--eps-exponents", eps_text, "comma-separated k with eps = 2^-k");
  bench->add_option("--seed", seed, "seed of the bit-bounded start point");
  bench->add_option("--out", out, "default $COMMITLEARN_OUT_DIR/exp_binary.json");

  auto* swp = app.add_subcommand("sweep", "Query counts against the worst-case budget");
  swp->add_option("--m-range", m_range, "e.g. 3, 3:4 or 3,5");
  swp->add_option("--n-range", n_range);
  swp->add_option("--bits", bits);
  swp->add_option("--zeta", zeta_text);
  swp->add_option("--runs", runs);
  swp->add_option("--seed", seed);
  swp->add_option("--jobs", jobs, "concurrent runs");
  swp->add_flag("--equivalent-actions", equivalent);
  swp->add_option("--precision", precision_text);
  swp->add_option("--out", out, "default $COMMITLEARN_OUT_DIR/sweep.csv");

  CLI11_PARSE(app, argc, argv);

  try {
    const Mode mode = equivalent ? Mode::equivalent_actions : Mode::standard;

    if (*gen) {
      io::InstanceMeta meta{"random", seed, bits};
      const GameInstance g = equivalent ? generate_with_equivalent_actions(m, n, bits, seed)
                                        : generate_random(m, n, bits, seed);
      const std::string path = default_path(out, "instance.json");
      io::write_file(path, io::serialize_instance(g, meta));
      std::cout << "wrote " << path << " (L = " << g.payoff_bits() << ")\n";
      return 0;
    }

    if (*lrn) {
      auto game = std::make_shared<const GameInstance>(io::parse_instance(instance));
      LearnerConfig cfg;
      cfg.zeta = parse_zeta(zeta_text);
      cfg.mode = mode;
      cfg.precision = parse_precision(precision_text);
      const RunResult r = run_learner(game, cfg, seed, !transcript_path.empty());
      const std::string path = default_path(report_path, "report.json");
      io::write_file(path, io::serialize_report(r.report));
      if (!transcript_path.empty()) io::write_file(transcript_path, io::transcript_jsonl(r.transcript));
      std::cout << "queries " << r.report.queries << ", value " << r.report.value << ", success "
                << (r.report.success ? "true" : "false") << "\nwrote " << path << "\n";
      if (!r.failure.empty()) std::cerr << "learner: " << r.failure << "\n";
      return 0;
    }

    if (*ver) {
      const GameInstance g = io::parse_instance(instance);
      const io::RunReport rep = verify_report(g, io::parse_report_text(io::read_file(report_path)));
      io::write_file(report_path, io::serialize_report(rep));
      std::cout << "value " << rep.value << ", baseline " << *rep.baseline_value << ", match "
                << (*rep.match ? "true" : "false") << "\n";
      return *rep.match ? 0 : exit_mismatch;
    }

    if (*bench) {
      const GameInstance g = io::parse_instance(instance);
      std::vector<unsigned> ks;
      for (std::size_t k : parse_range(eps_text)) ks.push_back(static_cast<unsigned>(k));
      const auto rows = bench_exp_binary(g, ks, seed);
      const std::string path = default_path(out, "exp_binary.json");
      io::write_file(path, exp_binary_json(rows));
      for (const auto& r : rows) std::cout << "k=" << r.exponent << " naive=" << r.naive << " bounded=" << r.bounded << "\n";
      return 0;
    }

    if (*swp) {
      SweepSpec spec;
      for (std::size_t mm : parse_range(m_range)) {
        for (std::size_t nn : parse_range(n_range)) spec.shapes.emplace_back(mm, nn);
      }
      spec.bits = bits;
      spec.zeta = parse_zeta(zeta_text);
      spec.runs = runs;
      spec.seed = seed;
      spec.mode = mode;
      spec.precision = parse_precision(precision_text);
      spec.jobs = jobs;
      const auto rows = sweep(spec);
      const std::string path = default_path(out, "sweep.csv");
      io::write_file(path, sweep_csv(rows));
      std::size_t matches = 0;
      double worst = 0;
      for (const auto& r : rows) {
        matches += r.match;
        worst = std::max(worst, static_cast<double>(r.queries) / r.budget);
      }
      std::cout << rows.size() << " runs, " << matches << " match the baseline, max queries/budget " << worst
                << "\nwrote " << path << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
