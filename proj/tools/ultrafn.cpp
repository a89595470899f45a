// Command-line front end over the C interface of libultrafn.
//
// Exit codes: 0 success, 1 some suite failed, 2 config / parse / I/O /
// library error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ultrafn/ultrafn.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitSuiteFailure = 1;
constexpr int kExitError = 2;

struct Failure {
  std::string what;
};

void ensure(uf_status s, const char* during) {
  if (s != UF_OK)
    throw Failure{std::string(during) + " failed (" + uf_status_name(s) +
                  "): " + uf_last_error()};
}

// Owning wrapper for strings handed out by the library.
struct Text {
  char* p = nullptr;
  ~Text() { uf_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

using ContextHandle = std::unique_ptr<uf_context, decltype(&uf_context_destroy)>;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot read " + path};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Session {
  ContextHandle ctx{nullptr, &uf_context_destroy};
  fs::path out;

  void write(const std::string& name, const std::string& text) const {
    std::error_code ec;
    fs::create_directories(out, ec);
    const auto path = out / name;
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text) || !f.flush())
      throw Failure{"cannot write " + path.string()};
    std::cerr << "wrote " << path.string() << '\n';
  }
};

Session open_session(const std::string& config_path,
                     const std::string& output_dir) {
  Session s;
  const std::string text = config_path.empty() ? "{}" : slurp(config_path);
  uf_context* raw = nullptr;
  ensure(uf_context_create(text.c_str(), &raw), "building the context");
  s.ctx.reset(raw);
  s.out = output_dir.empty() ? fs::path(uf_context_output_dir(raw))
                             : fs::path(output_dir);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ultrafunction spaces, restricted algebra and distribution "
               "embedding"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  std::uint64_t seed = 42;
  app.add_option("--config", config_path, "Run config JSON");
  app.add_option("--output-dir", output_dir, "Overrides output_dir of the config");
  app.add_option("--seed", seed, "Seed of the randomized suites")
      ->capture_default_str();

  auto* space = app.add_subcommand("space", "Function space");
  space->require_subcommand(1);
  auto* space_build = space->add_subcommand("build", "Build and summarize");
  auto* space_report = space->add_subcommand("report", "Full JSON report");

  double delta_at = 0.0;
  std::size_t grid = 201;
  auto* delta = app.add_subcommand("delta", "Sample the delta ultrafunction");
  delta->add_option("--at", delta_at, "Centre q")->required();
  delta->add_option("--grid", grid, "Uniform grid size (>= 2)")
      ->capture_default_str();

  auto* sigma = app.add_subcommand("sigma", "Point set and sigma basis");
  sigma->require_subcommand(1);
  auto* sigma_report = sigma->add_subcommand("report", "Points and eta tensors");
  sigma_report->add_option("--grid", grid, "Grid of the sigma CSV")
      ->capture_default_str();

  std::string desc_path;
  auto* embed = app.add_subcommand("embed", "Embed a distribution");
  embed->add_option("--desc", desc_path, "Descriptor JSON")->required();
  embed->add_option("--grid", grid, "Grid of the extension CSV")
      ->capture_default_str();

  std::string left_path, right_path;
  auto* mul = app.add_subcommand("mul", "Pointwise product of two embeddings");
  mul->add_option("--left", left_path, "Descriptor JSON")->required();
  mul->add_option("--right", right_path, "Descriptor JSON")->required();

  std::string test_kind;
  std::size_t bump_index = 0;
  auto* pair = app.add_subcommand("pair", "Pair a distribution with a test bump");
  pair->add_option("--desc", desc_path, "Descriptor JSON")->required();
  pair->add_option("--test", test_kind, "Test function family")
      ->required()
      ->check(CLI::IsMember({"bump"}));
  pair->add_option("--bump-index", bump_index, "Interior bump 0, 1 or 2")
      ->capture_default_str();

  std::string suite;
  auto* check = app.add_subcommand("check", "Run invariant suites");
  check->add_option("--suite", suite, "Suite name or 'all'")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    auto s = open_session(config_path, output_dir);
    uf_context* ctx = s.ctx.get();

    if (space_build->parsed()) {
      Text t;
      ensure(uf_space_report(ctx, &t.p), "space report");
      s.write("space.json", t.str());
      std::cout << "space of dimension " << uf_context_dimension(ctx)
                << " on [-" << uf_context_beta(ctx) << ", "
                << uf_context_beta(ctx) << "]\n";
    } else if (space_report->parsed()) {
      Text t;
      ensure(uf_space_report(ctx, &t.p), "space report");
      s.write("space_report.json", t.str());
      std::cout << t.str() << '\n';
    } else if (delta->parsed()) {
      Text t;
      ensure(uf_delta_csv(ctx, delta_at, grid, &t.p), "delta");
      s.write("delta.csv", t.str());
      std::cout << t.str();
    } else if (sigma_report->parsed()) {
      Text t;
      ensure(uf_sigma_report(ctx, &t.p), "sigma report");
      Text csv;
      ensure(uf_sigma_csv(ctx, grid, &csv.p), "sigma CSV");
      s.write("sigma.json", t.str());
      s.write("sigma.csv", csv.str());
      std::cout << t.str() << '\n';
    } else if (embed->parsed()) {
      const std::string desc = slurp(desc_path);
      const std::string stem = fs::path(desc_path).stem().string();
      Text report;
      ensure(uf_embed_report(ctx, desc.c_str(), &report.p), "embed");
      std::vector<double> values(uf_context_dimension(ctx));
      double leakage = 0.0;
      ensure(uf_embed(ctx, desc.c_str(), values.data(), values.size(), &leakage),
             "embed");
      Text points, extension;
      ensure(uf_values_csv(ctx, values.data(), values.size(), &points.p),
             "values CSV");
      ensure(uf_extension_csv(ctx, values.data(), values.size(), grid,
                              &extension.p),
             "extension CSV");
      s.write("embed_" + stem + ".json", report.str());
      s.write("embed_" + stem + ".csv", points.str());
      s.write("embed_" + stem + "_extension.csv", extension.str());
      std::cout << report.str() << '\n';
    } else if (mul->parsed()) {
      const std::string l = slurp(left_path), r = slurp(right_path);
      Text t;
      ensure(uf_mul_report(ctx, l.c_str(), r.c_str(), &t.p), "mul");
      s.write("mul_" + fs::path(left_path).stem().string() + "_" +
                  fs::path(right_path).stem().string() + ".json",
              t.str());
      std::cout << t.str() << '\n';
    } else if (pair->parsed()) {
      const std::string desc = slurp(desc_path);
      Text t;
      ensure(uf_pair_report(ctx, desc.c_str(), bump_index, &t.p), "pair");
      s.write("pair_" + fs::path(desc_path).stem().string() + "_bump" +
                  std::to_string(bump_index) + ".json",
              t.str());
      std::cout << t.str() << '\n';
    } else if (check->parsed()) {
      Text plan;
      ensure(uf_suite_plan(ctx, suite.c_str(), &plan.p), "suite selection");
      std::istringstream names(plan.str());
      bool all_passed = true;
      for (std::string name; std::getline(names, name);) {
        const auto start = std::chrono::steady_clock::now();
        Text report;
        int passed = 0;
        ensure(uf_run_suite(ctx, name.c_str(), seed, &report.p, &passed),
               "suite run");
        const double secs = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - start)
                                .count();
        s.write("check_" + name + ".json", report.str());
        std::printf("%s %-18s %.3fs\n", passed ? "PASS" : "FAIL", name.c_str(),
                    secs);
        all_passed = all_passed && passed;
      }
      if (!all_passed) return kExitSuiteFailure;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.what << '\n';
    return kExitError;
  }
  return 0;
}
