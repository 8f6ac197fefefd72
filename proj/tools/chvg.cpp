// chvg: build compactified visibility graphs from text and report keywords.
//
//   chvg build     [options] FILE...   graphs + gap statistics
//   chvg analyze   [options] FILE...   CCDFs, power-law fits, Zipf table
//   chvg keywords  [options] FILE...   top-n sets and their difference
//   chvg random-baseline [--length L] [--seed S]
//
// Exit codes: 0 success, 1 usage/config error, 2 data error.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chvg/pipeline.hpp"

namespace {

struct Flags {
  std::vector<std::string> inputs;
  std::string scheme = "sigma";
  std::string chvg_weight = "strength";
  std::string adjacency_weight = "degree";
  std::vector<std::string> formats{"edgelist"};
  std::string out_dir;
};

void add_corpus_options(CLI::App& sub, Flags& f, chvg::RunConfig& c) {
  sub.add_option("inputs", f.inputs, "UTF-8 text files (concatenated in order)");
  sub.add_option("-o,--out-dir", f.out_dir, "Output directory (default $CHVG_OUT_DIR or .)");
  sub.add_option("--scheme", f.scheme, "Value scheme: sigma, frequency, word_length")->capture_default_str();
  sub.add_flag("--case-fold,!--no-case-fold", c.tokenizer.case_fold, "Fold tokens to upper case")->capture_default_str();
  sub.add_flag("--keep-apostrophe,!--no-keep-apostrophe", c.tokenizer.keep_inner_apostrophe,
               "Keep apostrophes between letters")
      ->capture_default_str();
  sub.add_flag("--keep-hyphen,!--no-keep-hyphen", c.tokenizer.keep_inner_hyphen, "Keep hyphens between letters")
      ->capture_default_str();
  sub.add_option("--min-token-length", c.tokenizer.min_token_length, "Drop shorter tokens")->capture_default_str();
  sub.add_flag("--drop-numeric,!--keep-numeric", c.tokenizer.drop_numeric_tokens, "Treat digits as separators")
      ->capture_default_str();
  sub.add_flag("--batch", c.batch, "Process each input file independently into OUT_DIR/<stem>/");
}

int run(int argc, char** argv) {
  CLI::App app{"Compactified horizontal visibility graphs for text"};
  app.set_version_flag("--version", std::string(chvg::kVersion));
  app.set_config("--config", "", "Read options from a key=value (TOML/INI) file");
  app.require_subcommand(1);

  chvg::RunConfig config;
  Flags flags;

  auto* build = app.add_subcommand("build", "Build CHVG and adjacency graphs, export them with gap statistics");
  add_corpus_options(*build, flags, config);
  build->add_option("--format", flags.formats, "Exports: edgelist, nodes, dot, graphml, hvg")
      ->delimiter(',')
      ->capture_default_str();

  auto* analyze = app.add_subcommand("analyze", "Degree CCDFs, power-law fits and the Zipf table");
  add_corpus_options(*analyze, flags, config);
  analyze->add_option("--k-min", config.k_min, "Lower cutoff for power-law fits")->capture_default_str();

  auto* keywords = app.add_subcommand("keywords", "Top-n words of both networks and the CHVG-only set");
  add_corpus_options(*keywords, flags, config);
  keywords->add_option("-n,--top", config.n, "Size of each top list")->capture_default_str();
  keywords->add_option("--chvg-weight", flags.chvg_weight, "CHVG ranking measure: degree, strength, frequency")
      ->capture_default_str();
  keywords->add_option("--adjacency-weight", flags.adjacency_weight,
                       "Adjacency ranking measure: degree, strength, frequency")
      ->capture_default_str();
  keywords->add_option("--seed", config.seed, "Accepted for config compatibility; keywords are deterministic");

  auto* baseline = app.add_subcommand("random-baseline", "Check the HVG degree law on an i.i.d. uniform series");
  baseline->add_option("--length", config.baseline_length, "Series length")->capture_default_str();
  baseline->add_option("--seed", config.seed, "RNG seed")->capture_default_str();
  baseline->add_option("-o,--out-dir", flags.out_dir, "Output directory (default $CHVG_OUT_DIR or .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    for (const auto& in : flags.inputs) config.inputs.emplace_back(in);
    config.out_dir = flags.out_dir.empty() ? chvg::default_out_dir() : std::filesystem::path(flags.out_dir);
    config.scheme = chvg::parse_scheme(flags.scheme);
    config.weights = {chvg::parse_weight_kind(flags.chvg_weight), chvg::parse_weight_kind(flags.adjacency_weight)};
    config.formats = {flags.formats.begin(), flags.formats.end()};
    config.validate();

    auto report_files = [](const auto& files) {
      for (const auto& f : files) std::cout << "wrote " << f.generic_string() << '\n';
    };

    if (*build) {
      auto one = [](const chvg::RunConfig& c) {
        auto s = chvg::cmd_build(c);
        std::cout << "tokens " << s.tokens << ", words " << s.words << ", hvg edges " << s.hvg_edges
                  << ", chvg edges " << s.chvg_edges << ", adjacency edges " << s.adjacency_edges << '\n';
        return s;
      };
      if (config.batch) {
        for (const auto& s : chvg::run_batch(config, one)) report_files(s.files);
      } else {
        report_files(one(config).files);
      }
    } else if (*analyze) {
      auto one = [](const chvg::RunConfig& c) {
        auto s = chvg::cmd_analyze(c);
        for (const auto& [name, fit] : {std::pair{"degree", s.chvg_degree}, std::pair{"strength", s.chvg_strength}}) {
          std::cout << "chvg " << name << ": ls slope " << fit.exponent_ls << ", R^2 " << fit.r_squared
                    << ", mle alpha " << fit.exponent_mle << " (k_min " << fit.k_min << ")\n";
        }
        if (s.zipf) std::cout << "zipf slope (ranks 10-1000): " << s.zipf->slope << '\n';
        return s;
      };
      if (config.batch) {
        for (const auto& s : chvg::run_batch(config, one)) report_files(s.files);
      } else {
        report_files(one(config).files);
      }
    } else if (*keywords) {
      auto one = [](const chvg::RunConfig& c) {
        auto s = chvg::cmd_keywords(c);
        std::cout << "omega (" << s.report.omega.size() << "):";
        for (const auto& w : s.report.omega) std::cout << ' ' << w.form;
        std::cout << '\n';
        return s;
      };
      if (config.batch) {
        for (const auto& s : chvg::run_batch(config, one)) report_files(s.files);
      } else {
        report_files(one(config).files);
      }
    } else if (*baseline) {
      auto s = chvg::cmd_random_baseline(config);
      std::cout << "mean degree " << s.mean_degree << " ("
                << (s.too_short ? "too short, checks skipped" : (s.passed() ? "pass" : "fail")) << ")\n";
      report_files(s.files);
    }
  } catch (const chvg::ConfigError& e) {
    std::cerr << "chvg: config error: " << e.what() << '\n';
    return 1;
  } catch (const chvg::DataError& e) {
    std::cerr << "chvg: error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
