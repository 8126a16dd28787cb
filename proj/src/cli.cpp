// Copyright 2026 The Envelopes Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "envelopes/cli.hpp"

#include <omp.h>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "envelopes/cover.hpp"
#include "envelopes/game.hpp"
#include "envelopes/posterior.hpp"
#include "envelopes/prior_io.hpp"
#include "envelopes/simulate.hpp"

namespace envelopes {

namespace {

using ordered_json = nlohmann::ordered_json;

struct GlobalOptions {
  std::uint64_t seed = 0;
  int threads = 0;        // 0 = serial; N > 0 enables OpenMP with N threads
  std::string format;     // empty = subcommand default
  std::string out_path;   // also write the payload here
};

Execution execution_mode(const GlobalOptions& g) {
  if (g.threads > 0) {
    omp_set_num_threads(g.threads);
    return Execution::kOpenMp;
  }
  return Execution::kSerial;
}

// 15 significant digits: readable sidecar next to the exact rational.
std::string decimal_str(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

void add_global_options(CLI::App* cmd, GlobalOptions& g,
                        bool with_format = true) {
  cmd->add_option("--seed", g.seed, "Seed for all randomness (default 0)");
  cmd->add_option("--threads", g.threads,
                  "OpenMP threads for the trial loops; 0 runs serially. "
                  "Never changes results.");
  if (with_format) {
    cmd->add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"json", "table", "csv"}));
  }
  cmd->add_option("--out", g.out_path, "Also write the output to this file");
}

ordered_json stats_json(const SummaryStats& s) {
  return ordered_json{{"n", s.n},
                      {"mean", s.mean},
                      {"sample_variance", s.sample_variance},
                      {"ci95_halfwidth", s.ci95_halfwidth},
                      {"seed", s.seed},
                      {"schema", s.schema}};
}

std::string render_table(const std::vector<std::string>& headers,
                         const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(headers.size());
  for (std::size_t c = 0; c < headers.size(); ++c) width[c] = headers[c].size();
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  std::ostringstream out;
  const auto emit_row = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << row[c];
      if (c + 1 < row.size()) {
        out << std::string(width[c] - row[c].size() + 2, ' ');
      }
    }
    out << '\n';
  };
  emit_row(headers);
  std::size_t total = 0;
  for (std::size_t c = 0; c < width.size(); ++c) {
    total += width[c] + (c + 1 < width.size() ? 2 : 0);
  }
  out << std::string(total, '-') << '\n';
  for (const auto& row : rows) emit_row(row);
  return out.str();
}

void write_rows_csv(const std::string& path,
                    const std::vector<TrialRow>& rows) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write file: " + path);
  out << "trial,a,b,gain\n";
  for (const TrialRow& row : rows) {
    out << row.trial << ',' << row.a.str() << ',' << row.b.str() << ','
        << rational_str(row.gain) << '\n';
  }
}

// ---------------------------------------------------------------- posterior

struct PosteriorOpts {
  std::string prior_spec;
  std::string a_text;
};

std::string cmd_posterior(const GlobalOptions& g, const PosteriorOpts& opt) {
  const LoadedPrior prior = load_prior(opt.prior_spec);
  ordered_json doc;
  std::vector<std::vector<std::string>> table_rows;

  if (const auto* discrete = std::get_if<DiscretePrior>(&prior)) {
    const Amount a(parse_rational(opt.a_text));
    const PosteriorSplit split = split_discrete(*discrete, a);
    const Amount expectation = conditional_expectation(*discrete, a);
    doc["prior"] = discrete->label();
    doc["a"] = a.str();
    doc["exact"] = true;
    doc["p_up"] = rational_str(split.up_exact());
    doc["p_up_decimal"] = split.up();
    doc["p_down"] = rational_str(split.down_exact());
    doc["p_down_decimal"] = split.down();
    doc["conditional_expectation"] = expectation.str();
    doc["conditional_expectation_decimal"] = expectation.to_double();
    doc["decide_expectation"] = to_string(decide_expectation(*discrete, a));
    doc["decide_probability_of_larger"] =
        to_string(decide_probability_of_larger(*discrete, a));
    table_rows = {
        {"prior", discrete->label()},
        {"a", a.str()},
        {"P(B=2a | A=a)", rational_str(split.up_exact()) + "  (" +
                              decimal_str(split.up()) + ")"},
        {"P(B=a/2 | A=a)", rational_str(split.down_exact()) + "  (" +
                               decimal_str(split.down()) + ")"},
        {"E[B | A=a]", expectation.str() + "  (" +
                           decimal_str(expectation.to_double()) + ")"},
        {"decision (expectation)",
         to_string(decide_expectation(*discrete, a))},
        {"decision (probability of larger)",
         to_string(decide_probability_of_larger(*discrete, a))},
    };
  } else {
    const auto& continuous = std::get<ContinuousPrior>(prior);
    const double a = rational_to_double(parse_rational(opt.a_text));
    const PosteriorSplit split = split_continuous(continuous, a);
    const double expectation = conditional_expectation(continuous, a);
    doc["prior"] = continuous.label();
    doc["a"] = a;
    doc["exact"] = false;
    doc["p_up"] = split.up();
    doc["p_down"] = split.down();
    doc["conditional_expectation"] = expectation;
    doc["decide_expectation"] = to_string(decide_expectation(continuous, a));
    doc["decide_probability_of_larger"] =
        to_string(decide_probability_of_larger(continuous, a));
    table_rows = {
        {"prior", continuous.label()},
        {"a", decimal_str(a)},
        {"P(B=2a | A=a)", decimal_str(split.up())},
        {"P(B=a/2 | A=a)", decimal_str(split.down())},
        {"E[B | A=a]", decimal_str(expectation)},
        {"decision (expectation)",
         to_string(decide_expectation(continuous, a))},
        {"decision (probability of larger)",
         to_string(decide_probability_of_larger(continuous, a))},
    };
  }

  if (g.format == "table") {
    return render_table({"quantity", "value"}, table_rows);
  }
  return doc.dump(2) + "\n";
}

// -------------------------------------------------------------------- prior

struct PriorOpts {
  std::string prior_spec;
  std::uint64_t sample_n = 0;
};

std::string cmd_prior(const GlobalOptions& g, const PriorOpts& opt) {
  const LoadedPrior prior = load_prior(opt.prior_spec);
  ordered_json doc;

  if (const auto* discrete = std::get_if<DiscretePrior>(&prior)) {
    const ProperCheck check = check_proper(*discrete);
    doc["prior"] = discrete->label();
    doc["kind"] = "discrete";
    doc["proper"] = check.proper;
    doc["total_mass"] = rational_str(check.total_mass);
    if (check.proper) {
      const Amount witness = find_half_half_violation(*discrete);
      const PosteriorSplit split = split_discrete(*discrete, witness);
      doc["half_half_violation"] = ordered_json{
          {"witness", witness.str()},
          {"p_up", rational_str(split.up_exact())},
          {"p_down", rational_str(split.down_exact())}};
    } else {
      doc["note"] = "improper prior: conditioning and sampling are undefined";
    }
    if (opt.sample_n > 0) {
      ExactMoments moments;
      for (std::uint64_t t = 0; t < opt.sample_n; ++t) {
        TrialRng rng(g.seed, t);
        moments.add(sample_smaller(*discrete, rng).value());
      }
      doc["sample"] =
          stats_json(moments.summarize(g.seed, "sample-smaller"));
    }
  } else {
    const auto& continuous = std::get<ContinuousPrior>(prior);
    if (opt.sample_n > 0) {
      throw UsageError("--sample applies to discrete priors only");
    }
    doc["prior"] = continuous.label();
    doc["kind"] = "continuous";
    doc["integral_estimate"] = integrate_density(continuous);
    doc["has_survival"] = continuous.has_survival();
  }
  return doc.dump(2) + "\n";
}

// ----------------------------------------------------------------- simulate

struct SimulateOpts {
  std::string schema;
  std::string x_text;
  std::string prior_spec;
  std::string a_text;
  std::uint64_t n = 0;
  std::string csv_path;
};

std::string cmd_simulate(const GlobalOptions& g, const SimulateOpts& opt) {
  const Execution exec = execution_mode(g);
  std::vector<TrialRow> rows;
  std::vector<TrialRow>* rows_ptr = opt.csv_path.empty() ? nullptr : &rows;

  ordered_json doc;
  doc["schema"] = opt.schema;
  doc["seed"] = g.seed;
  doc["n"] = opt.n;

  const auto require_x = [&]() -> Amount {
    if (opt.x_text.empty()) {
      throw UsageError("--x is required for schema '" + opt.schema + "'");
    }
    return Amount(parse_rational(opt.x_text));
  };

  if (opt.schema == "fixed") {
    const FixedPairRun run =
        run_fixed_pair(require_x(), opt.n, g.seed, exec, rows_ptr);
    doc["swap_gain"] = stats_json(run.swap_gain);
    doc["envelope_a"] = stats_json(run.envelope_a);
  } else if (opt.schema == "conditional") {
    const SummaryStats run =
        run_conditional_fill(require_x(), opt.n, g.seed, exec, rows_ptr);
    doc["other_envelope"] = stats_json(run);
  } else if (opt.schema == "prior") {
    if (opt.prior_spec.empty() || opt.a_text.empty()) {
      throw UsageError("schema 'prior' needs --prior and --a");
    }
    const LoadedPrior prior = load_prior(opt.prior_spec);
    const auto* discrete = std::get_if<DiscretePrior>(&prior);
    if (discrete == nullptr) {
      throw UsageError("schema 'prior' needs a discrete prior");
    }
    const Amount a(parse_rational(opt.a_text));
    const PriorConditionedRun run =
        run_prior_conditioned(*discrete, a, opt.n, g.seed, exec, rows_ptr);
    doc["b_given_a"] = stats_json(run.b_given_a);
    doc["attempts"] = run.attempts;
    doc["acceptance_rate"] = run.acceptance_rate;
  } else if (opt.schema == "alibaba") {
    const AliBabaRun run =
        run_alibaba(require_x(), opt.n, g.seed, exec, rows_ptr);
    doc["baba_content"] = stats_json(run.baba_content);
    doc["ali_over_baba"] = stats_json(run.ali_over_baba);
    doc["total_content"] = stats_json(run.total_content);
  } else {
    throw UsageError("unknown schema '" + opt.schema + "'");
  }

  if (rows_ptr != nullptr) {
    write_rows_csv(opt.csv_path, rows);
    doc["csv"] = opt.csv_path;
    doc["csv_rows"] = rows.size();
  }
  return doc.dump(2) + "\n";
}

// -------------------------------------------------------------------- cover

struct CoverOpts {
  std::string pairs_path;
  std::uint64_t n = 0;
};

std::string cmd_cover(const GlobalOptions& g, const CoverOpts& opt) {
  const Execution exec = execution_mode(g);
  const Probe probe = Probe::exponential();
  const auto pairs = load_pairs_csv(opt.pairs_path);

  ordered_json pairs_json = ordered_json::array();
  std::ostringstream csv;
  csv << "a,b,exact_p,empirical_p,ci95,bits_mean\n";

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [a, b] = pairs[i];
    const double exact_p = exact_win_probability(a, b, probe);
    // Pair i gets its own seed so pairs do not replay one another's coins.
    const std::uint64_t pair_seed = g.seed + i;
    const WinRateRun run = estimate_win_rate_lazy(a, b, opt.n, pair_seed, exec);

    csv << decimal_str(a) << ',' << decimal_str(b) << ','
        << decimal_str(exact_p) << ',' << decimal_str(run.win_rate.mean)
        << ',' << decimal_str(run.win_rate.ci95_halfwidth) << ','
        << decimal_str(run.mean_bits) << '\n';

    ordered_json strata = ordered_json::array();
    static const char* kStratumName[3] = {"z_below_both", "z_between",
                                          "z_above_both"};
    for (int s = 0; s < 3; ++s) {
      const std::uint64_t trials = run.strata_trials[s];
      strata.push_back(ordered_json{
          {"stratum", kStratumName[s]},
          {"trials", trials},
          {"win_rate", trials == 0 ? 0.0
                                   : static_cast<double>(run.strata_wins[s]) /
                                         static_cast<double>(trials)}});
    }
    pairs_json.push_back(ordered_json{{"a", a},
                                      {"b", b},
                                      {"exact_p", exact_p},
                                      {"empirical_p", run.win_rate.mean},
                                      {"ci95", run.win_rate.ci95_halfwidth},
                                      {"bits_mean", run.mean_bits},
                                      {"seed", pair_seed},
                                      {"strata", strata}});
  }

  if (g.format == "json") {
    ordered_json doc{{"probe", probe.label()},
                     {"n", opt.n},
                     {"seed", g.seed},
                     {"pairs", pairs_json}};
    return doc.dump(2) + "\n";
  }
  return csv.str();
}

// --------------------------------------------------------------------- game

struct GameOpts {
  std::string arranger_path;
  std::string player_path;
  bool cover_mode = false;
  double epsilon = 0.0;
};

std::string cmd_game(const GlobalOptions&, const GameOpts& opt) {
  ordered_json doc;
  if (opt.cover_mode) {
    const Probe probe = Probe::exponential();
    doc["probe"] = probe.label();
    if (!opt.arranger_path.empty()) {
      const ArrangerStrategy arranger = load_arranger(opt.arranger_path);
      doc["cover_win_probability"] = cover_vs_arranger(arranger, probe);
    }
    if (opt.epsilon > 0.0) {
      const ArrangerStrategy adversary = shift_adversary(probe, opt.epsilon);
      const double value = cover_vs_arranger(adversary, probe);
      const EnvelopePair& pair = adversary.atoms().front().pair;
      doc["epsilon"] = opt.epsilon;
      doc["adversary"] =
          ordered_json{{"smaller", pair.smaller().to_double()},
                       {"larger", pair.larger().to_double()}};
      doc["adversary_win_probability"] = value;
      doc["adversary_advantage"] = value - 0.5;
    }
    if (opt.arranger_path.empty() && opt.epsilon <= 0.0) {
      throw UsageError("--cover needs --arranger and/or --epsilon");
    }
  } else {
    if (opt.arranger_path.empty() || opt.player_path.empty()) {
      throw UsageError("game needs --arranger and --player (or --cover)");
    }
    const ArrangerStrategy arranger = load_arranger(opt.arranger_path);
    const PlayerStrategy player = load_player(opt.player_path);
    const Rational value = exact_win_value(arranger, player);
    doc["win_value"] = rational_str(value);
    doc["win_value_decimal"] = rational_to_double(value);
  }
  return doc.dump(2) + "\n";
}

// ------------------------------------------------------------- broome-table

std::string cmd_broome_table(const GlobalOptions& g, long n_max) {
  if (n_max < 0) throw NegativeIndex("--n-max must be >= 0");
  const DiscretePrior prior = DiscretePrior::broome();

  ordered_json rows_json = ordered_json::array();
  std::vector<std::vector<std::string>> rows;
  std::ostringstream csv;
  csv << "n,x,p_n,p_up,p_down,e_b,e_b_decimal,decide_expectation,"
         "decide_probability_of_larger\n";

  for (long n = 0; n <= n_max; ++n) {
    const Amount x = broome_smaller_amount(n);
    const Rational p_n = broome_pmf(n);
    const PosteriorSplit split = split_discrete(prior, x);
    const Amount e_b = conditional_expectation(prior, x);
    const char* d_exp = to_string(decide_expectation(prior, x));
    const char* d_larger = to_string(decide_probability_of_larger(prior, x));

    rows_json.push_back(
        ordered_json{{"n", n},
                     {"x", x.str()},
                     {"p_n", rational_str(p_n)},
                     {"p_up", rational_str(split.up_exact())},
                     {"p_down", rational_str(split.down_exact())},
                     {"e_b", e_b.str()},
                     {"e_b_decimal", e_b.to_double()},
                     {"decide_expectation", d_exp},
                     {"decide_probability_of_larger", d_larger}});
    csv << n << ',' << x.str() << ',' << rational_str(p_n) << ','
        << rational_str(split.up_exact()) << ','
        << rational_str(split.down_exact()) << ',' << e_b.str() << ','
        << decimal_str(e_b.to_double()) << ',' << d_exp << ',' << d_larger
        << '\n';
    rows.push_back({std::to_string(n), x.str(), rational_str(p_n),
                    rational_str(split.up_exact()),
                    rational_str(split.down_exact()),
                    e_b.str() + "  (" + decimal_str(e_b.to_double()) + ")",
                    d_exp, d_larger});
  }

  if (g.format == "json") {
    return ordered_json{{"prior", "broome"}, {"rows", rows_json}}.dump(2) +
           "\n";
  }
  if (g.format == "csv") return csv.str();
  return render_table({"n", "x", "p(n)", "P(B=2a)", "P(B=a/2)", "E[B|A=x]",
                       "exp-rule", "larger-rule"},
                      rows);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Two-envelope paradox laboratory: exact Bayesian posteriors, "
               "switching criteria, and seeded Monte Carlo experiments"};
  app.require_subcommand(1);

  GlobalOptions g;
  PosteriorOpts posterior_opts;
  PriorOpts prior_opts;
  SimulateOpts simulate_opts;
  CoverOpts cover_opts;
  GameOpts game_opts;
  long broome_n_max = 8;

  CLI::App* posterior_cmd = app.add_subcommand(
      "posterior", "Posterior split, E[B|A=a], and both switching rules");
  posterior_cmd->add_option("--prior", posterior_opts.prior_spec,
                            "Prior file or built-in name")->required();
  posterior_cmd->add_option("--a", posterior_opts.a_text,
                            "Observed amount (rational)")->required();
  add_global_options(posterior_cmd, g);

  CLI::App* prior_cmd = app.add_subcommand(
      "prior", "Inspect a prior: properness, half-half violation, sampling");
  prior_cmd->add_option("--prior", prior_opts.prior_spec,
                        "Prior file or built-in name")->required();
  prior_cmd->add_option("--sample", prior_opts.sample_n,
                        "Also draw this many samples of the smaller amount");
  add_global_options(prior_cmd, g);

  CLI::App* simulate_cmd = app.add_subcommand(
      "simulate", "Seeded Monte Carlo runs of the envelope-filling schemas");
  simulate_cmd->add_option("--schema", simulate_opts.schema,
                           "fixed | conditional | prior | alibaba")
      ->required()
      ->check(CLI::IsMember({"fixed", "conditional", "prior", "alibaba"}));
  simulate_cmd->add_option("--x", simulate_opts.x_text,
                           "Amount (rational) for fixed/conditional/alibaba");
  simulate_cmd->add_option("--prior", simulate_opts.prior_spec,
                           "Prior for the prior-draw schema");
  simulate_cmd->add_option("--a", simulate_opts.a_text,
                           "Conditioning observation for the prior schema");
  simulate_cmd->add_option("--n", simulate_opts.n, "Trial count")->required();
  simulate_cmd->add_option("--csv", simulate_opts.csv_path,
                           "Write per-trial rows here (capped at 100000)");
  add_global_options(simulate_cmd, g);

  CLI::App* cover_cmd = app.add_subcommand(
      "cover", "Randomized threshold strategy on pairs from a CSV file");
  cover_cmd->add_option("--pairs", cover_opts.pairs_path,
                        "CSV with header a,b and decimal pairs")->required();
  cover_cmd->add_option("--n", cover_opts.n, "Trials per pair")->required();
  add_global_options(cover_cmd, g);

  CLI::App* game_cmd = app.add_subcommand(
      "game", "Arranger vs player: exact win value or the threshold edge");
  game_cmd->add_option("--arranger", game_opts.arranger_path,
                       "Arranger strategy JSON");
  game_cmd->add_option("--player", game_opts.player_path,
                       "Player strategy JSON");
  game_cmd->add_flag("--cover", game_opts.cover_mode,
                     "Evaluate the randomized threshold player instead");
  game_cmd->add_option("--epsilon", game_opts.epsilon,
                       "Find an arranger pair with edge below epsilon");
  add_global_options(game_cmd, g);

  CLI::App* broome_cmd = app.add_subcommand(
      "broome-table", "Per-observation table for the Broome prior");
  broome_cmd->add_option("--n-max", broome_n_max, "Largest index n (x = 2^n)");
  add_global_options(broome_cmd, g);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("envelopes");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());

    std::string payload;
    if (posterior_cmd->parsed()) {
      payload = cmd_posterior(g, posterior_opts);
    } else if (prior_cmd->parsed()) {
      payload = cmd_prior(g, prior_opts);
    } else if (simulate_cmd->parsed()) {
      payload = cmd_simulate(g, simulate_opts);
    } else if (cover_cmd->parsed()) {
      payload = cmd_cover(g, cover_opts);
    } else if (game_cmd->parsed()) {
      payload = cmd_game(g, game_opts);
    } else if (broome_cmd->parsed()) {
      payload = cmd_broome_table(g, broome_n_max);
    }

    out << payload;
    if (!g.out_path.empty()) {
      std::ofstream f(g.out_path);
      if (!f) throw UsageError("cannot write file: " + g.out_path);
      f << payload;
    }
    return 0;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << nlohmann::json{{"error", "UsageError"},
                          {"message", std::string(e.what()) +
                                          " (try --help)"}}
               .dump()
        << "\n";
    return 2;
  } catch (const Error& e) {
    err << nlohmann::json{{"error", e.code()}, {"message", e.what()}}.dump()
        << "\n";
    return e.code() == "UsageError" ? 2 : 1;
  } catch (const std::exception& e) {
    err << nlohmann::json{{"error", "InternalError"}, {"message", e.what()}}
               .dump()
        << "\n";
    return 1;
  }
}

}  // namespace envelopes
