#include "qst/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <json.hpp>

#include "qst/json_io.hpp"
#include "qst/protocol.hpp"
#include "qst/randomizer.hpp"
#include "qst/security.hpp"
#include "qst/state.hpp"

namespace qst::cli {

namespace {

std::string hop_file_name(const std::string& base, int hop) {
  const auto dot = base.find_last_of('.');
  const auto slash = base.find_last_of('/');
  const std::string suffix = ".hop" + std::to_string(hop);
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return base + suffix;
  }
  return base.substr(0, dot) + suffix + base.substr(dot);
}

io::Json make_manifest(const std::string& command,
                       const std::vector<std::string>& argv, std::uint64_t seed,
                       const std::vector<std::string>& input_paths,
                       const std::vector<std::string>& output_paths) {
  io::Json j = io::Json::object();
  j.set("command", io::Json::string(command));
  io::Json args = io::Json::array();
  for (const auto& a : argv) {
    args.push(io::Json::string(a));
  }
  j.set("argv", std::move(args));
  j.set("seed", io::Json::integer(static_cast<std::int64_t>(seed)));
  j.set("version", io::Json::string(kVersion));
  io::Json inputs = io::Json::object();
  for (const auto& path : input_paths) {
    inputs.set(path, io::Json::string(io::file_hash(path)));
  }
  j.set("inputs", std::move(inputs));
  io::Json outputs = io::Json::array();
  for (const auto& path : output_paths) {
    outputs.push(io::Json::string(path));
  }
  j.set("outputs", std::move(outputs));
  return j;
}

std::string manifest_path_for(const std::string& out_path) {
  return out_path + ".manifest.json";
}

LogBase parse_base(const std::string& text) {
  return text == "e" ? LogBase::e : LogBase::two;
}

std::vector<double> parse_epsilon_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) {
      values.push_back(std::stod(item));
    }
  }
  return values;
}

double log_in_base(double x, LogBase base) {
  return base == LogBase::two ? std::log2(x) : std::log(x);
}

// ---------------------------------------------------------------- gen-keys

struct GenKeysArgs {
  int n = 0;
  double epsilon = 0.0;
  int hops = 1;
  std::uint64_t seed = kDefaultSeed;
  int retries = 50;
  std::string out;
  std::string format = "json";
};

int cmd_gen_keys(const GenKeysArgs& args, const std::vector<std::string>& argv,
                 std::ostream& out, std::ostream& err) {
  const int parties = args.hops + 1;
  std::vector<CertifyResult> results;
  if (args.hops == 1) {
    results.push_back(
        sample_and_certify(args.n, args.epsilon, args.seed, args.retries));
  } else {
    SampledHops sampled =
        sample_hop_sets(parties, args.n, args.epsilon, args.seed, args.retries);
    results = std::move(sampled.certificates);
  }

  bool all_certified = true;
  for (const auto& r : results) {
    all_certified = all_certified && r.certified;
  }
  if (!all_certified) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : results) {
      best = std::min(best, r.best_beta_max);
    }
    err << "certification failed: best beta_max " << io::format_double(best)
        << " vs threshold " << io::format_double(results.front().threshold)
        << " after " << results.front().attempts << " attempt(s)\n";
    return kCertificationFailure;
  }

  std::vector<std::string> written;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    io::KeySetFile file{*r.set, args.epsilon, true, r.profile->beta_max};
    const std::string path =
        results.size() == 1 ? args.out
                            : hop_file_name(args.out, static_cast<int>(i) + 1);
    if (args.format == "text") {
      io::write_file(path, io::key_set_to_text(file));
    } else {
      io::write_file(path, io::key_set_to_json(file).dump());
    }
    written.push_back(path);
    out << path << ": " << r.set->size() << " keys, beta_max "
        << io::format_double(r.profile->beta_max) << " <= threshold "
        << io::format_double(r.threshold) << " (attempt " << r.attempts
        << ")\n";
  }
  io::write_file(manifest_path_for(args.out),
                 make_manifest("gen-keys", argv, args.seed, {}, written).dump());
  return kOk;
}

// ---------------------------------------------------------------- bias-scan

struct BiasScanArgs {
  std::string keys_path;
  std::string format = "csv";
  std::string out;  // empty: stdout
};

int cmd_bias_scan(const BiasScanArgs& args, const std::vector<std::string>& argv,
                  std::ostream& out, std::ostream& err) {
  std::optional<io::KeySetFile> file;
  try {
    file = io::load_key_set(args.keys_path);
  } catch (const std::runtime_error& e) {
    err << e.what() << "\n";
    return kParseFailure;
  }
  const BiasProfile profile = bias_profile(file->set);
  std::optional<double> threshold;
  if (file->epsilon) {
    threshold = *file->epsilon * std::exp2(-file->set.n / 2.0);
  }
  const bool verdict = threshold && profile.beta_max <= *threshold;

  std::string text;
  if (args.format == "json") {
    io::Json j = io::Json::object();
    j.set("n", io::Json::integer(file->set.n));
    j.set("epsilon",
          file->epsilon ? io::Json::number(*file->epsilon) : io::Json::null());
    io::Json points = io::Json::array();
    for (std::size_t y = 0; y < profile.beta.size(); ++y) {
      io::Json p = io::Json::object();
      p.set("key", io::Json::string(to_hex(static_cast<std::uint64_t>(y),
                                           2 * file->set.n)));
      p.set("beta", io::Json::number(profile.beta[y]));
      points.push(std::move(p));
    }
    j.set("points", std::move(points));
    j.set("beta_max", io::Json::number(profile.beta_max));
    j.set("threshold",
          threshold ? io::Json::number(*threshold) : io::Json::null());
    j.set("verdict", threshold ? io::Json::boolean(verdict) : io::Json::null());
    text = j.dump();
  } else {
    std::string csv = "key,beta\n";
    for (std::size_t y = 0; y < profile.beta.size(); ++y) {
      csv += to_hex(static_cast<std::uint64_t>(y), 2 * file->set.n);
      csv += ',';
      csv += io::format_double(profile.beta[y]);
      csv += '\n';
    }
    csv += "beta_max," + io::format_double(profile.beta_max) + "\n";
    csv += "verdict,";
    csv += threshold ? (verdict ? "pass" : "fail") : "n/a";
    csv += '\n';
    text = std::move(csv);
  }

  if (args.out.empty()) {
    out << text;
  } else {
    io::write_file(args.out, text);
    io::write_file(manifest_path_for(args.out),
                   make_manifest("bias-scan", argv, 0, {args.keys_path},
                                 {args.out})
                       .dump());
    out << args.out << ": beta_max " << io::format_double(profile.beta_max)
        << (threshold ? (verdict ? " (pass)" : " (fail)") : "") << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- run

struct RunArgs {
  int parties = 0;
  int n = 0;
  double epsilon = 1.0;
  std::vector<std::string> keys_paths;
  bool sample = false;
  int retries = 50;
  std::uint64_t seed = kDefaultSeed;
  int trials = 100;
  std::string state = "zero";
  std::string transcript_out;
  bool record_states = false;
  bool break_keys = false;
  std::vector<int> taps;
  std::string base = "2";
};

int cmd_run(const RunArgs& args, const std::vector<std::string>& argv,
            std::ostream& out, std::ostream& err) {
  std::vector<KeySet> hop_sets;
  std::vector<std::string> provenance;
  std::vector<std::string> input_files;

  if (args.sample) {
    SampledHops sampled = sample_hop_sets(args.parties, args.n, args.epsilon,
                                          args.seed, args.retries);
    if (!sampled.all_certified) {
      err << "certification failed while sampling hop sets\n";
      return kCertificationFailure;
    }
    hop_sets = std::move(sampled.hop_sets);
    for (std::size_t i = 0; i < hop_sets.size(); ++i) {
      provenance.push_back("sampled:seed=" + std::to_string(args.seed) +
                           ",hop=" + std::to_string(i + 1));
    }
  } else {
    if (args.keys_paths.size() !=
        static_cast<std::size_t>(args.parties - 1)) {
      err << "need exactly m-1 = " << args.parties - 1
          << " key set files (got " << args.keys_paths.size()
          << "); or pass --sample\n";
      return kProtocolFailure;
    }
    for (const auto& path : args.keys_paths) {
      std::optional<io::KeySetFile> file;
      try {
        file = io::load_key_set(path);
      } catch (const std::runtime_error& e) {
        err << e.what() << "\n";
        return kParseFailure;
      }
      if (file->set.n != args.n) {
        err << path << ": key set is for n=" << file->set.n
            << ", run requested n=" << args.n << "\n";
        return kProtocolFailure;
      }
      hop_sets.push_back(std::move(file->set));
      provenance.push_back("file:" + path + ":" + io::file_hash(path));
      input_files.push_back(path);
    }
  }

  std::optional<PureState> input;
  try {
    if (args.state == "zero") {
      input = PureState::zero(args.n);
    } else if (args.state == "random") {
      SeededRng rng(args.seed, 0x737461746520);  // independent state stream
      input = random_pure_state(args.n, rng);
    } else {
      input = io::load_pure_state(args.state);
      input_files.push_back(args.state);
    }
  } catch (const std::runtime_error& e) {
    err << e.what() << "\n";
    return kParseFailure;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kParseFailure;
  }
  if (input->n != args.n) {
    err << "state has n=" << input->n << ", run requested n=" << args.n << "\n";
    return kProtocolFailure;
  }

  try {
    ProtocolConfig config(args.parties, args.n, args.epsilon,
                          std::move(hop_sets), args.seed);
    config.hop_provenance = provenance;

    RunOptions options;
    options.record_states = args.record_states;
    options.tapped_hops.insert(args.taps.begin(), args.taps.end());
    if (args.break_keys) {
      options.corrupt_last_key = 1;  // flip one Z bit of party m's key
    }

    const Transcript transcript = run_protocol(config, *input, options);
    const ProtocolSecurityReport security =
        security_report(config, args.trials, args.seed, parse_base(args.base));

    out << "fidelity " << io::format_double(transcript.fidelity) << "\n";
    out << "decode " << (transcript.decode_ok ? "ok" : "FAILED") << "\n";
    out << "composed_max_distance "
        << io::format_double(security.composed_max_distance) << " (epsilon "
        << io::format_double(args.epsilon) << ")\n";
    out << "chi " << io::format_double(security.chi) << " bound "
        << io::format_double(security.chi_bound) << " base " << args.base
        << "\n";
    out << "security " << (security.pass ? "pass" : "FAIL") << "\n";

    if (!args.transcript_out.empty()) {
      io::write_file(
          args.transcript_out,
          io::transcript_to_json(transcript, config, security, args.state)
              .dump());
      io::write_file(manifest_path_for(args.transcript_out),
                     make_manifest("run", argv, args.seed, input_files,
                                   {args.transcript_out})
                         .dump());
      out << "transcript " << args.transcript_out << "\n";
    }

    const bool ok = transcript.fidelity >= 1.0 - 1e-9 && security.pass;
    return ok ? kOk : kProtocolFailure;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kProtocolFailure;
  }
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  int n_min = 0;
  int n_max = 0;
  std::string epsilons;
  int parties = 2;
  int trials = 16;
  int retries = 50;
  std::uint64_t seed = kDefaultSeed;
  std::string out;  // empty: stdout
  std::string base = "2";
  bool no_control = false;
};

struct SweepRow {
  int n = 0;
  std::optional<double> epsilon;
  std::string kind = "sampled";
  std::optional<int> n_dn;
  int two_n = 0;
  std::optional<std::size_t> set_size;
  std::optional<double> beta_max;
  std::optional<double> max_distance;
  std::optional<double> chi;
  std::optional<double> chi_bound;
  std::string status = "ok";
};

double measured_max_distance(int n, const std::vector<double>& attenuation,
                             int trials, SeededRng& root) {
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(n);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    SeededRng rng = root.fork(static_cast<std::uint64_t>(t));
    const DensityMatrix rho = density_from_pure(random_pure_state(n, rng));
    const DensityMatrix out = apply_attenuation(rho, attenuation);
    worst = std::max(worst, trace_norm(out.entries - mixed.entries));
  }
  return worst;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string csv =
      "n,epsilon,kind,n_dn,two_n,set_size,beta_max,max_distance,chi,chi_bound,"
      "status\n";
  for (const auto& row : rows) {
    csv += std::to_string(row.n);
    csv += ',';
    if (row.epsilon) {
      csv += io::format_double(*row.epsilon);
    }
    csv += ',' + row.kind + ',';
    if (row.n_dn) {
      csv += std::to_string(*row.n_dn);
    }
    csv += ',' + std::to_string(row.two_n) + ',';
    if (row.set_size) {
      csv += std::to_string(*row.set_size);
    }
    csv += ',';
    if (row.beta_max) {
      csv += io::format_double(*row.beta_max);
    }
    csv += ',';
    if (row.max_distance) {
      csv += io::format_double(*row.max_distance);
    }
    csv += ',';
    if (row.chi) {
      csv += io::format_double(*row.chi);
    }
    csv += ',';
    if (row.chi_bound) {
      csv += io::format_double(*row.chi_bound);
    }
    csv += ',' + row.status + '\n';
  }
  return csv;
}

int cmd_sweep(const SweepArgs& args, const std::vector<std::string>& argv,
              std::ostream& out, std::ostream& err) {
  const auto eps_list = parse_epsilon_list(args.epsilons);
  if (eps_list.empty()) {
    err << "--epsilons: empty list\n";
    return kProtocolFailure;
  }
  const LogBase base = parse_base(args.base);

  std::vector<SweepRow> rows;
  SeededRng root(args.seed);
  std::uint64_t row_index = 0;
  for (int n = args.n_min; n <= args.n_max; ++n) {
    const bool bias_ok = 2 * n <= kBiasBitCap;
    const bool dense_ok = n <= kDenseQubitCap;

    if (!args.no_control) {
      SweepRow control;
      control.n = n;
      control.kind = "control";
      control.two_n = 2 * n;
      if (!dense_ok) {
        control.status = "skipped:dense-cap";
      } else {
        const KeySet full = KeySet::full(n);
        control.set_size = full.size();
        const BiasProfile profile = bias_profile(full);
        control.beta_max = profile.beta_max;
        const auto attenuation = channel_attenuation(full);
        SeededRng row_rng = root.fork(0xc0000000ull + static_cast<std::uint64_t>(n));
        control.max_distance =
            measured_max_distance(n, attenuation, args.trials, row_rng);
        control.chi =
            holevo_information_basis(ChannelSpec({full}), base);
      }
      rows.push_back(std::move(control));
    }

    for (const double epsilon : eps_list) {
      SweepRow row;
      row.n = n;
      row.epsilon = epsilon;
      row.two_n = 2 * n;
      ++row_index;
      if (!bias_ok) {
        row.status = "skipped:bias-cap";
        rows.push_back(std::move(row));
        continue;
      }
      row.n_dn = dn_key_length(n, epsilon);
      row.set_size = std::size_t{1} << *row.n_dn;
      row.chi_bound = log_in_base(1.0 + std::exp2(n) * epsilon, base);

      const std::uint64_t row_seed = root.fork(row_index).next();
      std::vector<double> attenuation;
      if (args.parties == 2) {
        CertifyResult result =
            sample_and_certify(n, epsilon, row_seed, args.retries);
        if (!result.certified) {
          row.beta_max = result.best_beta_max;
          row.status = "uncertified";
          rows.push_back(std::move(row));
          continue;
        }
        row.beta_max = result.profile->beta_max;
        attenuation = channel_attenuation(*result.set);
      } else {
        SampledHops sampled =
            sample_hop_sets(args.parties, n, epsilon, row_seed, args.retries);
        if (!sampled.all_certified) {
          row.status = "uncertified";
          rows.push_back(std::move(row));
          continue;
        }
        const ChannelSpec spec{sampled.hop_sets};
        attenuation = composed_attenuation(spec);
        double composed_max = 0.0;
        for (std::size_t y = 1; y < attenuation.size(); ++y) {
          composed_max = std::max(composed_max, std::abs(attenuation[y]));
        }
        row.beta_max = composed_max;
      }

      {
        // chi via the diagonal fast path: needs only the attenuation table.
        std::vector<double> zline(attenuation.begin(),
                                  attenuation.begin() + (std::int64_t{1} << n));
        kernels::wht(std::span<double>(zline), kernels::Exec::serial);
        double member_entropy = 0.0;
        const double scale = 1.0 / std::exp2(n);
        for (const double raw : zline) {
          const double lambda = raw * scale;
          if (lambda > kEntropyEigenvalueFloor) {
            member_entropy -= lambda * log_in_base(lambda, base);
          }
        }
        const double mixed_entropy =
            base == LogBase::two ? static_cast<double>(n)
                                 : static_cast<double>(n) * std::log(2.0);
        row.chi = mixed_entropy - member_entropy;
      }

      if (dense_ok) {
        SeededRng row_rng = root.fork(0xd0000000ull + row_index);
        row.max_distance =
            measured_max_distance(n, attenuation, args.trials, row_rng);
      } else {
        row.status = "skipped:dense-cap";
      }
      rows.push_back(std::move(row));
    }
  }

  const std::string csv = sweep_csv(rows);
  if (args.out.empty()) {
    out << csv;
  } else {
    io::write_file(args.out, csv);
    io::write_file(manifest_path_for(args.out),
                   make_manifest("sweep", argv, args.seed, {}, {args.out})
                       .dump());
    out << args.out << ": " << rows.size() << " rows\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- rerun

int cmd_rerun(const std::string& manifest_path, std::ostream& out,
              std::ostream& err) {
  std::vector<std::string> argv;
  try {
    const auto j = nlohmann::json::parse(io::read_file(manifest_path));
    for (const auto& item : j.at("argv")) {
      argv.push_back(item.get<std::string>());
    }
  } catch (const std::runtime_error& e) {
    err << e.what() << "\n";
    return kParseFailure;
  } catch (const nlohmann::json::exception& e) {
    err << "manifest: " << e.what() << "\n";
    return kParseFailure;
  }
  if (argv.empty()) {
    err << "manifest: empty argv\n";
    return kParseFailure;
  }
  return run(argv, out, err);
}

}  // namespace

void init_threads_from_env() {
#ifdef _OPENMP
  if (const char* env = std::getenv("QSTLAB_THREADS")) {
    const int threads = std::atoi(env);
    if (threads > 0) {
      omp_set_num_threads(threads);
    }
  }
#endif
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"qstlab: private-quantum-channel key sets, bias analysis, and "
               "sequential transmission simulation"};
  app.name("qstlab");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GenKeysArgs gen;
  auto* gen_cmd = app.add_subcommand(
      "gen-keys", "Sample and certify biased key sets for a channel");
  gen_cmd->add_option("--n", gen.n, "Qubit count")
      ->required()
      ->check(CLI::Range(1, kBiasBitCap / 2));
  gen_cmd->add_option("--epsilon", gen.epsilon, "Security parameter in (0,1]")
      ->required()
      ->check(CLI::Range(1e-12, 1.0));
  gen_cmd->add_option("--hops", gen.hops, "Number of hop sets (m-1)")
      ->check(CLI::Range(1, 64));
  gen_cmd->add_option("--seed", gen.seed, "RNG seed");
  gen_cmd->add_option("--retries", gen.retries, "Max resampling retries")
      ->check(CLI::Range(0, 100000));
  gen_cmd->add_option("--out", gen.out, "Output key set file")->required();
  gen_cmd->add_option("--format", gen.format, "File format")
      ->check(CLI::IsMember({"json", "text"}));

  BiasScanArgs scan;
  auto* scan_cmd =
      app.add_subcommand("bias-scan", "Full bias profile of a key set file");
  scan_cmd->add_option("--keys", scan.keys_path, "Key set file")->required();
  scan_cmd->add_option("--format", scan.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  scan_cmd->add_option("--out", scan.out, "Output file (default: stdout)");

  RunArgs runa;
  auto* run_cmd = app.add_subcommand(
      "run", "Run the m-party sequential transmission protocol");
  run_cmd->add_option("--m", runa.parties, "Party count")
      ->required()
      ->check(CLI::Range(2, 64));
  run_cmd->add_option("--n", runa.n, "Qubit count")
      ->required()
      ->check(CLI::Range(1, kDenseQubitCap));
  run_cmd->add_option("--epsilon", runa.epsilon, "Security parameter")
      ->check(CLI::Range(1e-12, 1.0));
  run_cmd->add_option("--keys", runa.keys_paths,
                      "Key set file per hop (m-1 files)");
  run_cmd->add_flag("--sample", runa.sample,
                    "Sample certified hop sets instead of loading files");
  run_cmd->add_option("--retries", runa.retries, "Max resampling retries");
  run_cmd->add_option("--seed", runa.seed, "RNG seed");
  run_cmd->add_option("--trials", runa.trials,
                      "Monte-Carlo trials for the security report")
      ->check(CLI::Range(0, 1000000));
  run_cmd->add_option("--state", runa.state,
                      "Input state: zero, random, or a JSON state file");
  run_cmd->add_option("--transcript-out", runa.transcript_out,
                      "Write the transcript JSON here");
  run_cmd->add_flag("--record-states", runa.record_states,
                    "Embed per-hop ciphertext states in the transcript");
  run_cmd->add_flag("--break-keys", runa.break_keys,
                    "Test hook: corrupt party m's key (XOR != 0)");
  run_cmd->add_option("--tap", runa.taps, "Adversary-tapped hop indices");
  run_cmd->add_option("--base", runa.base, "Holevo log base")
      ->check(CLI::IsMember({"2", "e"}));

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Key-size / bias / distance table over (n, epsilon)");
  sweep_cmd->add_option("--n-min", sweep.n_min, "Smallest n")
      ->required()
      ->check(CLI::Range(1, 20));
  sweep_cmd->add_option("--n-max", sweep.n_max, "Largest n")
      ->required()
      ->check(CLI::Range(1, 20));
  sweep_cmd->add_option("--epsilons", sweep.epsilons,
                        "Comma-separated epsilon list")
      ->required();
  sweep_cmd->add_option("--m", sweep.parties, "Party count")
      ->check(CLI::Range(2, 64));
  sweep_cmd->add_option("--trials", sweep.trials, "Distance trials per row")
      ->check(CLI::Range(0, 100000));
  sweep_cmd->add_option("--retries", sweep.retries, "Max resampling retries");
  sweep_cmd->add_option("--seed", sweep.seed, "RNG seed");
  sweep_cmd->add_option("--out", sweep.out, "Output CSV (default: stdout)");
  sweep_cmd->add_option("--base", sweep.base, "Holevo log base")
      ->check(CLI::IsMember({"2", "e"}));
  sweep_cmd->add_flag("--no-control", sweep.no_control,
                      "Skip the full-set control rows");

  std::string rerun_manifest;
  auto* rerun_cmd = app.add_subcommand(
      "rerun", "Re-execute the command recorded in a manifest");
  rerun_cmd->add_option("--manifest", rerun_manifest, "Manifest file")
      ->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (gen_cmd->parsed()) {
      return cmd_gen_keys(gen, args, out, err);
    }
    if (scan_cmd->parsed()) {
      return cmd_bias_scan(scan, args, out, err);
    }
    if (run_cmd->parsed()) {
      return cmd_run(runa, args, out, err);
    }
    if (sweep_cmd->parsed()) {
      return cmd_sweep(sweep, args, out, err);
    }
    if (rerun_cmd->parsed()) {
      return cmd_rerun(rerun_manifest, out, err);
    }
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kProtocolFailure;
  } catch (const std::runtime_error& e) {
    err << e.what() << "\n";
    return kParseFailure;
  }
  err << "no subcommand\n";
  return kProtocolFailure;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    args.emplace_back(argv[i]);
  }
  return run(args, out, err);
}

}  // namespace qst::cli
