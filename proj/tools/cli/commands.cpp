// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>

#include "cli.hpp"
#include "manifest.hpp"
#include "plcgrid/channel_io.hpp"
#include "plcgrid/errors.hpp"
#include "plcgrid/grid_io.hpp"
#include "plcgrid/planner_io.hpp"
#include "plcgrid/power_flow.hpp"
#include "plcgrid/text.hpp"
#include "plcgrid/topology.hpp"
#include "staging.hpp"

namespace plcgrid::cli {

namespace {

struct GridInputs {
  std::string grid;
  std::string buses;
};

void add_grid_flags(CLI::App* cmd, GridInputs& in) {
  cmd->add_option("--grid", in.grid, "Branch edge-list file")->required();
  cmd->add_option("--buses", in.buses, "Optional bus file (bus_id,kv,role)");
}

GridGraph load_inputs(const GridInputs& in, Manifest& manifest) {
  const auto branches = read_file(in.grid);
  manifest.add_input("grid", in.grid, branches);
  std::istringstream branch_stream(branches);
  if (in.buses.empty()) return load_grid(branch_stream);
  const auto buses = read_file(in.buses);
  manifest.add_input("buses", in.buses, buses);
  std::istringstream bus_stream(buses);
  return load_grid(branch_stream, &bus_stream);
}

template <typename Fn>
std::string render(Fn&& fn) {
  std::ostringstream os;
  fn(os);
  return os.str();
}

void finish(StagedOutput& staged, Manifest& manifest) {
  for (const auto& name : staged.names()) manifest.add_output(name);
  staged.write("manifest.txt", manifest.str());
  staged.commit();
}

struct MetricsArgs {
  GridInputs grid;
  std::string out;
  std::size_t spectral_bins = 50;
  double length_bin_m = 100.0;
};

int cmd_metrics(const MetricsArgs& a, std::ostream& out) {
  Manifest manifest("metrics");
  const auto g = load_inputs(a.grid, manifest);
  MetricOptions options;
  options.spectral_bins = a.spectral_bins;
  options.length_bin_width_m = a.length_bin_m;
  manifest.add_option("spectral_bins", std::to_string(a.spectral_bins));
  manifest.add_option("length_bin_m", text::format_double(a.length_bin_m));
  const auto report = full_report(g, options);

  StagedOutput staged(a.out);
  const auto summary = render([&](std::ostream& os) { write_report(report, os); });
  staged.write("report.txt", summary);
  staged.write("degree_pmf.csv", render([&](std::ostream& os) { write_degree_pmf(report, os); }));
  staged.write("spectral_density.csv",
               render([&](std::ostream& os) { write_spectral_density(report, os); }));
  staged.write("branch_length_pmf.csv",
               render([&](std::ostream& os) { write_branch_length_pmf(report, os); }));
  finish(staged, manifest);
  out << summary;
  return kOk;
}

struct PowerflowArgs {
  GridInputs grid;
  std::string state;
  std::string limits;
  std::string mode = "referenced";
  std::string out;
};

int cmd_powerflow(const PowerflowArgs& a, std::ostream& out) {
  Manifest manifest("powerflow");
  const auto g = load_inputs(a.grid, manifest);
  const auto state_text = read_file(a.state);
  manifest.add_input("state", a.state, state_text);
  const auto limits_text = read_file(a.limits);
  manifest.add_input("limits", a.limits, limits_text);
  manifest.add_option("mode", a.mode);

  std::istringstream limits_stream(limits_text);
  auto cfg = read_limits(limits_stream, g);
  cfg.options.mode = *parse_stability_mode(a.mode);
  std::istringstream state_stream(state_text);
  const auto read = read_state(state_stream, g);
  // Currents follow from the voltages through Y.
  const auto y = admittance_matrix(g, cfg.options.admittance);
  auto state = evaluate_state(y, read.voltages);
  state.powers = read.powers;
  const auto report = check_constraints(g, state, cfg.limits, cfg.options);

  StagedOutput staged(a.out);
  const auto verdicts = render([&](std::ostream& os) { write_verdicts(report, os); });
  staged.write("verdicts.txt", verdicts);
  finish(staged, manifest);
  out << verdicts;
  return report.all_passed() ? kOk : kConstraintFailure;
}

struct ChannelArgs {
  std::string channel;
  std::string chain;
  double fmin = 0.0;
  double fmax = 2e6;
  std::size_t nfreq = 201;
  std::optional<double> sample_rate;
  std::optional<double> duration_us;
  double rolloff = 0.1;
  std::string out;
};

int cmd_channel(const ChannelArgs& a, std::ostream& out) {
  if (a.channel.empty() == a.chain.empty()) {
    throw ParseError(0, "exactly one of --channel or --chain is required");
  }
  Manifest manifest("channel");
  const auto freqs = linear_grid(a.fmin, a.fmax, a.nfreq);
  const double fs = a.sample_rate.value_or(4.0 * a.fmax);
  if (!(fs > 0.0)) throw ParseError(0, "--sample-rate is required when --fmax is 0");

  Eigen::VectorXcd h;
  SpectrumFunction response;
  double duration_s = 0.0;
  std::optional<MultipathChannel> multipath;
  std::optional<ChainSpec> chain;
  if (!a.channel.empty()) {
    const auto body = read_file(a.channel);
    manifest.add_input("channel", a.channel, body);
    std::istringstream in(body);
    multipath = read_channel(in);
    h = transfer_function(*multipath, freqs);
    duration_s = a.duration_us ? *a.duration_us * 1e-6 : 2.0 * multipath->max_delay() + 10e-6;
  } else {
    const auto body = read_file(a.chain);
    manifest.add_input("chain", a.chain, body);
    std::istringstream in(body);
    chain = read_chain(in);
    h = chain_response(*chain, freqs);
    duration_s = a.duration_us ? *a.duration_us * 1e-6 : 20e-6;
  }
  ImpulseOptions window;
  window.rolloff = a.rolloff;
  const auto ir = multipath ? impulse_response(*multipath, fs, duration_s, window)
                            : impulse_response(
                                  [&](std::span<const double> f) {
                                    return chain_response(*chain, f);
                                  },
                                  fs, duration_s, window);

  manifest.add_option("fmin_hz", text::format_double(a.fmin));
  manifest.add_option("fmax_hz", text::format_double(a.fmax));
  manifest.add_option("nfreq", std::to_string(a.nfreq));
  manifest.add_option("sample_rate_hz", text::format_double(fs));
  manifest.add_option("duration_s", text::format_double(duration_s));
  manifest.add_option("impulse_samples", std::to_string(ir.samples.size()));
  manifest.add_option("window", a.rolloff > 0.0 ? "raised_cosine_band_edge" : "none");
  manifest.add_option("window_rolloff", text::format_double(a.rolloff));

  StagedOutput staged(a.out);
  staged.write("transfer_function.csv",
               render([&](std::ostream& os) { write_transfer_function(os, freqs, h); }));
  staged.write("impulse_response.csv",
               render([&](std::ostream& os) { write_impulse_response(os, ir); }));
  finish(staged, manifest);
  out << "frequencies=" << freqs.size() << "\nimpulse_samples=" << ir.samples.size() << '\n';
  return kOk;
}

struct GenerateArgs {
  std::string spec;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  Manifest manifest("generate");
  const auto body = read_file(a.spec);
  manifest.add_input("spec", a.spec, body);
  std::istringstream in(body);
  auto spec = read_generator_spec(in);
  if (a.seed) spec.seed = *a.seed;
  manifest.set_seed(spec.seed);
  const auto g = generate_topology(spec);

  std::ostringstream branches;
  std::ostringstream buses;
  write_grid(g, branches, buses);
  StagedOutput staged(a.out);
  staged.write("branches.csv", branches.str());
  staged.write("buses.csv", buses.str());
  finish(staged, manifest);
  out << "buses=" << g.bus_count() << "\nbranches=" << g.branch_count() << '\n';
  return kOk;
}

struct PlanArgs {
  GridInputs grid;
  std::string budget;
  BusId concentrator = 0;
  std::string out;
};

int cmd_plan(const PlanArgs& a, std::ostream& out) {
  Manifest manifest("plan");
  const auto g = load_inputs(a.grid, manifest);
  const auto body = read_file(a.budget);
  manifest.add_input("budget", a.budget, body);
  manifest.add_option("concentrator", std::to_string(a.concentrator));
  std::istringstream in(body);
  const auto budget = read_link_budget(in);
  const auto plan = place_repeaters(g, a.concentrator, budget, PathLossTable::typical());

  StagedOutput staged(a.out);
  staged.write("plan.csv", render([&](std::ostream& os) { write_plan(plan, os); }));
  const auto summary = render([&](std::ostream& os) { write_plan_summary(plan, os); });
  staged.write("plan_summary.txt", summary);
  finish(staged, manifest);
  out << summary;
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grid topology metrics, power-flow checks, PLC channels and coverage planning",
               "plcgrid"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PLCGRID_VERSION);

  MetricsArgs metrics_args;
  auto* metrics = app.add_subcommand("metrics", "Topology report and distributions of a grid");
  add_grid_flags(metrics, metrics_args.grid);
  metrics->add_option("--out", metrics_args.out, "Output directory")->required();
  metrics->add_option("--spectral-bins", metrics_args.spectral_bins, "Spectral histogram bins")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  metrics->add_option("--length-bin-m", metrics_args.length_bin_m, "Branch-length bin width")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  PowerflowArgs pf_args;
  auto* powerflow = app.add_subcommand("powerflow", "Check a phasor state against limits");
  add_grid_flags(powerflow, pf_args.grid);
  powerflow->add_option("--state", pf_args.state, "State file")->required();
  powerflow->add_option("--limits", pf_args.limits, "Limits file")->required();
  powerflow->add_option("--mode", pf_args.mode, "Stability mode")
      ->capture_default_str()
      ->check(CLI::IsMember({"referenced", "raw"}));
  powerflow->add_option("--out", pf_args.out, "Output directory")->required();

  ChannelArgs ch_args;
  auto* channel = app.add_subcommand("channel", "Evaluate H(f) and h(t) of a channel");
  channel->add_option("--channel", ch_args.channel, "Multipath channel file");
  channel->add_option("--chain", ch_args.chain, "Two-port chain file");
  channel->add_option("--fmin", ch_args.fmin, "Lowest frequency, Hz")->capture_default_str();
  channel->add_option("--fmax", ch_args.fmax, "Highest frequency, Hz")->capture_default_str();
  channel->add_option("--nfreq", ch_args.nfreq, "Frequency points")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  channel->add_option("--sample-rate", ch_args.sample_rate, "Impulse sample rate, Hz (4 fmax)");
  channel->add_option("--duration-us", ch_args.duration_us, "Impulse response length, us");
  channel->add_option("--rolloff", ch_args.rolloff, "Band-edge raised-cosine fraction")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  channel->add_option("--out", ch_args.out, "Output directory")->required();

  GenerateArgs gen_args;
  auto* generate = app.add_subcommand("generate", "Generate a synthetic topology");
  generate->add_option("--spec", gen_args.spec, "Generator spec file")->required();
  generate->add_option("--seed", gen_args.seed, "Override the spec seed");
  generate->add_option("--out", gen_args.out, "Output directory")->required();

  PlanArgs plan_args;
  auto* plan = app.add_subcommand("plan", "PLC coverage and repeater placement");
  add_grid_flags(plan, plan_args.grid);
  plan->add_option("--budget", plan_args.budget, "Link budget file")->required();
  plan->add_option("--concentrator", plan_args.concentrator, "Concentrator bus id")->required();
  plan->add_option("--out", plan_args.out, "Output directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (metrics->parsed()) return cmd_metrics(metrics_args, out);
    if (powerflow->parsed()) return cmd_powerflow(pf_args, out);
    if (channel->parsed()) return cmd_channel(ch_args, out);
    if (generate->parsed()) return cmd_generate(gen_args, out);
    if (plan->parsed()) return cmd_plan(plan_args, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const DisconnectedGraphError& e) {
    err << "error: " << e.what() << '\n';
    return kStructuralError;
  } catch (const GridError& e) {
    err << "error: " << e.what() << '\n';
    return kStructuralError;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kStructuralError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace plcgrid::cli
