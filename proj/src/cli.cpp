#include "lqss/cli.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <ostream>

#include "lqss/errors.hpp"
#include "lqss/io.hpp"

namespace lqss::cli {

namespace {

using io::json;

std::shared_ptr<spdlog::logger> logger() {
  static std::shared_ptr<spdlog::logger> log = [] {
    auto l = spdlog::stderr_color_mt("lqss");
    const char* env = std::getenv("LQSS_LOG");
    l->set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
    return l;
  }();
  return log;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message, int code,
                  const json& extra = json::object()) {
  json e = {{"kind", kind}, {"message", message}, {"exit_code", code}};
  e.update(extra);
  err << json{{"error", e}}.dump() << '\n';
}

RVector read_detunings(const std::string& path) {
  const json j = io::read_json_file(path);
  if (j.is_object() && j.contains("detunings")) return io::vector_from_json(j["detunings"], "detunings");
  return io::vector_from_json(j, "detunings");
}

struct SynthArgs {
  std::string input, output, detuning_file;
  double interconnect_kappa = 0.0;
  double tol = 1e-9;
  std::uint64_t seed = 42;
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  Model model = io::model_from_json(io::read_json_file(a.input), a.tol);
  if (!a.detuning_file.empty()) {
    model.detunings = read_detunings(a.detuning_file);
    if (model.detunings.size() != model.modes())
      throw Error(ErrorKind::validation, "detuning file needs one entry per mode");
  }
  if (a.interconnect_kappa > 0.0) model.interconnect_kappa = RVector::Constant(model.modes(), a.interconnect_kappa);
  else if (a.interconnect_kappa < 0.0) throw Error(ErrorKind::validation, "--interconnect-kappa must be positive");
  logger()->info("synthesizing {} model with n={} m={}", model.type == ModelType::passive ? "passive" : "general",
                 model.modes(), model.channels());
  const Netlist net = synthesize(model, a.seed);
  for (const auto& [k, v] : net.residuals) logger()->debug("residual {} = {:.3e}", k, v);
  io::write_json_file(a.output, io::to_json(net));
  Index with_ports = 0;
  for (const auto& c : net.bank.cavities) with_ports += !c.ports.empty();
  out << json{{"netlist", a.output},
              {"cavities", net.bank.cavities.size()},
              {"cavities_with_system_ports", with_ports},
              {"feedback_dimension", net.feedback.rows()}}
             .dump()
      << '\n';
  return ok;
}

struct VerifyArgs {
  std::string model, netlist, report;
  int freqs = 20;
  std::uint64_t seed = 42;
  double tol = 1e-8;
  bool check = false;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const Model model = io::model_from_json(io::read_json_file(a.model));
  const Netlist net = io::netlist_from_json(io::read_json_file(a.netlist));
  if (a.check) {
    const double mis = schedule_mismatch(net);
    logger()->info("schedule mismatch {:.3e}", mis);
    if (mis > 1e-8) {
      std::ostringstream os;
      os << "device schedules do not reproduce their matrices (mismatch " << mis << ")";
      throw Error(ErrorKind::structure, os.str());
    }
  }
  const VerifyReport rep = verify(model, net, {a.freqs, a.seed, a.tol});
  const json j = io::to_json(rep);
  if (!a.report.empty()) io::write_json_file(a.report, j);
  out << j.dump() << '\n';
  return rep.pass ? ok : verify_failed;
}

struct DecomposeArgs {
  std::string input, output, kind = "unitary";
};

int cmd_decompose(const DecomposeArgs& a, std::ostream& out) {
  const json in = io::read_json_file(a.input);
  const json& mj = in.is_object() ? in.at("matrix") : in;
  const CMatrix x = io::matrix_from_json(mj, "matrix");
  DeviceSchedule sched;
  if (a.kind == "unitary") sched = reck_decompose(x);
  else sched = schedule_static(BogoliubovMatrix::from_full(x, 1e-8));
  const double residual = (sched.matrix() - x).norm();
  json j = io::to_json(sched);
  j["schema_version"] = io::kSchemaVersion;
  j["residual"] = residual;
  io::write_json_file(a.output, j);
  out << json{{"schedule", a.output},
              {"beam_splitters", sched.count_beam_splitters()},
              {"squeezers", sched.count_squeezers()},
              {"residual", residual}}
             .dump()
      << '\n';
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transfer function realization of linear quantum stochastic systems"};
  app.require_subcommand(1);

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "synthesize a cavity/feedback netlist from a model");
  synth->add_option("--input", sa.input, "model JSON")->required();
  synth->add_option("--output", sa.output, "netlist JSON to write")->required();
  synth->add_option("--detuning-file", sa.detuning_file, "JSON array of cavity detunings");
  synth->add_option("--interconnect-kappa", sa.interconnect_kappa, "coupling rate of every interconnection port");
  synth->add_option("--tol", sa.tol, "structure tolerance for the input matrices");
  synth->add_option("--seed", sa.seed, "seed for interconnect perturbation retries");

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "compare a netlist with the model transfer function");
  ver->add_option("--model", va.model, "model JSON")->required();
  ver->add_option("--netlist", va.netlist, "netlist JSON")->required();
  ver->add_option("--freqs", va.freqs, "number of sample points")->check(CLI::PositiveNumber);
  ver->add_option("--seed", va.seed, "seed for the frequency jitter");
  ver->add_option("--tol", va.tol, "pass threshold on the relative error");
  ver->add_option("--report", va.report, "also write the report to this file");
  ver->add_flag("--check", va.check, "check that device schedules reproduce their matrices");

  DecomposeArgs da;
  auto* dec = app.add_subcommand("decompose", "decompose a static network into devices");
  dec->add_option("--input", da.input, "JSON with a \"matrix\" field")->required();
  dec->add_option("--output", da.output, "schedule JSON to write")->required();
  dec->add_option("--kind", da.kind, "unitary or bogoliubov")
      ->check(CLI::IsMember({"unitary", "bogoliubov"}));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", e.what(), invalid_input);
    return invalid_input;
  }

  try {
    if (*synth) return cmd_synth(sa, out);
    if (*ver) return cmd_verify(va, out);
    return cmd_decompose(da, out);
  } catch (const UnitEigenvalueError& e) {
    const int code = exit_code(e.kind());
    report_error(err, to_string(e.kind()), e.what(), code, {{"eigenvalue", io::to_json(e.eigenvalue())}});
    return code;
  } catch (const Error& e) {
    const int code = exit_code(e.kind());
    report_error(err, to_string(e.kind()), e.what(), code);
    return code;
  } catch (const io::json::exception& e) {
    report_error(err, "validation", e.what(), invalid_input);
    return invalid_input;
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what(), numerical_failure);
    return numerical_failure;
  }
}

}  // namespace lqss::cli
