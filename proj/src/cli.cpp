#include "qcorr/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "qcorr/error.hpp"
#include "qcorr/infotheory.hpp"
#include "qcorr/verify.hpp"

namespace qcorr::cli {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::ParseError, "field '" + field + "': " + what);
}

double number_at(const json& j, const std::string& field) {
  if (!j.is_number()) parse_fail(field, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) parse_fail(field, "number must be finite");
  return x;
}

Complex complex_at(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) parse_fail(field, "expected an [re, im] pair");
  return {number_at(j[0], field + "[0]"), number_at(j[1], field + "[1]")};
}

std::vector<Complex> complex_array(const json& j, const std::string& field) {
  if (!j.is_array()) parse_fail(field, "expected an array of [re, im] pairs");
  std::vector<Complex> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(complex_at(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

const json& required(const json& doc, const std::string& field, const std::string& prefix = "") {
  const auto it = doc.find(field);
  if (it == doc.end()) parse_fail(prefix + field, "missing");
  return *it;
}

std::vector<std::size_t> parse_dims(const json& j) {
  if (!j.is_array() || j.empty()) parse_fail("dims", "expected a non-empty array of integers");
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string field = "dims[" + std::to_string(i) + "]";
    if (!j[i].is_number_integer() || j[i].get<long long>() < 2)
      parse_fail(field, "expected an integer >= 2");
    dims.push_back(j[i].get<std::size_t>());
  }
  return dims;
}

NamedSpec parse_named(const json& doc) {
  const auto& family_j = required(doc, "family");
  if (!family_j.is_string()) parse_fail("family", "expected a string");
  NamedSpec spec{family_j.get<std::string>(), {}, {}};
  const json params = doc.contains("params") ? doc["params"] : json::object();
  if (!params.is_object()) parse_fail("params", "expected an object");
  const auto& f = spec.family;
  if (f == "werner") {
    spec.params.push_back(number_at(required(params, "p", "params."), "params.p"));
  } else if (f == "ghz") {
    spec.params.push_back(number_at(required(params, "n", "params."), "params.n"));
  } else if (f == "bell") {
    if (params.contains("which")) {
      if (!params["which"].is_string()) parse_fail("params.which", "expected a string");
      spec.label = params["which"].get<std::string>();
    }
  } else if (f == "product") {
    const auto& bloch = required(params, "bloch", "params.");
    if (!bloch.is_array()) parse_fail("params.bloch", "expected an array of [x, y, z]");
    for (std::size_t i = 0; i < bloch.size(); ++i) {
      const std::string field = "params.bloch[" + std::to_string(i) + "]";
      if (!bloch[i].is_array() || bloch[i].size() != 3) parse_fail(field, "expected [x, y, z]");
      for (std::size_t c = 0; c < 3; ++c)
        spec.params.push_back(number_at(bloch[i][c], field + "[" + std::to_string(c) + "]"));
    }
  }
  return spec;
}

std::string dims_text(const std::vector<std::size_t>& dims) {
  std::string out = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) out += (i ? ", " : "") + std::to_string(dims[i]);
  return out + "]";
}

std::string complex_text(Complex z) {
  if (z.imag() == 0.0) return format12(z.real());
  return format12(z.real()) + (z.imag() < 0 ? "-" : "+") + format12(std::abs(z.imag())) + "i";
}

std::string matrix_text(const ComplexMatrix& m) {
  std::string out = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += r ? ", [" : "[";
    for (std::size_t c = 0; c < m.cols(); ++c) out += (c ? ", " : "") + complex_text(m(r, c));
    out += "]";
  }
  return out + "]";
}

json complex_json(Complex z) { return json::array({round12(z.real()), round12(z.imag())}); }

json rounded(const std::vector<double>& values) {
  json out = json::array();
  for (double v : values) out.push_back(round12(v));
  return out;
}

void print_config(const OptimizerConfig& c, std::ostream& out) {
  out << "config: grid_theta=" << c.grid_theta << " grid_phi=" << c.grid_phi
      << " restarts=" << c.restarts << " refine_tolerance=" << format12(c.refine_tolerance)
      << " max_refine_steps=" << c.max_refine_steps << " seed=" << c.seed << '\n';
}

void print_measurement(const ProjectiveMeasurement& m, const std::vector<double>& params,
                       std::ostream& out, const std::string& indent) {
  if (m.subsystem_dim() == 2 && params.size() == 2)
    out << indent << "theta = " << format12(params[0]) << " rad, phi = " << format12(params[1])
        << " rad\n";
  for (std::size_t i = 0; i < m.projectors().size(); ++i)
    out << indent << "projector[" << i << "] = " << matrix_text(m.projectors()[i]) << '\n';
}

void print_sequential(const SequentialReport& s, std::ostream& out) {
  out << "order:";
  for (std::size_t k : s.order) out << ' ' << k;
  out << '\n';
  for (std::size_t step = 0; step < s.order.size(); ++step) {
    out << "step " << step + 1 << ": subsystem " << s.order[step]
        << "  D = " << format12(s.step_discords[step]) << '\n';
    print_measurement(s.step_measurements[step], s.step_params[step], out, "  ");
  }
  out << "Q = " << format12(s.q_total) << '\n';
  out << "C = " << format12(s.c_total) << '\n';
  out << "I = " << format12(s.mutual_info) << '\n';
  out << "p_tilde (outcome indices by subsystem):\n";
  const auto& dims = s.classical_table.dims();
  std::vector<std::size_t> outcome(dims.size(), 0);
  for (double p : s.classical_table.probs()) {
    out << ' ';
    for (std::size_t o : outcome) out << ' ' << o;
    out << "  " << format12(p) << '\n';
    for (std::size_t j = dims.size(); j-- > 0;) {
      if (++outcome[j] < dims[j]) break;
      outcome[j] = 0;
    }
  }
  out << "|Q + C - I| = " << format12(s.residual_sum) << '\n';
  out << "|Q - (I - I_cl)| = " << format12(s.residual_classical) << '\n';
}

std::vector<std::size_t> parse_order(const std::string& text, std::size_t parties) {
  std::vector<std::size_t> order;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const long value = std::strtol(item.c_str(), &end, 10);
    if (item.empty() || *end != '\0' || value < 0)
      throw Error(ErrorKind::BadOrder, "order must be a comma-separated list of indices");
    order.push_back(static_cast<std::size_t>(value));
  }
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> expected(parties);
  std::iota(expected.begin(), expected.end(), 0);
  if (sorted != expected)
    throw Error(ErrorKind::BadOrder, "order '" + text + "' is not a permutation of the " +
                                         std::to_string(parties) + " subsystems");
  return order;
}

}  // namespace

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", x);
  return std::strtod(buffer, nullptr);
}

std::string format12(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", x == 0.0 ? 0.0 : x);
  return buffer;
}

StateSpec parse_state_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(byte ? byte - 1 : 0), '\n');
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "state document must be a JSON object");

  StateSpec spec;
  const auto& kind_j = required(doc, "kind");
  if (!kind_j.is_string()) parse_fail("kind", "expected a string");
  const auto kind = kind_j.get<std::string>();
  if (kind != "named" || doc.contains("dims")) spec.dims = parse_dims(required(doc, "dims"));

  if (kind == "dense") {
    const auto& rows = required(doc, "matrix");
    if (!rows.is_array() || rows.empty()) parse_fail("matrix", "expected an array of rows");
    const std::size_t n = rows.size();
    std::vector<Complex> entries;
    for (std::size_t r = 0; r < n; ++r) {
      const auto row = complex_array(rows[r], "matrix[" + std::to_string(r) + "]");
      if (row.size() != n)
        parse_fail("matrix[" + std::to_string(r) + "]", "expected " + std::to_string(n) + " entries");
      entries.insert(entries.end(), row.begin(), row.end());
    }
    spec.payload = DenseSpec{ComplexMatrix(n, n, std::move(entries))};
  } else if (kind == "pure") {
    spec.payload = PureSpec{complex_array(required(doc, "amplitudes"), "amplitudes")};
  } else if (kind == "named") {
    spec.payload = parse_named(doc);
  } else {
    parse_fail("kind", "expected 'dense', 'pure' or 'named', got '" + kind + "'");
  }
  return spec;
}

StateSpec load_state_file(const std::string& path) {
  std::stringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open state file '" + path + "'");
    buffer << in.rdbuf();
  }
  return parse_state_document(buffer.str());
}

json config_json(const OptimizerConfig& c) {
  return {{"grid_theta", c.grid_theta},       {"grid_phi", c.grid_phi},
          {"restarts", c.restarts},           {"refine_tolerance", c.refine_tolerance},
          {"max_refine_steps", c.max_refine_steps}, {"seed", c.seed}};
}

json measurement_json(const ProjectiveMeasurement& m, const std::vector<double>& params) {
  json projectors = json::array();
  for (const auto& p : m.projectors()) {
    json rows = json::array();
    for (std::size_t r = 0; r < p.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < p.cols(); ++c) row.push_back(complex_json(p(r, c)));
      rows.push_back(std::move(row));
    }
    projectors.push_back(std::move(rows));
  }
  json out{{"projectors", std::move(projectors)}, {"params", rounded(params)}};
  if (m.subsystem_dim() == 2 && params.size() == 2) {
    out["theta"] = round12(params[0]);
    out["phi"] = round12(params[1]);
  }
  return out;
}

json table_json(const ProbabilityTable& table) {
  return {{"dims", table.dims()}, {"probs", rounded(table.probs())}};
}

json info_json(const DensityMatrix& rho) {
  std::vector<double> marginals;
  for (std::size_t k = 0; k < rho.num_subsystems(); ++k)
    marginals.push_back(von_neumann_entropy(reduced(rho, {k})));
  json out{{"schema_version", kSchemaVersion},
           {"command", "info"},
           {"dims", rho.dims()},
           {"marginal_entropies", rounded(marginals)},
           {"joint_entropy", round12(von_neumann_entropy(rho))}};
  if (rho.num_subsystems() >= 2) out["mutual_info"] = round12(mutual_information(rho));
  return out;
}

json discord_json(const DensityMatrix& rho, std::size_t k, const OptimalMeasurementResult& result,
                  const OptimizerConfig& config) {
  json out{{"schema_version", kSchemaVersion},
           {"command", "discord"},
           {"dims", rho.dims()},
           {"subsystem", k},
           {"discord", round12(result.discord)},
           {"classical", round12(result.j_value)},
           {"mutual_info", round12(result.mutual_info)},
           {"measurement", measurement_json(result.measurement, result.params)},
           {"iterations", result.iterations},
           {"oracle_gap", result.oracle_gap ? json(round12(*result.oracle_gap)) : json(nullptr)},
           {"config", config_json(config)}};
  return out;
}

json sequential_json(const SequentialReport& s) {
  json steps = json::array();
  for (std::size_t step = 0; step < s.order.size(); ++step) {
    steps.push_back({{"subsystem", s.order[step]},
                     {"discord", round12(s.step_discords[step])},
                     {"measurement", measurement_json(s.step_measurements[step], s.step_params[step])}});
  }
  return {{"order", s.order},
          {"step_discords", rounded(s.step_discords)},
          {"steps", std::move(steps)},
          {"Q", round12(s.q_total)},
          {"C", round12(s.c_total)},
          {"mutual_info", round12(s.mutual_info)},
          {"classical_table", table_json(s.classical_table)},
          {"residuals", {{"q_plus_c_minus_i", round12(s.residual_sum)},
                         {"q_minus_i_minus_icl", round12(s.residual_classical)}}}};
}

void write_sweep_csv(const std::string& family, double from, double to, double step,
                     const OptimizerConfig& config, std::ostream& out) {
  if (family != "werner")
    throw Error(ErrorKind::UnknownFamily,
                "sweep supports the scalar family 'werner', got '" + family + "'");
  if (!(step > 0.0) || !(to >= from))
    throw Error(ErrorKind::ParamOutOfRange, "sweep needs step > 0 and to >= from");
  const auto points = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  out << "param,I,D0,D1,Q,C\n";
  const std::vector<std::size_t> order{0, 1};
  for (std::size_t i = 0; i < points; ++i) {
    const double p = round12(from + static_cast<double>(i) * step);
    const auto rho = werner(std::min(p, 1.0));
    const auto seq = sequential_measure(rho, order, config);
    const double d1 = optimize_measurement(rho, 1, config).discord;
    out << format12(p) << ',' << format12(seq.mutual_info) << ',' << format12(seq.step_discords[0])
        << ',' << format12(d1) << ',' << format12(seq.q_total) << ',' << format12(seq.c_total)
        << '\n';
  }
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("QCORR_SEED")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return value;
  }
  return 0;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qcorr: quantum discord, classical correlations and the sequential overall "
               "quantum (Q) / classical (C) correlation measures. All values in bits."};
  app.footer(
      "State files are JSON: {\"dims\": [2,2], \"kind\": \"dense\"|\"pure\"|\"named\", ...}.\n"
      "Named families: paper_example, bell {which: phi+|phi-|psi+|psi-}, ghz {n},\n"
      "werner {p}, product {bloch: [[x,y,z],...]}, maximally_mixed (uses dims).\n"
      "Werner convention: werner(p) = p |Psi-><Psi-| + (1-p) I/4, |Psi-> = (|01>-|10>)/sqrt2.\n"
      "Exit codes: 0 success, 1 verification failure, 2 input error.");
  app.require_subcommand(1);
  app.fallthrough();

  OptimizerConfig config;
  config.seed = default_seed();
  std::size_t grid = config.grid_theta;
  bool as_json = false;
  app.add_option("--seed", config.seed, "Seed for random starts and verification states "
                                        "(default: QCORR_SEED or 0)");
  app.add_option("--grid", grid, "Qubit grid resolution per angle")->check(CLI::Range(2, 8192));
  app.add_option("--restarts", config.restarts, "Random starts for subsystems with d > 2")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", as_json, "Emit a machine-readable report");

  std::string state_path;
  auto* info = app.add_subcommand("info", "Entropies and mutual information of a state");
  info->add_option("state", state_path, "State file (JSON, '-' for stdin)")->required();

  std::size_t subsystem = 0;
  auto* disc = app.add_subcommand("discord", "Discord and classical correlation for one subsystem");
  disc->add_option("state", state_path, "State file (JSON, '-' for stdin)")->required();
  disc->add_option("--subsystem", subsystem, "Measured subsystem index (0 = A)");

  std::string order_text;
  bool all_orders = false;
  auto* overall = app.add_subcommand("overall", "Sequential overall quantum (Q) and classical (C) "
                                                "correlations");
  overall->add_option("state", state_path, "State file (JSON, '-' for stdin)")->required();
  overall->add_option("--order", order_text, "Measurement order, e.g. 1,0 (default 0,1,...)");
  overall->add_flag("--all-orders", all_orders,
                    "Also evaluate every measurement order (exploration, not the defined measure)");

  std::string family = "werner";
  double from = 0.0, to = 1.0, step = 0.05;
  std::string csv_path;
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep written as CSV");
  sweep->add_option("--family", family, "Scalar state family (werner)");
  sweep->add_option("--from", from, "First parameter value");
  sweep->add_option("--to", to, "Last parameter value");
  sweep->add_option("--step", step, "Parameter step");
  sweep->add_option("--csv", csv_path, "Output CSV path (default: stdout)");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run built-in verification suites");
  verify->add_option("--suite", suite, "paper-example | bounds | oracle | identities | all")
      ->check(CLI::IsMember(verification_suites()));

  std::vector<std::string> storage{"qcorr"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInputError;
  }
  config.grid_theta = config.grid_phi = grid;

  try {
    config.validate();
    if (info->parsed()) {
      const auto rho = realize(load_state_file(state_path));
      if (as_json) {
        out << info_json(rho).dump(2) << '\n';
      } else {
        out << "dims: " << dims_text(rho.dims()) << '\n';
        for (std::size_t k = 0; k < rho.num_subsystems(); ++k)
          out << "S(rho_" << k << ") = " << format12(von_neumann_entropy(reduced(rho, {k}))) << '\n';
        out << "S(rho) = " << format12(von_neumann_entropy(rho)) << '\n';
        if (rho.num_subsystems() >= 2) out << "I = " << format12(mutual_information(rho)) << '\n';
      }
      return kExitOk;
    }
    if (disc->parsed()) {
      const auto rho = realize(load_state_file(state_path));
      const auto result = optimize_measurement(rho, subsystem, config);
      if (as_json) {
        out << discord_json(rho, subsystem, result, config).dump(2) << '\n';
      } else {
        out << "subsystem: " << subsystem << '\n';
        out << "D = " << format12(result.discord) << '\n';
        out << "C_hv = " << format12(result.j_value) << '\n';
        out << "I = " << format12(result.mutual_info) << '\n';
        out << "optimal measurement:\n";
        print_measurement(result.measurement, result.params, out, "  ");
        if (result.oracle_gap) out << "oracle_gap = " << format12(*result.oracle_gap) << '\n';
        out << "iterations = " << result.iterations << '\n';
        print_config(config, out);
      }
      return kExitOk;
    }
    if (overall->parsed()) {
      const auto rho = realize(load_state_file(state_path));
      std::vector<std::size_t> order(rho.num_subsystems());
      std::iota(order.begin(), order.end(), 0);
      if (!order_text.empty()) order = parse_order(order_text, rho.num_subsystems());
      const auto seq = sequential_measure(rho, order, config);
      std::optional<AllOrdersReport> explore;
      if (all_orders) explore = sequential_all_orders(rho, config);
      if (as_json) {
        json doc{{"schema_version", kSchemaVersion},
                 {"command", "overall"},
                 {"dims", rho.dims()},
                 {"sequential", sequential_json(seq)},
                 {"config", config_json(config)}};
        if (explore) {
          json rows = json::array();
          for (const auto& r : explore->reports) rows.push_back(sequential_json(r));
          doc["all_orders"] = {{"note", "exploration over measurement orders"},
                               {"reports", std::move(rows)},
                               {"q_min", round12(explore->q_min)},
                               {"q_max", round12(explore->q_max)},
                               {"discrepancy", round12(explore->q_max - explore->q_min)}};
        }
        out << doc.dump(2) << '\n';
      } else {
        print_sequential(seq, out);
        if (explore) {
          out << "all orders (exploration; Q is defined by the order above):\n";
          for (const auto& r : explore->reports) {
            out << "  order";
            for (std::size_t k : r.order) out << ' ' << k;
            out << "  Q = " << format12(r.q_total) << "  C = " << format12(r.c_total) << '\n';
          }
          out << "  Q_min = " << format12(explore->q_min) << '\n';
          out << "  discrepancy (Q_max - Q_min) = " << format12(explore->q_max - explore->q_min)
              << '\n';
        }
        print_config(config, out);
      }
      return kExitOk;
    }
    if (sweep->parsed()) {
      if (csv_path.empty()) {
        write_sweep_csv(family, from, to, step, config, out);
      } else {
        std::ofstream file(csv_path);
        if (!file) throw Error(ErrorKind::ParseError, "cannot write '" + csv_path + "'");
        write_sweep_csv(family, from, to, step, config, file);
      }
      return kExitOk;
    }
    if (verify->parsed()) {
      const auto checks = run_verification(suite, config.seed, config);
      print_checks(checks, out);
      const bool ok = std::all_of(checks.begin(), checks.end(),
                                  [](const CheckResult& c) { return c.passed; });
      return ok ? kExitOk : kExitVerificationFailed;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace qcorr::cli
