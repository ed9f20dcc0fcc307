#include "z2scars/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "parallel.hpp"
#include "z2scars/basis.hpp"
#include "z2scars/dynamics.hpp"
#include "z2scars/error.hpp"
#include "z2scars/gauge.hpp"
#include "z2scars/hamiltonian.hpp"
#include "z2scars/scan.hpp"
#include "z2scars/scars.hpp"
#include "z2scars/spectral.hpp"
#include "z2scars/tracker.hpp"

namespace z2scars::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Settings {
  std::optional<int> length;
  std::string t;
  double h = 0.5;
  double mu = 1.0;
  std::string sector = "0,+1";
  std::string model = "ising";
  std::string path = "0";
  std::string tower = "antimagnon";
  std::string n;
  int jobs = 1;
  std::string out_dir = ".";
  double trim = kDefaultTrimFraction;
  std::optional<double> threshold;
  std::string config;
  // track
  int lookahead = 10;
  int patience = 20;
  bool adiabatic = false;
  // quench
  double t_max = 50.0;
  double dt = 0.05;
  // scan
  std::string t_range = "0.05:1.5:0.05";
  std::string h_range = "0.05:1.5:0.05";
  double gap_threshold = 0.5;
  double sf_threshold = 0.2;
};

std::string trim_copy(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::bad_arguments, what + ": cannot parse '" + text + "' as a number");
  }
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(trim_copy(item), what));
  if (out.empty()) throw Error(ErrorCode::bad_arguments, what + ": empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  for (const double v : parse_list(text, what)) {
    if (v != std::floor(v)) throw Error(ErrorCode::bad_arguments, what + ": expected integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

double single_value(const std::string& text, double fallback, const std::string& what) {
  if (text.empty()) return fallback;
  const auto values = parse_list(text, what);
  if (values.size() != 1) throw Error(ErrorCode::bad_arguments, what + ": expected a single value");
  return values.front();
}

std::vector<double> parse_range(const std::string& text, const std::string& what) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(parse_double(trim_copy(item), what));
  if (parts.size() == 1) return parts;
  if (parts.size() != 3) throw Error(ErrorCode::bad_arguments, what + ": expected lo:hi:step");
  return linear_grid(parts[0], parts[1], parts[2]);
}

SymmetrySector parse_sector(const std::string& text) {
  const auto comma = text.find(',');
  const std::string k_text = trim_copy(text.substr(0, comma));
  SymmetrySector sector;
  const double k = parse_double(k_text, "--sector");
  if (k != std::floor(k)) throw Error(ErrorCode::bad_arguments, "--sector: momentum must be an integer");
  sector.momentum = static_cast<int>(k);
  sector.parity = Parity::unresolved;
  if (comma != std::string::npos) {
    const std::string p = trim_copy(text.substr(comma + 1));
    if (p == "+1" || p == "1" || p == "+" || p == "even") {
      sector.parity = Parity::even;
    } else if (p == "-1" || p == "-" || p == "odd") {
      sector.parity = Parity::odd;
    } else if (p == "0" || p == "none") {
      sector.parity = Parity::unresolved;
    } else {
      throw Error(ErrorCode::bad_arguments, "--sector: parity must be +1, -1 or none");
    }
  }
  return sector;
}

int parse_tower(const std::string& text) {
  if (text == "magnon" || text == "1") return 1;
  if (text == "antimagnon" || text == "2") return 2;
  throw Error(ErrorCode::unknown_name, "--tower: expected magnon or antimagnon, got '" + text + "'");
}

const char* tower_name(int tower) { return tower == 1 ? "magnon" : "antimagnon"; }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Collects output files and writes the manifest that lists them.
class Run {
 public:
  Run(std::string command, const Settings& s) : command_(std::move(command)), dir_(s.out_dir) {
    started_ = timestamp();
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw Error(ErrorCode::io_failure, "cannot create output directory " + dir_.string() + ": " + ec.message());
  }

  json& parameters() { return parameters_; }
  json& summary() { return summary_; }

  void write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream f(p, std::ios::binary);
    f << content;
    f.close();
    if (!f) throw Error(ErrorCode::io_failure, "cannot write " + p.string());
    outputs_.push_back(name);
  }

  fs::path finish(const std::string& stem) {
    json m;
    m["command"] = command_;
    m["version"] = Z2SCARS_VERSION;
    m["parameters"] = parameters_;
    m["seed"] = nullptr;
    m["started"] = started_;
    m["finished"] = timestamp();
    m["outputs"] = outputs_;
    if (!summary_.is_null()) m["summary"] = summary_;
    const fs::path p = dir_ / (stem + ".manifest.json");
    std::ofstream f(p, std::ios::binary);
    f << m.dump(2) << '\n';
    f.close();
    if (!f) throw Error(ErrorCode::io_failure, "cannot write " + p.string());
    return p;
  }

 private:
  std::string command_;
  fs::path dir_;
  std::string started_;
  json parameters_ = json::object();
  json summary_;
  std::vector<std::string> outputs_;
};

std::ostringstream csv_stream() {
  std::ostringstream os;
  os << std::setprecision(12);
  return os;
}

json sector_json(const SymmetrySector& s) {
  return {{"momentum", s.momentum}, {"parity", static_cast<int>(s.parity)}};
}

template <typename Scalar>
std::vector<double> eigenstate_entropies(const EigenSolution<Scalar>& sol, int length, int jobs) {
  std::vector<double> out(sol.size());
  parallel_for(sol.size(), jobs, [&](std::size_t a) {
    const Vector<Scalar> col = sol.vectors.col(static_cast<Eigen::Index>(a));
    out[a] = entanglement_entropy(sector_to_full(col, *sol.basis), length);
  });
  return out;
}

int cmd_spectrum(const Settings& s, std::ostream& out) {
  const int length = s.length.value_or(8);
  const ModelParams params{single_value(s.t, 0.2, "--t"), s.h, s.mu};
  params.validate();
  Model model;
  if (s.model == "ising") {
    model = Model::ising;
  } else if (s.model == "effective") {
    model = Model::effective;
  } else {
    throw Error(ErrorCode::unknown_name, "--model: expected ising or effective");
  }
  const SymmetrySector sector = parse_sector(s.sector);
  auto basis = std::make_shared<const SectorBasis>(enumerate_sector(length, sector));

  RealVector energies;
  std::vector<double> entropies;
  if (basis->is_real()) {
    const auto sol = diagonalize(build_block<double>(model, params, basis));
    energies = sol.energies;
    entropies = eigenstate_entropies(sol, length, s.jobs);
  } else {
    const auto sol = diagonalize(build_block<Complex>(model, params, basis));
    energies = sol.energies;
    entropies = eigenstate_entropies(sol, length, s.jobs);
  }

  const double reference = s_rmt(length);
  auto os = csv_stream();
  os << "index,energy,entropy,entropy_over_srmt\n";
  for (Eigen::Index a = 0; a < energies.size(); ++a) {
    const double ent = entropies[static_cast<std::size_t>(a)];
    os << a << ',' << energies[a] << ',' << ent << ',' << ent / reference << '\n';
  }

  const std::string stem = "spectrum_L" + std::to_string(length) + "_t" + num(params.t) + "_h" + num(params.h) +
                           "_k" + std::to_string(sector.momentum) + "_p" + std::to_string(static_cast<int>(sector.parity));
  Run run("spectrum", s);
  run.parameters() = {{"L", length}, {"t", params.t}, {"h", params.h}, {"mu", params.mu},
                      {"model", s.model}, {"sector", sector_json(sector)}, {"jobs", s.jobs}};
  run.write(stem + ".csv", os.str());
  run.summary() = {{"dimension", basis->dimension()},
                   {"gap_ratio", gap_ratio({energies.data(), static_cast<std::size_t>(energies.size())}, s.trim)},
                   {"trim", s.trim},
                   {"s_rmt", reference}};
  const auto manifest = run.finish(stem);
  out << "wrote " << (fs::path(s.out_dir) / (stem + ".csv")).string() << " (" << basis->dimension()
      << " states), manifest " << manifest.string() << '\n';
  return 0;
}

double sector_norm(const RealVector& state, const SectorBasis& basis) {
  if (basis.is_real()) return full_to_sector(state, basis).norm();
  return full_to_sector(ComplexVector(state.cast<Complex>()), basis).norm();
}

int cmd_scars(const Settings& s, std::ostream& out) {
  const int length = s.length.value_or(8);
  const int tower = parse_tower(s.tower);
  const ModelParams params{single_value(s.t, 0.0, "--t"), s.h, s.mu};
  params.validate();
  const SymmetrySector sector = parse_sector(s.sector);
  const SectorBasis basis = enumerate_sector(length, sector);

  std::vector<int> ns;
  if (s.n.empty()) {
    for (int n = 0; n <= max_excitations(length); n += 2) ns.push_back(n);
  } else {
    ns = parse_int_list(s.n, "--n");
  }

  auto os = csv_stream();
  os << "n,norm_constant,energy,tower_energy,residual,sector_norm\n";
  const auto dim = static_cast<Eigen::Index>(hilbert_dimension(length));
  for (const int n : ns) {
    const ScarState st = scar_state({tower, n}, length);
    RealVector hs(dim);
    apply_full(Model::effective, params, length, {st.state.data(), static_cast<std::size_t>(st.state.size())},
               {hs.data(), static_cast<std::size_t>(hs.size())});
    const double energy = st.state.dot(hs);
    const double residual = (hs - energy * st.state).norm();
    os << n << ',' << st.norm_constant << ',' << energy << ',' << tower_energy({tower, n}, length, params.h, params.mu)
       << ',' << residual << ',' << sector_norm(st.state, basis) << '\n';
  }

  const std::string stem = std::string("scars_") + tower_name(tower) + "_L" + std::to_string(length) + "_t" +
                           num(params.t) + "_h" + num(params.h);
  Run run("scars", s);
  run.parameters() = {{"L", length}, {"t", params.t}, {"h", params.h}, {"mu", params.mu},
                      {"tower", tower_name(tower)}, {"n", ns}, {"sector", sector_json(sector)}};
  run.write(stem + ".csv", os.str());
  const auto manifest = run.finish(stem);
  out << "wrote " << (fs::path(s.out_dir) / (stem + ".csv")).string() << ", manifest " << manifest.string() << '\n';
  return 0;
}

int cmd_track(const Settings& s, std::ostream& out, std::ostream& err) {
  const int length = s.length.value_or(12);
  const int tower = parse_tower(s.tower);
  const ParameterPath path = preset_path(s.path);
  const std::vector<int> ns = parse_int_list(s.n.empty() ? "4" : s.n, "--n");

  TrackingPolicy policy;
  policy.mu = s.mu;
  policy.lookahead = s.lookahead;
  policy.patience = s.patience;
  policy.diabatic = !s.adiabatic;
  policy.sector = parse_sector(s.sector);
  if (s.threshold) policy.accept_threshold = *s.threshold;

  std::vector<ScarLabel> labels;
  for (const int n : ns) labels.push_back({tower, n});
  const auto records = track_many(path, labels, length, policy);

  const double reference = s_rmt(length);
  Run run("track", s);
  run.parameters() = {{"L", length},
                      {"mu", s.mu},
                      {"path", path.name},
                      {"tower", tower_name(tower)},
                      {"n", ns},
                      {"sector", sector_json(policy.sector)},
                      {"accept_threshold", policy.accept_threshold},
                      {"lookahead", policy.lookahead},
                      {"patience", policy.patience},
                      {"mode", policy.diabatic ? "diabatic" : "adiabatic"}};
  json summary = json::array();
  bool any_lost = false;
  for (const auto& rec : records) {
    auto os = csv_stream();
    os << "step,t,h,energy,entropy,entropy_over_srmt,overlap,eigenindex,accepted,crossing\n";
    for (std::size_t i = 0; i < rec.entries.size(); ++i) {
      const auto& e = rec.entries[i];
      os << i << ',' << e.t << ',' << e.h << ',' << e.energy << ',' << e.entropy << ',' << e.entropy / reference << ','
         << e.overlap << ',' << e.eigenindex << ',' << (e.accepted ? 1 : 0) << ',' << (e.crossing ? 1 : 0) << '\n';
    }
    const std::string name = "track_" + path.name + "_" + tower_name(tower) + std::to_string(rec.label.n) + "_L" +
                             std::to_string(length) + ".csv";
    run.write(name, os.str());
    json item = {{"n", rec.label.n}, {"file", name}, {"steps", rec.entries.size()}, {"lost", rec.lost()}};
    if (rec.lost()) {
      any_lost = true;
      const auto& e = rec.entries[*rec.lost_at];
      item["lost_at"] = {{"t", e.t}, {"h", e.h}};
    }
    if (const auto loss = entropy_loss_point(rec, reference)) {
      item["entropy_loss"] = {{"t", rec.entries[*loss].t}, {"h", rec.entries[*loss].h}};
    }
    item["entropy_spikes"] = entropy_spike_report(rec).size();
    summary.push_back(item);
    out << "wrote " << (fs::path(s.out_dir) / name).string() << '\n';
  }
  run.summary() = summary;
  std::string stem = "track_" + path.name + "_" + tower_name(tower) + "_L" + std::to_string(length);
  for (const int n : ns) stem += "_" + std::to_string(n);
  run.finish(stem);
  if (any_lost) {
    err << "error: " << to_string(ErrorCode::lost_state)
        << ": a tracked state fell below the overlap threshold for more than " << policy.patience
        << " steps; partial tracks were written\n";
    return static_cast<int>(ErrorCode::lost_state);
  }
  return 0;
}

int cmd_quench(const Settings& s, std::ostream& out) {
  const int length = s.length.value_or(12);
  const std::vector<double> ts = parse_list(s.t.empty() ? "0.25,0.3,0.5" : s.t, "--t");
  std::vector<ModelParams> params;
  for (const double t : ts) {
    params.push_back({t, s.h, s.mu});
    params.back().validate();
  }
  const auto times = time_grid(s.t_max, s.dt);
  const auto traces = quench_experiment(params, length, times, s.jobs);

  Run run("quench", s);
  run.parameters() = {{"L", length}, {"t", ts}, {"h", s.h}, {"mu", s.mu}, {"t_max", s.t_max}, {"dt", s.dt}};
  json summary = json::array();
  for (const auto& tr : traces) {
    auto os = csv_stream();
    os << "tau,fidelity\n";
    for (std::size_t i = 0; i < tr.times.size(); ++i) os << tr.times[i] << ',' << tr.fidelity[i] << '\n';
    const std::string name = "quench_L" + std::to_string(length) + "_h" + num(tr.params.h) + "_t" + num(tr.params.t) + ".csv";
    run.write(name, os.str());
    const auto rev = summarize_revivals(tr);
    summary.push_back({{"t", tr.params.t},
                       {"file", name},
                       {"long_time_mean", rev.long_time_mean},
                       {"max_revival", rev.max_peak},
                       {"max_revival_over_mean", rev.max_peak_ratio}});
    out << "wrote " << (fs::path(s.out_dir) / name).string() << '\n';
  }
  run.summary() = summary;
  run.finish("quench_L" + std::to_string(length) + "_h" + num(s.h));
  return 0;
}

int cmd_scan(const Settings& s, std::ostream& out) {
  const int length = s.length.value_or(12);
  ScanThresholds thresholds;
  thresholds.gap_ratio = s.gap_threshold;
  thresholds.structure_factor = s.sf_threshold;
  thresholds.trim_fraction = s.trim;
  if (s.threshold) thresholds.relative_entropy = *s.threshold;
  const auto t_values = parse_range(s.t_range, "--t-range");
  const auto h_values = parse_range(s.h_range, "--h-range");
  const auto points = scan_grid(t_values, h_values, length, thresholds, s.jobs, s.mu);

  auto os = csv_stream();
  os << "t,h,r_mean,s_min_rel,structure_factor,region,confinement\n";
  std::map<std::string, int> counts;
  json overlap = json::array();
  for (const auto& p : points) {
    os << p.t << ',' << p.h << ',' << p.r_mean << ',' << p.s_min_rel << ',' << p.structure_factor << ','
       << to_string(p.region) << ',' << to_string(p.confinement) << '\n';
    ++counts[to_string(p.region)];
    if (p.region == Region::qmbs_possible && p.confinement == Confinement::confined) {
      overlap.push_back({{"t", p.t}, {"h", p.h}});
    }
  }
  const std::string stem = "scan_L" + std::to_string(length);
  Run run("scan", s);
  run.parameters() = {{"L", length},
                      {"mu", s.mu},
                      {"t_values", t_values},
                      {"h_values", h_values},
                      {"thresholds",
                       {{"gap_ratio", thresholds.gap_ratio},
                        {"relative_entropy", thresholds.relative_entropy},
                        {"structure_factor", thresholds.structure_factor},
                        {"trim", thresholds.trim_fraction}}}};
  run.write(stem + ".csv", os.str());
  run.summary() = {{"region_counts", counts}, {"qmbs_possible_and_confined", overlap}};
  run.finish(stem);
  out << "wrote " << (fs::path(s.out_dir) / (stem + ".csv")).string() << " (" << points.size() << " points)\n";
  if (!overlap.empty()) out << "note: " << overlap.size() << " points are both QMBS-possible and CC\n";
  return 0;
}

int cmd_duality(const Settings& s, std::ostream& out) {
  const int length = s.length.value_or(4);
  const ModelParams params{single_value(s.t, 0.3, "--t"), s.h, s.mu};
  const auto report = gauge::validate_duality(params, length, s.threshold.value_or(gauge::kDualityTolerance));
  json attempts = json::array();
  for (const auto& a : report.attempts) {
    attempts.push_back({{"description", a.description}, {"max_mismatch", a.max_mismatch}, {"matched", a.matched}});
  }
  const json doc = {{"matched", report.matched},
                    {"max_gap_mismatch", report.max_gap_mismatch},
                    {"tolerance", report.tolerance},
                    {"sector_bookkeeping", report.sector_bookkeeping},
                    {"attempts", attempts}};
  const std::string stem = "duality_L" + std::to_string(length) + "_t" + num(params.t) + "_h" + num(params.h);
  Run run("validate-duality", s);
  run.parameters() = {{"L", length}, {"t", params.t}, {"h", params.h}, {"mu", params.mu}, {"tolerance", report.tolerance}};
  run.write(stem + ".json", doc.dump(2) + "\n");
  run.finish(stem);
  out << doc.dump(2) << '\n';
  return 0;
}

void apply_config(CLI::App& sub, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::io_failure, "cannot read config file " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  for (const auto& [key, value] : parse_config(buf.str())) {
    CLI::Option* opt = nullptr;
    for (CLI::Option* o : sub.get_options()) {
      if (o->check_lname(key)) opt = o;
    }
    if (opt == nullptr) throw Error(ErrorCode::bad_arguments, "config: unknown key '" + key + "' for " + sub.get_name());
    if (opt->count() > 0) continue;  // command line wins
    opt->add_result(value);
    opt->run_callback();
  }
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_config(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim_copy(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::bad_arguments, "config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim_copy(line.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    out.emplace_back(key, trim_copy(line.substr(eq + 1)));
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  s.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  CLI::App app{"Exact diagonalization of the mixed-field Ising ring and its scar towers", "z2scars"};
  app.set_help_flag("--help", "print this help and exit");
  app.failure_message(CLI::FailureMessage::help);
  app.set_version_flag("--version", std::string(Z2SCARS_VERSION));
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub, bool with_t) {
    sub->add_option("--L", s.length, "chain length (even)");
    if (with_t) sub->add_option("--t", s.t, "transverse field t");
    sub->add_option("--h", s.h, "longitudinal field h")->capture_default_str();
    sub->add_option("--mu", s.mu, "Ising coupling mu")->capture_default_str();
    sub->add_option("--out-dir", s.out_dir, "output directory")->capture_default_str();
    sub->add_option("--config", s.config, "key = value file; command-line flags take precedence");
  };

  auto* spectrum = app.add_subcommand("spectrum",
                                      "Eigenvalues and half-chain entropies of one symmetry block.\n"
                                      "CSV columns: index,energy,entropy,entropy_over_srmt");
  common(spectrum, true);
  spectrum->add_option("--sector", s.sector, "momentum[,parity], parity in {+1,-1,none}")->capture_default_str();
  spectrum->add_option("--model", s.model, "ising or effective")->capture_default_str();
  spectrum->add_option("--trim", s.trim, "fraction dropped at each spectral edge for the gap ratio")->capture_default_str();
  spectrum->add_option("--jobs", s.jobs, "worker threads");

  auto* scars = app.add_subcommand("scars",
                                   "Tower states checked against the effective model.\n"
                                   "CSV columns: n,norm_constant,energy,tower_energy,residual,sector_norm");
  common(scars, true);
  scars->add_option("--tower", s.tower, "magnon or antimagnon")->capture_default_str();
  scars->add_option("--n", s.n, "comma-separated excitation numbers (default: all even n)");
  scars->add_option("--sector", s.sector, "sector for the projection norm")->capture_default_str();

  auto* track = app.add_subcommand("track",
                                   "Follows tower states along a preset path.\n"
                                   "CSV columns: step,t,h,energy,entropy,entropy_over_srmt,overlap,eigenindex,"
                                   "accepted,crossing");
  common(track, false);
  track->add_option("--path", s.path, "0 or I")->capture_default_str();
  track->add_option("--tower", s.tower, "magnon or antimagnon")->capture_default_str();
  track->add_option("--n", s.n, "comma-separated excitation numbers (default 4)");
  track->add_option("--sector", s.sector)->capture_default_str();
  track->add_option("--threshold", s.threshold, "overlap needed to accept a match (default 0.7)");
  track->add_option("--lookahead", s.lookahead, "eigenindex stability window")->capture_default_str();
  track->add_option("--patience", s.patience, "low-overlap steps before a track is lost")->capture_default_str();
  track->add_flag("--adiabatic", s.adiabatic, "replace the reference at every step");

  auto* quench = app.add_subcommand("quench",
                                    "Fidelity of (|S_0^2> + |S_2^2>)/sqrt(2) under the Ising ring.\n"
                                    "One CSV per t with columns: tau,fidelity");
  common(quench, true);
  quench->add_option("--t-max", s.t_max, "final time in units of 1/mu")->capture_default_str();
  quench->add_option("--dt", s.dt, "time step")->capture_default_str();
  quench->add_option("--jobs", s.jobs, "worker threads");

  auto* scan = app.add_subcommand("scan",
                                  "Gap ratio, entropy and confinement labels on a (t, h) grid.\n"
                                  "CSV columns: t,h,r_mean,s_min_rel,structure_factor,region,confinement");
  common(scan, false);
  scan->add_option("--t-range", s.t_range, "lo:hi:step or a single value")->capture_default_str();
  scan->add_option("--h-range", s.h_range, "lo:hi:step or a single value")->capture_default_str();
  scan->add_option("--trim", s.trim)->capture_default_str();
  scan->add_option("--threshold", s.threshold, "S/S_RMT threshold (default 0.5)");
  scan->add_option("--gap-threshold", s.gap_threshold)->capture_default_str();
  scan->add_option("--sf-threshold", s.sf_threshold)->capture_default_str();
  scan->add_option("--jobs", s.jobs, "worker threads");

  auto* duality = app.add_subcommand("validate-duality",
                                     "Compares the Gauss-projected gauge chain with the Ising ring (L <= 6).");
  common(duality, true);
  duality->add_option("--threshold", s.threshold, "spectral tolerance (default 1e-10)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
      return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
      app.exit(e, out, err);
      return static_cast<int>(ErrorCode::bad_arguments);
    }
    CLI::App* chosen = app.get_subcommands().front();
    if (!s.config.empty()) apply_config(*chosen, s.config);
    if (s.jobs < 1) throw Error(ErrorCode::bad_arguments, "--jobs must be >= 1");

    if (chosen == spectrum) return cmd_spectrum(s, out);
    if (chosen == scars) return cmd_scars(s, out);
    if (chosen == track) return cmd_track(s, out, err);
    if (chosen == quench) return cmd_quench(s, out);
    if (chosen == scan) return cmd_scan(s, out);
    return cmd_duality(s, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const CLI::Error& e) {
    err << "error: bad-arguments: " << e.what() << '\n';
    return static_cast<int>(ErrorCode::bad_arguments);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace z2scars::cli
