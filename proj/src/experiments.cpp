#include "rissr/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "rissr/errors.hpp"
#include "rissr/numerics.hpp"

namespace rissr {

namespace {

constexpr const char* kResultsHeader = "# rissr results v1";
constexpr const char* kSummaryHeader = "# rissr summary v1";

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_safe(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}

struct Entry {
  std::size_t line;
  std::string key;
  std::string value;
};

double to_double(const Entry& e, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw ParseError(e.line, e.key, "expected a number, got '" + text + "'");
  }
  return v;
}

double to_double(const Entry& e) { return to_double(e, e.value); }

long long to_int(const Entry& e) {
  long long v = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || e.value.empty()) {
    throw ParseError(e.line, e.key, "expected an integer, got '" + e.value + "'");
  }
  return v;
}

bool to_bool(const Entry& e) {
  if (e.value == "true" || e.value == "1") return true;
  if (e.value == "false" || e.value == "0") return false;
  throw ParseError(e.line, e.key, "expected true or false");
}

std::vector<double> to_list(const Entry& e) {
  std::vector<double> out;
  for (const auto& item : split(e.value, ',')) out.push_back(to_double(e, item));
  return out;
}

// A single value applies to every user; a list must have one value per user.
void set_per_user(const Entry& e, std::vector<double>& field, std::size_t users) {
  const auto values = to_list(e);
  if (values.size() == 1) {
    field.assign(users, values.front());
  } else if (values.size() == users) {
    field = values;
  } else {
    throw ParseError(e.line, e.key, "expected 1 or " + std::to_string(users) + " values");
  }
}

void apply_entry(Scenario& s, const Entry& e) {
  SystemConfig& c = s.system;
  FadingParams& f = s.fading;
  ExperimentSpec& x = s.experiment;
  const std::string& k = e.key;
  const std::size_t K = c.K();
  try {
    if (k == "K" || k == "figure") {
      // handled before the other keys
    } else if (k == "M") {
      c.antennas = static_cast<int>(to_int(e));
    } else if (k == "N") {
      c.elements = static_cast<int>(to_int(e));
    } else if (k == "Q") {
      c.symbols_per_secondary = static_cast<int>(to_int(e));
    } else if (k == "B") {
      c.bandwidth = to_double(e);
    } else if (k == "noise_power") {
      c.noise_power = to_double(e);
    } else if (k == "noise_power_dbm") {
      c.noise_power = std::pow(10.0, (to_double(e) - 30.0) / 10.0);
    } else if (k == "T") {
      c.cycle = to_double(e);
    } else if (k == "alpha") {
      c.alpha = to_double(e);
    } else if (k == "v_p") {
      set_per_user(e, c.user_sense_rate, K);
    } else if (k == "v_s") {
      set_per_user(e, c.ris_sense_rate, K);
    } else if (k == "p_sense") {
      set_per_user(e, c.sense_cost, K);
    } else if (k == "E_max") {
      set_per_user(e, c.energy_max, K);
    } else if (k == "kappa_l") {
      c.kappa = to_double(e);
    } else if (k == "C") {
      c.cycles_per_bit = to_double(e);
    } else if (k == "phase_mode") {
      c.phase_mode = PhaseMode::parse(e.value);
    } else if (k == "user_radius") {
      s.geometry.user_radius = to_double(e);
    } else if (k == "beta0") {
      f.beta0 = to_double(e);
    } else if (k == "beta0_db") {
      f.beta0 = std::pow(10.0, to_double(e) / 10.0);
    } else if (k == "alpha_ub") {
      f.alpha_ub = to_double(e);
    } else if (k == "alpha_ur") {
      f.alpha_ur = to_double(e);
    } else if (k == "alpha_rb") {
      f.alpha_rb = to_double(e);
    } else if (k == "K1") {
      f.K1 = to_double(e);
    } else if (k == "K2") {
      f.K2 = to_double(e);
    } else if (k == "sweep") {
      x.axis = parse_axis(e.value);
    } else if (k == "values") {
      x.values = to_list(e);
    } else if (k == "trials") {
      x.trials = static_cast<int>(to_int(e));
    } else if (k == "seed") {
      x.seed = static_cast<std::uint64_t>(to_int(e));
    } else if (k == "schemes") {
      x.schemes.clear();
      for (const auto& name : split(e.value, ',')) x.schemes.push_back(parse_scheme(name));
    } else if (k == "out") {
      x.out_dir = e.value;
    } else if (k == "traces") {
      x.write_traces = to_bool(e);
    } else if (k == "threads") {
      x.threads = static_cast<int>(to_int(e));
    } else if (k == "max_iters") {
      x.ao.max_iters = static_cast<int>(to_int(e));
    } else if (k == "rel_tol") {
      x.ao.rel_tol = to_double(e);
    } else if (k == "phase_solver") {
      if (e.value == "element") {
        x.ao.phase_solver = PhaseSolver::kElementwise;
      } else if (e.value == "sdr") {
        x.ao.phase_solver = PhaseSolver::kSdr;
      } else {
        throw ParseError(e.line, k, "expected element or sdr");
      }
    } else if (k == "phase_sweeps") {
      x.ao.phase_sweeps = static_cast<int>(to_int(e));
    } else if (k == "stop_on") {
      if (e.value == "f1") {
        x.ao.stop_on = StopOn::kSurrogate;
      } else if (e.value == "objective") {
        x.ao.stop_on = StopOn::kObjective;
      } else {
        throw ParseError(e.line, k, "expected f1 or objective");
      }
    } else if (k == "sdr_trials") {
      x.ao.sdr.trials = static_cast<int>(to_int(e));
    } else if (k == "sdr_max_iters") {
      x.ao.sdr.max_iters = static_cast<int>(to_int(e));
    } else if (k == "sdr_tol") {
      x.ao.sdr.tol = to_double(e);
    } else if (k == "sdr_rho") {
      x.ao.sdr.rho = to_double(e);
    } else {
      throw ParseError(e.line, k, "unknown key");
    }
  } catch (const ValidationError& err) {
    throw ParseError(e.line, k, err.what());
  }
}

std::vector<Entry> tokenize(const std::string& text) {
  std::vector<Entry> entries;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(line, "", "expected key = value");
    Entry e{line, trim(body.substr(0, eq)), trim(body.substr(eq + 1))};
    if (e.key.empty()) throw ParseError(line, "", "missing key");
    entries.push_back(std::move(e));
  }
  return entries;
}

void write_frontier(const std::filesystem::path& path, const std::vector<ResultRow>& rows,
                    const std::vector<Scheme>& schemes, const std::vector<double>& points) {
  std::ofstream out(path);
  out << kResultsHeader << " frontier\n";
  out << "scheme,class,grid_alpha,crossing\n";
  for (Scheme sc : schemes) {
    std::vector<double> su, sr, st, cu, cr, ct, alphas;
    for (double a : points) {
      std::vector<double> vals[4];
      for (const auto& r : rows) {
        if (r.scheme != sc || r.sweep_value != a || !r.error.empty()) continue;
        vals[0].push_back(r.sensed_user);
        vals[1].push_back(r.sensed_ris);
        vals[2].push_back(r.sum_R_p);
        vals[3].push_back(r.sum_R_s);
      }
      if (vals[0].empty()) continue;
      alphas.push_back(a);
      su.push_back(mean_std(vals[0]).first);
      sr.push_back(mean_std(vals[1]).first);
      cu.push_back(mean_std(vals[2]).first);
      cr.push_back(mean_std(vals[3]).first);
      st.push_back(su.back() + sr.back());
      ct.push_back(cu.back() + cr.back());
    }
    const std::pair<const char*, Frontier> classes[] = {
        {"users", feasibility_frontier(alphas, su, cu)},
        {"ris", feasibility_frontier(alphas, sr, cr)},
        {"total", feasibility_frontier(alphas, st, ct)},
    };
    for (const auto& [name, f] : classes) {
      out << scheme_name(sc) << ',' << name << ',' << fmt(f.grid_alpha) << ',' << fmt(f.crossing) << '\n';
    }
  }
}

}  // namespace

std::string axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::kNone: return "none";
    case SweepAxis::kElements: return "N";
    case SweepAxis::kEnergy: return "E_max";
    case SweepAxis::kAlpha: return "alpha";
  }
  return "none";
}

SweepAxis parse_axis(std::string_view name) {
  if (name == "none") return SweepAxis::kNone;
  if (name == "N") return SweepAxis::kElements;
  if (name == "E_max") return SweepAxis::kEnergy;
  if (name == "alpha") return SweepAxis::kAlpha;
  throw ValidationError("unknown sweep axis '" + std::string(name) + "' (none, N, E_max, alpha)");
}

std::vector<double> ExperimentSpec::points() const {
  if (axis == SweepAxis::kNone) return {0.0};
  return values;
}

void ExperimentSpec::validate() const {
  if (axis != SweepAxis::kNone && values.empty()) throw ValidationError("sweep needs at least one value");
  if (trials < 1) throw ValidationError("trials >= 1");
  if (schemes.empty()) throw ValidationError("at least one scheme");
  if (threads < 0) throw ValidationError("threads >= 0");
  ao.validate();
  for (double v : values) {
    if (axis == SweepAxis::kElements && (v < 1 || v != std::floor(v))) {
      throw ValidationError("N sweep values must be positive integers");
    }
    if (axis == SweepAxis::kAlpha && !(v >= 0.0 && v <= 1.0)) throw ValidationError("alpha in [0, 1]");
    if (axis == SweepAxis::kEnergy && !(v >= 0.0)) throw ValidationError("E_max >= 0");
  }
}

void apply_figure_preset(Scenario& s, std::string_view figure) {
  ExperimentSpec& x = s.experiment;
  SystemConfig& c = s.system;
  c.elements = 100;
  c.alpha = 0.4;
  c.set_energy_max(10.0);
  x.write_traces = false;
  if (figure == "custom") {
    x.figure = "custom";
    return;
  }
  if (figure == "fig3") {
    x.axis = SweepAxis::kNone;
    x.values.clear();
    x.schemes = {Scheme::kProposed, Scheme::kProposedSdr};
    x.trials = 10;
    x.write_traces = true;
  } else if (figure == "fig4") {
    x.axis = SweepAxis::kAlpha;
    x.values.clear();
    for (int i = 0; i <= 10; ++i) x.values.push_back((25 + 5 * i) / 100.0);
    x.schemes = {Scheme::kProposed};
    x.trials = 20;
  } else if (figure == "fig5") {
    x.axis = SweepAxis::kElements;
    x.values = {20, 40, 60, 80, 100};
    x.schemes = {Scheme::kProposed, Scheme::kProposedSdr, Scheme::kWithoutSr, Scheme::kRandomPhase,
                 Scheme::kWithoutRis};
    x.trials = 50;
  } else if (figure == "fig6") {
    x.axis = SweepAxis::kEnergy;
    x.values = {2, 4, 6, 8, 10};
    x.schemes = {Scheme::kProposed, Scheme::kProposedSdr, Scheme::kWithoutSr, Scheme::kRandomPhase,
                 Scheme::kWithoutRis, Scheme::kLocalOnly, Scheme::kRandomBeta};
    x.trials = 50;
  } else if (figure == "fig7") {
    x.axis = SweepAxis::kEnergy;
    x.values = {2, 4, 6, 8, 10};
    x.schemes = {Scheme::kProposed, Scheme::kWithoutSr};
    x.trials = 50;
  } else {
    throw ValidationError("unknown figure '" + std::string(figure) + "' (fig3..fig7, custom)");
  }
  x.figure = std::string(figure);
}

Scenario parse_config(const std::string& text, std::optional<std::string> figure_override) {
  const std::vector<Entry> entries = tokenize(text);
  Scenario s;
  std::optional<std::string> figure = figure_override;
  for (const auto& e : entries) {
    if (e.key == "figure" && !figure) figure = e.value;
  }
  for (const auto& e : entries) {
    if (e.key != "K") continue;
    const long long k = to_int(e);
    if (k < 1) throw ParseError(e.line, "K", "K >= 1");
    s.system.set_users(static_cast<int>(k));
    const double radius = s.geometry.user_radius;
    s.geometry = Geometry::reference(static_cast<int>(k));
    s.geometry.user_radius = radius;
  }
  if (figure) {
    try {
      apply_figure_preset(s, *figure);
    } catch (const ValidationError& err) {
      std::size_t line = 0;
      for (const auto& e : entries) {
        if (e.key == "figure") line = e.line;
      }
      throw ParseError(line, "figure", err.what());
    }
  }
  for (const auto& e : entries) apply_entry(s, e);

  s.system.validate();
  s.geometry.validate(s.system.K());
  s.fading.validate();
  s.experiment.validate();
  return s;
}

Scenario load_config(const std::filesystem::path& path, std::optional<std::string> figure_override) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(figure_override));
}

SystemConfig config_at(const Scenario& s, double value) {
  SystemConfig c = s.system;
  switch (s.experiment.axis) {
    case SweepAxis::kNone: break;
    case SweepAxis::kElements: c.elements = static_cast<int>(value); break;
    case SweepAxis::kEnergy: c.set_energy_max(value); break;
    case SweepAxis::kAlpha: c.alpha = value; break;
  }
  return c;
}

std::uint64_t trial_seed(std::uint64_t root, int trial) {
  return derive_seed(root, {static_cast<std::uint64_t>(trial)});
}

const std::vector<std::string>& summary_columns() {
  static const std::vector<std::string> cols{"objective",   "sum_R_p",    "sum_R_s",
                                             "sum_local",   "sensed_user", "sensed_ris",
                                             "iterations",  "mean_beta"};
  return cols;
}

std::pair<double, double> mean_std(const std::vector<double>& xs) {
  if (xs.empty()) throw EmptyInput("mean of no values");
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= static_cast<double>(xs.size());
  return {mean, std::sqrt(var)};
}

void write_results_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows,
                       SweepAxis axis) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << kResultsHeader << '\n';
  out << "axis,sweep_value,trial,seed,scheme,objective,sum_R_p,sum_R_s,sum_local,sensed_user,"
         "sensed_ris,iterations,converged,mean_beta,c4_user_ok,c4_ris_ok,error\n";
  for (const auto& r : rows) {
    out << axis_name(axis) << ',' << fmt(r.sweep_value) << ',' << r.trial << ',' << r.seed << ','
        << scheme_name(r.scheme) << ',' << fmt(r.objective) << ',' << fmt(r.sum_R_p) << ','
        << fmt(r.sum_R_s) << ',' << fmt(r.sum_local) << ',' << fmt(r.sensed_user) << ','
        << fmt(r.sensed_ris) << ',' << r.iterations << ',' << int(r.converged) << ','
        << fmt(r.mean_beta) << ',' << int(r.c4_user_ok) << ',' << int(r.c4_ris_ok) << ','
        << csv_safe(r.error) << '\n';
  }
}

ExperimentOutput run_experiment(const Scenario& scenario) {
  const ExperimentSpec& x = scenario.experiment;
  x.validate();
  const std::vector<double> points = x.points();
  const std::size_t jobs = points.size() * static_cast<std::size_t>(x.trials);
  std::vector<std::vector<ResultRow>> slots(jobs);

  const auto run_job = [&](std::size_t job) {
    const std::size_t point = job / static_cast<std::size_t>(x.trials);
    const int trial = static_cast<int>(job % static_cast<std::size_t>(x.trials));
    const double value = points[point];
    const std::uint64_t seed = trial_seed(x.seed, trial);
    std::vector<ResultRow>& out = slots[job];
    std::optional<ChannelSet> channels;
    std::string channel_error;
    SystemConfig cfg = config_at(scenario, value);
    try {
      channels = sample_channels(scenario.geometry, scenario.fading, cfg, seed);
    } catch (const Error& e) {
      channel_error = e.what();
    }
    for (Scheme sc : x.schemes) {
      ResultRow row;
      row.sweep_value = value;
      row.trial = trial;
      row.seed = seed;
      row.scheme = sc;
      const auto start = std::chrono::steady_clock::now();
      if (!channels) {
        row.error = channel_error;
      } else {
        try {
          AOSettings ao = x.ao;
          ao.seed = seed;
          const SchemeResult r = run_scheme(sc, cfg, *channels, ao);
          const Metrics& m = r.metrics;
          row.objective = m.objective;
          row.sum_R_p = m.sum_R_p();
          row.sum_R_s = m.sum_R_s();
          row.sum_local = m.sum_local();
          row.sensed_user = m.sum_M_p();
          row.sensed_ris = m.sum_M_s();
          row.iterations = r.trace.iterations();
          row.converged = r.trace.converged;
          row.mean_beta = r.mean_beta;
          row.c4_user_ok = std::all_of(m.c4_user_ok.begin(), m.c4_user_ok.end(), [](bool b) { return b; });
          row.c4_ris_ok = std::all_of(m.c4_ris_ok.begin(), m.c4_ris_ok.end(), [](bool b) { return b; });
          if (x.write_traces) row.trace = r.trace;
        } catch (const Error& e) {
          row.error = e.what();
        }
      }
      row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      out.push_back(std::move(row));
    }
  };

  unsigned workers = x.threads > 0 ? static_cast<unsigned>(x.threads) : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs)));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t job; (job = next.fetch_add(1)) < jobs;) run_job(job);
    });
  }
  for (auto& t : pool) t.join();

  ExperimentOutput result;
  for (auto& slot : slots) {
    for (auto& row : slot) result.rows.push_back(std::move(row));
  }

  const std::filesystem::path dir(x.out_dir);
  std::filesystem::create_directories(dir);
  result.results_csv = dir / "results.csv";
  write_results_csv(result.results_csv, result.rows, x.axis);

  {
    std::ofstream out(dir / "timing.csv", std::ios::binary);
    out << "sweep_value,trial,scheme,wall_ms\n";
    for (const auto& r : result.rows) {
      out << fmt(r.sweep_value) << ',' << r.trial << ',' << scheme_name(r.scheme) << ',' << fmt(r.wall_ms) << '\n';
    }
  }
  if (x.write_traces) {
    std::ofstream out(dir / "trace.csv", std::ios::binary);
    out << kResultsHeader << " trace\n";
    out << "sweep_value,trial,scheme,iteration,surrogate,objective,sum_R_p,sum_R_s,sum_local\n";
    for (const auto& r : result.rows) {
      for (const auto& t : r.trace.rows) {
        double rp = 0.0, rs = 0.0, loc = 0.0;
        for (double v : t.R_p) rp += v;
        for (double v : t.R_s) rs += v;
        for (double v : t.local_bits) loc += v;
        out << fmt(r.sweep_value) << ',' << r.trial << ',' << scheme_name(r.scheme) << ',' << t.iteration
            << ',' << fmt(t.surrogate) << ',' << fmt(t.objective) << ',' << fmt(rp) << ',' << fmt(rs)
            << ',' << fmt(loc) << '\n';
      }
    }
  }
  if (x.axis == SweepAxis::kAlpha) write_frontier(dir / "frontier.csv", result.rows, x.schemes, points);
  const bool any_ok = std::any_of(result.rows.begin(), result.rows.end(),
                                  [](const ResultRow& r) { return r.error.empty(); });
  if (any_ok) summarize(dir);
  return result;
}

std::vector<SummaryRow> summarize_file(const std::filesystem::path& results_csv) {
  std::ifstream in(results_csv);
  if (!in) throw EmptyInput("cannot read " + results_csv.string());
  std::string line;
  std::vector<std::string> header;
  std::map<std::string, std::size_t> index;
  const auto& cols = summary_columns();

  struct Group {
    std::string scheme;
    double sweep;
    std::vector<std::vector<double>> values;
  };
  std::vector<Group> groups;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split(line, ',');
    if (header.empty()) {
      header = fields;
      for (std::size_t i = 0; i < header.size(); ++i) index[header[i]] = i;
      for (const char* needed : {"scheme", "sweep_value", "error"}) {
        if (!index.count(needed)) throw ParseError(lineno, needed, "missing column");
      }
      for (const auto& c : cols) {
        if (!index.count(c)) throw ParseError(lineno, c, "missing column");
      }
      continue;
    }
    if (fields.size() != header.size()) throw ParseError(lineno, "", "wrong number of fields");
    if (!fields[index["error"]].empty()) continue;
    const Entry sweep_entry{lineno, "sweep_value", fields[index["sweep_value"]]};
    const double sweep = to_double(sweep_entry);
    const std::string& scheme = fields[index["scheme"]];
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const Group& g) { return g.scheme == scheme && g.sweep == sweep; });
    if (it == groups.end()) {
      groups.push_back({scheme, sweep, std::vector<std::vector<double>>(cols.size())});
      it = groups.end() - 1;
    }
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const Entry e{lineno, cols[c], fields[index[cols[c]]]};
      it->values[c].push_back(to_double(e));
    }
  }
  if (groups.empty()) throw EmptyInput("no successful rows in " + results_csv.string());

  // Schemes in order of first appearance, sweep values ascending.
  std::vector<std::string> scheme_order;
  for (const auto& g : groups) {
    if (std::find(scheme_order.begin(), scheme_order.end(), g.scheme) == scheme_order.end()) {
      scheme_order.push_back(g.scheme);
    }
  }
  std::stable_sort(groups.begin(), groups.end(), [&](const Group& a, const Group& b) {
    const auto ra = std::find(scheme_order.begin(), scheme_order.end(), a.scheme);
    const auto rb = std::find(scheme_order.begin(), scheme_order.end(), b.scheme);
    if (ra != rb) return ra < rb;
    return a.sweep < b.sweep;
  });

  std::vector<SummaryRow> out;
  for (const auto& g : groups) {
    SummaryRow s;
    s.scheme = g.scheme;
    s.sweep_value = g.sweep;
    s.count = static_cast<int>(g.values.front().size());
    for (const auto& v : g.values) {
      const auto [m, sd] = mean_std(v);
      s.mean.push_back(m);
      s.stddev.push_back(sd);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<SummaryRow> summarize(const std::filesystem::path& dir) {
  const auto rows = summarize_file(dir / "results.csv");
  std::ofstream out(dir / "summary.csv", std::ios::binary);
  out << kSummaryHeader << '\n' << "scheme,sweep_value,count";
  for (const auto& c : summary_columns()) out << ",mean_" << c << ",std_" << c;
  out << '\n';
  for (const auto& r : rows) {
    out << r.scheme << ',' << fmt(r.sweep_value) << ',' << r.count;
    for (std::size_t c = 0; c < r.mean.size(); ++c) out << ',' << fmt(r.mean[c]) << ',' << fmt(r.stddev[c]);
    out << '\n';
  }
  return rows;
}

}  // namespace rissr
