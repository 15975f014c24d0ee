#include "montyq/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "montyq/catalog.hpp"
#include "montyq/envelope.hpp"
#include "montyq/games.hpp"
#include "montyq/qcore.hpp"
#include "montyq/server.hpp"
#include "montyq/teleport.hpp"

namespace montyq::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string decimal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string decimal(const Rational& r) { return decimal(to_double(r)); }

Rational parse_flag(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError("--" + flag + ": " + e.what());
  }
}

void print_table(std::ostream& out, const OutputEnvelope& e) {
  out << e.command;
  if (e.parameters.is_object())
    for (const auto& [k, v] : e.parameters.items()) out << "  " << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump());
  out << '\n';
  std::size_t width = 0;
  for (const auto& [k, _] : e.exact_results) width = std::max(width, k.size());
  for (const auto& [k, _] : e.float_results) width = std::max(width, k.size());
  for (const auto& [k, v] : e.exact_results)
    out << "  " << std::left << std::setw(static_cast<int>(width)) << k << "  " << std::setw(12) << to_string(v)
        << "  " << decimal(v) << '\n';
  for (const auto& [k, v] : e.float_results)
    out << "  " << std::left << std::setw(static_cast<int>(width)) << k << "  " << std::setw(12) << "~" << "  "
        << decimal(v) << '\n';
}

void emit(std::ostream& out, const OutputEnvelope& e, bool json) {
  if (json)
    out << to_json(e).dump(2) << '\n';
  else
    print_table(out, e);
}

void print_born_text(std::ostream& out) {
  const auto t = qcore::born_matrix();
  out << std::left << std::setw(8) << "" ;
  for (int i = 1; i <= 4; ++i) out << std::setw(8) << ("phi" + std::to_string(i));
  out << '\n';
  for (std::size_t h = 0; h < 4; ++h) {
    out << std::setw(8) << ("psi" + std::to_string(h + 1));
    for (std::size_t i = 0; i < 4; ++i) out << std::setw(8) << to_string(t.at(h, i));
    out << '\n';
  }
}

struct GameFlags {
  std::string game;
  std::string q1, q2, q3;
  int state = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("game", game, "Game name")->required()->check(CLI::IsMember(catalog::game_names()));
    cmd->add_option("--q1", q1, "psi-epistemic deformation of the first 1/4 door (num/den)");
    cmd->add_option("--q2", q2, "psi-epistemic deformation of the second 1/4 door (num/den)");
    cmd->add_option("--q3", q3, "psi-epistemic deformation of the 1/2 door (num/den)");
    cmd->add_option("--state", state, "Preparation state 1..4 for the psi games")->check(CLI::Range(1, 4));
  }

  catalog::GameRequest request() const {
    catalog::GameRequest r{game, std::nullopt, state};
    if (!q1.empty() || !q2.empty() || !q3.empty()) {
      if (game != "psi-epistemic") throw UsageError("--q1/--q2/--q3 apply only to psi-epistemic");
      games::EpistemicParams p;
      if (!q1.empty()) p.q1 = parse_flag("q1", q1);
      if (!q2.empty()) p.q2 = parse_flag("q2", q2);
      if (!q3.empty()) p.q3 = parse_flag("q3", q3);
      r.params = p;
    }
    return r;
  }
};

std::array<Rational, 3> parse_split(std::string text) {
  if (text == "equal") return {1, 1, 1};
  std::erase(text, '(');
  std::erase(text, ')');
  std::array<Rational, 3> ratio;
  std::stringstream ss(text);
  std::string part;
  std::size_t n = 0;
  while (std::getline(ss, part, ',')) {
    if (n == 3) throw UsageError("--split takes three ratios");
    ratio[n++] = parse_flag("split", part);
  }
  if (n != 3) throw UsageError("--split takes 'equal' or three ratios r1,r2,r3");
  return ratio;
}

std::string csv_cell(const std::optional<Rational>& r) {
  if (!r) return "";
  return to_string(*r) + " (" + decimal(*r) + ")";
}

int default_port() {
  if (const char* env = std::getenv("MONTYQ_PORT")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("MONTYQ_PORT is not a port number: ") + env);
    }
  }
  return 8080;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact analysis and simulation of Monty Hall games and their quantum variants", "montyq"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  GameFlags analyze_flags;
  bool analyze_json = false, analyze_table = false;
  auto* analyze = app.add_subcommand("analyze", "Exact enumeration of a catalog game");
  analyze_flags.attach(analyze);
  auto* json_flag = analyze->add_flag("--json", analyze_json, "Emit the JSON envelope");
  analyze->add_flag("--table", analyze_table, "Emit aligned text (default)")->excludes(json_flag);

  GameFlags sim_flags;
  std::string sim_strategy = "switch";
  std::uint64_t sim_trials = 1'000'000, sim_seed = 1;
  bool sim_json = false;
  auto* simulate = app.add_subcommand("simulate", "Seeded Monte Carlo run of a catalog game");
  sim_flags.attach(simulate);
  simulate->add_option("--strategy", sim_strategy, "stick | switch | random")
      ->check(CLI::IsMember({"stick", "switch", "random"}));
  simulate->add_option("--trials", sim_trials, "Number of games")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim_seed, "64-bit seed");
  simulate->add_flag("--json", sim_json, "Emit the JSON envelope");

  std::string q_from = "0", q_to = "1/2", split = "equal", sweep_out;
  std::size_t steps = 8;
  int sweep_state = 1;
  auto* sweep = app.add_subcommand("sweep", "Tabulate psi-epistemic stick/switch over a q grid as CSV");
  sweep->add_option("--q-from", q_from, "First q (num/den)");
  sweep->add_option("--q-to", q_to, "Last q (num/den)");
  sweep->add_option("--steps", steps, "Number of intervals; the grid has steps+1 rows")->check(CLI::PositiveNumber);
  sweep->add_option("--split", split, "equal | r1,r2,r3 ratios for (q1,q2,q3)");
  sweep->add_option("--out", sweep_out, "CSV path (stdout when omitted)");
  sweep->add_option("--state", sweep_state, "Preparation state 1..4")->check(CLI::Range(1, 4));

  bool born_json = false;
  auto* born = app.add_subcommand("born-matrix", "Exact Born probabilities of the PBR states and basis");
  born->add_flag("--json", born_json, "Emit the JSON envelope");

  auto* teleport_cmd = app.add_subcommand("teleport", "Teleportation games");
  teleport_cmd->require_subcommand(1);
  std::string tele_mode = "monty", tele_bell = "00";
  bool tele_json = false;
  auto* tele_analyze = teleport_cmd->add_subcommand("analyze", "Exact Monty or lost-bit analysis");
  tele_analyze->add_option("--mode", tele_mode, "monty | unreliable")->check(CLI::IsMember({"monty", "unreliable"}));
  tele_analyze->add_option("--bell", tele_bell, "Bell label for the unreliable channel")
      ->check(CLI::IsMember({"00", "01", "10", "11"}));
  tele_analyze->add_flag("--json", tele_json, "Emit the JSON envelope");
  std::string tsim_mode = "standard", tsim_strategy = "switch";
  std::uint64_t tsim_trials = 100'000, tsim_seed = 1;
  bool tsim_json = false;
  auto* tele_sim = teleport_cmd->add_subcommand("simulate", "State-vector simulation of a teleportation mode");
  tele_sim->add_option("--mode", tsim_mode, "standard | monty | unreliable")
      ->check(CLI::IsMember({"standard", "monty", "unreliable"}));
  tele_sim->add_option("--strategy", tsim_strategy, "stick | switch | random")
      ->check(CLI::IsMember({"stick", "switch", "random"}));
  tele_sim->add_option("--trials", tsim_trials, "Number of runs")->check(CLI::PositiveNumber);
  tele_sim->add_option("--seed", tsim_seed, "64-bit seed");
  tele_sim->add_flag("--json", tsim_json, "Emit the JSON envelope");

  server::ServerOptions serve_opts;
  std::string static_dir, transcript;
  long idle_timeout = 3600;
  int port = -1;
  auto* serve = app.add_subcommand("serve", "Run the HTTP session service (port defaults to $MONTYQ_PORT or 8080)");
  serve->add_option("--host", serve_opts.host, "Bind address");
  serve->add_option("--port", port, "TCP port");
  serve->add_option("--static-dir", static_dir, "Directory of web UI assets to serve at /");
  serve->add_option("--transcript", transcript, "Append session events as JSON lines to this file");
  serve->add_option("--idle-timeout", idle_timeout, "Seconds before an idle session expires")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*analyze) {
      emit(out, analysis_envelope(analyze_flags.request()), analyze_json);
    } else if (*simulate) {
      emit(out, simulation_envelope(sim_flags.request(), engine::parse_strategy(sim_strategy), sim_trials, sim_seed),
           sim_json);
    } else if (*sweep) {
      const Rational from = parse_flag("q-from", q_from);
      const Rational to = parse_flag("q-to", q_to);
      const auto ratio = parse_split(split);
      std::vector<games::EpistemicParams> grid;
      for (std::size_t k = 0; k <= steps; ++k) {
        const Rational q = from + (to - from) * Rational(BigInt(k), BigInt(steps));
        grid.push_back(games::split_q(q, ratio));
      }
      const auto rows = games::sweep_epistemic(grid, sweep_state);
      std::ofstream file;
      if (!sweep_out.empty()) {
        file.open(sweep_out);
        if (!file) throw std::runtime_error("cannot write " + sweep_out);
      }
      std::ostream& csv = sweep_out.empty() ? out : file;
      csv << "q,stick,switch,advantage\n";
      bool all_ok = true;
      for (const auto& row : rows) {
        csv << to_string(row.q()) << " (" << decimal(row.q()) << ")," << csv_cell(row.stick) << ','
            << csv_cell(row.switching) << ',' << csv_cell(row.advantage) << '\n';
        if (!row.ok()) {
          all_ok = false;
          err << "q=" << to_string(row.q()) << ": " << row.error << '\n';
        }
      }
      return all_ok ? kExitOk : kExitValidation;
    } else if (*born) {
      if (born_json)
        emit(out, born_envelope(), true);
      else
        print_born_text(out);
    } else if (*tele_analyze) {
      if (tele_mode == "monty") {
        auto e = analysis_envelope({"monty-teleport", std::nullopt, 1});
        e.command = "teleport analyze";
        e.parameters["mode"] = "monty";
        emit(out, e, tele_json);
      } else {
        emit(out, unreliable_envelope(teleport::parse_bits(tele_bell)), tele_json);
      }
    } else if (*tele_sim) {
      emit(out,
           teleport_simulation_envelope(teleport::parse_mode(tsim_mode), engine::parse_strategy(tsim_strategy),
                                        tsim_trials, tsim_seed),
           tsim_json);
    } else if (*serve) {
      serve_opts.port = port >= 0 ? port : default_port();
      if (!static_dir.empty()) serve_opts.static_dir = static_dir;
      if (!transcript.empty()) serve_opts.sessions.transcript_path = transcript;
      serve_opts.sessions.idle_timeout = std::chrono::seconds(idle_timeout);
      server::HttpServer http(serve_opts);
      const int bound = http.bind();
      err << "montyq " << version() << " listening on http://" << serve_opts.host << ':' << bound << '\n';
      http.serve();
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const engine::InvalidGameSpec& e) {
    for (const auto& v : e.violations()) err << "violation: " << v.to_string() << '\n';
    return kExitValidation;
  } catch (const std::out_of_range& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace montyq::cli
