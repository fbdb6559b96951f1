#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "treepack/certificate.hpp"
#include "treepack/documents.hpp"
#include "treepack/functree.hpp"
#include "treepack/packing.hpp"
#include "treepack/solver.hpp"

namespace treepack::cli {

namespace {

using nlohmann::json;

// Input problems map to the usage exit code; everything else is a failure.
int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotComplete:
    case ErrorKind::NotAutomorphism:
      return kExitFailure;
    default:
      return kExitUsage;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ValidationError, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorKind::ValidationError, "write to '" + path + "' failed");
}

struct Common {
  bool as_json = false;
  std::string output;
};

// A document goes to -o when given, into the report under --json, and to
// stdout otherwise.
void deliver(const Common& common, std::ostream& out, json& report, const char* key,
             const std::string& text) {
  if (!common.output.empty()) {
    write_file(common.output, text);
    report["output"] = common.output;
  } else if (common.as_json) {
    report[key] = json::parse(text, nullptr, false).is_discarded() ? json(text)
                                                                    : json::parse(text);
  } else {
    out << text;
  }
}

void finish(const Common& common, std::ostream& out, std::ostream& err, const json& report,
            const std::string& summary) {
  if (common.as_json) {
    out << report.dump(2) << '\n';
  } else if (!summary.empty()) {
    err << summary;
  }
}

template <typename F>
void parallel_for(std::uint64_t count, std::size_t workers, F&& body) {
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t i; (i = next.fetch_add(1)) < count;) body(i);
  };
  if (workers <= 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
}

json entry_json(const SweepEntry& e) {
  return json{{"family-index", e.index},
              {"status", std::string(to_string(e.status))},
              {"nodes", e.nodes},
              {"millis", e.millis}};
}

struct SelfCheck {
  const char* name;
  bool ok;
};

std::vector<SelfCheck> selftest_checks() {
  std::vector<SelfCheck> checks;
  bool stars = true;
  for (std::size_t n = 1; n <= 30; ++n) {
    stars = stars && is_complete(star_family(n), star_identity_labeling(n));
  }
  checks.push_back({"star identity labelings complete for n <= 30", stars});

  const auto r4 = sweep(4, SolveConfig{});
  checks.push_back({"sweep n = 4 packs 12 of 12", r4.packed == 12 && r4.entries.size() == 12});

  const auto f2 = FamilyEnumerator(2).unrank(0);
  checks.push_back({"n = 2 phi-sum and lattice representatives agree",
                    canonical_rep(f2, RepMode::PhiSum) == canonical_rep(f2, RepMode::Lattice)});

  bool nonvanishing = true;
  for (const auto& f : FamilyEnumerator(3)) nonvanishing = nonvanishing && nonvanishing_equivalence_check(f);
  checks.push_back({"n = 3 nonvanishing equivalence", nonvanishing});

  checks.push_back({"n = 4 composition implication",
                    composition_implication_check(4).violations.empty()});
  return checks;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"treepack: functional tree packing into K_n"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common common;
  auto add_common = [&](CLI::App* cmd, bool with_output) {
    cmd->add_flag("--json", common.as_json, "machine-readable report on stdout");
    if (with_output) cmd->add_option("-o,--output", common.output, "output path");
  };

  std::uint64_t seed = kDefaultSeed;
  std::size_t n = 0;
  std::size_t parallel = 1;
  std::optional<std::int64_t> time_limit_ms;
  bool classical = false;
  std::string order_name = "largest-first";
  bool no_pruning = false;
  auto add_solver = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "restart tie-break seed");
    cmd->add_option("--time-limit-ms", time_limit_ms, "per-family time limit")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--classical-mode", classical, "ignore loops (roots may share vertices)");
    cmd->add_option("--order", order_name, "largest-first | smallest-first | composition-guided");
    cmd->add_flag("--no-symmetry-pruning", no_pruning);
  };
  auto solver_config = [&] {
    SolveConfig c;
    c.order = parse_tree_order(order_name);
    c.time_limit_ms = time_limit_ms;
    c.symmetry_pruning = !no_pruning;
    c.seed = seed;
    c.classical_mode = classical;
    return c;
  };

  // gen
  auto* gen = app.add_subcommand("gen", "generate a family");
  std::string kind_name = "random-recursive";
  gen->add_option("--n", n, "family size")->required()->check(CLI::PositiveNumber);
  gen->add_option("--kind", kind_name, "star | path | caterpillar | random-recursive | random-uniform");
  gen->add_option("--seed", seed, "generator seed");
  add_common(gen, true);

  // pack
  auto* pack_cmd = app.add_subcommand("pack", "search for a complete labeling");
  std::string family_path;
  pack_cmd->add_option("family", family_path, "family document")->required();
  add_solver(pack_cmd);
  add_common(pack_cmd, true);

  // verify
  auto* verify = app.add_subcommand("verify", "check a labeling against a family");
  std::string labeling_path;
  std::string orientation_format;
  verify->add_option("family", family_path)->required();
  verify->add_option("labeling", labeling_path)->required();
  verify->add_flag("--classical-mode", classical);
  verify->add_option("--orientation", orientation_format, "emit the orientation as dot | json")
      ->check(CLI::IsMember({"dot", "json"}));
  add_common(verify, true);

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "list families, or Phi of one family");
  bool with_phi = false;
  bool full = false;
  enumerate->add_option("family", family_path, "family document (enumerates its Phi)");
  enumerate->add_option("--n", n, "list every family of size n")->check(CLI::PositiveNumber);
  enumerate->add_flag("--phi", with_phi, "with --n: attach each family's essential Phi count");
  enumerate->add_flag("--full", full, "all of Phi rather than one member per essential class");
  enumerate->add_option("--parallel", parallel)->check(CLI::PositiveNumber);
  add_common(enumerate, true);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "pack every family of size n");
  std::size_t max_n = SweepOptions{}.max_n;
  sweep_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--parallel", parallel)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--max-n", max_n, "exhaustive bound");
  add_solver(sweep_cmd);
  add_common(sweep_cmd, true);

  // certify
  auto* certify = app.add_subcommand("certify", "canonical certificate representative");
  std::string mode_name = "phi-sum";
  certify->add_option("family", family_path)->required();
  certify->add_option("--mode", mode_name)->check(CLI::IsMember({"phi-sum", "lattice"}));
  add_common(certify, true);

  // compose
  auto* compose_cmd = app.add_subcommand("compose", "square a family or locally compose one slot");
  std::optional<std::size_t> local_slot;
  compose_cmd->add_option("family", family_path)->required();
  compose_cmd->add_option("--local", local_slot, "slot to locally compose instead of squaring");
  add_common(compose_cmd, true);

  // selftest
  auto* selftest = app.add_subcommand("selftest", "quick internal consistency checks");
  add_common(selftest, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    json report;
    if (gen->parsed()) {
      const auto family = generate_family(parse_tree_kind(kind_name), n, seed);
      report = {{"command", "gen"}, {"kind", kind_name}, {"n", n}, {"seed", seed}};
      deliver(common, out, report, "family", emit_family(family));
      finish(common, out, err, report, "seed " + std::to_string(seed) + "\n");
      return kExitOk;
    }

    if (pack_cmd->parsed()) {
      const auto family = parse_family(read_file(family_path));
      const auto config = solver_config();
      const auto result = pack(family, config);
      report = {{"command", "pack"},
                {"n", family.n()},
                {"status", std::string(to_string(result.status))},
                {"nodes", result.nodes_expanded},
                {"attempts", result.attempts},
                {"millis", std::chrono::duration<double, std::milli>(result.elapsed).count()},
                {"seed", seed},
                {"symmetry-factor", result.symmetry_factor.get_str()}};
      if (result.labeling) deliver(common, out, report, "labeling", emit_labeling(*result.labeling));
      std::ostringstream summary;
      summary << to_string(result.status) << " after " << result.nodes_expanded
              << " nodes (seed " << seed << ")\n";
      if (result.status == SolveStatus::Exhausted) {
        summary << "search space exhausted modulo a symmetry factor of "
                << result.symmetry_factor.get_str() << "; rerun with --no-symmetry-pruning\n";
      }
      finish(common, out, err, report, summary.str());
      return result.status == SolveStatus::Packed ? kExitOk : kExitFailure;
    }

    if (verify->parsed()) {
      const auto family = parse_family(read_file(family_path));
      const auto labeling = parse_labeling(read_file(labeling_path));
      if (labeling.n() != family.n()) {
        throw Error(ErrorKind::DimensionMismatch, "labeling and family sizes differ");
      }
      const auto mode = classical ? LoopMode::Classical : LoopMode::Functional;
      const bool ok = is_complete(family, labeling, mode);
      report = {{"command", "verify"},
                {"n", family.n()},
                {"mode", classical ? "classical" : "functional"},
                {"complete", ok}};
      if (ok && !orientation_format.empty()) {
        const auto fmt = orientation_format == "dot" ? OrientationFormat::Dot : OrientationFormat::Json;
        deliver(common, out, report, "orientation", emit_orientation(orientation(family, labeling), fmt));
      }
      finish(common, out, err, report, ok ? "complete\n" : "not complete\n");
      return ok ? kExitOk : kExitFailure;
    }

    if (enumerate->parsed()) {
      if (family_path.empty() == (n == 0)) {
        throw Error(ErrorKind::ValidationError, "give either a family document or --n");
      }
      std::ostringstream docs;
      if (!family_path.empty()) {
        const auto family = parse_family(read_file(family_path));
        const auto phi = phi_enumerate(family, full ? PhiMode::Full : PhiMode::Essential);
        for (const auto& m : phi.members) docs << emit_labeling(m);
        report = {{"command", "enumerate"},
                  {"n", family.n()},
                  {"mode", full ? "full" : "essential"},
                  {"essential-count", phi.essential_count},
                  {"full-count", phi.full_count.get_str()}};
        if (!common.output.empty()) {
          write_file(common.output, docs.str());
          report["output"] = common.output;
        } else if (common.as_json) {
          json members = json::array();
          for (const auto& m : phi.members) members.push_back(json::parse(emit_labeling(m)));
          report["members"] = members;
        } else {
          out << docs.str();
        }
        finish(common, out, err, report,
               "essential " + std::to_string(phi.essential_count) + ", |Phi| " +
                   phi.full_count.get_str() + "\n");
        return kExitOk;
      }
      const FamilyEnumerator families(n);
      std::vector<std::string> lines(families.count());
      std::vector<std::uint64_t> counts(families.count(), 0);
      parallel_for(families.count(), parallel, [&](std::uint64_t i) {
        const auto f = families.unrank(i);
        lines[i] = emit_family(f);
        if (with_phi) {
          counts[i] = phi_enumerate(f, PhiMode::Essential, LoopMode::Functional, {}, false).essential_count;
        }
      });
      report = {{"command", "enumerate"}, {"n", n}, {"families", families.count()}};
      json per_family = json::array();
      for (std::uint64_t i = 0; i < families.count(); ++i) {
        if (with_phi) {
          std::string line = lines[i];
          line.pop_back();  // trailing newline
          line.pop_back();  // closing brace
          docs << line << ", \"phi-essential\": " << counts[i] << "}\n";
        } else {
          docs << lines[i];
        }
        if (common.as_json && common.output.empty()) {
          auto doc = json::parse(lines[i]);
          if (with_phi) doc["phi-essential"] = counts[i];
          per_family.push_back(doc);
        }
      }
      if (!common.output.empty()) {
        write_file(common.output, docs.str());
        report["output"] = common.output;
      } else if (common.as_json) {
        report["entries"] = per_family;
      } else {
        out << docs.str();
      }
      finish(common, out, err, report, std::to_string(families.count()) + " families\n");
      return kExitOk;
    }

    if (sweep_cmd->parsed()) {
      SweepOptions options;
      options.max_n = max_n;
      options.workers = parallel;
      const auto r = sweep(n, solver_config(), options);
      report = {{"command", "sweep"},
                {"n", n},
                {"families", r.entries.size()},
                {"packed", r.packed},
                {"exhausted", r.exhausted},
                {"timed-out", r.timed_out},
                {"max-nodes", r.max_nodes},
                {"wall-millis", r.wall_millis},
                {"seed", seed},
                {"falsification-candidates", r.falsification_candidates}};
      if (!common.output.empty()) {
        write_file(common.output, sweep_csv(r));
        report["output"] = common.output;
      } else if (common.as_json) {
        json entries = json::array();
        for (const auto& e : r.entries) entries.push_back(entry_json(e));
        report["entries"] = entries;
      } else {
        out << sweep_csv(r);
      }
      std::ostringstream summary;
      summary << r.packed << "/" << r.entries.size() << " Packed, " << r.exhausted
              << " Exhausted, " << r.timed_out << " TimedOut, max nodes " << r.max_nodes
              << " (seed " << seed << ")\n";
      finish(common, out, err, report, summary.str());
      return r.packed == r.entries.size() ? kExitOk : kExitFailure;
    }

    if (certify->parsed()) {
      const auto family = parse_family(read_file(family_path));
      const auto mode = mode_name == "lattice" ? RepMode::Lattice : RepMode::PhiSum;
      const auto rep = canonical_rep(family, mode);
      const auto phi = phi_enumerate(family, PhiMode::Essential, LoopMode::Functional, {}, false);
      const bool equivalent = rep.is_zero() == (phi.essential_count == 0);
      report = {{"command", "certify"},
                {"n", family.n()},
                {"mode", mode_name},
                {"terms", rep.size()},
                {"nonzero", !rep.is_zero()},
                {"phi-full-count", phi.full_count.get_str()},
                {"equivalence-holds", equivalent}};
      deliver(common, out, report, "polynomial", to_text(rep, family.n()));
      finish(common, out, err, report,
             std::to_string(rep.size()) + " terms, |Phi| " + phi.full_count.get_str() + "\n");
      return equivalent && !rep.is_zero() ? kExitOk : kExitFailure;
    }

    if (compose_cmd->parsed()) {
      const auto family = parse_family(read_file(family_path));
      AugTreeFamily result = family;
      if (local_slot) {
        if (*local_slot >= family.n()) throw Error(ErrorKind::OutOfRange, "--local slot");
        result = family.with_tree(*local_slot, local_compose(family.tree(*local_slot)));
      } else {
        result = compose_square(family);
      }
      report = {{"command", "compose"}, {"n", family.n()}};
      if (local_slot) report["local-slot"] = *local_slot;
      deliver(common, out, report, "family", emit_family(result));
      finish(common, out, err, report, "");
      return kExitOk;
    }

    if (selftest->parsed()) {
      const auto checks = selftest_checks();
      bool all = true;
      json list = json::array();
      std::ostringstream text;
      for (const auto& c : checks) {
        all = all && c.ok;
        list.push_back({{"check", c.name}, {"ok", c.ok}});
        text << (c.ok ? "PASS " : "FAIL ") << c.name << '\n';
      }
      if (common.as_json) {
        out << json{{"command", "selftest"}, {"checks", list}, {"ok", all}}.dump(2) << '\n';
      } else {
        out << text.str();
      }
      return all ? kExitOk : kExitFailure;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace treepack::cli
