#include "qgraph/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <future>
#include <ostream>

#include <CLI11.hpp>

#include "qgraph/serialize.hpp"

namespace qgraph::cli {

namespace {

using io::json;

struct Config {
  double tol = 1e-9;
  bool tol_given = false;
  std::string out;
  int jobs = 1;
};

Tolerance resolve_tolerance(const Config& cfg) {
  if (cfg.tol_given) return Tolerance(cfg.tol);
  if (const char* env = std::getenv("QGRAPH_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0') throw ShapeError("QGRAPH_TOL is not a number");
    return Tolerance(v);
  }
  return Tolerance{};
}

// Runs fn over the inputs with at most `jobs` in flight; results keep input order.
std::vector<json> map_files(const std::vector<std::string>& files, int jobs, const std::function<json(const std::string&)>& fn) {
  std::vector<json> results(files.size());
  const std::size_t width = static_cast<std::size_t>(std::max(1, jobs));
  for (std::size_t start = 0; start < files.size(); start += width) {
    std::vector<std::future<json>> batch;
    const std::size_t end = std::min(files.size(), start + width);
    for (std::size_t i = start; i < end; ++i)
      batch.push_back(std::async(width > 1 ? std::launch::async : std::launch::deferred, fn, files[i]));
    for (std::size_t i = start; i < end; ++i) results[i] = batch[i - start].get();
  }
  return results;
}

// One file yields its own document, several yield {"pass", "results": [...]}.
json collect(const std::vector<std::string>& files, const std::vector<json>& docs) {
  if (docs.size() == 1) return docs.front();
  json results = json::array();
  bool all = true;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    all = all && docs[i].value("pass", true);
    results.push_back({{"file", files[i]}, {"result", docs[i]}});
  }
  return {{"pass", all}, {"results", results}};
}

// Strategy files may be a bare strategy or a coloring document that embeds one.
json strategy_doc(const json& j) { return j.contains("strategy") ? j["strategy"] : j; }

BlockStrategy load_strategy(const std::string& path) {
  const json j = io::read_file(path);
  return io::strategy_from_json(strategy_doc(j), j.contains("strategy") ? "/strategy" : "");
}

QuantumGraph load_source(const std::string& graph_path, const std::string& strategy_path) {
  if (!graph_path.empty()) return io::graph_from_json(io::read_file(graph_path));
  const json j = io::read_file(strategy_path);
  if (!j.contains("source")) throw ShapeError("no --graph given and the strategy file carries no \"source\" graph");
  return io::graph_from_json(j["source"], "/source");
}

ClassicalGraph load_target(const std::string& target_path, int complete, Index c) {
  if (!target_path.empty()) return io::classical_graph_from_json(io::read_file(target_path));
  return complete_graph(complete > 0 ? complete : static_cast<int>(c));
}

void require_clean_ancilla(const BlockStrategy& s, Tolerance tol) {
  const Report r = check_block_strategy(s, tol);
  const Check* blocks = r.find("ancilla_blocks");
  if (blocks && !blocks->pass) throw ShapeError("strategy entries do not respect the ancilla block structure");
}

json coloring_doc(const BlockStrategy& s, const VnAlgebra& m, const std::string& model, Tolerance tol) {
  json doc = {{"colors", s.c},
              {"model", model},
              {"source", io::to_json(complete_quantum_graph(m))},
              {"strategy", io::to_json(s)},
              {"loc_residual", loc_residual(s)}};
  try {
    doc["rigidity"] = io::to_json(rigidity_check(s, m, tol));
  } catch (const DomainError& e) {
    doc["rigidity"] = nullptr;
    doc["rigidity_error"] = e.what();
  }
  return doc;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum graph homomorphism and coloring toolkit", "qgraph"};
  app.fallthrough();
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--tol", cfg.tol, "Absolute Frobenius tolerance (overrides QGRAPH_TOL)")
      ->check(CLI::PositiveNumber)
      ->each([&](const std::string&) { cfg.tol_given = true; });
  app.add_option("--out", cfg.out, "Write the JSON report here instead of stdout");
  app.add_option("--jobs", cfg.jobs, "Worker count across independent input files")->check(CLI::PositiveNumber);

  std::vector<std::string> files;
  std::string file, graph_path, target_path, strategy_path, f_path, algebra_path, method, from, mode = "structural";
  int complete = 0;
  Index d = 1, k = 2;

  auto* validate_cmd = app.add_subcommand("validate", "Check the quantum graph axioms");
  validate_cmd->add_option("files", files, "Quantum graph JSON files")->required()->check(CLI::ExistingFile);

  auto* edge_cmd = app.add_subcommand("edge-basis", "Quantum edge basis of a quantum graph");
  edge_cmd->add_option("file", file)->required()->check(CLI::ExistingFile);

  auto* dilate_cmd = app.add_subcommand("dilate", "Dilate a (block) POVM to a PVM");
  dilate_cmd->add_option("file", file, "{\"n\": int, \"povm\": [matrix]}")->required()->check(CLI::ExistingFile);

  auto* round_cmd = app.add_subcommand("round-pvm", "Round an almost-PVM to an exact PVM");
  round_cmd->add_option("file", file, "{\"ops\": [matrix]}")->required()->check(CLI::ExistingFile);

  auto* color_cmd = app.add_subcommand("color", "Build an explicit coloring");
  color_cmd->add_option("--method", method)->required()->check(CLI::IsMember({"teleport", "shift-multiply", "abelian-loc"}));
  color_cmd->add_option("--d", d, "Multiplicity for --method teleport")->check(CLI::PositiveNumber);
  color_cmd->add_option("--k", k, "Block size for --method teleport")->check(CLI::PositiveNumber);
  color_cmd->add_option("--algebra", algebra_path, "VnAlgebra JSON for the other methods")->check(CLI::ExistingFile);

  auto add_game_options = [&](CLI::App* cmd) {
    cmd->add_option("--strategy", strategy_path, "BlockStrategy or coloring JSON")->required()->check(CLI::ExistingFile);
    cmd->add_option("--graph", graph_path, "Source quantum graph (defaults to the strategy file's source)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--target", target_path, "Target classical graph")->check(CLI::ExistingFile);
    cmd->add_option("--complete", complete, "Use K_c as the target")->check(CLI::PositiveNumber);
  };
  auto* verify_cmd = app.add_subcommand("verify-hom", "Verify a homomorphism-game strategy");
  add_game_options(verify_cmd);
  verify_cmd->add_option("--mode", mode)->check(CLI::IsMember({"structural", "operational", "both", "algebra"}));

  auto* corr_cmd = app.add_subcommand("correlation", "Correlation tensor of a strategy");
  corr_cmd->add_option("--from", from)->required()->check(CLI::IsMember({"trace", "tensor"}));
  corr_cmd->add_option("file", file, "BlockStrategy (trace or tensor) or TensorStrategy (tensor)")->required()->check(CLI::ExistingFile);

  auto* sync_cmd = app.add_subcommand("check-sync", "Synchronicity criterion");
  sync_cmd->add_option("files", files)->required()->check(CLI::ExistingFile);
  auto* ident_cmd = app.add_subcommand("identities", "The four synchronous-correlation identities");
  ident_cmd->add_option("files", files)->required()->check(CLI::ExistingFile);
  auto* compress_cmd = app.add_subcommand("compress", "Classical correlation on diagonal inputs");
  compress_cmd->add_option("file", file)->required()->check(CLI::ExistingFile);
  auto* embed_cmd = app.add_subcommand("embed", "Embed classical inputs (correlation or POVM families)");
  embed_cmd->add_option("file", file, "ClassicalCorrelation or {\"families\": [[matrix]]}")->required()->check(CLI::ExistingFile);
  auto* bisync_cmd = app.add_subcommand("bisync", "Bisynchronicity of a classical correlation");
  bisync_cmd->add_option("files", files)->required()->check(CLI::ExistingFile);

  auto* channel_cmd = app.add_subcommand("extract-channel", "Kraus/Choi form of a winning strategy");
  add_game_options(channel_cmd);

  auto* compose_cmd = app.add_subcommand("compose", "Compose a strategy with a Hom(K_c, K_r) representation");
  compose_cmd->add_option("--strategy", strategy_path)->required()->check(CLI::ExistingFile);
  compose_cmd->add_option("--graph", graph_path)->check(CLI::ExistingFile);
  compose_cmd->add_option("--f", f_path, "{\"ancilla\", \"f\": [[matrix]]} or {\"r\": int, \"map\": [int]}")
      ->required()
      ->check(CLI::ExistingFile);

  auto* bounds_cmd = app.add_subcommand("bounds", "Certified chromatic upper bounds");
  bounds_cmd->add_option("file", file)->required()->check(CLI::ExistingFile);

  auto* chrom_cmd = app.add_subcommand("classical-chromatic", "Exact chromatic number by exhaustive search");
  chrom_cmd->add_option("files", files)->required()->check(CLI::ExistingFile);

  std::vector<std::string> argv_store{"qgraph"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Exit::pass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return Exit::pass;
  } catch (const CLI::ParseError& e) {
    err << "qgraph: " << e.what() << '\n';
    return Exit::malformed;
  }

  auto emit = [&](const json& doc) {
    if (cfg.out.empty())
      out << doc.dump(2) << '\n';
    else
      io::write_file(cfg.out, doc);
  };
  auto verdict = [](bool ok) { return ok ? Exit::pass : Exit::fail; };

  try {
    const Tolerance tol = resolve_tolerance(cfg);

    if (validate_cmd->parsed()) {
      const auto docs = map_files(files, cfg.jobs, [&](const std::string& f) { return io::to_json(validate(io::graph_from_json(io::read_file(f)), tol)); });
      const json doc = collect(files, docs);
      emit(doc);
      return verdict(doc["pass"].get<bool>());
    }
    if (edge_cmd->parsed()) {
      emit(io::to_json(edge_basis(io::graph_from_json(io::read_file(file)), tol)));
      return Exit::pass;
    }
    if (dilate_cmd->parsed()) {
      const json j = io::read_file(file);
      const Index n = j.contains("n") ? j["n"].get<Index>() : 1;
      if (n < 1) throw io::SchemaError("/n", "n must be >= 1");
      const auto q = io::matrices_from_json(j.contains("povm") ? j["povm"] : json(), "/povm");
      if (q.front().rows() % n != 0) throw io::SchemaError("/povm/0", "operator size is not a multiple of n");
      const Index h = q.front().rows() / n;
      const auto c = static_cast<Index>(q.size());
      const auto p = dilate_block_povm(q, n, tol);
      BlockStrategy s{n, c, TracialAncilla::matrix_block((c + 1) * h), p};
      const CMatrix v = dilation_corner(c, h);
      double corner = 0.0;
      for (Index a = 0; a < c; ++a)
        for (Index i = 0; i < n; ++i)
          for (Index jj = 0; jj < n; ++jj)
            corner = std::max(corner, (v.adjoint() * s.cell(a, i, jj) * v - q[a].block(i * h, jj * h, h, h)).norm());
      const auto m = check_measurement(p, tol);
      emit({{"pass", m.is_pvm && corner <= tol.eps}, {"corner_residual", corner}, {"pvm", io::to_json(m)}, {"strategy", io::to_json(s)}});
      return verdict(m.is_pvm && corner <= tol.eps);
    }
    if (round_cmd->parsed()) {
      const json j = io::read_file(file);
      if (!j.contains("ops")) throw io::SchemaError("/ops", "missing required field");
      const auto r = round_almost_pvm(io::matrices_from_json(j["ops"], "/ops"), tol);
      json ps = json::array();
      for (const auto& p : r.projections) ps.push_back(io::to_json(p));
      emit({{"projections", ps}, {"distance", r.distance}, {"input", io::to_json(r.input)}});
      return Exit::pass;
    }
    if (color_cmd->parsed()) {
      if (method == "teleport") {
        const BlockStrategy s = teleport_coloring(d, k);
        const VnAlgebra m({{d, k}});
        const json doc = coloring_doc(s, m, "q", tol);
        emit(doc);
        return Exit::pass;
      }
      if (algebra_path.empty()) throw ShapeError("--algebra is required for --method " + method);
      const VnAlgebra m = io::algebra_from_json(io::read_file(algebra_path));
      const BlockStrategy s = method == "shift-multiply" ? shift_multiply_coloring(m) : abelian_loc_coloring(m);
      emit(coloring_doc(s, m, method == "abelian-loc" ? "loc" : "q", tol));
      return Exit::pass;
    }
    if (verify_cmd->parsed() || channel_cmd->parsed()) {
      const BlockStrategy s = load_strategy(strategy_path);
      require_clean_ancilla(s, tol);
      const GameInstance inst{load_source(graph_path, strategy_path), load_target(target_path, complete, s.c)};
      if (channel_cmd->parsed()) {
        const ChannelRep ch = extract_channel(inst, s, tol);
        json doc = io::to_json(ch);
        doc["pass"] = ch.report.pass;
        emit(doc);
        return verdict(ch.report.pass);
      }
      Report rep;
      if (mode == "structural") rep = verify_structural(inst, s, tol);
      else if (mode == "operational") rep = verify_operational(inst, s, tol);
      else if (mode == "algebra") rep = check_game_algebra_rep(inst, s, tol);
      else {
        const auto eb = edge_basis(inst.source, tol);
        const Report a = verify_structural(inst, eb, s, tol);
        const Report b = verify_operational(inst, eb, s, tol);
        for (auto c : a.checks) c.name = "structural." + c.name, rep.add(c);
        for (auto c : b.checks) c.name = "operational." + c.name, rep.add(c);
        Check agree{"agreement", a.pass == b.pass, 0.0, std::nullopt};
        if (!agree.pass) agree.witness = Witness{};
        rep.add(agree);
      }
      emit(io::to_json(rep));
      return verdict(rep.pass);
    }
    if (corr_cmd->parsed()) {
      const json j = io::read_file(file);
      Correlation x;
      if (from == "trace") {
        const BlockStrategy s = io::strategy_from_json(strategy_doc(j), j.contains("strategy") ? "/strategy" : "");
        require_clean_ancilla(s, tol);
        x = correlation_from_trace(s);
      } else if (j.contains("alice")) {
        x = correlation_from_tensor(io::tensor_strategy_from_json(j));
      } else {
        const BlockStrategy s = io::strategy_from_json(strategy_doc(j), j.contains("strategy") ? "/strategy" : "");
        require_clean_ancilla(s, tol);
        x = correlation_from_tensor(bob_from_alice(s));
      }
      emit(io::to_json(x));
      return Exit::pass;
    }
    if (sync_cmd->parsed() || ident_cmd->parsed()) {
      const bool sync = sync_cmd->parsed();
      const auto docs = map_files(files, cfg.jobs, [&](const std::string& f) {
        const Correlation x = io::correlation_from_json(io::read_file(f));
        return io::to_json(sync ? check_synchronous(x, tol) : synchronous_identities(x, tol));
      });
      const json doc = collect(files, docs);
      emit(doc);
      return verdict(doc["pass"].get<bool>());
    }
    if (compress_cmd->parsed()) {
      emit(io::to_json(compress_to_classical(io::correlation_from_json(io::read_file(file)), tol)));
      return Exit::pass;
    }
    if (embed_cmd->parsed()) {
      const json j = io::read_file(file);
      if (j.contains("families")) {
        const json& jf = j["families"];
        if (!jf.is_array() || jf.empty()) throw io::SchemaError("/families", "expected a non-empty array");
        std::vector<std::vector<CMatrix>> fam;
        for (std::size_t x = 0; x < jf.size(); ++x) fam.push_back(io::matrices_from_json(jf[x], "/families/" + std::to_string(x)));
        const auto p = embed_classical(fam, tol);
        json povm = json::array();
        for (const auto& m : p) povm.push_back(io::to_json(m));
        emit({{"n", fam.size()}, {"c", p.size()}, {"povm", povm}});
      } else {
        emit(io::to_json(embed_correlation(io::classical_correlation_from_json(j))));
      }
      return Exit::pass;
    }
    if (bisync_cmd->parsed()) {
      const auto docs = map_files(files, cfg.jobs, [&](const std::string& f) {
        return io::to_json(check_bisynchronous(io::classical_correlation_from_json(io::read_file(f)), tol));
      });
      const json doc = collect(files, docs);
      emit(doc);
      return verdict(doc["pass"].get<bool>());
    }
    if (compose_cmd->parsed()) {
      const BlockStrategy p = load_strategy(strategy_path);
      require_clean_ancilla(p, tol);
      const QuantumGraph source = load_source(graph_path, strategy_path);
      const json jf = io::read_file(f_path);
      std::vector<std::vector<CMatrix>> f;
      TracialAncilla fb = TracialAncilla::matrix_block(1);
      if (jf.contains("map")) {
        if (!jf.contains("r") || !jf["r"].is_number_integer()) throw io::SchemaError("/r", "expected an integer");
        const auto r = jf["r"].get<Index>();
        const json& map = jf["map"];
        if (!map.is_array() || static_cast<Index>(map.size()) != p.c) throw io::SchemaError("/map", "expected one target color per input color");
        for (std::size_t a = 0; a < map.size(); ++a) {
          if (!map[a].is_number_integer() || map[a].get<Index>() < 0 || map[a].get<Index>() >= r)
            throw io::SchemaError("/map/" + std::to_string(a), "target color out of range");
          std::vector<CMatrix> row(static_cast<std::size_t>(r), CMatrix::Zero(1, 1));
          row[map[a].get<std::size_t>()](0, 0) = 1.0;
          f.push_back(std::move(row));
        }
      } else {
        if (!jf.contains("ancilla")) throw io::SchemaError("/ancilla", "missing required field");
        fb = io::ancilla_from_json(jf["ancilla"], "/ancilla");
        if (!jf.contains("f") || !jf["f"].is_array()) throw io::SchemaError("/f", "expected an array");
        for (std::size_t a = 0; a < jf["f"].size(); ++a) f.push_back(io::matrices_from_json(jf["f"][a], "/f/" + std::to_string(a)));
      }
      const ComposeResult res = compose_reps(source, p, f, fb, tol);
      emit({{"pass", res.report.pass}, {"source", io::to_json(source)}, {"strategy", io::to_json(res.strategy)}, {"report", io::to_json(res.report)}});
      return verdict(res.report.pass);
    }
    if (bounds_cmd->parsed()) {
      const BoundsReport b = chromatic_bounds(io::graph_from_json(io::read_file(file)), tol);
      json doc = io::to_json(b);
      const bool ok = std::all_of(b.bounds.begin(), b.bounds.end(), [](const Bound& x) { return x.verification.pass; });
      doc["pass"] = ok;
      emit(doc);
      return verdict(ok);
    }
    if (chrom_cmd->parsed()) {
      const auto docs = map_files(files, cfg.jobs, [&](const std::string& f) {
        const ClassicalGraph g = io::classical_graph_from_json(io::read_file(f));
        const int chi = chromatic_number(g);
        const auto coloring = find_homomorphism(g, complete_graph(chi));
        return json{{"chromatic_number", chi}, {"coloring", *coloring}};
      });
      emit(collect(files, docs));
      return Exit::pass;
    }
  } catch (const io::SchemaError& e) {
    err << "qgraph: schema violation: " << e.what() << '\n';
    return Exit::malformed;
  } catch (const ShapeError& e) {
    err << "qgraph: malformed input: " << e.what() << '\n';
    return Exit::malformed;
  } catch (const DomainError& e) {
    err << "qgraph: " << e.what() << '\n';
    return Exit::fail;
  } catch (const json::exception& e) {
    err << "qgraph: malformed input: " << e.what() << '\n';
    return Exit::malformed;
  } catch (const std::exception& e) {
    err << "qgraph: " << e.what() << '\n';
    return Exit::malformed;
  }
  err << "qgraph: no subcommand\n";
  return Exit::malformed;
}

}  // namespace qgraph::cli
