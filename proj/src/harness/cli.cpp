// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#include "invnet/harness/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numeric>
#include <sstream>

#include "invnet/fol/clausify.hpp"
#include "invnet/fol/parser.hpp"
#include "invnet/fol/stats.hpp"
#include "invnet/graph/json_io.hpp"
#include "invnet/harness/deepmath.hpp"
#include "invnet/harness/gen.hpp"
#include "invnet/harness/generate.hpp"
#include "invnet/harness/transform.hpp"
#include "invnet/tasks/train.hpp"
#include "invnet/tensor/checkpoint.hpp"
#include "invnet/tensor/gradcheck.hpp"

namespace invnet::harness {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << content;
}

/// Sink for command output: --out redirects everything that would go to
/// stdout into a file.
struct Sink {
  std::ofstream file;
  std::ostream* os = &std::cout;

  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw ConfigError("cannot write " + path);
    os = &file;
  }
  template <typename T>
  void line(const T& doc) {
    *os << doc << "\n";
  }
};

/// Flat key-value settings shared by train and eval runs. Every knob that
/// influences the output stream lives here so the emitted header equals the
/// effective configuration.
struct RunSettings {
  tasks::TrainConfig train;
  gnn::Dims dims = gnn::Dims::defaults();

  void apply(const json& doc) {
    for (const auto& [key, value] : doc.items()) {
      if (key == "epochs") train.epochs = value.get<int>();
      else if (key == "minibatch") train.minibatch = value.get<int>();
      else if (key == "lr") train.lr = value.get<double>();
      else if (key == "optimizer") train.optimizer = value.get<std::string>();
      else if (key == "seed") train.seed = value.get<uint64_t>();
      else if (key == "precision") train.precision = value.get<std::string>();
      else if (key == "layers" || key == "c0" || key == "s0" || key == "t0" ||
               key == "c_hidden" || key == "s_hidden" || key == "t_hidden") {
        gnn::Dims d = dims;
        int layers = d.L, c0 = d.d_c[0], s0 = d.d_s[0], t0 = d.d_t[0];
        int ch = d.L > 0 ? d.d_c[1] : c0, sh = d.L > 0 ? d.d_s[1] : s0,
            th = d.L > 0 ? d.d_t[1] : t0;
        if (key == "layers") layers = value.get<int>();
        if (key == "c0") c0 = value.get<int>();
        if (key == "s0") s0 = value.get<int>();
        if (key == "t0") t0 = value.get<int>();
        if (key == "c_hidden") ch = value.get<int>();
        if (key == "s_hidden") sh = value.get<int>();
        if (key == "t_hidden") th = value.get<int>();
        dims = gnn::Dims::make(layers, c0, s0, t0, ch, sh, th);
      } else {
        throw ConfigError("config: unknown key '" + key + "'");
      }
    }
  }

  json to_json() const {
    return {{"epochs", train.epochs},
            {"minibatch", train.minibatch},
            {"lr", train.lr},
            {"optimizer", train.optimizer},
            {"seed", train.seed},
            {"precision", train.precision},
            {"layers", dims.L},
            {"c0", dims.d_c[0]},
            {"s0", dims.d_s[0]},
            {"t0", dims.d_t[0]},
            {"c_hidden", dims.L > 0 ? dims.d_c[1] : dims.d_c[0]},
            {"s_hidden", dims.L > 0 ? dims.d_s[1] : dims.d_s[0]},
            {"t_hidden", dims.L > 0 ? dims.d_t[1] : dims.d_t[0]}};
  }
};

json epoch_record(const tasks::EpochMetric& m) {
  return {{"record", "epoch"},
          {"epoch", m.epoch},
          {"split", m.split},
          {"loss", m.loss},
          {"accuracy", m.accuracy}};
}

// --- clausify / graph / stats ------------------------------------------------

int cmd_clausify(const std::string& input, const std::string& out) {
  fol::ClauseSet cs = fol::clausify_text(read_file(input));
  std::string text = fol::print_clause_set(cs);
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
  return 0;
}

int cmd_graph(const std::string& input, const std::string& out) {
  fol::ClauseSet cs = fol::parse_cnf(read_file(input));
  Sink sink(out);
  sink.line(graph::dump_graph(graph::build_graph(cs)).dump());
  return 0;
}

int cmd_stats(const std::string& input, bool fof, bool collapse, const std::string& out) {
  fol::ClauseSet cs =
      fof ? fol::clausify_text(read_file(input)) : fol::parse_cnf(read_file(input));
  json rows = json::array();
  for (const fol::SymbolCount& row : fol::symbol_statistics(cs, collapse))
    rows.push_back({{"name", row.name}, {"count", row.count}, {"fraction", row.fraction}});
  Sink sink(out);
  sink.line(rows.dump());
  return 0;
}

// --- check-invariance ---------------------------------------------------------

int cmd_check_invariance(int graphs, int seeds, uint64_t seed, double tol,
                         const std::string& out) {
  Sink sink(out);
  json rc{{"record", "run_config"}, {"subcommand", "check-invariance"}, {"graphs", graphs},
          {"seeds", seeds},         {"seed", seed},                     {"tol", tol}};
  sink.line(rc.dump());

  Rng rng(seed);
  gnn::Dims dims = gnn::Dims::defaults();
  RandomClauseSetOptions opt;

  const TransformKind kinds[] = {TransformKind::rename_symbols, TransformKind::negate_predicate,
                                 TransformKind::permute_clauses, TransformKind::permute_literals};
  std::map<TransformKind, double> max_dev;
  std::map<TransformKind, int> failures, skipped;

  for (int gi = 0; gi < graphs; ++gi) {
    fol::ClauseSet cs = random_clause_set(rng, opt);
    std::vector<tensor::ParamStore<double>> stores(static_cast<size_t>(seeds));
    for (auto& store : stores) {
      gnn::InitScheme scheme;
      scheme.seed = rng.next_u64();
      gnn::register_params(store, dims, {}, scheme);
    }
    for (TransformKind kind : kinds) {
      std::optional<Transform> t = random_transform(kind, cs, rng);
      if (!t) {
        ++skipped[kind];
        continue;
      }
      for (auto& store : stores) {
        InvarianceReport rep = check_invariance(cs, *t, store, dims, tol);
        max_dev[kind] = std::max(max_dev[kind], rep.max_dev());
        if (!rep.pass()) ++failures[kind];
      }
    }
  }

  bool pass = true;
  for (TransformKind kind : kinds) {
    pass = pass && failures[kind] == 0;
    sink.line(json{{"record", "invariance"},
                   {"transform", to_string(kind)},
                   {"graphs", graphs},
                   {"param_draws", seeds},
                   {"max_dev", max_dev[kind]},
                   {"failures", failures[kind]},
                   {"skipped", skipped[kind]}}
                  .dump());
  }

  // Negative control: argument swapping must be caught, otherwise the network
  // (or the checker) is insensitive to everything.
  int control_draws = 0, control_flagged = 0;
  while (control_draws < graphs) {
    fol::ClauseSet cs = random_clause_set(rng, opt);
    std::optional<Transform> t = random_transform(TransformKind::swap_arguments, cs, rng);
    if (!t) continue;
    tensor::ParamStore<double> store;
    gnn::InitScheme scheme;
    scheme.seed = rng.next_u64();
    gnn::register_params(store, dims, {}, scheme);
    InvarianceReport rep = check_invariance(cs, *t, store, dims, tol);
    ++control_draws;
    if (!rep.pass()) ++control_flagged;
  }
  bool control_ok = control_flagged * 100 >= control_draws * 95;
  pass = pass && control_ok;
  sink.line(json{{"record", "control"},
                 {"transform", "swap_arguments"},
                 {"draws", control_draws},
                 {"flagged", control_flagged},
                 {"ok", control_ok}}
                .dump());
  sink.line(json{{"record", "summary"}, {"pass", pass}}.dump());
  return pass ? 0 : 1;
}

// --- gradcheck ----------------------------------------------------------------

int cmd_gradcheck(int graphs, double eps, double tol, uint64_t seed, const std::string& out) {
  Sink sink(out);
  json rc{{"record", "run_config"}, {"subcommand", "gradcheck"}, {"graphs", graphs},
          {"eps", eps},             {"tol", tol},                {"seed", seed}};
  sink.line(rc.dump());

  // Small widths keep the parameter count (and so the finite-difference
  // count) tractable; the tolerance stays the same as at full width.
  gnn::Dims dims = gnn::Dims::make(2, 3, 1, 3, 4, 4, 4);
  Rng rng(seed);
  RandomClauseSetOptions opt;
  opt.max_clauses = 5;
  opt.max_literals = 2;
  opt.max_term_depth = 2;

  double worst = 0.0;
  int checked = 0;
  const std::string heads[] = {"premise", "symbol", "value", "policy"};
  for (int gi = 0; gi < graphs; ++gi) {
    fol::ClauseSet cs = random_clause_set(rng, opt);
    graph::Hypergraph g = graph::build_graph(cs);
    if (g.n_c < 2) {
      --gi;  // the criterion wants usable graphs; redraw degenerate ones
      continue;
    }
    gnn::FlatIndex fi = gnn::flatten_index(graph::build_index(g));
    const std::string& head = heads[gi % 4];

    for (int attempt = 0; attempt < 16; ++attempt) {
      tensor::ParamStore<double> store;
      gnn::InitScheme scheme;
      scheme.seed = rng.next_u64();
      gnn::register_params(store, dims, {}, scheme);
      Rng head_rng(rng.next_u64());
      const int dc = dims.d_c[2], dt = dims.d_t[2], ds = dims.d_s[2];
      if (head == "premise") tasks::register_heads(store, tasks::describe_premise_head(dc, 6), head_rng);
      if (head == "symbol") tasks::register_heads(store, tasks::describe_symbol_head(ds, 4), head_rng);
      if (head == "value") tasks::register_heads(store, tasks::describe_value_head(dc, 6), head_rng);
      if (head == "policy")
        tasks::register_heads(store, tasks::describe_policy_head(dc, dt, 6), head_rng);
      tensor::randomize_trainable(store, rng);

      auto build = [&](tensor::Tape<double>& tape, tensor::ParamStore<double>& p) -> int32_t {
        gnn::LayerState st = gnn::forward(tape, p, g, dims, {}, &fi);
        if (head == "premise") {
          auto probs = tasks::premise_head(tape, p, st.c, tensor::Segments::from_lists({{0}}),
                                           tensor::Segments::from_lists({{1}}));
          return tape.bce_loss(probs, {1.0});
        }
        if (head == "symbol") {
          auto logits = tasks::symbol_head(tape, p, st.s);
          tensor::Array<double> target(g.n_s, 4);
          for (int r = 0; r < g.n_s; ++r) target.at(r, r % 4) = 1.0;
          return tape.softmax_xent(logits, target);
        }
        if (head == "value") {
          std::vector<int32_t> all(static_cast<size_t>(g.n_c));
          std::iota(all.begin(), all.end(), 0);
          auto v = tasks::value_head(tape, p, st.c, tensor::Segments::from_lists({all}));
          return tape.mse_loss(v, {0.7});
        }
        int32_t lit = 1;
        for (int32_t i = 0; i < g.n_t; ++i)
          if (g.term_type[static_cast<size_t>(i)] == "literal") {
            lit = i;
            break;
          }
        auto logits = tasks::policy_logits(tape, p, st.c, st.t, {0, 1}, {lit, 1}, {g.n_c - 1, 0});
        tensor::Array<double> target(1, 2);
        target.at(0, 0) = 0.4;
        target.at(0, 1) = 0.6;
        return tape.softmax_xent(tape.transpose(logits), target);
      };
      tensor::GradcheckReport rep = tensor::gradcheck(store, build, eps);
      if (!rep.clean()) continue;  // too close to a kink; redraw parameters
      worst = std::max(worst, rep.max_rel_err);
      ++checked;
      sink.line(json{{"record", "gradcheck"},
                     {"graph", gi},
                     {"head", head},
                     {"max_rel_err", rep.max_rel_err},
                     {"worst_param", rep.worst_param}}
                    .dump());
      break;
    }
  }
  bool pass = checked == graphs && worst <= tol;
  sink.line(json{{"record", "summary"},
                 {"checked", checked},
                 {"max_rel_err", worst},
                 {"tol", tol},
                 {"pass", pass}}
                .dump());
  return pass ? 0 : 1;
}

// --- gen ------------------------------------------------------------------

int cmd_gen(const std::string& task, int size, uint64_t seed, double test_fraction,
            const std::string& out) {
  json doc;
  if (task == "symbols")
    doc = dump_symbol_dataset(gen_symbol_dataset(size, seed, test_fraction));
  else if (task == "premises")
    doc = dump_premise_dataset(gen_premise_dataset(size, seed, test_fraction));
  else
    throw ConfigError("gen: unknown task '" + task + "'");
  Sink sink(out);
  sink.line(doc.dump());
  return 0;
}

// --- train / eval -----------------------------------------------------------

tasks::SymbolDataset load_or_gen_symbols(const std::string& data, int size, uint64_t seed,
                                         double test_fraction) {
  if (!data.empty()) return load_symbol_dataset(json::parse(read_file(data)));
  return gen_symbol_dataset(size, seed, test_fraction);
}

tasks::PremiseDataset load_or_gen_premises(const std::string& data, const std::string& deepmath,
                                           int size, uint64_t seed, double test_fraction) {
  if (!deepmath.empty()) {
    DeepmathOptions opt;
    opt.test_fraction = test_fraction;
    return load_deepmath(deepmath, opt);
  }
  if (!data.empty()) return load_premise_dataset(json::parse(read_file(data)));
  return gen_premise_dataset(size, seed, test_fraction);
}

json symbol_eval_record(const tasks::SymbolMetrics& m) {
  return {{"record", "eval"},
          {"split", "test"},
          {"top1", m.top1()},
          {"perfect_rate", m.perfect_rate()},
          {"correct", m.correct},
          {"total", m.total},
          {"perfect_problems", m.perfect_problems},
          {"conjecture_problems", m.conjecture_problems}};
}

template <typename Real>
int run_train_symbols(const tasks::SymbolDataset& data, const RunSettings& rs, Sink& sink,
                      const std::string& save) {
  tasks::TrainResult<Real> res = tasks::train_symbols<Real>(data, rs.dims, rs.train);
  for (const tasks::EpochMetric& m : res.metrics) sink.line(epoch_record(m).dump());
  tasks::SymbolMetrics sm =
      tasks::symbol_metrics(tasks::predict_symbols<Real>(data.test, res.params, rs.dims));
  sink.line(symbol_eval_record(sm).dump());
  if (!save.empty()) write_file(save, tensor::save_params(res.params).dump());
  return 0;
}

template <typename Real>
int run_train_premises(const tasks::PremiseDataset& data, const RunSettings& rs, Sink& sink,
                       const std::string& save) {
  tasks::TrainResult<Real> res = tasks::train_premises<Real>(data, rs.dims, rs.train);
  for (const tasks::EpochMetric& m : res.metrics) sink.line(epoch_record(m).dump());
  for (auto it = res.metrics.rbegin(); it != res.metrics.rend(); ++it)
    if (it->split == "test") {
      sink.line(json{{"record", "eval"},
                     {"split", "test"},
                     {"loss", it->loss},
                     {"accuracy", it->accuracy}}
                    .dump());
      break;
    }
  if (!save.empty()) write_file(save, tensor::save_params(res.params).dump());
  return 0;
}

/// Forward-only premise accuracy over one problem list.
template <typename Real>
tasks::EpochMetric evaluate_premises(const std::vector<tasks::PremiseProblem>& problems,
                                     tensor::ParamStore<Real>& params, const gnn::Dims& dims,
                                     int minibatch) {
  tasks::detail::Tally tally;
  auto batches = tasks::detail::make_batches(problems.size(), minibatch,
                                             tasks::detail::identity_order(problems.size()));
  for (const auto& batch : batches) {
    auto b = tasks::detail::make_premise_batch<Real>(problems, batch);
    tensor::Tape<Real> tape;
    gnn::LayerState st = gnn::forward(tape, params, b.g, dims, {}, &b.fi);
    auto probs = tasks::premise_head(tape, params, st.c, b.conj, b.prem);
    auto loss = tape.bce_loss(probs, b.labels);
    const auto& p = tape.val(probs);
    int64_t ok = 0;
    for (int r = 0; r < p.rows; ++r)
      if ((p.at(r, 0) > Real(0.5)) == (b.labels[static_cast<size_t>(r)] > Real(0.5))) ++ok;
    tally.add(static_cast<double>(tape.val(loss).data[0]),
              static_cast<int64_t>(b.labels.size()), ok);
  }
  return tally.metric(0, "test");
}

template <typename Real>
int run_eval_symbols(const tasks::SymbolDataset& data, const RunSettings& rs,
                     const std::string& load, Sink& sink) {
  tensor::ParamStore<Real> store;
  gnn::InitScheme scheme;
  gnn::register_params(store, rs.dims, {}, scheme);
  Rng head_rng(1);
  tasks::register_heads(
      store,
      tasks::describe_symbol_head(rs.dims.d_s[static_cast<size_t>(rs.dims.L)],
                                  static_cast<int>(data.vocab.size())),
      head_rng);
  tensor::load_params(json::parse(read_file(load)), store);
  tasks::SymbolMetrics sm =
      tasks::symbol_metrics(tasks::predict_symbols<Real>(data.test, store, rs.dims));
  sink.line(symbol_eval_record(sm).dump());
  return 0;
}

template <typename Real>
int run_eval_premises(const tasks::PremiseDataset& data, const RunSettings& rs,
                      const std::string& load, Sink& sink) {
  tensor::ParamStore<Real> store;
  gnn::InitScheme scheme;
  gnn::register_params(store, rs.dims, {}, scheme);
  Rng head_rng(1);
  tasks::register_heads(
      store, tasks::describe_premise_head(rs.dims.d_c[static_cast<size_t>(rs.dims.L)]), head_rng);
  tensor::load_params(json::parse(read_file(load)), store);
  tasks::EpochMetric m =
      evaluate_premises<Real>(data.test, store, rs.dims, rs.train.minibatch);
  sink.line(
      json{{"record", "eval"}, {"split", "test"}, {"loss", m.loss}, {"accuracy", m.accuracy}}
          .dump());
  return 0;
}

struct TrainCliOptions {
  std::string config, data, deepmath, out, save, load;
  int size = 0;
  uint64_t seed = 0;
  bool seed_set = false;
  std::string precision;
  double test_fraction = 0.2;
};

RunSettings settings_from(const TrainCliOptions& o, int default_minibatch) {
  RunSettings rs;
  rs.train.minibatch = default_minibatch;
  if (!o.config.empty()) rs.apply(json::parse(read_file(o.config)));
  if (o.seed_set) rs.train.seed = o.seed;
  if (!o.precision.empty()) rs.train.precision = o.precision;
  rs.train.validate();
  rs.dims.validate();
  return rs;
}

json run_config_record(const std::string& subcommand, const TrainCliOptions& o,
                       const RunSettings& rs) {
  json rc = rs.to_json();
  rc["record"] = "run_config";
  rc["subcommand"] = subcommand;
  rc["size"] = o.size;
  rc["data"] = o.data;
  if (!o.deepmath.empty()) rc["deepmath"] = o.deepmath;
  rc["test_fraction"] = o.test_fraction;
  return rc;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"name-invariant clause set embeddings"};
  app.require_subcommand(1);

  std::string input, out;
  bool fof = false, collapse = false;

  auto* clausify = app.add_subcommand("clausify", "read first-order formulas, print CNF");
  clausify->add_option("input", input)->required();
  clausify->add_option("--out", out);

  auto* graph_cmd = app.add_subcommand("graph", "dump the hypergraph of a CNF file as JSON");
  graph_cmd->add_option("input", input)->required();
  graph_cmd->add_option("--out", out);

  auto* stats = app.add_subcommand("stats", "symbol occurrence counts");
  stats->add_option("input", input)->required();
  stats->add_flag("--fof", fof, "clausify first-order input before counting");
  stats->add_flag("--collapse-generated", collapse, "pool skolemN/defN under one label");
  stats->add_option("--out", out);

  int graphs = 100, seeds = 5, gc_graphs = 10;
  uint64_t seed = 0;
  double tol = 1e-9, eps = 1e-6, gc_tol = 1e-5;
  auto* check = app.add_subcommand("check-invariance", "transform invariance suite");
  check->add_option("--graphs", graphs);
  check->add_option("--seeds", seeds, "parameter draws per clause set");
  check->add_option("--seed", seed);
  check->add_option("--tol", tol);
  check->add_option("--out", out);

  auto* gradcheck = app.add_subcommand("gradcheck", "finite-difference gradient check");
  gradcheck->add_option("--graphs", gc_graphs);
  gradcheck->add_option("--eps", eps);
  gradcheck->add_option("--tol", gc_tol);
  gradcheck->add_option("--seed", seed);
  gradcheck->add_option("--out", out);

  std::string gen_task;
  int gen_size = 100;
  double gen_fraction = 0.2;
  auto* gen = app.add_subcommand("gen", "generate a synthetic dataset");
  gen->add_option("--task", gen_task)->required()->check(CLI::IsMember({"symbols", "premises"}));
  gen->add_option("--size", gen_size);
  gen->add_option("--seed", seed);
  gen->add_option("--test-fraction", gen_fraction);
  gen->add_option("--out", out);

  TrainCliOptions topt;
  auto add_run_options = [&](CLI::App* cmd, bool premises) {
    cmd->add_option("--config", topt.config, "flat JSON settings file");
    cmd->add_option("--data", topt.data, "dataset JSON produced by gen");
    if (premises) cmd->add_option("--deepmath", topt.deepmath, "problem file directory");
    cmd->add_option("--size", topt.size)->required(false);
    cmd->add_option("--seed", topt.seed)->each([&](const std::string&) { topt.seed_set = true; });
    cmd->add_option("--precision", topt.precision)->check(CLI::IsMember({"f32", "f64"}));
    cmd->add_option("--test-fraction", topt.test_fraction);
    cmd->add_option("--out", topt.out);
    cmd->add_option("--save", topt.save, "write final parameters to this file");
  };

  auto* train = app.add_subcommand("train", "fit a task head end to end");
  train->require_subcommand(1);
  auto* train_symbols = train->add_subcommand("symbols", "symbol naming");
  auto* train_premises = train->add_subcommand("premises", "premise selection");
  add_run_options(train_symbols, false);
  add_run_options(train_premises, true);

  auto* eval = app.add_subcommand("eval", "evaluate saved parameters");
  eval->require_subcommand(1);
  auto* eval_symbols = eval->add_subcommand("symbols", "symbol naming metrics");
  auto* eval_premises = eval->add_subcommand("premises", "premise selection accuracy");
  add_run_options(eval_symbols, false);
  add_run_options(eval_premises, true);
  eval_symbols->add_option("--load", topt.load)->required();
  eval_premises->add_option("--load", topt.load)->required();

  try {
    app.parse(argc, argv);

    if (*clausify) return cmd_clausify(input, out);
    if (*graph_cmd) return cmd_graph(input, out);
    if (*stats) return cmd_stats(input, fof, collapse, out);
    if (*check) return cmd_check_invariance(graphs, seeds, seed, tol, out);
    if (*gradcheck) return cmd_gradcheck(gc_graphs, eps, gc_tol, seed, out);
    if (*gen) return cmd_gen(gen_task, gen_size, seed, gen_fraction, out);

    if (*train_symbols || *eval_symbols) {
      bool is_train = static_cast<bool>(*train_symbols);
      RunSettings rs = settings_from(topt, 10);
      if (topt.size == 0) topt.size = 200;
      tasks::SymbolDataset data =
          load_or_gen_symbols(topt.data, topt.size, rs.train.seed, topt.test_fraction);
      Sink sink(topt.out);
      sink.line(run_config_record(is_train ? "train symbols" : "eval symbols", topt, rs).dump());
      if (is_train)
        return rs.train.precision == "f32"
                   ? run_train_symbols<float>(data, rs, sink, topt.save)
                   : run_train_symbols<double>(data, rs, sink, topt.save);
      return rs.train.precision == "f32" ? run_eval_symbols<float>(data, rs, topt.load, sink)
                                         : run_eval_symbols<double>(data, rs, topt.load, sink);
    }
    if (*train_premises || *eval_premises) {
      bool is_train = static_cast<bool>(*train_premises);
      RunSettings rs = settings_from(topt, 50);
      if (topt.size == 0) topt.size = 300;
      tasks::PremiseDataset data = load_or_gen_premises(topt.data, topt.deepmath, topt.size,
                                                        rs.train.seed, topt.test_fraction);
      Sink sink(topt.out);
      sink.line(
          run_config_record(is_train ? "train premises" : "eval premises", topt, rs).dump());
      if (is_train)
        return rs.train.precision == "f32"
                   ? run_train_premises<float>(data, rs, sink, topt.save)
                   : run_train_premises<double>(data, rs, sink, topt.save);
      return rs.train.precision == "f32" ? run_eval_premises<float>(data, rs, topt.load, sink)
                                         : run_eval_premises<double>(data, rs, topt.load, sink);
    }
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace invnet::harness
