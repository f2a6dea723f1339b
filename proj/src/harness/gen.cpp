// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#include "invnet/harness/gen.hpp"

#include <cmath>
#include <numeric>
#include <set>

#include "invnet/fol/parser.hpp"

namespace invnet::harness {

const std::vector<std::string>& symbol_vocab() {
  static const std::vector<std::string> vocab = {"eq",  "le",  "mem",  "emp",  "top",
                                                 "bot", "zero", "succ", "plus", "un"};
  return vocab;
}

namespace {

std::string g(int i) { return "g" + std::to_string(i); }

int pick(Rng& rng, int k) { return static_cast<int>(rng.below(static_cast<uint64_t>(k))); }

std::pair<int, int> pick2(Rng& rng, int k) {
  int a = pick(rng, k);
  int b = pick(rng, k);
  while (k > 1 && b == a) b = pick(rng, k);
  return {a, b};
}

// Clause families; each uses a distinctive shape so the symbols involved are
// recoverable without their names. Glue constants g0..g{k-1} are shared
// across the problem but never scored.
enum Chunk { kOrd, kEq, kNum, kSet, kProp, kChunkCount };

void emit_chunk(int chunk, Rng& rng, int k, std::vector<std::string>& out) {
  switch (chunk) {
    case kOrd: {  // chains plus a three-literal transitivity clause
      auto [a, b] = pick2(rng, k);
      out.push_back("le(" + g(a) + "," + g(b) + ")");
      if (rng.chance(0.5)) {
        auto [c, d] = pick2(rng, k);
        out.push_back("le(" + g(c) + "," + g(d) + ")");
      }
      out.push_back("~le(X,Y) | ~le(Y,Z) | le(X,Z)");
      break;
    }
    case kEq: {  // reflexivity (shared child node), symmetry, congruence-ish
      out.push_back("eq(X,X)");
      out.push_back("~eq(X,Y) | eq(Y,X)");
      auto [a, b] = pick2(rng, k);
      out.push_back("eq(plus(" + g(a) + "," + g(b) + "),plus(" + g(b) + "," + g(a) + "))");
      break;
    }
    case kNum: {  // the only unary function, with its base constant
      out.push_back("le(zero,succ(zero))");
      out.push_back("le(X,succ(X))");
      if (rng.chance(0.5)) {
        int a = pick(rng, k);
        out.push_back("le(succ(" + g(a) + "),succ(succ(" + g(a) + ")))");
      }
      break;
    }
    case kSet: {  // membership under a pairing function, with the unary predicate
      auto [a, b] = pick2(rng, k);
      out.push_back("mem(" + g(a) + ",un(" + g(a) + "," + g(b) + "))");
      int c = pick(rng, k);
      out.push_back("emp(" + g(c) + ")");
      out.push_back("~mem(X," + g(c) + ") | ~emp(" + g(c) + ")");
      break;
    }
    case kProp: {  // nullary predicates of opposite habitual sign
      out.push_back("top");
      out.push_back("~bot");
      if (rng.chance(0.5)) out.push_back("~bot | top");
      break;
    }
  }
}

std::string chunk_conjecture(int chunk, Rng& rng, int k) {
  switch (chunk) {
    case kOrd: {
      auto [a, b] = pick2(rng, k);
      return "~le(" + g(a) + "," + g(b) + ")";
    }
    case kEq: {
      auto [a, b] = pick2(rng, k);
      return "~eq(plus(" + g(a) + "," + g(b) + "),plus(" + g(b) + "," + g(a) + "))";
    }
    case kNum:
      return "~le(zero,succ(succ(zero)))";
    case kSet: {
      auto [a, b] = pick2(rng, k);
      return "~mem(" + g(a) + ",un(" + g(a) + "," + g(b) + "))";
    }
    case kProp:
      return "bot";
  }
  return "";
}

void collect_symbols(const fol::ClauseSet& cs, fol::TermId t, std::set<fol::SymbolId>& out) {
  const fol::TermNode& n = cs.arena.node(t);
  if (n.is_variable()) return;
  out.insert(n.symbol);
  for (fol::TermId a : cs.arena.args(t)) collect_symbols(cs, a, out);
}

bool is_test_index(int i, double test_fraction) {
  if (test_fraction <= 0.0) return false;
  int cadence = static_cast<int>(std::lround(1.0 / test_fraction));
  if (cadence < 1) cadence = 1;
  return i % cadence == cadence - 1;
}

tasks::SymbolProblem make_symbol_problem(std::string id, std::string text,
                                         const std::vector<std::string>& vocab) {
  tasks::SymbolProblem pb;
  pb.id = std::move(id);
  pb.text = std::move(text);
  fol::ClauseSet cs = fol::parse_cnf(pb.text);
  graph::GraphNodeMap nm;
  pb.g = graph::build_graph(cs, {}, &nm);

  std::set<fol::SymbolId> conjecture_symbols;
  for (const fol::Clause& clause : cs.clauses)
    if (clause.clause_type == "negated_conjecture")
      for (const fol::Literal& lit : clause.literals)
        collect_symbols(cs, lit.atom, conjecture_symbols);

  for (size_t vi = 0; vi < vocab.size(); ++vi) {
    auto sid = cs.symbols.find(vocab[vi]);
    if (!sid) continue;
    auto node = nm.symbol_node.find(*sid);
    if (node == nm.symbol_node.end()) continue;
    pb.scored_nodes.push_back(node->second);
    pb.targets.push_back(static_cast<int32_t>(vi));
    pb.conjecture_scored.push_back(conjecture_symbols.count(*sid) > 0);
  }
  return pb;
}

tasks::PremiseProblem make_premise_problem(std::string id, std::string text,
                                           std::vector<int> labels) {
  tasks::PremiseProblem pb;
  pb.id = std::move(id);
  pb.text = std::move(text);
  fol::ClauseSet cs = fol::parse_cnf(pb.text);
  pb.g = graph::build_graph(cs);
  for (size_t i = 0; i < cs.clauses.size(); ++i) {
    if (cs.clauses[i].clause_type == "negated_conjecture")
      pb.conjecture_clauses.push_back(static_cast<int32_t>(i));
    else
      pb.candidate_clauses.push_back({static_cast<int32_t>(i)});
  }
  if (pb.candidate_clauses.size() != labels.size())
    throw ConfigError("dataset: label count differs from candidate count");
  pb.labels = std::move(labels);
  return pb;
}

}  // namespace

tasks::SymbolDataset gen_symbol_dataset(int size, uint64_t seed, double test_fraction) {
  if (size < 1) throw ConfigError("gen: size must be at least 1");
  tasks::SymbolDataset data;
  data.vocab = symbol_vocab();
  Rng root(seed);
  for (int i = 0; i < size; ++i) {
    Rng rng = root.fork(static_cast<uint64_t>(i) + 1);
    int glue = rng.range(2, 4);
    std::vector<int> chunks(kChunkCount);
    std::iota(chunks.begin(), chunks.end(), 0);
    rng.shuffle(chunks);
    chunks.resize(static_cast<size_t>(rng.range(2, 3)));

    std::vector<std::string> bodies;
    for (int c : chunks) emit_chunk(c, rng, glue, bodies);
    std::string conjecture = chunk_conjecture(chunks.back(), rng, glue);

    std::string text;
    for (size_t j = 0; j < bodies.size(); ++j)
      text += "cnf(c" + std::to_string(j + 1) + ", axiom, " + bodies[j] + ").\n";
    text += "cnf(goal, negated_conjecture, " + conjecture + ").\n";

    tasks::SymbolProblem pb =
        make_symbol_problem("sym" + std::to_string(i), std::move(text), data.vocab);
    (is_test_index(i, test_fraction) ? data.test : data.train).push_back(std::move(pb));
  }
  return data;
}

namespace {

std::string motif_literal(int motif, const std::string& arg) {
  return "p" + std::to_string(motif) + "(f" + std::to_string(motif) + "(" + arg + ")," + arg +
         ")";
}

std::string candidate_body(Rng& rng, int first, int second) {
  std::string x = "X", y = rng.chance(0.3) ? "X" : "Y";
  std::string body = motif_literal(first, x) + " | " + motif_literal(second, y);
  return body;
}

}  // namespace

tasks::PremiseDataset gen_premise_dataset(int size, uint64_t seed, double test_fraction) {
  if (size < 1) throw ConfigError("gen: size must be at least 1");
  constexpr int kMotifs = 6;
  tasks::PremiseDataset data;
  Rng root(seed);
  for (int i = 0; i < size; ++i) {
    Rng rng = root.fork(static_cast<uint64_t>(i) + 1);
    auto [a, b] = pick2(rng, kMotifs);
    std::vector<int> aliens;
    for (int m = 0; m < kMotifs; ++m)
      if (m != a && m != b) aliens.push_back(m);

    int n_cand = 2 * rng.range(2, 4);  // 4, 6 or 8 candidates, half positive
    std::vector<std::pair<std::string, int>> cands;
    for (int c = 0; c < n_cand / 2; ++c) {
      bool flip = rng.chance(0.5);
      cands.push_back({candidate_body(rng, flip ? b : a, flip ? a : b), 1});
    }
    for (int c = 0; c < n_cand / 2; ++c) {
      if (rng.chance(0.5)) {  // shares exactly one motif
        int shared = rng.chance(0.5) ? a : b;
        int alien = aliens[static_cast<size_t>(pick(rng, static_cast<int>(aliens.size())))];
        bool flip = rng.chance(0.5);
        cands.push_back({candidate_body(rng, flip ? alien : shared, flip ? shared : alien), 0});
      } else {  // shares nothing
        auto [c1, c2] = pick2(rng, static_cast<int>(aliens.size()));
        cands.push_back(
            {candidate_body(rng, aliens[static_cast<size_t>(c1)], aliens[static_cast<size_t>(c2)]),
             0});
      }
    }
    rng.shuffle(cands);

    std::string text = "cnf(goal, negated_conjecture, ~" + motif_literal(a, "g0") + " | ~" +
                       motif_literal(b, "g1") + ").\n";
    std::vector<int> labels;
    for (size_t c = 0; c < cands.size(); ++c) {
      text += "cnf(ax" + std::to_string(c + 1) + ", axiom, " + cands[c].first + ").\n";
      labels.push_back(cands[c].second);
    }
    tasks::PremiseProblem pb =
        make_premise_problem("prem" + std::to_string(i), std::move(text), std::move(labels));
    (is_test_index(i, test_fraction) ? data.test : data.train).push_back(std::move(pb));
  }
  return data;
}

namespace {

nlohmann::json dump_symbol_problem(const tasks::SymbolProblem& pb, const char* split) {
  return {{"id", pb.id}, {"text", pb.text}, {"split", split}};
}

nlohmann::json dump_premise_problem(const tasks::PremiseProblem& pb, const char* split) {
  return {{"id", pb.id}, {"text", pb.text}, {"labels", pb.labels}, {"split", split}};
}

}  // namespace

nlohmann::json dump_symbol_dataset(const tasks::SymbolDataset& data) {
  nlohmann::json doc;
  doc["task"] = "symbols";
  doc["vocab"] = data.vocab;
  auto& problems = doc["problems"] = nlohmann::json::array();
  for (const auto& pb : data.train) problems.push_back(dump_symbol_problem(pb, "train"));
  for (const auto& pb : data.test) problems.push_back(dump_symbol_problem(pb, "test"));
  return doc;
}

nlohmann::json dump_premise_dataset(const tasks::PremiseDataset& data) {
  nlohmann::json doc;
  doc["task"] = "premises";
  auto& problems = doc["problems"] = nlohmann::json::array();
  for (const auto& pb : data.train) problems.push_back(dump_premise_problem(pb, "train"));
  for (const auto& pb : data.test) problems.push_back(dump_premise_problem(pb, "test"));
  return doc;
}

tasks::SymbolDataset load_symbol_dataset(const nlohmann::json& doc) {
  if (doc.value("task", "") != "symbols") throw ConfigError("dataset: not a symbols dataset");
  tasks::SymbolDataset data;
  data.vocab = doc.at("vocab").get<std::vector<std::string>>();
  for (const auto& p : doc.at("problems")) {
    tasks::SymbolProblem pb = make_symbol_problem(p.at("id").get<std::string>(),
                                                  p.at("text").get<std::string>(), data.vocab);
    (p.value("split", "train") == "test" ? data.test : data.train).push_back(std::move(pb));
  }
  return data;
}

tasks::PremiseDataset load_premise_dataset(const nlohmann::json& doc) {
  if (doc.value("task", "") != "premises") throw ConfigError("dataset: not a premises dataset");
  tasks::PremiseDataset data;
  for (const auto& p : doc.at("problems")) {
    tasks::PremiseProblem pb =
        make_premise_problem(p.at("id").get<std::string>(), p.at("text").get<std::string>(),
                             p.at("labels").get<std::vector<int>>());
    (p.value("split", "train") == "test" ? data.test : data.train).push_back(std::move(pb));
  }
  return data;
}

}  // namespace invnet::harness
