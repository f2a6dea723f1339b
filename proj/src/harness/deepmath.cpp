// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#include "invnet/harness/deepmath.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace invnet::harness {

bool deepmath_is_test(const std::string& filename, double test_fraction) {
  if (test_fraction <= 0.0) return false;
  return fnv1a(filename) % 10000 < static_cast<uint64_t>(test_fraction * 10000.0 + 0.5);
}

tasks::PremiseProblem parse_deepmath_file(const std::string& text, const std::string& filename,
                                          const fol::ClausifyConfig& cfg) {
  fol::ClauseSet cs;
  std::vector<fol::NamedFormula> formulas;
  std::vector<int> labels;
  int line_no = 0, n_premises = 0;
  bool has_conjecture = false;

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto where = [&] { return filename + ":" + std::to_string(line_no); };
    if (line.size() < 3 || (line[0] != 'C' && line[0] != '+' && line[0] != '-') || line[1] != ' ')
      throw Error(where() + ": expected a 'C ', '+ ' or '- ' prefixed formula");

    fol::NamedFormula nf;
    std::string body = line.substr(2);
    try {
      // Both bare formulas and full "fof(name, role, ...)." units appear in
      // the wild; the line prefix always wins over the embedded role.
      if (body.rfind("fof(", body.find_first_not_of(" \t")) == body.find_first_not_of(" \t")) {
        std::vector<fol::NamedFormula> units = fol::parse_fof(body, cs);
        if (units.size() != 1) throw Error(where() + ": expected one formula per line");
        nf.formula = std::move(units.front().formula);
      } else {
        nf.formula = fol::parse_fof_formula(body, cs);
      }
    } catch (const ParseError& e) {
      throw Error(where() + ": " + e.what());
    }
    if (line[0] == 'C') {
      if (has_conjecture) throw Error(where() + ": second conjecture line");
      has_conjecture = true;
      nf.name = "conj";
      nf.role = "conjecture";
    } else {
      nf.name = "prem" + std::to_string(++n_premises);
      nf.role = "axiom";
      labels.push_back(line[0] == '+' ? 1 : 0);
    }
    formulas.push_back(std::move(nf));
  }
  if (!has_conjecture) throw Error(filename + ": missing conjecture ('C ') line");

  fol::ClauseSet clauses = fol::clausify(std::move(formulas), std::move(cs), cfg);

  tasks::PremiseProblem pb;
  pb.id = filename;
  pb.text = fol::print_clause_set(clauses);
  pb.g = graph::build_graph(clauses);
  pb.candidate_clauses.assign(static_cast<size_t>(n_premises), {});
  for (size_t i = 0; i < clauses.clauses.size(); ++i) {
    const std::string& name = clauses.clauses[i].name;
    std::string stem = name.substr(0, name.find('_'));
    if (stem == "conj") {
      pb.conjecture_clauses.push_back(static_cast<int32_t>(i));
    } else {
      size_t k = static_cast<size_t>(std::stoul(stem.substr(4))) - 1;
      pb.candidate_clauses[k].push_back(static_cast<int32_t>(i));
    }
  }
  pb.labels = std::move(labels);
  // A premise can clausify to nothing (e.g. a tautology); drop it rather than
  // hand the head an empty clause group.
  for (size_t k = pb.candidate_clauses.size(); k-- > 0;) {
    if (pb.candidate_clauses[k].empty()) {
      pb.candidate_clauses.erase(pb.candidate_clauses.begin() + static_cast<long>(k));
      pb.labels.erase(pb.labels.begin() + static_cast<long>(k));
    }
  }
  return pb;
}

tasks::PremiseDataset load_deepmath(const std::string& path, const DeepmathOptions& opt) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path))
      if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
  } else if (fs::exists(path)) {
    files.push_back(path);
  } else {
    throw Error("deepmath: no such file or directory: " + path);
  }

  tasks::PremiseDataset data;
  for (const fs::path& file : files) {
    std::ifstream in(file);
    if (!in) throw Error("deepmath: cannot read " + file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    std::string base = file.filename().string();
    tasks::PremiseProblem pb = parse_deepmath_file(buf.str(), base, opt.clausify);
    (deepmath_is_test(base, opt.test_fraction) ? data.test : data.train).push_back(std::move(pb));
  }
  return data;
}

}  // namespace invnet::harness
