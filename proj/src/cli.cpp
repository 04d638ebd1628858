#include "treevar/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "treevar/cross_ratio.hpp"
#include "treevar/error.hpp"
#include "treevar/parse.hpp"
#include "treevar/report.hpp"

namespace treevar {

namespace {

using nlohmann::json;

enum Exit { kOk = 0, kInput = 2, kCap = 3, kInternal = 4 };

struct Options {
  std::string input;
  std::string tree;
  std::string tree_file;
  std::string product;
  std::uint32_t prime = kDefaultPrime;
  std::size_t trials = 3;
  std::uint64_t seed = 0;
  std::uint32_t q = 2;
  std::uint64_t cap = OrbitLimits{}.max_points;
  std::size_t depth = DecideOptions{}.r9_depth;
  bool json = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_product(const std::string& s) {
  const auto start = s.find_first_not_of(" \t\r\n");
  if (start == std::string::npos) return false;
  const auto rest = s.substr(start);
  return rest.rfind("F(", 0) == 0 || rest.rfind("G(", 0) == 0 || rest.rfind("point(", 0) == 0;
}

Instance load_instance(const Options& o) {
  const int given = !o.input.empty() + !o.tree.empty() + !o.tree_file.empty() + !o.product.empty();
  if (given == 0) throw Error(ErrorKind::EmptyInput, "no input: pass a spec, --tree, --tree-file or --product");
  if (given > 1) throw Error(ErrorKind::ParseError, "more than one input given");
  if (!o.tree.empty()) return parse_tree_spec(o.tree);
  if (!o.tree_file.empty()) return parse_tree_spec(read_file(o.tree_file));
  if (!o.product.empty()) return parse_product_spec(o.product);
  if (looks_like_product(o.input)) return parse_product_spec(o.input);
  return parse_tree_spec(o.input);
}

LabeledTree as_tree(const Instance& x) {
  if (const auto* p = std::get_if<FlagProduct>(&x)) return tree_from_product(*p);
  return std::get<LabeledTree>(x);
}

Matrix span_matrix(const json& vectors, std::size_t n, const PrimeField& f, const char* what) {
  if (!vectors.is_array()) throw Error(ErrorKind::ParseError, std::string(what) + " must be a list of vectors");
  Matrix m(n, vectors.size());
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    const auto& v = vectors[j];
    if (!v.is_array() || v.size() != n) {
      throw Error(ErrorKind::ParseError, std::string(what) + ": every vector needs " + std::to_string(n) + " entries");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!v[i].is_number_integer()) throw Error(ErrorKind::ParseError, std::string(what) + ": entries must be integers");
      m(i, j) = f.from_int(v[i].get<std::int64_t>());
    }
  }
  return m;
}

json cross_ratio_record(const std::string& text, const Options& o, bool prime_given) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("sup") || !doc.contains("pencil")) {
    throw Error(ErrorKind::ParseError, "crossratio input needs \"sup\" and \"pencil\"");
  }
  std::uint32_t p = o.prime;
  if (!prime_given && doc.contains("prime")) {
    if (!doc["prime"].is_number_unsigned()) throw Error(ErrorKind::ParseError, "\"prime\" must be a positive integer");
    const auto raw = doc["prime"].get<std::uint64_t>();
    if (raw > UINT32_MAX) throw Error(ErrorKind::BadRange, "prime must fit in 32 bits");
    p = static_cast<std::uint32_t>(raw);
  }
  const PrimeField f(p);
  const auto& sup = doc["sup"];
  if (!sup.is_array() || sup.empty() || !sup[0].is_array() || sup[0].empty()) {
    throw Error(ErrorKind::ParseError, "\"sup\" must be a nonempty list of vectors");
  }
  const std::size_t n = sup[0].size();
  const auto& pencil = doc["pencil"];
  if (!pencil.is_array() || pencil.size() != 4) throw Error(ErrorKind::ParseError, "\"pencil\" needs four subspaces");
  std::array<Matrix, 4> z;
  for (std::size_t i = 0; i < 4; ++i) z[i] = span_matrix(pencil[i], n, f, "pencil");
  const Matrix lambda = span_matrix(doc.value("sub", json::array()), n, f, "sub");
  const Elem value = cross_ratio(f, z, lambda, span_matrix(sup, n, f, "sup"));
  return {{"prime", p}, {"value", value}};
}

int exit_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CapExceeded:
      return kCap;
    case ErrorKind::IterationLimit:
    case ErrorKind::RankSamplingFailure:
      return kInternal;
    default:
      return kInput;
  }
}

void report_error(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Density and orbit questions for flag and tree varieties", "treevar"};
  app.require_subcommand(1);
  Options o;

  const auto add_input = [&](CLI::App* sub) {
    sub->add_option("spec", o.input, "tree DSL, tree JSON or product spec");
    sub->add_option("--tree", o.tree, "tree in DSL or JSON form");
    sub->add_option("--tree-file", o.tree_file, "file holding a tree spec");
    sub->add_option("--product", o.product, "product of flag varieties, e.g. F(1,2;4)^3");
    sub->add_flag("--json", o.json, "emit the JSON record");
  };

  auto* dim = app.add_subcommand("dim", "dimension of the variety");
  add_input(dim);
  auto* classify = app.add_subcommand("classify", "finite-orbit classification and dimension obstruction");
  add_input(classify);
  auto* decide_cmd = app.add_subcommand("decide", "rule-based density verdict with trace");
  add_input(decide_cmd);
  decide_cmd->add_option("--depth", o.depth, "sparse-image search depth")->check(CLI::Range(0, 8));
  auto* certify = app.add_subcommand("certify", "randomized tangent-space density certificate");
  add_input(certify);
  certify->add_option("--prime", o.prime, "field characteristic");
  certify->add_option("--trials", o.trials, "independent samples")->check(CLI::Range(1, 1000));
  certify->add_option("--seed", o.seed, "sampling seed");
  auto* orbits = app.add_subcommand("orbits", "exact orbit count over F_q");
  add_input(orbits);
  orbits->add_option("--q", o.q, "field size")->check(CLI::IsMember({2, 3, 4, 5}));
  orbits->add_option("--cap", o.cap, "largest enumerated set")->check(CLI::PositiveNumber);
  auto* cross = app.add_subcommand("crossratio", "cross-ratio of a pencil of subspaces");
  std::string cross_input;
  std::string cross_file;
  cross->add_option("spec", cross_input, "JSON with prime, sub, sup, pencil");
  cross->add_option("--file", cross_file, "file holding the JSON");
  auto* cross_prime = cross->add_option("--prime", o.prime, "field characteristic");
  cross->add_flag("--json", o.json, "emit the JSON record");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInput;
  }

  json record;
  try {
    if (dim->parsed()) {
      const auto x = load_instance(o);
      const auto d = std::holds_alternative<FlagProduct>(x) ? product_dimension(std::get<FlagProduct>(x))
                                                            : dimension(std::get<LabeledTree>(x));
      if (!o.json) {
        out << d << '\n';
        return kOk;
      }
      record = {{"input", describe(x)}, {"dimension", d}};
    } else if (classify->parsed()) {
      const auto t = as_tree(load_instance(o));
      record = classification_json(t, orbit_class(t), trivially_sparse(t));
    } else if (decide_cmd->parsed()) {
      DecideOptions options;
      options.r9_depth = o.depth;
      record = to_json(decide(load_instance(o), options));
    } else if (certify->parsed()) {
      record = to_json(certify_density(as_tree(load_instance(o)), o.prime, o.trials, o.seed));
      record["seed"] = o.seed;
    } else if (orbits->parsed()) {
      const auto t = as_tree(load_instance(o));
      try {
        record = to_json(enumerate_orbits(t, o.q, OrbitLimits{o.cap}));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::CapExceeded) throw;
        OrbitReport partial;
        partial.q = o.q;
        partial.point_count = point_count(t, o.q);
        partial.limits_hit = true;
        record = to_json(partial);
        out << (o.json ? record.dump(2) + "\n" : render_human(record));
        report_error(e, err);
        return kCap;
      }
    } else {
      if (!cross_input.empty() && !cross_file.empty()) throw Error(ErrorKind::ParseError, "more than one input given");
      if (cross_input.empty() && cross_file.empty()) throw Error(ErrorKind::EmptyInput, "no crossratio input");
      const auto text = cross_file.empty() ? cross_input : read_file(cross_file);
      record = cross_ratio_record(text, o, cross_prime->count() > 0);
      if (!o.json) {
        out << record["value"].get<Elem>() << '\n';
        return kOk;
      }
    }
  } catch (const Error& e) {
    report_error(e, err);
    return exit_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return kInternal;
  }

  out << (o.json ? record.dump(2) + "\n" : render_human(record));
  return kOk;
}

}  // namespace treevar
