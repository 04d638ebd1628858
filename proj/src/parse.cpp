#include "treevar/parse.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

#include "treevar/error.hpp"

namespace treevar {

namespace {

using nlohmann::json;

SourcePosition position_at(std::string_view text, std::size_t offset) {
  SourcePosition pos;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
  }
  return pos;
}

[[noreturn]] void fail(ErrorKind kind, const std::string& msg, std::string_view text,
                       std::size_t offset) {
  throw Error(kind, msg, position_at(text, offset));
}

LabeledTree parse_tree_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    fail(ErrorKind::ParseError, "malformed JSON", text, offset);
  }
  const auto schema = [](const std::string& msg) {
    throw Error(ErrorKind::ParseError, msg, SourcePosition{});
  };
  if (!doc.is_object()) schema("tree document must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "labels" && key != "edges" && key != "root") schema("unexpected key '" + key + "'");
  }
  if (!doc.contains("labels") || !doc["labels"].is_object()) schema("'labels' must be an object");
  RawTree raw;
  for (const auto& [name, value] : doc["labels"].items()) {
    if (name.empty()) schema("empty vertex name");
    if (!value.is_number_integer()) schema("label of '" + name + "' must be an integer");
    raw.labels.emplace_back(name, value.get<std::int64_t>());
  }
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) schema("'edges' must be an array");
    for (const auto& edge : doc["edges"]) {
      if (!edge.is_array() || edge.size() != 2 || !edge[0].is_string() || !edge[1].is_string()) {
        schema("each edge must be a [source, target] pair of names");
      }
      if (edge[0].get<std::string>().empty() || edge[1].get<std::string>().empty()) schema("empty vertex name");
      raw.edges.emplace_back(edge[0].get<std::string>(), edge[1].get<std::string>());
    }
  }
  if (doc.contains("root")) {
    if (!doc["root"].is_string()) schema("'root' must be a vertex name");
    raw.root = doc["root"].get<std::string>();
  }
  return validate_tree(raw);
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

// Parses a decimal integer; ParseError on overflow.
Label to_label(std::string_view digits, std::string_view text, std::size_t offset) {
  Label value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    fail(ErrorKind::ParseError, "integer '" + std::string(digits) + "' out of range", text, offset);
  }
  return value;
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }
  std::string_view word() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }
  Label integer() {
    skip_space();
    const std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (digits == pos_) {
      pos_ = start;
      error("expected an integer");
    }
    const Label value = to_label(text_.substr(digits, pos_ - digits), text_, digits);
    return negative ? -value : value;
  }
  std::size_t offset() {
    skip_space();
    return pos_;
  }
  [[noreturn]] void error(const std::string& msg) {
    skip_space();
    const std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'"
                                                  : std::string("end of input");
    fail(ErrorKind::ParseError, msg + ", found " + found, text_, pos_);
  }
  std::string_view text() const { return text_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

LabeledTree parse_tree_dsl(std::string_view text) {
  Cursor in(text);
  if (in.at_end()) throw Error(ErrorKind::EmptyInput, "empty tree specification");

  struct Token {
    std::string name;
    std::size_t offset;
  };
  std::map<std::string, std::pair<Label, std::size_t>> labels;  // label, offset of definition
  std::vector<Token> mentions;
  std::vector<std::pair<Token, Token>> edges;

  do {
    std::optional<Token> prev;
    do {
      const std::size_t start = in.offset();
      const std::string_view name = in.word();
      if (name.empty()) in.error("expected a vertex");
      std::optional<Label> label;
      if (in.accept(':')) {
        label = in.integer();
      } else if (all_digits(name)) {
        label = to_label(name, text, start);
      }
      Token token{std::string(name), start};
      if (label) {
        auto [it, inserted] = labels.try_emplace(token.name, *label, start);
        if (!inserted && it->second.first != *label) {
          fail(ErrorKind::ParseError,
               "vertex '" + token.name + "' relabeled from " + std::to_string(it->second.first) +
                   " to " + std::to_string(*label),
               text, start);
        }
      }
      mentions.push_back(token);
      if (prev) edges.emplace_back(*prev, token);
      prev = token;
    } while (in.accept('>'));
  } while (in.accept('|'));
  if (!in.at_end()) in.error("expected '>' or '|'");

  for (const auto& m : mentions) {
    if (!labels.count(m.name)) {
      fail(ErrorKind::ParseError, "vertex '" + m.name + "' has no label", text, m.offset);
    }
  }
  for (const auto& [s, t] : edges) {
    const Label ls = labels.at(s.name).first;
    const Label lt = labels.at(t.name).first;
    if (ls >= lt) {
      fail(ErrorKind::LabelViolation,
           "edge " + s.name + ">" + t.name + " needs " + std::to_string(ls) + " < " +
               std::to_string(lt),
           text, t.offset);
    }
  }
  RawTree raw;
  for (const auto& [name, entry] : labels) raw.labels.emplace_back(name, entry.first);
  for (const auto& [s, t] : edges) raw.edges.emplace_back(s.name, t.name);
  return validate_tree(raw);
}

}  // namespace

LabeledTree parse_tree_spec(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw Error(ErrorKind::EmptyInput, "empty tree specification");
  return text[first] == '{' ? parse_tree_json(text) : parse_tree_dsl(text);
}

FlagProduct parse_product_spec(std::string_view text) {
  Cursor in(text);
  if (in.at_end()) throw Error(ErrorKind::EmptyInput, "empty product specification");
  FlagProduct product;
  std::optional<Label> ambient;
  std::size_t ambient_offset = 0;
  do {
    const std::size_t start = in.offset();
    const std::string_view head = in.word();
    std::vector<DimensionVector> terms;
    Label n = 0;
    in.expect('(');
    if (head == "F" || head == "G") {
      DimensionVector dims;
      do {
        dims.push_back(in.integer());
      } while (in.accept(','));
      if (head == "G" && dims.size() != 1) fail(ErrorKind::ParseError, "G takes one dimension", text, start);
      in.expect(';');
      n = in.integer();
      terms.push_back(std::move(dims));
    } else if (head == "point") {
      n = in.integer();
    } else {
      fail(ErrorKind::ParseError, "expected F, G or point", text, start);
    }
    in.expect(')');
    if (in.accept('^')) {
      const std::size_t at = in.offset();
      const Label power = in.integer();
      if (power < 1 || power > 64) fail(ErrorKind::ParseError, "exponent must lie in [1, 64]", text, at);
      if (!terms.empty()) terms.assign(static_cast<std::size_t>(power), terms.front());
    }
    if (ambient && *ambient != n) {
      fail(ErrorKind::BoundsError,
           "ambient " + std::to_string(n) + " differs from " + std::to_string(*ambient) +
               " declared at column " + std::to_string(position_at(text, ambient_offset).column),
           text, start);
    }
    ambient = n;
    ambient_offset = start;
    for (auto& t : terms) product.factors.push_back(std::move(t));
  } while (in.accept('*'));
  if (!in.at_end()) in.error("expected '*' or '^'");
  product.ambient = *ambient;
  if (product.ambient < 1 || product.ambient > kMaxLabel) {
    throw Error(ErrorKind::BoundsError, "ambient dimension out of range");
  }
  check_product(product);
  return product;
}

std::string tree_to_json(const LabeledTree& tree) {
  json labels = json::object();
  for (std::size_t v = 0; v < tree.size(); ++v) labels[tree.name(v)] = tree.label(v);
  std::vector<std::pair<std::string, std::string>> edges;
  for (auto [s, t] : tree.edges()) edges.emplace_back(tree.name(s), tree.name(t));
  std::sort(edges.begin(), edges.end());
  json edge_list = json::array();
  for (const auto& [s, t] : edges) edge_list.push_back({s, t});
  json doc;
  doc["labels"] = labels;
  doc["edges"] = edge_list;
  doc["root"] = tree.name(tree.root());
  return doc.dump();
}

std::string tree_to_dsl(const LabeledTree& tree) {
  const auto token = [&](LabeledTree::Index v) {
    return tree.name(v) + ":" + std::to_string(tree.label(v));
  };
  if (tree.size() == 1) return token(tree.root());
  std::string out;
  for (std::size_t v = 0; v < tree.size(); ++v) {
    if (v == tree.root() || !tree.is_leaf(v)) continue;
    if (!out.empty()) out += " | ";
    for (auto u = v; u != LabeledTree::npos; u = tree.target(u)) {
      if (u != v) out += ">";
      out += token(u);
    }
  }
  return out;
}

}  // namespace treevar
