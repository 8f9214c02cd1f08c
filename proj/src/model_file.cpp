#include "strippress/model_file.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "strippress/errors.hpp"

namespace strippress {

double parse_value_expr(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ModelParseError("empty value expression");

  double sign = 1;
  size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') {
    sign = s[0] == '-' ? -1 : 1;
    ++pos;
  }
  auto inner_number = [&](size_t open, const char* fn) {
    if (s.back() != ')') throw ModelParseError("missing ')' in " + text);
    std::string num = s.substr(open, s.size() - open - 1);
    char* end = nullptr;
    double v = std::strtod(num.c_str(), &end);
    if (end != num.c_str() + num.size())
      throw ModelParseError(std::string("bad argument to ") + fn + " in " + text);
    return v;
  };
  if (s.compare(pos, 4, "log(") == 0) {
    double v = inner_number(pos + 4, "log");
    if (!(v > 0)) throw ModelParseError("log of a non-positive value in " + text);
    return sign * std::log(v);
  }
  if (s.compare(pos, 4, "exp(") == 0) return sign * std::exp(inner_number(pos + 4, "exp"));
  char* end = nullptr;
  double v = std::strtod(s.c_str() + pos, &end);
  if (end != s.c_str() + s.size()) throw ModelParseError("bad value expression: " + text);
  return sign * v;
}

namespace {

struct Line {
  int number;
  std::string text;
};

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
  std::ostringstream os;
  os << origin << ":" << line << ": " << what;
  throw ModelParseError(os.str());
}

}  // namespace

ModelFileData parse_model_file(std::istream& in, const std::string& origin) {
  std::map<std::string, std::vector<Line>> sections;
  std::string section;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string trimmed;
    {
      size_t b = raw.find_first_not_of(" \t\r");
      size_t e = raw.find_last_not_of(" \t\r");
      if (b != std::string::npos) trimmed = raw.substr(b, e - b + 1);
    }
    if (trimmed.empty()) continue;
    if (trimmed.front() == '[') {
      if (trimmed.back() != ']') fail(origin, lineno, "unterminated section header");
      section = trimmed.substr(1, trimmed.size() - 2);
      if (section != "alphabet" && section != "e1" && section != "e2" &&
          section != "interaction" && section != "boundary")
        fail(origin, lineno, "unknown section [" + section + "]");
      continue;
    }
    if (section.empty()) fail(origin, lineno, "content before the first section header");
    sections[section].push_back({lineno, trimmed});
  }

  if (!sections.count("alphabet")) throw ModelParseError(origin + ": missing [alphabet]");
  std::vector<std::string> names;
  for (const auto& l : sections["alphabet"]) {
    std::istringstream is(l.text);
    std::string tok;
    while (is >> tok) names.push_back(tok);
  }
  Alphabet alphabet = [&] {
    try {
      return Alphabet(names);
    } catch (const InputError& e) {
      throw ModelParseError(origin + ": " + e.what());
    }
  }();

  auto lookup = [&](const std::string& name, int line) {
    Sym s = alphabet.index_of(name);
    if (s < 0) fail(origin, line, "unknown symbol '" + name + "'");
    return s;
  };

  auto parse_pairs = [&](const char* key) {
    std::vector<std::pair<Sym, Sym>> pairs;
    if (!sections.count(key)) throw ModelParseError(origin + ": missing [" + key + "]");
    for (const auto& l : sections[key]) {
      std::istringstream is(l.text);
      std::string a, b, extra;
      if (!(is >> a >> b) || (is >> extra))
        fail(origin, l.number, "expected exactly two symbol names");
      pairs.emplace_back(lookup(a, l.number), lookup(b, l.number));
    }
    return pairs;
  };

  const int asize = alphabet.size();
  NnSft sft(alphabet, PairSet(asize, parse_pairs("e1")), PairSet(asize, parse_pairs("e2")));

  NnInteraction phi = NnInteraction::zero(asize);
  for (const auto& l : sections["interaction"]) {
    auto eq = l.text.find('=');
    if (eq == std::string::npos) fail(origin, l.number, "expected 'table symbols = value'");
    std::istringstream lhs(l.text.substr(0, eq));
    std::string table, a, b, extra;
    lhs >> table;
    double value = [&] {
      try {
        return parse_value_expr(l.text.substr(eq + 1));
      } catch (const ModelParseError& e) {
        fail(origin, l.number, e.what());
      }
    }();
    if (table == "vertex") {
      if (!(lhs >> a) || (lhs >> extra)) fail(origin, l.number, "vertex takes one symbol");
      phi.vertex_at(lookup(a, l.number)) = value;
    } else if (table == "hedge" || table == "vedge") {
      if (!(lhs >> a >> b) || (lhs >> extra))
        fail(origin, l.number, table + " takes two symbols");
      if (table == "hedge")
        phi.hedge_at(lookup(a, l.number), lookup(b, l.number)) = value;
      else
        phi.vedge_at(lookup(a, l.number), lookup(b, l.number)) = value;
    } else {
      fail(origin, l.number, "unknown interaction table '" + table + "'");
    }
  }

  ModelFileData out{Model{std::move(sft), std::move(phi), "model file " + origin,
                          PeriodicRow::constant(0), PeriodicRow::constant(0), std::nullopt},
                    std::nullopt, std::nullopt};

  for (const auto& l : sections["boundary"]) {
    auto eq = l.text.find('=');
    if (eq == std::string::npos) fail(origin, l.number, "expected 't = word' or 'b = word'");
    std::istringstream lhs(l.text.substr(0, eq)), rhs(l.text.substr(eq + 1));
    std::string which, tok;
    lhs >> which;
    std::vector<Sym> word;
    while (rhs >> tok) word.push_back(lookup(tok, l.number));
    if (word.empty()) fail(origin, l.number, "empty boundary word");
    if (which == "t")
      out.top = PeriodicRow(word);
    else if (which == "b")
      out.bottom = PeriodicRow(word);
    else
      fail(origin, l.number, "boundary rows are named 't' and 'b'");
  }
  if (out.top) out.model.default_top = *out.top;
  if (out.bottom) out.model.default_bottom = *out.bottom;
  return out;
}

ModelFileData load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelParseError("cannot open model file: " + path);
  return parse_model_file(in, path);
}

}  // namespace strippress
