#include "strippress/models.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "strippress/errors.hpp"

namespace strippress {

NnSft hard_square_sft() {
  Alphabet a({"0", "1"});
  std::vector<std::pair<Sym, Sym>> pairs = {{0, 0}, {0, 1}, {1, 0}};
  return NnSft(a, PairSet(2, pairs), PairSet(2, pairs));
}

Model model_hard_core(double a, bool raw_vertex_value) {
  if (!(a > 0)) throw InputError("hard_core activity must be positive");
  NnSft sft = hard_square_sft();
  NnInteraction phi = NnInteraction::zero(2);
  phi.vertex_at(1) = raw_vertex_value ? a : -std::log(a);
  std::ostringstream d;
  d << "hard_core a=" << a << (raw_vertex_value ? " (raw vertex value)" : "");
  return Model{std::move(sft), std::move(phi), d.str(), PeriodicRow::constant(0),
               PeriodicRow::constant(0), std::nullopt};
}

Model model_ising(double beta, double h) {
  if (!std::isfinite(beta) || !std::isfinite(h))
    throw InputError("ising parameters must be finite");
  Alphabet a({"+1", "-1"});
  auto val = [](Sym s) { return s == 0 ? 1.0 : -1.0; };
  NnSft sft(a, PairSet::full(2), PairSet::full(2));
  NnInteraction phi = NnInteraction::zero(2);
  for (Sym u = 0; u < 2; ++u) {
    phi.vertex_at(u) = -beta * h * val(u);
    for (Sym v = 0; v < 2; ++v) {
      phi.hedge_at(u, v) = beta * val(u) * val(v);
      phi.vedge_at(u, v) = beta * val(u) * val(v);
    }
  }
  std::ostringstream d;
  d << "ising beta=" << beta << " h=" << h;
  return Model{std::move(sft), std::move(phi), d.str(), PeriodicRow::constant(0),
               PeriodicRow::constant(0), IsingParams{beta, h}};
}

Model model_checkerboard(int k) {
  if (k < 2) throw InputError("checkerboard needs k >= 2");
  std::vector<std::string> names;
  for (int i = 1; i <= k; ++i) names.push_back(std::to_string(i));
  NnSft sft(Alphabet(std::move(names)), PairSet::unequal(k), PairSet::unequal(k));
  std::ostringstream d;
  d << "checkerboard k=" << k;
  PeriodicRow row({0, 1});  // symbols "1","2"
  return Model{std::move(sft), NnInteraction::zero(k), d.str(), row, row, std::nullopt};
}

Model model_zero(NnSft sft, PeriodicRow bottom, PeriodicRow top, std::string description) {
  int n = sft.alphabet.size();
  return Model{std::move(sft), NnInteraction::zero(n), std::move(description),
               std::move(bottom), std::move(top), std::nullopt};
}

namespace {

std::map<std::string, double> parse_params(std::istringstream& in) {
  std::map<std::string, double> out;
  std::string tok;
  while (in >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == tok.size())
      throw ModelParseError("expected key=value, got '" + tok + "'");
    std::string key = tok.substr(0, eq);
    char* end = nullptr;
    double val = std::strtod(tok.c_str() + eq + 1, &end);
    if (end != tok.c_str() + tok.size())
      throw ModelParseError("bad numeric value in '" + tok + "'");
    out[key] = val;
  }
  return out;
}

double take(std::map<std::string, double>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw ModelParseError("missing parameter '" + key + "'");
  double v = it->second;
  params.erase(it);
  return v;
}

}  // namespace

Model parse_builtin(const std::string& text) {
  std::istringstream in(text);
  std::string name;
  if (!(in >> name)) throw ModelParseError("empty model spec");
  auto params = parse_params(in);
  auto done = [&params](const char* what) {
    if (!params.empty())
      throw ModelParseError(std::string("unknown parameter '") + params.begin()->first +
                            "' for " + what);
  };
  if (name == "hard_core") {
    double a = take(params, "a");
    bool raw = false;
    if (params.count("raw")) raw = take(params, "raw") != 0;
    done("hard_core");
    return model_hard_core(a, raw);
  }
  if (name == "ising") {
    double beta = take(params, "beta");
    double h = params.count("h") ? take(params, "h") : 0.0;
    done("ising");
    return model_ising(beta, h);
  }
  if (name == "checkerboard") {
    double k = take(params, "k");
    done("checkerboard");
    if (k != std::floor(k)) throw ModelParseError("checkerboard k must be an integer");
    return model_checkerboard(static_cast<int>(k));
  }
  if (name == "zero") {
    done("zero");
    return model_zero(hard_square_sft(), PeriodicRow::constant(0), PeriodicRow::constant(0),
                      "zero interaction on hard squares");
  }
  throw ModelParseError("unknown builtin model '" + name + "'");
}

std::string describe(const Model& model) {
  std::ostringstream os;
  os << "model: " << model.description << "\n";
  os << "alphabet:";
  for (const auto& n : model.sft.alphabet.names()) os << " " << n;
  os << "\ne1:";
  for (auto [a, b] : model.sft.e1.pairs())
    os << " (" << model.sft.alphabet.name(a) << "," << model.sft.alphabet.name(b) << ")";
  os << "\ne2 (lower,upper):";
  for (auto [a, b] : model.sft.e2.pairs())
    os << " (" << model.sft.alphabet.name(a) << "," << model.sft.alphabet.name(b) << ")";
  os << "\n";
  char buf[64];
  os << "vertex:";
  for (Sym s = 0; s < model.phi.alphabet_size; ++s) {
    std::snprintf(buf, sizeof buf, "%.17g", model.phi.vertex_at(s));
    os << " " << buf;
  }
  os << "\nhedge:";
  for (Sym a = 0; a < model.phi.alphabet_size; ++a)
    for (Sym b = 0; b < model.phi.alphabet_size; ++b) {
      std::snprintf(buf, sizeof buf, "%.17g", model.phi.hedge_at(a, b));
      os << " " << buf;
    }
  os << "\nvedge:";
  for (Sym a = 0; a < model.phi.alphabet_size; ++a)
    for (Sym b = 0; b < model.phi.alphabet_size; ++b) {
      std::snprintf(buf, sizeof buf, "%.17g", model.phi.vedge_at(a, b));
      os << " " << buf;
    }
  os << "\n";
  return os.str();
}

}  // namespace strippress
