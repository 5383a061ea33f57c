#include "lbp/registry.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace lbp {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

using Body = std::pair<int, std::function<double(const std::vector<double>&)>>;

// The fixed set of numeric bodies a registry file may bind.
const std::map<std::string, Body>& builtin_bodies() {
  static const std::map<std::string, Body> bodies = {
      {"sin", {1, [](const std::vector<double>& a) { return std::sin(a[0]); }}},
      {"cos", {1, [](const std::vector<double>& a) { return std::cos(a[0]); }}},
      {"neg_sin", {1, [](const std::vector<double>& a) { return -std::sin(a[0]); }}},
      {"exp", {1, [](const std::vector<double>& a) { return std::exp(a[0]); }}},
      {"log", {1, [](const std::vector<double>& a) { return std::log(a[0]); }}},
      {"d1_log", {1, [](const std::vector<double>& a) { return 1.0 / a[0]; }}},
      {"sigmoid", {1, [](const std::vector<double>& a) { return sigmoid(a[0]); }}},
      {"d1_sigmoid", {1, [](const std::vector<double>& a) { double s = sigmoid(a[0]); return s * (1.0 - s); }}},
      {"tanh", {1, [](const std::vector<double>& a) { return std::tanh(a[0]); }}},
      {"d1_tanh", {1, [](const std::vector<double>& a) { double t = std::tanh(a[0]); return 1.0 - t * t; }}},
      {"relu", {1, [](const std::vector<double>& a) { return a[0] < 0.0 ? 0.0 : a[0]; }}},
      {"step", {1, [](const std::vector<double>& a) { return a[0] < 0.0 ? 0.0 : 1.0; }}},
      {"sqrt", {1, [](const std::vector<double>& a) { return std::sqrt(a[0]); }}},
      {"d1_sqrt", {1, [](const std::vector<double>& a) { return 0.5 / std::sqrt(a[0]); }}},
      {"sub", {2, [](const std::vector<double>& a) { return a[0] - a[1]; }}},
  };
  return bodies;
}

}  // namespace

Registry Registry::builtins() {
  Registry r;
  auto body = [](const std::string& n) {
    const auto& b = builtin_bodies().at(n);
    return FuncSym{n, b.first, b.second, {}};
  };
  auto with = [&](const std::string& n, std::vector<DerivEntry> d) {
    FuncSym s = body(n);
    s.derivs = std::move(d);
    return s;
  };
  r.add(with("sin", {DerivEntry::sym("cos")}));
  r.add(with("cos", {DerivEntry::sym("neg_sin")}));
  r.add(body("neg_sin"));
  r.add(with("exp", {DerivEntry::sym("exp")}));
  r.add(with("log", {DerivEntry::sym("d1_log")}));
  r.add(body("d1_log"));
  r.add(with("sigmoid", {DerivEntry::sym("d1_sigmoid")}));
  r.add(body("d1_sigmoid"));
  r.add(with("tanh", {DerivEntry::sym("d1_tanh")}));
  r.add(body("d1_tanh"));
  r.add(with("relu", {DerivEntry::sym("step")}));
  r.add(body("step"));
  r.add(with("sqrt", {DerivEntry::sym("d1_sqrt")}));
  r.add(body("d1_sqrt"));
  r.add(with("sub", {DerivEntry::constant(1.0), DerivEntry::constant(-1.0)}));
  return r;
}

const FuncSym* Registry::find(const std::string& name) const {
  auto it = syms_.find(name);
  return it == syms_.end() ? nullptr : &it->second;
}

const FuncSym& Registry::get(const std::string& name) const {
  auto it = syms_.find(name);
  if (it == syms_.end()) throw RegistryError("unknown function symbol '" + name + "'");
  return it->second;
}

void Registry::add(FuncSym sym) {
  std::string n = sym.name;
  syms_[n] = std::move(sym);
}

void Registry::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RegistryError("cannot open registry file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream is(line);
    std::string name;
    if (!(is >> name) || name[0] == '#') continue;
    int arity = 0;
    if (!(is >> arity) || arity < 1)
      throw RegistryError(path + ":" + std::to_string(lineno) + ": bad arity for '" + name + "'");
    auto bit = builtin_bodies().find(name);
    if (bit == builtin_bodies().end())
      throw RegistryError(path + ":" + std::to_string(lineno) + ": unknown numeric body '" + name + "'");
    if (bit->second.first != arity)
      throw RegistryError(path + ":" + std::to_string(lineno) + ": arity mismatch for '" + name + "' (body has arity " +
                          std::to_string(bit->second.first) + ")");
    std::vector<DerivEntry> derivs;
    std::string tok;
    while (is >> tok) {
      char* end = nullptr;
      double v = std::strtod(tok.c_str(), &end);
      if (end && *end == '\0') {
        derivs.push_back(DerivEntry::constant(v));
      } else {
        const FuncSym* d = find(tok);
        if (!d)
          throw RegistryError(path + ":" + std::to_string(lineno) + ": derivative symbol '" + tok + "' is not registered");
        if (d->arity != arity)
          throw RegistryError(path + ":" + std::to_string(lineno) + ": derivative symbol '" + tok + "' has arity " +
                              std::to_string(d->arity) + ", expected " + std::to_string(arity));
        derivs.push_back(DerivEntry::sym(tok));
      }
    }
    if (!derivs.empty() && static_cast<int>(derivs.size()) != arity)
      throw RegistryError(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(arity) +
                          " derivative entries for '" + name + "'");
    add(FuncSym{name, arity, bit->second.second, std::move(derivs)});
  }
}

std::vector<std::string> Registry::names() const {
  std::vector<std::string> out;
  out.reserve(syms_.size());
  for (const auto& [k, v] : syms_) out.push_back(k);
  return out;
}

}  // namespace lbp
