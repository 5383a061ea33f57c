#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace lbp {

/// A per-argument derivative: either another registered symbol of the same
/// arity, or a constant (which materializes as a numeral, like sub's 1 / -1).
struct DerivEntry {
  bool is_const = false;
  double value = 0.0;
  std::string symbol;

  static DerivEntry constant(double v) { return {true, v, ""}; }
  static DerivEntry sym(std::string s) { return {false, 0.0, std::move(s)}; }
};

/// A real function symbol: numeric evaluator plus (optionally) the list of
/// derivative symbols ∂_1 f ... ∂_k f. Symbols without derivatives are
/// derivative-only (usable in graphs, not differentiable further).
struct FuncSym {
  std::string name;
  int arity = 1;
  std::function<double(const std::vector<double>&)> eval;
  std::vector<DerivEntry> derivs;  // empty: no registered derivatives

  bool differentiable() const { return !derivs.empty(); }
};

struct RegistryError : std::runtime_error {
  explicit RegistryError(const std::string& m) : std::runtime_error(m) {}
};

class Registry {
 public:
  /// sin, cos, exp, log, sigmoid, tanh, relu, sub and their derivative
  /// symbols (neg_sin, d1_log, d1_sigmoid, d1_tanh, step, ...).
  static Registry builtins();

  const FuncSym* find(const std::string& name) const;
  const FuncSym& get(const std::string& name) const;
  bool has(const std::string& name) const { return syms_.count(name) != 0; }
  void add(FuncSym sym);

  /// Registry file: one line per symbol, `name arity deriv1 ... derivK`.
  /// The name must have a known built-in numeric body; derivs are registered
  /// symbol names of the same arity or numeric constants.
  void load_file(const std::string& path);

  std::vector<std::string> names() const;

 private:
  std::map<std::string, FuncSym> syms_;
};

}  // namespace lbp
