#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sym/rational.hpp"

namespace qhl::sym {

enum class SymbolKind : uint8_t { Coordinate, Parameter, ExpGenerator, Unknown };

/// One monomial of an exponential-generator rate, kept in raw form so the
/// registry does not depend on Poly. Exponents are indexed by symbol id and
/// may only be nonzero on parameter symbols.
struct RateTerm {
  std::vector<int32_t> exponents;
  Rational coeff;
};

/// Formal generator E with E = exp(rate * direction), rate a polynomial in
/// the parameters. Differentiation rules:
///   dE/d(direction) = rate * E
///   dE/d(p)         = d(rate)/dp * direction * E   for a parameter p
struct ExpGen {
  std::string name;
  int symbol = -1;
  int direction = -1;
  std::vector<RateTerm> rate;
};

/// Immutable symbol registry: coordinates, then parameters, then exponential
/// generators, then unknown coefficients. Symbol ids index this order, which
/// is also the significance order of the graded-lex monomial comparison.
class VarSet {
 public:
  struct ExpGenSpec {
    std::string name;
    std::string direction;
    // rate monomials as (coefficient, {parameter name -> exponent})
    std::vector<std::pair<Rational, std::map<std::string, int>>> rate;
  };

  static std::shared_ptr<const VarSet> create(const std::vector<std::string>& coordinates,
                                              const std::vector<std::string>& parameters,
                                              const std::vector<ExpGenSpec>& exp_generators = {},
                                              const std::vector<std::string>& unknowns = {});

  /// The chart (x,h,z), optionally with the parameters C,D.
  static std::shared_ptr<const VarSet> chart(bool with_parameters);

  std::shared_ptr<const VarSet> with_unknowns(const std::vector<std::string>& names) const;
  std::shared_ptr<const VarSet> with_exp_generator(const ExpGenSpec& gen) const;

  std::size_t size() const { return names_.size(); }
  const std::string& name(int id) const { return names_[static_cast<std::size_t>(id)]; }
  SymbolKind kind(int id) const { return kinds_[static_cast<std::size_t>(id)]; }
  std::optional<int> index_of(const std::string& name) const;

  std::size_t coordinate_count() const { return n_coord_; }
  std::size_t parameter_count() const { return n_param_; }
  std::size_t unknown_count() const { return n_unknown_; }
  std::vector<int> ids_of_kind(SymbolKind k) const;

  const std::vector<ExpGen>& exp_gens() const { return exp_gens_; }
  /// Generator record for a symbol id, or nullptr.
  const ExpGen* exp_gen_of(int id) const;

  bool structurally_equal(const VarSet& other) const;

 private:
  VarSet() = default;

  std::vector<std::string> names_;
  std::vector<SymbolKind> kinds_;
  std::vector<ExpGen> exp_gens_;
  std::size_t n_coord_ = 0, n_param_ = 0, n_unknown_ = 0;
};

using VarSetPtr = std::shared_ptr<const VarSet>;

}  // namespace qhl::sym
