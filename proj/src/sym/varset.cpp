#include "sym/varset.hpp"

#include <algorithm>
#include <set>

#include "sym/errors.hpp"

namespace qhl::sym {

namespace {

std::vector<std::string> collect_names(const std::vector<std::string>& coords,
                                       const std::vector<std::string>& params,
                                       const std::vector<VarSet::ExpGenSpec>& gens,
                                       const std::vector<std::string>& unknowns) {
  std::vector<std::string> all;
  all.insert(all.end(), coords.begin(), coords.end());
  all.insert(all.end(), params.begin(), params.end());
  for (const auto& g : gens) all.push_back(g.name);
  all.insert(all.end(), unknowns.begin(), unknowns.end());
  return all;
}

}  // namespace

std::shared_ptr<const VarSet> VarSet::create(const std::vector<std::string>& coordinates,
                                             const std::vector<std::string>& parameters,
                                             const std::vector<ExpGenSpec>& exp_generators,
                                             const std::vector<std::string>& unknowns) {
  auto vs = std::shared_ptr<VarSet>(new VarSet());
  vs->names_ = collect_names(coordinates, parameters, exp_generators, unknowns);

  std::set<std::string> seen;
  for (const auto& n : vs->names_) {
    if (n.empty()) fail(Errc::InvalidArgument, "empty symbol name");
    if (!seen.insert(n).second) fail(Errc::InvalidArgument, "duplicate symbol name: " + n);
  }

  vs->n_coord_ = coordinates.size();
  vs->n_param_ = parameters.size();
  vs->n_unknown_ = unknowns.size();
  vs->kinds_.assign(vs->names_.size(), SymbolKind::Unknown);
  std::size_t at = 0;
  for (std::size_t i = 0; i < coordinates.size(); ++i) vs->kinds_[at++] = SymbolKind::Coordinate;
  for (std::size_t i = 0; i < parameters.size(); ++i) vs->kinds_[at++] = SymbolKind::Parameter;
  for (std::size_t i = 0; i < exp_generators.size(); ++i) vs->kinds_[at++] = SymbolKind::ExpGenerator;

  const std::size_t total = vs->names_.size();
  for (std::size_t gi = 0; gi < exp_generators.size(); ++gi) {
    const auto& spec = exp_generators[gi];
    ExpGen gen;
    gen.name = spec.name;
    gen.symbol = static_cast<int>(coordinates.size() + parameters.size() + gi);
    auto dir = vs->index_of(spec.direction);
    if (!dir || vs->kind(*dir) != SymbolKind::Coordinate)
      fail(Errc::InvalidArgument, "exp generator direction must be a coordinate: " + spec.direction);
    gen.direction = *dir;
    for (const auto& [coeff, mono] : spec.rate) {
      RateTerm t;
      t.exponents.assign(total, 0);
      t.coeff = coeff;
      for (const auto& [pname, e] : mono) {
        auto pid = vs->index_of(pname);
        if (!pid || vs->kind(*pid) != SymbolKind::Parameter)
          fail(Errc::InvalidArgument, "exp generator rate must be a polynomial in parameters only");
        if (e < 0) fail(Errc::InvalidArgument, "negative exponent in exp generator rate");
        t.exponents[static_cast<std::size_t>(*pid)] = e;
      }
      if (t.coeff != 0) gen.rate.push_back(std::move(t));
    }
    if (gen.rate.empty())
      fail(Errc::InvalidArgument, "exp generator rate is identically zero: " + spec.name);
    vs->exp_gens_.push_back(std::move(gen));
  }
  return vs;
}

std::shared_ptr<const VarSet> VarSet::chart(bool with_parameters) {
  static const std::vector<std::string> coords{"x", "h", "z"};
  if (with_parameters) return create(coords, {"C", "D"});
  return create(coords, {});
}

std::shared_ptr<const VarSet> VarSet::with_unknowns(const std::vector<std::string>& names) const {
  std::vector<std::string> coords, params, unknowns;
  std::vector<ExpGenSpec> gens;
  for (std::size_t i = 0; i < size(); ++i) {
    switch (kinds_[i]) {
      case SymbolKind::Coordinate: coords.push_back(names_[i]); break;
      case SymbolKind::Parameter: params.push_back(names_[i]); break;
      case SymbolKind::Unknown: unknowns.push_back(names_[i]); break;
      case SymbolKind::ExpGenerator: break;
    }
  }
  unknowns.insert(unknowns.end(), names.begin(), names.end());
  for (const auto& g : exp_gens_) {
    ExpGenSpec spec;
    spec.name = g.name;
    spec.direction = names_[static_cast<std::size_t>(g.direction)];
    for (const auto& t : g.rate) {
      std::map<std::string, int> mono;
      for (std::size_t s = 0; s < t.exponents.size(); ++s)
        if (t.exponents[s] != 0) mono[names_[s]] = t.exponents[s];
      spec.rate.emplace_back(t.coeff, std::move(mono));
    }
    gens.push_back(std::move(spec));
  }
  return create(coords, params, gens, unknowns);
}

std::shared_ptr<const VarSet> VarSet::with_exp_generator(const ExpGenSpec& gen) const {
  std::vector<std::string> coords, params, unknowns;
  std::vector<ExpGenSpec> gens;
  for (std::size_t i = 0; i < size(); ++i) {
    switch (kinds_[i]) {
      case SymbolKind::Coordinate: coords.push_back(names_[i]); break;
      case SymbolKind::Parameter: params.push_back(names_[i]); break;
      case SymbolKind::Unknown: unknowns.push_back(names_[i]); break;
      case SymbolKind::ExpGenerator: break;
    }
  }
  for (const auto& g : exp_gens_) {
    ExpGenSpec spec;
    spec.name = g.name;
    spec.direction = names_[static_cast<std::size_t>(g.direction)];
    for (const auto& t : g.rate) {
      std::map<std::string, int> mono;
      for (std::size_t s = 0; s < t.exponents.size(); ++s)
        if (t.exponents[s] != 0) mono[names_[s]] = t.exponents[s];
      spec.rate.emplace_back(t.coeff, std::move(mono));
    }
    gens.push_back(std::move(spec));
  }
  gens.push_back(gen);
  return create(coords, params, gens, unknowns);
}

std::optional<int> VarSet::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<int>(it - names_.begin());
}

std::vector<int> VarSet::ids_of_kind(SymbolKind k) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (kinds_[i] == k) out.push_back(static_cast<int>(i));
  return out;
}

const ExpGen* VarSet::exp_gen_of(int id) const {
  for (const auto& g : exp_gens_)
    if (g.symbol == id) return &g;
  return nullptr;
}

bool VarSet::structurally_equal(const VarSet& other) const {
  if (names_ != other.names_) return false;
  if (kinds_ != other.kinds_) return false;
  if (exp_gens_.size() != other.exp_gens_.size()) return false;
  for (std::size_t i = 0; i < exp_gens_.size(); ++i) {
    const auto& a = exp_gens_[i];
    const auto& b = other.exp_gens_[i];
    if (a.name != b.name || a.symbol != b.symbol || a.direction != b.direction) return false;
    if (a.rate.size() != b.rate.size()) return false;
    for (std::size_t t = 0; t < a.rate.size(); ++t)
      if (a.rate[t].exponents != b.rate[t].exponents || a.rate[t].coeff != b.rate[t].coeff)
        return false;
  }
  return true;
}

}  // namespace qhl::sym
