#ifndef UPLOGIC_STRUCTURE_HPP
#define UPLOGIC_STRUCTURE_HPP

#include "uplogic/rational.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace uplogic {

/// Subset of a structure's worlds, indexed like UpperProbStructure::worlds().
using WorldSet = boost::dynamic_bitset<>;

struct World {
  std::string id;
  /// Truth value per proposition; propositions not listed are false.
  std::map<std::string, bool> assignment;

  bool holds(const std::string& prop) const;
};

struct Measure {
  std::string id;
  /// One weight per world, in world order.
  std::vector<Rational> weights;
};

/// Finite upper probability structure (worlds, full powerset algebra, a
/// finite non-empty set of probability measures, truth assignment).
///
/// Construction validates every invariant: unique non-empty ids, known
/// propositions, non-negative weights summing to exactly 1.
class UpperProbStructure {
public:
  UpperProbStructure(std::vector<std::string> props, std::vector<World> worlds, std::vector<Measure> measures);

  const std::vector<std::string>& props() const { return props_; }
  const std::vector<World>& worlds() const { return worlds_; }
  const std::vector<Measure>& measures() const { return measures_; }
  std::size_t world_count() const { return worlds_.size(); }

  /// Index of a world id; InputError when unknown.
  std::size_t world_index(std::string_view id) const;
  WorldSet world_set(std::span<const std::string> ids) const;
  WorldSet empty_set() const { return WorldSet(worlds_.size()); }
  WorldSet full_set() const { return WorldSet(worlds_.size()).set(); }

  /// mu_i(S).
  Rational measure_of(std::size_t measure, const WorldSet& s) const;
  /// P*(S) = max over measures of mu(S).
  Rational upper_of(const WorldSet& s) const;
  /// P_*(S) = min over measures of mu(S).
  Rational lower_of(const WorldSet& s) const;
  Rational upper_of(std::span<const std::string> ids) const { return upper_of(world_set(ids)); }
  Rational lower_of(std::span<const std::string> ids) const { return lower_of(world_set(ids)); }

  friend bool operator==(const UpperProbStructure&, const UpperProbStructure&);

private:
  void check_size(const WorldSet& s) const;

  std::vector<std::string> props_;
  std::vector<World> worlds_;
  std::vector<Measure> measures_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Subset of a small ground set as a bit mask (bit i = element i).
using Subset = std::uint32_t;

inline constexpr std::size_t kDefaultGroundCap = 16;

/// Total map from the subsets of a finite ground set to [0,1].
class SetFunction {
public:
  /// `values` is indexed by Subset mask and must have 2^|ground| entries.
  SetFunction(std::vector<std::string> ground, std::vector<Rational> values);

  const std::vector<std::string>& ground() const { return ground_; }
  std::size_t ground_size() const { return ground_.size(); }
  std::size_t subset_count() const { return values_.size(); }
  Subset full() const { return static_cast<Subset>(values_.size() - 1); }
  Subset complement(Subset s) const { return full() & ~s; }

  const Rational& operator()(Subset s) const { return values_.at(s); }
  const std::vector<Rational>& values() const { return values_; }

  /// Mask for a list of element names; InputError on unknown names.
  Subset subset_of(std::span<const std::string> names) const;
  /// Element names of a mask, in ground order.
  std::vector<std::string> names_of(Subset s) const;
  /// Comma-joined sorted element names (the file key); "" for the empty set.
  std::string key_of(Subset s) const;

  /// Dual lower function u(X) = 1 - v(complement X).
  SetFunction dual() const;

  /// Copy with a single value replaced.
  SetFunction with_value(Subset s, Rational value) const;

  friend bool operator==(const SetFunction&, const SetFunction&) = default;

private:
  std::vector<std::string> ground_;
  std::vector<Rational> values_;
};

/// v(S) = P*(S) for every subset of the worlds. ResourceError when the
/// structure has more than `world_cap` worlds.
SetFunction set_function_of(const UpperProbStructure& m, std::size_t world_cap = kDefaultGroundCap);

/// Same shape as set_function_of but with lower probabilities.
SetFunction lower_function_of(const UpperProbStructure& m, std::size_t world_cap = kDefaultGroundCap);

// JSON documents. Rationals are strings "a/b" or integers; no floats.
//
// Structure:
//   {"props":["p"],
//    "worlds":[{"id":"w0","assign":{"p":true}}, ...],
//    "measures":[{"id":"m0","dist":{"w0":"1/4", ...}}, ...]}
// Worlds omitted from a dist have weight 0.
//
// Set function:
//   {"omega":["a","b"], "v":{"":"0","a":"1/2","a,b":"1", ...}}
// Keys are comma-joined sorted element names; "" and the full set default
// to 0 and 1, every other subset is mandatory.

UpperProbStructure load_structure(std::string_view json_text);
std::string save_structure(const UpperProbStructure& m);
SetFunction load_set_function(std::string_view json_text);
std::string save_set_function(const SetFunction& v);

/// Reads a whole file; InputError when it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace uplogic

#endif
