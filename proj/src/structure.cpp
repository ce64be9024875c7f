#include "uplogic/structure.hpp"

#include "uplogic/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace uplogic {

bool World::holds(const std::string& prop) const {
  auto it = assignment.find(prop);
  return it != assignment.end() && it->second;
}

UpperProbStructure::UpperProbStructure(std::vector<std::string> props, std::vector<World> worlds,
                                       std::vector<Measure> measures)
    : props_(std::move(props)), worlds_(std::move(worlds)), measures_(std::move(measures)) {
  std::set<std::string> prop_names;
  for (const auto& p : props_) {
    if (p.empty()) throw ValidationError("empty proposition name");
    if (!prop_names.insert(p).second) throw ValidationError("duplicate proposition '" + p + "'");
  }
  if (worlds_.empty()) throw ValidationError("a structure needs at least one world");
  if (measures_.empty()) throw ValidationError("a structure needs at least one measure");
  for (std::size_t i = 0; i < worlds_.size(); ++i) {
    const auto& w = worlds_[i];
    if (w.id.empty()) throw ValidationError("empty world id");
    if (!index_.emplace(w.id, i).second) throw ValidationError("duplicate world id '" + w.id + "'");
    for (const auto& [p, value] : w.assignment)
      if (!prop_names.contains(p))
        throw ValidationError("world '" + w.id + "' assigns undeclared proposition '" + p + "'");
  }
  std::set<std::string> measure_ids;
  for (const auto& m : measures_) {
    if (!measure_ids.insert(m.id).second) throw ValidationError("duplicate measure id '" + m.id + "'");
    if (m.weights.size() != worlds_.size())
      throw ValidationError("measure '" + m.id + "' does not give one weight per world");
    Rational total(0);
    for (std::size_t i = 0; i < m.weights.size(); ++i) {
      if (sign(m.weights[i]) < 0)
        throw ValidationError("measure '" + m.id + "' gives negative probability to world '" + worlds_[i].id + "'");
      total += m.weights[i];
    }
    if (total != 1)
      throw ValidationError("measure '" + m.id + "' sums to " + to_string(total) + ", not 1");
  }
}

std::size_t UpperProbStructure::world_index(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw InputError("unknown world id '" + std::string(id) + "'");
  return it->second;
}

WorldSet UpperProbStructure::world_set(std::span<const std::string> ids) const {
  WorldSet s(worlds_.size());
  for (const auto& id : ids) s.set(world_index(id));
  return s;
}

void UpperProbStructure::check_size(const WorldSet& s) const {
  if (s.size() != worlds_.size()) throw InputError("world set does not match the structure's worlds");
}

Rational UpperProbStructure::measure_of(std::size_t measure, const WorldSet& s) const {
  check_size(s);
  const auto& w = measures_.at(measure).weights;
  Rational total(0);
  for (auto i = s.find_first(); i != WorldSet::npos; i = s.find_next(i)) total += w[i];
  return total;
}

Rational UpperProbStructure::upper_of(const WorldSet& s) const {
  Rational best = measure_of(0, s);
  for (std::size_t m = 1; m < measures_.size(); ++m) best = std::max(best, measure_of(m, s));
  return best;
}

Rational UpperProbStructure::lower_of(const WorldSet& s) const {
  Rational best = measure_of(0, s);
  for (std::size_t m = 1; m < measures_.size(); ++m) best = std::min(best, measure_of(m, s));
  return best;
}

bool operator==(const UpperProbStructure& a, const UpperProbStructure& b) {
  if (a.props_ != b.props_ || a.worlds_.size() != b.worlds_.size() || a.measures_.size() != b.measures_.size())
    return false;
  for (std::size_t i = 0; i < a.worlds_.size(); ++i) {
    if (a.worlds_[i].id != b.worlds_[i].id) return false;
    for (const auto& p : a.props_)
      if (a.worlds_[i].holds(p) != b.worlds_[i].holds(p)) return false;
  }
  for (std::size_t i = 0; i < a.measures_.size(); ++i)
    if (a.measures_[i].id != b.measures_[i].id || a.measures_[i].weights != b.measures_[i].weights) return false;
  return true;
}

// ---------------------------------------------------------------------------

SetFunction::SetFunction(std::vector<std::string> ground, std::vector<Rational> values)
    : ground_(std::move(ground)), values_(std::move(values)) {
  if (ground_.size() > kDefaultGroundCap)
    throw ResourceError("ground set of " + std::to_string(ground_.size()) + " elements exceeds the cap of " +
                        std::to_string(kDefaultGroundCap));
  std::set<std::string> seen;
  for (const auto& e : ground_) {
    if (e.empty() || e.find(',') != std::string::npos)
      throw ValidationError("ground element names must be non-empty and comma-free");
    if (!seen.insert(e).second) throw ValidationError("duplicate ground element '" + e + "'");
  }
  if (values_.size() != (std::size_t{1} << ground_.size()))
    throw ValidationError("a set function needs one value per subset");
  for (std::size_t s = 0; s < values_.size(); ++s)
    if (sign(values_[s]) < 0 || values_[s] > 1)
      throw ValidationError("value " + to_string(values_[s]) + " at {" + key_of(static_cast<Subset>(s)) +
                            "} is outside [0,1]");
}

Subset SetFunction::subset_of(std::span<const std::string> names) const {
  Subset s = 0;
  for (const auto& n : names) {
    auto it = std::find(ground_.begin(), ground_.end(), n);
    if (it == ground_.end()) throw InputError("unknown ground element '" + n + "'");
    s |= Subset{1} << (it - ground_.begin());
  }
  return s;
}

std::vector<std::string> SetFunction::names_of(Subset s) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ground_.size(); ++i)
    if (s >> i & 1U) out.push_back(ground_[i]);
  return out;
}

std::string SetFunction::key_of(Subset s) const {
  auto names = names_of(s);
  std::sort(names.begin(), names.end());
  std::string key;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) key += ',';
    key += names[i];
  }
  return key;
}

SetFunction SetFunction::dual() const {
  std::vector<Rational> out(values_.size());
  for (Subset s = 0; s < values_.size(); ++s) out[s] = 1 - values_[complement(s)];
  return SetFunction(ground_, std::move(out));
}

SetFunction SetFunction::with_value(Subset s, Rational value) const {
  auto values = values_;
  values.at(s) = std::move(value);
  return SetFunction(ground_, std::move(values));
}

namespace {

template <class Select>
SetFunction envelope_function(const UpperProbStructure& m, std::size_t world_cap, Select select) {
  const std::size_t n = m.world_count();
  if (n > world_cap || n > kDefaultGroundCap)
    throw ResourceError("structure has " + std::to_string(n) + " worlds, above the cap of " +
                        std::to_string(std::min(world_cap, kDefaultGroundCap)));
  std::vector<std::string> ground;
  for (const auto& w : m.worlds()) ground.push_back(w.id);
  const std::size_t count = std::size_t{1} << n;
  // Subset sums per measure, built incrementally from the lowest set bit.
  std::vector<Rational> values(count);
  std::vector<Rational> sums(count);
  for (std::size_t k = 0; k < m.measures().size(); ++k) {
    const auto& w = m.measures()[k].weights;
    sums[0] = 0;
    for (std::size_t s = 1; s < count; ++s) {
      const std::size_t low = s & (~s + 1);
      sums[s] = sums[s ^ low] + w[static_cast<std::size_t>(__builtin_ctzll(low))];
    }
    for (std::size_t s = 0; s < count; ++s) values[s] = k == 0 ? sums[s] : select(values[s], sums[s]);
  }
  return SetFunction(std::move(ground), std::move(values));
}

using nlohmann::json;
using nlohmann::ordered_json;

Rational rational_from_json(const json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const InputError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Rational(j.get<std::uint64_t>());
    return Rational(j.get<std::int64_t>());
  }
  throw ValidationError(where + ": rationals must be strings \"a/b\" or integers");
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + " must be a JSON object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(where + " lacks \"" + key + "\"");
  return *it;
}

std::string string_of(const json& j, const std::string& where) {
  if (!j.is_string()) throw ValidationError(where + " must be a string");
  return j.get<std::string>();
}

}  // namespace

SetFunction set_function_of(const UpperProbStructure& m, std::size_t world_cap) {
  return envelope_function(m, world_cap, [](const Rational& a, const Rational& b) { return std::max(a, b); });
}

SetFunction lower_function_of(const UpperProbStructure& m, std::size_t world_cap) {
  return envelope_function(m, world_cap, [](const Rational& a, const Rational& b) { return std::min(a, b); });
}

UpperProbStructure load_structure(std::string_view json_text) {
  const json doc = parse_json(json_text);
  std::vector<std::string> props;
  const auto& jprops = member(doc, "props", "structure");
  if (!jprops.is_array()) throw ValidationError("\"props\" must be an array");
  for (const auto& p : jprops) props.push_back(string_of(p, "proposition"));

  std::vector<World> worlds;
  const auto& jworlds = member(doc, "worlds", "structure");
  if (!jworlds.is_array()) throw ValidationError("\"worlds\" must be an array");
  for (const auto& jw : jworlds) {
    World w;
    w.id = string_of(member(jw, "id", "world"), "world id");
    if (auto it = jw.find("assign"); it != jw.end()) {
      if (!it->is_object()) throw ValidationError("world '" + w.id + "': \"assign\" must be an object");
      for (const auto& [p, value] : it->items()) {
        if (!value.is_boolean()) throw ValidationError("world '" + w.id + "': truth values must be booleans");
        w.assignment[p] = value.get<bool>();
      }
    }
    worlds.push_back(std::move(w));
  }

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < worlds.size(); ++i) index.emplace(worlds[i].id, i);

  std::vector<Measure> measures;
  const auto& jmeasures = member(doc, "measures", "structure");
  if (!jmeasures.is_array()) throw ValidationError("\"measures\" must be an array");
  for (std::size_t k = 0; k < jmeasures.size(); ++k) {
    const auto& jm = jmeasures[k];
    Measure m;
    m.id = jm.contains("id") ? string_of(jm["id"], "measure id") : "m" + std::to_string(k);
    m.weights.assign(worlds.size(), Rational(0));
    const auto& dist = member(jm, "dist", "measure '" + m.id + "'");
    if (!dist.is_object()) throw ValidationError("measure '" + m.id + "': \"dist\" must be an object");
    for (const auto& [wid, value] : dist.items()) {
      auto it = index.find(wid);
      if (it == index.end()) throw ValidationError("measure '" + m.id + "' mentions unknown world '" + wid + "'");
      m.weights[it->second] = rational_from_json(value, "measure '" + m.id + "', world '" + wid + "'");
    }
    measures.push_back(std::move(m));
  }
  return UpperProbStructure(std::move(props), std::move(worlds), std::move(measures));
}

std::string save_structure(const UpperProbStructure& m) {
  ordered_json doc;
  doc["props"] = m.props();
  doc["worlds"] = ordered_json::array();
  for (const auto& w : m.worlds()) {
    ordered_json assign = ordered_json::object();
    for (const auto& p : m.props()) assign[p] = w.holds(p);
    doc["worlds"].push_back({{"id", w.id}, {"assign", std::move(assign)}});
  }
  doc["measures"] = ordered_json::array();
  for (const auto& meas : m.measures()) {
    ordered_json dist = ordered_json::object();
    for (std::size_t i = 0; i < m.world_count(); ++i) dist[m.worlds()[i].id] = to_string(meas.weights[i]);
    doc["measures"].push_back({{"id", meas.id}, {"dist", std::move(dist)}});
  }
  return doc.dump(2) + "\n";
}

SetFunction load_set_function(std::string_view json_text) {
  const json doc = parse_json(json_text);
  std::vector<std::string> ground;
  const auto& jomega = member(doc, "omega", "set function");
  if (!jomega.is_array()) throw ValidationError("\"omega\" must be an array");
  for (const auto& e : jomega) ground.push_back(string_of(e, "ground element"));
  if (ground.size() > kDefaultGroundCap)
    throw ResourceError("ground set of " + std::to_string(ground.size()) + " elements exceeds the cap of " +
                        std::to_string(kDefaultGroundCap));

  // Validates names before we start interpreting keys.
  SetFunction shape(ground, std::vector<Rational>(std::size_t{1} << ground.size(), Rational(0)));

  const std::size_t count = shape.subset_count();
  std::vector<Rational> values(count);
  std::vector<bool> given(count, false);
  const auto& jv = member(doc, "v", "set function");
  if (!jv.is_object()) throw ValidationError("\"v\" must be an object");
  for (const auto& [key, value] : jv.items()) {
    std::vector<std::string> names;
    if (!key.empty()) {
      std::stringstream ss(key);
      std::string part;
      while (std::getline(ss, part, ',')) names.push_back(part);
      if (key.back() == ',') names.emplace_back();
    }
    std::set<std::string> unique(names.begin(), names.end());
    if (unique.size() != names.size()) throw ValidationError("subset key '" + key + "' repeats an element");
    Subset s;
    try {
      s = shape.subset_of(names);
    } catch (const InputError&) {
      throw ValidationError("subset key '" + key + "' names an element outside omega");
    }
    if (given[s]) throw ValidationError("subset {" + key + "} is given twice");
    given[s] = true;
    values[s] = rational_from_json(value, "v(" + key + ")");
  }
  if (!given[0]) values[0] = 0;
  if (!given[count - 1]) values[count - 1] = 1;
  given[0] = given[count - 1] = true;
  for (std::size_t s = 0; s < count; ++s)
    if (!given[s]) throw ValidationError("set function lacks a value for {" + shape.key_of(static_cast<Subset>(s)) + "}");
  return SetFunction(std::move(ground), std::move(values));
}

std::string save_set_function(const SetFunction& v) {
  ordered_json doc;
  doc["omega"] = v.ground();
  ordered_json values = ordered_json::object();
  for (Subset s = 0; s < v.subset_count(); ++s) values[v.key_of(s)] = to_string(v(s));
  doc["v"] = std::move(values);
  return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << contents;
}

}  // namespace uplogic
