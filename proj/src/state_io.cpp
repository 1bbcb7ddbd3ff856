#include "hptoda/state_io.hpp"

#include <fstream>
#include <sstream>

#include "hptoda/error.hpp"
#include "json.hpp"

namespace hptoda {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void schema_fail(const std::string& where, const std::string& why) {
  throw Error(ErrorKind::ParseError, where + ": " + why);
}

// State files only accept the plain rational grammar (no exponent forms).
Rat parse_entry(const ordered_json& j, const std::string& where) {
  if (!j.is_string()) schema_fail(where, "expected a rational written as a string");
  const std::string& s = j.get_ref<const std::string&>();
  if (s.find_first_of("eE") != std::string::npos) schema_fail(where, "exponent notation is not allowed");
  try {
    return Rat::parse(s);
  } catch (const Error& e) {
    schema_fail(where, e.detail());
  }
}

long parse_int(const ordered_json& obj, const char* key, long min_value) {
  if (!obj.contains(key)) schema_fail(key, "missing");
  const auto& j = obj[key];
  if (!j.is_number_integer()) schema_fail(key, "expected an integer");
  const long v = j.get<long>();
  if (v < min_value) schema_fail(key, "must be at least " + std::to_string(min_value));
  return v;
}

}  // namespace

TodaState parse_state_text(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::ostringstream os;
    os << "JSON syntax at byte " << e.byte << ": " << e.what();
    throw Error(ErrorKind::ParseError, os.str());
  }
  if (!doc.is_object()) schema_fail("state", "expected a JSON object");
  for (const auto& [key, value] : doc.items())
    if (key != "N" && key != "M" && key != "t" && key != "I" && key != "V")
      schema_fail(key, "unknown field");
  const long n = parse_int(doc, "N", 1);
  const long m = parse_int(doc, "M", 1);
  const long t = doc.contains("t") ? parse_int(doc, "t", 0) : 0;
  if (!doc.contains("I") || !doc["I"].is_array()) schema_fail("I", "expected an array of layers");
  if (!doc.contains("V") || !doc["V"].is_array()) schema_fail("V", "expected an array");
  const auto& ij = doc["I"];
  const auto& vj = doc["V"];
  if (static_cast<long>(ij.size()) != m)
    schema_fail("I", "has " + std::to_string(ij.size()) + " layers, M = " + std::to_string(m));
  if (static_cast<long>(vj.size()) != n)
    schema_fail("V", "has " + std::to_string(vj.size()) + " entries, N = " + std::to_string(n));
  std::vector<std::vector<Rat>> layers;
  for (std::size_t j = 0; j < ij.size(); ++j) {
    const std::string where = "I[" + std::to_string(j) + "]";
    if (!ij[j].is_array() || static_cast<long>(ij[j].size()) != n)
      schema_fail(where, "expected " + std::to_string(n) + " entries");
    std::vector<Rat> layer;
    for (std::size_t k = 0; k < ij[j].size(); ++k)
      layer.push_back(parse_entry(ij[j][k], where + "[" + std::to_string(k) + "]"));
    layers.push_back(std::move(layer));
  }
  std::vector<Rat> v;
  for (std::size_t k = 0; k < vj.size(); ++k) v.push_back(parse_entry(vj[k], "V[" + std::to_string(k) + "]"));
  TodaState s = make_state(std::move(layers), std::move(v), t);
  if (auto bad = validate(s)) throw Error(ErrorKind::ValidationError, bad->reason);
  return s;
}

TodaState parse_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open state file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_state_text(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.detail());
  }
}

namespace {

ordered_json to_json(const TodaState& s) {
  ordered_json j;
  j["N"] = s.sites;
  j["M"] = s.depth;
  j["t"] = s.time;
  ordered_json layers = ordered_json::array();
  for (const auto& layer : s.i_layers) {
    ordered_json row = ordered_json::array();
    for (const Rat& r : layer) row.push_back(r.str());
    layers.push_back(std::move(row));
  }
  j["I"] = std::move(layers);
  ordered_json v = ordered_json::array();
  for (const Rat& r : s.v) v.push_back(r.str());
  j["V"] = std::move(v);
  return j;
}

}  // namespace

std::string serialize_state(const TodaState& s) { return to_json(s).dump(); }

std::string serialize_trajectory(const std::vector<TodaState>& traj) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out += "  " + serialize_state(traj[i]);
    out += i + 1 < traj.size() ? ",\n" : "\n";
  }
  return out + "]\n";
}

}  // namespace hptoda
