#include "chow/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "chow/errors.hpp"

namespace chow {

namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& what) {
  fail(ErrorCode::SchemaError, what);
}

const json& required(const json& obj, const std::string& key,
                     const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) schema(where + ": missing required key '" + key + "'");
  return *it;
}

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key))
      schema(where + ": unknown key '" + key + "'");
}

const json& as_object(const json& v, const std::string& where) {
  if (!v.is_object()) schema(where + ": expected an object");
  return v;
}

const json& as_array(const json& v, const std::string& where) {
  if (!v.is_array()) schema(where + ": expected an array");
  return v;
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) schema(where + ": expected a string");
  return v.get<std::string>();
}

long long as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer())
    schema(where + ": expected an integer (floating point is not accepted)");
  return v.get<long long>();
}

bool as_bool(const json& v, const std::string& where) {
  if (!v.is_boolean()) schema(where + ": expected a boolean");
  return v.get<bool>();
}

IntMatrix parse_matrix(const json& v, const std::string& where) {
  as_array(v, where);
  std::vector<std::vector<Int>> rows;
  std::size_t width = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    as_array(v[i], at);
    std::vector<Int> row;
    for (std::size_t j = 0; j < v[i].size(); ++j)
      row.emplace_back(as_int(v[i][j], at + "[" + std::to_string(j) + "]"));
    if (i == 0) {
      width = row.size();
    } else if (row.size() != width) {
      schema(where + ": rows must all have the same length");
    }
    rows.push_back(std::move(row));
  }
  return IntMatrix::from_rows(rows);
}

// {"generators": n, "relations": [[c_1..c_n], ...]}; each relation vector
// gives the coefficients of one relation and becomes a column internally.
PresentedGroup parse_group(const json& v, const std::string& where) {
  as_object(v, where);
  check_keys(v, {"generators", "relations"}, where);
  const long long gens = as_int(required(v, "generators", where),
                                where + ".generators");
  if (gens < 0) schema(where + ".generators: must be nonnegative");
  IntMatrix relations(static_cast<std::size_t>(gens), 0);
  auto it = v.find("relations");
  if (it != v.end()) {
    const json& rels = as_array(*it, where + ".relations");
    relations = IntMatrix(static_cast<std::size_t>(gens), rels.size());
    for (std::size_t k = 0; k < rels.size(); ++k) {
      const std::string at = where + ".relations[" + std::to_string(k) + "]";
      as_array(rels[k], at);
      if (rels[k].size() != static_cast<std::size_t>(gens))
        schema(at + ": a relation needs one coefficient per generator");
      for (std::size_t i = 0; i < rels[k].size(); ++i)
        relations(i, k) = Int(as_int(rels[k][i], at));
    }
  }
  return PresentedGroup(static_cast<std::size_t>(gens), std::move(relations));
}

void parse_strata(const json& v, ResolutionData& data) {
  const json& arr = as_array(v, "strata");
  if (arr.empty()) schema("strata: at least one stratum is required");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "strata[" + std::to_string(i) + "]";
    const json& s = as_object(arr[i], where);
    check_keys(s,
               {"id", "indices", "irreducible", "faces", "pic",
                "continuous_note"},
               where);
    Stratum stratum;
    stratum.id = as_string(required(s, "id", where), where + ".id");
    for (const json& ix :
         as_array(required(s, "indices", where), where + ".indices"))
      stratum.indices.push_back(
          static_cast<int>(as_int(ix, where + ".indices")));
    if (auto it = s.find("irreducible"); it != s.end())
      stratum.irreducible = as_bool(*it, where + ".irreducible");
    if (auto it = s.find("faces"); it != s.end())
      for (const json& f : as_array(*it, where + ".faces"))
        stratum.faces.push_back(as_string(f, where + ".faces"));
    data.pic_data.pic[stratum.id] =
        parse_group(required(s, "pic", where), where + ".pic");
    if (auto it = s.find("continuous_note"); it != s.end())
      data.pic_data.continuous_notes[stratum.id] =
          as_string(*it, where + ".continuous_note");
    data.strata.push_back(std::move(stratum));
  }
}

void parse_restrictions(const json& v, ResolutionData& data) {
  const json& arr = as_array(v, "restrictions");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "restrictions[" + std::to_string(i) + "]";
    const json& r = as_object(arr[i], where);
    check_keys(r, {"cell", "face", "matrix"}, where);
    const std::string cell = as_string(required(r, "cell", where), where + ".cell");
    const std::string face = as_string(required(r, "face", where), where + ".face");
    auto& slot = data.pic_data.restrictions[cell];
    if (slot.count(face))
      schema(where + ": duplicate restriction for cell '" + cell +
             "', face '" + face + "'");
    slot.emplace(face,
                 parse_matrix(required(r, "matrix", where), where + ".matrix"));
  }
}

void parse_over_point(const json& v, ResolutionData& data) {
  const json& obj = as_object(v, "over_point");
  for (const auto& [id, pt] : obj.items())
    data.over_point[id] =
        static_cast<int>(as_int(pt, "over_point['" + id + "']"));
}

void parse_resolution(const json& v, Config& config) {
  const json& obj = as_object(v, "resolution");
  check_keys(obj, {"pic", "restrictions"}, "resolution");
  config.resolution_pic =
      parse_group(required(obj, "pic", "resolution"), "resolution.pic");
  if (auto it = obj.find("restrictions"); it != obj.end()) {
    const json& arr = as_array(*it, "resolution.restrictions");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where =
          "resolution.restrictions[" + std::to_string(i) + "]";
      const json& r = as_object(arr[i], where);
      check_keys(r, {"component", "matrix"}, where);
      const std::string id =
          as_string(required(r, "component", where), where + ".component");
      if (config.resolution_restrictions.count(id))
        schema(where + ": duplicate restriction for component '" + id + "'");
      config.resolution_restrictions.emplace(
          id, parse_matrix(required(r, "matrix", where), where + ".matrix"));
    }
  }
}

void parse_smooth(const json& v, Config& config) {
  const json& obj = as_object(v, "smooth_2resolution");
  check_keys(obj,
             {"pic_resolution", "pic_singular", "pic_divisor",
              "map_resolution", "map_singular", "pi0_resolution",
              "pi0_singular", "pi0_divisor", "incidence_resolution",
              "incidence_singular"},
             "smooth_2resolution");
  Smooth2ResInput input;
  const std::string w = "smooth_2resolution";
  input.pic_resolution =
      parse_group(required(obj, "pic_resolution", w), w + ".pic_resolution");
  input.pic_singular =
      parse_group(required(obj, "pic_singular", w), w + ".pic_singular");
  input.pic_divisor =
      parse_group(required(obj, "pic_divisor", w), w + ".pic_divisor");
  input.map_resolution =
      parse_matrix(required(obj, "map_resolution", w), w + ".map_resolution");
  input.map_singular =
      parse_matrix(required(obj, "map_singular", w), w + ".map_singular");
  auto pi0 = [&](const char* key, std::size_t fallback) -> std::size_t {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    const long long n = as_int(*it, w + "." + key);
    if (n < 1) schema(w + "." + std::string(key) + ": must be at least 1");
    return static_cast<std::size_t>(n);
  };
  input.pi0_resolution = pi0("pi0_resolution", 1);
  input.pi0_singular = pi0("pi0_singular", 1);
  input.pi0_divisor = pi0("pi0_divisor", 1);
  if (auto it = obj.find("incidence_resolution"); it != obj.end())
    input.incidence_resolution = parse_matrix(*it, w + ".incidence_resolution");
  if (auto it = obj.find("incidence_singular"); it != obj.end())
    input.incidence_singular = parse_matrix(*it, w + ".incidence_singular");
  config.smooth = std::move(input);
}

void parse_outputs(const json& v, Config& config) {
  const json& obj = as_object(v, "outputs");
  check_keys(obj, {"text", "json", "dot"}, "outputs");
  if (auto it = obj.find("text"); it != obj.end())
    config.outputs.text = as_string(*it, "outputs.text");
  if (auto it = obj.find("json"); it != obj.end())
    config.outputs.json = as_string(*it, "outputs.json");
  if (auto it = obj.find("dot"); it != obj.end())
    config.outputs.dot = as_string(*it, "outputs.dot");
}

}  // namespace

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::Divisor: return "divisor";
    case Mode::Variety: return "variety";
    case Mode::Surface: return "surface";
    case Mode::Smooth2Res: return "smooth_2resolution";
  }
  fail(ErrorCode::Internal, "unhandled mode");
}

Config parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, std::string("config is not valid JSON: ") + e.what());
  }
  as_object(root, "config");

  const long long version =
      as_int(required(root, "schema_version", "config"), "schema_version");
  if (version != 1)
    schema("schema_version: only version 1 is understood, got " +
           std::to_string(version));

  const std::string mode_str =
      as_string(required(root, "mode", "config"), "mode");
  Config config;
  if (mode_str == "divisor") config.mode = Mode::Divisor;
  else if (mode_str == "variety") config.mode = Mode::Variety;
  else if (mode_str == "surface") config.mode = Mode::Surface;
  else if (mode_str == "smooth_2resolution") config.mode = Mode::Smooth2Res;
  else
    schema("mode: expected one of divisor, variety, surface, "
           "smooth_2resolution; got '" + mode_str + "'");

  std::set<std::string> allowed = {"schema_version", "mode", "outputs"};
  if (config.mode == Mode::Smooth2Res) {
    allowed.insert("smooth_2resolution");
  } else {
    allowed.insert({"dimension", "singular_points", "strata", "restrictions",
                    "contractible_claim"});
    if (config.mode != Mode::Divisor) allowed.insert({"resolution", "over_point"});
  }
  check_keys(root, allowed, "config");

  if (config.mode == Mode::Smooth2Res) {
    parse_smooth(required(root, "smooth_2resolution", "config"), config);
  } else {
    if (config.mode == Mode::Surface) {
      config.data.dimension = 2;
      if (auto it = root.find("dimension"); it != root.end()) {
        if (as_int(*it, "dimension") != 2)
          schema("dimension: surface mode is two-dimensional");
      }
    } else {
      config.data.dimension = static_cast<int>(
          as_int(required(root, "dimension", "config"), "dimension"));
      if (config.data.dimension < 2)
        schema("dimension: must be at least 2");
    }
    if (auto it = root.find("singular_points"); it != root.end()) {
      config.data.singular_points =
          static_cast<int>(as_int(*it, "singular_points"));
      if (config.data.singular_points < 1)
        schema("singular_points: must be at least 1");
    }
    if (auto it = root.find("contractible_claim"); it != root.end())
      config.data.contractible_claim = as_bool(*it, "contractible_claim");
    parse_strata(required(root, "strata", "config"), config.data);
    if (auto it = root.find("restrictions"); it != root.end())
      parse_restrictions(*it, config.data);
    if (auto it = root.find("over_point"); it != root.end())
      parse_over_point(*it, config.data);
    if (config.mode != Mode::Divisor)
      parse_resolution(required(root, "resolution", "config"), config);
  }
  if (auto it = root.find("outputs"); it != root.end())
    parse_outputs(*it, config);
  return config;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace chow
