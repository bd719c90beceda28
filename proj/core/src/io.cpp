#include "cubeavg/io.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cubeavg/errors.hpp"

namespace cubeavg {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::BadConfig, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::BadConfig, "cannot write " + path);
  out << content;
}

namespace {

Rational json_rational(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  throw Error(Errc::BadConfig, "expected a rational string or integer");
}

// Minimal TOML reader covering the system-config schema: top-level
// key = value lines (strings, booleans, integers, single-line arrays)
// plus repeated [[transformations]] tables.
struct TomlValue {
  std::string raw;
};

std::vector<std::string> split_toml_array(const std::string& s, const std::string& ctx) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw Error(Errc::BadConfig, "bad TOML array for " + ctx);
  std::vector<std::string> items;
  std::string cur;
  bool in_str = false;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    char c = s[i];
    if (c == '"') in_str = !in_str;
    if (c == ',' && !in_str) {
      items.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) items.push_back(cur);
  return items;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Json toml_scalar(const std::string& raw, const std::string& ctx) {
  std::string v = trim(raw);
  if (v.empty()) throw Error(Errc::BadConfig, "empty TOML value for " + ctx);
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"')
      throw Error(Errc::BadConfig, "unterminated string for " + ctx);
    return Json(v.substr(1, v.size() - 2));
  }
  if (v == "true") return Json(true);
  if (v == "false") return Json(false);
  if (v.front() == '[') {
    Json arr = Json::array();
    for (const auto& item : split_toml_array(v, ctx)) {
      std::string t = trim(item);
      if (t.empty()) continue;
      arr.push_back(toml_scalar(t, ctx));
    }
    return arr;
  }
  try {
    std::size_t pos = 0;
    long long n = std::stoll(v, &pos);
    if (pos == v.size()) return Json(n);
  } catch (const std::exception&) {
  }
  throw Error(Errc::BadConfig, "unsupported TOML value for " + ctx + ": " + v);
}

Json toml_to_json(const std::string& text) {
  Json root = Json::object();
  Json* target = &root;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) {
      // keep # inside strings
      bool in_str = false;
      for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_str = !in_str;
        if (line[i] == '#' && !in_str) {
          line = line.substr(0, i);
          break;
        }
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.rfind("[[", 0) == 0 && line.size() > 4 && line.substr(line.size() - 2) == "]]") {
      std::string name = trim(line.substr(2, line.size() - 4));
      if (!root.contains(name)) root[name] = Json::array();
      root[name].push_back(Json::object());
      target = &root[name].back();
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(Errc::BadConfig, "bad TOML line: " + line);
    std::string key = trim(line.substr(0, eq));
    (*target)[key] = toml_scalar(line.substr(eq + 1), key);
  }
  return root;
}

}  // namespace

System system_from_json(const Json& j) {
  if (!j.contains("points") || !j.contains("weights") || !j.contains("transformations"))
    throw Error(Errc::BadConfig, "system config needs points, weights, transformations");

  ProbabilitySpace space;
  std::map<std::string, int> point_index;
  for (const auto& p : j.at("points")) {
    std::string label = p.is_string() ? p.get<std::string>() : p.dump();
    if (!point_index.emplace(label, static_cast<int>(space.labels.size())).second)
      throw Error(Errc::BadConfig, "duplicate point label " + label);
    space.labels.push_back(label);
  }
  for (const auto& w : j.at("weights")) space.weights.push_back(json_rational(w));
  if (space.weights.size() != space.labels.size())
    throw Error(Errc::BadConfig, "points and weights differ in length");

  std::vector<Transformation> transforms;
  for (const auto& tj : j.at("transformations")) {
    Transformation t;
    for (const auto& img : tj.at("image")) {
      std::string label = img.is_string() ? img.get<std::string>() : img.dump();
      auto it = point_index.find(label);
      if (it == point_index.end())
        throw Error(Errc::BadConfig, "unknown point label " + label + " in image");
      t.image.push_back(it->second);
    }
    transforms.push_back(std::move(t));
  }

  const bool require_commuting = j.value("require_commuting", true);
  return validate_system(std::move(space), std::move(transforms), require_commuting);
}

System system_from_toml(const std::string& text) { return system_from_json(toml_to_json(text)); }

System load_system(const std::string& path) {
  const std::string text = read_file(path);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{')
    return system_from_json(Json::parse(text));
  return system_from_toml(text);
}

Observable load_observable(const std::string& path, const ProbabilitySpace& space) {
  Json j = Json::parse(read_file(path));
  if (!j.contains("values")) throw Error(Errc::BadConfig, "observable file needs values");
  Observable f;
  for (const auto& v : j.at("values")) f.values.push_back(json_rational(v));
  if (f.size() != space.size())
    throw Error(Errc::MismatchedSpace, "observable length does not match the space");
  return f;
}

LatticeSubset load_subset(const std::string& path) {
  Json j = Json::parse(read_file(path));
  LatticeSubset a;
  for (const auto& m : j.at("moduli")) {
    long long v = m.get<long long>();
    if (v < 1) throw Error(Errc::BadConfig, "moduli must be positive");
    a.moduli.push_back(v);
  }
  a.members.assign(static_cast<std::size_t>(a.cell_count()), false);
  for (const auto& cell : j.at("members")) {
    std::vector<long long> coords;
    if (cell.is_array())
      for (const auto& c : cell) coords.push_back(c.get<long long>());
    else
      coords.push_back(cell.get<long long>());
    if (static_cast<int>(coords.size()) != a.dims())
      throw Error(Errc::BadConfig, "member arity does not match moduli");
    for (int i = 0; i < a.dims(); ++i)
      if (coords[i] < 0 || coords[i] >= a.moduli[i])
        throw Error(Errc::BadConfig, "member coordinate out of range");
    a.members[static_cast<std::size_t>(a.index_of(coords))] = true;
  }
  return a;
}

LoadedCubeSpec load_cube_spec(const std::string& path) {
  const auto dir = std::filesystem::path(path).parent_path();
  Json j = Json::parse(read_file(path));
  LoadedCubeSpec spec;
  spec.system = load_system((dir / j.at("system").get<std::string>()).string());

  for (const auto& [bits, val] : j.at("functions").items()) {
    EpsilonMask eps = parse_epsilon_bits(bits);
    Observable f;
    if (val.is_string()) {
      f = load_observable((dir / val.get<std::string>()).string(), spec.system.space);
    } else {
      for (const auto& v : val.at("values")) f.values.push_back(json_rational(v));
      if (f.size() != spec.system.size())
        throw Error(Errc::MismatchedSpace, "inline function length mismatch");
    }
    spec.functions.emplace(eps, std::move(f));
  }

  if (j.contains("box") && !j.at("box").is_null())
    for (const auto& iv : j.at("box"))
      spec.box.push_back({iv.at(0).get<long long>(), iv.at(1).get<long long>()});
  if (j.contains("rank_cap") && !j.at("rank_cap").is_null())
    spec.rank_cap = j.at("rank_cap").get<int>();
  return spec;
}

Json observable_to_json(const ProbabilitySpace& space, const Observable& f) {
  Json values = Json::array();
  Json floats = Json::array();
  for (const auto& v : f.values) {
    values.push_back(rational_string(v));
    floats.push_back(to_double(v));
  }
  Json out = Json::object();
  out["values"] = std::move(values);
  out["values_float"] = std::move(floats);
  return out;
}

}  // namespace cubeavg
