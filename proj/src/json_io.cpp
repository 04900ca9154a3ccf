#include "dpp/json_io.hpp"

#include <cctype>
#include <fstream>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace dpp {
namespace {

// JSON-pointer token escaping: ~ -> ~0, / -> ~1.
std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '~')
      out += "~0";
    else if (c == '/')
      out += "~1";
    else
      out.push_back(c);
  }
  return out;
}

const Json& field(const Json& obj, const std::string& ptr, const char* name) {
  auto it = obj.find(name);
  if (it == obj.end())
    throw ParseError(ptr + "/" + name, "required field is missing");
  return *it;
}

void reject_unknown(const Json& obj, const std::string& ptr,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ParseError(ptr + "/" + esc(key), "unknown field");
  }
}

std::string string_at(const Json& v, const std::string& ptr) {
  if (!v.is_string()) throw ParseError(ptr, "expected a string");
  return v.get<std::string>();
}

std::vector<std::string> name_list(const Json& v, const std::string& ptr) {
  if (!v.is_array() || v.empty())
    throw ParseError(ptr, "expected a nonempty array of names");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string where = ptr + "/" + std::to_string(i);
    std::string name = string_at(v[i], where);
    if (name.empty()) throw ParseError(where, "name must be nonempty");
    if (name.find('|') != std::string::npos)
      throw ParseError(where, "name must not contain '|'");
    if (!seen.insert(name).second)
      throw ParseError(where, "duplicate name \"" + name + "\"");
    out.push_back(std::move(name));
  }
  return out;
}

Dist<ObsId> obs_dist(const Json& v, const Interface& iface, const std::string& ptr) {
  if (!v.is_object())
    throw ParseError(ptr, "expected an object of observation masses");
  std::vector<Dist<ObsId>::Entry> raw;
  for (const auto& [name, mass] : v.items()) {
    const std::string where = ptr + "/" + esc(name);
    ObsId o = iface.observation_id(name, where);
    raw.emplace_back(o, parse_rational(string_at(mass, where), where));
  }
  try {
    return Dist<ObsId>::make(std::move(raw));
  } catch (const ContractError& e) {
    throw ParseError(ptr, e.what());
  }
}

std::map<Trajectory, Rational> trajectory_table(const Json& v, const Interface& iface,
                                                const std::string& ptr) {
  if (!v.is_object())
    throw ParseError(ptr, "expected an object keyed by trajectories");
  std::map<Trajectory, Rational> out;
  for (const auto& [key, val] : v.items()) {
    const std::string where = ptr + "/" + esc(key);
    Trajectory w = parse_history_key(key, iface, where);
    if (w.length() != static_cast<std::size_t>(iface.horizon()))
      throw ParseError(where, "trajectory must have length equal to the horizon");
    out.emplace(std::move(w), parse_rational(string_at(val, where), where));
  }
  return out;
}

FeatureMap parse_feature_map(const Json& v, const Interface& iface) {
  const std::string ptr = "/feature_map";
  if (!v.is_object()) throw ParseError(ptr, "expected an object");
  std::string kind = string_at(field(v, ptr, "kind"), ptr + "/kind");
  if (kind == "k_window") {
    reject_unknown(v, ptr, {"kind", "k"});
    const Json& kv = field(v, ptr, "k");
    if (!kv.is_number_integer()) throw ParseError(ptr + "/k", "expected an integer");
    try {
      return k_window_feature(kv.get<int>(), iface);
    } catch (const ContractError& e) {
      throw ParseError(ptr + "/k", e.what());
    }
  }
  if (kind == "table") {
    reject_unknown(v, ptr, {"kind", "map"});
    const Json& mv = field(v, ptr, "map");
    if (!mv.is_object()) throw ParseError(ptr + "/map", "expected an object");
    std::map<History, std::string> names;
    for (const auto& [key, val] : mv.items()) {
      const std::string where = ptr + "/map/" + esc(key);
      names.emplace(parse_history_key(key, iface, where), string_at(val, where));
    }
    try {
      return table_feature(iface, names);
    } catch (const ContractError& e) {
      throw ParseError(ptr + "/map", e.what());
    }
  }
  throw ParseError(ptr + "/kind", "unknown feature map kind \"" + kind + "\"");
}

GammaWeights parse_gamma(const Json& v, const Interface& iface) {
  const std::string ptr = "/gamma";
  if (!v.is_array()) throw ParseError(ptr, "expected an array of rationals");
  if (v.size() != static_cast<std::size_t>(iface.horizon()))
    throw ParseError(ptr, "gamma length must equal the horizon");
  std::vector<Rational> w;
  for (std::size_t t = 0; t < v.size(); ++t) {
    const std::string where = ptr + "/" + std::to_string(t);
    w.push_back(parse_rational(string_at(v[t], where), where));
  }
  try {
    return GammaWeights(std::move(w));
  } catch (const ContractError& e) {
    throw ParseError(ptr, e.what());
  }
}

void parse_preference(const Json& v, DppFile& out) {
  const std::string ptr = "/preference";
  if (!v.is_object()) throw ParseError(ptr, "expected an object");
  std::string kind = string_at(field(v, ptr, "kind"), ptr + "/kind");
  if (kind == "expected_reward") {
    reject_unknown(v, ptr, {"kind", "r"});
    const Json& rv = field(v, ptr, "r");
    if (!rv.is_object())
      throw ParseError(ptr + "/r", "expected an object keyed by histories");
    std::map<History, Rational> r;
    for (const auto& [key, val] : rv.items()) {
      const std::string where = ptr + "/r/" + esc(key);
      History h = parse_history_key(key, out.iface, where);
      if (h.length() > static_cast<std::size_t>(out.iface.horizon()))
        throw ParseError(where, "history longer than the horizon");
      r.emplace(std::move(h), parse_rational(string_at(val, where), where));
    }
    try {
      out.relation = expected_reward_relation(out.iface, std::move(r));
    } catch (const ContractError& e) {
      throw ParseError(ptr + "/r", e.what());
    }
  } else if (kind == "risk") {
    reject_unknown(v, ptr, {"kind", "u", "beta", "event"});
    std::map<Trajectory, Rational> u =
        trajectory_table(field(v, ptr, "u"), out.iface, ptr + "/u");
    const std::string bwhere = ptr + "/beta";
    Rational beta = parse_rational(string_at(field(v, ptr, "beta"), bwhere), bwhere);
    const Json& ev = field(v, ptr, "event");
    if (!ev.is_array())
      throw ParseError(ptr + "/event", "expected an array of trajectory keys");
    std::set<Trajectory> event;
    for (std::size_t i = 0; i < ev.size(); ++i) {
      const std::string where = ptr + "/event/" + std::to_string(i);
      Trajectory w = parse_history_key(string_at(ev[i], where), out.iface, where);
      if (w.length() != static_cast<std::size_t>(out.iface.horizon()))
        throw ParseError(where, "trajectory must have length equal to the horizon");
      event.insert(std::move(w));
    }
    try {
      out.relation = risk_relation(std::move(u), beta, std::move(event));
    } catch (const ContractError& e) {
      throw ParseError(ptr, e.what());
    }
  } else if (kind == "lexicographic") {
    reject_unknown(v, ptr, {"kind", "u1", "u2"});
    std::map<Trajectory, Rational> u1 =
        trajectory_table(field(v, ptr, "u1"), out.iface, ptr + "/u1");
    std::map<Trajectory, Rational> u2 =
        trajectory_table(field(v, ptr, "u2"), out.iface, ptr + "/u2");
    try {
      out.relation = lexicographic_relation(std::move(u1), std::move(u2));
    } catch (const ContractError& e) {
      throw ParseError(ptr, e.what());
    }
  } else if (kind == "frequency_embedded") {
    reject_unknown(v, ptr, {"kind", "r"});
    if (!out.feature_map || !out.gamma)
      throw ParseError(ptr, "frequency_embedded requires feature_map and gamma");
    const Json& rv = field(v, ptr, "r");
    if (!rv.is_object())
      throw ParseError(ptr + "/r",
                       "expected an object keyed by \"feature|action\" pairs");
    std::map<FAKey, Rational> r;
    for (const auto& [key, val] : rv.items()) {
      const std::string where = ptr + "/r/" + esc(key);
      FAKey k = parse_fa_key(key, *out.feature_map, out.iface, where);
      r.emplace(k, parse_rational(string_at(val, where), where));
    }
    for (FeatureId x = 0; x < out.feature_map->num_features(); ++x)
      for (ActId a = 0; a < out.iface.num_actions(); ++a)
        if (!r.count(FAKey{x, a}))
          throw ParseError(ptr + "/r",
                           "missing entry \"" +
                               fa_key(FAKey{x, a}, *out.feature_map, out.iface) +
                               "\"");
    out.circ_relation = linear_value_relation<FAKey>("feature_reward", std::move(r));
    out.relation = embedded_relation(*out.circ_relation, *out.feature_map, *out.gamma);
  } else {
    throw ParseError(ptr + "/kind", "unknown preference kind \"" + kind + "\"");
  }
  out.preference_kind = std::move(kind);
}

}  // namespace

DppFile parse_dpp(const Json& doc) {
  if (!doc.is_object()) throw ParseError("", "definition must be a JSON object");
  reject_unknown(doc, "",
                 {"interface", "rho0", "rho", "default_dist", "preference",
                  "feature_map", "gamma"});

  const Json& iv = field(doc, "", "interface");
  if (!iv.is_object()) throw ParseError("/interface", "expected an object");
  reject_unknown(iv, "/interface", {"observations", "actions", "horizon"});
  std::vector<std::string> obs =
      name_list(field(iv, "/interface", "observations"), "/interface/observations");
  std::vector<std::string> act =
      name_list(field(iv, "/interface", "actions"), "/interface/actions");
  const Json& hv = field(iv, "/interface", "horizon");
  if (!hv.is_number_integer() || hv.get<long long>() < 1 ||
      hv.get<long long>() > 1000000)
    throw ParseError("/interface/horizon", "expected an integer >= 1");
  Interface iface(std::move(obs), std::move(act), hv.get<int>());

  Dist<ObsId> rho0 = obs_dist(field(doc, "", "rho0"), iface, "/rho0");
  std::map<std::pair<History, ActId>, Dist<ObsId>> rows;
  if (auto it = doc.find("rho"); it != doc.end()) {
    if (!it->is_array())
      throw ParseError("/rho", "expected an array of transition rows");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string ptr = "/rho/" + std::to_string(i);
      const Json& row = (*it)[i];
      if (!row.is_object()) throw ParseError(ptr, "expected an object");
      reject_unknown(row, ptr, {"history", "action", "dist"});
      const Json& histv = field(row, ptr, "history");
      if (!histv.is_array() || histv.size() % 2 != 1)
        throw ParseError(ptr + "/history",
                         "expected an odd-length array obs, act, ..., obs");
      auto part = [&](std::size_t p) {
        const std::string where = ptr + "/history/" + std::to_string(p);
        return std::pair{string_at(histv[p], where), where};
      };
      auto [first, fwhere] = part(0);
      History h(iface.observation_id(first, fwhere));
      for (std::size_t p = 1; p + 1 < histv.size(); p += 2) {
        auto [an, awhere] = part(p);
        auto [on, owhere] = part(p + 1);
        h.steps.emplace_back(iface.action_id(an, awhere),
                             iface.observation_id(on, owhere));
      }
      if (h.length() >= static_cast<std::size_t>(iface.horizon()))
        throw ParseError(ptr + "/history",
                         "transition rows apply to histories shorter than the horizon");
      const std::string awhere = ptr + "/action";
      ActId a = iface.action_id(string_at(field(row, ptr, "action"), awhere), awhere);
      Dist<ObsId> d = obs_dist(field(row, ptr, "dist"), iface, ptr + "/dist");
      if (!rows.emplace(std::pair{std::move(h), a}, std::move(d)).second)
        throw ParseError(ptr, "duplicate transition row");
    }
  }
  std::optional<Dist<ObsId>> def;
  if (auto it = doc.find("default_dist"); it != doc.end())
    def = obs_dist(*it, iface, "/default_dist");

  DppFile out{std::move(iface),
              Environment(std::move(rho0), std::move(rows), std::move(def))};
  if (auto it = doc.find("feature_map"); it != doc.end())
    out.feature_map = parse_feature_map(*it, out.iface);
  if (auto it = doc.find("gamma"); it != doc.end())
    out.gamma = parse_gamma(*it, out.iface);
  if (auto it = doc.find("preference"); it != doc.end()) parse_preference(*it, out);
  return out;
}

DppFile load_dpp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("", "cannot open input file \"" + path + "\"");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("", e.what());
  }
  return parse_dpp(doc);
}

std::string fa_key(const FAKey& key, const FeatureMap& phi, const Interface& iface) {
  return phi.features.at(key.feature) + "|" + iface.action_name(key.action);
}

FAKey parse_fa_key(const std::string& text, const FeatureMap& phi,
                   const Interface& iface, const std::string& where) {
  auto cut = text.rfind('|');
  if (cut == std::string::npos)
    throw ParseError(where, "expected \"feature|action\"");
  std::string feature = text.substr(0, cut);
  ActId a = iface.action_id(text.substr(cut + 1), where);
  for (std::size_t x = 0; x < phi.features.size(); ++x)
    if (phi.features[x] == feature) return FAKey{static_cast<FeatureId>(x), a};
  throw ParseError(where, "unknown feature \"" + feature + "\"");
}

}  // namespace dpp
