#include "matchbandit/instance_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "matchbandit/errors.hpp"

namespace matchbandit {

using nlohmann::json;

Rank1Instance instance_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParameterError(std::string("instance JSON: ") + e.what());
  }
  try {
    const std::string kind = doc.at("kind").get<std::string>();
    Distribution dist = Distribution::bernoulli();
    if (doc.contains("dist")) {
      const json& d = doc.at("dist");
      if (d.is_string()) {
        const auto name = d.get<std::string>();
        if (name == "gaussian") dist = Distribution::gaussian();
        else if (name != "bernoulli") throw ParameterError("unknown dist '" + name + "'");
      } else {
        dist = Distribution::gaussian(d.at("gaussian").value("sigma", 1.0));
      }
    }
    auto u = doc.at("u").get<std::vector<double>>();
    if (kind == "bipartite") return Rank1Instance::bipartite(std::move(u), doc.at("v").get<std::vector<double>>(), dist);
    if (kind == "monopartite") {
      if (doc.contains("v")) throw ShapeError("monopartite instance must not carry v");
      return Rank1Instance::monopartite(std::move(u), dist);
    }
    throw ParameterError("unknown instance kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw ParameterError(std::string("instance JSON: ") + e.what());
  }
}

Rank1Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return instance_from_json(buf.str());
}

std::string instance_to_json(const Rank1Instance& instance) {
  json doc;
  doc["kind"] = instance.kind() == InstanceKind::bipartite ? "bipartite" : "monopartite";
  doc["u"] = instance.u();
  if (instance.kind() == InstanceKind::bipartite) doc["v"] = instance.v();
  if (instance.dist().kind == Distribution::Kind::bernoulli)
    doc["dist"] = "bernoulli";
  else
    doc["dist"] = {{"gaussian", {{"sigma", instance.dist().sigma}}}};
  return doc.dump();
}

std::string instance_digest(const Rank1Instance& instance) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : instance_to_json(instance)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

}  // namespace matchbandit
