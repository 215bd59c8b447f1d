#include "dualvc/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace dualvc {
namespace {

using json = nlohmann::ordered_json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

json edges_to_json(std::span<const Edge> edges) {
  json out = json::array();
  for (const Edge& e : edges) out.push_back(json::array({e.u, e.v}));
  return out;
}

std::vector<Edge> edges_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("\"edges\" must be an array of [u,v] pairs");
  std::vector<Edge> out;
  out.reserve(j.size());
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() || !pair[1].is_number_integer()) {
      throw std::invalid_argument("edge entries must be [u,v] integer pairs");
    }
    out.emplace_back(pair[0].get<Vertex>(), pair[1].get<Vertex>());
  }
  return out;
}

std::vector<std::int64_t> weights_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("\"weights\" must be an integer array");
  std::vector<std::int64_t> out;
  out.reserve(j.size());
  for (const auto& w : j) {
    if (!w.is_number_integer()) throw std::invalid_argument("weights must be integers");
    out.push_back(w.get<std::int64_t>());
  }
  return out;
}

const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw std::invalid_argument(std::string("missing key \"") + key + "\"");
  return obj.at(key);
}

}  // namespace

std::string instance_to_json(const WeightedGraph& g) {
  json out;
  out["n"] = g.n();
  out["weights"] = json(std::vector<std::int64_t>(g.weights().begin(), g.weights().end()));
  out["edges"] = edges_to_json(g.edges());
  if (g.w_max() > g.max_weight()) out["wmax"] = g.w_max();
  return out.dump();
}

WeightedGraph instance_from_json(std::string_view text) {
  const json j = parse_json(text);
  const auto n = require(j, "n").get<std::int64_t>();
  auto weights = weights_from_json(require(j, "weights"));
  if (n < 0 || static_cast<std::size_t>(n) != weights.size()) {
    throw std::invalid_argument("\"n\" does not match the number of weights");
  }
  std::optional<std::int64_t> w_max;
  if (j.contains("wmax")) w_max = j.at("wmax").get<std::int64_t>();
  return WeightedGraph(std::move(weights), edges_from_json(require(j, "edges")), w_max);
}

std::string edit_to_json(const Edit& edit) {
  json out;
  if (edit.kind == Edit::Kind::kEdges) {
    out["kind"] = "edges";
    out["edges"] = edges_to_json(edit.edges);
  } else {
    out["kind"] = "weights";
    out["weights"] = json(edit.weights);
  }
  return out.dump();
}

Edit edit_from_json(std::string_view text) {
  const json j = parse_json(text);
  const auto kind = require(j, "kind").get<std::string>();
  if (kind == "edges") return Edit::replace_edges(edges_from_json(require(j, "edges")));
  if (kind == "weights") return Edit::replace_weights(weights_from_json(require(j, "weights")));
  throw std::invalid_argument("edit kind must be \"edges\" or \"weights\"");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

WeightedGraph read_instance(const std::filesystem::path& path) { return instance_from_json(read_text(path)); }

void write_instance(const std::filesystem::path& path, const WeightedGraph& g) {
  write_text(path, instance_to_json(g) + "\n");
}

Edit read_edit(const std::filesystem::path& path) { return edit_from_json(read_text(path)); }

void write_edit(const std::filesystem::path& path, const Edit& edit) { write_text(path, edit_to_json(edit) + "\n"); }

}  // namespace dualvc
