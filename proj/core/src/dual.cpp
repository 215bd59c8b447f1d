#include "dualvc/dual.hpp"

#include <array>
#include <sstream>

namespace dualvc {

template class DualSolution<ExactField>;
template class DualSolution<FloatField>;

namespace {

// Reads "edge_id c0 c1 c2 c3" lines into per-position coefficient arrays.
std::vector<std::array<Rational, 4>> parse_lines(std::string_view text, const WeightedGraph& graph) {
  std::vector<std::array<Rational, 4>> coeffs(graph.m());
  std::vector<bool> seen(graph.m(), false);
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    EdgeId id = 0;
    if (!(fields >> id)) throw std::invalid_argument("dual dump line " + std::to_string(line_no) + ": missing edge id");
    const auto pos = graph.position_of(id);
    if (!pos) throw std::invalid_argument("dual dump line " + std::to_string(line_no) + ": unknown edge id");
    if (seen[*pos]) throw std::invalid_argument("dual dump line " + std::to_string(line_no) + ": repeated edge id");
    seen[*pos] = true;
    for (auto& c : coeffs[*pos]) {
      std::string token;
      if (!(fields >> token)) {
        throw std::invalid_argument("dual dump line " + std::to_string(line_no) + ": expected four coefficients");
      }
      c = Rational::parse(token);
    }
    std::string extra;
    if (fields >> extra) throw std::invalid_argument("dual dump line " + std::to_string(line_no) + ": trailing data");
  }
  for (std::size_t pos = 0; pos < seen.size(); ++pos) {
    if (!seen[pos]) throw std::invalid_argument("dual dump misses edge id " + std::to_string(graph.id(pos)));
  }
  return coeffs;
}

}  // namespace

std::string dual_dump(const DualSolution<ExactField>& y) {
  std::string out;
  for (std::size_t pos = 0; pos < y.m(); ++pos) {
    out += std::to_string(y.graph().id(pos));
    out += ' ';
    out += y.y(pos).coeff_str();
    out += '\n';
  }
  return out;
}

std::vector<RadicalValue> parse_dual_dump(std::string_view text, const WeightedGraph& graph, const Alpha& alpha) {
  std::vector<RadicalValue> out;
  for (const auto& c : parse_lines(text, graph)) out.push_back(RadicalValue::from_quarter_coeffs(alpha, c));
  return out;
}

std::vector<Rational> parse_rational_dump(std::string_view text, const WeightedGraph& graph) {
  std::vector<Rational> out;
  for (const auto& c : parse_lines(text, graph)) {
    if (!c[1].is_zero() || !c[2].is_zero() || !c[3].is_zero()) {
      throw std::invalid_argument("original dual-solution must be rational-valued");
    }
    out.push_back(c[0]);
  }
  return out;
}

std::string rational_dump(const WeightedGraph& graph, std::span<const Rational> values) {
  if (values.size() != graph.m()) throw std::invalid_argument("value count does not match the edge count");
  std::string out;
  for (std::size_t pos = 0; pos < values.size(); ++pos) {
    out += std::to_string(graph.id(pos)) + ' ' + values[pos].str() + " 0/1 0/1 0/1\n";
  }
  return out;
}

}  // namespace dualvc
