#include "dualvc/heuristics.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace dualvc {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kEa:
      return "ea";
    case Algorithm::kRls:
      return "rls";
    case Algorithm::kEaFifth:
      return "ea_fifth";
    case Algorithm::kRlsFifth:
      return "rls_fifth";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (const Algorithm a : {Algorithm::kEa, Algorithm::kRls, Algorithm::kEaFifth, Algorithm::kRlsFifth}) {
    if (lower == to_string(a)) return a;
  }
  throw std::invalid_argument("unknown algorithm \"" + std::string(text) + "\" (expected ea, rls, ea_fifth, rls_fifth)");
}

void validate_run_config(const RunConfig& config, std::int64_t w_max) {
  if (config.budget < 1) throw std::invalid_argument("evaluation budget must be at least 1");
  if (config.checkpoint_every < 1) throw std::invalid_argument("checkpoint interval must be at least 1");
  // alpha in [2, W_max]; W_max = 1 instances still need some alpha, so 2 is always allowed.
  if (config.alpha < 2 || config.alpha > std::max<std::int64_t>(w_max, 2)) {
    throw std::invalid_argument("alpha must lie in [2, W_max]");
  }
}

}  // namespace dualvc
