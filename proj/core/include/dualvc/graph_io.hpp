#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "dualvc/graph.hpp"

namespace dualvc {

// Instance files hold one compact JSON object per file:
//   {"n":4,"weights":[3,5,1,1],"edges":[[0,1],[2,3]]}
// A "wmax" key follows when the instance's weight bound exceeds the largest
// weight present. Edit files hold
//   {"kind":"edges","edges":[[0,1]]}  or  {"kind":"weights","weights":[3,5,2,1]}
// Vertex ids are 0-based. Serialization is canonical: writing a parsed
// canonical line reproduces it byte for byte.

std::string instance_to_json(const WeightedGraph& g);
/// Throws std::invalid_argument on malformed input or an invalid graph.
WeightedGraph instance_from_json(std::string_view text);

std::string edit_to_json(const Edit& edit);
Edit edit_from_json(std::string_view text);

WeightedGraph read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const WeightedGraph& g);
Edit read_edit(const std::filesystem::path& path);
void write_edit(const std::filesystem::path& path, const Edit& edit);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace dualvc
