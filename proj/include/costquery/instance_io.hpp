#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "costquery/model.hpp"
#include "json.hpp"

namespace costquery {

/// Parses the instance schema. A prior whose sum is within 1e-6 of 1 is
/// renormalized; anything further off is rejected with InvalidInstance.
/// Schema problems also raise InvalidInstance. Semantic checks (zero mass,
/// identifiability, ...) are left to validate_instance.
Instance instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const Instance& inst);

Instance parse_instance(std::string_view text);
std::string dump_instance(const Instance& inst);

/// Throws IoError if the file cannot be read.
Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& inst, const std::filesystem::path& path);

/// Whole-file helpers shared by the loaders and the CLI.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace costquery
