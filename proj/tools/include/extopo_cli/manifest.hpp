#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace extopo::cli {

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Run record written next to every artifact. No timestamps or host data,
/// so reruns with the same configuration produce the same bytes.
struct Manifest {
  std::string subcommand;
  nlohmann::json config = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::vector<std::filesystem::path> inputs;
  std::vector<std::filesystem::path> outputs;

  /// Hashes every listed file; paths are stored relative to `base`.
  nlohmann::json to_json(const std::filesystem::path& base) const;
  void write(const std::filesystem::path& file) const;
};

/// Writes bytes to a file, creating parent directories. Throws
/// std::runtime_error on failure.
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace extopo::cli
