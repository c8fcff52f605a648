#include "extopo_cli/manifest.hpp"

#include <fstream>
#include <iterator>
#include <stdexcept>

#include <openssl/evp.h>

namespace extopo::cli {

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return sha256_hex(bytes);
}

nlohmann::json Manifest::to_json(const std::filesystem::path& base) const {
  auto listing = [&](const std::vector<std::filesystem::path>& files) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& f : files) {
      arr.push_back({{"path", std::filesystem::path(f).lexically_proximate(base).generic_string()},
                     {"sha256", std::filesystem::is_regular_file(f) ? sha256_file(f) : std::string("missing")}});
    }
    return arr;
  };
  return {{"tool", "extopo"},
          {"version", "0.1.0"},
          {"subcommand", subcommand},
          {"seed", seed},
          {"config", config},
          {"config_sha256", sha256_hex(config.dump())},
          {"inputs", listing(inputs)},
          {"outputs", listing(outputs)}};
}

void Manifest::write(const std::filesystem::path& file) const {
  write_file(file, to_json(file.parent_path()).dump(2) + "\n");
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace extopo::cli
