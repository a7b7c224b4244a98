// SPDX-License-Identifier: Apache-2.0
#include "manifest.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "plcgrid/errors.hpp"

namespace plcgrid::cli {

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Manifest::Manifest(std::string command) : command_(std::move(command)) {}

void Manifest::add_input(const std::string& role, const std::filesystem::path& path,
                         const std::string& contents) {
  inputs_.push_back({role, path.filename().generic_string(), sha256_hex(contents)});
}

void Manifest::add_option(const std::string& name, const std::string& value) {
  options_.emplace_back(name, value);
}

std::string Manifest::config_digest() const {
  std::string material = "command=" + command_ + '\n';
  for (const auto& in : inputs_) material += "input." + in.role + '=' + in.digest + '\n';
  for (const auto& [k, v] : options_) material += "option." + k + '=' + v + '\n';
  if (seed_) material += "seed=" + std::to_string(*seed_) + '\n';
  return sha256_hex(material);
}

std::string Manifest::str() const {
  std::ostringstream os;
  os << "command=" << command_ << '\n';
  os << "tool_version=" << PLCGRID_VERSION << '\n';
  for (const auto& in : inputs_) {
    os << "input." << in.role << '=' << in.path << '\n';
    os << "input." << in.role << ".sha256=" << in.digest << '\n';
  }
  for (const auto& [k, v] : options_) os << "option." << k << '=' << v << '\n';
  os << "seed=" << (seed_ ? std::to_string(*seed_) : std::string("absent")) << '\n';
  os << "config_digest=" << config_digest() << '\n';
  for (const auto& o : outputs_) os << "output=" << o << '\n';
  return os.str();
}

}  // namespace plcgrid::cli
